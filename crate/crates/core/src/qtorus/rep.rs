//! Truncated Fourier representation of `A_θ` on `L²(T²)`.
//!
//! The basis `e_{j,k}(x, y) = e^{2πi(jx + ky)}` carries the defining action
//!
//! ```text
//! u e_{j,k} = e^{ πikθ} e_{j+1,k}
//! v e_{j,k} = e^{-πijθ} e_{j,k+1}
//! ```
//!
//! Monomials are applied one generator step at a time, so this module never
//! uses the normal-ordering rule of the symbolic algebra and serves as an
//! independent check on it. The vacuum `Ω` is `e_{0,0}`.

use num_complex::Complex64;

use super::{Monomial, TorusElement};
use crate::error::{Error, Result};
use crate::surd::{cis_2pi, rat, SurdScalar};

pub const DEFAULT_TRUNCATION: usize = 16;

/// Cached half-angle phases `e^{πiθt}` for `|t| ≤ extent`.
#[derive(Clone, Debug)]
pub struct PhaseTable {
    half_theta: SurdScalar,
    extent: i64,
    table: Vec<Complex64>,
}

impl PhaseTable {
    pub fn new(theta: &SurdScalar, extent: i64) -> Self {
        let half_theta = theta.scale(&rat(1, 2));
        let table = (-extent..=extent)
            .map(|t| cis_2pi(&half_theta.mul_int(t)))
            .collect();
        PhaseTable {
            half_theta,
            extent,
            table,
        }
    }

    /// `e^{πiθt}`.
    pub fn half(&self, t: i64) -> Complex64 {
        if t.abs() <= self.extent {
            self.table[(t + self.extent) as usize]
        } else {
            cis_2pi(&self.half_theta.mul_int(t))
        }
    }

    fn step_u(&self, (j, k): (i64, i64), inverse: bool) -> (Complex64, (i64, i64)) {
        if inverse {
            (self.half(k).conj(), (j - 1, k))
        } else {
            (self.half(k), (j + 1, k))
        }
    }

    fn step_v(&self, (j, k): (i64, i64), inverse: bool) -> (Complex64, (i64, i64)) {
        if inverse {
            (self.half(j), (j, k - 1))
        } else {
            (self.half(j).conj(), (j, k + 1))
        }
    }

    /// Image of `e_{j,k}` under `u^m v^n`: `v` is applied `n` times, then `u`
    /// `m` times.
    pub fn apply_monomial(&self, mono: Monomial, at: (i64, i64)) -> (Complex64, (i64, i64)) {
        let mut phase = Complex64::new(1.0, 0.0);
        let mut pos = at;
        for _ in 0..mono.n.abs() {
            let (p, next) = self.step_v(pos, mono.n < 0);
            phase *= p;
            pos = next;
        }
        for _ in 0..mono.m.abs() {
            let (p, next) = self.step_u(pos, mono.m < 0);
            phase *= p;
            pos = next;
        }
        (phase, pos)
    }
}

/// Dense matrix of an element on `{e_{j,k} : |j|, |k| ≤ N}`, column-major.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    radius: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl TruncatedRep {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn basis_index(&self, j: i64, k: i64) -> Option<usize> {
        let n = self.radius as i64;
        if j.abs() > n || k.abs() > n {
            return None;
        }
        Some(((j + n) as usize) * self.side() + (k + n) as usize)
    }

    pub fn basis_label(&self, index: usize) -> (i64, i64) {
        let n = self.radius as i64;
        let side = self.side();
        ((index / side) as i64 - n, (index % side) as i64 - n)
    }

    /// `⟨e_row, A e_col⟩`; zero outside the truncation.
    pub fn entry(&self, row: (i64, i64), col: (i64, i64)) -> Complex64 {
        match (self.basis_index(row.0, row.1), self.basis_index(col.0, col.1)) {
            (Some(r), Some(c)) => self.data[c * self.dim + r],
            _ => Complex64::default(),
        }
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector dimension");
        let mut y = vec![Complex64::default(); self.dim];
        for (c, xc) in x.iter().enumerate() {
            if *xc == Complex64::default() {
                continue;
            }
            for (yr, a) in y.iter_mut().zip(self.column(c)) {
                *yr += a * xc;
            }
        }
        y
    }

    /// `⟨Ω, AΩ⟩`.
    pub fn vacuum_expectation(&self) -> Complex64 {
        self.entry((0, 0), (0, 0))
    }

    /// Product of the truncated matrices (not of the operators: indices
    /// leaving the basis are lost).
    pub fn matmul(&self, other: &TruncatedRep) -> TruncatedRep {
        assert_eq!(self.radius, other.radius, "truncation radius");
        let mut data = vec![Complex64::default(); self.dim * self.dim];
        for c in 0..self.dim {
            let out = &mut data[c * self.dim..(c + 1) * self.dim];
            for (i, b) in other.column(c).iter().enumerate() {
                if *b == Complex64::default() {
                    continue;
                }
                for (o, a) in out.iter_mut().zip(self.column(i)) {
                    *o += a * b;
                }
            }
        }
        TruncatedRep {
            radius: self.radius,
            dim: self.dim,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> TruncatedRep {
        let mut data = vec![Complex64::default(); self.dim * self.dim];
        for c in 0..self.dim {
            for r in 0..self.dim {
                data[r * self.dim + c] = self.data[c * self.dim + r].conj();
            }
        }
        TruncatedRep {
            radius: self.radius,
            dim: self.dim,
            data,
        }
    }
}

/// Matrix of `a` on the truncated basis of radius `radius`.
pub fn matrix_rep(a: &TorusElement, radius: usize) -> Result<TruncatedRep> {
    if radius == 0 {
        return Err(Error::parameter("truncation radius must be positive"));
    }
    if let Some(bad) = a.terms().keys().find(|k| k.radius() > radius as i64) {
        return Err(Error::Range {
            m: bad.m,
            n: bad.n,
            radius,
        });
    }
    let side = 2 * radius + 1;
    let dim = side * side;
    let mut rep = TruncatedRep {
        radius,
        dim,
        data: vec![Complex64::default(); dim * dim],
    };
    let table = PhaseTable::new(a.theta(), 2 * radius as i64 + 1);
    for col in 0..dim {
        let at = rep.basis_label(col);
        for (mono, coeff) in a.terms() {
            let (phase, (j, k)) = table.apply_monomial(*mono, at);
            if let Some(row) = rep.basis_index(j, k) {
                rep.data[col * dim + row] += coeff * phase;
            }
        }
    }
    Ok(rep)
}

/// Largest entrywise deviation between the symbolic algebra and the
/// truncated matrices, per operation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OracleDeviation {
    pub mul: f64,
    pub adjoint: f64,
    pub trace: f64,
}

impl OracleDeviation {
    pub fn max(&self) -> f64 {
        self.mul.max(self.adjoint).max(self.trace)
    }

    pub fn merge(self, other: OracleDeviation) -> OracleDeviation {
        OracleDeviation {
            mul: self.mul.max(other.mul),
            adjoint: self.adjoint.max(other.adjoint),
            trace: self.trace.max(other.trace),
        }
    }
}

/// Compares `mul(a, b)`, `adjoint(a)` and `trace(a)` with the truncated
/// matrices at `radius`.
///
/// Products are compared on columns `|j|, |k| ≤ radius − (r_a + r_b)`, where
/// every intermediate basis vector stays inside the truncation.
pub fn compare_with_oracle(
    a: &TorusElement,
    b: &TorusElement,
    radius: usize,
) -> Result<OracleDeviation> {
    let margin = (a.support_radius() + b.support_radius()) as usize;
    if margin > radius {
        return Err(Error::parameter(format!(
            "support radius {margin} leaves no interior at truncation {radius}"
        )));
    }
    let ra = matrix_rep(a, radius)?;
    let rb = matrix_rep(b, radius)?;
    let rab = matrix_rep(&a.mul(b)?, radius)?;
    let interior = (radius - margin) as i64;

    let mut dev = OracleDeviation::default();
    let mut scratch = vec![Complex64::default(); ra.dim()];
    for j in -interior..=interior {
        for k in -interior..=interior {
            let c = ra.basis_index(j, k).expect("interior index");
            scratch.iter_mut().for_each(|x| *x = Complex64::default());
            for (i, bic) in rb.column(c).iter().enumerate() {
                if *bic == Complex64::default() {
                    continue;
                }
                for (s, a) in scratch.iter_mut().zip(ra.column(i)) {
                    *s += a * bic;
                }
            }
            for (s, e) in scratch.iter().zip(rab.column(c)) {
                dev.mul = dev.mul.max((s - e).norm());
            }
        }
    }

    let radj = matrix_rep(&a.adjoint(), radius)?;
    for c in 0..ra.dim() {
        for r in 0..ra.dim() {
            let lhs = radj.data[c * ra.dim() + r];
            let rhs = ra.data[r * ra.dim() + c].conj();
            dev.adjoint = dev.adjoint.max((lhs - rhs).norm());
        }
    }

    dev.trace = (ra.vacuum_expectation() - a.trace()).norm();
    Ok(dev)
}
