//! Operator evaluation of the tensor states.
//!
//! Both factors act on Fourier basis vectors through the defining generator
//! actions ([`PhaseTable`]); nothing here uses the closed-form monomial
//! rules of [`StateKind::eval_monomial`], so the two can be cross-checked.
//!
//! * `product_trace` is the vacuum state of `H ⊗ H`.
//! * `kappa_D` projects each factor onto `C*(v)`, `C*(z)`, multiplies the
//!   commuting operators on one copy of `H` and takes the vacuum.
//! * `kappa_diag` multiplies `A_θ` with its mirror `A_{-θ}` (which commute)
//!   on one copy of `H` and takes the vacuum.
//! * `omega_rel` is `kappa_diag` after the relative expectation.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{StateKind, TensorElement, TensorMonomial};
use crate::qtorus::rep::PhaseTable;

type SparseVector<K> = BTreeMap<K, Complex64>;
type Site = (i64, i64);

struct Tables {
    left: PhaseTable,
    right: PhaseTable,
}

impl Tables {
    fn new(c: &TensorElement) -> Self {
        let extent = 2 * c.support_radius() + 2;
        Tables {
            left: PhaseTable::new(c.theta1(), extent),
            right: PhaseTable::new(c.theta2(), extent),
        }
    }

    /// `δ(x ⊗ y) Ω = x (y Ω)` on a single copy of `H`.
    fn shared(&self, t: &TensorMonomial) -> (Complex64, (i64, i64)) {
        let (pr, at) = self.right.apply_monomial(t.right(), (0, 0));
        let (pl, at) = self.left.apply_monomial(t.left(), at);
        (pr * pl, at)
    }

    /// `(x ⊗ y)(Ω ⊗ Ω)` on `H ⊗ H`.
    fn product(&self, t: &TensorMonomial) -> (Complex64, (Site, Site)) {
        let (pl, l) = self.left.apply_monomial(t.left(), (0, 0));
        let (pr, r) = self.right.apply_monomial(t.right(), (0, 0));
        (pl * pr, (l, r))
    }
}

fn projected(kind: StateKind, t: &TensorMonomial) -> bool {
    match kind {
        StateKind::KappaD | StateKind::OmegaRel => t.j == 0 && t.l == 0,
        StateKind::ProductTrace | StateKind::KappaDiag => true,
    }
}

/// `⟨Ω, π(c) Ω⟩` for the representation defining `kind`.
pub fn vacuum_state(kind: StateKind, c: &TensorElement) -> Complex64 {
    let tables = Tables::new(c);
    let mut total = Complex64::default();
    for (t, coeff) in c.terms() {
        if !projected(kind, t) {
            continue;
        }
        match kind {
            StateKind::ProductTrace => {
                let (phase, at) = tables.product(t);
                if at == ((0, 0), (0, 0)) {
                    total += coeff * phase;
                }
            }
            _ => {
                let (phase, at) = tables.shared(t);
                if at == (0, 0) {
                    total += coeff * phase;
                }
            }
        }
    }
    total
}

/// `‖π(c) Ω‖²` for the states that are vector states of a
/// `*`-representation of the whole tensor product (`product_trace`,
/// `kappa_diag`); `None` for the projected couplings.
pub fn gns_norm_sq(kind: StateKind, c: &TensorElement) -> Option<f64> {
    let tables = Tables::new(c);
    match kind {
        StateKind::ProductTrace => {
            let mut vec: SparseVector<(Site, Site)> = BTreeMap::new();
            for (t, coeff) in c.terms() {
                let (phase, at) = tables.product(t);
                *vec.entry(at).or_default() += coeff * phase;
            }
            Some(vec.values().map(|x| x.norm_sqr()).sum())
        }
        StateKind::KappaDiag => {
            let mut vec: SparseVector<(i64, i64)> = BTreeMap::new();
            for (t, coeff) in c.terms() {
                let (phase, at) = tables.shared(t);
                *vec.entry(at).or_default() += coeff * phase;
            }
            Some(vec.values().map(|x| x.norm_sqr()).sum())
        }
        StateKind::KappaD | StateKind::OmegaRel => None,
    }
}
