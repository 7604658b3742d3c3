use num_complex::Complex64;

use crate::surd::Rational;

/// One line of a convergence table: the average at a region size next to
/// its predicted limit.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub size: Rational,
    pub value: Complex64,
    pub limit: Complex64,
    pub abs_error: f64,
}

impl ConvergenceRow {
    pub fn new(size: Rational, value: Complex64, limit: Complex64) -> Self {
        ConvergenceRow {
            size,
            value,
            limit,
            abs_error: (value - limit).norm(),
        }
    }
}
