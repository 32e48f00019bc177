//! Least-squares fits of measured counters against named monomials.

use std::fmt;

use nalgebra::{DMatrix, DVector};

const RANK_EPS: f64 = 1e-9;
/// Residuals and coefficient roundings below this are treated as exact.
pub const EXACT_EPS: f64 = 1e-6;

/// `value ~ sum(coefficients[t] * term_t)` over the samples it was fitted to.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFit {
    pub terms: Vec<&'static str>,
    pub coefficients: Vec<f64>,
    pub max_residual: f64,
}

/// Fits `samples` of `(term values, measured)` by least squares. Returns `None`
/// when the samples do not determine every coefficient.
///
/// ```
/// use olbsq::bench::fit_affine;
/// // y = 1 + 2x
/// let samples = [(vec![1.0, 0.0], 1.0), (vec![1.0, 1.0], 3.0), (vec![1.0, 4.0], 9.0)];
/// let fit = fit_affine(&["1", "x"], &samples).unwrap();
/// assert_eq!(fit.integer_coefficients(), Some(vec![1, 2]));
/// ```
pub fn fit_affine(terms: &[&'static str], samples: &[(Vec<f64>, f64)]) -> Option<AffineFit> {
    let cols = terms.len();
    if cols == 0 || samples.len() < cols || samples.iter().any(|(x, _)| x.len() != cols) {
        return None;
    }
    let a = DMatrix::from_row_iterator(samples.len(), cols, samples.iter().flat_map(|(x, _)| x.iter().copied()));
    let b = DVector::from_iterator(samples.len(), samples.iter().map(|(_, y)| *y));
    let svd = a.clone().svd(true, true);
    if svd.rank(RANK_EPS) < cols {
        return None;
    }
    let x = svd.solve(&b, RANK_EPS).ok()?;
    let residual = (&a * &x - &b).amax();
    Some(AffineFit {
        terms: terms.to_vec(),
        coefficients: x.iter().copied().collect(),
        max_residual: residual,
    })
}

impl AffineFit {
    pub fn is_exact(&self) -> bool {
        self.max_residual < EXACT_EPS
    }

    /// Coefficients rounded to integers, if the fit is exact and they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        if !self.is_exact() {
            return None;
        }
        self.coefficients
            .iter()
            .map(|c| {
                let r = c.round();
                ((c - r).abs() < EXACT_EPS).then_some(r as i64)
            })
            .collect()
    }

    pub fn coefficient(&self, term: &str) -> Option<f64> {
        let idx = self.terms.iter().position(|t| *t == term)?;
        Some(self.coefficients[idx])
    }
}

impl fmt::Display for AffineFit {
    /// `3 + 2*l + 0*k + 2*lk`, or with decimals if the fit is not integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ints = self.integer_coefficients();
        for (idx, term) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            match &ints {
                Some(c) => write!(f, "{}", c[idx])?,
                None => write!(f, "{:.3}", self.coefficients[idx])?,
            }
            if *term != "1" {
                write!(f, "*{term}")?;
            }
        }
        Ok(())
    }
}
