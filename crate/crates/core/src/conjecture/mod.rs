//! Conjecture-side evaluators: zeta_A, X-factors, Euler products A_k,
//! the moment polynomials Q_k, ratios predictions and one-level density.

mod density;
mod euler;
mod ratios;

pub use density::{
    density_bracket, density_bracket_sum_form, kernel_symplectic, one_level_exact_modes,
    one_level_theoretical, scaled_kernel, TestFunction,
};
pub use euler::{
    ak_local_factor, ak_series, ak_value, local_factor_closed_form, tail_constant,
    EulerProductValue,
};
pub use ratios::{
    dlog_prediction, dlog_zeta, ratios_ap_bracket, ratios_ap_direct_11, ratios_general,
    ratios_rhs_11, ys_closed, EpsTerm, RatiosPrediction,
};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::series::{rational_to_f64, residue_qk, TruncSeries};
use crate::{Error, Result};

/// zeta_A(s) = 1/(1 - q^{1-s}) at a complex point. Errors at the poles
/// s = 1 + 2 pi i k / log q.
pub fn zeta_a(q: u64, s: Complex64) -> Result<Complex64> {
    let lnq = (q as f64).ln();
    let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * lnq).exp();
    if denom.norm() < 1e-12 {
        return Err(Error::ZetaPole { s: format!("{s}") });
    }
    Ok(denom.inv())
}

/// zeta_A at a real point away from s = 1.
pub fn zeta_a_real(q: u64, s: f64) -> Result<f64> {
    let denom = 1.0 - (q as f64).powf(1.0 - s);
    if denom.abs() < 1e-12 {
        return Err(Error::ZetaPole { s: format!("{s}") });
    }
    Ok(1.0 / denom)
}

/// 1/zeta_A(s) = 1 - q^{1-s}; entire, vanishing at s = 1.
pub fn inv_zeta_a_real(q: u64, s: f64) -> f64 {
    1.0 - (q as f64).powf(1.0 - s)
}

/// X(s) = q^{-1/2+s}, the q-analogue of the gamma factor.
pub fn xfactor(q: u64, s: f64) -> f64 {
    (q as f64).powf(s - 0.5)
}

/// X_P(s) = |P|^{1/2-s} X(s) = q^{g(1-2s)} for deg P = 2g+1.
pub fn xfactor_p(q: u64, g: usize, s: f64) -> f64 {
    (q as f64).powf(g as f64 * (1.0 - 2.0 * s))
}

/// Provenance attached to a computed Q_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QkMetadata {
    /// Euler-product cutoff used for the A_k series; None for an A = 1 run.
    pub a_cutoff: Option<usize>,
    /// Total-degree cap of the residue extraction.
    pub series_cap: usize,
    /// Precision of the coefficient arithmetic.
    pub precision: String,
}

/// The moment polynomial Q_k(x) of degree k(k+1)/2, rational coefficients
/// ascending in x. When built from a real A_k series the coefficients all
/// carry the (floating) truncated Euler-product value A_k(0,...,0) as an
/// exact common factor, so polynomial identities in the engine remain
/// exact rational statements.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial {
    k: usize,
    coeffs: Vec<BigRational>,
    meta: QkMetadata,
}

impl QPolynomial {
    pub fn from_rational(k: usize, coeffs: Vec<BigRational>, meta: QkMetadata) -> Result<Self> {
        let want = k * (k + 1) / 2;
        if coeffs.len() != want + 1 || coeffs[want].is_zero() {
            return Err(Error::InvalidParameter(format!(
                "Q_{k} must have degree exactly {want}"
            )));
        }
        if !coeffs[want].is_positive() {
            return Err(Error::InvalidParameter(format!(
                "Q_{k} leading coefficient must be positive, got {}",
                coeffs[want]
            )));
        }
        Ok(QPolynomial { k, coeffs, meta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn rational_coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn coeff_f64(&self, i: usize) -> f64 {
        self.coeffs.get(i).map(rational_to_f64).unwrap_or(0.0)
    }

    pub fn leading_f64(&self) -> f64 {
        rational_to_f64(self.coeffs.last().expect("nonempty"))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn metadata(&self) -> &QkMetadata {
        &self.meta
    }
}

/// The leading-order constant prod_{i=1}^{k} i!/(2i)! as an exact rational:
/// 1/2, 1/24, 1/2880, 1/4838400, 1/146313216000, ...
pub fn leading_coefficient(k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 1..=k {
        let mut num = BigInt::one();
        for j in 1..=i {
            num *= BigInt::from(j);
        }
        let mut den = BigInt::one();
        for j in 1..=2 * i {
            den *= BigInt::from(j);
        }
        acc *= BigRational::new(num, den);
    }
    acc
}

/// Q_k(x) for the ensemble: the residue engine fed with the A_k Taylor
/// series truncated at prime degree `cutoff`. `cap` is the total-degree
/// cap of the series arithmetic; it defaults to the minimal k(2k-1).
///
/// Q_1 is exact: A_1 is identically 1.
pub fn qk_polynomial(k: usize, q: u64, cutoff: usize, cap: Option<usize>) -> Result<QPolynomial> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    // an explicit undersized cap propagates the residue engine's error
    let cap = cap.unwrap_or(k * (2 * k - 1));
    let a = ak_series(k, q, cap, cutoff)?;
    let qk = residue_qk(k, &a, cap)?;
    let precision = if k == 1 {
        "exact rational".to_string()
    } else {
        "exact rational residue extraction on IEEE double A_k series coefficients (~16 significant digits)".to_string()
    };
    QPolynomial::from_rational(
        k,
        qk.rational_coeffs().to_vec(),
        QkMetadata {
            a_cutoff: Some(cutoff),
            series_cap: cap,
            precision,
        },
    )
}

/// Leading-order moment prediction of Theorem-level strength:
/// |P| (log_q|P|)^{k(k+1)/2 - 1} A_k(0,..,0) prod i!/(2i)!.
pub fn moment_leading_asymptotic(k: usize, q: u64, g: usize, cutoff: usize) -> f64 {
    let x = (2 * g + 1) as f64;
    let p_norm = (q as f64).powi(2 * g as i32 + 1);
    let ak = ak_value(k, q, cutoff).value;
    p_norm * x.powi((k * (k + 1) / 2) as i32 - 1) * ak * rational_to_f64(&leading_coefficient(k))
}

/// A constant-1 series of the right shape for the A = 1 fixtures.
pub fn unit_a_series(k: usize, cap: usize) -> TruncSeries {
    TruncSeries::one(k, cap)
}
