//! Truncated multivariate power series over exact rationals, and the
//! k-fold residue extraction that produces the moment polynomials Q_k(x).
//!
//! # Scaled variables
//!
//! All series here live in the scaled variables y_i = z_i * log q. In these
//! units every ingredient of the residue integrand has rational Taylor
//! coefficients:
//!
//! - the pole-cleared zeta unit u(s) = s log q * zeta_A(1+s) becomes
//!   Y/(1 - e^{-Y}) at Y = y_i + y_j (Bernoulli numbers),
//! - the combined factor q^{(x/2) sum z_i} prod X(1/2+z_i)^{-1/2}
//!   becomes exp(((x-1)/2) sum y_i),
//! - the Euler-product series A_k(1/2; z) has rational coefficients in y
//!   because |P|^{-c - z_i - z_j} = q^{-cd} e^{-d(y_i + y_j)}.
//!
//! Every power of log q cancels in the final residue (the prefactor
//! contributes (log q)^{-k(k+1)/2}, the extraction and the Vandermonde
//! conversion contribute the opposite power), so Q_k comes out as an exact
//! rational polynomial in x:
//!
//!   Q_k(x) = (-1)^{k(k-1)/2}/k! * [y_1^{2k-1} ... y_k^{2k-1}]
//!            A(y) prod_{i<=j} u(y_i+y_j) prod_{i<j} (y_j-y_i)^2 (y_j+y_i)
//!            e^{((x-1)/2) sum y_i}.
//!
//! Coefficients of a series are [`XPoly`] values: polynomials in the formal
//! symbol x = log_q |P| with `BigRational` coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::conjecture::{QPolynomial, QkMetadata};
use crate::{Error, Result};

/// A polynomial in the symbol x with exact rational coefficients,
/// canonical (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<BigRational>,
}

/// Small-integer rational, used pervasively in fixtures.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl XPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        XPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        XPoly::new(vec![c])
    }

    /// The symbol x itself.
    pub fn x() -> Self {
        XPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_f64(&self, i: usize) -> f64 {
        self.coeffs.get(i).map(rational_to_f64).unwrap_or(0.0)
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        XPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        XPoly::new(c)
    }

    pub fn scale(&self, c: &BigRational) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // adequate for the magnitudes appearing here
    let num = r.numer();
    let den = r.denom();
    bigint_to_f64(num) / bigint_to_f64(den)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

/// A truncated power series in `vars` variables y_1..y_vars, all exponent
/// tuples of total degree <= `cap`, coefficients polynomials in x over Q.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    vars: usize,
    cap: usize,
    coeffs: BTreeMap<Vec<u8>, XPoly>,
}

impl TruncSeries {
    pub fn zero(vars: usize, cap: usize) -> Self {
        TruncSeries {
            vars,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, cap: usize, c: XPoly) -> Self {
        let mut s = TruncSeries::zero(vars, cap);
        if !c.is_zero() {
            s.coeffs.insert(vec![0; vars], c);
        }
        s
    }

    pub fn one(vars: usize, cap: usize) -> Self {
        TruncSeries::constant(vars, cap, XPoly::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &XPoly)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, expo: &[u8]) -> XPoly {
        self.coeffs.get(expo).cloned().unwrap_or_else(XPoly::zero)
    }

    /// Inserts a coefficient, dropping exponents beyond the cap and zero
    /// values (canonical form).
    pub fn set(&mut self, expo: Vec<u8>, c: XPoly) {
        assert_eq!(expo.len(), self.vars);
        let total: usize = expo.iter().map(|&e| e as usize).sum();
        if total > self.cap || c.is_zero() {
            self.coeffs.remove(&expo);
        } else {
            self.coeffs.insert(expo, c);
        }
    }

    fn check_shape(&self, other: &TruncSeries) -> Result<()> {
        if self.vars != other.vars || self.cap != other.cap {
            return Err(Error::ShapeMismatch {
                vars_a: self.vars,
                cap_a: self.cap,
                vars_b: other.vars,
                cap_b: other.cap,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let cur = out.coefficient(e);
            out.set(e.clone(), cur.add(c));
        }
        Ok(out)
    }

    /// Exact ring product truncated to total degree `cap`.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_shape(other)?;
        let mut acc: BTreeMap<Vec<u8>, XPoly> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            let da: usize = ea.iter().map(|&e| e as usize).sum();
            for (eb, cb) in &other.coeffs {
                let db: usize = eb.iter().map(|&e| e as usize).sum();
                if da + db > self.cap {
                    continue;
                }
                let expo: Vec<u8> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                let prod = ca.mul(cb);
                match acc.get_mut(&expo) {
                    Some(cur) => *cur = cur.add(&prod),
                    None => {
                        acc.insert(expo, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncSeries {
            vars: self.vars,
            cap: self.cap,
            coeffs: acc,
        })
    }

    pub fn scale(&self, c: &BigRational) -> TruncSeries {
        let mut out = TruncSeries::zero(self.vars, self.cap);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.coeffs {
            out.coeffs.insert(e.clone(), x.scale(c));
        }
        out
    }

    /// Substitutes the linear form sum_i w_i y_i (w = `weights`) into a
    /// univariate series sum_m uni_m s^m, truncated at the cap.
    pub fn substitute_linear_form(
        uni: &[BigRational],
        weights: &[u32],
        vars: usize,
        cap: usize,
    ) -> TruncSeries {
        assert_eq!(weights.len(), vars);
        let mut out = TruncSeries::zero(vars, cap);
        let fact = factorials(cap);
        for (m, cm) in uni.iter().enumerate().take(cap + 1) {
            if cm.is_zero() {
                continue;
            }
            // (sum w_i y_i)^m = sum_{|e|=m} m!/prod e_i! * prod w_i^{e_i} y^e
            for_each_composition(m, vars, &mut |expo: &[usize]| {
                let mut coef = fact[m].clone();
                let mut ok = true;
                for (i, &ei) in expo.iter().enumerate() {
                    if ei > 0 && weights[i] == 0 {
                        ok = false;
                        break;
                    }
                    coef /= &fact[ei];
                    coef *= BigInt::from(weights[i]).pow(ei as u32);
                }
                if ok && !coef.is_zero() {
                    let key: Vec<u8> = expo.iter().map(|&e| e as u8).collect();
                    let cur = out.coefficient(&key);
                    let add = XPoly::constant(BigRational::from(coef) * cm);
                    out.set(key, cur.add(&add));
                }
            });
        }
        out
    }
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        f[i] = &f[i - 1] * BigInt::from(i);
    }
    f
}

/// Calls f on every way of writing total as an ordered sum of `parts`
/// nonnegative integers.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    let mut expo = vec![0usize; parts];
    fn rec(pos: usize, remaining: usize, expo: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if pos + 1 == expo.len() {
            expo[pos] = remaining;
            f(expo);
            return;
        }
        for v in 0..=remaining {
            expo[pos] = v;
            rec(pos + 1, remaining - v, expo, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(0, total, &mut expo, f);
}

/// Calls f on every exponent tuple with total degree <= cap.
pub(crate) fn for_each_exponent(vars: usize, cap: usize, f: &mut impl FnMut(&[usize])) {
    for total in 0..=cap {
        for_each_composition(total, vars, f);
    }
}

/// Taylor coefficients of the analytic unit u(s) = s log q * zeta_A(1+s)
/// in the scaled variable Y = s log q: u = Y/(1 - e^{-Y}), so the m-th
/// coefficient is the Bernoulli-type number B_m^+/m! (1, 1/2, 1/12, 0,
/// -1/720, ...). u(0) = 1 clears the simple pole of zeta_A at 1.
pub fn zeta_shift_expansion(order: usize) -> Vec<BigRational> {
    // invert f(Y) = (1 - e^{-Y})/Y = sum (-1)^m Y^m/(m+1)!
    let fact = factorials(order + 2);
    let f: Vec<BigRational> = (0..=order)
        .map(|m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), fact[m + 1].clone())
        })
        .collect();
    let mut u = vec![BigRational::zero(); order + 1];
    u[0] = BigRational::one();
    for m in 1..=order {
        let mut s = BigRational::zero();
        for j in 1..=m {
            s += &f[j] * &u[m - j];
        }
        u[m] = -s;
    }
    u
}

/// The m-th coefficient of u(s) in unscaled s-units, as a float:
/// u_m (log q)^m. Matches the expansion zeta_A(1+s) = 1/(s log q) + 1/2
/// + (log q/12) s - ...
pub fn zeta_shift_coefficient_f64(m: usize, q: u64) -> f64 {
    let u = zeta_shift_expansion(m);
    rational_to_f64(&u[m]) * (q as f64).ln().powi(m as i32)
}

/// exp(prefactor * sum_i y_i) with an XPoly prefactor; the coefficient of
/// y^e is prefactor^{|e|} / prod e_i!.
///
/// With prefactor x/2 this is the conjectural factor q^{(x/2) sum z_i};
/// the residue engine uses (x-1)/2, which also absorbs the
/// prod X(1/2+z_i)^{-1/2} normalization.
pub fn qx_exponential(vars: usize, cap: usize, prefactor: &XPoly) -> TruncSeries {
    let mut powers: Vec<XPoly> = Vec::with_capacity(cap + 1);
    powers.push(XPoly::one());
    for m in 1..=cap {
        powers.push(powers[m - 1].mul(prefactor));
    }
    let fact = factorials(cap);
    let mut out = TruncSeries::zero(vars, cap);
    for_each_exponent(vars, cap, &mut |expo| {
        let total: usize = expo.iter().sum();
        let mut denom = BigInt::one();
        for &e in expo {
            denom *= &fact[e];
        }
        let coef = powers[total].scale(&BigRational::new(BigInt::one(), denom));
        out.set(expo.iter().map(|&e| e as u8).collect(), coef);
    });
    out
}

/// prod_{i<j} (y_j - y_i)^2 (y_j + y_i) as a truncated series; this is the
/// Vandermonde factor Delta(z^2)^2 after cancelling prod_{i<=j}(z_i+z_j)
/// from the zeta units and prod 2z_i against z_i^{2k-1} -> z_i^{2k}.
fn vandermonde_factor(vars: usize, cap: usize) -> TruncSeries {
    let mut acc = TruncSeries::one(vars, cap);
    for i in 0..vars {
        for j in (i + 1)..vars {
            let mut diff = TruncSeries::zero(vars, cap);
            let mut e = vec![0u8; vars];
            e[j] = 1;
            diff.set(e.clone(), XPoly::one());
            e[j] = 0;
            e[i] = 1;
            diff.set(e, XPoly::constant(-BigRational::one()));
            let mut sum = TruncSeries::zero(vars, cap);
            let mut e = vec![0u8; vars];
            e[j] = 1;
            sum.set(e.clone(), XPoly::one());
            e[j] = 0;
            e[i] = 1;
            sum.set(e, XPoly::one());
            acc = acc
                .mul(&diff)
                .and_then(|s| s.mul(&diff))
                .and_then(|s| s.mul(&sum))
                .expect("factors share the series shape");
        }
    }
    acc
}

/// Extracts Q_k(x) from the k-fold residue, given the Euler-product series
/// A_k(1/2; z) in scaled variables (constant term = the truncated value
/// A_k at zero shifts; pass the constant series 1 for the A = 1 fixtures).
///
/// The total-degree cap must be at least k(2k-1), the degree of the target
/// coefficient y_1^{2k-1} ... y_k^{2k-1}.
pub fn residue_qk(k: usize, a_series: &TruncSeries, cap: usize) -> Result<QPolynomial> {
    let needed = k * (2 * k - 1);
    if cap < needed {
        return Err(Error::InsufficientOrder {
            k,
            given: cap,
            needed,
        });
    }
    if a_series.vars() != k || a_series.cap() != cap {
        return Err(Error::ShapeMismatch {
            vars_a: k,
            cap_a: cap,
            vars_b: a_series.vars(),
            cap_b: a_series.cap(),
        });
    }

    let uni = zeta_shift_expansion(cap);
    let mut h = a_series.clone();
    for i in 0..k {
        for j in i..k {
            let mut w = vec![0u32; k];
            w[i] += 1;
            w[j] += 1;
            let factor = TruncSeries::substitute_linear_form(&uni, &w, k, cap);
            h = h.mul(&factor)?;
        }
    }
    h = h.mul(&vandermonde_factor(k, cap))?;
    let prefactor = XPoly::new(vec![rat(-1, 2), rat(1, 2)]); // (x - 1)/2
    h = h.mul(&qx_exponential(k, cap, &prefactor))?;

    let target = vec![(2 * k - 1) as u8; k];
    let extracted = h.coefficient(&target);

    let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let scale = BigRational::new(BigInt::from(sign), factorials(k)[k].clone());
    let qpoly = extracted.scale(&scale);

    let coeffs: Vec<BigRational> = (0..=k * (k + 1) / 2).map(|i| qpoly.coeff(i)).collect();
    if qpoly.degree() != Some(k * (k + 1) / 2) || !coeffs.last().unwrap().is_positive() {
        return Err(Error::InvalidParameter(format!(
            "residue produced degree {:?} with leading coefficient {:?}; expected degree {} with positive leading coefficient",
            qpoly.degree(),
            qpoly.coeffs().last(),
            k * (k + 1) / 2
        )));
    }
    QPolynomial::from_rational(
        k,
        coeffs,
        QkMetadata {
            a_cutoff: None,
            series_cap: cap,
            precision: "exact rational".into(),
        },
    )
}
