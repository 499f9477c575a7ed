//! Ratios-conjecture right-hand sides: the epsilon-sum form with Y_S zeta
//! factors and the truncated Euler product A_P, plus the K = Q = 1 closed
//! form and the L'/L prediction derived from it.
//!
//! The A_P bracket is
//!
//!   1/2 ( prod_m (1 - |P|^{-1/2-gamma_m}) / prod_k (1 - |P|^{-1/2-alpha_k})
//!       + prod_m (1 + |P|^{-1/2-gamma_m}) / prod_k (1 + |P|^{-1/2-alpha_k}) )
//!
//! with no trailing "-1": for K = Q = 1 the local factor then collapses to
//! exactly (1 - |P|^{-1-2gamma}), i.e. A_P = 1/zeta_A(1+2gamma), which is
//! what the independent even-sum computation of the underlying series
//! G_P gives and what makes Y_S * A_P reproduce the closed K = Q = 1
//! ratio prediction. `ratios_ap_direct_11` provides that independent
//! route for the oracle test.

use crate::algebra::count_primes_f64;
use crate::conjecture::{inv_zeta_a_real, xfactor, zeta_a_real};
use crate::{Error, Result};

/// One epsilon-vector summand of the ratios prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsTerm {
    /// Signs epsilon_k in {-1, +1}.
    pub eps: Vec<i8>,
    /// Value of the summand (per prime).
    pub value: f64,
}

/// Per-prime ratios prediction with its epsilon-sum breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct RatiosPrediction {
    pub alphas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub cutoff: usize,
    pub value: f64,
    pub terms: Vec<EpsTerm>,
}

fn check_shift(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 0.5) {
        return Err(Error::ShiftOutOfRange {
            name,
            value: v,
            range: "(0, 1/2)",
        });
    }
    Ok(())
}

/// Y_S(alpha; gamma) from closed-form zeta_A factors.
pub fn ys_closed(q: u64, alphas: &[f64], gammas: &[f64]) -> Result<f64> {
    let mut v = 1.0;
    for (j, &aj) in alphas.iter().enumerate() {
        for &ak in &alphas[j..] {
            v *= zeta_a_real(q, 1.0 + aj + ak)?;
        }
    }
    for (m, &gm) in gammas.iter().enumerate() {
        for &gr in &gammas[m..] {
            v *= zeta_a_real(q, 1.0 + gm + gr)?;
        }
    }
    for &ak in alphas {
        for &gm in gammas {
            // denominator zeta: multiply by the entire inverse
            v *= inv_zeta_a_real(q, 1.0 + ak + gm);
        }
    }
    Ok(v)
}

/// Truncated A_P(alpha; gamma) via the corrected bracket, grouped by prime
/// degree d <= cutoff with multiplicity pi_q(d).
///
/// The local factor is rearranged before any floating arithmetic. Writing
/// sigma_k = t^{1/2+alpha_k}, rho_m = t^{1/2+gamma_m} (t = 1/|P|), the even
/// bracket over its natural denominator prod_k (1 - sigma_k^2) cancels the
/// diagonal alpha pairs of the head, leaving
///
///   local = P / C,
///   P = prod_{i<j} (1 - t^{1+a_i+a_j}) prod_{m<=r} (1 - t^{1+g_m+g_r})
///       * sum_{|S| even} (-1)^{#rho in S} prod_{x in S} x,
///   C = prod_{k,m} (1 - t^{1+a_k+g_m}),
///
/// and local - 1 = (P - C)/C where P - C is subtracted symbolically over
/// exponent keys (integer combinations of the shifts). That keeps every
/// structural cancellation exact: pi_q(d) ~ q^d/d amplifies any absolute
/// error in log(local) without bound, so only relative errors are
/// affordable, and the surviving terms are evaluated term by term.
pub fn ratios_ap_bracket(q: u64, alphas: &[f64], gammas: &[f64], cutoff: usize) -> f64 {
    let kk = alphas.len();
    let qq = gammas.len();
    let (p_sym, c_sym) = local_symbolic(kk, qq);
    let num_sym = p_sym.sub(&c_sym);
    let mut log_acc = 0.0;
    for d in 1..=cutoff {
        let num = num_sym.eval(q, d, alphas, gammas);
        if num == 0.0 {
            continue; // underflowed; pi_q(d) may no longer be finite
        }
        let den = c_sym.eval(q, d, alphas, gammas);
        log_acc += count_primes_f64(q, d) * (num / den).ln_1p();
    }
    log_acc.exp()
}

/// A polynomial in the symbols t^{1/2}, t^{alpha_k}, t^{gamma_m}: each key
/// is (n, a_1..a_K, c_1..c_Q) for the monomial t^{n/2 + sum a alpha + sum
/// c gamma}, coefficients exact integers.
#[derive(Debug, Clone)]
struct SymPoly {
    kk: usize,
    terms: std::collections::BTreeMap<Vec<i16>, i64>,
}

impl SymPoly {
    fn constant(kk: usize, qq: usize, c: i64) -> Self {
        let mut terms = std::collections::BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0i16; 1 + kk + qq], c);
        }
        SymPoly { kk, terms }
    }

    fn add_term(&mut self, key: Vec<i16>, c: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
        }
    }

    fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly {
            kk: self.kk,
            terms: std::collections::BTreeMap::new(),
        };
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let key: Vec<i16> = ka.iter().zip(kb).map(|(&x, &y)| x + y).collect();
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    /// sum of coef * q^{-d theta(key)} over all terms.
    fn eval(&self, q: u64, d: usize, alphas: &[f64], gammas: &[f64]) -> f64 {
        let lnq = (q as f64).ln();
        let mut acc = 0.0;
        for (key, &c) in &self.terms {
            let mut theta = key[0] as f64 / 2.0;
            for (i, &a) in alphas.iter().enumerate() {
                theta += key[1 + i] as f64 * a;
            }
            for (m, &g) in gammas.iter().enumerate() {
                theta += key[1 + self.kk + m] as f64 * g;
            }
            acc += c as f64 * (-(d as f64) * theta * lnq).exp();
        }
        acc
    }
}

/// Builds (P, C) of the rearranged local factor for K alphas, Q gammas.
fn local_symbolic(kk: usize, qq: usize) -> (SymPoly, SymPoly) {
    let width = 1 + kk + qq;
    let pair = |slots: &[usize]| -> SymPoly {
        // 1 - t^{1 + shift_i + shift_j}: slots index into the key tail
        let mut p = SymPoly::constant(kk, qq, 1);
        let mut key = vec![0i16; width];
        key[0] = 2;
        for &s in slots {
            key[1 + s] += 1;
        }
        p.add_term(key, -1);
        p
    };

    let mut p_sym = SymPoly::constant(kk, qq, 1);
    for i in 0..kk {
        for j in (i + 1)..kk {
            p_sym = p_sym.mul(&pair(&[i, j]));
        }
    }
    for m in 0..qq {
        for r in m..qq {
            p_sym = p_sym.mul(&pair(&[kk + m, kk + r]));
        }
    }
    // even-subset numerator of the bracket: symbols sigma_k = t^{1/2+alpha_k}
    // (key slot k), rho_m = t^{1/2+gamma_m} (key slot kk+m, sign -1)
    let symbols = kk + qq;
    let mut even = SymPoly::constant(kk, qq, 0);
    for mask in 0..(1u32 << symbols) {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut key = vec![0i16; width];
        let mut coef = 1i64;
        for s in 0..symbols {
            if mask & (1 << s) != 0 {
                key[0] += 1;
                key[1 + s] += 1;
                if s >= kk {
                    coef = -coef;
                }
            }
        }
        even.add_term(key, coef);
    }
    p_sym = p_sym.mul(&even);

    let mut c_sym = SymPoly::constant(kk, qq, 1);
    for k in 0..kk {
        for m in 0..qq {
            c_sym = c_sym.mul(&pair(&[k, kk + m]));
        }
    }
    (p_sym, c_sym)
}

/// Independent K = Q = 1 route: prod_{d<=D} (1 - q^{-d(1+2gamma)})^{pi_q(d)},
/// the degree-D truncation of 1/zeta_A(1+2gamma).
pub fn ratios_ap_direct_11(q: u64, gamma: f64, cutoff: usize) -> f64 {
    let mut log_acc = 0.0;
    for d in 1..=cutoff {
        let t = (q as f64).powf(-(d as f64) * (1.0 + 2.0 * gamma));
        log_acc += count_primes_f64(q, d) * (-t).ln_1p();
    }
    log_acc.exp()
}

/// General epsilon-sum ratios prediction (per prime) for K, Q <= 2.
///
/// value = sum_{eps in {-1,1}^K} prod_{k: eps_k = -1} |P|^{-alpha_k} X(1/2+alpha_k)
///         * Y_S(eps alpha; gamma) * A_P(eps alpha; gamma).
pub fn ratios_general(
    q: u64,
    g: usize,
    alphas: &[f64],
    gammas: &[f64],
    cutoff: usize,
) -> Result<RatiosPrediction> {
    let kk = alphas.len();
    let qq = gammas.len();
    if kk == 0 || kk > 2 || qq == 0 || qq > 2 {
        return Err(Error::InvalidParameter(format!(
            "ratios supports 1 <= K, Q <= 2, got K={kk}, Q={qq}"
        )));
    }
    for &a in alphas {
        check_shift("alpha", a)?;
    }
    for &gm in gammas {
        check_shift("gamma", gm)?;
    }
    let p_norm = (q as f64).powi(2 * g as i32 + 1);
    let mut terms = Vec::with_capacity(1 << kk);
    let mut total = 0.0;
    for mask in 0..(1u32 << kk) {
        let eps: Vec<i8> = (0..kk)
            .map(|i| if mask & (1 << i) == 0 { 1 } else { -1 })
            .collect();
        let signed: Vec<f64> = alphas
            .iter()
            .zip(&eps)
            .map(|(&a, &e)| if e == 1 { a } else { -a })
            .collect();
        let mut prefac = 1.0;
        for (i, &e) in eps.iter().enumerate() {
            if e == -1 {
                prefac *= p_norm.powf(-alphas[i]) * xfactor(q, 0.5 + alphas[i]);
            }
        }
        let ys = ys_closed(q, &signed, gammas)?;
        let ap = ratios_ap_bracket(q, &signed, gammas, cutoff);
        let value = prefac * ys * ap;
        terms.push(EpsTerm { eps, value });
        total += value;
    }
    Ok(RatiosPrediction {
        alphas: alphas.to_vec(),
        gammas: gammas.to_vec(),
        cutoff,
        value: total,
        terms,
    })
}

/// Closed-form K = Q = 1 prediction (per prime):
/// zeta_A(1+2a)/zeta_A(1+a+g) + |P|^{-a} X(1/2+a) zeta_A(1-2a)/zeta_A(1-a+g).
///
/// Denominator zeta factors are applied through 1/zeta_A = 1 - q^{-(..)},
/// which is entire; at gamma = alpha the second term vanishes through the
/// zeta_A(1) pole in its denominator.
pub fn ratios_rhs_11(q: u64, g: usize, alpha: f64, gamma: f64) -> Result<f64> {
    check_shift("alpha", alpha)?;
    check_shift("gamma", gamma)?;
    let first = zeta_a_real(q, 1.0 + 2.0 * alpha)? * inv_zeta_a_real(q, 1.0 + alpha + gamma);
    let p_norm = (q as f64).powi(2 * g as i32 + 1);
    let second = p_norm.powf(-alpha)
        * xfactor(q, 0.5 + alpha)
        * zeta_a_real(q, 1.0 - 2.0 * alpha)?
        * inv_zeta_a_real(q, 1.0 - alpha + gamma);
    Ok(first + second)
}

/// zeta_A'/zeta_A(1+s) = -q^{-s} log q / (1 - q^{-s}).
pub fn dlog_zeta(q: u64, s: f64) -> f64 {
    let t = (q as f64).powf(-s);
    -t * (q as f64).ln() / (1.0 - t)
}

/// Per-prime prediction for L'/L(1/2 + r):
/// zeta_A'/zeta_A(1+2r) - log q |P|^{-r} X(1/2+r) zeta_A(1-2r).
///
/// The zeta_A poles of the two terms cancel at r = 0; on 0 < r < 1/4 the
/// value is finite and equals -log q sum_{m=1}^{g} q^{-2rm}.
pub fn dlog_prediction(q: u64, g: usize, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 0.25) {
        return Err(Error::ShiftOutOfRange {
            name: "r",
            value: r,
            range: "(0, 1/4)",
        });
    }
    let p_norm = (q as f64).powi(2 * g as i32 + 1);
    let value = dlog_zeta(q, 2.0 * r)
        - (q as f64).ln() * p_norm.powf(-r) * xfactor(q, 0.5 + r) * zeta_a_real(q, 1.0 - 2.0 * r)?;
    Ok(value)
}
