//! The L-polynomial L(u, chi_P) and its zeros on the circle |u| = q^{-1/2}.
//!
//! For P monic irreducible of degree 2g+1, L(s, chi_P) in the variable
//! u = q^{-s} is the degree-2g integer polynomial
//!
//!   L(u, chi_P) = sum_{n=0}^{2g} a_n u^n,   a_n = sum_{deg f = n} chi_P(f),
//!
//! with a_0 = 1 and the functional-equation symmetry
//! a_{2g-n} = q^{g-n} a_n. Only a_0..a_g are summed directly; the top half
//! is filled by the symmetry (and checked against direct sums by the
//! exhaustive oracle in the acceptance suite).
//!
//! On the circle u = q^{-1/2} e^{i theta} the normalized function
//!
//!   Lambda(theta) = e^{-i g theta} L(q^{-1/2} e^{i theta})
//!                 = b_g + 2 sum_{n<g} b_n cos((g-n) theta),  b_n = a_n q^{-n/2},
//!
//! is real and even, so the 2g zeros are located by deterministic bisection
//! in theta. Zeros of Lambda at theta = 0 or pi always have even order
//! (Lambda is even about both points), which is how double central or
//! antipodal zeros are counted.

use num_complex::Complex64;

use crate::algebra::{enumerate_monic, PrimePoly};
use crate::characters::chi_p;
use crate::{Error, Result};

/// Integer coefficients of L(u, chi_P) together with its prime modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    p: PrimePoly,
    g: usize,
    a: Vec<i64>,
}

impl LPolynomial {
    /// Wraps precomputed coefficients, checking every invariant:
    /// length 2g+1, a_0 = 1, the symmetry a_{2g-n} = q^{g-n} a_n, and the
    /// Hasse-Weil bound |a_n| <= binom(2g, n) q^{n/2}.
    pub fn from_parts(p: PrimePoly, a: Vec<i64>) -> Result<Self> {
        let g = p.genus()?;
        if a.len() != 2 * g + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients for g = {g}, got {}",
                2 * g + 1,
                a.len()
            )));
        }
        if a[0] != 1 {
            return Err(Error::InvalidParameter(format!("a_0 = {} != 1", a[0])));
        }
        let q = p.modulus();
        for n in 0..=g {
            let expected = (q as i128).pow((g - n) as u32) * a[n] as i128;
            if a[2 * g - n] as i128 != expected {
                return Err(Error::InvalidParameter(format!(
                    "functional equation violated at n = {n}: a_{} = {} != q^{} * a_{n} = {expected}",
                    2 * g - n,
                    a[2 * g - n],
                    g - n
                )));
            }
        }
        for (n, &an) in a.iter().enumerate() {
            if !hasse_weil_ok(q, g, n, an) {
                return Err(Error::InvalidParameter(format!(
                    "Hasse-Weil bound violated: |a_{n}| = {} > binom({}, {n}) q^{n}/2",
                    an.abs(),
                    2 * g
                )));
            }
        }
        Ok(LPolynomial { p, g, a })
    }

    pub fn prime(&self) -> &PrimePoly {
        &self.p
    }

    pub fn q(&self) -> u64 {
        self.p.modulus()
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.a
    }
}

/// binom(2g, n) as u128; sizes here are tiny.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// |a_n|^2 <= binom(2g,n)^2 q^n, checked in exact integers.
fn hasse_weil_ok(q: u64, g: usize, n: usize, an: i64) -> bool {
    let b = binomial(2 * g, n);
    (an as i128).pow(2) <= (b * b) as i128 * (q as i128).pow(n as u32)
}

/// Character sum a_n = sum over monic f of degree n of chi_P(f).
pub fn char_sum(p: &PrimePoly, n: usize) -> i64 {
    enumerate_monic(p.modulus(), n)
        .map(|f| chi_p(p, &f).value() as i64)
        .sum()
}

/// Builds L(u, chi_P): a_n summed directly for n <= g, top half by the
/// functional equation a_{2g-n} = q^{g-n} a_n.
pub fn l_coefficients(p: &PrimePoly) -> Result<LPolynomial> {
    let g = p.genus()?;
    let q = p.modulus();
    let mut a = vec![0i64; 2 * g + 1];
    for n in 0..=g {
        a[n] = char_sum(p, n);
    }
    for n in 0..g {
        a[2 * g - n] = (q as i64).pow((g - n) as u32) * a[n];
    }
    LPolynomial::from_parts(p.clone(), a)
}

/// All 2g+1 coefficients by direct character sums, no symmetry fill.
/// This is the independent oracle for the fill rule in `l_coefficients`.
pub fn l_coefficients_direct(p: &PrimePoly) -> Result<Vec<i64>> {
    let g = p.genus()?;
    Ok((0..=2 * g).map(|n| char_sum(p, n)).collect())
}

/// Horner evaluation of L at a complex point u.
pub fn l_eval(l: &LPolynomial, u: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &an in l.coeffs().iter().rev() {
        acc = acc * u + an as f64;
    }
    acc
}

/// Horner evaluation at a real point.
pub fn l_eval_real(l: &LPolynomial, u: f64) -> f64 {
    let mut acc = 0.0;
    for &an in l.coeffs().iter().rev() {
        acc = acc * u + an as f64;
    }
    acc
}

/// Central value L(1/2, chi_P) = L(u) at u = q^{-1/2}.
pub fn central_value(l: &LPolynomial) -> f64 {
    l_eval_real(l, 1.0 / (l.q() as f64).sqrt())
}

/// Shifted value L(1/2 + r, chi_P) at real r, i.e. L(u) at u = q^{-1/2-r}.
pub fn shifted_value(l: &LPolynomial, r: f64) -> f64 {
    l_eval_real(l, (l.q() as f64).powf(-0.5 - r))
}

/// L'/L(s) at s = 1/2 + r (derivative in s): -log q * u L'(u)/L(u).
pub fn dlog_value(l: &LPolynomial, r: f64) -> f64 {
    let q = l.q() as f64;
    let u = q.powf(-0.5 - r);
    let a = l.coeffs();
    let mut deriv = 0.0; // L'(u) by Horner
    for n in (1..a.len()).rev() {
        deriv = deriv * u + n as f64 * a[n] as f64;
    }
    let mut val = 0.0;
    for &an in a.iter().rev() {
        val = val * u + an as f64;
    }
    -q.ln() * u * deriv / val
}

/// The two-sum split of L(s): sum_{deg <= g} chi(n)/|n|^s
/// + X_P(s) sum_{deg <= g-1} chi(n)/|n|^{1-s}, X_P(s) = q^{g(1-2s)}.
/// Exact in function fields; retained as a cross-check of `l_eval`.
pub fn l_eval_split(l: &LPolynomial, s: Complex64) -> Complex64 {
    let q = l.q() as f64;
    let g = l.genus();
    let lnq = q.ln();
    let mut first = Complex64::new(0.0, 0.0);
    for m in 0..=g {
        // |n| = q^m summed over a_m terms
        first += l.coeffs()[m] as f64 * (-s * (m as f64) * lnq).exp();
    }
    let mut second = Complex64::new(0.0, 0.0);
    for m in 0..g {
        second += l.coeffs()[m] as f64 * ((s - 1.0) * (m as f64) * lnq).exp();
    }
    let xp = ((1.0 - 2.0 * s) * (g as f64) * lnq).exp();
    first + xp * second
}

/// The 2g zero angles of L on |u| = q^{-1/2}, sorted ascending in (-pi, pi].
#[derive(Debug, Clone)]
pub struct ZeroSet {
    thetas: Vec<f64>,
    g: usize,
}

impl ZeroSet {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Zero ordinates t in s-coordinates: u = q^{-1/2 - it} gives
    /// t = -theta / log q.
    pub fn ordinates(&self, q: u64) -> Vec<f64> {
        let lnq = (q as f64).ln();
        self.thetas.iter().map(|&th| -th / lnq).collect()
    }
}

/// Lambda(theta) from the normalized coefficients b_0..b_g.
#[inline]
fn lambda(b: &[f64], g: usize, theta: f64) -> f64 {
    let mut s = b[g];
    for (n, &bn) in b.iter().enumerate().take(g) {
        s += 2.0 * bn * ((g - n) as f64 * theta).cos();
    }
    s
}

const LAMBDA_ZERO_TOL: f64 = 1e-10;

/// Locates all 2g zeros of L on the circle.
///
/// Bisection on a uniform theta-grid over [0, pi] (4096*g panels, doubled
/// on a count mismatch), zeros reflected through theta -> -theta. Touching
/// zeros, where |Lambda| dips below 1e-10 without a sign change, count
/// twice; so do zeros at theta = 0 or pi, where Lambda is even.
pub fn zeros(l: &LPolynomial) -> Result<ZeroSet> {
    let g = l.genus();
    let q = l.q() as f64;
    if g == 0 {
        return Ok(ZeroSet { thetas: vec![], g });
    }
    let b: Vec<f64> = l
        .coeffs()
        .iter()
        .take(g + 1)
        .enumerate()
        .map(|(n, &an)| an as f64 * q.powf(-(n as f64) / 2.0))
        .collect();

    for attempt in 0..4 {
        let panels = (4096 * g) << attempt;
        if let Some(thetas) = try_locate(&b, g, panels) {
            debug_assert_eq!(thetas.len(), 2 * g);
            return Ok(ZeroSet { thetas, g });
        }
    }

    let panels = (4096 * g) << 3;
    let found = try_locate_count(&b, g, panels);
    Err(Error::ZeroLocationFailure {
        q: l.q(),
        g,
        found,
        expected: 2 * g,
        p_coeffs: l.prime().poly().coeffs().to_vec(),
    })
}

fn try_locate(b: &[f64], g: usize, panels: usize) -> Option<Vec<f64>> {
    let half = collect_half_zeros(b, g, panels);
    let total: usize = half
        .iter()
        .map(|&(th, m)| {
            if th == 0.0 || th == std::f64::consts::PI {
                m
            } else {
                2 * m
            }
        })
        .sum();
    if total != 2 * g {
        return None;
    }
    // contract: every returned angle satisfies |Lambda(theta)| < 1e-10
    if half
        .iter()
        .any(|&(th, _)| lambda(b, g, th).abs() >= LAMBDA_ZERO_TOL)
    {
        return None;
    }
    let mut thetas = Vec::with_capacity(2 * g);
    for &(th, mult) in &half {
        if th == 0.0 || th == std::f64::consts::PI {
            for _ in 0..mult {
                thetas.push(th);
            }
        } else {
            for _ in 0..mult {
                thetas.push(th);
                thetas.push(-th);
            }
        }
    }
    thetas.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Some(thetas)
}

fn try_locate_count(b: &[f64], g: usize, panels: usize) -> usize {
    collect_half_zeros(b, g, panels)
        .iter()
        .map(|&(th, m)| {
            if th == 0.0 || th == std::f64::consts::PI {
                m
            } else {
                2 * m
            }
        })
        .sum()
}

/// Zeros of Lambda in [0, pi] as (theta, multiplicity); endpoint zeros
/// carry their full even (0) / remaining (pi) multiplicity directly.
fn collect_half_zeros(b: &[f64], g: usize, panels: usize) -> Vec<(f64, usize)> {
    use std::f64::consts::PI;
    let h = PI / panels as f64;
    let vals: Vec<f64> = (0..=panels).map(|j| lambda(b, g, j as f64 * h)).collect();
    let mut out: Vec<(f64, usize)> = Vec::new();

    // Endpoints: Lambda is even about 0 and pi, so a zero there is double.
    if vals[0].abs() < LAMBDA_ZERO_TOL {
        out.push((0.0, 2));
    }
    if vals[panels].abs() < LAMBDA_ZERO_TOL {
        out.push((PI, 2));
    }

    for j in 0..panels {
        let (lo, hi) = (vals[j], vals[j + 1]);
        if lo == 0.0 || hi == 0.0 {
            // exact node hits are handled by the endpoint/touching logic or
            // disappear on refinement
            continue;
        }
        if lo.signum() != hi.signum() {
            let theta = bisect(b, g, j as f64 * h, (j + 1) as f64 * h, lo);
            if theta > 0.0 && theta < PI {
                out.push((theta, 1));
            }
        }
    }

    // Touching zeros: interior local minima of |Lambda| below tolerance.
    for j in 1..panels {
        let (a, m, z) = (vals[j - 1].abs(), vals[j].abs(), vals[j + 1].abs());
        if m <= a && m <= z && vals[j - 1].signum() == vals[j + 1].signum() && m < 1e-6 {
            let theta = refine_minimum(b, g, (j - 1) as f64 * h, (j + 1) as f64 * h);
            if lambda(b, g, theta).abs() < LAMBDA_ZERO_TOL
                && theta > 0.0
                && theta < PI
                && !out.iter().any(|&(t, _)| (t - theta).abs() < h)
            {
                out.push((theta, 2));
            }
        }
    }

    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

fn bisect(b: &[f64], g: usize, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let sign_lo = flo.signum();
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let fm = lambda(b, g, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the minimum of |Lambda| on [lo, hi].
fn refine_minimum(b: &[f64], g: usize, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = lambda(b, g, c).abs();
    let mut fd = lambda(b, g, d).abs();
    for _ in 0..80 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = lambda(b, g, c).abs();
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = lambda(b, g, d).abs();
        }
    }
    0.5 * (lo + hi)
}

/// Maps zero angles to scaled ordinates tau = t (2g log q) / (2 pi) with
/// t = -theta / log q; the log q factors cancel to tau = -theta g / pi.
/// Input order is preserved.
pub fn scaled_ordinates(z: &ZeroSet, _q: u64, g: usize) -> Vec<f64> {
    z.thetas()
        .iter()
        .map(|&th| -th * g as f64 / std::f64::consts::PI)
        .collect()
}
