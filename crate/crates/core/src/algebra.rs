//! Exact arithmetic in F_q and F_q\[T\] for odd prime q.
//!
//! Polynomials are stored as ascending coefficient vectors with trailing
//! zeros trimmed; the empty vector is the zero polynomial. That canonical
//! form makes structural equality, hashing and enumeration order
//! deterministic. The norm of nonzero f is |f| = q^{deg f}.
//!
//! Irreducibility is decided by the deterministic Rabin criterion:
//! f of degree n is irreducible iff T^{q^n} = T (mod f) and
//! gcd(T^{q^{n/r}} - T, f) = 1 for every prime r dividing n.

use crate::{Error, Result};

/// An element of the prime field F_q, q an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    q: u64,
}

impl FieldElement {
    /// Reduces `value` mod q. Panics if q is not an odd prime >= 3.
    pub fn new(value: u64, q: u64) -> Self {
        assert!(is_odd_prime(q), "modulus {q} is not an odd prime");
        FieldElement {
            value: value % q,
            q,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Trial-division primality for the small moduli used here.
pub fn is_odd_prime(q: u64) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
fn addm(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
fn mulm(a: u64, b: u64, q: u64) -> u64 {
    // q < 2^31 keeps the product inside u64.
    debug_assert!(q < (1 << 31));
    (a * b) % q
}

/// a^e mod q by square-and-multiply.
pub fn pow_mod_u64(mut a: u64, mut e: u64, q: u64) -> u64 {
    a %= q;
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, q);
        }
        a = mulm(a, a, q);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse in F_q (Fermat). Panics on zero.
fn inv_mod(a: u64, q: u64) -> u64 {
    assert!(a % q != 0, "inverse of zero in F_{q}");
    pow_mod_u64(a, q - 2, q)
}

/// A polynomial over F_q in canonical ascending-coefficient form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
    q: u64,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, reducing mod q and
    /// trimming trailing zeros.
    pub fn new(coeffs: Vec<u64>, q: u64) -> Self {
        assert!(is_odd_prime(q), "modulus {q} is not an odd prime");
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % q).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { coeffs: c, q }
    }

    pub fn zero(q: u64) -> Self {
        Poly::new(vec![], q)
    }

    pub fn one(q: u64) -> Self {
        Poly::new(vec![1], q)
    }

    /// The monomial T.
    pub fn t(q: u64) -> Self {
        Poly::new(vec![0, 1], q)
    }

    pub fn constant(c: u64, q: u64) -> Self {
        Poly::new(vec![c], q)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// |f| = q^{deg f} for nonzero f. Panics on zero.
    pub fn norm(&self) -> u128 {
        let d = self.degree().expect("norm of the zero polynomial");
        (self.q as u128).pow(d as u32)
    }

    fn assert_same_field(&self, other: &Poly) {
        assert_eq!(self.q, other.q, "mixed moduli {} and {}", self.q, other.q);
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = addm(self.coeff(i), other.coeff(i), self.q);
        }
        Poly::new(c, self.q)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![0u64; n];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = subm(self.coeff(i), other.coeff(i), self.q);
        }
        Poly::new(c, self.q)
    }

    /// Schoolbook product; degrees here are tiny.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = addm(c[i + j], mulm(a, b, self.q), self.q);
            }
        }
        Poly::new(c, self.q)
    }

    pub fn scale(&self, c: u64, q_check: u64) -> Poly {
        assert_eq!(self.q, q_check);
        Poly::new(
            self.coeffs
                .iter()
                .map(|&a| mulm(a, c % self.q, self.q))
                .collect(),
            self.q,
        )
    }

    /// Makes a nonzero polynomial monic, returning (monic, leading coefficient).
    pub fn monic_split(&self) -> (Poly, u64) {
        let lc = self.leading_coeff();
        if lc == 0 || lc == 1 {
            return (self.clone(), lc);
        }
        (self.scale(inv_mod(lc, self.q), self.q), lc)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "T")?,
                1 => write!(f, "{c}T")?,
                _ if c == 1 => write!(f, "T^{i}")?,
                _ => write!(f, "{c}T^{i}")?,
            }
        }
        Ok(())
    }
}

/// Exact division with remainder: a = quot * b + rem, deg rem < deg b.
pub fn poly_divmod(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    a.assert_same_field(b);
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let q = a.q;
    let db = b.degree().unwrap();
    if a.degree().map_or(true, |da| da < db) {
        return Ok((Poly::zero(q), a.clone()));
    }
    let da = a.degree().unwrap();
    let inv_lead = inv_mod(b.leading_coeff(), q);
    let mut rem = a.coeffs.clone();
    let mut quot = vec![0u64; da - db + 1];
    for i in (db..=da).rev() {
        let c = mulm(rem[i], inv_lead, q);
        if c != 0 {
            quot[i - db] = c;
            for j in 0..=db {
                rem[i - db + j] = subm(rem[i - db + j], mulm(c, b.coeff(j), q), q);
            }
        }
    }
    Ok((Poly::new(quot, q), Poly::new(rem, q)))
}

/// Remainder of a mod b.
pub fn poly_rem(a: &Poly, b: &Poly) -> Result<Poly> {
    Ok(poly_divmod(a, b)?.1)
}

/// Monic gcd via the Euclidean algorithm.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = poly_rem(&x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    if x.is_zero() {
        x
    } else {
        x.monic_split().0
    }
}

/// base^e mod m by square-and-multiply. Requires deg m >= 1.
pub fn poly_mod_pow(base: &Poly, e: u128, m: &Poly) -> Result<Poly> {
    if m.degree().map_or(true, |d| d < 1) {
        return Err(Error::InvalidParameter(format!(
            "poly_mod_pow modulus must have degree >= 1, got {m}"
        )));
    }
    let q = base.modulus();
    let mut acc = Poly::one(q);
    let mut b = poly_rem(base, m)?;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&acc.mul(&b), m)?;
        }
        e >>= 1;
        if e > 0 {
            b = poly_rem(&b.mul(&b), m)?;
        }
    }
    Ok(acc)
}

/// T^{q^steps} mod m by iterated Frobenius, avoiding huge exponents.
fn frobenius_of_t(steps: usize, m: &Poly) -> Result<Poly> {
    let q = m.modulus();
    let mut cur = poly_rem(&Poly::t(q), m)?;
    for _ in 0..steps {
        cur = poly_mod_pow(&cur, q as u128, m)?;
    }
    Ok(cur)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test for monic f of degree >= 1.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    assert!(f.is_monic(), "is_irreducible expects a monic polynomial");
    if n == 1 {
        return true;
    }
    let t = Poly::t(f.modulus());
    // T^{q^n} = T (mod f)
    let frob_n = frobenius_of_t(n, f).expect("deg f >= 1");
    if frob_n != poly_rem(&t, f).expect("deg f >= 1") {
        return false;
    }
    // gcd(T^{q^{n/r}} - T, f) = 1 for each prime r | n
    for r in prime_factors(n) {
        let frob = frobenius_of_t(n / r, f).expect("deg f >= 1");
        let g = poly_gcd(&frob.sub(&t), f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// A monic irreducible polynomial, certified at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    poly: Poly,
}

impl PrimePoly {
    /// Verifies monicity and irreducibility.
    pub fn new(poly: Poly) -> Result<Self> {
        if !poly.is_monic() || poly.degree().map_or(true, |d| d < 1) {
            return Err(Error::InvalidParameter(format!(
                "{poly} is not monic of degree >= 1"
            )));
        }
        if !is_irreducible(&poly) {
            return Err(Error::InvalidParameter(format!("{poly} is reducible")));
        }
        Ok(PrimePoly { poly })
    }

    /// Wraps without re-running the Rabin test; for callers that already
    /// filtered through `is_irreducible`.
    pub(crate) fn new_unchecked(poly: Poly) -> Self {
        debug_assert!(poly.is_monic() && is_irreducible(&poly));
        PrimePoly { poly }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("prime polynomials are nonzero")
    }

    pub fn modulus(&self) -> u64 {
        self.poly.modulus()
    }

    /// Genus g with deg P = 2g + 1. Errors on even degree.
    pub fn genus(&self) -> Result<usize> {
        let d = self.degree();
        if d % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "deg P = {d} is even; the ensemble needs odd degree 2g+1"
            )));
        }
        Ok((d - 1) / 2)
    }
}

impl std::fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

/// All q^n monic polynomials of degree n, lexicographic in the coefficient
/// vector with the constant coefficient varying fastest.
pub fn enumerate_monic(q: u64, n: usize) -> MonicIter {
    assert!(is_odd_prime(q));
    let total = (q as u128).pow(n as u32);
    MonicIter {
        q,
        n,
        next: 0,
        total,
    }
}

/// Iterator behind [`enumerate_monic`]; also exposes random access by index
/// so sweeps can partition the range deterministically.
#[derive(Debug, Clone)]
pub struct MonicIter {
    q: u64,
    n: usize,
    next: u128,
    total: u128,
}

impl MonicIter {
    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The index-th monic polynomial of degree n (base-q digits of index,
    /// constant coefficient = least significant digit).
    pub fn at(&self, index: u128) -> Poly {
        monic_by_index(self.q, self.n, index)
    }
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.total {
            return None;
        }
        let p = monic_by_index(self.q, self.n, self.next);
        self.next += 1;
        Some(p)
    }
}

pub(crate) fn monic_by_index(q: u64, n: usize, index: u128) -> Poly {
    let mut c = vec![0u64; n + 1];
    let mut rest = index;
    for ci in c.iter_mut().take(n) {
        *ci = (rest % q as u128) as u64;
        rest /= q as u128;
    }
    c[n] = 1;
    Poly::new(c, q)
}

/// Integer Moebius function on small n.
pub fn moebius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut factors = 0;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^{n/d}.
pub fn count_primes(q: u64, n: usize) -> u128 {
    assert!(n >= 1);
    let mut sum: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            let term = (q as i128).pow((n / d) as u32);
            sum += moebius(d) as i128 * term;
        }
    }
    debug_assert!(sum > 0 && sum % n as i128 == 0);
    (sum / n as i128) as u128
}

/// Same count in f64, for tail sums at degrees where q^n overflows u128.
pub fn count_primes_f64(q: u64, n: usize) -> f64 {
    assert!(n >= 1);
    let mut sum = 0.0;
    for d in 1..=n {
        if n % d == 0 {
            sum += moebius(d) as f64 * (q as f64).powi((n / d) as i32);
        }
    }
    sum / n as f64
}

/// Monic square root by coefficient matching: returns h with h^2 = f when
/// f is a perfect square, else None. f must be monic.
pub fn poly_square_root(f: &Poly) -> Option<Poly> {
    assert!(f.is_monic(), "poly_square_root expects a monic polynomial");
    let q = f.modulus();
    let d = f.degree().expect("monic implies nonzero");
    if d % 2 != 0 {
        return None;
    }
    let m = d / 2;
    let mut h = vec![0u64; m + 1];
    h[m] = 1;
    let inv2 = inv_mod(2, q);
    // Solve top-down: coefficient of T^{2m-j} in h^2 determines h[m-j].
    for j in 1..=m {
        let mut acc = 0u64;
        for i in 1..j {
            // cross terms h[m-i] * h[m-(j-i)] already known
            acc = addm(acc, mulm(h[m - i], h[m - (j - i)], q), q);
        }
        let target = subm(f.coeff(2 * m - j), acc, q);
        h[m - j] = mulm(target, inv2, q);
    }
    let cand = Poly::new(h, q);
    if cand.mul(&cand) == *f {
        Some(cand)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::Rng;

    #[test]
    fn divmod_hand_checked() {
        // (T^2 + 1) / (T + 1) over F_3: quotient T + 2, remainder 2
        let a = Poly::new(vec![1, 0, 1], 3);
        let b = Poly::new(vec![1, 1], 3);
        let (quot, rem) = poly_divmod(&a, &b).unwrap();
        assert_eq!(quot, Poly::new(vec![2, 1], 3));
        assert_eq!(rem, Poly::new(vec![2], 3));
    }

    #[test]
    fn divmod_unit_and_self() {
        let f = Poly::new(vec![2, 0, 1, 1], 5);
        let (quot, rem) = poly_divmod(&f, &Poly::one(5)).unwrap();
        assert_eq!((quot, rem), (f.clone(), Poly::zero(5)));
        let (quot, rem) = poly_divmod(&f, &f).unwrap();
        assert_eq!((quot, rem), (Poly::one(5), Poly::zero(5)));
    }

    #[test]
    fn divmod_by_zero_errors() {
        let f = Poly::new(vec![1, 1], 3);
        assert!(matches!(
            poly_divmod(&f, &Poly::zero(3)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn divmod_reconstruction_randomized() {
        let mut rng = Rng::new(0x5eed);
        for q in [3u64, 5] {
            for _ in 0..500 {
                let a = rng.poly(q, 8);
                let mut b = rng.poly(q, 5);
                while b.is_zero() {
                    b = rng.poly(q, 5);
                }
                let (quot, rem) = poly_divmod(&a, &b).unwrap();
                assert_eq!(quot.mul(&b).add(&rem), a);
                if !rem.is_zero() {
                    assert!(rem.degree().unwrap() < b.degree().unwrap());
                }
            }
        }
    }

    #[test]
    fn mod_pow_hand_checked() {
        // T^3 mod (T+1) over F_3: T = -1, so T^3 = -1 = 2
        let r = poly_mod_pow(&Poly::t(3), 3, &Poly::new(vec![1, 1], 3)).unwrap();
        assert_eq!(r, Poly::constant(2, 3));
        // e = 0 gives 1
        let r = poly_mod_pow(&Poly::new(vec![2, 1, 1], 3), 0, &Poly::new(vec![1, 1], 3)).unwrap();
        assert_eq!(r, Poly::one(3));
    }

    #[test]
    fn mod_pow_frobenius_fixes_t() {
        // base = T, e = q^{deg m}, m irreducible: T^{q^n} = T mod m
        for q in [3u64, 5] {
            for m in enumerate_monic(q, 3).filter(is_irreducible) {
                let e = (q as u128).pow(3);
                let r = poly_mod_pow(&Poly::t(q), e, &m).unwrap();
                assert_eq!(r, poly_rem(&Poly::t(q), &m).unwrap(), "m = {m}");
            }
        }
    }

    #[test]
    fn mod_pow_additive_in_exponent() {
        let mut rng = Rng::new(77);
        let m = Poly::new(vec![1, 2, 0, 1], 3); // T^3 + 2T + 1, irreducible
        for _ in 0..200 {
            let base = rng.poly(3, 4);
            let e1 = (rng.next() % 50) as u128;
            let e2 = (rng.next() % 50) as u128;
            let lhs = poly_mod_pow(&base, e1 + e2, &m).unwrap();
            let rhs = poly_rem(
                &poly_mod_pow(&base, e1, &m)
                    .unwrap()
                    .mul(&poly_mod_pow(&base, e2, &m).unwrap()),
                &m,
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn irreducibility_hand_checked() {
        // T^3 - T + 1 = T^3 + 2T + 1 over F_3: no roots, cubic => irreducible
        assert!(is_irreducible(&Poly::new(vec![1, 2, 0, 1], 3)));
        // T^2 over F_3: visible square
        assert!(!is_irreducible(&Poly::new(vec![0, 0, 1], 3)));
        // T^2 + 1 over F_5 has roots +-2
        assert!(!is_irreducible(&Poly::new(vec![1, 0, 1], 5)));
    }

    #[test]
    fn enumerate_monic_small() {
        let got: Vec<Poly> = enumerate_monic(3, 1).collect();
        assert_eq!(
            got,
            vec![
                Poly::t(3),
                Poly::new(vec![1, 1], 3),
                Poly::new(vec![2, 1], 3)
            ]
        );
        let deg0: Vec<Poly> = enumerate_monic(5, 0).collect();
        assert_eq!(deg0, vec![Poly::one(5)]);
        assert_eq!(enumerate_monic(3, 2).count(), 9);
    }

    #[test]
    fn enumerate_monic_no_repeats() {
        use std::collections::HashSet;
        let all: Vec<Poly> = enumerate_monic(3, 4).collect();
        assert_eq!(all.len(), 81);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 81);
        assert!(all.iter().all(|f| f.is_monic() && f.degree() == Some(4)));
    }

    #[test]
    fn count_primes_matches_brute_force() {
        for q in [3u64, 5] {
            for n in 1..=4 {
                let brute = enumerate_monic(q, n).filter(is_irreducible).count() as u128;
                assert_eq!(count_primes(q, n), brute, "q={q} n={n}");
            }
        }
        assert_eq!(count_primes(3, 3), 8);
        assert_eq!(count_primes(5, 1), 5);
        assert_eq!(count_primes(3, 2), 3);
    }

    #[test]
    fn count_primes_deg2_explicit() {
        // T^2+1, T^2+T+2, T^2+2T+2 are the three monic irreducible quadratics over F_3
        let irred: Vec<Poly> = enumerate_monic(3, 2).filter(is_irreducible).collect();
        assert_eq!(
            irred,
            vec![
                Poly::new(vec![1, 0, 1], 3),
                Poly::new(vec![2, 1, 1], 3),
                Poly::new(vec![2, 2, 1], 3),
            ]
        );
    }

    #[test]
    fn square_root_cases() {
        // (T+1)^2 = T^2 + 2T + 1 over F_3
        assert_eq!(
            poly_square_root(&Poly::new(vec![1, 2, 1], 3)),
            Some(Poly::new(vec![1, 1], 3))
        );
        // odd degree
        assert_eq!(poly_square_root(&Poly::new(vec![0, 0, 0, 1], 3)), None);
        // T^2 + 1 over F_3 is not a square of any of the 3 monic linears
        for h in enumerate_monic(3, 1) {
            assert_ne!(h.mul(&h), Poly::new(vec![1, 0, 1], 3));
        }
        assert_eq!(poly_square_root(&Poly::new(vec![1, 0, 1], 3)), None);
    }

    #[test]
    fn square_root_roundtrip_exhaustive() {
        for q in [3u64, 5] {
            for d in 0..=3 {
                for h in enumerate_monic(q, d) {
                    let sq = h.mul(&h);
                    assert_eq!(poly_square_root(&sq), Some(h.clone()), "h = {h}");
                }
            }
        }
    }

    #[test]
    fn prime_poly_certificate() {
        assert!(PrimePoly::new(Poly::new(vec![1, 2, 0, 1], 3)).is_ok());
        assert!(PrimePoly::new(Poly::new(vec![0, 0, 1], 3)).is_err());
        assert!(PrimePoly::new(Poly::new(vec![2, 0, 2], 3)).is_err()); // not monic
    }

    #[test]
    fn moebius_small() {
        assert_eq!(
            (1..=10).map(moebius).collect::<Vec<_>>(),
            vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
        );
    }
}
