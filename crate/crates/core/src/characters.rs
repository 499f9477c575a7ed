//! Quadratic residue symbols in F_q\[T\] and the character chi_P(f) = (P/f).
//!
//! The symbol (A/B) for monic B extends the Euler-criterion symbol
//! multiplicatively over the factorization of B (Jacobi style) and is
//! evaluated without factoring, by a Euclidean loop built on the
//! reciprocity law
//!
//!   (A/B) = (B/A) * (-1)^{((q-1)/2) deg A deg B}
//!
//! for coprime monic A, B. Each remainder is normalized to monic by pulling
//! its leading coefficient through the constant rule
//! (c/B) = chi2(c)^{deg B}, chi2(c) = c^{(q-1)/2}.

use crate::algebra::{poly_gcd, poly_rem, pow_mod_u64, FieldElement, Poly, PrimePoly};
use crate::{Error, Result};

/// Value of a quadratic residue symbol: -1, 0 or +1.
///
/// Zero occurs exactly when the two arguments share a nontrivial factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolValue(i8);

impl SymbolValue {
    pub const PLUS: SymbolValue = SymbolValue(1);
    pub const MINUS: SymbolValue = SymbolValue(-1);
    pub const ZERO: SymbolValue = SymbolValue(0);

    pub fn value(&self) -> i8 {
        self.0
    }

    pub fn mul(self, other: SymbolValue) -> SymbolValue {
        SymbolValue(self.0 * other.0)
    }
}

impl std::fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// chi2(c) = c^{(q-1)/2} mapped to +-1. Errors on c = 0.
fn chi2(c: u64, q: u64) -> Result<SymbolValue> {
    if c % q == 0 {
        return Err(Error::ZeroConstantSymbol);
    }
    let e = pow_mod_u64(c, (q - 1) / 2, q);
    Ok(if e == 1 {
        SymbolValue::PLUS
    } else {
        SymbolValue::MINUS
    })
}

/// Symbol of a nonzero constant c against any monic modulus of degree d:
/// (c/B) = chi2(c)^{deg B}.
pub fn constant_symbol(c: FieldElement, d: usize) -> Result<SymbolValue> {
    let s = chi2(c.value(), c.modulus())?;
    Ok(if d % 2 == 0 { SymbolValue::PLUS } else { s })
}

/// Sign picked up when swapping (A/B) -> (B/A): trivial for q = 1 mod 4.
fn reciprocity_sign(q: u64, deg_a: usize, deg_b: usize) -> SymbolValue {
    if (q - 1) / 2 % 2 == 1 && deg_a % 2 == 1 && deg_b % 2 == 1 {
        SymbolValue::MINUS
    } else {
        SymbolValue::PLUS
    }
}

/// Jacobi-style quadratic residue symbol (A/B) for monic B.
///
/// Multiplicative over the prime factorization of B; zero iff
/// gcd(A, B) != 1. Runs in O(deg^2) field operations.
pub fn residue_symbol(a: &Poly, b: &Poly) -> SymbolValue {
    assert!(
        b.is_monic(),
        "residue symbol needs a monic modulus, got {b}"
    );
    let q = b.modulus();
    let mut acc = SymbolValue::PLUS;
    let mut num = a.clone();
    let mut den = b.clone();
    loop {
        let db = den.degree().expect("monic modulus is nonzero");
        if db == 0 {
            // (A/1) = 1
            return acc;
        }
        num = poly_rem(&num, &den).expect("nonzero modulus");
        if num.is_zero() {
            return SymbolValue::ZERO;
        }
        if num.is_constant() {
            let c = FieldElement::new(num.coeff(0), q);
            return acc.mul(constant_symbol(c, db).expect("nonzero constant"));
        }
        // pull out the leading coefficient, then flip the monic pair
        let (monic_num, lead) = num.monic_split();
        if lead != 1 {
            let c = FieldElement::new(lead, q);
            acc = acc.mul(constant_symbol(c, db).expect("nonzero leading coefficient"));
        }
        let da = monic_num.degree().unwrap();
        acc = acc.mul(reciprocity_sign(q, da, db));
        num = den;
        den = monic_num;
    }
}

/// The quadratic Dirichlet character chi_P(f) = (P/f) for monic f.
///
/// Completely multiplicative in f with chi_P(1) = 1. Non-monic arguments
/// are rejected by assertion: every sum in the moment formulas runs over
/// monic polynomials only, and silently normalizing would double count.
pub fn chi_p(p: &PrimePoly, f: &Poly) -> SymbolValue {
    assert!(f.is_monic(), "chi_P is defined for monic f, got {f}");
    residue_symbol(p.poly(), f)
}

/// Slow reference symbol by the Euler criterion: A^{(|P|-1)/2} mod P.
///
/// Returns 0 when P | A, otherwise the constant +-1. A non-constant or
/// non-unit residue means the field arithmetic is broken and is reported
/// as an error rather than a value.
pub fn euler_criterion_oracle(a: &Poly, p: &PrimePoly) -> Result<SymbolValue> {
    let q = p.modulus();
    let d = p.degree();
    let reduced = poly_rem(a, p.poly())?;
    if reduced.is_zero() {
        return Ok(SymbolValue::ZERO);
    }
    let e = ((q as u128).pow(d as u32) - 1) / 2;
    let r = crate::algebra::poly_mod_pow(&reduced, e, p.poly())?;
    if !r.is_constant() {
        return Err(Error::EulerCriterionBroken { deg_p: d });
    }
    match r.coeff(0) {
        1 => Ok(SymbolValue::PLUS),
        c if c == q - 1 => Ok(SymbolValue::MINUS),
        _ => Err(Error::EulerCriterionBroken { deg_p: d }),
    }
}

/// gcd-based zero test used by property tests: (A/B) = 0 iff gcd != 1.
pub fn shares_factor(a: &Poly, b: &Poly) -> bool {
    poly_gcd(a, b).degree() != Some(0)
}
