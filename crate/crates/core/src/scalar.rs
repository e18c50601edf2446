//! Exact arithmetic in the coefficient ring of the framed Homfly skein:
//! integer Laurent polynomials in the framing variable `v` and the skein
//! variable `s`, extended to fractions whose denominators are products of
//! integers and quantum integers `s^k - s^-k`.
//!
//! Scalars are stored as unreduced fractions; equality is decided by
//! cross-multiplication, so no representation is ever "wrong", only larger
//! than necessary. A cheap normalisation keeps representations small:
//! joint integer content, joint monomial content, and cancellation of
//! quantum-integer factors common to numerator and denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::SkeinError;

/// Exponent pair `(a, b)` for a monomial `v^a * s^b`. Exponents are bounded
/// by machine integers; overflow is a hard error, never silent wraparound.
type Exp = (i32, i32);

/// Integer coefficient type: exact arbitrary-precision integers.
pub type Int = BigInt;

#[inline]
fn eadd(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("monomial exponent overflow")
}

/// Integer Laurent polynomial in `v` and `s`.
///
/// Terms are keyed by the exponent pair `(v-exponent, s-exponent)`; zero
/// coefficients are never stored, so the zero polynomial has an empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, Int>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The monomial `c * v^a * s^b`.
    pub fn monomial(c: i64, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((a, b), Int::from(c));
        }
        Self { terms }
    }

    pub fn var_v(k: i32) -> Self {
        Self::monomial(1, k, 0)
    }

    pub fn var_s(k: i32) -> Self {
        Self::monomial(1, 0, k)
    }

    /// The quantum integer `[m]` expanded as a Laurent polynomial:
    /// `s^(m-1) + s^(m-3) + ... + s^(1-m)`; `[0] = 0`.
    pub fn quantum_int(m: u32) -> Self {
        let mut p = Self::zero();
        for j in 0..m {
            let e = m as i32 - 1 - 2 * j as i32;
            p.insert_add((0, e), Int::one());
        }
        p
    }

    /// `s^k - s^-k`, the factors permitted in denominators.
    pub fn s_diff(k: u32) -> Self {
        let k = k as i32;
        let mut p = Self::monomial(1, 0, k);
        p.insert_add((0, -k), -Int::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Int)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: Exp, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Negate every `v`- and `s`-exponent.
    pub fn mirror(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((-a, -b), c.clone()))
            .collect();
        Self { terms }
    }

    /// Multiply by the monomial `v^a * s^b`.
    fn shift(&self, (a, b): Exp) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(x, y), c)| ((eadd(x, a), eadd(y, b)), c.clone()))
            .collect();
        Self { terms }
    }

    /// Gcd of all integer coefficients; 0 for the zero polynomial.
    fn integer_content(&self) -> Int {
        self.terms.values().fold(Int::zero(), |g, c| g.gcd(c))
    }

    fn div_int(&self, g: &Int) -> Self {
        debug_assert!(!g.is_zero());
        let terms = self.terms.iter().map(|(&e, c)| (e, c / g)).collect();
        Self { terms }
    }

    /// Componentwise minimum of the exponent pairs over the support.
    fn corner_min(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let &(a0, b0) = it.next()?;
        let (mut a, mut b) = (a0, b0);
        for &(x, y) in it {
            a = a.min(x);
            b = b.min(y);
        }
        Some((a, b))
    }

    fn s_spread(&self) -> i32 {
        let mut min = i32::MAX;
        let mut max = i32::MIN;
        for &(_, b) in self.terms.keys() {
            min = min.min(b);
            max = max.max(b);
        }
        if self.terms.is_empty() {
            0
        } else {
            max - min
        }
    }

    fn lead_coeff_negative(&self) -> bool {
        self.terms
            .values()
            .next_back()
            .map(|c| c.sign() == Sign::Minus)
            .unwrap_or(false)
    }

    /// Exact division: returns `self / d` when the quotient is again a
    /// Laurent polynomial, `None` otherwise.
    ///
    /// Both operands are shifted to ordinary polynomials with componentwise
    /// minimal exponent (0, 0); division then runs against the lex-leading
    /// term, which terminates and detects inexactness.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let sr = self.corner_min().unwrap();
        let sd = d.corner_min().unwrap();
        let mut r = self.shift((-sr.0, -sr.1));
        let d0 = d.shift((-sd.0, -sd.1));
        let (&ed, cd) = d0.terms.iter().next_back().unwrap();
        let cd = cd.clone();
        let mut q = Self::zero();
        while !r.is_zero() {
            let (&er, cr) = r.terms.iter().next_back().unwrap();
            let te = (er.0 - ed.0, er.1 - ed.1);
            if te.0 < 0 || te.1 < 0 || !(cr % &cd).is_zero() {
                return None;
            }
            let qc = cr / &cd;
            let mut t = Self::zero();
            t.insert_add(te, qc.clone());
            r = &r - &(&t * &d0);
            q.insert_add(te, qc);
        }
        Some(q.shift((sr.0 - sd.0, sr.1 - sd.1)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.insert_add((eadd(a1, a2), eadd(b1, b2)), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c)).collect();
        LaurentPoly { terms }
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering: terms sorted by `(v-exponent, s-exponent)`,
    /// every exponent written out, e.g. `-1*v^-2*s^0 + 1*v^0*s^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*v^{a}*s^{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the coefficient ring: a fraction of Laurent polynomials.
///
/// The denominator is never zero. Equality is `a*d == c*b`; every value the
/// library produces has a denominator expressible as an integer times a
/// product of factors `s^k - s^-k`.
#[derive(Clone)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::int(c))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::one() }
    }

    /// `num / den`. Panics if `den` is zero.
    pub fn ratio(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "scalar denominator is zero");
        let mut x = Self { num, den };
        x.normalize();
        x
    }

    /// `v^k`.
    pub fn v(k: i32) -> Self {
        Self::from_poly(LaurentPoly::var_v(k))
    }

    /// `s^k`.
    pub fn s(k: i32) -> Self {
        Self::from_poly(LaurentPoly::var_s(k))
    }

    /// The skein parameter `z = s - s^-1`.
    pub fn z() -> Self {
        Self::from_poly(LaurentPoly::s_diff(1))
    }

    /// The quantum integer `[m] = (s^m - s^-m)/(s - s^-1)`, expanded.
    pub fn quantum_int(m: u32) -> Self {
        Self::from_poly(LaurentPoly::quantum_int(m))
    }

    /// Quantum factorial `[m]! = [1][2]...[m]`.
    pub fn quantum_factorial(m: u32) -> Self {
        let mut x = Self::one();
        for j in 1..=m {
            x = &x * &Self::quantum_int(j);
        }
        x
    }

    /// Value of the zero-framed unknot, `(v^-1 - v)/(s - s^-1)`.
    pub fn unknot() -> Self {
        let num = &LaurentPoly::var_v(-1) - &LaurentPoly::var_v(1);
        Self::ratio(num, LaurentPoly::s_diff(1))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    /// The integer value, if the scalar is a constant integer.
    pub fn as_int(&self) -> Option<Int> {
        let q = self.num.exact_div(&self.den)?;
        if q.is_zero() {
            return Some(Int::zero());
        }
        if q.terms.len() == 1 {
            q.terms.get(&(0, 0)).cloned()
        } else {
            None
        }
    }

    /// Invert `v` and `s` in both numerator and denominator. This is the
    /// coefficient-ring half of the mirror map; it is an involutive ring
    /// homomorphism.
    pub fn mirror(&self) -> Self {
        let mut x = Self { num: self.num.mirror(), den: self.den.mirror() };
        x.normalize();
        x
    }

    pub fn recip(&self) -> Result<Self, SkeinError> {
        if self.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        let mut x = Self { num: self.den.clone(), den: self.num.clone() };
        x.normalize();
        Ok(x)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SkeinError> {
        Ok(self * &rhs.recip()?)
    }

    /// Certified exact division: succeeds only when `self / rhs` is a
    /// Laurent polynomial, and returns it with denominator 1. Used for the
    /// quantities the skein theory asserts to be polynomial.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self, SkeinError> {
        if rhs.is_zero() {
            return Err(SkeinError::DivisionByZero);
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        match num.exact_div(&den) {
            Some(q) => Ok(Self::from_poly(q)),
            None => Err(SkeinError::InexactDivision(format!("({self}) by ({rhs})"))),
        }
    }

    /// Integer power; negative exponents go through `recip` and panic on zero.
    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 {
            self.recip().expect("zero scalar raised to a negative power")
        } else {
            self.clone()
        };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "scalar denominator is zero");
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // Joint integer content.
        let g = self.num.integer_content().gcd(&self.den.integer_content());
        if !g.is_one() {
            self.num = self.num.div_int(&g);
            self.den = self.den.div_int(&g);
        }
        // Joint monomial content: divide out a common monomial factor. Only
        // nonnegative exponents count as a factor here, so normalisation
        // never introduces monomials into the denominator.
        let (na, nb) = self.num.corner_min().unwrap();
        let (da, db) = self.den.corner_min().unwrap();
        let c = (na.min(da).max(0), nb.min(db).max(0));
        if c != (0, 0) {
            self.num = self.num.shift((-c.0, -c.1));
            self.den = self.den.shift((-c.0, -c.1));
        }
        // Cancel quantum-integer factors shared by numerator and denominator.
        // This keeps the denominators produced by iterated closures from
        // growing with the number of accumulated terms.
        if !self.den.is_one() {
            let kmax = (self.num.s_spread().min(self.den.s_spread()) / 2).max(0) as u32;
            for k in (1..=kmax).rev() {
                let atom = LaurentPoly::s_diff(k);
                while let (Some(n), Some(d)) =
                    (self.num.exact_div(&atom), self.den.exact_div(&atom))
                {
                    self.num = n;
                    self.den = d;
                }
            }
            let g = self.num.integer_content().gcd(&self.den.integer_content());
            if !g.is_one() {
                self.num = self.num.div_int(&g);
                self.den = self.den.div_int(&g);
            }
        }
        if self.den.lead_coeff_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }
}

impl PartialEq for Scalar {
    /// Cross-multiplication is the equality oracle: `a/b == c/d` iff
    /// `a*d == c*b` as Laurent polynomials.
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut x = if self.den == rhs.den {
            Scalar { num: &self.num + &rhs.num, den: self.den.clone() }
        } else {
            Scalar {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            }
        };
        x.normalize();
        x
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut x = Scalar { num: &self.num * &rhs.num, den: &self.den * &rhs.den };
        x.normalize();
        x
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use `checked_div` to observe the error.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned_binop {
    ($($op:ident :: $f:ident),*) => {$(
        impl $op for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                $op::$f(&self, &rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Canonical rendering: plain polynomial when the denominator is 1,
    /// otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(text_terms: &[(i64, i32, i32)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(c, a, b) in text_terms {
            p.insert_add((a, b), Int::from(c));
        }
        p
    }

    #[test]
    fn unit_cancellation() {
        assert_eq!(&Scalar::v(1) * &Scalar::v(-1), Scalar::one());
    }

    #[test]
    fn difference_of_squares() {
        let z = Scalar::z();
        let sum = &Scalar::s(1) + &Scalar::s(-1);
        let expect = &Scalar::s(2) - &Scalar::s(-2);
        assert_eq!(&z * &sum, expect);
    }

    #[test]
    fn exact_quotient_of_quantum_difference() {
        let top = &Scalar::s(2) - &Scalar::s(-2);
        let q = top.exact_div(&Scalar::z()).unwrap();
        assert_eq!(q, &Scalar::s(1) + &Scalar::s(-1));
        assert_eq!(q, Scalar::quantum_int(2));
    }

    #[test]
    fn inexact_division_is_an_error() {
        let r = Scalar::one().exact_div(&Scalar::z());
        assert!(matches!(r, Err(SkeinError::InexactDivision(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(SkeinError::DivisionByZero));
    }

    #[test]
    fn mirror_basics() {
        assert_eq!(Scalar::v(1).mirror(), Scalar::v(-1));
        assert_eq!(Scalar::z().mirror(), -Scalar::z());
        for m in 0..6 {
            assert_eq!(Scalar::quantum_int(m).mirror(), Scalar::quantum_int(m));
        }
    }

    #[test]
    fn quantum_int_values() {
        assert_eq!(Scalar::quantum_int(0), Scalar::zero());
        assert_eq!(Scalar::quantum_int(1), Scalar::one());
        assert_eq!(Scalar::quantum_int(2), &Scalar::s(1) + &Scalar::s(-1));
        for m in 0..=12 {
            let lhs = &Scalar::quantum_int(m) * &Scalar::z();
            let rhs = &Scalar::s(m as i32) - &Scalar::s(-(m as i32));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn unknot_value() {
        let d = Scalar::unknot();
        assert!(!d.is_zero());
        assert_eq!(&d * &Scalar::z(), &Scalar::v(-1) - &Scalar::v(1));
        assert_eq!(d.mirror(), d);
    }

    #[test]
    fn rendering_matches_canonical_format() {
        let p = sp(&[(-1, -2, 0), (1, 0, 2)]);
        assert_eq!(p.to_string(), "-1*v^-2*s^0 + 1*v^0*s^2");
        let frac = Scalar::ratio(sp(&[(1, -2, 0), (-1, 0, 0)]), LaurentPoly::s_diff(1));
        assert_eq!(frac.to_string(), "(1*v^-2*s^0 + -1*v^0*s^0)/(-1*v^0*s^-1 + 1*v^0*s^1)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn denominators_stay_small_under_accumulation() {
        // Sums of delta-weighted terms should keep a single power of z in
        // the denominator, not one per accumulated term.
        let d = Scalar::unknot();
        let mut acc = Scalar::zero();
        for k in 0..50i64 {
            acc = &acc + &(&Scalar::int(k % 5 - 2) * &d);
        }
        assert!(acc.den().terms().count() <= 2, "denominator blew up: {}", acc.den());
    }

    #[test]
    fn coefficients_are_arbitrary_precision() {
        // 2^200 * v, well beyond any machine integer.
        let mut big = Scalar::one();
        for _ in 0..200 {
            big = &big * &Scalar::int(2);
        }
        let expect: Int = Int::from(1) << 200;
        assert_eq!(big.as_int(), Some(expect));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-4i32..=4), (-4i32..=4), (-5i64..=5)), 0..5).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (a, b, c) in ts {
                p.insert_add((a, b), Int::from(c));
            }
            p
        })
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_poly(), 0u32..3, -3i64..=3).prop_map(|(num, k, dint)| {
            // Denominators drawn from the permitted family: an integer times
            // quantum-integer factors.
            let mut den = LaurentPoly::int(if dint == 0 { 1 } else { dint });
            for j in 1..=k {
                den = &den * &LaurentPoly::s_diff(j);
            }
            Scalar::ratio(num, den)
        })
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a);
            }
        }

        #[test]
        fn mirror_is_an_involutive_homomorphism(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.mirror().mirror(), a.clone());
            prop_assert_eq!((&a * &b).mirror(), &a.mirror() * &b.mirror());
            prop_assert_eq!((&a + &b).mirror(), &a.mirror() + &b.mirror());
        }

        #[test]
        fn exact_division_round_trips(a in arb_scalar(), b in arb_scalar()) {
            if !b.is_zero() {
                let prod = &a * &b;
                if a.den().is_one() && b.den().is_one() {
                    let q = prod.exact_div(&b).unwrap();
                    prop_assert_eq!(q, a);
                }
            }
        }
    }
}
