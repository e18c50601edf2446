//! The positive part of the Homfly skein of the annulus, modelled as the
//! free commutative polynomial ring on the generators `h_1, h_2, ..`.
//!
//! The closed-braid elements enter through their generating series: the
//! series of closed positive cycles is the quotient `H(st)/H(s^-1 t)` of the
//! `h`-generating series, the power sums come from `log H(t)`, and the
//! mixed-crossing closures are produced by a one-step skein recursion from
//! the mirrored base case. Divisions by `z` asserted by the theory are
//! certified exact and abort otherwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::closure::markov_trace;
use crate::scalar::Scalar;
use crate::series::Series;
use crate::threading::{symmetrizer, symmetrizer_norm};

/// A monomial in the `h_i`: a multiset of indices, stored descending.
/// Ordered by total degree, then so that e.g. `h_2` precedes `h_1^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HMonomial {
    indices: Vec<u32>,
}

impl HMonomial {
    pub fn unit() -> Self {
        Self { indices: Vec::new() }
    }

    pub fn single(i: u32) -> Self {
        assert!(i >= 1, "h-indices start at 1");
        Self { indices: vec![i] }
    }

    pub fn from_indices(mut indices: Vec<u32>) -> Self {
        assert!(indices.iter().all(|&i| i >= 1), "h-indices start at 1");
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Self { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.iter().map(|&i| i as usize).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Self { indices }
    }
}

impl PartialOrd for HMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.indices.cmp(&self.indices))
    }
}

impl fmt::Display for HMonomial {
    /// Renders ascending with exponents, e.g. `h1^2*h2`; the unit is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut iter = self.indices.iter().rev().peekable();
        while let Some(&i) = iter.next() {
            let mut mult = 1;
            while iter.peek() == Some(&&i) {
                iter.next();
                mult += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "h{i}")?;
            } else {
                write!(f, "h{i}^{mult}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the (positive) annulus skein: a polynomial in the `h_i` with
/// `Scalar` coefficients. Multiplication is commutative; the grading gives a
/// monomial the total of its indices.
#[derive(Clone)]
pub struct AnnulusElem {
    terms: BTreeMap<HMonomial, Scalar>,
}

impl AnnulusElem {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(HMonomial::unit(), Scalar::one())
    }

    /// The generator `h_i`.
    pub fn h(i: u32) -> Self {
        Self::monomial(HMonomial::single(i), Scalar::one())
    }

    pub fn monomial(m: HMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_scalar(c: Scalar) -> Self {
        Self::monomial(HMonomial::unit(), c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &HMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn insert_add(&mut self, m: HMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.insert_add(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The mirror map: switch all crossings and invert `v`, `s`. Each `h_n`
    /// is mirror-invariant, so only the coefficients change.
    pub fn mirror(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), c.mirror());
        }
        out
    }

    /// Divide every coefficient by `c`, certifying that each quotient is a
    /// Laurent polynomial. Panics when the division is inexact, since the
    /// callers use it only where the theory asserts divisibility.
    fn certified_div(&self, c: &Scalar, what: &str) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            let q = x.exact_div(c).unwrap_or_else(|e| {
                panic!("certified division failed for {what} at {m}: {e}")
            });
            out.insert_add(m.clone(), q);
        }
        out
    }

    /// Whether every monomial has total degree `d` (vacuously true for 0).
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn top_degree(&self) -> usize {
        self.terms.keys().map(HMonomial::degree).max().unwrap_or(0)
    }
}

impl PartialEq for AnnulusElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(m, c)| other.terms.get(m).map(|d| c == d).unwrap_or(false))
    }
}

impl Eq for AnnulusElem {}

impl Add for &AnnulusElem {
    type Output = AnnulusElem;
    fn add(self, rhs: &AnnulusElem) -> AnnulusElem {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AnnulusElem {
    type Output = AnnulusElem;
    fn sub(self, rhs: &AnnulusElem) -> AnnulusElem {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c);
        }
        out
    }
}

impl Neg for &AnnulusElem {
    type Output = AnnulusElem;
    fn neg(self) -> AnnulusElem {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for AnnulusElem {
    /// Canonical rendering: monomials by degree then index multiset, e.g.
    /// `2*h2 - 1*h1^2`. Plain integer coefficients render bare; anything
    /// else is parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (body, negative) = match c.as_int() {
                Some(k) => {
                    let neg = k.sign() == num_bigint::Sign::Minus;
                    (format!("{}*{m}", k.magnitude()), neg)
                }
                None => (format!("({c})*{m}"), false),
            };
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AnnulusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The generating series of closed positive cycles,
/// `1 + z * sum_m C_m t^m = H(st)/H(s^-1 t)`, truncated at `t^M`.
pub fn cycle_series(truncation: usize) -> Series {
    let h = Series::h_series(truncation);
    let top = h.scale_t(&Scalar::s(1));
    let bottom = h.scale_t(&Scalar::s(-1)).inverse().expect("constant term 1");
    top.mul(&bottom)
}

/// The closure of the positive cycle braid `sigma_(m-1) .. sigma_1` on `m`
/// strands, expanded in the `h`-basis: `1/z` times the `t^m` coefficient of
/// `cycle_series`. The division by `z` is certified exact.
pub fn closed_cycle(m: usize) -> AnnulusElem {
    assert!(m >= 1, "closed cycles need at least one strand");
    let coeff = cycle_series(m).coeff(m).clone();
    coeff.certified_div(&Scalar::z(), "closed cycle coefficient")
}

/// The series `1 + z * sum_m C_m t^m` reassembled from `closed_cycle`.
pub fn cycle_series_from_elems(truncation: usize) -> Series {
    let z = Scalar::z();
    let mut coeffs = vec![AnnulusElem::one()];
    for m in 1..=truncation {
        coeffs.push(closed_cycle(m).scale(&z));
    }
    Series::new(coeffs)
}

/// The mirrored series `1 - z * sum_m mirror(C_m) t^m`.
pub fn mirror_cycle_series(truncation: usize) -> Series {
    let z = Scalar::z();
    let mut coeffs = vec![AnnulusElem::one()];
    for m in 1..=truncation {
        coeffs.push(closed_cycle(m).mirror().scale(&-&z));
    }
    Series::new(coeffs)
}

/// Power-sum element: `m` times the `t^m` coefficient of `log H(t)`.
pub fn power_sum(m: usize) -> AnnulusElem {
    assert!(m >= 1, "power sums start at m = 1");
    let l = Series::h_series(m).log().expect("constant term 1");
    l.coeff(m).scale(&Scalar::int(m as i64))
}

/// Closure of the braid on `i + j + 1` strings with `i` positive then `j`
/// negative crossings, computed from the mirrored base case by the skein
/// recursion step
/// `(i, j-1)-closure = (i-1, j)-closure + z * cycle_i * mirror(cycle_j)`.
///
/// The recursion is run to its endpoint, which must reproduce the
/// series-defined positive cycle; a mismatch is a hard error because it
/// would falsify the implementation.
pub fn mixed_cycle(i: usize, j: usize) -> AnnulusElem {
    mixed_cycle_chain(i + j + 1)[i].clone()
}

/// Sum of all `m` mixed-crossing closed-braid closures on `m` strings.
pub fn mixed_cycle_sum(m: usize) -> AnnulusElem {
    assert!(m >= 1);
    let chain = mixed_cycle_chain(m);
    let mut acc = AnnulusElem::zero();
    for x in &chain {
        acc = &acc + x;
    }
    acc
}

/// The full recursion chain `[(0, m-1), (1, m-2), .., (m-1, 0)]`-closures,
/// endpoint-checked against `closed_cycle(m)`.
fn mixed_cycle_chain(m: usize) -> Vec<AnnulusElem> {
    let chain = mixed_cycle_chain_unchecked(m);
    let endpoint = &chain[m - 1];
    let direct = closed_cycle(m);
    assert!(
        endpoint == &direct,
        "mixed-cycle recursion endpoint disagrees with the series value at m={m}: \
         recursion gives {endpoint}, series gives {direct}"
    );
    chain
}

fn mixed_cycle_chain_unchecked(m: usize) -> Vec<AnnulusElem> {
    assert!(m >= 1);
    let z = Scalar::z();
    let mut chain = Vec::with_capacity(m);
    chain.push(closed_cycle(m).mirror());
    for step in 1..m {
        let bump = closed_cycle(step)
            .mul(&closed_cycle(m - step).mirror())
            .scale(&z);
        let next = &chain[step - 1] + &bump;
        chain.push(next);
    }
    chain
}

/// The recursion endpoint and the series-defined cycle, side by side and
/// unasserted, for the verification driver to compare and report.
pub fn mixed_cycle_endpoint(m: usize) -> (AnnulusElem, AnnulusElem) {
    let chain = mixed_cycle_chain_unchecked(m);
    (chain[m - 1].clone(), closed_cycle(m))
}

/// Evaluation map of the annulus skein: the framed Homfly polynomial,
/// multiplicative on products, with `<h_i>` computed from the Markov trace
/// of the one-row symmetrizer divided by its normalisation.
pub fn evaluate(x: &AnnulusElem) -> Scalar {
    let max_index = x
        .terms()
        .flat_map(|(m, _)| m.indices().iter().copied())
        .max()
        .unwrap_or(0);
    let mut h_values = vec![Scalar::one()];
    for i in 1..=max_index {
        let trace = markov_trace(&symmetrizer(i as usize));
        let value = &trace / &symmetrizer_norm(i as usize);
        h_values.push(value);
    }
    let mut acc = Scalar::zero();
    for (m, c) in x.terms() {
        let mut prod = c.clone();
        for &i in m.indices() {
            prod = &prod * &h_values[i as usize];
        }
        acc = &acc + &prod;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{eval_word, BraidWord};

    fn h(i: u32) -> AnnulusElem {
        AnnulusElem::h(i)
    }

    fn hmono(indices: &[u32]) -> HMonomial {
        HMonomial::from_indices(indices.to_vec())
    }

    #[test]
    fn closed_cycle_smallest_cases() {
        assert_eq!(closed_cycle(1), h(1));
        // C_2 = [2] h_2 - s^-1 h_1^2.
        let mut expect = h(2).scale(&Scalar::quantum_int(2));
        expect.insert_add(hmono(&[1, 1]), -Scalar::s(-1));
        assert_eq!(closed_cycle(2), expect);
    }

    #[test]
    fn closed_cycles_are_homogeneous() {
        for m in 1..=6 {
            assert!(closed_cycle(m).is_homogeneous(m));
        }
    }

    #[test]
    fn mirror_of_closed_cycle() {
        let mut expect = h(2).scale(&Scalar::quantum_int(2));
        expect.insert_add(hmono(&[1, 1]), -Scalar::s(1));
        assert_eq!(closed_cycle(2).mirror(), expect);
        assert_eq!(h(5).mirror(), h(5));
        let x = &closed_cycle(3) + &h(1).scale(&Scalar::unknot());
        assert_eq!(x.mirror().mirror(), x);
    }

    #[test]
    fn power_sum_smallest_cases() {
        assert_eq!(power_sum(1), h(1));
        // P_2 = 2 h_2 - h_1^2, P_3 = 3 h_3 - 3 h_1 h_2 + h_1^3.
        let mut p2 = h(2).scale(&Scalar::int(2));
        p2.insert_add(hmono(&[1, 1]), -Scalar::one());
        assert_eq!(power_sum(2), p2);
        let mut p3 = h(3).scale(&Scalar::int(3));
        p3.insert_add(hmono(&[2, 1]), -Scalar::int(3));
        p3.insert_add(hmono(&[1, 1, 1]), Scalar::one());
        assert_eq!(power_sum(3), p3);
    }

    #[test]
    fn power_sums_are_mirror_invariant() {
        for m in 1..=8 {
            let p = power_sum(m);
            assert_eq!(p.mirror(), p, "power sum {m} not mirror invariant");
            assert!(p.is_homogeneous(m));
        }
    }

    #[test]
    fn mixed_cycle_base_cases_and_one_step() {
        assert_eq!(mixed_cycle(0, 0), h(1));
        assert_eq!(mixed_cycle(1, 0), closed_cycle(2));
        assert_eq!(mixed_cycle(0, 1), closed_cycle(2).mirror());
        let step = closed_cycle(1)
            .mul(&closed_cycle(2).mirror())
            .scale(&Scalar::z());
        assert_eq!(mixed_cycle(1, 1), &mixed_cycle(0, 2) + &step);
    }

    #[test]
    fn crossing_switch_recursion_identity() {
        // (i, j-1) - (i-1, j) = z * cycle_i * mirror(cycle_j) for i, j >= 1.
        for total in 2..=6 {
            for i in 1..total {
                let j = total - i;
                let lhs = &mixed_cycle(i, j - 1) - &mixed_cycle(i - 1, j);
                let rhs = closed_cycle(i)
                    .mul(&closed_cycle(j).mirror())
                    .scale(&Scalar::z());
                assert_eq!(lhs, rhs, "failed at i={i}, j={j}");
            }
        }
    }

    #[test]
    fn mixed_cycle_sum_smallest_cases() {
        assert_eq!(mixed_cycle_sum(1), h(1));
        // Two strings: C_2 + mirror(C_2) = 2[2] h_2 - (s + s^-1) h_1^2.
        let mut expect = h(2).scale(&(&Scalar::int(2) * &Scalar::quantum_int(2)));
        expect.insert_add(hmono(&[1, 1]), -(&Scalar::s(1) + &Scalar::s(-1)));
        assert_eq!(mixed_cycle_sum(2), expect);
    }

    #[test]
    fn cycle_sum_is_quantum_multiple_of_power_sum() {
        for m in 1..=6 {
            let lhs = power_sum(m).scale(&Scalar::quantum_int(m as u32));
            assert_eq!(lhs, mixed_cycle_sum(m), "failed at m={m}");
        }
    }

    #[test]
    fn mirror_series_inverts_cycle_series() {
        let m = 6;
        let prod = cycle_series_from_elems(m).mul(&mirror_cycle_series(m));
        assert_eq!(prod, Series::one(m));
        // And the assembled series agrees with the defining quotient.
        assert_eq!(cycle_series_from_elems(m), cycle_series(m));
    }

    #[test]
    fn log_derivative_of_cycle_series() {
        // z * sum_m S_m t^(m-1) = d/dt log A(t), and
        // log A(t) = sum_m (s^m - s^-m) (P_m/m) t^m.
        let m = 8;
        let a = cycle_series_from_elems(m);
        let log_a = a.log().unwrap();
        let mut sum_coeffs = Vec::new();
        let mut log_coeffs = vec![AnnulusElem::zero()];
        for k in 1..=m {
            sum_coeffs.push(mixed_cycle_sum(k).scale(&Scalar::z()));
            let c = &(&Scalar::s(k as i32) - &Scalar::s(-(k as i32)))
                * &Scalar::int(k as i64).recip().unwrap();
            log_coeffs.push(power_sum(k).scale(&c));
        }
        assert_eq!(Series::new(sum_coeffs), log_a.derivative());
        assert_eq!(Series::new(log_coeffs), log_a);
    }

    #[test]
    fn evaluation_of_units_and_generators() {
        assert_eq!(evaluate(&AnnulusElem::one()), Scalar::one());
        assert_eq!(evaluate(&h(1)), Scalar::unknot());
        assert_eq!(evaluate(&AnnulusElem::zero()), Scalar::zero());
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let x = &h(1) + &h(2).scale(&Scalar::s(1));
        let y = &h(2) - &h(1).mul(&h(1));
        assert_eq!(evaluate(&x.mul(&y)), &evaluate(&x) * &evaluate(&y));
    }

    #[test]
    fn evaluated_power_sum_matches_trace_oracle() {
        // Oracle: <P_2> = (trace of the two 2-string mixed closures) / [2],
        // i.e. the closures of sigma_1 and sigma_1^-1.
        let tr_pos = markov_trace(&eval_word(&BraidWord::new(2, vec![1])));
        let tr_neg = markov_trace(&eval_word(&BraidWord::new(2, vec![-1])));
        let oracle = &(&tr_pos + &tr_neg) / &Scalar::quantum_int(2);
        assert_eq!(evaluate(&power_sum(2)), oracle);
        // Closed form: (v^-2 - v^2)/(s^2 - s^-2).
        let closed = Scalar::ratio(
            (Scalar::v(-2) - Scalar::v(2)).num().clone(),
            (Scalar::s(2) - Scalar::s(-2)).num().clone(),
        );
        assert_eq!(evaluate(&power_sum(2)), closed);
    }

    #[test]
    fn rendering_matches_canonical_format() {
        let mut x = h(2).scale(&Scalar::int(2));
        x.insert_add(hmono(&[1, 1]), -Scalar::one());
        assert_eq!(x.to_string(), "2*h2 - 1*h1^2");
        assert_eq!(AnnulusElem::zero().to_string(), "0");
        assert_eq!(AnnulusElem::one().to_string(), "1*1");
    }
}
