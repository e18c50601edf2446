//! Threading annulus elements through `n` parallel strands.
//!
//! Placing a pattern around `n` through-strands gives an algebra
//! homomorphism from the annulus skein to the centre of `H_n`. A closed
//! `m`-strand braid is threaded by evaluating it on the top `m` strands of
//! `H_(n+m)`, composing with the encircling braid that carries the pattern
//! block once around the through-strands, and closing the pattern strands.
//! The generators `h_i` are threaded through the one-row symmetrizer of
//! `H_i` with its computed normalisation.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::annulus::{AnnulusElem, HMonomial};
use crate::closure::close_last_strand;
use crate::hecke::{eval_word, BraidWord, HeckeElem};
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// The encircling braid on `n + m` strands: the block of strands
/// `n+1 .. n+m` passes once around strands `1 .. n` with all positive
/// crossings, returning to its starting position. For `m = 1` this is the
/// Murphy pattern `sigma_n .. sigma_1 sigma_1 .. sigma_n`.
pub fn encircle_word(n: usize, m: usize) -> BraidWord {
    let mut letters: Vec<i32> = Vec::with_capacity(2 * n * m);
    for i in 1..=m {
        for g in (i..n + i).rev() {
            letters.push(g as i32);
        }
    }
    for i in (1..=m).rev() {
        for g in i..n + i {
            letters.push(g as i32);
        }
    }
    BraidWord::new(n + m, letters)
}

/// Thread the closure of `pattern` through `n` strands: evaluate
/// `(1_n ⊗ pattern) * encircling braid` in `H_(n+m)` and close the `m`
/// pattern strands. The result is central in `H_n`.
pub fn thread_closure(pattern: &BraidWord, n: usize) -> HeckeElem {
    let m = pattern.strands();
    let word = pattern.shift(n).concat(&encircle_word(n, m));
    let mut x = eval_word(&word);
    for _ in 0..m {
        x = close_last_strand(&x);
    }
    x
}

/// One-row symmetrizer of `H_i`: the sum of all positive permutation braids
/// weighted by `s^length`.
pub fn symmetrizer(i: usize) -> HeckeElem {
    assert!(i >= 1, "symmetrizers start at i = 1");
    let mut x = HeckeElem::zero(i);
    for images in (1..=i).permutations(i) {
        let p = Permutation::from_one_line(&images);
        let w = Scalar::s(p.length() as i32);
        x.insert_add(p, w);
    }
    x
}

/// The normalisation `alpha_i` with `a_i * a_i = alpha_i * a_i`. It is
/// computed by squaring the symmetrizer and certified by exact division;
/// failure of proportionality is a hard error.
pub fn symmetrizer_norm(i: usize) -> Scalar {
    let a = symmetrizer(i);
    let a2 = a.mul(&a);
    let id = Permutation::identity(i);
    let alpha = a2
        .coeff(&id)
        .exact_div(&a.coeff(&id))
        .expect("symmetrizer square has a polynomial ratio on the identity");
    assert!(
        a2 == a.scale(&alpha),
        "symmetrizer square is not proportional to the symmetrizer at i={i}"
    );
    alpha
}

/// Thread the generator `h_i`: the symmetrizer of `H_i` is placed on the
/// pattern strands, encircled, closed, and divided by its normalisation.
fn thread_h_generator(i: usize, n: usize) -> HeckeElem {
    let total = n + i;
    let pattern = symmetrizer(i).embed(total, n);
    let mut x = pattern.mul_word(encircle_word(n, i).letters());
    for _ in 0..i {
        x = close_last_strand(&x);
    }
    let norm = symmetrizer_norm(i).recip().expect("symmetrizer norm is nonzero");
    x.scale(&norm)
}

/// Thread an `h`-monomial: the product of the threaded generators, order
/// irrelevant since the images are central.
pub fn thread_monomial(mono: &HMonomial, n: usize) -> HeckeElem {
    let mut cache: BTreeMap<u32, HeckeElem> = BTreeMap::new();
    let mut out = HeckeElem::identity(n);
    for &i in mono.indices() {
        let factor = cache
            .entry(i)
            .or_insert_with(|| thread_h_generator(i as usize, n))
            .clone();
        out = out.mul(&factor);
    }
    out
}

/// Linear extension of `thread_monomial` to annulus elements.
pub fn thread_element(x: &AnnulusElem, n: usize) -> HeckeElem {
    let mut cache: BTreeMap<u32, HeckeElem> = BTreeMap::new();
    let mut out = HeckeElem::zero(n);
    for (mono, c) in x.terms() {
        let mut prod = HeckeElem::identity(n);
        for &i in mono.indices() {
            let factor = cache
                .entry(i)
                .or_insert_with(|| thread_h_generator(i as usize, n))
                .clone();
            prod = prod.mul(&factor);
        }
        out.add_scaled(&prod, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{closed_cycle, evaluate, power_sum};
    use crate::closure::markov_trace;
    use crate::hecke::{murphy_elementary_symmetric, murphy_operator};

    #[test]
    fn encircling_word_degenerate_cases() {
        assert!(encircle_word(0, 3).letters().is_empty());
        assert!(encircle_word(4, 0).letters().is_empty());
    }

    #[test]
    fn encircling_word_single_pattern_strand() {
        assert_eq!(encircle_word(2, 1).letters(), &[2, 1, 1, 2]);
        // Same word as the Murphy operator T(n+1) on n+1 strands.
        for n in 1..=4 {
            let t = crate::hecke::murphy_word(n + 1, n + 1);
            assert_eq!(encircle_word(n, 1).letters(), t.letters());
        }
    }

    #[test]
    fn encircling_word_has_trivial_permutation() {
        for (n, m) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let word = encircle_word(n, m);
            let mut p = Permutation::identity(n + m);
            for &l in word.letters() {
                p = p.swap_values(l as usize);
            }
            assert!(p.is_identity(), "net permutation not trivial at n={n}, m={m}");
            let x = eval_word(&word);
            assert!(!x.coeff(&Permutation::identity(n + m)).is_zero());
        }
    }

    #[test]
    fn threading_core_curve_through_one_strand() {
        // psi_1(h_1) = (z v^-1 + delta) * Id.
        let got = thread_closure(&BraidWord::empty(1), 1);
        let c = &(&Scalar::z() * &Scalar::v(-1)) + &Scalar::unknot();
        assert_eq!(got, HeckeElem::identity(1).scale(&c));
        assert_eq!(got, thread_monomial(&HMonomial::single(1), 1));
    }

    #[test]
    fn threading_through_zero_strands_is_evaluation() {
        let beta = BraidWord::new(2, vec![1, 1, 1]);
        let got = thread_closure(&beta, 0);
        let expect = HeckeElem::identity(0).scale(&markov_trace(&eval_word(&beta)));
        assert_eq!(got, expect);
    }

    #[test]
    fn symmetrizer_two_strands() {
        // a_2 = 1 + s sigma_1; alpha_2 = s[2]; a_2 sigma_1 = s a_2.
        let a = symmetrizer(2);
        let mut expect = HeckeElem::identity(2);
        expect.insert_add(Permutation::transposition(2, 1), Scalar::s(1));
        assert_eq!(a, expect);
        assert_eq!(symmetrizer_norm(1), Scalar::one());
        assert_eq!(symmetrizer_norm(2), &Scalar::s(1) * &Scalar::quantum_int(2));
        assert_eq!(a.mul_generator(1, true), a.scale(&Scalar::s(1)));
    }

    #[test]
    fn symmetrizer_norms_match_quantum_factorials() {
        for i in 1..=4 {
            let expect = &Scalar::s((i * (i - 1) / 2) as i32) * &Scalar::quantum_factorial(i);
            assert_eq!(symmetrizer_norm(i as usize), expect, "failed at i={i}");
        }
    }

    #[test]
    fn unit_monomial_threads_to_identity() {
        for n in 0..=3 {
            assert_eq!(thread_monomial(&HMonomial::unit(), n), HeckeElem::identity(n));
        }
        assert_eq!(symmetrizer(1), HeckeElem::identity(1));
        // h_1^2 threads to the square of the threaded core curve.
        let square = HMonomial::from_indices(vec![1, 1]);
        let core = thread_monomial(&HMonomial::single(1), 2);
        assert_eq!(thread_monomial(&square, 2), core.mul(&core));
    }

    #[test]
    fn threaded_elements_are_central() {
        for n in 1..=3 {
            for i in 1..=2u32 {
                let x = thread_monomial(&HMonomial::single(i), n);
                assert!(x.commutes_with_generators(), "psi_{n}(h_{i}) not central");
            }
        }
    }

    #[test]
    fn threading_is_multiplicative_on_monomials() {
        let x = HMonomial::single(1);
        let y = HMonomial::from_indices(vec![1, 2]);
        for n in 1..=2 {
            let lhs = thread_monomial(&x.mul(&y), n);
            let rhs = thread_monomial(&x, n).mul(&thread_monomial(&y, n));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_order_does_not_change_the_closure() {
        let beta = BraidWord::new(2, vec![1]);
        let n = 2;
        let m = beta.strands();
        let shifted = beta.shift(n);
        let circle = encircle_word(n, m);
        let mut lhs = eval_word(&shifted.concat(&circle));
        let mut rhs = eval_word(&circle.concat(&shifted));
        for _ in 0..m {
            lhs = close_last_strand(&lhs);
            rhs = close_last_strand(&rhs);
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn threaded_closure_is_conjugation_invariant() {
        // Conjugate pattern braids have the same annular closure, so the
        // threaded images agree for every n.
        let beta = BraidWord::new(2, vec![1, -1, 1]);
        let conj = BraidWord::new(2, vec![1]).concat(&beta).concat(&BraidWord::new(2, vec![-1]));
        for n in 0..=3 {
            assert_eq!(thread_closure(&conj, n), thread_closure(&beta, n));
        }
        let gamma = BraidWord::new(3, vec![2, -1]);
        let word = BraidWord::new(3, vec![1, 2, 1]);
        let conj = gamma.concat(&word).concat(&gamma.inverse());
        for n in 0..=2 {
            assert_eq!(thread_closure(&conj, n), thread_closure(&word, n));
        }
    }

    #[test]
    fn stabilised_pattern_reduces_only_in_the_plane() {
        // Positive stabilisation multiplies the plane closure by v^-1, and
        // n = 0 threading is exactly the plane evaluation. For n >= 1 the
        // stabilised pattern winds once more around the annulus, so the
        // threaded images differ: the annulus remembers the winding number.
        let beta = BraidWord::new(2, vec![1]);
        let stab = BraidWord::new(3, vec![1, 2]);
        let lhs = thread_closure(&stab, 0);
        let rhs = thread_closure(&beta, 0).scale(&Scalar::v(-1));
        assert_eq!(lhs, rhs);
        assert_ne!(thread_closure(&stab, 1), thread_closure(&beta, 1).scale(&Scalar::v(-1)));
    }

    #[test]
    fn cycle_threading_matches_h_expansion_smallest_cases() {
        // The closure of sigma_(m-1)..sigma_1 threaded as a braid agrees
        // with its h-polynomial threaded through the symmetrizers.
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (0, 2)] {
            let letters: Vec<i32> = (1..m as i32).rev().collect();
            let beta = BraidWord::new(m, letters);
            let lhs = thread_closure(&beta, n);
            let rhs = thread_element(&closed_cycle(m), n);
            assert_eq!(lhs, rhs, "failed at n={n}, m={m}");
        }
    }

    #[test]
    fn murphy_power_sum_identity_smallest_case() {
        // n = 1, m = 1: psi_1(P_1) - <P_1> = z v^-1 T(1).
        let lhs = &thread_element(&power_sum(1), 1)
            - &HeckeElem::identity(1).scale(&evaluate(&power_sum(1)));
        let c = &Scalar::z() * &Scalar::v(-1);
        let rhs = murphy_operator(1, 1).scale(&c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn threaded_core_curve_is_affine_in_murphy_sum() {
        // T^(n) = z v^-1 (T(1) + .. + T(n)) + delta Id.
        for n in 1..=3 {
            let t_n = thread_monomial(&HMonomial::single(1), n);
            let sum = murphy_elementary_symmetric(n, 1);
            let a = &Scalar::z() * &Scalar::v(-1);
            let expect = &sum.scale(&a) + &HeckeElem::identity(n).scale(&Scalar::unknot());
            assert_eq!(t_n, expect, "failed at n={n}");
        }
    }
}
