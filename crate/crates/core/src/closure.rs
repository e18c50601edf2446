//! Partial closure maps `H_(n+1) -> H_n` and the Markov trace `H_n -> Λ`.
//!
//! Closing the last strand of a basis braid either contributes the unknot
//! value (strand straight) or removes one positive crossing of the strand
//! against the rest at the cost of `v^-1`. Iterating down to `H_0` evaluates
//! a closed braid to its framed Homfly polynomial, normalised to 1 on the
//! empty diagram.

use crate::hecke::HeckeElem;
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// Close the last strand: the linear map `H_(n+1) -> H_n` with
/// `close(x) = delta * x` for `x` in the image of `H_n`, and
/// `close(x * sigma_n * y) = v^-1 * x * y` for `x, y` in `H_n`.
///
/// On a basis permutation `p` with `k = p(n+1)`:
/// if `k = n+1` the strand is straight and rule one applies to the
/// restriction; otherwise `w_p = w_alpha * sigma_n sigma_(n-1) .. sigma_k`
/// with `alpha` fixing `n+1`, and rule two applies with the tail multiplied
/// out inside `H_n`.
pub fn close_last_strand(x: &HeckeElem) -> HeckeElem {
    let n1 = x.strands();
    assert!(n1 >= 1, "cannot close a strand of H_0");
    let n = n1 - 1;
    let delta = Scalar::unknot();
    let v_inv = Scalar::v(-1);
    let mut out = HeckeElem::zero(n);
    for (p, c) in x.terms() {
        let k = p.apply(n1);
        if k == n1 {
            let restricted: Vec<usize> = (1..=n).map(|j| p.apply(j)).collect();
            out.insert_add(Permutation::from_one_line(&restricted), &delta * c);
        } else {
            // alpha collapses out the value k; the remaining crossings of the
            // closed strand form the tail word sigma_(n-1) .. sigma_k.
            let alpha: Vec<usize> = (1..=n)
                .map(|j| {
                    let val = p.apply(j);
                    if val > k {
                        val - 1
                    } else {
                        val
                    }
                })
                .collect();
            let letters: Vec<i32> = (k..n).rev().map(|g| g as i32).collect();
            let tail = HeckeElem::basis(n, Permutation::from_one_line(&alpha)).mul_word(&letters);
            out.add_scaled(&tail, &(&v_inv * c));
        }
    }
    out
}

/// Markov trace: iterate `close_last_strand` down to `H_0` and read off the
/// coefficient of the empty diagram. Returns the framed Homfly polynomial of
/// the closure of `x`.
pub fn markov_trace(x: &HeckeElem) -> Scalar {
    let mut y = x.clone();
    while y.strands() > 0 {
        y = close_last_strand(&y);
    }
    y.coeff(&Permutation::identity(0))
}
