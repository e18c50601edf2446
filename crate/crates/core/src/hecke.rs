//! The type-A Hecke algebra `H_n` on the positive-permutation-braid basis.
//!
//! Elements are finitely supported linear combinations of basis permutations
//! with `Scalar` coefficients. The generators satisfy the braid relations and
//! the quadratic relation `sigma_i^2 = z*sigma_i + 1`, so inverses expand as
//! `sigma_i^-1 = sigma_i - z`. Right multiplication by a generator acts on a
//! basis permutation by swapping the values `i`, `i+1`, with a `z`-correction
//! exactly when the length drops.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::perm::Permutation;
use crate::scalar::Scalar;

/// A braid word: signed generator letters on a fixed number of strands.
/// Letter `i > 0` is the positive crossing of strands `i`, `i+1`; letter
/// `-i` is its inverse. The empty word is allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Self {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            assert!(l != 0 && i < strands, "letter {l} out of range on {strands} strands");
        }
        Self { strands, letters }
    }

    pub fn empty(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    /// Parse comma-separated signed letters, e.g. `"1,-2,1"`. Whitespace is
    /// tolerated; the empty string is the empty word.
    pub fn parse_letters(text: &str) -> Result<Vec<i32>, String> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i32>().map_err(|_| format!("bad braid letter {tok:?}"))
            })
            .collect()
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        Self { strands: self.strands, letters }
    }

    /// Place the word on strands `offset+1 .. offset+strands` of a wider
    /// braid, leaving the first `offset` strands untouched.
    pub fn shift(&self, offset: usize) -> Self {
        let off = offset as i32;
        let letters = self.letters.iter().map(|&l| l + off * l.signum()).collect();
        Self { strands: self.strands + offset, letters }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands, "mismatched strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { strands: self.strands, letters }
    }
}

/// Element of `H_n`: a map from basis permutations to nonzero coefficients.
#[derive(Clone)]
pub struct HeckeElem {
    n: usize,
    terms: BTreeMap<Permutation, Scalar>,
}

impl HeckeElem {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(n, Permutation::identity(n))
    }

    /// The basis element indexed by `p`, i.e. the positive permutation braid.
    pub fn basis(n: usize, p: Permutation) -> Self {
        assert_eq!(p.size(), n, "permutation size does not match strand count");
        let mut terms = BTreeMap::new();
        terms.insert(p, Scalar::one());
        Self { n, terms }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Self::basis(n, Permutation::transposition(n, i))
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Permutation) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn insert_add(&mut self, p: Permutation, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.n, other.n, "mismatched strand counts");
        for (p, x) in &other.terms {
            self.insert_add(p.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Right multiplication by `sigma_i` (or its inverse): on a basis
    /// permutation `p` with `q = p.then(s_i)`,
    ///   ascent:  `w_p * sigma_i    = w_q`
    ///   descent: `w_p * sigma_i    = w_q + z*w_p`
    ///   ascent:  `w_p * sigma_i^-1 = w_q - z*w_p`
    ///   descent: `w_p * sigma_i^-1 = w_q`
    pub fn mul_generator(&self, i: usize, positive: bool) -> Self {
        assert!(i >= 1 && i < self.n, "generator index {i} out of range for n={}", self.n);
        let z = Scalar::z();
        let mut out = Self::zero(self.n);
        for (p, c) in &self.terms {
            let descent = p.is_descent(i);
            let q = p.swap_values(i);
            out.insert_add(q, c.clone());
            if descent == positive {
                let zc = &z * c;
                out.insert_add(p.clone(), if positive { zc } else { -zc });
            }
        }
        out
    }

    fn mul_letter(&self, l: i32) -> Self {
        self.mul_generator(l.unsigned_abs() as usize, l > 0)
    }

    /// Right multiplication by a braid word, letter by letter.
    pub fn mul_word(&self, letters: &[i32]) -> Self {
        let mut x = self.clone();
        for &l in letters {
            x = x.mul_letter(l);
        }
        x
    }

    /// Algebra product: each basis permutation of `other` is factored into
    /// its deterministic reduced word and applied by `mul_generator`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mismatched strand counts");
        let mut out = Self::zero(self.n);
        for (p, c) in &other.terms {
            let word: Vec<i32> = p.reduced_word().iter().map(|&i| i as i32).collect();
            let prod = self.mul_word(&word);
            out.add_scaled(&prod, c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Image under the inclusion `H_m -> H_n` acting on strands
    /// `offset+1 .. offset+m`.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        assert!(offset + self.n <= n, "embedding does not fit");
        let mut out = Self::zero(n);
        for (p, c) in &self.terms {
            let mut images: Vec<usize> = (1..=n).collect();
            for j in 1..=self.n {
                images[offset + j - 1] = offset + p.apply(j);
            }
            out.insert_add(Permutation::from_one_line(&images), c.clone());
        }
        out
    }

    /// Whether the element commutes with every generator of `H_n`.
    pub fn commutes_with_generators(&self) -> bool {
        (1..self.n).all(|i| {
            let xg = self.mul_generator(i, true);
            let gx = HeckeElem::generator(self.n, i).mul(self);
            xg == gx
        })
    }
}

impl PartialEq for HeckeElem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(p, c)| other.terms.get(p).map(|d| c == d).unwrap_or(false))
    }
}

impl Eq for HeckeElem {}

impl Add for &HeckeElem {
    type Output = HeckeElem;
    fn add(self, rhs: &HeckeElem) -> HeckeElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &HeckeElem {
    type Output = HeckeElem;
    fn sub(self, rhs: &HeckeElem) -> HeckeElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &HeckeElem {
    type Output = HeckeElem;
    fn neg(self) -> HeckeElem {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for HeckeElem {
    /// Canonical rendering: `(coefficient) * [one-line permutation]` terms
    /// sorted by permutation lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) * {p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of a braid word in `H_n`.
pub fn eval_word(w: &BraidWord) -> HeckeElem {
    HeckeElem::identity(w.strands()).mul_word(w.letters())
}

/// Braid word of the Murphy operator `T(j)` in `H_n`: string `j` passes once
/// around strings `1..j-1` with all positive crossings,
/// `sigma_{j-1}..sigma_1 sigma_1..sigma_{j-1}`; empty for `j = 1`.
pub fn murphy_word(n: usize, j: usize) -> BraidWord {
    assert!(j >= 1 && j <= n, "murphy index {j} out of range for n={n}");
    let mut letters: Vec<i32> = (1..j as i32).rev().collect();
    letters.extend(1..j as i32);
    BraidWord::new(n, letters)
}

/// The Murphy operator `T(j)` as an element of `H_n`.
pub fn murphy_operator(n: usize, j: usize) -> HeckeElem {
    eval_word(&murphy_word(n, j))
}

/// `k`-th elementary symmetric polynomial in the commuting Murphy operators
/// `T(1), .., T(n)`.
pub fn murphy_elementary_symmetric(n: usize, k: usize) -> HeckeElem {
    assert!(k <= n, "elementary symmetric degree {k} exceeds n={n}");
    let mut table = vec![HeckeElem::zero(n); k + 1];
    table[0] = HeckeElem::identity(n);
    for j in 1..=n {
        let t = murphy_operator(n, j);
        for d in (1..=k.min(j)).rev() {
            let bump = table[d - 1].mul(&t);
            table[d] = &table[d] + &bump;
        }
    }
    table.pop().unwrap()
}
