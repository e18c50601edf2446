//! Permutations of `{1..n}` in one-line notation.
//!
//! Permutations index the positive-permutation-braid basis of the Hecke
//! algebra. Positions and values are 1-based, matching the usual string
//! numbering of braid diagrams. The group operation is `then`: strands flow
//! through `self` first, then through the second factor, so that braid-word
//! evaluation is a homomorphism onto the basis labels.

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize);
        Self { images: (1..=n as u8).collect() }
    }

    /// Build from 1-based one-line notation. Panics unless `images` is a
    /// bijection of `{1..n}`.
    pub fn from_one_line(images: &[usize]) -> Self {
        let n = images.len();
        assert!(n <= u8::MAX as usize);
        let mut seen = vec![false; n];
        for &x in images {
            assert!(x >= 1 && x <= n, "image {x} out of range 1..={n}");
            assert!(!seen[x - 1], "image {x} repeated");
            seen[x - 1] = true;
        }
        Self { images: images.iter().map(|&x| x as u8).collect() }
    }

    /// The adjacent transposition swapping `i` and `i+1` in `S_n`.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "transposition index {i} out of range for n={n}");
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based position `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1] as usize
    }

    /// 1-based position at which `value` occurs.
    pub fn position_of(&self, value: usize) -> usize {
        let v = value as u8;
        1 + self.images.iter().position(|&x| x == v).expect("value out of range")
    }

    /// `self` followed by `other`: `(self.then(other))(j) = other(self(j))`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "mismatched permutation sizes");
        let images = self.images.iter().map(|&x| other.images[x as usize - 1]).collect();
        Self { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = j as u8 + 1;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| x as usize == j + 1)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for j in 0..self.images.len() {
            for k in j + 1..self.images.len() {
                if self.images[j] > self.images[k] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `self.then(s_i)`: swap the values `i` and `i+1` wherever they occur.
    /// Increases the length exactly when `i` occurs before `i+1`.
    pub fn swap_values(&self, i: usize) -> Self {
        let a = self.position_of(i);
        let b = self.position_of(i + 1);
        let mut images = self.images.clone();
        images.swap(a - 1, b - 1);
        Self { images }
    }

    /// Whether appending `s_i` shortens the permutation.
    pub fn is_descent(&self, i: usize) -> bool {
        self.position_of(i) > self.position_of(i + 1)
    }

    /// Smallest `i` with `length(self.then(s_i)) < length(self)`.
    pub fn smallest_descent(&self) -> Option<usize> {
        (1..self.size()).find(|&i| self.is_descent(i))
    }

    /// Deterministic reduced word: repeatedly strip the smallest descent.
    /// The returned word `[i1, .., ik]` satisfies
    /// `s_{i1}.then(s_{i2})...then(s_{ik}) = self` with `k = length(self)`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut p = self.clone();
        while let Some(i) = p.smallest_descent() {
            p = p.swap_values(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }
}

impl fmt::Display for Permutation {
    /// Renders as `[2 1 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, x) in self.images.iter().enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_length_zero() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert!(Permutation::identity(0).is_identity());
    }

    #[test]
    fn compose_and_invert() {
        let p = Permutation::from_one_line(&[3, 1, 4, 2]);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn then_applies_left_factor_first() {
        let s1 = Permutation::transposition(3, 1);
        let s2 = Permutation::transposition(3, 2);
        assert_eq!(s1.then(&s2), Permutation::from_one_line(&[3, 1, 2]));
    }

    #[test]
    fn reduced_word_reconstructs() {
        let p = Permutation::from_one_line(&[3, 1, 2]);
        assert_eq!(p.reduced_word(), vec![1, 2]);
        for images in [&[4, 3, 2, 1][..], &[2, 4, 1, 3], &[1, 2, 3, 4], &[4, 1, 3, 2]] {
            let p = Permutation::from_one_line(images);
            let w = p.reduced_word();
            assert_eq!(w.len(), p.length());
            let mut q = Permutation::identity(p.size());
            for &i in &w {
                q = q.swap_values(i);
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn swap_values_changes_length_by_one() {
        let p = Permutation::from_one_line(&[2, 4, 1, 3]);
        for i in 1..4 {
            let q = p.swap_values(i);
            let diff = q.length() as i64 - p.length() as i64;
            assert_eq!(diff.abs(), 1);
            assert_eq!(diff < 0, p.is_descent(i));
        }
    }

    #[test]
    fn renders_one_line_notation() {
        let p = Permutation::from_one_line(&[2, 1, 3]);
        assert_eq!(p.to_string(), "[2 1 3]");
    }
}
