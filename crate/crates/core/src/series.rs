//! Truncated formal power series in `t` with annulus-skein coefficients.
//!
//! All arithmetic is exact modulo `t^(M+1)` for an explicit truncation
//! degree `M`. Inversion and logarithm require constant term 1, which every
//! series built here has.

use std::fmt;

use crate::annulus::AnnulusElem;
use crate::error::SkeinError;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<AnnulusElem>,
}

impl Series {
    /// Build from coefficients of `t^0 .. t^M`.
    pub fn new(coeffs: Vec<AnnulusElem>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 coefficient");
        Self { coeffs }
    }

    pub fn one(truncation: usize) -> Self {
        let mut coeffs = vec![AnnulusElem::zero(); truncation + 1];
        coeffs[0] = AnnulusElem::one();
        Self { coeffs }
    }

    /// The generating series of the `h_n`: `1 + h_1 t + .. + h_M t^M`.
    pub fn h_series(truncation: usize) -> Self {
        let mut coeffs = vec![AnnulusElem::one()];
        for k in 1..=truncation {
            coeffs.push(AnnulusElem::h(k as u32));
        }
        Self { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &AnnulusElem {
        &self.coeffs[k]
    }

    fn constant_term_is_one(&self) -> bool {
        self.coeffs[0] == AnnulusElem::one()
    }

    /// Substitute `t -> c t`: the coefficient of `t^k` is scaled by `c^k`.
    pub fn scale_t(&self, c: &Scalar) -> Self {
        let mut power = Scalar::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                if k > 0 {
                    power = &power * c;
                }
                x.scale(&power)
            })
            .collect();
        Self { coeffs }
    }

    /// Product, truncated to the smaller truncation degree.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.truncation().min(other.truncation());
        let mut coeffs = vec![AnnulusElem::zero(); m + 1];
        for k in 0..=m {
            let mut acc = AnnulusElem::zero();
            for i in 0..=k {
                acc = &acc + &self.coeffs[i].mul(&other.coeffs[k - i]);
            }
            coeffs[k] = acc;
        }
        Self { coeffs }
    }

    /// Multiplicative inverse; requires constant term 1.
    pub fn inverse(&self) -> Result<Self, SkeinError> {
        if !self.constant_term_is_one() {
            return Err(SkeinError::NonUnitConstantTerm);
        }
        let m = self.truncation();
        let mut coeffs = vec![AnnulusElem::zero(); m + 1];
        coeffs[0] = AnnulusElem::one();
        for k in 1..=m {
            let mut acc = AnnulusElem::zero();
            for i in 1..=k {
                acc = &acc + &self.coeffs[i].mul(&coeffs[k - i]);
            }
            coeffs[k] = -&acc;
        }
        Ok(Self { coeffs })
    }

    /// Formal derivative `d/dt`; truncation drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.truncation() >= 1, "cannot differentiate a constant truncation");
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].scale(&Scalar::int(k as i64)))
            .collect();
        Self { coeffs }
    }

    /// Logarithm via the integrated-derivative formula, exactly:
    /// `log(S)' = S'/S`, so the `t^k` coefficient of the logarithm is
    /// `(S' * S^-1)[k-1] / k`. Requires constant term 1.
    pub fn log(&self) -> Result<Self, SkeinError> {
        if !self.constant_term_is_one() {
            return Err(SkeinError::NonUnitConstantTerm);
        }
        let m = self.truncation();
        let mut coeffs = vec![AnnulusElem::zero(); m + 1];
        if m >= 1 {
            let logd = self.derivative().mul(&self.inverse()?);
            for k in 1..=m {
                let inv_k = Scalar::int(k as i64).recip().expect("k >= 1");
                coeffs[k] = logd.coeff_or_zero(k - 1).scale(&inv_k);
            }
        }
        Ok(Self { coeffs })
    }

    fn coeff_or_zero(&self, k: usize) -> AnnulusElem {
        self.coeffs.get(k).cloned().unwrap_or_else(AnnulusElem::zero)
    }

    /// Truncate (or zero-extend) to degree `m`.
    pub fn truncate(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m + 1, AnnulusElem::zero());
        Self { coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({x})*t^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
