use std::fmt;

use crate::error::{Error, Result};

/// Polynomial with nonnegative integer coefficients; `coeffs[k]` multiplies `t^k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Result<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c.checked_mul(k as u64).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }

    pub fn nth_derivative(&self, order: usize) -> Result<Polynomial> {
        let mut p = self.clone();
        for _ in 0..order {
            if p.coeffs.is_empty() {
                break;
            }
            p = p.derivative()?;
        }
        Ok(p)
    }

    pub fn eval(&self, t: u64) -> Result<u64> {
        self.coeffs.iter().rev().try_fold(0u64, |acc, &c| {
            acc.checked_mul(t)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow)
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}t")?,
                _ => write!(f, "{c}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
