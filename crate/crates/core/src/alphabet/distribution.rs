use std::fmt;

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;

/// Probability vector over a finite alphabet `{0, .., m-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Builds a distribution whose entries lie in `[0, 1]` and sum to one
    /// within `1e-12`.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, SUM_TOLERANCE)
    }

    /// Like [`Distribution::new`] with a caller-chosen tolerance on the sum.
    /// The stored vector is renormalized so that it sums to one.
    pub fn with_tolerance(probs: Vec<f64>, tolerance: f64) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 entries, got {}",
                probs.len()
            )));
        }
        if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!(
                "entry {bad} is not in [0, 1]"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tolerance {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        let probs = if sum == 1.0 {
            probs
        } else {
            probs.into_iter().map(|p| p / sum).collect()
        };
        Ok(Self { probs })
    }

    /// `<p, 1-p>`.
    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::new(vec![p, 1.0 - p])
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 entries, got {m}"
            )));
        }
        Ok(Self {
            probs: vec![1.0 / m as f64; m],
        })
    }

    pub fn point_mass(m: usize, symbol: usize) -> Result<Self> {
        if m < 2 || symbol >= m {
            return Err(Error::InvalidDistribution(format!(
                "point mass at {symbol} over {m} symbols"
            )));
        }
        let mut probs = vec![0.0; m];
        probs[symbol] = 1.0;
        Ok(Self { probs })
    }

    /// Internal constructor for vectors produced by exact normalization.
    pub(crate) fn from_normalized(probs: Vec<f64>) -> Self {
        debug_assert!(probs.len() >= 2);
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    /// Extends the distribution with zero-probability symbols up to size `m`.
    pub fn padded(&self, m: usize) -> Self {
        let mut probs = self.probs.clone();
        if probs.len() < m {
            probs.resize(m, 0.0);
        }
        Self { probs }
    }

    /// Probabilities of all blocks of `len` i.i.d. symbols, indexed by the
    /// block's value read as a big-endian base-`m` number (lexicographic
    /// order).
    pub fn block_probabilities(&self, len: usize) -> Vec<f64> {
        let mut out = vec![1.0];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|&prefix| self.probs.iter().map(move |&p| prefix * p))
                .collect();
        }
        out
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sums_and_entries() {
        assert!(Distribution::new(vec![0.5, 0.4]).is_err());
        assert!(Distribution::new(vec![1.5, -0.5]).is_err());
        assert!(Distribution::new(vec![1.0]).is_err());
        assert!(Distribution::new(vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn block_probabilities_follow_lex_order() {
        let d = Distribution::bernoulli(0.3).unwrap();
        let blocks = d.block_probabilities(2);
        let expected = [0.09, 0.21, 0.21, 0.49];
        for (a, b) in blocks.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn loose_tolerance_renormalizes() {
        let d = Distribution::with_tolerance(vec![0.3333333333, 0.6666666666], 1e-9).unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
