use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Outcome of a chi-square goodness-of-fit test against the uniform law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub samples: usize,
    pub p_value: f64,
}

/// Groups `digits` into non-overlapping words of `word_len` digits over an
/// alphabet of size `alphabet`, and tests the word counts for uniformity.
/// A trailing partial word is ignored.
pub fn chi_square_uniformity(digits: &[u8], alphabet: usize, word_len: usize) -> Result<ChiSquare> {
    let categories = alphabet
        .checked_pow(word_len as u32)
        .filter(|&c| (2..=1 << 24).contains(&c))
        .ok_or_else(|| Error::OutOfRange(format!("{alphabet}^{word_len} categories")))?;
    let mut counts = vec![0u64; categories];
    for word in digits.chunks_exact(word_len) {
        let index = word
            .iter()
            .fold(0usize, |acc, &d| acc * alphabet + d as usize);
        counts[index] += 1;
    }
    let samples = digits.len() / word_len;
    if samples == 0 {
        return Err(Error::OutOfRange("no complete words to test".into()));
    }
    let expected = samples as f64 / categories as f64;
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let degrees_of_freedom = categories - 1;
    let law =
        ChiSquared::new(degrees_of_freedom as f64).map_err(|e| Error::OutOfRange(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        degrees_of_freedom,
        samples,
        p_value: law.sf(statistic),
    })
}
