//! Parsing of digit input and distribution flags.

use std::fmt;

use peres::Distribution;

/// Tolerance for `--dist` sums.
const DIST_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidSymbol {
    pub symbol: char,
    pub line: usize,
    pub column: usize,
    pub alphabet: usize,
}

impl fmt::Display for InvalidSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid symbol {:?} at line {}, column {} (alphabet has {} symbols)",
            self.symbol, self.line, self.column, self.alphabet
        )
    }
}

/// Digits of `text` as symbols below `alphabet`; whitespace is skipped.
/// Columns count characters from 1.
pub fn parse_digits(text: &str, alphabet: usize) -> Result<Vec<u8>, InvalidSymbol> {
    let mut out = Vec::with_capacity(text.len());
    for (line, row) in text.lines().enumerate() {
        for (column, c) in row.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            match c.to_digit(36) {
                Some(d) if (d as usize) < alphabet => out.push(d as u8),
                _ => {
                    return Err(InvalidSymbol {
                        symbol: c,
                        line: line + 1,
                        column: column + 1,
                        alphabet,
                    })
                }
            }
        }
    }
    Ok(out)
}

/// `--p` gives `⟨p, 1-p⟩`, `--dist` a comma-separated list summing to one.
pub fn distribution(p: Option<f64>, dist: Option<&str>) -> Result<Distribution, String> {
    match (p, dist) {
        (Some(p), None) => Distribution::bernoulli(p).map_err(|e| e.to_string()),
        (None, Some(list)) => {
            let probs = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("bad probability {s:?}: {e}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Distribution::with_tolerance(probs, DIST_TOLERANCE).map_err(|e| e.to_string())
        }
        (None, None) => Err("one of --p or --dist is required".into()),
        (Some(_), Some(_)) => Err("--p and --dist are mutually exclusive".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_skip_whitespace() {
        assert_eq!(parse_digits("10 0\n0\t1\n", 2).unwrap(), [1, 0, 0, 0, 1]);
        assert_eq!(parse_digits("", 3).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn bad_digit_position() {
        let e = parse_digits("01\n0 2", 2).unwrap_err();
        assert_eq!((e.symbol, e.line, e.column), ('2', 2, 3));
        assert!(parse_digits("0x", 16).is_err());
    }

    #[test]
    fn distributions() {
        assert_eq!(
            distribution(Some(0.25), None).unwrap().probs(),
            [0.25, 0.75]
        );
        assert_eq!(distribution(None, Some("0.2, 0.3,0.5")).unwrap().len(), 3);
        assert!(distribution(None, Some("0.2,0.3")).is_err());
        assert!(distribution(None, None).is_err());
        assert!(distribution(Some(0.5), Some("0.5,0.5")).is_err());
    }
}
