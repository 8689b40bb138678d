use std::collections::HashMap;

use super::string::digits_to_string;

/// Multiset of output strings, keyed by the raw digit sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutputMultiset {
    counts: HashMap<Vec<u8>, u64>,
    total: u64,
}

impl OutputMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, output: &[u8]) {
        self.insert_n(output, 1);
    }

    pub fn insert_n(&mut self, output: &[u8], multiplicity: u64) {
        if multiplicity == 0 {
            return;
        }
        *self.counts.entry(output.to_vec()).or_insert(0) += multiplicity;
        self.total += multiplicity;
    }

    pub fn multiplicity(&self, output: &[u8]) -> u64 {
        self.counts.get(output).copied().unwrap_or(0)
    }

    /// Total multiplicity, the size of the source set this multiset images.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Sum of output lengths weighted by multiplicity.
    pub fn total_symbols(&self) -> u64 {
        self.counts.iter().map(|(k, &v)| k.len() as u64 * v).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Entries sorted by (length, string) for stable display.
    pub fn sorted(&self) -> Vec<(Vec<u8>, u64)> {
        let mut entries: Vec<_> = self.counts.iter().map(|(k, &v)| (k.clone(), v)).collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        entries
    }

    /// Compact summary such as `3·{0,1}^0 + 3·{0,1}^2` when the multiset is
    /// extracting; lists raw counts otherwise.
    pub fn summary(&self, output_alphabet: usize) -> String {
        let mut by_len: Vec<(usize, u64)> = Vec::new();
        for (k, v) in self.sorted() {
            match by_len.last() {
                Some(&(len, _)) if len == k.len() => {}
                _ => by_len.push((k.len(), v)),
            }
        }
        if !is_extracting_multiset(self, output_alphabet) {
            return self
                .sorted()
                .iter()
                .map(|(k, v)| format!("{}:{v}", display_output(k)))
                .collect::<Vec<_>>()
                .join(" ");
        }
        by_len
            .iter()
            .map(|(len, copies)| {
                let full = if output_alphabet == 2 {
                    "{0,1}".to_string()
                } else {
                    format!("{{0..{}}}", output_alphabet - 1)
                };
                format!("{copies}·{full}^{len}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl FromIterator<Vec<u8>> for OutputMultiset {
    fn from_iter<I: IntoIterator<Item = Vec<u8>>>(iter: I) -> Self {
        let mut ms = Self::new();
        for s in iter {
            ms.insert(&s);
        }
        ms
    }
}

fn display_output(s: &[u8]) -> String {
    if s.is_empty() {
        "λ".to_string()
    } else {
        digits_to_string(s)
    }
}

/// Evidence that a multiset is not extracting: two strings of the same
/// length with different multiplicities (one of them may be absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetViolation {
    pub length: usize,
    pub first: Vec<u8>,
    pub first_multiplicity: u64,
    pub second: Vec<u8>,
    pub second_multiplicity: u64,
}

impl std::fmt::Display for MultisetViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "length {}: {} occurs {} times but {} occurs {} times",
            self.length,
            display_output(&self.first),
            self.first_multiplicity,
            display_output(&self.second),
            self.second_multiplicity
        )
    }
}

/// True iff for every length present, all `D^L` strings of that length
/// occur with the same multiplicity.
pub fn is_extracting_multiset(ms: &OutputMultiset, output_alphabet: usize) -> bool {
    extracting_violation(ms, output_alphabet).is_none()
}

/// First violation of the extracting property in order of increasing length.
pub fn extracting_violation(
    ms: &OutputMultiset,
    output_alphabet: usize,
) -> Option<MultisetViolation> {
    let mut by_len: HashMap<usize, Vec<(&[u8], u64)>> = HashMap::new();
    for (k, v) in ms.iter() {
        by_len.entry(k.len()).or_default().push((k, v));
    }
    let mut lengths: Vec<usize> = by_len.keys().copied().collect();
    lengths.sort_unstable();
    for len in lengths {
        let mut entries = by_len.remove(&len).unwrap_or_default();
        entries.sort();
        // A symbol outside the output alphabet can never be balanced; pair it
        // with a string that is in range.
        if let Some(&(bad, count)) = entries
            .iter()
            .find(|(k, _)| k.iter().any(|&s| s as usize >= output_alphabet))
        {
            let probe = vec![0u8; len];
            return Some(MultisetViolation {
                length: len,
                first: bad.to_vec(),
                first_multiplicity: count,
                second_multiplicity: ms.multiplicity(&probe),
                second: probe,
            });
        }
        let (lo, hi) = entries
            .iter()
            .fold((entries[0], entries[0]), |(lo, hi), &e| {
                (
                    if e.1 < lo.1 { e } else { lo },
                    if e.1 > hi.1 { e } else { hi },
                )
            });
        if lo.1 != hi.1 {
            return Some(MultisetViolation {
                length: len,
                first: hi.0.to_vec(),
                first_multiplicity: hi.1,
                second: lo.0.to_vec(),
                second_multiplicity: lo.1,
            });
        }
        let expected = (output_alphabet as u128).checked_pow(len as u32);
        if expected != Some(entries.len() as u128) {
            let missing = first_missing(&entries, len, output_alphabet);
            return Some(MultisetViolation {
                length: len,
                first: hi.0.to_vec(),
                first_multiplicity: hi.1,
                second: missing,
                second_multiplicity: 0,
            });
        }
    }
    None
}

/// Smallest string of length `len` over the alphabet that is absent from the
/// sorted, in-range `entries`. Called only when one is known to exist.
fn first_missing(entries: &[(&[u8], u64)], len: usize, alphabet: usize) -> Vec<u8> {
    let mut candidate = vec![0u8; len];
    for (k, _) in entries {
        if *k != candidate.as_slice() {
            return candidate;
        }
        // Increment candidate as a base-`alphabet` counter.
        for digit in candidate.iter_mut().rev() {
            if (*digit as usize) + 1 < alphabet {
                *digit += 1;
                break;
            }
            *digit = 0;
        }
    }
    candidate
}
