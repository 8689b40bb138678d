use std::fmt;

use rayon::prelude::*;

use crate::alphabet::{
    class_size, compositions, enumerate_class, extracting_violation, Composition,
    MultisetViolation, OutputMultiset,
};
use crate::analysis::MAX_EXACT_STRINGS;
use crate::error::{Error, Result};
use crate::extractors::Scheme;

/// Multiset image of one equiprobable class under the scheme.
pub fn class_multiset(s: &Scheme, c: &Composition) -> Result<OutputMultiset> {
    if c.alphabet_size() != s.source_alphabet() {
        return Err(Error::DimensionMismatch {
            expected: s.source_alphabet(),
            actual: c.alphabet_size(),
        });
    }
    let mut ms = OutputMultiset::new();
    let mut out = Vec::new();
    for x in enumerate_class(c)? {
        out.clear();
        s.extract_into(x.symbols(), &mut out);
        ms.insert(&out);
    }
    Ok(ms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassResult {
    pub composition: Composition,
    pub size: u128,
    /// Sum of output lengths over the class.
    pub output_digits: u64,
    /// Compact description of the image multiset.
    pub image: String,
    pub violation: Option<MultisetViolation>,
}

impl ClassResult {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ClassResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "COMPOSITION {} OK size={} digits={} image={}",
                self.composition, self.size, self.output_digits, self.image
            ),
            Some(v) => write!(
                f,
                "COMPOSITION {} FAIL size={} {v}",
                self.composition, self.size
            ),
        }
    }
}

/// Result of [`check_extracting`]: one entry per class, ordered by length
/// and then by composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractingReport {
    pub scheme: String,
    pub max_symbols: usize,
    pub classes: Vec<ClassResult>,
}

impl ExtractingReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(ClassResult::passed)
    }

    pub fn first_violation(&self) -> Option<&ClassResult> {
        self.classes.iter().find(|c| !c.passed())
    }

    /// Results for inputs of exactly `n` symbols.
    pub fn classes_of_length(&self, n: usize) -> impl Iterator<Item = &ClassResult> {
        self.classes
            .iter()
            .filter(move |c| c.composition.total() == n)
    }

    /// Machine-readable lines, one per class.
    pub fn lines(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ExtractingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_violation() {
            None => writeln!(
                f,
                "{}: extracting on all {} classes of length <= {}",
                self.scheme,
                self.classes.len(),
                self.max_symbols
            ),
            Some(c) => writeln!(
                f,
                "{}: NOT extracting; first violation in class ({}): {}",
                self.scheme,
                c.composition,
                c.violation.as_ref().expect("failing class has a violation")
            ),
        }
    }
}

/// Checks, for every input length up to `max_symbols` and every class of
/// that length, that the image multiset is extracting.
pub fn check_extracting(s: &Scheme, max_symbols: usize) -> Result<ExtractingReport> {
    let m = s.source_alphabet();
    let strings = (m as u128).checked_pow(max_symbols as u32);
    if strings.is_none_or(|n| n > MAX_EXACT_STRINGS) {
        return Err(Error::SizeLimit(format!(
            "{m}^{max_symbols} strings exceeds {MAX_EXACT_STRINGS}"
        )));
    }
    let all: Vec<Composition> = (0..=max_symbols).flat_map(|n| compositions(n, m)).collect();
    let d = s.output_alphabet();
    let classes = all
        .into_par_iter()
        .map(|composition| {
            let ms = class_multiset(s, &composition)?;
            Ok(ClassResult {
                size: class_size(&composition)?,
                output_digits: ms.total_symbols(),
                image: ms.summary(d),
                violation: extracting_violation(&ms, d),
                composition,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtractingReport {
        scheme: s.name().to_string(),
        max_symbols,
        classes,
    })
}
