use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::alphabet::{class_size, compositions, enumerate_class, Composition};
use crate::analysis::MAX_EXACT_STRINGS;
use crate::error::{Error, Result};
use crate::tree::{image_composition, inverse_blocks, BinarizationTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub max_blocks: usize,
    pub classes: usize,
    pub strings: u64,
    /// First problem found, if any.
    pub failure: Option<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "structure map bijective on {} strings in {} classes (up to {} blocks)",
                self.strings, self.classes, self.max_blocks
            ),
            Some(msg) => write!(f, "structure map FAILED: {msg}"),
        }
    }
}

/// Exhaustive check of the structure map on all block strings of length
/// at most `max_blocks`.
pub fn check_structure(tree: &BinarizationTree, max_blocks: usize) -> Result<StructureReport> {
    let all: Vec<usize> = (0..tree.block_alphabet()).collect();
    check_structure_on(tree, max_blocks, &all)
}

/// Like [`check_structure`] but only over strings built from the given
/// block indices. Per class this checks that the inverse recovers the input,
/// that images are distinct, that each part lies in the predicted class and
/// that the class sizes multiply out.
pub fn check_structure_on(
    tree: &BinarizationTree,
    max_blocks: usize,
    blocks: &[usize],
) -> Result<StructureReport> {
    let k = blocks.len();
    let full = tree.block_alphabet();
    if k < 2 {
        return Err(Error::OutOfRange("need at least two block symbols".into()));
    }
    if let Some(&bad) = blocks.iter().find(|&&b| b >= full) {
        return Err(Error::OutOfRange(format!("block {bad} outside 0..{full}")));
    }
    if (k as u128)
        .checked_pow(max_blocks as u32)
        .is_none_or(|n| n > MAX_EXACT_STRINGS)
    {
        return Err(Error::SizeLimit(format!(
            "{k}^{max_blocks} block strings exceeds {MAX_EXACT_STRINGS}"
        )));
    }
    if k > 256 {
        return check_strings(tree, max_blocks, blocks);
    }
    let restricted: Vec<Composition> = (0..=max_blocks).flat_map(|n| compositions(n, k)).collect();
    let classes = restricted.len();
    let results: Vec<(u64, Option<String>)> = restricted
        .into_par_iter()
        .map(|c| check_class(tree, blocks, &c))
        .collect::<Result<_>>()?;
    let strings = results.iter().map(|r| r.0).sum();
    let failure = results.into_iter().find_map(|r| r.1);
    Ok(StructureReport {
        max_blocks,
        classes,
        strings,
        failure,
    })
}

/// Same checks, string by string, for block alphabets too large for the
/// class enumerator. Injectivity is implied by the round trip here.
fn check_strings(
    tree: &BinarizationTree,
    max_blocks: usize,
    blocks: &[usize],
) -> Result<StructureReport> {
    let k = blocks.len();
    let mut classes = 0;
    let mut strings = 0;
    for n in 0..=max_blocks {
        let mut digits = vec![0usize; n];
        let mut images: HashMap<Composition, Vec<Composition>> = HashMap::new();
        loop {
            let x: Vec<usize> = digits.iter().map(|&d| blocks[d]).collect();
            strings += 1;
            let mut counts = vec![0; tree.block_alphabet()];
            for &b in &x {
                counts[b] += 1;
            }
            let c = Composition::new(counts);
            if !images.contains_key(&c) {
                classes += 1;
                if let Some(msg) = size_mismatch(tree, &c)? {
                    return Ok(failed(max_blocks, classes, strings, msg));
                }
                images.insert(c.clone(), image_compositions(tree, &c)?);
            }
            if let Some(msg) = check_string(tree, &x, &images[&c])? {
                return Ok(failed(max_blocks, classes, strings, msg));
            }
            // odometer increment
            let Some(i) = digits.iter().rposition(|&d| d + 1 < k) else {
                break;
            };
            digits[i] += 1;
            digits[i + 1..].fill(0);
        }
    }
    Ok(StructureReport {
        max_blocks,
        classes,
        strings,
        failure: None,
    })
}

fn failed(max_blocks: usize, classes: usize, strings: u64, msg: String) -> StructureReport {
    StructureReport {
        max_blocks,
        classes,
        strings,
        failure: Some(msg),
    }
}

fn image_compositions(tree: &BinarizationTree, c: &Composition) -> Result<Vec<Composition>> {
    tree.component_tables()
        .iter()
        .map(|t| image_composition(t, c))
        .collect()
}

fn size_mismatch(tree: &BinarizationTree, c: &Composition) -> Result<Option<String>> {
    let mut product: u128 = 1;
    for image in image_compositions(tree, c)? {
        product = product
            .checked_mul(class_size(&image)?)
            .ok_or(Error::Overflow("class size product"))?;
    }
    let size = class_size(c)?;
    Ok((product != size)
        .then(|| format!("class ({c}): size {size} but image classes multiply to {product}")))
}

fn check_string(
    tree: &BinarizationTree,
    x: &[usize],
    images: &[Composition],
) -> Result<Option<String>> {
    let tables = tree.component_tables();
    let parts: Vec<Vec<u8>> = tables.iter().map(|t| t.apply(x)).collect();
    for (k, part) in parts.iter().enumerate() {
        let mut pc = vec![0; tables[k].degree()];
        for &s in part {
            pc[s as usize] += 1;
        }
        if pc != images[k].counts() {
            return Ok(Some(format!(
                "{x:?}: component {k} left the predicted class"
            )));
        }
    }
    let raw: Vec<&[u8]> = parts.iter().map(Vec::as_slice).collect();
    if inverse_blocks(tree, &raw)? != x {
        return Ok(Some(format!("{x:?}: inverse does not recover the input")));
    }
    Ok(None)
}

fn check_class(
    tree: &BinarizationTree,
    blocks: &[usize],
    restricted: &Composition,
) -> Result<(u64, Option<String>)> {
    let mut counts = vec![0; tree.block_alphabet()];
    for (i, &n) in restricted.counts().iter().enumerate() {
        counts[blocks[i]] += n;
    }
    let c = Composition::new(counts);
    if let Some(msg) = size_mismatch(tree, &c)? {
        return Ok((0, Some(msg)));
    }
    let images = image_compositions(tree, &c)?;
    let tables = tree.component_tables();
    let mut seen = HashSet::new();
    let mut strings = 0;
    let mut x = vec![0usize; c.total()];
    for y in enumerate_class(restricted)? {
        strings += 1;
        for (slot, &s) in x.iter_mut().zip(y.symbols()) {
            *slot = blocks[s as usize];
        }
        if let Some(msg) = check_string(tree, &x, &images)? {
            return Ok((strings, Some(msg)));
        }
        let parts: Vec<Vec<u8>> = tables.iter().map(|t| t.apply(&x)).collect();
        if !seen.insert(parts) {
            return Ok((
                strings,
                Some(format!("{x:?}: image collides with another string")),
            ));
        }
    }
    Ok((strings, None))
}
