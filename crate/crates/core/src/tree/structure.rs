//! The structure bijection: a string corresponds one-to-one to the tuple of
//! its component images, and can be rebuilt from that tuple by interleaving
//! child restrictions according to each node's branch string.

use super::{BinarizationTree, NodeId};
use crate::alphabet::SymbolString;
use crate::error::{Error, Result};

impl BinarizationTree {
    /// Splits a source string into block indices. The length must be a
    /// multiple of the block length.
    pub fn to_blocks(&self, x: &SymbolString) -> Result<Vec<usize>> {
        let m = self.source_alphabet();
        if let Some((position, &s)) = x
            .symbols()
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= m)
        {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                position,
                alphabet: m,
            });
        }
        if !x.len().is_multiple_of(self.block_len()) {
            return Err(Error::OutOfRange(format!(
                "string length {} is not a multiple of the block length {}",
                x.len(),
                self.block_len()
            )));
        }
        Ok(x.symbols()
            .chunks_exact(self.block_len())
            .map(|block| self.block_index(block))
            .collect())
    }

    /// Concatenates the symbols of the given blocks.
    pub fn from_blocks(&self, blocks: &[usize]) -> SymbolString {
        let symbols = blocks.iter().flat_map(|&b| self.block_symbols(b)).collect();
        SymbolString::new(self.source_alphabet(), symbols).expect("blocks decode into range")
    }
}

/// `(Φ_1(x), .., Φ_M(x))` with components in pre-order.
pub fn structure_map(tree: &BinarizationTree, x: &SymbolString) -> Result<Vec<SymbolString>> {
    let blocks = tree.to_blocks(x)?;
    tree.component_tables()
        .iter()
        .map(|table| SymbolString::new(table.degree(), table.apply(&blocks)))
        .collect()
}

/// The unique `x` with `structure_map(tree, x) == parts`.
pub fn structure_inverse(tree: &BinarizationTree, parts: &[SymbolString]) -> Result<SymbolString> {
    if parts.len() != tree.component_count() {
        return Err(Error::InconsistentParts(format!(
            "expected {} component strings, got {}",
            tree.component_count(),
            parts.len()
        )));
    }
    let raw: Vec<&[u8]> = parts.iter().map(|p| p.symbols()).collect();
    let blocks = inverse_blocks(tree, &raw)?;
    Ok(tree.from_blocks(&blocks))
}

/// Block-level inverse used by the verification harness.
pub(crate) fn inverse_blocks(tree: &BinarizationTree, parts: &[&[u8]]) -> Result<Vec<usize>> {
    rebuild(tree, tree.internal_id(0), parts)
}

fn rebuild(tree: &BinarizationTree, id: NodeId, parts: &[&[u8]]) -> Result<Vec<usize>> {
    let component = tree
        .component_of(id)
        .expect("rebuild is called on internal nodes");
    let branch = parts[component];
    let children = tree.children(id);
    let mut counts = vec![0usize; children.len()];
    for &s in branch {
        let slot = counts.get_mut(s as usize).ok_or_else(|| {
            Error::InconsistentParts(format!(
                "component {} has symbol {s} but only {} branches",
                component + 1,
                children.len()
            ))
        })?;
        *slot += 1;
    }
    let child_strings = children
        .iter()
        .zip(&counts)
        .map(|(&child, &count)| match tree.leaf_block(child) {
            Some(block) => Ok(vec![block; count]),
            None => {
                let sub = rebuild(tree, child, parts)?;
                if sub.len() != count {
                    return Err(Error::InconsistentParts(format!(
                        "component {} expects {count} symbols from its branch, but the subtree rebuilds {}",
                        component + 1,
                        sub.len()
                    )));
                }
                Ok(sub)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    merge_by_branch(branch, &child_strings)
}

/// Interleaves `parts` by taking the next element of `parts[b]` for every
/// branch symbol `b`. Every part must be consumed exactly.
pub fn merge_by_branch<T: Clone>(branch: &[u8], parts: &[Vec<T>]) -> Result<Vec<T>> {
    let mut cursors = vec![0usize; parts.len()];
    let mut out = Vec::with_capacity(branch.len());
    for (position, &b) in branch.iter().enumerate() {
        let b = b as usize;
        let part = parts.get(b).ok_or_else(|| {
            Error::InconsistentParts(format!(
                "branch symbol {b} at position {position} has no matching part"
            ))
        })?;
        let item = part.get(cursors[b]).ok_or_else(|| {
            Error::InconsistentParts(format!("part {b} ran out at branch position {position}"))
        })?;
        out.push(item.clone());
        cursors[b] += 1;
    }
    if let Some(b) = (0..parts.len()).find(|&b| cursors[b] != parts[b].len()) {
        return Err(Error::InconsistentParts(format!(
            "part {b} has {} unused symbols",
            parts[b].len() - cursors[b]
        )));
    }
    Ok(out)
}

/// `x_{T_i}` for every child `i` of the component's node: the subsequence of
/// blocks of `x` lying below that child.
pub fn restriction(
    tree: &BinarizationTree,
    component: usize,
    x: &SymbolString,
) -> Result<Vec<SymbolString>> {
    let blocks = tree.to_blocks(x)?;
    let table = tree.table(component);
    let mut per_child = vec![Vec::new(); table.degree()];
    for b in blocks {
        if let Some(i) = table.get(b) {
            per_child[i as usize].push(b);
        }
    }
    Ok(per_child.iter().map(|bs| tree.from_blocks(bs)).collect())
}

impl BinarizationTree {
    /// `x_T` for the subtree rooted at the component's node.
    pub fn subtree_string(&self, component: usize, x: &SymbolString) -> Result<SymbolString> {
        let blocks = self.to_blocks(x)?;
        let table = self.table(component);
        let kept: Vec<usize> = blocks
            .into_iter()
            .filter(|&b| table.get(b).is_some())
            .collect();
        Ok(self.from_blocks(&kept))
    }
}
