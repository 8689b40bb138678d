use super::BinarizationTree;
use crate::alphabet::{Composition, SymbolString};
use crate::error::{Error, Result};

/// The component function of one internal node: block index to child index,
/// `None` standing for the empty output λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTable {
    degree: usize,
    entries: Vec<Option<u8>>,
}

impl ComponentTable {
    pub(crate) fn for_node(tree: &BinarizationTree, component: usize) -> Self {
        let mut entries = vec![None; tree.block_alphabet_from_nodes()];
        let children = tree.child_leaf_blocks(component);
        for (i, blocks) in children.iter().enumerate() {
            for &b in blocks {
                entries[b] = Some(i as u8);
            }
        }
        Self {
            degree: children.len(),
            entries,
        }
    }

    /// Number of children of the node, i.e. the size of the image alphabet.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Size of the block alphabet the table is defined on.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, block: usize) -> Option<u8> {
        self.entries[block]
    }

    pub fn entries(&self) -> &[Option<u8>] {
        &self.entries
    }

    /// Symbolwise image of a block-index string with λ's deleted.
    pub fn apply(&self, blocks: &[usize]) -> Vec<u8> {
        blocks.iter().filter_map(|&b| self.entries[b]).collect()
    }
}

impl BinarizationTree {
    /// Leaf count computed from the arena, usable while tables are built.
    fn block_alphabet_from_nodes(&self) -> usize {
        (0..self.node_count())
            .filter(|&id| self.leaf_block(id).is_some())
            .count()
    }
}

/// Applies a component table to a string whose symbols are block indices.
pub fn apply_component(table: &ComponentTable, x: &SymbolString) -> Result<SymbolString> {
    if let Some((position, &s)) = x
        .symbols()
        .iter()
        .enumerate()
        .find(|(_, &s)| s as usize >= table.len())
    {
        return Err(Error::SymbolOutOfRange {
            symbol: s as usize,
            position,
            alphabet: table.len(),
        });
    }
    let blocks: Vec<usize> = x.symbols().iter().map(|&s| s as usize).collect();
    SymbolString::new(table.degree().max(2), table.apply(&blocks))
}

/// Composition of the image class: `l_i = sum of n_s over blocks s with φ(s) = i`.
pub fn image_composition(table: &ComponentTable, c: &Composition) -> Result<Composition> {
    if c.alphabet_size() != table.len() {
        return Err(Error::DimensionMismatch {
            expected: table.len(),
            actual: c.alphabet_size(),
        });
    }
    let mut counts = vec![0; table.degree()];
    for (block, &n) in c.counts().iter().enumerate() {
        if let Some(i) = table.get(block) {
            counts[i as usize] += n;
        }
    }
    Ok(Composition::new(counts))
}
