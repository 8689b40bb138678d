//! Binarization trees and the component functions they define.
//!
//! Leaves are labelled by blocks of `b` source symbols, so a tree over
//! `m`-ary symbols has exactly `m^b` leaves. Internal nodes are numbered in
//! pre-order; the `k`-th internal node defines the component function
//! `Φ_{k+1}`, which sends a block to the index of the child subtree holding
//! it, or to nothing when the block is not below the node.

mod component;
mod parse;
mod probability;
mod structure;

use std::fmt;

pub use component::{apply_component, image_composition, ComponentTable};
pub use parse::parse_tree;
pub(crate) use probability::component_masses;
pub use probability::{
    branching_distribution, leaf_entropy_sum, node_probabilities, node_probability,
};
pub(crate) use structure::inverse_blocks;
pub use structure::{merge_by_branch, restriction, structure_inverse, structure_map};

use crate::error::{Error, Result};

/// Role of an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Branch index is emitted as output digits; the branching distribution
    /// must be uniform for every source.
    Output,
    /// Branch string becomes an auxiliary stream fed back to the extractor.
    Recurse,
    /// Branch string is computed but thrown away.
    Discard,
}

impl Role {
    pub fn tag(self) -> char {
        match self {
            Role::Output => 'O',
            Role::Recurse => 'R',
            Role::Discard => 'D',
        }
    }

    pub fn from_tag(c: char) -> Option<Self> {
        match c {
            'O' => Some(Role::Output),
            'R' => Some(Role::Recurse),
            'D' => Some(Role::Discard),
            _ => None,
        }
    }
}

/// Unvalidated tree description, as produced by the parser or by code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    /// A leaf labelled by its block of source symbols.
    Leaf(Vec<u8>),
    Internal {
        role: Role,
        children: Vec<TreeNode>,
    },
}

impl TreeNode {
    pub fn leaf(block: &[u8]) -> Self {
        TreeNode::Leaf(block.to_vec())
    }

    pub fn output(children: Vec<TreeNode>) -> Self {
        TreeNode::Internal {
            role: Role::Output,
            children,
        }
    }

    pub fn recurse(children: Vec<TreeNode>) -> Self {
        TreeNode::Internal {
            role: Role::Recurse,
            children,
        }
    }

    pub fn discard(children: Vec<TreeNode>) -> Self {
        TreeNode::Internal {
            role: Role::Discard,
            children,
        }
    }
}

/// Arena index of a node.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf { block: usize },
    Internal { role: Role, children: Vec<NodeId> },
}

/// A validated binarization tree over blocks of `block_len` symbols from an
/// alphabet of `source_alphabet` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarizationTree {
    source_alphabet: usize,
    block_len: usize,
    output_alphabet: usize,
    /// Arena in pre-order; the root is node 0.
    nodes: Vec<Node>,
    /// Arena ids of the internal nodes, in pre-order.
    internal: Vec<NodeId>,
    tables: Vec<ComponentTable>,
}

const MAX_BLOCK_ALPHABET: usize = 1 << 20;

impl BinarizationTree {
    /// Validates `root` and infers the output alphabet: the smallest `D ≥ 2`
    /// such that every output node's degree is a power of `D`.
    pub fn new(root: TreeNode) -> Result<Self> {
        Self::build(root, None)
    }

    /// Validates `root` against an explicit output alphabet.
    pub fn with_output_alphabet(root: TreeNode, output_alphabet: usize) -> Result<Self> {
        Self::build(root, Some(output_alphabet))
    }

    fn build(root: TreeNode, output_alphabet: Option<usize>) -> Result<Self> {
        let TreeNode::Internal { .. } = root else {
            return Err(Error::InvalidTree(
                "the root must be an internal node".into(),
            ));
        };

        let mut leaves = Vec::new();
        collect_leaves(&root, &mut leaves);
        let block_len = leaves[0].len();
        if block_len == 0 {
            return Err(Error::InvalidTree("leaf labels must be non-empty".into()));
        }
        if let Some(bad) = leaves.iter().find(|l| l.len() != block_len) {
            return Err(Error::InvalidTree(format!(
                "leaf {} has length {}, expected {block_len}",
                crate::alphabet::SymbolString::new(36, (*bad).clone())
                    .map(|s| s.to_string())
                    .unwrap_or_default(),
                bad.len()
            )));
        }
        let count = leaves.len();
        let source_alphabet = integer_root(count, block_len).ok_or_else(|| {
            Error::InvalidTree(format!(
                "{count} leaves is not a perfect power m^{block_len} with m >= 2"
            ))
        })?;
        if count > MAX_BLOCK_ALPHABET {
            return Err(Error::SizeLimit(format!("{count} leaves")));
        }

        let mut seen = vec![false; count];
        let mut nodes = Vec::new();
        let mut internal = Vec::new();
        flatten(&root, source_alphabet, &mut seen, &mut nodes, &mut internal)?;

        let output_degrees: Vec<usize> = internal
            .iter()
            .filter_map(|&id| match &nodes[id] {
                Node::Internal {
                    role: Role::Output,
                    children,
                } => Some(children.len()),
                _ => None,
            })
            .collect();
        let output_alphabet = match output_alphabet {
            Some(d) => {
                if d < 2 {
                    return Err(Error::InvalidTree(format!("output alphabet {d} < 2")));
                }
                if let Some(bad) = output_degrees
                    .iter()
                    .find(|&&k| power_exponent(k, d).is_none())
                {
                    return Err(Error::InvalidTree(format!(
                        "output node of degree {bad} is not a power of {d}"
                    )));
                }
                d
            }
            None => infer_output_alphabet(&output_degrees)?,
        };

        let mut tree = Self {
            source_alphabet,
            block_len,
            output_alphabet,
            nodes,
            internal,
            tables: Vec::new(),
        };
        tree.tables = (0..tree.internal.len())
            .map(|k| ComponentTable::for_node(&tree, k))
            .collect();
        Ok(tree)
    }

    /// Number of source symbols `m`.
    pub fn source_alphabet(&self) -> usize {
        self.source_alphabet
    }

    /// Block length `b` in source symbols.
    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Number of leaves, `m^b`.
    pub fn block_alphabet(&self) -> usize {
        self.tables[0].len()
    }

    /// Output alphabet `D`.
    pub fn output_alphabet(&self) -> usize {
        self.output_alphabet
    }

    /// Number of internal nodes (component functions).
    pub fn component_count(&self) -> usize {
        self.internal.len()
    }

    /// Component tables in pre-order.
    pub fn component_tables(&self) -> &[ComponentTable] {
        &self.tables
    }

    pub fn table(&self, component: usize) -> &ComponentTable {
        &self.tables[component]
    }

    pub fn role(&self, component: usize) -> Role {
        match &self.nodes[self.internal[component]] {
            Node::Internal { role, .. } => *role,
            Node::Leaf { .. } => unreachable!("internal list holds internal nodes"),
        }
    }

    pub fn degree(&self, component: usize) -> usize {
        self.children(self.internal[component]).len()
    }

    /// Digits emitted per block by an output node (`a` with degree `D^a`).
    pub fn output_digits(&self, component: usize) -> Option<usize> {
        (self.role(component) == Role::Output)
            .then(|| power_exponent(self.degree(component), self.output_alphabet))
            .flatten()
    }

    /// Components with the given role, in pre-order.
    pub fn components_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.component_count())
            .filter(|&k| self.role(k) == role)
            .collect()
    }

    /// Block indices of the leaves below the given component's node, in
    /// left-to-right order.
    pub fn leaf_blocks(&self, component: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_blocks(self.internal[component], &mut out);
        out
    }

    /// Leaf blocks of each child of the component's node.
    pub fn child_leaf_blocks(&self, component: usize) -> Vec<Vec<usize>> {
        self.children(self.internal[component])
            .iter()
            .map(|&c| {
                let mut out = Vec::new();
                self.collect_blocks(c, &mut out);
                out
            })
            .collect()
    }

    /// Returns a copy with one node's role changed. The output alphabet is
    /// re-inferred only if `role` is [`Role::Output`].
    pub fn retagged(&self, component: usize, role: Role) -> Result<Self> {
        let mut spec = self.to_node();
        let mut counter = 0;
        retag(&mut spec, component, role, &mut counter);
        if role == Role::Output {
            Self::new(spec)
        } else {
            Self::with_output_alphabet(spec, self.output_alphabet)
        }
    }

    /// Converts back to an unvalidated description.
    pub fn to_node(&self) -> TreeNode {
        self.node_spec(0)
    }

    /// Big-endian base-`m` value of a block.
    pub fn block_index(&self, block: &[u8]) -> usize {
        block
            .iter()
            .fold(0, |acc, &s| acc * self.source_alphabet + s as usize)
    }

    pub fn block_symbols(&self, mut index: usize) -> Vec<u8> {
        let mut out = vec![0u8; self.block_len];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.source_alphabet) as u8;
            index /= self.source_alphabet;
        }
        out
    }

    /// Human-oriented multi-line rendering; parses back to the same tree.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.write_pretty(0, 0, &mut out);
        out
    }

    fn write_pretty(&self, id: NodeId, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match &self.nodes[id] {
            Node::Leaf { .. } => {
                out.push_str(&pad);
                self.write_compact(id, out);
                out.push('\n');
            }
            Node::Internal { role, children } => {
                let k = self.internal.iter().position(|&i| i == id).unwrap_or(0);
                if children
                    .iter()
                    .all(|&c| matches!(self.nodes[c], Node::Leaf { .. }))
                {
                    out.push_str(&pad);
                    self.write_compact(id, out);
                    out.push_str(&format!("  # Φ{}\n", k + 1));
                    return;
                }
                out.push_str(&format!("{pad}({}  # Φ{}\n", role.tag(), k + 1));
                for &c in children {
                    self.write_pretty(c, indent + 1, out);
                }
                out.push_str(&pad);
                out.push_str(")\n");
            }
        }
    }

    fn write_compact(&self, id: NodeId, out: &mut String) {
        match &self.nodes[id] {
            Node::Leaf { block } => {
                out.push_str("(L ");
                out.push_str(
                    &crate::alphabet::SymbolString::new(36, self.block_symbols(*block))
                        .map(|s| s.to_string())
                        .unwrap_or_default(),
                );
                out.push(')');
            }
            Node::Internal { role, children } => {
                out.push('(');
                out.push(role.tag());
                for &c in children {
                    out.push(' ');
                    self.write_compact(c, out);
                }
                out.push(')');
            }
        }
    }

    fn node_spec(&self, id: NodeId) -> TreeNode {
        match &self.nodes[id] {
            Node::Leaf { block } => TreeNode::Leaf(self.block_symbols(*block)),
            Node::Internal { role, children } => TreeNode::Internal {
                role: *role,
                children: children.iter().map(|&c| self.node_spec(c)).collect(),
            },
        }
    }

    pub(crate) fn children(&self, id: NodeId) -> &[NodeId] {
        match &self.nodes[id] {
            Node::Internal { children, .. } => children,
            Node::Leaf { .. } => &[],
        }
    }

    pub(crate) fn leaf_block(&self, id: NodeId) -> Option<usize> {
        match &self.nodes[id] {
            Node::Leaf { block } => Some(*block),
            Node::Internal { .. } => None,
        }
    }

    pub(crate) fn internal_id(&self, component: usize) -> NodeId {
        self.internal[component]
    }

    /// Component index of an internal node, by arena id.
    pub(crate) fn component_of(&self, id: NodeId) -> Option<usize> {
        self.internal.binary_search(&id).ok()
    }

    pub(crate) fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn collect_blocks(&self, id: NodeId, out: &mut Vec<usize>) {
        match &self.nodes[id] {
            Node::Leaf { block } => out.push(*block),
            Node::Internal { children, .. } => {
                for &c in children {
                    self.collect_blocks(c, out);
                }
            }
        }
    }
}

impl fmt::Display for BinarizationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_compact(0, &mut out);
        f.write_str(&out)
    }
}

impl std::str::FromStr for BinarizationTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinarizationTree::new(parse_tree(s)?)
    }
}

fn collect_leaves<'a>(node: &'a TreeNode, out: &mut Vec<&'a Vec<u8>>) {
    match node {
        TreeNode::Leaf(block) => out.push(block),
        TreeNode::Internal { children, .. } => {
            for c in children {
                collect_leaves(c, out);
            }
        }
    }
}

fn flatten(
    node: &TreeNode,
    m: usize,
    seen: &mut [bool],
    nodes: &mut Vec<Node>,
    internal: &mut Vec<NodeId>,
) -> Result<NodeId> {
    let id = nodes.len();
    match node {
        TreeNode::Leaf(block) => {
            if let Some(&bad) = block.iter().find(|&&s| s as usize >= m) {
                return Err(Error::InvalidTree(format!(
                    "leaf symbol {bad} is outside the source alphabet of size {m}"
                )));
            }
            let index = block.iter().fold(0, |acc, &s| acc * m + s as usize);
            if std::mem::replace(&mut seen[index], true) {
                return Err(Error::InvalidTree(format!(
                    "leaf {} appears more than once",
                    crate::alphabet::SymbolString::new(36, block.clone())
                        .map(|s| s.to_string())
                        .unwrap_or_default()
                )));
            }
            nodes.push(Node::Leaf { block: index });
        }
        TreeNode::Internal { role, children } => {
            if children.len() < 2 {
                return Err(Error::InvalidTree(format!(
                    "internal node with {} child(ren); at least 2 are required",
                    children.len()
                )));
            }
            if children.len() > 256 {
                return Err(Error::InvalidTree(format!(
                    "internal node of degree {} exceeds 256",
                    children.len()
                )));
            }
            nodes.push(Node::Internal {
                role: *role,
                children: Vec::new(),
            });
            internal.push(id);
            let ids = children
                .iter()
                .map(|c| flatten(c, m, seen, nodes, internal))
                .collect::<Result<Vec<_>>>()?;
            nodes[id] = Node::Internal {
                role: *role,
                children: ids,
            };
        }
    }
    Ok(id)
}

fn retag(node: &mut TreeNode, target: usize, new_role: Role, counter: &mut usize) {
    if let TreeNode::Internal { role, children } = node {
        if *counter == target {
            *role = new_role;
        }
        *counter += 1;
        for c in children {
            retag(c, target, new_role, counter);
        }
    }
}

/// `m` with `m^exp == value`, `m >= 2`.
fn integer_root(value: usize, exp: usize) -> Option<usize> {
    let guess = (value as f64).powf(1.0 / exp as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1)
        .filter(|&m| m >= 2)
        .find(|&m| m.checked_pow(exp as u32) == Some(value))
}

/// `a >= 1` with `base^a == value`.
pub(crate) fn power_exponent(value: usize, base: usize) -> Option<usize> {
    if base < 2 || value < base {
        return None;
    }
    let mut a = 0;
    let mut v = value;
    while v.is_multiple_of(base) {
        v /= base;
        a += 1;
    }
    (v == 1).then_some(a)
}

fn infer_output_alphabet(degrees: &[usize]) -> Result<usize> {
    let Some(&max) = degrees.iter().max() else {
        return Ok(2);
    };
    (2..=max)
        .find(|&d| degrees.iter().all(|&k| power_exponent(k, d).is_some()))
        .ok_or_else(|| {
            Error::InvalidTree(format!(
                "output node degrees {degrees:?} are not powers of a common base"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PERES: &str = "(R (R (L 00) (L 11)) (O (L 01) (L 10)))";

    #[test]
    fn peres_tree_shape() {
        let t: BinarizationTree = PERES.parse().unwrap();
        assert_eq!(t.source_alphabet(), 2);
        assert_eq!(t.block_len(), 2);
        assert_eq!(t.block_alphabet(), 4);
        assert_eq!(t.output_alphabet(), 2);
        assert_eq!(t.component_count(), 3);
        assert_eq!(
            (0..3).map(|k| t.role(k)).collect::<Vec<_>>(),
            [Role::Recurse, Role::Recurse, Role::Output]
        );
        assert_eq!(t.output_digits(2), Some(1));
        assert_eq!(t.leaf_blocks(1), [0, 3]);
        assert_eq!(t.to_string(), PERES);
    }

    #[test]
    fn validation_errors() {
        for bad in [
            "(L 00)",
            "(R (L 0) (L 1) (L 1))",
            "(R (L 00) (L 01) (L 10))",
            "(R (L 0) (R (L 1)))",
            "(R (L 00) (L 01) (L 10) (L 1))",
            "(R (L 0) (L 2))",
        ] {
            assert!(bad.parse::<BinarizationTree>().is_err(), "{bad}");
        }
    }

    #[test]
    fn output_alphabet_inference() {
        let t: BinarizationTree =
            "(R (R (L 000) (L 111)) (R (O (L 001) (L 010) (L 100)) (O (L 011) (L 110) (L 101))))"
                .parse()
                .unwrap();
        assert_eq!(t.output_alphabet(), 3);
        let t: BinarizationTree = "(O (L 00) (L 01) (L 10) (L 11))".parse().unwrap();
        assert_eq!(t.output_alphabet(), 2);
        assert_eq!(t.output_digits(0), Some(2));
        assert!(BinarizationTree::with_output_alphabet(t.to_node(), 3).is_err());
    }

    #[test]
    fn retag_changes_one_role() {
        let t: BinarizationTree = PERES.parse().unwrap();
        let broken = t.retagged(0, Role::Output).unwrap();
        assert_eq!(broken.role(0), Role::Output);
        assert_eq!(broken.role(1), Role::Recurse);
    }

    #[test]
    fn pretty_round_trips() {
        let t: BinarizationTree = PERES.parse().unwrap();
        let again: BinarizationTree = t.pretty().parse().unwrap();
        assert_eq!(t, again);
    }
}
