use super::BinarizationTree;
use crate::alphabet::Distribution;
use crate::analysis::entropy::entropy_of;
use crate::error::{Error, Result};

/// Probability mass below every arena node.
pub(crate) fn arena_masses(tree: &BinarizationTree, block_probs: &[f64]) -> Vec<f64> {
    let mut mass = vec![0.0; tree.node_count()];
    // The arena is in pre-order, so children always follow their parent.
    for id in (0..tree.node_count()).rev() {
        mass[id] = match tree.leaf_block(id) {
            Some(block) => block_probs[block],
            None => tree.children(id).iter().map(|&c| mass[c]).sum(),
        };
    }
    mass
}

/// `P(v)` and the unnormalized child masses of every component, in pre-order.
pub(crate) fn component_masses(
    tree: &BinarizationTree,
    block_probs: &[f64],
) -> Vec<(f64, Vec<f64>)> {
    let mass = arena_masses(tree, block_probs);
    (0..tree.component_count())
        .map(|k| {
            let id = tree.internal_id(k);
            let children = tree.children(id).iter().map(|&c| mass[c]).collect();
            (mass[id], children)
        })
        .collect()
}

fn check_block_distribution(tree: &BinarizationTree, d: &Distribution) -> Result<()> {
    if d.len() != tree.block_alphabet() {
        return Err(Error::DimensionMismatch {
            expected: tree.block_alphabet(),
            actual: d.len(),
        });
    }
    Ok(())
}

/// `P(v)` for every component, given a distribution over blocks.
pub fn node_probabilities(tree: &BinarizationTree, d: &Distribution) -> Result<Vec<f64>> {
    check_block_distribution(tree, d)?;
    Ok(component_masses(tree, d.probs())
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

/// `P(v) = sum of p_i over leaves i below v`.
pub fn node_probability(
    tree: &BinarizationTree,
    component: usize,
    d: &Distribution,
) -> Result<f64> {
    check_block_distribution(tree, d)?;
    let mass = arena_masses(tree, d.probs());
    Ok(mass[tree.internal_id(component)])
}

/// `π(v)`, the distribution of the branch taken at `v` given that `v` is
/// reached.
pub fn branching_distribution(
    tree: &BinarizationTree,
    component: usize,
    d: &Distribution,
) -> Result<Distribution> {
    check_block_distribution(tree, d)?;
    let mass = arena_masses(tree, d.probs());
    let id = tree.internal_id(component);
    let total = mass[id];
    if total <= 0.0 {
        return Err(Error::ZeroProbabilityNode(component));
    }
    Ok(Distribution::from_normalized(
        tree.children(id).iter().map(|&c| mass[c] / total).collect(),
    ))
}

/// `sum over internal v of P(v) H(π(v))` in bits; nodes of zero probability
/// contribute nothing.
pub fn leaf_entropy_sum(tree: &BinarizationTree, d: &Distribution) -> Result<f64> {
    check_block_distribution(tree, d)?;
    Ok(component_masses(tree, d.probs())
        .into_iter()
        .filter(|(p, _)| *p > 0.0)
        .map(|(p, children)| {
            let pi: Vec<f64> = children.iter().map(|c| c / p).collect();
            p * entropy_of(&pi, 2.0)
        })
        .sum())
}
