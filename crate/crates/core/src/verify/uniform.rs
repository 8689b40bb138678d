use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Distribution;
use crate::tree::{component_masses, BinarizationTree, Role};

const UNIFORM_TOLERANCE: f64 = 1e-9;

fn random_positive(m: usize, rng: &mut impl Rng) -> Distribution {
    let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    Distribution::from_normalized(raw.into_iter().map(|p| p / sum).collect())
}

/// Output components whose branching distribution is not uniform within
/// `1e-9` for at least one of `grid_size` random strictly positive source
/// distributions.
pub fn non_uniform_outputs(tree: &BinarizationTree, grid_size: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outputs = tree.components_with_role(Role::Output);
    let mut failing = vec![false; tree.component_count()];
    for _ in 0..grid_size {
        let d = random_positive(tree.source_alphabet(), &mut rng);
        let masses = component_masses(tree, &d.block_probabilities(tree.block_len()));
        for &k in &outputs {
            let (p, children) = &masses[k];
            let target = 1.0 / children.len() as f64;
            if children
                .iter()
                .any(|c| (c / p - target).abs() > UNIFORM_TOLERANCE)
            {
                failing[k] = true;
            }
        }
    }
    outputs.into_iter().filter(|&k| failing[k]).collect()
}

/// Every output node is uniform on a random grid of source distributions.
pub fn check_uniform_outputs(tree: &BinarizationTree, grid_size: usize, seed: u64) -> bool {
    non_uniform_outputs(tree, grid_size, seed).is_empty()
}

/// Exact check: a leaf's probability is the monomial `prod p_i^{n_i}` of its
/// block's symbol counts, so an output node is uniform for all sources iff
/// all its children hold the same multiset of leaf count vectors.
pub fn check_uniform_symbolic(tree: &BinarizationTree) -> bool {
    let m = tree.source_alphabet();
    let counts = |block: usize| {
        let mut c = vec![0usize; m];
        for s in tree.block_symbols(block) {
            c[s as usize] += 1;
        }
        c
    };
    tree.components_with_role(Role::Output)
        .into_iter()
        .all(|k| {
            let mut signatures = tree.child_leaf_blocks(k).into_iter().map(|blocks| {
                let mut sig: Vec<Vec<usize>> = blocks.into_iter().map(counts).collect();
                sig.sort();
                sig
            });
            let first = signatures.next().expect("internal nodes have children");
            signatures.all(|s| s == first)
        })
}
