//! Catalogue of the builtin schemes.
//!
//! The small trees are written in the text format. The 4-bit Elias tree and
//! the Dijkstra trees are generated, since they follow a rule rather than a
//! picture: Elias groups within each weight class, and one output node per
//! rotation orbit.

use super::base::{rotate_left, rotation_orbits, weight_rank};
use super::Scheme;
use crate::alphabet::{enumerate_class, Composition};
use crate::error::{Error, Result};
use crate::tree::{parse_tree, BinarizationTree, TreeNode};

const PERES2: &str = "
(R                      # u
  (R (L 00) (L 11))     # v
  (O (L 01) (L 10)))    # Ψ1
";

const PERES3FACE: &str = "
(R                              # u
  (R (L 00) (L 11) (L 22))      # v
  (R                            # w
    (O (L 12) (L 21))
    (O (L 01) (L 10))
    (O (L 02) (L 20))))
";

const PERES4FACE: &str = "
(R                                      # u
  (R (L 00) (L 11) (L 22) (L 33))       # v
  (R                                    # w1
    (O (L 01) (L 10))
    (O (L 02) (L 20))
    (O (L 03) (L 30))
    (O (L 12) (L 21)))
  (R                                    # w2
    (O (L 13) (L 31))
    (O (L 23) (L 32))))
";

// The reference table for this variant has no column for the node that
// separates the w1 blocks from the w2 blocks; it is labelled t here.
const PERES4FACE_ALT: &str = "
(R                                      # u
  (R (L 00) (L 11) (L 22) (L 33))       # v
  (R                                    # t
    (R                                  # w1
      (O (L 01) (L 10))
      (O (L 02) (L 20))
      (O (L 03) (L 30))
      (O (L 12) (L 21)))
    (R                                  # w2
      (O (L 13) (L 31))
      (O (L 23) (L 32)))))
";

const PERES3BIT: &str = "
(R                                  # u
  (R                                # v
    (R (L 000) (L 111))             # v1
    (R (L 100) (L 110)))            # v2
  (R                                # w
    (O (L 001) (L 010))
    (O (L 011) (L 101))))
";

const DIJKSTRA3: &str = "
(R                                  # u
  (R (L 000) (L 111))               # v
  (R                                # w
    (O (L 001) (L 010) (L 100))
    (O (L 011) (L 110) (L 101))))
";

const NAMES: [&str; 9] = [
    "peres2",
    "peres3face",
    "peres4face",
    "peres4face_alt",
    "peres3bit",
    "peres4bit_e4",
    "dijkstra3",
    "dijkstra5",
    "dijkstra11_partial",
];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// Looks up a builtin scheme by name.
pub fn builtin(name: &str) -> Result<Scheme> {
    match name {
        "peres2" => from_text(name, PERES2, &["u", "v", "Ψ1"]),
        "peres3face" => from_text(name, PERES3FACE, &["u", "v", "w", "Ψ11", "Ψ12", "Ψ13"]),
        "peres4face" => from_text(
            name,
            PERES4FACE,
            &[
                "u", "v", "w1", "Ψ11", "Ψ12", "Ψ13", "Ψ14", "w2", "Ψ15", "Ψ16",
            ],
        ),
        "peres4face_alt" => from_text(
            name,
            PERES4FACE_ALT,
            &[
                "u", "v", "t", "w1", "Ψ11", "Ψ12", "Ψ13", "Ψ14", "w2", "Ψ15", "Ψ16",
            ],
        ),
        "peres3bit" => from_text(name, PERES3BIT, &["u", "v", "v1", "v2", "w", "Ψ11", "Ψ12"]),
        "peres4bit_e4" => peres4bit_e4(),
        "dijkstra3" => {
            let tree = BinarizationTree::with_output_alphabet(parse_tree(DIJKSTRA3)?, 3)?;
            Scheme::with_labels(name, tree, labels(&["u", "v", "w", "Ψ11", "Ψ12"]))
        }
        "dijkstra5" => dijkstra5(),
        "dijkstra11_partial" => dijkstra11_partial(),
        other => Err(Error::UnknownScheme(other.to_string())),
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn from_text(name: &str, text: &str, names: &[&str]) -> Result<Scheme> {
    let tree = BinarizationTree::new(parse_tree(text)?)?;
    Scheme::with_labels(name, tree, labels(names))
}

fn leaves(blocks: &[Vec<u8>]) -> Vec<TreeNode> {
    blocks.iter().map(|b| TreeNode::leaf(b)).collect()
}

/// Output groups realizing `E_n` on the weight class `ones`: consecutive runs
/// of the lexicographically ordered class, one per set bit of the class
/// size, largest first. A run of size 1 yields no output and is returned
/// as a bare leaf.
fn elias_groups(n: usize, ones: usize) -> Result<Vec<TreeNode>> {
    let members: Vec<Vec<u8>> = enumerate_class(&Composition::new(vec![n - ones, ones]))?
        .map(|s| s.into_symbols())
        .collect();
    debug_assert!(members
        .iter()
        .enumerate()
        .all(|(i, m)| weight_rank(m) == i as u64));
    let size = members.len();
    let mut groups = Vec::new();
    let mut start = 0;
    for a in (0..usize::BITS - size.leading_zeros()).rev() {
        if size >> a & 1 == 0 {
            continue;
        }
        let run = &members[start..start + (1 << a)];
        groups.push(if run.len() == 1 {
            TreeNode::leaf(&run[0])
        } else {
            TreeNode::output(leaves(run))
        });
        start += 1 << a;
    }
    Ok(groups)
}

/// 4-bit scheme with `E_4` as its base:
/// `Ψ(x) = E_4(x) * Ψ(u) * Ψ(v) * Ψ(w) * Ψ(w1) * Ψ(w2)`.
///
/// u separates the constant blocks from the rest and v tells 0000 from 1111.
/// Below the non-constant branch, w splits weight classes 1 and 3 from
/// weight class 2, w1 tells weight 1 from weight 3, and w2 tells the
/// 4-member `E_4` group of weight 2 from the 2-member group. Every leaf sits
/// under an output node, so `Ψ_1` equals `E_4` blockwise.
fn peres4bit_e4() -> Result<Scheme> {
    let weight1 = elias_groups(4, 1)?;
    let weight2 = elias_groups(4, 2)?;
    let weight3 = elias_groups(4, 3)?;
    debug_assert_eq!((weight1.len(), weight2.len(), weight3.len()), (1, 2, 1));
    let root = TreeNode::recurse(vec![
        TreeNode::recurse(vec![TreeNode::leaf(&[0; 4]), TreeNode::leaf(&[1; 4])]),
        TreeNode::recurse(vec![
            TreeNode::recurse(weight1.into_iter().chain(weight3).collect()),
            TreeNode::recurse(weight2),
        ]),
    ]);
    let tree = BinarizationTree::with_output_alphabet(root, 2)?;
    Scheme::with_labels(
        "peres4bit_e4",
        tree,
        labels(&[
            "u",
            "v",
            "w",
            "w1",
            "E4[k=1]",
            "E4[k=3]",
            "w2",
            "E4[k=2,4]",
            "E4[k=2,2]",
        ]),
    )
}

/// The `m` members of one rotation orbit, ordered so that child `r` is the
/// string needing `r` right shifts to reach the representative.
fn orbit_node(representative: &[u8]) -> TreeNode {
    let members: Vec<Vec<u8>> = (0..representative.len())
        .map(|r| rotate_left(representative, r))
        .collect();
    TreeNode::output(leaves(&members))
}

fn constant_split(m: usize) -> TreeNode {
    TreeNode::recurse(vec![
        TreeNode::leaf(&vec![0; m]),
        TreeNode::leaf(&vec![1; m]),
    ])
}

/// Dijkstra's roulette for `m = 5`: six 5-valued output nodes, one per
/// orbit, hung off a left-leaning spine of binary recurse nodes so that the
/// orbits appear left to right in increasing order of representative.
fn dijkstra5() -> Result<Scheme> {
    let orbits = rotation_orbits(5)?;
    let mut nodes = orbits.iter().map(|r| orbit_node(r));
    let mut spine = TreeNode::recurse(vec![
        nodes.next().expect("six orbits"),
        nodes.next().expect("six orbits"),
    ]);
    for node in nodes {
        spine = TreeNode::recurse(vec![spine, node]);
    }
    let root = TreeNode::recurse(vec![constant_split(5), spine]);
    let tree = BinarizationTree::with_output_alphabet(root, 5)?;
    // Pre-order walks the spine top-down and then meets the orbits in order.
    let mut names = vec!["u".to_string(), "v".to_string(), "w".to_string()];
    names.extend((1..orbits.len() - 1).map(|i| format!("w{i}")));
    names.extend((1..=orbits.len()).map(|i| format!("Ψ1{i}")));
    Scheme::with_labels("dijkstra5", tree, names)
}

/// Dijkstra's roulette for `m = 11` with the 186 orbits grouped by the
/// number of ones: S1 = 1..=3, S2 = 4..=5, S3 = 6..=7, S4 = 8..=10. w
/// separates S1,S2 from S3,S4; w1 and w2 pick the part. The recursion keeps
/// only u, v, w1 and w2; w and the choice of orbit within a part are
/// discarded, so the scheme stays extracting but falls short of the entropy
/// bound.
fn dijkstra11_partial() -> Result<Scheme> {
    let orbits = rotation_orbits(11)?;
    let part = |lo: usize, hi: usize| {
        TreeNode::discard(
            orbits
                .iter()
                .filter(|r| {
                    let ones = r.iter().filter(|&&b| b == 1).count();
                    (lo..=hi).contains(&ones)
                })
                .map(|r| orbit_node(r))
                .collect(),
        )
    };
    let root = TreeNode::recurse(vec![
        constant_split(11),
        TreeNode::discard(vec![
            TreeNode::recurse(vec![part(1, 3), part(4, 5)]),
            TreeNode::recurse(vec![part(6, 7), part(8, 10)]),
        ]),
    ]);
    let tree = BinarizationTree::with_output_alphabet(root, 11)?;
    let mut names = vec!["u", "v", "w", "w1"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    let mut orbit = 0;
    let mut push_part = |names: &mut Vec<String>, label: &str, count: usize| {
        names.push(label.to_string());
        for _ in 0..count {
            orbit += 1;
            names.push(format!("Ψ1[{orbit}]"));
        }
    };
    let count = |lo: usize, hi: usize| {
        orbits
            .iter()
            .filter(|r| (lo..=hi).contains(&r.iter().filter(|&&b| b == 1).count()))
            .count()
    };
    push_part(&mut names, "S1", count(1, 3));
    push_part(&mut names, "S2", count(4, 5));
    names.push("w2".into());
    push_part(&mut names, "S3", count(6, 7));
    push_part(&mut names, "S4", count(8, 10));
    Scheme::with_labels("dijkstra11_partial", tree, names)
}
