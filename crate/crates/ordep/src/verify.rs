//! Generators and exhaustive checks used by the verification suites.
//!
//! Everything here is deliberately independent of the construction and
//! transition modules: trees are sampled or enumerated straight from head
//! vectors, and the existence check below enumerates anchored shapes
//! directly rather than calling [`crate::build`].

use alloc::collections::{BTreeSet, BinaryHeap, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dep::{Arc, DependencyTree, Sentence};
use crate::ordered::OrderedTree;
use crate::transition::{Derivation, Transition};

/// Largest `n` accepted by [`enumerate_trees`].
pub const MAX_ENUM: usize = 6;

/// Largest `n` accepted by [`exists_contiguous_representation`].
pub const MAX_EXISTS: usize = 5;

/// Request outside the exhaustive-search budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimit {
    pub n: usize,
    pub max: usize,
}

impl fmt::Display for SizeLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} tokens exceed the exhaustive-search limit of {}",
            self.n, self.max
        )
    }
}

impl core::error::Error for SizeLimit {}

const DEP_LABELS: [&str; 4] = ["a", "b", "c", "d"];

/// Samples a dependency tree with `n` tokens, uniform over all `n^(n-1)`
/// trees: a uniform Prüfer sequence fixes the undirected shape and a
/// uniform root choice orients it. With `projective_only` the draw repeats
/// until the tree is projective, so keep `n` modest in that mode — the
/// acceptance rate falls steeply with `n`.
pub fn gen_random_tree(n: usize, seed: u64, projective_only: bool) -> DependencyTree {
    assert!(n >= 1, "a dependency tree needs at least one token");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let tree = random_tree(n, &mut rng);
        if !projective_only || tree.is_projective() == Ok(true) {
            return tree;
        }
    }
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> DependencyTree {
    let sentence = Sentence::from_forms((1..=n).map(|i| format!("w{i}")));
    let heads = if n == 1 {
        vec![0, 0]
    } else {
        let sequence: Vec<usize> = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
        let edges = prufer_decode(n, &sequence);
        let root = rng.random_range(1..=n);
        orient(n, &edges, root)
    };
    let arcs = (1..=n)
        .map(|d| {
            let label = if heads[d] == 0 {
                "root".to_string()
            } else {
                DEP_LABELS[rng.random_range(0..DEP_LABELS.len())].to_string()
            };
            Arc::new(heads[d], d, label)
        })
        .collect();
    DependencyTree::new(sentence, arcs)
}

/// Standard Prüfer decoding over vertices `1..=n`; returns the `n-1` edges
/// of the encoded labeled tree.
fn prufer_decode(n: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(sequence.len(), n - 2);
    let mut degree = vec![1usize; n + 1];
    for &s in sequence {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in sequence {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains while decoding");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(v) = leaves.pop().expect("two vertices remain");
    edges.push((u, v));
    edges
}

/// Orients an undirected tree away from `root`, yielding the head vector
/// (index 0 unused except as the root's head).
fn orient(n: usize, edges: &[(usize, usize)], root: usize) -> Vec<usize> {
    let mut adjacent = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        adjacent[u].push(v);
        adjacent[v].push(u);
    }
    let mut heads = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adjacent[u] {
            if !seen[v] {
                seen[v] = true;
                heads[v] = u;
                queue.push_back(v);
            }
        }
    }
    heads
}

/// Samples a complete, legal transition sequence for `n` tokens by walking
/// uniformly over the actions available in each configuration. Executing
/// the result always yields a projective tree, and every projective tree is
/// reachable, which makes this the cheap projective generator for sizes
/// where rejection sampling stalls.
pub fn gen_random_derivation(n: usize, seed: u64) -> Derivation {
    assert!(n >= 1, "a derivation needs at least one token");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transitions = Vec::with_capacity(2 * n);
    let mut depth = 1usize; // stack height including the sentinel
    let mut next = 1usize;
    while !(depth == 1 && next > n) {
        let mut options: Vec<u8> = Vec::with_capacity(3);
        if next <= n {
            options.push(0);
        }
        if depth >= 3 {
            options.push(1);
            options.push(2);
        }
        if depth == 2 && next > n {
            options.push(3);
        }
        let pick =
            |rng: &mut ChaCha8Rng| DEP_LABELS[rng.random_range(0..DEP_LABELS.len())].to_string();
        match options[rng.random_range(0..options.len())] {
            0 => {
                transitions.push(Transition::Shift);
                depth += 1;
                next += 1;
            }
            1 => {
                transitions.push(Transition::LeftArc(pick(&mut rng)));
                depth -= 1;
            }
            2 => {
                transitions.push(Transition::RightArc(pick(&mut rng)));
                depth -= 1;
            }
            _ => {
                transitions.push(Transition::RightArc("root".to_string()));
                depth -= 1;
            }
        }
    }
    Derivation::new(transitions)
}

/// Every valid dependency tree over `n` tokens, by filtering all `(n+1)^n`
/// head vectors. Arc labels are deterministic: `root` on the root arc and
/// `l{d}` on the arc onto dependent `d`.
pub fn enumerate_trees(n: usize) -> Result<Vec<DependencyTree>, SizeLimit> {
    if n > MAX_ENUM {
        return Err(SizeLimit { n, max: MAX_ENUM });
    }
    let sentence = Sentence::from_forms((1..=n).map(|i| format!("w{i}")));
    let mut out = Vec::new();
    let mut heads = vec![0usize; n + 1];
    loop {
        let arcs: Vec<Arc> = (1..=n)
            .map(|d| {
                let label = if heads[d] == 0 {
                    "root".to_string()
                } else {
                    format!("l{d}")
                };
                Arc::new(heads[d], d, label)
            })
            .collect();
        let tree = DependencyTree::new(sentence.clone(), arcs);
        if tree.is_valid() {
            out.push(tree);
        }
        // Odometer over head vectors, least-significant digit first.
        let mut i = 1;
        while i <= n && heads[i] == n {
            heads[i] = 0;
            i += 1;
        }
        if i > n {
            break;
        }
        heads[i] += 1;
    }
    Ok(out)
}

/// Whether any ordered anchored tree with contiguous yields realizes
/// exactly the arcs of `tree`. Decided by brute force over every anchored
/// shape on `n` leaves, which is why `n` is capped at [`MAX_EXISTS`].
pub fn exists_contiguous_representation(tree: &DependencyTree) -> Result<bool, SizeLimit> {
    let n = tree.len();
    if n > MAX_EXISTS {
        return Err(SizeLimit { n, max: MAX_EXISTS });
    }
    if n == 0 || !tree.is_valid() {
        return Ok(false);
    }
    let target: BTreeSet<(usize, usize)> =
        tree.arcs().iter().map(|a| (a.head, a.dependent)).collect();
    Ok(representations(tree.sentence())
        .iter()
        .any(|shape| anchor_pairs(shape) == target))
}

/// All anchored shapes spanning the whole sentence: ordered trees in which
/// every internal node has exactly one direct leaf child and every yield
/// is an interval. Labels are irrelevant here and left unlabeled.
fn representations(sentence: &Sentence) -> Vec<OrderedTree> {
    subtrees(sentence, 1, sentence.len())
}

/// Anchored shapes spanning exactly `lo..=hi` (inclusive, nonempty).
fn subtrees(sentence: &Sentence, lo: usize, hi: usize) -> Vec<OrderedTree> {
    let mut out = Vec::new();
    for anchor in lo..=hi {
        for left in groupings(sentence, lo, anchor.wrapping_sub(1)) {
            for right in groupings(sentence, anchor + 1, hi) {
                let mut children = left.clone();
                children.push(OrderedTree::leaf(anchor, sentence.form(anchor)));
                children.extend(right.iter().cloned());
                out.push(OrderedTree::internal(crate::ordered::UNLABELED, children));
            }
        }
    }
    out
}

/// All ways to tile `lo..=hi` with consecutive anchored shapes; the empty
/// interval has exactly the empty tiling.
fn groupings(sentence: &Sentence, lo: usize, hi: usize) -> Vec<Vec<OrderedTree>> {
    if lo > hi || lo == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mid in lo..=hi {
        for first in subtrees(sentence, lo, mid) {
            for rest in groupings(sentence, mid + 1, hi) {
                let mut tiling = Vec::with_capacity(rest.len() + 1);
                tiling.push(first.clone());
                tiling.extend(rest.iter().cloned());
                out.push(tiling);
            }
        }
    }
    out
}

/// The `(head, dependent)` pairs a shape encodes: the root arc onto the
/// root's anchor, plus one pair per internal parent-child edge.
fn anchor_pairs(shape: &OrderedTree) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    let anchor = |t: &OrderedTree| t.anchor().expect("enumerated shapes are uniquely anchored");
    pairs.insert((0, anchor(shape)));
    let mut stack = vec![shape];
    while let Some(node) = stack.pop() {
        if let OrderedTree::Internal { children, .. } = node {
            let h = anchor(node);
            for child in children {
                if let OrderedTree::Internal { .. } = child {
                    pairs.insert((h, anchor(child)));
                    stack.push(child);
                }
            }
        }
    }
    pairs
}
