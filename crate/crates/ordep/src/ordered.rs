//! Anchored ordered trees.
//!
//! Leaves carry the tokens of a sentence in surface order. Every internal
//! node is anchored by exactly one direct leaf child — its lexical head —
//! and covers a contiguous interval of leaf positions. Children appear
//! sorted by their smallest leaf index, which makes the representation
//! canonical: equal trees are structurally identical.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::mem;

/// Placeholder label for nodes whose incoming relation is not yet known
/// (or deliberately withheld).
pub const UNLABELED: &str = "UA";

/// A node of an anchored ordered tree.
///
/// The anchor of an internal node is not stored: it is derived from the
/// unique direct leaf child via [`OrderedTree::anchor`], so it can never
/// disagree with the structure.
///
/// Equality and drop are iterative because chain-shaped sentences nest one
/// level per token; `Clone` and `Debug` still recurse, so keep them to
/// shallow trees and diagnostics.
#[derive(Debug, Clone)]
pub enum OrderedTree {
    Leaf {
        index: usize,
        form: String,
    },
    Internal {
        label: String,
        children: Vec<OrderedTree>,
    },
}

impl PartialEq for OrderedTree {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = alloc::vec![(self, other)];
        while let Some(pair) = stack.pop() {
            match pair {
                (
                    OrderedTree::Leaf { index: a, form: f },
                    OrderedTree::Leaf { index: b, form: g },
                ) => {
                    if a != b || f != g {
                        return false;
                    }
                }
                (
                    OrderedTree::Internal {
                        label: a,
                        children: ca,
                    },
                    OrderedTree::Internal {
                        label: b,
                        children: cb,
                    },
                ) => {
                    if a != b || ca.len() != cb.len() {
                        return false;
                    }
                    stack.extend(ca.iter().zip(cb.iter()));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for OrderedTree {}

impl OrderedTree {
    pub fn leaf(index: usize, form: impl Into<String>) -> Self {
        OrderedTree::Leaf {
            index,
            form: form.into(),
        }
    }

    pub fn internal(label: impl Into<String>, children: Vec<OrderedTree>) -> Self {
        OrderedTree::Internal {
            label: label.into(),
            children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, OrderedTree::Leaf { .. })
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            OrderedTree::Leaf { .. } => None,
            OrderedTree::Internal { label, .. } => Some(label),
        }
    }

    pub fn children(&self) -> &[OrderedTree] {
        match self {
            OrderedTree::Leaf { .. } => &[],
            OrderedTree::Internal { children, .. } => children,
        }
    }

    /// The anchor position: a leaf's own index, or the index of the unique
    /// direct leaf child of an internal node.
    pub fn anchor(&self) -> Result<usize, AnchorError> {
        match self {
            OrderedTree::Leaf { index, .. } => Ok(*index),
            OrderedTree::Internal { label, children } => {
                let mut found = None;
                let mut count = 0usize;
                for child in children {
                    if let OrderedTree::Leaf { index, .. } = child {
                        count += 1;
                        found = Some(*index);
                    }
                }
                match (count, found) {
                    (1, Some(i)) => Ok(i),
                    _ => Err(AnchorError {
                        label: label.clone(),
                        direct_leaves: count,
                    }),
                }
            }
        }
    }

    /// Leaves in left-to-right order as `(index, form)` pairs.
    pub fn leaves(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(node) = stack.pop() {
            match node {
                OrderedTree::Leaf { index, form } => out.push((*index, form.as_str())),
                OrderedTree::Internal { children, .. } => {
                    stack.extend(children.iter().rev());
                }
            }
        }
        out
    }
}

// Deep trees are legitimate (a chain-shaped sentence nests once per token),
// so the recursive default drop would exhaust the call stack. Unlink
// children onto an explicit worklist instead.
impl Drop for OrderedTree {
    fn drop(&mut self) {
        if let OrderedTree::Internal { children, .. } = self {
            if children.is_empty() {
                return;
            }
            let mut work = mem::take(children);
            let mut i = 0;
            while i < work.len() {
                if let OrderedTree::Internal { children, .. } = &mut work[i] {
                    let grand = mem::take(children);
                    work.extend(grand);
                }
                i += 1;
            }
        }
    }
}

/// Unique-anchoring failure: an internal node without exactly one direct
/// leaf child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorError {
    pub label: String,
    pub direct_leaves: usize,
}

impl fmt::Display for AnchorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "node '{}' has {} direct leaf children (expected exactly 1)",
            self.label, self.direct_leaves
        )
    }
}

impl core::error::Error for AnchorError {}

/// Yield interval of one node, in depth-first pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeYield {
    /// Label for internal nodes, `None` for leaves.
    pub label: Option<String>,
    pub lo: usize,
    pub hi: usize,
    /// Number of leaves under the node (counted with multiplicity).
    pub leaves: usize,
}

impl NodeYield {
    /// Whether the leaf count fills the interval `[lo, hi]` exactly.
    pub fn is_interval(&self) -> bool {
        self.leaves == self.hi - self.lo + 1
    }
}

/// Per-node yields plus the pre-order positions whose leaf multiset cannot
/// be the full interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YieldReport {
    pub nodes: Vec<NodeYield>,
    pub violations: Vec<usize>,
}

impl YieldReport {
    pub fn is_contiguous(&self) -> bool {
        self.violations.is_empty()
    }

    /// Yield of the first internal node carrying `label`.
    pub fn interval_of(&self, label: &str) -> Option<(usize, usize)> {
        self.nodes
            .iter()
            .find(|n| n.label.as_deref() == Some(label))
            .map(|n| (n.lo, n.hi))
    }
}

/// Computes the yield interval of every node without recursion.
///
/// Violations are data: a node whose leaf count does not match its interval
/// width is listed, nothing fails. (Duplicate leaf indices that happen to
/// balance the count are caught by [`check`] via the surface-order rule.)
pub fn yields(tree: &OrderedTree) -> YieldReport {
    struct Frame<'a> {
        node: &'a OrderedTree,
        slot: usize,
        next_child: usize,
        lo: usize,
        hi: usize,
        leaves: usize,
    }

    fn open<'a>(stack: &mut Vec<Frame<'a>>, nodes: &mut Vec<NodeYield>, node: &'a OrderedTree) {
        let slot = nodes.len();
        nodes.push(NodeYield {
            label: node.label().map(String::from),
            lo: usize::MAX,
            hi: 0,
            leaves: 0,
        });
        stack.push(Frame {
            node,
            slot,
            next_child: 0,
            lo: usize::MAX,
            hi: 0,
            leaves: 0,
        });
    }

    let mut nodes: Vec<NodeYield> = Vec::new();
    let mut violations = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    open(&mut stack, &mut nodes, tree);

    while !stack.is_empty() {
        let pending: Option<&OrderedTree> = {
            let frame = stack.last_mut().expect("nonempty");
            match frame.node {
                OrderedTree::Leaf { index, .. } => {
                    frame.lo = *index;
                    frame.hi = *index;
                    frame.leaves = 1;
                    None
                }
                OrderedTree::Internal { children, .. } => {
                    if frame.next_child < children.len() {
                        let child = &children[frame.next_child];
                        frame.next_child += 1;
                        Some(child)
                    } else {
                        None
                    }
                }
            }
        };
        if let Some(child) = pending {
            open(&mut stack, &mut nodes, child);
            continue;
        }
        let done = stack.pop().expect("nonempty");
        let entry = &mut nodes[done.slot];
        entry.lo = done.lo;
        entry.hi = done.hi;
        entry.leaves = done.leaves;
        if done.leaves == 0 || !entry.is_interval() {
            violations.push(done.slot);
        }
        if let Some(parent) = stack.last_mut() {
            parent.lo = parent.lo.min(done.lo);
            parent.hi = parent.hi.max(done.hi);
            parent.leaves += done.leaves;
        }
    }

    violations.sort_unstable();
    YieldReport { nodes, violations }
}

/// A broken structural rule of the representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    /// An internal node with no children at all.
    EmptyNode { label: String },
    /// Leaves out of surface order (or duplicated).
    LeafOrder { previous: usize, next: usize },
    /// A node whose leaf set is not one contiguous interval.
    Gap {
        label: String,
        lo: usize,
        hi: usize,
        leaves: usize,
    },
    /// An internal node without exactly one direct leaf child.
    Anchoring { label: String, direct_leaves: usize },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::EmptyNode { label } => {
                write!(f, "node '{label}' has no children")
            }
            StructureViolation::LeafOrder { previous, next } => {
                write!(
                    f,
                    "leaf {next} follows leaf {previous} out of surface order"
                )
            }
            StructureViolation::Gap {
                label,
                lo,
                hi,
                leaves,
            } => write!(
                f,
                "node '{label}' spans [{lo}, {hi}] but holds {leaves} leaves"
            ),
            StructureViolation::Anchoring {
                label,
                direct_leaves,
            } => write!(
                f,
                "node '{label}' has {direct_leaves} direct leaf children (expected exactly 1)"
            ),
        }
    }
}

impl core::error::Error for StructureViolation {}

/// Checks the four structural rules — surface order, contiguity, unique
/// anchoring, canonical child order — and reports every broken one.
///
/// Canonical child order (children sorted by smallest leaf index) follows
/// from surface order; it is implied, not separately reported.
pub fn check(tree: &OrderedTree) -> Vec<StructureViolation> {
    let mut out = Vec::new();

    let leaves = tree.leaves();
    for pair in leaves.windows(2) {
        if pair[0].0 >= pair[1].0 {
            out.push(StructureViolation::LeafOrder {
                previous: pair[0].0,
                next: pair[1].0,
            });
        }
    }

    let report = yields(tree);
    for &slot in &report.violations {
        let node = &report.nodes[slot];
        if node.leaves == 0 {
            continue; // reported as EmptyNode below
        }
        out.push(StructureViolation::Gap {
            label: node.label.clone().unwrap_or_default(),
            lo: node.lo,
            hi: node.hi,
            leaves: node.leaves,
        });
    }

    let mut stack = alloc::vec![tree];
    while let Some(node) = stack.pop() {
        if let OrderedTree::Internal { label, children } = node {
            if children.is_empty() {
                out.push(StructureViolation::EmptyNode {
                    label: label.clone(),
                });
            } else if node.anchor().is_err() {
                let direct = children.iter().filter(|c| c.is_leaf()).count();
                out.push(StructureViolation::Anchoring {
                    label: label.clone(),
                    direct_leaves: direct,
                });
            }
            stack.extend(children.iter().rev());
        }
    }

    out
}
