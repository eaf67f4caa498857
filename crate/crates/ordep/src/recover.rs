//! Exact recovery of dependency arcs from an ordered representation.
//!
//! Every internal node contributes one arc per internal child — from the
//! node's anchor to the child's anchor, labeled by the child — and the root
//! node is attached to index 0 under its own label. On well-formed input
//! this inverts construction exactly; malformed trees are refused, never
//! repaired.

use alloc::vec::Vec;
use core::fmt;

use crate::dep::{Arc, DependencyTree, Sentence};
use crate::ordered::{check, AnchorError, OrderedTree, StructureViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoverError {
    /// The tree breaks a structural rule of the representation.
    Malformed(Vec<StructureViolation>),
    /// A bare leaf cannot stand for a whole sentence: the root must be an
    /// internal node carrying the root relation.
    RootIsLeaf,
    /// The leaf positions do not spell out `1..=n` for the sentence.
    LeafSetMismatch { expected: usize, leaves: Vec<usize> },
}

impl fmt::Display for RecoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoverError::Malformed(violations) => {
                write!(f, "malformed tree:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            RecoverError::RootIsLeaf => write!(f, "root node is a bare leaf"),
            RecoverError::LeafSetMismatch { expected, leaves } => {
                write!(f, "leaves {leaves:?} do not cover 1..={expected}")
            }
        }
    }
}

impl core::error::Error for RecoverError {}

/// The anchor position of a node; unique-anchoring violations are refused.
pub fn anchor_of(node: &OrderedTree) -> Result<usize, AnchorError> {
    node.anchor()
}

/// Reads the arc set back out of an ordered representation.
pub fn recover(tree: &OrderedTree, sentence: &Sentence) -> Result<DependencyTree, RecoverError> {
    let violations = check(tree);
    if !violations.is_empty() {
        return Err(RecoverError::Malformed(violations));
    }
    if tree.is_leaf() {
        return Err(RecoverError::RootIsLeaf);
    }

    let n = sentence.len();
    let leaves: Vec<usize> = tree.leaves().iter().map(|l| l.0).collect();
    if leaves.len() != n || leaves.iter().enumerate().any(|(i, &x)| x != i + 1) {
        return Err(RecoverError::LeafSetMismatch {
            expected: n,
            leaves,
        });
    }

    let mut arcs = Vec::with_capacity(n);
    let root_anchor = tree.anchor().expect("checked above");
    arcs.push(Arc::new(
        0,
        root_anchor,
        tree.label().expect("root is internal"),
    ));

    let mut stack = alloc::vec![(tree, root_anchor)];
    while let Some((node, anchor)) = stack.pop() {
        for child in node.children() {
            if let OrderedTree::Internal { label, .. } = child {
                let child_anchor = child.anchor().expect("checked above");
                arcs.push(Arc::new(anchor, child_anchor, label.clone()));
                stack.push((child, child_anchor));
            }
        }
    }

    Ok(DependencyTree::new(sentence.clone(), arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::build;
    use crate::dep::Sentence;
    use alloc::vec;

    fn flight_dep() -> DependencyTree {
        DependencyTree::new(
            Sentence::from_forms(["book", "me", "the", "morning", "flight"]),
            vec![
                Arc::new(0, 1, "root"),
                Arc::new(1, 2, "iobj"),
                Arc::new(5, 3, "det"),
                Arc::new(5, 4, "compound"),
                Arc::new(1, 5, "dobj"),
            ],
        )
    }

    #[test]
    fn recover_inverts_the_example() {
        let t = flight_dep();
        let built = build(&t).unwrap();
        assert_eq!(recover(&built, t.sentence()).unwrap(), t);
    }

    #[test]
    fn recover_single_token() {
        let s = Sentence::from_forms(["w1"]);
        let tree = OrderedTree::internal("ROOT", vec![OrderedTree::leaf(1, "w1")]);
        let got = recover(&tree, &s).unwrap();
        assert_eq!(got.arcs(), &[Arc::new(0, 1, "ROOT")]);
    }

    #[test]
    fn recover_reads_placeholder_labels_as_is() {
        // The unlabeled variant of the example: every relation is UA while
        // the root attachment keeps its own label.
        let ua = |children| OrderedTree::internal("UA", children);
        let tree = OrderedTree::internal(
            "ROOT",
            vec![
                OrderedTree::leaf(1, "book"),
                ua(vec![OrderedTree::leaf(2, "me")]),
                ua(vec![
                    ua(vec![OrderedTree::leaf(3, "the")]),
                    ua(vec![OrderedTree::leaf(4, "morning")]),
                    OrderedTree::leaf(5, "flight"),
                ]),
            ],
        );
        let s = Sentence::from_forms(["book", "me", "the", "morning", "flight"]);
        let got = recover(&tree, &s).unwrap();
        assert_eq!(
            got.arcs(),
            &[
                Arc::new(0, 1, "ROOT"),
                Arc::new(1, 2, "UA"),
                Arc::new(5, 3, "UA"),
                Arc::new(5, 4, "UA"),
                Arc::new(1, 5, "UA"),
            ]
        );
    }

    #[test]
    fn malformed_anchoring_is_refused() {
        let two_leaves = OrderedTree::internal(
            "x",
            vec![OrderedTree::leaf(1, "a"), OrderedTree::leaf(2, "b")],
        );
        let s = Sentence::from_forms(["a", "b"]);
        match recover(&two_leaves, &s) {
            Err(RecoverError::Malformed(v)) => {
                assert!(v.iter().any(|x| matches!(
                    x,
                    StructureViolation::Anchoring {
                        direct_leaves: 2,
                        ..
                    }
                )));
            }
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn leaf_set_must_match_the_sentence() {
        let tree = OrderedTree::internal("ROOT", vec![OrderedTree::leaf(1, "w1")]);
        let s = Sentence::from_forms(["w1", "w2"]);
        assert_eq!(
            recover(&tree, &s),
            Err(RecoverError::LeafSetMismatch {
                expected: 2,
                leaves: vec![1]
            })
        );
    }

    #[test]
    fn bare_leaf_root_is_refused() {
        let s = Sentence::from_forms(["w1"]);
        assert_eq!(
            recover(&OrderedTree::leaf(1, "w1"), &s),
            Err(RecoverError::RootIsLeaf)
        );
    }

    #[test]
    fn anchor_of_matches_node_anchor() {
        let t = build(&flight_dep()).unwrap();
        assert_eq!(anchor_of(&t), Ok(1));
        assert_eq!(anchor_of(&t.children()[2]), Ok(5));
        assert_eq!(anchor_of(&OrderedTree::leaf(3, "the")), Ok(3));
    }
}
