//! Direct construction of the ordered representation of a projective
//! dependency tree.
//!
//! Each head `h` becomes an internal node labeled with `h`'s incoming
//! relation; its children are `h`'s own leaf plus the subtrees of its
//! dependents, ordered by surface position. Projectivity makes every
//! resulting yield contiguous — that guarantee is asserted, not assumed.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dep::{DependencyTree, InvalidTree, Span};
use crate::ordered::{yields, OrderedTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    Invalid(InvalidTree),
    /// The input is not projective; one crossing arc pair is named.
    NonProjective {
        pair: (Span, Span),
    },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Invalid(e) => e.fmt(f),
            BuildError::NonProjective { pair: (a, b) } => {
                write!(f, "tree is not projective: arcs {:?} and {:?} cross", a, b)
            }
        }
    }
}

impl core::error::Error for BuildError {}

impl From<InvalidTree> for BuildError {
    fn from(e: InvalidTree) -> Self {
        BuildError::Invalid(e)
    }
}

/// Builds the unique ordered representation of a projective tree.
///
/// Runs without recursion, so chain-shaped sentences of any length stay
/// within the call stack.
pub fn build(tree: &DependencyTree) -> Result<OrderedTree, BuildError> {
    tree.heads()?;
    if !tree.is_projective().expect("validated above") {
        let pairs = tree.crossing_pairs().expect("validated above");
        return Err(BuildError::NonProjective { pair: pairs[0] });
    }

    let n = tree.len();
    let mut dependents: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
    let mut labels: Vec<&str> = alloc::vec![""; n + 1];
    for arc in tree.arcs() {
        dependents[arc.head].push(arc.dependent);
        labels[arc.dependent] = &arc.label;
    }
    // Arcs are sorted by dependent, so each list is already ascending.
    let root = tree.root().expect("validated above");

    struct Frame {
        head: usize,
        items: Vec<usize>,
        next: usize,
        acc: Vec<OrderedTree>,
    }

    let open = |dependents: &mut Vec<Vec<usize>>, head: usize| {
        let deps = core::mem::take(&mut dependents[head]);
        let mut items = Vec::with_capacity(deps.len() + 1);
        let at = deps.partition_point(|&d| d < head);
        items.extend_from_slice(&deps[..at]);
        items.push(head);
        items.extend_from_slice(&deps[at..]);
        Frame {
            head,
            items,
            next: 0,
            acc: Vec::new(),
        }
    };

    let mut stack = alloc::vec![open(&mut dependents, root)];
    loop {
        let step = {
            let frame = stack.last_mut().expect("nonempty");
            if frame.next < frame.items.len() {
                let item = frame.items[frame.next];
                frame.next += 1;
                if item == frame.head {
                    frame
                        .acc
                        .push(OrderedTree::leaf(item, tree.sentence().form(item)));
                    None
                } else {
                    Some(item)
                }
            } else {
                None
            }
        };
        if let Some(head) = step {
            stack.push(open(&mut dependents, head));
            continue;
        }
        let frame = stack.last().expect("nonempty");
        if frame.next < frame.items.len() {
            continue;
        }
        let done = stack.pop().expect("nonempty");
        let node = OrderedTree::internal(String::from(labels[done.head]), done.acc);
        match stack.last_mut() {
            Some(parent) => parent.acc.push(node),
            None => {
                let report = yields(&node);
                assert!(
                    report.is_contiguous(),
                    "projective input must yield contiguous intervals"
                );
                assert_eq!(
                    report.nodes[0].leaves, n,
                    "representation must cover every token"
                );
                return Ok(node);
            }
        }
    }
}
