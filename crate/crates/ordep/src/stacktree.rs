//! Arc-standard execution over a stack of partial ordered trees.
//!
//! Instead of collecting arcs, each transition manipulates anchored
//! subtrees: SHIFT pushes a bare leaf, LEFTARC wraps the tree below the top
//! with its label and inserts it as the leftmost child of the top tree,
//! RIGHTARC mirrors this to the right. Because adjacent stack trees cover
//! adjacent spans, every insertion happens at a yield boundary and
//! contiguity holds by construction — the executor asserts it at each arc
//! action. The final RIGHTARC attaches the last surviving tree under the
//! root sentinel, labels it, and marks the configuration terminal.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dep::Sentence;
use crate::ordered::{OrderedTree, UNLABELED};
use crate::transition::{Derivation, StepError, Transition};

/// A stack-resident tree whose own incoming label is still pending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialTree {
    /// A just-shifted token.
    Bare { index: usize, form: String },
    /// An anchored node that has taken on dependents. `left` holds the
    /// children before the anchor in attachment order (nearest first),
    /// `right` the children after it.
    Anchored {
        index: usize,
        form: String,
        left: Vec<OrderedTree>,
        right: Vec<OrderedTree>,
        lo: usize,
        hi: usize,
    },
}

impl PartialTree {
    pub fn anchor(&self) -> usize {
        match self {
            PartialTree::Bare { index, .. } | PartialTree::Anchored { index, .. } => *index,
        }
    }

    /// Covered interval of leaf positions.
    pub fn span(&self) -> (usize, usize) {
        match self {
            PartialTree::Bare { index, .. } => (*index, *index),
            PartialTree::Anchored { lo, hi, .. } => (*lo, *hi),
        }
    }

    /// How many times the tree has been extended by an arc action.
    pub fn revision(&self) -> usize {
        match self {
            PartialTree::Bare { .. } => 0,
            PartialTree::Anchored { left, right, .. } => left.len() + right.len(),
        }
    }

    /// Completes the tree under `label`.
    pub fn finish(self, label: impl Into<String>) -> OrderedTree {
        match self {
            PartialTree::Bare { index, form } => {
                OrderedTree::internal(label, alloc::vec![OrderedTree::leaf(index, form)])
            }
            PartialTree::Anchored {
                index,
                form,
                left,
                right,
                ..
            } => {
                let mut children = Vec::with_capacity(left.len() + right.len() + 1);
                children.extend(left.into_iter().rev());
                children.push(OrderedTree::leaf(index, form));
                children.extend(right);
                OrderedTree::internal(label, children)
            }
        }
    }

    /// A completed copy with the pending label filled by `pending`
    /// (typically [`UNLABELED`]).
    pub fn preview(&self, pending: &str) -> OrderedTree {
        self.clone().finish(pending)
    }

    fn promote(&mut self) {
        if let PartialTree::Bare { index, form } = self {
            *self = PartialTree::Anchored {
                index: *index,
                form: core::mem::take(form),
                left: Vec::new(),
                right: Vec::new(),
                lo: *index,
                hi: *index,
            };
        }
    }

    fn prepend(&mut self, child: OrderedTree, child_lo: usize) {
        self.promote();
        if let PartialTree::Anchored { left, lo, .. } = self {
            left.push(child);
            *lo = child_lo;
        }
    }

    fn append(&mut self, child: OrderedTree, child_hi: usize) {
        self.promote();
        if let PartialTree::Anchored { right, hi, .. } = self {
            right.push(child);
            *hi = child_hi;
        }
    }
}

/// A configuration whose stack holds partial trees instead of indices.
/// The root sentinel sits below the stored stack; the tree set of the
/// system is exactly the stack contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeConfiguration {
    forms: Vec<String>,
    stack: Vec<PartialTree>,
    next: usize,
    n: usize,
    result: Option<OrderedTree>,
}

impl TreeConfiguration {
    pub fn new(sentence: &Sentence) -> Self {
        let mut forms = Vec::with_capacity(sentence.len() + 1);
        forms.push(String::new());
        forms.extend(sentence.tokens().iter().map(|t| t.form.clone()));
        TreeConfiguration {
            forms,
            stack: Vec::new(),
            next: 1,
            n: sentence.len(),
            result: None,
        }
    }

    /// The partial trees above the root sentinel, bottom to top.
    pub fn stack(&self) -> &[PartialTree] {
        &self.stack
    }

    pub fn buffer(&self) -> impl Iterator<Item = usize> + '_ {
        self.next..=self.n
    }

    pub fn buffer_len(&self) -> usize {
        self.n + 1 - self.next
    }

    /// Terminal once the root attachment completed the surviving tree.
    pub fn is_terminal(&self) -> bool {
        self.result.is_some()
    }

    pub fn result(&self) -> Option<&OrderedTree> {
        self.result.as_ref()
    }

    pub fn into_result(self) -> Option<OrderedTree> {
        self.result
    }

    /// Applies one transition, yielding the successor configuration.
    pub fn step(&self, transition: &Transition) -> Result<Self, StepError> {
        let mut next = self.clone();
        next.step_mut(transition)?;
        Ok(next)
    }

    pub(crate) fn step_mut(&mut self, transition: &Transition) -> Result<(), StepError> {
        if self.result.is_some() {
            return Err(StepError::AfterTerminal);
        }
        match transition {
            Transition::Shift => {
                if self.next > self.n {
                    return Err(StepError::EmptyBuffer);
                }
                self.stack.push(PartialTree::Bare {
                    index: self.next,
                    form: self.forms[self.next].clone(),
                });
                self.next += 1;
            }
            Transition::LeftArc(label) => match self.stack.len() {
                0 => return Err(StepError::StackUnderflow),
                1 => return Err(StepError::SentinelDependent),
                _ => {
                    let top = self.stack.pop().expect("len checked");
                    let below = self.stack.pop().expect("len checked");
                    let (lo, hi) = below.span();
                    let (top_lo, _) = top.span();
                    assert!(hi + 1 == top_lo, "stack trees must cover adjacent spans");
                    let mut target = top;
                    target.prepend(below.finish(label.clone()), lo);
                    self.stack.push(target);
                }
            },
            Transition::RightArc(label) => match self.stack.len() {
                0 => return Err(StepError::StackUnderflow),
                1 => {
                    // Root attachment: the sentinel takes the last tree.
                    let top = self.stack.pop().expect("len checked");
                    self.result = Some(top.finish(label.clone()));
                }
                _ => {
                    let top = self.stack.pop().expect("len checked");
                    let below = self.stack.last_mut().expect("len checked");
                    let (_, below_hi) = below.span();
                    let (lo, hi) = top.span();
                    assert!(below_hi + 1 == lo, "stack trees must cover adjacent spans");
                    below.append(top.finish(label.clone()), hi);
                }
            },
        }
        Ok(())
    }

    /// Stack rendering helper: pending labels shown as [`UNLABELED`].
    pub fn preview_stack(&self) -> Vec<OrderedTree> {
        self.stack.iter().map(|t| t.preview(UNLABELED)).collect()
    }
}

use crate::transition::ExecError;

/// Runs a derivation as tree construction and returns the terminal tree.
///
/// The output is canonical by construction: children accumulate at yield
/// boundaries, so they are already sorted by smallest leaf index.
pub fn execute_tree(
    sentence: &Sentence,
    derivation: &Derivation,
) -> Result<OrderedTree, ExecError> {
    let mut config = TreeConfiguration::new(sentence);
    for (at, transition) in derivation.iter().enumerate() {
        config
            .step_mut(transition)
            .map_err(|error| ExecError::Step {
                step: at + 1,
                error,
            })?;
    }
    if !config.is_terminal() || config.next <= config.n {
        return Err(ExecError::Incomplete {
            executed: derivation.len(),
            stack: config.stack.len() + 1,
            buffer: config.buffer_len(),
        });
    }
    Ok(config.into_result().expect("terminal checked"))
}

impl fmt::Display for PartialTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t")?;
        match self.revision() {
            0 => {}
            1 => write!(f, "\u{2032}")?,
            2 => write!(f, "\u{2033}")?,
            3 => write!(f, "\u{2034}")?,
            4 => write!(f, "\u{2057}")?,
            k => {
                for _ in 0..k {
                    write!(f, "\u{2032}")?;
                }
            }
        }
        let form = match self {
            PartialTree::Bare { form, .. } | PartialTree::Anchored { form, .. } => form,
        };
        write!(f, "_{form}")
    }
}
