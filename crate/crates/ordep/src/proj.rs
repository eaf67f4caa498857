//! Pseudo-projective lifting and its inverse.
//!
//! Lifting repeatedly reattaches the dependent of a non-projective arc to
//! its head's head until the tree is projective. The first lift of a
//! dependent records the label of its syntactic head as a mark on the
//! dependent's own label; later lifts of the same dependent keep that
//! original mark, so decoding can search for the recorded head again.
//! Decoding walks marked arcs top-down and reattaches each dependent to the
//! first matching descendant; marks without a match are stripped and
//! reported, never dropped silently.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::dep::{Arc, DependencyTree, InvalidTree};

/// Default separator between a base label and its head mark.
pub const DEFAULT_SEPARATOR: char = '\u{2191}';

/// A label split into its base relation and an optional head mark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedLabel {
    pub base: String,
    pub mark: Option<String>,
}

impl LiftedLabel {
    pub fn plain(base: impl Into<String>) -> Self {
        LiftedLabel {
            base: base.into(),
            mark: None,
        }
    }

    /// Splits `text` at the first occurrence of `separator`.
    pub fn parse(text: &str, separator: char) -> Self {
        match text.split_once(separator) {
            Some((base, mark)) => LiftedLabel {
                base: base.to_string(),
                mark: Some(mark.to_string()),
            },
            None => LiftedLabel::plain(text),
        }
    }

    /// Renders the label back into its textual form. Inverse of
    /// [`parse`](Self::parse) whenever the base contains no separator.
    pub fn encode(&self, separator: char) -> String {
        match &self.mark {
            Some(mark) => {
                let mut out = String::with_capacity(self.base.len() + mark.len() + 4);
                out.push_str(&self.base);
                out.push(separator);
                out.push_str(mark);
                out
            }
            None => self.base.clone(),
        }
    }
}

/// One executed lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStep {
    pub dependent: usize,
    pub old_head: usize,
    pub new_head: usize,
}

/// What [`Projectivizer::lift_with_log`] did, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LiftLog {
    pub steps: Vec<LiftStep>,
}

impl LiftLog {
    /// Whether no dependent was lifted more than once.
    pub fn single_lift(&self) -> bool {
        let mut seen: Vec<usize> = self.steps.iter().map(|s| s.dependent).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// A mark that matched nothing during decoding; the arc kept its lifted
/// head with the mark stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedLift {
    pub dependent: usize,
    pub mark: String,
}

/// Decoded tree plus the marks that could not be resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliftOutcome {
    pub tree: DependencyTree,
    pub unresolved: Vec<UnresolvedLift>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeliftError {
    Invalid(InvalidTree),
    /// Reattaching `dependent` would break the tree. Unreachable for
    /// search targets outside the dependent's subtree; kept as a check.
    Broken {
        dependent: usize,
    },
}

impl fmt::Display for DeliftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeliftError::Invalid(e) => e.fmt(f),
            DeliftError::Broken { dependent } => {
                write!(f, "decoding the mark on {dependent} would break the tree")
            }
        }
    }
}

impl core::error::Error for DeliftError {}

impl From<InvalidTree> for DeliftError {
    fn from(e: InvalidTree) -> Self {
        DeliftError::Invalid(e)
    }
}

/// Encoder/decoder between non-projective trees and projective trees with
/// marked labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Projectivizer {
    separator: char,
}

impl Default for Projectivizer {
    fn default() -> Self {
        Projectivizer {
            separator: DEFAULT_SEPARATOR,
        }
    }
}

impl Projectivizer {
    pub fn new(separator: char) -> Self {
        Projectivizer { separator }
    }

    pub fn separator(&self) -> char {
        self.separator
    }

    /// Reattaches dependents of non-projective arcs upward until the tree
    /// is projective. The output is always projective; projective input
    /// comes back unchanged.
    pub fn lift(&self, tree: &DependencyTree) -> Result<DependencyTree, InvalidTree> {
        self.lift_with_log(tree).map(|(t, _)| t)
    }

    /// Like [`lift`](Self::lift), also reporting every executed lift.
    pub fn lift_with_log(
        &self,
        tree: &DependencyTree,
    ) -> Result<(DependencyTree, LiftLog), InvalidTree> {
        let mut heads = tree.heads()?;
        let n = tree.len();
        let mut labels: Vec<LiftedLabel> = alloc::vec![LiftedLabel::plain(""); n + 1];
        for arc in tree.arcs() {
            labels[arc.dependent] = LiftedLabel::parse(&arc.label, self.separator);
        }

        let mut log = LiftLog::default();
        loop {
            let target = smallest_non_projective(&heads);
            let Some(d) = target else { break };
            let h = heads[d];
            let g = heads[h];
            debug_assert!(g != 0, "the root child never heads a non-projective arc");
            heads[d] = g;
            if labels[d].mark.is_none() {
                labels[d].mark = Some(labels[h].base.clone());
            }
            log.steps.push(LiftStep {
                dependent: d,
                old_head: h,
                new_head: g,
            });
        }

        let arcs = (1..=n)
            .map(|d| Arc::new(heads[d], d, labels[d].encode(self.separator)))
            .collect();
        Ok((DependencyTree::new(tree.sentence().clone(), arcs), log))
    }

    /// Inverse decoding: every marked arc's dependent moves to the first
    /// descendant of its current head whose incoming base label equals the
    /// mark — breadth-first, left-to-right, skipping the dependent's own
    /// subtree. Marks are processed top-down by the depth of the lifted
    /// head.
    pub fn delift(&self, tree: &DependencyTree) -> Result<DeliftOutcome, DeliftError> {
        let mut heads = tree.heads()?;
        let n = tree.len();
        let mut labels: Vec<LiftedLabel> = alloc::vec![LiftedLabel::plain(""); n + 1];
        for arc in tree.arcs() {
            labels[arc.dependent] = LiftedLabel::parse(&arc.label, self.separator);
        }

        let depth = |heads: &[usize], mut x: usize| {
            let mut d = 0usize;
            while x != 0 {
                x = heads[x];
                d += 1;
            }
            d
        };
        let mut marked: Vec<usize> = (1..=n).filter(|&d| labels[d].mark.is_some()).collect();
        marked.sort_by_key(|&d| (depth(&heads, heads[d]), d));

        let mut unresolved = Vec::new();
        for d in marked {
            let mark = labels[d].mark.take().expect("selected as marked");
            let g = heads[d];
            match search_down(&heads, &labels, g, d, &mark) {
                Some(target) => {
                    if in_subtree(&heads, target, d) {
                        return Err(DeliftError::Broken { dependent: d });
                    }
                    heads[d] = target;
                }
                None => unresolved.push(UnresolvedLift { dependent: d, mark }),
            }
        }

        let arcs = (1..=n)
            .map(|d| Arc::new(heads[d], d, labels[d].encode(self.separator)))
            .collect();
        let out = DependencyTree::new(tree.sentence().clone(), arcs);
        if !out.is_valid() {
            return Err(DeliftError::Broken { dependent: 0 });
        }
        Ok(DeliftOutcome {
            tree: out,
            unresolved,
        })
    }
}

/// The non-projective arc with the smallest span, ties broken towards the
/// leftmost dependent. Returns the dependent, or `None` when projective.
fn smallest_non_projective(heads: &[usize]) -> Option<usize> {
    let n = heads.len() - 1;
    let mut best: Option<(usize, usize)> = None; // (span, dependent)
    for d in 1..=n {
        let h = heads[d];
        let (lo, hi) = if h < d { (h, d) } else { (d, h) };
        let mut bad = false;
        for j in lo + 1..hi {
            if !reaches(heads, j, h) {
                bad = true;
                break;
            }
        }
        if bad {
            let span = hi - lo;
            if best.is_none_or(|(s, b)| span < s || (span == s && d < b)) {
                best = Some((span, d));
            }
        }
    }
    best.map(|(_, d)| d)
}

fn reaches(heads: &[usize], mut from: usize, to: usize) -> bool {
    loop {
        if from == to {
            return true;
        }
        if from == 0 {
            return false;
        }
        from = heads[from];
    }
}

fn in_subtree(heads: &[usize], node: usize, root: usize) -> bool {
    reaches(heads, node, root)
}

/// Breadth-first, left-to-right search over the proper descendants of
/// `from`, excluding the subtree under `skip`, for a node whose incoming
/// base label equals `mark`.
fn search_down(
    heads: &[usize],
    labels: &[LiftedLabel],
    from: usize,
    skip: usize,
    mark: &str,
) -> Option<usize> {
    let n = heads.len() - 1;
    let mut children: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
    for d in 1..=n {
        children[heads[d]].push(d);
    }
    // Dependent order is ascending, so each child list reads left to right.
    let mut queue: alloc::collections::VecDeque<usize> = children[from]
        .iter()
        .copied()
        .filter(|&c| c != skip)
        .collect();
    while let Some(c) = queue.pop_front() {
        if labels[c].base == mark {
            return Some(c);
        }
        queue.extend(children[c].iter().copied().filter(|&x| x != skip));
    }
    None
}
