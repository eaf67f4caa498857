//! Arc-standard transitions: configurations, the derivation oracle, and the
//! arc-set executor.
//!
//! A configuration holds a stack of token indices (index 0, the root, is
//! preloaded and never shifted), a buffer of unread indices, and the arcs
//! created so far. SHIFT moves the next buffer index onto the stack;
//! LEFTARC(l) attaches the second-topmost stack index below the topmost and
//! pops it; RIGHTARC(l) attaches the topmost under the one below and pops
//! it. The derivation for an n-token sentence ends after n shifts and n arc
//! actions with the final RIGHTARC attaching the last token to the root.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dep::{Arc, DependencyTree, InvalidTree, Sentence};

/// One transition. Arc actions carry the label of the arc they create.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transition {
    Shift,
    LeftArc(String),
    RightArc(String),
}

impl Transition {
    pub fn left(label: impl Into<String>) -> Self {
        Transition::LeftArc(label.into())
    }

    pub fn right(label: impl Into<String>) -> Self {
        Transition::RightArc(label.into())
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, Transition::Shift)
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Shift => write!(f, "SHIFT"),
            Transition::LeftArc(l) => write!(f, "LEFTARC({l})"),
            Transition::RightArc(l) => write!(f, "RIGHTARC({l})"),
        }
    }
}

/// A transition sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    pub transitions: Vec<Transition>,
}

impl Derivation {
    pub fn new(transitions: Vec<Transition>) -> Self {
        Derivation { transitions }
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Transition> {
        self.transitions.iter()
    }

    pub fn shifts(&self) -> usize {
        self.transitions.iter().filter(|t| t.is_shift()).count()
    }

    pub fn arc_actions(&self) -> usize {
        self.len() - self.shifts()
    }

    /// Replaces every arc label with `label`, keeping the final transition
    /// (the root attachment) as it is.
    pub fn with_uniform_labels(&self, label: &str) -> Derivation {
        let last = self.len().saturating_sub(1);
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                Transition::Shift => Transition::Shift,
                Transition::LeftArc(l) | Transition::RightArc(l) => {
                    let kept = if i == last { l.as_str() } else { label };
                    match t {
                        Transition::LeftArc(_) => Transition::left(kept),
                        _ => Transition::right(kept),
                    }
                }
            })
            .collect();
        Derivation { transitions }
    }
}

/// Why a single transition could not be applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepError {
    /// SHIFT with nothing left to read.
    EmptyBuffer,
    /// An arc action with fewer than two stack items.
    StackUnderflow,
    /// A LEFTARC whose dependent would be the root index 0.
    SentinelDependent,
    /// Any action after the root attachment completed the tree.
    AfterTerminal,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::EmptyBuffer => write!(f, "shift on an empty buffer"),
            StepError::StackUnderflow => {
                write!(f, "arc action with fewer than two stack items")
            }
            StepError::SentinelDependent => {
                write!(f, "leftarc would attach the root index 0 as a dependent")
            }
            StepError::AfterTerminal => {
                write!(f, "action after the configuration became terminal")
            }
        }
    }
}

impl core::error::Error for StepError {}

/// Executor failure, naming the 1-based step at which it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExecError {
    Step {
        step: usize,
        error: StepError,
    },
    /// The derivation ran out before reaching the terminal configuration.
    Incomplete {
        executed: usize,
        stack: usize,
        buffer: usize,
    },
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecError::Step { step, error } => write!(f, "step {step}: {error}"),
            ExecError::Incomplete { executed, stack, buffer } => write!(
                f,
                "derivation ended after step {executed} with {stack} stack items and {buffer} buffered tokens"
            ),
        }
    }
}

impl core::error::Error for ExecError {}

/// A stack-buffer-arcs configuration over token indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    stack: Vec<usize>,
    next: usize,
    n: usize,
    arcs: Vec<Arc>,
    attached: bool,
}

impl Configuration {
    /// Initial configuration: stack `[0]`, buffer `1..=n`, no arcs.
    pub fn new(n: usize) -> Self {
        Configuration {
            stack: alloc::vec![0],
            next: 1,
            n,
            arcs: Vec::new(),
            attached: false,
        }
    }

    /// Stack from bottom to top; `stack()[0]` is always the root index 0.
    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    pub fn buffer(&self) -> impl Iterator<Item = usize> + '_ {
        self.next..=self.n
    }

    pub fn buffer_len(&self) -> usize {
        self.n + 1 - self.next
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Terminal once the root attachment has been made and the whole
    /// sentence has been read.
    pub fn is_terminal(&self) -> bool {
        self.attached && self.next > self.n
    }

    /// Applies one transition, yielding the successor configuration.
    pub fn step(&self, transition: &Transition) -> Result<Self, StepError> {
        let mut next = self.clone();
        next.step_mut(transition)?;
        Ok(next)
    }

    pub(crate) fn step_mut(&mut self, transition: &Transition) -> Result<(), StepError> {
        if self.attached {
            return Err(StepError::AfterTerminal);
        }
        match transition {
            Transition::Shift => {
                if self.next > self.n {
                    return Err(StepError::EmptyBuffer);
                }
                self.stack.push(self.next);
                self.next += 1;
            }
            Transition::LeftArc(label) => {
                if self.stack.len() < 2 {
                    return Err(StepError::StackUnderflow);
                }
                let i = self.stack[self.stack.len() - 2];
                if i == 0 {
                    return Err(StepError::SentinelDependent);
                }
                let j = *self.stack.last().expect("len checked");
                self.arcs.push(Arc::new(j, i, label.clone()));
                let top = self.stack.pop().expect("len checked");
                self.stack.pop();
                self.stack.push(top);
            }
            Transition::RightArc(label) => {
                if self.stack.len() < 2 {
                    return Err(StepError::StackUnderflow);
                }
                let j = self.stack.pop().expect("len checked");
                let i = *self.stack.last().expect("len checked");
                self.arcs.push(Arc::new(i, j, label.clone()));
                // The root attachment closes the analysis, mirroring the
                // tree-building executor exactly.
                if i == 0 {
                    self.attached = true;
                }
            }
        }
        Ok(())
    }
}

/// Runs a derivation over a sentence and returns the dependency tree whose
/// arcs are exactly those created.
pub fn execute_arcs(
    sentence: &Sentence,
    derivation: &Derivation,
) -> Result<DependencyTree, ExecError> {
    let mut config = Configuration::new(sentence.len());
    for (at, transition) in derivation.iter().enumerate() {
        config
            .step_mut(transition)
            .map_err(|error| ExecError::Step {
                step: at + 1,
                error,
            })?;
    }
    if !config.is_terminal() {
        return Err(ExecError::Incomplete {
            executed: derivation.len(),
            stack: config.stack.len(),
            buffer: config.buffer_len(),
        });
    }
    Ok(DependencyTree::new(sentence.clone(), config.arcs))
}

/// Oracle failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeriveError {
    Invalid(InvalidTree),
    /// No legal action with a nonempty agenda: the tree is not projective.
    Deadlock {
        after: usize,
    },
}

impl fmt::Display for DeriveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeriveError::Invalid(e) => e.fmt(f),
            DeriveError::Deadlock { after } => write!(
                f,
                "no legal action with a nonempty agenda after {after} actions: tree is not projective"
            ),
        }
    }
}

impl core::error::Error for DeriveError {}

impl From<InvalidTree> for DeriveError {
    fn from(e: InvalidTree) -> Self {
        DeriveError::Invalid(e)
    }
}

/// The canonical derivation of a projective tree.
///
/// Attachment is eager: whenever the top two stack items are joined by an
/// arc whose dependent is complete (all of its own dependents attached),
/// that arc action fires, LEFTARC taking precedence; otherwise the oracle
/// shifts. Non-projective input deadlocks and is reported as such.
pub fn derive(tree: &DependencyTree) -> Result<Derivation, DeriveError> {
    let heads = tree.heads()?;
    let n = tree.len();
    let mut labels: Vec<&str> = alloc::vec![""; n + 1];
    let mut pending = alloc::vec![0usize; n + 1];
    for arc in tree.arcs() {
        labels[arc.dependent] = &arc.label;
        pending[arc.head] += 1;
    }

    let mut transitions = Vec::with_capacity(2 * n);
    let mut stack: Vec<usize> = alloc::vec![0];
    let mut next = 1usize;
    loop {
        if stack.len() >= 2 {
            let j = stack[stack.len() - 1];
            let i = stack[stack.len() - 2];
            if i != 0 && heads[i] == j && pending[i] == 0 {
                transitions.push(Transition::left(labels[i]));
                let top = stack.pop().expect("len checked");
                stack.pop();
                stack.push(top);
                pending[j] -= 1;
                continue;
            }
            if heads[j] == i && pending[j] == 0 {
                transitions.push(Transition::right(labels[j]));
                stack.pop();
                pending[i] -= 1;
                continue;
            }
        }
        if next <= n {
            transitions.push(Transition::Shift);
            stack.push(next);
            next += 1;
            continue;
        }
        if stack.len() == 1 {
            return Ok(Derivation::new(transitions));
        }
        return Err(DeriveError::Deadlock {
            after: transitions.len(),
        });
    }
}
