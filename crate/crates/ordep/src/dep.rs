//! Dependency trees over indexed sentences.
//!
//! A sentence holds tokens at surface positions `1..=n`; position 0 is the
//! artificial root and is never stored. A dependency tree attaches every
//! token to a head by a labeled arc, with exactly one token attached to the
//! root. Validation reports violations as data instead of failing, so
//! malformed input can be inspected and counted.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single token. `index` is the 1-based surface position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub form: String,
    pub upos: Option<String>,
}

impl Token {
    pub fn new(index: usize, form: impl Into<String>) -> Self {
        Token {
            index,
            form: form.into(),
            upos: None,
        }
    }

    pub fn with_upos(index: usize, form: impl Into<String>, upos: impl Into<String>) -> Self {
        Token {
            index,
            form: form.into(),
            upos: Some(upos.into()),
        }
    }
}

/// Tokens in surface order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    /// Wraps the given tokens. Index consistency is checked by
    /// [`DependencyTree::validate`], not here.
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }

    /// Builds a sentence from bare forms, assigning indices `1..=n`.
    pub fn from_forms<I, S>(forms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens = forms
            .into_iter()
            .enumerate()
            .map(|(i, f)| Token::new(i + 1, f))
            .collect();
        Sentence { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Token at surface position `index` (1-based, positional lookup).
    pub fn get(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    /// Form at surface position `index`. Panics when out of range.
    pub fn form(&self, index: usize) -> &str {
        &self.tokens[index - 1].form
    }
}

/// A labeled dependency arc from `head` to `dependent`.
///
/// `head` ranges over `0..=n` (0 is the artificial root); `dependent` over
/// `1..=n`. Labels are opaque, case-preserving strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub head: usize,
    pub dependent: usize,
    pub label: String,
}

impl Arc {
    pub fn new(head: usize, dependent: usize, label: impl Into<String>) -> Self {
        Arc {
            head,
            dependent,
            label: label.into(),
        }
    }
}

/// Arc endpoints sorted into a `(low, high)` position pair.
pub type Span = (usize, usize);

/// A sentence plus one arc per token.
///
/// Arcs are kept sorted by dependent, so two trees over the same sentence
/// compare equal exactly when they carry the same arc set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyTree {
    sentence: Sentence,
    arcs: Vec<Arc>,
}

/// A broken well-formedness rule, naming the offending indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptySentence,
    TokenIndex {
        position: usize,
        index: usize,
    },
    HeadRange {
        head: usize,
        dependent: usize,
        n: usize,
    },
    DependentRange {
        dependent: usize,
        n: usize,
    },
    SelfAttachment {
        index: usize,
    },
    MissingArc {
        dependent: usize,
    },
    DuplicateArc {
        dependent: usize,
        count: usize,
    },
    NoRoot,
    MultipleRoots {
        dependents: Vec<usize>,
    },
    Cycle {
        members: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySentence => write!(f, "sentence has no tokens"),
            Violation::TokenIndex { position, index } => {
                write!(f, "token at position {position} carries index {index}")
            }
            Violation::HeadRange { head, dependent, n } => {
                write!(f, "arc onto {dependent} names head {head} outside 0..={n}")
            }
            Violation::DependentRange { dependent, n } => {
                write!(f, "arc names dependent {dependent} outside 1..={n}")
            }
            Violation::SelfAttachment { index } => {
                write!(f, "token {index} is attached to itself")
            }
            Violation::MissingArc { dependent } => {
                write!(f, "token {dependent} has no incoming arc")
            }
            Violation::DuplicateArc { dependent, count } => {
                write!(f, "token {dependent} has {count} incoming arcs")
            }
            Violation::NoRoot => write!(f, "no arc from the root index 0"),
            Violation::MultipleRoots { dependents } => {
                write!(
                    f,
                    "multiple arcs from the root index 0 (dependents {dependents:?})"
                )
            }
            Violation::Cycle { members } => {
                write!(
                    f,
                    "tokens {members:?} never reach the root by following heads"
                )
            }
        }
    }
}

/// Precondition breach: the operation requires a tree for which
/// [`DependencyTree::validate`] reports no violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidTree {
    pub violations: Vec<Violation>,
}

impl fmt::Display for InvalidTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid dependency tree:")?;
        for v in &self.violations {
            write!(f, " {v};")?;
        }
        Ok(())
    }
}

impl core::error::Error for InvalidTree {}

impl DependencyTree {
    /// Pairs a sentence with its arcs. No validation happens here; call
    /// [`validate`](Self::validate) to obtain the violation list.
    pub fn new(sentence: Sentence, mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable();
        arcs.sort_by_key(|a| a.dependent);
        DependencyTree { sentence, arcs }
    }

    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.sentence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentence.is_empty()
    }

    /// The arc onto `dependent`, when there is exactly one candidate it is
    /// the tree-defining one.
    pub fn arc_onto(&self, dependent: usize) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.dependent == dependent)
    }

    /// The unique dependent of the root, for valid trees.
    pub fn root(&self) -> Option<usize> {
        self.arcs.iter().find(|a| a.head == 0).map(|a| a.dependent)
    }

    /// Dependents of `head` in ascending surface order.
    pub fn dependents_of(&self, head: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .filter(move |a| a.head == head)
            .map(|a| a.dependent)
    }

    /// Checks every well-formedness rule and reports all broken ones.
    /// An empty result means the tree is a single-headed, acyclic structure
    /// rooted at index 0.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.sentence.len();
        if n == 0 {
            out.push(Violation::EmptySentence);
        }
        for (pos, tok) in self.sentence.tokens.iter().enumerate() {
            if tok.index != pos + 1 {
                out.push(Violation::TokenIndex {
                    position: pos + 1,
                    index: tok.index,
                });
            }
        }

        let mut range_ok = true;
        for arc in &self.arcs {
            if arc.dependent == 0 || arc.dependent > n {
                out.push(Violation::DependentRange {
                    dependent: arc.dependent,
                    n,
                });
                range_ok = false;
                continue;
            }
            if arc.head > n {
                out.push(Violation::HeadRange {
                    head: arc.head,
                    dependent: arc.dependent,
                    n,
                });
                range_ok = false;
            }
            if arc.head == arc.dependent {
                out.push(Violation::SelfAttachment {
                    index: arc.dependent,
                });
            }
        }

        let mut counts = alloc::vec![0usize; n + 1];
        for arc in &self.arcs {
            if arc.dependent >= 1 && arc.dependent <= n {
                counts[arc.dependent] += 1;
            }
        }
        let mut single_headed = true;
        for (d, &count) in counts.iter().enumerate().skip(1) {
            match count {
                0 => {
                    out.push(Violation::MissingArc { dependent: d });
                    single_headed = false;
                }
                1 => {}
                c => {
                    out.push(Violation::DuplicateArc {
                        dependent: d,
                        count: c,
                    });
                    single_headed = false;
                }
            }
        }

        let root_deps: Vec<usize> = self
            .arcs
            .iter()
            .filter(|a| a.head == 0 && a.dependent >= 1 && a.dependent <= n)
            .map(|a| a.dependent)
            .collect();
        match root_deps.len() {
            0 => out.push(Violation::NoRoot),
            1 => {}
            _ => out.push(Violation::MultipleRoots {
                dependents: root_deps,
            }),
        }

        // Reachability only makes sense once heads form a function on 1..=n.
        if n > 0 && single_headed && range_ok {
            let mut heads = alloc::vec![0usize; n + 1];
            for arc in &self.arcs {
                heads[arc.dependent] = arc.head;
            }
            // 0 unknown, 1 on current path, 2 reaches root, 3 trapped.
            let mut state = alloc::vec![0u8; n + 1];
            let mut path = Vec::new();
            for start in 1..=n {
                if state[start] != 0 {
                    continue;
                }
                path.clear();
                let mut cur = start;
                let verdict = loop {
                    if cur == 0 {
                        break 2;
                    }
                    match state[cur] {
                        0 => {
                            state[cur] = 1;
                            path.push(cur);
                            cur = heads[cur];
                        }
                        1 => break 3, // ran into the current path: cycle
                        s => break s,
                    }
                };
                for &i in &path {
                    state[i] = verdict;
                }
            }
            let mut members: Vec<usize> = (1..=n).filter(|&i| state[i] == 3).collect();
            if !members.is_empty() {
                members.sort_unstable();
                out.push(Violation::Cycle { members });
            }
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn require_valid(&self) -> Result<Vec<usize>, InvalidTree> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(InvalidTree { violations });
        }
        let mut heads = alloc::vec![0usize; self.len() + 1];
        for arc in &self.arcs {
            heads[arc.dependent] = arc.head;
        }
        Ok(heads)
    }

    /// Head function as a dense array (`heads[d]` for `d` in `1..=n`), or the
    /// violation list when the tree is not well formed.
    pub fn heads(&self) -> Result<Vec<usize>, InvalidTree> {
        self.require_valid()
    }

    /// Whether every arc `(h, d)` dominates all positions strictly between
    /// its endpoints: each such position must be a descendant of `h`.
    ///
    /// Evaluated in linear time through an equivalent reformulation — the
    /// condition holds exactly when every subtree covers one contiguous
    /// interval of positions. The test suite holds this equal to a literal
    /// per-arc reference and to the absence of crossing arcs (with the root
    /// at position 0 participating in the latter).
    pub fn is_projective(&self) -> Result<bool, InvalidTree> {
        let heads = self.require_valid()?;
        let n = self.len();

        // Depth of every node, with path-collapsing so the total stays
        // linear even on chains.
        let mut depth = alloc::vec![usize::MAX; n + 1];
        depth[0] = 0;
        let mut path = Vec::new();
        for j in 1..=n {
            let mut cur = j;
            while depth[cur] == usize::MAX {
                path.push(cur);
                cur = heads[cur];
            }
            let mut d = depth[cur];
            while let Some(v) = path.pop() {
                d += 1;
                depth[v] = d;
            }
        }

        // Fold subtree extents children-before-parents by walking the depth
        // buckets from the deepest level up.
        let mut buckets: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
        for j in 1..=n {
            buckets[depth[j]].push(j);
        }
        let mut lo: Vec<usize> = (0..=n).collect();
        let mut hi: Vec<usize> = (0..=n).collect();
        let mut size = alloc::vec![1usize; n + 1];
        for level in (1..=n).rev() {
            for &v in &buckets[level] {
                if hi[v] - lo[v] + 1 != size[v] {
                    return Ok(false);
                }
                let h = heads[v];
                if h != 0 {
                    let (vlo, vhi, vsize) = (lo[v], hi[v], size[v]);
                    lo[h] = lo[h].min(vlo);
                    hi[h] = hi[h].max(vhi);
                    size[h] += vsize;
                }
            }
        }
        Ok(true)
    }

    /// All crossing arc pairs, endpoints sorted within each span and spans
    /// sorted within each pair, the whole list in lexicographic order. The
    /// arc from the root participates with its endpoint at position 0.
    ///
    /// The list is empty exactly when [`is_projective`](Self::is_projective)
    /// holds.
    pub fn crossing_pairs(&self) -> Result<Vec<(Span, Span)>, InvalidTree> {
        self.require_valid()?;
        let spans: Vec<Span> = self.arcs.iter().map(span_of).collect();
        let mut out = Vec::new();
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                let (x, y) = if spans[i] <= spans[j] {
                    (spans[i], spans[j])
                } else {
                    (spans[j], spans[i])
                };
                if x.0 < y.0 && y.0 < x.1 && x.1 < y.1 {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

fn span_of(arc: &Arc) -> Span {
    if arc.head < arc.dependent {
        (arc.head, arc.dependent)
    } else {
        (arc.dependent, arc.head)
    }
}
