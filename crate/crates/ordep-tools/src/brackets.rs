//! Bracketed text for ordered trees: `(LABEL child …)` with single spaces,
//! labels uppercased at render, leaves as FORM or FORM/UPOS.

use ordep::{OrderedTree, Sentence};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("form {form:?} contains whitespace; bracket text cannot represent it")]
    WhitespaceInForm { form: String },
    #[error("label {label:?} contains whitespace or parentheses")]
    IllegalLabel { label: String },
    #[error("leaf index {index} has no token in the sentence")]
    MissingToken { index: usize },
}

fn escape(form: &str) -> String {
    form.replace('(', "-LRB-").replace(')', "-RRB-")
}

fn unescape(text: &str) -> String {
    text.replace("-LRB-", "(").replace("-RRB-", ")")
}

/// Renders a tree. With `pos`, each leaf gains `/UPOS` looked up by its index
/// in the sentence (leaves without a UPOS stay bare). Deterministic and
/// byte-stable; iterative, so arbitrarily deep trees render fine.
pub fn write_brackets(tree: &OrderedTree, pos: Option<&Sentence>) -> Result<String, BracketError> {
    // Frames: a node not yet opened, or a close-paren due.
    enum Job<'a> {
        Node(&'a OrderedTree, bool),
        Close,
    }
    let mut out = String::new();
    let mut jobs = vec![Job::Node(tree, false)];
    while let Some(job) = jobs.pop() {
        match job {
            Job::Close => out.push(')'),
            Job::Node(node, space_before) => {
                if space_before {
                    out.push(' ');
                }
                match node {
                    OrderedTree::Leaf { index, form } => {
                        if form.chars().any(char::is_whitespace) {
                            return Err(BracketError::WhitespaceInForm { form: form.clone() });
                        }
                        out.push_str(&escape(form));
                        if let Some(sentence) = pos {
                            let token = sentence
                                .get(*index)
                                .ok_or(BracketError::MissingToken { index: *index })?;
                            if let Some(upos) = &token.upos {
                                if upos.chars().any(char::is_whitespace) {
                                    return Err(BracketError::WhitespaceInForm {
                                        form: upos.clone(),
                                    });
                                }
                                out.push('/');
                                out.push_str(&escape(upos));
                            }
                        }
                    }
                    OrderedTree::Internal { label, children } => {
                        if label
                            .chars()
                            .any(|c| c.is_whitespace() || c == '(' || c == ')')
                        {
                            return Err(BracketError::IllegalLabel {
                                label: label.clone(),
                            });
                        }
                        out.push('(');
                        out.push_str(&label.to_uppercase());
                        jobs.push(Job::Close);
                        for child in children.iter().rev() {
                            jobs.push(Job::Node(child, true));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("at byte {position}: {message}")]
pub struct BracketParseError {
    pub position: usize,
    pub message: String,
}

fn err(position: usize, message: impl Into<String>) -> BracketParseError {
    BracketParseError {
        position,
        message: message.into(),
    }
}

/// Parses bracket text back into an ordered tree. Leaf indices are assigned
/// left to right from 1; a leaf written as FORM/UPOS keeps only FORM (split
/// at the last '/'). Inverse of `write_brackets` up to label case.
pub fn read_brackets(text: &str) -> Result<OrderedTree, BracketParseError> {
    // Open frames: (byte position of '(', label, children so far).
    let mut open: Vec<(usize, String, Vec<OrderedTree>)> = Vec::new();
    let mut done: Option<OrderedTree> = None;
    let mut leaf_index = 0usize;
    let bytes = text.as_bytes();
    let mut at = 0usize;
    while at < bytes.len() {
        let c = bytes[at] as char;
        if c.is_ascii_whitespace() {
            at += 1;
            continue;
        }
        if done.is_some() {
            return Err(err(at, "trailing input after the tree"));
        }
        match c {
            '(' => {
                let start = at + 1;
                let mut end = start;
                while end < bytes.len()
                    && !matches!(bytes[end], b'(' | b')' | b' ' | b'\t' | b'\n' | b'\r')
                {
                    end += 1;
                }
                if end == start {
                    return Err(err(at, "expected a label after '('"));
                }
                let label = text[start..end].to_string();
                open.push((at, label, Vec::new()));
                at = end;
            }
            ')' => {
                let (open_at, label, children) = match open.pop() {
                    Some(frame) => frame,
                    None => return Err(err(at, "unbalanced ')'")),
                };
                if children.is_empty() {
                    return Err(err(open_at, format!("node {label:?} has no children")));
                }
                let node = OrderedTree::internal(label, children);
                match open.last_mut() {
                    Some((_, _, parent)) => parent.push(node),
                    None => done = Some(node),
                }
                at += 1;
            }
            _ => {
                let start = at;
                let mut end = at;
                while end < bytes.len()
                    && !matches!(bytes[end], b'(' | b')' | b' ' | b'\t' | b'\n' | b'\r')
                {
                    end += 1;
                }
                let atom = &text[start..end];
                let form_part = match atom.rsplit_once('/') {
                    Some((form, _upos)) => form,
                    None => atom,
                };
                if form_part.is_empty() {
                    return Err(err(start, format!("leaf {atom:?} has an empty form")));
                }
                let parent = match open.last_mut() {
                    Some((_, _, children)) => children,
                    None => return Err(err(start, "expected '(' before a leaf")),
                };
                leaf_index += 1;
                parent.push(OrderedTree::leaf(leaf_index, unescape(form_part)));
                at = end;
            }
        }
    }
    if let Some((open_at, label, _)) = open.last() {
        return Err(err(*open_at, format!("unclosed '(' for node {label:?}")));
    }
    done.ok_or_else(|| err(text.len(), "empty input, expected a tree"))
}
