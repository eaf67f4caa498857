//! CoNLL-U reading and writing over the five columns the pipeline uses:
//! ID, FORM, UPOS, HEAD, DEPREL. The remaining columns are preserved as "_".

use std::io::{self, BufRead, Write};

use ordep::{Arc, DependencyTree, Sentence, Token};
use thiserror::Error;

/// A reader note tied to a 1-based input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// One sentence block as read. `tree` is present when every token row parsed
/// and the IDs ran 1..n; `sentence` additionally survives HEAD/DEPREL damage,
/// so consumers that only need forms can still pair files positionally.
#[derive(Debug)]
pub struct ParsedSentence {
    /// 1-based line number of the block's first line.
    pub start_line: usize,
    pub sentence: Option<Sentence>,
    pub tree: Option<DependencyTree>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Streaming reader: yields one sentence block per `next()` call, so corpora
/// are never materialized whole.
pub struct ConlluReader<I> {
    lines: I,
    line_no: usize,
    failed: bool,
}

impl<R: BufRead> ConlluReader<io::Lines<R>> {
    pub fn new(reader: R) -> Self {
        ConlluReader::from_lines(reader.lines())
    }
}

impl<I: Iterator<Item = io::Result<String>>> ConlluReader<I> {
    pub fn from_lines(lines: I) -> Self {
        ConlluReader {
            lines,
            line_no: 0,
            failed: false,
        }
    }
}

/// One parsed token row, before assembly.
struct Row {
    form: String,
    upos: Option<String>,
    head: usize,
    deprel: String,
}

fn parse_row(line: &str, line_no: usize, expected_id: usize) -> Result<Option<Row>, Diagnostic> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(Diagnostic {
            line: line_no,
            message: format!("expected 10 tab-separated columns, found {}", cols.len()),
        });
    }
    let id = cols[0];
    if id.contains('-') {
        // Multiword-token range: surface-only, carries no tree structure.
        return Ok(None);
    }
    if id.contains('.') {
        // Empty node: enhanced-dependency artifact, outside the basic tree.
        return Ok(None);
    }
    let id: usize = id.parse().map_err(|_| Diagnostic {
        line: line_no,
        message: format!("non-integer ID {:?}", cols[0]),
    })?;
    if id != expected_id {
        return Err(Diagnostic {
            line: line_no,
            message: format!("ID {id} out of sequence, expected {expected_id}"),
        });
    }
    let head: usize = cols[6].parse().map_err(|_| Diagnostic {
        line: line_no,
        message: format!("non-integer HEAD {:?}", cols[6]),
    })?;
    Ok(Some(Row {
        form: cols[1].to_string(),
        upos: match cols[3] {
            "_" => None,
            u => Some(u.to_string()),
        },
        head,
        deprel: cols[7].to_string(),
    }))
}

impl<I: Iterator<Item = io::Result<String>>> Iterator for ConlluReader<I> {
    type Item = io::Result<ParsedSentence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let mut start_line = 0;
        let mut rows: Vec<Row> = Vec::new();
        let mut diagnostics: Vec<Diagnostic> = Vec::new();
        let mut broken = false;
        let mut saw_content = false;
        loop {
            let line = match self.lines.next() {
                Some(Ok(line)) => line,
                Some(Err(e)) => {
                    self.failed = true;
                    return Some(Err(e));
                }
                None => {
                    if !saw_content {
                        return None;
                    }
                    break;
                }
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                if saw_content {
                    break;
                }
                continue;
            }
            if !saw_content {
                saw_content = true;
                start_line = self.line_no;
            }
            if line.starts_with('#') {
                continue;
            }
            match parse_row(&line, self.line_no, rows.len() + 1) {
                Ok(Some(row)) => rows.push(row),
                Ok(None) => diagnostics.push(Diagnostic {
                    line: self.line_no,
                    message: "non-integer ID row skipped (multiword token or empty node)"
                        .to_string(),
                }),
                Err(d) => {
                    diagnostics.push(d);
                    broken = true;
                }
            }
        }
        if rows.is_empty() && diagnostics.is_empty() {
            // Comment-only block; look for the next real sentence.
            return self.next();
        }
        let (sentence, tree) = if broken || rows.is_empty() {
            (None, None)
        } else {
            let tokens = rows
                .iter()
                .enumerate()
                .map(|(i, row)| match &row.upos {
                    Some(u) => Token::with_upos(i + 1, row.form.clone(), u.clone()),
                    None => Token::new(i + 1, row.form.clone()),
                })
                .collect();
            let sentence = Sentence::new(tokens);
            let arcs = rows
                .iter()
                .enumerate()
                .map(|(i, row)| Arc::new(row.head, i + 1, row.deprel.clone()))
                .collect();
            let tree = DependencyTree::new(sentence.clone(), arcs);
            (Some(sentence), Some(tree))
        };
        Some(Ok(ParsedSentence {
            start_line,
            sentence,
            tree,
            diagnostics,
        }))
    }
}

/// Reads a whole stream. Empty input gives an empty list; malformed sentences
/// come back with diagnostics instead of aborting the read.
pub fn read_conllu(reader: impl BufRead) -> io::Result<Vec<ParsedSentence>> {
    ConlluReader::new(reader).collect()
}

#[derive(Debug, Error)]
pub enum WriteError {
    #[error("{0}")]
    Invalid(ordep::InvalidTree),
    #[error("token {index}: {field} contains a tab or newline")]
    IllegalText { index: usize, field: &'static str },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn field_ok(text: &str) -> bool {
    !text.contains('\t') && !text.contains('\n') && !text.contains('\r')
}

/// Writes one sentence as token rows plus the terminating blank line.
pub fn write_sentence(w: &mut impl Write, tree: &DependencyTree) -> Result<(), WriteError> {
    let heads = tree.heads().map_err(WriteError::Invalid)?;
    for token in tree.sentence().tokens() {
        let d = token.index;
        if !field_ok(&token.form) {
            return Err(WriteError::IllegalText {
                index: d,
                field: "FORM",
            });
        }
        let upos = token.upos.as_deref().unwrap_or("_");
        if !field_ok(upos) {
            return Err(WriteError::IllegalText {
                index: d,
                field: "UPOS",
            });
        }
        let arc = tree.arc_onto(d).expect("validated above");
        if !field_ok(&arc.label) {
            return Err(WriteError::IllegalText {
                index: d,
                field: "DEPREL",
            });
        }
        writeln!(
            w,
            "{d}\t{}\t_\t{upos}\t_\t_\t{}\t{}\t_\t_",
            token.form, heads[d], arc.label
        )?;
    }
    writeln!(w)?;
    Ok(())
}

/// Renders a corpus to a string; inverse of `read_conllu` on the used columns.
pub fn write_conllu(trees: &[DependencyTree]) -> Result<String, WriteError> {
    let mut out = Vec::new();
    for tree in trees {
        write_sentence(&mut out, tree)?;
    }
    Ok(String::from_utf8(out).expect("writer emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1A: &str = "\
1\tbook\t_\tVB\t_\t_\t0\troot\t_\t_
2\tme\t_\tPRP\t_\t_\t1\tiobj\t_\t_
3\tthe\t_\tDT\t_\t_\t5\tdet\t_\t_
4\tmorning\t_\tNN\t_\t_\t5\tcompound\t_\t_
5\tflight\t_\tNN\t_\t_\t1\tdobj\t_\t_
";

    fn flight() -> DependencyTree {
        read_conllu(FIG1A.as_bytes())
            .unwrap()
            .remove(0)
            .tree
            .unwrap()
    }

    #[test]
    fn reads_figure_1a() {
        let t = flight();
        assert!(t.is_valid());
        assert_eq!(t.heads().unwrap(), vec![0, 0, 1, 5, 5, 1]);
        assert_eq!(t.arc_onto(2).unwrap().label, "iobj");
        assert_eq!(t.sentence().form(5), "flight");
        assert_eq!(t.sentence().get(1).unwrap().upos.as_deref(), Some("VB"));
    }

    #[test]
    fn empty_input_is_an_empty_list() {
        assert!(read_conllu("".as_bytes()).unwrap().is_empty());
        assert!(read_conllu("\n\n".as_bytes()).unwrap().is_empty());
        assert!(read_conllu("# only a comment\n".as_bytes())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn round_trips_figure_1a() {
        let rendered = write_conllu(&[flight()]).unwrap();
        assert_eq!(rendered, format!("{FIG1A}\n"));
        let again = read_conllu(rendered.as_bytes()).unwrap();
        assert_eq!(again.len(), 1);
        assert_eq!(again[0].tree.as_ref().unwrap(), &flight());
    }

    #[test]
    fn bad_head_skips_the_sentence_with_a_diagnostic() {
        let text = "1\ta\t_\t_\t_\t_\tx\tdep\t_\t_\n\n1\tb\t_\t_\t_\t_\t0\troot\t_\t_\n";
        let parsed = read_conllu(text.as_bytes()).unwrap();
        assert_eq!(parsed.len(), 2);
        assert!(parsed[0].tree.is_none());
        assert!(parsed[0].sentence.is_none());
        assert!(parsed[0].diagnostics[0]
            .message
            .contains("non-integer HEAD"));
        assert!(parsed[1].tree.is_some());
    }

    #[test]
    fn wrong_column_count_is_diagnosed() {
        let parsed = read_conllu("1\ta\t0\troot\n".as_bytes()).unwrap();
        assert!(parsed[0].tree.is_none());
        assert!(parsed[0].diagnostics[0]
            .message
            .contains("10 tab-separated columns"));
    }

    #[test]
    fn ranges_and_empty_nodes_are_skipped_rows() {
        let text = "\
# sent_id = 1
1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_
1\tde\t_\t_\t_\t_\t2\tcase\t_\t_
2\tel\t_\t_\t_\t_\t0\troot\t_\t_
2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_
";
        let parsed = read_conllu(text.as_bytes()).unwrap();
        assert_eq!(parsed.len(), 1);
        let s = &parsed[0];
        assert_eq!(s.diagnostics.len(), 2);
        assert_eq!(s.tree.as_ref().unwrap().len(), 2);
        assert_eq!(s.start_line, 1);
    }

    #[test]
    fn out_of_sequence_ids_break_the_sentence() {
        let text = "1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n3\tb\t_\t_\t_\t_\t0\troot\t_\t_\n";
        let parsed = read_conllu(text.as_bytes()).unwrap();
        assert!(parsed[0].tree.is_none());
        assert!(parsed[0].diagnostics[0].message.contains("out of sequence"));
    }

    #[test]
    fn invalid_trees_are_returned_not_dropped() {
        // HEAD points past the sentence: structurally parseable, semantically
        // invalid. The reader hands it over; validity is the caller's call.
        let parsed = read_conllu("1\ta\t_\t_\t_\t_\t9\tdep\t_\t_\n".as_bytes()).unwrap();
        let tree = parsed[0].tree.as_ref().unwrap();
        assert!(!tree.is_valid());
    }

    #[test]
    fn write_rejects_tabs_in_labels() {
        let s = Sentence::from_forms(["a"]);
        let t = DependencyTree::new(s, vec![Arc::new(0, 1, "ro\tot")]);
        assert!(matches!(
            write_conllu(&[t]),
            Err(WriteError::IllegalText {
                field: "DEPREL",
                ..
            })
        ));
    }

    #[test]
    fn write_rejects_invalid_trees() {
        let s = Sentence::from_forms(["a", "b"]);
        let t = DependencyTree::new(s, vec![Arc::new(2, 1, "x"), Arc::new(1, 2, "y")]);
        assert!(matches!(write_conllu(&[t]), Err(WriteError::Invalid(_))));
    }
}
