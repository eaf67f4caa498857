//! Derivation traces: one tab-separated row per step showing the
//! configuration before the action, closing with a `done` row.

use ordep::{Derivation, ExecError, Sentence, Transition, TreeConfiguration};

/// How stack entries are rendered: surface forms, or anchored-subtree names
/// (`t_book`, `t′_book`, …) keyed by anchor and revision count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMode {
    Plain,
    Mapped,
}

fn render_stack(config: &TreeConfiguration, sentence: &Sentence, mode: TraceMode) -> String {
    let mut out = String::from("[root");
    for item in config.stack() {
        out.push_str(", ");
        match mode {
            TraceMode::Plain => out.push_str(sentence.form(item.anchor())),
            TraceMode::Mapped => out.push_str(&item.to_string()),
        }
    }
    out.push(']');
    out
}

fn render_buffer(config: &TreeConfiguration, sentence: &Sentence) -> String {
    let forms: Vec<&str> = config.buffer().map(|i| sentence.form(i)).collect();
    format!("[{}]", forms.join(", "))
}

/// The relation a transition adds, read off the configuration it fires from:
/// `(head → dependent)` for RIGHTARC (`ROOT` when the head is the sentinel),
/// `(dependent ← head)` for LEFTARC, empty for SHIFT.
fn render_relation(
    config: &TreeConfiguration,
    sentence: &Sentence,
    transition: &Transition,
) -> String {
    let stack = config.stack();
    match transition {
        Transition::Shift => String::new(),
        Transition::LeftArc(_) => match stack {
            [.., second, top] => format!(
                "({} \u{2190} {})",
                sentence.form(second.anchor()),
                sentence.form(top.anchor())
            ),
            _ => String::new(),
        },
        Transition::RightArc(_) => match stack {
            [.., second, top] => format!(
                "({} \u{2192} {})",
                sentence.form(second.anchor()),
                sentence.form(top.anchor())
            ),
            [top] => format!("(ROOT \u{2192} {})", sentence.form(top.anchor())),
            [] => String::new(),
        },
    }
}

fn action_name(transition: &Transition) -> &'static str {
    match transition {
        Transition::Shift => "shift",
        Transition::LeftArc(_) => "leftarc",
        Transition::RightArc(_) => "rightarc",
    }
}

/// Renders the full trace, replaying the derivation as tree construction.
/// Errors exactly where and how the executor would.
pub fn write_trace(
    sentence: &Sentence,
    derivation: &Derivation,
    mode: TraceMode,
) -> Result<String, ExecError> {
    let mut config = TreeConfiguration::new(sentence);
    let mut out = String::new();
    for (at, transition) in derivation.iter().enumerate() {
        out.push_str(&format!(
            "{at}\t{}\t{}\t{}\t{}\n",
            render_stack(&config, sentence, mode),
            render_buffer(&config, sentence),
            action_name(transition),
            render_relation(&config, sentence, transition),
        ));
        config = config.step(transition).map_err(|error| ExecError::Step {
            step: at + 1,
            error,
        })?;
    }
    if !config.is_terminal() || config.buffer_len() > 0 {
        return Err(ExecError::Incomplete {
            executed: derivation.len(),
            stack: config.stack().len() + 1,
            buffer: config.buffer_len(),
        });
    }
    out.push_str(&format!(
        "{}\t{}\t{}\tdone\t\n",
        derivation.len(),
        render_stack(&config, sentence, mode),
        render_buffer(&config, sentence),
    ));
    Ok(out)
}
