//! Graphviz export of the state diagram.

use std::fmt::Write;

use crate::model::{InterfaceModel, StepOutcome};

/// Render the reachable part of a model as a DOT digraph.
///
/// One node per reachable state with the initial state drawn as a double
/// circle, one edge per legal transition labeled `stimulus / reply`
/// (`+notifications` appended when the rule notifies). With `show_illegal`,
/// each illegal cell of a reachable state becomes a dashed edge into a
/// shared `ILLEGAL` sink. All names are quoted, so any identifier is safe.
pub fn render_dot(model: &InterfaceModel, show_illegal: bool) -> String {
    let reachable = model.reachable();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&model.name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for state in model.states.iter().filter(|s| reachable.contains(*s)) {
        if *state == model.initial {
            writeln!(out, "  {} [shape=doublecircle];", quote(state)).unwrap();
        } else {
            writeln!(out, "  {};", quote(state)).unwrap();
        }
    }
    for (state, stimulus, outcome) in model.legal_transitions() {
        if let StepOutcome::Taken {
            notifications,
            reply,
            next,
        } = outcome
        {
            let mut label = format!("{stimulus} / {reply}");
            if !notifications.is_empty() {
                label.push_str(" +");
                label.push_str(&notifications.join(","));
            }
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&state),
                quote(&next),
                quote(&label)
            )
            .unwrap();
        }
    }
    if show_illegal {
        let index = model.rule_index();
        let mut sink_needed = false;
        let mut illegal_edges = String::new();
        for state in model.states.iter().filter(|s| reachable.contains(*s)) {
            for decl in model.stimuli() {
                if let Some(rule) = index.get(&(state.as_str(), decl.name.as_str())) {
                    if !rule.outcome.is_legal() {
                        sink_needed = true;
                        writeln!(
                            illegal_edges,
                            "  {} -> \"__ILLEGAL__\" [label={}, style=dashed];",
                            quote(state),
                            quote(&decl.name)
                        )
                        .unwrap();
                    }
                }
            }
        }
        if sink_needed {
            writeln!(out, "  \"__ILLEGAL__\" [label=\"ILLEGAL\", shape=box];").unwrap();
            out.push_str(&illegal_edges);
        }
    }
    out.push_str("}\n");
    out
}

fn quote(name: &str) -> String {
    let mut quoted = String::with_capacity(name.len() + 2);
    quoted.push('"');
    for c in name.chars() {
        if c == '"' || c == '\\' {
            quoted.push('\\');
        }
        quoted.push(c);
    }
    quoted.push('"');
    quoted
}
