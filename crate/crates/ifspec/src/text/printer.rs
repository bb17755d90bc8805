//! Canonical `.ifm` writer.

use std::fmt::Write;

use crate::model::{EventKind, InterfaceModel, RuleOutcome};

/// Render a model back to `.ifm` source.
///
/// One declaration or rule per line, two-space indent. Rules are grouped
/// under their state block in `states` order, preserving each state's own
/// rule order, so text parsed with [`super::parse`] re-serializes byte for
/// byte and `parse(serialize(m))` structurally equals `m` for every model
/// expressible in the grammar (nonempty alphabet, every state with at
/// least one rule).
pub fn serialize(model: &InterfaceModel) -> String {
    let mut out = String::new();
    writeln!(out, "interface {} {{", model.name).unwrap();
    writeln!(out, "  initial {};", model.initial).unwrap();
    for decl in &model.alphabet {
        let kw = match decl.kind {
            EventKind::Stimulus => "in",
            EventKind::Notification => "out",
            EventKind::Reply => "reply",
        };
        if decl.params.is_empty() {
            writeln!(out, "  {kw} {};", decl.name).unwrap();
        } else {
            let params = decl
                .params
                .iter()
                .map(|p| format!("{}:{}", p.name, p.sort))
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "  {kw} {}({params});", decl.name).unwrap();
        }
    }
    for state in &model.states {
        writeln!(out, "  state {state} {{").unwrap();
        for rule in model.rules.iter().filter(|r| &r.state == state) {
            match &rule.outcome {
                RuleOutcome::Illegal => {
                    writeln!(out, "    on {} illegal;", rule.stimulus).unwrap();
                }
                RuleOutcome::Legal(resp) => {
                    let notify = if resp.notifications.is_empty() {
                        String::new()
                    } else {
                        format!(" notify {}", resp.notifications.join(","))
                    };
                    writeln!(
                        out,
                        "    on {} -> {}{notify} reply {};",
                        rule.stimulus, resp.target, resp.reply
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "  }}").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn alarm_round_trips() {
        let src = r#"interface AlarmSystem {
  initial Deactivated;
  in activate; in deactivate; in triggered;
  out NI_Triggered;
  reply ok;
  state Deactivated { on activate -> Activated reply ok; on deactivate illegal; on triggered illegal; }
  state Activated   { on activate illegal; on deactivate -> Deactivated reply ok; on triggered -> Triggered notify NI_Triggered reply ok; }
  state Triggered   { on activate illegal; on deactivate -> Deactivated reply ok; on triggered illegal; }
}"#;
        let m = parse(src).unwrap();
        let text = serialize(&m);
        let back = parse(&text).unwrap();
        assert_eq!(m, back);
        // Canonical text is a fixpoint.
        assert_eq!(text, serialize(&back));
    }

    #[test]
    fn minimal_model_layout() {
        let m = parse("interface M { initial S; in e; state S { on e illegal; } }").unwrap();
        let text = serialize(&m);
        assert_eq!(
            text,
            "interface M {\n  initial S;\n  in e;\n  state S {\n    on e illegal;\n  }\n}\n"
        );
        // Header, initial, one alphabet line, the state block, closers.
        assert_eq!(text.lines().count(), 7);
        assert_eq!(parse(&text).unwrap(), m);
    }

    #[test]
    fn params_are_emitted_in_signature_form() {
        let m = parse(
            "interface M { initial S; in setLevel(level:int); reply ok; \
             state S { on setLevel -> S reply ok; } }",
        )
        .unwrap();
        let text = serialize(&m);
        assert!(text.contains("  in setLevel(level:int);\n"), "{text}");
        assert_eq!(parse(&text).unwrap(), m);
    }

    #[test]
    fn multiple_notifications_join_with_commas() {
        let m = parse(
            "interface M { initial S; in go; out a; out b; reply ok; \
             state S { on go -> S notify a,b,a reply ok; } }",
        )
        .unwrap();
        let text = serialize(&m);
        assert!(text.contains("notify a,b,a reply ok;"), "{text}");
        assert_eq!(parse(&text).unwrap(), m);
    }
}
