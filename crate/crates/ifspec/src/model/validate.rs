//! Completeness, determinism, and reference checking for interface models.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{EventKind, InterfaceModel, RuleOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// Classification of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindingCode {
    /// A (state, stimulus) cell is missing from the rule table.
    Incomplete,
    /// More than one cell exists for the same (state, stimulus) pair.
    Nondeterministic,
    /// A rule refers to a name that is not declared, or with the wrong kind.
    Unresolved,
    /// A state cannot be reached from the initial state via legal transitions.
    Unreachable,
    /// A state or event is declared more than once.
    DuplicateDeclaration,
    /// A notification or reply event declares parameters.
    ParamRestriction,
    /// A name is used both as a state and as an event.
    NameClash,
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FindingCode::Incomplete => "incomplete",
            FindingCode::Nondeterministic => "nondeterministic",
            FindingCode::Unresolved => "unresolved",
            FindingCode::Unreachable => "unreachable",
            FindingCode::DuplicateDeclaration => "duplicate-declaration",
            FindingCode::ParamRestriction => "param-restriction",
            FindingCode::NameClash => "name-clash",
        };
        f.write_str(s)
    }
}

/// One validation problem, formatted as `severity code location: message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: FindingCode,
    /// The state and/or event names involved, e.g. `Triggered/deactivate`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity, self.code, self.location, self.message
        )
    }
}

/// Outcome of [`InterfaceModel::validate`]. `ok()` holds exactly when no
/// error-severity finding is present; warnings never fail a model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        !self
            .findings
            .iter()
            .any(|f| f.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    fn error(&mut self, code: FindingCode, location: impl Into<String>, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Error,
            code,
            location: location.into(),
            message: message.into(),
        });
    }

    fn warning(
        &mut self,
        code: FindingCode,
        location: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.findings.push(Finding {
            severity: Severity::Warning,
            code,
            location: location.into(),
            message: message.into(),
        });
    }
}

impl InterfaceModel {
    /// Check completeness, determinism, and name resolution of the rule
    /// table, plus reachability of every declared state.
    ///
    /// All problems are findings; this never fails. A missing cell is
    /// `incomplete`, a duplicated cell `nondeterministic`, a dangling name
    /// `unresolved`, and a state no legal path reaches is the warning
    /// `unreachable`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();

        // Declaration-level checks.
        let mut event_names: HashSet<&str> = HashSet::new();
        for decl in &self.alphabet {
            if !event_names.insert(&decl.name) {
                report.error(
                    FindingCode::DuplicateDeclaration,
                    &decl.name,
                    format!("event `{}` is declared more than once", decl.name),
                );
            }
            if decl.kind != EventKind::Stimulus && !decl.params.is_empty() {
                report.error(
                    FindingCode::ParamRestriction,
                    &decl.name,
                    format!("{} `{}` must not declare parameters", decl.kind, decl.name),
                );
            }
        }
        let mut state_names: HashSet<&str> = HashSet::new();
        for state in &self.states {
            if !state_names.insert(state) {
                report.error(
                    FindingCode::DuplicateDeclaration,
                    state,
                    format!("state `{state}` is declared more than once"),
                );
            }
            if event_names.contains(state.as_str()) {
                report.error(
                    FindingCode::NameClash,
                    state,
                    format!("`{state}` is used both as a state and as an event"),
                );
            }
        }
        if !state_names.contains(self.initial.as_str()) {
            report.error(
                FindingCode::Unresolved,
                &self.initial,
                format!("initial state `{}` is not declared", self.initial),
            );
        }

        // Per-cell reference checks.
        let kind_of: HashMap<&str, EventKind> = self
            .alphabet
            .iter()
            .map(|e| (e.name.as_str(), e.kind))
            .collect();
        for rule in &self.rules {
            let loc = format!("{}/{}", rule.state, rule.stimulus);
            if !state_names.contains(rule.state.as_str()) {
                report.error(
                    FindingCode::Unresolved,
                    &loc,
                    format!("rule state `{}` is not declared", rule.state),
                );
            }
            if kind_of.get(rule.stimulus.as_str()) != Some(&EventKind::Stimulus) {
                report.error(
                    FindingCode::Unresolved,
                    &loc,
                    format!("`{}` is not a declared stimulus", rule.stimulus),
                );
            }
            if let RuleOutcome::Legal(resp) = &rule.outcome {
                for n in &resp.notifications {
                    if kind_of.get(n.as_str()) != Some(&EventKind::Notification) {
                        report.error(
                            FindingCode::Unresolved,
                            &loc,
                            format!("`{n}` is not a declared notification"),
                        );
                    }
                }
                if kind_of.get(resp.reply.as_str()) != Some(&EventKind::Reply) {
                    report.error(
                        FindingCode::Unresolved,
                        &loc,
                        format!("`{}` is not a declared reply", resp.reply),
                    );
                }
                if !state_names.contains(resp.target.as_str()) {
                    report.error(
                        FindingCode::Unresolved,
                        &loc,
                        format!("target state `{}` is not declared", resp.target),
                    );
                }
            }
        }

        // Completeness and determinism over (state, stimulus) pairs.
        let mut seen: HashMap<(&str, &str), usize> = HashMap::new();
        for rule in &self.rules {
            *seen
                .entry((rule.state.as_str(), rule.stimulus.as_str()))
                .or_insert(0) += 1;
        }
        for state in &self.states {
            for decl in self.stimuli() {
                let key = (state.as_str(), decl.name.as_str());
                match seen.get(&key).copied().unwrap_or(0) {
                    0 => report.error(
                        FindingCode::Incomplete,
                        format!("{state}/{}", decl.name),
                        format!("no rule for stimulus `{}` in state `{state}`", decl.name),
                    ),
                    1 => {}
                    n => report.error(
                        FindingCode::Nondeterministic,
                        format!("{state}/{}", decl.name),
                        format!(
                            "{n} rules for stimulus `{}` in state `{state}`",
                            decl.name
                        ),
                    ),
                }
            }
        }

        // Reachability warnings only make sense once the table resolves.
        if report.ok() {
            let reachable = self.reachable();
            for state in &self.states {
                if !reachable.contains(state) {
                    report.warning(
                        FindingCode::Unreachable,
                        state,
                        format!("state `{state}` is unreachable from `{}`", self.initial),
                    );
                }
            }
        }

        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EventDecl, Param, Sort};
    use crate::text::parse;

    const ALARM: &str = super::super::tests::ALARM_SRC;

    #[test]
    fn complete_alarm_validates_clean() {
        let report = parse(ALARM).unwrap().validate();
        assert!(report.ok());
        assert!(report.findings.is_empty());
    }

    #[test]
    fn missing_cell_is_incomplete() {
        let mut m = parse(ALARM).unwrap();
        m.rules
            .retain(|r| !(r.state == "Triggered" && r.stimulus == "deactivate"));
        let report = m.validate();
        assert!(!report.ok());
        let f = report.errors().next().unwrap();
        assert_eq!(f.code, FindingCode::Incomplete);
        assert_eq!(f.location, "Triggered/deactivate");
    }

    #[test]
    fn duplicate_cell_is_nondeterministic() {
        let mut m = parse(ALARM).unwrap();
        let dup = m
            .rule("Activated", "triggered")
            .cloned()
            .expect("cell exists");
        m.rules.push(dup);
        let report = m.validate();
        assert!(!report.ok());
        assert!(report
            .errors()
            .any(|f| f.code == FindingCode::Nondeterministic
                && f.location == "Activated/triggered"));
    }

    #[test]
    fn dangling_names_are_unresolved() {
        let mut m = parse(ALARM).unwrap();
        for rule in &mut m.rules {
            if let RuleOutcome::Legal(resp) = &mut rule.outcome {
                if rule.state == "Deactivated" {
                    resp.target = "Missing".into();
                }
            }
        }
        let report = m.validate();
        assert!(report
            .errors()
            .any(|f| f.code == FindingCode::Unresolved && f.message.contains("Missing")));
    }

    #[test]
    fn unreachable_state_is_warning_only() {
        let m = parse(
            "interface Spare { initial A; in go; reply ok; \
             state A { on go -> A reply ok; } \
             state B { on go -> B reply ok; } }",
        )
        .unwrap();
        let report = m.validate();
        assert!(report.ok());
        assert_eq!(report.findings.len(), 1);
        let f = &report.findings[0];
        assert_eq!(f.severity, Severity::Warning);
        assert_eq!(f.code, FindingCode::Unreachable);
        assert_eq!(f.location, "B");
    }

    #[test]
    fn param_restriction_on_outputs() {
        let mut m = parse(ALARM).unwrap();
        for decl in &mut m.alphabet {
            if decl.name == "NI_Triggered" {
                decl.params.push(Param {
                    name: "x".into(),
                    sort: Sort::Int,
                });
            }
        }
        let report = m.validate();
        assert!(report
            .errors()
            .any(|f| f.code == FindingCode::ParamRestriction));
    }

    #[test]
    fn state_event_name_clash_is_error() {
        let mut m = parse(ALARM).unwrap();
        m.alphabet.push(EventDecl::reply("Triggered"));
        let report = m.validate();
        assert!(report.errors().any(|f| f.code == FindingCode::NameClash));
    }

    #[test]
    fn finding_display_format() {
        let f = Finding {
            severity: Severity::Error,
            code: FindingCode::Incomplete,
            location: "Triggered/deactivate".into(),
            message: "no rule".into(),
        };
        assert_eq!(f.to_string(), "error incomplete Triggered/deactivate: no rule");
    }
}
