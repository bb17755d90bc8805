//! Interface-model data types and their single-step semantics.
//!
//! An [`InterfaceModel`] is a complete rule table over named states: for
//! every (state, stimulus) pair there is exactly one [`RuleCase`] saying
//! either that the stimulus is illegal in that state or how the component
//! responds (notifications, reply, next state). Everything downstream —
//! test-model construction, exploration, composition, the conformance
//! harness — consumes these types and the [`InterfaceModel::step`]
//! semantics defined here.

mod validate;

pub use validate::{Finding, FindingCode, Severity, ValidationReport};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Value sort a stimulus parameter ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Int,
    Str,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Int => f.write_str("int"),
            Sort::Str => f.write_str("string"),
        }
    }
}

/// One declared stimulus parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Param {
    pub name: String,
    pub sort: Sort,
}

/// Direction of an event relative to the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// Synchronous call from the client into the component.
    Stimulus,
    /// Event emitted by the component while handling a stimulus.
    Notification,
    /// The single synchronous return event terminating a stimulus.
    Reply,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventKind::Stimulus => f.write_str("stimulus"),
            EventKind::Notification => f.write_str("notification"),
            EventKind::Reply => f.write_str("reply"),
        }
    }
}

/// One entry of a model's event alphabet.
///
/// Only stimuli may carry parameters; notifications and replies are
/// parameterless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventDecl {
    pub name: String,
    pub kind: EventKind,
    pub params: Vec<Param>,
}

impl EventDecl {
    pub fn stimulus(name: impl Into<String>, params: Vec<Param>) -> Self {
        EventDecl {
            name: name.into(),
            kind: EventKind::Stimulus,
            params,
        }
    }

    pub fn notification(name: impl Into<String>) -> Self {
        EventDecl {
            name: name.into(),
            kind: EventKind::Notification,
            params: Vec::new(),
        }
    }

    pub fn reply(name: impl Into<String>) -> Self {
        EventDecl {
            name: name.into(),
            kind: EventKind::Reply,
            params: Vec::new(),
        }
    }

    /// Signature rendering used in diagnostics, e.g. `in go(x:int)`.
    pub fn signature(&self) -> String {
        let kw = match self.kind {
            EventKind::Stimulus => "in",
            EventKind::Notification => "out",
            EventKind::Reply => "reply",
        };
        if self.params.is_empty() {
            format!("{kw} {}", self.name)
        } else {
            let params = self
                .params
                .iter()
                .map(|p| format!("{}:{}", p.name, p.sort))
                .collect::<Vec<_>>()
                .join(",");
            format!("{kw} {}({params})", self.name)
        }
    }
}

/// Response half of a rule: what a legal stimulus does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    /// Notifications sent to the client, in order.
    pub notifications: Vec<String>,
    /// Reply event terminating the stimulus.
    pub reply: String,
    /// State the component moves to.
    pub target: String,
}

/// Outcome column of one rule-table cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    Illegal,
    Legal(Response),
}

impl RuleOutcome {
    pub fn is_legal(&self) -> bool {
        matches!(self, RuleOutcome::Legal(_))
    }
}

/// One rule-table cell: the response definition for a (state, stimulus) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCase {
    pub state: String,
    pub stimulus: String,
    pub outcome: RuleOutcome,
}

/// A complete interface model: event alphabet plus a rule table over states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceModel {
    pub name: String,
    pub alphabet: Vec<EventDecl>,
    pub states: Vec<String>,
    pub initial: String,
    pub rules: Vec<RuleCase>,
}

/// Result of taking one stimulus in one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// The protocol forbids this stimulus here.
    Illegal,
    /// The stimulus is legal; fields mirror the matched rule exactly.
    Taken {
        notifications: Vec<String>,
        reply: String,
        next: String,
    },
}

impl StepOutcome {
    fn from_rule(outcome: &RuleOutcome) -> StepOutcome {
        match outcome {
            RuleOutcome::Illegal => StepOutcome::Illegal,
            RuleOutcome::Legal(r) => StepOutcome::Taken {
                notifications: r.notifications.clone(),
                reply: r.reply.clone(),
                next: r.target.clone(),
            },
        }
    }
}

/// Errors from [`InterfaceModel::step`] when its preconditions are violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("unknown-state: {0}")]
    UnknownState(String),
    #[error("unknown-event: {0}")]
    UnknownEvent(String),
    #[error("missing-rule: no cell for ({state}, {stimulus})")]
    MissingRule { state: String, stimulus: String },
}

impl InterfaceModel {
    /// Stimulus declarations in alphabet order.
    pub fn stimuli(&self) -> impl Iterator<Item = &EventDecl> {
        self.alphabet
            .iter()
            .filter(|e| e.kind == EventKind::Stimulus)
    }

    pub fn event(&self, name: &str) -> Option<&EventDecl> {
        self.alphabet.iter().find(|e| e.name == name)
    }

    /// The unique cell for a (state, stimulus) pair, if one exists.
    pub fn rule(&self, state: &str, stimulus: &str) -> Option<&RuleCase> {
        self.rules
            .iter()
            .find(|r| r.state == state && r.stimulus == stimulus)
    }

    /// Apply one stimulus in the given state.
    ///
    /// Requires a model that validated ok; on a complete table this is total
    /// over declared states and stimuli.
    pub fn step(&self, state: &str, stimulus: &str) -> Result<StepOutcome, StepError> {
        if !self.states.iter().any(|s| s == state) {
            return Err(StepError::UnknownState(state.to_string()));
        }
        match self.event(stimulus) {
            Some(decl) if decl.kind == EventKind::Stimulus => {}
            _ => return Err(StepError::UnknownEvent(stimulus.to_string())),
        }
        match self.rule(state, stimulus) {
            Some(rule) => Ok(StepOutcome::from_rule(&rule.outcome)),
            None => Err(StepError::MissingRule {
                state: state.to_string(),
                stimulus: stimulus.to_string(),
            }),
        }
    }

    /// States reachable from the initial state via legal transitions.
    pub fn reachable(&self) -> BTreeSet<String> {
        let index = self.rule_index();
        let stimuli: Vec<&str> = self.stimuli().map(|e| e.name.as_str()).collect();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut queue = VecDeque::new();
        if self.states.iter().any(|s| *s == self.initial) {
            seen.insert(self.initial.clone());
            queue.push_back(self.initial.clone());
        }
        while let Some(state) = queue.pop_front() {
            for &stim in &stimuli {
                if let Some(RuleOutcome::Legal(resp)) =
                    index.get(&(state.as_str(), stim)).map(|r| &r.outcome)
                {
                    if !seen.contains(&resp.target)
                        && self.states.iter().any(|s| *s == resp.target)
                    {
                        seen.insert(resp.target.clone());
                        queue.push_back(resp.target.clone());
                    }
                }
            }
        }
        seen
    }

    /// Every legal cell whose source state is reachable, in state-order then
    /// stimulus-order.
    pub fn legal_transitions(&self) -> Vec<(String, String, StepOutcome)> {
        let index = self.rule_index();
        let reachable = self.reachable();
        let mut out = Vec::new();
        for state in &self.states {
            if !reachable.contains(state) {
                continue;
            }
            for decl in self.stimuli() {
                if let Some(rule) = index.get(&(state.as_str(), decl.name.as_str())) {
                    if rule.outcome.is_legal() {
                        out.push((
                            state.clone(),
                            decl.name.clone(),
                            StepOutcome::from_rule(&rule.outcome),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Lookup table keyed by (state, stimulus). Later duplicates do not
    /// shadow earlier cells; duplicates are a validation error anyway.
    pub(crate) fn rule_index(&self) -> HashMap<(&str, &str), &RuleCase> {
        let mut index = HashMap::with_capacity(self.rules.len());
        for rule in &self.rules {
            index
                .entry((rule.state.as_str(), rule.stimulus.as_str()))
                .or_insert(rule);
        }
        index
    }
}
