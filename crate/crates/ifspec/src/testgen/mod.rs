//! Test-model construction, state-space exploration, and suite generation.
//!
//! A validated [`InterfaceModel`](crate::model::InterfaceModel) becomes a
//! [`TestModel`]: one guarded action per ground stimulus, each mapping the
//! states where it is enabled to the expected observations, with the rule
//! table's illegal cells turning into disabled guards. Parameterized
//! stimuli are grounded by [`expand_domains`] (cartesian or pairwise),
//! [`explore`] builds the reachable [`StateGraph`], and the generators in
//! this module select paths of that graph as test cases.

mod config;
mod domains;
mod explore;
mod ground;
mod strategies;
mod suite_file;

pub use config::{parse_cfg, CfgError, GenConfig, Strategy};
pub use domains::{expand_domains, Combination, DomainSpec};
pub use explore::explore;
pub use ground::{parse_ground_stimulus, parse_value, GroundStimulus, Value};
pub use strategies::{filter_suite, gen_longtests, gen_random, gen_shorttests, FilterOutcome};
pub use suite_file::{parse_suite, write_suite, SuiteParseError};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::model::{InterfaceModel, Param, RuleOutcome};

/// Expected observable effect of one enabled action in one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRow {
    pub notifications: Vec<String>,
    pub reply: String,
    pub next: String,
}

/// One guarded action of a test model.
///
/// `rows` holds exactly the states where the action is enabled; a state
/// absent from the map is one where the source cell was illegal, so the
/// action must never fire there. `params` lists still-unbound parameters;
/// an action is ground once it is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestAction {
    pub stimulus: GroundStimulus,
    pub params: Vec<Param>,
    pub rows: BTreeMap<String, ActionRow>,
}

impl TestAction {
    pub fn is_ground(&self) -> bool {
        self.params.is_empty()
    }
}

/// Explicit-state test model: a current-state variable over the source
/// model's states plus one action per stimulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestModel {
    /// Name of the interface model this was derived from.
    pub source: String,
    pub states: Vec<String>,
    pub initial: String,
    pub actions: Vec<TestAction>,
}

/// One edge of the explored state graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub stimulus: GroundStimulus,
    pub notifications: Vec<String>,
    pub reply: String,
    pub to: usize,
}

/// Reachable state graph of a ground test model. Node and edge order are
/// the deterministic BFS insertion order (state order, then action order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    /// Source model name, carried into generated suites.
    pub model: String,
    pub nodes: Vec<String>,
    /// Index of the initial node; always 0 for a graph built by [`explore`].
    pub initial: usize,
    pub edges: Vec<GraphEdge>,
}

impl StateGraph {
    /// Out-edge indices per node, in edge order.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push(i);
        }
        adj
    }

    pub(crate) fn describe_edge(&self, idx: usize) -> String {
        let e = &self.edges[idx];
        format!(
            "{} -{}-> {}",
            self.nodes[e.from], e.stimulus, self.nodes[e.to]
        )
    }
}

/// One stimulus step of a test case together with the expected observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestStep {
    pub stimulus: GroundStimulus,
    pub expect_notify: Vec<String>,
    pub expect_reply: String,
}

impl TestStep {
    pub(crate) fn from_edge(e: &GraphEdge) -> TestStep {
        TestStep {
            stimulus: e.stimulus.clone(),
            expect_notify: e.notifications.clone(),
            expect_reply: e.reply.clone(),
        }
    }
}

/// An ordered, nonempty sequence of steps starting at the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCase {
    pub id: usize,
    pub steps: Vec<TestStep>,
}

/// A generated suite: replayable cases plus the provenance recorded in the
/// `.suite` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSuite {
    pub model: String,
    pub strategy: String,
    pub seed: u64,
    pub cases: Vec<TestCase>,
}

impl TestSuite {
    pub fn total_steps(&self) -> usize {
        self.cases.iter().map(|c| c.steps.len()).sum()
    }
}

/// Transition coverage of a suite against a state graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub transitions_total: usize,
    pub transitions_covered: usize,
    /// Uncovered edges in graph edge order.
    pub uncovered: Vec<GraphEdge>,
}

impl CoverageReport {
    /// covered / total, as a fraction in 0..=1; a graph with no edges
    /// counts as fully covered.
    pub fn percent(&self) -> f64 {
        if self.transitions_total == 0 {
            1.0
        } else {
            self.transitions_covered as f64 / self.transitions_total as f64
        }
    }

    pub fn complete(&self) -> bool {
        self.transitions_covered == self.transitions_total
    }
}

impl fmt::Display for CoverageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} ({:.1}%)",
            self.transitions_covered,
            self.transitions_total,
            self.percent() * 100.0
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TestgenError {
    #[error("invalid-model: {0}")]
    InvalidModel(String),
    #[error("missing-domain: no values for parameter `{param}` of stimulus `{stimulus}`")]
    MissingDomain { stimulus: String, param: String },
    #[error("empty-domain: empty value list for parameter `{param}` of stimulus `{stimulus}`")]
    EmptyDomain { stimulus: String, param: String },
    #[error("ungrounded-action: stimulus `{0}` still has unbound parameters")]
    UngroundedAction(String),
    #[error("state-budget-exceeded: more than {limit} reachable states")]
    StateBudgetExceeded { limit: usize },
    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),
    #[error("illegal-replay: case {case} step {step}: {detail}")]
    IllegalReplay {
        case: usize,
        step: usize,
        detail: String,
    },
}

/// Transform a validated interface model into its explicit-state test model.
///
/// Produces one action per declared stimulus, enabled exactly in the states
/// whose cell is legal. Parameterized stimuli keep their parameters unbound
/// until [`expand_domains`] grounds them.
pub fn build_test_model(model: &InterfaceModel) -> Result<TestModel, TestgenError> {
    let report = model.validate();
    if !report.ok() {
        let summary = report
            .errors()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(TestgenError::InvalidModel(summary));
    }
    let index = model.rule_index();
    let mut actions = Vec::new();
    for decl in model.stimuli() {
        let mut rows = BTreeMap::new();
        for state in &model.states {
            if let Some(rule) = index.get(&(state.as_str(), decl.name.as_str())) {
                if let RuleOutcome::Legal(resp) = &rule.outcome {
                    rows.insert(
                        state.clone(),
                        ActionRow {
                            notifications: resp.notifications.clone(),
                            reply: resp.reply.clone(),
                            next: resp.target.clone(),
                        },
                    );
                }
            }
        }
        actions.push(TestAction {
            stimulus: GroundStimulus::bare(decl.name.clone()),
            params: decl.params.clone(),
            rows,
        });
    }
    Ok(TestModel {
        source: model.name.clone(),
        states: model.states.clone(),
        initial: model.initial.clone(),
        actions,
    })
}

/// Replay a suite on a graph and measure transition coverage.
///
/// Every case must be a legal path from the initial node whose step
/// expectations match the traversed edges; anything else is the
/// `illegal-replay` error naming the case and step.
pub fn coverage(suite: &TestSuite, graph: &StateGraph) -> Result<CoverageReport, TestgenError> {
    use std::collections::HashMap;
    let mut by_label: HashMap<(usize, &GroundStimulus), usize> = HashMap::new();
    for (i, e) in graph.edges.iter().enumerate() {
        by_label.insert((e.from, &e.stimulus), i);
    }
    let mut covered = vec![false; graph.edges.len()];
    for case in &suite.cases {
        let mut node = graph.initial;
        for (i, step) in case.steps.iter().enumerate() {
            let Some(&edge_idx) = by_label.get(&(node, &step.stimulus)) else {
                return Err(TestgenError::IllegalReplay {
                    case: case.id,
                    step: i + 1,
                    detail: format!(
                        "no edge for `{}` from state `{}`",
                        step.stimulus, graph.nodes[node]
                    ),
                });
            };
            let edge = &graph.edges[edge_idx];
            if edge.notifications != step.expect_notify || edge.reply != step.expect_reply {
                return Err(TestgenError::IllegalReplay {
                    case: case.id,
                    step: i + 1,
                    detail: format!(
                        "expectations for `{}` do not match the model edge",
                        step.stimulus
                    ),
                });
            }
            covered[edge_idx] = true;
            node = edge.to;
        }
    }
    let transitions_covered = covered.iter().filter(|c| **c).count();
    let uncovered = covered
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .map(|(i, _)| graph.edges[i].clone())
        .collect();
    Ok(CoverageReport {
        transitions_total: graph.edges.len(),
        transitions_covered,
        uncovered,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::model::InterfaceModel;
    use crate::text::parse;

    pub const ALARM: &str = r#"interface AlarmSystem {
  initial Deactivated;
  in activate; in deactivate; in triggered;
  out NI_Triggered;
  reply ok;
  state Deactivated { on activate -> Activated reply ok; on deactivate illegal; on triggered illegal; }
  state Activated   { on activate illegal; on deactivate -> Deactivated reply ok; on triggered -> Triggered notify NI_Triggered reply ok; }
  state Triggered   { on activate illegal; on deactivate -> Deactivated reply ok; on triggered illegal; }
}"#;

    pub fn alarm() -> InterfaceModel {
        parse(ALARM).unwrap()
    }

    pub fn all_illegal() -> InterfaceModel {
        parse(
            "interface Dead { initial S; in a; in b; in c; reply ok; \
             state S { on a illegal; on b illegal; on c illegal; } }",
        )
        .unwrap()
    }

    pub fn self_loop() -> InterfaceModel {
        parse(
            "interface Loop { initial S; in tick; reply ok; \
             state S { on tick -> S reply ok; } }",
        )
        .unwrap()
    }

    /// a -> b -> c line graph.
    pub fn line3() -> InterfaceModel {
        parse(
            "interface Line { initial A; in go; reply ok; \
             state A { on go -> B reply ok; } \
             state B { on go -> C reply ok; } \
             state C { on go illegal; } }",
        )
        .unwrap()
    }
}
