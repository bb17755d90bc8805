//! Bounded construction of the reachable state graph of a test model.

use std::collections::HashMap;

use super::{GraphEdge, StateGraph, TestModel, TestgenError};

/// Breadth-first exploration from the initial state over enabled ground
/// actions.
///
/// Nodes are numbered in discovery order (the initial state is node 0) and
/// edges are emitted in (source insertion order, action order), so the
/// result is identical across runs. Exploration stops with
/// `state-budget-exceeded` as soon as more than `max_states` states are
/// discovered; every action must already be ground.
pub fn explore(tm: &TestModel, max_states: usize) -> Result<StateGraph, TestgenError> {
    if let Some(action) = tm.actions.iter().find(|a| !a.is_ground()) {
        return Err(TestgenError::UngroundedAction(action.stimulus.name.clone()));
    }
    if max_states == 0 {
        return Err(TestgenError::StateBudgetExceeded { limit: 0 });
    }

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<GraphEdge> = Vec::new();

    ids.insert(tm.initial.clone(), 0);
    nodes.push(tm.initial.clone());

    let mut next = 0usize;
    while next < nodes.len() {
        let from = next;
        next += 1;
        // `nodes` grows while we scan, so index instead of borrowing.
        let state = nodes[from].clone();
        for action in &tm.actions {
            let Some(row) = action.rows.get(&state) else {
                continue;
            };
            let to = match ids.get(row.next.as_str()) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= max_states {
                        return Err(TestgenError::StateBudgetExceeded { limit: max_states });
                    }
                    let id = nodes.len();
                    nodes.push(row.next.clone());
                    ids.insert(row.next.clone(), id);
                    id
                }
            };
            edges.push(GraphEdge {
                from,
                stimulus: action.stimulus.clone(),
                notifications: row.notifications.clone(),
                reply: row.reply.clone(),
                to,
            });
        }
    }

    Ok(StateGraph {
        model: tm.source.clone(),
        nodes,
        initial: 0,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgen::fixtures::*;
    use crate::testgen::{build_test_model, GroundStimulus};

    fn graph_of(model: &crate::model::InterfaceModel) -> StateGraph {
        explore(&build_test_model(model).unwrap(), 1 << 20).unwrap()
    }

    #[test]
    fn alarm_graph_counts() {
        // Enumeration over the fixture table: 3 reachable states and 4
        // legal cells among them.
        let g = graph_of(&alarm());
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.nodes[g.initial], "Deactivated");
        // BFS discovery order.
        assert_eq!(g.nodes, vec!["Deactivated", "Activated", "Triggered"]);
    }

    #[test]
    fn alarm_graph_edges_match_legal_transitions() {
        let model = alarm();
        let g = graph_of(&model);
        let mut from_graph: Vec<(String, String, String)> = g
            .edges
            .iter()
            .map(|e| {
                (
                    g.nodes[e.from].clone(),
                    e.stimulus.to_string(),
                    g.nodes[e.to].clone(),
                )
            })
            .collect();
        from_graph.sort();
        let mut from_table: Vec<(String, String, String)> = model
            .legal_transitions()
            .into_iter()
            .map(|(s, e, o)| match o {
                crate::model::StepOutcome::Taken { next, .. } => (s, e, next),
                crate::model::StepOutcome::Illegal => unreachable!(),
            })
            .collect();
        from_table.sort();
        assert_eq!(from_graph, from_table);
    }

    #[test]
    fn all_illegal_graph_is_single_node() {
        let g = graph_of(&all_illegal());
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let g = build_test_model(&line3()).unwrap();
        assert!(matches!(
            explore(&g, 2),
            Err(TestgenError::StateBudgetExceeded { limit: 2 })
        ));
        assert!(explore(&g, 3).is_ok());
    }

    #[test]
    fn ungrounded_action_is_rejected() {
        let m = crate::text::parse(
            "interface P { initial S; in set(x:int); reply ok; \
             state S { on set -> S reply ok; } }",
        )
        .unwrap();
        let tm = build_test_model(&m).unwrap();
        assert!(matches!(
            explore(&tm, 10),
            Err(TestgenError::UngroundedAction(name)) if name == "set"
        ));
    }

    #[test]
    fn ground_actions_multiply_edges_not_nodes() {
        let m = crate::text::parse(
            "interface P { initial S; in set(x:int); reply ok; \
             state S { on set -> S reply ok; } }",
        )
        .unwrap();
        let tm = build_test_model(&m).unwrap();
        let mut spec = crate::testgen::DomainSpec::default();
        spec.assign(
            "set",
            "x",
            (0..4).map(crate::testgen::Value::Int).collect(),
        );
        let ground = crate::testgen::expand_domains(&tm, &spec).unwrap();
        let g = explore(&ground, 10).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.edges[0].stimulus, GroundStimulus {
            name: "set".into(),
            args: vec![crate::testgen::Value::Int(0)],
        });
    }
}
