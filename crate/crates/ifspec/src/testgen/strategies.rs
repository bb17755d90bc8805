//! Suite-generation strategies over an explored state graph.
//!
//! All three generators are pure functions of their inputs and seed, and
//! the covering strategies guarantee 100% transition coverage whenever
//! their length preconditions hold:
//!
//! - `shorttests`: many short cases; each starts with the shortest path
//!   from the initial node to the nearest uncovered edge, then extends
//!   greedily through adjacent uncovered edges up to `max_len`.
//! - `longtests`: one or few long covering walks; each repeatedly appends
//!   the shortest path to the nearest uncovered edge and starts a new case
//!   only when no uncovered edge is reachable any more (or the length
//!   budget is hit).
//! - `random`: fixed-count uniform random walks, reproducible per seed.

use std::collections::VecDeque;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{StateGraph, TestCase, TestStep, TestSuite, TestgenError};

/// Result of [`filter_suite`]: the retained cases plus an `empty-result`
/// warning flag when nothing matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOutcome {
    pub suite: TestSuite,
    pub empty_result: bool,
}

/// Distances and BFS-tree parent edges from the initial node.
fn bfs_from_initial(g: &StateGraph, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut dist = vec![usize::MAX; g.nodes.len()];
    let mut parent_edge = vec![None; g.nodes.len()];
    let mut queue = VecDeque::new();
    dist[g.initial] = 0;
    queue.push_back(g.initial);
    while let Some(u) = queue.pop_front() {
        for &ei in &adj[u] {
            let v = g.edges[ei].to;
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent_edge[v] = Some(ei);
                queue.push_back(v);
            }
        }
    }
    (dist, parent_edge)
}

fn path_from_initial(g: &StateGraph, parent_edge: &[Option<usize>], node: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut cur = node;
    while let Some(ei) = parent_edge[cur] {
        path.push(ei);
        cur = g.edges[ei].from;
    }
    path.reverse();
    path
}

fn case_from_edges(g: &StateGraph, id: usize, edges: &[usize]) -> TestCase {
    TestCase {
        id,
        steps: edges
            .iter()
            .map(|&ei| TestStep::from_edge(&g.edges[ei]))
            .collect(),
    }
}

/// Generate a covering set of short cases.
///
/// Every edge must be reachable within `max_len` steps of the initial
/// node, otherwise the `unsatisfiable` error reports the first edge that
/// is not. The seed is recorded in the suite header; the construction
/// itself is deterministic.
pub fn gen_shorttests(
    g: &StateGraph,
    max_len: usize,
    seed: u64,
) -> Result<TestSuite, TestgenError> {
    if max_len == 0 {
        return Err(TestgenError::Unsatisfiable(
            "max_len must be at least 1".into(),
        ));
    }
    let adj = g.adjacency();
    let (dist, parent_edge) = bfs_from_initial(g, &adj);
    for (ei, e) in g.edges.iter().enumerate() {
        if dist[e.from].saturating_add(1) > max_len {
            return Err(TestgenError::Unsatisfiable(format!(
                "edge {} is {} steps from the initial state but max_len is {max_len}",
                g.describe_edge(ei),
                dist[e.from] + 1,
            )));
        }
    }

    // Edges grouped by distance of their source from the initial node;
    // always target the nearest uncovered edge next.
    let max_dist = g.edges.iter().map(|e| dist[e.from]).max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_dist + 1];
    for (ei, e) in g.edges.iter().enumerate() {
        buckets[dist[e.from]].push(ei);
    }

    let mut covered = vec![false; g.edges.len()];
    // Per-node cursor over out-edges: everything before it is covered.
    let mut cursor = vec![0usize; g.nodes.len()];
    let mut cases = Vec::new();

    for bucket in &buckets {
        for &target in bucket {
            if covered[target] {
                continue;
            }
            let mut walk = path_from_initial(g, &parent_edge, g.edges[target].from);
            walk.push(target);
            for &ei in &walk {
                covered[ei] = true;
            }
            // Greedy extension through adjacent uncovered edges.
            let mut cur = g.edges[target].to;
            while walk.len() < max_len {
                let outs = &adj[cur];
                while cursor[cur] < outs.len() && covered[outs[cursor[cur]]] {
                    cursor[cur] += 1;
                }
                if cursor[cur] >= outs.len() {
                    break;
                }
                let ei = outs[cursor[cur]];
                covered[ei] = true;
                walk.push(ei);
                cur = g.edges[ei].to;
            }
            cases.push(case_from_edges(g, cases.len() + 1, &walk));
        }
    }

    Ok(TestSuite {
        model: g.model.clone(),
        strategy: "shorttests".into(),
        seed,
        cases,
    })
}

/// Generate one or few long covering walks.
///
/// `max_len` should be at least the edge count; the walk revisits covered
/// edges freely while chasing the nearest uncovered one, so a case may be
/// longer than the number of edges it newly covers. If no progress can be
/// made within the budget the `unsatisfiable` error carries diagnostics.
pub fn gen_longtests(g: &StateGraph, max_len: usize, seed: u64) -> Result<TestSuite, TestgenError> {
    if max_len == 0 {
        return Err(TestgenError::Unsatisfiable(
            "max_len must be at least 1".into(),
        ));
    }
    let adj = g.adjacency();
    let mut covered = vec![false; g.edges.len()];
    let mut remaining = g.edges.len();
    let mut cases: Vec<TestCase> = Vec::new();

    while remaining > 0 {
        let mut walk: Vec<usize> = Vec::new();
        let mut cur = g.initial;
        loop {
            // Shortest path from `cur` to the nearest uncovered edge,
            // walking covered edges freely.
            let Some((path, target)) = nearest_uncovered(g, &adj, &covered, cur) else {
                break;
            };
            if walk.len() + path.len() + 1 > max_len {
                break;
            }
            for &ei in &path {
                if !covered[ei] {
                    covered[ei] = false; // path edges are covered below
                }
            }
            for &ei in path.iter().chain(std::iter::once(&target)) {
                if !covered[ei] {
                    covered[ei] = true;
                    remaining -= 1;
                }
                walk.push(ei);
            }
            cur = g.edges[target].to;
        }
        if walk.is_empty() {
            let detail = match nearest_uncovered(g, &adj, &covered, g.initial) {
                Some((path, target)) => format!(
                    "edge {} needs {} steps but max_len is {max_len}",
                    g.describe_edge(target),
                    path.len() + 1,
                ),
                None => "remaining edges are unreachable from the initial state".into(),
            };
            return Err(TestgenError::Unsatisfiable(detail));
        }
        cases.push(case_from_edges(g, cases.len() + 1, &walk));
    }

    Ok(TestSuite {
        model: g.model.clone(),
        strategy: "longtests".into(),
        seed,
        cases,
    })
}

/// BFS from `start` to the closest node with an uncovered out-edge; ties
/// break on BFS visit order, then edge order. Returns the path of edges to
/// that node plus the uncovered edge itself.
fn nearest_uncovered(
    g: &StateGraph,
    adj: &[Vec<usize>],
    covered: &[bool],
    start: usize,
) -> Option<(Vec<usize>, usize)> {
    let first_uncovered = |node: usize| adj[node].iter().copied().find(|&ei| !covered[ei]);

    let mut parent: Vec<Option<usize>> = vec![None; g.nodes.len()];
    let mut seen = vec![false; g.nodes.len()];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        if let Some(target) = first_uncovered(u) {
            let mut path = Vec::new();
            let mut cur = u;
            while cur != start {
                let ei = parent[cur].expect("BFS parent chain");
                path.push(ei);
                cur = g.edges[ei].from;
            }
            path.reverse();
            return Some((path, target));
        }
        for &ei in &adj[u] {
            let v = g.edges[ei].to;
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(ei);
                queue.push_back(v);
            }
        }
    }
    None
}

/// Fixed-count uniform random walks of exactly `len` steps (shorter only
/// when a dead-end state is hit). Reproducible for a given seed; walks
/// that cannot take a single step are dropped.
pub fn gen_random(g: &StateGraph, n_cases: usize, len: usize, seed: u64) -> TestSuite {
    let adj = g.adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..n_cases {
        let mut walk = Vec::new();
        let mut cur = g.initial;
        for _ in 0..len {
            let outs = &adj[cur];
            if outs.is_empty() {
                break;
            }
            let ei = outs[rng.gen_range(0..outs.len())];
            walk.push(ei);
            cur = g.edges[ei].to;
        }
        if !walk.is_empty() {
            cases.push(case_from_edges(g, cases.len() + 1, &walk));
        }
    }
    TestSuite {
        model: g.model.clone(),
        strategy: "random".into(),
        seed,
        cases,
    }
}

/// Keep exactly the cases containing at least one step whose stimulus name
/// equals `must_include`; case ids are preserved.
pub fn filter_suite(suite: &TestSuite, must_include: &str) -> FilterOutcome {
    let cases: Vec<TestCase> = suite
        .cases
        .iter()
        .filter(|c| c.steps.iter().any(|s| s.stimulus.name == must_include))
        .cloned()
        .collect();
    let empty_result = cases.is_empty();
    FilterOutcome {
        suite: TestSuite {
            model: suite.model.clone(),
            strategy: suite.strategy.clone(),
            seed: suite.seed,
            cases,
        },
        empty_result,
    }
}
