//! Finite value domains and grounding of parameterized actions.

use std::collections::{BTreeMap, BTreeSet};

use super::{GroundStimulus, TestAction, TestModel, TestgenError, Value};

/// How value tuples are drawn from the per-parameter domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Combination {
    /// Full product of all value lists.
    #[default]
    Cartesian,
    /// A subset in which every pair of values across any two parameters
    /// co-occurs in at least one tuple.
    Pairwise,
}

impl std::str::FromStr for Combination {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(Combination::Cartesian),
            "pairwise" => Ok(Combination::Pairwise),
            other => Err(format!("unknown combination `{other}`")),
        }
    }
}

/// Value assignments for every parameterized stimulus.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainSpec {
    /// (stimulus, parameter) → candidate values, in test order.
    pub assignments: BTreeMap<(String, String), Vec<Value>>,
    pub combination: Combination,
}

impl DomainSpec {
    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn assign(
        &mut self,
        stimulus: impl Into<String>,
        param: impl Into<String>,
        values: Vec<Value>,
    ) {
        self.assignments
            .insert((stimulus.into(), param.into()), values);
    }
}

/// Replace every parameterized action by ground instances drawn from the
/// domain spec; unparameterized actions pass through unchanged.
///
/// Cartesian combination enumerates the full product (rightmost parameter
/// varying fastest). Pairwise combination produces a smaller tuple set that
/// still covers every cross-parameter value pair at least once.
pub fn expand_domains(tm: &TestModel, spec: &DomainSpec) -> Result<TestModel, TestgenError> {
    let mut actions = Vec::new();
    for action in &tm.actions {
        if action.is_ground() {
            actions.push(action.clone());
            continue;
        }
        let name = &action.stimulus.name;
        let mut domains: Vec<&[Value]> = Vec::new();
        for param in &action.params {
            let values = spec
                .assignments
                .get(&(name.clone(), param.name.clone()))
                .ok_or_else(|| TestgenError::MissingDomain {
                    stimulus: name.clone(),
                    param: param.name.clone(),
                })?;
            if values.is_empty() {
                return Err(TestgenError::EmptyDomain {
                    stimulus: name.clone(),
                    param: param.name.clone(),
                });
            }
            domains.push(values);
        }
        let tuples = match spec.combination {
            Combination::Cartesian => cartesian_tuples(&domains),
            Combination::Pairwise => pairwise_tuples(&domains),
        };
        for tuple in tuples {
            actions.push(TestAction {
                stimulus: GroundStimulus {
                    name: name.clone(),
                    args: tuple,
                },
                params: Vec::new(),
                rows: action.rows.clone(),
            });
        }
    }
    Ok(TestModel {
        source: tm.source.clone(),
        states: tm.states.clone(),
        initial: tm.initial.clone(),
        actions,
    })
}

fn cartesian_tuples(domains: &[&[Value]]) -> Vec<Vec<Value>> {
    let mut tuples: Vec<Vec<Value>> = vec![Vec::new()];
    for values in domains {
        let mut next = Vec::with_capacity(tuples.len() * values.len());
        for tuple in &tuples {
            for v in *values {
                let mut t = tuple.clone();
                t.push(v.clone());
                next.push(t);
            }
        }
        tuples = next;
    }
    tuples
}

/// All-pairs tuple selection.
///
/// Two constructions, both deterministic: when every domain has the same
/// prime size q and there are at most q+1 parameters, the classic
/// orthogonal-array rows (i, j, i·m+j mod q) give the optimal q² tuples;
/// otherwise a greedy in-parameter-order extension covers the pairs, with
/// don't-care slots reused before new rows are added. Only coverage is
/// guaranteed in the greedy path, not minimality.
fn pairwise_tuples(domains: &[&[Value]]) -> Vec<Vec<Value>> {
    let k = domains.len();
    if k <= 2 {
        // Every pair across two parameters must co-occur, which is the
        // whole product anyway.
        return cartesian_tuples(domains);
    }
    let sizes: Vec<usize> = domains.iter().map(|d| d.len()).collect();
    let q = sizes[0];
    if sizes.iter().all(|&s| s == q) && is_prime(q) && k <= q + 1 {
        return orthogonal_rows(domains, q);
    }
    ipo_rows(domains)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn orthogonal_rows(domains: &[&[Value]], q: usize) -> Vec<Vec<Value>> {
    let k = domains.len();
    let mut rows = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            let mut row = Vec::with_capacity(k);
            row.push(domains[0][i].clone());
            row.push(domains[1][j].clone());
            for col in 2..k {
                let m = col - 1; // 1..=k-2, all distinct and nonzero mod q
                row.push(domains[col][(i * m + j) % q].clone());
            }
            rows.push(row);
        }
    }
    rows
}

/// Greedy in-parameter-order growth over value indices; `None` is a
/// don't-care slot that vertical growth may fill later.
fn ipo_rows(domains: &[&[Value]]) -> Vec<Vec<Value>> {
    let sizes: Vec<usize> = domains.iter().map(|d| d.len()).collect();
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    for a in 0..sizes[0] {
        for b in 0..sizes[1] {
            rows.push(vec![Some(a), Some(b)]);
        }
    }
    for p in 2..sizes.len() {
        // Pairs (earlier param, its value, value of p) still to cover.
        let mut uncovered: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for prev in 0..p {
            for pv in 0..sizes[prev] {
                for v in 0..sizes[p] {
                    uncovered.insert((prev, pv, v));
                }
            }
        }
        // Horizontal growth: extend every existing row with the value of p
        // covering the most new pairs.
        for row in rows.iter_mut() {
            let mut best = 0usize;
            let mut best_gain = 0usize;
            for v in 0..sizes[p] {
                let new_pairs = (0..p)
                    .filter(|&prev| {
                        row[prev].is_some_and(|pv| uncovered.contains(&(prev, pv, v)))
                    })
                    .count();
                if v == 0 || new_pairs > best_gain {
                    best_gain = new_pairs;
                    best = v;
                }
            }
            row.push(Some(best));
            for prev in 0..p {
                if let Some(pv) = row[prev] {
                    uncovered.remove(&(prev, pv, best));
                }
            }
        }
        // Vertical growth: satisfy leftover pairs, reusing don't-care slots
        // where possible.
        while let Some(&(prev, pv, v)) = uncovered.iter().next() {
            uncovered.remove(&(prev, pv, v));
            let mut placed = false;
            for row in rows.iter_mut() {
                if row[prev] == Some(pv) && row[p].is_none() {
                    row[p] = Some(v);
                    placed = true;
                } else if row[prev].is_none() && row[p] == Some(v) {
                    row[prev] = Some(pv);
                    placed = true;
                }
                if placed {
                    for q in 0..p {
                        if let Some(qv) = row[q] {
                            uncovered.remove(&(q, qv, v));
                        }
                    }
                    break;
                }
            }
            if !placed {
                let mut row = vec![None; p + 1];
                row[prev] = Some(pv);
                row[p] = Some(v);
                rows.push(row);
            }
        }
    }
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .map(|(col, slot)| domains[col][slot.unwrap_or(0)].clone())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgen::build_test_model;
    use crate::text::parse;

    fn ints(n: i64) -> Vec<Value> {
        (0..n).map(Value::Int).collect()
    }

    /// Brute-force all-pairs check over the generator output.
    fn covers_all_pairs(tuples: &[Vec<Value>], domains: &[&[Value]]) -> bool {
        for a in 0..domains.len() {
            for b in (a + 1)..domains.len() {
                for va in domains[a] {
                    for vb in domains[b] {
                        if !tuples.iter().any(|t| &t[a] == va && &t[b] == vb) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn parameterized_model(params: &str) -> TestModel {
        let src = format!(
            "interface P {{ initial S; in set({params}); reply ok; \
             state S {{ on set -> S reply ok; }} }}"
        );
        build_test_model(&parse(&src).unwrap()).unwrap()
    }

    #[test]
    fn cartesian_two_by_two() {
        let tm = parameterized_model("a:int,b:int");
        let mut spec = DomainSpec::default();
        spec.assign("set", "a", ints(2));
        spec.assign("set", "b", ints(2));
        let ground = expand_domains(&tm, &spec).unwrap();
        assert_eq!(ground.actions.len(), 4);
        let labels: Vec<String> = ground
            .actions
            .iter()
            .map(|a| a.stimulus.to_string())
            .collect();
        assert_eq!(labels, vec!["set(0,0)", "set(0,1)", "set(1,0)", "set(1,1)"]);
    }

    #[test]
    fn pairwise_three_cubed_is_nine_rows() {
        let tm = parameterized_model("a:int,b:int,c:int");
        let mut spec = DomainSpec {
            combination: Combination::Pairwise,
            ..Default::default()
        };
        spec.assign("set", "a", ints(3));
        spec.assign("set", "b", ints(3));
        spec.assign("set", "c", ints(3));
        let ground = expand_domains(&tm, &spec).unwrap();
        assert!(ground.actions.len() <= 9, "got {}", ground.actions.len());
        let tuples: Vec<Vec<Value>> = ground
            .actions
            .iter()
            .map(|a| a.stimulus.args.clone())
            .collect();
        let d = ints(3);
        let domains: Vec<&[Value]> = vec![&d, &d, &d];
        assert!(covers_all_pairs(&tuples, &domains));
    }

    #[test]
    fn pairwise_mixed_sizes_covers_all_pairs() {
        // Falls through to the greedy path: domains of unequal size.
        let d1 = ints(4);
        let d2 = ints(3);
        let d3 = ints(2);
        let d4 = ints(2);
        let domains: Vec<&[Value]> = vec![&d1, &d2, &d3, &d4];
        let tuples = pairwise_tuples(&domains);
        assert!(covers_all_pairs(&tuples, &domains));
        // Never worse than the full product.
        assert!(tuples.len() <= 4 * 3 * 2 * 2);
    }

    #[test]
    fn pairwise_two_params_is_full_product() {
        let d = ints(3);
        let domains: Vec<&[Value]> = vec![&d, &d];
        let tuples = pairwise_tuples(&domains);
        assert_eq!(tuples.len(), 9);
    }

    #[test]
    fn unparameterized_model_is_unchanged() {
        let tm = build_test_model(&crate::testgen::fixtures::alarm()).unwrap();
        let out = expand_domains(&tm, &DomainSpec::default()).unwrap();
        assert_eq!(out, tm);
    }

    #[test]
    fn missing_and_empty_domains_are_errors() {
        let tm = parameterized_model("a:int");
        let err = expand_domains(&tm, &DomainSpec::default()).unwrap_err();
        assert!(matches!(err, TestgenError::MissingDomain { .. }));

        let mut spec = DomainSpec::default();
        spec.assign("set", "a", vec![]);
        let err = expand_domains(&tm, &spec).unwrap_err();
        assert!(matches!(err, TestgenError::EmptyDomain { .. }));
    }

    #[test]
    fn single_param_grounds_one_action_per_value() {
        let tm = parameterized_model("a:int");
        let mut spec = DomainSpec::default();
        spec.assign("set", "a", ints(3));
        let ground = expand_domains(&tm, &spec).unwrap();
        assert_eq!(ground.actions.len(), 3);
    }

    #[test]
    fn string_values_ground_with_quoting() {
        let tm = parameterized_model("tag:string");
        let mut spec = DomainSpec::default();
        spec.assign(
            "set",
            "tag",
            vec![Value::Str("hi".into()), Value::Str("a\"b".into())],
        );
        let ground = expand_domains(&tm, &spec).unwrap();
        assert_eq!(ground.actions[1].stimulus.to_string(), r#"set("a\"b")"#);
    }

    proptest::proptest! {
        // Pair coverage holds across arbitrary small domain shapes.
        #[test]
        fn pairwise_always_covers(sizes in proptest::collection::vec(2usize..5, 2..5)) {
            let storage: Vec<Vec<Value>> =
                sizes.iter().map(|&s| ints(s as i64)).collect();
            let domains: Vec<&[Value]> = storage.iter().map(|v| v.as_slice()).collect();
            let tuples = pairwise_tuples(&domains);
            proptest::prop_assert!(covers_all_pairs(&tuples, &domains));
        }
    }
}
