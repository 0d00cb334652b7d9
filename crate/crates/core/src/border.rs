//! Border classifications: classes of prefix-suffix pairs induced by a
//! complete deterministic linear automaton, and the completeness and
//! crossing-pair checks that characterize the deterministic linear languages.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::automaton::{reachable_states, Head, LinearAutomaton, StateId};
use crate::error::Result;
use crate::oracle::{state_equiv_bounded, Budget};
use crate::word::{Alphabet, Presu};

/// One class of a pseudo BC. `id` is the name of the representative state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresuClass {
    pub id: String,
    pub states: Vec<String>,
    pub presus: Vec<Presu>,
}

/// A truncated pseudo border classification. Every assigned presu has total
/// length at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoBC {
    pub bound: usize,
    /// Set once classes were merged by bounded state equivalence.
    pub mid_bound: Option<usize>,
    /// Ordered by the declaration order of the representative state.
    pub classes: Vec<PresuClass>,
    pub class_of_state: BTreeMap<String, String>,
    pub assignment: BTreeMap<Presu, String>,
}

impl PseudoBC {
    pub fn presus(&self) -> BTreeSet<Presu> {
        self.assignment.keys().cloned().collect()
    }

    pub fn class(&self, id: &str) -> Option<&PresuClass> {
        self.classes.iter().find(|c| c.id == id)
    }

    pub fn class_of(&self, p: &Presu) -> Option<&str> {
        self.assignment.get(p).map(String::as_str)
    }
}

/// Breadth-first construction of the presu classes, level by level in total
/// presu length, stopping after level `bound`.
///
/// `(λ,λ)` lands in the class of the initial state. A presu `(u,v)` in the
/// class of a left-head state `q` yields `(ua,v)` in the class of `δ(q,a)`;
/// for a right-head state it yields `(u,av)`.
pub fn enumerate_pseudo_bc(a: &LinearAutomaton, bound: usize) -> Result<PseudoBC> {
    a.require_deterministic()?;
    a.require_complete(true)?;
    let mut by_state: Vec<Vec<Presu>> = vec![Vec::new(); a.num_states()];
    let mut level: Vec<(Presu, StateId)> = vec![(Presu::empty(), a.initial())];
    for depth in 0..=bound {
        let mut next = Vec::new();
        for (p, q) in level {
            if depth < bound {
                let head = a.active_head(q).expect("complete on reachable states");
                for &c in a.alphabet().letters() {
                    let to = a.targets(q, head, c)[0];
                    let child = match head {
                        Head::Left => Presu::new(format!("{}{c}", p.prefix), p.suffix.clone()),
                        Head::Right => Presu::new(p.prefix.clone(), format!("{c}{}", p.suffix)),
                    };
                    next.push((child, to));
                }
            }
            by_state[q.0].push(p);
        }
        level = next;
    }
    let alphabet = a.alphabet();
    let mut classes = Vec::new();
    let mut class_of_state = BTreeMap::new();
    let mut assignment = BTreeMap::new();
    for q in reachable_states(a) {
        let mut presus = std::mem::take(&mut by_state[q.0]);
        if presus.is_empty() {
            continue;
        }
        presus.sort_by(|x, y| alphabet.cmp_presus(x, y));
        let id = a.name(q).to_string();
        for p in &presus {
            assignment.insert(p.clone(), id.clone());
        }
        class_of_state.insert(id.clone(), id.clone());
        classes.push(PresuClass {
            id: id.clone(),
            states: vec![id],
            presus,
        });
    }
    Ok(PseudoBC {
        bound,
        mid_bound: None,
        classes,
        class_of_state,
        assignment,
    })
}

/// Findings of the completeness and crossing-pair checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BCCheckReport {
    /// Every enumerated word is matched by exactly one presu.
    pub complete_up_to: bool,
    pub missing_or_duplicated: Vec<(String, Vec<Presu>)>,
    pub crossing_pairs: Vec<(Presu, Presu)>,
}

impl BCCheckReport {
    pub fn ok(&self) -> bool {
        self.complete_up_to && self.crossing_pairs.is_empty()
    }
}

/// Reports every word of length at most `bound` that is represented by zero
/// or by several presus of the set.
pub fn check_complete(
    presus: &BTreeSet<Presu>,
    alphabet: &Alphabet,
    bound: usize,
) -> BCCheckReport {
    let mut missing_or_duplicated = Vec::new();
    for w in alphabet.words(bound) {
        let matches: Vec<Presu> = w
            .char_indices()
            .map(|(i, _)| i)
            .chain([w.len()])
            .map(|i| Presu::new(&w[..i], &w[i..]))
            .filter(|p| presus.contains(p))
            .collect();
        if matches.len() != 1 {
            missing_or_duplicated.push((w, matches));
        }
    }
    BCCheckReport {
        complete_up_to: missing_or_duplicated.is_empty(),
        missing_or_duplicated,
        crossing_pairs: Vec::new(),
    }
}

fn is_proper_prefix(short: &str, long: &str) -> bool {
    short.len() < long.len() && long.starts_with(short)
}

fn is_proper_suffix(short: &str, long: &str) -> bool {
    short.len() < long.len() && long.ends_with(short)
}

/// Lists every pair `((u₁,v₁),(u₂,v₂))` where `u₁` is a proper prefix of `u₂`
/// and `v₂` is a proper suffix of `v₁`.
pub fn check_crossing_free(presus: &BTreeSet<Presu>) -> BCCheckReport {
    let mut crossing_pairs = Vec::new();
    for p1 in presus {
        for p2 in presus {
            if is_proper_prefix(&p1.prefix, &p2.prefix) && is_proper_suffix(&p2.suffix, &p1.suffix)
            {
                crossing_pairs.push((p1.clone(), p2.clone()));
            }
        }
    }
    BCCheckReport {
        complete_up_to: true,
        missing_or_duplicated: Vec::new(),
        crossing_pairs,
    }
}

/// Both checks at once.
pub fn check_bc(presus: &BTreeSet<Presu>, alphabet: &Alphabet, bound: usize) -> BCCheckReport {
    let mut report = check_complete(presus, alphabet, bound);
    report.crossing_pairs = check_crossing_free(presus).crossing_pairs;
    report
}

/// Groups `states` by bounded equivalence. Groups are ordered by their first
/// state and each group lists its states in declaration order.
pub fn equivalent_state_groups(
    a: &LinearAutomaton,
    states: &[StateId],
    mid_bound: usize,
    budget: Budget,
) -> Result<Vec<Vec<StateId>>> {
    let mut states = states.to_vec();
    states.sort();
    let mut groups: Vec<Vec<StateId>> = Vec::new();
    for q in states {
        let mut home = None;
        for (i, g) in groups.iter().enumerate() {
            if state_equiv_bounded(a, g[0], q, mid_bound, budget)?.equivalent_up_to {
                home = Some(i);
                break;
            }
        }
        match home {
            Some(i) => groups[i].push(q),
            None => groups.push(vec![q]),
        }
    }
    Ok(groups)
}

/// Joins classes whose states accept the same middles up to `mid_bound`.
///
/// The result is only as exact as the bound: too small a bound can join
/// classes that a longer middle would separate.
pub fn merge_classes(
    p: &PseudoBC,
    a: &LinearAutomaton,
    mid_bound: usize,
    budget: Budget,
) -> Result<PseudoBC> {
    let state_of = |name: &str| a.state(name).expect("class states belong to the automaton");
    let reps: Vec<StateId> = p.classes.iter().map(|c| state_of(&c.id)).collect();
    let groups = equivalent_state_groups(a, &reps, mid_bound, budget)?;
    let alphabet = a.alphabet();
    let mut classes = Vec::new();
    let mut class_of_state = BTreeMap::new();
    let mut assignment = BTreeMap::new();
    for g in groups {
        let members: Vec<&PresuClass> = p
            .classes
            .iter()
            .filter(|c| g.contains(&state_of(&c.id)))
            .collect();
        let mut states: Vec<StateId> = members
            .iter()
            .flat_map(|c| c.states.iter().map(|s| state_of(s)))
            .collect();
        states.sort();
        let id = a.name(states[0]).to_string();
        let mut presus: Vec<Presu> = members
            .iter()
            .flat_map(|c| c.presus.iter().cloned())
            .collect();
        presus.sort_by(|x, y| alphabet.cmp_presus(x, y));
        for q in &states {
            class_of_state.insert(a.name(*q).to_string(), id.clone());
        }
        for q in &presus {
            assignment.insert(q.clone(), id.clone());
        }
        classes.push(PresuClass {
            id,
            states: states.iter().map(|&q| a.name(q).to_string()).collect(),
            presus,
        });
    }
    Ok(PseudoBC {
        bound: p.bound,
        mid_bound: Some(mid_bound),
        classes,
        class_of_state,
        assignment,
    })
}

/// Number of nonempty classes.
pub fn index_of(p: &PseudoBC) -> usize {
    p.classes.iter().filter(|c| !c.presus.is_empty()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::complete_with_sink;
    use crate::fixtures;
    use crate::runner::run;

    fn presus(list: &[(&str, &str)]) -> BTreeSet<Presu> {
        list.iter().map(|(u, v)| Presu::new(*u, *v)).collect()
    }

    /// Ω₁ = {(aⁿ,λ)}, truncated.
    fn omega1(bound: usize) -> BTreeSet<Presu> {
        (0..=bound).map(|n| Presu::new("a".repeat(n), "")).collect()
    }

    /// Ω₂ = C₁ ∪ C₂ ∪ C₃ with C₁ = (a*, b*), C₂ = (a*b*b, b*), C₃ = (a*, aa*b*),
    /// truncated by total length.
    fn omega2(bound: usize) -> BTreeSet<Presu> {
        let mut out = BTreeSet::new();
        for i in 0..=bound {
            for j in 0..=bound {
                for k in 0..=bound {
                    let a = "a".repeat(i);
                    let c1 = Presu::new(a.clone(), "b".repeat(j));
                    let c2 = Presu::new(format!("{a}{}b", "b".repeat(j)), "b".repeat(k));
                    let c3 = Presu::new(a.clone(), format!("a{}{}", "a".repeat(j), "b".repeat(k)));
                    for p in [c1, c2, c3] {
                        if p.len() <= bound {
                            out.insert(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn pal3_first_levels() {
        let pal3 = fixtures::pal3();
        let bc = enumerate_pseudo_bc(&pal3, 2).unwrap();
        let class = |u: &str, v: &str| bc.class_of(&Presu::new(u, v)).unwrap().to_string();
        assert_eq!(class("", ""), "q0");
        assert_eq!(class("a", ""), "q1");
        assert_eq!(class("b", ""), "q2");
        assert_eq!(class("c", ""), "q3");
        assert_eq!(class("a", "a"), "q0");
        assert_eq!(class("a", "b"), "q4");
        assert_eq!(class("a", "c"), "q4");
        assert_eq!(index_of(&bc), 5);
    }

    #[test]
    fn bound_zero_is_a_single_presu() {
        let bc = enumerate_pseudo_bc(&fixtures::evenpal(), 0).unwrap();
        assert_eq!(bc.assignment.len(), 1);
        assert_eq!(bc.class_of(&Presu::empty()), Some("q1"));
        assert_eq!(index_of(&bc), 1);
    }

    #[test]
    fn three_rate_places_1_000_with_p1() {
        let a = complete_with_sink(&fixtures::three_rate()).unwrap();
        let bc = enumerate_pseudo_bc(&a, 4).unwrap();
        assert_eq!(bc.class_of(&Presu::new("1", "000")), Some("p1"));
    }

    #[test]
    fn rejects_incomplete_automata() {
        let a = LinearAutomaton::new(
            Alphabet::new(['a']).unwrap(),
            vec!["q".into()],
            "q",
            &[],
            &[],
        )
        .unwrap();
        assert!(enumerate_pseudo_bc(&a, 2).is_err());
    }

    #[test]
    fn omega1_is_incomplete_but_crossing_free() {
        let ab = Alphabet::new(['a', 'b']).unwrap();
        let report = check_complete(&omega1(4), &ab, 4);
        assert!(!report.complete_up_to);
        assert!(report
            .missing_or_duplicated
            .iter()
            .any(|(w, m)| w == "aaab" && m.is_empty()));
        assert!(check_crossing_free(&omega1(5)).crossing_pairs.is_empty());
    }

    #[test]
    fn omega2_double_covers_ab() {
        let ab = Alphabet::new(['a', 'b']).unwrap();
        let report = check_complete(&omega2(2), &ab, 2);
        let (_, matches) = report
            .missing_or_duplicated
            .iter()
            .find(|(w, _)| w == "ab")
            .expect("ab is reported");
        // (λ,ab) ∈ C₃ as well
        assert_eq!(
            matches,
            &[
                Presu::new("", "ab"),
                Presu::new("a", "b"),
                Presu::new("ab", "")
            ]
        );
    }

    #[test]
    fn crossing_pair_example() {
        let set = presus(&[("aaa", "b"), ("a", "abb")]);
        assert_eq!(
            check_crossing_free(&set).crossing_pairs,
            [(Presu::new("a", "abb"), Presu::new("aaa", "b"))]
        );
        assert!(check_crossing_free(&BTreeSet::new())
            .crossing_pairs
            .is_empty());
        assert!(check_crossing_free(&omega2(4))
            .crossing_pairs
            .contains(&(Presu::new("a", "abb"), Presu::new("aaa", "b"))));
    }

    #[test]
    fn pal3_presus_are_complete_and_crossing_free() {
        let pal3 = fixtures::pal3();
        let bc3 = enumerate_pseudo_bc(&pal3, 3).unwrap();
        assert!(check_complete(&bc3.presus(), pal3.alphabet(), 3).complete_up_to);
        let bc4 = enumerate_pseudo_bc(&pal3, 4).unwrap();
        assert!(check_crossing_free(&bc4.presus()).crossing_pairs.is_empty());
    }

    #[test]
    fn assignment_matches_runs() {
        for a in [
            fixtures::pal3(),
            fixtures::evenpal(),
            fixtures::three_rate(),
        ] {
            let bc = enumerate_pseudo_bc(&a, 5).unwrap();
            for (p, class) in &bc.assignment {
                let t = run(&a, &p.word()).unwrap();
                assert_eq!(&t.split, p);
                assert_eq!(a.name(t.final_state), class);
            }
        }
    }

    #[test]
    fn pal3_has_no_merges() {
        let pal3 = fixtures::pal3();
        let bc = enumerate_pseudo_bc(&pal3, 4).unwrap();
        let merged = merge_classes(&bc, &pal3, 4, Budget::default()).unwrap();
        assert_eq!(index_of(&merged), 5);
        assert_eq!(merged.mid_bound, Some(4));
    }

    #[test]
    fn evenpal_merges_q1_p1_and_q3_p3() {
        let a = fixtures::evenpal();
        let bc = enumerate_pseudo_bc(&a, 6).unwrap();
        assert_eq!(index_of(&bc), 10);
        let merged = merge_classes(&bc, &a, 6, Budget::default()).unwrap();
        assert_eq!(index_of(&merged), 8);
        assert_eq!(merged.class_of_state["p1"], "q1");
        assert_eq!(merged.class_of_state["p3"], "q3");
        let q1 = merged.class("q1").unwrap();
        assert_eq!(q1.states, ["q1", "p1"]);
        assert_eq!(merged.presus(), bc.presus());
        for (p, id) in &bc.assignment {
            assert_eq!(&merged.assignment[p], &merged.class_of_state[id]);
        }
    }

    #[test]
    fn single_class_unchanged_by_merge() {
        let a = LinearAutomaton::new(
            Alphabet::new(['a', 'b']).unwrap(),
            vec!["all".into()],
            "all",
            &["all".to_string()],
            &[
                crate::Transition::new("all", Head::Left, 'a', "all"),
                crate::Transition::new("all", Head::Left, 'b', "all"),
            ],
        )
        .unwrap();
        let bc = enumerate_pseudo_bc(&a, 3).unwrap();
        let merged = merge_classes(&bc, &a, 3, Budget::default()).unwrap();
        assert_eq!(merged.classes, bc.classes);
        assert_eq!(index_of(&merged), 1);
    }
}
