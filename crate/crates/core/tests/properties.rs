use std::collections::BTreeSet;

use linaut::random::random_automaton;
use linaut::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn automaton(seed: u64) -> LinearAutomaton {
    random_automaton(&mut StdRng::seed_from_u64(seed), 6, 3)
}

/// A deterministic automaton with some transitions removed.
fn partial_automaton(seed: u64) -> LinearAutomaton {
    let full = automaton(seed);
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let kept: Vec<Transition> = full
        .transitions()
        .into_iter()
        .filter(|_| rng.gen_bool(0.7))
        .collect();
    LinearAutomaton::new(
        full.alphabet().clone(),
        full.state_names().to_vec(),
        full.name(full.initial()),
        &full.accepting_names(),
        &kept,
    )
    .unwrap()
}

fn random_word(rng: &mut StdRng, alphabet: &Alphabet, max: usize) -> String {
    let len = rng.gen_range(0..=max);
    (0..len)
        .map(|_| alphabet.letters()[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// A valid spec with up to four classes over `{a, b}`.
fn random_spec(seed: u64) -> BCSpec {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let sides: Vec<(bool, bool)> = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => (true, false),
            1 => (false, true),
            _ => (true, true),
        })
        .collect();
    let present: Vec<SideRef> = sides
        .iter()
        .enumerate()
        .flat_map(|(i, &(l, r))| {
            let id = format!("C{i}");
            [(l, Side::Left), (r, Side::Right)]
                .into_iter()
                .filter(|(p, _)| *p)
                .map(move |(_, s)| SideRef::new(&id, s))
        })
        .collect();
    let pick = |rng: &mut StdRng| present[rng.gen_range(0..present.len())].clone();
    let mut classes = Vec::new();
    for (i, &(l, r)) in sides.iter().enumerate() {
        let map = |rng: &mut StdRng| -> linaut::synth::SideMap {
            ['a', 'b'].into_iter().map(|c| (c, pick(rng))).collect()
        };
        let left = l.then(|| map(&mut rng));
        let right = r.then(|| map(&mut rng));
        classes.push(ClassSpec {
            id: format!("C{i}"),
            accepting: rng.gen_bool(0.5),
            left,
            right,
        });
    }
    let initial = present[seed as usize % present.len()].clone();
    BCSpec {
        alphabet: Alphabet::new(['a', 'b']).unwrap(),
        initial,
        classes,
    }
}

fn b() -> Budget {
    Budget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deterministic_states_use_one_head(seed in any::<u64>()) {
        let a = partial_automaton(seed);
        prop_assert!(validate_deterministic(&a).ok());
        for q in a.state_ids() {
            let heads: BTreeSet<Head> = a
                .transitions()
                .iter()
                .filter(|t| t.from == a.name(q))
                .map(|t| t.head)
                .collect();
            prop_assert!(heads.len() <= 1);
        }
    }

    #[test]
    fn sink_completion_preserves_language(seed in any::<u64>()) {
        let a = partial_automaton(seed);
        let done = complete_with_sink(&a).unwrap();
        prop_assert!(validate_complete(&done, false).unwrap().ok());
        prop_assert_eq!(complete_with_sink(&done).unwrap(), done.clone());
        prop_assert!(equiv_bounded(&a, &done, 6, b()).unwrap().equivalent_up_to);
        let before: BTreeSet<String> =
            reachable_states(&a).iter().map(|&q| a.name(q).to_string()).collect();
        let after: BTreeSet<String> =
            reachable_states(&done).iter().map(|&q| done.name(q).to_string()).collect();
        prop_assert!(after.is_superset(&before));
    }

    #[test]
    fn complement_flips_every_word(seed in any::<u64>()) {
        let a = complete_with_sink(&partial_automaton(seed)).unwrap();
        let co = complement(&a).unwrap();
        for w in a.alphabet().words(5) {
            prop_assert!(run(&a, &w).unwrap().accepted ^ run(&co, &w).unwrap().accepted);
        }
    }

    #[test]
    fn runs_split_their_input(seed in any::<u64>(), wseed in any::<u64>()) {
        let a = partial_automaton(seed);
        let mut rng = StdRng::seed_from_u64(wseed);
        for _ in 0..20 {
            let w = random_word(&mut rng, a.alphabet(), 8);
            let t = run(&a, &w).unwrap();
            let rest: String = match t.stuck {
                Some(c) => w.chars().skip(c.lo).take(c.hi - c.lo).collect(),
                None => String::new(),
            };
            prop_assert_eq!(t.split.wrap(&rest), w.clone());
            if t.stuck.is_none() {
                prop_assert_eq!(t.steps.len(), w.chars().count());
            }
            prop_assert_eq!(run(&a, &w).unwrap(), t);
        }
    }

    #[test]
    fn prefix_stability_holds(seed in any::<u64>(), wseed in any::<u64>()) {
        let a = automaton(seed);
        let middles: Vec<String> = a.alphabet().words(4).collect();
        let mut rng = StdRng::seed_from_u64(wseed);
        for _ in 0..8 {
            let w = random_word(&mut rng, a.alphabet(), 6);
            let report = check_prefix_stability(&a, &w, &middles).unwrap();
            prop_assert!(report.ok(), "{:?}", report);
        }
    }

    #[test]
    fn steps_are_unique_on_complete_runs(seed in any::<u64>(), wseed in any::<u64>()) {
        let a = automaton(seed);
        let mut rng = StdRng::seed_from_u64(wseed);
        let w = random_word(&mut rng, a.alphabet(), 8);
        let input: Vec<char> = w.chars().collect();
        let mut c = Configuration::start(a.initial(), input.len());
        while !c.heads_met() {
            let next = step(&a, c, &input);
            prop_assert_eq!(next.len(), 1);
            c = next[0].0;
        }
    }

    #[test]
    fn enumeration_agrees_with_runs(seed in any::<u64>()) {
        let a = automaton(seed);
        let bc = enumerate_pseudo_bc(&a, 5).unwrap();
        for (p, class) in &bc.assignment {
            let t = run(&a, &p.word()).unwrap();
            prop_assert_eq!(&t.split, p);
            prop_assert_eq!(a.name(t.final_state), class.as_str());
        }
        // every word is represented by its run's split
        for w in a.alphabet().words(5) {
            let split = unique_split(&a, &w).unwrap();
            prop_assert!(bc.assignment.contains_key(&split));
        }
    }

    #[test]
    fn enumerated_presus_are_complete_and_crossing_free(seed in any::<u64>(), bound in 0usize..=6) {
        let a = automaton(seed);
        let presus = enumerate_pseudo_bc(&a, bound).unwrap().presus();
        let report = check_bc(&presus, a.alphabet(), bound);
        prop_assert!(report.complete_up_to, "{:?}", report.missing_or_duplicated);
        prop_assert!(report.crossing_pairs.is_empty(), "{:?}", report.crossing_pairs);
    }

    #[test]
    fn enumeration_is_monotone(seed in any::<u64>(), bound in 0usize..5) {
        let a = automaton(seed);
        let small = enumerate_pseudo_bc(&a, bound).unwrap();
        let large = enumerate_pseudo_bc(&a, bound + 1).unwrap();
        for (p, class) in &small.assignment {
            prop_assert_eq!(large.assignment.get(p), Some(class));
        }
    }

    #[test]
    fn merged_classes_are_sound(seed in any::<u64>()) {
        let a = automaton(seed);
        let bc = enumerate_pseudo_bc(&a, 4).unwrap();
        let merged = merge_classes(&bc, &a, 4, b()).unwrap();
        prop_assert!(index_of(&merged) <= index_of(&bc));
        let presus = merged.presus();
        prop_assert_eq!(&presus, &bc.presus());
        prop_assert!(check_bc(&presus, a.alphabet(), 4).ok());
        let lang = oracle::AutomatonLanguage(&a);
        for class in &merged.classes {
            let first = &class.presus[0];
            for other in class.presus.iter().take(6) {
                prop_assert!(presu_equiv_bounded(&lang, first, other, 4, b()).unwrap().equivalent_up_to);
            }
        }
    }

    #[test]
    fn synthesized_automata_have_two_states_per_class(seed in any::<u64>()) {
        let spec = random_spec(seed);
        prop_assert!(validate_bc_spec(&spec).ok());
        let built = build_automaton(&spec).unwrap();
        let a = &built.automaton;
        prop_assert!(a.num_states() <= 2 * spec.classes.len());
        prop_assert!(validate_deterministic(a).ok());
        prop_assert!(validate_complete(a, false).unwrap().ok());
        for q in a.state_ids() {
            prop_assert!(a.active_head(q).is_some());
        }
        for w in spec.alphabet.words(6) {
            let side = spec.follow(&w).unwrap();
            let t = run(a, &w).unwrap();
            prop_assert_eq!(a.name(t.final_state), built.state_of[&side].as_str());
        }
        // enumerating the built automaton recovers the spec's sides
        let bc = enumerate_pseudo_bc(a, 4).unwrap();
        for (p, state) in &bc.assignment {
            let side = spec.follow(&p.word()).unwrap();
            prop_assert_eq!(&built.state_of[&side], state);
        }
    }

    #[test]
    fn roundtrip_random_automata(seed in any::<u64>()) {
        let a = automaton(seed);
        prop_assert!(roundtrip_check(&a, 7, 6, b()).unwrap().ok());
    }

    #[test]
    fn presu_equivalence_relation(seed in any::<u64>()) {
        let a = automaton(seed);
        let lang = oracle::AutomatonLanguage(&a);
        let mut rng = StdRng::seed_from_u64(seed);
        let p1 = Presu::new(random_word(&mut rng, a.alphabet(), 2), random_word(&mut rng, a.alphabet(), 2));
        let p2 = Presu::new(random_word(&mut rng, a.alphabet(), 2), random_word(&mut rng, a.alphabet(), 2));
        prop_assert!(presu_equiv_bounded(&lang, &p1, &p1, 3, b()).unwrap().equivalent_up_to);
        let v12 = presu_equiv_bounded(&lang, &p1, &p2, 3, b()).unwrap();
        let v21 = presu_equiv_bounded(&lang, &p2, &p1, 3, b()).unwrap();
        prop_assert_eq!(v12.equivalent_up_to, v21.equivalent_up_to);
        if let Some(w) = &v12.witness {
            prop_assert_ne!(run(&a, &p1.wrap(w)).unwrap().accepted, run(&a, &p2.wrap(w)).unwrap().accepted);
            prop_assert!(!presu_equiv_bounded(&lang, &p1, &p2, 5, b()).unwrap().equivalent_up_to);
        }
    }

    #[test]
    fn state_and_presu_equivalence_agree(seed in any::<u64>()) {
        let a = automaton(seed);
        let lang = oracle::AutomatonLanguage(&a);
        let bc = enumerate_pseudo_bc(&a, 3).unwrap();
        let samples: Vec<(&Presu, &String)> = bc.assignment.iter().step_by(5).take(8).collect();
        for (p1, s1) in &samples {
            for (p2, s2) in &samples {
                let by_state = state_equiv_bounded(&a, a.state(s1).unwrap(), a.state(s2).unwrap(), 4, b()).unwrap();
                let by_presu = presu_equiv_bounded(&lang, p1, p2, 4, b()).unwrap();
                prop_assert_eq!(by_state.equivalent_up_to, by_presu.equivalent_up_to);
            }
        }
    }

    #[test]
    fn schedule_prefixes(m in 0u32..5, n in 1u32..5, len in 0usize..40) {
        let r = Rate::new(m, n).unwrap();
        let (m, n) = (r.right_steps() as usize, r.left_steps() as usize);
        let s = schedule_for(r, len);
        prop_assert_eq!(s.len(), len);
        prop_assert_eq!(&schedule_for(r, len + 1)[..len], &s[..]);
        for i in 0..=len {
            let lefts = s[..i].iter().filter(|&&h| h == Head::Left).count();
            prop_assert!(lefts >= n * (i / (m + n)));
            prop_assert!(lefts <= n * i.div_ceil(m + n) + n);
        }
    }

    #[test]
    fn regular_rate_means_left_states_only(seed in any::<u64>()) {
        let a = automaton(seed);
        let words: Vec<String> = a.alphabet().words(4).collect();
        let conformant = check_conformance(&a, Rate::new(0, 1).unwrap(), &words).unwrap().is_empty();
        let all_left = words.iter().all(|w| {
            run(&a, w).unwrap().steps.iter().all(|s| a.active_head(s.from) == Some(Head::Left))
        });
        prop_assert_eq!(conformant, all_left);
    }
}

#[test]
fn growth_probe_is_monotone() {
    let lang = Builtin::new(BuiltinKind::AnBnCn);
    let mut last = 0;
    for big_b in 1..=3 {
        let cells = class_growth_probe(&lang, "a", "c", big_b, 6, b()).unwrap();
        assert!(cells >= last);
        last = cells;
    }
    let pal = Builtin::new(BuiltinKind::Palindromes);
    let mut last = 0;
    for mid in 0..=5 {
        let cells = class_growth_probe(&pal, "a", "b", 2, mid, b()).unwrap();
        assert!(cells >= last);
        last = cells;
    }
}

#[test]
fn every_fixture_roundtrips() {
    use linaut::fixtures::*;
    use linaut::io::*;
    for text in [PAL3_JSON, THREE_RATE_JSON, EVENPAL_JSON] {
        let a = parse_automaton(text).unwrap();
        assert!(validate_deterministic(&a).ok());
        assert_eq!(serialize_automaton(&a), text);
    }
    for text in [EVENPAL_SPEC_JSON, THREE_RATE_SPEC_JSON] {
        assert_eq!(serialize_bc_spec(&parse_bc_spec(text).unwrap()), text);
    }
}

#[test]
fn evenpal_build_matches_golden_file() {
    let golden = include_str!("../fixtures/evenpal_built.json");
    let built = build_automaton(&fixtures::evenpal_spec()).unwrap();
    assert_eq!(linaut::io::serialize_automaton(&built.automaton), golden);
}
