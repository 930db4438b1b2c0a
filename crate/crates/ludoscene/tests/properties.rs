//! Cross-module invariants: serialization round-trips, parser robustness,
//! determinism, capillarity monotonicity and locality, detector monotonicity
//! under insertions, universal-rule coverage mutations, generator coverage.

mod common;

use common::oracle;
use ludoscene::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn ident(s: &str) -> Identifier {
    Identifier::new(s).unwrap()
}

// ---------------------------------------------------------------------------
// round-trips

#[test]
fn round_trip_identity_over_seeded_scenarios() {
    for seed in 0..500u64 {
        let scenario = random_scenario(seed, 30);
        let text = serialize(&scenario).expect("generated scenarios are clean");
        let parsed = parse(&text).expect("canonical text parses");
        assert_eq!(parsed, scenario, "seed {seed}: parse(serialize(s)) != s");
        let again = serialize(&parsed).expect("still clean");
        assert_eq!(again, text, "seed {seed}: serialization not idempotent");
    }
}

#[test]
fn resolve_is_stable_across_round_trip() {
    let scenario = fixture_scenario(FixtureName::Ls);
    let text = serialize(&scenario).unwrap();
    let reparsed = parse(&text).unwrap();
    for (_, element) in scenario.walk_elements() {
        let id = element.id();
        assert_eq!(reparsed.resolve(id), scenario.resolve(id), "{id}");
    }
}

proptest! {
    // arbitrary bytes never panic the parser; they parse or fail cleanly
    #[test]
    fn parse_never_panics_on_arbitrary_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..2048)) {
        let _ = parse_bytes(&bytes);
    }

    // JSON-shaped garbage exercises the walker deeper than raw bytes
    #[test]
    fn parse_never_panics_on_json_values(value in proptest_json()) {
        let _ = parse(&value);
    }
}

/// Random JSON text built from the document's own vocabulary, so the walker
/// sees plausible but broken structures.
fn proptest_json() -> impl Strategy<Value = String> {
    let key = prop::sample::select(vec![
        "meta", "competences", "participants", "characters", "pedagogical", "ludic",
        "orderings", "documents", "id", "kind", "members", "stages", "edges", "branches",
    ]);
    let scalar = prop_oneof![
        Just("\"x\"".to_owned()),
        Just("\"teaser\"".to_owned()),
        Just("[]".to_owned()),
        Just("{}".to_owned()),
        Just("0".to_owned()),
        Just("-1".to_owned()),
        Just("null".to_owned()),
        Just("true".to_owned()),
    ];
    proptest::collection::vec((key, scalar), 0..6).prop_map(|fields| {
        let body: Vec<String> =
            fields.into_iter().map(|(k, v)| format!("\"{k}\": {v}")).collect();
        format!("{{{}}}", body.join(", "))
    })
}

#[test]
fn parse_handles_one_large_input() {
    // a 1 MiB document body: large but well within the no-panic contract
    let big = format!("{{\"meta\": {{\"title\": \"{}\"}}}}", "x".repeat(1 << 20));
    let parsed = parse(&big).expect("large valid document parses");
    assert_eq!(parsed.meta.title.len(), 1 << 20);
    let deep = format!("{}1{}", "[".repeat(200_000), "]".repeat(200_000));
    assert!(parse(&deep).is_err(), "deep nesting must fail cleanly, not overflow");
}

// ---------------------------------------------------------------------------
// determinism

#[test]
fn validation_and_detection_are_deterministic() {
    for seed in [3u64, 17, 92] {
        let scenario = random_scenario(seed, 30);
        assert_eq!(validate(&scenario), validate(&scenario));
        let a = detect(&scenario).unwrap();
        let b = detect(&scenario).unwrap();
        assert_eq!(a, b);
        for id in PatternId::ALL {
            assert_eq!(explain(&a, id), explain(&b, id));
        }
    }
}

// ---------------------------------------------------------------------------
// ordering

proptest! {
    // a random DAG (edges run forward along a permutation) linearizes into
    // an order consistent with every edge
    #[test]
    fn linear_order_respects_every_edge(
        n in 1usize..=8,
        edge_bits in proptest::collection::vec(any::<bool>(), 64),
        perm_seed in any::<u64>(),
    ) {
        let names: Vec<Identifier> =
            (0..n).map(|i| ident(&format!("n{i}"))).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        // cheap deterministic shuffle
        let mut state = perm_seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut graph = OrderingGraph::default();
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if edge_bits[bit % edge_bits.len()] {
                    graph.edges.insert((names[perm[i]].clone(), names[perm[j]].clone()));
                }
                bit += 1;
            }
        }
        let refs: Vec<&Identifier> = names.iter().collect();
        let order = linear_order(&refs, &graph).expect("forward edges cannot cycle");
        prop_assert_eq!(order.len(), n);
        for (before, after) in &graph.edges {
            let b = order.iter().position(|x| x == before).unwrap();
            let a = order.iter().position(|x| x == after).unwrap();
            prop_assert!(b < a, "edge {} -> {} violated", before, after);
        }
    }
}

// ---------------------------------------------------------------------------
// capillarity

/// Finds a (ludic element, matching-level pedagogical element) pair that is
/// not yet staged, if any.
fn stageable_pair(s: &Scenario) -> Option<(Identifier, Identifier)> {
    let pedagogical = s.pedagogical_elements();
    for (_, ludic) in s.ludic_elements() {
        for (_, ped) in &pedagogical {
            if ped.level == ludic.level.staged_level() && !ludic.staged_refs.contains(&ped.id) {
                return Some((ludic.id.clone(), ped.id.clone()));
            }
        }
    }
    None
}

fn add_staging(e: &mut LudicElement, target: &Identifier, staged: Identifier) -> bool {
    if &e.id == target {
        e.staged_refs.insert(staged);
        return true;
    }
    e.children.iter_mut().any(|c| add_staging(c, target, staged.clone()))
}

#[test]
fn adding_a_staging_link_never_shrinks_effective_sets() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let scenario = random_scenario(seed, 30);
        let Some((ludic_id, ped_id)) = stageable_pair(&scenario) else { continue };
        let before = propagate(&scenario);
        let mut mutated = scenario.clone();
        assert!(mutated
            .ludic_roots
            .iter_mut()
            .any(|m| add_staging(m, &ludic_id, ped_id.clone())));
        let after = propagate(&mutated);
        for (id, entry) in before.iter() {
            let grown = after.get(id).expect("same element set");
            assert!(
                grown.competences.is_superset(&entry.competences)
                    && grown.participants.is_superset(&entry.participants),
                "seed {seed}: effective sets shrank at {id}"
            );
        }
        checked += 1;
    }
    assert!(checked > 100, "only {checked} scenarios offered a stageable pair");
}

#[test]
fn effective_sets_are_local_to_the_element() {
    // retitling and reordering siblings must not change anyone's sets;
    // adding a link to one element must not change any other element's sets
    let scenario = fixture_scenario(FixtureName::Pu);
    let before = propagate(&scenario);
    let mut mutated = scenario.clone();
    let (ludic_id, ped_id) = stageable_pair(&mutated).expect("PU has room to stage");
    assert!(mutated
        .ludic_roots
        .iter_mut()
        .any(|m| add_staging(m, &ludic_id, ped_id.clone())));
    let after = propagate(&mutated);
    for (id, entry) in before.iter() {
        if id != &ludic_id {
            assert_eq!(after.get(id), Some(entry), "unrelated element {id} changed");
        }
    }
}

#[test]
fn mission_rollup_contains_every_descendant_entry() {
    for seed in 0..100u64 {
        let scenario = random_scenario(seed, 30);
        let effective = propagate(&scenario);
        for mission in &scenario.ludic_roots {
            let rollup = aggregate_subtree(&scenario, &mission.id).unwrap();
            let mut stack = vec![mission];
            while let Some(el) = stack.pop() {
                let entry = effective.get(&el.id).unwrap();
                assert!(rollup.competences.is_superset(&entry.competences));
                assert!(rollup.participants.is_superset(&entry.participants));
                stack.extend(el.children.iter());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// detector invariants

/// Appends fresh, fully valid elements of every category.
fn insert_fresh_elements(s: &mut Scenario, tag: u64) {
    s.competences.push(Competence {
        id: ident(&format!("fresh-c{tag}")),
        name: "fresh".into(),
        discipline: "fresh-discipline".into(),
        description: None,
    });
    s.participants.push(Participant {
        id: ident(&format!("fresh-p{tag}")),
        name: "fresh".into(),
        role_label: RoleLabel::Teacher,
        kind: ParticipantKind::Role,
    });
    s.characters.push(Character {
        id: ident(&format!("fresh-ch{tag}")),
        name: "fresh".into(),
        archetype: Archetype::Antagonist,
        visibility: Visibility::Visible,
        plays_refs: BTreeSet::new(),
        helps_refs: BTreeSet::new(),
    });
    s.pedagogical_roots.push(PedagogicalElement {
        id: ident(&format!("fresh-mod{tag}")),
        level: PedagogicalLevel::Module,
        title: "fresh".into(),
        objective: String::new(),
        competence_refs: [ident(&format!("fresh-c{tag}"))].into_iter().collect(),
        participant_refs: BTreeSet::new(),
        tags: BTreeSet::new(),
        children: Vec::new(),
    });
    s.ludic_roots.push(LudicElement {
        id: ident(&format!("fresh-m{tag}")),
        level: LudicLevel::Mission,
        title: "fresh".into(),
        description: String::new(),
        kind: LudicKind::Mission(MissionKind::Core),
        staged_refs: BTreeSet::new(),
        character_refs: BTreeSet::new(),
        duration_minutes: None,
        interaction_mode: None,
        children: Vec::new(),
    });
}

#[test]
fn existential_patterns_survive_insertions() {
    let existential = [PatternId::P3, PatternId::P4, PatternId::P8];
    let mut flips_checked = 0;
    for seed in 0..300u64 {
        let scenario = random_scenario(seed, 25);
        let before = detect(&scenario).unwrap().present_set();
        let mut mutated = scenario.clone();
        insert_fresh_elements(&mut mutated, seed);
        let after = detect(&mutated).unwrap().present_set();
        for id in existential {
            if before.contains(&id) {
                assert!(
                    after.contains(&id),
                    "seed {seed}: adding elements flipped {id} present -> absent"
                );
                flips_checked += 1;
            }
        }
    }
    assert!(flips_checked > 20, "too few present existential patterns sampled");
}

fn strip_to_single_discipline(s: &mut Scenario, module_index: usize) {
    let keep = {
        let module = &s.pedagogical_roots[module_index];
        let first_ref = module.competence_refs.iter().next().expect("module has competences");
        let discipline = s
            .competences
            .iter()
            .find(|c| &c.id == first_ref)
            .expect("competence resolves")
            .discipline
            .clone();
        let keep: BTreeSet<Identifier> = s
            .competences
            .iter()
            .filter(|c| c.discipline == discipline)
            .map(|c| c.id.clone())
            .collect();
        keep
    };
    let module = &mut s.pedagogical_roots[module_index];
    module.competence_refs.retain(|r| keep.contains(r));
    assert!(!module.competence_refs.is_empty());
}

#[test]
fn breaking_one_module_drops_p2_coverage_by_its_share() {
    for name in [FixtureName::Ls, FixtureName::Pu] {
        let clean = fixture_scenario(name);
        let module_count = clean.pedagogical_roots.len();
        let baseline = detect(&clean).unwrap();
        assert_eq!(baseline.entry(PatternId::P2).coverage, Some(1.0));
        for index in 0..module_count {
            let mut mutated = clean.clone();
            strip_to_single_discipline(&mut mutated, index);
            let report = detect(&mutated).unwrap();
            let entry = report.entry(PatternId::P2);
            assert!(!entry.present, "{name}: P2 must flip to absent");
            let expected = 1.0 - 1.0 / module_count as f64;
            let got = entry.coverage.expect("universal rule reports coverage");
            assert!(
                (got - expected).abs() < 1e-9,
                "{name} module {index}: coverage {got} != {expected}"
            );
        }
    }
}

#[test]
fn explain_names_the_nearest_miss() {
    // four core missions, one missing its briefing: coverage 0.75 and the
    // hint names the offending mission
    let mut shell = scaffold(&ScaffoldConfig {
        core_mission_count: 4,
        ..ScaffoldConfig::default()
    })
    .unwrap();
    let broken_mission = shell.ludic_roots[2].id.clone();
    shell.ludic_roots[2].children[0].kind = LudicKind::Sequence(SequenceKind::Narrative);
    let report = detect(&shell).unwrap();
    let entry = report.entry(PatternId::P6);
    assert!(!entry.present);
    assert_eq!(entry.coverage, Some(0.75));
    let text = explain(&report, PatternId::P6);
    assert!(text.contains("coverage: 0.75"), "{text}");
    assert!(text.contains(broken_mission.as_str()), "{text}");

    // single-discipline scenario: the hint suggests a second discipline
    let mut single = fixture_scenario(FixtureName::Ls);
    for index in 0..single.pedagogical_roots.len() {
        strip_to_single_discipline(&mut single, index);
    }
    let report = detect(&single).unwrap();
    let text = explain(&report, PatternId::P2);
    assert!(
        text.contains("add a competence of a second discipline to module"),
        "{text}"
    );
}

#[test]
fn report_entries_keep_their_shape_invariants() {
    let universal = [PatternId::P2, PatternId::P6, PatternId::P7];
    let mut scenarios: Vec<Scenario> =
        FixtureName::ALL.iter().map(|n| fixture_scenario(*n)).collect();
    scenarios.extend((0..200u64).map(|seed| random_scenario(seed, 30)));
    for scenario in &scenarios {
        let report = detect(scenario).unwrap();
        assert_eq!(report.entries.len(), 9);
        for entry in &report.entries {
            assert_eq!(entry.present, entry.unmet.is_empty(), "{}", entry.id);
            if entry.present && universal.contains(&entry.id) {
                assert_eq!(entry.coverage, Some(1.0), "{} present at full coverage", entry.id);
            }
            if !entry.present {
                assert!(entry.evidence.is_empty(), "{} absent with evidence", entry.id);
            }
        }
    }
}

#[test]
fn snapshots_are_shareable_across_threads() {
    fn assert_sync<T: Send + Sync>() {}
    assert_sync::<Scenario>();
    assert_sync::<PatternReport>();
    assert_sync::<EffectiveSets>();

    let scenario = std::sync::Arc::new(fixture_scenario(FixtureName::Ls));
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let s = std::sync::Arc::clone(&scenario);
            std::thread::spawn(move || detect(&s).unwrap().present_set())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(results.windows(2).all(|w| w[0] == w[1]));
}

// ---------------------------------------------------------------------------
// generator coverage

#[test]
fn generator_exercises_every_enum_value_and_stays_clean() {
    let mut archetypes = BTreeSet::new();
    let mut mission_kinds = BTreeSet::new();
    let mut sequence_kinds = BTreeSet::new();
    let mut semantics = BTreeSet::new();
    let mut interactions = BTreeSet::new();
    let mut saw_hidden = false;
    let mut saw_role = false;
    let mut saw_team = false;
    let mut saw_learner = false;
    let mut saw_teacher = false;
    let mut saw_viewpoint = false;

    for seed in 0..1000u64 {
        let s = random_scenario(seed, 30);
        assert!(
            is_error_free(&validate(&s)),
            "seed {seed} produced validation errors"
        );
        for c in &s.characters {
            archetypes.insert(c.archetype);
            saw_hidden |= c.visibility == Visibility::Hidden;
        }
        for p in &s.participants {
            saw_role |= !p.is_team();
            saw_team |= p.is_team();
            saw_learner |= p.role_label == RoleLabel::Learner;
            saw_teacher |= p.role_label == RoleLabel::Teacher;
            saw_viewpoint |= p.members().iter().any(|m| m.viewpoint.is_some());
        }
        for (_, e) in s.ludic_elements() {
            match e.kind {
                LudicKind::Mission(k) => {
                    mission_kinds.insert(k);
                }
                LudicKind::Sequence(k) => {
                    sequence_kinds.insert(k);
                }
                LudicKind::GameLevel => {}
            }
            if let Some(mode) = e.interaction_mode {
                interactions.insert(mode);
            }
        }
        for g in s.orderings.values() {
            for bg in &g.branch_groups {
                semantics.insert(bg.semantics);
            }
        }
    }

    assert_eq!(archetypes.len(), 5, "all archetypes: {archetypes:?}");
    assert_eq!(mission_kinds.len(), 3, "all mission kinds: {mission_kinds:?}");
    assert_eq!(sequence_kinds.len(), 4, "all sequence kinds: {sequence_kinds:?}");
    assert_eq!(semantics.len(), 2, "both branch semantics: {semantics:?}");
    assert_eq!(interactions.len(), 3, "all interaction modes: {interactions:?}");
    assert!(saw_hidden && saw_role && saw_team && saw_learner && saw_teacher && saw_viewpoint);
}

// ---------------------------------------------------------------------------
// rulebook and ordering

#[test]
fn rulebook_matches_the_golden_file() {
    let golden = include_str!("golden/rulebook.txt");
    assert_eq!(rulebook(), golden, "regenerate tests/golden/rulebook.txt after rule changes");
}

#[test]
fn pu_missions_open_with_the_teaser_and_close_with_the_report() {
    let scenario = fixture_scenario(FixtureName::Pu);
    let nodes: Vec<&Identifier> = scenario.ludic_roots.iter().map(|m| &m.id).collect();
    let graph = scenario.orderings.get(&OrderingOwner::Missions).unwrap();
    assert_eq!(first(&nodes, graph).unwrap(), Some(ident("pu-teaser")));
    assert_eq!(last(&nodes, graph).unwrap(), Some(ident("pu-report")));
}

#[test]
fn validated_scenarios_always_linearize() {
    let mut scenarios: Vec<Scenario> =
        FixtureName::ALL.iter().map(|n| fixture_scenario(*n)).collect();
    scenarios.extend((0..200u64).map(|seed| random_scenario(seed, 30)));
    for scenario in &scenarios {
        assert!(is_error_free(&validate(scenario)));
        for group in scenario.sibling_groups() {
            let nodes: Vec<&Identifier> = group.nodes.iter().map(|n| &n.id).collect();
            let graph = group.graph.cloned().unwrap_or_default();
            let order = linear_order(&nodes, &graph).expect("validated group linearizes");
            assert_eq!(order.len(), nodes.len());
        }
    }
}

// ---------------------------------------------------------------------------
// fixture pattern sets (corpus contract)

#[test]
fn every_fixture_detects_exactly_its_expected_patterns() {
    for name in FixtureName::ALL {
        let f = fixture(name);
        let scenario = parse(&f.document).expect("fixture documents parse");
        let present = detect(&scenario).expect("fixtures are clean").present_set();
        assert_eq!(present, f.expected_patterns, "{name}");
        // and the oracle agrees on the fixtures too
        assert_eq!(oracle::naive_present(&scenario), f.expected_patterns, "{name} (oracle)");
    }
}
