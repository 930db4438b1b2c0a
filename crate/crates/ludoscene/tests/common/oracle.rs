//! Brute-force oracle: re-evaluates capillarity and the nine pattern rules by
//! naive enumeration over the model, sharing no analysis code with the
//! library. Quadratic scans everywhere; only suitable for small scenarios.

use ludoscene::{
    Archetype, Identifier, LudicElement, LudicKind, MissionKind, OrderingGraph, OrderingOwner,
    Participant, ParticipantKind, PatternId, PedagogicalElement, RoleLabel, Scenario,
    SequenceKind, TAG_REPORT_WRITING,
};
use std::collections::{BTreeMap, BTreeSet};

/// Effective (competences, participants) per ludic element, by naive double
/// loops over the reference lists.
pub fn naive_effective(
    s: &Scenario,
) -> BTreeMap<Identifier, (BTreeSet<Identifier>, BTreeSet<Identifier>)> {
    let mut out = BTreeMap::new();
    for element in all_ludic(s) {
        let mut competences = BTreeSet::new();
        let mut participants = BTreeSet::new();
        for staged in &element.staged_refs {
            for ped in all_pedagogical(s) {
                if &ped.id == staged {
                    for c in &ped.competence_refs {
                        competences.insert(c.clone());
                    }
                    for p in &ped.participant_refs {
                        participants.insert(p.clone());
                    }
                }
            }
        }
        for char_ref in &element.character_refs {
            for character in &s.characters {
                if &character.id == char_ref {
                    for p in &character.plays_refs {
                        participants.insert(p.clone());
                    }
                }
            }
        }
        out.insert(element.id.clone(), (competences, participants));
    }
    out
}

/// Subtree rollup by unioning the naive per-element sets.
#[allow(dead_code)] // each test target compiles this module separately
pub fn naive_aggregate(
    s: &Scenario,
    id: &Identifier,
) -> Option<(BTreeSet<Identifier>, BTreeSet<Identifier>)> {
    let root = all_ludic(s).into_iter().find(|e| &e.id == id)?;
    let per_element = naive_effective(s);
    let mut competences = BTreeSet::new();
    let mut participants = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(el) = stack.pop() {
        if let Some((c, p)) = per_element.get(&el.id) {
            competences.extend(c.iter().cloned());
            participants.extend(p.iter().cloned());
        }
        stack.extend(el.children.iter());
    }
    Some((competences, participants))
}

/// All nine verdicts by direct enumeration.
pub fn naive_present(s: &Scenario) -> BTreeSet<PatternId> {
    let mut present = BTreeSet::new();
    if naive_p1(s) {
        present.insert(PatternId::P1);
    }
    if naive_p2(s) {
        present.insert(PatternId::P2);
    }
    if naive_p3(s) {
        present.insert(PatternId::P3);
    }
    if naive_p4(s) {
        present.insert(PatternId::P4);
    }
    if naive_p5(s) {
        present.insert(PatternId::P5);
    }
    if naive_framing(s, SequenceKind::Briefing, false) {
        present.insert(PatternId::P6);
    }
    if naive_framing(s, SequenceKind::Debriefing, true) {
        present.insert(PatternId::P7);
    }
    if naive_p8(s) {
        present.insert(PatternId::P8);
    }
    if naive_p9(s) {
        present.insert(PatternId::P9);
    }
    present
}

fn all_pedagogical(s: &Scenario) -> Vec<&PedagogicalElement> {
    fn walk<'a>(e: &'a PedagogicalElement, out: &mut Vec<&'a PedagogicalElement>) {
        out.push(e);
        for c in &e.children {
            walk(c, out);
        }
    }
    let mut out = Vec::new();
    for root in &s.pedagogical_roots {
        walk(root, &mut out);
    }
    out
}

fn all_ludic(s: &Scenario) -> Vec<&LudicElement> {
    fn walk<'a>(e: &'a LudicElement, out: &mut Vec<&'a LudicElement>) {
        out.push(e);
        for c in &e.children {
            walk(c, out);
        }
    }
    let mut out = Vec::new();
    for root in &s.ludic_roots {
        walk(root, &mut out);
    }
    out
}

fn participant_by_id<'a>(s: &'a Scenario, id: &Identifier) -> Option<&'a Participant> {
    s.participants.iter().find(|p| &p.id == id)
}

fn character_played_by_role(s: &Scenario, character_id: &Identifier, role: RoleLabel) -> bool {
    s.characters.iter().any(|c| {
        &c.id == character_id
            && c.plays_refs
                .iter()
                .any(|pid| participant_by_id(s, pid).is_some_and(|p| p.role_label == role))
    })
}

/// Linear order by repeated scans: among the nodes not yet emitted, take the
/// document-earliest one without a pending predecessor.
fn naive_order(nodes: &[Identifier], graph: &OrderingGraph) -> Vec<Identifier> {
    let mut remaining: Vec<Identifier> = nodes.to_vec();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let mut picked = None;
        for candidate in &remaining {
            let blocked = graph.edges.iter().any(|(before, after)| {
                after == candidate && remaining.contains(before) && nodes.contains(before)
            });
            if !blocked {
                picked = Some(candidate.clone());
                break;
            }
        }
        match picked {
            Some(node) => {
                remaining.retain(|n| n != &node);
                out.push(node);
            }
            None => break, // cycle; callers only pass validated graphs
        }
    }
    out
}

fn root_order(s: &Scenario) -> Vec<Identifier> {
    let nodes: Vec<Identifier> = s.ludic_roots.iter().map(|m| m.id.clone()).collect();
    let default = OrderingGraph::default();
    let graph = s.orderings.get(&OrderingOwner::Missions).unwrap_or(&default);
    naive_order(&nodes, graph)
}

fn sequences_order(s: &Scenario, mission: &LudicElement) -> Vec<Identifier> {
    let nodes: Vec<Identifier> = mission.children.iter().map(|c| c.id.clone()).collect();
    let default = OrderingGraph::default();
    let graph = s
        .orderings
        .get(&OrderingOwner::Mission(mission.id.clone()))
        .unwrap_or(&default);
    naive_order(&nodes, graph)
}

fn mission_by_id<'a>(s: &'a Scenario, id: &Identifier) -> Option<&'a LudicElement> {
    s.ludic_roots.iter().find(|m| &m.id == id)
}

fn naive_p1(s: &Scenario) -> bool {
    let order = root_order(s);
    let Some(first) = order.first().and_then(|id| mission_by_id(s, id)) else {
        return false;
    };
    if first.kind != LudicKind::Mission(MissionKind::Teaser) || !first.staged_refs.is_empty() {
        return false;
    }
    let learner = first
        .character_refs
        .iter()
        .any(|c| character_played_by_role(s, c, RoleLabel::Learner));
    let teacher = first
        .character_refs
        .iter()
        .any(|c| character_played_by_role(s, c, RoleLabel::Teacher));
    learner && teacher
}

fn naive_p2(s: &Scenario) -> bool {
    if s.pedagogical_roots.is_empty() {
        return false;
    }
    s.pedagogical_roots.iter().all(|module| {
        let mut disciplines = BTreeSet::new();
        for cref in &module.competence_refs {
            for competence in &s.competences {
                if &competence.id == cref {
                    disciplines.insert(competence.discipline.clone());
                }
            }
        }
        disciplines.len() >= 2
    })
}

fn naive_p3(s: &Scenario) -> bool {
    s.participants.iter().any(|p| {
        let team_size = match &p.kind {
            ParticipantKind::Team { members } => members.len(),
            ParticipantKind::Role => return false,
        };
        p.role_label == RoleLabel::Learner
            && (2..=4).contains(&team_size)
            && s.characters
                .iter()
                .any(|c| c.archetype == Archetype::ExpertGroup && c.plays_refs.contains(&p.id))
    })
}

fn naive_p4(s: &Scenario) -> bool {
    s.orderings.values().any(|g| !g.branch_groups.is_empty())
}

fn naive_p5(s: &Scenario) -> bool {
    s.characters.iter().any(|mentor| {
        mentor.archetype == Archetype::Mentor
            && mentor.plays_refs.iter().any(|pid| {
                participant_by_id(s, pid).is_some_and(|p| p.role_label == RoleLabel::Teacher)
            })
            && mentor
                .helps_refs
                .iter()
                .any(|helped| character_played_by_role(s, helped, RoleLabel::Learner))
    })
}

fn naive_framing(s: &Scenario, kind: SequenceKind, last: bool) -> bool {
    let core: Vec<&LudicElement> = s
        .ludic_roots
        .iter()
        .filter(|m| m.kind == LudicKind::Mission(MissionKind::Core))
        .collect();
    if core.is_empty() {
        return false;
    }
    core.iter().filter(|m| !m.children.is_empty()).all(|mission| {
        let order = sequences_order(s, mission);
        let picked = if last { order.last() } else { order.first() };
        let Some(sequence) = picked.and_then(|id| mission.children.iter().find(|c| &c.id == id))
        else {
            return false;
        };
        if sequence.kind != LudicKind::Sequence(kind) {
            return false;
        }
        let mentor = sequence.character_refs.iter().any(|cid| {
            s.characters.iter().any(|c| {
                &c.id == cid
                    && c.archetype == Archetype::Mentor
                    && c.plays_refs.iter().any(|pid| {
                        participant_by_id(s, pid)
                            .is_some_and(|p| p.role_label == RoleLabel::Teacher)
                    })
            })
        });
        let learner = sequence
            .character_refs
            .iter()
            .any(|cid| character_played_by_role(s, cid, RoleLabel::Learner));
        mentor && learner
    })
}

fn naive_p8(s: &Scenario) -> bool {
    let effective = naive_effective(s);
    s.participants.iter().any(|p| {
        let members = match &p.kind {
            ParticipantKind::Team { members } => members,
            ParticipantKind::Role => return false,
        };
        let viewpoints: BTreeSet<&str> =
            members.iter().filter_map(|m| m.viewpoint.as_deref()).collect();
        viewpoints.len() >= 2
            && s.ludic_roots.iter().any(|mission| {
                effective.get(&mission.id).is_some_and(|(_, parts)| parts.contains(&p.id))
            })
    })
}

fn naive_p9(s: &Scenario) -> bool {
    let order = root_order(s);
    let Some(last) = order.last().and_then(|id| mission_by_id(s, id)) else {
        return false;
    };
    if last.kind == LudicKind::Mission(MissionKind::Report) {
        return true;
    }
    last.staged_refs.iter().any(|staged| {
        all_pedagogical(s)
            .iter()
            .any(|p| &p.id == staged && p.tags.contains(TAG_REPORT_WRITING))
    })
}
