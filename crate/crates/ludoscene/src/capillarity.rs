//! Transfer of competences and participants from staged pedagogical elements
//! onto the ludic elements that stage them.
//!
//! Each staging link carries the target's competences and participants over
//! to the ludic side; characters add the participants who play them. The
//! transfer is strictly local: an element's sets depend only on its own
//! staging links and characters. Rolling a mission's subtree up into one set
//! is a separate query, [`aggregate_subtree`].

use crate::model::{Identifier, LudicElement, ResolvedElement, Scenario};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Competences and participants a ludic element is effectively linked to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EffectiveEntry {
    pub competences: BTreeSet<Identifier>,
    pub participants: BTreeSet<Identifier>,
}

impl EffectiveEntry {
    fn union_with(&mut self, other: &EffectiveEntry) {
        self.competences.extend(other.competences.iter().cloned());
        self.participants.extend(other.participants.iter().cloned());
    }
}

/// Effective sets of every ludic element, keyed by element id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EffectiveSets {
    entries: BTreeMap<Identifier, EffectiveEntry>,
}

impl EffectiveSets {
    pub fn get(&self, id: &Identifier) -> Option<&EffectiveEntry> {
        self.entries.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Identifier, &EffectiveEntry)> {
        self.entries.iter()
    }
}

/// Computes the effective sets of every ludic element.
///
/// Expects a scenario free of error diagnostics; unresolvable references are
/// skipped rather than reported here.
pub fn propagate(scenario: &Scenario) -> EffectiveSets {
    let mut entries = BTreeMap::new();
    for (_, element) in scenario.ludic_elements() {
        entries.insert(element.id.clone(), element_entry(scenario, element));
    }
    EffectiveSets { entries }
}

fn element_entry(scenario: &Scenario, element: &LudicElement) -> EffectiveEntry {
    let mut entry = EffectiveEntry::default();
    for staged in &element.staged_refs {
        if let Some(ResolvedElement::Pedagogical(p)) = scenario.resolve(staged) {
            entry.competences.extend(p.competence_refs.iter().cloned());
            entry.participants.extend(p.participant_refs.iter().cloned());
        }
    }
    for char_ref in &element.character_refs {
        if let Some(ResolvedElement::Character(c)) = scenario.resolve(char_ref) {
            entry.participants.extend(c.plays_refs.iter().cloned());
        }
    }
    entry
}

/// Union of the effective sets over one ludic element and all its
/// descendants. Returns `None` when `id` names no ludic element.
pub fn aggregate_subtree(scenario: &Scenario, id: &Identifier) -> Option<EffectiveEntry> {
    let root = scenario
        .ludic_elements()
        .into_iter()
        .map(|(_, e)| e)
        .find(|e| &e.id == id)?;
    let sets = propagate(scenario);
    let mut total = EffectiveEntry::default();
    let mut stack = vec![root];
    while let Some(el) = stack.pop() {
        if let Some(entry) = sets.get(&el.id) {
            total.union_with(entry);
        }
        stack.extend(el.children.iter());
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;
    use std::collections::BTreeSet;

    fn id(s: &str) -> Identifier {
        Identifier::new(s).unwrap()
    }

    /// Mission staging a module that carries one competence and one
    /// participant; a character played by a second participant is linked to
    /// the mission's sequence.
    fn fixture() -> Scenario {
        let mut s = Scenario::default();
        s.competences.push(Competence {
            id: id("c-equations"),
            name: "equation solving".into(),
            discipline: "maths".into(),
            description: None,
        });
        s.participants.push(Participant {
            id: id("p-learners"),
            name: "learners".into(),
            role_label: RoleLabel::Learner,
            kind: ParticipantKind::Role,
        });
        s.participants.push(Participant {
            id: id("p-teacher"),
            name: "teacher".into(),
            role_label: RoleLabel::Teacher,
            kind: ParticipantKind::Role,
        });
        s.characters.push(Character {
            id: id("ch-guide"),
            name: "guide".into(),
            archetype: Archetype::Mentor,
            visibility: Visibility::Visible,
            plays_refs: [id("p-teacher")].into_iter().collect(),
            helps_refs: BTreeSet::new(),
        });
        s.pedagogical_roots.push(PedagogicalElement {
            id: id("mod-equations"),
            level: PedagogicalLevel::Module,
            title: "equations".into(),
            objective: String::new(),
            competence_refs: [id("c-equations")].into_iter().collect(),
            participant_refs: [id("p-learners")].into_iter().collect(),
            tags: BTreeSet::new(),
            children: Vec::new(),
        });
        s.ludic_roots.push(LudicElement {
            id: id("mission-rocket"),
            level: LudicLevel::Mission,
            title: "rocket trajectory".into(),
            description: String::new(),
            kind: LudicKind::Mission(MissionKind::Core),
            staged_refs: [id("mod-equations")].into_iter().collect(),
            character_refs: BTreeSet::new(),
            duration_minutes: None,
            interaction_mode: None,
            children: vec![LudicElement {
                id: id("seq-solve"),
                level: LudicLevel::Sequence,
                title: "solving".into(),
                description: String::new(),
                kind: LudicKind::Sequence(SequenceKind::Narrative),
                staged_refs: BTreeSet::new(),
                character_refs: [id("ch-guide")].into_iter().collect(),
                duration_minutes: None,
                interaction_mode: None,
                children: Vec::new(),
            }],
        });
        s
    }

    #[test]
    fn staging_transfers_competences_and_participants() {
        let s = fixture();
        let sets = propagate(&s);
        let mission = sets.get(&id("mission-rocket")).unwrap();
        assert_eq!(mission.competences, [id("c-equations")].into_iter().collect());
        assert_eq!(mission.participants, [id("p-learners")].into_iter().collect());
    }

    #[test]
    fn characters_contribute_their_players() {
        let s = fixture();
        let sets = propagate(&s);
        let seq = sets.get(&id("seq-solve")).unwrap();
        assert!(seq.competences.is_empty());
        assert_eq!(seq.participants, [id("p-teacher")].into_iter().collect());
    }

    #[test]
    fn unstaged_element_has_empty_sets() {
        let mut s = fixture();
        s.ludic_roots.push(LudicElement {
            id: id("mission-teaser"),
            level: LudicLevel::Mission,
            title: "intro".into(),
            description: String::new(),
            kind: LudicKind::Mission(MissionKind::Teaser),
            staged_refs: BTreeSet::new(),
            character_refs: BTreeSet::new(),
            duration_minutes: None,
            interaction_mode: None,
            children: Vec::new(),
        });
        let sets = propagate(&s);
        assert_eq!(sets.get(&id("mission-teaser")).unwrap(), &EffectiveEntry::default());
    }

    #[test]
    fn subtree_rollup_unions_descendants() {
        let s = fixture();
        let rollup = aggregate_subtree(&s, &id("mission-rocket")).unwrap();
        assert_eq!(rollup.competences, [id("c-equations")].into_iter().collect());
        assert_eq!(
            rollup.participants,
            [id("p-learners"), id("p-teacher")].into_iter().collect()
        );
        assert!(aggregate_subtree(&s, &id("ghost")).is_none());
        // a leaf's rollup is its own entry
        let seq_rollup = aggregate_subtree(&s, &id("seq-solve")).unwrap();
        assert_eq!(seq_rollup, propagate(&s).get(&id("seq-solve")).unwrap().clone());
    }
}
