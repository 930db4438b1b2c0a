//! Structural validation. The validator never aborts: it walks the whole
//! scenario and reports every violation it can find, in a deterministic
//! order (element path, then code).

use crate::model::{
    Archetype, ElementKind, Identifier, OrderingOwner, ParticipantKind, ResolvedElement, Scenario, Visibility,
};
use crate::order::linear_order;
use crate::path::Path;
use std::collections::HashMap;
use std::fmt;

/// Diagnostic severity. Errors make a scenario unusable for analysis;
/// warnings do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

/// Closed set of diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiagnosticCode {
    BadBranch,
    DanglingRef,
    DuplicateId,
    LevelMismatch,
    MissingCompetence,
    OrderCycle,
    SelfHelp,
    TeamEmpty,
    HiddenNonEvaluator,
    UnorderedSiblings,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::BadBranch => "E_BAD_BRANCH",
            DiagnosticCode::DanglingRef => "E_DANGLING_REF",
            DiagnosticCode::DuplicateId => "E_DUPLICATE_ID",
            DiagnosticCode::LevelMismatch => "E_LEVEL_MISMATCH",
            DiagnosticCode::MissingCompetence => "E_MISSING_COMPETENCE",
            DiagnosticCode::OrderCycle => "E_ORDER_CYCLE",
            DiagnosticCode::SelfHelp => "E_SELF_HELP",
            DiagnosticCode::TeamEmpty => "E_TEAM_EMPTY",
            DiagnosticCode::HiddenNonEvaluator => "W_HIDDEN_NON_EVALUATOR",
            DiagnosticCode::UnorderedSiblings => "W_UNORDERED_SIBLINGS",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            DiagnosticCode::HiddenNonEvaluator | DiagnosticCode::UnorderedSiblings => {
                Severity::Warning
            }
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One validation finding, addressed by element path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub path: Path,
    pub message: String,
}

impl Diagnostic {
    pub fn severity(&self) -> Severity {
        self.code.severity()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity().as_str(),
            self.code,
            self.path,
            self.message
        )
    }
}

/// True when no diagnostic in the list is an error.
pub fn is_error_free(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().all(|d| d.severity() != Severity::Error)
}

/// Checks every structural invariant and returns all violations. An empty
/// result means the scenario is well-formed. Idempotent and deterministic:
/// the same scenario always yields the same list.
pub fn validate(scenario: &Scenario) -> Vec<Diagnostic> {
    let mut v = Validator {
        scenario,
        diagnostics: Vec::new(),
        by_id: HashMap::new(),
    };
    v.collect_ids();
    v.check_participants();
    v.check_characters();
    v.check_pedagogical();
    v.check_ludic();
    v.check_documents();
    v.check_orderings();
    v.diagnostics.sort_by(|a, b| (&a.path, a.code).cmp(&(&b.path, b.code)));
    v.diagnostics
}

struct Validator<'a> {
    scenario: &'a Scenario,
    diagnostics: Vec<Diagnostic>,
    /// First occurrence of each id wins for resolution.
    by_id: HashMap<&'a Identifier, ResolvedElement<'a>>,
}

impl<'a> Validator<'a> {
    fn push(&mut self, code: DiagnosticCode, path: Path, message: String) {
        self.diagnostics.push(Diagnostic { code, path, message });
    }

    fn collect_ids(&mut self) {
        let elements: Vec<(Path, ResolvedElement<'a>)> = self.scenario.walk_elements().collect();
        for (path, element) in elements {
            if let Some(first) = self.by_id.get(element.id()) {
                let message = format!(
                    "id \"{}\" already used by a {}",
                    element.id(),
                    first.kind()
                );
                self.push(DiagnosticCode::DuplicateId, path, message);
            } else {
                self.by_id.insert(element.id(), element);
            }
        }
    }

    fn lookup(&self, id: &Identifier) -> Option<&ResolvedElement<'a>> {
        self.by_id.get(id)
    }

    /// Reports a dangling reference unless `id` resolves to an element
    /// accepted by `want`. Returns the resolved element when valid.
    fn check_ref(
        &mut self,
        id: &Identifier,
        path: Path,
        expected: &str,
        want: impl Fn(ElementKind) -> bool,
    ) -> Option<ResolvedElement<'a>> {
        match self.lookup(id).copied() {
            Some(el) if want(el.kind()) => Some(el),
            Some(el) => {
                let message = format!(
                    "reference \"{id}\" resolves to a {}, expected a {expected}",
                    el.kind()
                );
                self.push(DiagnosticCode::DanglingRef, path, message);
                None
            }
            None => {
                let message = format!("reference \"{id}\" does not resolve; expected a {expected}");
                self.push(DiagnosticCode::DanglingRef, path, message);
                None
            }
        }
    }

    fn check_participants(&mut self) {
        for (i, p) in self.scenario.participants.iter().enumerate() {
            let path = Path::root().key("participants").index(i);
            if let ParticipantKind::Team { members } = &p.kind {
                if members.is_empty() {
                    let message = format!("team \"{}\" has no members", p.id);
                    self.push(DiagnosticCode::TeamEmpty, path, message);
                }
            }
        }
    }

    fn check_characters(&mut self) {
        for (i, c) in self.scenario.characters.iter().enumerate() {
            let path = Path::root().key("characters").index(i);
            for (j, played_by) in c.plays_refs.iter().enumerate() {
                self.check_ref(
                    played_by,
                    path.key("plays").index(j),
                    "participant",
                    |k| k == ElementKind::Participant,
                );
            }
            for (j, helped) in c.helps_refs.iter().enumerate() {
                if helped == &c.id {
                    let message = format!("character \"{}\" helps itself", c.id);
                    self.push(DiagnosticCode::SelfHelp, path.key("helps").index(j), message);
                    continue;
                }
                self.check_ref(helped, path.key("helps").index(j), "character", |k| {
                    k == ElementKind::Character
                });
            }
            if c.visibility == Visibility::Hidden && c.archetype != Archetype::Evaluator {
                let message = format!(
                    "character \"{}\" is hidden but has archetype {}; hidden is meant for evaluators",
                    c.id,
                    c.archetype.as_str()
                );
                self.push(DiagnosticCode::HiddenNonEvaluator, path, message);
            }
        }
    }

    fn check_pedagogical(&mut self) {
        for (path, el) in self.scenario.pedagogical_elements() {
            if el.competence_refs.is_empty() {
                let message = format!(
                    "{} \"{}\" is linked to no competence; every pedagogical element needs at least one",
                    el.level.as_str(),
                    el.id
                );
                self.push(DiagnosticCode::MissingCompetence, path.clone(), message);
            }
            for (j, cref) in el.competence_refs.iter().enumerate() {
                self.check_ref(cref, path.key("competences").index(j), "competence", |k| {
                    k == ElementKind::Competence
                });
            }
            for (j, pref) in el.participant_refs.iter().enumerate() {
                self.check_ref(pref, path.key("participants").index(j), "participant", |k| {
                    k == ElementKind::Participant
                });
            }
        }
    }

    fn check_ludic(&mut self) {
        for (path, el) in self.scenario.ludic_elements() {
            let expected_level = el.level.staged_level();
            for (j, sref) in el.staged_refs.iter().enumerate() {
                let ref_path = path.key("stages").index(j);
                let resolved = self.check_ref(sref, ref_path.clone(), "pedagogical element", |k| {
                    matches!(k, ElementKind::Pedagogical(_))
                });
                if let Some(ResolvedElement::Pedagogical(target)) = resolved {
                    if target.level != expected_level {
                        let message = format!(
                            "{} \"{}\" stages {} \"{}\"; a {} must stage a {}",
                            el.level.as_str(),
                            el.id,
                            target.level.as_str(),
                            target.id,
                            el.level.as_str(),
                            expected_level.as_str()
                        );
                        self.push(DiagnosticCode::LevelMismatch, ref_path, message);
                    }
                }
            }
            for (j, cref) in el.character_refs.iter().enumerate() {
                self.check_ref(cref, path.key("characters").index(j), "character", |k| {
                    k == ElementKind::Character
                });
            }
        }
    }

    fn check_documents(&mut self) {
        for (i, d) in self.scenario.documents.iter().enumerate() {
            let path = Path::root().key("documents").index(i).key("produced_in");
            self.check_ref(&d.produced_in, path, "ludic element", |k| {
                matches!(k, ElementKind::Ludic(_))
            });
        }
    }

    fn check_orderings(&mut self) {
        let groups = self.scenario.sibling_groups();
        let known_owners: Vec<&OrderingOwner> = groups.iter().map(|g| &g.owner).collect();

        // entries whose owner key names no mission (or no orderable group at all)
        for owner in self.scenario.orderings.keys() {
            if !known_owners.contains(&owner) {
                let path = Path::root().key("orderings").key(owner.as_key());
                let message = format!(
                    "ordering owner \"{}\" does not name a mission",
                    owner.as_key()
                );
                self.push(DiagnosticCode::DanglingRef, path, message);
            }
        }

        for group in &groups {
            let node_ids: Vec<&Identifier> = group.nodes.iter().map(|n| &n.id).collect();
            let path = Path::root().key("orderings").key(group.owner.as_key());
            match group.graph {
                None => {
                    if group.nodes.len() >= 2 {
                        let subject = match &group.owner {
                            OrderingOwner::Missions => "top-level missions have".to_owned(),
                            OrderingOwner::Mission(id) => {
                                format!("sequences of mission \"{id}\" have")
                            }
                        };
                        let message =
                            format!("{subject} no declared ordering; document order is assumed");
                        self.push(
                            DiagnosticCode::UnorderedSiblings,
                            group.owner_path.clone(),
                            message,
                        );
                    }
                }
                Some(graph) => {
                    let mut membership_ok = true;
                    for (j, (before, after)) in graph.edges.iter().enumerate() {
                        for id in [before, after] {
                            if !node_ids.contains(&id) {
                                let message = format!(
                                    "ordering edge references \"{id}\", which is not a sibling of this group"
                                );
                                self.push(
                                    DiagnosticCode::DanglingRef,
                                    path.key("edges").index(j),
                                    message,
                                );
                                membership_ok = false;
                            }
                        }
                    }
                    for (j, bg) in graph.branch_groups.iter().enumerate() {
                        let bg_path = path.key("branches").index(j);
                        if bg.branches.len() < 2 {
                            let message = format!(
                                "branch group at \"{}\" declares {} branch(es); at least 2 required",
                                bg.split,
                                bg.branches.len()
                            );
                            self.push(DiagnosticCode::BadBranch, bg_path.clone(), message);
                        }
                        for id in std::iter::once(&bg.split).chain(bg.branches.iter()) {
                            if !node_ids.contains(&id) {
                                let message = format!(
                                    "branch group references \"{id}\", which is not a sibling of this group"
                                );
                                self.push(DiagnosticCode::DanglingRef, bg_path.clone(), message);
                            }
                        }
                    }
                    // cycle check over the edges that do connect siblings
                    let _ = membership_ok;
                    if let Err(cycle) = linear_order(&node_ids, graph) {
                        let message = format!("{cycle}");
                        self.push(DiagnosticCode::OrderCycle, path, message);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;
    use std::collections::BTreeSet;

    fn id(s: &str) -> Identifier {
        Identifier::new(s).unwrap()
    }

    fn competence(i: &str) -> Competence {
        Competence {
            id: id(i),
            name: i.to_owned(),
            discipline: "maths".into(),
            description: None,
        }
    }

    fn module(i: &str, comps: &[&str]) -> PedagogicalElement {
        PedagogicalElement {
            id: id(i),
            level: PedagogicalLevel::Module,
            title: i.to_owned(),
            objective: String::new(),
            competence_refs: comps.iter().map(|c| id(c)).collect(),
            participant_refs: BTreeSet::new(),
            tags: BTreeSet::new(),
            children: Vec::new(),
        }
    }

    fn mission(i: &str, stages: &[&str]) -> LudicElement {
        LudicElement {
            id: id(i),
            level: LudicLevel::Mission,
            title: i.to_owned(),
            description: String::new(),
            kind: LudicKind::Mission(MissionKind::Core),
            staged_refs: stages.iter().map(|s| id(s)).collect(),
            character_refs: BTreeSet::new(),
            duration_minutes: None,
            interaction_mode: None,
            children: Vec::new(),
        }
    }

    #[test]
    fn empty_scenario_is_clean() {
        assert!(validate(&Scenario::default()).is_empty());
    }

    #[test]
    fn staged_module_with_competence_is_clean() {
        let mut s = Scenario::default();
        s.competences.push(competence("c-equations"));
        s.pedagogical_roots.push(module("mod-equations", &["c-equations"]));
        s.ludic_roots.push(mission("mission-rocket", &["mod-equations"]));
        assert_eq!(validate(&s), vec![]);
    }

    #[test]
    fn missing_competence_is_flagged_once() {
        let mut s = Scenario::default();
        s.pedagogical_roots.push(module("mod-a", &[]));
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::MissingCompetence);
        assert_eq!(diags[0].path.to_string(), "/pedagogical/0");
    }

    #[test]
    fn duplicate_id_reported_at_second_occurrence() {
        let mut s = Scenario::default();
        s.competences.push(competence("x"));
        s.competences.push(competence("x"));
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::DuplicateId);
        assert_eq!(diags[0].path.to_string(), "/competences/1");
    }

    #[test]
    fn dangling_staging_ref() {
        let mut s = Scenario::default();
        s.ludic_roots.push(mission("m", &["ghost"]));
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::DanglingRef);
    }

    #[test]
    fn self_help_is_flagged() {
        let mut s = Scenario::default();
        s.characters.push(Character {
            id: id("kurt"),
            name: "Kurt".into(),
            archetype: Archetype::Mentor,
            visibility: Visibility::Visible,
            plays_refs: BTreeSet::new(),
            helps_refs: [id("kurt")].into_iter().collect(),
        });
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::SelfHelp);
    }

    #[test]
    fn hidden_mentor_warns_but_hidden_evaluator_does_not() {
        let mut s = Scenario::default();
        s.characters.push(Character {
            id: id("maggy"),
            name: "Maggy".into(),
            archetype: Archetype::Evaluator,
            visibility: Visibility::Hidden,
            plays_refs: BTreeSet::new(),
            helps_refs: BTreeSet::new(),
        });
        assert!(validate(&s).is_empty());
        s.characters[0].archetype = Archetype::Mentor;
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::HiddenNonEvaluator);
        assert_eq!(diags[0].severity(), Severity::Warning);
    }

    #[test]
    fn unordered_siblings_warn_only_from_two() {
        let mut s = Scenario::default();
        s.ludic_roots.push(mission("m1", &[]));
        assert!(validate(&s).is_empty());
        s.ludic_roots.push(mission("m2", &[]));
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::UnorderedSiblings);
        // declaring an empty graph silences the warning
        s.orderings.insert(OrderingOwner::Missions, OrderingGraph::default());
        assert!(validate(&s).is_empty());
    }

    #[test]
    fn order_cycle_detected() {
        let mut s = Scenario::default();
        s.ludic_roots.push(mission("m1", &[]));
        s.ludic_roots.push(mission("m2", &[]));
        s.orderings.insert(
            OrderingOwner::Missions,
            OrderingGraph {
                edges: [(id("m1"), id("m2")), (id("m2"), id("m1"))].into_iter().collect(),
                branch_groups: Vec::new(),
            },
        );
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::OrderCycle);
    }

    #[test]
    fn bad_branch_needs_two_entries() {
        let mut s = Scenario::default();
        s.ludic_roots.push(mission("m1", &[]));
        s.ludic_roots.push(mission("m2", &[]));
        s.orderings.insert(
            OrderingOwner::Missions,
            OrderingGraph {
                edges: BTreeSet::new(),
                branch_groups: vec![BranchGroup {
                    split: id("m1"),
                    branches: [id("m2")].into_iter().collect(),
                    semantics: BranchSemantics::Parallel,
                }],
            },
        );
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::BadBranch);
    }

    #[test]
    fn team_empty_flagged() {
        let mut s = Scenario::default();
        s.participants.push(Participant {
            id: id("t"),
            name: "t".into(),
            role_label: RoleLabel::Learner,
            kind: ParticipantKind::Team { members: Vec::new() },
        });
        let diags = validate(&s);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::TeamEmpty);
    }
}
