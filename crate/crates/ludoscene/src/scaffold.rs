//! Generation of a starter scenario shell that pre-embeds the teaser,
//! expert-team, teacher-support, briefing and debriefing patterns (plus
//! seeded pluridisciplinary competences), ready for designers to flesh out.

use crate::model::*;
use std::collections::BTreeSet;
use thiserror::Error;

/// Parameters of the generated shell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaffoldConfig {
    pub title: String,
    /// Learner team size; the expert-team pattern admits 2 to 4.
    pub learner_team_size: usize,
    /// Number of core missions, each framed by a briefing and a debriefing.
    pub core_mission_count: usize,
    /// Appends a final report mission (post-game report pattern).
    pub include_report_mission: bool,
    /// Discipline labels cycled over the seeded competences; at least two.
    pub discipline_labels: Vec<String>,
    /// Seeded competences per generated module; at least two.
    pub seed_competences_per_module: usize,
}

impl Default for ScaffoldConfig {
    fn default() -> Self {
        ScaffoldConfig {
            title: "Untitled learning game".to_owned(),
            learner_team_size: 3,
            core_mission_count: 2,
            include_report_mission: false,
            discipline_labels: vec!["domain".to_owned(), "methodology".to_owned()],
            seed_competences_per_module: 2,
        }
    }
}

/// A configuration field is out of range.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("invalid scaffold configuration: {field}: {message}")]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ScaffoldConfig {
    fn check(&self) -> Result<(), ConfigError> {
        if !(2..=4).contains(&self.learner_team_size) {
            return Err(ConfigError {
                field: "learner_team_size",
                message: format!("{} is outside the admitted range 2..=4", self.learner_team_size),
            });
        }
        if self.discipline_labels.len() < 2 {
            return Err(ConfigError {
                field: "discipline_labels",
                message: format!("{} label(s) given; at least 2 required", self.discipline_labels.len()),
            });
        }
        if self.discipline_labels.iter().any(|l| l.is_empty()) {
            return Err(ConfigError {
                field: "discipline_labels",
                message: "labels must be non-empty".to_owned(),
            });
        }
        if self.seed_competences_per_module < 2 {
            return Err(ConfigError {
                field: "seed_competences_per_module",
                message: format!("{} given; at least 2 required", self.seed_competences_per_module),
            });
        }
        Ok(())
    }
}

fn id(s: String) -> Identifier {
    Identifier::new(s).expect("generated ids are non-empty")
}

/// Generates the scenario shell. Deterministic: the same configuration always
/// yields the same scenario (ids follow a fixed naming scheme), and the output
/// validates without errors or warnings.
pub fn scaffold(config: &ScaffoldConfig) -> Result<Scenario, ConfigError> {
    config.check()?;

    let teacher = id("teacher".to_owned());
    let learners = id("learners".to_owned());
    let mentor = id("mentor".to_owned());
    let experts = id("experts".to_owned());

    let mut scenario = Scenario {
        meta: Meta {
            title: config.title.clone(),
            authors: vec!["TODO: authors".to_owned()],
            version: "0.1".to_owned(),
            notes: vec![
                "generated scenario shell".to_owned(),
                "seeded competences and TODO texts are placeholder content to replace".to_owned(),
            ],
            ..Meta::default()
        },
        ..Scenario::default()
    };

    scenario.participants.push(Participant {
        id: teacher.clone(),
        name: "Teacher".to_owned(),
        role_label: RoleLabel::Teacher,
        kind: ParticipantKind::Role,
    });
    scenario.participants.push(Participant {
        id: learners.clone(),
        name: "Learner team".to_owned(),
        role_label: RoleLabel::Learner,
        kind: ParticipantKind::Team {
            members: (1..=config.learner_team_size)
                .map(|i| TeamMember { name: format!("TODO: learner {i}"), viewpoint: None })
                .collect(),
        },
    });
    scenario.characters.push(Character {
        id: mentor.clone(),
        name: "TODO: name the helpful mentor".to_owned(),
        archetype: Archetype::Mentor,
        visibility: Visibility::Visible,
        plays_refs: [teacher.clone()].into_iter().collect(),
        helps_refs: [experts.clone()].into_iter().collect(),
    });
    scenario.characters.push(Character {
        id: experts.clone(),
        name: "TODO: name the expert group".to_owned(),
        archetype: Archetype::ExpertGroup,
        visibility: Visibility::Visible,
        plays_refs: [learners.clone()].into_iter().collect(),
        helps_refs: BTreeSet::new(),
    });

    let both_characters: BTreeSet<Identifier> =
        [mentor.clone(), experts.clone()].into_iter().collect();

    let mut mission_ids: Vec<Identifier> = Vec::new();
    let teaser_id = id("mission-1".to_owned());
    scenario.ludic_roots.push(LudicElement {
        id: teaser_id.clone(),
        level: LudicLevel::Mission,
        title: "TODO: teaser introducing the game premise".to_owned(),
        description: "TODO: put the players and the teacher into their roles".to_owned(),
        kind: LudicKind::Mission(MissionKind::Teaser),
        staged_refs: BTreeSet::new(),
        character_refs: both_characters.clone(),
        duration_minutes: None,
        interaction_mode: None,
        children: Vec::new(),
    });
    mission_ids.push(teaser_id);

    for k in 1..=config.core_mission_count {
        let mission_id = id(format!("mission-{}", k + 1));
        let module_id = id(format!("module-{k}"));

        let mut competence_refs = BTreeSet::new();
        for j in 1..=config.seed_competences_per_module {
            let discipline =
                &config.discipline_labels[(j - 1) % config.discipline_labels.len()];
            let competence_id = id(format!("competence-{k}-{j}"));
            scenario.competences.push(Competence {
                id: competence_id.clone(),
                name: format!("TODO: competence {j} of module {k}"),
                discipline: discipline.clone(),
                description: None,
            });
            competence_refs.insert(competence_id);
        }
        scenario.pedagogical_roots.push(PedagogicalElement {
            id: module_id.clone(),
            level: PedagogicalLevel::Module,
            title: format!("TODO: name module {k}"),
            objective: "TODO: pedagogical objective".to_owned(),
            competence_refs,
            participant_refs: [learners.clone()].into_iter().collect(),
            tags: BTreeSet::new(),
            children: Vec::new(),
        });

        let briefing_id = id(format!("mission-{}-briefing", k + 1));
        let debriefing_id = id(format!("mission-{}-debriefing", k + 1));
        scenario.ludic_roots.push(LudicElement {
            id: mission_id.clone(),
            level: LudicLevel::Mission,
            title: format!("TODO: name core mission {k}"),
            description: String::new(),
            kind: LudicKind::Mission(MissionKind::Core),
            staged_refs: [module_id].into_iter().collect(),
            character_refs: both_characters.clone(),
            duration_minutes: None,
            interaction_mode: None,
            children: vec![
                LudicElement {
                    id: briefing_id.clone(),
                    level: LudicLevel::Sequence,
                    title: "TODO: briefing".to_owned(),
                    description: "TODO: the mentor presents the tasks ahead".to_owned(),
                    kind: LudicKind::Sequence(SequenceKind::Briefing),
                    staged_refs: BTreeSet::new(),
                    character_refs: both_characters.clone(),
                    duration_minutes: None,
                    interaction_mode: None,
                    children: Vec::new(),
                },
                LudicElement {
                    id: debriefing_id.clone(),
                    level: LudicLevel::Sequence,
                    title: "TODO: debriefing".to_owned(),
                    description: "TODO: share experiences and consolidate what was learned"
                        .to_owned(),
                    kind: LudicKind::Sequence(SequenceKind::Debriefing),
                    staged_refs: BTreeSet::new(),
                    character_refs: both_characters.clone(),
                    duration_minutes: None,
                    interaction_mode: None,
                    children: Vec::new(),
                },
            ],
        });
        scenario.orderings.insert(
            OrderingOwner::Mission(mission_id.clone()),
            OrderingGraph {
                edges: [(briefing_id, debriefing_id)].into_iter().collect(),
                branch_groups: Vec::new(),
            },
        );
        mission_ids.push(mission_id);
    }

    if config.include_report_mission {
        let report_id = id(format!("mission-{}", mission_ids.len() + 1));
        scenario.ludic_roots.push(LudicElement {
            id: report_id.clone(),
            level: LudicLevel::Mission,
            title: "TODO: post-game analysis report".to_owned(),
            description: "TODO: learners report on the competences they acquired".to_owned(),
            kind: LudicKind::Mission(MissionKind::Report),
            staged_refs: BTreeSet::new(),
            character_refs: [experts.clone()].into_iter().collect(),
            duration_minutes: None,
            interaction_mode: None,
            children: Vec::new(),
        });
        mission_ids.push(report_id);
    }

    if mission_ids.len() >= 2 {
        scenario.orderings.insert(
            OrderingOwner::Missions,
            OrderingGraph {
                edges: mission_ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect(),
                branch_groups: Vec::new(),
            },
        );
    }

    Ok(scenario)
}
