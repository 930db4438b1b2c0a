//! Fixture scenarios and a seeded random-scenario generator.
//!
//! The corpus covers two fully modeled games, a land-science urbanism
//! internship (`LS`) and a problem-solving consultancy game (`PU`), plus four
//! design-team scenarios (`LG1`..`LG4`) in before/after revisions. The two
//! full fixtures carry the documented structure of the original games; where
//! the sources leave detail open (sequence texts, competence names), minimal
//! content is reconstructed and the document says so in its meta notes. The
//! `LG*` fixtures are synthetic minimal scenarios exhibiting exactly their
//! expected pattern sets.

use crate::catalog::PatternId;
use crate::format::serialize;
use crate::model::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Names of the shipped fixtures; also their file stems in the corpus
/// directory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FixtureName {
    Ls,
    Pu,
    Lg1Before,
    Lg1After,
    Lg2Before,
    Lg2After,
    Lg3Before,
    Lg3After,
    Lg4Before,
    Lg4After,
}

impl FixtureName {
    pub const ALL: [FixtureName; 10] = [
        FixtureName::Ls,
        FixtureName::Pu,
        FixtureName::Lg1Before,
        FixtureName::Lg1After,
        FixtureName::Lg2Before,
        FixtureName::Lg2After,
        FixtureName::Lg3Before,
        FixtureName::Lg3After,
        FixtureName::Lg4Before,
        FixtureName::Lg4After,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Ls => "LS",
            FixtureName::Pu => "PU",
            FixtureName::Lg1Before => "LG1_before",
            FixtureName::Lg1After => "LG1_after",
            FixtureName::Lg2Before => "LG2_before",
            FixtureName::Lg2After => "LG2_after",
            FixtureName::Lg3Before => "LG3_before",
            FixtureName::Lg3After => "LG3_after",
            FixtureName::Lg4Before => "LG4_before",
            FixtureName::Lg4After => "LG4_after",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Raised when a fixture name does not match any shipped fixture.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown fixture \"{0}\"; known: LS, PU, LG1_before..LG4_after")]
pub struct UnknownFixture(pub String);

impl std::str::FromStr for FixtureName {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| UnknownFixture(s.to_owned()))
    }
}

/// A corpus fixture: canonical document plus the pattern set it must exhibit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: FixtureName,
    /// Canonical scenario document.
    pub document: String,
    pub expected_patterns: BTreeSet<PatternId>,
}

/// Returns the named fixture. The document is validation-clean and detection
/// over it yields exactly `expected_patterns`.
pub fn fixture(name: FixtureName) -> Fixture {
    let scenario = fixture_scenario(name);
    let document = serialize(&scenario).expect("fixtures are validation-clean");
    Fixture { name, document, expected_patterns: expected_patterns(name) }
}

/// The named fixture as an in-memory scenario.
pub fn fixture_scenario(name: FixtureName) -> Scenario {
    match name {
        FixtureName::Ls => build_ls(),
        FixtureName::Pu => build_pu(),
        FixtureName::Lg1Before => build_lg1(false),
        FixtureName::Lg1After => build_lg1(true),
        FixtureName::Lg2Before => build_lg2(false),
        FixtureName::Lg2After => build_lg2(true),
        FixtureName::Lg3Before => build_lg3(false),
        FixtureName::Lg3After => build_lg3(true),
        FixtureName::Lg4Before => build_lg4(false),
        FixtureName::Lg4After => build_lg4(true),
    }
}

fn patterns(ids: &[PatternId]) -> BTreeSet<PatternId> {
    ids.iter().copied().collect()
}

/// The pattern set each fixture exhibits.
pub fn expected_patterns(name: FixtureName) -> BTreeSet<PatternId> {
    use PatternId::*;
    match name {
        FixtureName::Ls => patterns(&[P1, P2, P3, P4, P5, P6, P7, P8]),
        FixtureName::Pu => patterns(&[P1, P2, P3, P4, P5, P6, P7, P9]),
        FixtureName::Lg1Before => patterns(&[P2, P3]),
        FixtureName::Lg1After => patterns(&[P1, P2, P3, P5, P7]),
        FixtureName::Lg2Before => patterns(&[P1, P2, P3]),
        FixtureName::Lg2After => patterns(&[P1, P2, P3, P4]),
        FixtureName::Lg3Before => patterns(&[P1, P2]),
        FixtureName::Lg3After => patterns(&[P1, P2, P3, P4, P5]),
        FixtureName::Lg4Before => patterns(&[P2, P4, P6]),
        FixtureName::Lg4After => patterns(&[P1, P2, P3, P4, P5, P6, P7, P8]),
    }
}

// ---------------------------------------------------------------------------
// building blocks

fn id(s: &str) -> Identifier {
    Identifier::new(s).expect("fixture ids are non-empty")
}

fn ids(items: &[&str]) -> BTreeSet<Identifier> {
    items.iter().map(|s| id(s)).collect()
}

fn competence(cid: &str, name: &str, discipline: &str) -> Competence {
    Competence { id: id(cid), name: name.to_owned(), discipline: discipline.to_owned(), description: None }
}

fn role(pid: &str, name: &str, label: RoleLabel) -> Participant {
    Participant { id: id(pid), name: name.to_owned(), role_label: label, kind: ParticipantKind::Role }
}

fn team(pid: &str, name: &str, label: RoleLabel, members: &[(&str, Option<&str>)]) -> Participant {
    Participant {
        id: id(pid),
        name: name.to_owned(),
        role_label: label,
        kind: ParticipantKind::Team {
            members: members
                .iter()
                .map(|(n, v)| TeamMember { name: (*n).to_owned(), viewpoint: v.map(str::to_owned) })
                .collect(),
        },
    }
}

fn character(
    cid: &str,
    name: &str,
    archetype: Archetype,
    visibility: Visibility,
    plays: &[&str],
    helps: &[&str],
) -> Character {
    Character {
        id: id(cid),
        name: name.to_owned(),
        archetype,
        visibility,
        plays_refs: ids(plays),
        helps_refs: ids(helps),
    }
}

#[allow(clippy::too_many_arguments)]
fn pedagogical(
    pid: &str,
    level: PedagogicalLevel,
    title: &str,
    objective: &str,
    competences: &[&str],
    participants: &[&str],
    tags: &[&str],
    children: Vec<PedagogicalElement>,
) -> PedagogicalElement {
    PedagogicalElement {
        id: id(pid),
        level,
        title: title.to_owned(),
        objective: objective.to_owned(),
        competence_refs: ids(competences),
        participant_refs: ids(participants),
        tags: tags.iter().map(|t| (*t).to_owned()).collect(),
        children,
    }
}

#[allow(clippy::too_many_arguments)]
fn ludic(
    lid: &str,
    level: LudicLevel,
    kind: LudicKind,
    title: &str,
    description: &str,
    stages: &[&str],
    characters: &[&str],
    children: Vec<LudicElement>,
) -> LudicElement {
    LudicElement {
        id: id(lid),
        level,
        title: title.to_owned(),
        description: description.to_owned(),
        kind,
        staged_refs: ids(stages),
        character_refs: ids(characters),
        duration_minutes: None,
        interaction_mode: None,
        children,
    }
}

fn mission(
    lid: &str,
    kind: MissionKind,
    title: &str,
    description: &str,
    stages: &[&str],
    characters: &[&str],
    sequences: Vec<LudicElement>,
) -> LudicElement {
    ludic(lid, LudicLevel::Mission, LudicKind::Mission(kind), title, description, stages, characters, sequences)
}

fn sequence(
    lid: &str,
    kind: SequenceKind,
    title: &str,
    stages: &[&str],
    characters: &[&str],
    levels: Vec<LudicElement>,
) -> LudicElement {
    ludic(lid, LudicLevel::Sequence, LudicKind::Sequence(kind), title, "", stages, characters, levels)
}

fn game_level(lid: &str, title: &str, stages: &[&str], characters: &[&str]) -> LudicElement {
    ludic(lid, LudicLevel::GameLevel, LudicKind::GameLevel, title, "", stages, characters, Vec::new())
}

fn chain(nodes: &[&str]) -> OrderingGraph {
    OrderingGraph {
        edges: nodes.windows(2).map(|w| (id(w[0]), id(w[1]))).collect(),
        branch_groups: Vec::new(),
    }
}

fn meta(title: &str, version: &str, notes: &[&str]) -> Meta {
    Meta {
        title: title.to_owned(),
        authors: vec!["corpus".to_owned()],
        version: version.to_owned(),
        notes: notes.iter().map(|n| (*n).to_owned()).collect(),
        ..Meta::default()
    }
}

const RECONSTRUCTED: &str =
    "reconstructed encoding: pattern-relevant structure only, texts are stand-ins";
const SYNTHETIC: &str = "synthetic design-team scenario built to exhibit its documented pattern set";

// ---------------------------------------------------------------------------
// LS: urbanism internship game

fn build_ls() -> Scenario {
    let mut s = Scenario { meta: meta("Land Science", "1.0", &[RECONSTRUCTED]), ..Scenario::default() };

    s.competences = vec![
        competence("c-urban-analysis", "Analyze a city neighborhood", "urban planning"),
        competence("c-zoning", "Draft a zoning proposal", "urban planning"),
        competence("c-interviewing", "Collect stakeholder needs", "communication"),
        competence("c-team-coordination", "Coordinate group work", "communication"),
        competence("c-justification", "Present and justify design choices", "communication"),
    ];

    s.participants = vec![
        role("p-teacher", "Main teacher", RoleLabel::Teacher),
        role("p-tutors", "Assistant tutors", RoleLabel::Teacher),
        team(
            "p-interns",
            "Intern group",
            RoleLabel::Learner,
            &[("Intern A", None), ("Intern B", None), ("Intern C", None), ("Intern D", None)],
        ),
        team(
            "p-final-team",
            "Recomposed plan team",
            RoleLabel::Learner,
            &[
                ("Delegate of the retirees track", Some("retirees")),
                ("Delegate of the ecologists track", Some("ecologists")),
                ("Delegate of the families track", Some("families")),
                ("Delegate of the investors track", Some("investors")),
            ],
        ),
    ];

    s.characters = vec![
        character("ch-maggy", "Maggy", Archetype::Evaluator, Visibility::Hidden, &["p-teacher"], &[]),
        character("ch-kurt", "Kurt", Archetype::Mentor, Visibility::Visible, &["p-teacher"], &["ch-interns"]),
        character("ch-sydney", "Sydney", Archetype::Mentor, Visibility::Visible, &["p-tutors"], &["ch-interns"]),
        character("ch-kira", "Kira", Archetype::Mentor, Visibility::Visible, &["p-tutors"], &["ch-interns"]),
        character("ch-interns", "The interns", Archetype::ExpertGroup, Visibility::Visible, &["p-interns"], &[]),
    ];

    s.pedagogical_roots = vec![
        pedagogical(
            "mod-needs",
            PedagogicalLevel::Module,
            "Understand inhabitant needs",
            "Collect and structure the needs of every inhabitant type",
            &["c-interviewing", "c-urban-analysis"],
            &["p-interns"],
            &[],
            vec![pedagogical(
                "act-interviews",
                PedagogicalLevel::Act,
                "Conduct inhabitant interviews",
                "Run structured interviews with one inhabitant type",
                &["c-interviewing"],
                &["p-interns"],
                &[],
                vec![pedagogical(
                    "activity-notes",
                    PedagogicalLevel::Activity,
                    "Take structured interview notes",
                    "Record expressed needs while listening",
                    &["c-interviewing"],
                    &[],
                    &[],
                    vec![],
                )],
            )],
        ),
        pedagogical(
            "mod-final-plan",
            PedagogicalLevel::Module,
            "Design the final urban plan",
            "Produce one plan balancing all inhabitant needs",
            &["c-zoning", "c-justification", "c-team-coordination"],
            &["p-final-team"],
            &[],
            vec![pedagogical(
                "act-synthesis",
                PedagogicalLevel::Act,
                "Synthesize the viewpoints",
                "Merge the four track findings into one proposal",
                &["c-team-coordination"],
                &["p-final-team"],
                &[],
                vec![],
            )],
        ),
    ];

    s.ludic_roots = vec![
        mission(
            "mission-teaser",
            MissionKind::Teaser,
            "Welcome email from Maggy",
            "The company head hires the interns and states the redesign goal",
            &[],
            &["ch-maggy", "ch-kurt", "ch-interns"],
            vec![],
        ),
        mission(
            "mission-interviews",
            MissionKind::Core,
            "Interview the inhabitants",
            "Each intern group covers one inhabitant type",
            &["mod-needs"],
            &["ch-kurt", "ch-interns"],
            vec![
                sequence(
                    "seq-int-brief",
                    SequenceKind::Briefing,
                    "Interview briefing",
                    &[],
                    &["ch-kurt", "ch-interns"],
                    vec![],
                ),
                sequence(
                    "seq-retirees",
                    SequenceKind::Narrative,
                    "The retirees track",
                    &["act-interviews"],
                    &["ch-interns"],
                    vec![game_level("lvl-retiree-visit", "Visit at the community hall", &["activity-notes"], &["ch-interns"])],
                ),
                sequence("seq-ecologists", SequenceKind::Narrative, "The ecologists track", &["act-interviews"], &["ch-interns"], vec![]),
                sequence("seq-families", SequenceKind::Narrative, "The families track", &["act-interviews"], &["ch-interns"], vec![]),
                sequence("seq-investors", SequenceKind::Narrative, "The investors track", &["act-interviews"], &["ch-interns"], vec![]),
                sequence(
                    "seq-int-debrief",
                    SequenceKind::Debriefing,
                    "Interview debriefing",
                    &[],
                    &["ch-kurt", "ch-interns"],
                    vec![],
                ),
            ],
        ),
        mission(
            "mission-final-plan",
            MissionKind::Core,
            "The final urban plan",
            "Recomposed teams design the plan that suits everyone",
            &["mod-final-plan"],
            &["ch-kurt", "ch-sydney", "ch-kira", "ch-maggy", "ch-interns"],
            vec![
                sequence(
                    "seq-fin-brief",
                    SequenceKind::Briefing,
                    "Final plan briefing",
                    &[],
                    &["ch-kurt", "ch-interns"],
                    vec![],
                ),
                sequence("seq-fin-design", SequenceKind::Narrative, "Design the plan", &["act-synthesis"], &["ch-interns"], vec![]),
                sequence(
                    "seq-fin-debrief",
                    SequenceKind::Debriefing,
                    "Final debriefing",
                    &[],
                    &["ch-kurt", "ch-interns"],
                    vec![],
                ),
            ],
        ),
    ];

    // the four inhabitant tracks run in parallel between briefing and debriefing
    let mut interviews = OrderingGraph::default();
    for track in ["seq-retirees", "seq-ecologists", "seq-families", "seq-investors"] {
        interviews.edges.insert((id("seq-int-brief"), id(track)));
        interviews.edges.insert((id(track), id("seq-int-debrief")));
    }
    interviews.branch_groups.push(BranchGroup {
        split: id("seq-int-brief"),
        branches: ids(&["seq-retirees", "seq-ecologists", "seq-families", "seq-investors"]),
        semantics: BranchSemantics::Parallel,
    });
    s.orderings.insert(OrderingOwner::Missions, chain(&["mission-teaser", "mission-interviews", "mission-final-plan"]));
    s.orderings.insert(OrderingOwner::Mission(id("mission-interviews")), interviews);
    s.orderings.insert(
        OrderingOwner::Mission(id("mission-final-plan")),
        chain(&["seq-fin-brief", "seq-fin-design", "seq-fin-debrief"]),
    );

    s.documents = vec![DocumentArtifact {
        id: id("doc-final-plan"),
        title: "Final urbanism plan".to_owned(),
        produced_in: id("seq-fin-design"),
    }];

    s
}

// ---------------------------------------------------------------------------
// PU: problem-solving consultancy game

fn build_pu() -> Scenario {
    let mut s = Scenario { meta: meta("Puissance", "1.0", &[RECONSTRUCTED]), ..Scenario::default() };

    s.competences = vec![
        competence("c-method-phases", "Apply the problem-solving method phases", "problem solving"),
        competence("c-diagrams", "Build Pareto and Ishikawa diagrams", "problem solving"),
        competence("c-brainstorming", "Run a brainstorming session", "teamwork"),
        competence("c-team-organization", "Organize consultant team work", "teamwork"),
        competence("c-report-writing", "Write a consulting analysis report", "problem solving"),
    ];

    s.participants = vec![
        role("p-teacher", "Course teacher", RoleLabel::Teacher),
        team(
            "p-consultants",
            "Consultant team",
            RoleLabel::Learner,
            &[("Consultant A", None), ("Consultant B", None), ("Consultant C", None)],
        ),
    ];

    s.characters = vec![
        character("ch-supervisor", "The supervisor", Archetype::Mentor, Visibility::Visible, &["p-teacher"], &["ch-consultants"]),
        character("ch-consultants", "Consulting crew", Archetype::ExpertGroup, Visibility::Visible, &["p-consultants"], &[]),
    ];

    s.pedagogical_roots = vec![
        pedagogical(
            "mod-discover",
            PedagogicalLevel::Module,
            "Diagnose the delivery failures",
            "Measure and rank the company's delivery problems",
            &["c-method-phases", "c-team-organization"],
            &["p-consultants"],
            &[],
            vec![pedagogical(
                "act-diagnose",
                PedagogicalLevel::Act,
                "Chart the failures",
                "Quantify the failure causes",
                &["c-diagrams"],
                &["p-consultants"],
                &[],
                vec![pedagogical(
                    "activity-pareto",
                    PedagogicalLevel::Activity,
                    "Draw the Pareto chart",
                    "Rank causes by impact",
                    &["c-diagrams"],
                    &[],
                    &[],
                    vec![],
                )],
            )],
        ),
        pedagogical(
            "mod-causes",
            PedagogicalLevel::Module,
            "Analyze the root causes",
            "Trace each failure back to its causes",
            &["c-diagrams", "c-brainstorming"],
            &["p-consultants"],
            &[],
            vec![],
        ),
        pedagogical(
            "mod-solve",
            PedagogicalLevel::Module,
            "Develop and select solutions",
            "Propose and compare corrective actions",
            &["c-method-phases", "c-brainstorming"],
            &["p-consultants"],
            &[],
            vec![],
        ),
        pedagogical(
            "mod-report",
            PedagogicalLevel::Module,
            "Report on the acquired method",
            "Explain the competences exercised during the game",
            &["c-report-writing", "c-team-organization"],
            &["p-consultants"],
            &[TAG_REPORT_WRITING],
            vec![],
        ),
    ];

    s.ludic_roots = vec![
        mission(
            "pu-teaser",
            MissionKind::Teaser,
            "Hired as consultants",
            "The teacher forms teams of three and announces the engagement",
            &[],
            &["ch-supervisor", "ch-consultants"],
            vec![],
        ),
        mission(
            "pu-m1",
            MissionKind::Core,
            "Discover the problems",
            "First 4-hour session at the client",
            &["mod-discover"],
            &["ch-supervisor", "ch-consultants"],
            vec![
                sequence("pu-m1-brief", SequenceKind::Briefing, "Session one briefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
                sequence(
                    "pu-m1-work",
                    SequenceKind::Narrative,
                    "Measure the failures",
                    &["act-diagnose"],
                    &["ch-consultants"],
                    vec![game_level("pu-m1-pareto", "The Pareto board", &["activity-pareto"], &["ch-consultants"])],
                ),
                sequence("pu-m1-debrief", SequenceKind::Debriefing, "Session one debriefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
            ],
        ),
        mission(
            "pu-m2",
            MissionKind::Core,
            "Analyze the causes",
            "Second 4-hour session",
            &["mod-causes"],
            &["ch-supervisor", "ch-consultants"],
            vec![
                sequence("pu-m2-brief", SequenceKind::Briefing, "Session two briefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
                sequence("pu-m2-work", SequenceKind::Narrative, "Trace the causes", &[], &["ch-consultants"], vec![]),
                sequence("pu-m2-debrief", SequenceKind::Debriefing, "Session two debriefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
            ],
        ),
        mission(
            "pu-m3",
            MissionKind::Core,
            "Solve the chosen problem",
            "Each team picks the problem it wants to solve",
            &["mod-solve"],
            &["ch-supervisor", "ch-consultants"],
            vec![
                sequence("pu-m3-brief", SequenceKind::Briefing, "Session three briefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
                sequence("pu-m3-track-a", SequenceKind::Narrative, "Fix the logistics chain", &[], &["ch-consultants"], vec![]),
                sequence("pu-m3-track-b", SequenceKind::Narrative, "Fix the order scheduling", &[], &["ch-consultants"], vec![]),
                sequence("pu-m3-debrief", SequenceKind::Debriefing, "Session three debriefing", &[], &["ch-supervisor", "ch-consultants"], vec![]),
            ],
        ),
        mission(
            "pu-report",
            MissionKind::Report,
            "Write the analysis report",
            "Handed in one week after the game; the only evaluated work",
            &["mod-report"],
            &["ch-consultants"],
            vec![sequence("pu-report-write", SequenceKind::Narrative, "Write the report at home", &[], &["ch-consultants"], vec![])],
        ),
    ];

    let mut m3 = OrderingGraph::default();
    for track in ["pu-m3-track-a", "pu-m3-track-b"] {
        m3.edges.insert((id("pu-m3-brief"), id(track)));
        m3.edges.insert((id(track), id("pu-m3-debrief")));
    }
    m3.branch_groups.push(BranchGroup {
        split: id("pu-m3-brief"),
        branches: ids(&["pu-m3-track-a", "pu-m3-track-b"]),
        semantics: BranchSemantics::Alternative,
    });
    s.orderings.insert(OrderingOwner::Missions, chain(&["pu-teaser", "pu-m1", "pu-m2", "pu-m3", "pu-report"]));
    s.orderings.insert(OrderingOwner::Mission(id("pu-m1")), chain(&["pu-m1-brief", "pu-m1-work", "pu-m1-debrief"]));
    s.orderings.insert(OrderingOwner::Mission(id("pu-m2")), chain(&["pu-m2-brief", "pu-m2-work", "pu-m2-debrief"]));
    s.orderings.insert(OrderingOwner::Mission(id("pu-m3")), m3);

    s.documents = vec![DocumentArtifact {
        id: id("doc-analysis-report"),
        title: "Post-game analysis report".to_owned(),
        produced_in: id("pu-report-write"),
    }];

    s
}

// ---------------------------------------------------------------------------
// LG1..LG4: design-team scenarios, before and after the pattern review

fn build_lg1(after: bool) -> Scenario {
    let mut s = Scenario {
        meta: meta("LG1: the besieged city", if after { "0.2" } else { "0.1" }, &[SYNTHETIC]),
        ..Scenario::default()
    };
    s.competences = vec![
        competence("lg1-c-siege", "Read a medieval siege account", "history"),
        competence("lg1-c-terrain", "Interpret the terrain map", "geography"),
    ];
    s.participants = vec![
        role("lg1-teacher", "Teacher", RoleLabel::Teacher),
        team("lg1-team", "Chronicler team", RoleLabel::Learner, &[("Chronicler A", None), ("Chronicler B", None), ("Chronicler C", None)]),
    ];
    s.characters = vec![character(
        "lg1-chroniclers",
        "The royal chroniclers",
        Archetype::ExpertGroup,
        Visibility::Visible,
        &["lg1-team"],
        &[],
    )];
    s.pedagogical_roots = vec![pedagogical(
        "lg1-mod",
        PedagogicalLevel::Module,
        "The siege of the city",
        "Reconstruct the siege from sources and terrain",
        &["lg1-c-siege", "lg1-c-terrain"],
        &["lg1-team"],
        &[],
        vec![],
    )];

    let mut sequences = vec![
        sequence("lg1-m1-s1", SequenceKind::Narrative, "Enter the archives", &[], &["lg1-chroniclers"], vec![]),
        sequence("lg1-m1-s2", SequenceKind::Narrative, "Walk the walls", &[], &["lg1-chroniclers"], vec![]),
    ];
    let mut seq_chain = vec!["lg1-m1-s1", "lg1-m1-s2"];
    if after {
        s.characters.push(character(
            "lg1-guide",
            "The old castellan",
            Archetype::Mentor,
            Visibility::Visible,
            &["lg1-teacher"],
            &["lg1-chroniclers"],
        ));
        sequences.push(sequence(
            "lg1-m1-s3",
            SequenceKind::Debriefing,
            "Evening at the guild hall",
            &[],
            &["lg1-guide", "lg1-chroniclers"],
            vec![],
        ));
        seq_chain.push("lg1-m1-s3");
    }
    let core_characters: &[&str] =
        if after { &["lg1-guide", "lg1-chroniclers"] } else { &["lg1-chroniclers"] };
    let core = mission(
        "lg1-m1",
        MissionKind::Core,
        "Reconstruct the siege",
        "",
        &["lg1-mod"],
        core_characters,
        sequences,
    );
    if after {
        s.ludic_roots.push(mission(
            "lg1-m0",
            MissionKind::Teaser,
            "Opening cinematic",
            "The siege begins; the chroniclers are summoned",
            &[],
            &["lg1-guide", "lg1-chroniclers"],
            vec![],
        ));
    }
    s.ludic_roots.push(core);
    if after {
        s.orderings.insert(OrderingOwner::Missions, chain(&["lg1-m0", "lg1-m1"]));
    }
    s.orderings.insert(OrderingOwner::Mission(id("lg1-m1")), chain(&seq_chain));
    s
}

fn build_lg2(after: bool) -> Scenario {
    let mut s = Scenario {
        meta: meta("LG2: the lab incident", if after { "0.2" } else { "0.1" }, &[SYNTHETIC]),
        ..Scenario::default()
    };
    s.competences = vec![
        competence("lg2-c-reactions", "Balance the runaway reaction", "chemistry"),
        competence("lg2-c-protocol", "Apply the incident protocol", "safety"),
    ];
    s.participants = vec![
        role("lg2-teacher", "Teacher", RoleLabel::Teacher),
        team("lg2-team", "Response team", RoleLabel::Learner, &[("Chemist A", None), ("Chemist B", None), ("Chemist C", None)]),
    ];
    s.characters = vec![
        character("lg2-experts", "The response chemists", Archetype::ExpertGroup, Visibility::Visible, &["lg2-team"], &[]),
        character("lg2-narrator", "The site announcer", Archetype::Other, Visibility::Visible, &["lg2-teacher"], &[]),
    ];
    s.pedagogical_roots = vec![pedagogical(
        "lg2-mod",
        PedagogicalLevel::Module,
        "Contain the lab incident",
        "Stabilize the reaction under the safety protocol",
        &["lg2-c-reactions", "lg2-c-protocol"],
        &["lg2-team"],
        &[],
        vec![],
    )];
    s.ludic_roots = vec![
        mission(
            "lg2-m0",
            MissionKind::Teaser,
            "The alarm email",
            "An incident report calls the response team in",
            &[],
            &["lg2-narrator", "lg2-experts"],
            vec![],
        ),
        mission(
            "lg2-m1",
            MissionKind::Core,
            "Contain the incident",
            "",
            &["lg2-mod"],
            &["lg2-experts"],
            vec![
                sequence("lg2-m1-s1", SequenceKind::Narrative, "The spill alarm", &[], &["lg2-experts"], vec![]),
                sequence("lg2-m1-sa", SequenceKind::Narrative, "Contain the leak", &[], &["lg2-experts"], vec![]),
                sequence("lg2-m1-sb", SequenceKind::Narrative, "Neutralize the vat", &[], &["lg2-experts"], vec![]),
            ],
        ),
    ];
    s.orderings.insert(OrderingOwner::Missions, chain(&["lg2-m0", "lg2-m1"]));
    let graph = if after {
        // the revision lets teams pick one of the two responses
        let mut g = OrderingGraph::default();
        g.edges.insert((id("lg2-m1-s1"), id("lg2-m1-sa")));
        g.edges.insert((id("lg2-m1-s1"), id("lg2-m1-sb")));
        g.branch_groups.push(BranchGroup {
            split: id("lg2-m1-s1"),
            branches: ids(&["lg2-m1-sa", "lg2-m1-sb"]),
            semantics: BranchSemantics::Alternative,
        });
        g
    } else {
        chain(&["lg2-m1-s1", "lg2-m1-sa", "lg2-m1-sb"])
    };
    s.orderings.insert(OrderingOwner::Mission(id("lg2-m1")), graph);
    s
}

fn build_lg3(after: bool) -> Scenario {
    let mut s = Scenario {
        meta: meta("LG3: the rocket flight", if after { "0.2" } else { "0.1" }, &[SYNTHETIC]),
        ..Scenario::default()
    };
    s.competences = vec![
        competence("lg3-c-thrust", "Model thrust and gravity", "physics"),
        competence("lg3-c-curves", "Fit the trajectory curve", "mathematics"),
    ];
    s.participants = vec![
        role("lg3-teacher", "Teacher", RoleLabel::Teacher),
        role("lg3-learners", "Pilot trainees", RoleLabel::Learner),
    ];
    s.characters = vec![
        character("lg3-pilot", "The flight crew", Archetype::Other, Visibility::Visible, &["lg3-learners"], &[]),
        character("lg3-control", "Mission control", Archetype::Other, Visibility::Visible, &["lg3-teacher"], &[]),
    ];
    s.pedagogical_roots = vec![pedagogical(
        "lg3-mod",
        PedagogicalLevel::Module,
        "Launch the rocket",
        "Compute a trajectory that reaches orbit",
        &["lg3-c-thrust", "lg3-c-curves"],
        &["lg3-learners"],
        &[],
        vec![],
    )];

    let mut sequences = vec![sequence("lg3-m1-s1", SequenceKind::Narrative, "Plot the trajectory", &[], &["lg3-pilot"], vec![])];
    if after {
        sequences.push(sequence("lg3-m1-sa", SequenceKind::Narrative, "The slingshot strategy", &[], &["lg3-pilot"], vec![]));
        sequences.push(sequence("lg3-m1-sb", SequenceKind::Narrative, "The direct ascent strategy", &[], &["lg3-pilot"], vec![]));
    }
    sequences.push(sequence("lg3-m1-s2", SequenceKind::Narrative, "The launch", &[], &["lg3-pilot"], vec![]));

    s.ludic_roots = vec![
        mission(
            "lg3-m0",
            MissionKind::Teaser,
            "Recruitment day",
            "Mission control recruits the trainees as flight crew",
            &[],
            &["lg3-control", "lg3-pilot"],
            vec![],
        ),
        mission("lg3-m1", MissionKind::Core, "Reach the orbit", "", &["lg3-mod"], &["lg3-pilot"], sequences),
    ];
    s.orderings.insert(OrderingOwner::Missions, chain(&["lg3-m0", "lg3-m1"]));
    if after {
        s.participants.push(team(
            "lg3-crew",
            "Pilot crew",
            RoleLabel::Learner,
            &[("Pilot A", None), ("Pilot B", None), ("Pilot C", None)],
        ));
        s.characters.push(character(
            "lg3-experts",
            "The elite pilot crew",
            Archetype::ExpertGroup,
            Visibility::Visible,
            &["lg3-crew"],
            &[],
        ));
        s.characters.push(character(
            "lg3-copilot",
            "The veteran copilot",
            Archetype::Mentor,
            Visibility::Visible,
            &["lg3-teacher"],
            &["lg3-experts"],
        ));
        let mut g = OrderingGraph::default();
        g.edges.insert((id("lg3-m1-s1"), id("lg3-m1-sa")));
        g.edges.insert((id("lg3-m1-s1"), id("lg3-m1-sb")));
        g.edges.insert((id("lg3-m1-sa"), id("lg3-m1-s2")));
        g.edges.insert((id("lg3-m1-sb"), id("lg3-m1-s2")));
        g.branch_groups.push(BranchGroup {
            split: id("lg3-m1-s1"),
            branches: ids(&["lg3-m1-sa", "lg3-m1-sb"]),
            semantics: BranchSemantics::Alternative,
        });
        s.orderings.insert(OrderingOwner::Mission(id("lg3-m1")), g);
    } else {
        s.orderings.insert(OrderingOwner::Mission(id("lg3-m1")), chain(&["lg3-m1-s1", "lg3-m1-s2"]));
    }
    s
}

fn build_lg4(after: bool) -> Scenario {
    let mut s = Scenario {
        meta: meta("LG4: save the species", if after { "0.2" } else { "0.1" }, &[SYNTHETIC]),
        ..Scenario::default()
    };
    s.competences = vec![
        competence("lg4-c-epidemiology", "Trace the outbreak", "biology"),
        competence("lg4-c-tradeoffs", "Weigh the intervention trade-offs", "ethics"),
    ];
    s.participants = vec![
        role("lg4-teacher", "Teacher", RoleLabel::Teacher),
        role("lg4-learners", "Student scientists", RoleLabel::Learner),
    ];
    let sage_helps: &[&str] = if after { &["lg4-scientists"] } else { &[] };
    s.characters = vec![
        character("lg4-sage", "The elder ranger", Archetype::Mentor, Visibility::Visible, &["lg4-teacher"], sage_helps),
        character("lg4-heroes", "The field team", Archetype::Other, Visibility::Visible, &["lg4-learners"], &[]),
    ];
    s.pedagogical_roots = vec![
        pedagogical(
            "lg4-mod1",
            PedagogicalLevel::Module,
            "The outbreak",
            "Locate and characterize the pathogen",
            &["lg4-c-epidemiology", "lg4-c-tradeoffs"],
            &["lg4-learners"],
            &[],
            vec![],
        ),
        pedagogical(
            "lg4-mod2",
            PedagogicalLevel::Module,
            "The cure trials",
            "Choose an intervention and defend it",
            &["lg4-c-epidemiology", "lg4-c-tradeoffs"],
            if after { &["lg4-learners", "lg4-guilds"][..] } else { &["lg4-learners"][..] },
            &[],
            vec![],
        ),
    ];

    let mut m1_sequences = vec![
        sequence("lg4-m1-brief", SequenceKind::Briefing, "Ranger station briefing", &[], &["lg4-sage", "lg4-heroes"], vec![]),
        sequence("lg4-m1-sa", SequenceKind::Narrative, "Field sampling", &[], &["lg4-heroes"], vec![]),
        sequence("lg4-m1-sb", SequenceKind::Narrative, "Lab analysis", &[], &["lg4-heroes"], vec![]),
    ];
    let mut m2_sequences = vec![
        sequence("lg4-m2-brief", SequenceKind::Briefing, "Trial protocol briefing", &[], &["lg4-sage", "lg4-heroes"], vec![]),
        sequence("lg4-m2-work", SequenceKind::Narrative, "Run the trials", &[], &["lg4-heroes"], vec![]),
    ];
    if after {
        m1_sequences.push(sequence("lg4-m1-debrief", SequenceKind::Debriefing, "Campfire debriefing", &[], &["lg4-sage", "lg4-heroes"], vec![]));
        m2_sequences.push(sequence("lg4-m2-debrief", SequenceKind::Debriefing, "Council debriefing", &[], &["lg4-sage", "lg4-heroes"], vec![]));
    }

    if after {
        s.ludic_roots.push(mission(
            "lg4-m0",
            MissionKind::Teaser,
            "Elected to save the species",
            "The scientists are sworn in before the council",
            &[],
            &["lg4-sage", "lg4-heroes"],
            vec![],
        ));
    }
    s.ludic_roots.push(mission(
        "lg4-m1",
        MissionKind::Core,
        "Trace the outbreak",
        "",
        &["lg4-mod1"],
        &["lg4-sage", "lg4-heroes"],
        m1_sequences,
    ));
    s.ludic_roots.push(mission(
        "lg4-m2",
        MissionKind::Core,
        "Choose the cure",
        "",
        &["lg4-mod2"],
        &["lg4-sage", "lg4-heroes"],
        m2_sequences,
    ));

    if after {
        s.participants.push(team(
            "lg4-guilds",
            "The mixed guild",
            RoleLabel::Learner,
            &[
                ("Guild industrialist", Some("industrialist")),
                ("Guild conservationist", Some("conservationist")),
                ("Guild regulator", Some("regulator")),
            ],
        ));
        s.characters.push(character(
            "lg4-scientists",
            "The elected scientists",
            Archetype::ExpertGroup,
            Visibility::Visible,
            &["lg4-guilds"],
            &[],
        ));
        s.orderings.insert(OrderingOwner::Missions, chain(&["lg4-m0", "lg4-m1", "lg4-m2"]));
    } else {
        s.orderings.insert(OrderingOwner::Missions, chain(&["lg4-m1", "lg4-m2"]));
    }

    let mut m1 = OrderingGraph::default();
    m1.edges.insert((id("lg4-m1-brief"), id("lg4-m1-sa")));
    m1.edges.insert((id("lg4-m1-brief"), id("lg4-m1-sb")));
    m1.branch_groups.push(BranchGroup {
        split: id("lg4-m1-brief"),
        branches: ids(&["lg4-m1-sa", "lg4-m1-sb"]),
        semantics: BranchSemantics::Parallel,
    });
    if after {
        m1.edges.insert((id("lg4-m1-sa"), id("lg4-m1-debrief")));
        m1.edges.insert((id("lg4-m1-sb"), id("lg4-m1-debrief")));
        s.orderings.insert(OrderingOwner::Mission(id("lg4-m2")), chain(&["lg4-m2-brief", "lg4-m2-work", "lg4-m2-debrief"]));
    } else {
        s.orderings.insert(OrderingOwner::Mission(id("lg4-m2")), chain(&["lg4-m2-brief", "lg4-m2-work"]));
    }
    s.orderings.insert(OrderingOwner::Mission(id("lg4-m1")), m1);
    s
}

// ---------------------------------------------------------------------------
// random scenarios for property tests

/// Generates a deterministic random scenario: same seed, same scenario.
/// The output always passes validation without errors (warnings may occur),
/// and its total element count stays at or under `max_elements`.
pub fn random_scenario(seed: u64, max_elements: usize) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = max_elements.max(1);
    let mut gen = Generator { rng: &mut rng, remaining: budget };

    let mut s = Scenario {
        meta: Meta {
            title: format!("random scenario {seed}"),
            authors: vec!["generator".to_owned()],
            version: "1".to_owned(),
            ..Meta::default()
        },
        ..Scenario::default()
    };

    let disciplines = ["alpha", "beta", "gamma"];
    let viewpoints = ["north", "south", "east"];

    let n_competences = gen.take_at_least_one(4);
    for i in 0..n_competences {
        s.competences.push(Competence {
            id: id(&format!("c{i}")),
            name: format!("competence {i}"),
            discipline: (*disciplines.as_slice().choose(gen.rng).expect("non-empty")).to_owned(),
            description: if gen.rng.gen_bool(0.3) { Some(format!("about {i}")) } else { None },
        });
    }
    let competence_ids: Vec<Identifier> = s.competences.iter().map(|c| c.id.clone()).collect();

    let n_participants = gen.take(3);
    for i in 0..n_participants {
        let role_label = if gen.rng.gen_bool(0.5) { RoleLabel::Learner } else { RoleLabel::Teacher };
        let kind = if gen.rng.gen_bool(0.5) {
            ParticipantKind::Role
        } else {
            let size = gen.rng.gen_range(1..=5);
            ParticipantKind::Team {
                members: (0..size)
                    .map(|m| TeamMember {
                        name: format!("member {i}-{m}"),
                        viewpoint: if gen.rng.gen_bool(0.5) {
                            Some((*viewpoints.as_slice().choose(gen.rng).expect("non-empty")).to_owned())
                        } else {
                            None
                        },
                    })
                    .collect(),
            }
        };
        s.participants.push(Participant { id: id(&format!("p{i}")), name: format!("participant {i}"), role_label, kind });
    }
    let participant_ids: Vec<Identifier> = s.participants.iter().map(|p| p.id.clone()).collect();

    let n_characters = gen.take(3);
    let character_ids: Vec<Identifier> = (0..n_characters).map(|i| id(&format!("ch{i}"))).collect();
    for i in 0..n_characters {
        let archetype = *[
            Archetype::ExpertGroup,
            Archetype::Mentor,
            Archetype::Evaluator,
            Archetype::Antagonist,
            Archetype::Other,
        ]
        .as_slice()
        .choose(gen.rng)
        .expect("non-empty");
        let visibility = if gen.rng.gen_bool(0.2) { Visibility::Hidden } else { Visibility::Visible };
        let plays_refs = random_subset(gen.rng, &participant_ids, 0.4);
        let mut helps_refs = random_subset(gen.rng, &character_ids, 0.2);
        helps_refs.remove(&character_ids[i]);
        s.characters.push(Character {
            id: character_ids[i].clone(),
            name: format!("character {i}"),
            archetype,
            visibility,
            plays_refs,
            helps_refs,
        });
    }

    let n_modules = gen.take(2);
    for i in 0..n_modules {
        let mut module = random_pedagogical(
            &mut gen,
            PedagogicalLevel::Module,
            format!("mod{i}"),
            &competence_ids,
            &participant_ids,
        );
        let n_acts = gen.take(2);
        for j in 0..n_acts {
            let mut act = random_pedagogical(
                &mut gen,
                PedagogicalLevel::Act,
                format!("act{i}-{j}"),
                &competence_ids,
                &participant_ids,
            );
            let n_activities = gen.take(2);
            for k in 0..n_activities {
                act.children.push(random_pedagogical(
                    &mut gen,
                    PedagogicalLevel::Activity,
                    format!("acty{i}-{j}-{k}"),
                    &competence_ids,
                    &participant_ids,
                ));
            }
            module.children.push(act);
        }
        s.pedagogical_roots.push(module);
    }
    let modules: Vec<Identifier> = s.pedagogical_roots.iter().map(|m| m.id.clone()).collect();
    let acts: Vec<Identifier> = s
        .pedagogical_roots
        .iter()
        .flat_map(|m| m.children.iter().map(|a| a.id.clone()))
        .collect();
    let activities: Vec<Identifier> = s
        .pedagogical_roots
        .iter()
        .flat_map(|m| m.children.iter().flat_map(|a| a.children.iter().map(|x| x.id.clone())))
        .collect();

    let n_missions = gen.take(3);
    for i in 0..n_missions {
        let kind = *[MissionKind::Teaser, MissionKind::Core, MissionKind::Report]
            .as_slice()
            .choose(gen.rng)
            .expect("non-empty");
        let mut mission = random_ludic(
            &mut gen,
            LudicLevel::Mission,
            LudicKind::Mission(kind),
            format!("m{i}"),
            &modules,
            &character_ids,
        );
        let n_sequences = gen.take(3);
        for j in 0..n_sequences {
            let kind = *[
                SequenceKind::Narrative,
                SequenceKind::Test,
                SequenceKind::Briefing,
                SequenceKind::Debriefing,
            ]
            .as_slice()
            .choose(gen.rng)
            .expect("non-empty");
            let mut seq = random_ludic(
                &mut gen,
                LudicLevel::Sequence,
                LudicKind::Sequence(kind),
                format!("s{i}-{j}"),
                &acts,
                &character_ids,
            );
            let n_levels = gen.take(2);
            for k in 0..n_levels {
                seq.children.push(random_ludic(
                    &mut gen,
                    LudicLevel::GameLevel,
                    LudicKind::GameLevel,
                    format!("l{i}-{j}-{k}"),
                    &activities,
                    &character_ids,
                ));
            }
            mission.children.push(seq);
        }
        s.ludic_roots.push(mission);
    }

    let mission_ids: Vec<Identifier> = s.ludic_roots.iter().map(|m| m.id.clone()).collect();
    if let Some(graph) = random_ordering(gen.rng, &mission_ids) {
        s.orderings.insert(OrderingOwner::Missions, graph);
    }
    for mission in &s.ludic_roots {
        let sequence_ids: Vec<Identifier> = mission.children.iter().map(|c| c.id.clone()).collect();
        if let Some(graph) = random_ordering(gen.rng, &sequence_ids) {
            s.orderings.insert(OrderingOwner::Mission(mission.id.clone()), graph);
        }
    }

    let ludic_ids: Vec<Identifier> = s.ludic_elements().into_iter().map(|(_, e)| e.id.clone()).collect();
    if !ludic_ids.is_empty() {
        let n_documents = gen.take(2);
        for i in 0..n_documents {
            s.documents.push(DocumentArtifact {
                id: id(&format!("doc{i}")),
                title: format!("document {i}"),
                produced_in: ludic_ids.choose(gen.rng).expect("non-empty").clone(),
            });
        }
    }

    s
}

struct Generator<'a> {
    rng: &'a mut ChaCha8Rng,
    remaining: usize,
}

impl Generator<'_> {
    /// Spends up to `cap` budget on a random element count.
    fn take(&mut self, cap: usize) -> usize {
        let cap = cap.min(self.remaining);
        let n = self.rng.gen_range(0..=cap);
        self.remaining -= n;
        n
    }

    fn take_at_least_one(&mut self, cap: usize) -> usize {
        let cap = cap.min(self.remaining).max(1);
        let n = self.rng.gen_range(1..=cap);
        self.remaining = self.remaining.saturating_sub(n);
        n
    }
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[Identifier], p: f64) -> BTreeSet<Identifier> {
    pool.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

fn non_empty_subset(rng: &mut ChaCha8Rng, pool: &[Identifier]) -> BTreeSet<Identifier> {
    let mut set = random_subset(rng, pool, 0.4);
    if set.is_empty() {
        set.insert(pool.choose(rng).expect("pool checked non-empty").clone());
    }
    set
}

fn random_pedagogical(
    gen: &mut Generator<'_>,
    level: PedagogicalLevel,
    element_id: String,
    competences: &[Identifier],
    participants: &[Identifier],
) -> PedagogicalElement {
    let mut tags = BTreeSet::new();
    if gen.rng.gen_bool(0.15) {
        tags.insert(TAG_REPORT_WRITING.to_owned());
    }
    PedagogicalElement {
        id: id(&element_id),
        level,
        title: format!("{} {element_id}", level.as_str()),
        objective: format!("objective of {element_id}"),
        competence_refs: non_empty_subset(gen.rng, competences),
        participant_refs: random_subset(gen.rng, participants, 0.3),
        tags,
        children: Vec::new(),
    }
}

fn random_ludic(
    gen: &mut Generator<'_>,
    level: LudicLevel,
    kind: LudicKind,
    element_id: String,
    stage_pool: &[Identifier],
    characters: &[Identifier],
) -> LudicElement {
    let duration_minutes =
        if gen.rng.gen_bool(0.3) { Some(gen.rng.gen_range(5..=240) as f64) } else { None };
    let interaction_mode = if gen.rng.gen_bool(0.3) {
        Some(
            *[InteractionMode::Competition, InteractionMode::Collaboration, InteractionMode::Solo]
                .as_slice()
                .choose(gen.rng)
                .expect("non-empty"),
        )
    } else {
        None
    };
    LudicElement {
        id: id(&element_id),
        level,
        title: format!("{} {element_id}", level.as_str()),
        description: String::new(),
        kind,
        staged_refs: random_subset(gen.rng, stage_pool, 0.4),
        character_refs: random_subset(gen.rng, characters, 0.4),
        duration_minutes,
        interaction_mode,
        children: Vec::new(),
    }
}

/// Random acyclic ordering: edges only run forward along a random
/// permutation, so no cycle can form.
fn random_ordering(rng: &mut ChaCha8Rng, nodes: &[Identifier]) -> Option<OrderingGraph> {
    if nodes.len() < 2 || rng.gen_bool(0.3) {
        return None;
    }
    let mut perm: Vec<&Identifier> = nodes.iter().collect();
    perm.shuffle(rng);
    let mut graph = OrderingGraph::default();
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if rng.gen_bool(0.4) {
                graph.edges.insert((perm[i].clone(), perm[j].clone()));
            }
        }
    }
    if perm.len() >= 3 && rng.gen_bool(0.4) {
        let branch_count = rng.gen_range(2..=(perm.len() - 1).min(3));
        let semantics =
            if rng.gen_bool(0.5) { BranchSemantics::Parallel } else { BranchSemantics::Alternative };
        let branches: BTreeSet<Identifier> =
            perm[1..=branch_count].iter().map(|n| (*n).clone()).collect();
        for branch in &branches {
            graph.edges.insert((perm[0].clone(), branch.clone()));
        }
        graph.branch_groups.push(BranchGroup { split: perm[0].clone(), branches, semantics });
    }
    Some(graph)
}
