//! In-memory representation of a learning-game scenario: a pedagogical
//! structure (modules, acts, activities) and a ludic scenario (missions,
//! sequences, game levels) joined by level-matched staging links, plus the
//! competences, participants and characters both sides refer to.

use crate::path::Path;
use std::collections::HashMap;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Raised when constructing an [`Identifier`] from an empty string.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("identifier must be a non-empty string")]
pub struct EmptyIdentifier;

/// Element identifier. Non-empty by construction; uniqueness across one
/// scenario is enforced by the validator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(value: impl Into<String>) -> Result<Self, EmptyIdentifier> {
        let value = value.into();
        if value.is_empty() {
            return Err(EmptyIdentifier);
        }
        Ok(Identifier(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Identifier {
    type Err = EmptyIdentifier;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identifier::new(s)
    }
}

/// A competence the formation teaches, tagged with the discipline it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Competence {
    pub id: Identifier,
    pub name: String,
    /// Free-form discipline label; non-empty (pluridisciplinarity checks
    /// compare these labels).
    pub discipline: String,
    pub description: Option<String>,
}

/// Role a participant holds in the formation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RoleLabel {
    Learner,
    Teacher,
}

impl RoleLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleLabel::Learner => "learner",
            RoleLabel::Teacher => "teacher",
        }
    }
}

/// A named member of a team, optionally carrying a viewpoint label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamMember {
    pub name: String,
    pub viewpoint: Option<String>,
}

/// Whether a participant is a single role or a team of persons.
///
/// Teams carry the member list; a plain role never does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParticipantKind {
    Role,
    Team { members: Vec<TeamMember> },
}

/// A participant of the formation: a role (learner, teacher) or a team of
/// persons sharing one role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Participant {
    pub id: Identifier,
    pub name: String,
    pub role_label: RoleLabel,
    pub kind: ParticipantKind,
}

impl Participant {
    pub fn is_team(&self) -> bool {
        matches!(self.kind, ParticipantKind::Team { .. })
    }

    pub fn members(&self) -> &[TeamMember] {
        match &self.kind {
            ParticipantKind::Role => &[],
            ParticipantKind::Team { members } => members,
        }
    }
}

/// In-game persona archetype.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Archetype {
    ExpertGroup,
    Mentor,
    Evaluator,
    Antagonist,
    Other,
}

impl Archetype {
    pub fn as_str(self) -> &'static str {
        match self {
            Archetype::ExpertGroup => "expert_group",
            Archetype::Mentor => "mentor",
            Archetype::Evaluator => "evaluator",
            Archetype::Antagonist => "antagonist",
            Archetype::Other => "other",
        }
    }
}

/// Whether the players know who controls a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Visibility {
    Visible,
    Hidden,
}

/// A character of the game, optionally played by participants and optionally
/// helping other characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub id: Identifier,
    pub name: String,
    pub archetype: Archetype,
    pub visibility: Visibility,
    /// Participants who play this character.
    pub plays_refs: BTreeSet<Identifier>,
    /// Characters this one supports in the story.
    pub helps_refs: BTreeSet<Identifier>,
}

/// Granularity level of a pedagogical element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PedagogicalLevel {
    Module,
    Act,
    Activity,
}

impl PedagogicalLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            PedagogicalLevel::Module => "module",
            PedagogicalLevel::Act => "act",
            PedagogicalLevel::Activity => "activity",
        }
    }
}

/// Tag marking a pedagogical element as report writing work; one of the two
/// encodings of the post-game report pattern.
pub const TAG_REPORT_WRITING: &str = "report-writing";

/// A node of the three-level pedagogical structure.
///
/// Modules contain acts, acts contain activities; the level field always
/// matches the position in the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PedagogicalElement {
    pub id: Identifier,
    pub level: PedagogicalLevel,
    pub title: String,
    pub objective: String,
    /// Competences this element trains. Must be non-empty; the validator
    /// reports `E_MISSING_COMPETENCE` otherwise.
    pub competence_refs: BTreeSet<Identifier>,
    pub participant_refs: BTreeSet<Identifier>,
    pub tags: BTreeSet<String>,
    pub children: Vec<PedagogicalElement>,
}

/// Granularity level of a ludic element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LudicLevel {
    Mission,
    Sequence,
    GameLevel,
}

impl LudicLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            LudicLevel::Mission => "mission",
            LudicLevel::Sequence => "sequence",
            LudicLevel::GameLevel => "level",
        }
    }

    /// The pedagogical level a staging link from this ludic level must target.
    pub fn staged_level(self) -> PedagogicalLevel {
        match self {
            LudicLevel::Mission => PedagogicalLevel::Module,
            LudicLevel::Sequence => PedagogicalLevel::Act,
            LudicLevel::GameLevel => PedagogicalLevel::Activity,
        }
    }
}

/// Narrative role of a mission within the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MissionKind {
    Teaser,
    Core,
    Report,
}

impl MissionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MissionKind::Teaser => "teaser",
            MissionKind::Core => "core",
            MissionKind::Report => "report",
        }
    }
}

/// Narrative role of a sequence within its mission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SequenceKind {
    Narrative,
    Test,
    Briefing,
    Debriefing,
}

impl SequenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::Narrative => "narrative",
            SequenceKind::Test => "test",
            SequenceKind::Briefing => "briefing",
            SequenceKind::Debriefing => "debriefing",
        }
    }
}

/// Kind annotation of a ludic element, constrained by its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LudicKind {
    Mission(MissionKind),
    Sequence(SequenceKind),
    /// Game levels carry no narrative kind.
    GameLevel,
}

/// How participants interact during an element (optional extension field).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InteractionMode {
    Competition,
    Collaboration,
    Solo,
}

impl InteractionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            InteractionMode::Competition => "competition",
            InteractionMode::Collaboration => "collaboration",
            InteractionMode::Solo => "solo",
        }
    }
}

/// A node of the three-level ludic scenario.
///
/// Missions contain sequences, sequences contain game levels. `staged_refs`
/// point at pedagogical elements of the matching level (mission stages
/// modules, sequence stages acts, level stages activities).
#[derive(Debug, Clone, PartialEq)]
pub struct LudicElement {
    pub id: Identifier,
    pub level: LudicLevel,
    pub title: String,
    pub description: String,
    pub kind: LudicKind,
    pub staged_refs: BTreeSet<Identifier>,
    pub character_refs: BTreeSet<Identifier>,
    /// Planned duration in minutes (extension field, carried but not used by
    /// any pattern rule).
    pub duration_minutes: Option<f64>,
    /// Interaction modality (extension field, same status as duration).
    pub interaction_mode: Option<InteractionMode>,
    pub children: Vec<LudicElement>,
}

impl LudicElement {
    pub fn mission_kind(&self) -> Option<MissionKind> {
        match self.kind {
            LudicKind::Mission(k) => Some(k),
            _ => None,
        }
    }

    pub fn sequence_kind(&self) -> Option<SequenceKind> {
        match self.kind {
            LudicKind::Sequence(k) => Some(k),
            _ => None,
        }
    }
}

/// Which of two branching semantics a branch group declares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BranchSemantics {
    /// All branches are taken (split work across groups).
    Parallel,
    /// One branch is chosen among the alternatives.
    Alternative,
}

impl BranchSemantics {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchSemantics::Parallel => "parallel",
            BranchSemantics::Alternative => "alternative",
        }
    }
}

/// A fan-out point in a sibling ordering: after `split`, play continues into
/// two or more branch entry nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchGroup {
    pub split: Identifier,
    pub branches: BTreeSet<Identifier>,
    pub semantics: BranchSemantics,
}

/// Declared precedence among one group of ludic siblings (the top-level
/// missions, or the sequences of one mission).
///
/// The node set is not stored: it is always the owner's current children, so
/// the graph can never disagree with the tree. An entry with no edges and no
/// branch groups is meaningful: it declares that document order is the
/// intended order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderingGraph {
    /// Precedence pairs `(before, after)`.
    pub edges: BTreeSet<(Identifier, Identifier)>,
    pub branch_groups: Vec<BranchGroup>,
}

impl OrderingGraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.branch_groups.is_empty()
    }
}

/// Owner key of a sibling ordering group: the root mission group or one
/// mission's sequence group.
///
/// Serialized as the owning mission's id, or the empty string for the root
/// group (identifiers are non-empty, so the empty key can never collide).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderingOwner {
    Missions,
    Mission(Identifier),
}

impl OrderingOwner {
    pub fn as_key(&self) -> &str {
        match self {
            OrderingOwner::Missions => "",
            OrderingOwner::Mission(id) => id.as_str(),
        }
    }
}

/// An artifact record: a document found or written during play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentArtifact {
    pub id: Identifier,
    pub title: String,
    /// Ludic element during which the document is produced.
    pub produced_in: Identifier,
}

/// Document header fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meta {
    pub title: String,
    pub authors: Vec<String>,
    pub version: String,
    pub format_version: String,
    /// Free-form annotations (e.g. marking reconstructed or placeholder content).
    pub notes: Vec<String>,
}

impl Default for Meta {
    fn default() -> Self {
        Meta {
            title: String::new(),
            authors: Vec::new(),
            version: String::new(),
            format_version: crate::format::FORMAT_VERSION.to_owned(),
            notes: Vec::new(),
        }
    }
}

/// A full scenario: the twin trees plus the shared pools they reference.
///
/// A loaded scenario is an immutable snapshot; every operation in this crate
/// is a pure function over it, so snapshots can be shared freely across
/// threads.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scenario {
    pub meta: Meta,
    pub competences: Vec<Competence>,
    pub participants: Vec<Participant>,
    pub characters: Vec<Character>,
    pub pedagogical_roots: Vec<PedagogicalElement>,
    pub ludic_roots: Vec<LudicElement>,
    pub orderings: BTreeMap<OrderingOwner, OrderingGraph>,
    pub documents: Vec<DocumentArtifact>,
}

/// What kind of element an identifier resolved to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Competence,
    Participant,
    Character,
    Pedagogical(PedagogicalLevel),
    Ludic(LudicLevel),
    Document,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Competence => f.write_str("competence"),
            ElementKind::Participant => f.write_str("participant"),
            ElementKind::Character => f.write_str("character"),
            ElementKind::Pedagogical(l) => f.write_str(l.as_str()),
            ElementKind::Ludic(l) => f.write_str(l.as_str()),
            ElementKind::Document => f.write_str("document"),
        }
    }
}

/// A resolved element reference, borrowed from the scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedElement<'a> {
    Competence(&'a Competence),
    Participant(&'a Participant),
    Character(&'a Character),
    Pedagogical(&'a PedagogicalElement),
    Ludic(&'a LudicElement),
    Document(&'a DocumentArtifact),
}

impl<'a> ResolvedElement<'a> {
    pub fn kind(&self) -> ElementKind {
        match self {
            ResolvedElement::Competence(_) => ElementKind::Competence,
            ResolvedElement::Participant(_) => ElementKind::Participant,
            ResolvedElement::Character(_) => ElementKind::Character,
            ResolvedElement::Pedagogical(e) => ElementKind::Pedagogical(e.level),
            ResolvedElement::Ludic(e) => ElementKind::Ludic(e.level),
            ResolvedElement::Document(_) => ElementKind::Document,
        }
    }

    pub fn id(&self) -> &'a Identifier {
        match self {
            ResolvedElement::Competence(e) => &e.id,
            ResolvedElement::Participant(e) => &e.id,
            ResolvedElement::Character(e) => &e.id,
            ResolvedElement::Pedagogical(e) => &e.id,
            ResolvedElement::Ludic(e) => &e.id,
            ResolvedElement::Document(e) => &e.id,
        }
    }
}

impl Scenario {
    /// Look up the unique element carrying `id`. Returns `None` when no
    /// element has that id. On a scenario with duplicate ids (invalid), the
    /// first occurrence in document order wins.
    pub fn resolve(&self, id: &Identifier) -> Option<ResolvedElement<'_>> {
        self.walk_elements()
            .find(|(_, e)| e.id() == id)
            .map(|(_, e)| e)
    }

    /// All elements with their paths, in document order: competences,
    /// participants, characters, pedagogical tree (preorder), ludic tree
    /// (preorder), documents.
    pub fn walk_elements(&self) -> impl Iterator<Item = (Path, ResolvedElement<'_>)> {
        let mut out: Vec<(Path, ResolvedElement<'_>)> = Vec::new();
        let root = Path::root();
        for (i, c) in self.competences.iter().enumerate() {
            out.push((root.key("competences").index(i), ResolvedElement::Competence(c)));
        }
        for (i, p) in self.participants.iter().enumerate() {
            out.push((root.key("participants").index(i), ResolvedElement::Participant(p)));
        }
        for (i, c) in self.characters.iter().enumerate() {
            out.push((root.key("characters").index(i), ResolvedElement::Character(c)));
        }
        for (i, m) in self.pedagogical_roots.iter().enumerate() {
            walk_pedagogical(m, root.key("pedagogical").index(i), &mut out);
        }
        for (i, m) in self.ludic_roots.iter().enumerate() {
            walk_ludic(m, root.key("ludic").index(i), &mut out);
        }
        for (i, d) in self.documents.iter().enumerate() {
            out.push((root.key("documents").index(i), ResolvedElement::Document(d)));
        }
        out.into_iter()
    }

    /// All pedagogical elements with paths, preorder.
    pub fn pedagogical_elements(&self) -> Vec<(Path, &PedagogicalElement)> {
        self.walk_elements()
            .filter_map(|(p, e)| match e {
                ResolvedElement::Pedagogical(el) => Some((p, el)),
                _ => None,
            })
            .collect()
    }

    /// All ludic elements with paths, preorder.
    pub fn ludic_elements(&self) -> Vec<(Path, &LudicElement)> {
        self.walk_elements()
            .filter_map(|(p, e)| match e {
                ResolvedElement::Ludic(el) => Some((p, el)),
                _ => None,
            })
            .collect()
    }

    /// Document-order rank of every element id (first occurrence wins).
    pub fn document_index(&self) -> HashMap<Identifier, usize> {
        let mut map = HashMap::new();
        for (rank, (_, e)) in self.walk_elements().enumerate() {
            map.entry(e.id().clone()).or_insert(rank);
        }
        map
    }

    /// The sibling groups that may carry an ordering: the root mission group
    /// and each mission's sequence group. Nodes come in document order.
    pub fn sibling_groups(&self) -> Vec<SiblingGroup<'_>> {
        let mut groups = Vec::new();
        groups.push(SiblingGroup {
            owner: OrderingOwner::Missions,
            owner_path: Path::root().key("ludic"),
            nodes: self.ludic_roots.iter().collect(),
            graph: self.orderings.get(&OrderingOwner::Missions),
        });
        for (i, mission) in self.ludic_roots.iter().enumerate() {
            let owner = OrderingOwner::Mission(mission.id.clone());
            groups.push(SiblingGroup {
                graph: self.orderings.get(&owner),
                owner,
                owner_path: Path::root().key("ludic").index(i),
                nodes: mission.children.iter().collect(),
            });
        }
        groups
    }
}

/// One orderable sibling group with its declared graph, if any.
#[derive(Debug, Clone)]
pub struct SiblingGroup<'a> {
    pub owner: OrderingOwner,
    pub owner_path: Path,
    pub nodes: Vec<&'a LudicElement>,
    pub graph: Option<&'a OrderingGraph>,
}

fn walk_pedagogical<'a>(
    el: &'a PedagogicalElement,
    path: Path,
    out: &mut Vec<(Path, ResolvedElement<'a>)>,
) {
    let child_key = match el.level {
        PedagogicalLevel::Module => "acts",
        PedagogicalLevel::Act => "activities",
        PedagogicalLevel::Activity => "",
    };
    out.push((path.clone(), ResolvedElement::Pedagogical(el)));
    for (i, child) in el.children.iter().enumerate() {
        walk_pedagogical(child, path.key(child_key).index(i), out);
    }
}

fn walk_ludic<'a>(el: &'a LudicElement, path: Path, out: &mut Vec<(Path, ResolvedElement<'a>)>) {
    let child_key = match el.level {
        LudicLevel::Mission => "sequences",
        LudicLevel::Sequence => "levels",
        LudicLevel::GameLevel => "",
    };
    out.push((path.clone(), ResolvedElement::Ludic(el)));
    for (i, child) in el.children.iter().enumerate() {
        walk_ludic(child, path.key(child_key).index(i), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifier_rejects_empty() {
        assert_eq!(Identifier::new(""), Err(EmptyIdentifier));
        assert!(Identifier::new("m1").is_ok());
    }

    #[test]
    fn resolve_unknown_is_none() {
        let s = Scenario::default();
        assert!(s.resolve(&Identifier::new("nope").unwrap()).is_none());
    }

    #[test]
    fn walk_order_is_document_order() {
        let mut s = Scenario::default();
        s.competences.push(Competence {
            id: Identifier::new("c1").unwrap(),
            name: "c".into(),
            discipline: "d".into(),
            description: None,
        });
        s.participants.push(Participant {
            id: Identifier::new("p1").unwrap(),
            name: "p".into(),
            role_label: RoleLabel::Learner,
            kind: ParticipantKind::Role,
        });
        let idx = s.document_index();
        assert!(idx[&Identifier::new("c1").unwrap()] < idx[&Identifier::new("p1").unwrap()]);
    }
}
