//! Canonical on-disk document format (`.lgs.json`).
//!
//! A scenario document is UTF-8 JSON with the top-level keys `meta`,
//! `competences`, `participants`, `characters`, `pedagogical`, `ludic`,
//! `orderings`, `documents`, in that order. Parsing is strict: unknown keys
//! and illegal enum values are rejected with a path to the offending spot.
//! Serialization always produces the canonical byte layout: fixed key order,
//! 2-space indentation, sorted reference sets, empty fields omitted, a single
//! trailing newline.

use crate::model::*;
use crate::path::Path;
use crate::validate::{validate, Diagnostic, Severity};
use serde_json::{Map, Value};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Format version written into `meta.format_version`.
pub const FORMAT_VERSION: &str = "1";

/// Extension of scenario document files.
pub const FILE_EXTENSION: &str = ".lgs.json";

/// Failure class of a parse error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorCode {
    /// Malformed text, wrong value type, or a violated field constraint.
    Syntax,
    /// A key the format does not define (strict mode rejects these).
    UnknownKey,
    /// A value outside a closed enum set.
    BadEnum,
}

impl ParseErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorCode::Syntax => "E_SYNTAX",
            ParseErrorCode::UnknownKey => "E_UNKNOWN_KEY",
            ParseErrorCode::BadEnum => "E_BAD_ENUM",
        }
    }
}

/// A parse failure, addressed by element path.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{} {path}: {message}", code.as_str())]
pub struct ParseError {
    pub code: ParseErrorCode,
    pub path: Path,
    pub message: String,
}

impl ParseError {
    fn syntax(path: Path, message: impl Into<String>) -> Self {
        ParseError { code: ParseErrorCode::Syntax, path, message: message.into() }
    }
}

/// Serialization refusal: the scenario carries error-severity diagnostics.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct SerializeError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for SerializeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "refusing to serialize a scenario with {} validation error(s); first: {}",
            self.diagnostics.len(),
            self.diagnostics[0]
        )
    }
}

/// Parses raw file bytes. The document must be UTF-8 without a byte order mark.
pub fn parse_bytes(bytes: &[u8]) -> Result<Scenario, ParseError> {
    if bytes.starts_with(&[0xEF, 0xBB, 0xBF]) {
        return Err(ParseError::syntax(
            Path::root(),
            "byte order mark not allowed; documents are plain UTF-8",
        ));
    }
    let text = std::str::from_utf8(bytes)
        .map_err(|e| ParseError::syntax(Path::root(), format!("invalid UTF-8: {e}")))?;
    parse(text)
}

/// Parses a scenario document. Structural problems (bad syntax, unknown keys,
/// illegal enum values, violated field constraints) fail here; referential
/// problems (dangling ids, missing competences) parse fine and are reported
/// by the validator.
pub fn parse(text: &str) -> Result<Scenario, ParseError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| ParseError::syntax(Path::root(), format!("malformed JSON: {e}")))?;
    let root = Path::root();
    let obj = as_object(&value, &root)?;
    check_keys(
        obj,
        &[
            "meta",
            "competences",
            "participants",
            "characters",
            "pedagogical",
            "ludic",
            "orderings",
            "documents",
        ],
        &root,
    )?;

    let meta = parse_meta(require(obj, "meta", &root)?, root.key("meta"))?;

    let mut scenario = Scenario { meta, ..Scenario::default() };

    for (i, v) in optional_array(obj, "competences", &root)?.iter().enumerate() {
        scenario.competences.push(parse_competence(v, root.key("competences").index(i))?);
    }
    for (i, v) in optional_array(obj, "participants", &root)?.iter().enumerate() {
        scenario.participants.push(parse_participant(v, root.key("participants").index(i))?);
    }
    for (i, v) in optional_array(obj, "characters", &root)?.iter().enumerate() {
        scenario.characters.push(parse_character(v, root.key("characters").index(i))?);
    }
    for (i, v) in optional_array(obj, "pedagogical", &root)?.iter().enumerate() {
        scenario.pedagogical_roots.push(parse_pedagogical(
            v,
            PedagogicalLevel::Module,
            root.key("pedagogical").index(i),
        )?);
    }
    for (i, v) in optional_array(obj, "ludic", &root)?.iter().enumerate() {
        scenario
            .ludic_roots
            .push(parse_ludic(v, LudicLevel::Mission, root.key("ludic").index(i))?);
    }
    if let Some(v) = obj.get("orderings") {
        let path = root.key("orderings");
        for (key, graph) in as_object(v, &path)? {
            let owner = if key.is_empty() {
                OrderingOwner::Missions
            } else {
                OrderingOwner::Mission(Identifier::new(key.clone()).expect("non-empty key"))
            };
            let graph = parse_ordering_graph(graph, path.key(key))?;
            scenario.orderings.insert(owner, graph);
        }
    }
    for (i, v) in optional_array(obj, "documents", &root)?.iter().enumerate() {
        scenario.documents.push(parse_document(v, root.key("documents").index(i))?);
    }
    Ok(scenario)
}

/// Serializes to the canonical document layout. Refuses scenarios that carry
/// error-severity diagnostics (warnings are allowed): pattern analysis and
/// interchange both presuppose a well-formed graph.
pub fn serialize(scenario: &Scenario) -> Result<String, SerializeError> {
    let diagnostics: Vec<Diagnostic> = validate(scenario)
        .into_iter()
        .filter(|d| d.severity() == Severity::Error)
        .collect();
    if !diagnostics.is_empty() {
        return Err(SerializeError { diagnostics });
    }
    let tree = scenario_to_cval(scenario);
    let mut out = String::new();
    render(&tree, 0, &mut out);
    out.push('\n');
    Ok(out)
}

// ---------------------------------------------------------------------------
// parsing helpers

fn as_object<'v>(v: &'v Value, path: &Path) -> Result<&'v Map<String, Value>, ParseError> {
    v.as_object()
        .ok_or_else(|| ParseError::syntax(path.clone(), "expected an object"))
}

fn as_array<'v>(v: &'v Value, path: &Path) -> Result<&'v [Value], ParseError> {
    v.as_array()
        .map(|a| a.as_slice())
        .ok_or_else(|| ParseError::syntax(path.clone(), "expected an array"))
}

fn as_string<'v>(v: &'v Value, path: &Path) -> Result<&'v str, ParseError> {
    v.as_str()
        .ok_or_else(|| ParseError::syntax(path.clone(), "expected a string"))
}

fn check_keys(
    obj: &Map<String, Value>,
    allowed: &[&str],
    path: &Path,
) -> Result<(), ParseError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError {
                code: ParseErrorCode::UnknownKey,
                path: path.key(key),
                message: format!("unknown key \"{key}\""),
            });
        }
    }
    Ok(())
}

fn require<'v>(
    obj: &'v Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<&'v Value, ParseError> {
    obj.get(key)
        .ok_or_else(|| ParseError::syntax(path.clone(), format!("missing required key \"{key}\"")))
}

fn required_string(
    obj: &Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<String, ParseError> {
    Ok(as_string(require(obj, key, path)?, &path.key(key))?.to_owned())
}

fn optional_string(
    obj: &Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<Option<String>, ParseError> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => Ok(Some(as_string(v, &path.key(key))?.to_owned())),
    }
}

fn optional_array<'v>(
    obj: &'v Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<&'v [Value], ParseError> {
    match obj.get(key) {
        None => Ok(&[]),
        Some(v) => as_array(v, &path.key(key)),
    }
}

fn parse_identifier(v: &Value, path: &Path) -> Result<Identifier, ParseError> {
    let s = as_string(v, path)?;
    Identifier::new(s)
        .map_err(|e| ParseError::syntax(path.clone(), e.to_string()))
}

fn required_id(obj: &Map<String, Value>, key: &str, path: &Path) -> Result<Identifier, ParseError> {
    parse_identifier(require(obj, key, path)?, &path.key(key))
}

/// Reads an optional array of id strings as a set (duplicates collapse).
fn id_set(
    obj: &Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<BTreeSet<Identifier>, ParseError> {
    let mut out = BTreeSet::new();
    for (i, v) in optional_array(obj, key, path)?.iter().enumerate() {
        out.insert(parse_identifier(v, &path.key(key).index(i))?);
    }
    Ok(out)
}

fn string_list(
    obj: &Map<String, Value>,
    key: &str,
    path: &Path,
) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    for (i, v) in optional_array(obj, key, path)?.iter().enumerate() {
        out.push(as_string(v, &path.key(key).index(i))?.to_owned());
    }
    Ok(out)
}

fn bad_enum(path: Path, value: &str, allowed: &[&str]) -> ParseError {
    ParseError {
        code: ParseErrorCode::BadEnum,
        path,
        message: format!("illegal value \"{value}\"; expected one of: {}", allowed.join(", ")),
    }
}

fn parse_meta(v: &Value, path: Path) -> Result<Meta, ParseError> {
    let obj = as_object(v, &path)?;
    check_keys(obj, &["title", "authors", "version", "format_version", "notes"], &path)?;
    Ok(Meta {
        title: optional_string(obj, "title", &path)?.unwrap_or_default(),
        authors: string_list(obj, "authors", &path)?,
        version: optional_string(obj, "version", &path)?.unwrap_or_default(),
        format_version: optional_string(obj, "format_version", &path)?
            .unwrap_or_else(|| FORMAT_VERSION.to_owned()),
        notes: string_list(obj, "notes", &path)?,
    })
}

fn parse_competence(v: &Value, path: Path) -> Result<Competence, ParseError> {
    let obj = as_object(v, &path)?;
    check_keys(obj, &["id", "name", "discipline", "description"], &path)?;
    let discipline = required_string(obj, "discipline", &path)?;
    if discipline.is_empty() {
        return Err(ParseError::syntax(path.key("discipline"), "discipline must be non-empty"));
    }
    Ok(Competence {
        id: required_id(obj, "id", &path)?,
        name: required_string(obj, "name", &path)?,
        discipline,
        description: optional_string(obj, "description", &path)?,
    })
}

fn parse_role_label(v: &Value, path: &Path) -> Result<RoleLabel, ParseError> {
    match as_string(v, path)? {
        "learner" => Ok(RoleLabel::Learner),
        "teacher" => Ok(RoleLabel::Teacher),
        other => Err(bad_enum(path.clone(), other, &["learner", "teacher"])),
    }
}

fn parse_participant(v: &Value, path: Path) -> Result<Participant, ParseError> {
    let obj = as_object(v, &path)?;
    let kind_value = require(obj, "kind", &path)?;
    let kind_path = path.key("kind");
    let kind = match as_string(kind_value, &kind_path)? {
        "role" => {
            check_keys(obj, &["id", "name", "kind", "role_label"], &path)?;
            ParticipantKind::Role
        }
        "team" => {
            check_keys(obj, &["id", "name", "kind", "role_label", "members"], &path)?;
            let mut members = Vec::new();
            for (i, m) in optional_array(obj, "members", &path)?.iter().enumerate() {
                let m_path = path.key("members").index(i);
                let m_obj = as_object(m, &m_path)?;
                check_keys(m_obj, &["name", "viewpoint"], &m_path)?;
                members.push(TeamMember {
                    name: required_string(m_obj, "name", &m_path)?,
                    viewpoint: optional_string(m_obj, "viewpoint", &m_path)?,
                });
            }
            ParticipantKind::Team { members }
        }
        other => return Err(bad_enum(kind_path, other, &["role", "team"])),
    };
    Ok(Participant {
        id: required_id(obj, "id", &path)?,
        name: required_string(obj, "name", &path)?,
        role_label: parse_role_label(require(obj, "role_label", &path)?, &path.key("role_label"))?,
        kind,
    })
}

fn parse_character(v: &Value, path: Path) -> Result<Character, ParseError> {
    let obj = as_object(v, &path)?;
    check_keys(obj, &["id", "name", "archetype", "visibility", "plays", "helps"], &path)?;
    let archetype_path = path.key("archetype");
    let archetype = match as_string(require(obj, "archetype", &path)?, &archetype_path)? {
        "expert_group" => Archetype::ExpertGroup,
        "mentor" => Archetype::Mentor,
        "evaluator" => Archetype::Evaluator,
        "antagonist" => Archetype::Antagonist,
        "other" => Archetype::Other,
        v => {
            return Err(bad_enum(
                archetype_path,
                v,
                &["expert_group", "mentor", "evaluator", "antagonist", "other"],
            ))
        }
    };
    let visibility = match obj.get("visibility") {
        None => Visibility::Visible,
        Some(v) => match as_string(v, &path.key("visibility"))? {
            "visible" => Visibility::Visible,
            "hidden" => Visibility::Hidden,
            other => return Err(bad_enum(path.key("visibility"), other, &["visible", "hidden"])),
        },
    };
    Ok(Character {
        id: required_id(obj, "id", &path)?,
        name: required_string(obj, "name", &path)?,
        archetype,
        visibility,
        plays_refs: id_set(obj, "plays", &path)?,
        helps_refs: id_set(obj, "helps", &path)?,
    })
}

fn parse_pedagogical(
    v: &Value,
    level: PedagogicalLevel,
    path: Path,
) -> Result<PedagogicalElement, ParseError> {
    let child_key = match level {
        PedagogicalLevel::Module => Some("acts"),
        PedagogicalLevel::Act => Some("activities"),
        PedagogicalLevel::Activity => None,
    };
    let obj = as_object(v, &path)?;
    let mut allowed = vec!["id", "title", "objective", "competences", "participants", "tags"];
    if let Some(k) = child_key {
        allowed.push(k);
    }
    check_keys(obj, &allowed, &path)?;

    let mut children = Vec::new();
    if let Some(k) = child_key {
        let child_level = match level {
            PedagogicalLevel::Module => PedagogicalLevel::Act,
            _ => PedagogicalLevel::Activity,
        };
        for (i, c) in optional_array(obj, k, &path)?.iter().enumerate() {
            children.push(parse_pedagogical(c, child_level, path.key(k).index(i))?);
        }
    }
    Ok(PedagogicalElement {
        id: required_id(obj, "id", &path)?,
        level,
        title: required_string(obj, "title", &path)?,
        objective: optional_string(obj, "objective", &path)?.unwrap_or_default(),
        competence_refs: id_set(obj, "competences", &path)?,
        participant_refs: id_set(obj, "participants", &path)?,
        tags: string_list(obj, "tags", &path)?.into_iter().collect(),
        children,
    })
}

fn parse_ludic(v: &Value, level: LudicLevel, path: Path) -> Result<LudicElement, ParseError> {
    let child_key = match level {
        LudicLevel::Mission => Some("sequences"),
        LudicLevel::Sequence => Some("levels"),
        LudicLevel::GameLevel => None,
    };
    let obj = as_object(v, &path)?;
    let mut allowed = vec![
        "id",
        "title",
        "description",
        "stages",
        "characters",
        "duration_minutes",
        "interaction_mode",
    ];
    if level != LudicLevel::GameLevel {
        allowed.push("kind");
    }
    if let Some(k) = child_key {
        allowed.push(k);
    }
    check_keys(obj, &allowed, &path)?;

    let kind = match level {
        LudicLevel::Mission => {
            let kind_path = path.key("kind");
            match as_string(require(obj, "kind", &path)?, &kind_path)? {
                "teaser" => LudicKind::Mission(MissionKind::Teaser),
                "core" => LudicKind::Mission(MissionKind::Core),
                "report" => LudicKind::Mission(MissionKind::Report),
                other => return Err(bad_enum(kind_path, other, &["teaser", "core", "report"])),
            }
        }
        LudicLevel::Sequence => {
            let kind_path = path.key("kind");
            match as_string(require(obj, "kind", &path)?, &kind_path)? {
                "narrative" => LudicKind::Sequence(SequenceKind::Narrative),
                "test" => LudicKind::Sequence(SequenceKind::Test),
                "briefing" => LudicKind::Sequence(SequenceKind::Briefing),
                "debriefing" => LudicKind::Sequence(SequenceKind::Debriefing),
                other => {
                    return Err(bad_enum(
                        kind_path,
                        other,
                        &["narrative", "test", "briefing", "debriefing"],
                    ))
                }
            }
        }
        LudicLevel::GameLevel => LudicKind::GameLevel,
    };

    let duration_minutes = match obj.get("duration_minutes") {
        None => None,
        Some(v) => {
            let d_path = path.key("duration_minutes");
            let n = v
                .as_f64()
                .ok_or_else(|| ParseError::syntax(d_path.clone(), "expected a number"))?;
            if !n.is_finite() || n < 0.0 {
                return Err(ParseError::syntax(
                    d_path,
                    "duration_minutes must be a non-negative finite number",
                ));
            }
            Some(n)
        }
    };
    let interaction_mode = match obj.get("interaction_mode") {
        None => None,
        Some(v) => {
            let m_path = path.key("interaction_mode");
            Some(match as_string(v, &m_path)? {
                "competition" => InteractionMode::Competition,
                "collaboration" => InteractionMode::Collaboration,
                "solo" => InteractionMode::Solo,
                other => {
                    return Err(bad_enum(m_path, other, &["competition", "collaboration", "solo"]))
                }
            })
        }
    };

    let mut children = Vec::new();
    if let Some(k) = child_key {
        let child_level = match level {
            LudicLevel::Mission => LudicLevel::Sequence,
            _ => LudicLevel::GameLevel,
        };
        for (i, c) in optional_array(obj, k, &path)?.iter().enumerate() {
            children.push(parse_ludic(c, child_level, path.key(k).index(i))?);
        }
    }
    Ok(LudicElement {
        id: required_id(obj, "id", &path)?,
        level,
        title: required_string(obj, "title", &path)?,
        description: optional_string(obj, "description", &path)?.unwrap_or_default(),
        kind,
        staged_refs: id_set(obj, "stages", &path)?,
        character_refs: id_set(obj, "characters", &path)?,
        duration_minutes,
        interaction_mode,
        children,
    })
}

fn parse_ordering_graph(v: &Value, path: Path) -> Result<OrderingGraph, ParseError> {
    let obj = as_object(v, &path)?;
    check_keys(obj, &["edges", "branches"], &path)?;
    let mut edges = BTreeSet::new();
    for (i, e) in optional_array(obj, "edges", &path)?.iter().enumerate() {
        let e_path = path.key("edges").index(i);
        let pair = as_array(e, &e_path)?;
        if pair.len() != 2 {
            return Err(ParseError::syntax(e_path, "an edge is a [before, after] pair"));
        }
        edges.insert((
            parse_identifier(&pair[0], &e_path.index(0))?,
            parse_identifier(&pair[1], &e_path.index(1))?,
        ));
    }
    let mut branch_groups = Vec::new();
    for (i, b) in optional_array(obj, "branches", &path)?.iter().enumerate() {
        let b_path = path.key("branches").index(i);
        let b_obj = as_object(b, &b_path)?;
        check_keys(b_obj, &["split", "branches", "semantics"], &b_path)?;
        let semantics_path = b_path.key("semantics");
        let semantics = match as_string(require(b_obj, "semantics", &b_path)?, &semantics_path)? {
            "parallel" => BranchSemantics::Parallel,
            "alternative" => BranchSemantics::Alternative,
            other => return Err(bad_enum(semantics_path, other, &["parallel", "alternative"])),
        };
        let mut branches = BTreeSet::new();
        for (j, n) in as_array(require(b_obj, "branches", &b_path)?, &b_path.key("branches"))?
            .iter()
            .enumerate()
        {
            branches.insert(parse_identifier(n, &b_path.key("branches").index(j))?);
        }
        branch_groups.push(BranchGroup {
            split: required_id(b_obj, "split", &b_path)?,
            branches,
            semantics,
        });
    }
    // canonical in-memory order, so parse∘serialize is the identity
    branch_groups.sort_by(|a, b| (&a.split, a.semantics).cmp(&(&b.split, b.semantics)));
    Ok(OrderingGraph { edges, branch_groups })
}

fn parse_document(v: &Value, path: Path) -> Result<DocumentArtifact, ParseError> {
    let obj = as_object(v, &path)?;
    check_keys(obj, &["id", "title", "produced_in"], &path)?;
    Ok(DocumentArtifact {
        id: required_id(obj, "id", &path)?,
        title: required_string(obj, "title", &path)?,
        produced_in: required_id(obj, "produced_in", &path)?,
    })
}

// ---------------------------------------------------------------------------
// canonical writer

/// Canonical JSON value tree. Arrays either render inline (scalar lists) or
/// one element per line (element lists); objects keep their build order.
enum CVal {
    Str(String),
    Num(f64),
    InlineArr(Vec<CVal>),
    Arr(Vec<CVal>),
    Obj(Vec<(String, CVal)>),
}

fn render(v: &CVal, indent: usize, out: &mut String) {
    match v {
        CVal::Str(s) => out.push_str(&escape(s)),
        CVal::Num(n) => {
            // integral values print without a fraction part
            if n.fract() == 0.0 && n.abs() < 9e15 {
                out.push_str(&format!("{}", *n as i64));
            } else {
                let num = serde_json::Number::from_f64(*n)
                    .expect("duration_minutes must be a finite number");
                out.push_str(&num.to_string());
            }
        }
        CVal::InlineArr(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render(item, indent, out);
            }
            out.push(']');
        }
        CVal::Arr(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                push_indent(indent + 1, out);
                render(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            push_indent(indent, out);
            out.push(']');
        }
        CVal::Obj(fields) => {
            if fields.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (key, value)) in fields.iter().enumerate() {
                push_indent(indent + 1, out);
                out.push_str(&escape(key));
                out.push_str(": ");
                render(value, indent + 1, out);
                if i + 1 < fields.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            push_indent(indent, out);
            out.push('}');
        }
    }
}

fn push_indent(indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn escape(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

fn str_field(fields: &mut Vec<(String, CVal)>, key: &str, value: &str) {
    fields.push((key.to_owned(), CVal::Str(value.to_owned())));
}

fn opt_str_field(fields: &mut Vec<(String, CVal)>, key: &str, value: &str) {
    if !value.is_empty() {
        str_field(fields, key, value);
    }
}

fn string_arr<'a>(items: impl Iterator<Item = &'a str>) -> CVal {
    CVal::InlineArr(items.map(|s| CVal::Str(s.to_owned())).collect())
}

fn id_set_field(fields: &mut Vec<(String, CVal)>, key: &str, set: &BTreeSet<Identifier>) {
    if !set.is_empty() {
        fields.push((key.to_owned(), string_arr(set.iter().map(|i| i.as_str()))));
    }
}

fn scenario_to_cval(s: &Scenario) -> CVal {
    let mut root = Vec::new();

    let mut meta = Vec::new();
    str_field(&mut meta, "title", &s.meta.title);
    meta.push(("authors".to_owned(), string_arr(s.meta.authors.iter().map(|a| a.as_str()))));
    str_field(&mut meta, "version", &s.meta.version);
    str_field(&mut meta, "format_version", &s.meta.format_version);
    if !s.meta.notes.is_empty() {
        meta.push(("notes".to_owned(), string_arr(s.meta.notes.iter().map(|n| n.as_str()))));
    }
    root.push(("meta".to_owned(), CVal::Obj(meta)));

    if !s.competences.is_empty() {
        let items = s.competences.iter().map(competence_to_cval).collect();
        root.push(("competences".to_owned(), CVal::Arr(items)));
    }
    if !s.participants.is_empty() {
        let items = s.participants.iter().map(participant_to_cval).collect();
        root.push(("participants".to_owned(), CVal::Arr(items)));
    }
    if !s.characters.is_empty() {
        let items = s.characters.iter().map(character_to_cval).collect();
        root.push(("characters".to_owned(), CVal::Arr(items)));
    }
    if !s.pedagogical_roots.is_empty() {
        let items = s.pedagogical_roots.iter().map(pedagogical_to_cval).collect();
        root.push(("pedagogical".to_owned(), CVal::Arr(items)));
    }
    if !s.ludic_roots.is_empty() {
        let items = s.ludic_roots.iter().map(ludic_to_cval).collect();
        root.push(("ludic".to_owned(), CVal::Arr(items)));
    }
    if !s.orderings.is_empty() {
        let entries = s
            .orderings
            .iter()
            .map(|(owner, graph)| (owner.as_key().to_owned(), ordering_to_cval(graph)))
            .collect();
        root.push(("orderings".to_owned(), CVal::Obj(entries)));
    }
    if !s.documents.is_empty() {
        let items = s
            .documents
            .iter()
            .map(|d| {
                let mut fields = Vec::new();
                str_field(&mut fields, "id", d.id.as_str());
                str_field(&mut fields, "title", &d.title);
                str_field(&mut fields, "produced_in", d.produced_in.as_str());
                CVal::Obj(fields)
            })
            .collect();
        root.push(("documents".to_owned(), CVal::Arr(items)));
    }
    CVal::Obj(root)
}

fn competence_to_cval(c: &Competence) -> CVal {
    let mut fields = Vec::new();
    str_field(&mut fields, "id", c.id.as_str());
    str_field(&mut fields, "name", &c.name);
    str_field(&mut fields, "discipline", &c.discipline);
    if let Some(d) = &c.description {
        str_field(&mut fields, "description", d);
    }
    CVal::Obj(fields)
}

fn participant_to_cval(p: &Participant) -> CVal {
    let mut fields = Vec::new();
    str_field(&mut fields, "id", p.id.as_str());
    str_field(&mut fields, "name", &p.name);
    match &p.kind {
        ParticipantKind::Role => {
            str_field(&mut fields, "kind", "role");
            str_field(&mut fields, "role_label", p.role_label.as_str());
        }
        ParticipantKind::Team { members } => {
            str_field(&mut fields, "kind", "team");
            str_field(&mut fields, "role_label", p.role_label.as_str());
            if !members.is_empty() {
                let items = members
                    .iter()
                    .map(|m| {
                        let mut f = Vec::new();
                        str_field(&mut f, "name", &m.name);
                        if let Some(v) = &m.viewpoint {
                            str_field(&mut f, "viewpoint", v);
                        }
                        CVal::Obj(f)
                    })
                    .collect();
                fields.push(("members".to_owned(), CVal::Arr(items)));
            }
        }
    }
    CVal::Obj(fields)
}

fn character_to_cval(c: &Character) -> CVal {
    let mut fields = Vec::new();
    str_field(&mut fields, "id", c.id.as_str());
    str_field(&mut fields, "name", &c.name);
    str_field(&mut fields, "archetype", c.archetype.as_str());
    if c.visibility == Visibility::Hidden {
        str_field(&mut fields, "visibility", "hidden");
    }
    id_set_field(&mut fields, "plays", &c.plays_refs);
    id_set_field(&mut fields, "helps", &c.helps_refs);
    CVal::Obj(fields)
}

fn pedagogical_to_cval(e: &PedagogicalElement) -> CVal {
    let mut fields = Vec::new();
    str_field(&mut fields, "id", e.id.as_str());
    str_field(&mut fields, "title", &e.title);
    opt_str_field(&mut fields, "objective", &e.objective);
    id_set_field(&mut fields, "competences", &e.competence_refs);
    id_set_field(&mut fields, "participants", &e.participant_refs);
    if !e.tags.is_empty() {
        fields.push(("tags".to_owned(), string_arr(e.tags.iter().map(|t| t.as_str()))));
    }
    if !e.children.is_empty() {
        let key = match e.level {
            PedagogicalLevel::Module => "acts",
            _ => "activities",
        };
        let items = e.children.iter().map(pedagogical_to_cval).collect();
        fields.push((key.to_owned(), CVal::Arr(items)));
    }
    CVal::Obj(fields)
}

fn ludic_to_cval(e: &LudicElement) -> CVal {
    let mut fields = Vec::new();
    str_field(&mut fields, "id", e.id.as_str());
    str_field(&mut fields, "title", &e.title);
    opt_str_field(&mut fields, "description", &e.description);
    match e.kind {
        LudicKind::Mission(k) => str_field(&mut fields, "kind", k.as_str()),
        LudicKind::Sequence(k) => str_field(&mut fields, "kind", k.as_str()),
        LudicKind::GameLevel => {}
    }
    id_set_field(&mut fields, "stages", &e.staged_refs);
    id_set_field(&mut fields, "characters", &e.character_refs);
    if let Some(d) = e.duration_minutes {
        fields.push(("duration_minutes".to_owned(), CVal::Num(d)));
    }
    if let Some(m) = e.interaction_mode {
        str_field(&mut fields, "interaction_mode", m.as_str());
    }
    if !e.children.is_empty() {
        let key = match e.level {
            LudicLevel::Mission => "sequences",
            _ => "levels",
        };
        let items = e.children.iter().map(ludic_to_cval).collect();
        fields.push((key.to_owned(), CVal::Arr(items)));
    }
    CVal::Obj(fields)
}

fn ordering_to_cval(g: &OrderingGraph) -> CVal {
    let mut fields = Vec::new();
    if !g.edges.is_empty() {
        let items = g
            .edges
            .iter()
            .map(|(b, a)| {
                CVal::InlineArr(vec![
                    CVal::Str(b.as_str().to_owned()),
                    CVal::Str(a.as_str().to_owned()),
                ])
            })
            .collect();
        fields.push(("edges".to_owned(), CVal::Arr(items)));
    }
    if !g.branch_groups.is_empty() {
        let items = g
            .branch_groups
            .iter()
            .map(|bg| {
                let mut f = Vec::new();
                str_field(&mut f, "split", bg.split.as_str());
                f.push(("branches".to_owned(), string_arr(bg.branches.iter().map(|b| b.as_str()))));
                str_field(&mut f, "semantics", bg.semantics.as_str());
                CVal::Obj(f)
            })
            .collect();
        fields.push(("branches".to_owned(), CVal::Arr(items)));
    }
    CVal::Obj(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SKELETON: &str = "{\n  \"meta\": {\n    \"title\": \"\",\n    \"authors\": [],\n    \"version\": \"\",\n    \"format_version\": \"1\"\n  }\n}\n";

    #[test]
    fn minimal_document_is_empty_scenario() {
        let s = parse(r#"{"meta": {}}"#).unwrap();
        assert_eq!(s, Scenario::default());
    }

    #[test]
    fn empty_scenario_serializes_to_skeleton() {
        assert_eq!(serialize(&Scenario::default()).unwrap(), SKELETON);
    }

    #[test]
    fn skeleton_round_trips_bytewise() {
        let s = parse(SKELETON).unwrap();
        assert_eq!(serialize(&s).unwrap(), SKELETON);
    }

    #[test]
    fn unknown_key_rejected_with_path() {
        let err = parse(r#"{"meta": {}, "extra": 1}"#).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UnknownKey);
        assert_eq!(err.path.to_string(), "/extra");
        let err = parse(r#"{"meta": {"nickname": "x"}}"#).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UnknownKey);
        assert_eq!(err.path.to_string(), "/meta/nickname");
    }

    #[test]
    fn bad_sequence_kind_is_a_bad_enum_at_path() {
        let doc = r#"{
            "meta": {},
            "ludic": [{
                "id": "m1", "title": "m", "kind": "core",
                "sequences": [{"id": "s1", "title": "s", "kind": "brief"}]
            }]
        }"#;
        let err = parse(doc).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::BadEnum);
        assert_eq!(err.path.to_string(), "/ludic/0/sequences/0/kind");
    }

    #[test]
    fn missing_mission_kind_is_syntax_error() {
        let doc = r#"{"meta": {}, "ludic": [{"id": "m1", "title": "m"}]}"#;
        let err = parse(doc).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::Syntax);
        assert_eq!(err.path.to_string(), "/ludic/0");
    }

    #[test]
    fn game_level_rejects_kind_key() {
        let doc = r#"{
            "meta": {},
            "ludic": [{
                "id": "m1", "title": "m", "kind": "core",
                "sequences": [{
                    "id": "s1", "title": "s", "kind": "narrative",
                    "levels": [{"id": "l1", "title": "l", "kind": "level"}]
                }]
            }]
        }"#;
        let err = parse(doc).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UnknownKey);
        assert_eq!(err.path.to_string(), "/ludic/0/sequences/0/levels/0/kind");
    }

    #[test]
    fn members_on_role_participant_rejected() {
        let doc = r#"{
            "meta": {},
            "participants": [{"id": "p", "name": "p", "kind": "role", "role_label": "teacher", "members": []}]
        }"#;
        let err = parse(doc).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::UnknownKey);
    }

    #[test]
    fn bom_and_bad_utf8_rejected() {
        assert!(parse_bytes(b"\xEF\xBB\xBF{}").is_err());
        assert!(parse_bytes(b"\xFF\xFE").is_err());
    }

    #[test]
    fn negative_duration_rejected() {
        let doc = r#"{"meta": {}, "ludic": [{"id": "m", "title": "m", "kind": "core", "duration_minutes": -3}]}"#;
        let err = parse(doc).unwrap_err();
        assert_eq!(err.code, ParseErrorCode::Syntax);
        assert_eq!(err.path.to_string(), "/ludic/0/duration_minutes");
    }

    #[test]
    fn serialize_refuses_dangling_scenario() {
        let mut s = Scenario::default();
        s.documents.push(DocumentArtifact {
            id: Identifier::new("d").unwrap(),
            title: "d".into(),
            produced_in: Identifier::new("ghost").unwrap(),
        });
        let err = serialize(&s).unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
    }

    #[test]
    fn duration_formats_integral_and_fractional() {
        let doc = r#"{"meta": {}, "ludic": [{"id": "m", "title": "m", "kind": "core", "duration_minutes": 90}]}"#;
        let s = parse(doc).unwrap();
        let text = serialize(&s).unwrap();
        assert!(text.contains("\"duration_minutes\": 90\n"), "{text}");
        let doc = doc.replace("90", "90.5");
        let s = parse(&doc).unwrap();
        let text = serialize(&s).unwrap();
        assert!(text.contains("\"duration_minutes\": 90.5\n"), "{text}");
    }
}
