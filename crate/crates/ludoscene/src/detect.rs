//! Pattern detection over validated scenarios: evidence-bearing reports,
//! report diffs between scenario revisions, and human-readable findings.

use crate::capillarity::propagate;
use crate::catalog::{
    catalog, evaluate_rule, EvalContext, PatternId, UnmetCondition, UnmetReason,
};
use crate::model::{Identifier, Scenario};
use crate::validate::{validate, Diagnostic, Severity};
use std::collections::BTreeSet;
use thiserror::Error;

/// One `(role, element)` evidence binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceBinding {
    pub role: &'static str,
    pub element: Identifier,
}

/// Evaluation result for one pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternEntry {
    pub id: PatternId,
    pub name: &'static str,
    pub present: bool,
    /// Bindings in element document order; empty when absent.
    pub evidence: Vec<EvidenceBinding>,
    /// Failed conditions; empty when present.
    pub unmet: Vec<UnmetCondition>,
    /// For the universally quantified rules (P2, P6, P7): fraction of
    /// quantified elements satisfying the condition. 1.0 whenever present.
    pub coverage: Option<f64>,
}

/// Evaluation results for the whole catalog, in fixed order P1..P9.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternReport {
    pub entries: Vec<PatternEntry>,
}

impl PatternReport {
    pub fn entry(&self, id: PatternId) -> &PatternEntry {
        self.entries.iter().find(|e| e.id == id).expect("report covers the closed catalog")
    }

    /// Ids of the detected patterns.
    pub fn present_set(&self) -> BTreeSet<PatternId> {
        self.entries.iter().filter(|e| e.present).map(|e| e.id).collect()
    }
}

/// Set difference of detected patterns between two scenario revisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDiff {
    pub before: BTreeSet<PatternId>,
    pub after: BTreeSet<PatternId>,
    pub added: BTreeSet<PatternId>,
    pub removed: BTreeSet<PatternId>,
}

/// Detection refused: pattern semantics presuppose a well-formed scenario.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("scenario has {} validation error(s); first: {}", .diagnostics.len(), .diagnostics[0])]
pub struct InvalidScenario {
    pub diagnostics: Vec<Diagnostic>,
}

/// Evaluates all nine catalog rules. Refuses scenarios with error-severity
/// diagnostics. The report is deterministic: same scenario, same report.
pub fn detect(scenario: &Scenario) -> Result<PatternReport, InvalidScenario> {
    let errors: Vec<Diagnostic> = validate(scenario)
        .into_iter()
        .filter(|d| d.severity() == Severity::Error)
        .collect();
    if !errors.is_empty() {
        return Err(InvalidScenario { diagnostics: errors });
    }
    let effective = propagate(scenario);
    let ctx = EvalContext::new(scenario, &effective);
    let entries = catalog()
        .iter()
        .map(|rule| {
            let outcome = evaluate_rule(rule.id, &ctx);
            let present = outcome.unmet.is_empty();
            let mut evidence: Vec<EvidenceBinding> = if present {
                outcome
                    .evidence
                    .into_iter()
                    .map(|(role, element)| EvidenceBinding { role, element })
                    .collect()
            } else {
                Vec::new()
            };
            evidence.sort_by(|a, b| {
                (ctx.document_rank(&a.element), a.role).cmp(&(ctx.document_rank(&b.element), b.role))
            });
            evidence.dedup();
            PatternEntry {
                id: rule.id,
                name: rule.name,
                present,
                evidence,
                unmet: outcome.unmet,
                coverage: outcome.coverage,
            }
        })
        .collect();
    Ok(PatternReport { entries })
}

/// Set algebra between two reports: `added = after \ before`,
/// `removed = before \ after`.
pub fn diff(before: &PatternReport, after: &PatternReport) -> PatternDiff {
    let before = before.present_set();
    let after = after.present_set();
    let added = after.difference(&before).copied().collect();
    let removed = before.difference(&after).copied().collect();
    PatternDiff { before, after, added, removed }
}

/// Renders one pattern's finding as deterministic text: the evidence table
/// when present; the first failing condition plus a nearest-miss hint when
/// absent. The hint follows the unmet condition with the highest coverage.
pub fn explain(report: &PatternReport, id: PatternId) -> String {
    let entry = report.entry(id);
    let mut out = format!(
        "{} {}: {}\n",
        entry.id,
        entry.name,
        if entry.present { "present" } else { "absent" }
    );
    if entry.present {
        for binding in &entry.evidence {
            out.push_str(&format!("  {} = {}\n", binding.role, binding.element));
        }
        if let Some(c) = entry.coverage {
            out.push_str(&format!("  coverage: {c:.2}\n"));
        }
        return out;
    }
    let first = entry.unmet.first().expect("absent entries carry unmet conditions");
    out.push_str(&format!("  first unmet condition: {}\n", first.condition));
    match &first.reason {
        UnmetReason::Code(code) => out.push_str(&format!("  reason: {code}\n")),
        UnmetReason::Element { path, .. } => out.push_str(&format!("  at: {path}\n")),
    }
    if let Some(c) = entry.coverage {
        out.push_str(&format!("  coverage: {c:.2}\n"));
    }
    let nearest = entry
        .unmet
        .iter()
        .max_by(|a, b| {
            a.coverage
                .unwrap_or(0.0)
                .partial_cmp(&b.coverage.unwrap_or(0.0))
                .expect("coverage is never NaN")
        })
        .expect("absent entries carry unmet conditions");
    out.push_str(&format!("  hint: {}\n", hint(nearest)));
    out
}

fn hint(unmet: &UnmetCondition) -> String {
    let subject = match &unmet.reason {
        UnmetReason::Code(_) => None,
        UnmetReason::Element { id, .. } => Some(id),
    };
    let name = |fallback: &str| {
        subject.map(|id| format!("\"{id}\"")).unwrap_or_else(|| fallback.to_owned())
    };
    match unmet.condition {
        "first_mission_is_teaser" => match subject {
            Some(id) => format!("make the first mission \"{id}\" a teaser"),
            None => "add a teaser mission at the start of the scenario".to_owned(),
        },
        "teaser_is_purely_ludic" => {
            format!("remove the staged pedagogical elements from teaser {}", name("the teaser"))
        }
        "learner_character_linked" => format!(
            "link mission {} to a character played by a learner participant",
            name("the first mission")
        ),
        "teacher_character_linked" => format!(
            "link mission {} to a character played by a teacher participant",
            name("the first mission")
        ),
        "has_modules" => "add a module with competences from two disciplines".to_owned(),
        "every_module_spans_two_disciplines" => format!(
            "add a competence of a second discipline to module {}",
            name("each module")
        ),
        "learner_team_of_two_to_four" => match subject {
            Some(id) => format!("resize learner team \"{id}\" to 2 to 4 members"),
            None => "add a learner team participant of 2 to 4 members".to_owned(),
        },
        "team_plays_expert_group_character" => format!(
            "add an expert-group character played by team {}",
            name("the learner team")
        ),
        "ordering_declares_branches" => {
            "declare a branch group in a mission or sequence ordering".to_owned()
        }
        "teacher_plays_mentor" => {
            "add a mentor character played by a teacher participant".to_owned()
        }
        "mentor_helps_learner_character" => format!(
            "make mentor {} help a character played by learners",
            name("the mentor")
        ),
        "core_mission_exists" => "add a mission of the core kind".to_owned(),
        "every_core_mission_starts_with_briefing" => format!(
            "give mission {} a briefing first sequence linked to the teacher-played mentor and a learner-played character",
            name("each core mission")
        ),
        "every_core_mission_ends_with_debriefing" => format!(
            "give mission {} a debriefing last sequence linked to the teacher-played mentor and a learner-played character",
            name("each core mission")
        ),
        "multi_viewpoint_team" => {
            "add a team whose members carry at least two distinct viewpoint labels".to_owned()
        }
        "team_active_in_mission" => format!(
            "stage team {} into a mission, directly or through a played character",
            name("the multi-viewpoint team")
        ),
        "has_missions" => "add a final report mission".to_owned(),
        "last_mission_reports" => format!(
            "make the last mission {} a report mission or stage a pedagogical element tagged \"report-writing\"",
            name("of the scenario")
        ),
        other => format!("satisfy condition {other}"),
    }
}
