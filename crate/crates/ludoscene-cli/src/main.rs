//! Command-line front end for the ludoscene scenario toolkit.
//!
//! Exit codes: 0 success, 1 analysis-level failure (the scenario has
//! validation errors), 2 usage or parse failure. All output is plain text or
//! JSON and byte-deterministic for identical inputs and flags.

use clap::{Parser, Subcommand, ValueEnum};
use ludoscene::*;
use serde_json::{json, Value};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

/// Version tag carried by every JSON report.
const REPORT_VERSION: u32 = 1;

/// Directory the `--fixture` option reads from when set; the embedded corpus
/// is used otherwise.
const CORPUS_ENV: &str = "LUDOSCENE_CORPUS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Line-stable plain text
    Text,
    /// Stable machine-readable JSON (versioned via "report_version")
    Json,
}

#[derive(Parser)]
#[command(name = "ludoscene", version, about = "Model, validate, analyze and scaffold learning-game scenarios")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario document and print every diagnostic
    Validate {
        /// Scenario document (.lgs.json)
        file: PathBuf,
    },
    /// Evaluate the nine pattern rules against a scenario
    Detect {
        /// Scenario document (.lgs.json)
        #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
        file: Option<PathBuf>,
        /// Analyze a shipped corpus fixture by name (LS, PU, LG1_before, ...)
        #[arg(long)]
        fixture: Option<String>,
        /// Print the detailed finding for one pattern instead of the overview
        #[arg(long, value_name = "PATTERN")]
        explain: Option<String>,
    },
    /// Compare the detected patterns of two scenario revisions
    Diff {
        /// Earlier revision
        before: PathBuf,
        /// Later revision
        after: PathBuf,
    },
    /// Print effective competences and participants of ludic elements
    Show {
        /// Scenario document (.lgs.json)
        file: PathBuf,
        /// Restrict the output to one ludic element
        #[arg(long, value_name = "ID")]
        element: Option<String>,
    },
    /// Generate a starter scenario shell
    Scaffold {
        /// Scenario title
        #[arg(long, default_value = "Untitled learning game")]
        title: String,
        /// Learner team size (2 to 4)
        #[arg(long, default_value_t = 3)]
        team_size: usize,
        /// Number of core missions
        #[arg(long, default_value_t = 2)]
        core_missions: usize,
        /// Append a final report mission
        #[arg(long)]
        report_mission: bool,
        /// Discipline labels for the seeded competences (comma separated)
        #[arg(long, value_delimiter = ',', default_values_t = [String::from("domain"), String::from("methodology")])]
        disciplines: Vec<String>,
        /// Seeded competences per generated module
        #[arg(long, default_value_t = 2)]
        competences_per_module: usize,
        /// Output path; "-" writes to stdout
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the normative pattern rulebook
    Rulebook,
}

/// A failed run, mapped onto the documented exit codes.
enum Failure {
    /// Exit 2: bad invocation, unreadable file, or unparseable document.
    Usage(String),
    /// Exit 1: the scenario is readable but carries validation errors.
    Analysis(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, cli.format),
        Command::Detect { file, fixture, explain } => {
            cmd_detect(file.as_deref(), fixture.as_deref(), explain.as_deref(), cli.format)
        }
        Command::Diff { before, after } => cmd_diff(&before, &after, cli.format),
        Command::Show { file, element } => cmd_show(&file, element.as_deref(), cli.format),
        Command::Scaffold {
            title,
            team_size,
            core_missions,
            report_mission,
            disciplines,
            competences_per_module,
            output,
        } => {
            let config = ScaffoldConfig {
                title,
                learner_team_size: team_size,
                core_mission_count: core_missions,
                include_report_mission: report_mission,
                discipline_labels: disciplines,
                seed_competences_per_module: competences_per_module,
            };
            cmd_scaffold(&config, &output)
        }
        Command::Rulebook => cmd_rulebook(cli.format),
    }
}

fn load_scenario(path: &FsPath) -> Result<Scenario, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_bytes(&bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Loads a scenario and refuses to analyze it when validation errors exist.
fn load_valid_scenario(path: &FsPath) -> Result<Scenario, Failure> {
    let scenario = load_scenario(path)?;
    let errors: Vec<Diagnostic> = validate(&scenario)
        .into_iter()
        .filter(|d| d.severity() == Severity::Error)
        .collect();
    if errors.is_empty() {
        Ok(scenario)
    } else {
        let listing: Vec<String> = errors.iter().map(|d| d.to_string()).collect();
        Err(Failure::Analysis(format!(
            "{} is not analyzable:\n{}",
            path.display(),
            listing.join("\n")
        )))
    }
}

// ---------------------------------------------------------------------------
// validate

fn cmd_validate(file: &FsPath, format: OutputFormat) -> Result<ExitCode, Failure> {
    let scenario = load_scenario(file)?;
    let diagnostics = validate(&scenario);
    let errors = diagnostics.iter().filter(|d| d.severity() == Severity::Error).count();
    let warnings = diagnostics.len() - errors;
    match format {
        OutputFormat::Text => {
            for d in &diagnostics {
                println!("{d}");
            }
            println!("{errors} error(s), {warnings} warning(s)");
        }
        OutputFormat::Json => {
            let items: Vec<Value> = diagnostics
                .iter()
                .map(|d| {
                    json!({
                        "code": d.code.as_str(),
                        "severity": d.severity().as_str(),
                        "path": d.path.to_string(),
                        "message": d.message,
                    })
                })
                .collect();
            print_json(json!({
                "report_version": REPORT_VERSION,
                "diagnostics": items,
                "errors": errors,
                "warnings": warnings,
            }));
        }
    }
    Ok(if errors == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ---------------------------------------------------------------------------
// detect

fn detect_input(
    file: Option<&FsPath>,
    fixture_name: Option<&str>,
) -> Result<(String, Scenario), Failure> {
    match (file, fixture_name) {
        (Some(path), None) => Ok((path.display().to_string(), load_valid_scenario(path)?)),
        (None, Some(name)) => {
            if let Ok(dir) = std::env::var(CORPUS_ENV) {
                let path = PathBuf::from(dir).join(format!("{name}{FILE_EXTENSION}"));
                return Ok((path.display().to_string(), load_valid_scenario(&path)?));
            }
            let parsed: FixtureName =
                name.parse().map_err(|e: UnknownFixture| Failure::Usage(e.to_string()))?;
            Ok((name.to_owned(), fixture_scenario(parsed)))
        }
        _ => unreachable!("clap enforces exactly one input"),
    }
}

fn cmd_detect(
    file: Option<&FsPath>,
    fixture_name: Option<&str>,
    explain_id: Option<&str>,
    format: OutputFormat,
) -> Result<ExitCode, Failure> {
    let (_, scenario) = detect_input(file, fixture_name)?;
    let report = detect(&scenario)
        .map_err(|e: InvalidScenario| Failure::Analysis(e.to_string()))?;

    if let Some(raw) = explain_id {
        let id: PatternId =
            raw.parse().map_err(|e: UnknownPatternId| Failure::Usage(e.to_string()))?;
        match format {
            OutputFormat::Text => print!("{}", explain(&report, id)),
            OutputFormat::Json => print_json(json!({
                "report_version": REPORT_VERSION,
                "pattern": id.as_str(),
                "finding": explain(&report, id),
            })),
        }
        return Ok(ExitCode::SUCCESS);
    }

    match format {
        OutputFormat::Text => {
            for entry in &report.entries {
                let status = if entry.present { "present" } else { "absent " };
                let mut details: Vec<String> = Vec::new();
                if entry.present {
                    details.extend(
                        entry.evidence.iter().map(|b| format!("{}={}", b.role, b.element)),
                    );
                } else if let Some(first) = entry.unmet.first() {
                    let reason = match &first.reason {
                        UnmetReason::Code(code) => (*code).to_owned(),
                        UnmetReason::Element { path, .. } => path.to_string(),
                    };
                    details.push(format!("unmet: {} ({reason})", first.condition));
                }
                if let Some(c) = entry.coverage {
                    details.push(format!("coverage={c:.2}"));
                }
                if details.is_empty() {
                    println!("{} {status} {}", entry.id, entry.name);
                } else {
                    println!("{} {status} {} | {}", entry.id, entry.name, details.join(" "));
                }
            }
            let present: Vec<&str> =
                report.present_set().iter().map(|p| p.as_str()).collect();
            println!("present: {}", join_or_none(&present));
        }
        OutputFormat::Json => print_json(report_json(&report)),
    }
    Ok(ExitCode::SUCCESS)
}

fn report_json(report: &PatternReport) -> Value {
    let patterns: Vec<Value> = report
        .entries
        .iter()
        .map(|entry| {
            let evidence: Vec<Value> = entry
                .evidence
                .iter()
                .map(|b| json!({"role": b.role, "element": b.element.as_str()}))
                .collect();
            let unmet: Vec<Value> = entry
                .unmet
                .iter()
                .map(|u| {
                    let (kind, value) = match &u.reason {
                        UnmetReason::Code(code) => ("code", (*code).to_owned()),
                        UnmetReason::Element { path, .. } => ("path", path.to_string()),
                    };
                    json!({
                        "condition": u.condition,
                        "reason_kind": kind,
                        "reason": value,
                        "coverage": u.coverage,
                    })
                })
                .collect();
            json!({
                "id": entry.id.as_str(),
                "name": entry.name,
                "present": entry.present,
                "coverage": entry.coverage,
                "evidence": evidence,
                "unmet": unmet,
            })
        })
        .collect();
    let present: Vec<&str> = report.present_set().iter().map(|p| p.as_str()).collect();
    json!({
        "report_version": REPORT_VERSION,
        "present": present,
        "patterns": patterns,
    })
}

// ---------------------------------------------------------------------------
// diff

fn cmd_diff(before: &FsPath, after: &FsPath, format: OutputFormat) -> Result<ExitCode, Failure> {
    let before_report = detect(&load_valid_scenario(before)?)
        .map_err(|e| Failure::Analysis(e.to_string()))?;
    let after_report = detect(&load_valid_scenario(after)?)
        .map_err(|e| Failure::Analysis(e.to_string()))?;
    let d = diff(&before_report, &after_report);
    let names = |set: &std::collections::BTreeSet<PatternId>| -> Vec<&str> {
        set.iter().map(|p| p.as_str()).collect()
    };
    match format {
        OutputFormat::Text => {
            println!("before: {}", join_or_none(&names(&d.before)));
            println!("after: {}", join_or_none(&names(&d.after)));
            println!("added: {}", join_or_none(&names(&d.added)));
            println!("removed: {}", join_or_none(&names(&d.removed)));
        }
        OutputFormat::Json => print_json(json!({
            "report_version": REPORT_VERSION,
            "before": names(&d.before),
            "after": names(&d.after),
            "added": names(&d.added),
            "removed": names(&d.removed),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// show

fn cmd_show(
    file: &FsPath,
    element: Option<&str>,
    format: OutputFormat,
) -> Result<ExitCode, Failure> {
    let scenario = load_valid_scenario(file)?;
    let effective = propagate(&scenario);

    let selection: Vec<&LudicElement> = match element {
        None => scenario.ludic_elements().into_iter().map(|(_, e)| e).collect(),
        Some(raw) => {
            let id = Identifier::new(raw)
                .map_err(|e| Failure::Usage(format!("--element: {e}")))?;
            let found = scenario
                .ludic_elements()
                .into_iter()
                .map(|(_, e)| e)
                .find(|e| e.id == id);
            match found {
                Some(e) => vec![e],
                None => {
                    return Err(Failure::Usage(format!(
                        "\"{id}\" does not name a ludic element"
                    )))
                }
            }
        }
    };

    let set_names = |set: &std::collections::BTreeSet<Identifier>| -> Vec<String> {
        set.iter().map(|i| i.as_str().to_owned()).collect()
    };

    match format {
        OutputFormat::Text => {
            for el in &selection {
                let entry = effective.get(&el.id).expect("propagate covers all elements");
                let rollup = aggregate_subtree(&scenario, &el.id).expect("element exists");
                println!("{} ({}) \"{}\"", el.id, el.level.as_str(), el.title);
                println!("  competences: {}", join_owned_or_none(&set_names(&entry.competences)));
                println!("  participants: {}", join_owned_or_none(&set_names(&entry.participants)));
                if !el.children.is_empty() {
                    println!(
                        "  rollup competences: {}",
                        join_owned_or_none(&set_names(&rollup.competences))
                    );
                    println!(
                        "  rollup participants: {}",
                        join_owned_or_none(&set_names(&rollup.participants))
                    );
                }
            }
        }
        OutputFormat::Json => {
            let elements: Vec<Value> = selection
                .iter()
                .map(|el| {
                    let entry = effective.get(&el.id).expect("propagate covers all elements");
                    let rollup = aggregate_subtree(&scenario, &el.id).expect("element exists");
                    json!({
                        "id": el.id.as_str(),
                        "level": el.level.as_str(),
                        "title": el.title,
                        "competences": set_names(&entry.competences),
                        "participants": set_names(&entry.participants),
                        "rollup_competences": set_names(&rollup.competences),
                        "rollup_participants": set_names(&rollup.participants),
                    })
                })
                .collect();
            print_json(json!({
                "report_version": REPORT_VERSION,
                "elements": elements,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// scaffold and rulebook

fn cmd_scaffold(config: &ScaffoldConfig, output: &FsPath) -> Result<ExitCode, Failure> {
    let scenario =
        scaffold(config).map_err(|e: ConfigError| Failure::Usage(e.to_string()))?;
    let document = serialize(&scenario).expect("generated shells are validation-clean");
    if output == FsPath::new("-") {
        print!("{document}");
    } else {
        std::fs::write(output, document)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", output.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_rulebook(format: OutputFormat) -> Result<ExitCode, Failure> {
    match format {
        OutputFormat::Text => print!("{}", rulebook()),
        OutputFormat::Json => {
            let rules: Vec<Value> = catalog()
                .iter()
                .map(|r| {
                    let conditions: Vec<Value> = r
                        .conditions
                        .iter()
                        .map(|c| json!({"name": c.name, "text": c.text}))
                        .collect();
                    json!({
                        "id": r.id.as_str(),
                        "name": r.name,
                        "conditions": conditions,
                        "evidence": r.evidence_schema,
                    })
                })
                .collect();
            print_json(json!({"report_version": REPORT_VERSION, "rules": rules}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// output helpers

fn print_json(value: Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("report values serialize"));
}

fn join_or_none(items: &[&str]) -> String {
    if items.is_empty() {
        "(none)".to_owned()
    } else {
        items.join(" ")
    }
}

fn join_owned_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_owned()
    } else {
        items.join(" ")
    }
}
