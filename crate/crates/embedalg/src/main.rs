//! Command-line front end. Every solver reads JSON (from a file argument
//! or stdin), prints a JSON or text report, and exits 0 on affirmative
//! verdicts, 1 on negative ones, and 2 on input errors.
//!
//! Inputs are numerical invariants only; the tool never factors
//! polynomials or constructs number fields.

use clap::{Parser, Subcommand, ValueEnum};
use embedalg::brauer::{CsaJson, ExtensionProfile, GlobalCsa, ProfileJson};
use embedalg::charpoly::{charpoly_admissible_global, PolyFactor};
use embedalg::embed::{embedding_exists, hom_exists, Feasibility};
use embedalg::hasse::{
    construct_counterexample, hasse_verdict, local_report, HasseVerdict, LocalReport, Obstruction,
};
use embedalg::model::WedderburnJson;
use embedalg::orbit::{orbit_count, orbit_count_semisimple_target, OrbitCount};
use embedalg::selftest;
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "embedalg", version, about = "Embedding and homomorphism criteria for semi-simple algebras, from numerical invariants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the consistency conditions of a central simple algebra.
    Validate { input: Option<PathBuf> },
    /// Decide existence of an algebra homomorphism from Wedderburn data.
    HomCheck { input: Option<PathBuf> },
    /// Decide existence of an algebra embedding from Wedderburn data.
    EmbedCheck { input: Option<PathBuf> },
    /// Count conjugacy orbits of homomorphisms.
    OrbitCount { input: Option<PathBuf> },
    /// Local feasibility, obstruction vector, and local-global verdict.
    HasseCheck {
        input: Option<PathBuf>,
        /// List all positive local solutions per place.
        #[arg(long)]
        enumerate: bool,
    },
    /// Characteristic polynomial admissibility from a factorization profile.
    CharpolyCheck { input: Option<PathBuf> },
    /// Build a pair (division algebra, extension) failing the local-global principle.
    ConstructCounterexample {
        /// Degree of the extension.
        #[arg(long)]
        k: u64,
        /// Factorization of the algebra degree, as "p,n:p,n:...".
        #[arg(long)]
        delta: String,
    },
    /// Run the seeded randomized cross-check suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Validate { input } => {
            let a = read_csa(input)?;
            a.validate().map_err(|e| e.to_string())?;
            emit(cli.format, &json!({"valid": true}), |_| "valid\n".to_string());
            Ok(0)
        }
        Command::HomCheck { input } => {
            let targets = read_targets(input)?;
            let r = hom_exists(&targets).map_err(|e| e.to_string())?;
            Ok(emit_feasibility(cli.format, &r))
        }
        Command::EmbedCheck { input } => {
            let targets = read_targets(input)?;
            let r = embedding_exists(&targets).map_err(|e| e.to_string())?;
            Ok(emit_feasibility(cli.format, &r))
        }
        Command::OrbitCount { input } => {
            let parsed: OrbitInput = parse(&read_source(input)?)?;
            let mut parts = Vec::new();
            for t in &parsed.targets() {
                let (target, w) = t.to_target().map_err(|e| e.to_string())?;
                parts.push(
                    orbit_count(&w, target.module_dim, parsed.base_field_infinite)
                        .map_err(|e| e.to_string())?,
                );
            }
            let combined = orbit_count_semisimple_target(&parts);
            let (status, count) = match &combined {
                OrbitCount::Empty => ("empty", None),
                OrbitCount::Finite(c) => ("finite", Some(*c)),
                OrbitCount::Infinite => ("infinite", None),
                OrbitCount::FiniteUnknown => ("finite_unknown", None),
            };
            let mut body = json!({"status": status});
            if let Some(c) = count {
                body["count"] = json!(c);
            }
            emit(cli.format, &body, |_| match count {
                Some(c) => format!("{status} {c}\n"),
                None => format!("{status}\n"),
            });
            Ok(match combined {
                OrbitCount::Finite(_) | OrbitCount::FiniteUnknown => 0,
                OrbitCount::Empty | OrbitCount::Infinite => 1,
            })
        }
        Command::HasseCheck { input, enumerate } => {
            let parsed: HasseInput = parse(&read_source(input)?)?;
            let a: GlobalCsa = parsed.algebra.try_into().map_err(err_string)?;
            let k: ExtensionProfile = parsed.extension.try_into().map_err(err_string)?;
            let (verdict, mut reports, obs) = hasse_verdict(&a, &k).map_err(|e| e.to_string())?;
            if *enumerate {
                for report in &mut reports {
                    *report = local_report(&a, &k, &report.place, true).map_err(|e| e.to_string())?;
                }
            }
            let body = hasse_body(&verdict, &reports, &obs);
            emit(cli.format, &body, |_| hasse_text(&verdict, &reports, &obs));
            Ok(if verdict == HasseVerdict::GlobalEmbedding { 0 } else { 1 })
        }
        Command::CharpolyCheck { input } => {
            let parsed: CharpolyInput = parse(&read_source(input)?)?;
            let delta: GlobalCsa = parsed.delta.try_into().map_err(err_string)?;
            let mut factors = Vec::new();
            for f in parsed.factors {
                let field_profile = match f.field {
                    Some(p) => Some(ExtensionProfile::try_from(p).map_err(err_string)?),
                    None => None,
                };
                factors.push(PolyFactor {
                    degree: f.degree,
                    multiplicity: f.multiplicity,
                    field_profile,
                });
            }
            let (admissible, reports) =
                charpoly_admissible_global(&factors, &delta, parsed.n).map_err(|e| e.to_string())?;
            let body = json!({
                "admissible": admissible,
                "factors": reports
                    .iter()
                    .map(|r| json!({"n_i": r.n_i, "c_i": r.c_i, "pass": r.pass}))
                    .collect::<Vec<_>>(),
            });
            emit(cli.format, &body, |_| {
                let mut out = format!("admissible: {admissible}\n");
                for (i, r) in reports.iter().enumerate() {
                    out.push_str(&format!(
                        "factor {i}: n_i={} c_i={} {}\n",
                        r.n_i,
                        r.c_i,
                        if r.pass { "pass" } else { "fail" }
                    ));
                }
                out
            });
            Ok(if admissible { 0 } else { 1 })
        }
        Command::ConstructCounterexample { k, delta } => {
            let factorization = parse_factorization(delta)?;
            let (a, profile) =
                construct_counterexample(*k, &factorization).map_err(|e| e.to_string())?;
            let (verdict, reports, obs) = hasse_verdict(&a, &profile).map_err(|e| e.to_string())?;
            let mut body = hasse_body(&verdict, &reports, &obs);
            body["algebra"] = serde_json::to_value(CsaJson::from(&a)).unwrap();
            body["extension"] = serde_json::to_value(ProfileJson::from(&profile)).unwrap();
            emit(cli.format, &body, |_| {
                format!(
                    "degree {} algebra at {} places, extension degree {}\n{}",
                    a.degree,
                    a.invariants().count(),
                    profile.degree,
                    hasse_text(&verdict, &reports, &obs)
                )
            });
            Ok(if verdict == HasseVerdict::GlobalEmbedding { 0 } else { 1 })
        }
        Command::Selftest { seed, count } => {
            let reports = selftest::run_all(*seed, *count);
            let all_passed = reports.iter().all(|r| r.passed());
            let body = json!({
                "seed": seed,
                "count": count,
                "passed": all_passed,
                "suites": reports
                    .iter()
                    .map(|r| json!({
                        "name": r.name,
                        "cases": r.cases,
                        "passed": r.passed(),
                        "disagreements": r.disagreements,
                    }))
                    .collect::<Vec<_>>(),
            });
            emit(cli.format, &body, |_| {
                let mut out = String::new();
                for r in &reports {
                    out.push_str(&format!(
                        "{}: {} cases, {}\n",
                        r.name,
                        r.cases,
                        if r.passed() { "ok" } else { "FAILED" }
                    ));
                    for d in &r.disagreements {
                        out.push_str(&format!("  {d}\n"));
                    }
                }
                out
            });
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

// --- input plumbing ---

fn read_source(input: &Option<PathBuf>) -> Result<String, String> {
    match input {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(source: &str) -> Result<T, String> {
    serde_json::from_str(source).map_err(|e| e.to_string())
}

fn err_string(e: embedalg::Error) -> String {
    e.to_string()
}

fn read_csa(input: &Option<PathBuf>) -> Result<GlobalCsa, String> {
    let json: CsaJson = parse(&read_source(input)?)?;
    json.try_into().map_err(err_string)
}

/// Wedderburn input: a single target object, a list of targets, or a
/// wrapper {"targets": [...]}.
#[derive(Deserialize)]
#[serde(untagged)]
enum TargetsInput {
    One(WedderburnJson),
    Many(Vec<WedderburnJson>),
    Wrapped { targets: Vec<WedderburnJson> },
}

fn read_targets(
    input: &Option<PathBuf>,
) -> Result<Vec<(embedalg::model::TargetSimple, embedalg::model::WedderburnData)>, String> {
    let parsed: TargetsInput = parse(&read_source(input)?)?;
    let list = match parsed {
        TargetsInput::One(t) => vec![t],
        TargetsInput::Many(ts) => ts,
        TargetsInput::Wrapped { targets } => targets,
    };
    list.iter().map(|t| t.to_target().map_err(err_string)).collect()
}

#[derive(Deserialize)]
struct OrbitInput {
    #[serde(default)]
    target: Option<WedderburnJson>,
    #[serde(default)]
    targets: Vec<WedderburnJson>,
    #[serde(default = "default_true")]
    base_field_infinite: bool,
}

impl OrbitInput {
    fn targets(&self) -> Vec<WedderburnJson> {
        match &self.target {
            Some(t) => vec![t.clone()],
            None => self.targets.clone(),
        }
    }
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
struct HasseInput {
    algebra: CsaJson,
    extension: ProfileJson,
}

#[derive(Deserialize)]
struct CharpolyInput {
    n: u64,
    delta: CsaJson,
    factors: Vec<CharpolyFactorJson>,
}

#[derive(Deserialize)]
struct CharpolyFactorJson {
    degree: u64,
    multiplicity: u64,
    #[serde(default)]
    field: Option<ProfileJson>,
}

fn parse_factorization(arg: &str) -> Result<Vec<(u64, u32)>, String> {
    arg.split(':')
        .map(|pair| {
            let (p, n) = pair
                .split_once(',')
                .ok_or_else(|| format!("bad factor {pair:?}, expected \"p,n\""))?;
            Ok((
                p.trim().parse().map_err(|e| format!("bad prime {p:?}: {e}"))?,
                n.trim().parse().map_err(|e| format!("bad exponent {n:?}: {e}"))?,
            ))
        })
        .collect()
}

// --- output plumbing ---

fn emit(format: Format, body: &Value, text: impl Fn(&Value) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(body).unwrap()),
        Format::Text => print!("{}", text(body)),
    }
}

fn emit_feasibility(format: Format, r: &Feasibility) -> i32 {
    let mut body = json!({"feasible": r.feasible});
    if let Some(witness) = &r.witness {
        body["witness"] = json!(witness);
    }
    emit(format, &body, |_| {
        if let Some(witness) = &r.witness {
            format!("feasible, witness {witness:?}\n")
        } else {
            "infeasible\n".to_string()
        }
    });
    if r.feasible {
        0
    } else {
        1
    }
}

fn verdict_status(verdict: &HasseVerdict) -> &'static str {
    match verdict {
        HasseVerdict::GlobalEmbedding => "GlobalEmbedding",
        HasseVerdict::LocalObstruction(_) => "LocalObstruction",
        HasseVerdict::HassePrincipleFailure => "HassePrincipleFailure",
    }
}

fn hasse_body(verdict: &HasseVerdict, reports: &[LocalReport], obs: &Obstruction) -> Value {
    let mut body = json!({
        "status": verdict_status(verdict),
        "local": reports
            .iter()
            .map(|r| {
                let mut entry = json!({
                    "place": r.place,
                    "d_v": r.d_v,
                    "s_v": r.s_v,
                    "feasible": r.feasible,
                    "w": r.per_w
                        .iter()
                        .map(|w| json!({"id": w.id, "k_w": w.k_w, "c_w": w.c_w, "ell_w": w.ell_w}))
                        .collect::<Vec<_>>(),
                });
                if !r.representatives.is_empty() {
                    entry["representatives"] = json!(r.representatives);
                }
                entry
            })
            .collect::<Vec<_>>(),
        "obstruction": obs.entries
            .iter()
            .map(|(place, e)| json!({
                "place": place,
                "x": e.x.to_string(),
                "class": e.class.to_string(),
            }))
            .collect::<Vec<_>>(),
    });
    if let HasseVerdict::LocalObstruction(places) = verdict {
        body["infeasible_places"] = json!(places);
    }
    body
}

fn hasse_text(verdict: &HasseVerdict, reports: &[LocalReport], obs: &Obstruction) -> String {
    let mut out = format!("status: {}\n", verdict_status(verdict));
    for r in reports {
        out.push_str(&format!(
            "place {}: d_v={} s_v={} {}\n",
            r.place,
            r.d_v,
            r.s_v,
            if r.feasible { "feasible" } else { "infeasible" }
        ));
        for rep in &r.representatives {
            out.push_str(&format!("  solution {rep:?}\n"));
        }
    }
    for (place, e) in &obs.entries {
        out.push_str(&format!("obstruction {place}: x={} class={}\n", e.x, e.class));
    }
    out
}
