//! Command-line front end. Every subcommand maps onto one library operation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::composition_calculus::envelope;
use crate::countable_model::{
    run_oracle, surgery_collapse_to_constant, surgery_drop_finite_class, surgery_raise_min, surgery_square_min,
    ConcreteFunction, Surgery,
};
use crate::error::{Error, Result};
use crate::kernel_sequence::KernelProfile;
use crate::minimality::{
    check_conditions, clone_key, count_minimal_clones, countable_classify, derived_check, try_is_s_minimal,
    witness_profile, Verdict,
};
use crate::ordinal_cardinal::{parse_cardinal, Cardinal};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "sminimal", version, about = "Minimality checks, clone classification and composition bounds for unary functions")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide minimality of a kernel profile file.
    CheckMinimal { profile: PathBuf },
    /// Countable family (kappa = aleph(0)) or general verdict with clone key.
    Classify { profile: PathBuf },
    /// Whether two minimal profiles generate the same clone.
    SameClone { left: PathBuf, right: PathBuf },
    /// Bounds on the profile of `outer ∘ inner`.
    ComposeBounds {
        outer: PathBuf,
        inner: PathBuf,
        /// Class sizes to bound, comma separated (e.g. `fin:1,fin:2,aleph(0)`).
        #[arg(long, value_delimiter = ',', default_value = "fin:1,fin:2,aleph(0)")]
        query: Vec<String>,
    },
    /// Number of clones generated by minimal functions on a set of the given size.
    Count { kappa: String },
    /// Random soundness checks of the composition bounds on concrete functions.
    OracleTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
    /// Apply a surgery to a concrete-function presentation file.
    Surgery {
        /// collapse-to-constant, raise-min, square-min or drop-finite-class.
        name: String,
        presentation: PathBuf,
        /// Class size removed by drop-finite-class.
        #[arg(long)]
        n: Option<u64>,
    },
    /// The minimal profile separating clones by complement size.
    Witness { kappa: String, nu: String },
}

/// Process exit code and rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::File {
        path: path.display().to_string(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

fn load_profile(path: &Path) -> Result<KernelProfile> {
    KernelProfile::from_json(&read(path)?, &path.display().to_string())
}

fn load_function(path: &Path) -> Result<ConcreteFunction> {
    ConcreteFunction::from_json(&read(path)?, &path.display().to_string())
}

fn profile_json(p: &KernelProfile) -> Value {
    serde_json::to_value(p.canonical()).expect("profiles serialize")
}

struct Report {
    code: i32,
    value: Value,
    human: String,
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_minimal() { EXIT_OK } else { EXIT_FALSE }
}

fn check_minimal(path: &Path) -> Result<Report> {
    let p = load_profile(path)?;
    let verdict = try_is_s_minimal(&p)?;
    let report = match &verdict {
        Verdict::NotMinimal(r) => Some(r.clone()),
        Verdict::MinimalNonconstant => Some(check_conditions(&p)?),
        _ => None,
    };
    let mut human = format!("profile: {}\nverdict: {}\n", p.canonical(), verdict.name());
    if let Verdict::NotApplicable(why) = &verdict {
        let _ = writeln!(human, "reason: {why:?}");
    }
    if let Some(r) = &report {
        for e in &r.entries {
            let _ = writeln!(human, "  {:<12} {}", e.condition.key(), if e.holds { "holds" } else { "fails" });
        }
    }
    let value = json!({
        "command": "check-minimal",
        "profile": profile_json(&p),
        "verdict": verdict.name(),
        "conditions": report,
        "derived": report.as_ref().map(|_| derived_check(&p)).transpose()?,
    });
    Ok(Report { code: verdict_code(&verdict), value, human })
}

fn classify(path: &Path) -> Result<Report> {
    let p = load_profile(path)?;
    let verdict = try_is_s_minimal(&p)?;
    let family = if p.kappa == Cardinal::ALEPH_0 { Some(countable_classify(&p)?) } else { None };
    let key = if verdict.is_minimal() { Some(clone_key(&p)?) } else { None };
    let mut human = format!("profile: {}\nverdict: {}\n", p.canonical(), verdict.name());
    if let Some(f) = family {
        let _ = writeln!(human, "family: {f}");
    }
    if let Some(k) = &key {
        let _ = writeln!(human, "clone key: mu={} nu={} chi={} epsilon={}", k.mu, k.nu, k.chi, k.epsilon);
    }
    let value = json!({
        "command": "classify",
        "profile": profile_json(&p),
        "verdict": verdict.name(),
        "family": family.map(|f| f.to_string()),
        "clone_key": key,
    });
    Ok(Report { code: verdict_code(&verdict), value, human })
}

fn same_clone_cmd(left: &Path, right: &Path) -> Result<Report> {
    let (p, q) = (load_profile(left)?, load_profile(right)?);
    if p.kappa != q.kappa {
        return Err(Error::KappaMismatch { left: p.kappa.clone(), right: q.kappa.clone() });
    }
    let (a, b) = (clone_key(&p)?, clone_key(&q)?);
    let differing = a.diff(&b);
    let same = differing.is_empty();
    let human = if same {
        "same clone\n".to_string()
    } else {
        format!("different clones; differing: {}\n", differing.join(", "))
    };
    let value = json!({
        "command": "same-clone",
        "left": profile_json(&p),
        "right": profile_json(&q),
        "same": same,
        "differing": differing,
        "left_key": a,
        "right_key": b,
    });
    Ok(Report { code: if same { EXIT_OK } else { EXIT_FALSE }, value, human })
}

fn compose_bounds(outer: &Path, inner: &Path, query: &[String]) -> Result<Report> {
    let (f, g) = (load_profile(outer)?, load_profile(inner)?);
    let queries = query.iter().map(|q| parse_cardinal(q.trim())).collect::<Result<Vec<_>>>()?;
    let b = envelope(&f, &g, &queries)?;
    let mut human = format!("nu in [{}, {}]\n", b.nu_lo, b.nu_hi);
    for q in &b.queries {
        let _ = write!(human, "s({}) <= {}", q.xi, q.upper);
        if let Some(l) = &q.lower {
            let _ = write!(human, ", >= {l}");
        }
        human.push('\n');
    }
    let value = json!({
        "command": "compose-bounds",
        "outer": profile_json(&f),
        "inner": profile_json(&g),
        "bounds": b,
    });
    Ok(Report { code: EXIT_OK, value, human })
}

fn count(kappa: &str) -> Result<Report> {
    let k = parse_cardinal(kappa)?;
    let c = count_minimal_clones(&k)?;
    Ok(Report {
        code: EXIT_OK,
        human: format!("{c}\n"),
        value: json!({ "command": "count", "kappa": k.to_string(), "count": c.to_string() }),
    })
}

fn oracle(seed: u64, cases: u64, horizon: u64) -> Result<Report> {
    let s = run_oracle(seed, cases, horizon)?;
    let mut human = format!("{} pairs, {} checks, {} violations (seed {seed})\n", s.pairs, s.checks, s.violations.len());
    for v in s.violations.iter().take(10) {
        let _ = writeln!(human, "  {v}");
    }
    let code = if s.violations.is_empty() { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Report { code, value: json!({ "command": "oracle-test", "summary": s }), human })
}

fn surgery(name: &str, path: &Path, n: Option<u64>) -> Result<Report> {
    let which = Surgery::parse(name).ok_or_else(|| {
        let names: Vec<_> = Surgery::ALL.iter().map(|s| s.name()).collect();
        Error::Precondition(format!("unknown surgery {name:?}; expected one of {}", names.join(", ")))
    })?;
    let f = load_function(path)?;
    let out = match which {
        Surgery::CollapseToConstant => surgery_collapse_to_constant(&f)?,
        Surgery::RaiseMin => surgery_raise_min(&f)?,
        Surgery::SquareMin => surgery_square_min(&f)?,
        Surgery::DropFiniteClass => {
            let n = n.ok_or_else(|| Error::Precondition("drop-finite-class needs --n".into()))?;
            surgery_drop_finite_class(&f, n)?
        }
    };
    let human = format!(
        "input profile:  {}\nalpha: {}\nresult: {}\nresult profile: {}\n",
        f.profile(),
        out.alpha,
        out.result,
        out.result.profile()
    );
    let value = json!({
        "command": "surgery",
        "surgery": which,
        "input": f.to_presentation(),
        "input_profile": profile_json(f.profile()),
        "alpha": out.alpha.to_presentation(),
        "result": out.result.to_presentation(),
        "profile": profile_json(out.result.profile()),
    });
    Ok(Report { code: EXIT_OK, value, human })
}

fn witness(kappa: &str, nu: &str) -> Result<Report> {
    let (k, n) = (parse_cardinal(kappa)?, parse_cardinal(nu)?);
    let p = witness_profile(&k, &n)?;
    let key = clone_key(&p)?;
    Ok(Report {
        code: EXIT_OK,
        human: format!("{p}\n"),
        value: json!({ "command": "witness", "profile": profile_json(&p), "clone_key": key }),
    })
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::CheckMinimal { profile } => check_minimal(profile),
        Command::Classify { profile } => classify(profile),
        Command::SameClone { left, right } => same_clone_cmd(left, right),
        Command::ComposeBounds { outer, inner, query } => compose_bounds(outer, inner, query),
        Command::Count { kappa } => count(kappa),
        Command::OracleTest { seed, cases, horizon } => oracle(*seed, *cases, *horizon),
        Command::Surgery { name, presentation, n } => surgery(name, presentation, *n),
        Command::Witness { kappa, nu } => witness(kappa, nu),
    }
}

/// Runs one command. Errors become reports too, with exit code 2 for bad
/// input and 3 for internal invariant violations.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(r) => Outcome {
            code: r.code,
            report: match cli.format {
                Format::Human => r.human,
                Format::Structured => serde_json::to_string_pretty(&r.value).expect("report serializes") + "\n",
            },
        },
        Err(e) => {
            let code = if e.is_invariant() { EXIT_INVARIANT } else { EXIT_INPUT };
            Outcome {
                code,
                report: match cli.format {
                    Format::Human => format!("error: {e}\n"),
                    Format::Structured => {
                        serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit": code })).expect("error serializes")
                            + "\n"
                    }
                },
            }
        }
    }
}
