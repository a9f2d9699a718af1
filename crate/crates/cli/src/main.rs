use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use kloc::exact::CycNumber;
use kloc::gkm::{euler_class_expansion, flag_data, projective_space_data, weyl_character, FixedPointData, WeylData};
use kloc::group::descriptor::parse_group;
use kloc::gset::{GSet, GroupData};
use kloc::oracle::{schur_ssyt, weyl_dimension};
use kloc::quotient::{kawasaki_chi, sector_vs_lefschetz, LinearAction};
use kloc::verify::{gset_checks, run_criterion, run_suite, transitive_gsets, Check, Report};
use kloc::Caps;

#[derive(Parser, Debug)]
#[command(name = "kloc", version, about = "Exact equivariant K-theory localization checks")]
struct Cli {
    /// Size limits as JSON, inline or as a file path,
    /// e.g. '{"group_order":2000,"monomial_basis":5000,"degree":60}'.
    #[arg(long, global = true)]
    caps: Option<String>,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria (repeatable).
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
    },
    /// Invariant sections of O(d) on P(V)/G, split by conjugacy class.
    Chi(ActionArgs),
    /// Per-class sector contributions with their Lefschetz traces.
    Sectors(ActionArgs),
    /// Euler characteristic of L_λ on the full flag variety of GL_n.
    WeylChar {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated weight, e.g. 2,1,0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i32>,
    },
    /// Fixed-point expansion of λ₋₁(T*) on a space with isolated fixed points.
    EulerGkm {
        /// Pn, flag or partial-flag.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Block sizes for partial-flag, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        composition: Vec<usize>,
        /// Fixed-point data as JSON.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Localization checks on finite G-sets.
    LocalizeGset {
        /// A builtin group; every transitive G-set of size at most 12 is checked.
        #[arg(long)]
        fixture: Option<String>,
        /// {"group": descriptor, "points": n, "generators": [[images], ...]}.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct ActionArgs {
    /// Z3-P1, S3-irrep2, Z5-weights(1,2) or A4-std.
    #[arg(long)]
    fixture: Option<String>,
    /// {"action": {"group": descriptor, "rep": [...]}, "degree": d}.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    degree: Option<i64>,
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_caps(arg: Option<&str>) -> anyhow::Result<Caps> {
    let Some(arg) = arg else { return Ok(Caps::default()) };
    let v = match serde_json::from_str::<Value>(arg) {
        Ok(v) => v,
        Err(_) => read_json(Path::new(arg))?,
    };
    serde_json::from_value(v).context("invalid --caps")
}

fn load_action(args: &ActionArgs, caps: &Caps) -> anyhow::Result<(LinearAction, i64)> {
    match (&args.fixture, &args.input) {
        (Some(name), None) => {
            let d = args.degree.context("--degree is required with --fixture")?;
            Ok((LinearAction::fixture(name, caps)?, d))
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            let action = v.get("action").context("descriptor error at /action: missing")?;
            let act = LinearAction::from_json(action, "/action", caps)?;
            let d = match args.degree {
                Some(d) => d,
                None => v
                    .get("degree")
                    .and_then(Value::as_i64)
                    .context("descriptor error at /degree: expected an integer (or pass --degree)")?,
            };
            Ok((act, d))
        }
        _ => bail!("give exactly one of --fixture and --input"),
    }
}

fn chi(args: &ActionArgs, caps: &Caps) -> anyhow::Result<(Value, Vec<Check>)> {
    let (act, d) = load_action(args, caps)?;
    let r = kawasaki_chi(&act, d, caps)?;
    let total = CycNumber::from_rational(r.total.clone());
    let rank = CycNumber::from_int(r.oracle.projector_rank as i64);
    let checks = vec![
        Check::equal(8, "sector sum = averaged trace", &r.oracle.average_trace, &r.total),
        Check::equal(8, "sector sum = projector rank", &rank, &total),
        Check::holds(8, "total is a nonnegative integer", r.total_is_nonnegative_integer),
    ];
    Ok((serde_json::to_value(&r)?, checks))
}

fn sectors(args: &ActionArgs, caps: &Caps) -> anyhow::Result<(Value, Vec<Check>)> {
    let (act, d) = load_action(args, caps)?;
    let r = kawasaki_chi(&act, d, caps)?;
    let mut checks = Vec::new();
    let mut lefschetz = Vec::new();
    for s in &r.sectors {
        let l = sector_vs_lefschetz(&act, s.class, d, caps)?;
        checks.push(Check::new(
            8,
            format!("class {}: sector = Lefschetz trace", s.class),
            json!(l.lefschetz.to_string()),
            json!(l.symbolic.to_string()),
            l.pass,
        ));
        lefschetz.push(l);
    }
    Ok((
        json!({ "action": act.name(), "degree": d, "sectors": r.sectors, "lefschetz": lefschetz }),
        checks,
    ))
}

fn weyl_char(n: Option<usize>, lambda: &[i32]) -> anyhow::Result<(Value, Vec<Check>)> {
    if lambda.is_empty() {
        bail!("--lambda is required");
    }
    if let Some(n) = n {
        if n != lambda.len() {
            bail!("--lambda has {} entries but --n is {n}", lambda.len());
        }
    }
    let n = lambda.len();
    let chi = weyl_character(lambda)?;
    let dim = CycNumber::from_rational(weyl_dimension(&lambda.iter().map(|&l| l as i64).collect::<Vec<_>>()));
    let mut checks = vec![Check::equal(4, "dimension formula", &dim, &chi.coefficient_sum())];
    let dominant = lambda.windows(2).all(|w| w[0] >= w[1]) && lambda.iter().all(|&l| l >= 0);
    if dominant {
        let shape: Vec<u32> = lambda.iter().map(|&l| l as u32).collect();
        checks.push(Check::equal(
            4,
            "tableau expansion of the Schur polynomial",
            &schur_ssyt(&shape, n),
            &chi,
        ));
    }
    let results = json!({
        "n": n,
        "lambda": lambda,
        "character": chi.to_string(),
        "terms": chi.num_terms(),
        "dimension": chi.coefficient_sum().to_string(),
    });
    Ok((results, checks))
}

fn euler_gkm(
    fixture: Option<&str>,
    n: Option<usize>,
    composition: &[usize],
    input: Option<&Path>,
) -> anyhow::Result<(Value, Vec<Check>)> {
    let data = match (fixture, input) {
        (Some(name), None) => {
            let n = n.context("--n is required with --fixture")?;
            match name {
                "Pn" => projective_space_data(n),
                "flag" => flag_data(&WeylData::full(n)?),
                "partial-flag" => flag_data(&WeylData::new(n, composition.to_vec())?),
                other => bail!("unknown space {other:?}; known: Pn, flag, partial-flag"),
            }
        }
        (None, Some(path)) => FixedPointData::from_json(&read_json(path)?)?,
        _ => bail!("give exactly one of --fixture and --input"),
    };
    let points = data.len();
    let e = euler_class_expansion(Arc::new(data))?;
    let count = kloc::exact::LaurentPoly::constant(e.total.nvars(), CycNumber::from_int(points as i64));
    let checks = vec![
        Check::holds(2, "λ₋₁(T*) is the sum of the point classes", e.sum_matches),
        Check::holds(2, "each point class pushes forward to 1", e.each_pushes_to_one),
        Check::equal(2, "pushforward of λ₋₁(T*) is the fixed-point count", &count, &e.total),
    ];
    Ok((
        json!({ "points": points, "total": e.total.to_string(), "expansion": e }),
        checks,
    ))
}

fn localize_gset(fixture: Option<&str>, input: Option<&Path>, caps: &Caps) -> anyhow::Result<(Value, Vec<Check>)> {
    let sets: Vec<(String, Arc<GSet>)> = match (fixture, input) {
        (Some(name), None) => {
            let data = GroupData::new(kloc::group::builtin(name)?);
            transitive_gsets(&data)
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            let gv = v.get("group").context("descriptor error at /group: missing")?;
            let g = parse_group(gv, "/group", caps.group_order)?;
            let points = v
                .get("points")
                .and_then(Value::as_u64)
                .context("descriptor error at /points: expected a count")? as usize;
            let images: Vec<Vec<usize>> =
                serde_json::from_value(v.get("generators").cloned().unwrap_or(Value::Null))
                    .context("descriptor error at /generators: expected one image list per group generator")?;
            let name = g.name().to_owned();
            let set = GSet::from_generator_action(GroupData::new(g), points, &images)
                .map_err(|e| anyhow::anyhow!("descriptor error at /generators: {e}"))?;
            vec![(format!("{name} on {points} points"), Arc::new(set))]
        }
        _ => bail!("give exactly one of --fixture and --input"),
    };
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    for (label, set) in &sets {
        let c = gset_checks(set, label)?;
        summary.push(json!({
            "gset": label,
            "points": set.points(),
            "orbits": set.orbits().len(),
            "checks": c.len(),
        }));
        checks.extend(c);
    }
    Ok((json!({ "gsets": summary }), checks))
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let caps = parse_caps(cli.caps.as_deref())?;
    let report = match &cli.command {
        Command::Verify { seed, criteria } => {
            if criteria.is_empty() {
                run_suite(*seed, &caps)
            } else {
                let mut checks = Vec::new();
                for &c in criteria {
                    checks.extend(run_criterion(c, *seed, &caps)?);
                }
                Report::new(
                    "verify",
                    json!({ "seed": seed, "caps": caps, "criteria": criteria }),
                    Value::Null,
                    checks,
                )
            }
        }
        Command::Chi(a) | Command::Sectors(a) => {
            let name = if matches!(cli.command, Command::Chi(_)) {
                "chi"
            } else {
                "sectors"
            };
            let (results, checks) = if name == "chi" {
                chi(a, &caps)?
            } else {
                sectors(a, &caps)?
            };
            let options = json!({
                "fixture": a.fixture,
                "input": a.input.as_ref().map(|p| p.display().to_string()),
                "degree": a.degree,
            });
            Report::new(name, options, results, checks)
        }
        Command::WeylChar { n, lambda } => {
            let (results, checks) = weyl_char(*n, lambda)?;
            Report::new("weyl-char", json!({ "n": n, "lambda": lambda }), results, checks)
        }
        Command::EulerGkm {
            fixture,
            n,
            composition,
            input,
        } => {
            let (results, checks) = euler_gkm(fixture.as_deref(), *n, composition, input.as_deref())?;
            let options = json!({
                "fixture": fixture,
                "n": n,
                "composition": composition,
                "input": input.as_ref().map(|p| p.display().to_string()),
            });
            Report::new("euler-gkm", options, results, checks)
        }
        Command::LocalizeGset { fixture, input } => {
            let (results, checks) = localize_gset(fixture.as_deref(), input.as_deref(), &caps)?;
            let options = json!({ "fixture": fixture, "input": input.as_ref().map(|p| p.display().to_string()) });
            Report::new("localize-gset", options, results, checks)
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_json();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    for c in &report.criteria {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "{verdict} criterion {} ({}): {}/{} checks",
            c.criterion,
            c.title,
            c.checks - c.failed,
            c.checks
        );
    }
    for f in report.failures().take(20) {
        eprintln!("  failed: {} (expected {}, got {})", f.name, f.expected, f.actual);
    }
    eprintln!("elapsed: {:.2}s", start.elapsed().as_secs_f64());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
