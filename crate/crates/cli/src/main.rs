//! `ncthick`: command-line access to the NC lattices, braid orbits, AR quivers
//! and thick-subcategory lattices computed by the library.

use std::collections::HashSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncthick::braid::{enumerate_factorizations, hurwitz_orbit_with, simple_factorization, DEFAULT_ORBIT_CAP, MAX_BRUTE_FORCE_RANK};
use ncthick::derived::DerivedModel;
use ncthick::repcat::ar::{ar_quiver_module_category, RadTable};
use ncthick::thicklat::{kronecker_lattice, thick_lattice, wide_subcategory_oracle, ThickContext};
use ncthick::verify::{run_suite, Suite};
use ncthick::{build_cartan, enumerate_nc, nc_kronecker, CartanType, Error, Execution, Quiver};

/// Widest `--window` accepted, in levels.
const MAX_WINDOW: i64 = 512;

#[derive(Parser, Debug)]
#[command(name = "ncthick", version, about = "Non-crossing partitions and thick subcategories of Dynkin type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate NC(W, c) for the standard Coxeter element.
    Nc {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, value_enum, default_value_t = NcFormat::Json)]
        format: NcFormat,
        /// Root-height bound for KRONECKER.
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// Hurwitz orbits of reflection factorizations of c.
    Braid {
        #[command(subcommand)]
        action: BraidAction,
    },
    /// Auslander–Reiten quivers and Hom hammocks.
    Arq {
        #[command(subcommand)]
        action: ArqAction,
    },
    /// Thick-subcategory lattices.
    Thick {
        #[command(subcommand)]
        action: ThickAction,
    },
    /// The Kronecker lattice with a finite set of tube points.
    Kronecker {
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
enum BraidAction {
    Orbit {
        #[arg(long = "type")]
        type_label: String,
        /// Print only the summary line.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ArqAction {
    /// Knit Hom hammocks on a window of the repetition.
    Knit {
        #[arg(long = "type")]
        type_label: String,
        /// Inclusive level range `lo:hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        check_mesh: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Indecomposable modules with their Hom/Ext tables or AR quiver.
    Modules {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
}

#[derive(Subcommand, Debug)]
enum ThickAction {
    Lattice {
        #[arg(long = "type")]
        type_label: String,
        /// Cross-check the count against the wide-subcategory oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = ThickFormat::Json)]
        format: ThickFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NcFormat {
    Json,
    Dot,
    Count,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ThickFormat {
    Json,
    Dot,
    Count,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Nc,
    Braid,
    Arq,
    Thick,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Nc => Suite::Nc,
            SuiteArg::Braid => Suite::Braid,
            SuiteArg::Arq => Suite::Arq,
            SuiteArg::Thick => Suite::Thick,
        }
    }
}

/// A failed run: exit code plus a one-line diagnostic.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Structural(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn parse_label(s: &str) -> Result<CartanType, Failure> {
    Ok(s.parse::<CartanType>()?)
}

fn parse_window(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(Error::InvalidWindow(s.to_string()).to_string());
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || hi - lo > MAX_WINDOW {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn cmd_nc(label: &str, format: NcFormat, bound: usize) -> Outcome {
    let label = parse_label(label)?;
    let lattice = if label == CartanType::Kronecker {
        nc_kronecker(bound)
    } else {
        let cd = build_cartan(label)?;
        enumerate_nc(&cd, &cd.standard_coxeter())?
    };
    Ok(match format {
        NcFormat::Count => format!("{}\n", lattice.len()),
        NcFormat::Dot => lattice.hasse_dot(),
        NcFormat::Json => pretty(&lattice.to_json()),
    })
}

fn cmd_braid(label: &str, count: bool) -> Outcome {
    let label = parse_label(label)?;
    if !label.is_finite() {
        return Err(Error::WrongKind(label.to_string()).into());
    }
    let cd = build_cartan(label)?;
    let exec = Execution::default();
    let orbit = hurwitz_orbit_with(&simple_factorization(&cd), exec, DEFAULT_ORBIT_CAP)?;
    let orbits = if cd.rank() <= MAX_BRUTE_FORCE_RANK {
        let all = enumerate_factorizations(&cd, &cd.standard_coxeter())?;
        let mut seen: HashSet<_> = HashSet::new();
        let mut orbits = 0;
        for f in &all {
            if seen.contains(f) {
                continue;
            }
            orbits += 1;
            seen.extend(hurwitz_orbit_with(f, exec, DEFAULT_ORBIT_CAP)?);
        }
        if seen.len() != all.len() {
            return Err(Failure::Verification("orbits do not cover the factorizations".into()));
        }
        Some((all.len(), orbits))
    } else {
        None
    };
    let (total, orbits) = orbits.unwrap_or((orbit.len(), 1));
    let noun = if orbits == 1 { "orbit" } else { "orbits" };
    if count {
        return Ok(format!("{total} factorizations, {orbits} {noun}\n"));
    }
    let factorizations = orbit
        .iter()
        .map(|f| Ok(f.roots(&cd)?.iter().map(|r| r.to_string()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(pretty(&json!({
        "type": label.to_string(),
        "factorization_count": total,
        "orbit_count": orbits,
        "orbit_of_simple": factorizations,
    })))
}

fn simply_laced_quiver(label: &str) -> Result<Quiver, Failure> {
    let label = parse_label(label)?;
    if !label.is_finite() || !label.is_simply_laced() {
        return Err(Error::WrongKind(format!("{label} (module computations need a simply-laced Dynkin label)")).into());
    }
    Ok(Quiver::standard(label)?)
}

fn cmd_knit(label: &str, window: Option<&str>, check_mesh: bool, format: GraphFormat) -> Outcome {
    let q = simply_laced_quiver(label)?;
    let (lo, hi) = match window {
        Some(w) => parse_window(w)?,
        None => (-2, 2 * q.n() as i64),
    };
    let model = DerivedModel::new(&q)?;
    let table = model.table();
    if check_mesh {
        let report = table.verify_mesh(lo, hi)?;
        if !report.is_clean() {
            return Err(Failure::Verification(format!(
                "{} mesh violations, first: {}",
                report.violations.len(),
                report.violations[0]
            )));
        }
    }
    Ok(match format {
        GraphFormat::Dot => model.repetition().build_zdelta(lo, hi)?.to_dot("ZDelta", |v| v.to_string()),
        GraphFormat::Json => pretty(&table.to_json(lo, hi)),
    })
}

fn cmd_modules(label: &str, format: GraphFormat) -> Outcome {
    let q = simply_laced_quiver(label)?;
    let cat = ncthick::Catalog::new(&q)?;
    Ok(match format {
        GraphFormat::Json => pretty(&cat.tables_json()),
        GraphFormat::Dot => {
            let ar = ar_quiver_module_category(&cat, &RadTable::new(&cat));
            ar.to_dot("ModuleAR", |r| r.to_string())
        }
    })
}

fn cmd_thick(label: &str, oracle: bool, format: ThickFormat) -> Outcome {
    let label = parse_label(label)?;
    let cd = build_cartan(label)?;
    let ctx = ThickContext::new(&cd)?;
    let lattice = thick_lattice(&ctx)?;
    let oracle_count = if oracle {
        let cat = ctx
            .catalog()
            .ok_or_else(|| Failure::Usage(Error::WrongKind(format!("{label} (oracle needs a simply-laced label)")).to_string()))?;
        let n = wide_subcategory_oracle(cat)?.len();
        if n != lattice.len() {
            return Err(Failure::Verification(format!(
                "{} thick subcategories but {n} wide subcategories",
                lattice.len()
            )));
        }
        Some(n)
    } else {
        None
    };
    Ok(match format {
        ThickFormat::Count => format!("{}\n", lattice.len()),
        ThickFormat::Dot => lattice.nc().hasse_dot(),
        ThickFormat::Json => {
            let mut v = lattice.to_json(&ctx)?;
            if let Some(n) = oracle_count {
                v["oracle"] = json!({ "wide_count": n, "agrees": true });
            }
            pretty(&v)
        }
    })
}

fn cmd_kronecker(bound: usize, points: usize, format: GraphFormat) -> Outcome {
    let labels: Vec<String> = (1..=points).map(|i| format!("p{i}")).collect();
    let k = kronecker_lattice(bound, &labels)?;
    Ok(match format {
        GraphFormat::Dot => k.to_dot(),
        GraphFormat::Json => pretty(&k.to_json()),
    })
}

fn cmd_verify(suite: SuiteArg) -> Outcome {
    let checks = run_suite(suite.into(), Execution::default());
    let mut out = String::new();
    for c in &checks {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Verification(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(out)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("NC_THICK_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("NC_THICK_THREADS must be a positive integer, got `{raw}`")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn dispatch(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Nc { type_label, format, bound } => cmd_nc(&type_label, format, bound),
        Command::Braid { action: BraidAction::Orbit { type_label, count } } => cmd_braid(&type_label, count),
        Command::Arq { action } => match action {
            ArqAction::Knit { type_label, window, check_mesh, format } => {
                cmd_knit(&type_label, window.as_deref(), check_mesh, format)
            }
            ArqAction::Modules { type_label, format } => cmd_modules(&type_label, format),
        },
        Command::Thick { action: ThickAction::Lattice { type_label, oracle, format } } => {
            cmd_thick(&type_label, oracle, format)
        }
        Command::Kronecker { bound, points, format } => cmd_kronecker(bound, points, format),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            eprintln!("error: usage: {}", one_line(&first));
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: usage: {}", one_line(&msg));
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: verification: {}", one_line(&msg));
            ExitCode::from(1)
        }
    }
}
