//! `svtk`: command-line frontend over the simplicial, collar, and cartan
//! verifiers.
//!
//! Exit codes: 0 = pass, 1 = check failure, 2 = usage or parse error.
//! Machine-readable lines are flat `key value` facts; human commentary is
//! prefixed with `#` and suppressed under `--machine`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cartan::{
    parse::{parse_one_form, parse_poly},
    verify_movie_field_formula, DarbouxChart,
};
use collar::verify_coherence;
use simplicial::category::{localize_category, materialize, verify_max_localization, WORD_BOUND};
use simplicial::ex::{ex_eq_level, ex_level, MarkedEdgeSet, EX_BUDGET};
use simplicial::io::{parse_category, parse_complex, print_category, print_simplicial, ParsedComplex};
use simplicial::kan::{check_inner_kan, check_kan, HORN_BUDGET};
use simplicial::subdivision::{sd_nonsingular, SdComplex};
use simplicial::SsetError;

#[derive(Parser)]
#[command(name = "svtk", version, about = "simplicial/collar/movie verification toolkit")]
struct Cli {
    /// Emit only machine-readable lines.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barycentric subdivision of a standard simplex or a non-singular
    /// complex, printed in the sset format.
    Sd(SdArgs),
    /// Bounded Ex enumeration of a simplicial set.
    Ex(ExArgs),
    /// Horn-filling report at bounded dimension.
    CheckKan(CheckKanArgs),
    /// Localize a finite category presentation at named arrows.
    Localize(LocalizeArgs),
    /// The enumerative max-localization check against a category.
    VerifyMaxLocalization(VerifyMaxArgs),
    /// Coherence sweep of the simplex collaring flow.
    CollarVerify(CollarArgs),
    /// The movie Liouville field formula, exactly.
    MovieVerify(MovieArgs),
}

#[derive(Args)]
struct SdArgs {
    /// Subdivide the standard n-simplex.
    #[arg(long, conflicts_with = "input")]
    n: Option<usize>,
    /// Subdivide the complex in this sset/ssset file (must be non-singular).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ExArgs {
    /// Simplicial set in the sset format.
    #[arg(long)]
    input: PathBuf,
    /// Ex level to enumerate.
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Which edges count as equivalences for the Ex filter: `degenerate`
    /// or `all`.
    #[arg(long, default_value = "degenerate")]
    marked: String,
    #[arg(long, default_value_t = EX_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct CheckKanArgs {
    /// Complex in the sset or ssset format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Check only inner horns.
    #[arg(long)]
    inner_only: bool,
    #[arg(long, default_value_t = HORN_BUDGET)]
    budget: usize,
    /// Cap on reported witnesses.
    #[arg(long, default_value_t = 4)]
    witnesses: usize,
}

#[derive(Args)]
struct LocalizeArgs {
    /// Category presentation in the cat format.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated arrow names to invert.
    #[arg(long, value_delimiter = ',')]
    invert: Vec<String>,
    #[arg(long, default_value_t = WORD_BOUND)]
    word_bound: usize,
}

#[derive(Args)]
struct VerifyMaxArgs {
    /// Target category presentation in the cat format.
    #[arg(long)]
    input: PathBuf,
    /// Size of the linear order I (at most 3).
    #[arg(long)]
    card: usize,
    #[arg(long, default_value_t = WORD_BOUND)]
    word_bound: usize,
}

#[derive(Args)]
struct CollarArgs {
    /// The face chain, e.g. `0;0,1;0,1,2`.
    #[arg(long)]
    chain: String,
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[arg(long, default_value_t = 256)]
    steps: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MovieArgs {
    /// The function h as a polynomial, e.g. `q*s` or `q^2*s^3`.
    #[arg(long)]
    h: String,
    /// The M-factor Liouville form, e.g. `p dq`.
    #[arg(long)]
    lambda: String,
    /// M coordinate pairs `q:p[,q2:p2...]`.
    #[arg(long, default_value = "q:p")]
    m_pairs: String,
    /// T*S coordinate pairs `s:sigma[,...]`.
    #[arg(long, default_value = "s:sigma")]
    s_pairs: String,
}

enum Failure {
    /// Exit 1: a verification failed or the input is structurally invalid.
    Check(String),
    /// Exit 2: usage or parse problem.
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.machine;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !machine {
                eprintln!("# check failed");
            }
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Structural violations exit 1, malformed input exits 2.
fn input_error(e: SsetError) -> Failure {
    match e {
        SsetError::InvalidStructure(_) => Failure::Check(e.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let machine = cli.machine;
    let human = |line: &str| {
        if !machine {
            println!("# {line}");
        }
    };
    match cli.command {
        Command::Sd(args) => {
            let result = match (args.n, args.input) {
                (Some(n), None) => {
                    human(&format!("subdividing the standard {n}-simplex"));
                    SdComplex::new(n + 1, n.max(1))
                        .map(|sd| sd.nerve().sset().clone())
                        .map_err(input_error)?
                }
                (None, Some(path)) => {
                    let parsed = parse_complex(&read_file(&path)?).map_err(input_error)?;
                    let top = parsed.underlying().top_dim().max(1);
                    sd_nonsingular(parsed.underlying(), top)
                        .map(|sd| sd.nerve().sset().clone())
                        .map_err(input_error)?
                }
                _ => return Err(Failure::Usage("pass exactly one of --n or --input".into())),
            };
            print!("{}", print_simplicial(&result));
            Ok(())
        }
        Command::Ex(args) => {
            let parsed = parse_complex(&read_file(&args.input)?).map_err(input_error)?;
            let x = match parsed {
                ParsedComplex::Simplicial(x) => x,
                ParsedComplex::Semisimplicial(_) => {
                    return Err(Failure::Usage("ex needs an sset input with degeneracies".into()))
                }
            };
            let marked = match args.marked.as_str() {
                "degenerate" => MarkedEdgeSet::degenerate_only(&x),
                "all" => MarkedEdgeSet::all(&x),
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown marking `{other}` (expected `degenerate` or `all`)"
                    )))
                }
            };
            let all = ex_level(&x, args.level, args.budget).map_err(input_error)?;
            let eq = ex_eq_level(&x, args.level, &marked, args.budget).map_err(input_error)?;
            human("vertex-assignment tables are keyed by subset bitmask");
            println!("ex level {} total {}", args.level, all.len());
            println!("exeq level {} total {}", args.level, eq.len());
            let sd = SdComplex::new(args.level + 1, args.level.max(1)).map_err(input_error)?;
            for (i, map) in eq.iter().enumerate() {
                let cells: Vec<String> = (0..sd.nerve().sset().count(0))
                    .map(|v| {
                        let mask: u32 = sd
                            .lattice()
                            .members(v)
                            .into_iter()
                            .fold(0, |m, e| m | (1 << e));
                        format!("{:b}={}", mask, map.levels[0][v])
                    })
                    .collect();
                println!("map {} {}", i, cells.join(" "));
            }
            Ok(())
        }
        Command::CheckKan(args) => {
            let parsed = parse_complex(&read_file(&args.input)?).map_err(input_error)?;
            let x = parsed.underlying();
            let report = if args.inner_only {
                check_inner_kan(x, args.max_n, args.budget)
            } else {
                check_kan(x, args.max_n, args.budget)
            };
            for c in &report.checks {
                println!("horn {} {} total {} filled {}", c.n, c.j, c.total, c.filled);
            }
            for w in report.witnesses.iter().take(args.witnesses) {
                println!("witness {} {} {:?}", w.n, w.j, w.assignment);
            }
            if report.passes() {
                human("all horns fill");
                Ok(())
            } else {
                Err(Failure::Check("unfillable horn found".into()))
            }
        }
        Command::Localize(args) => {
            let c = parse_category(&read_file(&args.input)?).map_err(input_error)?;
            let mut ids = Vec::new();
            for name in &args.invert {
                ids.push(
                    c.arrow_id(name)
                        .ok_or_else(|| Failure::Usage(format!("unknown arrow `{name}`")))?,
                );
            }
            let loc = localize_category(&c, &ids).map_err(input_error)?;
            let cat = materialize(&loc, args.word_bound)
                .map_err(|e| Failure::Check(e.to_string()))?;
            human("localized presentation, then its materialized size");
            print!("{}", print_category(&loc));
            println!("objects {}", cat.objects.len());
            println!("morphisms {}", cat.morphisms.len());
            Ok(())
        }
        Command::VerifyMaxLocalization(args) => {
            let c = parse_category(&read_file(&args.input)?).map_err(input_error)?;
            let ok = verify_max_localization(args.card, &c, args.word_bound)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            println!(
                "max-localization card {} {}",
                args.card,
                if ok { "pass" } else { "fail" }
            );
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("restriction along max is not an equivalence".into()))
            }
        }
        Command::CollarVerify(args) => {
            let masks = parse_chain(&args.chain)?;
            let report = verify_coherence(
                masks[0], masks[1], masks[2], args.samples, args.steps, args.seed,
            )
            .map_err(|e| Failure::Check(e.to_string()))?;
            println!("coherence max_residual {:e}", report.max_residual);
            if report.passes(args.tol) {
                human(&format!("within tolerance {:e}", args.tol));
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "residual {:e} exceeds tolerance {:e}",
                    report.max_residual, args.tol
                )))
            }
        }
        Command::MovieVerify(args) => {
            let chart = parse_chart(&args.m_pairs, &args.s_pairs)?;
            let h = parse_poly(&chart, &args.h).map_err(|e| Failure::Usage(e.to_string()))?;
            let lam =
                parse_one_form(&chart, &args.lambda).map_err(|e| Failure::Usage(e.to_string()))?;
            let (field, ok) = verify_movie_field_formula(&chart, &lam, &h)
                .map_err(|e| Failure::Check(e.to_string()))?;
            println!("{}", field.render(&chart));
            println!("movie-field {}", if ok { "pass" } else { "fail" });
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("fiber component differs from the formula".into()))
            }
        }
    }
}

fn parse_chain(text: &str) -> Result<[u32; 3], Failure> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(
            "chain must have three `;`-separated faces, like `0;0,1;0,1,2`".into(),
        ));
    }
    let mut masks = [0u32; 3];
    for (k, part) in parts.iter().enumerate() {
        for tok in part.split(',') {
            let i: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad index `{tok}` in chain")))?;
            if i >= 20 {
                return Err(Failure::Usage(format!("index {i} too large")));
            }
            masks[k] |= 1 << i;
        }
    }
    Ok(masks)
}

fn parse_chart(m_pairs: &str, s_pairs: &str) -> Result<DarbouxChart, Failure> {
    let split = |text: &str| -> Result<Vec<(String, String)>, Failure> {
        text.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let mut it = p.split(':');
                match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => Ok((a.trim().to_string(), b.trim().to_string())),
                    _ => Err(Failure::Usage(format!("bad coordinate pair `{p}`"))),
                }
            })
            .collect()
    };
    let m = split(m_pairs)?;
    let s = split(s_pairs)?;
    let m_refs: Vec<(&str, &str)> = m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let s_refs: Vec<(&str, &str)> = s.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    DarbouxChart::new(&m_refs, &s_refs).map_err(|e| Failure::Usage(e.to_string()))
}
