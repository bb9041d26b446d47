use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;

use cgcube::closure::{cg_rank, elementary_closure, validity_depth, ClosureConfig};
use cgcube::error::{Error, Result};
use cgcube::formats::{emit_hpolytope, emit_pointset, parse_hpolytope, parse_pointset};
use cgcube::generate::{
    badfacet_instance, notch_p_example, random_pointset, support_at_least, unit_relaxation,
    worst_relaxation,
};
use cgcube::geom::LinIneq;
use cgcube::params::{gap, notch, oracle_optimize};
use cgcube::rat::Rat;
use cgcube::suites::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "cgcube",
    about = "Exact toolkit for point sets in the 0/1 cube: notch, gap, rounding closures, rank"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for the primary result
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the primary result to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Notch of a point set: least d with every d-face of the cube occupied
    Notch { input: PathBuf },
    /// Gap of a point set, with a bounded-level witness description
    Gap { input: PathBuf },
    /// Closure rounds needed to reach the integer hull of a system
    Rank {
        input: PathBuf,
        /// Iteration cap (defaults to a dimension-based ceiling)
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        enum_budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// One rounding-closure step of a system
    Closure {
        input: PathBuf,
        #[arg(long, default_value_t = 2_000_000)]
        enum_budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Closure rounds until a given inequality becomes valid
    Depth {
        input: PathBuf,
        /// Inequality "c1 .. cn rhs", meaning c.x >= rhs
        #[arg(long)]
        row: String,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        enum_budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Minimize a cost over a point set via membership queries only
    OracleOpt {
        input: PathBuf,
        /// Cost vector "c1 .. cn" (rationals allowed)
        #[arg(long)]
        cost: String,
        /// Search radius; defaults to the notch of the set
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Emit a generated instance
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Run a verification suite
    Verify {
        /// One of: main-bound, notch3, badfacet, treewidth, oracle,
        /// closure-laws, approx
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2_000_000)]
        enum_budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Exclusion system with doubled coefficients and half-integral slack
    Worst { input: PathBuf },
    /// Exclusion system with unit coefficients
    Unit { input: PathBuf },
    /// Doubling family whose hull has a facet with threshold 2^(n+1)
    Badfacet {
        #[arg(long)]
        n: usize,
    },
    /// Set with notch exactly p: vectors whose last n-p+1 coordinates
    /// contain a one
    NotchP {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// All vectors with at least k ones
    SupportK {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Seeded random subset with a rational density
    Random {
        #[arg(long)]
        n: usize,
        /// Inclusion probability, e.g. 1/2
        #[arg(long)]
        density: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_rat_list(text: &str, expected: usize, what: &str) -> Result<Vec<Rat>> {
    let vals: Vec<Rat> = text
        .split_whitespace()
        .map(|t| {
            t.parse::<Rat>()
                .map_err(|_| Error::InvalidParameter(format!("bad rational '{t}' in {what}")))
        })
        .collect::<Result<_>>()?;
    if vals.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "{what} needs {expected} entries, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NormBudgetExceeded { .. } | Error::GapCapExceeded { .. } => 3,
        Error::IntegerPointMismatch { .. }
        | Error::NoFeasibleInBall { .. }
        | Error::Construction(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let format = cli.format;
    let out = cli.out;
    match cli.cmd {
        Cmd::Notch { input } => {
            let s = parse_pointset(&read_input(&input)?)?;
            let p = notch(&s);
            let content = match format {
                Format::Text => format!("notch {p}\n"),
                Format::Json => pretty(&json!({
                    "n": s.n(),
                    "points": s.len(),
                    "notch": p,
                })),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Gap { input } => {
            let s = parse_pointset(&read_input(&input)?)?;
            let cert = gap(&s)?;
            let content = match format {
                Format::Text => {
                    let mut t = format!("gap {}\n", cert.delta);
                    if let Some(f) = &cert.lower_bound_facet {
                        t.push_str(&format!("deepest facet: {f}\n"));
                    }
                    t.push_str(&format!("witness rows: {}\n", cert.witness_system.len()));
                    t
                }
                Format::Json => pretty(&json!({
                    "n": s.n(),
                    "gap": cert.delta.to_i64(),
                    "lower_bound_facet": cert.lower_bound_facet.as_ref().map(|f| f.to_string()),
                    "witness_system": cert
                        .witness_system
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>(),
                })),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Rank { input, max_rank, enum_budget, threads } => {
            let p = parse_hpolytope(&read_input(&input)?)?;
            let s = p.with_box().integer_points();
            let cap = max_rank.unwrap_or_else(|| cgcube::closure::default_rank_cap(p.n));
            let cfg = ClosureConfig { enum_budget, threads };
            let cert = cg_rank(&p, &s, cap, &cfg)?;
            let content = match format {
                Format::Text => {
                    let mut t = String::new();
                    for r in &cert.rounds {
                        t.push_str(&format!(
                            "round {}: norm {}, candidates {}, cuts kept {}\n",
                            r.round_index, r.input_norm, r.candidates_enumerated, r.cuts_kept
                        ));
                    }
                    if cert.converged {
                        t.push_str(&format!("rank {}\n", cert.rank));
                    } else {
                        t.push_str(&format!("rank > {} (cap reached)\n", cert.cap));
                    }
                    t
                }
                Format::Json => pretty(&json!({
                    "rank": cert.rank,
                    "converged": cert.converged,
                    "cap": cert.cap,
                    "rounds": cert
                        .rounds
                        .iter()
                        .map(|r| {
                            json!({
                                "round": r.round_index,
                                "input_norm": r.input_norm.to_i64(),
                                "candidates": r.candidates_enumerated,
                                "cuts_kept": r.cuts_kept,
                                "output_rows": r.output.ineqs.len() + r.output.eqs.len(),
                            })
                        })
                        .collect::<Vec<_>>(),
                })),
            };
            write_output(&out, &content)?;
            Ok(if cert.converged { 0 } else { 1 })
        }
        Cmd::Closure { input, enum_budget, threads } => {
            let p = parse_hpolytope(&read_input(&input)?)?;
            let cfg = ClosureConfig { enum_budget, threads };
            let round = elementary_closure(&p, &cfg)?;
            let content = match format {
                Format::Text => {
                    eprintln!(
                        "norm {}, candidates {}, cuts kept {}",
                        round.input_norm, round.candidates_enumerated, round.cuts_kept
                    );
                    emit_hpolytope(&round.output)
                }
                Format::Json => pretty(&json!({
                    "input_norm": round.input_norm.to_i64(),
                    "candidates": round.candidates_enumerated,
                    "cuts_kept": round.cuts_kept,
                    "output": emit_hpolytope(&round.output),
                })),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Depth { input, row, max_rank, enum_budget, threads } => {
            let p = parse_hpolytope(&read_input(&input)?)?;
            let s = p.with_box().integer_points();
            let vals = parse_rat_list(&row, p.n + 1, "--row")?;
            let scale = vals
                .iter()
                .fold(num_bigint::BigInt::from(1), |acc, v| num_integer::lcm(acc, v.denom().clone()));
            let ints: Vec<num_bigint::BigInt> = vals
                .iter()
                .map(|v| (v * Rat::from(scale.clone())).to_integer())
                .collect();
            let q = LinIneq::new(ints[..p.n].to_vec(), ints[p.n].clone());
            let cap = max_rank.unwrap_or_else(|| cgcube::closure::default_rank_cap(p.n));
            let cfg = ClosureConfig { enum_budget, threads };
            let d = validity_depth(&p, &s, &q, cap, &cfg)?;
            let content = match format {
                Format::Text => match d {
                    Some(t) => format!("depth {t}\n"),
                    None => format!("depth > {cap} (cap reached)\n"),
                },
                Format::Json => pretty(&json!({ "depth": d, "cap": cap })),
            };
            write_output(&out, &content)?;
            Ok(if d.is_some() { 0 } else { 1 })
        }
        Cmd::OracleOpt { input, cost, radius } => {
            let s = parse_pointset(&read_input(&input)?)?;
            let costs = parse_rat_list(&cost, s.n(), "--cost")?;
            let p = radius.unwrap_or_else(|| notch(&s));
            let (pt, calls) = oracle_optimize(|m| s.contains(m), s.n(), &costs, p)?;
            let value: Rat = (0..s.n())
                .filter(|&i| pt.mask >> i & 1 == 1)
                .map(|i| costs[i].clone())
                .sum();
            let content = match format {
                Format::Text => format!("point {pt}\ncost {value}\ncalls {calls}\n"),
                Format::Json => pretty(&json!({
                    "point": pt.to_string(),
                    "cost": value.to_string(),
                    "calls": calls,
                    "radius": p,
                })),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Gen { family } => {
            let content = match family {
                GenCmd::Worst { input } => {
                    let s = parse_pointset(&read_input(&input)?)?;
                    emit_hpolytope(&worst_relaxation(&s))
                }
                GenCmd::Unit { input } => {
                    let s = parse_pointset(&read_input(&input)?)?;
                    emit_hpolytope(&unit_relaxation(&s))
                }
                GenCmd::Badfacet { n } => {
                    let inst = badfacet_instance(n)?;
                    let mut t = format!("# facet {}\n", inst.facet);
                    t.push_str(&emit_pointset(&inst.s));
                    t
                }
                GenCmd::NotchP { n, p } => emit_pointset(&notch_p_example(n, p)?),
                GenCmd::SupportK { n, k } => emit_pointset(&support_at_least(n, k)?),
                GenCmd::Random { n, density, seed } => {
                    let d = density.parse::<Rat>().map_err(|_| {
                        Error::InvalidParameter(format!("bad density '{density}'"))
                    })?;
                    emit_pointset(&random_pointset(n, &d, seed)?)
                }
            };
            let content = match format {
                Format::Text => content,
                Format::Json => pretty(&json!({ "content": content })),
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Cmd::Verify { suite, seed, enum_budget, threads, max_rank } => {
            let cfg = SuiteConfig { seed, enum_budget, threads, max_rank };
            let report = run_suite(&suite, &cfg)?;
            let content = match format {
                Format::Text => report.render_text(),
                Format::Json => pretty(&report.to_json()),
            };
            write_output(&out, &content)?;
            Ok(if report.has_failures() { 1 } else { 0 })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
