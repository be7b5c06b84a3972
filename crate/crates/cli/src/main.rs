//! Command-line front end: field setup, character enumeration, gamma tables,
//! distinction verdicts, and the verification harness.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a
//! counterexample, 2 on configuration errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sscgamma::lf::{ExtKind, LocalFieldCfg};
use sscgamma::ssc::SSCTriple;
use sscgamma::verify::{run_suite, Outcome, Suite};
use sscgamma::{GammaMonomial, MultChar};

#[derive(Parser)]
#[command(name = "sscgamma", version, about = "Exact twisted gamma factors for simple supercuspidal representations over Laurent-series local fields")]
struct Cli {
    #[command(flatten)]
    session: SessionArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SessionArgs {
    /// Residue characteristic (odd prime).
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,
    /// Degree of k_F over its prime field.
    #[arg(long, global = true, default_value_t = 1)]
    f: u32,
    /// Extension kind of E/F.
    #[arg(long, global = true, value_enum, default_value_t = Ext::Unramified)]
    ext: Ext,
    /// Unit eps of k_F (encoding) with u^2 = eps t, ramified model only.
    #[arg(long, global = true, default_value_t = 1)]
    eps: u64,
    /// Series truncation precision N (at least 4).
    #[arg(long, global = true, default_value_t = 6)]
    precision: i64,
    /// Valuation shell window V for the zeta integrals.
    #[arg(long, global = true, default_value_t = 6)]
    shell_window: i64,
    /// Unit transversal level M for the zeta integrals.
    #[arg(long, global = true, default_value_t = 3)]
    unit_level: i64,
    /// Order bound Z for the zeta parameter of a triple.
    #[arg(long, global = true, default_value_t = 24)]
    zeta_order: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled spot checks in the verification harness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ext {
    Unramified,
    Ramified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Prints the deterministic field presentation (moduli, generators).
    FieldInfo,
    /// Structure of E^x / F^x (1 + P_E) and its dual.
    GroupStructure,
    /// Enumerates multiplicative quasi-characters.
    ListChars {
        #[arg(long, default_value_t = 0)]
        depth: u8,
        #[arg(long, default_value_t = false)]
        trivial_on_f: bool,
        /// Order of the value at the uniformizer (ignored with --trivial-on-f).
        #[arg(long, default_value_t = 24)]
        pi_order: u64,
    },
    /// Twisted gamma factors of one triple against an enumerated twist family.
    GammaTable {
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Discrete log of v in k_E^x.
        #[arg(long)]
        v: u64,
        /// Residue character index of phi.
        #[arg(long)]
        phi: u64,
        /// zeta = zeta_Z^k for this k.
        #[arg(long)]
        zeta: u64,
        #[arg(long, default_value_t = 0)]
        depth: u8,
        #[arg(long, default_value_t = 24)]
        pi_order: u64,
        /// Restrict to twists trivial on F^x.
        #[arg(long, default_value_t = false)]
        trivial_on_f: bool,
    },
    /// Distinction verdict for one triple, with the per-twist gamma table.
    CheckDistinction {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long)]
        v: u64,
        #[arg(long)]
        phi: u64,
        #[arg(long)]
        zeta: u64,
    },
    /// Runs a verification suite; exit code 1 on a counterexample.
    Verify {
        /// One of: equivalence, odd_n, self_dual, pontryagin, appendix.
        #[arg(long)]
        suite: String,
    },
    /// Runs all integral-oracle cross-checks (shorthand for
    /// `verify --suite appendix`); the grids are pinned to the unramified
    /// model.
    VerifyAppendix {
        /// Residue cardinality; the oracle grids require 3.
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("SSCGAMMA_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_cfg(s: &SessionArgs) -> Result<LocalFieldCfg, String> {
    let cfg = match s.ext {
        Ext::Unramified => LocalFieldCfg::unramified(s.p, s.f, s.precision, s.zeta_order),
        Ext::Ramified => LocalFieldCfg::ramified(s.p, s.f, s.eps, s.precision, s.zeta_order),
    };
    cfg.map_err(|e| e.to_string())
}

/// The field presentation block included in every report, so that discrete
/// logs in the output are reproducible.
fn field_block(cfg: &LocalFieldCfg) -> serde_json::Value {
    let kind = match cfg.kind() {
        ExtKind::Unramified => json!("unramified"),
        ExtKind::Ramified { eps } => json!({"ramified_eps_encoding": eps.encoding()}),
    };
    json!({
        "p": cfg.base_field().p(),
        "f": cfg.base_field().degree(),
        "q_f": cfg.q_f(),
        "q_e": cfg.q_e(),
        "kind": kind,
        "modulus_f": cfg.base_field().modulus(),
        "generator_f": cfg.base_field().generator_encoding(),
        "modulus_e": cfg.residue_field().modulus(),
        "generator_e": cfg.residue_field().generator_encoding(),
        "root_order_m": cfg.m(),
        "precision": cfg.precision(),
        "zeta_order_bound": cfg.zeta_bound(),
    })
}

fn emit(format: Format, value: &serde_json::Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Tsv => emit_tsv(value),
    }
}

/// Flattened key/value TSV for reports that are not row-shaped.
fn emit_tsv(value: &serde_json::Value) {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, vv) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, vv, out);
                }
            }
            serde_json::Value::Array(items) => {
                for (i, vv) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), vv, out);
                }
            }
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    for (k, v) in rows {
        println!("{k}\t{v}");
    }
}

fn alpha_string(g: &GammaMonomial) -> String {
    if g.alpha_twice() % 2 == 0 {
        format!("{}", g.alpha_twice() / 2)
    } else {
        format!("{}/2", g.alpha_twice())
    }
}

fn gamma_row(idx: usize, lam: &MultChar, gamma: &GammaMonomial) -> serde_json::Value {
    let at_half = gamma.eval_at(1, 2).expect("half-integer exponent");
    json!({
        "lambda_id": idx,
        "residue_index": lam.residue_index(),
        "value_at_uniformizer": lam.pi_exp(),
        "c_lambda": lam.c_bar().map(|c| c.dlog()),
        "unit_root_exponent": gamma.unit().root_exponent(),
        "alpha": alpha_string(gamma),
        "beta": gamma.beta(),
        "value_at_half": if at_half.is_one() { json!(1) } else { at_half.to_json() },
    })
}

fn gamma_table_rows(
    cfg: &LocalFieldCfg,
    triple: &SSCTriple,
    depth: u8,
    trivial_on_f: bool,
    pi_order: u64,
) -> Result<Vec<serde_json::Value>, String> {
    let chars = cfg
        .enumerate_chars(depth, trivial_on_f, pi_order)
        .map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (i, lam) in chars.iter().enumerate() {
        let gamma = match depth {
            0 => triple.gamma_tame(cfg, lam),
            1 => triple.gamma_depth_one_gl2(cfg, lam),
            _ => unreachable!("depth validated"),
        }
        .map_err(|e| e.to_string())?;
        rows.push(gamma_row(i, lam, &gamma));
    }
    Ok(rows)
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let s = &cli.session;
    match &cli.command {
        Command::FieldInfo => {
            let cfg = build_cfg(s)?;
            emit(s.format, &json!({"field": field_block(&cfg)}));
            Ok(ExitCode::SUCCESS)
        }
        Command::GroupStructure => {
            let cfg = build_cfg(s)?;
            let group = sscgamma::chargrp::QuotientGroup::build(&cfg).map_err(|e| e.to_string())?;
            emit(
                s.format,
                &json!({"field": field_block(&cfg), "quotient": group.to_json()}),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::ListChars {
            depth,
            trivial_on_f,
            pi_order,
        } => {
            if *depth > 1 {
                return Err(format!("depth must be 0 or 1, got {depth}"));
            }
            let cfg = build_cfg(s)?;
            let chars = cfg
                .enumerate_chars(*depth, *trivial_on_f, *pi_order)
                .map_err(|e| e.to_string())?;
            let listed: Vec<_> = chars.iter().map(|c| c.to_json()).collect();
            emit(
                s.format,
                &json!({
                    "field": field_block(&cfg),
                    "count": listed.len(),
                    "characters": listed,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::GammaTable {
            n,
            v,
            phi,
            zeta,
            depth,
            pi_order,
            trivial_on_f,
        } => {
            if *depth > 1 {
                return Err(format!("depth must be 0 or 1, got {depth}"));
            }
            if *depth == 1 && *n != 2 {
                return Err(format!("depth-one twists are computed for n = 2 only, got n = {n}"));
            }
            let cfg = build_cfg(s)?;
            let triple = SSCTriple::new(&cfg, *n, cfg.residue_field().from_dlog(*v), *phi, *zeta);
            let rows = gamma_table_rows(&cfg, &triple, *depth, *trivial_on_f, *pi_order)?;
            match s.format {
                Format::Json => emit(
                    s.format,
                    &json!({
                        "field": field_block(&cfg),
                        "triple": triple.to_json(),
                        "rows": rows,
                    }),
                ),
                Format::Tsv => {
                    println!("# field\t{}", serde_json::to_string(&field_block(&cfg)).unwrap());
                    println!("# triple\t{}", serde_json::to_string(&triple.to_json()).unwrap());
                    println!(
                        "lambda_id\tresidue_index\tvalue_at_uniformizer\tc_lambda\tunit_root_exponent\talpha\tbeta\tvalue_at_half"
                    );
                    for row in &rows {
                        println!(
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                            row["lambda_id"],
                            row["residue_index"],
                            row["value_at_uniformizer"],
                            row["c_lambda"],
                            row["unit_root_exponent"],
                            row["alpha"].as_str().unwrap(),
                            row["beta"],
                            serde_json::to_string(&row["value_at_half"]).unwrap(),
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckDistinction { n, v, phi, zeta } => {
            let cfg = build_cfg(s)?;
            let triple = SSCTriple::new(&cfg, *n, cfg.residue_field().from_dlog(*v), *phi, *zeta);
            let rows = gamma_table_rows(&cfg, &triple, 0, true, 1)?;
            let verdict = json!({
                "field": field_block(&cfg),
                "triple": triple.to_json(),
                "central_char_trivial_on_f": triple.central_char_trivial_on_f(&cfg),
                "sigma_self_dual": triple.is_sigma_self_dual(&cfg),
                "gamma_condition_tame": triple.gamma_condition_tame(&cfg).map_err(|e| e.to_string())?,
                "distinguished": triple.is_distinguished(&cfg),
                "gamma_table": rows,
            });
            emit(s.format, &verdict);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| format!("unknown suite '{suite}' (expected equivalence, odd_n, self_dual, pontryagin, or appendix)"))?;
            // the suites enumerate both extension kinds themselves; here the
            // session selects the residue cardinality
            build_cfg(s)?;
            if s.f != 1 {
                return Err("verification suites run over prime residue fields (f = 1)".into());
            }
            if suite == Suite::Appendix && (s.p != 3 || s.ext != Ext::Unramified) {
                return Err(
                    "the appendix suite's oracle grids are pinned to p = 3, unramified".into(),
                );
            }
            let outcomes = run_suite(suite, &[s.p], s.seed);
            Ok(emit_outcomes(s, suite.name(), &outcomes))
        }
        Command::VerifyAppendix { q } => {
            if *q != 3 {
                return Err("the oracle grids are pinned to q = 3".into());
            }
            if s.precision != 6 && s.precision < 4 {
                return Err(format!("precision must be at least 4, got {}", s.precision));
            }
            let outcomes = run_suite(Suite::Appendix, &[*q], s.seed);
            Ok(emit_outcomes(s, Suite::Appendix.name(), &outcomes))
        }
    }
}

fn emit_outcomes(s: &SessionArgs, suite_name: &str, outcomes: &[Outcome]) -> ExitCode {
    let passed = outcomes.iter().all(|o| o.passed);
    match s.format {
        Format::Json => {
            let value = json!({
                "suite": suite_name,
                "seed": s.seed,
                "passed": passed,
                "outcomes": outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        Format::Tsv => {
            for o in outcomes {
                println!(
                    "{}\t{}\t{}\t{}",
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.cases,
                    o.detail
                );
            }
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
