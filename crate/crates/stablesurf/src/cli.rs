//! Command-line interface.
//!
//! All numeric output is exact `p/q` (integers without the `/1`); the
//! `--decimal` flag appends a rounded rendering, clearly marked
//! approximate. Exit codes: 0 on success, 1 on computation or claim
//! failures (with an exact witness), 2 on usage errors.

use crate::rat::{fmt_decimal, Rat};
use crate::verify::{self, VerifyConfig};
use crate::{catalog, cycles, discrepancy, formulas, graph, lattice, volume};
use clap::{Parser, Subcommand};
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "stablesurf",
    about = "Exact-rational calculator for surface singularities and volumes of stable surfaces",
    version
)]
struct Cli {
    /// Append a rounded decimal rendering with this many digits to exact values
    #[arg(long, global = true, value_name = "DIGITS")]
    decimal: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the singularity of a dual graph file
    Classify { graph: String },
    /// Compute the numerical fundamental cycle of a dual graph file
    Fundcycle { graph: String },
    /// Solve for the discrepancies of a dual graph file
    Discrepancy { graph: String },
    /// Compute the volume of a contraction inside a lattice file
    Volume {
        /// Lattice file (JSON)
        #[arg(long)]
        lattice: String,
        /// Comma-separated labels of the curves to contract
        #[arg(long)]
        contract: String,
    },
    /// Evaluate the bound formulas
    Formulas {
        /// One of: V, W, minima, cases
        family: String,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        l: i64,
        #[arg(long, default_value_t = 1)]
        l1: i64,
        #[arg(long, default_value_t = 1)]
        l2: i64,
    },
    /// Tabulate the minimal-volume table for n = 1..n_max
    Tabulate {
        #[arg(long, value_name = "K")]
        n_max: i64,
        /// Write the table as CSV to this path instead of stdout
        #[arg(long)]
        csv: Option<String>,
    },
    /// Build a catalog scenario and compute its volume
    Example {
        name: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long = "N")]
        big_n: Option<i64>,
        /// Write the scenario's lattice file here
        #[arg(long)]
        emit: Option<String>,
    },
    /// Run the complete verification suite
    VerifyPaper {
        #[arg(long, default_value_t = 100)]
        n_max: i64,
    },
}

/// Entry point used by the binary and by tests.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout with success
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    let decimal = cli.decimal;
    match cli.command {
        Command::Classify { graph } => classify_cmd(&graph),
        Command::Fundcycle { graph } => fundcycle_cmd(&graph),
        Command::Discrepancy { graph } => discrepancy_cmd(&graph, decimal),
        Command::Volume { lattice, contract } => volume_cmd(&lattice, &contract, decimal),
        Command::Formulas {
            family,
            n,
            l,
            l1,
            l2,
        } => formulas_cmd(&family, n, l, l1, l2, decimal),
        Command::Tabulate { n_max, csv } => tabulate_cmd(n_max, csv.as_deref()),
        Command::Example {
            name,
            n,
            d,
            big_n,
            emit,
        } => example_cmd(&name, n, d, big_n, emit.as_deref(), decimal),
        Command::VerifyPaper { n_max } => Ok(verify_cmd(n_max)),
    }
}

fn fmt_val(r: &Rat, decimal: Option<u32>) -> String {
    match decimal {
        Some(digits) => format!("{r} ({})", fmt_decimal(r, digits)),
        None => r.to_string(),
    }
}

fn read_graph(path: &str) -> Result<graph::DualGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    graph::parse(&text).map_err(|e| e.to_string())
}

fn classify_cmd(path: &str) -> Result<i32, String> {
    let g = read_graph(path)?;
    let ty = crate::classify::classify(&g).map_err(|e| e.to_string())?;
    println!("classification: {ty}");
    println!(
        "log canonical type: {}; log terminal: {}",
        if ty.is_lc_type() { "yes" } else { "no" },
        if ty.is_log_terminal() { "yes" } else { "no" }
    );
    Ok(0)
}

fn fundcycle_cmd(path: &str) -> Result<i32, String> {
    let g = read_graph(path)?;
    let z = cycles::fundamental_cycle(&g).map_err(|e| e.to_string())?;
    for (id, c) in z.ids().iter().zip(z.coefficients()) {
        println!("{id}: {c}");
    }
    let sq = z.self_intersection(&g);
    println!("Z^2 = {sq}");
    println!("degree = {}", cycles::degree(&g, &z));
    Ok(0)
}

fn discrepancy_cmd(path: &str, decimal: Option<u32>) -> Result<i32, String> {
    let g = read_graph(path)?;
    let p = discrepancy::discrepancies(&g).map_err(|e| e.to_string())?;
    for (id, a) in p.ids().iter().zip(p.coefficients()) {
        println!("{id}: {}", fmt_val(a, decimal));
    }
    for (idx, verdict) in p.components() {
        let labels: Vec<&str> = idx.iter().map(|&i| p.ids()[i].as_str()).collect();
        println!("component {{{}}}: {verdict}", labels.join(", "));
    }
    println!("overall: {}", p.overall());
    Ok(0)
}

fn volume_cmd(path: &str, contract: &str, decimal: Option<u32>) -> Result<i32, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let lat = lattice::parse(&text).map_err(|e| e.to_string())?;
    let contracted: Vec<String> = contract
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let spec = volume::ContractionSpec {
        lattice: lat,
        contracted,
    };
    let out = volume::volume(&spec).map_err(|e| e.to_string())?;
    println!("ambient K^2 = {}", fmt_val(&out.ambient_k_squared, decimal));
    for (label, a) in &out.coefficients {
        println!("a_{label} = {}", fmt_val(a, decimal));
    }
    for (labels, verdict) in &out.components {
        println!("component {{{}}}: {verdict}", labels.join(", "));
    }
    println!("volume = {}", fmt_val(&out.volume, decimal));
    if out.not_lc {
        println!("warning: NOT log canonical (some coefficient below -1)");
    }
    let report = volume::stability_necessary_checks(&spec, &out).map_err(|e| e.to_string())?;
    println!("{}:", report.headline);
    for c in &report.checks {
        println!(
            "  [{}] {}",
            if c.pass { "pass" } else { "FAIL" },
            c.description
        );
    }
    if !report.all_pass() || out.not_lc {
        return Ok(1);
    }
    Ok(0)
}

fn formulas_cmd(
    family: &str,
    n: i64,
    l: i64,
    l1: i64,
    l2: i64,
    decimal: Option<u32>,
) -> Result<i32, String> {
    match family {
        "V" | "v" => {
            if n < 1 || l < 1 {
                return Err("need n >= 1 and l >= 1".into());
            }
            println!("V({n}, {l}) = {}", fmt_val(&formulas::v(n, l), decimal));
            if l == 1 {
                println!("V({n}, 1) closed form = {}", formulas::v_n1_closed(n));
            }
            println!(
                "Delta V({n}, {l}) = {}",
                fmt_val(
                    &formulas::delta_v(n, l).map_err(|e| e.to_string())?,
                    decimal
                )
            );
            Ok(0)
        }
        "W" | "w" => {
            if n < 4 || l < 1 {
                return Err("need n >= 4 and l >= 1".into());
            }
            println!("W({n}, {l}) = {}", fmt_val(&formulas::w(n, l), decimal));
            println!(
                "Delta W({n}, {l}) = {}",
                fmt_val(
                    &formulas::delta_w(n, l).map_err(|e| e.to_string())?,
                    decimal
                )
            );
            Ok(0)
        }
        "minima" => {
            if n < 1 {
                return Err("need n >= 1".into());
            }
            let report = formulas::minima_and_gap(n).map_err(|e| e.to_string())?;
            println!("w1 = {}", fmt_val(&formulas::w1(n), decimal));
            println!("w2 = {}", fmt_val(&formulas::w2(n), decimal));
            println!("gap = {}", fmt_val(&report.value, decimal));
            for c in &report.claims {
                println!(
                    "  [{}] {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.description
                );
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        "cases" => {
            if n < 4 {
                return Err("need n >= 4".into());
            }
            let report = formulas::case_analysis_checks(n, l1, l2).map_err(|e| e.to_string())?;
            for c in &report.claims {
                println!(
                    "  [{}] {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.description
                );
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        other => Err(format!(
            "unknown formula family {other:?} (use V, W, minima, cases)"
        )),
    }
}

fn tabulate_cmd(n_max: i64, csv: Option<&str>) -> Result<i32, String> {
    if n_max < 1 {
        return Err("need n_max >= 1".into());
    }
    let mut lines = vec![
        "n,w1,w2,gap_branch_1,gap_branch_2,gap,V_n_1,w1_no_pencil,w2_no_pencil,gap_no_pencil"
            .to_string(),
    ];
    for n in 1..=n_max {
        let report = formulas::minima_and_gap(n).map_err(|e| e.to_string())?;
        if !report.all_pass() {
            return Err(format!("gap identity failed at n = {n}"));
        }
        let b1 = crate::rat::rat(n * n, (n + 2) * (2 * n + 3));
        let b2 = crate::rat::rat((n - 1) * (n + 6), 3 * (n + 2) * (n + 3));
        lines.push(format!(
            "{n},{},{},{b1},{b2},{},{},{},{},1/3",
            formulas::w1(n),
            formulas::w2(n),
            report.value,
            formulas::v_n1_closed(n),
            2 * (n - 1),
            crate::rat::int(2 * (n - 1)) + crate::rat::rat(1, 3),
        ));
    }
    let text = lines.join("\n") + "\n";
    match csv {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn example_cmd(
    name: &str,
    n: Option<i64>,
    d: Option<i64>,
    big_n: Option<i64>,
    emit: Option<&str>,
    decimal: Option<u32>,
) -> Result<i32, String> {
    let mut params = BTreeMap::new();
    if let Some(n) = n {
        params.insert("n".to_string(), n);
    }
    if let Some(d) = d {
        params.insert("d".to_string(), d);
    }
    if let Some(v) = big_n {
        params.insert("N".to_string(), v);
    }
    let sc = catalog::build(name, &params).map_err(|e| e.to_string())?;
    println!("scenario {}", sc.name);
    for (k, v) in &sc.parameters {
        println!("  {k} = {v}");
    }
    let out = volume::volume(&sc.spec).map_err(|e| e.to_string())?;
    println!("contracted: {}", sc.spec.contracted.join(", "));
    for (label, a) in &out.coefficients {
        println!("a_{label} = {}", fmt_val(a, decimal));
    }
    println!("p_g = {}", sc.expected_pg);
    println!("volume = {}", fmt_val(&out.volume, decimal));
    if out.volume != sc.expected_volume {
        return Err(format!(
            "computed volume {} differs from the expected {}",
            out.volume, sc.expected_volume
        ));
    }
    if let Some(path) = emit {
        std::fs::write(path, lattice::serialize(&sc.spec.lattice))
            .map_err(|e| format!("{path}: {e}"))?;
        println!("lattice written to {path}");
    }
    Ok(0)
}

fn verify_cmd(n_max: i64) -> i32 {
    let outcome = verify::run(VerifyConfig { n_max });
    for c in &outcome.checks {
        println!(
            "[{}] {} — {} ({})",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.description,
            c.witness
        );
    }
    let failed = outcome.checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        println!("all {} checks passed", outcome.checks.len());
    } else {
        println!("{failed} of {} checks FAILED", outcome.checks.len());
    }
    outcome.exit_code()
}
