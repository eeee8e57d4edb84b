use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cgw_core::kernel::{self, action};
use cgw_core::rep::{verify_relations, verify_relations_at_points};
use cgw_core::specht;
use cgw_core::subspaces::{self, critical_sets};
use cgw_core::{LValue, RationalFunction};

#[derive(Parser)]
#[command(name = "cgw", version, about = "Exact checks on the faithful BMW representation of type D_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Rank of the diagram, at least 4.
    #[arg(long, value_parser = clap::value_parser!(u32).range(4..))]
    n: u32,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Probabilistic,
}

#[derive(Subcommand)]
enum Command {
    /// Check every defining relation on the representation matrices.
    VerifyRelations {
        #[command(flatten)]
        common: Common,
        /// Defaults to symbolic for n <= 7.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
    /// Determinant of the sum of conjugates.
    DetSum {
        #[command(flatten)]
        common: Common,
        /// Defaults to symbolic for n <= 7.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
    /// Common kernel of the conjugates at l = c*r^k.
    Kernel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: LValue,
    },
    /// Explicit invariant vectors and subspaces at their critical values.
    CheckSubspaces {
        #[command(flatten)]
        common: Common,
        /// Only the families whose critical value is this one.
        #[arg(long)]
        l: Option<LValue>,
    },
    /// Degrees of irreducible modules of the type-D Hecke algebra.
    Specht {
        #[command(flatten)]
        common: Common,
        /// Only degrees strictly below this bound.
        #[arg(long)]
        max: Option<u128>,
        /// Also check that the squared degrees sum to 2^(n-1)*n!.
        #[arg(long)]
        sum_check: bool,
    },
    /// Tabulated actions of the conjugates on basis vectors, over all indices.
    Prop2Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Solution space of the conjugate relation system at a random point.
    NablaSearch {
        #[command(flatten)]
        common: Common,
        /// Drop the relations for nu_1 on v_t, t >= 3.
        #[arg(long)]
        relaxed: bool,
    },
}

/// One printed report: a text body, a JSON body and a verdict.
struct Report {
    text: String,
    json: Value,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = std::env::var("CGW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if k > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(k).build_global().ok();
        }
    }
    let json_out = match &cli.command {
        Command::VerifyRelations { common, .. }
        | Command::DetSum { common, .. }
        | Command::Kernel { common, .. }
        | Command::CheckSubspaces { common, .. }
        | Command::Specht { common, .. }
        | Command::Prop2Sweep { common }
        | Command::NablaSearch { common, .. } => common.json,
    };
    match run(cli.command) {
        Ok(report) => {
            if json_out {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> cgw_core::Result<Report> {
    match cmd {
        Command::VerifyRelations { common, mode, points } => cmd_verify_relations(&common, mode, points as usize),
        Command::DetSum { common, mode, points } => cmd_det_sum(&common, mode, points as usize),
        Command::Kernel { common, l } => cmd_kernel(&common, &l),
        Command::CheckSubspaces { common, l } => cmd_check_subspaces(&common, l.as_ref()),
        Command::Specht { common, max, sum_check } => Ok(cmd_specht(&common, max, sum_check)),
        Command::Prop2Sweep { common } => cmd_action_sweep(&common),
        Command::NablaSearch { common, relaxed } => cmd_conjugate_search(&common, relaxed),
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn default_mode(n: usize, mode: Option<Mode>) -> Mode {
    mode.unwrap_or(if n <= kernel::MAX_SYMBOLIC_RANK { Mode::Symbolic } else { Mode::Probabilistic })
}

fn cmd_verify_relations(c: &Common, mode: Option<Mode>, points: usize) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let mut text = String::new();
    match default_mode(n, mode) {
        Mode::Symbolic => {
            let report = verify_relations(n)?;
            for ch in &report.checks {
                let idx = ch.j.map_or(ch.i.to_string(), |j| format!("{} {}", ch.i, j));
                text += &format!("{:<10} {:<8} {}\n", ch.relation, idx, verdict(ch.pass));
            }
            let pass = report.all_pass();
            text += &format!("{} relations over Q(l, r): {}\n", report.checks.len(), verdict(pass));
            Ok(Report { text, json: serde_json::to_value(&report.checks).expect("serializable"), pass })
        }
        Mode::Probabilistic => {
            let samples = verify_relations_at_points(n, points, c.seed)?;
            let mut out = vec![];
            let mut pass = true;
            for (l, r, report) in &samples {
                let ok = report.all_pass();
                pass &= ok;
                text += &format!("l = {l}, r = {r}: {} relations {}\n", report.checks.len(), verdict(ok));
                out.push(json!({ "l": l.to_string(), "r": r.to_string(), "checks": report.checks }));
            }
            text += &format!("{} points: {}\n", samples.len(), verdict(pass));
            Ok(Report { text, json: Value::Array(out), pass })
        }
    }
}

fn cmd_det_sum(c: &Common, mode: Option<Mode>, points: usize) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let expected_roots: BTreeSet<LValue> = critical_sets(n)?.distinct_l().into_iter().collect();
    match default_mode(n, mode) {
        Mode::Symbolic => {
            if n > kernel::MAX_SYMBOLIC_RANK {
                return Err(cgw_core::Error::Unsupported(format!(
                    "symbolic det S({n}) is out of reach (limit n <= {}); use --mode probabilistic",
                    kernel::MAX_SYMBOLIC_RANK
                )));
            }
            let (det, factored) = kernel::det_sum_symbolic(n)?;
            let roots: BTreeSet<LValue> = factored.l_roots().into_iter().filter(|(_, e)| *e > 0).map(|(v, _)| v).collect();
            let closed_form = (n == 7).then(|| det == kernel::det_s7_closed_form());
            let pass = factored.is_complete() && roots == expected_roots && closed_form != Some(false);
            let fmt_set = |s: &BTreeSet<LValue>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>();
            let mut text = format!(
                "det S({n}) = {factored}\ncomplete factorization: {}\nl-roots: {{{}}}\nexpected: {{{}}}\n",
                factored.is_complete(),
                fmt_set(&roots).join(", "),
                fmt_set(&expected_roots).join(", "),
            );
            if let Some(eq) = closed_form {
                text += if eq { "closed form: MATCH\n" } else { "closed form: MISMATCH\n" };
            }
            text += &format!("{}\n", verdict(pass));
            let json = json!({
                "n": n,
                "factored": factored.to_string(),
                "complete": factored.is_complete(),
                "l_roots": fmt_set(&roots),
                "expected_l_roots": fmt_set(&expected_roots),
                "closed_form_match": closed_form,
                "pass": pass,
            });
            Ok(Report { text, json, pass })
        }
        Mode::Probabilistic => {
            let target: RationalFunction = if n == 7 {
                kernel::det_s7_closed_form()
            } else if n <= kernel::MAX_SYMBOLIC_RANK {
                kernel::det_sum_symbolic(n)?.0
            } else {
                return Err(cgw_core::Error::Unsupported(format!("no reference determinant for n = {n}")));
            };
            let samples = kernel::det_sum_probabilistic(n, &target, points, c.seed)?;
            let pass = samples.iter().all(|s| s.matches());
            let mut text = format!("target: {target}\n");
            let mut rows = vec![];
            for s in &samples {
                text += &format!("l = {}, r = {}: {}\n", s.l, s.r, if s.matches() { "equal" } else { "differ" });
                rows.push(json!({
                    "l": s.l.to_string(),
                    "r": s.r.to_string(),
                    "computed": s.computed.to_string(),
                    "expected": s.expected.to_string(),
                }));
            }
            text += if pass { "MATCH\n" } else { "MISMATCH\n" };
            let json = json!({ "n": n, "target": target.to_string(), "samples": rows, "match": pass });
            Ok(Report { text, json, pass })
        }
    }
}

/// Kernel dimensions computed for rank 7.
fn reference_k7(l: &LValue) -> Option<usize> {
    [("r^-21", 1), ("r^-7", 6), ("-r^-9", 7), ("r^3", 14), ("r^-1", 21), ("-r^3", 35)]
        .into_iter()
        .find(|(s, _)| s.parse::<LValue>().ok().as_ref() == Some(l))
        .map(|(_, k)| k)
}

fn cmd_kernel(c: &Common, l: &LValue) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let report = kernel::kernel_at_seeded(n, l, c.seed)?;
    let expected = if n == 7 { reference_k7(l) } else { None };
    let pass = expected.is_none_or(|k| k == report.k);
    let mut text = format!("n = {n}, l = {l}: rank {} of {}, k = {}\n", report.rank, n * (n - 1), report.k);
    if let Some(k) = expected {
        text += &format!("expected k = {k}: {}\n", verdict(pass));
    }
    for (idx, v) in report.basis.iter().enumerate() {
        let terms: Vec<String> = v.iter().map(|(lab, p)| format!("({p})*{lab}")).collect();
        text += &format!("x{} = {}\n", idx + 1, terms.join(" + "));
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["expected_k"] = json!(expected);
    Ok(Report { text, json, pass })
}

fn cmd_check_subspaces(c: &Common, only: Option<&LValue>) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let report = subspaces::check_subspaces(n, only, c.seed)?;
    let mut text = String::new();
    for f in &report.families {
        let fails = f.generic.iter().filter(|(_, h)| !h).count();
        text += &format!(
            "{:<2} l = {:<8} at critical value: {}; fails at {}/{} generic values\n",
            f.family,
            f.l.to_string(),
            verdict(f.holds),
            fails,
            f.generic.len()
        );
        for (name, ok) in &f.extras {
            text += &format!("     {name}: {}\n", verdict(*ok));
        }
    }
    for s in &report.skipped {
        text += &format!("skipped {s}\n");
    }
    if report.families.is_empty() {
        text += "no family has this critical value\n";
    }
    let pass = report.ok();
    text += &format!("{}\n", verdict(pass));
    Ok(Report { text, json: serde_json::to_value(&report).expect("serializable"), pass })
}

/// Degree lists below `n(n-1)` as computed for ranks 8 and 9.
fn reference_degrees(n: usize, bound: Option<u128>) -> Option<Vec<u128>> {
    match (n, bound) {
        (8, Some(56)) => Some(vec![1, 7, 8, 14, 20, 21, 28, 35, 42, 48]),
        (9, Some(72)) => Some(vec![1, 8, 9, 27, 28, 36, 42, 48, 56, 63, 70]),
        _ => None,
    }
}

fn cmd_specht(c: &Common, max: Option<u128>, sum_check: bool) -> Report {
    let n = c.n as usize;
    let list = specht::degree_list(n, max);
    let degrees: Vec<u128> = list.keys().copied().collect();
    let mut text = String::new();
    for (d, w) in &list {
        let names: Vec<String> = w.iter().map(|dp| dp.to_string()).collect();
        text += &format!("{d:>6}  {}\n", names.join(" "));
    }
    text += &format!("degrees: {degrees:?}\n");
    let mut pass = true;
    let mut json = json!({
        "n": n,
        "max": max.map(|b| b.to_string()),
        "degrees": list.iter().map(|(d, w)| json!({ "degree": d.to_string(), "modules": w })).collect::<Vec<_>>(),
    });
    if let Some(expected) = reference_degrees(n, max) {
        let ok = expected == degrees;
        pass &= ok;
        text += &format!("expected: {expected:?}: {}\n", verdict(ok));
        json["expected"] = json!(expected.iter().map(u128::to_string).collect::<Vec<_>>());
    }
    if n == 4 && max.is_none() {
        let reference = specht::REFERENCE_D4_DEGREES.to_vec();
        let missing: Vec<u128> = degrees.iter().copied().filter(|d| !reference.contains(d)).collect();
        text += &format!(
            "note: the published rank-4 list {reference:?} omits {missing:?}; ((1),(3)) has degree 4\n"
        );
        json["published_list"] = json!(reference.iter().map(u128::to_string).collect::<Vec<_>>());
        json["missing_from_published"] = json!(missing.iter().map(u128::to_string).collect::<Vec<_>>());
    }
    if sum_check {
        let s = specht::dim_sum_check(n);
        pass &= s.pass();
        text += &format!("sum of squared degrees = {}, 2^(n-1)*n! = {}: {}\n", s.sum, s.expected, verdict(s.pass()));
        json["sum_check"] = json!({ "sum": s.sum.to_string(), "expected": s.expected.to_string(), "pass": s.pass() });
    }
    Report { text, json, pass }
}

fn cmd_action_sweep(c: &Common) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let entries = action::sweep(n)?;
    let mut text = format!("{:<8} {:>6} {:>6} {:>9}\n", "case", "pass", "fail", "excluded");
    for e in &entries {
        text += &format!("{:<8} {:>6} {:>6} {:>9}\n", e.case.name(), e.passed, e.failed.len(), e.excluded.len());
        for t in &e.failed {
            text += &format!("    failed at (i, j, s, t) = {t:?}\n");
        }
    }
    let pass = entries.iter().all(action::SweepEntry::ok);
    text += &format!("{}\n", verdict(pass));
    let json = serde_json::to_value(&entries).expect("serializable");
    Ok(Report { text, json, pass })
}

fn cmd_conjugate_search(c: &Common, relaxed: bool) -> cgw_core::Result<Report> {
    let n = c.n as usize;
    let dim = subspaces::conjugate_system_nullity(n, c.seed, relaxed)?;
    // the relaxed system is recorded only
    let pass = relaxed || dim == 0;
    let kind = if relaxed { "relaxed system" } else { "full system" };
    let mut text = format!("n = {n}, {kind}: solution space dimension {dim}\n");
    if !relaxed {
        text += &format!("expected 0: {}\n", verdict(pass));
    }
    let json = json!({ "n": n, "seed": c.seed, "relaxed": relaxed, "dimension": dim, "pass": pass });
    Ok(Report { text, json, pass })
}
