//! Command-line surface. Exit codes: 0 success, 1 usage or parse error,
//! 2 mathematical failure (search exhausted, verification failed, or an
//! obstruction-level refusal).

use crate::expr::KnotExpr;
use crate::invariants::{
    alexander, default_angle_grid, determinant, signature_profile, RationalAngle,
};
use crate::obstructions::{cobordism_lower, reconcile};
use crate::parse::parse_expr;
use crate::report::{
    self, invariants_result, matrix_display, selection_result, surgery_result, ReportDocument,
    Results,
};
use crate::selection::{
    default_basis, select_ab, verify_selection, CgTermBound, SelectionConfig,
    SelectionVerification,
};
use crate::surgery::surgery_bound_certificate;
use crate::verify;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Parser)]
#[command(
    name = "knotcord",
    version,
    about = "Exact knot-concordance invariants from Seifert matrices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the canonical JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Genus, Alexander polynomial, determinant, and signature profile.
    Invariants {
        #[arg(long)]
        expr: String,
        /// Comma-separated angles "p/q,p/q,..."; default 1/2,1/3,1/7,2/7,3/7.
        #[arg(long)]
        angles: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reconciled lower/upper bounds for g4(K) and d(K, K^r).
    Bounds {
        #[arg(long)]
        expr: String,
        /// Angle grid; defaults to every reduced p/q with q <= 24.
        #[arg(long)]
        angles: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Signature lower bound for the cobordism distance d(K, J).
    Distance {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        expr2: String,
        #[arg(long)]
        angles: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Surger the doubled Seifert form along the zero-framed class (α, α).
    Surgery {
        #[arg(long)]
        expr: String,
        /// Comma-separated integer class on the surface of K, length 2g.
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for companion knots A, B forcing g4 of the n-fold sum.
    SelectAb {
        #[arg(long)]
        n: u32,
        /// Uniform bound C for the Casson-Gordon terms.
        #[arg(long, default_value_t = 0)]
        cg_bound: u64,
        /// Semicolon-separated basis expressions; defaults to the torus
        /// and twist family.
        #[arg(long)]
        basis: Option<String>,
        /// Cap on total basis multiplicity per companion.
        #[arg(long, default_value_t = 256)]
        max_multiplicity: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the built-in verification suite and report per-claim results.
    VerifyPaper {
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point behind `main`; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error path too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CmdError { message, code }) => {
            eprintln!("error: {message}");
            code
        }
    }
}

struct CmdError {
    message: String,
    code: i32,
}

fn usage(message: impl std::fmt::Display) -> CmdError {
    CmdError {
        message: message.to_string(),
        code: EXIT_USAGE,
    }
}

fn math(message: impl std::fmt::Display) -> CmdError {
    CmdError {
        message: message.to_string(),
        code: EXIT_MATH,
    }
}

fn dispatch(cli: Cli) -> Result<i32, CmdError> {
    match cli.cmd {
        Cmd::Invariants { expr, angles, output } => {
            let knot = parse_expr(&expr).map_err(usage)?;
            let grid = parse_angles(angles.as_deref(), default_invariant_angles)?;
            cmd_invariants(&knot, &grid, &output)
        }
        Cmd::Bounds { expr, angles, output } => {
            let knot = parse_expr(&expr).map_err(usage)?;
            let grid = parse_angles(angles.as_deref(), default_angle_grid)?;
            cmd_bounds(&knot, &grid, &output)
        }
        Cmd::Distance { expr, expr2, angles, output } => {
            let k = parse_expr(&expr).map_err(usage)?;
            let j = parse_expr(&expr2).map_err(usage)?;
            let grid = parse_angles(angles.as_deref(), default_angle_grid)?;
            cmd_distance(&k, &j, &grid, &output)
        }
        Cmd::Surgery { expr, alpha, output } => {
            let knot = parse_expr(&expr).map_err(usage)?;
            let alpha = parse_int_list(&alpha)?;
            cmd_surgery(&knot, &alpha, &output)
        }
        Cmd::SelectAb { n, cg_bound, basis, max_multiplicity, output } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let basis = match basis {
                None => default_basis(),
                Some(text) => text
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_expr(s.trim()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(usage)?,
            };
            if basis.is_empty() {
                return Err(usage("--basis must list at least one expression"));
            }
            cmd_select_ab(n, cg_bound, &basis, max_multiplicity, &output)
        }
        Cmd::VerifyPaper { output } => cmd_verify_paper(&output),
    }
}

fn default_invariant_angles() -> Vec<RationalAngle> {
    vec![
        RationalAngle::new(1, 2).unwrap(),
        RationalAngle::new(1, 3).unwrap(),
        RationalAngle::new(1, 7).unwrap(),
        RationalAngle::new(2, 7).unwrap(),
        RationalAngle::new(3, 7).unwrap(),
    ]
}

fn parse_angles(
    text: Option<&str>,
    default: fn() -> Vec<RationalAngle>,
) -> Result<Vec<RationalAngle>, CmdError> {
    match text {
        None => Ok(default()),
        Some(t) => t
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<RationalAngle>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage),
    }
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, CmdError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().map_err(|e| usage(format!("bad integer in list: {e}"))))
        .collect()
}

fn emit(doc: &ReportDocument, table: String, output: &OutputArgs) -> Result<i32, CmdError> {
    let text = if output.json { doc.to_json() } else { table };
    match &output.out {
        None => {
            print!("{text}");
            Ok(EXIT_OK)
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_invariants(
    knot: &KnotExpr,
    grid: &[RationalAngle],
    output: &OutputArgs,
) -> Result<i32, CmdError> {
    let v = knot.eval().map_err(usage)?;
    let alex = alexander(&v);
    let det = determinant(&v);
    let profile = signature_profile(&v, grid);

    let mut table = String::new();
    table.push_str(&format!("subject:     {knot}\n"));
    table.push_str(&format!("genus:       {}\n", v.genus()));
    table.push_str(&format!("alexander:   {alex}\n"));
    table.push_str(&format!("determinant: {det}\n"));
    for (x, s) in &profile.samples {
        table.push_str(&format!("sigma({x}):  {s}\n"));
    }
    for x in &profile.jump_angles {
        table.push_str(&format!("sigma({x}):  jump (Alexander root)\n"));
    }

    let doc = ReportDocument::new(
        "invariants",
        knot.to_string(),
        Results::Invariants(invariants_result(v.genus(), &alex, &det, &profile)),
    );
    emit(&doc, table, output)
}

fn cmd_bounds(knot: &KnotExpr, grid: &[RationalAngle], output: &OutputArgs) -> Result<i32, CmdError> {
    let reports = reconcile(knot, grid).map_err(math)?;
    let mut table = String::new();
    table.push_str(&format!("subject: {knot}\n"));
    for r in &reports {
        let witness = r
            .lower_witness
            .map(|x| format!(" (at {x})"))
            .unwrap_or_default();
        let tight = if r.tight { ", tight" } else { "" };
        table.push_str(&format!(
            "{}: {} <= value <= {}{}{}  [upper: {}]\n",
            r.quantity, r.lower, r.upper, witness, tight, r.upper_provenance
        ));
    }
    let doc = ReportDocument::new(
        "bounds",
        knot.to_string(),
        Results::Bounds(report::BoundsResult {
            bounds: reports.iter().map(Into::into).collect(),
        }),
    );
    emit(&doc, table, output)
}

fn cmd_distance(
    k: &KnotExpr,
    j: &KnotExpr,
    grid: &[RationalAngle],
    output: &OutputArgs,
) -> Result<i32, CmdError> {
    let vk = k.eval().map_err(usage)?;
    let vj = j.eval().map_err(usage)?;
    let (lower, witness) = cobordism_lower(&vk, &vj, grid);
    let upper = {
        // triangle inequality with surface genera as g4 upper bounds
        vk.genus() + vj.genus()
    };
    let table = format!(
        "subject: {k} | {j}\ndistance lower bound: {lower}{}\ntriangle upper bound: {upper}\n",
        witness.map(|x| format!(" (at {x})")).unwrap_or_default()
    );
    let doc = ReportDocument::new(
        "distance",
        format!("{k} | {j}"),
        Results::Distance(report::DistanceResult {
            lower: lower as u64,
            witness_angle: witness.map(|x| x.to_string()),
            upper_triangle: upper as u64,
        }),
    );
    emit(&doc, table, output)
}

fn cmd_surgery(knot: &KnotExpr, alpha: &[i64], output: &OutputArgs) -> Result<i32, CmdError> {
    let cert = surgery_bound_certificate(knot, alpha).map_err(math)?;
    let table = format!(
        "subject: {knot}\ngenus: {}\nclass (α, α): {:?}, framing {}\nsum matrix ({}x{}):\n{}\nreduced matrix ({}x{}):\n{}\nconclusion: d(K, K^r) <= {}\n",
        cert.genus,
        cert.class.vector(),
        cert.class.framing(),
        cert.sum_matrix.dim(),
        cert.sum_matrix.dim(),
        matrix_display(&cert.sum_matrix),
        cert.reduced.dim(),
        cert.reduced.dim(),
        matrix_display(&cert.reduced),
        cert.distance_upper
    );
    let doc = ReportDocument::new(
        "surgery",
        knot.to_string(),
        Results::Surgery(surgery_result(&cert)),
    );
    emit(&doc, table, output)
}

fn cmd_select_ab(
    n: u32,
    cg_bound: u64,
    basis: &[KnotExpr],
    max_multiplicity: usize,
    output: &OutputArgs,
) -> Result<i32, CmdError> {
    let config = SelectionConfig {
        max_total_multiplicity: max_multiplicity,
        ..Default::default()
    };
    let cert = select_ab(n, CgTermBound::new(cg_bound), basis, &config).map_err(math)?;
    let verified = match verify_selection(&cert) {
        SelectionVerification::Valid => true,
        SelectionVerification::Invalid { reason } => {
            return Err(math(format!("certificate failed independent re-check: {reason}")))
        }
    };
    let mut table = format!(
        "n = {n}, CG bound C = {cg_bound}\nA = {}\nB = {}\nσ_1/3(A) = {}, Σσ(A) = {}\nσ_1/3(B) = {}, Σσ(B) = {}\nchecks: {} rows per obstruction, all firing\nindependent re-check: valid\n",
        cert.a,
        cert.b,
        cert.sigma.a_third,
        cert.sigma.a_seventh_sum(),
        cert.sigma.b_third,
        cert.sigma.b_seventh_sum(),
        cert.cg_checks.len(),
    );
    for note in &cert.notes {
        table.push_str(&format!("note: {note}\n"));
    }
    let mut doc = ReportDocument::new(
        "select-ab",
        format!("n={n}"),
        Results::Selection(selection_result(&cert, verified)),
    );
    doc.assumptions = cert.notes.clone();
    emit(&doc, table, output)
}

fn cmd_verify_paper(output: &OutputArgs) -> Result<i32, CmdError> {
    let result = verify::run();
    let mut table = String::new();
    for claim in &result.claims {
        table.push_str(&format!(
            "{} {}: {}\n",
            if claim.pass { "PASS" } else { "FAIL" },
            claim.name,
            claim.detail
        ));
    }
    table.push_str(if result.all_pass { "all claims pass\n" } else { "FAILURES PRESENT\n" });
    let all_pass = result.all_pass;
    let first_failure = result.claims.iter().find(|c| !c.pass).map(|c| c.name.clone());
    let doc = ReportDocument::new("verify-paper", "builtin-suite".to_string(), Results::Verify(result));
    let code = emit(&doc, table, output)?;
    if all_pass {
        Ok(code)
    } else {
        Err(math(format!(
            "verification failed at claim `{}`",
            first_failure.unwrap_or_default()
        )))
    }
}
