//! Command-line front end: `classify`, `strata`, `bg`, `moduli`, `verify`
//! and `atlas` subcommands with json/csv/markdown emitters.
//!
//! Exit codes: 0 on success, 2 on any validation or usage error (with a
//! machine-readable error object on stdout), and 1 reserved for a `verify`
//! run whose oracle dimensions disagree with the closed form — so CI can
//! tell a math regression from a bad invocation.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::atlas::{atlas, AtlasDocument, StratumSummary};
use crate::error::{Error, Result};
use crate::gauge::{
    bg_cohomology, fixed_determinant_invariants, moduli_cohomology, quaternionic_stack_report,
    CohomologyReport, FieldSpec,
};
use crate::oracle::{verify_bg, VerificationResult};
use crate::series::TruncatedSeries;
use crate::stratification::{
    enumerate_strata, normal_bundle_orientability, stratum_contribution, ContributionRule,
    Orientability, OrientabilityVerdict,
};
use crate::topology::{
    classify_gauge_case, enumerate_real_bundles, CurveKind, CurveTopology, GaugeCase,
    QuaternionicBundleType, RealBundleType, W1Pattern,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Parser)]
#[command(
    name = "real-moduli",
    version,
    about = "Classification, stratification and cohomology for moduli of rank-two Real vector bundles over real curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Real bundle types over a curve; with --quaternionic, check
    /// the quaternionic type and report the moduli-stack equivalence
    Classify(ClassifyArgs),
    /// Unstable strata up to a codimension bound, with contribution rules
    Strata(StrataArgs),
    /// Cohomology of the classifying space of the real gauge group
    Bg(BgArgs),
    /// Cohomology of the odd-degree moduli space (add --fixed-determinant
    /// for the 2-torsion invariants of the fixed-determinant moduli space)
    Moduli(ModuliArgs),
    /// Check the closed-form series against the Koszul-Tate oracle
    Verify(BgArgs),
    /// One row per (curve, bundle type) over a genus range
    Atlas(AtlasArgs),
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    genus: u32,
    /// Curve type: 0, I or II
    #[arg(long, value_name = "0|I|II")]
    curve_type: CurveKind,
    /// Number of fixed circles
    #[arg(long, default_value_t = 0)]
    circles: u32,
}

impl CurveArgs {
    fn curve(&self) -> CurveTopology {
        CurveTopology {
            genus: self.genus,
            kind: self.curve_type,
            fixed_circles: self.circles,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, default_value_t = 2)]
    rank: u32,
    #[arg(long)]
    degree: i64,
    /// Validate a quaternionic type instead of enumerating Real types
    #[arg(long)]
    quaternionic: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct StrataArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Möbius bit per fixed circle, e.g. 101 (omit when there are none)
    #[arg(long)]
    w1: Option<String>,
    #[arg(long, default_value_t = 2)]
    rank: u32,
    #[arg(long)]
    degree: i64,
    #[arg(long, default_value_t = 8)]
    max_codim: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BgArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long)]
    w1: String,
    #[arg(long, default_value_t = 2)]
    rank: u32,
    /// Defaults to the parity of the w1 weight
    #[arg(long)]
    degree: Option<i64>,
    /// Coefficient field characteristic: 0 or an odd prime
    #[arg(long, default_value_t = 0)]
    char: u32,
    /// Truncation degree for series and oracle runs
    #[arg(long, default_value_t = 8)]
    truncate: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ModuliArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long)]
    w1: String,
    #[arg(long, default_value_t = 2)]
    rank: u32,
    #[arg(long)]
    degree: i64,
    #[arg(long, default_value_t = 0)]
    char: u32,
    #[arg(long, default_value_t = 8)]
    truncate: usize,
    /// Report the 2-torsion invariants of the fixed-determinant moduli space
    #[arg(long)]
    fixed_determinant: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct AtlasArgs {
    /// Genus or inclusive range, e.g. 2, 2..5 or 2,3,5 (guardrail 1..=12)
    #[arg(long)]
    genus: String,
    #[arg(long)]
    degree: i64,
    #[arg(long, default_value_t = 0)]
    char: u32,
    #[arg(long, default_value_t = 8)]
    truncate: usize,
    #[arg(long, default_value_t = 8)]
    max_codim: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub genus: u32,
    pub kind: CurveKind,
    pub circles: u32,
    pub rank: u32,
    pub degree: i64,
    pub w1: W1Pattern,
    pub case: Option<GaugeCase>,
    pub orientability: Option<OrientabilityVerdict>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyDocument {
    pub rows: Vec<ClassifyRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StrataDocument {
    pub genus: u32,
    pub degree: i64,
    pub max_codim: u32,
    pub orientability: OrientabilityVerdict,
    pub rows: Vec<StratumSummary>,
}

enum Doc {
    Classify(ClassifyDocument),
    Strata(StrataDocument),
    Report(CohomologyReport),
    Verification(VerificationResult),
    Atlas(AtlasDocument),
}

/// Run the CLI on the given arguments, printing the requested document to
/// stdout, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            emit_error(&Error::Usage(e.to_string()));
            return 2;
        }
    };

    let format = match &cli.command {
        Command::Classify(a) => a.format,
        Command::Strata(a) => a.format,
        Command::Bg(a) => a.format,
        Command::Moduli(a) => a.format,
        Command::Verify(a) => a.format,
        Command::Atlas(a) => a.format,
    };

    match dispatch(cli.command) {
        Ok(doc) => {
            let mismatch = matches!(&doc, Doc::Verification(v) if !v.pass);
            println!("{}", render(&doc, format));
            if mismatch {
                1
            } else {
                0
            }
        }
        Err(e) => {
            emit_error(&e);
            2
        }
    }
}

fn emit_error(e: &Error) {
    let obj = serde_json::json!({
        "error": { "code": e.code(), "message": e.to_string() }
    });
    println!("{obj}");
}

fn parse_w1(s: &str) -> Result<W1Pattern> {
    s.parse()
}

fn dispatch(command: Command) -> Result<Doc> {
    match command {
        Command::Classify(args) => {
            let curve = args.curve.curve();
            if args.quaternionic {
                let bundle = QuaternionicBundleType::new(args.rank, args.degree);
                return Ok(Doc::Report(quaternionic_stack_report(&curve, &bundle)?));
            }
            let rows = enumerate_real_bundles(&curve, args.rank, args.degree)?
                .into_iter()
                .map(|bundle| {
                    let case = classify_gauge_case(&curve, &bundle).ok();
                    let orientability = normal_bundle_orientability(&curve, &bundle).ok();
                    ClassifyRow {
                        genus: curve.genus,
                        kind: curve.kind,
                        circles: curve.fixed_circles,
                        rank: bundle.rank,
                        degree: bundle.degree,
                        w1: bundle.w1,
                        case,
                        orientability,
                    }
                })
                .collect();
            Ok(Doc::Classify(ClassifyDocument { rows }))
        }
        Command::Strata(args) => {
            let curve = args.curve.curve();
            let w1 = match args.w1 {
                Some(s) => parse_w1(&s)?,
                None => W1Pattern::empty(),
            };
            let bundle = RealBundleType::new(args.rank, args.degree, w1);
            let verdict = normal_bundle_orientability(&curve, &bundle)?;
            let rows = enumerate_strata(curve.genus, args.degree, args.max_codim)
                .into_iter()
                .map(|s| StratumSummary {
                    scss_degree: s.scss_degree,
                    real_codim: s.real_codim,
                    contribution: match stratum_contribution(&verdict, &s) {
                        Ok(ContributionRule::Vanishing) => "vanishing".to_string(),
                        Ok(ContributionRule::Gysin { shift }) => format!("gysin(shift={shift})"),
                        Err(_) => "indeterminate".to_string(),
                    },
                })
                .collect();
            Ok(Doc::Strata(StrataDocument {
                genus: curve.genus,
                degree: args.degree,
                max_codim: args.max_codim,
                orientability: verdict,
                rows,
            }))
        }
        Command::Bg(args) => {
            let (curve, bundle, field) = bg_inputs(&args)?;
            Ok(Doc::Report(bg_cohomology(
                &curve,
                &bundle,
                &field,
                args.truncate,
            )?))
        }
        Command::Verify(args) => {
            let (curve, bundle, field) = bg_inputs(&args)?;
            Ok(Doc::Verification(verify_bg(
                &curve,
                &bundle,
                &field,
                args.truncate as u32,
            )?))
        }
        Command::Moduli(args) => {
            let curve = args.curve.curve();
            let bundle = RealBundleType::new(args.rank, args.degree, parse_w1(&args.w1)?);
            let field = FieldSpec::new(args.char)?;
            let report = if args.fixed_determinant {
                fixed_determinant_invariants(&curve, &bundle, &field, args.truncate)?
            } else {
                moduli_cohomology(&curve, &bundle, &field, args.truncate)?
            };
            Ok(Doc::Report(report))
        }
        Command::Atlas(args) => {
            let genus_list = parse_genus_range(&args.genus)?;
            let field = FieldSpec::new(args.char)?;
            Ok(Doc::Atlas(atlas(
                genus_list,
                args.degree,
                &field,
                args.truncate,
                args.max_codim,
            )?))
        }
    }
}

fn bg_inputs(args: &BgArgs) -> Result<(CurveTopology, RealBundleType, FieldSpec)> {
    let curve = args.curve.curve();
    let w1 = parse_w1(&args.w1)?;
    let degree = args.degree.unwrap_or(i64::from(w1.weight() % 2));
    let bundle = RealBundleType::new(args.rank, degree, w1);
    let field = FieldSpec::new(args.char)?;
    Ok((curve, bundle, field))
}

/// Parse "3", "2..5" (inclusive) or "2,4,6".
fn parse_genus_range(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Usage(format!("cannot parse genus range {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|part| part.trim().parse().map_err(|_| bad()))
        .collect()
}

fn render(doc: &Doc, format: Format) -> String {
    match format {
        Format::Json => match doc {
            Doc::Classify(d) => serde_json::to_string_pretty(d).unwrap(),
            Doc::Strata(d) => serde_json::to_string_pretty(d).unwrap(),
            Doc::Report(d) => serde_json::to_string_pretty(d).unwrap(),
            Doc::Verification(d) => serde_json::to_string_pretty(d).unwrap(),
            Doc::Atlas(d) => serde_json::to_string_pretty(d).unwrap(),
        },
        Format::Csv => render_csv(doc),
        Format::Markdown => render_markdown(doc),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",")
}

fn series_cell(series: Option<&TruncatedSeries>) -> String {
    match series {
        None => "-".to_string(),
        Some(s) => {
            let coeffs: Vec<String> =
                s.coefficients().iter().map(|c| c.to_string()).collect();
            format!("[{}]", coeffs.join(", "))
        }
    }
}

fn verdict_cell(v: &OrientabilityVerdict) -> String {
    let base = match v.orientability {
        Orientability::AllNonorientable => "all-nonorientable",
        Orientability::AllOrientable => "all-orientable",
        Orientability::Indeterminate => "indeterminate",
    };
    match v.triggered_condition {
        Some(c) => format!("{base} ({c:?})"),
        None => base.to_string(),
    }
}

fn strata_cell(rows: &[StratumSummary]) -> String {
    rows.iter()
        .map(|s| format!("d1={} codim={} {}", s.scss_degree, s.real_codim, s.contribution))
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_csv(doc: &Doc) -> String {
    let mut lines = Vec::new();
    match doc {
        Doc::Classify(d) => {
            lines.push("genus,kind,circles,rank,degree,w1,case,orientability".to_string());
            for r in &d.rows {
                lines.push(csv_line(&[
                    r.genus.to_string(),
                    r.kind.to_string(),
                    r.circles.to_string(),
                    r.rank.to_string(),
                    r.degree.to_string(),
                    r.w1.to_string(),
                    r.case.map_or("-".into(), |c| c.to_string()),
                    r.orientability.as_ref().map_or("-".into(), verdict_cell),
                ]));
            }
        }
        Doc::Strata(d) => {
            lines.push("d1,codim,contribution".to_string());
            for s in &d.rows {
                lines.push(csv_line(&[
                    s.scss_degree.to_string(),
                    s.real_codim.to_string(),
                    s.contribution.clone(),
                ]));
            }
        }
        Doc::Report(r) => {
            lines.push(
                "subject,case,genus,degree,series,partial_up_to,dimension,is_exterior,ring_known"
                    .to_string(),
            );
            lines.push(csv_line(&[
                format!("{:?}", r.subject),
                r.case.map_or("-".into(), |c| c.to_string()),
                r.genus.to_string(),
                r.degree.to_string(),
                series_cell(r.series.as_ref()),
                r.partial_up_to.map_or("-".into(), |c| c.to_string()),
                r.dimension.map_or("-".into(), |d| d.to_string()),
                format!("{:?}", r.flags.is_exterior),
                r.flags.ring_known.to_string(),
            ]));
        }
        Doc::Verification(v) => {
            lines.push(
                "pass,first_mismatch_degree,decompositions_checked,closed_form_dims,oracle_dims"
                    .to_string(),
            );
            lines.push(csv_line(&[
                v.pass.to_string(),
                v.first_mismatch_degree.map_or("-".into(), |d| d.to_string()),
                v.decompositions_checked.to_string(),
                format!("{:?}", v.closed_form_dims),
                format!("{:?}", v.oracle_dims.iter().map(|d| d.dims()).collect::<Vec<_>>()),
            ]));
        }
        Doc::Atlas(d) => {
            lines.push(
                "genus,kind,circles,w1,rank,degree,case,orientability,quaternionic_ok,strata,bg_series,moduli_series,moduli_partial_up_to,fixed_determinant_series"
                    .to_string(),
            );
            for r in &d.rows {
                lines.push(csv_line(&[
                    r.genus.to_string(),
                    r.kind.to_string(),
                    r.circles.to_string(),
                    r.w1.to_string(),
                    r.rank.to_string(),
                    r.degree.to_string(),
                    r.case.map_or("-".into(), |c| c.to_string()),
                    verdict_cell(&r.orientability),
                    r.quaternionic_ok.to_string(),
                    strata_cell(&r.strata),
                    series_cell(r.bg_series.as_ref()),
                    series_cell(r.moduli_series.as_ref()),
                    r.moduli_partial_up_to.map_or("-".into(), |c| c.to_string()),
                    series_cell(r.fixed_determinant_series.as_ref()),
                ]));
            }
        }
    }
    lines.join("\n")
}

fn markdown_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

fn render_markdown(doc: &Doc) -> String {
    match doc {
        Doc::Classify(d) => markdown_table(
            &["genus", "kind", "circles", "rank", "degree", "w1", "case", "orientability"],
            d.rows
                .iter()
                .map(|r| {
                    vec![
                        r.genus.to_string(),
                        r.kind.to_string(),
                        r.circles.to_string(),
                        r.rank.to_string(),
                        r.degree.to_string(),
                        if r.w1.is_empty() { "(none)".into() } else { r.w1.to_string() },
                        r.case.map_or("-".into(), |c| c.to_string()),
                        r.orientability.as_ref().map_or("-".into(), verdict_cell),
                    ]
                })
                .collect(),
        ),
        Doc::Strata(d) => {
            let table = markdown_table(
                &["d1", "codim", "contribution"],
                d.rows
                    .iter()
                    .map(|s| {
                        vec![
                            s.scss_degree.to_string(),
                            s.real_codim.to_string(),
                            s.contribution.clone(),
                        ]
                    })
                    .collect(),
            );
            format!(
                "Strata for genus {}, degree {}, codimension ≤ {} ({})\n\n{}",
                d.genus,
                d.degree,
                d.max_codim,
                verdict_cell(&d.orientability),
                table
            )
        }
        Doc::Report(r) => r.to_markdown(),
        Doc::Verification(v) => {
            let status = if v.pass { "PASS" } else { "FAIL" };
            let mut out = format!(
                "verification: {status} ({} decomposition(s))\n\nclosed form: {:?}\n",
                v.decompositions_checked, v.closed_form_dims
            );
            for (i, dims) in v.oracle_dims.iter().enumerate() {
                out.push_str(&format!("oracle[{}]:   {:?}\n", i, dims.dims()));
            }
            if let Some(degree) = v.first_mismatch_degree {
                out.push_str(&format!("first mismatch at degree {degree}\n"));
            }
            out
        }
        Doc::Atlas(d) => markdown_table(
            &[
                "genus", "kind", "a", "w1", "case", "orientability", "quaternionic",
                "bg series", "moduli series", "partial", "fixed-det series",
            ],
            d.rows
                .iter()
                .map(|r| {
                    vec![
                        r.genus.to_string(),
                        r.kind.to_string(),
                        r.circles.to_string(),
                        if r.w1.is_empty() { "(none)".into() } else { r.w1.to_string() },
                        r.case.map_or("-".into(), |c| c.to_string()),
                        verdict_cell(&r.orientability),
                        r.quaternionic_ok.to_string(),
                        series_cell(r.bg_series.as_ref()),
                        series_cell(r.moduli_series.as_ref()),
                        r.moduli_partial_up_to.map_or("-".into(), |c| c.to_string()),
                        series_cell(r.fixed_determinant_series.as_ref()),
                    ]
                })
                .collect(),
        ),
    }
}
