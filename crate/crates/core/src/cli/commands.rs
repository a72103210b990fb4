use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::cache::{CacheStatus, TableCache};
use super::manifest::{sha256_hex, RunManifest};
use super::{AmArgs, Cli, Command, GroupCmd, HypergroupCmd, Report, VerifyCmd};
use crate::amenability::{
    am_constant, diagonal, hs_lower_bound, product_multiplicativity_check, rider_gap_check,
    verify_diagonal_with, RIDER_GAP,
};
use crate::central::ClassAlgebra;
use crate::chartable::{CharTableOptions, CharacterTable, DEFAULT_RESIDUAL_TOL};
use crate::error::{Error, Result};
use crate::group::spec::GroupDocument;
use crate::group::{conjugacy_structure, quotient_group, FiniteGroup, GroupOptions};
use crate::hypergroup::{run_experiment, ExperimentSpec, EXPERIMENT_CSV_HEADER, EXPERIMENT_CSV_VERSION};
use crate::tz2::{verify_finabexample_with, Q};
use crate::zoo;

pub const AMCONST_CSV_VERSION: u32 = 1;
pub const AMCONST_CSV_HEADER: [&str; 7] =
    ["label", "order", "classes", "am", "am_rational", "hs_bound", "checks"];

struct Ctx {
    cache: TableCache,
    tol: f64,
    group_options: GroupOptions,
    json: bool,
}

impl Ctx {
    fn table_options(&self) -> CharTableOptions {
        CharTableOptions {
            residual_tol: self.tol,
            ..Default::default()
        }
    }

    fn config(&self) -> serde_json::Value {
        json!({
            "tol": self.tol,
            "max_order": self.group_options.max_order,
            "json": self.json,
        })
    }
}

pub(crate) fn dispatch(cli: &Cli, stderr: &mut dyn Write) -> Result<Report> {
    let g = &cli.global;
    let mut group_options = GroupOptions::default();
    if let Some(m) = g.max_order {
        group_options.max_order = m;
    }
    let ctx = Ctx {
        cache: TableCache::resolve(g.cache_dir.as_deref()),
        tol: g.tol.unwrap_or(DEFAULT_RESIDUAL_TOL),
        group_options,
        json: g.json,
    };
    if !(ctx.tol > 0.0) {
        return Err(Error::validation("--tol must be positive"));
    }
    match &cli.command {
        Command::Group { cmd } => match cmd {
            GroupCmd::Info { spec } => group_info(&ctx, spec),
            GroupCmd::Chartable { spec, canonical } => chartable(&ctx, spec, *canonical, stderr),
            GroupCmd::Amconst(a) => amconst(&ctx, a, stderr),
        },
        Command::Amconst(a) => amconst(&ctx, a, stderr),
        Command::Hypergroup {
            cmd: HypergroupCmd::Run { spec },
        } => hypergroup(&ctx, spec, g.tol, stderr),
        Command::Verify {
            cmd: VerifyCmd::Tz2 { n, mutate },
        } => tz2(&ctx, *n, *mutate),
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_group(ctx: &Ctx, path: &Path) -> Result<(FiniteGroup, String)> {
    let text = read_input(path)?;
    let doc = GroupDocument::parse(&text)?;
    let mut group = doc.build(&ctx.group_options)?;
    if doc.group.label().is_none() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        group = group.with_label(stem);
    }
    Ok((group, sha256_hex(text.as_bytes())))
}

fn finish(command: &str, input_hash: String, ctx: &Ctx, output: Vec<u8>, passed: bool, summary: serde_json::Value) -> Report {
    let manifest = RunManifest::new(command, input_hash, ctx.config(), &output, summary);
    Report {
        output,
        passed,
        manifest,
    }
}

fn group_info(ctx: &Ctx, path: &Path) -> Result<Report> {
    let (g, input_hash) = load_group(ctx, path)?;
    let cs = conjugacy_structure(&g);
    let info = json!({
        "label": g.label(),
        "order": g.order(),
        "classes": cs.len(),
        "center_size": g.center().len(),
        "abelian": g.is_abelian(),
        "class_sizes": cs.sizes(),
        "content_hash": g.content_hash(),
    });
    let out = if ctx.json {
        let mut v = serde_json::to_vec_pretty(&info)?;
        v.push(b'\n');
        v
    } else {
        format!(
            "label: {}\norder {}, {} classes, center size {}\nabelian: {}\nclass sizes: {}\ncontent hash: {}\n",
            g.label(),
            g.order(),
            cs.len(),
            g.center().len(),
            g.is_abelian(),
            cs.sizes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
            g.content_hash()
        )
        .into_bytes()
    };
    Ok(finish("group info", input_hash, ctx, out, true, info))
}

fn chartable(ctx: &Ctx, path: &Path, canonical: bool, stderr: &mut dyn Write) -> Result<Report> {
    let (g, input_hash) = load_group(ctx, path)?;
    let cs = conjugacy_structure(&g);
    let (t, status) = ctx.cache.table(&g, &cs, &ctx.table_options())?;
    let _ = writeln!(
        stderr,
        "{}: {} classes, max residual {:.3e}, cache {}",
        g.label(),
        t.num_classes(),
        t.report().max_residual(),
        if status == CacheStatus::Hit { "hit" } else { "miss" }
    );
    let mut out = if canonical {
        serde_json::to_vec(&t.canonical_values())?
    } else {
        serde_json::to_vec_pretty(&t.to_json())?
    };
    out.push(b'\n');
    let summary = json!({ "classes": t.num_classes(), "max_residual": t.report().max_residual() });
    let passed = t.report().max_residual() <= ctx.tol;
    Ok(finish("group chartable", input_hash, ctx, out, passed, summary))
}

/// One line of `amconst` output.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AmRow {
    pub label: String,
    pub order: usize,
    pub classes: usize,
    pub am: f64,
    pub am_rational: Option<String>,
    pub hs_bound: f64,
    /// `(name, passed)` for each check run on this group.
    pub checks: Vec<(String, bool)>,
}

impl AmRow {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn checks_field(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect();
        if failed.is_empty() {
            "pass".into()
        } else {
            format!("fail:{}", failed.join("+"))
        }
    }

    fn csv_record(&self) -> Vec<String> {
        vec![
            self.label.clone(),
            self.order.to_string(),
            self.classes.to_string(),
            format!("{:.12}", self.am),
            self.am_rational.clone().unwrap_or_default(),
            format!("{:.12}", self.hs_bound),
            self.checks_field(),
        ]
    }
}

/// AM, HS bound and the per-group checks: table certification, diagonal
/// laws, the Rider gap (or `AM = 1` when abelian), and `1 < HS ≤ AM` (HS = 1
/// when abelian).
pub fn am_row(g: &FiniteGroup, t: &CharacterTable, tol: f64) -> Result<AmRow> {
    let cs = conjugacy_structure(g);
    let am = am_constant(t);
    let hs = hs_lower_bound(t);
    let dc = diagonal(t);
    let diag = verify_diagonal_with(&ClassAlgebra::new(g, &cs), t, &dc, tol)?;
    let rider = rider_gap_check(t);
    let hs_ok = hs <= am.value + 1e-9 && if t.is_abelian() { (hs - 1.0).abs() <= 1e-9 } else { hs > 1.0 };
    Ok(AmRow {
        label: g.label().to_string(),
        order: g.order(),
        classes: t.num_classes(),
        am: am.value,
        am_rational: am.snapped_string(),
        hs_bound: hs,
        checks: vec![
            ("table".into(), t.report().max_residual() <= tol),
            ("diagonal".into(), diag.passed),
            ("rider".into(), rider.passed),
            ("hs".into(), hs_ok),
        ],
    })
}

/// A cross-group check from the `--zoo` run.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRow {
    pub check: String,
    pub subject: String,
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
}

fn amconst(ctx: &Ctx, args: &AmArgs, stderr: &mut dyn Write) -> Result<Report> {
    let opts = ctx.table_options();
    let (rows, checks, input_hash) = if let Some(spec) = &args.spec {
        let (g, h) = load_group(ctx, spec)?;
        let cs = conjugacy_structure(&g);
        let (t, _) = ctx.cache.table(&g, &cs, &opts)?;
        (vec![am_row(&g, &t, ctx.tol)?], Vec::new(), h)
    } else {
        let groups = zoo::all()?;
        let rows = groups
            .par_iter()
            .map(|(_, g)| {
                let cs = conjugacy_structure(g);
                let (t, _) = ctx.cache.table(g, &cs, &opts)?;
                am_row(g, &t, ctx.tol)
            })
            .collect::<Result<Vec<_>>>()?;
        let hash = sha256_hex(
            zoo::FIXTURES
                .iter()
                .map(|(n, j)| format!("{n}\n{j}"))
                .collect::<String>()
                .as_bytes(),
        );
        (rows, zoo_cross_checks(ctx)?, hash)
    };
    for c in &checks {
        let _ = writeln!(
            stderr,
            "{} {}: {:.12} vs {:.12} {}",
            c.check,
            c.subject,
            c.lhs,
            c.rhs,
            if c.passed { "pass" } else { "FAIL" }
        );
    }
    let passed = rows.iter().all(AmRow::passed) && checks.iter().all(|c| c.passed);
    let out = if ctx.json {
        let mut v = serde_json::to_vec_pretty(&json!({
            "version": AMCONST_CSV_VERSION,
            "rows": rows,
            "cross_checks": checks,
        }))?;
        v.push(b'\n');
        v
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(AMCONST_CSV_HEADER).map_err(csv_err)?;
        for r in &rows {
            w.write_record(r.csv_record()).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| Error::Parse(e.to_string()))?
    };
    let summary = json!({
        "csv_version": AMCONST_CSV_VERSION,
        "rows": rows.len(),
        "cross_checks": checks.len(),
        "passed": passed,
    });
    Ok(finish("amconst", input_hash, ctx, out, passed, summary))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

fn am_of(ctx: &Ctx, g: &FiniteGroup) -> Result<(f64, CharacterTable)> {
    let cs = conjugacy_structure(g);
    let (t, _) = ctx.cache.table(g, &cs, &ctx.table_options())?;
    Ok((am_constant(&t).value, t))
}

fn zoo_cross_checks(ctx: &Ctx) -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for (a, b) in [("s3", "s3"), ("s3", "d4"), ("s3", "z4")] {
        let (ga, gb) = (zoo::load(a)?, zoo::load(b)?);
        let (_, ta) = am_of(ctx, &ga)?;
        let (_, tb) = am_of(ctx, &gb)?;
        let tensor = product_multiplicativity_check(&ta, &tb);
        // Also on the actual product group, whose table is computed from scratch.
        let (am_prod, _) = am_of(ctx, &FiniteGroup::direct_product_with(&ga, &gb, &ctx.group_options)?)?;
        let expect = tensor.am_left * tensor.am_right;
        out.push(CheckRow {
            check: "product".into(),
            subject: format!("{} x {}", ga.label(), gb.label()),
            lhs: am_prod,
            rhs: expect,
            passed: tensor.passed && (am_prod - expect).abs() / am_prod <= 1e-8,
        });
    }
    let center = |g: &FiniteGroup| g.center();
    for (name, normal) in [
        ("d4", center as fn(&FiniteGroup) -> Vec<usize>),
        ("d6", center),
        ("s3xs3", |g: &FiniteGroup| g.product_factors().map(|(_, r)| r).unwrap_or_default()),
    ] {
        let g = zoo::load(name)?;
        let n = normal(&g);
        let q = quotient_group(&g, &n)?;
        let (am_g, _) = am_of(ctx, &g)?;
        let (am_q, _) = am_of(ctx, &q.group)?;
        out.push(CheckRow {
            check: "quotient".into(),
            subject: format!("{} / N (|N| = {})", g.label(), n.len()),
            lhs: am_g,
            rhs: am_q,
            passed: am_g >= am_q - 1e-9,
        });
    }
    let s3 = zoo::load("s3")?;
    let mut power = s3.clone();
    for n in 1..=3 {
        if n > 1 {
            power = FiniteGroup::direct_product_with(&power, &s3, &ctx.group_options)?;
        }
        let (am, _) = am_of(ctx, &power)?;
        let expect = (7.0f64 / 3.0).powi(n);
        out.push(CheckRow {
            check: "growth".into(),
            subject: format!("S3^{n}"),
            lhs: am,
            rhs: expect,
            passed: (am - expect).abs() / expect <= 1e-8 && am >= (1.0 + RIDER_GAP).powi(n),
        });
    }
    Ok(out)
}

fn hypergroup(ctx: &Ctx, path: &Path, tol: Option<f64>, stderr: &mut dyn Write) -> Result<Report> {
    let text = read_input(path)?;
    let mut spec = ExperimentSpec::parse(&text)?;
    if let Some(t) = tol {
        spec.quadrature.tolerance = t;
        spec.quadrature.validate()?;
    }
    let rows = run_experiment(&spec)?;
    for r in rows.iter().filter(|r| !(r.diagonal.converged && r.bai.converged)) {
        let _ = writeln!(
            stderr,
            "warning: n = {} not converged (diagonal error {:.3e}, kernel error {:.3e})",
            r.n, r.diagonal.error_estimate, r.bai.error_estimate
        );
    }
    let passed = rows.iter().all(|r| r.bound_ok != Some(false));
    let out = if ctx.json {
        let mut v = serde_json::to_vec_pretty(&json!({ "version": EXPERIMENT_CSV_VERSION, "spec": spec, "rows": rows }))?;
        v.push(b'\n');
        v
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(EXPERIMENT_CSV_HEADER).map_err(csv_err)?;
        for r in &rows {
            w.write_record(r.csv_record()).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| Error::Parse(e.to_string()))?
    };
    let summary = json!({ "csv_version": EXPERIMENT_CSV_VERSION, "rows": rows.len(), "passed": passed });
    let config = json!({ "quadrature": spec.quadrature });
    let manifest = RunManifest::new("hypergroup run", sha256_hex(text.as_bytes()), config, &out, summary);
    Ok(Report {
        output: out,
        passed,
        manifest,
    })
}

fn tz2(ctx: &Ctx, n: u32, mutate: bool) -> Result<Report> {
    if n == 0 {
        return Err(Error::validation("--n must be at least 1"));
    }
    let coef = if mutate { Q::from_integer(-1) } else { Q::from_integer(-2) };
    let report = verify_finabexample_with(n, coef);
    let out = if ctx.json {
        let mut v = serde_json::to_vec_pretty(&report)?;
        v.push(b'\n');
        v
    } else {
        let mut s = format!(
            "T x| Z2 central measure, N = {n}, atom coefficient {}: {} pairs, {} failures\n",
            report.atom_coefficient,
            report.pairs,
            report.failures.len()
        );
        for f in &report.failures {
            s.push_str(&format!("fail ({}, {}): got {}, expected {}\n", f.pi, f.rho, f.got, f.expected));
        }
        s.push_str(if report.passed { "pass\n" } else { "FAIL\n" });
        s.into_bytes()
    };
    let summary = json!({ "pairs": report.pairs, "failures": report.failures.len() });
    let input = sha256_hex(format!("tz2 n={n} coef={coef}").as_bytes());
    Ok(finish("verify tz2", input, ctx, out, report.passed, summary))
}
