use std::path::{Path, PathBuf};

use tempfile::TempDir;
use zamen::cli::manifest::RunManifest;
use zamen::cli::{manifest_path, run};

fn fixture(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn zamen(cache: &Path, args: &[&str]) -> Out {
    let mut argv = vec!["zamen".to_string(), "--cache-dir".into(), cache.to_string_lossy().into_owned()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn cache() -> TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn group_info_text_and_json() {
    let c = cache();
    let o = zamen(c.path(), &["group", "info", &fixture("groups/s3.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("order 6, 3 classes, center size 1"));
    assert!(o.stdout.contains("abelian: false"));

    let o = zamen(c.path(), &["--json", "group", "info", &fixture("groups/z6.json")]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["abelian"], true);
    assert_eq!(v["classes"], 6);
}

#[test]
fn bad_input_exits_2() {
    let c = cache();
    let bad = c.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = zamen(c.path(), &["group", "info", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error:"));

    let o = zamen(c.path(), &["group", "info", "/nonexistent/group.json"]);
    assert_eq!(o.code, 2);

    let o = zamen(c.path(), &["frobnicate"]);
    assert_eq!(o.code, 2);

    let o = zamen(c.path(), &["--jobs", "0", "amconst", &fixture("groups/s3.json")]);
    assert_eq!(o.code, 2);

    let o = zamen(c.path(), &["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("Usage"));
}

#[test]
fn max_order_is_enforced() {
    let c = cache();
    let o = zamen(c.path(), &["--max-order", "100", "group", "info", &fixture("groups/s5.json")]);
    assert_eq!(o.code, 2, "{}", o.stdout);
}

#[test]
fn chartable_cache_hit_is_byte_identical() {
    let c = cache();
    let spec = fixture("groups/d6.json");
    let first = zamen(c.path(), &["group", "chartable", &spec]);
    assert_eq!(first.code, 0);
    assert!(first.stderr.contains("cache miss"));
    let second = zamen(c.path(), &["group", "chartable", &spec]);
    assert!(second.stderr.contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);
    let files: Vec<PathBuf> = std::fs::read_dir(c.path().join("chartable"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let c = cache();
    let spec = fixture("groups/s3.json");
    let first = zamen(c.path(), &["group", "chartable", &spec]);
    let entry = std::fs::read_dir(c.path().join("chartable")).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{}").unwrap();
    let again = zamen(c.path(), &["group", "chartable", &spec]);
    assert_eq!(again.code, 0);
    assert!(again.stderr.contains("cache miss"));
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn d4_and_q8_canonical_tables_match() {
    let c = cache();
    let d4 = zamen(c.path(), &["group", "chartable", "--canonical", &fixture("groups/d4.json")]);
    let q8 = zamen(c.path(), &["group", "chartable", "--canonical", &fixture("groups/q8.json")]);
    assert_eq!(d4.code, 0);
    assert_eq!(d4.stdout, q8.stdout);
    let full_d4 = zamen(c.path(), &["group", "chartable", &fixture("groups/d4.json")]);
    let full_q8 = zamen(c.path(), &["group", "chartable", &fixture("groups/q8.json")]);
    assert_ne!(full_d4.stdout, full_q8.stdout, "group hashes differ");
}

#[test]
fn amconst_single_groups() {
    let c = cache();
    let o = zamen(c.path(), &["amconst", &fixture("groups/s3.json")]);
    assert_eq!(o.code, 0);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("label,order,classes,am,am_rational,hs_bound,checks"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "S3");
    assert_eq!(row[4], "7/3");
    assert_eq!(row[6], "pass");

    let o = zamen(c.path(), &["group", "amconst", &fixture("groups/z12.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.lines().nth(1).unwrap().contains(",1,"));

    let o = zamen(c.path(), &["--json", "amconst", &fixture("groups/q8.json")]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v.to_string().contains("7/4"));
}

#[test]
fn amconst_zoo_passes_and_is_job_count_independent() {
    let c = cache();
    let one = zamen(c.path(), &["--jobs", "1", "amconst", "--zoo"]);
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(one.stdout.lines().count(), 1 + zamen::zoo::FIXTURES.len());
    assert!(one.stdout.lines().skip(1).all(|l| l.ends_with(",pass")));
    assert!(one.stderr.contains("product S3 x S3"));
    assert!(!one.stderr.contains(" fail"));
    let four = zamen(c.path(), &["--jobs", "4", "amconst", "--zoo"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_writes_file_and_manifest() {
    let c = cache();
    let out = c.path().join("s4.csv");
    let args = ["--out", out.to_str().unwrap(), "amconst", &fixture("groups/s4.json")];
    let o = zamen(c.path(), &args);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let first = RunManifest::read(&manifest_path(&out)).unwrap();
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(first.result_hash, zamen::cli::manifest::sha256_hex(&bytes));
    assert!(String::from_utf8(bytes).unwrap().contains("85/12"));

    zamen(c.path(), &args);
    let second = RunManifest::read(&manifest_path(&out)).unwrap();
    assert_eq!(first.result_hash, second.result_hash);
    assert_eq!(first.input_hash, second.input_hash);
    assert_eq!(first.config, second.config);
}

#[test]
fn hypergroup_run_emits_csv() {
    let c = cache();
    let spec = c.path().join("cheb.json");
    std::fs::write(
        &spec,
        r#"{"version": 1, "label": "small", "model": "chebyshev", "scheme": "fejer", "n": [2, 4],
            "quadrature": {"panels": 16, "nodes": 8}}"#,
    )
    .unwrap();
    let o = zamen(c.path(), &["hypergroup", "run", spec.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, zamen::hypergroup::EXPERIMENT_CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        let norm: f64 = r[3].parse().unwrap();
        assert!((norm - 1.0).abs() < 1e-6);
    }

    let bad = c.path().join("bad.json");
    std::fs::write(&bad, r#"{"version": 1, "label": "x", "model": "su2", "scheme": "fejer-literal", "n": [4]}"#)
        .unwrap();
    assert_eq!(zamen(c.path(), &["hypergroup", "run", bad.to_str().unwrap()]).code, 2);
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(|r| r.unwrap()).collect()
}

#[test]
fn shipped_chebyshev_fejer_spec() {
    let c = cache();
    let o = zamen(c.path(), &["hypergroup", "run", &fixture("hypergroup/chebyshev-fejer.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = csv_rows(&o.stdout);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let norm: f64 = r[3].parse().unwrap();
        assert!((norm - 1.0).abs() <= 1e-6, "n = {}: {norm}", &r[2]);
    }
}

#[test]
fn shipped_su2_dirichlet_spec() {
    let c = cache();
    let out = c.path().join("su2.csv");
    let o = zamen(
        c.path(),
        &["--jobs", "2", "--out", out.to_str().unwrap(), "hypergroup", "run", &fixture("hypergroup/su2-dirichlet.json")],
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    let norms: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(norms.windows(2).all(|w| w[1] > w[0]), "{norms:?}");
    for r in &rows {
        let norm: f64 = r[3].parse().unwrap();
        let bound: f64 = r[9].parse().unwrap();
        assert!(bound <= norm);
        assert_eq!(&r[10], "true");
    }
    let m = RunManifest::read(&manifest_path(&out)).unwrap();
    assert_eq!(m.command, "hypergroup run");
    assert_eq!(m.result_summary["csv_version"], zamen::hypergroup::EXPERIMENT_CSV_VERSION);
}

#[test]
fn verify_tz2() {
    let c = cache();
    let o = zamen(c.path(), &["verify", "tz2", "--n", "20"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("484 pairs, 0 failures"));
    let o = zamen(c.path(), &["verify", "tz2", "--n", "1"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("9 pairs"));
    let o = zamen(c.path(), &["verify", "tz2", "--n", "20", "--mutate"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("4 failures"));
}
