use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use factorcheck::catalog;
use factorcheck::constructors::classical_generators;
use factorcheck::factorize::claims::{build_control, build_instance, control_ids, default_params, grid, row15_vector_orbit};
use factorcheck::factorize::{intersect, structure_hint, summary_line, verify, VerificationReport, VerifyOptions};
use factorcheck::gf::field_of_order;
use factorcheck::grpcore::{self, OrbitOptions};
use factorcheck::linalg::{canonical_point, unit_vector, RawPoint};
use factorcheck::orders::{self, Family, Params};
use factorcheck::{par, Error, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "factorcheck", version, about = "Machine-checks factorizations G = HK of finite linear groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify catalog claims and write one JSON report per claim.
    Verify(VerifyArgs),
    /// Orbit length of a point under a classical group.
    Orbit(OrbitArgs),
    /// Order identities, for one row or swept over a grid.
    Order(OrderArgs),
    /// Intersection order of a claim's factors.
    Intersect(IntersectArgs),
    /// List claim templates with their source labels.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id (repeatable), e.g. `9`, `1-Sp`, `12-S5`.
    #[arg(long = "row")]
    rows: Vec<String>,
    /// Parameters for a single `--row`, e.g. `a=2,b=2,q=2`.
    #[arg(long)]
    params: Option<String>,
    /// Every grid entry of the selected tier.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "desk", value_parser = ["desk", "extended"])]
    tier: String,
    /// Run the negative controls (they pass by failing).
    #[arg(long)]
    negative_controls: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "reports")]
    out: PathBuf,
    /// Record wall-clock times (reports are then no longer byte-stable).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    no_order_count: bool,
    #[arg(long)]
    no_transitivity: bool,
    #[arg(long)]
    no_sampling: bool,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    /// Orbit memory budget in bytes.
    #[arg(long, env = "FACTORCHECK_MEM_BUDGET")]
    mem_budget: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct OrbitArgs {
    /// `FAMILY:n:q`, e.g. `SL:4:2` or `Sp:6:2`.
    #[arg(long)]
    group: String,
    /// `e1`..`en`, or comma-separated coordinates.
    #[arg(long)]
    point: String,
    /// Functional for antiflag actions (same syntax as `--point`).
    #[arg(long)]
    functional: Option<String>,
    #[arg(long, default_value = "vector")]
    action: String,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 16)]
    qmax: u64,
    #[arg(long, default_value_t = 16)]
    nmax: u64,
    #[arg(long)]
    row: Option<String>,
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args)]
struct IntersectArgs {
    #[arg(long)]
    row: String,
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    /// Print the embedded catalog JSON and its digest.
    #[arg(long)]
    json: bool,
}

fn parse_params(s: &str) -> Result<Params> {
    let mut p = Params::default();
    for part in s.split(',').filter(|x| !x.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got '{part}'")))?;
        let v: u64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad value in '{part}'")))?;
        match k.trim() {
            "n" => p.n = Some(v),
            "q" => p.q = Some(v),
            "a" => p.a = Some(v),
            "b" => p.b = Some(v),
            "m" => p.m = Some(v),
            other => return Err(Error::Parse(format!("unknown parameter '{other}'"))),
        }
    }
    Ok(p)
}

fn params_for(row: &str, given: Option<&str>) -> Result<Params> {
    match given {
        Some(s) => parse_params(s),
        None => default_params(row).or_else(|_| Ok(Params::default())),
    }
}

fn parse_vector(s: &str, n: usize) -> Result<Vec<u32>> {
    if let Some(i) = s.strip_prefix('e') {
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad unit vector '{s}'")))?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("unit vector index {i} outside 1..={n}")));
        }
        return Ok(unit_vector(n, i - 1));
    }
    let v: Vec<u32> = s.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate '{x}'")))).collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::Dimension(format!("point has {} coordinates, expected {n}", v.len())));
    }
    Ok(v)
}

fn report_name(r: &VerificationReport) -> String {
    let p = r.params.to_string().replace(['=', ','], "");
    let id = r.claim_id.replace([':', '^'], "_");
    if p.is_empty() {
        format!("{id}.json")
    } else {
        format!("{id}_{p}.json")
    }
}

enum Job {
    Claim(String, Params),
    Control(String),
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    if let Some(t) = a.threads {
        par::set_threads(t);
    }
    let extended = a.tier == "extended";
    let mut jobs = Vec::new();
    if a.all {
        jobs.extend(grid(extended).into_iter().map(|(id, p, _)| Job::Claim(id, p)));
    }
    for r in &a.rows {
        if a.rows.len() > 1 && a.params.is_some() {
            return Err(Error::Params("--params applies to a single --row".into()));
        }
        catalog::template(r)?;
        jobs.push(Job::Claim(r.clone(), params_for(r, a.params.as_deref())?));
    }
    if a.negative_controls {
        jobs.extend(control_ids().into_iter().map(Job::Control));
    }
    if jobs.is_empty() {
        return Err(Error::Params("nothing selected: use --row, --all or --negative-controls".into()));
    }
    let mut opts = VerifyOptions {
        seed: a.seed,
        order_count: !a.no_order_count,
        transitivity: !a.no_transitivity,
        sampling: !a.no_sampling,
        samples: a.samples,
        timings: a.timings,
        ..Default::default()
    };
    if let Some(m) = a.mem_budget {
        opts.mem_budget = m;
    }
    let results: Vec<std::result::Result<VerificationReport, (String, String)>> = par::map(&jobs, |job| {
        let (label, inst) = match job {
            Job::Claim(id, p) => (format!("{id} {p}"), build_instance(id, p, a.seed)),
            Job::Control(id) => (id.clone(), build_control(id, a.seed)),
        };
        let mut r = verify(&inst.map_err(|e| (label.clone(), e.to_string()))?, &opts);
        if r.claim_id == "15" {
            attach_row15(&mut r, opts.mem_budget);
        }
        Ok(r)
    });
    fs::create_dir_all(&a.out).map_err(|e| Error::Params(format!("cannot create {}: {e}", a.out.display())))?;
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for res in results {
        match res {
            Ok(r) => {
                let path = a.out.join(report_name(&r));
                let body = serde_json::to_string_pretty(&r).expect("reports serialize") + "\n";
                fs::write(&path, body).map_err(|e| Error::Params(format!("cannot write {}: {e}", path.display())))?;
                lines.push(summary_line(&r));
                if !r.expectation_met {
                    failures.push(json!({ "claim": r.claim_id, "params": r.params, "overall": r.overall }));
                }
            }
            Err((label, e)) => {
                lines.push(format!("{label:<29} error      {e}"));
                failures.push(json!({ "claim": label, "error": e }));
            }
        }
    }
    let summary = lines.join("\n") + "\n";
    fs::write(a.out.join("summary.txt"), &summary).map_err(|e| Error::Params(e.to_string()))?;
    emit(&summary);
    let machine = json!({ "selected": jobs.len(), "failed": failures.len(), "failures": failures });
    fs::write(a.out.join("summary.json"), serde_json::to_string_pretty(&machine).expect("json") + "\n").map_err(|e| Error::Params(e.to_string()))?;
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}", serde_json::to_string(&machine).expect("json"));
        Ok(ExitCode::from(1))
    }
}

/// Row 15 records vector transitivity in place of the antiflag orbit.
fn attach_row15(r: &mut VerificationReport, mem_budget: u64) {
    let entry = match row15_vector_orbit(mem_budget) {
        Ok((size, total)) => json!({ "vector_orbit": size, "nonzero_vectors": total.to_string(), "transitive": total == size.into() }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    r.extra = Some(json!({ "vector_transitivity": entry }));
}

fn cmd_orbit(a: OrbitArgs) -> Result<ExitCode> {
    let parts: Vec<&str> = a.group.split(':').collect();
    let [fam, n, q] = parts[..] else { return Err(Error::Parse(format!("expected FAMILY:n:q, got '{}'", a.group))) };
    let family = Family::parse(fam)?;
    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad degree '{n}'")))?;
    let q: u64 = q.parse().map_err(|_| Error::Parse(format!("bad field size '{q}'")))?;
    let k = field_of_order(q)?;
    let g = classical_generators(family, n, &k)?;
    let v = parse_vector(&a.point, n)?;
    let w = a.functional.as_deref().map(|s| parse_vector(s, n)).transpose()?;
    let need_w = || w.as_deref().ok_or_else(|| Error::Params("this action needs --functional".into()));
    let raw = match a.action.as_str() {
        "vector" => RawPoint::Vector(&v),
        "projective" => RawPoint::Projective(&v),
        "hyperplane" => RawPoint::Hyperplane(&v),
        "antiflag" => RawPoint::Antiflag(&v, need_w()?),
        "pointed-antiflag" => RawPoint::PointedAntiflag(&v, need_w()?),
        other => return Err(Error::Parse(format!("unknown action '{other}'"))),
    };
    let x = canonical_point(&k, raw)?;
    let o = grpcore::orbit(&g, &x, &OrbitOptions { keep_members: false, ..Default::default() })?;
    emit(&format!("{}\n", o.size));
    Ok(ExitCode::SUCCESS)
}

fn cmd_order(a: OrderArgs) -> Result<ExitCode> {
    if a.sweep {
        let reports = orders::sweep(a.qmax, a.nmax);
        emit(&orders::sweep_csv(&reports));
        let failed = reports.iter().filter(|r| !r.holds).count();
        eprintln!("{} tuples, {failed} failures", reports.len());
        return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let row = a.row.ok_or_else(|| Error::Params("give --sweep or --row".into()))?;
    let p = params_for(&row, a.params.as_deref())?;
    let p = catalog::normalize_params(&row, &p)?;
    let r = orders::identity_check(&row, &p)?;
    emit(&(serde_json::to_string_pretty(&r).expect("json") + "\n"));
    Ok(if r.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_intersect(a: IntersectArgs) -> Result<ExitCode> {
    let p = params_for(&a.row, a.params.as_deref())?;
    let inst = build_instance(&a.row, &p, a.seed)?;
    let x = intersect(&inst.mover, &inst.stab, a.seed)?;
    let hint = x.group.as_ref().and_then(structure_hint);
    let out = json!({
        "claim_id": inst.claim_id,
        "params": inst.params,
        "method": x.method,
        "intersection_order": x.order,
        "structure_hint": hint,
        "orbit_sizes": x.orbit_sizes,
    });
    emit(&(serde_json::to_string_pretty(&out).expect("json") + "\n"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(a: CatalogArgs) -> Result<ExitCode> {
    if a.json {
        emit(catalog::CATALOG_JSON);
        eprintln!("sha256 {}", catalog::catalog_digest());
    }
    if a.list || !a.json {
        emit(&catalog::listing());
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Orbit(a) => cmd_orbit(a),
        Cmd::Order(a) => cmd_order(a),
        Cmd::Intersect(a) => cmd_intersect(a),
        Cmd::Catalog(a) => cmd_catalog(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
