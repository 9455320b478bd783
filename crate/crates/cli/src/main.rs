use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use orange_core::bernstein::{check_determining_set, DomainPointSet};
use orange_core::catalog;
use orange_core::exactmath::rational::{format_point, format_rational};
use orange_core::exactmath::Point;
use orange_core::formula::verify_hilbert_identity;
use orange_core::io::{complex_to_json, ComplexFile};
use orange_core::{
    compute_mds, hilbert_prefix, layer_decomposition, lift_mds, load_complex, orange_dim_formula, run_sweep,
    spline_dim, CofactorSystem, DomainPoint, Orange, SimplicialComplex, SweepReport,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "orange", version, about = "Exact spline dimensions on generalized oranges")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Complex in the JSON format.
    path: Option<PathBuf>,
    /// Use a built-in complex instead of a file.
    #[arg(long, conflicts_with = "path")]
    catalog: Option<String>,
}

impl Input {
    fn load(&self) -> Result<(String, SimplicialComplex)> {
        match (&self.path, &self.catalog) {
            (Some(p), None) => {
                let c = load_complex(p).with_context(|| format!("loading {}", p.display()))?;
                Ok((p.display().to_string(), c))
            }
            (None, Some(name)) => Ok((name.clone(), catalog::entry(name)?.complex)),
            _ => bail!("give a complex file or --catalog NAME"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Cofactor,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is a simplicial complex and recognize its orange profile.
    Validate(Input),
    /// Project an orange along its medial simplex.
    Project(Input),
    /// Build the standard orange C * tau in the JSON complex format.
    StandardOrange(Input),
    /// Dimension of S^r_d.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Write the cofactor constraint matrix as text.
        #[arg(long, value_name = "PATH")]
        dump_system: Option<PathBuf>,
    },
    /// Truncated Hilbert series; for an orange also checks it against the projection.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
    /// Degree-d domain points.
    DomainPoints {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: u32,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Layer decomposition of the standard orange's domain points.
    Layers {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: u32,
    },
    /// Minimal determining set; for an orange also the lifted set on its standard form.
    Mds {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compare the dimension formula with the cofactor oracle over an (r, d) grid.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        rmax: u32,
        #[arg(long, default_value_t = 5)]
        dmax: u32,
        /// Record per-cell timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        /// Sweep every catalog entry.
        #[arg(long, conflicts_with_all = ["path", "catalog"])]
        all: bool,
    },
    /// Built-in complexes.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
}

/// Whether every requested check passed.
type Status = bool;

fn emit(text: &str) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn emit_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("value serializes"));
}

fn complex_value(c: &SimplicialComplex) -> Value {
    serde_json::to_value(ComplexFile::from(c)).expect("complex serializes")
}

fn point_strings(p: &[orange_core::Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

fn write_points_csv(path: &Path, points: &[DomainPoint]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let n = points.first().map_or(0, |p| p.coords.len());
    let mut header: Vec<String> = (1..=n).map(|c| format!("x{c}")).collect();
    header.extend(["face".to_string(), "multi_index".to_string()]);
    w.write_record(&header)?;
    for p in points {
        let mut rec = point_strings(&p.coords);
        rec.push(p.host.to_string());
        rec.push(p.multi_index.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn validate(input: &Input, json: bool) -> Result<Status> {
    let (_, c) = input.load()?;
    let report = c.validate()?;
    let orange = c.detect_orange().ok();
    if json {
        emit_json(&json!({
            "valid": true,
            "pure": report.pure,
            "dim": report.dim,
            "maximal_faces": c.maximal_faces().len(),
            "orange": orange.as_ref().map(|p| json!({"k": p.k, "i": p.i, "medial": p.medial})),
        }));
    } else {
        let mut s = format!(
            "valid {}-dimensional complex, {} maximal faces, {}\n",
            report.dim,
            c.maximal_faces().len(),
            if report.pure { "pure" } else { "not pure" }
        );
        match &orange {
            Some(p) => s += &format!("({},{})-orange, medial simplex {:?}\n", p.k, p.i, p.medial.vertices()),
            None => s += "not an orange\n",
        }
        emit(&s);
    }
    Ok(true)
}

fn project(input: &Input, json: bool) -> Result<Status> {
    let (_, c) = input.load()?;
    let o = Orange::analyze(&c)?;
    let p = &o.projected;
    if json {
        emit_json(&json!({
            "k": o.k(),
            "i": o.i(),
            "medial": o.profile.medial,
            "frame_is_identity": o.frame.is_identity(),
            "central_vertex": p.central_vertex,
            "face_map": p.face_map,
            "projection": complex_value(&p.complex),
        }));
    } else {
        let mut s = format!("({},{})-orange, medial simplex {:?}\n", o.k(), o.i(), o.profile.medial.vertices());
        s += &format!("projection into R^{}, central vertex {}\n", o.i(), p.central_vertex);
        s += "vertices:\n";
        for (v, q) in p.complex.vertices().iter().enumerate() {
            s += &format!("  {v}: {}\n", format_point(q));
        }
        s += "faces:\n";
        for (f, target) in p.face_map.iter().enumerate() {
            s += &format!("  {f} -> {:?}\n", p.complex.maximal_faces()[*target].vertices());
        }
        emit(&s);
    }
    Ok(true)
}

fn standard(input: &Input, json: bool) -> Result<Status> {
    let (_, c) = input.load()?;
    let s = Orange::analyze(&c)?.standard()?;
    if json {
        emit_json(&json!({"k": s.k(), "i": s.i(), "complex": complex_value(&s.complex)}));
    } else {
        emit(&complex_to_json(&s.complex));
    }
    Ok(true)
}

fn dim(input: &Input, r: u32, d: u32, method: Method, dump: Option<&Path>, json: bool) -> Result<Status> {
    let (name, c) = input.load()?;
    let mut oracle = None;
    if method != Method::Formula || dump.is_some() {
        let system = CofactorSystem::assemble(&c, r, d)?;
        if let Some(path) = dump {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            system.matrix.write_text(BufWriter::new(file))?;
        }
        if method != Method::Formula {
            oracle = Some(system.nullity() as u64);
        }
    }
    let formula =
        if method == Method::Cofactor { None } else { Some(orange_dim_formula(&Orange::analyze(&c)?, r, d)?) };
    let ok = match (formula, oracle) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    if json || !ok {
        emit_json(&json!({"input": name, "r": r, "d": d, "formula": formula, "oracle": oracle, "match": ok}));
    } else {
        let mut s = String::new();
        if let Some(v) = formula {
            s += &format!("formula: {v}\n");
        }
        if let Some(v) = oracle {
            s += &format!("cofactor: {v}\n");
        }
        emit(&s);
    }
    Ok(ok)
}

fn hilbert(input: &Input, r: u32, dmax: u32, json: bool) -> Result<Status> {
    let (name, c) = input.load()?;
    let Ok(o) = Orange::analyze(&c) else {
        let h = hilbert_prefix(&c, r, dmax)?;
        if json {
            emit_json(&json!({"input": name, "r": r, "dmax": dmax, "series": h.coeffs}));
        } else {
            emit(&format!("S^{r}: {:?}\n", h.coeffs));
        }
        return Ok(true);
    };
    let check = verify_hilbert_identity(&o, r, dmax)?;
    if json || !check.holds {
        emit_json(&json!({"input": name, "check": check}));
    } else {
        emit(&format!(
            "orange:     {:?}\nprojection: {:?}\nresiduals:  {:?}\nidentity holds through degree {dmax}\n",
            check.orange, check.projected, check.residuals
        ));
    }
    Ok(check.holds)
}

fn domain_points(input: &Input, d: u32, csv_path: Option<&Path>, json: bool) -> Result<Status> {
    let (_, c) = input.load()?;
    let set = DomainPointSet::of(&c, d);
    let points: Vec<DomainPoint> = set.points.keys().filter_map(|p| set.primary(p)).collect();
    if let Some(path) = csv_path {
        write_points_csv(path, &points)?;
    }
    if json {
        emit_json(&json!({"d": d, "count": points.len(), "points": points}));
    } else {
        let mut s = format!("{} domain points of degree {d}\n", points.len());
        for p in &points {
            s += &format!("{}  face {} index {:?}\n", format_point(&p.coords), p.host, p.multi_index);
        }
        emit(&s);
    }
    Ok(true)
}

fn layers(input: &Input, d: u32, json: bool) -> Result<Status> {
    let (_, c) = input.load()?;
    let s = Orange::analyze(&c)?.standard()?;
    let l = layer_decomposition(&s, d)?;
    if json {
        emit_json(&serde_json::to_value(&l)?);
    } else {
        let mut out = format!("({},{}) standard orange, d = {d}\n", l.k, l.i);
        for level in &l.levels {
            out += &format!("  j = {}: {} shifts x {} points\n", level.j, level.shifts.len(), level.lattice.len());
        }
        out += &format!("total {} points, exact partition\n", l.total_points);
        emit(&out);
    }
    Ok(true)
}

fn mds(input: &Input, r: u32, d: u32, csv_path: Option<&Path>, json: bool) -> Result<Status> {
    let (name, c) = input.load()?;
    let m = compute_mds(&c, r, d)?;
    let dim = spline_dim(&c, r, d)?;
    if let Some(path) = csv_path {
        write_points_csv(path, &m.points)?;
    }
    let mut ok = m.len() == dim;
    let lifted = match Orange::analyze(&c) {
        Ok(o) => {
            let s = o.standard()?;
            let l = lift_mds(&s, r, d)?;
            let coords: Vec<Point> = l.points.iter().map(|p| p.coords.clone()).collect();
            let sel = check_determining_set(&s.complex, r, d, &coords)?;
            ok &= sel.invertible;
            Some((l, sel))
        }
        Err(_) => None,
    };
    if json || !ok {
        emit_json(&json!({
            "input": name,
            "r": r,
            "d": d,
            "dim": dim,
            "mds": m.points,
            "lifted": lifted.as_ref().map(|(l, sel)| json!({"set": l, "selection": sel})),
            "ok": ok,
        }));
    } else {
        let mut s = format!("minimal determining set, {} of {dim} points\n", m.len());
        for p in &m.points {
            s += &format!("{}  face {} index {:?}\n", format_point(&p.coords), p.host, p.multi_index);
        }
        if let Some((l, sel)) = &lifted {
            s += &format!(
                "lifted to the standard orange: {} points, levels {:?}, selection rank {} of {}\n",
                l.points.len(),
                l.level_sizes,
                sel.rank,
                sel.dim
            );
        }
        emit(&s);
    }
    Ok(ok)
}

fn sweep_text(report: &SweepReport) -> String {
    let mut s = format!("{} ({},{})-orange\n", report.name, report.k, report.i);
    for cell in &report.cells {
        s += &format!(
            "  r={} d={}: formula {} oracle {} {}",
            cell.r,
            cell.d,
            cell.formula,
            cell.oracle,
            if cell.matches { "ok" } else { "MISMATCH" }
        );
        if let Some(ms) = cell.elapsed_ms {
            s += &format!(" ({ms} ms)");
        }
        s.push('\n');
    }
    s += &format!("  {} cells, {} mismatches\n", report.cells.len(), report.mismatches);
    s
}

fn sweep(input: &Input, rmax: u32, dmax: u32, timings: bool, all: bool, json: bool) -> Result<Status> {
    let targets: Vec<(String, SimplicialComplex)> = if all {
        catalog::catalog().into_iter().map(|e| (e.name.to_string(), e.complex)).collect()
    } else {
        vec![input.load()?]
    };
    let reports = targets
        .iter()
        .map(|(name, c)| run_sweep(name, c, 0..=rmax, 0..=dmax, timings))
        .collect::<orange_core::Result<Vec<_>>>()?;
    let ok = reports.iter().all(SweepReport::all_match);
    if json || !ok {
        emit_json(&json!({"reports": reports, "mismatches": reports.iter().map(|r| r.mismatches).sum::<usize>()}));
    } else {
        emit(&reports.iter().map(sweep_text).collect::<String>());
    }
    Ok(ok)
}

fn catalog_cmd(cmd: &CatalogCommand, json: bool) -> Result<Status> {
    match cmd {
        CatalogCommand::List => {
            let entries = catalog::catalog();
            if json {
                let list: Vec<Value> =
                    entries.iter().map(|e| json!({"name": e.name, "k": e.k, "i": e.i, "notes": e.notes})).collect();
                emit_json(&Value::Array(list));
            } else {
                emit(
                    &entries
                        .iter()
                        .map(|e| format!("{:<20} ({},{})  {}\n", e.name, e.k, e.i, e.notes))
                        .collect::<String>(),
                );
            }
        }
        CatalogCommand::Show { name } => {
            let e = catalog::entry(name)?;
            if json {
                emit_json(&json!({
                    "name": e.name,
                    "k": e.k,
                    "i": e.i,
                    "medial": e.medial,
                    "notes": e.notes,
                    "complex": complex_value(&e.complex),
                }));
            } else {
                emit(&complex_to_json(&e.complex));
            }
        }
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<Status> {
    let json = cli.json;
    match &cli.command {
        Command::Validate(input) => validate(input, json),
        Command::Project(input) => project(input, json),
        Command::StandardOrange(input) => standard(input, json),
        Command::Dim { input, r, d, method, dump_system } => dim(input, *r, *d, *method, dump_system.as_deref(), json),
        Command::Hilbert { input, r, dmax } => hilbert(input, *r, *dmax, json),
        Command::DomainPoints { input, d, csv } => domain_points(input, *d, csv.as_deref(), json),
        Command::Layers { input, d } => layers(input, *d, json),
        Command::Mds { input, r, d, csv } => mds(input, *r, *d, csv.as_deref(), json),
        Command::Sweep { input, rmax, dmax, timings, all } => sweep(input, *rmax, *dmax, *timings, *all, json),
        Command::Catalog(cmd) => catalog_cmd(cmd, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
