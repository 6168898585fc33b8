use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitri::dilation::{dispatch, execute, BoundaryStyle};
use unitri::empty_simplex::{canonical_p, classify, delta_prime, is_tetragonal};
use unitri::formats::{boundary_off, parse_region, read_polytope, read_triangulation, write_triangulation};
use unitri::fundamental_square::{maximal_path, paths_compatible, square_model, Axis, SquareContext, SquareKind, SquareModel, SquarePoint};
use unitri::lattice_core::{gcd, ConvexRegion, LatticeSimplex, Triangulation};
use unitri::polytope_pipeline::{triangulate_dilation, PipelineOptions};
use unitri::verifier::{verify_boundary, verify_complex, verify_unimodular, VerificationReport};
use unitri::Error;

#[derive(Parser)]
#[command(name = "unitri", version, about = "Unimodular triangulations of dilated lattice tetrahedra and polytopes")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an empty lattice tetrahedron.
    Classify {
        /// Polytope JSON with exactly four vertices.
        file: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "file")]
        pq: Option<Vec<i64>>,
    },
    /// Triangulate kΔ'(p,q) or the dilation kP of a polytope.
    Triangulate(TriangulateArgs),
    /// Check a triangulation file against a region.
    Verify {
        file: PathBuf,
        /// Polytope JSON file, `dilate:p,q,k`, or points `x,y,z;x,y,z;...`.
        #[arg(long)]
        region: String,
        /// Boundary check for `dilate:` regions; defaults to the style recorded in the file.
        #[arg(long)]
        boundary: Option<StyleArg>,
    },
    /// Build and verify every dilation in a range, one table row each.
    Survey {
        #[arg(long)]
        qmax: i64,
        #[arg(long)]
        kmax: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
        /// Include every p, not only the smallest of each class.
        #[arg(long)]
        all_p: bool,
    },
    /// Draw the fundamental square with its maximal paths.
    Squares {
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        pq: Vec<i64>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Also write the square triangulation as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TriangulateArgs {
    #[arg(long, num_args = 2, value_names = ["P", "Q"], required_unless_present = "polytope", conflicts_with = "polytope")]
    pq: Option<Vec<i64>>,
    #[arg(long)]
    polytope: Option<PathBuf>,
    #[arg(long)]
    k: i64,
    #[arg(long, value_enum, default_value_t = StyleArg::Standard)]
    boundary: StyleArg,
    /// Triangulate polytope cells independently (a dissection, not a complex).
    #[arg(long)]
    dissection: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the boundary surface as OFF.
    #[arg(long)]
    off: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Standard,
    #[value(alias = "quasi-standard")]
    Quasi,
    #[value(alias = "unconstrained")]
    Free,
}

impl From<StyleArg> for BoundaryStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Standard => BoundaryStyle::Standard,
            StyleArg::Quasi => BoundaryStyle::QuasiStandard,
            StyleArg::Free => BoundaryStyle::Unconstrained,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ychain,
    Xchain,
    Both,
}

enum Failure {
    /// Exit code 1.
    Check(String),
    /// Exit code 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn pq_pair(v: &[i64]) -> (i64, i64) {
    (v[0], v[1])
}

fn cmd_classify(file: Option<PathBuf>, pq: Option<Vec<i64>>) -> Result<(), Failure> {
    let simplex = match (file, pq) {
        (_, Some(v)) => {
            let (p, q) = pq_pair(&v);
            if q < 1 || gcd(p, q) != 1 {
                return Err(Failure::Usage(format!("need q >= 1 and gcd(p, q) = 1, got p={p} q={q}")));
            }
            LatticeSimplex::in_integer_lattice(unitri::empty_simplex::delta(p, q))?
        }
        (Some(path), None) => {
            let f = read_polytope(&read(&path)?)?;
            if f.vertices.len() != 4 {
                return Err(Failure::Usage(format!("not a simplex: {} vertices", f.vertices.len())));
            }
            let pts = f.points();
            LatticeSimplex::new([pts[0], pts[1], pts[2], pts[3]], f.lattice()?)
                .map_err(|e| Failure::Usage(format!("not a simplex: {e}")))?
        }
        (None, None) => return Err(Failure::Usage("give a polytope file or --pq P Q".into())),
    };
    let cls = classify(&simplex)?;
    let cp = canonical_p(cls.p, cls.q)?;
    println!("q={} p={} canonical_p={cp} tetragonal={} unimodular={}", cls.q, cls.p, is_tetragonal(&cls), cls.q == 1);
    let m = cls.to_canonical;
    println!("map to Δ({},{}): x -> {:?} x + {:?}", cls.p, cls.q, m.linear, m.translation.to_array());
    Ok(())
}

fn cmd_triangulate(a: TriangulateArgs) -> Result<(), Failure> {
    let style = BoundaryStyle::from(a.boundary);
    let t = match (&a.pq, &a.polytope) {
        (Some(v), _) => {
            let (p, q) = pq_pair(v);
            if a.dissection {
                unitri::dilation::triangulate_dissection(p, q, a.k)?
            } else {
                execute(&dispatch(p, q, a.k, style)?)?
            }
        }
        (None, Some(path)) => {
            let poly = read_polytope(&read(path)?)?.to_polytope()?;
            triangulate_dilation(&poly, PipelineOptions { k: a.k, style, dissection: a.dissection })?
        }
        (None, None) => return Err(Failure::Usage("give --pq P Q or --polytope FILE".into())),
    };
    let json = write_triangulation(&t);
    match &a.output {
        Some(path) => write(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &a.off {
        write(path, &boundary_off(&t))?;
    }
    eprintln!("{} cells, {} vertices, method {}", t.len(), t.vertices.len(), t.meta.method);
    Ok(())
}

fn load_region(spec: &str) -> Result<ConvexRegion, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(read_polytope(&read(path)?)?.to_polytope()?.region().clone());
    }
    Ok(parse_region(spec)?)
}

fn dilate_params(spec: &str) -> Option<(i64, i64, i64)> {
    let nums: Vec<i64> = spec.strip_prefix("dilate:")?.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    match nums[..] {
        [p, q, k] => Some((p, q, k)),
        _ => None,
    }
}

fn cmd_verify(file: PathBuf, region: String, boundary: Option<StyleArg>) -> Result<(), Failure> {
    let t = read_triangulation(&read(&file)?)?;
    let r = load_region(&region)?;
    let mut report = verify_complex(&t, &r).merge(verify_unimodular(&t));
    if let Some((_, q, k)) = dilate_params(&region) {
        let style = boundary.map(BoundaryStyle::from).unwrap_or(t.boundary_style);
        report = report.merge(verify_boundary(&t, &delta_prime(q, 1), k, style));
    } else if boundary.is_some() {
        return Err(Failure::Usage("--boundary needs a dilate:p,q,k region".into()));
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed checks: {}", report.failures().join(", "))))
    }
}

struct SurveyRow {
    p: i64,
    q: i64,
    k: i64,
    method: String,
    cells: String,
    result: String,
    seconds: f64,
}

fn survey_row(p: i64, q: i64, k: i64) -> SurveyRow {
    let start = Instant::now();
    let mut row = SurveyRow { p, q, k, method: "-".into(), cells: "-".into(), result: String::new(), seconds: 0.0 };
    let plan = match dispatch(p, q, k, BoundaryStyle::Standard) {
        Ok(plan) => Ok(plan),
        Err(_) if k == 7 || k == 11 => dispatch(p, q, k, BoundaryStyle::QuasiStandard),
        Err(e) => Err(e),
    };
    let outcome = plan.and_then(|plan| {
        row.method = format!("{} ({})", plan.method.tag(), plan.style.name());
        let t = execute(&plan)?;
        let region = ConvexRegion::from_points(&delta_prime(q, k))?;
        Ok((t.len(), check(&t, &region, q, k, plan.style)))
    });
    match outcome {
        Ok((n, report)) => {
            row.cells = n.to_string();
            row.result = if report.passed() && n as i64 == k * k * k * q {
                "pass".into()
            } else {
                format!("FAIL {}", report.failures().join(" "))
            };
        }
        Err(e) => row.result = format!("refused: {e}"),
    }
    row.seconds = start.elapsed().as_secs_f64();
    row
}

fn check(t: &Triangulation, region: &ConvexRegion, q: i64, k: i64, style: BoundaryStyle) -> VerificationReport {
    verify_complex(t, region).merge(verify_unimodular(t)).merge(verify_boundary(t, &delta_prime(q, 1), k, style))
}

fn cmd_survey(qmax: i64, kmax: i64, format: TableFormat, all_p: bool) -> Result<(), Failure> {
    if qmax < 1 || kmax < 1 {
        return Err(Failure::Usage("--qmax and --kmax must be positive".into()));
    }
    let mut rows = Vec::new();
    for q in 1..=qmax {
        for p in 0..q {
            if gcd(p, q) != 1 || (!all_p && canonical_p(p, q)? != p) {
                continue;
            }
            for k in 1..=kmax {
                rows.push(survey_row(p, q, k));
            }
        }
    }
    let mut out = String::new();
    let header = ["p", "q", "k", "method", "cells", "result", "seconds"];
    if format == TableFormat::Markdown {
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    } else {
        let _ = writeln!(out, "{}", header.join(","));
    }
    for r in &rows {
        let cols = [r.p.to_string(), r.q.to_string(), r.k.to_string(), r.method.clone(), r.cells.clone(), r.result.clone(), format!("{:.3}", r.seconds)];
        if format == TableFormat::Markdown {
            let _ = writeln!(out, "| {} |", cols.join(" | "));
        } else {
            let quoted: Vec<String> = cols.iter().map(|c| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() }).collect();
            let _ = writeln!(out, "{}", quoted.join(","));
        }
    }
    print!("{out}");
    let failed = rows.iter().filter(|r| r.result.starts_with("FAIL")).count();
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} rows failed")));
    }
    Ok(())
}

fn ascii_square(ctx: &SquareContext, model: &SquareModel) -> String {
    let q = ctx.q;
    let on = |chain: &Option<Vec<SquarePoint>>, pt: SquarePoint| chain.as_ref().is_some_and(|c| c.contains(&pt));
    let interior = unitri::fundamental_square::interior_points(ctx);
    let mut s = String::new();
    for y in (0..=q).rev() {
        let _ = write!(s, "{y:>4} ");
        for x in 0..=q {
            let pt = SquarePoint::new(x, y);
            let corner = (x == 0 || x == q) && (y == 0 || y == q);
            let c = match (on(&model.ychain, pt), on(&model.xchain, pt)) {
                (true, true) => '#',
                (true, false) => 'Y',
                (false, true) => 'X',
                _ if corner => '+',
                _ if interior.contains(&pt) => 'o',
                _ => '.',
            };
            s.push(c);
            s.push(' ');
        }
        s.push('\n');
    }
    s
}

fn svg_square(ctx: &SquareContext, model: &SquareModel) -> String {
    let q = ctx.q as f64;
    let scale = 480.0 / q;
    let pad = 20.0;
    let px = |p: SquarePoint| (pad + p.x as f64 * scale, pad + (q - p.y as f64) * scale);
    let size = 480.0 + 2.0 * pad;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    for t in &model.triangles {
        let pts: Vec<String> = t.iter().map(|p| px(*p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r##"<polygon points="{}" fill="#f4f4f4" stroke="#888" stroke-width="1"/>"##, pts.join(" "));
    }
    let c = ctx.corners();
    // Each chain is joined to both corners at its ends; draw one of them.
    for (chain, colour, end) in [(&model.ychain, "#c0392b", c[2]), (&model.xchain, "#2471a3", c[1])] {
        let Some(chain) = chain else { continue };
        let pts: Vec<SquarePoint> = std::iter::once(c[0]).chain(chain.iter().copied()).chain(std::iter::once(end)).collect();
        let line: Vec<String> = pts.iter().map(|p| px(*p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="3"/>"#, line.join(" "));
    }
    for p in ctx.all_points() {
        let (x, y) = px(p);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

fn cmd_squares(pq: Vec<i64>, kind: Option<KindArg>, svg: Option<PathBuf>) -> Result<(), Failure> {
    let (p, q) = pq_pair(&pq);
    let ctx = SquareContext::new(p, q)?;
    let kind = match kind {
        Some(KindArg::Ychain) => SquareKind::ChainY,
        Some(KindArg::Xchain) => SquareKind::ChainX,
        Some(KindArg::Both) => SquareKind::Both,
        None if ctx.is_tetragonal() => SquareKind::Both,
        None => SquareKind::ChainY,
    };
    let model = square_model(&ctx, kind)?;
    println!("p={p} q={q} p'={} tetragonal={}", ctx.p_prime, ctx.is_tetragonal());
    if q > 1 {
        println!("maximal Y-path: {:?}", maximal_path(&ctx, Axis::Y)?.points);
        println!("maximal X-path: {:?}", maximal_path(&ctx, Axis::X)?.points);
        println!("paths compatible: {}", paths_compatible(&ctx)?);
    }
    print!("{}", ascii_square(&ctx, &model));
    if let Some(path) = svg {
        write(&path, &svg_square(&ctx, &model))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Classify { file, pq } => cmd_classify(file, pq),
        Command::Triangulate(a) => cmd_triangulate(a),
        Command::Verify { file, region, boundary } => cmd_verify(file, region, boundary),
        Command::Survey { qmax, kmax, format, all_p } => cmd_survey(qmax, kmax, format, all_p),
        Command::Squares { pq, kind, svg } => cmd_squares(pq, kind, svg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
