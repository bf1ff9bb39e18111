use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lbtkit::generators::{self, G2OneVariant, G2TwoKind, Scale};
use lbtkit::homology::{self, Field};
use lbtkit::io::{read_complex, write_complex, write_scx};
use lbtkit::iso::are_isomorphic;
use lbtkit::retriangulate::{self, RetriangulationRecord};
use lbtkit::rigidity::{RigidityField, DEFAULT_TRIALS};
use lbtkit::verify::{self, VerificationReport, VerifyConfig};
use lbtkit::{Error, Face, SimplicialComplex};

#[derive(Parser)]
#[command(name = "lbtkit", version, about = "Simplicial complexes, g-vectors and retriangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Face numbers and classification predicates.
    Info {
        #[arg(short, long)]
        input: PathBuf,
        /// Coefficient field for homology: rational, or a prime such as 2.
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// Prints g_0 .. g_{floor(d/2)}.
    Gvector {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Link of a face, as a facet list.
    Link {
        #[arg(short, long)]
        input: PathBuf,
        /// Vertices of the face, e.g. 0,1,2.
        #[arg(long)]
        face: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Missing faces of dimension k, one per line.
    Missing {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Runs a retriangulation and prints its record.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Builds a named complex.
    Gen {
        /// Family name, or `list` to list the default catalog.
        family: String,
        /// Integer parameters of the family.
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs one registered statement.
    Verify {
        /// Statement id or alias, e.g. crtr-g-change or Lemma3.3.
        statement: String,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Runs every registered statement.
    VerifyAll {
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(Args, Clone)]
struct OpCommon {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Compare the result with this complex up to isomorphism.
    #[arg(long)]
    check_iso: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Op {
    /// Central retriangulation along `star:<face>` or `facets:<f>;<f>;...`.
    Crtr {
        #[command(flatten)]
        common: OpCommon,
        #[arg(long)]
        ball: String,
    },
    /// Inverse stellar retriangulation at a vertex.
    Sdinv {
        #[command(flatten)]
        common: OpCommon,
        #[arg(long)]
        vertex: u32,
        /// Stackedness parameter; detected from the link when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Swartz operation at a vertex, on one missing facet of its link or on all of them.
    Swartz {
        #[command(flatten)]
        common: OpCommon,
        #[arg(long)]
        vertex: u32,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        tau: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Clone)]
struct VerifyOpts {
    #[arg(long, default_value_t = Scale::default().dmax)]
    dmax: usize,
    #[arg(long, default_value_t = Scale::default().max_vertices)]
    max_vertices: usize,
    #[arg(long, default_value_t = Scale::default().max_cycle)]
    max_cycle: usize,
    /// Restrict to one d = dim + 1.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Rigidity field: `p:<prime>` or `rational`.
    #[arg(long)]
    field: Option<String>,
    /// Write the full JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the full JSON report to stdout.
    #[arg(long)]
    json: bool,
}

/// Exit status and message of a failed command.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: if err.is_input_error() { 2 } else { 3 },
            message: err.to_string(),
        }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

/// Line to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Info { input, field, json } => info(&input, &field, json),
        Command::Gvector { input } => {
            let c = read_complex(&input)?;
            let g: Vec<String> = c.g_vector().0.iter().map(|x| x.to_string()).collect();
            out!("{}", g.join(" "));
            Ok(0)
        }
        Command::Link { input, face, output } => {
            let c = read_complex(&input)?;
            let face: Face = face.parse()?;
            let link = c.link(&face)?;
            emit(&link, output.as_deref())?;
            Ok(0)
        }
        Command::Missing { input, k } => {
            let c = read_complex(&input)?;
            for f in c.missing_faces(k) {
                out!("{}", vertices_line(&f));
            }
            Ok(0)
        }
        Command::Op { op } => operation(op),
        Command::Gen { family, params, output } => {
            if family == "list" {
                for e in generators::default_catalog() {
                    let f: Vec<String> = e.complex.f_vector().0.iter().map(|x| x.to_string()).collect();
                    out!("{}\tf = ({})", e.name, f.join(", "));
                }
                return Ok(0);
            }
            let c = generate(&family, &params)?;
            emit(&c, output.as_deref())?;
            Ok(0)
        }
        Command::Verify { statement, opts } => {
            let cfg = config(&opts)?;
            let report = verify::verify(&statement, &cfg)
                .ok_or_else(|| failure(4, format!("unknown statement '{statement}'")))?;
            print_report(&report);
            let value = serde_json::to_value(&report).expect("report serializes");
            finish_report(&opts, &value)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::VerifyAll { opts } => {
            let cfg = config(&opts)?;
            let suite = verify::verify_all(&cfg);
            for r in &suite.reports {
                print_report(r);
            }
            let passed = suite.reports.iter().filter(|r| r.pass).count();
            out!(
                "{} {passed}/{} statements, {} ms",
                if suite.pass { "PASS" } else { "FAIL" },
                suite.reports.len(),
                suite.wall_time_ms
            );
            let value = serde_json::to_value(&suite).expect("report serializes");
            finish_report(&opts, &value)?;
            Ok(if suite.pass { 0 } else { 1 })
        }
    }
}

fn vertices_line(f: &Face) -> String {
    let vs: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
    vs.join(" ")
}

fn emit(c: &SimplicialComplex, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write_complex(path, c)?,
        None => {
            for line in write_scx(c).lines() {
                out!("{line}");
            }
        }
    }
    Ok(())
}

fn verdict(v: &Option<homology::Violation>) -> String {
    match v {
        None => "yes".into(),
        Some(v) => format!("no ({}: {})", v.face, v.reason),
    }
}

fn info(input: &Path, field: &str, as_json: bool) -> Outcome {
    let c = read_complex(input)?;
    let field: Field = field.parse()?;
    let numbers = c.face_numbers();
    let class = homology::classify(&c, field);
    if as_json {
        let v = json!({
            "vertices": c.num_vertices(),
            "dim": c.dim(),
            "f_vector": numbers.f.0,
            "h_vector": numbers.h.0,
            "g_vector": numbers.g.0,
            "g2": c.g2_from_counts(),
            "field": field,
            "classification": class,
        });
        out!("{}", serde_json::to_string_pretty(&v).expect("json"));
        return Ok(0);
    }
    let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    out!("vertices: {}", c.num_vertices());
    out!("dimension: {}", c.dim());
    out!("f: {}", join(&numbers.f.0));
    out!("h: {}", join(&numbers.h.0));
    out!("g: {}", join(&numbers.g.0));
    out!("g2 = {}", c.g2_from_counts());
    out!("pure: {}", if class.pure { "yes" } else { "no" });
    out!("connected: {}", if class.connected { "yes" } else { "no" });
    out!("prime: {}", if class.prime { "yes" } else { "no" });
    out!("normal pseudomanifold: {}", verdict(&class.normal_pseudomanifold));
    out!("homology manifold over {field}: {}", verdict(&class.homology_manifold));
    out!("homology sphere over {field}: {}", verdict(&class.homology_sphere));
    Ok(0)
}

fn parse_ball(c: &SimplicialComplex, spec: &str) -> Result<SimplicialComplex, Failure> {
    if let Some(face) = spec.strip_prefix("star:") {
        let face: Face = face.parse()?;
        return Ok(c.star(&face)?);
    }
    if let Some(list) = spec.strip_prefix("facets:") {
        let facets = list
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.parse::<Face>())
            .collect::<lbtkit::Result<Vec<Face>>>()?;
        return Ok(SimplicialComplex::from_faces(facets));
    }
    Err(failure(2, format!("ball '{spec}' must start with star: or facets:")))
}

fn operation(op: Op) -> Outcome {
    let (common, result) = match op {
        Op::Crtr { common, ball } => {
            let c = read_complex(&common.input)?;
            let ball = parse_ball(&c, &ball)?;
            let r = retriangulate::central_retriangulation(&c, &ball)?;
            (common, r)
        }
        Op::Sdinv { common, vertex, r } => {
            let c = read_complex(&common.input)?;
            let out = retriangulate::inverse_stellar(&c, vertex, r)?;
            (common, out)
        }
        Op::Swartz { common, vertex, tau, all } => {
            let c = read_complex(&common.input)?;
            let out = if all {
                retriangulate::swartz_all(&c, vertex)?
            } else {
                let tau: Face = tau.expect("clap requires --tau without --all").parse()?;
                retriangulate::swartz_operation(&c, vertex, &tau)?
            };
            (common, out)
        }
    };
    let (out, record) = result;
    report_operation(&common, &out, &record)
}

fn report_operation(common: &OpCommon, out: &SimplicialComplex, record: &RetriangulationRecord) -> Outcome {
    let mut value = json!({
        "record": record,
        "output_f_vector": out.f_vector().0,
        "consistent": record.consistent(),
    });
    let mut code = if record.consistent() { 0 } else { 1 };
    if let Some(path) = &common.check_iso {
        let other = read_complex(path)?;
        let iso = are_isomorphic(out, &other)?.is_isomorphic();
        value["isomorphic"] = json!(iso);
        if !iso {
            code = 1;
        }
    }
    match &common.output {
        Some(path) => write_complex(path, out)?,
        None => {
            let facets: Vec<Vec<u32>> = out.facets().iter().map(|f| f.vertices().to_vec()).collect();
            value["output_facets"] = json!(facets);
        }
    }
    out!("{}", serde_json::to_string_pretty(&value).expect("json"));
    for d in &record.deltas {
        eprintln!("g_{}: predicted {:+}, actual {:+}", d.index, d.predicted, d.actual);
    }
    Ok(code)
}

fn int(params: &[String], i: usize, name: &str) -> Result<usize, Failure> {
    let raw = params
        .get(i)
        .ok_or_else(|| failure(2, format!("missing parameter {name}")))?;
    raw.parse()
        .map_err(|_| failure(2, format!("parameter {name} must be a non-negative integer, got '{raw}'")))
}

fn generate(family: &str, p: &[String]) -> Result<SimplicialComplex, Failure> {
    let c = match family {
        "simplex-boundary" => generators::simplex_boundary(int(p, 0, "d")?)?,
        "cycle" => generators::cycle(int(p, 0, "n")?)?,
        "cross-polytope" => generators::cross_polytope_boundary(int(p, 0, "d")?)?,
        "stacked" => generators::stacked_sphere(int(p, 0, "d")?, int(p, 1, "n")?)?,
        "ridge-stacked" => generators::ridge_stacked_sphere(int(p, 0, "d")?, int(p, 1, "n")?)?,
        "join" => {
            let v = G2OneVariant::Join { i: int(p, 1, "i")? };
            generators::g2_one_family(int(p, 0, "d")?, v)?.complex
        }
        "cycle-join" => {
            let v = G2OneVariant::Cycle { n: int(p, 1, "n")? };
            generators::g2_one_family(int(p, 0, "d")?, v)?.complex
        }
        "triple-join" => generators::g2_two_catalog(int(p, 0, "d")?, G2TwoKind::TripleJoin)?.complex,
        "suspended-join" => {
            let kind = G2TwoKind::SuspendedJoin { i: int(p, 1, "i")? };
            generators::g2_two_catalog(int(p, 0, "d")?, kind)?.complex
        }
        "octahedral" => generators::g2_two_catalog(4, G2TwoKind::Octahedral)?.complex,
        "crtr-join" => generators::g2_two_catalog(int(p, 0, "d")?, G2TwoKind::Retriangulated)?.complex,
        "facet-pair-cycle-edge" => {
            let kind = G2TwoKind::FacetPairOverCycleEdge { n: int(p, 0, "n")? };
            generators::g2_two_catalog(4, kind)?.complex
        }
        "facet-pair-triangle-edge" => {
            let kind = G2TwoKind::FacetPairOverTriangleEdge { n: int(p, 0, "n")? };
            generators::g2_two_catalog(4, kind)?.complex
        }
        "barnette" => generators::barnette().complex,
        "rp2" => generators::rp2_six(),
        "torus" => generators::torus_seven(),
        "catalog" => {
            let name = p.first().ok_or_else(|| failure(2, "missing catalog entry name"))?;
            generators::default_catalog()
                .iter()
                .find(|e| &e.name == name)
                .ok_or_else(|| failure(3, format!("no catalog entry named '{name}'")))?
                .complex
                .clone()
        }
        other => return Err(failure(2, format!("unknown family '{other}'"))),
    };
    Ok(c)
}

fn config(opts: &VerifyOpts) -> Result<VerifyConfig, Failure> {
    let field = match &opts.field {
        Some(s) => s.parse::<RigidityField>()?,
        None => RigidityField::default(),
    };
    if opts.trials == 0 {
        return Err(failure(3, "--trials must be at least 1"));
    }
    Ok(VerifyConfig {
        scale: Scale {
            dmax: opts.dmax,
            max_vertices: opts.max_vertices,
            max_cycle: opts.max_cycle,
        },
        seed: opts.seed,
        trials: opts.trials,
        field,
        only_d: opts.d,
    })
}

fn print_report(r: &VerificationReport) {
    out!("{}", r.summary_line());
    for f in r.failures.iter().skip(1).take(4) {
        out!("  failure {}: {}", f.instance, f.witness);
    }
    for n in &r.notes {
        out!("  {n}");
    }
}

fn finish_report(opts: &VerifyOpts, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json");
    if opts.json {
        out!("{text}");
    }
    if let Some(path) = &opts.report {
        std::fs::write(path, text).map_err(|e| failure(2, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
