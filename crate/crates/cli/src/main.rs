//! `mixorient`: orient strongly connected bridgeless mixed multigraphs
//! to strongly connected digraphs of provably bounded radius.
//!
//! Subcommands: `check` (diagnose a graph file), `orient` (run one of
//! the two bounded orientation drivers), `gen` (emit test instances),
//! `oracle` (exact oriented radius by pruned brute force), `verify`
//! (validate an orientation against its source graph). Graph files pipe
//! through stdin/stdout; see the crate README for the format.
//!
//! Exit codes: 0 success, 1 domain failure (not strongly orientable,
//! oracle cap exceeded, invalid orientation), 2 usage or parse errors.

mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixorient::cycles::eta;
use mixorient::driver::{
    diameter_bound, radius_bound, strong_orientation, strong_orientation_eta, verify_orientation,
    Orientation, OrientationReport, PhaseMode,
};
use mixorient::family::lower_bound_family;
use mixorient::graph::{
    bridges, diameter, is_strongly_connected, is_strongly_orientable, radius_center, EdgeKind,
    MixedMultigraph,
};
use mixorient::io::{emit_graph, parse_graph};
use mixorient::oracle::{oriented_radius_exact, OracleError, DEFAULT_MAX_FREE};
use mixorient::random::random_strongly_orientable;
use report::Report;

#[derive(Parser)]
#[command(name = "mixorient", version, about = "Strong orientations of mixed multigraphs with bounded radius")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph and report its connectivity, bridges and metrics.
    Check {
        /// Graph file; stdin when omitted or "-".
        file: Option<PathBuf>,
    },
    /// Orient a graph within the proven radius bound.
    Orient {
        /// Graph file; stdin when omitted or "-".
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Algorithm::Strong)]
        algorithm: Algorithm,
        /// Write the oriented digraph to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a test instance on stdout.
    Gen(GenArgs),
    /// Exact oriented radius by forcing plus exhaustive sweep.
    Oracle {
        /// Graph file; stdin when omitted or "-".
        file: Option<PathBuf>,
        /// Cap on free edges after forcing.
        #[arg(long, default_value_t = DEFAULT_MAX_FREE)]
        max_free: usize,
    },
    /// Check an orientation file against its source graph.
    Verify {
        graph: PathBuf,
        orientation: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    /// Radius bound 1.5r^2 + r + 1.
    Strong,
    /// Radius bound 1.5r*eta - 0.375(eta-1)(eta-3) - 2r + 1.
    Eta,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Radius parameter of the extremal family.
    #[arg(long)]
    r: Option<usize>,
    /// Vertex count of a random instance.
    #[arg(long)]
    n: Option<usize>,
    /// Fraction of undirected edges in a random instance.
    #[arg(long, default_value_t = 0.5)]
    frac: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Extremal family with oriented radius r^2 + 3r - 1.
    LowerBound,
    /// Seeded random strongly orientable instance.
    Random,
}

enum Failure {
    /// Domain error: exit 1.
    Domain(String),
    /// Usage or parse error: exit 2.
    Usage(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Domain(_) => ExitCode::from(1),
            Failure::Usage(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("mixorient: {}", failure.message());
            failure.code()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Check { file } => check(file.as_deref()),
        Command::Orient {
            file,
            algorithm,
            out,
            report,
        } => orient(file.as_deref(), algorithm, out.as_deref(), report.as_deref()),
        Command::Gen(args) => gen(&args),
        Command::Oracle { file, max_free } => oracle(file.as_deref(), max_free),
        Command::Verify { graph, orientation } => verify(&graph, &orientation),
    }
}

fn read_input(file: Option<&Path>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_input(file: Option<&Path>) -> Result<(MixedMultigraph, String), Failure> {
    let text = read_input(file)?;
    let graph = parse_graph(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((graph, text))
}

fn check(file: Option<&Path>) -> Result<ExitCode, Failure> {
    let (g, text) = parse_input(file)?;
    let mut rep = Report::new("check");
    rep.digest("input_sha256", &text);
    rep.field("vertices", g.vertex_count());
    rep.field("edges", g.edge_count());
    let undirected = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Undirected)
        .count();
    rep.field("undirected_edges", undirected);
    let strong = is_strongly_connected(&g);
    rep.field("strongly_connected", strong);
    rep.field("bridge_count", bridges(&g).len());
    let orientable = is_strongly_orientable(&g);
    rep.field("strongly_orientable", orientable);
    if strong {
        let (radius, centers) = radius_center(&g).expect("strongly connected");
        rep.field("radius", radius);
        rep.field("center", centers.iter().next().unwrap());
        rep.field("diameter", diameter(&g).expect("strongly connected"));
    }
    if orientable && g.edge_count() > 0 {
        rep.field("eta", eta(&g).expect("orientable graphs have covered edges"));
    }
    print!("{}", rep.render());
    Ok(if orientable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn orientation_fields(rep: &mut Report, outcome: &OrientationReport) {
    rep.field("radius_before", outcome.radius_before);
    rep.field("center", outcome.center);
    if let Some(eta) = outcome.eta_used {
        rep.field("eta", eta);
    }
    rep.field("bound", outcome.bound);
    rep.field("bound_floor", outcome.bound.floor() as u64);
    rep.field("radius_after", outcome.radius_after);
    rep.field("phases", outcome.phases.len());
    for p in &outcome.phases {
        let mode = match p.mode {
            PhaseMode::Out => "out",
            PhaseMode::In => "in",
        };
        rep.field(
            &format!("phase_{}", p.phase_index),
            format_args!(
                "mode={mode} center={} captured={} e_out={} e_in={}",
                p.center, p.captured_count, p.e_out, p.e_in
            ),
        );
    }
}

fn orient(
    file: Option<&Path>,
    algorithm: Algorithm,
    out: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let (g, text) = parse_input(file)?;
    let (orientation, outcome) = match algorithm {
        Algorithm::Strong => strong_orientation(&g),
        Algorithm::Eta => strong_orientation_eta(&g),
    }
    .map_err(|e| Failure::Domain(e.to_string()))?;

    let mut rep = Report::new("orient");
    rep.digest("input_sha256", &text);
    rep.field(
        "algorithm",
        match algorithm {
            Algorithm::Strong => "strong",
            Algorithm::Eta => "eta",
        },
    );
    rep.field("vertices", g.vertex_count());
    rep.field("edges", g.edge_count());
    orientation_fields(&mut rep, &outcome);

    if let Some(path) = out {
        fs::write(path, emit_graph(&orientation.apply()))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match report_path {
        Some(path) => fs::write(path, rep.render())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", rep.render()),
    }
    Ok(ExitCode::SUCCESS)
}

fn gen(args: &GenArgs) -> Result<ExitCode, Failure> {
    let graph = match args.family {
        Family::LowerBound => {
            let r = args
                .r
                .ok_or_else(|| Failure::Usage("--family lower-bound needs --r".into()))?;
            if r == 0 {
                return Err(Failure::Usage("--r must be at least 1".into()));
            }
            lower_bound_family(r).graph
        }
        Family::Random => {
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("--family random needs --n".into()))?;
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            if !(0.0..=1.0).contains(&args.frac) {
                return Err(Failure::Usage("--frac must lie in [0, 1]".into()));
            }
            random_strongly_orientable(n, args.frac, args.seed)
        }
    };
    print!("{}", emit_graph(&graph));
    Ok(ExitCode::SUCCESS)
}

fn oracle(file: Option<&Path>, max_free: usize) -> Result<ExitCode, Failure> {
    let (g, text) = parse_input(file)?;
    let res = oriented_radius_exact(&g, max_free).map_err(|e| match e {
        OracleError::TooManyFreeEdges { .. } | OracleError::NotStronglyOrientable
        | OracleError::SelfLoop => Failure::Domain(e.to_string()),
    })?;
    let mut rep = Report::new("oracle");
    rep.digest("input_sha256", &text);
    rep.field("vertices", g.vertex_count());
    rep.field("edges", g.edge_count());
    rep.field("oriented_radius", res.oriented_radius);
    rep.field("forced_edges", res.forced_count);
    rep.field("explored_assignments", res.explored);
    print!("{}", rep.render());
    Ok(ExitCode::SUCCESS)
}

/// Rebuilds the orientation from a fully directed copy of `g`, matching
/// edges by position.
fn orientation_from_digraph(
    g: &MixedMultigraph,
    digraph: &MixedMultigraph,
) -> Result<Orientation, String> {
    if digraph.vertex_count() != g.vertex_count() {
        return Err("vertex counts differ".into());
    }
    if digraph.edge_count() != g.edge_count() {
        return Err("edge counts differ".into());
    }
    let mut heads = std::collections::BTreeMap::new();
    for (source, oriented) in g.edges().iter().zip(digraph.edges()) {
        if oriented.kind != EdgeKind::Directed {
            return Err(format!("edge {} is still undirected", source.id));
        }
        match source.kind {
            EdgeKind::Directed => {
                if oriented.endpoints != source.endpoints {
                    return Err(format!("arc {} was altered", source.id));
                }
            }
            EdgeKind::Undirected => {
                let (t, h) = oriented.endpoints;
                if (t, h) != source.endpoints && (h, t) != source.endpoints {
                    return Err(format!("edge {} changed endpoints", source.id));
                }
                heads.insert(source.id, h);
            }
        }
    }
    Ok(Orientation {
        source: g.clone(),
        heads,
    })
}

fn verify(graph_path: &Path, orientation_path: &Path) -> Result<ExitCode, Failure> {
    let (g, graph_text) = parse_input(Some(graph_path))?;
    let (digraph, orientation_text) = parse_input(Some(orientation_path))?;
    let mut rep = Report::new("verify");
    rep.digest("graph_sha256", &graph_text);
    rep.digest("orientation_sha256", &orientation_text);
    let orientation = match orientation_from_digraph(&g, &digraph) {
        Ok(o) => o,
        Err(why) => {
            rep.field("source_match", false);
            rep.field("reason", why);
            rep.field("valid", false);
            print!("{}", rep.render());
            return Ok(ExitCode::from(1));
        }
    };
    rep.field("source_match", true);
    let check = verify_orientation(&g, &orientation)
        .map_err(|e| Failure::Domain(e.to_string()))?;
    rep.field("total", check.total);
    rep.field("strong", check.strong);
    if let Some(radius) = check.radius {
        rep.field("radius", radius);
    }
    if let Some(diam) = check.diameter {
        rep.field("diameter", diam);
    }
    if let Ok((source_radius, _)) = radius_center(&g) {
        rep.field("radius_bound", radius_bound(source_radius));
    }
    if let Ok(source_diameter) = diameter(&g) {
        rep.field("diameter_bound", diameter_bound(source_diameter));
    }
    if let Some(ok) = check.radius_within_bound {
        rep.field("radius_within_bound", ok);
    }
    if let Some(ok) = check.diameter_within_bound {
        rep.field("diameter_within_bound", ok);
    }
    rep.field("valid", check.valid);
    print!("{}", rep.render());
    Ok(if check.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
