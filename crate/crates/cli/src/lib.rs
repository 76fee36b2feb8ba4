//! Command-line front end. `run` does the work so tests can drive it
//! in-process; the binary only forwards its arguments and exit code.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use knotplate::catalog;
use knotplate::diagram::{parse_pd, Diagram, DiagramError, OuterFace};
use knotplate::fundgroup::{
    abelianization, certify_presentation, complexity, tietze_simplify, wirtinger_presentation, FundGroupError,
    Presentation, TietzeLimits, TreePolicy, Verdict,
};
use knotplate::scan::{scan_assignments, ScanOptions};
use knotplate::template::{build_mesh, export_obj, layout, MeshParams, TemplateComplex};
use knotplate::Analysis;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "knotplate",
    version,
    about = "Knotspace templates and template presentations of knot diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crossings, components, exterior and bigon counts, graph and template counts.
    Info(Common),
    /// Medial, upper and lower graphs.
    Graphs {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Raw template presentation.
    Present(Common),
    /// Wirtinger presentation.
    Wirtinger(Common),
    /// Tietze cascade on the template (or Wirtinger) presentation.
    Simplify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        wirtinger: bool,
    },
    /// Geometric mean of the raw relator lengths.
    Complexity(Common),
    /// Try to certify that a knot diagram is the unknot.
    Certify(Common),
    /// Polygon mesh of the template complex.
    Mesh {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// List the built-in fixtures, or print one as PD code.
    Catalog {
        /// Fixture to print.
        name: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every over/under assignment of a shadow, with complexity and verdict.
    ScanAssignments(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Built-in diagram.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    fixture: Option<String>,
    /// PD code file, or `-` for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Outer face: `longest` or a face index.
    #[arg(long, default_value = "longest")]
    outer: String,
    /// Spanning tree policy: `quadrant` or `bfs`.
    #[arg(long, default_value = "quadrant")]
    tree: String,
    /// Quadrant shift or BFS root of the spanning tree.
    #[arg(long, default_value_t = 0)]
    seed: usize,
    /// Total relator length budget for the Tietze cascade.
    #[arg(long, default_value_t = 1_000_000)]
    max_letters: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MeshArgs {
    #[arg(long, default_value_t = 1.0)]
    height: f64,
    /// Defaults to 0.15 of the shortest quadrant edge.
    #[arg(long)]
    saddle_radius: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    ring_radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Obj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Medial,
    Upper,
    Lower,
    All,
}

/// Failure with its exit code.
struct Fail {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl ToString) -> Fail {
    Fail {
        code,
        message: message.to_string(),
    }
}

fn group_fail(e: FundGroupError) -> Fail {
    fail(EXIT_INVALID, e)
}

/// What a command produced: output text and exit code.
struct Done {
    text: String,
    code: i32,
}

impl From<String> for Done {
    fn from(text: String) -> Self {
        Done { text, code: EXIT_OK }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Info(c)
        | Command::Present(c)
        | Command::Wirtinger(c)
        | Command::Complexity(c)
        | Command::Certify(c) => c.out.clone(),
        Command::ScanAssignments(c) => c.out.clone(),
        Command::Graphs { common, .. } | Command::Simplify { common, .. } | Command::Mesh { common, .. } => {
            common.out.clone()
        }
        Command::Catalog { out, .. } => out.clone(),
    };
    match dispatch(&cli.command) {
        Ok(done) => {
            let written = match out_path {
                Some(p) => fs::write(&p, &done.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(done.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => done.code,
                Err(m) => {
                    let _ = writeln!(stderr, "error: {m}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(c: &Common) -> Result<Diagram, Fail> {
    let d = match (&c.fixture, &c.input) {
        (Some(name), _) => catalog::fixture(name)
            .ok_or_else(|| {
                let names: Vec<&str> = catalog::fixtures().iter().map(|f| f.name).collect();
                fail(
                    EXIT_USAGE,
                    format!("unknown fixture '{name}' (known: {})", names.join(", ")),
                )
            })?
            .diagram(),
        (None, Some(path)) => {
            let text = if path.as_os_str() == "-" {
                io::read_to_string(io::stdin()).map_err(|e| fail(EXIT_USAGE, e))?
            } else {
                fs::read_to_string(path)
                    .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?
            };
            parse_pd(&text).map_err(|e| fail(EXIT_INVALID, e))?
        }
        (None, None) => return Err(fail(EXIT_USAGE, "give --fixture or --input")),
    };
    d.ensure_valid().map_err(|e| fail(EXIT_INVALID, e))?;
    Ok(d)
}

fn outer(c: &Common) -> Result<OuterFace, Fail> {
    match c.outer.as_str() {
        "longest" => Ok(OuterFace::Longest),
        s => s.parse().map(OuterFace::Index).map_err(|_| {
            fail(
                EXIT_USAGE,
                format!("--outer expects 'longest' or a face index, got '{s}'"),
            )
        }),
    }
}

fn policy(c: &Common) -> Result<TreePolicy, Fail> {
    let p: TreePolicy = c.tree.parse().map_err(|e: String| fail(EXIT_USAGE, e))?;
    Ok(p.with_seed(c.seed))
}

fn limits(c: &Common) -> TietzeLimits {
    TietzeLimits {
        max_letters: c.max_letters,
        ..TietzeLimits::default()
    }
}

fn analyse(c: &Common) -> Result<Analysis, Fail> {
    let d = load(c)?;
    Analysis::new(&d, outer(c)?, policy(c)?).map_err(|e| match e {
        // the diagram is fine, the --outer argument is not
        DiagramError::FaceIndex { .. } => fail(EXIT_USAGE, e),
        _ => fail(EXIT_INVALID, e),
    })
}

fn formats(c: &Common, allowed: &[Format]) -> Result<Format, Fail> {
    if allowed.contains(&c.format) {
        Ok(c.format)
    } else {
        Err(fail(
            EXIT_USAGE,
            format!("format {:?} is not available here", c.format).to_lowercase(),
        ))
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command) -> Result<Done, Fail> {
    use Format::*;
    match cmd {
        Command::Info(c) => {
            let f = formats(c, &[Text, Json])?;
            let a = analyse(c)?;
            Ok(info(&a, f).into())
        }
        Command::Graphs { common, which } => {
            let f = formats(common, &[Dot, Json, Text])?;
            let a = analyse(common)?;
            Ok(graphs(&a, *which, f).into())
        }
        Command::Present(c) => {
            let f = formats(c, &[Text, Json])?;
            let a = analyse(c)?;
            Ok(presentation_out(&a.presentation, f).into())
        }
        Command::Wirtinger(c) => {
            let f = formats(c, &[Text, Json])?;
            let p = wirtinger_presentation(&load(c)?).map_err(group_fail)?;
            Ok(presentation_out(&p, f).into())
        }
        Command::Simplify { common, wirtinger } => {
            let f = formats(common, &[Text, Json])?;
            let p = if *wirtinger {
                wirtinger_presentation(&load(common)?).map_err(group_fail)?
            } else {
                analyse(common)?.presentation
            };
            let s = tietze_simplify(&p, limits(common));
            let text = match f {
                Json => pretty(&json!({
                    "final": s.is_final,
                    "presentation": s.presentation.to_json(),
                    "steps": s.steps,
                    "abelianization": abelianization(&s.presentation),
                })),
                _ => {
                    let mut t = s.presentation.to_text();
                    if !s.is_final {
                        t.push_str("# budget exhausted before a fixpoint\n");
                    }
                    t
                }
            };
            Ok(Done {
                text,
                code: if s.is_final { EXIT_OK } else { EXIT_BUDGET },
            })
        }
        Command::Complexity(c) => {
            let f = formats(c, &[Text, Json])?;
            let a = analyse(c)?;
            let r = complexity(&a.presentation).map_err(group_fail)?;
            Ok(match f {
                Json => pretty(&serde_json::to_value(&r).unwrap()),
                _ => format!("{:.3}\n", r.geometric_mean),
            }
            .into())
        }
        Command::Certify(c) => {
            let f = formats(c, &[Text, Json])?;
            let a = analyse(c)?;
            let components = a.diagram.component_count();
            if components != 1 {
                return Err(group_fail(FundGroupError::NotAKnot { components }));
            }
            let (v, s) = certify_presentation(&a.presentation, limits(c));
            let exhausted = matches!(
                v,
                Verdict::Inconclusive {
                    budget_exhausted: true,
                    ..
                }
            );
            let text = match (f, &v) {
                (Json, _) => pretty(&json!({
                    "verdict": v,
                    "final_presentation": s.presentation.to_json(),
                })),
                (_, Verdict::Certified) => "CERTIFIED: pi1 = Z\n".to_string(),
                (
                    _,
                    Verdict::Inconclusive {
                        generators,
                        relators,
                        budget_exhausted,
                    },
                ) => format!(
                    "INCONCLUSIVE: stopped at {generators} generator(s), {relators} relator(s){}\n",
                    if *budget_exhausted { " (budget exhausted)" } else { "" }
                ),
            };
            Ok(Done {
                text,
                code: if exhausted { EXIT_BUDGET } else { EXIT_OK },
            })
        }
        Command::Mesh { common, mesh } => {
            let f = match common.format {
                Text | Obj => Obj,
                Json => Json,
                Dot => return Err(fail(EXIT_USAGE, "format dot is not available here")),
            };
            let a = analyse(common)?;
            let tc = TemplateComplex::from_analysis(&a).map_err(|e| fail(EXIT_INVALID, e))?;
            let l = layout(&a.medial).map_err(|e| fail(EXIT_INVALID, e))?;
            let params = MeshParams {
                height: mesh.height,
                saddle_radius: mesh.saddle_radius,
                ring_radius: mesh.ring_radius,
            };
            let m = build_mesh(&a.medial, &tc, &l, &params).map_err(|e| fail(EXIT_USAGE, e))?;
            Ok(match f {
                Json => pretty(&json!({ "complex": tc.to_json(), "mesh": m.to_json() })),
                _ => export_obj(&m),
            }
            .into())
        }
        Command::Catalog { name, format, .. } => catalog_out(name.as_deref(), *format),
        Command::ScanAssignments(c) => {
            let f = formats(c, &[Text, Json])?;
            let d = load(c)?;
            let opts = ScanOptions {
                outer: outer(c)?,
                policy: policy(c)?,
                limits: limits(c),
            };
            let rows = scan_assignments(&d, &opts).map_err(|e| fail(EXIT_INVALID, e))?;
            Ok(match f {
                Json => pretty(&serde_json::to_value(&rows).unwrap()),
                _ => {
                    let width = d.crossing_count().max(4);
                    let mut t = format!(
                        "{:<w$}  alt  mu  complexity  mean   verdict       lengths\n",
                        "mask",
                        w = width
                    );
                    for r in &rows {
                        let verdict = match &r.verdict {
                            None => "link".to_string(),
                            Some(Verdict::Certified) => "certified".to_string(),
                            Some(Verdict::Inconclusive { .. }) => "inconclusive".to_string(),
                        };
                        t.push_str(&format!(
                            "{:0w$b}  {:<3}  {:<2}  {:<10}  {:<5}  {:<12}  {:?}\n",
                            r.mask,
                            if r.alternating { "yes" } else { "no" },
                            r.components,
                            format!("{:.3}{}", r.complexity, if r.maximal { " *" } else { "" }),
                            format!("{:.3}", r.arithmetic_mean),
                            verdict,
                            r.lengths,
                            w = width
                        ));
                    }
                    t.push_str("* maximal complexity\n");
                    t
                }
            }
            .into())
        }
    }
}

fn info(a: &Analysis, f: Format) -> String {
    let d = &a.diagram;
    let c = a.crossing_count();
    let mu = d.component_count();
    let mc = a.medial.counts();
    let tc = TemplateComplex::from_analysis(a);
    let ab = abelianization(&a.presentation);
    if f == Format::Json {
        return pretty(&json!({
            "crossings": c,
            "components": mu,
            "exterior": a.exterior(),
            "bigons": a.bigons(),
            "alternating": d.is_alternating(),
            "signs": d.crossing_signs().ok(),
            "medial": mc,
            "upper": { "faces": a.upper.faces.len(), "components": a.upper.components },
            "lower": { "faces": a.lower.faces.len(), "components": a.lower.components },
            "presentation": { "generators": a.presentation.generator_count(), "relators": a.presentation.relator_count() },
            "abelianization": ab,
            "template": tc.as_ref().ok().map(|t| t.counts()),
        }));
    }
    let mut t = String::new();
    t.push_str(&format!("crossings C        {c}\n"));
    t.push_str(&format!("components mu      {mu}\n"));
    t.push_str(&format!("exterior E         {}\n", a.exterior()));
    t.push_str(&format!("bigons T           {}\n", a.bigons()));
    t.push_str(&format!(
        "alternating        {}\n",
        if d.is_alternating() { "yes" } else { "no" }
    ));
    t.push_str(&format!(
        "medial graph       {} vertices, {} edges, cycle rank {}\n",
        mc.vertices, mc.edges, mc.cycle_rank
    ));
    for g in [&a.upper, &a.lower] {
        t.push_str(&format!(
            "{:<18} {} bounded faces, {} component{}\n",
            format!("{:?} graph", g.side).to_lowercase(),
            g.faces.len(),
            g.components,
            if g.components == 1 { "" } else { "s" }
        ));
    }
    t.push_str(&format!(
        "presentation       {} generators, {} relators, abelianization {ab}\n",
        a.presentation.generator_count(),
        a.presentation.relator_count()
    ));
    match tc {
        Ok(tc) => {
            let k = tc.counts();
            t.push_str(&format!(
                "template           {} internal walls, {} ring walls, {} saddle pieces, {} lid facets\n",
                k.internal_walls, k.ring_walls, k.saddles, k.lid_facets
            ));
            t.push_str(&format!(
                "polygons           {} ({} four-sided; 11C + E = {}, 12C = {})\n",
                k.polygons,
                k.four_sided,
                11 * c + a.exterior(),
                12 * c
            ));
            t.push_str(&format!(
                "cells              V = {}, E = {}, F = {}, chi = {}\n",
                k.vertices, k.edges, k.polygons, k.euler_characteristic
            ));
            t.push_str(&format!(
                "edge incidences    {} sides, {} subdivided (64C = {})\n",
                k.side_incidences,
                k.edge_incidences,
                64 * c
            ));
            t.push_str(&format!("lid facet edges    {:.3} on average\n", k.lid_edge_average));
        }
        Err(e) => t.push_str(&format!("template           unavailable: {e}\n")),
    }
    t
}

fn graphs(a: &Analysis, which: Which, f: Format) -> String {
    let m = &a.medial;
    if f == Format::Json {
        let mut v = serde_json::Map::new();
        if matches!(which, Which::Medial | Which::All) {
            v.insert("medial".into(), m.to_json());
        }
        if matches!(which, Which::Upper | Which::All) {
            v.insert("upper".into(), a.upper.to_json());
        }
        if matches!(which, Which::Lower | Which::All) {
            v.insert("lower".into(), a.lower.to_json());
        }
        return pretty(&serde_json::Value::Object(v));
    }
    let mut t = String::new();
    if matches!(which, Which::Medial | Which::All) {
        t.push_str(&m.to_dot());
    }
    if matches!(which, Which::Upper | Which::All) {
        t.push_str(&a.upper.to_dot(m));
    }
    if matches!(which, Which::Lower | Which::All) {
        t.push_str(&a.lower.to_dot(m));
    }
    t
}

fn presentation_out(p: &Presentation, f: Format) -> String {
    match f {
        Format::Json => pretty(&p.to_json()),
        _ => p.to_text(),
    }
}

fn catalog_out(name: Option<&str>, f: Format) -> Result<Done, Fail> {
    let all = catalog::fixtures();
    match name {
        Some(n) => {
            let fx = all
                .into_iter()
                .find(|x| x.name == n)
                .ok_or_else(|| fail(EXIT_USAGE, format!("unknown fixture '{n}'")))?;
            Ok(match f {
                Format::Json => pretty(&serde_json::to_value(&fx).unwrap()),
                _ => format!("{}\n", fx.pd),
            }
            .into())
        }
        None => Ok(match f {
            Format::Json => pretty(&serde_json::to_value(&all).unwrap()),
            _ => {
                let mut t = String::new();
                for x in &all {
                    let d = x.diagram();
                    t.push_str(&format!(
                        "{:<20} C={:<2} mu={}  {}\n",
                        x.name,
                        d.crossing_count(),
                        x.components,
                        x.description
                    ));
                }
                t
            }
        }
        .into()),
    }
}
