//! The `kltl` command line.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cosetdiag::{initial_diagram, CosetDiagram};
use crate::coxeter::{enumerate_cosets, parse_word, word_to_string, BruhatGraph, Family, Move, PairSpec};
use crate::error::{Error, Result};
use crate::heaps::{is_strongly_fc, tangle_from_word};
use crate::pathdelta::{enumerate_paths, kl_matrices, reduced_endpoint};
use crate::render::{matrix_ascii, matrix_csv, matrix_json, matrix_latex, tangle_ascii, tangle_json, tangle_svg};
use crate::tangles::{closed_kl_matrices, cup_diagram, diagram_degree, diagrams_by_id, orient, Tangle};
use crate::verify::{run_suite, SUITES};
use crate::{Integer, KLMatrices, Matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kltl",
    version,
    about = "Anti-spherical Kazhdan-Lusztig polynomials for Hermitian symmetric pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the supported pairs up to a rank.
    Pairs {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Minimal coset representatives, maximal first.
    Cosets(PairArgs),
    /// Covering relations of the Bruhat graph.
    Graph(PairArgs),
    /// The matrix Δ.
    Delta(MatrixArgs),
    /// Δ together with its factors N and B.
    Factor(MatrixArgs),
    /// The cup diagram of a coset.
    Cup {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        coset: String,
    },
    /// Degree of the cup diagram of `mu` oriented by `coset`, or NONE.
    Orient {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        coset: String,
        #[arg(long)]
        mu: String,
    },
    /// Paths of weight the canonical word of `mu` ending at `lambda`.
    Paths {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Run acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Draw the tangle of a word, or the cup diagram of `mu` under `coset`.
    Render {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, conflicts_with_all = ["coset", "mu"], required_unless_present = "coset")]
        word: Option<String>,
        #[arg(long)]
        coset: Option<String>,
        #[arg(long, requires = "coset")]
        mu: Option<String>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Pair such as A:3:2, B:4, C:3, DA:5, DD:4, E6D5, E7E6.
    pair: String,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value_t = Route::Paths)]
    route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Paths,
    Tangles,
}

impl Route {
    fn name(self) -> &'static str {
        match self {
            Route::Paths => "paths",
            Route::Tangles => "tangles",
        }
    }
}

enum Failure {
    Usage(String),
    Verify(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parse `argv` (program name first), run the verb, and write its output.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (text, code) = match execute(cli.command) {
        Ok(s) => (s, EXIT_OK),
        Err(Failure::Verify(text)) => (text, EXIT_VERIFY),
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            (String::new(), EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            let code = if matches!(e, Error::Invariant(_)) {
                EXIT_INVARIANT
            } else {
                EXIT_USAGE
            };
            (String::new(), code)
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn need(format: Format, allowed: &[Format], verb: &str) -> std::result::Result<(), Failure> {
    if allowed.contains(&format) {
        return Ok(());
    }
    let names: Vec<String> = allowed.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
    Err(Failure::Usage(format!(
        "{verb} does not support --format {}; use one of {}",
        format!("{format:?}").to_lowercase(),
        names.join(", ")
    )))
}

fn parse_pair(s: &str) -> std::result::Result<PairSpec, Failure> {
    s.parse::<PairSpec>().map_err(|e| Failure::Usage(e.to_string()))
}

fn pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn execute(cmd: Command) -> Outcome {
    use Format::*;
    match cmd {
        Command::Pairs { max_rank, format } => {
            need(format, &[Json, Csv, Ascii], "pairs")?;
            pairs(max_rank, format)
        }
        Command::Cosets(p) => {
            need(p.format, &[Json, Csv, Ascii], "cosets")?;
            cosets(&parse_pair(&p.pair)?, p.format)
        }
        Command::Graph(p) => {
            need(p.format, &[Json, Csv, Ascii], "graph")?;
            graph(&parse_pair(&p.pair)?, p.format)
        }
        Command::Delta(m) => {
            need(m.pair.format, &[Json, Csv, Latex, Ascii], "delta")?;
            matrices(&parse_pair(&m.pair.pair)?, m.route, m.pair.format, false)
        }
        Command::Factor(m) => {
            need(m.pair.format, &[Json, Csv, Latex, Ascii], "factor")?;
            matrices(&parse_pair(&m.pair.pair)?, m.route, m.pair.format, true)
        }
        Command::Cup { pair, coset } => {
            need(pair.format, &[Json, Ascii, Svg], "cup")?;
            let spec = parse_pair(&pair.pair)?;
            let model = DiagramModel::new(&spec)?;
            let mu = model.diagram(&coset)?;
            let cup = cup_diagram(&mu)?;
            Ok(draw(&cup, Some(&mu), Some(&model.bottom), pair.format))
        }
        Command::Orient { pair, coset, mu } => {
            need(pair.format, &[Json, Ascii], "orient")?;
            let spec = parse_pair(&pair.pair)?;
            let model = DiagramModel::new(&spec)?;
            let (lam, mu) = (model.diagram(&coset)?, model.diagram(&mu)?);
            let degree = orient(&cup_diagram(&mu)?, &lam, &model.bottom).map(|o| diagram_degree(&o));
            Ok(match pair.format {
                Json => pretty_json(&json!({"lambda": lam.to_string(), "mu": mu.to_string(), "degree": degree})),
                _ => degree.map_or("NONE\n".into(), |d| format!("{d}\n")),
            })
        }
        Command::Paths { pair, lambda, mu } => {
            need(pair.format, &[Json, Csv, Ascii], "paths")?;
            paths(&parse_pair(&pair.pair)?, &lambda, &mu, pair.format)
        }
        Command::Verify { suite } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let outcomes = run_suite(&suite)?;
            let mut text = String::new();
            for o in &outcomes {
                let _ = writeln!(text, "{o}");
            }
            if outcomes.iter().all(|o| o.passed) {
                Ok(text)
            } else {
                Err(Failure::Verify(text))
            }
        }
        Command::Render { pair, word, coset, mu } => {
            need(pair.format, &[Json, Ascii, Svg], "render")?;
            let spec = parse_pair(&pair.pair)?;
            let model = DiagramModel::new(&spec)?;
            match (word, coset) {
                (Some(w), _) => {
                    let w = parse_word(&w).map_err(|e| Failure::Usage(e.to_string()))?;
                    let cartan = crate::coxeter::cartan_data(&spec)?;
                    if !is_strongly_fc(&w, &cartan)? {
                        return Err(Failure::Usage(format!(
                            "{} is not strongly fully commutative",
                            word_to_string(&w)
                        )));
                    }
                    let t = tangle_from_word(&w, &spec)?;
                    Ok(draw(&t, None, None, pair.format))
                }
                (None, Some(c)) => {
                    let lam = model.diagram(&c)?;
                    let mu = match mu {
                        Some(m) => model.diagram(&m)?,
                        None => lam.clone(),
                    };
                    let cup = cup_diagram(&mu)?;
                    if orient(&cup, &lam, &model.bottom).is_none() {
                        return Err(Failure::Usage(format!("{lam} does not orient the cup diagram of {mu}")));
                    }
                    Ok(draw(&cup, Some(&lam), Some(&model.bottom), pair.format))
                }
                (None, None) => Err(Failure::Usage("render needs --word or --coset".into())),
            }
        }
    }
}

fn draw(t: &Tangle, top: Option<&CosetDiagram>, bottom: Option<&CosetDiagram>, format: Format) -> String {
    match format {
        Format::Svg => tangle_svg(t, top, bottom),
        Format::Json => pretty_json(&tangle_json(t, top, bottom)),
        _ => tangle_ascii(t, top, bottom),
    }
}

/// Coset diagrams of a classical pair, with the identity coset's diagram.
struct DiagramModel {
    graph: BruhatGraph,
    diagrams: Vec<CosetDiagram>,
    bottom: CosetDiagram,
}

impl DiagramModel {
    fn new(spec: &PairSpec) -> std::result::Result<Self, Failure> {
        if !matches!(spec.family, Family::A | Family::C | Family::DA) {
            return Err(Failure::Usage(format!(
                "{spec} has no cup diagrams; use an A, C or DA pair"
            )));
        }
        let graph = enumerate_cosets(spec)?;
        let (_, diagrams) = diagrams_by_id(spec)?;
        Ok(DiagramModel {
            graph,
            diagrams,
            bottom: initial_diagram(spec)?,
        })
    }

    fn diagram(&self, s: &str) -> std::result::Result<CosetDiagram, Failure> {
        let id = resolve(&self.graph, Some(&self.diagrams), s)?;
        Ok(self.diagrams[id].clone())
    }
}

fn is_diagram_text(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| "^vo∧∨∘".contains(c))
}

/// A coset given as a diagram string (`o^vv`) or a reduced word (`s1's2`).
fn resolve(graph: &BruhatGraph, diagrams: Option<&[CosetDiagram]>, s: &str) -> std::result::Result<usize, Failure> {
    let s = s.trim();
    if is_diagram_text(s) {
        let Some(diagrams) = diagrams else {
            return Err(Failure::Usage(format!(
                "{s:?}: this pair has no coset diagrams; give a word"
            )));
        };
        let d = CosetDiagram::parse(s, diagrams[0].kind).map_err(|e| Failure::Usage(e.to_string()))?;
        return diagrams
            .iter()
            .position(|x| *x == d)
            .ok_or_else(|| Failure::Usage(format!("{s:?} is not a coset diagram of this pair")));
    }
    let word = parse_word(s).map_err(|e| Failure::Usage(e.to_string()))?;
    let idx: Vec<usize> = word
        .iter()
        .map(|&v| graph.node_index(v))
        .collect::<Result<_>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    reduced_endpoint(graph, &idx).map_err(|e| Failure::Usage(e.to_string()))
}

fn pairs(max_rank: usize, format: Format) -> Outcome {
    let mut specs = Vec::new();
    for n in 1..=max_rank {
        for k in 1..=n {
            specs.push(PairSpec::a(n, k));
        }
        specs.extend([PairSpec::b(n), PairSpec::c(n), PairSpec::da(n), PairSpec::dd(n)]);
    }
    specs.extend([PairSpec::e6(), PairSpec::e7()]);
    let rows: Vec<(String, usize, usize, bool)> = specs
        .into_iter()
        .filter(|s| s.validate().is_ok() && s.rank <= max_rank)
        .map(|s| (s.to_string(), s.rank, s.coset_count(), s.is_classical()))
        .collect();
    Ok(match format {
        Format::Json => pretty_json(&Value::Array(
            rows.iter()
                .map(|(p, r, c, d)| json!({"pair": p, "rank": r, "cosets": c, "diagrams": d}))
                .collect(),
        )),
        Format::Csv => {
            let mut s = String::from("pair,rank,cosets,diagrams\n");
            for (p, r, c, d) in &rows {
                let _ = writeln!(s, "{p},{r},{c},{d}");
            }
            s
        }
        _ => {
            let mut s = String::new();
            for (p, r, c, d) in &rows {
                let _ = writeln!(
                    s,
                    "{p:<8} rank {r:<2} {c:>4} cosets{}",
                    if *d { "  (diagrams)" } else { "" }
                );
            }
            s
        }
    })
}

fn cosets(spec: &PairSpec, format: Format) -> Outcome {
    let g = enumerate_cosets(spec)?;
    let diagrams = if spec.is_classical() {
        Some(diagrams_by_id(spec)?.1)
    } else {
        None
    };
    let rows: Vec<(usize, usize, String, Option<String>)> = g
        .order()
        .iter()
        .map(|&id| {
            let st = &g.states[id];
            (
                id,
                st.length,
                word_to_string(&st.word),
                diagrams.as_ref().map(|d| d[id].to_string()),
            )
        })
        .collect();
    Ok(match format {
        Format::Json => pretty_json(&json!({
            "pair": spec.to_string(),
            "cosets": rows.iter().map(|(id, len, w, d)| {
                let st = &g.states[*id];
                json!({
                    "id": id,
                    "length": len,
                    "word": st.word.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "label": w,
                    "diagram": d,
                    "weight": st.vector(),
                })
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("id,length,word,diagram\n");
            for (id, len, w, d) in &rows {
                let _ = writeln!(s, "{id},{len},{w},{}", d.as_deref().unwrap_or(""));
            }
            s
        }
        _ => {
            let mut s = String::new();
            for (id, len, w, d) in &rows {
                let _ = writeln!(
                    s,
                    "{id:>4} {len:>3}  {w}{}",
                    d.as_ref().map(|d| format!("  {d}")).unwrap_or_default()
                );
            }
            s
        }
    })
}

fn graph(spec: &PairSpec, format: Format) -> Outcome {
    let g = enumerate_cosets(spec)?;
    let mut edges = Vec::new();
    for &id in g.order().iter().rev() {
        for (i, &node) in g.nodes.iter().enumerate() {
            if let Move::Up(t) = g.step(id, i) {
                edges.push((id, node, t));
            }
        }
    }
    Ok(match format {
        Format::Json => pretty_json(&json!({
            "pair": spec.to_string(),
            "cosets": g.order().iter().map(|&id| g.label(id)).collect::<Vec<_>>(),
            "edges": edges.iter().map(|(a, v, b)| json!({"from": g.label(*a), "node": v.to_string(), "to": g.label(*b)})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("from,node,to\n");
            for (a, v, b) in &edges {
                let _ = writeln!(s, "{},{v},{}", g.label(*a), g.label(*b));
            }
            s
        }
        _ => {
            let mut s = String::new();
            for (a, v, b) in &edges {
                let _ = writeln!(s, "{} --{v}--> {}", g.label(*a), g.label(*b));
            }
            s
        }
    })
}

fn compute(spec: &PairSpec, route: Route) -> std::result::Result<(BruhatGraph, KLMatrices), Failure> {
    let g = enumerate_cosets(spec)?;
    let m = match route {
        Route::Paths => kl_matrices::<Integer>(&g)?,
        Route::Tangles => {
            if !matches!(spec.family, Family::A | Family::C | Family::DA) {
                return Err(Failure::Usage(format!("{spec} has no cup diagrams; use --route paths")));
            }
            closed_kl_matrices(spec)?
        }
    };
    m.check()?;
    Ok((g, m))
}

fn matrices(spec: &PairSpec, route: Route, format: Format, factors: bool) -> Outcome {
    let (g, m) = compute(spec, route)?;
    let labels: Vec<String> = m.order.iter().map(|&id| g.label(id)).collect();
    let named: Vec<(&str, &str, &Matrix)> = if factors {
        vec![
            ("delta", "\\Delta", &m.delta),
            ("n", "N", &m.n_mat),
            ("b", "B", &m.b_mat),
        ]
    } else {
        vec![("delta", "\\Delta", &m.delta)]
    };
    Ok(match format {
        Format::Json => {
            let mut v = json!({
                "pair": spec.to_string(),
                "route": route.name(),
                "cosets": labels,
                "words": m.order.iter().map(|&id| g.states[id].word.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            for (key, _, mat) in &named {
                v[*key] = matrix_json(mat);
            }
            pretty_json(&v)
        }
        Format::Latex => named
            .iter()
            .map(|(_, tex, mat)| matrix_latex(tex, &labels, mat))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => named
            .iter()
            .map(|(key, _, mat)| format!("# {key}\n{}", matrix_csv(&labels, mat)))
            .collect::<Vec<_>>()
            .join("\n"),
        _ => named
            .iter()
            .map(|(_, tex, mat)| matrix_ascii(tex.trim_start_matches('\\'), &labels, mat))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn paths(spec: &PairSpec, lambda: &str, mu: &str, format: Format) -> Outcome {
    spec.check_rank_guard()?;
    let g = enumerate_cosets(spec)?;
    let diagrams = if spec.is_classical() {
        Some(diagrams_by_id(spec)?.1)
    } else {
        None
    };
    let lam = resolve(&g, diagrams.as_deref(), lambda)?;
    let mu = resolve(&g, diagrams.as_deref(), mu)?;
    let word = g.word_indices(mu);
    let records = enumerate_paths(&g, lam, &word)?;
    let step_text = |&(a, v, b): &(usize, crate::coxeter::Node, usize)| {
        if a == b {
            format!("{} ={v}= {}", g.label(a), g.label(b))
        } else {
            format!("{} -{v}- {}", g.label(a), g.label(b))
        }
    };
    Ok(match format {
        Format::Json => pretty_json(&json!({
            "pair": spec.to_string(),
            "lambda": g.label(lam),
            "mu": g.label(mu),
            "weight": g.canonical_word(mu).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "paths": records.iter().map(|r| json!({
                "degree": r.degree,
                "shape": g.label(r.shape),
                "steps": r.steps.iter().map(|&(a, v, b)| json!({"from": g.label(a), "node": v.to_string(), "to": g.label(b)})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("path,degree,steps\n");
            for (k, r) in records.iter().enumerate() {
                let steps: Vec<String> = r.steps.iter().map(step_text).collect();
                let _ = writeln!(s, "{k},{},\"{}\"", r.degree, steps.join("; "));
            }
            s
        }
        _ => {
            let mut s = format!(
                "{} paths of weight {} ending at {}\n",
                records.len(),
                word_to_string(g.canonical_word(mu)),
                g.label(lam)
            );
            for r in &records {
                let steps: Vec<String> = r.steps.iter().map(step_text).collect();
                let _ = writeln!(s, "deg {:>2}: {}", r.degree, steps.join(", "));
            }
            s
        }
    })
}
