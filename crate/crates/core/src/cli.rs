//! `pbrigid` command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success; `classify`: rigid |
//! | 1 | `classify`: not rigid |
//! | 2 | `classify`: conjecturally rigid |
//! | 64 | usage or parse error |
//! | 65 | input outside the supported domain (cotype, malformed graph, ...) |
//! | 66 | input file cannot be read |
//! | 70 | `verify-paper`: a check failed |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::{self, ExponentTuple, GammaClass};
use crate::battery;
use crate::classify::{self, FanoCitation};
use crate::dualgraph::{self, ContractionRecord, CurveAnnotation, IntersectionGraph};
use crate::error::Error;
use crate::geometry::{self, SurfaceReport};
use crate::symb::{self, Homogeneity, Nilpotency, Witness};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CHECK_FAILED: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "pbrigid", version, about = "Rigidity of Pham-Brieskorn rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide rigidity of B_S for an exponent tuple S.
    Classify {
        /// Exponents, e.g. `2 3 5 30` or `2,3,5,30`.
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        /// Print the proof trace.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// List tuples of a class, canonically sorted.
    Enumerate {
        /// Number of variables minus one.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "gamma-minus")]
        class: ClassArg,
        /// Largest entry; required except for the complete n = 3 Γ⁻ list.
        #[arg(long)]
        max: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Singularities, intersection numbers and resolution of Proj B_S.
    Geometry {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long, conflicts_with_all = ["dot", "graph"])]
        json: bool,
        /// Emit the resolution graph in DOT.
        #[arg(long, conflicts_with = "graph")]
        dot: bool,
        /// Emit the resolution graph as graph JSON (input for `contract`).
        #[arg(long)]
        graph: bool,
    },
    /// Blow down (-1)-curves in a graph JSON file.
    Contract {
        #[arg(long)]
        input: PathBuf,
        /// Contract canonically until no isolated (-1)-curve remains (default).
        #[arg(long, conflicts_with = "order")]
        auto: bool,
        /// Comma-separated curve names to contract in order.
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Emit the final graph in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Run the regression battery of published values.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Print and certify the non-rigidity witness for S.
    Witness {
        #[arg(required = true, num_args = 1..)]
        tuple: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    GammaMinus,
    GammaPlus,
    Gamma,
    NotInGamma,
}

impl From<ClassArg> for GammaClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::GammaMinus => GammaClass::GammaMinus,
            ClassArg::GammaPlus => GammaClass::GammaPlus,
            ClassArg::Gamma => GammaClass::GammaOnly,
            ClassArg::NotInGamma => GammaClass::NotInGamma,
        }
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TupleTooShort(_)
            | Error::NonPositiveEntry(_)
            | Error::Parse(_)
            | Error::UnsupportedDimension(_)
            | Error::MissingBound(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "pbrigid: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Classify { tuple, trace, json } => cmd_classify(&tuple, trace, json),
        Command::Enumerate { n, class, max, json } => cmd_enumerate(n, class, max, json),
        Command::Geometry { tuple, json, dot, graph } => cmd_geometry(&tuple, json, dot, graph),
        Command::Contract { input, auto: _, order, json, dot } => cmd_contract(&input, &order, json, dot),
        Command::VerifyPaper { json } => cmd_verify_paper(json),
        Command::Witness { tuple, json } => cmd_witness(&tuple, json),
    }
}

fn parse_tuple(words: &[String]) -> Result<ExponentTuple, Failure> {
    words
        .join(" ")
        .parse()
        .map_err(|e: Error| Failure::new(EXIT_USAGE, e.to_string()))
}

/// Recursively rebuilds objects with keys in sorted order.
fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<_> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut sorted = Map::new();
            for (k, v) in entries {
                sorted.insert(k, sort_keys(v));
            }
            Value::Object(sorted)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

fn envelope(command: &str, input: Value, result: impl Serialize) -> Result<String, Failure> {
    let result = serde_json::to_value(result).map_err(|e| Failure::new(EXIT_CHECK_FAILED, e.to_string()))?;
    let doc = sort_keys(json!({
        "command": command,
        "input": input,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    }));
    let mut text = serde_json::to_string_pretty(&doc).expect("values serialize");
    text.push('\n');
    Ok(text)
}

fn tuple_json(s: &ExponentTuple) -> Value {
    serde_json::to_value(s).expect("tuples serialize")
}

fn witness_lines(w: &Witness) -> String {
    let mut out = format!("witness {}\n", w.id);
    out.push_str(&format!("  ring: {} = 0\n", w.ring.display_relation()));
    if let Some(note) = &w.ring.note {
        out.push_str(&format!("  where {note}\n"));
    }
    for line in w.derivation.display_with(&w.ring.variables) {
        if !line.ends_with("= 0") {
            out.push_str(&format!("  {line}\n"));
        }
    }
    out
}

fn cmd_classify(words: &[String], trace: bool, json: bool) -> Outcome {
    let s = parse_tuple(words)?;
    let v = classify::classify(&s);
    let code = v.status.exit_code();
    if json {
        return Ok((code, envelope("classify", json!({ "tuple": tuple_json(&s) }), &v)?));
    }
    let mut text = format!("{s}: {}\n", v.status);
    if trace {
        text.push_str(&v.trace.render());
    }
    if let Some(w) = &v.witness {
        if trace {
            text.push_str(&witness_lines(w));
        } else {
            text.push_str(&format!("witness {}\n", w.id));
        }
    }
    Ok((code, text))
}

fn cmd_enumerate(n: usize, class: ClassArg, max: Option<u64>, json: bool) -> Outcome {
    let found = match (class, n) {
        (ClassArg::GammaMinus, _) => arith::enumerate_gamma_minus(n, max)?,
        (_, 0..=1) => return Err(Error::UnsupportedDimension(n).into()),
        (_, _) => {
            let max = max.ok_or(Error::MissingBound(n))?;
            arith::enumerate_bounded(n, max, class.into())
        }
    };
    if json {
        let input = json!({ "n": n, "class": GammaClass::from(class).to_string(), "max": max });
        return Ok((0, envelope("enumerate", input, &found)?));
    }
    let text = found.iter().map(|s| format!("{s}\n")).collect();
    Ok((0, text))
}

#[derive(Serialize)]
struct BlowDown {
    trace: Vec<ContractionRecord>,
    #[serde(rename = "final")]
    final_graph: IntersectionGraph,
    del_pezzo_degree: i64,
    annotations: Vec<CurveAnnotation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cited: Option<String>,
}

fn blow_down(s: &ExponentTuple, g: &IntersectionGraph) -> BlowDown {
    let (fin, trace) = dualgraph::contract_all(g);
    let cited = fano_citation_is_cusp(s)
        .then(|| "the final curve is cuspidal (cited; not derivable from the graph)".to_string());
    BlowDown {
        annotations: dualgraph::annotate(g, &fin),
        del_pezzo_degree: dualgraph::del_pezzo_degree(&fin),
        final_graph: fin,
        trace,
        cited,
    }
}

fn fano_citation_is_cusp(s: &ExponentTuple) -> bool {
    classify::fano_citation(s) == Some(FanoCitation::BlowDownArgument)
        && s.sorted() == ExponentTuple::from_u64s(&[2, 3, 5, 30]).expect("literal")
}

#[derive(Serialize)]
struct GeometryResult {
    report: SurfaceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolution: Option<IntersectionGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blow_down: Option<BlowDown>,
}

fn cmd_geometry(words: &[String], json: bool, dot: bool, graph: bool) -> Outcome {
    let s = parse_tuple(words)?;
    let report = geometry::surface_report(&s)?;
    let resolution = geometry::resolution_graph(&s);
    if dot || graph {
        let g = resolution?;
        let text = if dot {
            g.to_dot()
        } else {
            let mut t = serde_json::to_string_pretty(&sort_keys(serde_json::to_value(&g).expect("graphs serialize")))
                .expect("values serialize");
            t.push('\n');
            t
        };
        return Ok((0, text));
    }
    let resolution = resolution.ok();
    let blow = resolution.as_ref().map(|g| blow_down(&s, g));
    if json {
        let result = GeometryResult {
            report,
            resolution,
            blow_down: blow,
        };
        return Ok((0, envelope("geometry", json!({ "tuple": tuple_json(&s) }), &result)?));
    }
    Ok((0, geometry_text(&report, resolution.as_ref(), blow.as_ref())))
}

fn geometry_text(r: &SurfaceReport, g: Option<&IntersectionGraph>, blow: Option<&BlowDown>) -> String {
    use crate::numfmt::fmt_rat;
    let w: Vec<String> = r.weights.weights.iter().map(ToString::to_string).collect();
    let mut out = format!("surface {}\n", r.tuple);
    out.push_str(&format!("  weights ({}), degree {}\n", w.join(","), r.weights.total_degree));
    out.push_str(&format!("  well formed: {}\n", r.well_formed));
    out.push_str(&format!("  amplitude: {}\n", r.amplitude));
    out.push_str(&format!("  K^2 = {}\n", fmt_rat(&r.k_squared)));
    out.push_str(&format!("  Delta^2 = {}\n", fmt_rat(&r.delta_squared)));
    if let Some(dk) = &r.delta_dot_anti_k {
        out.push_str(&format!("  Delta.(-K) = {}\n", fmt_rat(dk)));
    }
    if r.singular_points.is_empty() {
        out.push_str("  smooth\n");
    }
    for p in &r.singular_points {
        out.push_str(&format!(
            "  {} x 1/{}({},{}) on edge {{{},{}}}, mult on Delta {}\n",
            p.count, p.order, p.type_weights[0], p.type_weights[1], p.edge[0], p.edge[1], p.mult_delta
        ));
    }
    for d in &r.discrepancies {
        out.push_str(&format!(
            "  order {}: discrepancy {}, exceptional curve ({})\n",
            d.order,
            fmt_rat(&d.discrepancy),
            d.exceptional_self_int
        ));
    }
    if let Some(g) = g {
        out.push_str(&format!("resolution, K^2 = {}\n", g.ambient_k_squared()));
        for c in g.curves() {
            out.push_str(&format!("  {} ({}), K.C = {}\n", c.name, c.self_int, c.k_degree));
        }
    }
    if let Some(b) = blow {
        out.push_str(&contract_text(&b.trace, &b.final_graph, &b.annotations));
        if let Some(c) = &b.cited {
            out.push_str(&format!("  {c}\n"));
        }
    }
    out
}

fn contract_text(trace: &[ContractionRecord], fin: &IntersectionGraph, notes: &[CurveAnnotation]) -> String {
    let mut out = String::new();
    for r in trace {
        out.push_str(&format!("contract {} -> K^2 = {}\n", r.contracted.name, r.ambient_k_squared));
        for c in &r.curve_changes {
            out.push_str(&format!("  {} ({}), K.C = {}\n", c.name, c.self_int, c.k_degree));
        }
        for e in &r.edge_changes {
            out.push_str(&format!("  {} . {} = {}\n", e.a, e.b, e.mult));
        }
    }
    out.push_str(&format!("final K^2 = {}\n", fin.ambient_k_squared()));
    for c in fin.curves() {
        out.push_str(&format!("  {} ({}), p_a = {}\n", c.name, c.self_int, c.p_a()));
    }
    for n in notes {
        out.push_str(&format!("  {}: {}\n", n.name, n.note));
    }
    out
}

fn cmd_contract(input: &PathBuf, order: &[String], json: bool, dot: bool) -> Outcome {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::new(EXIT_NO_INPUT, format!("{}: {e}", input.display())))?;
    let g = IntersectionGraph::from_json(&text)?;
    let (fin, trace) = if order.is_empty() {
        dualgraph::contract_all(&g)
    } else {
        let names: Vec<&str> = order.iter().map(String::as_str).collect();
        dualgraph::contract_sequence(&g, &names)?
    };
    if dot {
        return Ok((0, fin.to_dot()));
    }
    let notes = dualgraph::annotate(&g, &fin);
    if json {
        let input = json!({
            "input": input.display().to_string(),
            "order": if order.is_empty() { Value::Null } else { json!(order) },
        });
        let result = BlowDown {
            del_pezzo_degree: dualgraph::del_pezzo_degree(&fin),
            final_graph: fin,
            trace,
            annotations: notes,
            cited: None,
        };
        return Ok((0, envelope("contract", input, &result)?));
    }
    Ok((0, contract_text(&trace, &fin, &notes)))
}

fn cmd_verify_paper(json: bool) -> Outcome {
    let summary = battery::run_battery();
    let code = if summary.all_passed { 0 } else { EXIT_CHECK_FAILED };
    if json {
        return Ok((code, envelope("verify-paper", json!({}), &summary)?));
    }
    Ok((code, summary.table()))
}

#[derive(Serialize)]
struct WitnessResult {
    witness: Witness,
    certification: Nilpotency,
    homogeneity: Homogeneity,
}

fn cmd_witness(words: &[String], json: bool) -> Outcome {
    let s = parse_tuple(words)?;
    let w = symb::witness_unit_exponent(&s).or_else(|_| symb::witness_double_two(&s))?;
    let certification = w.certify()?;
    let homogeneity = symb::homogeneous_degree(&w.derivation, &w.ring.weights);
    let code = if certification.is_certified() { 0 } else { EXIT_CHECK_FAILED };
    if json {
        let result = WitnessResult {
            witness: w,
            certification,
            homogeneity,
        };
        return Ok((code, envelope("witness", json!({ "tuple": tuple_json(&s) }), &result)?));
    }
    let mut text = witness_lines(&w);
    if let Some((ring, d)) = &w.original {
        text.push_str(&format!("  in original coordinates, {} = 0:\n", ring.display_relation()));
        for line in d.display_with(&ring.variables) {
            if !line.ends_with("= 0") {
                text.push_str(&format!("  {line}\n"));
            }
        }
    }
    text.push_str(&match certification {
        Nilpotency::Certified { max_steps } => format!("locally nilpotent: every generator dies within {max_steps} steps\n"),
        Nilpotency::ExceededBound { bound } => format!("not certified within {bound} steps\n"),
    });
    text.push_str(&match homogeneity {
        Homogeneity::Degree(h) => format!("homogeneous of degree {h}\n"),
        Homogeneity::Zero => "zero derivation\n".into(),
        Homogeneity::NotHomogeneous => "not homogeneous for the standard grading\n".into(),
    });
    Ok((code, text))
}
