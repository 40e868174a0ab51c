//! Command-line front end for the `fatpoint` library.
//!
//! Every command writes JSON by default. Rationals are `"p/q"` strings,
//! divisor classes are `[d, [m1, ..., m6]]` and staircases are
//! `{"alpha": a, "lambdas": [...]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fatpoint::cohomology::hilbert_function;
use fatpoint::configuration::{self, incidence_types, validate, Alias, DefiningCurve};
use fatpoint::oracle::{oracle_hilbert, realize_config};
use fatpoint::picard::DivisorClass;
use fatpoint::polytope::{limiting_shape, newton_polytope, rat, Rational, RationalPolygon};
use fatpoint::staircase::{staircase_from_hilbert, Staircase};
use fatpoint::{ConfigurationType, Error};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "fatpoint", version, about = "Hilbert functions and limiting shapes of fat points at six points of the plane")]
pub struct RunSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the configuration types of six points.
    Catalog(Output),
    /// Negative curves of positive degree used by the reduction.
    Neg(Common),
    /// Hilbert function of the m-th symbolic power.
    Hilbert {
        #[command(flatten)]
        common: Common,
        /// Compare every value with the independent rank computation.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Generic initial ideal as a staircase.
    Gin(Common),
    /// Newton polygon of the generic initial ideal.
    Polytope(Common),
    /// Limiting shape of the Newton polygons scaled by 1/m.
    Limit(Common),
    /// Cross-check Hilbert values against the rank computation.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Degrees to check; defaults to every degree through closure.
        #[arg(long, value_delimiter = ',')]
        t: Vec<u64>,
    },
    /// Render `limit` output as an SVG figure.
    Figure {
        /// Files holding the JSON written by `limit`.
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// Catalog slug, path to a JSON configuration file, or `all`.
    #[arg(long)]
    pub config: String,
    /// Multiplicities, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Vec<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalConsistency(_) | Error::Divergence { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[derive(Clone, Debug)]
pub struct NamedConfig {
    pub name: String,
    pub config: ConfigurationType,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    points: usize,
    curves: Vec<DefiningCurve>,
}

/// Resolves `all`, a catalog slug, or a JSON configuration file.
pub fn resolve_configs(arg: &str) -> CliResult<Vec<NamedConfig>> {
    if arg == "all" {
        return Ok(configuration::catalog()
            .into_iter()
            .map(|e| NamedConfig { name: e.slug.to_string(), config: e.config })
            .collect());
    }
    if let Ok(entry) = configuration::lookup(arg) {
        return Ok(vec![NamedConfig { name: entry.slug.to_string(), config: entry.config }]);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(invalid(format!("`{arg}` is neither a catalog slug nor a readable file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{arg}: {e}")))?;
    let file: ConfigFile =
        serde_json::from_str(&text).map_err(|e| invalid(format!("{arg}: malformed configuration: {e}")))?;
    let config = validate(&file.curves, file.points)?;
    Ok(vec![NamedConfig { name: arg.to_string(), config }])
}

fn require_m(common: &Common) -> CliResult<&[u64]> {
    if common.m.is_empty() {
        return Err(invalid("--m is required for this command"));
    }
    Ok(&common.m)
}

fn int_json(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn class_json(c: &DivisorClass) -> Value {
    let mults: Vec<Value> = c.mults().iter().map(int_json).collect();
    json!([int_json(c.degree()), mults])
}

fn staircase_json(s: &Staircase) -> Value {
    json!({ "alpha": s.alpha(), "lambdas": s.lambdas() })
}

fn alias_json(alias: Option<Alias>) -> Value {
    match alias {
        Some(Alias::Pinned(c)) => json!({ "letter": c.to_string(), "pinned": true }),
        Some(Alias::Presumed(c)) => json!({ "letter": c.to_string(), "pinned": false }),
        None => Value::Null,
    }
}

/// One object per result, or an array when there are several.
fn collapse(mut items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        Value::Array(items)
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn reject_svg(format: Format) -> CliResult<()> {
    if format == Format::Svg {
        return Err(invalid("--format svg is only available for `figure`"));
    }
    Ok(())
}

/// Runs a parsed command and returns what should be written.
pub fn dispatch(spec: &RunSpec) -> CliResult<String> {
    match &spec.command {
        Command::Catalog(out) => catalog(out.format),
        Command::Neg(c) => neg(c),
        Command::Hilbert { common, oracle_check } => hilbert(common, *oracle_check),
        Command::Gin(c) => gin(c),
        Command::Polytope(c) => polytope(c),
        Command::Limit(c) => limit(c),
        Command::Verify { common, t } => verify(common, t),
        Command::Figure { input, output } => figure(input, output.format),
    }
}

fn output_of(spec: &RunSpec) -> Option<&Path> {
    let out = match &spec.command {
        Command::Catalog(o) => o,
        Command::Neg(c) | Command::Gin(c) | Command::Polytope(c) | Command::Limit(c) => &c.output,
        Command::Hilbert { common, .. } | Command::Verify { common, .. } => &common.output,
        Command::Figure { output, .. } => output,
    };
    out.out.as_deref()
}

/// Result of a full invocation, as the binary would report it.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments, dispatches and writes `--out` if requested.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let spec = match RunSpec::try_parse_from(args) {
        Ok(spec) => spec,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = dispatch(&spec).and_then(|text| match output_of(&spec) {
        Some(path) => std::fs::write(path, &text)
            .map(|_| String::new())
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
        None => Ok(text),
    });
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn catalog(format: Format) -> CliResult<String> {
    reject_svg(format)?;
    let entries = configuration::catalog();
    match format {
        Format::Csv => Ok(csv(
            "slug,alias,curves",
            entries.iter().map(|e| {
                let alias = e.alias.map(|a| a.letter().to_string()).unwrap_or_default();
                let curves = e
                    .config
                    .curves()
                    .iter()
                    .map(|c| c.points.iter().map(|p| p.to_string()).collect::<String>())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("{},{alias},{curves}", e.slug)
            }),
        )),
        _ => {
            let items: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "slug": e.slug,
                        "alias": alias_json(e.alias),
                        "curves": e.config.curves(),
                        "incidence_types": incidence_types(&e.config).distinct(),
                    })
                })
                .collect();
            Ok(pretty(&Value::Array(items)))
        }
    }
}

fn neg(c: &Common) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let configs = resolve_configs(&c.config)?;
    let mut results = Vec::new();
    for nc in &configs {
        results.push((nc, configuration::enumerate_neg(&nc.config)?));
    }
    match c.output.format {
        Format::Csv => Ok(csv(
            "config,d,m1,m2,m3,m4,m5,m6",
            results.iter().flat_map(|(nc, negs)| {
                negs.plane_curves().into_iter().map(move |cl| {
                    let mults = cl.mults().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
                    format!("{},{},{mults}", nc.name, cl.degree())
                })
            }),
        )),
        _ => {
            let arrays = |n: &configuration::NegativeCurves| Value::Array(n.plane_curves().iter().map(class_json).collect());
            let value = if results.len() == 1 {
                arrays(&results[0].1)
            } else {
                Value::Array(
                    results
                        .iter()
                        .map(|(nc, n)| json!({ "config": nc.name, "neg": arrays(n) }))
                        .collect(),
                )
            };
            Ok(pretty(&value))
        }
    }
}

fn jobs(c: &Common) -> CliResult<Vec<(NamedConfig, u64)>> {
    let configs = resolve_configs(&c.config)?;
    let ms = require_m(c)?;
    Ok(configs
        .iter()
        .flat_map(|nc| ms.iter().map(move |&m| (nc.clone(), m)))
        .collect())
}

fn hilbert(c: &Common, oracle_check: bool) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let jobs = jobs(c)?;
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(nc, m)| -> CliResult<_> {
            let table = hilbert_function(&nc.config, *m)?;
            let oracle = if oracle_check {
                let ps = realize_config(&nc.config)?;
                Some((0..table.values.len() as u64).map(|t| oracle_hilbert(&ps, *m, t)).collect::<Vec<_>>())
            } else {
                None
            };
            Ok((nc, *m, table, oracle))
        })
        .collect::<CliResult<_>>()?;
    match c.output.format {
        Format::Csv => {
            let header = if oracle_check { "config,m,t,h,oracle" } else { "config,m,t,h" };
            Ok(csv(
                header,
                results.iter().flat_map(|(nc, m, table, oracle)| {
                    table.values.iter().enumerate().map(move |(t, h)| match oracle {
                        Some(o) => format!("{},{m},{t},{h},{}", nc.name, o[t]),
                        None => format!("{},{m},{t},{h}", nc.name),
                    })
                }),
            ))
        }
        _ => {
            let items = results
                .iter()
                .map(|(nc, m, table, oracle)| {
                    let mut v = json!({
                        "config": nc.name,
                        "m": m,
                        "alpha": table.alpha,
                        "t_stop": table.t_stop(),
                        "values": table.values,
                    });
                    if let Some(o) = oracle {
                        v["oracle_values"] = json!(o);
                        v["oracle_agrees"] = json!(o == &table.values);
                    }
                    v
                })
                .collect();
            Ok(pretty(&collapse(items)))
        }
    }
}

fn gin(c: &Common) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let jobs = jobs(c)?;
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(nc, m)| -> CliResult<_> {
            let table = hilbert_function(&nc.config, *m)?;
            Ok((nc, *m, staircase_from_hilbert(&table)?))
        })
        .collect::<CliResult<_>>()?;
    match c.output.format {
        Format::Csv => Ok(csv(
            "config,m,i,lambda",
            results.iter().flat_map(|(nc, m, s)| {
                s.lambdas().iter().enumerate().map(move |(i, l)| format!("{},{m},{i},{l}", nc.name))
            }),
        )),
        _ => {
            let items = results
                .iter()
                .map(|(nc, m, s)| {
                    let gens: BTreeMap<String, usize> =
                        s.generator_count_by_degree().into_iter().map(|(t, n)| (t.to_string(), n)).collect();
                    json!({
                        "config": nc.name,
                        "m": m,
                        "staircase": staircase_json(s),
                        "generators_by_degree": gens,
                    })
                })
                .collect();
            Ok(pretty(&collapse(items)))
        }
    }
}

fn polytope(c: &Common) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let jobs = jobs(c)?;
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(nc, m)| -> CliResult<_> {
            let table = hilbert_function(&nc.config, *m)?;
            let poly = newton_polytope(&staircase_from_hilbert(&table)?);
            let scaled = poly.scale(&rat(1, *m as i64))?;
            Ok((nc, *m, poly, scaled))
        })
        .collect::<CliResult<_>>()?;
    match c.output.format {
        Format::Csv => Ok(csv(
            "config,m,x,y",
            results.iter().flat_map(|(nc, m, p, _)| {
                p.vertices().iter().map(move |v| format!("{},{m},{},{}", nc.name, v.x, v.y))
            }),
        )),
        _ => {
            let items = results
                .iter()
                .map(|(nc, m, p, s)| {
                    json!({
                        "config": nc.name,
                        "m": m,
                        "vertices": p,
                        "scaled_vertices": s,
                        "complement_area": p.complement_area().to_string(),
                        "scaled_complement_area": s.complement_area().to_string(),
                    })
                })
                .collect();
            Ok(pretty(&collapse(items)))
        }
    }
}

/// JSON written by `limit` and read back by `figure`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitJson {
    pub config: String,
    pub m: Vec<u64>,
    pub vertices: RationalPolygon,
    pub exact: bool,
    pub complement_area: String,
    pub intercepts: [String; 2],
    pub segment_count: usize,
    pub incidence_types: usize,
    pub samples: Vec<SampleJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub m: u64,
    pub vertices: RationalPolygon,
}

pub fn limit_json(nc: &NamedConfig, ms: &[u64]) -> CliResult<LimitJson> {
    let report = limiting_shape(&nc.config, ms)?;
    let (x0, y0) = report.limit.intercepts();
    Ok(LimitJson {
        config: nc.name.clone(),
        m: ms.to_vec(),
        complement_area: report.limit.complement_area().to_string(),
        intercepts: [x0.to_string(), y0.to_string()],
        segment_count: report.limit.segment_count(),
        incidence_types: incidence_types(&nc.config).distinct(),
        exact: report.exact,
        samples: report
            .samples
            .into_iter()
            .map(|(m, vertices)| SampleJson { m, vertices })
            .collect(),
        vertices: report.limit,
    })
}

fn limit(c: &Common) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let configs = resolve_configs(&c.config)?;
    let ms = require_m(c)?;
    let reports: Vec<LimitJson> = configs
        .par_iter()
        .map(|nc| limit_json(nc, ms))
        .collect::<CliResult<_>>()?;
    match c.output.format {
        Format::Csv => Ok(csv(
            "config,x,y",
            reports.iter().flat_map(|r| {
                r.vertices.vertices().iter().map(move |v| format!("{},{},{}", r.config, v.x, v.y))
            }),
        )),
        _ => {
            let items = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("limit reports serialize"))
                .collect();
            Ok(pretty(&collapse(items)))
        }
    }
}

fn verify(c: &Common, ts: &[u64]) -> CliResult<String> {
    reject_svg(c.output.format)?;
    let jobs = jobs(c)?;
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(nc, m)| -> CliResult<_> {
            let table = hilbert_function(&nc.config, *m)?;
            let ps = realize_config(&nc.config)?;
            let degrees: Vec<u64> = if ts.is_empty() {
                (0..table.values.len() as u64).collect()
            } else {
                ts.to_vec()
            };
            let checks: Vec<(u64, u64, u64)> = degrees
                .par_iter()
                .map(|&t| (t, table.value(t as usize), oracle_hilbert(&ps, *m, t)))
                .collect();
            Ok((nc, *m, checks))
        })
        .collect::<CliResult<_>>()?;
    let all_agree = results.iter().all(|(_, _, checks)| checks.iter().all(|(_, a, b)| a == b));
    let text = match c.output.format {
        Format::Csv => csv(
            "config,m,t,h,oracle,agrees",
            results.iter().flat_map(|(nc, m, checks)| {
                checks
                    .iter()
                    .map(move |(t, a, b)| format!("{},{m},{t},{a},{b},{}", nc.name, a == b))
            }),
        ),
        _ => {
            let items = results
                .iter()
                .map(|(nc, m, checks)| {
                    let rows: Vec<Value> = checks
                        .iter()
                        .map(|(t, a, b)| json!({ "t": t, "h": a, "oracle": b, "agrees": a == b }))
                        .collect();
                    json!({
                        "config": nc.name,
                        "m": m,
                        "agrees": checks.iter().all(|(_, a, b)| a == b),
                        "checks": rows,
                    })
                })
                .collect();
            pretty(&collapse(items))
        }
    };
    if all_agree {
        Ok(text)
    } else {
        Err(CliError::Internal(format!(
            "the reduction and the rank computation disagree\n{text}"
        )))
    }
}

fn read_limits(paths: &[PathBuf]) -> CliResult<Vec<LimitJson>> {
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let items = match value {
            Value::Array(items) => items,
            other => vec![other],
        };
        for item in items {
            out.push(
                serde_json::from_value(item)
                    .map_err(|e| invalid(format!("{}: not `limit` output: {e}", path.display())))?,
            );
        }
    }
    Ok(out)
}

fn figure(inputs: &[PathBuf], format: Format) -> CliResult<String> {
    if format != Format::Svg && format != Format::Json {
        return Err(invalid("`figure` only writes SVG"));
    }
    let reports = read_limits(inputs)?;
    render_figure(&reports)
}

const UNIT: f64 = 60.0;
const X_MAX: f64 = 4.0;
const Y_MAX: f64 = 7.0;
const MARGIN: f64 = 40.0;
const COLUMNS: usize = 4;

fn decimal(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn label(q: &Rational) -> String {
    q.to_string()
}

/// One panel per report on axes `[0, 4] x [0, 7]`, with each vertex labeled
/// by its exact coordinates.
pub fn render_figure(reports: &[LimitJson]) -> CliResult<String> {
    if reports.is_empty() {
        return Err(invalid("no limit reports to draw"));
    }
    let panel_w = X_MAX * UNIT + 2.0 * MARGIN;
    let panel_h = Y_MAX * UNIT + 2.0 * MARGIN;
    let cols = reports.len().min(COLUMNS);
    let rows = reports.len().div_ceil(COLUMNS);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" font-family="sans-serif" font-size="11">"#,
        panel_w * cols as f64,
        panel_h * rows as f64
    );
    s.push_str("<!-- drawing coordinates are decimal approximations; labels are exact -->\n");
    for (k, report) in reports.iter().enumerate() {
        let ox = (k % COLUMNS) as f64 * panel_w + MARGIN;
        let oy = (k / COLUMNS) as f64 * panel_h + MARGIN;
        let px = |x: f64| ox + x * UNIT;
        let py = |y: f64| oy + (Y_MAX - y) * UNIT;
        let _ = writeln!(s, r#"<g class="panel" data-config="{}">"#, escape(&report.config));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="14">{}</text>"#, px(0.0), oy - 16.0, escape(&report.config));
        let _ = writeln!(
            s,
            r#"<path d="M{:.2} {:.2} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
            px(0.0),
            py(Y_MAX),
            py(0.0),
            px(X_MAX)
        );
        for x in 1..=X_MAX as i32 {
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#, px(x as f64), py(0.0) + 14.0);
        }
        for y in 1..=Y_MAX as i32 {
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y}</text>"#, px(0.0) - 6.0, py(y as f64) + 4.0);
        }
        let points = report
            .vertices
            .vertices()
            .iter()
            .map(|v| format!("{:.2},{:.2}", px(decimal(&v.x)), py(decimal(&v.y))))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(s, r#"<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="2"/>"#);
        for v in report.vertices.vertices() {
            let (x, y) = (px(decimal(&v.x)), py(decimal(&v.y)));
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="steelblue"/>"#);
            let _ = writeln!(
                s,
                r#"<text class="vertex" x="{:.2}" y="{:.2}">({}, {})</text>"#,
                x + 5.0,
                y - 5.0,
                label(&v.x),
                label(&v.y)
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
