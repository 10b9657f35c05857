//! Command-line front end.
//!
//! Every subcommand produces a [`Report`] with `meta`, `rows` and `summary`,
//! written as JSON, CSV (header row plus rows) or aligned text.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundles::{self, Bundle, BundleError, BundleSum};
use crate::characters::{irreducible_table, Representation};
use crate::groups::{make_group, GroupSpec};
use crate::lattice::{self, WeightRep};
use crate::polyverify::{fixture_specs, verify_singularity};
use crate::scalar::{rat, RationalField};
use crate::signature::{
    differential_signature_estimate, signature_estimate, signature_estimate_weights, Variant,
};
use crate::sympow::{sym_characters, sym_series, SymError, SymMethod};
use crate::Rational;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check or computation fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for invalid arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "symsig", version, about = "Symmetric signatures of quotient singularities")]
struct Cli {
    /// key=value file supplying defaults for any long flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add floating-point columns next to exact rationals.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cumulative free-rank ratios of symmetric powers.
    Signature(SignatureArgs),
    /// Decompose symmetric powers into irreducibles.
    Sympow(SympowArgs),
    /// Print and validate the character table.
    Chartable(GroupArg),
    /// Lattice-point counts for 1/n(1,a).
    Lattice(LatticeArgs),
    /// Bundle calculus on an elliptic curve.
    #[command(subcommand)]
    Bundles(BundleCommand),
    /// Check invariants, syzygies and the induced action.
    Verify(VerifyArgs),
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse::<GroupSpec>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct GroupArg {
    /// A:m, D:n, E6, E7, E8 or cyclic:n:a.
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ModuleSel {
    One(usize),
    All,
}

fn parse_module(s: &str) -> Result<ModuleSel, String> {
    if s == "all" {
        return Ok(ModuleSel::All);
    }
    s.parse().map(ModuleSel::One).map_err(|e| format!("{e}; expected an index or `all`"))
}

#[derive(Debug, Args)]
struct SignatureArgs {
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
    /// Index of the irreducible whose ratio is reported, or `all`.
    #[arg(long, default_value = "0", value_parser = parse_module)]
    module: ModuleSel,
    #[arg(long, default_value_t = 1000)]
    qmax: usize,
    #[arg(long, default_value = "symmetric")]
    variant: Variant,
    /// Weights w1,w2 of a cyclic:n:a group.
    #[arg(long)]
    weights: Option<String>,
    /// Emit every k-th row.
    #[arg(long, default_value_t = 1)]
    every: usize,
}

#[derive(Debug, Args)]
struct SympowArgs {
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
    #[arg(long, default_value_t = 20)]
    qmax: usize,
    /// recurrence, monomial, eigen or springer.
    #[arg(long)]
    method: Option<SymMethod>,
    /// Compare every applicable method.
    #[arg(long)]
    check_methods: bool,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    a: u64,
    #[arg(long, default_value_t = 0)]
    t: u64,
    #[arg(long, default_value_t = 60)]
    qmax: u64,
}

#[derive(Debug, Subcommand)]
enum BundleCommand {
    /// Tensor powers of the syzygy bundle.
    Tq {
        #[arg(long)]
        q: u64,
    },
    /// Symmetric powers of F_2 or Ω̃ = F_2 ⊗ O_Y(1).
    Sym {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "f2")]
        input: String,
    },
    /// Free-rank bounds for Sym^q of the syzygy bundle.
    Frk {
        #[arg(long)]
        q: u64,
        /// Weierstrass coefficients a,b of y²z = x³ + axz² + bz³.
        #[arg(long, default_value = "1,0")]
        curve: String,
    },
    /// The differential sequence Sym^q(Ω̃) for q ≤ qmax.
    Diff {
        #[arg(long, default_value_t = 100)]
        qmax: u64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_group)]
    singularity: Option<GroupSpec>,
    #[arg(long)]
    all: bool,
}

/// Tabular output of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub meta: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Value,
    /// Whether every check performed by the command passed.
    pub ok: bool,
}

impl Report {
    fn new(command: &str, claim: &str, columns: &[&str]) -> Self {
        Report {
            meta: json!({ "command": command, "claim": claim, "version": env!("CARGO_PKG_VERSION") }),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            summary: json!({}),
            ok: true,
        }
    }

    fn meta_insert(&mut self, key: &str, v: Value) {
        self.meta.as_object_mut().expect("object").insert(key.into(), v);
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
            .collect();
        let doc = json!({ "meta": self.meta, "rows": rows, "summary": self.summary });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| csv_cell(&cell_text(v))).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let blocks = match &self.summary {
            Value::Array(items) => items.iter().collect(),
            v => vec![v],
        };
        for obj in blocks.iter().filter_map(|b| b.as_object()) {
            for (k, v) in obj {
                let _ = writeln!(s, "# {k}: {}", compact(v));
            }
        }
        if !self.rows.is_empty() {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell_text).collect()).collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|j| {
                    cells.iter().map(|r| r[j].chars().count()).chain([self.columns[j].chars().count()]).max().unwrap_or(0)
                })
                .collect();
            let line = |vals: Vec<&str>| -> String {
                let padded: Vec<String> =
                    vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(self.columns.iter().map(|c| c.as_str()).collect()));
            for r in &cells {
                let _ = writeln!(s, "{}", line(r.iter().map(|c| c.as_str()).collect()));
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell_text).collect::<Vec<_>>().join(";"),
        _ => v.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn rjson(q: &Rational) -> Value {
    Value::String(q.to_string())
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, message: format!("invalid value for --{flag}: {msg}") }
}

fn failed(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_FAILURE, message: msg.to_string() }
}

/// Append `--key=value` for config entries whose flag is absent from argv.
fn apply_config(args: &[String]) -> Result<Vec<String>, Failure> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let mut out = args.to_vec();
    let Some(path) = path else { return Ok(out) };
    let text = std::fs::read_to_string(&path).map_err(|e| usage("config", format!("{path}: {e}")))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(usage("config", format!("{path}:{}: expected key=value", lineno + 1)));
        };
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        if k == "config" {
            continue;
        }
        let flag = format!("--{k}");
        let present = args.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if present {
            continue;
        }
        match v {
            "true" => out.push(flag),
            "false" => {}
            _ => out.push(format!("{flag}={v}")),
        }
    }
    Ok(out)
}

/// Run with argv (including the program name), writing to stdout or `--out`.
pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match apply_config(args) {
        Ok(a) => a,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text.as_bytes()).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Signature(a) => cmd_signature(a, cli.float),
        Command::Sympow(a) => cmd_sympow(a),
        Command::Chartable(a) => cmd_chartable(a),
        Command::Lattice(a) => cmd_lattice(a, cli.float),
        Command::Bundles(b) => cmd_bundles(b, cli.float),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn parse_pair(flag: &str, s: &str) -> Result<(String, String), Failure> {
    let (a, b) = s.split_once(',').ok_or_else(|| usage(flag, format!("expected two comma-separated values, got {s}")))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

fn cmd_signature(a: &SignatureArgs, float: bool) -> Result<Report, Failure> {
    if a.every == 0 {
        return Err(usage("every", "must be positive"));
    }
    let series = match (&a.weights, a.variant) {
        (Some(w), Variant::Symmetric) => {
            let (x, y) = parse_pair("weights", w)?;
            let w1 = x.parse::<u32>().map_err(|e| usage("weights", e))?;
            let w2 = y.parse::<u32>().map_err(|e| usage("weights", e))?;
            signature_estimate_weights(&a.group, (w1, w2), a.qmax).map_err(|e| usage("weights", e))?
        }
        (Some(_), Variant::Differential) => return Err(usage("weights", "only for the symmetric variant")),
        (None, Variant::Symmetric) => signature_estimate(&a.group, 0, a.qmax).map_err(|e| usage("group", e))?,
        (None, Variant::Differential) => differential_signature_estimate(&a.group, a.qmax).map_err(failed)?,
    };
    let modules: Vec<usize> = match a.module {
        ModuleSel::All => (0..series.modules()).collect(),
        ModuleSel::One(i) if i < series.modules() => vec![i],
        ModuleSel::One(i) => {
            return Err(usage("module", format!("{i} out of range for {} irreducibles", series.modules())));
        }
    };
    let mut cols = vec!["q", "alpha", "beta", "ratio"];
    if float {
        cols.push("ratio_f64");
    }
    let mut r = Report::new("signature", "cumulative multiplicity ratio tends to dim V_i / |G|", &cols);
    r.meta_insert("group", json!(a.group.to_string()));
    r.meta_insert("variant", json!(a.variant.to_string()));
    r.meta_insert("representation", json!(series.representation));
    let ratios: Vec<Vec<Rational>> = modules.iter().map(|&i| series.prefix_ratios(i)).collect();
    // A single module keeps scalar cells; `all` emits one list entry per module.
    let cell = |vals: Vec<Value>| if vals.len() == 1 { vals[0].clone() } else { Value::Array(vals) };
    for (q, rec) in series.records.iter().enumerate() {
        if rec.q % a.every != 0 && rec.q != series.qmax() {
            continue;
        }
        let alpha = cell(modules.iter().map(|&i| json!(rec.alpha[i])).collect());
        let ratio = cell(ratios.iter().map(|r| rjson(&r[q])).collect());
        let mut row = vec![json!(rec.q), alpha, json!(rec.beta), ratio];
        if float {
            row.push(cell(ratios.iter().map(|r| json!(r[q].to_f64())).collect()));
        }
        r.rows.push(row);
    }
    let summaries: Vec<Value> = modules
        .iter()
        .map(|&i| {
            let s = series.summary(i);
            json!({
                "order": series.order,
                "module": s.module,
                "dim": series.dims[i],
                "qmax": s.qmax,
                "target": rjson(&s.target),
                "final_ratio": rjson(&s.final_ratio),
                "abs_error": rjson(&s.abs_error),
                "target_f64": s.target_f64,
                "final_ratio_f64": s.final_ratio_f64,
                "abs_error_f64": s.abs_error_f64,
            })
        })
        .collect();
    r.summary = cell(summaries);
    Ok(r)
}

fn cmd_sympow(a: &SympowArgs) -> Result<Report, Failure> {
    let g = Arc::new(make_group(&a.group).map_err(|e| usage("group", e))?);
    let table = irreducible_table(&g).map_err(failed)?;
    let rep = Representation::fundamental(&g);
    let method = a.method.unwrap_or_else(|| SymMethod::default_for(&rep));
    let series = sym_series(&table, &rep, a.qmax, method).map_err(|e| usage("method", e))?;
    let mut cols = vec!["q", "rank", "multiplicities"];
    if a.check_methods {
        cols.push("agree");
    }
    let mut r = Report::new("sympow", "multiplicities of irreducibles in Sym^q of the defining representation", &cols);
    r.meta_insert("group", json!(a.group.to_string()));
    r.meta_insert("method", json!(method.to_string()));
    let mut agree_all = true;
    let mut used = vec![method.to_string()];
    let mut others = Vec::new();
    if a.check_methods {
        for m in SymMethod::ALL {
            if m == method {
                continue;
            }
            match sym_series(&table, &rep, a.qmax, m) {
                Ok(s) => {
                    used.push(m.to_string());
                    others.push(s);
                }
                Err(SymError::NotDiagonal) | Err(SymError::NotSL2) => {}
                Err(e) => return Err(failed(e)),
            }
        }
        // Characters too, not only multiplicities.
        let base = sym_characters(&rep, a.qmax, SymMethod::Monomial).map_err(failed)?;
        for m in [SymMethod::Recurrence, SymMethod::Eigen, SymMethod::Springer] {
            if let Ok(ch) = sym_characters(&rep, a.qmax, m) {
                agree_all &= ch == base;
            }
        }
    }
    for q in 0..=a.qmax {
        let mut row = vec![json!(q), json!(series.rank(q)), json!(series.multiplicities[q])];
        if a.check_methods {
            let ok = others.iter().all(|s| s.multiplicities[q] == series.multiplicities[q]);
            agree_all &= ok;
            row.push(json!(ok));
        }
        r.rows.push(row);
    }
    r.ok = agree_all;
    r.summary = json!({
        "order": g.order(),
        "labels": series.labels,
        "dims": series.dims,
        "methods": used,
        "methods_agree": if a.check_methods { json!(agree_all) } else { Value::Null },
    });
    Ok(r)
}

fn cmd_chartable(a: &GroupArg) -> Result<Report, Failure> {
    let g = Arc::new(make_group(&a.group).map_err(|e| usage("group", e))?);
    let table = irreducible_table(&g).map_err(failed)?;
    let mut r = Report::new("chartable", "irreducible characters are orthonormal and their degrees square-sum to |G|", &[
        "label", "dim", "values",
    ]);
    r.meta_insert("group", json!(a.group.to_string()));
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let vals: Vec<String> = chi.values().iter().map(|v| v.minimize_conductor().to_text()).collect();
        r.rows.push(vec![json!(table.labels()[i]), json!(table.dims()[i]), json!(vals)]);
    }
    let valid = table.validate();
    r.ok = valid.is_ok();
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| json!({ "representative": c.representative, "size": c.size(), "order": c.element_order }))
        .collect();
    r.summary = json!({
        "order": g.order(),
        "conductor": g.conductor(),
        "classes": classes,
        "fundamental": table.fundamental_constituents(),
        "valid": r.ok,
        "error": valid.err().map(|e| e.to_string()),
    });
    Ok(r)
}

fn cmd_lattice(a: &LatticeArgs, float: bool) -> Result<Report, Failure> {
    if a.n == 0 {
        return Err(usage("n", "must be positive"));
    }
    let rep = WeightRep::one_a(a.n, a.a).map_err(|e| usage("n", e))?;
    let t = a.t % a.n;
    let lat = lattice::kernel_lattice(&rep, t).map_err(|e| usage("t", e))?;
    let faithful = lattice::is_faithful(&rep);
    let spec = GroupSpec::CyclicOneNA { n: a.n as u32, a: (a.a % a.n) as u32 };
    let chars = signature_estimate(&spec, 0, a.qmax as usize).map_err(failed)?;
    let mut r = Report::new("lattice", "simplex lattice-point counts equal character multiplicities", &[
        "q", "count", "count_lattice", "character", "agree",
    ]);
    r.meta_insert("n", json!(a.n));
    r.meta_insert("a", json!(a.a));
    r.meta_insert("t", json!(t));
    let mut ok = true;
    for q in 0..=a.qmax {
        let c1 = lattice::count_simplex_points(&rep, t, q).map_err(failed)?;
        let c2 = lattice::count_simplex_points_lattice(&rep, t, q).map_err(failed)?;
        let c3 = chars.records[q as usize].alpha[t as usize];
        let agree = c1 == c2 && c2 == c3;
        ok &= agree;
        r.rows.push(vec![json!(q), json!(c1), json!(c2), json!(c3), json!(agree)]);
    }
    let ratio = if faithful {
        let lr = lattice::ratio_to_limit(&rep, t, a.qmax).map_err(failed)?;
        let mut v = json!({
            "alpha": lr.alpha,
            "beta": lr.beta,
            "ratio": rjson(&lr.ratio),
            "limit": rjson(&lr.limit),
            "abs_error": rjson(&lr.abs_error()),
        });
        if float {
            v["ratio_f64"] = json!(lr.ratio.to_f64());
        }
        v
    } else {
        Value::Null
    };
    r.ok = ok;
    r.summary = json!({
        "faithful": faithful,
        "basis": lat.basis,
        "offset": lat.offset,
        "index": lat.index,
        "smith": lat.smith,
        "ratio": ratio,
        "minimal_invariants": lattice::minimal_invariant_monomials(a.n, a.a % a.n),
        "all_agree": ok,
    });
    Ok(r)
}

fn bundle_rows(r: &mut Report, s: &BundleSum) {
    for rec in s.summary() {
        r.rows.push(vec![
            json!(rec.rank),
            json!(rec.degree),
            json!(rec.twist.torsion),
            json!(rec.twist.opaque),
            json!(rec.multiplicity),
        ]);
    }
}

const BUNDLE_COLS: [&str; 5] = ["rank", "degree", "torsion", "opaque", "multiplicity"];

fn bundle_summary(s: &BundleSum) -> Value {
    match bundles::rank_degree_slope(s) {
        Ok((rk, d, mu)) => json!({
            "rank": rk,
            "degree": d,
            "slope": rjson(&mu),
            "summands": s.count(),
            "kinds": s.kinds(),
            "text": s.to_string(),
        }),
        Err(_) => json!({ "rank": 0, "summands": 0 }),
    }
}

fn cmd_bundles(b: &BundleCommand, float: bool) -> Result<Report, Failure> {
    match b {
        BundleCommand::Tq { q } => {
            if *q == 0 {
                return Err(usage("q", "must be positive"));
            }
            let s = bundles::tensor_power_syz(*q);
            let mut r = Report::new("bundles tq", "decomposition of tensor powers of the syzygy bundle", &BUNDLE_COLS);
            r.meta_insert("q", json!(q));
            bundle_rows(&mut r, &s);
            let mut summary = bundle_summary(&s);
            let conserved = s.rank() == 1u64 << q && s.degree() == -9 * (*q as i64) * (1i64 << (q - 1));
            summary["conserved"] = json!(conserved);
            if *q <= 8 {
                let it = bundles::tensor_power_iterated(*q).map_err(failed)?;
                summary["matches_iterated"] = json!(it == s);
                r.ok = it == s;
            }
            r.ok &= conserved;
            r.summary = summary;
            Ok(r)
        }
        BundleCommand::Sym { q, input } => {
            let base = match input.as_str() {
                "f2" => Bundle::f(2),
                "omega" => Bundle::atiyah(2, 6),
                "syz" => Bundle::syzygy(),
                other => return Err(usage("input", format!("{other}: expected f2, omega or syz"))),
            };
            let s = bundles::sym_power(&BundleSum::single(base), *q).map_err(failed)?;
            let mut r = Report::new("bundles sym", "symmetric powers of F_2 and of F_2 twisted by a line bundle", &BUNDLE_COLS);
            r.meta_insert("q", json!(q));
            r.meta_insert("input", json!(input));
            bundle_rows(&mut r, &s);
            r.summary = bundle_summary(&s);
            Ok(r)
        }
        BundleCommand::Frk { q, curve } => {
            let (x, y) = parse_pair("curve", curve)?;
            let a: Rational = x.parse().map_err(|_| usage("curve", format!("{x} is not a rational")))?;
            let bb: Rational = y.parse().map_err(|_| usage("curve", format!("{y} is not a rational")))?;
            let f = bundles::weierstrass(&a, &bb);
            let rep = bundles::frk_report(*q, &f).map_err(|e| match e {
                BundleError::SingularCurve => usage("curve", e),
                other => failed(other),
            })?;
            let mut r = Report::new(
                "bundles frk",
                "bounds on free summands O_Y(a) of Sym^q of the syzygy bundle",
                &["q", "lower", "upper", "rank"],
            );
            r.meta_insert("curve", json!(f.to_string()));
            r.rows.push(vec![json!(rep.q), json!(rep.lower), json!(rep.upper), json!(rep.rank)]);
            r.summary = json!({
                "certificate": serde_json::to_value(&rep.certificate).expect("serializable"),
                "discriminant_nonzero": bundles::weierstrass_nonsingular(&a, &bb),
            });
            Ok(r)
        }
        BundleCommand::Diff { qmax } => {
            let seq = bundles::differential_sym_sequence(*qmax);
            let frk = bundles::differential_frk(*qmax);
            let mut cols = vec!["q", "bundle", "rank", "frk", "ratio"];
            if float {
                cols.push("ratio_f64");
            }
            let mut r = Report::new("bundles diff", "symmetric powers of the twisted cotangent bundle are indecomposable", &cols);
            let (mut num, mut den) = (0u64, 0u64);
            for (q, (s, f)) in seq.iter().zip(&frk).enumerate() {
                num += f;
                den += s.rank();
                let ratio = rat(num as i64, den as i64);
                let mut row = vec![json!(q), json!(s.to_string()), json!(s.rank()), json!(f), rjson(&ratio)];
                if float {
                    row.push(json!(ratio.to_f64()));
                }
                r.rows.push(row);
            }
            r.summary = json!({ "cumulative_ratio": rjson(&bundles::differential_cumulative_ratio(*qmax)) });
            Ok(r)
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let specs = match (&a.singularity, a.all) {
        (_, true) => fixture_specs(),
        (Some(s), false) => vec![s.clone()],
        (None, false) => return Err(usage("singularity", "give --singularity or --all")),
    };
    let mut r = Report::new("verify", "generators are invariant, syzygies vanish and the induced action is fundamental", &[
        "singularity", "group", "order", "checks", "passed", "failure",
    ]);
    let mut ok = true;
    for spec in &specs {
        let rep = verify_singularity(spec).map_err(|e| usage("singularity", e))?;
        ok &= rep.passed();
        r.rows.push(vec![
            json!(rep.singularity),
            json!(spec.to_string()),
            json!(rep.group_order),
            json!(rep.checks.len()),
            json!(rep.passed()),
            json!(rep.failure),
        ]);
    }
    r.ok = ok;
    r.summary = json!({ "singularities": specs.len(), "all_passed": ok });
    Ok(r)
}
