//! The `chordlab` command line. `run` takes the argument vector and returns
//! the exit code with everything that would go to stdout and stderr.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use chordlab::enumeration::{enumerate_diagrams_capped, is_connected, is_irreducible, DEFAULT_ENUMERATION_CAP};
use chordlab::invariants::{catalog_eval, check_trace, parse_catalog, quarter, Derivation, BUILTIN_NAMES};
use chordlab::moves::DEFAULT_FUZZ_MAX_CHORDS;
use chordlab::{
    builtin, fuzz_walk, relator_set, Error, GaussWord, InvariantSpec, ModuleElement, MoveType, RelatorType, Selector,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "chordlab", version, about = "Curve invariants from chord-diagram counting")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List chord diagrams up to a chord count.
    Enumerate {
        /// Largest chord count.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Restrict to a band `b:d` and basis selector.
        #[arg(long, value_parser = parse_band)]
        band: Option<(usize, usize)>,
        #[arg(long, default_value = "all")]
        basis: Selector,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Projected relator set of the given move types.
    Relators {
        #[arg(long, value_parser = parse_relator_types)]
        types: BTreeSet<RelatorType>,
        #[arg(long, value_parser = parse_band)]
        band: (usize, usize),
    },
    /// Constraint matrix and its integer left kernel.
    Kernel(DeriveArgs),
    /// Kernel vectors as invariant specs.
    Derive {
        #[command(flatten)]
        args: DeriveArgs,
        /// Write the specs as a JSON array to this file.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate an invariant on a Gauss word.
    Eval {
        /// `lambda3`, `lambda4` or `@spec.json`.
        #[arg(long)]
        invariant: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_FUZZ_MAX_CHORDS)]
        max_chords: usize,
    },
    /// Seeded random walk of Reidemeister moves.
    Fuzz {
        #[arg(long, value_parser = parse_move_types)]
        types: BTreeSet<MoveType>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = DEFAULT_FUZZ_MAX_CHORDS)]
        max_chords: usize,
        /// Invariants that must stay constant along the walk.
        #[arg(long)]
        check: Option<String>,
    },
    /// Curve catalogs.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Evaluate invariants on every row of a `name<TAB>word` file.
    Eval {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, default_value = "lambda3,lambda4")]
        invariants: String,
    },
}

#[derive(Args, Debug)]
struct DeriveArgs {
    #[arg(long, value_parser = parse_band)]
    band: (usize, usize),
    #[arg(long, default_value = "all")]
    basis: Selector,
    #[arg(long, value_parser = parse_relator_types)]
    types: BTreeSet<RelatorType>,
}

fn parse_band(s: &str) -> Result<(usize, usize), String> {
    let (b, d) = s.split_once(':').ok_or("expected b:d")?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    let d = d.trim().parse().map_err(|e| format!("{e}"))?;
    if b < 2 || b > d {
        return Err(format!("need 2 <= b <= d, got {b}:{d}"));
    }
    Ok((b, d))
}

fn parse_relator_types(s: &str) -> Result<BTreeSet<RelatorType>, String> {
    RelatorType::parse_list(s).map_err(|e| e.to_string())
}

fn parse_move_types(s: &str) -> Result<BTreeSet<MoveType>, String> {
    MoveType::parse_list(s).map_err(|e| e.to_string())
}

/// What a command produced.
struct Output {
    code: i32,
    text: String,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { code: EXIT_OK, text }
    }
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<Output, Failure>;

pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (code, String::new(), text) } else { (code, text, String::new()) };
        }
    };
    match dispatch(&cli) {
        Ok(out) => (out.code, out.text, String::new()),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, String::new(), format!("error: {msg}\n")),
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let f = cli.format;
    match &cli.command {
        Command::Enumerate { depth, band, basis, cap } => enumerate(f, *depth, *band, *basis, *cap),
        Command::Relators { types, band } => relators(f, types, *band),
        Command::Kernel(a) => kernel(f, a),
        Command::Derive { args, out } => derive(f, args, out.as_deref()),
        Command::Eval { invariant, word, max_chords } => eval(f, invariant, word, *max_chords),
        Command::Fuzz { types, steps, seed, start, max_chords, check } => {
            fuzz(f, types, *steps, *seed, start, *max_chords, check.as_deref())
        }
        Command::Catalog { command: CatalogCommand::Eval { file, invariants } } => catalog(f, file, invariants),
    }
}

fn json_out(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn list(items: &[String]) -> String {
    items.join(",")
}

fn enumerate(f: Format, depth: usize, band: Option<(usize, usize)>, basis: Selector, cap: usize) -> CmdResult {
    let idx = enumerate_diagrams_capped(depth, cap)?;
    let rows: Vec<(usize, &chordlab::CanonicalDiagram)> = match band {
        Some((b, d)) => chordlab::enumeration::band(&idx, b, d)?.into_iter().filter(|(_, x)| basis.accepts(x)).collect(),
        None => idx.diagrams().iter().enumerate().map(|(i, x)| (i + 1, x)).filter(|(_, x)| basis.accepts(x)).collect(),
    };
    let text = match f {
        Format::Json => json_out(json!({
            "depth": depth,
            "counts": (1..=depth).map(|k| idx.count_upto(k) - idx.count_upto(k - 1)).collect::<Vec<_>>(),
            "diagrams": rows.iter().map(|(i, x)| json!({
                "index": i,
                "chords": x.chords(),
                "word": x.to_string(),
                "irreducible": is_irreducible(x),
                "connected": is_connected(x),
            })).collect::<Vec<_>>(),
        })),
        Format::Tsv | Format::Text => {
            let mut s = String::new();
            if f == Format::Tsv {
                s.push_str("index\tchords\tword\tirreducible\tconnected\n");
            }
            for (i, x) in &rows {
                if f == Format::Tsv {
                    let _ = writeln!(s, "{i}\t{}\t{x}\t{}\t{}", x.chords(), is_irreducible(x), is_connected(x));
                } else {
                    let mut tags = Vec::new();
                    if is_irreducible(x) {
                        tags.push("irr");
                    }
                    if is_connected(x) {
                        tags.push("conn");
                    }
                    let _ = writeln!(s, "{i:>4}  {}  [{x}]  {}", x.chords(), tags.join(" "));
                }
            }
            if f == Format::Text {
                let _ = writeln!(s, "{} diagrams", rows.len());
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn relators(f: Format, types: &BTreeSet<RelatorType>, (b, d): (usize, usize)) -> CmdResult {
    let rs = relator_set(types, b, d)?;
    let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    let text = match f {
        Format::Json => json_out(json!({
            "band": [b, d],
            "types": names,
            "elements": rs.elements().iter().map(|e| e.terms().map(|(x, c)| json!([c, x.to_string()])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut s = String::from("relator\tcoefficient\tword\n");
            for (n, e) in rs.elements().iter().enumerate() {
                for (x, c) in e.terms() {
                    let _ = writeln!(s, "{}\t{c}\t{x}", n + 1);
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} relators of type {} on band {b}:{d}\n", rs.len(), list(&names));
            for (n, e) in rs.elements().iter().enumerate() {
                let _ = writeln!(s, "r{:<3} {e}", n + 1);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn derivation(a: &DeriveArgs) -> Result<Derivation, Failure> {
    Ok(Derivation::new(a.band.0, a.band.1, a.basis, &a.types)?)
}

fn kernel(f: Format, a: &DeriveArgs) -> CmdResult {
    let der = derivation(a)?;
    let matrix = der.matrix.to_i64_rows()?;
    let kernel = der.kernel.vectors_i64()?;
    let text = match f {
        Format::Json => json_out(json!({
            "band": [a.band.0, a.band.1],
            "basis_selector": a.basis.to_string(),
            "types": a.types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "basis": der.basis.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "relators": der.relators.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "matrix": matrix,
            "kernel": kernel,
        })),
        Format::Tsv => {
            let mut s = String::from("vector");
            for x in &der.basis {
                let _ = write!(s, "\t{x}");
            }
            s.push('\n');
            for (n, v) in kernel.iter().enumerate() {
                let _ = write!(s, "{}", n + 1);
                for c in v {
                    let _ = write!(s, "\t{c}");
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = format!("basis ({}, band {}:{})\n", a.basis, a.band.0, a.band.1);
            for (n, x) in der.basis.iter().enumerate() {
                let _ = writeln!(s, "  y{:<3} [{x}]", n + 1);
            }
            let _ = writeln!(s, "relators: {}", der.relators.len());
            let _ = writeln!(s, "matrix rank {}", der.matrix.rank());
            let _ = writeln!(s, "kernel rank {}", kernel.len());
            for v in &kernel {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                let _ = writeln!(s, "  ({})", parts.join(", "));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn derive(f: Format, a: &DeriveArgs, out: Option<&std::path::Path>) -> CmdResult {
    let der = derivation(a)?;
    let specs = der.invariants()?;
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&specs).expect("specs serialize");
        std::fs::write(path, body + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let text = match f {
        Format::Json => json_out(serde_json::to_value(&specs).expect("specs serialize")),
        Format::Text | Format::Tsv => {
            let mut s = String::new();
            if specs.is_empty() {
                s.push_str("no invariants\n");
            }
            for (n, spec) in specs.iter().enumerate() {
                let e = ModuleElement::from_terms(spec.basis.iter().cloned().zip(spec.coeffs.iter().copied()));
                let sep = if f == Format::Tsv { "\t" } else { "  " };
                let _ = writeln!(s, "{}{sep}{e}", n + 1);
            }
            if let Some(path) = out {
                let _ = writeln!(s, "wrote {} spec(s) to {}", specs.len(), path.display());
            }
            s
        }
    };
    Ok(Output::ok(text))
}

/// `lambda3`, `lambda4`, or `@file.json` holding one spec or an array.
fn load_invariants(arg: &str) -> Result<Vec<InvariantSpec>, Failure> {
    let mut specs = Vec::new();
    for item in arg.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(path) = item.strip_prefix('@') {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let items = match value {
                serde_json::Value::Array(items) => items,
                other => vec![other],
            };
            for (n, v) in items.into_iter().enumerate() {
                let mut spec = InvariantSpec::from_json(&v.to_string())?;
                if spec.name.is_none() {
                    spec.name = Some(format!("{path}#{}", n + 1));
                }
                specs.push(spec);
            }
        } else if BUILTIN_NAMES.contains(&item) {
            specs.push(builtin(item)?);
        } else {
            return Err(Failure::Usage(format!("unknown invariant {item:?}; use lambda3, lambda4 or @file.json")));
        }
    }
    if specs.is_empty() {
        return Err(Failure::Usage("no invariant given".into()));
    }
    Ok(specs)
}

fn parse_word(text: &str) -> Result<GaussWord, Failure> {
    Ok(text.parse::<GaussWord>()?)
}

fn eval(f: Format, invariant: &str, word: &str, max_chords: usize) -> CmdResult {
    let specs = load_invariants(invariant)?;
    let w = parse_word(word)?;
    if w.chords() > max_chords {
        return Err(Error::TooManyChords { chords: w.chords(), limit: max_chords }.into());
    }
    let mut rows = Vec::new();
    for spec in &specs {
        let v = chordlab::invariants::evaluate_with_limit(spec, &w, max_chords)?;
        let q = (spec.name.as_deref() == Some("lambda3")).then(|| quarter(v)).flatten();
        rows.push((spec.label(), v, q));
    }
    let text = match f {
        Format::Json => json_out(json!({
            "word": w.to_string(),
            "values": rows.iter().map(|(n, v, q)| {
                let mut o = json!({"invariant": n, "value": v});
                if let Some(q) = q {
                    o["lambda"] = json!(q);
                }
                o
            }).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut s = String::from("invariant\tvalue\tlambda\n");
            for (n, v, q) in &rows {
                let _ = writeln!(s, "{n}\t{v}\t{}", q.map(|q| q.to_string()).unwrap_or_default());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (n, v, q) in &rows {
                let head = if specs.len() == 1 { v.to_string() } else { format!("{n} = {v}") };
                match q {
                    Some(q) => {
                        let _ = writeln!(s, "{head} (lambda = {q})");
                    }
                    None => {
                        let _ = writeln!(s, "{head}");
                    }
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn fuzz(
    f: Format,
    types: &BTreeSet<MoveType>,
    steps: usize,
    seed: u64,
    start: &str,
    max_chords: usize,
    check: Option<&str>,
) -> CmdResult {
    let w = parse_word(start)?;
    let specs = check.map(load_invariants).transpose()?.unwrap_or_default();
    let trace = fuzz_walk(&w, types, steps, seed, max_chords);
    let mut checks = Vec::new();
    for spec in &specs {
        let (values, violations) = check_trace(spec, &trace)?;
        checks.push((spec.label(), values, violations));
    }
    let violated = checks.iter().any(|(_, _, v)| !v.is_empty());
    let text = match f {
        Format::Json => json_out(json!({
            "seed": seed,
            "types": types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "max_chords": max_chords,
            "start": trace.start.to_string(),
            "truncated": trace.truncated,
            "steps": trace.steps.iter().map(|s| json!({
                "move": s.site.kind.to_string(),
                "direction": s.site.direction,
                "positions": s.site.positions,
                "letters": s.site.letters,
                "word": s.word.to_string(),
            })).collect::<Vec<_>>(),
            "checks": checks.iter().map(|(n, values, violations)| json!({
                "invariant": n,
                "values": values,
                "violations": violations,
            })).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut s = String::from("step\tmove\tdirection\tword");
            for (n, _, _) in &checks {
                let _ = write!(s, "\t{n}");
            }
            s.push('\n');
            for (i, word) in trace.words().enumerate() {
                let (mv, dir) = match i {
                    0 => ("start".to_string(), String::new()),
                    _ => {
                        let site = &trace.steps[i - 1].site;
                        (site.kind.to_string(), format!("{:?}", site.direction).to_lowercase())
                    }
                };
                let _ = write!(s, "{i}\t{mv}\t{dir}\t{word}");
                for (_, values, _) in &checks {
                    let _ = write!(s, "\t{}", values[i]);
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = format!("seed {seed}, start {}\n", trace.start);
            for (i, step) in trace.steps.iter().enumerate() {
                let _ = writeln!(s, "{:>5}  {:<6} {:<8} {}", i + 1, step.site.kind, format!("{:?}", step.site.direction).to_lowercase(), step.word);
            }
            if trace.truncated {
                let _ = writeln!(s, "no applicable move after {} steps", trace.steps.len());
            }
            for (n, values, violations) in &checks {
                if violations.is_empty() {
                    let _ = writeln!(s, "{n}: constant {}", values[0]);
                } else {
                    for v in violations {
                        let _ = writeln!(s, "{n}: changed {} -> {} at step {}", v.before, v.after, v.step);
                    }
                }
            }
            s
        }
    };
    Ok(Output { code: if violated { EXIT_VIOLATION } else { EXIT_OK }, text })
}

fn catalog(f: Format, file: &std::path::Path, invariants: &str) -> CmdResult {
    let specs = load_invariants(invariants)?;
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let table = catalog_eval(&specs, &parse_catalog(&text));
    let lambda3_col = specs.iter().position(|s| s.name.as_deref() == Some("lambda3"));
    let text = match f {
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| match &r.values {
                    Ok(vs) => {
                        let mut o = json!({"name": r.name, "word": r.word.as_ref().map(|w| w.to_string()), "values": vs});
                        if let Some(q) = lambda3_col.and_then(|c| quarter(vs[c])) {
                            o["lambda"] = json!(q);
                        }
                        o
                    }
                    Err(e) => json!({"name": r.name, "error": e}),
                })
                .collect();
            json_out(json!({
                "invariants": table.invariants,
                "rows": rows,
                "distinguished": table.distinguished,
            }))
        }
        Format::Tsv | Format::Text => {
            let mut s = format!("name\tword\t{}", table.invariants.join("\t"));
            if lambda3_col.is_some() {
                s.push_str("\tlambda");
            }
            s.push('\n');
            for r in &table.rows {
                match &r.values {
                    Ok(vs) => {
                        let word = r.word.as_ref().map(|w| w.to_string()).unwrap_or_default();
                        let cells: Vec<String> = vs.iter().map(i64::to_string).collect();
                        let _ = write!(s, "{}\t{word}\t{}", r.name, cells.join("\t"));
                        if let Some(c) = lambda3_col {
                            let _ = write!(s, "\t{}", quarter(vs[c]).map(|q| q.to_string()).unwrap_or_default());
                        }
                        s.push('\n');
                    }
                    Err(e) => {
                        let _ = writeln!(s, "{}\terror: {e}", r.name);
                    }
                }
            }
            if f == Format::Text {
                for (a, b) in &table.distinguished {
                    let _ = writeln!(s, "# {a} and {b} agree on {} but differ on a later invariant", table.invariants[0]);
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}
