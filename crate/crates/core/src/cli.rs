//! The `mdo` command line. [`run`] takes the arguments and output streams so
//! it can be driven from tests; the binary only forwards to it.
//!
//! Exit codes: 0 on success, 1 when validation finds violations, 2 on
//! unreadable or malformed input and usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{parse_turtle, serialize, PrefixMap, RdfFormat};
use crate::mapper::{ingest_texts, parse_template, read_manifest, MappingTemplate};
use crate::query::{competency_question, competency_questions, evaluate, parse_query, SolutionTable};
use crate::rdf::Graph;
use crate::validate::{validate_axiom_with, validate_with, ValidationOptions};

#[derive(Debug, Parser)]
#[command(name = "mdo", version, about = "Materials Design Ontology toolkit")]
struct Cli {
    /// Print soft errors and warnings in full.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map JSON documents to RDF with one or more templates.
    Ingest(IngestArgs),
    /// Check a graph against the axioms.
    Validate(ValidateArgs),
    /// Run a query file over a graph.
    Query(QueryArgs),
    /// Run a competency question, or list them when no --cq is given.
    Cq(CqArgs),
    /// Re-serialize one or more graphs as a single graph.
    Export(ExportArgs),
    /// Print the vocabulary and axiom manifest.
    Vocab(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Turtle,
    Ntriples,
    ReportText,
    ReportStructured,
    Tsv,
    Pretty,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(short, long = "template", required = true)]
    templates: Vec<PathBuf>,
    /// JSON documents; the id of each is its file stem.
    #[arg(short, long = "input")]
    inputs: Vec<PathBuf>,
    /// Lines of `path<TAB>doc_id`, paths relative to the manifest.
    #[arg(short, long)]
    manifest: Option<PathBuf>,
    #[arg(short, long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(short, long = "input", required = true)]
    inputs: Vec<PathBuf>,
    /// Only check this axiom (e.g. Cal1) or rule (e.g. Core6a).
    #[arg(long)]
    axiom: Option<String>,
    /// Check against asserted types only, without subclass closure.
    #[arg(long)]
    asserted_types: bool,
    #[arg(short, long, value_enum, default_value = "report-text")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(short, long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    query: PathBuf,
    #[arg(short, long, value_enum, default_value = "tsv")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CqArgs {
    #[arg(short, long = "input")]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    cq: Option<String>,
    /// Query parameter, e.g. `--param min=5.5`. Repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, String)>,
    #[arg(short, long, value_enum, default_value = "tsv")]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(short, long = "input", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(short, long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_param(s: &str) -> std::result::Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_owned(), v.to_owned())),
        _ => Err(format!("expected name=value, got `{s}`")),
    }
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Violations,
    BadInput,
}

struct Ctx<'w> {
    stdout: &'w mut dyn Write,
    stderr: &'w mut dyn Write,
    verbose: bool,
}

impl Ctx<'_> {
    fn emit(&mut self, out: &OutputArgs, text: &str) -> Result<()> {
        match &out.output {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => self.stdout.write_all(text.as_bytes()).context("writing standard output"),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { stdout, stderr, verbose: cli.verbose };
    let result = match cli.command {
        Command::Ingest(a) => ingest(&mut ctx, a),
        Command::Validate(a) => validate(&mut ctx, a),
        Command::Query(a) => query(&mut ctx, a),
        Command::Cq(a) => cq(&mut ctx, a),
        Command::Export(a) => export(&mut ctx, a),
        Command::Vocab(out) => ctx.emit(&out, &crate::vocab::manifest()).map(|()| Status::Ok),
    };
    match result {
        Ok(Status::Ok) => 0,
        Ok(Status::Violations) => 1,
        Ok(Status::BadInput) => 2,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Parses and merges `paths`, keeping the prefixes of the first file.
fn load_graphs(paths: &[PathBuf]) -> Result<(Graph, PrefixMap)> {
    let mut graph = Graph::new();
    let mut prefixes = PrefixMap::standard();
    for (i, path) in paths.iter().enumerate() {
        let (g, p) = parse_turtle(&read(path)?, None).with_context(|| format!("parsing {}", path.display()))?;
        if i == 0 && !p.is_empty() {
            prefixes = p;
        }
        graph.merge(&g);
    }
    Ok((graph, prefixes))
}

fn graph_format(format: Option<Format>, out: &OutputArgs) -> Result<RdfFormat> {
    Ok(match format {
        Some(Format::Turtle) => RdfFormat::Turtle,
        Some(Format::Ntriples) => RdfFormat::NTriples,
        None => out.output.as_deref().map_or(RdfFormat::Turtle, RdfFormat::from_path),
        Some(other) => bail!("format {other:?} does not apply to graphs; use turtle or ntriples"),
    })
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn ingest(ctx: &mut Ctx, a: IngestArgs) -> Result<Status> {
    let format = graph_format(a.format, &a.out)?;
    let mut templates: Vec<(String, MappingTemplate)> = Vec::new();
    for path in &a.templates {
        let t = parse_template(&read(path)?).with_context(|| format!("template {}", path.display()))?;
        templates.push((file_stem(path), t));
    }
    let mut docs: Vec<(String, std::result::Result<String, String>)> = Vec::new();
    if let Some(m) = &a.manifest {
        docs.extend(read_manifest(m).with_context(|| format!("reading manifest {}", m.display()))?);
    }
    for path in &a.inputs {
        docs.push((file_stem(path), std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))));
    }
    let result = ingest_texts(&templates, &docs);
    let prefixes = templates.first().map_or_else(PrefixMap::standard, |(_, t)| t.prefixes.clone());
    ctx.emit(&a.out, &serialize(&result.graph, format, &prefixes))?;

    let summary = format!(
        "documents: {}\ntriples: {}\nsoft errors: {}\nunreadable: {}\n",
        docs.len(),
        result.graph.len(),
        result.errors.len() - result.unreadable,
        result.unreadable
    );
    // keep standard output clean when the graph itself goes there
    let sink: &mut dyn Write = if a.out.output.is_some() { ctx.stdout } else { ctx.stderr };
    sink.write_all(summary.as_bytes())?;
    for s in &result.stats {
        writeln!(sink, "template {}: {} triples, {} failed bindings", s.name, s.triples, s.failed_bindings)?;
    }
    for e in &result.errors {
        if ctx.verbose || e.template.is_none() {
            writeln!(ctx.stderr, "{}: {}", e.doc_id, e.message)?;
        }
    }
    Ok(if result.unreadable > 0 { Status::BadInput } else { Status::Ok })
}

fn validate(ctx: &mut Ctx, a: ValidateArgs) -> Result<Status> {
    let (g, _) = load_graphs(&a.inputs)?;
    let opts = if a.asserted_types { ValidationOptions::asserted() } else { ValidationOptions::default() };
    let mut report = match &a.axiom {
        Some(id) => validate_axiom_with(&g, id, &opts)?,
        None => validate_with(&g, &opts),
    };
    if !ctx.verbose {
        report.warnings.clear();
    }
    let text = match a.format {
        Format::ReportText => report.to_text(),
        Format::ReportStructured => report.to_json(),
        other => bail!("format {other:?} does not apply to reports; use report-text or report-structured"),
    };
    ctx.emit(&a.out, &text)?;
    Ok(if report.conforming() { Status::Ok } else { Status::Violations })
}

fn table_text(table: &SolutionTable, format: Format, prefixes: &PrefixMap) -> Result<String> {
    Ok(match format {
        Format::Tsv => table.to_tsv(),
        Format::Pretty => table.to_pretty(prefixes),
        other => bail!("format {other:?} does not apply to query results; use tsv or pretty"),
    })
}

fn query(ctx: &mut Ctx, a: QueryArgs) -> Result<Status> {
    let q = parse_query(&read(&a.query)?).with_context(|| format!("query {}", a.query.display()))?;
    let (g, prefixes) = load_graphs(&a.inputs)?;
    let text = table_text(&evaluate(&q, &g), a.format, &prefixes)?;
    ctx.emit(&a.out, &text)?;
    Ok(Status::Ok)
}

fn cq(ctx: &mut Ctx, a: CqArgs) -> Result<Status> {
    let Some(id) = &a.cq else {
        let mut text = String::new();
        for q in competency_questions() {
            let params: Vec<String> = q.params.iter().map(|p| format!("{}:{}={}", p.name, p.kind, p.default)).collect();
            text.push_str(&format!("{}\t{}\t{}\n", q.id, q.module.prefix(), params.join(" ")));
        }
        ctx.emit(&a.out, &text)?;
        return Ok(Status::Ok);
    };
    if a.inputs.is_empty() {
        bail!("--input is required with --cq");
    }
    let q = competency_question(id)?.query(&a.params)?;
    let (g, prefixes) = load_graphs(&a.inputs)?;
    let text = table_text(&evaluate(&q, &g), a.format, &prefixes)?;
    ctx.emit(&a.out, &text)?;
    Ok(Status::Ok)
}

fn export(ctx: &mut Ctx, a: ExportArgs) -> Result<Status> {
    let format = graph_format(a.format, &a.out)?;
    let (g, prefixes) = load_graphs(&a.inputs)?;
    ctx.emit(&a.out, &serialize(&g, format, &prefixes))?;
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mdo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["cq", "--param", "novalue"]).0, 2);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("ingest"));
    }

    #[test]
    fn cq_listing() {
        let (code, out, _) = run_str(&["cq"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 14);
        assert!(out.starts_with("CQ1\tcore\t"));
    }

    #[test]
    fn unwritable_output_exits_2() {
        let (code, _, err) = run_str(&["vocab", "--output", "/nonexistent-dir/x"]);
        assert_eq!(code, 2);
        assert!(err.contains("writing"));
        assert_eq!(parse_param("min=5"), Ok(("min".into(), "5".into())));
        assert!(parse_param("=5").is_err());
    }
}
