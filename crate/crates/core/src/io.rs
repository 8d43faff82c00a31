//! Graph file formats (DIMACS ascii, Matrix Market pattern, plain edge list)
//! and result records in CSV / JSON-lines form.

use std::fmt::Write as _;
use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId};

/// Non-fatal irregularities seen while parsing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ParseReport {
    pub self_loops: usize,
    pub duplicates: usize,
    pub unknown_lines: usize,
}

fn parse_usize(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

fn one_based(label: usize, n: usize, line: usize) -> Result<VertexId> {
    if label == 0 || label > n {
        return Err(Error::parse(line, format!("vertex {label} out of range 1..={n}")));
    }
    Ok(label - 1)
}

fn finish(builder: GraphBuilder, mut report: ParseReport) -> (Graph, ParseReport) {
    report.self_loops = builder.self_loops;
    let graph = builder.build();
    (graph, report)
}

fn check_entry_count(found: usize, declared: usize, line: usize) -> Result<()> {
    // Some benchmark files list every edge in both directions.
    if found == declared || found == 2 * declared {
        Ok(())
    } else {
        Err(Error::parse(line, format!("header declares {declared} edges, found {found}")))
    }
}

/// DIMACS ascii: `c` comments, one `p <format> <n> <m>` line, `e <u> <v>` edges (1-based).
pub fn parse_dimacs(text: &str) -> Result<(Graph, ParseReport)> {
    let mut builder: Option<GraphBuilder> = None;
    let mut report = ParseReport::default();
    let mut declared = (0, 0);
    let mut entries = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                let _format = tokens.next().ok_or_else(|| Error::parse(line, "missing format"))?;
                let n = parse_usize(tokens.next(), line, "vertex count")?;
                let m = parse_usize(tokens.next(), line, "edge count")?;
                builder = Some(GraphBuilder::new(n));
                declared = (m, line);
            }
            Some("e") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                let n = b.vertex_count();
                let u = one_based(parse_usize(tokens.next(), line, "endpoint")?, n, line)?;
                let v = one_based(parse_usize(tokens.next(), line, "endpoint")?, n, line)?;
                b.add_edge(u, v)?;
                entries += 1;
            }
            Some(other) => {
                warn!("line {line}: skipping unknown DIMACS line type `{other}`");
                report.unknown_lines += 1;
            }
        }
    }
    let builder = builder.ok_or_else(|| Error::parse(0, "missing problem line `p edge <n> <m>`"))?;
    check_entry_count(entries, declared.0, declared.1)?;
    let (graph, mut report) = finish(builder, report);
    report.duplicates = entries - report.self_loops - graph.edge_count();
    if report.self_loops > 0 {
        warn!("dropped {} self-loops", report.self_loops);
    }
    Ok((graph, report))
}

/// Matrix Market `coordinate pattern symmetric` files, read as undirected edges.
pub fn parse_mtx(text: &str) -> Result<(Graph, ParseReport)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(Error::parse(1, "expected `%%MatrixMarket matrix coordinate ...` header"));
    }
    if fields[3] != "pattern" {
        return Err(Error::parse(1, format!("unsupported field `{}`, expected pattern", fields[3])));
    }
    if fields[4] != "symmetric" {
        return Err(Error::parse(1, format!("unsupported symmetry `{}`, expected symmetric", fields[4])));
    }
    let mut builder: Option<GraphBuilder> = None;
    let mut declared = (0, 0);
    let mut entries = 0;
    for (idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match builder.as_mut() {
            None => {
                let rows = parse_usize(tokens.next(), line, "row count")?;
                let cols = parse_usize(tokens.next(), line, "column count")?;
                let nnz = parse_usize(tokens.next(), line, "entry count")?;
                if rows != cols {
                    return Err(Error::parse(line, format!("matrix is {rows}x{cols}, expected square")));
                }
                builder = Some(GraphBuilder::new(rows));
                declared = (nnz, line);
            }
            Some(b) => {
                let n = b.vertex_count();
                let u = one_based(parse_usize(tokens.next(), line, "row index")?, n, line)?;
                let v = one_based(parse_usize(tokens.next(), line, "column index")?, n, line)?;
                b.add_edge(u, v)?;
                entries += 1;
            }
        }
    }
    let builder = builder.ok_or_else(|| Error::parse(0, "missing size line"))?;
    if entries != declared.0 {
        return Err(Error::parse(
            declared.1,
            format!("size line declares {} entries, found {entries}", declared.0),
        ));
    }
    let (graph, mut report) = finish(builder, ParseReport::default());
    report.duplicates = entries - report.self_loops - graph.edge_count();
    if report.self_loops > 0 {
        warn!("dropped {} diagonal entries", report.self_loops);
    }
    Ok((graph, report))
}

/// One `u v` line per edge, 0-based, `u < v`, sorted. An `n <count>` header
/// is written only when the edges do not determine the vertex count.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let implied = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if implied != g.vertex_count() {
        let _ = writeln!(out, "n {}", g.vertex_count());
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let first = tokens.next().expect("non-empty");
        if first == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(Error::parse(line, "`n` header must come first and only once"));
            }
            declared = Some(parse_usize(tokens.next(), line, "vertex count")?);
            continue;
        }
        let u = parse_usize(Some(first), line, "endpoint")?;
        let v = parse_usize(tokens.next(), line, "endpoint")?;
        if tokens.next().is_some() {
            return Err(Error::parse(line, "expected exactly two endpoints"));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(implied);
    if implied > n {
        return Err(Error::parse(0, format!("edge endpoint {} exceeds declared n = {n}", implied - 1)));
    }
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    MatrixMarket,
    EdgeList,
}

impl GraphFormat {
    /// By extension first, then by sniffing the content.
    pub fn detect(path: &Path, text: &str) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => return GraphFormat::MatrixMarket,
            Some("clq" | "col" | "dimacs") => return GraphFormat::Dimacs,
            Some("edges") => return GraphFormat::EdgeList,
            _ => {}
        }
        if text.trim_start().starts_with("%%MatrixMarket") {
            GraphFormat::MatrixMarket
        } else if text.lines().any(|l| l.trim_start().starts_with("p ")) {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    }
}

/// Reads a graph file, naming the graph after the file stem.
pub fn read_graph(path: &Path) -> Result<(Graph, ParseReport)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", path.display())))?;
    let (graph, report) = match GraphFormat::detect(path, &text) {
        GraphFormat::Dimacs => parse_dimacs(&text)?,
        GraphFormat::MatrixMarket => parse_mtx(&text)?,
        GraphFormat::EdgeList => (parse_edge_list(&text)?, ParseReport::default()),
    };
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string();
    Ok((graph.with_name(stem), report))
}

pub const CSV_HEADER: &str = "instance,n,m,max_deg,avg_deg,heuristic,seed,length,bound_name,bound,gap,wall_time_ms";

/// One `(instance, heuristic, seed)` result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub max_deg: usize,
    pub avg_deg: f64,
    pub heuristic: String,
    pub seed: u64,
    pub length: Option<u32>,
    pub bound_name: Option<String>,
    pub bound: Option<u32>,
    /// `length - bound`, only for upper bounds.
    pub gap: Option<i64>,
    pub wall_time_ms: f64,
}

/// `2m / n` rounded to one decimal.
pub fn average_degree(g: &Graph) -> f64 {
    if g.vertex_count() == 0 {
        return 0.0;
    }
    let avg = 2.0 * g.edge_count() as f64 / g.vertex_count() as f64;
    (avg * 10.0).round() / 10.0
}

pub fn write_results_csv(records: &[ResultRecord]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in records {
        writer
            .serialize(r)
            .map_err(|e| Error::InvalidParameters(format!("csv: {e}")))?;
    }
    let body = writer
        .into_inner()
        .map_err(|e| Error::InvalidParameters(format!("csv: {e}")))?;
    let mut out = String::with_capacity(CSV_HEADER.len() + 1 + body.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    out.push_str(std::str::from_utf8(&body).expect("csv output is utf-8"));
    Ok(out)
}

pub fn write_results_jsonl(records: &[ResultRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}

pub fn parse_results_csv(text: &str) -> Result<Vec<ResultRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::parse(i + 2, e.to_string())))
        .collect()
}

pub fn parse_results_jsonl(text: &str) -> Result<Vec<ResultRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::parse(i + 1, e.to_string())))
        .collect()
}

/// CSV when the text starts with the CSV header, JSON lines otherwise.
pub fn parse_results(text: &str) -> Result<Vec<ResultRecord>> {
    if text.trim_start().starts_with("instance,") {
        parse_results_csv(text)
    } else {
        parse_results_jsonl(text)
    }
}
