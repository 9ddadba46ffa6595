//! Edge-list and type-vector text formats.
//!
//! ```text
//! lsbm-graph v1
//! n=<n> m=<m> labels=<tok>,<tok>,...
//! <u> <v> <label>          (m lines, 0-based, u < v)
//! ```
//!
//! A `.sigma` sidecar holds one `+1` or `-1` per line. All output uses LF
//! line endings.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{Edge, LabelAlphabet, LabeledGraph, TypeAssignment};

pub const GRAPH_HEADER: &str = "lsbm-graph v1";

pub fn write_graph<W: Write>(g: &LabeledGraph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    write!(out, "{GRAPH_HEADER}\nn={} m={} labels={}\n", g.n(), g.num_edges(), g.alphabet())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, g.alphabet().token(e.label))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_graph<R: Read>(input: R) -> Result<LabeledGraph> {
    let mut lines = BufReader::new(input).lines();
    let mut next = |no: usize| -> Result<String> {
        lines.next().ok_or_else(|| Error::parse(no, "unexpected end of file"))?.map_err(Error::from)
    };
    if next(1)?.trim_end() != GRAPH_HEADER {
        return Err(Error::parse(1, format!("expected `{GRAPH_HEADER}`")));
    }
    let meta = next(2)?;
    let (mut n, mut m, mut labels) = (None, None, None);
    for field in meta.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            Some(("labels", v)) => labels = Some(v.to_string()),
            _ => return Err(Error::parse(2, format!("unexpected field `{field}`"))),
        }
    }
    let (Some(n), Some(m), Some(labels)) = (n, m, labels) else {
        return Err(Error::parse(2, "expected `n=<int> m=<int> labels=<list>`"));
    };
    let alphabet = LabelAlphabet::new(labels.split(','))?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let no = i + 3;
        let line = next(no)?;
        let mut parts = line.split_whitespace();
        let (Some(u), Some(v), Some(l), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::parse(no, "expected `u v label`"));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|e| Error::parse(no, e.to_string()));
        let (u, v) = (parse(u)?, parse(v)?);
        if u >= v {
            return Err(Error::parse(no, "edge must satisfy u < v"));
        }
        edges.push(Edge { u, v, label: alphabet.lookup(l)? });
    }
    if let Some(extra) = lines.next() {
        if !extra?.trim().is_empty() {
            return Err(Error::parse(m + 3, "more edges than declared"));
        }
    }
    LabeledGraph::new(n, alphabet, edges)
}

pub fn write_sigma<W: Write>(sigma: &TypeAssignment, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for &s in sigma.as_slice() {
        out.write_all(if s == 1 { b"+1\n" } else { b"-1\n" })?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_sigma<R: Read>(input: R) -> Result<TypeAssignment> {
    let mut spins = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        match line.trim() {
            "+1" | "1" => spins.push(1),
            "-1" => spins.push(-1),
            "" => continue,
            other => return Err(Error::parse(i + 1, format!("expected +1 or -1, got `{other}`"))),
        }
    }
    TypeAssignment::new(spins)
}

/// `<graph path>.sigma`.
pub fn sigma_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".sigma");
    PathBuf::from(s)
}

pub fn save_graph(g: &LabeledGraph, sigma: Option<&TypeAssignment>, path: &Path) -> Result<()> {
    write_graph(g, File::create(path)?)?;
    if let Some(sigma) = sigma {
        write_sigma(sigma, File::create(sigma_path(path))?)?;
    }
    Ok(())
}

pub fn load_graph(path: &Path) -> Result<LabeledGraph> {
    read_graph(File::open(path)?)
}

pub fn load_sigma(path: &Path) -> Result<TypeAssignment> {
    read_sigma(File::open(path)?)
}
