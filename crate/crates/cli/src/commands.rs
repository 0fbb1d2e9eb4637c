use std::path::Path;

use serde::Serialize;

use rnp_core::covering::{is_vertex_covering_sequence, min_r1_covering_sequence, CoveringSequence};
use rnp_core::generators::{self, PatternName};
use rnp_core::graph::{parse_graph, serialize_graph, Graph};
use rnp_core::oracle;
use rnp_core::rnp::{rnp_encode_graph, rnp_encode_graph_counted, update_bound};
use rnp_core::wl::wl_distinguish;
use rnp_core::{CountMode, Strategy};

use crate::error::CliError;

pub const SCHEMA: &str = "rnp-kit/1";

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_graph(&text).map_err(|e| CliError::core(path.display().to_string(), e))
}

/// Comma-separated decimal integers, no spaces.
pub fn parse_radii(text: &str) -> Result<CoveringSequence, CliError> {
    let radii = text
        .split(',')
        .map(|tok| {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(CliError::usage(format!("bad radii {text:?}: expected e.g. 2,1")));
            }
            tok.parse::<usize>()
                .map_err(|e| CliError::usage(format!("bad radius {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    CoveringSequence::new(radii).map_err(|e| CliError::core("radii", e))
}

/// Single-line JSON plus trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct CoverOutput {
    schema: &'static str,
    radii: Vec<usize>,
    order: Vec<usize>,
    valid: bool,
}

pub fn cover(path: &Path) -> Result<String, CliError> {
    let h = read_graph(path)?;
    if !h.is_connected() {
        return Err(CliError::usage(format!("{}: pattern graph is disconnected", path.display())));
    }
    let (radii, order) = min_r1_covering_sequence(&h).map_err(|e| CliError::core(path.display().to_string(), e))?;
    let valid = is_vertex_covering_sequence(&h, &order, &radii).map_err(|e| CliError::Internal(e.to_string()))?;
    if !valid {
        return Err(CliError::Internal(format!("computed covering sequence {radii} failed validation")));
    }
    to_json(&CoverOutput {
        schema: SCHEMA,
        radii: radii.radii().to_vec(),
        order: order.order().to_vec(),
        valid,
    })
}

#[derive(Serialize)]
struct CountOutput {
    schema: &'static str,
    pattern: String,
    mode: &'static str,
    count: u64,
}

pub fn count(graph: &Path, pattern: &Path, mode: CountMode) -> Result<String, CliError> {
    let g = read_graph(graph)?;
    let h = read_graph(pattern)?;
    let result = oracle::count(&g, &h, mode).map_err(|e| CliError::core("count", e))?;
    to_json(&CountOutput {
        schema: SCHEMA,
        pattern: pattern.display().to_string(),
        mode: mode.as_str(),
        count: result.count,
    })
}

#[derive(Serialize)]
struct DistinguishOutput {
    schema: &'static str,
    rnp: bool,
    wl: bool,
    radii: Vec<usize>,
}

pub fn distinguish(first: &Path, second: &Path, radii: &str) -> Result<String, CliError> {
    let radii = parse_radii(radii)?;
    let g1 = read_graph(first)?;
    let g2 = read_graph(second)?;
    let rnp = rnp_encode_graph(&g1, &radii).map_err(|e| CliError::core("encode", e))?
        != rnp_encode_graph(&g2, &radii).map_err(|e| CliError::core("encode", e))?;
    to_json(&DistinguishOutput {
        schema: SCHEMA,
        rnp,
        wl: wl_distinguish(&g1, &g2),
        radii: radii.radii().to_vec(),
    })
}

#[derive(Serialize)]
struct ComplexityOutput {
    schema: &'static str,
    updates: u64,
    bound: u128,
    ratio: f64,
    updates_per_level: Vec<u64>,
    max_context_per_level: Vec<usize>,
}

pub fn complexity(path: &Path, radii: &str) -> Result<String, CliError> {
    let radii = parse_radii(radii)?;
    let g = read_graph(path)?;
    let run = rnp_encode_graph_counted(&g, &radii, Strategy::default()).map_err(|e| CliError::core("encode", e))?;
    let bound = update_bound(&g, &radii);
    let ratio = if bound == 0 { 0.0 } else { run.counter.invocations as f64 / bound as f64 };
    to_json(&ComplexityOutput {
        schema: SCHEMA,
        updates: run.counter.invocations,
        bound,
        ratio,
        updates_per_level: run.counter.updates_per_level,
        max_context_per_level: run.counter.max_context_per_level,
    })
}

#[derive(Serialize)]
struct EncodeOutput {
    schema: &'static str,
    digest: String,
    updates: u64,
    bound: u128,
}

pub fn encode(path: &Path, radii: &str) -> Result<String, CliError> {
    let radii = parse_radii(radii)?;
    let g = read_graph(path)?;
    let run = rnp_encode_graph_counted(&g, &radii, Strategy::default()).map_err(|e| CliError::core("encode", e))?;
    to_json(&EncodeOutput {
        schema: SCHEMA,
        digest: run.encoding.digest_hex(),
        updates: run.counter.invocations,
        bound: update_bound(&g, &radii),
    })
}

pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<String, CliError> {
    let g = generators::erdos_renyi(n, p, seed).map_err(|e| CliError::core("gen er", e))?;
    Ok(serialize_graph(&g))
}

pub fn gen_regular(n: usize, d: usize, deletions: usize, seed: u64) -> Result<String, CliError> {
    let g = generators::random_regular_perturbed(n, d, deletions, seed).map_err(|e| CliError::core("gen regular", e))?;
    Ok(serialize_graph(&g))
}

pub fn gen_prime_partite(primes: &str, n: usize) -> Result<String, CliError> {
    let parts = primes
        .split(',')
        .map(|t| t.parse::<usize>().map_err(|e| CliError::usage(format!("bad prime {t:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let g = generators::prime_partite(&parts, n).map_err(|e| CliError::core("gen prime-partite", e))?;
    Ok(serialize_graph(&g))
}

pub fn gen_pattern(name: PatternName) -> Result<String, CliError> {
    let g = name.build().map_err(|e| CliError::core("gen pattern", e))?;
    Ok(serialize_graph(&g))
}

/// Both graphs, each after a `# graph N` comment, or just the requested one.
pub fn gen_figure2(part: Option<u8>) -> Result<String, CliError> {
    let (a, b) = generators::figure2_pair();
    match part {
        Some(1) => Ok(serialize_graph(&a)),
        Some(2) => Ok(serialize_graph(&b)),
        Some(p) => Err(CliError::usage(format!("--part must be 1 or 2, got {p}"))),
        None => Ok(format!("# graph 1\n{}# graph 2\n{}", serialize_graph(&a), serialize_graph(&b))),
    }
}
