//! Directed influence graphs: edge-list ingestion, weighted-cascade weighting,
//! adjacency indexes and a binary cache.
//!
//! Node ids from the input file are remapped to dense `0..n-1` in order of
//! first appearance; the original ids are kept for output. Duplicate directed
//! edges are rejected at load so that weighted-cascade probabilities are
//! well-defined.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::{self, Rng};

/// How activation probabilities are obtained from the edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    /// Lines are `u v p` with an explicit probability.
    Explicit,
    /// Lines are `u v`; after loading, p(u,v) = 1/d_in(v).
    WeightedCascade,
}

/// Whether each input line denotes one directed edge or both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Directed,
    /// Undirected datasets: insert both directions before weighting.
    UndirectedAsBidirected,
}

/// An immutable directed graph with per-edge activation weights.
///
/// Edges are stored both in load order (for exact round-trips) and as
/// forward/reverse CSR indexes for traversal.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: u32,
    orig_ids: Vec<u64>,
    edge_src: Vec<u32>,
    edge_dst: Vec<u32>,
    edge_p: Vec<f64>,
    fwd_off: Vec<usize>,
    fwd_dst: Vec<u32>,
    fwd_p: Vec<f64>,
    rev_off: Vec<usize>,
    rev_src: Vec<u32>,
    rev_p: Vec<f64>,
}

impl Graph {
    /// Number of nodes.
    pub fn node_count(&self) -> u32 {
        self.n
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.edge_src.len()
    }

    /// In-degree of `v`.
    pub fn in_degree(&self, v: u32) -> usize {
        self.rev_off[v as usize + 1] - self.rev_off[v as usize]
    }

    /// Original dataset id of dense node `v`.
    pub fn original_id(&self, v: u32) -> u64 {
        self.orig_ids[v as usize]
    }

    /// In-neighbors of `v` with their activation probabilities.
    #[inline]
    pub fn in_edges(&self, v: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let lo = self.rev_off[v as usize];
        let hi = self.rev_off[v as usize + 1];
        self.rev_src[lo..hi]
            .iter()
            .copied()
            .zip(self.rev_p[lo..hi].iter().copied())
    }

    /// Out-neighbors of `v` with their activation probabilities.
    #[inline]
    pub fn out_edges(&self, v: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let lo = self.fwd_off[v as usize];
        let hi = self.fwd_off[v as usize + 1];
        self.fwd_dst[lo..hi]
            .iter()
            .copied()
            .zip(self.fwd_p[lo..hi].iter().copied())
    }

    /// Edges in load order as (src, dst, p) over dense ids.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.edge_src.len()).map(|i| (self.edge_src[i], self.edge_dst[i], self.edge_p[i]))
    }

    /// Sum of incoming activation probabilities of `v`.
    pub fn in_weight_sum(&self, v: u32) -> f64 {
        let lo = self.rev_off[v as usize];
        let hi = self.rev_off[v as usize + 1];
        self.rev_p[lo..hi].iter().sum()
    }

    /// A graph is LT-compatible when every node's incoming weights sum to at
    /// most one (within 1e-9). Weighted-cascade graphs always qualify.
    pub fn check_lt_compatible(&self) -> Result<()> {
        for v in 0..self.n {
            let sum = self.in_weight_sum(v);
            if sum > 1.0 + 1e-9 {
                return Err(Error::LtIncompatible { node: v, sum });
            }
        }
        Ok(())
    }

    fn from_edge_list(orig_ids: Vec<u64>, src: Vec<u32>, dst: Vec<u32>, p: Vec<f64>) -> Graph {
        let n = orig_ids.len() as u32;
        let m = src.len();
        let mut fwd_off = vec![0usize; n as usize + 1];
        let mut rev_off = vec![0usize; n as usize + 1];
        for i in 0..m {
            fwd_off[src[i] as usize + 1] += 1;
            rev_off[dst[i] as usize + 1] += 1;
        }
        for v in 0..n as usize {
            fwd_off[v + 1] += fwd_off[v];
            rev_off[v + 1] += rev_off[v];
        }
        let mut fwd_dst = vec![0u32; m];
        let mut fwd_p = vec![0.0; m];
        let mut rev_src = vec![0u32; m];
        let mut rev_p = vec![0.0; m];
        let mut fcur = fwd_off.clone();
        let mut rcur = rev_off.clone();
        for i in 0..m {
            let f = fcur[src[i] as usize];
            fwd_dst[f] = dst[i];
            fwd_p[f] = p[i];
            fcur[src[i] as usize] += 1;
            let r = rcur[dst[i] as usize];
            rev_src[r] = src[i];
            rev_p[r] = p[i];
            rcur[dst[i] as usize] += 1;
        }
        Graph {
            n,
            orig_ids,
            edge_src: src,
            edge_dst: dst,
            edge_p: p,
            fwd_off,
            fwd_dst,
            fwd_p,
            rev_off,
            rev_src,
            rev_p,
        }
    }

    /// Render the graph as edge-list text that [`load_edge_list`] accepts with
    /// `Weighting::Explicit`. Emits edges in load order with original ids, so
    /// reloading reproduces the graph exactly, including the dense remapping.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for (u, v, p) in self.edges() {
            out.push_str(&format!(
                "{} {} {}\n",
                self.orig_ids[u as usize], self.orig_ids[v as usize], p
            ));
        }
        out
    }
}

/// Parse whitespace-separated edge-list text.
///
/// Lines starting with `#` are skipped (SNAP headers). Node ids are arbitrary
/// non-negative integers, remapped densely by first appearance (source token
/// before destination token, line by line).
pub fn load_edge_list<R: Read>(
    source: R,
    weighting: Weighting,
    orientation: Orientation,
) -> Result<Graph> {
    let reader = BufReader::new(source);
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut orig_ids: Vec<u64> = Vec::new();
    let mut src: Vec<u32> = Vec::new();
    let mut dst: Vec<u32> = Vec::new();
    let mut p: Vec<f64> = Vec::new();
    let mut seen = std::collections::HashSet::<u64>::new();

    let intern = |orig: u64, orig_ids: &mut Vec<u64>, ids: &mut HashMap<u64, u32>| -> u32 {
        *ids.entry(orig).or_insert_with(|| {
            orig_ids.push(orig);
            (orig_ids.len() - 1) as u32
        })
    };

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tok = trimmed.split_whitespace();
        let parse_id = |t: Option<&str>, what: &str| -> Result<u64> {
            t.ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("missing {what}"),
            })?
            .parse::<u64>()
            .map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("{what} is not a non-negative integer"),
            })
        };
        let ou = parse_id(tok.next(), "source id")?;
        let ov = parse_id(tok.next(), "destination id")?;
        let prob = match weighting {
            Weighting::Explicit => {
                let t = tok.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "missing activation weight".into(),
                })?;
                let val: f64 = t.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "activation weight is not a number".into(),
                })?;
                if !(0.0..=1.0).contains(&val) {
                    return Err(Error::WeightOutOfRange {
                        line: lineno,
                        p: val,
                    });
                }
                val
            }
            Weighting::WeightedCascade => 0.0, // filled in after all edges are read
        };
        if tok.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing tokens on line".into(),
            });
        }

        let u = intern(ou, &mut orig_ids, &mut ids);
        let v = intern(ov, &mut orig_ids, &mut ids);
        let mut push = |a: u32, b: u32| -> Result<()> {
            let key = ((a as u64) << 32) | b as u64;
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    line: lineno,
                    u: orig_ids[a as usize],
                    v: orig_ids[b as usize],
                });
            }
            src.push(a);
            dst.push(b);
            p.push(prob);
            Ok(())
        };
        push(u, v)?;
        if orientation == Orientation::UndirectedAsBidirected {
            push(v, u)?;
        }
    }

    if orig_ids.is_empty() {
        return Err(Error::EmptyGraph);
    }

    if weighting == Weighting::WeightedCascade {
        let mut in_deg = vec![0u32; orig_ids.len()];
        for &v in &dst {
            in_deg[v as usize] += 1;
        }
        for i in 0..p.len() {
            p[i] = 1.0 / in_deg[dst[i] as usize] as f64;
        }
    }

    Ok(Graph::from_edge_list(orig_ids, src, dst, p))
}

/// Convenience wrapper over [`load_edge_list`] for files.
pub fn load_edge_list_path(
    path: &Path,
    weighting: Weighting,
    orientation: Orientation,
) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(file, weighting, orientation)
}

const CACHE_MAGIC: &[u8; 8] = b"MCSSGRA1";

/// Write a binary cache of the parsed graph. The cache preserves the dense id
/// mapping and edge order, so [`read_cache`] round-trips bit-exactly.
pub fn write_cache<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    out.write_all(CACHE_MAGIC)?;
    out.write_all(&(g.n as u64).to_le_bytes())?;
    out.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    for &id in &g.orig_ids {
        out.write_all(&id.to_le_bytes())?;
    }
    for i in 0..g.edge_count() {
        out.write_all(&g.edge_src[i].to_le_bytes())?;
        out.write_all(&g.edge_dst[i].to_le_bytes())?;
        out.write_all(&g.edge_p[i].to_bits().to_le_bytes())?;
    }
    Ok(())
}

/// Read a binary cache produced by [`write_cache`].
pub fn read_cache<R: Read>(mut input: R) -> Result<Graph> {
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let mut buf8 = [0u8; 8];
    input.read_exact(&mut buf8)?;
    let n = u64::from_le_bytes(buf8);
    input.read_exact(&mut buf8)?;
    let m = u64::from_le_bytes(buf8);
    if n == 0 {
        return Err(Error::Cache("empty graph".into()));
    }
    if n > u32::MAX as u64 {
        return Err(Error::Cache("node count overflow".into()));
    }
    let mut orig_ids = Vec::with_capacity(n as usize);
    for _ in 0..n {
        input.read_exact(&mut buf8)?;
        orig_ids.push(u64::from_le_bytes(buf8));
    }
    let mut src = Vec::with_capacity(m as usize);
    let mut dst = Vec::with_capacity(m as usize);
    let mut p = Vec::with_capacity(m as usize);
    let mut buf4 = [0u8; 4];
    for _ in 0..m {
        input.read_exact(&mut buf4)?;
        let u = u32::from_le_bytes(buf4);
        input.read_exact(&mut buf4)?;
        let v = u32::from_le_bytes(buf4);
        input.read_exact(&mut buf8)?;
        let w = f64::from_bits(u64::from_le_bytes(buf8));
        if u as u64 >= n || v as u64 >= n {
            return Err(Error::Cache("edge endpoint out of range".into()));
        }
        src.push(u);
        dst.push(v);
        p.push(w);
    }
    Ok(Graph::from_edge_list(orig_ids, src, dst, p))
}

/// Deterministic scale-free-ish directed graph for benchmarks and tests.
///
/// Node `i` (for `i >= 1`) draws `min(i, out_per_node)` distinct targets among
/// `0..i`, preferentially by current in-degree. Edge probabilities are filled
/// by the weighted-cascade rule. Useful as a stand-in when a public dataset is
/// not on disk.
pub fn synthetic_preferential(n: u32, out_per_node: u32, seed: u64) -> Graph {
    assert!(n >= 2);
    let mut rng = Rng::for_stream(seed, rng::tag::SYNTHETIC, 0);
    let mut src = Vec::new();
    let mut dst = Vec::new();
    // Repetition-weighted target pool: each node appears once per incoming
    // edge plus once baseline, giving preferential attachment.
    let mut pool: Vec<u32> = vec![0];
    let mut chosen: Vec<u32> = Vec::new();
    for i in 1..n {
        let k = out_per_node.min(i);
        chosen.clear();
        let mut guard = 0;
        while chosen.len() < k as usize {
            let cand = pool[rng.next_below(pool.len() as u64) as usize];
            if !chosen.contains(&cand) {
                chosen.push(cand);
            }
            guard += 1;
            if guard > 64 * k {
                // fall back to scanning for any unused target
                for t in 0..i {
                    if chosen.len() >= k as usize {
                        break;
                    }
                    if !chosen.contains(&t) {
                        chosen.push(t);
                    }
                }
            }
        }
        for &t in &chosen {
            src.push(i);
            dst.push(t);
            pool.push(t);
        }
        pool.push(i);
    }
    let m = src.len();
    let mut in_deg = vec![0u32; n as usize];
    for &v in &dst {
        in_deg[v as usize] += 1;
    }
    let mut p = vec![0.0f64; m];
    for i in 0..m {
        p[i] = 1.0 / in_deg[dst[i] as usize] as f64;
    }
    let orig_ids = (0..n as u64).collect();
    Graph::from_edge_list(orig_ids, src, dst, p)
}
