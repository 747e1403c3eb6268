//! Binary on-disk artifacts passed between pipeline stages.
//!
//! Two kinds: a collaboration network (`.collab.bin`, magic `GLN1`) and a
//! graphlet field (`.field.bin`, magic `GLF1`). Both are self-contained —
//! the network carries the external author keys so downstream stages never
//! need the corpus cache — and end with an FNV-1a checksum of the body, so
//! truncation or corruption is detected before any content is trusted.

use std::fs;
use std::path::Path;

use glepoch_core::graph_core::{AuthorId, CollabGraph, Timestamp};
use glepoch_core::graphlet::GraphletVector;
use glepoch_core::temporal::{CollabNetwork, Epoch};

use crate::error::CliError;

const NETWORK_MAGIC: &[u8; 4] = b"GLN1";
const FIELD_MAGIC: &[u8; 4] = b"GLF1";

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Default)]
struct Enc {
    buf: Vec<u8>,
}

impl Enc {
    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }
    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }
    fn i32(&mut self, v: i32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }
    fn str(&mut self, s: &str) {
        self.u64(s.len() as u64);
        self.buf.extend_from_slice(s.as_bytes());
    }
    fn finish(self, magic: &[u8; 4], path: &Path) -> Result<(), CliError> {
        let mut out = Vec::with_capacity(self.buf.len() + 12);
        out.extend_from_slice(magic);
        out.extend_from_slice(&self.buf);
        out.extend_from_slice(&fnv1a(&self.buf).to_le_bytes());
        fs::write(path, out).map_err(|source| CliError::io(path, source))
    }
}

struct Dec<'a> {
    body: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl<'a> Dec<'a> {
    fn open(raw: &'a [u8], magic: &[u8; 4], path: &'a Path) -> Result<Dec<'a>, CliError> {
        if raw.len() < 12 || &raw[..4] != magic {
            return Err(CliError::artifact(path, "unrecognized header"));
        }
        let body = &raw[4..raw.len() - 8];
        let stored = u64::from_le_bytes(raw[raw.len() - 8..].try_into().unwrap());
        if fnv1a(body) != stored {
            return Err(CliError::artifact(path, "checksum mismatch (truncated or corrupt)"));
        }
        Ok(Dec { body, pos: 0, path })
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], CliError> {
        if self.body.len() - self.pos < n {
            return Err(CliError::artifact(self.path, "section overruns file"));
        }
        let s = &self.body[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64, CliError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn u32(&mut self) -> Result<u32, CliError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn i32(&mut self) -> Result<i32, CliError> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn len(&mut self) -> Result<usize, CliError> {
        let v = self.u64()?;
        usize::try_from(v)
            .ok()
            .filter(|&n| n <= self.body.len())
            .ok_or_else(|| CliError::artifact(self.path, "implausible section length"))
    }
    fn str(&mut self) -> Result<String, CliError> {
        let n = self.len()?;
        String::from_utf8(self.take(n)?.to_vec())
            .map_err(|_| CliError::artifact(self.path, "non-UTF-8 string"))
    }
    fn done(&self) -> Result<(), CliError> {
        if self.pos != self.body.len() {
            return Err(CliError::artifact(self.path, "trailing bytes after payload"));
        }
        Ok(())
    }
}

/// A collaboration network plus the external author key of every vertex
/// (parallel to the graph's vertex order).
pub struct NetworkArtifact {
    pub net: CollabNetwork,
    pub author_names: Vec<String>,
}

impl NetworkArtifact {
    pub fn name_of(&self, key: AuthorId) -> String {
        match self.net.graph.local_index(key) {
            Some(v) => self.author_names[v].clone(),
            None => key.index().to_string(),
        }
    }
}

pub fn save_network(
    path: &Path,
    net: &CollabNetwork,
    mut name_of: impl FnMut(AuthorId) -> String,
) -> Result<(), CliError> {
    let g = &net.graph;
    let mut e = Enc::default();
    e.str(&net.epoch.label);
    e.i32(net.epoch.t_start.month_index());
    e.i32(net.epoch.t_end.month_index());
    e.u64(g.n_vertices() as u64);
    for &k in g.vertex_keys() {
        e.u32(k.index() as u32);
    }
    for &k in g.vertex_keys() {
        e.str(&name_of(k));
    }
    e.buf.extend_from_slice(&net.cohort_of_vertex);
    for &b in &net.boundaries {
        e.u64(b as u64);
    }
    e.u64(g.n_edges() as u64);
    for (u, v) in g.edges() {
        let w = g.edge_weights(u)[g.neighbors(u).binary_search(&(v as u32)).unwrap()];
        e.u32(u as u32);
        e.u32(v as u32);
        e.u32(w);
    }
    e.finish(NETWORK_MAGIC, path)
}

pub fn load_network(path: &Path) -> Result<NetworkArtifact, CliError> {
    let raw = fs::read(path).map_err(|source| CliError::io(path, source))?;
    let mut d = Dec::open(&raw, NETWORK_MAGIC, path)?;
    let label = d.str()?;
    let t_start = Timestamp::from_month_index(d.i32()?);
    let t_end = Timestamp::from_month_index(d.i32()?);
    let n = d.len()?;
    let mut keys = Vec::with_capacity(n);
    for _ in 0..n {
        keys.push(AuthorId(d.u32()?));
    }
    let mut author_names = Vec::with_capacity(n);
    for _ in 0..n {
        author_names.push(d.str()?);
    }
    let cohort_of_vertex = d.take(n)?.to_vec();
    let mut boundaries = Vec::with_capacity(7);
    for _ in 0..7 {
        boundaries.push(d.len()?);
    }
    let m = d.len()?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (u, v, w) = (d.u32()? as usize, d.u32()? as usize, d.u32()?);
        if u >= n || v >= n {
            return Err(CliError::artifact(path, "edge endpoint out of range"));
        }
        edges.push((keys[u], keys[v], w));
    }
    d.done()?;
    let graph = CollabGraph::from_weighted_edges(keys, &edges);
    let epoch = Epoch {
        label,
        t_start,
        t_end,
    };
    Ok(NetworkArtifact {
        net: CollabNetwork {
            epoch,
            graph,
            cohort_of_vertex,
            boundaries,
        },
        author_names,
    })
}

pub fn save_field(path: &Path, label: &str, field: &[GraphletVector]) -> Result<(), CliError> {
    let mut e = Enc::default();
    e.str(label);
    e.u64(field.len() as u64);
    for f in field {
        e.u32(f.vertex.index() as u32);
        for c in f.counts() {
            e.u64(c);
        }
    }
    e.finish(FIELD_MAGIC, path)
}

pub fn load_field(path: &Path) -> Result<(String, Vec<GraphletVector>), CliError> {
    let raw = fs::read(path).map_err(|source| CliError::io(path, source))?;
    let mut d = Dec::open(&raw, FIELD_MAGIC, path)?;
    let label = d.str()?;
    let n = d.len()?;
    let mut field = Vec::with_capacity(n);
    for _ in 0..n {
        let vertex = AuthorId(d.u32()?);
        let (d0, d1, d2, d3, d4) = (d.u64()?, d.u64()?, d.u64()?, d.u64()?, d.u64()?);
        field.push(GraphletVector {
            vertex,
            d0,
            d1,
            d2,
            d3,
            d4,
        });
    }
    d.done()?;
    Ok((label, field))
}
