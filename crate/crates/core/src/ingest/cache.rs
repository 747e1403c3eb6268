//! Single-file binary cache for a [`LiteratureGraph`].
//!
//! Layout: magic `LGC1`, then little-endian sections — article/author
//! counts, per-article month indices, the citation CSR, the authorship CSR,
//! and the two string tables — closed by a 64-bit FNV-1a checksum over all
//! preceding bytes. The checksum turns any truncation or bit corruption into
//! a load-time error instead of silent bad data.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph_core::{Bipartite, CitationGraph, Timestamp};
use crate::ingest::LiteratureGraph;

const MAGIC: &[u8; 4] = b"LGC1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("not a literature-graph cache (bad magic)")]
    BadMagic,
    #[error("cache checksum mismatch (file truncated or corrupted)")]
    Checksum,
    #[error("cache ends unexpectedly")]
    Truncated,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u32s(&mut self, vs: &[u32]) {
        self.u64(vs.len() as u64);
        for &v in vs {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
    }

    fn i32s(&mut self, vs: impl ExactSizeIterator<Item = i32>) {
        self.u64(vs.len() as u64);
        for v in vs {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
    }

    fn offsets(&mut self, vs: &[usize]) {
        self.u64(vs.len() as u64);
        for &v in vs {
            self.buf.extend_from_slice(&(v as u64).to_le_bytes());
        }
    }

    fn strings(&mut self, vs: &[String]) {
        self.u64(vs.len() as u64);
        for v in vs {
            self.u64(v.len() as u64);
            self.buf.extend_from_slice(v.as_bytes());
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
        let end = self.pos.checked_add(n).ok_or(CacheError::Truncated)?;
        if end > self.bytes.len() {
            return Err(CacheError::Truncated);
        }
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u64(&mut self) -> Result<u64, CacheError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn len(&mut self) -> Result<usize, CacheError> {
        let n = self.u64()?;
        usize::try_from(n).map_err(|_| CacheError::Truncated)
    }

    fn u32s(&mut self) -> Result<Vec<u32>, CacheError> {
        let n = self.len()?;
        let raw = self.take(n.checked_mul(4).ok_or(CacheError::Truncated)?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn i32s(&mut self) -> Result<Vec<i32>, CacheError> {
        let n = self.len()?;
        let raw = self.take(n.checked_mul(4).ok_or(CacheError::Truncated)?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| i32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn offsets(&mut self) -> Result<Vec<usize>, CacheError> {
        let n = self.len()?;
        let raw = self.take(n.checked_mul(8).ok_or(CacheError::Truncated)?)?;
        raw.chunks_exact(8)
            .map(|c| {
                usize::try_from(u64::from_le_bytes(c.try_into().unwrap()))
                    .map_err(|_| CacheError::Truncated)
            })
            .collect()
    }

    fn strings(&mut self) -> Result<Vec<String>, CacheError> {
        let n = self.len()?;
        let mut out = Vec::with_capacity(n.min(1 << 20));
        for _ in 0..n {
            let len = self.len()?;
            let raw = self.take(len)?;
            out.push(String::from_utf8(raw.to_vec()).map_err(|_| CacheError::Truncated)?);
        }
        Ok(out)
    }
}

pub fn save_cache(lg: &LiteratureGraph, path: &Path) -> Result<(), CacheError> {
    let mut w = Writer {
        buf: Vec::with_capacity(64),
    };
    w.buf.extend_from_slice(MAGIC);
    w.u64(lg.n_articles() as u64);
    w.u64(lg.n_authors() as u64);
    w.i32s(lg.citations.pub_times().iter().map(|t| t.month_index()));
    let (cit_offsets, cit_targets) = lg.citations.csr_parts();
    w.offsets(cit_offsets);
    w.u32s(cit_targets);
    let (art_offsets, art_authors) = lg.authorship.csr_parts();
    w.offsets(art_offsets);
    w.u32s(art_authors);
    w.strings(&lg.article_keys);
    w.strings(&lg.author_keys);
    let checksum = fnv1a(&w.buf);
    w.u64(checksum);
    fs::write(path, &w.buf).map_err(|source| CacheError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_cache(path: &Path) -> Result<LiteratureGraph, CacheError> {
    let bytes = fs::read(path).map_err(|source| CacheError::Io {
        path: path.to_owned(),
        source,
    })?;
    if bytes.len() < MAGIC.len() + 8 {
        return Err(CacheError::Truncated);
    }
    if &bytes[..MAGIC.len()] != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let (body, tail) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().unwrap());
    if fnv1a(body) != stored {
        return Err(CacheError::Checksum);
    }

    let mut r = Reader {
        bytes: body,
        pos: MAGIC.len(),
    };
    let n_articles = r.len()?;
    let n_authors = r.len()?;
    let months = r.i32s()?;
    if months.len() != n_articles {
        return Err(CacheError::Truncated);
    }
    let pub_time: Vec<Timestamp> = months.into_iter().map(Timestamp::from_month_index).collect();
    let cit_offsets = r.offsets()?;
    let cit_targets = r.u32s()?;
    let art_offsets = r.offsets()?;
    let art_authors = r.u32s()?;
    let article_keys = r.strings()?;
    let author_keys = r.strings()?;
    if r.pos != body.len()
        || cit_offsets.len() != n_articles + 1
        || art_offsets.len() != n_articles + 1
        || article_keys.len() != n_articles
        || author_keys.len() != n_authors
    {
        return Err(CacheError::Truncated);
    }

    let citations = CitationGraph::from_csr_parts(pub_time, cit_offsets, cit_targets);
    let authorship = Bipartite::from_csr_parts(n_articles, n_authors, art_offsets, art_authors);
    Ok(LiteratureGraph {
        citations,
        authorship,
        article_keys,
        author_keys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::toy_corpus;
    use tempfile::tempdir;

    #[test]
    fn roundtrip_identity() {
        let lg = toy_corpus();
        let dir = tempdir().unwrap();
        let path = dir.path().join("toy.lgc");
        save_cache(&lg, &path).unwrap();
        let reloaded = load_cache(&path).unwrap();
        assert_eq!(lg, reloaded);
    }

    #[test]
    fn truncated_file_fails_checksum() {
        let lg = toy_corpus();
        let dir = tempdir().unwrap();
        let path = dir.path().join("toy.lgc");
        save_cache(&lg, &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 9);
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_cache(&path), Err(CacheError::Checksum)));
    }

    #[test]
    fn corrupted_byte_fails_checksum() {
        let lg = toy_corpus();
        let dir = tempdir().unwrap();
        let path = dir.path().join("toy.lgc");
        save_cache(&lg, &path).unwrap();
        let mut bytes = fs::read(&path).unwrap();
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0xff;
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_cache(&path), Err(CacheError::Checksum)));
    }

    #[test]
    fn wrong_magic_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bogus.lgc");
        fs::write(&path, b"NOPE------------").unwrap();
        assert!(matches!(load_cache(&path), Err(CacheError::BadMagic)));
    }

    #[test]
    fn tiny_file_is_truncated() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("tiny.lgc");
        fs::write(&path, b"LG").unwrap();
        assert!(matches!(load_cache(&path), Err(CacheError::Truncated)));
    }
}
