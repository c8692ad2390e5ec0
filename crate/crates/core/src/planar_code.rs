//! plantri's planar_code binary format.
//!
//! An optional `>>planar_code<<` header, then per graph one byte `n` and for
//! each vertex its clockwise neighbors (1-based) closed by a 0 byte.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::embedding::{EmbeddingError, PlanarEmbedding};

pub const HEADER: &[u8] = b">>planar_code<<";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("byte {offset}: {message}")]
    Malformed { offset: u64, message: String },
    #[error("byte {offset}: record truncated")]
    Truncated { offset: u64 },
    #[error("byte {offset}: invalid embedding: {source}")]
    Embedding { offset: u64, source: EmbeddingError },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

impl FormatError {
    pub fn offset(&self) -> Option<u64> {
        match self {
            FormatError::Malformed { offset, .. }
            | FormatError::Truncated { offset }
            | FormatError::Embedding { offset, .. } => Some(*offset),
            FormatError::Io(_) => None,
        }
    }
}

/// Lazily decodes embeddings from a byte stream. Stops after the first error.
pub struct PlanarCodeReader<R> {
    inner: io::Bytes<io::BufReader<R>>,
    offset: u64,
    pending: Option<u8>,
    started: bool,
    failed: bool,
}

impl<R: Read> PlanarCodeReader<R> {
    pub fn new(reader: R) -> Self {
        PlanarCodeReader {
            inner: io::BufReader::new(reader).bytes(),
            offset: 0,
            pending: None,
            started: false,
            failed: false,
        }
    }

    /// Byte offset of the next unread byte.
    pub fn offset(&self) -> u64 {
        self.offset - self.pending.is_some() as u64
    }

    fn byte(&mut self) -> Result<Option<u8>, FormatError> {
        if let Some(b) = self.pending.take() {
            return Ok(Some(b));
        }
        match self.inner.next() {
            None => Ok(None),
            Some(Ok(b)) => {
                self.offset += 1;
                Ok(Some(b))
            }
            Some(Err(e)) => Err(FormatError::Io(e)),
        }
    }

    fn skip_header(&mut self) -> Result<(), FormatError> {
        let Some(first) = self.byte()? else { return Ok(()) };
        if first != b'>' {
            self.pending = Some(first);
            return Ok(());
        }
        for &want in &HEADER[1..] {
            match self.byte()? {
                Some(b) if b == want => {}
                Some(_) => {
                    return Err(FormatError::Malformed { offset: self.offset - 1, message: "bad header".into() })
                }
                None => return Err(FormatError::Truncated { offset: self.offset }),
            }
        }
        Ok(())
    }

    fn record(&mut self) -> Result<Option<PlanarEmbedding>, FormatError> {
        let start = self.offset();
        let Some(n) = self.byte()? else { return Ok(None) };
        if n == 0 {
            return Err(FormatError::Malformed {
                offset: start,
                message: "vertex counts of 255 or more are not supported".into(),
            });
        }
        let n = n as usize;
        let mut neighbors = Vec::with_capacity(n);
        for _ in 0..n {
            let mut list = Vec::new();
            loop {
                let at = self.offset();
                match self.byte()? {
                    None => return Err(FormatError::Truncated { offset: self.offset }),
                    Some(0) => break,
                    Some(b) if b as usize > n => {
                        return Err(FormatError::Malformed {
                            offset: at,
                            message: format!("neighbor {b} out of range for {n} vertices"),
                        })
                    }
                    Some(b) => list.push(b as usize - 1),
                }
            }
            neighbors.push(list);
        }
        PlanarEmbedding::from_neighbors(&neighbors)
            .map(Some)
            .map_err(|source| FormatError::Embedding { offset: start, source })
    }
}

impl<R: Read> Iterator for PlanarCodeReader<R> {
    type Item = Result<PlanarEmbedding, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        if !self.started {
            self.started = true;
            if let Err(e) = self.skip_header() {
                self.failed = true;
                return Some(Err(e));
            }
        }
        match self.record() {
            Ok(Some(e)) => Some(Ok(e)),
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

pub fn read_planar_code<R: Read>(reader: R) -> PlanarCodeReader<R> {
    PlanarCodeReader::new(reader)
}

/// Encodes one embedding (no header).
pub fn encode(e: &PlanarEmbedding) -> Vec<u8> {
    assert!(e.n() < 255, "vertex count must fit one byte");
    let mut out = vec![e.n() as u8];
    for list in e.neighbors() {
        out.extend(list.iter().map(|&w| (w + 1) as u8));
        out.push(0);
    }
    out
}

pub fn write_planar_code<'a, W: Write>(
    mut w: W,
    embeddings: impl IntoIterator<Item = &'a PlanarEmbedding>,
) -> io::Result<()> {
    w.write_all(HEADER)?;
    for e in embeddings {
        w.write_all(&encode(e))?;
    }
    w.flush()
}
