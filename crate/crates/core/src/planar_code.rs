//! Reader and writer for plantri's `planar_code` format (one-byte variant).
//!
//! Layout: an optional `>>planar_code<<` header, then per graph one order
//! byte `n` followed, for each vertex `1..=n`, by its neighbors (1-indexed,
//! in cyclic embedding order) and a terminating zero byte.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::skeleton::{RotationSystem, SkeletonError};

pub const HEADER: &[u8] = b">>planar_code<<";

#[derive(Debug, Error)]
pub enum PlanarCodeError {
    #[error("graph {graph}: order byte is 0 (the two-byte format for n >= 256 is not supported)")]
    ZeroOrder { graph: usize },
    #[error("graph {graph}: vertex {vertex} lists neighbor {neighbor} outside 1..={n}")]
    NeighborOutOfRange { graph: usize, vertex: usize, neighbor: u8, n: usize },
    #[error("graph {graph}: stream ends inside the vertex lists")]
    Truncated { graph: usize },
    #[error("graph {graph}: {source}")]
    Rotation { graph: usize, source: SkeletonError },
    #[error("cannot encode a graph on {0} vertices in one-byte planar_code")]
    TooLarge(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Lazily decodes rotation systems from a byte stream. Graph ordinals in
/// errors count from 0. Iteration stops after the first error.
pub struct PlanarCodeReader<R> {
    inner: R,
    graph: usize,
    started: bool,
    failed: bool,
}

impl<R: BufRead> PlanarCodeReader<R> {
    pub fn new(inner: R) -> Self {
        PlanarCodeReader { inner, graph: 0, started: false, failed: false }
    }

    fn skip_header(&mut self) -> io::Result<()> {
        let buf = self.inner.fill_buf()?;
        if buf.len() >= HEADER.len() && &buf[..HEADER.len()] == HEADER {
            self.inner.consume(HEADER.len());
        } else if buf.len() < HEADER.len() && HEADER.starts_with(buf) && !buf.is_empty() {
            // Header split across buffer refills; read it byte by byte.
            let mut head = [0u8; 15];
            let mut got = 0;
            while got < HEADER.len() {
                let chunk = self.inner.fill_buf()?;
                if chunk.is_empty() {
                    break;
                }
                let take = (HEADER.len() - got).min(chunk.len());
                head[got..got + take].copy_from_slice(&chunk[..take]);
                if head[..got + take] != HEADER[..got + take] {
                    return Err(io::Error::new(io::ErrorKind::InvalidData, "partial header"));
                }
                self.inner.consume(take);
                got += take;
            }
        }
        Ok(())
    }

    fn read_byte(&mut self) -> Result<Option<u8>, PlanarCodeError> {
        let mut b = [0u8; 1];
        match self.inner.read(&mut b)? {
            0 => Ok(None),
            _ => Ok(Some(b[0])),
        }
    }

    fn next_graph(&mut self) -> Result<Option<RotationSystem>, PlanarCodeError> {
        if !self.started {
            self.started = true;
            self.skip_header()?;
        }
        let graph = self.graph;
        let n = match self.read_byte()? {
            None => return Ok(None),
            Some(0) => return Err(PlanarCodeError::ZeroOrder { graph }),
            Some(n) => n as usize,
        };
        let mut rotations = Vec::with_capacity(n);
        for vertex in 0..n {
            let mut rot = Vec::new();
            loop {
                match self.read_byte()? {
                    None => return Err(PlanarCodeError::Truncated { graph }),
                    Some(0) => break,
                    Some(b) if b as usize > n => {
                        return Err(PlanarCodeError::NeighborOutOfRange { graph, vertex, neighbor: b, n })
                    }
                    Some(b) => rot.push(b as usize - 1),
                }
            }
            rotations.push(rot);
        }
        self.graph += 1;
        RotationSystem::new(rotations).map(Some).map_err(|source| PlanarCodeError::Rotation { graph, source })
    }
}

impl<R: BufRead> Iterator for PlanarCodeReader<R> {
    type Item = Result<RotationSystem, PlanarCodeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.next_graph() {
            Ok(Some(rot)) => Some(Ok(rot)),
            Ok(None) => None,
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

pub fn parse_planar_code<R: BufRead>(reader: R) -> PlanarCodeReader<R> {
    PlanarCodeReader::new(reader)
}

/// Whether a byte prefix looks like planar_code rather than JSON.
pub fn looks_like_planar_code(prefix: &[u8]) -> bool {
    if prefix.starts_with(HEADER) {
        return true;
    }
    match prefix.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') | None => false,
        Some(_) => true,
    }
}

pub fn encode_graph(rot: &RotationSystem, out: &mut Vec<u8>) -> Result<(), PlanarCodeError> {
    let n = rot.n();
    if n == 0 || n > 255 {
        return Err(PlanarCodeError::TooLarge(n));
    }
    out.push(n as u8);
    for v in 0..n {
        out.extend(rot.rotation(v).iter().map(|&u| (u + 1) as u8));
        out.push(0);
    }
    Ok(())
}

pub fn write_planar_code<'a, W: Write>(
    mut w: W,
    graphs: impl IntoIterator<Item = &'a RotationSystem>,
    header: bool,
) -> Result<(), PlanarCodeError> {
    if header {
        w.write_all(HEADER)?;
    }
    let mut buf = Vec::new();
    for rot in graphs {
        buf.clear();
        encode_graph(rot, &mut buf)?;
        w.write_all(&buf)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::faces_from_rotation;

    const TETRA: &[u8] = &[4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0];

    fn parse(bytes: &[u8]) -> Vec<Result<RotationSystem, PlanarCodeError>> {
        parse_planar_code(bytes).collect()
    }

    #[test]
    fn tetrahedron_with_and_without_header() {
        let with: Vec<u8> = [HEADER, TETRA].concat();
        for bytes in [TETRA, &with[..]] {
            let graphs = parse(bytes);
            assert_eq!(graphs.len(), 1);
            let rot = graphs.into_iter().next().unwrap().unwrap();
            let sk = faces_from_rotation(&rot).unwrap();
            assert_eq!(sk.faces().len(), 4);
        }
    }

    #[test]
    fn empty_after_header() {
        assert!(parse(HEADER).is_empty());
        assert!(parse(&[]).is_empty());
    }

    #[test]
    fn malformed_inputs() {
        let two = [TETRA, &TETRA[..9]].concat();
        let out = parse(&two);
        assert_eq!(out.len(), 2);
        assert!(matches!(out[1], Err(PlanarCodeError::Truncated { graph: 1 })));
        assert!(matches!(parse(&[0, 1])[0], Err(PlanarCodeError::ZeroOrder { graph: 0 })));
        assert!(matches!(
            parse(&[2, 3, 0, 1, 0])[0],
            Err(PlanarCodeError::NeighborOutOfRange { graph: 0, vertex: 0, neighbor: 3, .. })
        ));
        assert!(matches!(parse(&[2, 2, 0, 0])[0], Err(PlanarCodeError::Rotation { graph: 0, .. })));
    }

    #[test]
    fn encode_round_trip() {
        let rot = parse(TETRA).remove(0).unwrap();
        let mut out = Vec::new();
        write_planar_code(&mut out, [&rot, &rot], true).unwrap();
        assert_eq!(&out[..15], HEADER);
        assert_eq!(&out[15..32], TETRA);
        let back: Vec<_> = parse(&out).into_iter().map(Result::unwrap).collect();
        assert_eq!(back, vec![rot.clone(), rot]);
    }

    #[test]
    fn format_sniffing() {
        assert!(looks_like_planar_code(HEADER));
        assert!(looks_like_planar_code(TETRA));
        assert!(!looks_like_planar_code(b"  {\"n\": 2}"));
    }
}
