//! Curvature scans over planar_code corpora.
//!
//! Graphs are parsed sequentially and evaluated in batches on a worker pool.
//! Records are handed to the caller in corpus order whatever the pool size.

use std::collections::BTreeMap;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{hypercube_skeleton, prism_skeleton, simplex_skeleton};
use crate::forman::{forman_profile, is_hexagonal_pyramid, screen_low_dimension};
use crate::iso::skeletons_isomorphic;
use crate::planar_code::{parse_planar_code, PlanarCodeError};
use crate::report::{round_sig, ScanRecord};
use crate::resistance::resistance_profile;
use crate::skeleton::{faces_from_rotation, graph_diameter, RotationSystem, TwoSkeleton};

/// The count the classification of simple positive polyhedra states.
pub const STATED_SIMPLE_POSITIVE_COUNT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    FormanPositive,
    ResistancePositive,
    Both,
}

impl Predicate {
    fn forman(self) -> bool {
        matches!(self, Predicate::FormanPositive | Predicate::Both)
    }

    fn resistance(self) -> bool {
        matches!(self, Predicate::ResistancePositive | Predicate::Both)
    }

    pub fn accepts(self, r: &ScanRecord) -> bool {
        let f = r.forman_positive.unwrap_or(false);
        let k = r.resist_positive.unwrap_or(false);
        match self {
            Predicate::FormanPositive => f,
            Predicate::ResistancePositive => k,
            Predicate::Both => f && k,
        }
    }
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Parse(#[from] PlanarCodeError),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Sink(#[from] crate::report::ReportError),
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub predicate: Predicate,
    pub jobs: usize,
    pub batch: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { predicate: Predicate::FormanPositive, jobs: 1, batch: 4096 }
    }
}

/// Extra facts gathered while evaluating one graph, used by the summary.
#[derive(Debug, Clone)]
struct Facts {
    simple: bool,
    max_degree: usize,
    max_face: usize,
    hex_pyramid: bool,
}

fn evaluate(index: usize, rot: &RotationSystem, predicate: Predicate) -> (ScanRecord, Option<Facts>) {
    let n = rot.n();
    let m = rot.edge_count();
    let mut record = ScanRecord {
        index,
        n,
        m,
        f: 0,
        forman_min: None,
        forman_positive: None,
        resist_min: None,
        resist_positive: None,
        diameter: None,
        violations: String::new(),
    };
    let sk = match faces_from_rotation(rot) {
        Ok(sk) => sk,
        Err(e) => {
            record.violations = format!("error: {e}");
            return (record, None);
        }
    };
    record.f = sk.faces().len();
    let g = sk.graph();
    record.diameter = graph_diameter(g).ok();
    if predicate.forman() {
        let p = forman_profile(&sk);
        record.forman_min = Some(p.min);
        record.forman_positive = Some(p.positive);
    }
    if predicate.resistance() {
        match resistance_profile(g) {
            Ok(p) => {
                record.resist_min = Some(round_sig(p.min));
                record.resist_positive = Some(p.positive);
            }
            Err(e) => {
                record.violations = format!("error: {e}");
                return (record, None);
            }
        }
    }
    let violations = screen_low_dimension(&sk, 3).unwrap_or_default();
    record.violations = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
    let max_degree = g.max_degree();
    let max_face = sk.max_face_len();
    let facts = Facts {
        simple: (0..n).all(|v| g.degree(v) == 3),
        max_degree,
        max_face,
        hex_pyramid: (max_degree == 6 || max_face == 6) && is_hexagonal_pyramid(&sk),
    };
    (record, Some(facts))
}

/// Per-vertex-count tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub graphs: u64,
    pub positive: u64,
    pub errors: u64,
}

/// A simple (3-regular) positive graph, named when it matches a known family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplePositive {
    pub index: usize,
    pub n: usize,
    pub name: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub predicate: Option<Predicate>,
    pub total: u64,
    pub positive: u64,
    pub errors: u64,
    pub per_n: BTreeMap<usize, CountRow>,
    pub simple_positives: Vec<SimplePositive>,
    /// Set when the number of simple positives differs from the stated five.
    pub simple_count_mismatch: bool,
    /// Positive graphs breaking a structural necessary condition.
    pub structural_exceptions: Vec<String>,
    /// Positive hexagonal pyramids (allowed to reach degree and face length 6).
    pub hexagonal_pyramids: Vec<usize>,
}

impl ScanSummary {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("graphs: {}", self.total), format!("positive: {}", self.positive)];
        if self.errors > 0 {
            out.push(format!("errors: {}", self.errors));
        }
        for (n, row) in &self.per_n {
            out.push(format!("n={n}: graphs {} positive {}", row.graphs, row.positive));
        }
        let names: Vec<String> =
            self.simple_positives.iter().map(|s| s.name.clone().unwrap_or_else(|| format!("#{}", s.index))).collect();
        out.push(format!("simple positive: {} [{}]", self.simple_positives.len(), names.join(", ")));
        if self.simple_count_mismatch {
            out.push(format!(
                "note: simple positive count {} differs from the stated {}",
                self.simple_positives.len(),
                STATED_SIMPLE_POSITIVE_COUNT
            ));
        }
        out.push(format!("structural exceptions: {}", self.structural_exceptions.len()));
        out.extend(self.structural_exceptions.iter().map(|s| format!("  {s}")));
        out
    }
}

fn simple_name(sk: &TwoSkeleton) -> Option<String> {
    let named = [
        ("tetrahedron", simplex_skeleton(3)),
        ("triangular prism", prism_skeleton(3)),
        ("cube", hypercube_skeleton(3)),
        ("pentagonal prism", prism_skeleton(5)),
    ];
    named
        .into_iter()
        .find(|(_, cand)| cand.as_ref().map(|c| skeletons_isomorphic(sk, c)).unwrap_or(false))
        .map(|(name, _)| name.to_string())
}

/// Output of a scan: the summary plus the rotation systems of accepted graphs.
#[derive(Debug, Clone, Default)]
pub struct ScanOutput {
    pub summary: ScanSummary,
    pub positives: Vec<(usize, RotationSystem)>,
}

/// Scans one or more planar_code streams, numbering graphs consecutively
/// from `0` across them, and feeds each record to `sink` in order.
pub fn scan_corpus<R, F>(sources: Vec<R>, opts: ScanOptions, mut sink: F) -> Result<ScanOutput, ScanError>
where
    R: BufRead,
    F: FnMut(&ScanRecord) -> Result<(), ScanError>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| ScanError::Pool(e.to_string()))?;
    let mut out = ScanOutput::default();
    out.summary.predicate = Some(opts.predicate);
    let mut index = 0usize;
    let mut batch: Vec<(usize, RotationSystem)> = Vec::with_capacity(opts.batch);

    let mut flush = |batch: &mut Vec<(usize, RotationSystem)>, out: &mut ScanOutput| -> Result<(), ScanError> {
        let results: Vec<(ScanRecord, Option<Facts>)> =
            pool.install(|| batch.par_iter().map(|(i, rot)| evaluate(*i, rot, opts.predicate)).collect());
        for ((record, facts), (_, rot)) in results.into_iter().zip(batch.drain(..)) {
            absorb(out, &record, facts.as_ref(), &rot, opts.predicate);
            sink(&record)?;
        }
        Ok(())
    };

    for source in sources {
        for item in parse_planar_code(source) {
            batch.push((index, item?));
            index += 1;
            if batch.len() >= opts.batch.max(1) {
                flush(&mut batch, &mut out)?;
            }
        }
    }
    flush(&mut batch, &mut out)?;
    out.summary.simple_count_mismatch = out.summary.simple_positives.len() != STATED_SIMPLE_POSITIVE_COUNT;
    Ok(out)
}

fn absorb(
    out: &mut ScanOutput,
    record: &ScanRecord,
    facts: Option<&Facts>,
    rot: &RotationSystem,
    predicate: Predicate,
) {
    let s = &mut out.summary;
    s.total += 1;
    let row = s.per_n.entry(record.n).or_default();
    row.graphs += 1;
    let Some(facts) = facts else {
        s.errors += 1;
        row.errors += 1;
        return;
    };
    if !predicate.accepts(record) {
        return;
    }
    s.positive += 1;
    row.positive += 1;
    out.positives.push((record.index, rot.clone()));

    if facts.simple {
        let name = faces_from_rotation(rot).ok().and_then(|sk| simple_name(&sk));
        s.simple_positives.push(SimplePositive { index: record.index, n: record.n, name });
    }
    if facts.hex_pyramid {
        s.hexagonal_pyramids.push(record.index);
    }
    let mut reasons = Vec::new();
    let six_allowed = facts.hex_pyramid;
    if facts.max_degree > 6 || (facts.max_degree == 6 && !six_allowed) {
        reasons.push(format!("max degree {}", facts.max_degree));
    }
    if facts.max_face > 6 || (facts.max_face == 6 && !six_allowed) {
        reasons.push(format!("max face {}", facts.max_face));
    }
    if record.diameter.is_none_or(|d| d > 6) {
        reasons.push(format!("diameter {:?}", record.diameter));
    }
    if record.n > 16 && record.f > 16 {
        reasons.push(format!("f0 = {}, f2 = {}", record.n, record.f));
    }
    if !reasons.is_empty() {
        s.structural_exceptions.push(format!("#{}: {}", record.index, reasons.join(", ")));
    }
}

/// Convenience wrapper collecting every record in memory.
pub fn scan_to_vec<R: BufRead>(sources: Vec<R>, opts: ScanOptions) -> Result<(Vec<ScanRecord>, ScanOutput), ScanError> {
    let mut records = Vec::new();
    let out = scan_corpus(sources, opts, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::pyramid_skeleton;
    use crate::planar_code::{encode_graph, HEADER};

    fn corpus(skeletons: &[TwoSkeleton]) -> Vec<u8> {
        let mut bytes = HEADER.to_vec();
        for sk in skeletons {
            encode_graph(&sk.rotation_system().unwrap(), &mut bytes).unwrap();
        }
        bytes
    }

    #[test]
    fn small_mixed_corpus() {
        let sks = vec![
            simplex_skeleton(3).unwrap(),
            prism_skeleton(6).unwrap(),
            pyramid_skeleton(6).unwrap(),
            pyramid_skeleton(7).unwrap(),
            hypercube_skeleton(3).unwrap(),
        ];
        let bytes = corpus(&sks);
        let opts = ScanOptions { predicate: Predicate::Both, jobs: 2, batch: 2 };
        let (records, out) = scan_to_vec(vec![&bytes[..]], opts).unwrap();
        let flags: Vec<bool> = records.iter().map(|r| r.forman_positive.unwrap()).collect();
        assert_eq!(flags, vec![true, false, true, false, true]);
        assert_eq!(records.iter().map(|r| r.index).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        // Forman- and resistance-positive: tetrahedron and cube. The hexagonal
        // pyramid has a negative apex.
        assert_eq!(out.summary.positive, 2);
        assert!(records[2].resist_positive == Some(false));
        assert_eq!(out.summary.simple_positives.len(), 2);
        assert!(out.summary.simple_count_mismatch);
        assert!(out.summary.structural_exceptions.is_empty());
        assert!(records[3].violations.contains("deg(v7)=7"));
    }

    #[test]
    fn errors_are_recorded_not_fatal() {
        // K5 with a non-planar rotation, then a tetrahedron.
        let mut bytes = vec![5];
        for v in 1..=5u8 {
            bytes.extend((1..=5u8).filter(|&u| u != v));
            bytes.push(0);
        }
        bytes.extend(corpus(&[simplex_skeleton(3).unwrap()])[15..].iter());
        let (records, out) = scan_to_vec(vec![&bytes[..]], ScanOptions::default()).unwrap();
        assert!(records[0].violations.starts_with("error:"));
        assert_eq!(records[1].forman_min, Some(4));
        assert_eq!(out.summary.errors, 1);
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let sks: Vec<TwoSkeleton> = (3..9).map(|n| prism_skeleton(n).unwrap()).collect();
        let bytes = corpus(&sks);
        let one = scan_to_vec(vec![&bytes[..]], ScanOptions { jobs: 1, batch: 3, ..Default::default() }).unwrap().0;
        let four = scan_to_vec(vec![&bytes[..]], ScanOptions { jobs: 4, batch: 5, ..Default::default() }).unwrap().0;
        assert_eq!(one, four);
    }
}
