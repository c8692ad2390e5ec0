//! Graph-to-catalog driver: solve each embedding, keep perfect squares,
//! deduplicate by canonical tablecode.

use std::collections::BTreeMap;
use std::time::Duration;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::canon::canonicalize;
use crate::catalog::{CatalogEntry, EntryError};
use crate::classify::{classify, Classification, Structure};
use crate::code::TablecodeLine;
use crate::dissection::Dissection;
use crate::embedding::{filter_class, ClassFilter, PlanarEmbedding};
use crate::network::{analyze, Network, NetworkError, RowOutcome};

/// Which node is grounded; results do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Datum {
    #[default]
    Last,
    Node(usize),
}

fn network(e: &PlanarEmbedding, datum: Datum) -> Result<Network, NetworkError> {
    let net = Network::from_embedding(e);
    match datum {
        Datum::Last => Ok(net),
        Datum::Node(d) => net.with_datum(d),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedRow {
    pub polar_branch: usize,
    pub dissection: Dissection,
    pub cross: bool,
    pub canonical: TablecodeLine,
    pub classification: Classification,
    /// Earlier row of the same graph with the same canonical form.
    pub duplicate_of: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    ZeroCurrent,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphReport {
    pub complexity: BigInt,
    pub rows: Vec<SolvedRow>,
    pub skipped: Vec<(usize, SkipReason)>,
}

impl GraphReport {
    pub fn distinct(&self) -> impl Iterator<Item = &SolvedRow> {
        self.rows.iter().filter(|r| r.duplicate_of.is_none())
    }
}

/// Every battery choice of one graph, canonicalized and classified.
pub fn solve_graph(e: &PlanarEmbedding, datum: Datum) -> Result<GraphReport, NetworkError> {
    let analysis = analyze(&network(e, datum)?)?;
    let mut rows: Vec<SolvedRow> = Vec::new();
    let mut skipped = Vec::new();
    let mut seen: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for x in analysis.extract(e)? {
        let p = x.polar_branch;
        match x.outcome {
            RowOutcome::Rectangle { dissection, cross } => {
                let geometry = |m: String| NetworkError::GeometryError { branch: p, message: m };
                let canonical = canonicalize(&dissection).map_err(|c| geometry(c.to_string()))?.tablecode;
                let classification = classify(&dissection).map_err(|c| geometry(c.to_string()))?;
                let duplicate_of = seen.get(&canonical.key()).copied();
                if duplicate_of.is_none() {
                    seen.insert(canonical.key(), rows.len());
                }
                rows.push(SolvedRow { polar_branch: p, dissection, cross, canonical, classification, duplicate_of });
            }
            RowOutcome::ZeroCurrent => skipped.push((p, SkipReason::ZeroCurrent)),
            RowOutcome::Degenerate => skipped.push((p, SkipReason::Degenerate)),
        }
    }
    Ok(GraphReport { complexity: analysis.det(), rows, skipped })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub filter: ClassFilter,
    /// Drop graphs whose parallel edges do not bound a common digon face.
    pub exclude_separated_multi_edges: bool,
    pub datum: Datum,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { filter: ClassFilter::default(), exclude_separated_multi_edges: true, datum: Datum::Last }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub graphs_processed: u64,
    /// Graphs rejected by the class filter (not solved).
    pub graphs_filtered: u64,
    pub rows_solved: u64,
    pub squares_found: u64,
    pub perfect_squares: u64,
    pub compound_perfect: u64,
    pub distinct_after_dedup: u64,
    /// Rows skipped for a zero branch current or a degenerate rectangle.
    pub crossed_rows: u64,
    pub elapsed: Duration,
}

impl RunStats {
    pub fn add(&mut self, o: &RunStats) {
        self.graphs_processed += o.graphs_processed;
        self.graphs_filtered += o.graphs_filtered;
        self.rows_solved += o.rows_solved;
        self.squares_found += o.squares_found;
        self.perfect_squares += o.perfect_squares;
        self.compound_perfect += o.compound_perfect;
        self.crossed_rows += o.crossed_rows;
        self.elapsed += o.elapsed;
    }

    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("graphs_processed", self.graphs_processed.to_string()),
            ("graphs_filtered", self.graphs_filtered.to_string()),
            ("rows_solved", self.rows_solved.to_string()),
            ("crossed_rows", self.crossed_rows.to_string()),
            ("squares_found", self.squares_found.to_string()),
            ("perfect_squares", self.perfect_squares.to_string()),
            ("compound_perfect", self.compound_perfect.to_string()),
            ("distinct_after_dedup", self.distinct_after_dedup.to_string()),
            ("elapsed_ms", self.elapsed.as_millis().to_string()),
        ]
    }

    /// Aligned two-column table.
    pub fn table(&self) -> String {
        let fields = self.fields();
        let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let vw = fields.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        fields.iter().map(|(k, v)| format!("{k:<w$}  {v:>vw$}\n")).collect()
    }

    pub fn key_values(&self) -> String {
        self.fields().iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Where a square was first seen: input file, graph index, battery branch.
pub type Origin = (usize, u64, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found {
    pub tablecode: TablecodeLine,
    pub first: Origin,
    pub occurrences: u64,
}

/// Partial result of an enumeration. Merging is commutative and
/// associative, so batch and thread layout do not affect the outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub stats: RunStats,
    pub found: BTreeMap<Vec<u64>, Found>,
}

impl Tally {
    pub fn merge(mut self, other: Tally) -> Tally {
        self.stats.add(&other.stats);
        for (k, f) in other.found {
            self.record(k, f);
        }
        self.stats.distinct_after_dedup = self.found.len() as u64;
        self
    }

    pub fn record(&mut self, key: Vec<u64>, f: Found) {
        match self.found.get_mut(&key) {
            Some(g) => {
                g.occurrences += f.occurrences;
                g.first = g.first.min(f.first);
            }
            None => {
                self.found.insert(key, f);
            }
        }
    }

    /// Catalog entries in size-then-tablecode order.
    pub fn entries(&self) -> Result<Vec<CatalogEntry>, EntryError> {
        let mut out: Vec<CatalogEntry> = self
            .found
            .values()
            .map(|f| {
                let d = f.tablecode.place().map_err(|_| EntryError::InvalidTiling)?;
                CatalogEntry::from_dissection(&d)
            })
            .collect::<Result<_, _>>()?;
        out.sort_by_key(|e| e.sort_key());
        Ok(out)
    }
}

/// Whether a graph belongs to the requested class.
pub fn accepts(e: &PlanarEmbedding, opts: &EnumerateOptions) -> bool {
    filter_class(e, &opts.filter) && !(opts.exclude_separated_multi_edges && e.has_separated_multi_edge())
}

/// Solves one graph and keeps its perfect squared squares.
pub fn process_graph(file: usize, index: u64, e: &PlanarEmbedding, opts: &EnumerateOptions) -> Result<Tally, NetworkError> {
    let mut t = Tally::default();
    if !accepts(e, opts) {
        t.stats.graphs_filtered = 1;
        return Ok(t);
    }
    t.stats.graphs_processed = 1;
    let analysis = analyze(&network(e, opts.datum)?)?;
    for x in analysis.extract(e)? {
        let RowOutcome::Rectangle { dissection: d, .. } = x.outcome else {
            t.stats.crossed_rows += 1;
            continue;
        };
        t.stats.rows_solved += 1;
        if !d.is_square() {
            continue;
        }
        t.stats.squares_found += 1;
        if !d.is_perfect() {
            continue;
        }
        t.stats.perfect_squares += 1;
        let geometry = |m: String| NetworkError::GeometryError { branch: x.polar_branch, message: m };
        if classify(&d).map_err(|c| geometry(c.to_string()))?.structure == Structure::Compound {
            t.stats.compound_perfect += 1;
        }
        let tablecode = canonicalize(&d).map_err(|c| geometry(c.to_string()))?.tablecode;
        t.record(tablecode.key(), Found { tablecode, first: (file, index, x.polar_branch), occurrences: 1 });
    }
    t.stats.distinct_after_dedup = t.found.len() as u64;
    Ok(t)
}

/// Processes a batch of `(graph index, embedding)` pairs in parallel.
/// On failure reports the lowest failing graph index.
pub fn enumerate_batch(
    file: usize,
    graphs: &[(u64, PlanarEmbedding)],
    opts: &EnumerateOptions,
) -> Result<Tally, (u64, NetworkError)> {
    graphs
        .par_iter()
        .map(|(i, e)| process_graph(file, *i, e, opts).map_err(|err| (*i, err)))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Perfection;
    use crate::embedding::Connectivity;
    use crate::fixtures::{nine_square_cnet, tetrahedron};

    #[test]
    fn fixture_graph_gives_three_rectangles() {
        let r = solve_graph(&nine_square_cnet(), Datum::Last).unwrap();
        assert_eq!(r.complexity, BigInt::from(130));
        let mut dims: Vec<(u64, u64, String)> = r
            .distinct()
            .map(|s| (s.dissection.width().max(s.dissection.height()), s.dissection.width().min(s.dissection.height()), s.classification.flags()))
            .collect();
        dims.sort();
        assert_eq!(
            dims,
            vec![(15, 11, "SISR".to_string()), (33, 32, "SPSR".to_string()), (69, 61, "SPSR".to_string())]
        );
        assert_eq!(r.rows.len() + r.skipped.len(), 10);
    }

    #[test]
    fn datum_does_not_change_rows() {
        let a = solve_graph(&nine_square_cnet(), Datum::Last).unwrap();
        let b = solve_graph(&nine_square_cnet(), Datum::Node(0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tetrahedron_rows_are_imperfect() {
        let r = solve_graph(&tetrahedron(), Datum::Last).unwrap();
        assert!(r.rows.iter().all(|s| s.dissection.order() == 5 && s.classification.perfection == Perfection::Imperfect));
    }

    #[test]
    fn filter_counts_and_merge_order() {
        let opts = EnumerateOptions {
            filter: ClassFilter { connectivity: Connectivity::AtLeast2, ..ClassFilter::default() },
            ..Default::default()
        };
        let graphs: Vec<(u64, PlanarEmbedding)> = vec![(0, nine_square_cnet()), (1, tetrahedron())];
        let t = enumerate_batch(0, &graphs, &opts).unwrap();
        assert_eq!(t.stats.graphs_processed, 2);
        assert_eq!(t.stats.rows_solved + t.stats.crossed_rows, 16);
        let strict = enumerate_batch(0, &graphs, &EnumerateOptions::default()).unwrap();
        assert_eq!(strict.stats.graphs_filtered, 2);
        let a = process_graph(0, 0, &graphs[0].1, &opts).unwrap();
        let b = process_graph(0, 1, &graphs[1].1, &opts).unwrap();
        assert_eq!(a.clone().merge(b.clone()), b.merge(a));
    }

    #[test]
    fn stats_render() {
        let s = RunStats { graphs_processed: 3, ..Default::default() };
        assert!(s.key_values().starts_with("graphs_processed=3\n"));
        let t = s.table();
        assert!(t.lines().all(|l| l.len() == t.lines().next().unwrap().len()));
    }
}
