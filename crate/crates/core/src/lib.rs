//! Squared rectangles and perfect squared squares.
//!
//! Planar embeddings are solved as electrical networks with exact integer
//! arithmetic; each choice of battery edge yields a squared rectangle. The
//! resulting dissections are validated, classified and reduced to a canonical
//! tablecode for cataloguing.

pub mod canon;
pub mod catalog;
pub mod classify;
pub mod cnet;
pub mod code;
pub mod dissection;
pub mod embedding;
pub mod exact;
pub mod fixtures;
pub mod generate;
pub mod network;
pub mod pipeline;
pub mod planar_code;
pub mod subrect;
pub mod svg;

pub use canon::{canonicalize, enumerate_isomers, CanonError, Canonical};
pub use code::{
    emit_all_codes, emit_code, parse_bouwkampcode, place_elements, to_tablecode, BouwkampCode, Extended,
    PlacementError, SyntaxError, TablecodeLine,
};
pub use dissection::{validate_tiling, Dissection, Element, Symmetry, ValidationReport, Violation};
pub use subrect::{find_subrectangles, reorient, transform_subrectangle, SubrectError, SubrectangleRegion};
pub use classify::{classify, Classification, InvalidTiling, Perfection, Shape, Structure, TypeCode};
pub use embedding::{filter_class, ClassFilter, Connectivity, EmbeddingError, PlanarEmbedding};
pub use generate::{brute_generate, triangulations, GenerateError};
pub use planar_code::{read_planar_code, write_planar_code, FormatError, PlanarCodeReader};
pub use network::{
    analyze, complexity, detect_square, extract_dissections, full_currents, reduce, voltage_matrix, Analysis,
    CurrentSolution, Extraction, Network, NetworkAnalysis, NetworkError, RowOutcome,
};
pub use catalog::{assign_ids, check_record, parse_record, record_lines, CatalogEntry, Record, RecordBody, RecordCheck};
pub use pipeline::{enumerate_batch, process_graph, solve_graph, Datum, EnumerateOptions, GraphReport, RunStats, Tally};
pub use svg::{render_svg, SvgOptions};
pub use cnet::network_of;
