//! Census ingestion: polytope file formats and the batch verification
//! pipeline with machine-readable reports.

pub mod batch;
pub mod parse;

pub use batch::{
    batch_verify, emit_report, BatchOptions, BatchResult, EntryOutcome, ReportFormat, ReportRecord,
    Summary, REPORT_SCHEMA_VERSION,
};
pub use parse::{detect_format, emit_simple, parse_any, parse_palp, parse_simple, InputFormat};

use crate::lattice::LatticePoint;

/// One raw polytope read from a census file, before any geometry is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    /// 1-based position in the input file.
    pub id: usize,
    pub vertices: Vec<LatticePoint>,
    pub comment: Option<String>,
}
