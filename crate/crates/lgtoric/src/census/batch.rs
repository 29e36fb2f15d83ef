//! Batch verification over a parsed census and the report formats.

use rayon::prelude::*;
use serde::Serialize;

use super::CensusEntry;
use crate::diamond::{verify_mirror, VerificationRecord};
use crate::error::Error;
use crate::faces::DualPair;
use crate::lattice::{convex_hull, is_reflexive};

/// Bump when the report field set changes.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One flattened verification result, the unit of the CSV/JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub id: usize,
    pub l_delta: i64,
    pub l_dual: i64,
    pub h11_x: i64,
    pub h21_z: i64,
    pub h11_z: i64,
    pub pic_toric: i64,
    pub ph: i64,
    pub f21: i64,
    pub mirror_ok: bool,
    pub count_identity_ok: bool,
    pub count_identity_dual_ok: bool,
    pub curve_count_ok: bool,
    pub h11_z_ledger_ok: bool,
    pub h21_genus_ok: bool,
    pub picard_sum_ok: bool,
    pub partition_ok: bool,
    pub extremal_flag: bool,
    pub extremal_h21_ok: bool,
    pub sphere_ok: bool,
    pub pass: bool,
}

impl ReportRecord {
    pub fn from_verification(rec: &VerificationRecord) -> Self {
        let check = |name: &str| rec.identity(name).is_some_and(|c| c.passes());
        ReportRecord {
            id: rec.id,
            l_delta: rec.data.ell_delta,
            l_dual: rec.data.ell_delta_dual,
            h11_x: rec.data.h11_x,
            h21_z: rec.data.h21_z,
            h11_z: rec.data.h11_z,
            pic_toric: rec.data.pic_toric_fiber,
            ph: rec.data.ph,
            f21: rec.data.ph - 2 + rec.data.h21_z,
            mirror_ok: rec.mirror_ok(),
            count_identity_ok: check("count_identity"),
            count_identity_dual_ok: check("count_identity_dual"),
            curve_count_ok: check("curve_count_two_routes"),
            h11_z_ledger_ok: check("h11_z_from_ledger"),
            h21_genus_ok: check("h21_z_is_genus_sum"),
            picard_sum_ok: check("picard_rank_sum"),
            partition_ok: check("point_count_partition") && check("point_count_partition_dual"),
            extremal_flag: rec.extremal_flag,
            extremal_h21_ok: check("extremal_implies_h21_zero"),
            sphere_ok: rec.sphere_ok(),
            pass: rec.overall_pass(),
        }
    }

    const CSV_HEADER: &'static str = "id,l_delta,l_dual,h11_x,h21_z,h11_z,pic_toric,ph,f21,\
mirror_ok,count_identity_ok,count_identity_dual_ok,curve_count_ok,h11_z_ledger_ok,\
h21_genus_ok,picard_sum_ok,partition_ok,extremal_flag,extremal_h21_ok,sphere_ok,pass";

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.l_delta,
            self.l_dual,
            self.h11_x,
            self.h21_z,
            self.h11_z,
            self.pic_toric,
            self.ph,
            self.f21,
            self.mirror_ok,
            self.count_identity_ok,
            self.count_identity_dual_ok,
            self.curve_count_ok,
            self.h11_z_ledger_ok,
            self.h21_genus_ok,
            self.picard_sum_ok,
            self.partition_ok,
            self.extremal_flag,
            self.extremal_h21_ok,
            self.sphere_ok,
            self.pass,
        )
    }
}

/// Result of one census entry: verified (with its record) or skipped with a
/// reason. Skips are reserved for entries the mirror construction does not
/// apply to (non-reflexive, degenerate), never for identity failures.
#[derive(Debug, Clone)]
pub enum EntryOutcome {
    Verified(Box<VerificationRecord>),
    Skipped { id: usize, reason: String },
}

impl EntryOutcome {
    pub fn id(&self) -> usize {
        match self {
            EntryOutcome::Verified(rec) => rec.id,
            EntryOutcome::Skipped { id, .. } => *id,
        }
    }

    pub fn record(&self) -> Option<&VerificationRecord> {
        match self {
            EntryOutcome::Verified(rec) => Some(rec),
            EntryOutcome::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BatchOptions {
    /// Worker threads; `None` uses the default pool (all cores).
    pub jobs: Option<usize>,
}

/// Exact minimum and maximum of one reported invariant across the batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinMax {
    pub min: i64,
    pub max: i64,
}

fn min_max(values: impl Iterator<Item = i64>) -> Option<MinMax> {
    let mut out: Option<MinMax> = None;
    for v in values {
        out = Some(match out {
            None => MinMax { min: v, max: v },
            Some(m) => MinMax {
                min: m.min.min(v),
                max: m.max.max(v),
            },
        });
    }
    out
}

/// Aggregate statistics of a batch run.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Entries whose 2-faces all lack interior points.
    pub extremal_count: usize,
    pub l_delta: Option<MinMax>,
    pub l_dual: Option<MinMax>,
    pub h11_x: Option<MinMax>,
    pub h21_z: Option<MinMax>,
    pub h11_z: Option<MinMax>,
    pub pic_toric: Option<MinMax>,
    pub ph: Option<MinMax>,
}

impl Summary {
    pub fn pass_rate(&self) -> f64 {
        if self.verified == 0 {
            0.0
        } else {
            self.passed as f64 / self.verified as f64
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "entries: {}  verified: {}  passed: {}  failed: {}  skipped: {}",
            self.total, self.verified, self.passed, self.failed, self.skipped
        )?;
        writeln!(
            f,
            "pass rate: {}/{} = {:.4}",
            self.passed,
            self.verified,
            self.pass_rate()
        )?;
        writeln!(
            f,
            "extremal entries (no 2-face interior points): {}",
            self.extremal_count
        )?;
        let line = |name: &str, mm: &Option<MinMax>| match mm {
            Some(m) => format!("{name}: {}..{}", m.min, m.max),
            None => format!("{name}: -"),
        };
        writeln!(
            f,
            "{}  {}  {}",
            line("l(D)", &self.l_delta),
            line("l(D*)", &self.l_dual),
            line("h11_x", &self.h11_x)
        )?;
        write!(
            f,
            "{}  {}  {}  {}",
            line("h21_z", &self.h21_z),
            line("h11_z", &self.h11_z),
            line("pic_toric", &self.pic_toric),
            line("ph", &self.ph)
        )
    }
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    pub outcomes: Vec<EntryOutcome>,
    pub summary: Summary,
}

impl BatchResult {
    pub fn records(&self) -> Vec<ReportRecord> {
        self.outcomes
            .iter()
            .filter_map(EntryOutcome::record)
            .map(ReportRecord::from_verification)
            .collect()
    }
}

fn process_entry(entry: &CensusEntry) -> EntryOutcome {
    let skipped = |reason: String| EntryOutcome::Skipped {
        id: entry.id,
        reason,
    };
    let poly = match convex_hull(&entry.vertices) {
        Ok(p) => p,
        Err(e) => return skipped(e.to_string()),
    };
    if !is_reflexive(&poly) {
        return skipped(Error::NotReflexive("facet offsets differ from 1".into()).to_string());
    }
    let pair = match DualPair::new(poly) {
        Ok(p) => p,
        Err(e) => return skipped(e.to_string()),
    };
    match verify_mirror(&pair, entry.id) {
        Ok(rec) => EntryOutcome::Verified(Box::new(rec)),
        Err(e) => skipped(e.to_string()),
    }
}

/// Verify every census entry and aggregate the results.
///
/// Entries are processed independently (in parallel unless `jobs` is 1) and
/// reported in input order regardless of completion order.
pub fn batch_verify(entries: &[CensusEntry], options: BatchOptions) -> BatchResult {
    let outcomes: Vec<EntryOutcome> = match options.jobs {
        Some(1) => entries.iter().map(process_entry).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool construction cannot fail with a positive thread count");
            pool.install(|| entries.par_iter().map(process_entry).collect())
        }
        None => entries.par_iter().map(process_entry).collect(),
    };

    let records: Vec<ReportRecord> = outcomes
        .iter()
        .filter_map(EntryOutcome::record)
        .map(ReportRecord::from_verification)
        .collect();
    let passed = records.iter().filter(|r| r.pass).count();
    let summary = Summary {
        total: entries.len(),
        verified: records.len(),
        passed,
        failed: records.len() - passed,
        skipped: entries.len() - records.len(),
        extremal_count: records.iter().filter(|r| r.extremal_flag).count(),
        l_delta: min_max(records.iter().map(|r| r.l_delta)),
        l_dual: min_max(records.iter().map(|r| r.l_dual)),
        h11_x: min_max(records.iter().map(|r| r.h11_x)),
        h21_z: min_max(records.iter().map(|r| r.h21_z)),
        h11_z: min_max(records.iter().map(|r| r.h11_z)),
        pic_toric: min_max(records.iter().map(|r| r.pic_toric)),
        ph: min_max(records.iter().map(|r| r.ph)),
    };
    BatchResult { outcomes, summary }
}

/// Output encodings for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Render records to bytes: CSV with a fixed header row and LF line endings,
/// or a JSON array with identical field names. Identical inputs produce
/// identical bytes.
pub fn emit_report(records: &[ReportRecord], format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Csv => {
            let mut out = String::with_capacity(64 * (records.len() + 1));
            out.push_str(ReportRecord::CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
            out.into_bytes()
        }
        ReportFormat::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(records).expect("report records serialize infallibly");
            bytes.push(b'\n');
            bytes
        }
    }
}
