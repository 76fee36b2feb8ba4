//! Every over/under assignment of a shadow, tabulated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, OuterFace};
use crate::fundgroup::{certify_unknot, complexity, FundGroupError, TietzeLimits, TreePolicy, Verdict};
use crate::Analysis;

/// Scans above this many crossings are refused.
pub const MAX_SCAN_CROSSINGS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("{crossings} crossings means 2^{crossings} assignments; at most {MAX_SCAN_CROSSINGS} are scanned")]
    TooLarge { crossings: usize },
    #[error("assignment {mask:#b}: {source}")]
    Diagram { mask: u64, source: DiagramError },
    #[error("assignment {mask:#b}: {source}")]
    Group { mask: u64, source: FundGroupError },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRow {
    /// Crossings flipped relative to the input diagram, bit `i` for crossing `i`.
    pub mask: u64,
    pub alternating: bool,
    pub components: usize,
    pub lengths: Vec<usize>,
    pub complexity: f64,
    pub arithmetic_mean: f64,
    /// `None` for links.
    pub verdict: Option<Verdict>,
    /// Complexity equals the largest in the scan.
    pub maximal: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub outer: OuterFace,
    pub policy: TreePolicy,
    pub limits: TietzeLimits,
}

/// Rows come back in mask order whatever the scheduling.
pub fn scan_assignments(shadow: &Diagram, opts: &ScanOptions) -> Result<Vec<AssignmentRow>, ScanError> {
    let c = shadow.crossing_count();
    if c > MAX_SCAN_CROSSINGS {
        return Err(ScanError::TooLarge { crossings: c });
    }
    let mut rows = (0..1u64 << c)
        .into_par_iter()
        .map(|mask| row(shadow, mask, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let best = rows.iter().map(|r| r.complexity).fold(f64::NEG_INFINITY, f64::max);
    for r in &mut rows {
        r.maximal = r.complexity >= best - 1e-12;
    }
    Ok(rows)
}

fn row(shadow: &Diagram, mask: u64, opts: &ScanOptions) -> Result<AssignmentRow, ScanError> {
    let d = shadow
        .flip_mask(mask)
        .map_err(|source| ScanError::Diagram { mask, source })?;
    let a = Analysis::new(&d, opts.outer, opts.policy).map_err(|source| ScanError::Diagram { mask, source })?;
    let report = complexity(&a.presentation).map_err(|source| ScanError::Group { mask, source })?;
    let components = d.component_count();
    let verdict = if components == 1 {
        Some(certify_unknot(&d, &a.presentation, opts.limits).map_err(|source| ScanError::Group { mask, source })?)
    } else {
        None
    };
    Ok(AssignmentRow {
        mask,
        alternating: d.is_alternating(),
        components,
        lengths: report.lengths,
        complexity: report.geometric_mean,
        arithmetic_mean: report.arithmetic_mean,
        verdict,
        maximal: false,
    })
}
