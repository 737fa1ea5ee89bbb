//! Sweeps of the Padé table against a reference function.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::norms::{sup_norms, CompactRegion, GridSample};
use crate::pade::{in_dpq, pade_jacobi, PadeIndex};
use crate::roots::roots;
use crate::scalar::{Scalar, Tol};
use crate::series::{Analytic, PowerSeriesJet};

pub const CSV_HEADER: &str = "p,q,l,sup_error,in_dpq,poles_in_region";

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub p: usize,
    pub q: usize,
    pub l: usize,
    /// `‖[p/q]_f − f‖_l` on the sample; absent when undefined or a pole intrudes.
    pub sup_error: Option<f64>,
    pub in_dpq: bool,
    pub poles_in_region: bool,
}

impl TableRow {
    pub fn to_csv(&self) -> String {
        let err = match self.sup_error {
            None => "nan".to_string(),
            Some(0.0) => "0".to_string(),
            Some(v) => format!("{v:e}"),
        };
        format!("{},{},{},{},{},{}", self.p, self.q, self.l, err, self.in_dpq as u8, self.poles_in_region as u8)
    }
}

/// Rows for every `p <= p_max`, `q <= q_max`, `l <= l_max`, ordered by `(p, q, l)`.
///
/// `jet` must reach order `p_max + q_max`; `f` is the reference the
/// approximants are measured against.
#[allow(clippy::too_many_arguments)]
pub fn pade_table<S: Scalar>(
    jet: &PowerSeriesJet<S>,
    f: &dyn Analytic,
    p_max: usize,
    q_max: usize,
    l_max: usize,
    region: &CompactRegion,
    sample: &GridSample,
    tol: Tol,
) -> Result<Vec<TableRow>> {
    jet.require_order(p_max + q_max)?;
    let cells: Vec<PadeIndex> =
        (0..=p_max).flat_map(|p| (0..=q_max).map(move |q| PadeIndex::new(p, q))).collect();
    let blocks = cells
        .par_iter()
        .map(|&idx| cell(jet, f, idx, l_max, region, sample, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

fn cell<S: Scalar>(
    jet: &PowerSeriesJet<S>,
    f: &dyn Analytic,
    idx: PadeIndex,
    l_max: usize,
    region: &CompactRegion,
    sample: &GridSample,
    tol: Tol,
) -> Result<Vec<TableRow>> {
    let rows = |errors: Option<Vec<f64>>, member: bool, poles: bool| {
        (0..=l_max)
            .map(|l| TableRow {
                p: idx.p,
                q: idx.q,
                l,
                sup_error: errors.as_ref().map(|e| e[l]),
                in_dpq: member,
                poles_in_region: poles,
            })
            .collect()
    };
    let jet = jet.truncate(idx.p + idx.q);
    if !in_dpq(&jet, idx, tol)? {
        return Ok(rows(None, false, false));
    }
    let approx = match pade_jacobi(&jet, idx, tol) {
        Ok(r) => r.approximant,
        Err(Error::NotInDpq { .. }) => return Ok(rows(None, false, false)),
        Err(e) => return Err(e),
    };
    let h = sample.h;
    let intrudes = roots(approx.den())
        .iter()
        .any(|z| z.norm() <= sample.radius + h / 2.0 && region.signed_distance(*z) <= h / 2.0);
    if intrudes {
        return Ok(rows(None, true, true));
    }
    match sup_norms(&approx, f, l_max, sample) {
        Ok(reports) => Ok(rows(Some(reports.iter().map(|r| r.value).collect()), true, false)),
        Err(Error::PoleAtSample { .. }) => Ok(rows(None, true, true)),
        Err(e) => Err(e),
    }
}
