//! Brill-Noether style degree bounds and covering-genus inequalities for
//! degree-two curves in a symmetric square, plus the consistency checks
//! that tie a pair record back to its action.

use serde::{Deserialize, Serialize};

use crate::action::{quotient_genus, CurveAction};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::invariants::{PairCase, PairRecord};

/// Inputs for a degree-bound query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BNQuery {
    /// Genus of the base curve; must be at least 4.
    pub g: u32,
    /// Degree of the candidate linear series.
    pub d: u32,
    /// Self-intersection of the degree-two curve.
    #[serde(rename = "Bsq")]
    pub b_sq: i64,
    /// Number of singular points absorbed by the series.
    pub delta: u32,
}

/// Largest degree compatible with a positive degree-two curve of the given
/// self-intersection and singularity count on a genus-`g` symmetric square:
/// `floor((4g - 6 - Bsq + delta) / (g - 3))`. Needs `g >= 4`.
pub fn degree_bound(g: u32, b_sq: i64, delta: u32) -> Result<u32> {
    if g < 4 {
        return Err(Error::domain(
            "degree_bound",
            format!("the bound needs genus at least 4, got {g}"),
        ));
    }
    let num = 4 * i64::from(g) - 6 - b_sq + i64::from(delta);
    let den = i64::from(g) - 3;
    Ok((num.div_euclid(den)).max(0) as u32)
}

/// Degree bound in the smooth case (`Bsq = 1`, no singular points):
/// `floor((4g - 7) / (g - 3))`. Needs `g >= 4`.
pub fn smooth_degree_bound(g: u32) -> Result<u32> {
    degree_bound(g, 1, 0)
}

/// Whether `BNQuery::d` respects [`degree_bound`] for the query data.
pub fn degree_bound_ok(query: &BNQuery) -> Result<bool> {
    Ok(query.d <= degree_bound(query.g, query.b_sq, query.delta)?)
}

/// The covering-genus inequality for a curve mapping to two others:
/// a curve of genus `g_d` with a degree-two map to genus `g_b` and a
/// degree-`d` map to genus `g_c` requires
/// `g_d <= 2 g_b + d * g_c + d - 1`.
pub fn castelnuovo_severi_ok(g_d: u32, g_b: u32, g_c: u32, d: u32) -> Result<bool> {
    if d == 0 {
        return Err(Error::domain(
            "castelnuovo_severi_ok",
            "the second covering degree must be positive",
        ));
    }
    let bound = 2 * i64::from(g_b) + i64::from(d) * i64::from(g_c) + i64::from(d) - 1;
    Ok(i64::from(g_d) <= bound)
}

/// Largest genus `g_f` a common completion of the two coverings can have:
/// the maximal integer with `g_d + 2 d * g_f <= 2 g_b + d * g_c + d - 1`,
/// or `-1` when no non-negative genus satisfies the inequality.
pub fn accola_max_completion_genus(g_d: u32, g_b: u32, g_c: u32, d: u32) -> Result<i64> {
    if d == 0 {
        return Err(Error::domain(
            "accola_max_completion_genus",
            "the second covering degree must be positive",
        ));
    }
    let slack =
        2 * i64::from(g_b) + i64::from(d) * i64::from(g_c) + i64::from(d) - 1 - i64::from(g_d);
    if slack < 0 {
        return Ok(-1);
    }
    Ok(slack.div_euclid(2 * i64::from(d)))
}

/// The two-sided genus window distinguishing the families whose preimage
/// supports an exceptional Brill-Noether series: `2g < pa_D <= 4g - 2`.
/// Returns `None` for reducible records; demands `Dsq = 2 Bsq > 0`.
pub fn cxc_bn_check(record: &PairRecord) -> Result<Option<bool>> {
    if record.case == PairCase::Reducible {
        return Ok(None);
    }
    if record.b_sq <= 0 {
        return Err(Error::domain(
            "cxc_bn_check",
            format!(
                "the check applies to positive self-intersection only, got Bsq = {}",
                record.b_sq
            ),
        ));
    }
    if record.d_sq != 2 * record.b_sq {
        return Err(Error::invariant(format!(
            "cxc_bn_check: Dsq = {} must equal 2 Bsq = {}",
            record.d_sq,
            2 * record.b_sq
        )));
    }
    let g = i64::from(record.g);
    let pa_d = i64::from(record.pa_d);
    Ok(Some(2 * g < pa_d && pa_d <= 4 * g - 2))
}

/// Checks that the covering genus splits as the sum of the genera of the
/// two involution quotients and the rotation quotient, which is the
/// isogeny decomposition of the covering Jacobian. Dihedral actions only.
pub fn jacobian_dim_check(action: &CurveAction, record: &PairRecord) -> Result<bool> {
    let group = action.group();
    if !group.is_dihedral() {
        return Err(Error::domain(
            "jacobian_dim_check",
            "the decomposition applies to dihedral actions only",
        ));
    }
    let rotations = Subgroup::cyclic(group, group.rotation_generator());
    let base = quotient_genus(action, &rotations)?;
    Ok(record.h == record.g + record.b + base)
}
