//! Multiplicity functions and the density criterion for tight lattice frames.
//!
//! For a lattice with parameters `(d, r)` a left-invariant subspace with
//! multiplicity function `m` admits a tight frame generated by a lattice
//! orbit iff
//!
//! ```text
//! m(h)·|h| + m(h - 1/r)·|h - 1/r| ≤ 1/(d r)   (almost everywhere)
//! ```
//!
//! The checks evaluate the left side on midpoint grids so that measure-zero
//! spikes at breakpoints can never produce a witness, matching the
//! almost-everywhere quantifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::Automorphism;

/// A nonnegative-integer multiplicity profile on the frequency axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MultiplicityFunction {
    /// Piecewise constant: `values[i]` on `[breakpoints[i], breakpoints[i+1])`,
    /// zero outside.
    Piecewise {
        breakpoints: Vec<f64>,
        values: Vec<u32>,
    },
    /// The integrable-but-unbounded rule `m(h) = ⌊|h/scale|^{-3/2}⌋` for
    /// `0 < |h| ≤ scale`: `m(h)|h| ~ |h|^{-1/2}` is integrable yet exceeds any
    /// density bound near 0.
    UnboundedWitness { scale: f64 },
}

impl MultiplicityFunction {
    pub fn piecewise(breakpoints: Vec<f64>, values: Vec<u32>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidParameter(
                "need n+1 breakpoints for n values".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter(
                "breakpoints must strictly increase".into(),
            ));
        }
        Ok(MultiplicityFunction::Piecewise {
            breakpoints,
            values,
        })
    }

    /// `v · χ_[a,b)`.
    pub fn indicator(a: f64, b: f64, v: u32) -> Result<Self> {
        Self::piecewise(vec![a, b], vec![v])
    }

    pub fn eval(&self, h: f64) -> u32 {
        match self {
            MultiplicityFunction::Piecewise {
                breakpoints,
                values,
            } => {
                if h < breakpoints[0] || h >= *breakpoints.last().unwrap() {
                    return 0;
                }
                // partition_point: first breakpoint > h.
                let i = breakpoints.partition_point(|b| *b <= h);
                values[i - 1]
            }
            MultiplicityFunction::UnboundedWitness { scale } => {
                let u = (h / scale).abs();
                if u == 0.0 || u > 1.0 {
                    0
                } else {
                    u.powf(-1.5).floor() as u32
                }
            }
        }
    }

    /// Interval outside of which the function vanishes.
    pub fn support_hull(&self) -> (f64, f64) {
        match self {
            MultiplicityFunction::Piecewise { breakpoints, .. } => {
                (breakpoints[0], *breakpoints.last().unwrap())
            }
            MultiplicityFunction::UnboundedWitness { scale } => (-scale.abs(), scale.abs()),
        }
    }

    /// The multiplicity of the image space under `α_r ∘ α_inv^i`:
    /// `m̃(h) = m((-1)^i r^{-1} h)`, realized by mapping breakpoints through
    /// `h ↦ (-1)^i r h`.
    pub fn transform(&self, alpha: &Automorphism) -> MultiplicityFunction {
        let sign = if alpha.involution_flag() { -1.0 } else { 1.0 };
        let r = alpha.r();
        match self {
            MultiplicityFunction::Piecewise {
                breakpoints,
                values,
            } => {
                let mut b: Vec<f64> = breakpoints.iter().map(|x| sign * r * x).collect();
                let mut v = values.clone();
                if sign < 0.0 {
                    b.reverse();
                    v.reverse();
                }
                MultiplicityFunction::Piecewise {
                    breakpoints: b,
                    values: v,
                }
            }
            MultiplicityFunction::UnboundedWitness { scale } => {
                MultiplicityFunction::UnboundedWitness { scale: scale * r }
            }
        }
    }
}

/// Outcome of a density-condition scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub satisfied: bool,
    /// Midpoint at which the left side is largest.
    pub worst_h: f64,
    pub worst_value: f64,
    /// The right side `1/(d r)`.
    pub bound: f64,
}

fn scan(
    lhs: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    bound: f64,
) -> ConditionReport {
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut worst_h = lo + 0.5 * step;
    let mut worst_value = f64::NEG_INFINITY;
    for i in 0..cells {
        let h = lo + (i as f64 + 0.5) * step;
        let v = lhs(h);
        if v > worst_value {
            worst_value = v;
            worst_h = h;
        }
    }
    ConditionReport {
        satisfied: worst_value <= bound + 1e-12,
        worst_h,
        worst_value,
        bound,
    }
}

/// Scan `m(h)|h| + m(h - 1/r)|h - 1/r| ≤ 1/(d r)` on interval midpoints.
pub fn multiplicity_condition_check(
    m: &MultiplicityFunction,
    d: u32,
    r: f64,
    step: f64,
) -> ConditionReport {
    let shift = 1.0 / r;
    let (s_lo, s_hi) = m.support_hull();
    // The left side can be nonzero on supp(m) ∪ (supp(m) + 1/r).
    let lo = s_lo.min(s_lo + shift) - step;
    let hi = s_hi.max(s_hi + shift) + step;
    let lhs = |h: f64| {
        m.eval(h) as f64 * h.abs() + m.eval(h - shift) as f64 * (h - shift).abs()
    };
    scan(lhs, lo, hi, step, 1.0 / (d as f64 * r))
}

/// The simplified criterion `m(h)|h| ≤ 1/(d r)`, valid for `d > 1`.
pub fn simplified_condition_check(
    m: &MultiplicityFunction,
    d: u32,
    r: f64,
    step: f64,
) -> Result<ConditionReport> {
    if d <= 1 {
        return Err(Error::InvalidParameter(
            "simplified criterion requires d > 1".into(),
        ));
    }
    let (s_lo, s_hi) = m.support_hull();
    let lhs = |h: f64| m.eval(h) as f64 * h.abs();
    Ok(scan(
        lhs,
        s_lo - step,
        s_hi + step,
        step,
        1.0 / (d as f64 * r),
    ))
}

/// The bandlimited space with no tight lattice frame: multiplicity
/// `⌊|h|^{-3/2}⌋` on `0 < |h| ≤ 1`.
pub fn unbounded_witness() -> MultiplicityFunction {
    MultiplicityFunction::UnboundedWitness { scale: 1.0 }
}

/// A finite union of disjoint intervals on the frequency axis (the essential
/// support `Σ(𝓗)` of a projection field).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSet {
    intervals: Vec<(f64, f64)>,
}

impl SigmaSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.iter().any(|(a, b)| !(a < b)) {
            return Err(Error::InvalidParameter(
                "intervals must have positive length".into(),
            ));
        }
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if intervals.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::InvalidParameter(
                "intervals must be disjoint".into(),
            ));
        }
        Ok(SigmaSet { intervals })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Lebesgue measure of the overlap with a translate of itself.
    fn shifted_overlap(&self, s: f64) -> f64 {
        let mut total = 0.0;
        for &(a, b) in &self.intervals {
            for &(c, d) in &self.intervals {
                let lo = a.max(c + s);
                let hi = b.min(d + s);
                if hi > lo {
                    total += hi - lo;
                }
            }
        }
        total
    }
}

/// Exact interval arithmetic for the support condition: every shift by
/// `m/r` (`1 ≤ |m| ≤ m_max`) must overlap `Σ` in measure zero. Single-point
/// contacts are allowed.
pub fn support_condition_check(sigma: &SigmaSet, r: f64, m_max: u32) -> bool {
    for m in 1..=m_max as i64 {
        for sign in [-1.0, 1.0] {
            if sigma.shifted_overlap(sign * m as f64 / r) > 0.0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const STEP: f64 = 1e-3;

    #[test]
    fn band_half_satisfies_for_unit_lattice() {
        // m = χ_[-1/2,1/2], d = r = 1: the left side never exceeds 1.
        let m = MultiplicityFunction::indicator(-0.5, 0.5, 1).unwrap();
        let report = multiplicity_condition_check(&m, 1, 1.0, STEP);
        assert!(report.satisfied, "{report:?}");
        assert!(report.worst_value <= 1.0 + 1e-12);
    }

    #[test]
    fn wide_band_violates() {
        let m = MultiplicityFunction::indicator(-2.0, 2.0, 1).unwrap();
        let report = multiplicity_condition_check(&m, 1, 1.0, STEP);
        assert!(!report.satisfied);
        // |h| + |h-1| on [-1, 2] peaks at 3, approached near h = -1 and h = 2.
        assert!(report.worst_value > 2.99 && report.worst_value <= 3.0);
        let d = report.worst_h;
        assert!((d + 1.0).abs() < 0.01 || (d - 2.0).abs() < 0.01, "worst_h {d}");
    }

    #[test]
    fn doubled_multiplicity_still_fits() {
        // m = 2·χ_[-1/2,1/2]: 2|h| ≤ 1 on the band and the shifted band only
        // meets it in measure zero.
        let m = MultiplicityFunction::indicator(-0.5, 0.5, 2).unwrap();
        let report = multiplicity_condition_check(&m, 1, 1.0, STEP);
        assert!(report.satisfied, "{report:?}");
    }

    #[test]
    fn simplified_check_examples() {
        let quarter = MultiplicityFunction::indicator(-0.25, 0.25, 1).unwrap();
        let report = simplified_condition_check(&quarter, 2, 1.0, STEP).unwrap();
        assert!(report.satisfied);
        assert_abs_diff_eq!(report.worst_value, 0.25, epsilon = 1e-2);

        let wide = MultiplicityFunction::indicator(-1.0, 1.0, 1).unwrap();
        let report = simplified_condition_check(&wide, 2, 1.0, STEP).unwrap();
        assert!(!report.satisfied);
        assert!(report.worst_h.abs() > 0.9);

        assert!(simplified_condition_check(&quarter, 1, 1.0, STEP).is_err());
    }

    #[test]
    fn simplified_agrees_with_full_for_d_above_one() {
        let cases = [
            MultiplicityFunction::indicator(-0.25, 0.25, 1).unwrap(),
            MultiplicityFunction::indicator(-1.0, 1.0, 1).unwrap(),
            MultiplicityFunction::indicator(-0.2, 0.1, 3).unwrap(),
            MultiplicityFunction::indicator(0.05, 0.3, 2).unwrap(),
        ];
        for m in &cases {
            for d in [2u32, 3] {
                for r in [0.5, 1.0, 2.0] {
                    let full = multiplicity_condition_check(m, d, r, STEP);
                    let simple = simplified_condition_check(m, d, r, STEP).unwrap();
                    assert_eq!(full.satisfied, simple.satisfied, "m={m:?}, d={d}, r={r}");
                }
            }
        }
    }

    #[test]
    fn witness_is_rejected_everywhere() {
        let m = unbounded_witness();
        for d in [1u32, 2, 3] {
            for r in [0.25, 0.5, 1.0, 2.0] {
                let report = multiplicity_condition_check(&m, d, r, STEP);
                assert!(!report.satisfied, "d={d}, r={r} should reject");
            }
        }
    }

    #[test]
    fn witness_is_locally_bounded_away_from_zero() {
        let m = unbounded_witness();
        for eps in [0.1f64, 0.01] {
            let bound = eps.powf(-1.5);
            for i in 0..100 {
                let h = eps + i as f64 * (1.0 - eps) / 100.0;
                assert!(m.eval(h) as f64 <= bound);
            }
        }
    }

    #[test]
    fn witness_density_is_integrable() {
        // ∫_0^1 ⌊h^{-3/2}⌋ h dh = Σ_{j≥1} j^{-4/3} / 2 by summing over the
        // plateaus [/(j+1)^{2/3}, j^{-2/3}); independent series oracle with a
        // tail bound, doubled for the two half-lines.
        let mut series = 0.0;
        let terms = 200_000usize;
        for j in (1..=terms).rev() {
            series += (j as f64).powf(-4.0 / 3.0);
        }
        let tail = 3.0 * (terms as f64).powf(-1.0 / 3.0);
        let integral = series + tail; // == 2 * (series/2 + ...)
        assert!(integral <= 4.1, "integral bound {integral}");
        assert!(integral > 3.5);

        // Direct midpoint quadrature of the rule agrees with the series.
        let m = unbounded_witness();
        let n = 4_000_000usize;
        let dh = 1.0 / n as f64;
        let mut quad = 0.0;
        for i in 0..n {
            let h = (i as f64 + 0.5) * dh;
            quad += m.eval(h) as f64 * h * dh;
        }
        assert_abs_diff_eq!(2.0 * quad, integral, epsilon = 2e-2);
    }

    #[test]
    fn transform_identity_and_dilation() {
        let m = MultiplicityFunction::indicator(-0.5, 0.5, 1).unwrap();
        assert_eq!(m.transform(&Automorphism::identity()), m);
        let wide = m.transform(&Automorphism::dilation(4.0).unwrap());
        assert_eq!(
            wide,
            MultiplicityFunction::indicator(-2.0, 2.0, 1).unwrap()
        );
    }

    #[test]
    fn transform_involution_flips() {
        let m = MultiplicityFunction::indicator(0.1, 0.3, 2).unwrap();
        let flipped = m.transform(&Automorphism::involution());
        assert_eq!(
            flipped,
            MultiplicityFunction::indicator(-0.3, -0.1, 2).unwrap()
        );
        assert_eq!(flipped.eval(-0.2), 2);
        assert_eq!(flipped.eval(0.2), 0);
    }

    #[test]
    fn transform_composes() {
        let m = MultiplicityFunction::indicator(-0.4, 0.2, 3).unwrap();
        let a = Automorphism::new(2.0, true).unwrap();
        let b = Automorphism::new(0.5, false).unwrap();
        let lhs = m.transform(&a).transform(&b);
        let rhs = m.transform(&b.compose(&a));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transform_transfers_condition() {
        // Checking the transformed multiplicity with (d, r) matches checking
        // the original with (d, r·r_α) after the change of variables.
        let m = MultiplicityFunction::indicator(-0.5, 0.5, 1).unwrap();
        for r_alpha in [0.5, 2.0, 4.0] {
            let alpha = Automorphism::dilation(r_alpha).unwrap();
            let transformed = m.transform(&alpha);
            for d in [1u32, 2] {
                for r in [0.5, 1.0] {
                    let direct = multiplicity_condition_check(&m, d, r * r_alpha, STEP);
                    let via = multiplicity_condition_check(&transformed, d, r, STEP / r_alpha.min(1.0));
                    assert_eq!(direct.satisfied, via.satisfied, "r_alpha={r_alpha}, d={d}, r={r}");
                }
            }
        }
    }

    #[test]
    fn support_condition_examples() {
        let band = SigmaSet::interval(-0.5, 0.5).unwrap();
        assert!(support_condition_check(&band, 1.0, 8)); // boundary contact only
        let wide = SigmaSet::interval(-1.0, 1.0).unwrap();
        assert!(!support_condition_check(&wide, 1.0, 8)); // overlap [0,1]
        let narrow = SigmaSet::interval(-0.25, 0.25).unwrap();
        assert!(support_condition_check(&narrow, 1.0, 8));
    }

    #[test]
    fn support_condition_scales_with_r() {
        // Shift unit is 1/r: halving r doubles the shift and clears the wide band.
        let wide = SigmaSet::interval(-1.0, 1.0).unwrap();
        assert!(support_condition_check(&wide, 0.5, 8));
    }

    #[test]
    fn sigma_set_validation() {
        assert!(SigmaSet::new(vec![(0.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(SigmaSet::new(vec![(1.0, 1.0)]).is_err());
        let ok = SigmaSet::new(vec![(1.0, 2.0), (-1.0, 0.0)]).unwrap();
        assert_eq!(ok.intervals()[0], (-1.0, 0.0));
    }

    #[test]
    fn eval_outside_support_is_zero() {
        let m = MultiplicityFunction::indicator(-0.5, 0.5, 3).unwrap();
        assert_eq!(m.eval(-0.6), 0);
        assert_eq!(m.eval(0.5), 0); // half-open at the right edge
        assert_eq!(m.eval(-0.5), 3);
        assert_eq!(m.eval(0.0), 3);
    }
}
