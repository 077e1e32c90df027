//! Weyl-Heisenberg superframes on r-fold copies of the line.
//!
//! A superframe system on `(L²(ℝ))^r` uses one modulation step `d` and one
//! translation step `h_j` per component:
//!
//! ```text
//! g_{k,m} = ( e^{2πi d k x} g^j(x + h_j m) )_{j=1..r}
//! ```
//!
//! Such a normalised tight frame exists iff `d Σ|h_j| ≤ 1`, and the witness
//! is the stacked-indicator construction `g^i = √d χ_[c_{i-1}, c_i)` with
//! `c_i = Σ_{j≤i} |h_j|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gabor::{analysis_coefficients, FrameReport, IndexRange, WhSystemSpec};
use crate::grid::{GridSpec, GridSignal};

/// An element of `(L²(ℝ))^r`: `r` grid signals on a shared grid.
#[derive(Debug, Clone)]
pub struct VectorSignal {
    components: Vec<GridSignal>,
}

impl VectorSignal {
    pub fn new(components: Vec<GridSignal>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "vector signal needs at least one component".into(),
            ));
        }
        let spec = components[0].spec();
        if components.iter().any(|c| c.spec() != spec) {
            return Err(Error::SpecMismatch(
                "vector signal components must share one grid".into(),
            ));
        }
        Ok(VectorSignal { components })
    }

    pub fn components(&self) -> &[GridSignal] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `‖f‖² = Σ_j ‖f^j‖²`.
    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sq()).sum()
    }
}

/// A superframe system: per-component translation steps and windows, shared
/// modulation step and index ranges.
#[derive(Debug, Clone)]
pub struct SuperframeSpec {
    pub d: u32,
    pub h_vec: Vec<f64>,
    pub windows: Vec<GridSignal>,
    pub k_range: IndexRange,
    pub m_range: IndexRange,
}

impl SuperframeSpec {
    pub fn new(
        d: u32,
        h_vec: Vec<f64>,
        windows: Vec<GridSignal>,
        k_range: IndexRange,
        m_range: IndexRange,
    ) -> Result<Self> {
        if h_vec.is_empty() || h_vec.len() != windows.len() {
            return Err(Error::InvalidParameter(
                "need one window per translation step, at least one".into(),
            ));
        }
        if h_vec.contains(&0.0) {
            return Err(Error::InvalidParameter(
                "translation steps must be nonzero".into(),
            ));
        }
        let spec = windows[0].spec();
        if windows.iter().any(|w| w.spec() != spec) {
            return Err(Error::SpecMismatch("windows must share one grid".into()));
        }
        Ok(SuperframeSpec {
            d,
            h_vec,
            windows,
            k_range,
            m_range,
        })
    }

    pub fn rank(&self) -> usize {
        self.h_vec.len()
    }

    fn component_spec(&self, j: usize) -> Result<WhSystemSpec> {
        WhSystemSpec::new(
            self.h_vec[j],
            self.d as f64,
            self.windows[j].clone(),
            self.k_range,
            self.m_range,
        )
    }
}

/// The density gate `d Σ|h_j| ≤ 1`; the boundary counts as admissible.
pub fn density_gate(h_vec: &[f64], d: u32) -> bool {
    let sum: f64 = h_vec.iter().map(|h| h.abs()).sum();
    d as f64 * sum <= 1.0 + 1e-12
}

/// The stacked-indicator windows `g^i = √d χ_[c_{i-1}, c_i)`.
///
/// Requires the density gate to pass and every band edge to be grid-aligned.
pub fn stacked_windows(h_vec: &[f64], d: u32, spec: &GridSpec) -> Result<Vec<GridSignal>> {
    if h_vec.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::InvalidParameter(
            "window construction expects positive steps".into(),
        ));
    }
    if !density_gate(h_vec, d) {
        let value: f64 = d as f64 * h_vec.iter().map(|h| h.abs()).sum::<f64>();
        return Err(Error::DensityGateFailed { value });
    }
    let amplitude = Complex64::new((d as f64).sqrt(), 0.0);
    let mut edges = Vec::with_capacity(h_vec.len() + 1);
    edges.push(0.0);
    for h in h_vec {
        let last = *edges.last().unwrap();
        edges.push(last + h.abs());
    }
    for edge in &edges[1..] {
        spec.aligned_shift(*edge)?;
    }
    let mut out = Vec::with_capacity(h_vec.len());
    for w in edges.windows(2) {
        out.push(GridSignal::indicator(*spec, w[0], w[1], amplitude)?);
    }
    Ok(out)
}

/// Batch tightness of the superframe:
/// `Σ_{k,m} |Σ_j ⟨f^j, g^j_{k,m}⟩|² / ‖f‖²` per test vector.
pub fn superframe_tightness(
    spec: &SuperframeSpec,
    tests: &[VectorSignal],
) -> Result<FrameReport> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for f in tests {
        if f.len() != spec.rank() {
            return Err(Error::RangeMismatch(format!(
                "test vector has {} components, system has rank {}",
                f.len(),
                spec.rank()
            )));
        }
        let denom = f.norm_sq();
        if denom == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mut combined = None;
        for j in 0..spec.rank() {
            let coeffs = analysis_coefficients(&spec.component_spec(j)?, &f.components()[j])?;
            match &mut combined {
                None => combined = Some(coeffs),
                Some(acc) => acc.add_assign(&coeffs)?,
            }
        }
        let ratio = combined.map(|c| c.sum_sq()).unwrap_or(0.0) / denom;
        min = min.min(ratio);
        max = max.max(ratio);
    }
    if tests.is_empty() {
        min = 0.0;
        max = 0.0;
    }
    Ok(FrameReport {
        tight_ratio_min: min,
        tight_ratio_max: max,
        lower_bound_estimate: min,
        upper_bound_estimate: max,
    })
}

/// Max `|⟨g^i, g^j⟩|` over `i ≠ j`. Only defined when all steps agree (the
/// hypothesis under which tight superframe windows must be orthogonal).
pub fn window_orthogonality(spec: &SuperframeSpec) -> Result<f64> {
    let h0 = spec.h_vec[0];
    if spec.h_vec.iter().any(|h| *h != h0) {
        return Err(Error::InvalidParameter(
            "window orthogonality requires equal translation steps".into(),
        ));
    }
    let mut worst = 0.0f64;
    for i in 0..spec.rank() {
        for j in 0..spec.rank() {
            if i != j {
                worst = worst.max(spec.windows[i].inner_product(&spec.windows[j])?.norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals;
    use approx::assert_abs_diff_eq;

    fn stacked_setup() -> (SuperframeSpec, GridSpec) {
        let grid = GridSpec::new(-1.0, 1.0 / 128.0, 256).unwrap();
        let h_vec = vec![0.25, 0.25];
        let windows = stacked_windows(&h_vec, 2, &grid).unwrap();
        let mut spec = SuperframeSpec::new(
            2,
            h_vec,
            windows,
            IndexRange::symmetric(0),
            IndexRange::symmetric(10),
        )
        .unwrap();
        let component = WhSystemSpec::new(
            spec.h_vec[0],
            spec.d as f64,
            spec.windows[0].clone(),
            spec.k_range,
            spec.m_range,
        )
        .unwrap();
        spec.k_range = component.full_period_k_range().unwrap();
        (spec, grid)
    }

    fn random_vectors(grid: GridSpec, rank: usize, count: usize, seed: u64) -> Vec<VectorSignal> {
        let mut rng = signals::rng(seed);
        (0..count)
            .map(|_| {
                VectorSignal::new(
                    (0..rank)
                        .map(|_| signals::random_bandlimited(grid, &mut rng, (-0.5, 0.5), 5))
                        .collect(),
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn gate_examples() {
        assert!(density_gate(&[0.25, 0.25], 2)); // equality
        assert!(!density_gate(&[0.6], 2)); // 1.2 > 1
        assert!(density_gate(&[0.9], 1));
        assert!(density_gate(&[-0.5, 0.25], 1)); // signs enter via |h_j|
    }

    #[test]
    fn window_construction() {
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        let windows = stacked_windows(&[0.25, 0.25], 2, &grid).unwrap();
        let s2 = Complex64::new(2f64.sqrt(), 0.0);
        assert_eq!(
            windows[0],
            GridSignal::indicator(grid, 0.0, 0.25, s2).unwrap()
        );
        assert_eq!(
            windows[1],
            GridSignal::indicator(grid, 0.25, 0.5, s2).unwrap()
        );
        // ‖g^j‖² = d h_j.
        for w in &windows {
            assert_abs_diff_eq!(w.norm_sq(), 0.5, epsilon = 1e-14);
        }
        // Single band reduces to the plain construction window.
        let single = stacked_windows(&[0.5], 1, &grid).unwrap();
        assert_eq!(
            single[0],
            GridSignal::indicator(grid, 0.0, 0.5, Complex64::new(1.0, 0.0)).unwrap()
        );
    }

    #[test]
    fn window_construction_needs_gate() {
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        assert!(matches!(
            stacked_windows(&[0.6], 2, &grid),
            Err(Error::DensityGateFailed { .. })
        ));
    }

    #[test]
    fn stacked_superframe_is_tight() {
        let (spec, grid) = stacked_setup();
        let tests = random_vectors(grid, 2, 4, 41);
        let report = superframe_tightness(&spec, &tests).unwrap();
        assert!(
            report.max_deviation_from_unit() <= 1e-9,
            "{report:?}"
        );
    }

    #[test]
    fn single_component_vector_reduces_to_component_tightness() {
        let (spec, grid) = stacked_setup();
        let mut rng = signals::rng(43);
        let f = signals::random_bandlimited(grid, &mut rng, (-0.5, 0.5), 5);
        let zero = GridSignal::zeros(grid);
        let vec1 = VectorSignal::new(vec![f.clone(), zero]).unwrap();
        let report = superframe_tightness(&spec, &[vec1]).unwrap();
        assert!(report.max_deviation_from_unit() <= 1e-9);
    }

    #[test]
    fn zero_windows_give_zero_ratio() {
        let (mut spec, grid) = stacked_setup();
        spec.windows = vec![GridSignal::zeros(grid), GridSignal::zeros(grid)];
        let tests = random_vectors(grid, 2, 1, 47);
        let report = superframe_tightness(&spec, &tests).unwrap();
        assert_eq!(report.tight_ratio_max, 0.0);
    }

    #[test]
    fn windows_are_orthogonal() {
        let (spec, _) = stacked_setup();
        assert_eq!(window_orthogonality(&spec).unwrap(), 0.0);
    }

    #[test]
    fn orthogonality_requires_equal_steps() {
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        let h_vec = vec![0.25, 0.125];
        let windows = stacked_windows(&h_vec, 2, &grid).unwrap();
        let spec = SuperframeSpec::new(
            2,
            h_vec,
            windows,
            IndexRange::symmetric(1),
            IndexRange::symmetric(1),
        )
        .unwrap();
        assert!(matches!(
            window_orthogonality(&spec),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn duplicated_windows_flag_violation() {
        // Two copies of the same window cannot be a tight superframe; the
        // orthogonality check reports ‖g‖² instead of 0.
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        let g = GridSignal::indicator(grid, 0.0, 0.25, Complex64::new(2f64.sqrt(), 0.0)).unwrap();
        let spec = SuperframeSpec::new(
            2,
            vec![0.25, 0.25],
            vec![g.clone(), g.clone()],
            IndexRange::symmetric(1),
            IndexRange::symmetric(1),
        )
        .unwrap();
        let worst = window_orthogonality(&spec).unwrap();
        assert_abs_diff_eq!(worst, g.norm_sq(), epsilon = 1e-14);
        assert!(worst > 1e-10);
    }

    #[test]
    fn rank_one_orthogonality_is_vacuous() {
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        let windows = stacked_windows(&[0.5], 1, &grid).unwrap();
        let spec = SuperframeSpec::new(
            1,
            vec![0.5],
            windows,
            IndexRange::symmetric(1),
            IndexRange::symmetric(1),
        )
        .unwrap();
        assert_eq!(window_orthogonality(&spec).unwrap(), 0.0);
    }

    #[test]
    fn tight_superframe_has_tight_components_and_orthogonal_ranges() {
        // Equivalence on the discretization: the verified tight superframe has
        // (i) tight component systems and (ii) pairwise orthogonal coefficient
        // ranges.
        let (spec, grid) = stacked_setup();
        let mut rng = signals::rng(53);
        let f1 = signals::random_bandlimited(grid, &mut rng, (-0.5, 0.5), 5);
        let f2 = signals::random_bandlimited(grid, &mut rng, (-0.5, 0.5), 5);
        for j in 0..spec.rank() {
            let comp = WhSystemSpec::new(
                spec.h_vec[j],
                spec.d as f64,
                spec.windows[j].clone(),
                spec.k_range,
                spec.m_range,
            )
            .unwrap();
            let report = crate::gabor::tightness_ratio(&comp, std::slice::from_ref(&f1)).unwrap();
            assert!(report.max_deviation_from_unit() <= 1e-9);
        }
        let spec_a = WhSystemSpec::new(
            spec.h_vec[0],
            spec.d as f64,
            spec.windows[0].clone(),
            spec.k_range,
            spec.m_range,
        )
        .unwrap();
        let spec_b = WhSystemSpec::new(
            spec.h_vec[1],
            spec.d as f64,
            spec.windows[1].clone(),
            spec.k_range,
            spec.m_range,
        )
        .unwrap();
        let pairing = crate::gabor::range_orthogonality(&spec_a, &spec_b, &f1, &f2).unwrap();
        assert!(pairing.norm() <= 1e-9, "pairing = {pairing}");
    }

    #[test]
    fn windows_depend_locally_on_steps() {
        // Perturbing one step only changes bands at and beyond the perturbed
        // one (the earlier edges are unchanged).
        let grid = GridSpec::new(-0.5, 1.0 / 64.0, 96).unwrap();
        let base = stacked_windows(&[0.25, 0.125], 2, &grid).unwrap();
        let moved = stacked_windows(&[0.25, 0.1875], 2, &grid).unwrap();
        assert_eq!(base[0], moved[0]);
        assert_ne!(base[1], moved[1]);
    }
}
