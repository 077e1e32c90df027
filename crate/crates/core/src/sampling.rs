//! The explicit sampling space for the unit lattice: closed-form sinc-type
//! kernel, independent inversion oracles, sampling expansion, restriction
//! isometry, reproducing identity and the counterexamples.
//!
//! The kernel is constructed Plancherel-side from the rank-one projection
//! field `Ŝ(h) = η_h ⊗ η_h`, `η_h = |h|^{-1/2} χ_[-|h|/2, |h|/2]` on
//! `[-1/2, 1/2]`, and inverts to the closed form
//!
//! ```text
//!            ⎧ 0                                                  |p| > 1
//! S(p,q,t) = ⎨ ¼[(t/q + (1-|p|)/2) sinc²(t/2 + (1-|p|)q/4)
//!            ⎪   - (t/q - (1-|p|)/2) sinc²(t/2 - (1-|p|)q/4)]     q ≠ 0
//!            ⎩ ¼(1-|p|)(2 sinc(t) - sinc²(t/2))                   q = 0
//! ```
//!
//! The `q = 0` line is a limit; numerically the generic branch cancels
//! catastrophically there, so a small switch threshold hands evaluation to
//! the central-line branch, validated by a continuity test.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, GridSignal};
use crate::heisenberg::{GroupElement, StandardLattice};
use crate::plancherel::{FieldBuildConfig, FieldPair, RankOneField};
use crate::quadrature::{GaussLegendre, PanelRule};
use crate::schrodinger::{rho_apply, wh_atom, WhAtomIndex};

/// `|q|` below which the central-line branch takes over.
pub const Q_SWITCH: f64 = 1e-3;

/// `sin(πx)/(πx)` with a series fallback near the removable singularity.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let z = (PI * x) * (PI * x);
        1.0 - z / 6.0 + z * z / 120.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SincBranch {
    Outside,
    Generic,
    CentralLine,
}

impl SincBranch {
    pub fn label(&self) -> &'static str {
        match self {
            SincBranch::Outside => "outside",
            SincBranch::Generic => "generic",
            SincBranch::CentralLine => "central-line",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincEvaluation {
    pub point: GroupElement,
    pub value: f64,
    pub branch: SincBranch,
}

/// Evaluate the closed form.
///
/// Inputs are canonicalized to `(|p|, |q|, t·sgn(q))` first — the kernel
/// satisfies `S(p,q,t) = S(-p,-q,-t)` and the canonical form makes that
/// symmetry bit-exact.
pub fn sinc_closed_form(p: f64, q: f64, t: f64) -> SincEvaluation {
    let point = GroupElement::new(p, q, t);
    let ap = p.abs();
    if ap > 1.0 {
        return SincEvaluation {
            point,
            value: 0.0,
            branch: SincBranch::Outside,
        };
    }
    let (qq, tt) = if q < 0.0 { (-q, -t) } else { (q, t) };
    if qq > Q_SWITCH {
        let c = 1.0 - ap;
        let s_plus = sinc(tt / 2.0 + c * qq / 4.0);
        let s_minus = sinc(tt / 2.0 - c * qq / 4.0);
        let value = 0.25
            * ((tt / qq + c / 2.0) * s_plus * s_plus
                - (tt / qq - c / 2.0) * s_minus * s_minus);
        SincEvaluation {
            point,
            value,
            branch: SincBranch::Generic,
        }
    } else {
        let ta = tt.abs();
        let s_half = sinc(ta / 2.0);
        let value = (1.0 - ap) / 4.0 * (2.0 * sinc(ta) - s_half * s_half);
        SincEvaluation {
            point,
            value,
            branch: SincBranch::CentralLine,
        }
    }
}

pub fn sinc_value(x: GroupElement) -> f64 {
    sinc_closed_form(x.p, x.q, x.t).value
}

/// CSV table of the kernel: columns `p,q,t,value,branch`.
pub fn write_sinc_csv<W: Write>(out: &mut W, points: &[(f64, f64, f64)]) -> io::Result<()> {
    writeln!(out, "p,q,t,value,branch")?;
    for &(p, q, t) in points {
        let ev = sinc_closed_form(p, q, t);
        writeln!(out, "{},{},{},{},{}", p, q, t, ev.value, ev.branch.label())?;
    }
    Ok(())
}

// --- inversion oracles ------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct InversionConfig {
    pub nodes_per_panel: usize,
    pub inner_nodes: usize,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            nodes_per_panel: 64,
            inner_nodes: 64,
        }
    }
}

/// The two independent evaluations of the inversion integral
/// `S(p,q,t) = ∫ e^{-2πi h (t + pq/2)} S̃(p,q,h) dh` over `[-1/2, 1/2]`.
#[derive(Debug, Clone, Copy)]
pub struct InversionOracles {
    /// Outer quadrature with the analytically integrated inner integral.
    pub semi_analytic: f64,
    /// Outer and inner integrals both numeric.
    pub double_numeric: f64,
    /// Largest imaginary part of either assembled integral (the kernel is
    /// real by the `h ↔ -h` symmetry of the integrand).
    pub max_imag: f64,
}

/// Both sub-oracles of the Plancherel inversion of the projection field.
pub fn sinc_by_inversion(p: f64, q: f64, t: f64, cfg: &InversionConfig) -> InversionOracles {
    // Reduce to p >= 0 by the reflection S(p,q,t) = S(-p,-q,-t).
    let (p, q, t) = if p < 0.0 { (-p, -q, -t) } else { (p, q, t) };
    let outer = PanelRule::composite(&[-0.5, 0.0, 0.5], cfg.nodes_per_panel);
    let inner_rule = GaussLegendre::new(cfg.inner_nodes);
    let mut semi = Complex64::new(0.0, 0.0);
    let mut dbl = Complex64::new(0.0, 0.0);
    for &(h, w) in outer.points() {
        let phase = Complex64::from_polar(1.0, -TAU * h * (t + p * q / 2.0));
        // Analytic inner integral over the overlap of the window with its
        // translate: length |h|(1-p), midpoint -hp/2.
        let len = h.abs() * (1.0 - p);
        let analytic = if len > 0.0 {
            Complex64::from_polar(len * sinc(q * len), PI * q * h * p)
        } else {
            Complex64::new(0.0, 0.0)
        };
        semi += phase * analytic * w;
        // Numeric inner integral of e^{-2πi q x} over the same overlap.
        let a = (-h.abs() / 2.0).max(-h.abs() / 2.0 - h * p);
        let b = (h.abs() / 2.0).min(h.abs() / 2.0 - h * p);
        if b > a {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, wx) in inner_rule.mapped(a, b) {
                acc += Complex64::from_polar(wx, -TAU * q * x);
            }
            dbl += phase * acc * w;
        }
    }
    InversionOracles {
        semi_analytic: semi.re,
        double_numeric: dbl.re,
        max_imag: semi.im.abs().max(dbl.im.abs()),
    }
}

// --- Plancherel-side field constructions -------------------------------------

/// Discretization parameters for the projection fields.
#[derive(Debug, Clone)]
pub struct SincFieldConfig {
    /// Samples per unit of `|h|` on quadrature-node grids (a power of two, so
    /// the grid step `|h|/K` is exact).
    pub samples_per_h: usize,
    pub nodes_per_panel: usize,
    /// Dyadic probe fibres (weight zero) for the frame checks.
    pub probes: Vec<f64>,
}

impl Default for SincFieldConfig {
    fn default() -> Self {
        SincFieldConfig {
            samples_per_h: 256,
            nodes_per_panel: 64,
            probes: vec![-0.375, -0.25, -0.125, 0.125, 0.25, 0.375],
        }
    }
}

/// Step of the probe grids; `1/(d·dx)` stays an integer for d = 1, 2, 4.
const PROBE_DX: f64 = 1.0 / 256.0;

/// Field grids sample at cell midpoints (`x0` offset by half a step), so
/// indicator boundaries fall between samples and the Riemann pairing becomes
/// the symmetric second-order midpoint rule on the fibre integrals.
fn probe_grid() -> GridSpec {
    GridSpec::new(-2.0 + PROBE_DX / 2.0, PROBE_DX, 1024).unwrap()
}

fn quadrature_grid(h: f64, samples_per_h: usize) -> Result<GridSpec> {
    let k = samples_per_h;
    let dx = h.abs() / k as f64;
    let half = (3 * k / 2) as f64;
    GridSpec::new((0.5 - half) * dx, dx, 3 * k)
}

fn node_grid(cfg: &SincFieldConfig, h: f64) -> Result<GridSpec> {
    if cfg.probes.contains(&h) {
        Ok(probe_grid())
    } else {
        quadrature_grid(h, cfg.samples_per_h)
    }
}

/// `η_h = |h|^{-1/2} χ_[-|h|/2, |h|/2)`, an exact unit vector on its grid.
fn band_window(spec: GridSpec, h: f64) -> Result<GridSignal> {
    let amp = Complex64::new(1.0 / h.abs().sqrt(), 0.0);
    GridSignal::indicator(spec, -h.abs() / 2.0, h.abs() / 2.0, amp)
}

/// The projection field of the sampling space: `Ŝ(h) = η_h ⊗ η_h` on
/// `[-1/2, 1/2]`, zero outside.
pub fn sinc_field(cfg: &SincFieldConfig) -> Result<RankOneField> {
    translated_sinc_field(cfg, GroupElement::IDENTITY)
}

/// The field of the left translate `λ(x0) S`: `ψ_h = ρ_h(x0) η_h`.
pub fn translated_sinc_field(cfg: &SincFieldConfig, x0: GroupElement) -> Result<RankOneField> {
    let build = FieldBuildConfig {
        half_width: 0.5,
        breaks: vec![-0.5, 0.0, 0.5],
        nodes_per_panel: cfg.nodes_per_panel,
        probes: cfg.probes.clone(),
    };
    RankOneField::build(&build, |h| {
        let spec = node_grid(cfg, h)?;
        let eta = band_window(spec, h)?;
        let psi = rho_apply(h, x0, &eta)?;
        Ok(vec![FieldPair::new(psi, eta)?])
    })
}

/// The bandlimited space that has tight lattice frames but is not a sampling
/// space: `η^h = (2/h)^{1/2} χ_[0, h/2)` on `(0, 1/d]`.
pub fn nontotal_field(cfg: &SincFieldConfig, d: u32) -> Result<RankOneField> {
    let top = 1.0 / d as f64;
    let build = FieldBuildConfig {
        half_width: top,
        breaks: vec![0.0, top],
        nodes_per_panel: cfg.nodes_per_panel,
        probes: cfg.probes.clone(),
    };
    RankOneField::build(&build, |h| {
        if h <= 0.0 || h > top {
            return Err(Error::InvalidParameter(format!(
                "nontotal field lives on (0, {top}], got h = {h}"
            )));
        }
        let spec = node_grid(cfg, h)?;
        let amp = Complex64::new((2.0 / h).sqrt(), 0.0);
        let eta = GridSignal::indicator(spec, 0.0, h / 2.0, amp)?;
        Ok(vec![FieldPair::new(eta.clone(), eta)?])
    })
}

// --- functions in the sampling space -----------------------------------------

/// Which member of the sampling space a field represents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceFunction {
    /// The kernel itself.
    Sinc,
    /// The left translate `λ(x0) S`.
    TranslatedSinc(GroupElement),
}

/// A member of the sampling space, carried as a Plancherel-side field with a
/// closed-form pointwise reference.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    source: SourceFunction,
    field: RankOneField,
}

impl SampledFunction {
    pub fn sinc(cfg: &SincFieldConfig) -> Result<Self> {
        Ok(SampledFunction {
            source: SourceFunction::Sinc,
            field: sinc_field(cfg)?,
        })
    }

    pub fn translated_sinc(cfg: &SincFieldConfig, x0: GroupElement) -> Result<Self> {
        Ok(SampledFunction {
            source: SourceFunction::TranslatedSinc(x0),
            field: translated_sinc_field(cfg, x0)?,
        })
    }

    pub fn source(&self) -> SourceFunction {
        self.source
    }

    pub fn field(&self) -> &RankOneField {
        &self.field
    }

    /// Closed-form value `f(x)`, independent of the quadrature path.
    pub fn reference(&self, x: GroupElement) -> f64 {
        match self.source {
            SourceFunction::Sinc => sinc_value(x),
            SourceFunction::TranslatedSinc(x0) => sinc_value(x0.inverse().multiply(x)),
        }
    }
}

/// Truncated sampling expansion at a batch of points.
#[derive(Debug, Clone)]
pub struct SamplingExpansionReport {
    pub radius: u32,
    pub points: Vec<GroupElement>,
    pub reconstructed: Vec<Complex64>,
    pub reference: Vec<f64>,
    pub max_relative_error: f64,
}

/// Partial sums `Σ_{γ ∈ Γ_1, |indices| ≤ radius} f(γ) S(γ⁻¹ x)`, with `f(γ)`
/// evaluated once per lattice point by Plancherel inversion and the kernel
/// values from the closed form.
pub fn sampling_expansion(
    f: &SampledFunction,
    points: &[GroupElement],
    radius: u32,
) -> Result<SamplingExpansionReport> {
    let lattice = StandardLattice::gamma_d(1)?;
    let gamma = lattice.elements(radius);
    let samples: Vec<Complex64> = gamma
        .iter()
        .map(|pt| f.field.evaluate(pt.element))
        .collect::<Result<_>>()?;
    let mut reconstructed = Vec::with_capacity(points.len());
    let mut reference = Vec::with_capacity(points.len());
    let mut max_rel = 0.0f64;
    for &x in points {
        let mut acc = Complex64::new(0.0, 0.0);
        for (pt, fg) in gamma.iter().zip(&samples) {
            if fg.re == 0.0 && fg.im == 0.0 {
                continue;
            }
            acc += fg * sinc_value(pt.element.inverse().multiply(x));
        }
        let want = f.reference(x);
        let rel = (acc - want).norm() / want.abs().max(f64::MIN_POSITIVE);
        max_rel = max_rel.max(rel);
        reconstructed.push(acc);
        reference.push(want);
    }
    Ok(SamplingExpansionReport {
        radius,
        points: points.to_vec(),
        reconstructed,
        reference,
        max_relative_error: max_rel,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RestrictionReport {
    /// Truncated `Σ_{γ ∈ Γ_1} |f(γ)|²`.
    pub lattice_sum: f64,
    /// `c_𝓗 ‖f‖²` with `c_𝓗 = 1/covol(Γ_1) = 1`, from the Parseval sum.
    pub reference: f64,
}

pub fn restriction_isometry_check(f: &SampledFunction, radius: u32) -> Result<RestrictionReport> {
    let lattice = StandardLattice::gamma_d(1)?;
    let mut sum = 0.0;
    for pt in lattice.elements(radius) {
        sum += f.field.evaluate(pt.element)?.norm_sqr();
    }
    Ok(RestrictionReport {
        lattice_sum: sum,
        reference: f.field.hs_norm_sq(),
    })
}

/// `|f(x) - ⟨f, λ(x)S⟩|`: the reproducing identity, with the left side from
/// the rank-one inversion and the right side from the generic
/// Hilbert-Schmidt pairing against the materialized translate.
pub fn reproducing_check(f: &SampledFunction, s: &RankOneField, x: GroupElement) -> Result<f64> {
    let lhs = f.field.evaluate(x)?;
    let rhs = f.field.pair_with_translate(s, x)?;
    Ok((lhs - rhs).norm())
}

#[derive(Debug, Clone, Copy)]
pub struct IdempotentReport {
    /// max over the point grid of `|S(x) - ⟨S, λ(x)S⟩|` (S = S∗S, S = S*).
    pub max_convolution_deviation: f64,
    /// max of `|S(x) - S(x⁻¹)|` for the closed form (exactly 0).
    pub max_symmetry_deviation: f64,
}

/// Verify `S = S ∗ S = S*` through the reproducing identity at `f = S` and
/// the inversion-symmetry of the closed form, over a cubic point grid.
pub fn idempotent_selfadjoint_check(
    field: &RankOneField,
    coords: &[f64],
) -> Result<IdempotentReport> {
    let mut conv = 0.0f64;
    let mut sym = 0.0f64;
    for &p in coords {
        for &q in coords {
            for &t in coords {
                let x = GroupElement::new(p, q, t);
                let closed = sinc_value(x);
                let pairing = field.pair_with_translate(field, x)?;
                conv = conv.max((pairing - closed).norm());
                sym = sym.max((closed - sinc_value(x.inverse())).abs());
            }
        }
    }
    Ok(IdempotentReport {
        max_convolution_deviation: conv,
        max_symmetry_deviation: sym,
    })
}

/// The totality failure of the Cor-type counterexample: all coefficients of
/// `χ_[h/2, h)` against the system `𝒢(h, d, (2/h)^{1/2}χ_[0,h/2))` vanish.
///
/// Returns the maximum coefficient magnitude over `|k|, |m| ≤ radius`
/// (exactly zero: the supports are disjoint).
pub fn nontotality_counterexample(h: f64, d: u32, radius: u32) -> Result<f64> {
    if !(h > 0.0) || h * d as f64 > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(
            "need 0 < h with h d <= 1".into(),
        ));
    }
    let k_samples = 64usize;
    let dx = h / k_samples as f64;
    let spec = GridSpec::new(-2.0 * h, dx, 4 * k_samples)?;
    let window = GridSignal::indicator(spec, 0.0, h / 2.0, Complex64::new((2.0 / h).sqrt(), 0.0))?;
    let test = GridSignal::indicator(spec, h / 2.0, h, Complex64::new(1.0, 0.0))?;
    let r = radius as i64;
    let mut worst = 0.0f64;
    for m in -r..=r {
        for k in -r..=r {
            let atom = wh_atom(h, d as f64, WhAtomIndex { k, m }, &window)?;
            worst = worst.max(test.inner_product(&atom)?.norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone)]
pub struct NoOnbReport {
    /// Hilbert-Schmidt norm `‖S‖₂` (the value 1/2 rules the basis out).
    pub hs_norm: f64,
    /// Worst deviation of the probe-fibre tightness ratios from 1.
    pub max_fibre_deviation: f64,
    /// `‖S‖² ≤ c = 1` (the norm bound tight frames obey).
    pub norm_bound_satisfied: bool,
    /// Normalised tight frame with a unit-norm generator would be an
    /// orthonormal basis; false here.
    pub onb_possible: bool,
}

/// Combine the verified fibre tightness (frame constant 1) with the exact
/// Hilbert-Schmidt norm: `‖S‖₂ = 1/2 < 1` rules out an orthonormal basis.
pub fn no_onb_check(field: &RankOneField, d: u32, seed: u64) -> Result<NoOnbReport> {
    let hs = field.hs_norm_sq().sqrt();
    let mut max_dev: f64 = 0.0;
    let mut saw_probe = false;
    let mut rng = crate::signals::rng(seed);
    for node in field.nodes() {
        if node.weight != 0.0 {
            continue;
        }
        saw_probe = true;
        let grid = node
            .grid()
            .ok_or_else(|| Error::InvalidParameter("probe fibre has no data".into()))?;
        let radius = (0.5 / node.h.abs()).ceil() as u32 + 2;
        let tests: Vec<crate::superframe::VectorSignal> = (0..2)
            .map(|_| {
                crate::superframe::VectorSignal::new(
                    (0..node.pairs.len())
                        .map(|_| {
                            crate::signals::random_bandlimited(grid, &mut rng, (-0.5, 0.5), 5)
                        })
                        .collect(),
                )
            })
            .collect::<Result<_>>()?;
        let report =
            crate::plancherel::fibre_criterion_check(field, d, node.h, radius, &tests)?;
        max_dev = max_dev.max(report.max_deviation_from_unit());
    }
    if !saw_probe {
        return Err(Error::InvalidParameter(
            "field carries no probe fibres".into(),
        ));
    }
    let tight_normalised = max_dev <= 1e-9;
    Ok(NoOnbReport {
        hs_norm: hs,
        max_fibre_deviation: max_dev,
        norm_bound_satisfied: hs * hs <= 1.0 + 1e-12,
        onb_possible: tight_normalised && (hs - 1.0).abs() <= 1e-9,
    })
}
