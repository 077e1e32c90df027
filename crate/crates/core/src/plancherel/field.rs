//! Discretized fields of finite-rank Hilbert-Schmidt operators over the
//! frequency axis, with Plancherel inversion and the fibre criterion.
//!
//! A field stores quadrature nodes `h` with weights for the measure `dh`
//! (the `|h|` weight is folded into every sum), and per node a rank-one
//! expansion `f̂(h) = Σ_i ψ_i^h ⊗ η_i^h` with orthonormal `η_i^h`. Nodes may
//! carry weight zero: those are probe fibres used by the frame checks and do
//! not contribute to integrals.
//!
//! Each node owns its grid. Quadrature nodes sit at Gauss-Legendre points, so
//! a grid step proportional to `|h|` is the only way to keep the translations
//! `h·m` of the representation exactly on-grid and the window norms exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::gabor::IndexRange;
use crate::grid::{GridSpec, GridSignal};
use crate::heisenberg::GroupElement;
use crate::quadrature::PanelRule;
use crate::schrodinger::rho_apply;
use crate::superframe::{superframe_tightness, SuperframeSpec, VectorSignal};
use crate::gabor::{FrameReport, WhSystemSpec};

/// One rank-one term `ψ ⊗ η` of a fibre expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    psi: GridSignal,
    eta: GridSignal,
    psi_support: Option<(usize, usize)>,
    eta_support: Option<(usize, usize)>,
}

impl FieldPair {
    pub fn new(psi: GridSignal, eta: GridSignal) -> Result<Self> {
        if psi.spec() != eta.spec() {
            return Err(Error::SpecMismatch(
                "pair components must share one grid".into(),
            ));
        }
        let psi_support = psi.support();
        let eta_support = eta.support();
        Ok(FieldPair {
            psi,
            eta,
            psi_support,
            eta_support,
        })
    }

    pub fn psi(&self) -> &GridSignal {
        &self.psi
    }

    pub fn eta(&self) -> &GridSignal {
        &self.eta
    }
}

/// A quadrature or probe node of the field.
#[derive(Debug, Clone)]
pub struct FieldNode {
    pub h: f64,
    pub weight: f64,
    pub pairs: Vec<FieldPair>,
}

impl FieldNode {
    /// Grid shared by the node's signals, if it has any.
    pub fn grid(&self) -> Option<GridSpec> {
        self.pairs.first().map(|p| p.psi.spec())
    }

    /// Worst deviation of the `η_i` from orthonormality.
    pub fn eta_orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.pairs.iter().enumerate() {
            for (j, b) in self.pairs.iter().enumerate() {
                let ip = a.eta.inner_product(&b.eta).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - expect).norm());
            }
        }
        worst
    }
}

/// `⟨ψ, ρ_h(x) η⟩` without materializing the transformed signal.
///
/// With the index shift `j = h·p/dx` this is
/// `conj(c) · dx · Σ_i ψ[i] e^{-2πi q x_i} conj(η[i+j])` over the overlap of
/// the supports, where `c` is the scalar `e^{2πi h t + πi h p q}`.
fn rho_dot(pair: &FieldPair, h: f64, x: GroupElement) -> Result<Complex64> {
    let spec = pair.psi.spec();
    let j = spec.aligned_shift(h * x.p)?;
    let (plo, phi) = match pair.psi_support {
        Some(r) => r,
        None => return Ok(Complex64::new(0.0, 0.0)),
    };
    let (elo, ehi) = match pair.eta_support {
        Some(r) => r,
        None => return Ok(Complex64::new(0.0, 0.0)),
    };
    let lo = (plo as i64).max(elo as i64 - j).max(0);
    let hi = (phi as i64).min(ehi as i64 - j).min(spec.n as i64 - 1);
    if lo > hi {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in lo..=hi {
        let x_i = spec.point(i as usize);
        let phase = Complex64::from_polar(1.0, -TAU * x.q * x_i);
        acc += pair.psi.value(i as usize) * phase * pair.eta.value((i + j) as usize).conj();
    }
    let scalar = Complex64::from_polar(1.0, TAU * h * x.t + PI * h * x.p * x.q);
    Ok(acc * scalar.conj() * spec.dx)
}

/// Generic Hilbert-Schmidt pairing of two fibres
/// `⟨Σ ψ_i ⊗ η_i, Σ φ_j ⊗ ξ_j⟩ = Σ_{ij} ⟨ψ_i, φ_j⟩ ⟨ξ_j, η_i⟩`.
pub fn hs_inner(a: &[FieldPair], b: &[FieldPair]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for pa in a {
        for pb in b {
            acc += pa.psi.inner_product(&pb.psi)? * pb.eta.inner_product(&pa.eta)?;
        }
    }
    Ok(acc)
}

/// A discretized operator field `h ↦ Σ_i ψ_i^h ⊗ η_i^h`.
#[derive(Debug, Clone)]
pub struct RankOneField {
    half_width: f64,
    nodes: Vec<FieldNode>,
}

/// How to discretize a field: panel edges and node count for the
/// Gauss-Legendre rule, plus probe fibres at explicitly requested `h`.
#[derive(Debug, Clone)]
pub struct FieldBuildConfig {
    /// Essential support half-width `H` (`Σ ⊂ [-H, H]`).
    pub half_width: f64,
    /// Panel edges for the quadrature; must include every breakpoint of the
    /// integrands, in particular 0 whenever the support straddles it.
    pub breaks: Vec<f64>,
    pub nodes_per_panel: usize,
    /// Weight-zero fibres for frame checks.
    pub probes: Vec<f64>,
}

impl FieldBuildConfig {
    pub fn symmetric(half_width: f64, nodes_per_panel: usize) -> Self {
        FieldBuildConfig {
            half_width,
            breaks: vec![-half_width, 0.0, half_width],
            nodes_per_panel,
            probes: Vec::new(),
        }
    }
}

impl RankOneField {
    /// Build nodes from the quadrature rule and probes; `fibre(h)` supplies
    /// the rank-one expansion at each required `h`.
    pub fn build(
        cfg: &FieldBuildConfig,
        fibre: impl Fn(f64) -> Result<Vec<FieldPair>>,
    ) -> Result<Self> {
        let rule = PanelRule::composite(&cfg.breaks, cfg.nodes_per_panel);
        let mut nodes = Vec::with_capacity(rule.points().len() + cfg.probes.len());
        for &(h, w) in rule.points() {
            nodes.push(FieldNode {
                h,
                weight: w,
                pairs: fibre(h)?,
            });
        }
        for &h in &cfg.probes {
            nodes.push(FieldNode {
                h,
                weight: 0.0,
                pairs: fibre(h)?,
            });
        }
        Ok(RankOneField {
            half_width: cfg.half_width,
            nodes,
        })
    }

    pub fn from_nodes(half_width: f64, nodes: Vec<FieldNode>) -> Self {
        RankOneField { half_width, nodes }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn nodes(&self) -> &[FieldNode] {
        &self.nodes
    }

    pub fn node_at(&self, h: f64) -> Option<&FieldNode> {
        self.nodes
            .iter()
            .find(|n| (n.h - h).abs() <= 1e-12 * h.abs().max(1.0))
    }

    /// Plancherel inversion at a point:
    /// `f(x) = Σ_nodes w · |h| · Σ_i ⟨ψ_i^h, ρ_h(x) η_i^h⟩`.
    pub fn evaluate(&self, x: GroupElement) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for node in &self.nodes {
            if node.weight == 0.0 {
                continue;
            }
            let mut fibre = Complex64::new(0.0, 0.0);
            for pair in &node.pairs {
                fibre += rho_dot(pair, node.h, x)?;
            }
            acc += fibre * node.weight * node.h.abs();
        }
        Ok(acc)
    }

    /// Squared Hilbert-Schmidt norm of the field:
    /// `‖f‖² = Σ_nodes w · |h| · Σ_i ‖ψ_i^h‖²`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| {
                n.weight * n.h.abs() * n.pairs.iter().map(|p| p.psi.norm_sq()).sum::<f64>()
            })
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|n| FieldNode {
                h: n.h,
                weight: n.weight,
                pairs: n
                    .pairs
                    .iter()
                    .map(|p| FieldPair::new(p.psi.scale(c), p.eta.clone()).unwrap())
                    .collect(),
            })
            .collect();
        RankOneField {
            half_width: self.half_width,
            nodes,
        }
    }

    /// `⟨f, λ(x) s⟩` computed node-wise through the generic Hilbert-Schmidt
    /// pairing with `(λ(x)s)^(h) = ρ_h(x) ŝ(h)` materialized explicitly.
    ///
    /// This is the independent route against which [`Self::evaluate`] (the
    /// rank-one reduction) is checked by the reproducing-identity tests.
    pub fn pair_with_translate(&self, s: &RankOneField, x: GroupElement) -> Result<Complex64> {
        if self.nodes.len() != s.nodes.len() {
            return Err(Error::RangeMismatch(
                "fields have different node sets".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.nodes.iter().zip(&s.nodes) {
            if (a.h - b.h).abs() > 1e-12 * a.h.abs().max(1.0) {
                return Err(Error::RangeMismatch("node mismatch between fields".into()));
            }
            if a.weight == 0.0 {
                continue;
            }
            let translated: Vec<FieldPair> = b
                .pairs
                .iter()
                .map(|p| FieldPair::new(rho_apply(b.h, x, &p.psi)?, p.eta.clone()))
                .collect::<Result<_>>()?;
            acc += hs_inner(&a.pairs, &translated)? * a.weight * a.h.abs();
        }
        Ok(acc)
    }
}

/// Fibre criterion at a node: the reduced-lattice orbit of `|h|^{1/2} f̂(h)`
/// must be a normalised tight frame of the fibre, which by the rank-one
/// calculus is a Weyl-Heisenberg superframe statement for the windows
/// `|h|^{1/2} ψ_i^h` with equal steps `h`.
pub fn fibre_criterion_check(
    field: &RankOneField,
    d: u32,
    h: f64,
    radius: u32,
    tests: &[VectorSignal],
) -> Result<FrameReport> {
    let node = field.node_at(h).ok_or(Error::NoSuchNode(h))?;
    let rank = node.pairs.len();
    if rank == 0 {
        return Err(Error::InvalidParameter("fibre has rank zero".into()));
    }
    let scale = Complex64::new(node.h.abs().sqrt(), 0.0);
    let windows: Vec<GridSignal> = node.pairs.iter().map(|p| p.psi.scale(scale)).collect();
    let probe = WhSystemSpec::new(
        node.h,
        d as f64,
        windows[0].clone(),
        IndexRange::symmetric(0),
        IndexRange::symmetric(0),
    )?;
    let k_range = probe.full_period_k_range().ok_or_else(|| {
        Error::InvalidParameter("fibre grid is not DFT-compatible with this d".into())
    })?;
    let spec = SuperframeSpec::new(
        d,
        vec![node.h; rank],
        windows,
        k_range,
        IndexRange::symmetric(radius as i64),
    )?;
    superframe_tightness(&spec, tests)
}

// --- serialization ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GridJson {
    x0: f64,
    delta: f64,
    n: usize,
}

impl From<GridSpec> for GridJson {
    fn from(s: GridSpec) -> Self {
        GridJson {
            x0: s.x0,
            delta: s.dx,
            n: s.n,
        }
    }
}

impl TryFrom<&GridJson> for GridSpec {
    type Error = Error;
    fn try_from(g: &GridJson) -> Result<GridSpec> {
        GridSpec::new(g.x0, g.delta, g.n)
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    psi: Vec<f64>,
    eta: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    h: f64,
    weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<GridJson>,
    pairs: Vec<PairJson>,
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    #[serde(rename = "H")]
    half_width: f64,
    /// Present when all nodes share one grid; otherwise per-node grids.
    grid: Option<GridJson>,
    nodes: Vec<NodeJson>,
}

fn flatten(signal: &GridSignal) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * signal.values().len());
    for v in signal.values() {
        out.push(v.re);
        out.push(v.im);
    }
    out
}

fn unflatten(spec: GridSpec, data: &[f64]) -> Result<GridSignal> {
    if data.len() != 2 * spec.n {
        return Err(Error::Serialization(format!(
            "expected {} interleaved samples, got {}",
            2 * spec.n,
            data.len()
        )));
    }
    let values = data
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    GridSignal::from_values(spec, values)
}

impl RankOneField {
    pub fn to_json(&self) -> Result<String> {
        let grids: Vec<Option<GridSpec>> = self.nodes.iter().map(|n| n.grid()).collect();
        let first = grids.iter().flatten().next().copied();
        let common = match first {
            Some(g) if grids.iter().flatten().all(|x| *x == g) => Some(g),
            _ => None,
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeJson {
                h: n.h,
                weight: n.weight,
                grid: match (common, n.grid()) {
                    (Some(_), _) | (_, None) => None,
                    (None, Some(g)) => Some(g.into()),
                },
                pairs: n
                    .pairs
                    .iter()
                    .map(|p| PairJson {
                        psi: flatten(&p.psi),
                        eta: flatten(&p.eta),
                    })
                    .collect(),
            })
            .collect();
        let doc = FieldJson {
            half_width: self.half_width,
            grid: common.map(Into::into),
            nodes,
        };
        serde_json::to_string(&doc).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FieldJson =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        let common: Option<GridSpec> = match &doc.grid {
            Some(g) => Some(g.try_into()?),
            None => None,
        };
        let mut nodes = Vec::with_capacity(doc.nodes.len());
        for nj in &doc.nodes {
            let spec = match (&nj.grid, common) {
                (Some(g), _) => g.try_into()?,
                (None, Some(g)) => g,
                (None, None) => {
                    if nj.pairs.is_empty() {
                        GridSpec::new(0.0, 1.0, 1)?
                    } else {
                        return Err(Error::Serialization(format!(
                            "node h={} has pairs but no grid",
                            nj.h
                        )));
                    }
                }
            };
            let pairs = nj
                .pairs
                .iter()
                .map(|p| FieldPair::new(unflatten(spec, &p.psi)?, unflatten(spec, &p.eta)?))
                .collect::<Result<_>>()?;
            nodes.push(FieldNode {
                h: nj.h,
                weight: nj.weight,
                pairs,
            });
        }
        Ok(RankOneField {
            half_width: doc.half_width,
            nodes,
        })
    }
}
