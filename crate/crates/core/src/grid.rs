//! Uniformly sampled complex signals on an interval of the real line.
//!
//! A [`GridSignal`] holds samples `f(x0 + n*dx)` for `n = 0..n-1` and models
//! elements of L²(ℝ) with the Riemann-sum pairing `⟨f,g⟩ = dx * Σ f * conj(g)`.
//! Translations are index shifts (with zero fill) and are only accepted when
//! the shift is an exact multiple of the grid step; this keeps every frame
//! identity in the crate exact at grid resolution instead of polluted by
//! interpolation error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Geometry of a sampling grid: left endpoint, step and sample count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(x0: f64, dx: f64, n: usize) -> Result<Self> {
        if !(dx > 0.0) || !x0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid spec needs finite x0 and dx > 0, got x0={x0}, dx={dx}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("grid needs n >= 1".into()));
        }
        Ok(GridSpec { x0, dx, n })
    }

    /// Symmetric grid centered at 0 covering `[-half_width, half_width)`.
    pub fn centered(half_width: f64, dx: f64) -> Result<Self> {
        let half = (half_width / dx).round() as usize;
        Self::new(-(half as f64) * dx, dx, 2 * half)
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Resolve a real shift to an integer number of samples.
    ///
    /// Accepts `s` iff `s/dx` is an integer within 1e-12 (relative for large
    /// shifts); everything else is an alignment error.
    pub fn aligned_shift(&self, s: f64) -> Result<i64> {
        let ratio = s / self.dx;
        let j = ratio.round();
        if (ratio - j).abs() <= 1e-12 * ratio.abs().max(1.0) {
            Ok(j as i64)
        } else {
            Err(Error::NotAligned {
                shift: s,
                step: self.dx,
            })
        }
    }
}

/// Samples of a complex-valued function on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridSignal {
    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.n {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                spec.n,
                values.len()
            )));
        }
        Ok(GridSignal { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        GridSignal {
            values: vec![Complex64::new(0.0, 0.0); spec.n],
            spec,
        }
    }

    pub fn from_fn(spec: GridSpec, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..spec.n).map(|i| f(spec.point(i))).collect();
        GridSignal { spec, values }
    }

    /// `amplitude` on grid points in `[a, b)`, zero elsewhere.
    ///
    /// The half-open convention makes adjacent windows tile without double
    /// counting: `indicator(a,b) + indicator(b,c) == indicator(a,c)`.
    pub fn indicator(spec: GridSpec, a: f64, b: f64, amplitude: Complex64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidParameter(format!(
                "indicator needs a < b, got [{a}, {b})"
            )));
        }
        Ok(Self::from_fn(spec, |x| {
            if x >= a && x < b {
                amplitude
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    #[inline]
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    fn check_spec(&self, other: &GridSignal) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!(
                "{:?} vs {:?}",
                self.spec, other.spec
            )));
        }
        Ok(())
    }

    /// Riemann-sum L² pairing `dx * Σ f(x_n) conj(g(x_n))`.
    pub fn inner_product(&self, other: &GridSignal) -> Result<Complex64> {
        self.check_spec(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.values.iter().zip(&other.values) {
            acc += a * b.conj();
        }
        Ok(acc * self.spec.dx)
    }

    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        s * self.spec.dx
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// The function `x ↦ f(x + s)` for grid-aligned `s`, zero-filled where the
    /// shifted index leaves the window.
    pub fn translate(&self, s: f64) -> Result<GridSignal> {
        let j = self.spec.aligned_shift(s)?;
        let n = self.spec.n as i64;
        let values = (0..n)
            .map(|i| {
                let src = i + j;
                if src >= 0 && src < n {
                    self.values[src as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(GridSignal {
            spec: self.spec,
            values,
        })
    }

    /// Pointwise multiplication by `e^{2πi ν x}`.
    pub fn modulate(&self, nu: f64) -> GridSignal {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v * Complex64::from_polar(1.0, TAU * nu * self.spec.point(i)))
            .collect();
        GridSignal {
            spec: self.spec,
            values,
        }
    }

    pub fn scale(&self, c: Complex64) -> GridSignal {
        GridSignal {
            spec: self.spec,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &GridSignal) -> Result<GridSignal> {
        self.check_spec(other)?;
        Ok(GridSignal {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &GridSignal) -> Result<GridSignal> {
        self.check_spec(other)?;
        Ok(GridSignal {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Index range `[lo, hi]` of exactly nonzero samples, if any.
    pub fn support(&self) -> Option<(usize, usize)> {
        let lo = self
            .values
            .iter()
            .position(|v| v.re != 0.0 || v.im != 0.0)?;
        let hi = self
            .values
            .iter()
            .rposition(|v| v.re != 0.0 || v.im != 0.0)?;
        Some((lo, hi))
    }
}
