//! The Schrödinger representations `ρ_h` acting on grid signals, and the
//! Weyl-Heisenberg atoms they generate.
//!
//! For `h ≠ 0` the representation acts by
//!
//! ```text
//! [ρ_h(p,q,t) f](x) = e^{2πi h t} e^{2πi q x} e^{πi h p q} f(x + h p)
//! ```
//!
//! On the lattice side, the reduced-lattice orbit `ρ_h(Γ_d^r) g` coincides
//! with the Weyl-Heisenberg system `𝒢(h, d, g)` up to the phase
//! `e^{2πi h m d k}` per atom, which is irrelevant for every tight-frame or
//! orthonormality statement.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::grid::GridSignal;
use crate::heisenberg::{reduced_point, GroupElement};

/// Index of a Weyl-Heisenberg atom: `k` counts modulations, `m` translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WhAtomIndex {
    pub k: i64,
    pub m: i64,
}

/// Apply `ρ_h(x)` to `f`. Requires `h ≠ 0` and `h·p` grid-aligned.
///
/// The modulation `e^{2πi q x}` is evaluated at the grid coordinate of the
/// output sample, reading the defining formula literally.
pub fn rho_apply(h: f64, x: GroupElement, f: &GridSignal) -> Result<GridSignal> {
    if h == 0.0 {
        return Err(Error::InvalidParameter(
            "Schrödinger representation needs h != 0".into(),
        ));
    }
    let shifted = f.translate(h * x.p)?;
    let modulated = shifted.modulate(x.q);
    let phase = Complex64::from_polar(1.0, TAU * h * x.t + PI * h * x.p * x.q);
    Ok(modulated.scale(phase))
}

/// The atom `g_{k,m}(x) = e^{2πi β k x} g(x + α m)`.
pub fn wh_atom(alpha: f64, beta: f64, idx: WhAtomIndex, g: &GridSignal) -> Result<GridSignal> {
    Ok(g.translate(alpha * idx.m as f64)?.modulate(beta * idx.k as f64))
}

/// Phase relating the reduced-lattice orbit to the Weyl-Heisenberg system:
/// `ρ_h(m, dk, dmk/2) g = e^{2πi h m d k} g_{k,m}`.
pub fn orbit_phase(h: f64, d: u32, idx: WhAtomIndex) -> Complex64 {
    Complex64::from_polar(1.0, TAU * h * (idx.m * d as i64 * idx.k) as f64)
}

/// Max deviation `‖ρ_h(γ) g − phase · g_{k,m}‖` over reduced-lattice points
/// with `|m|, |k| <= radius`.
pub fn verify_phase_correspondence(
    h: f64,
    d: u32,
    g: &GridSignal,
    radius: u32,
) -> Result<f64> {
    let r = radius as i64;
    let mut worst = 0.0f64;
    for m in -r..=r {
        for k in -r..=r {
            let idx = WhAtomIndex { k, m };
            let orbit = rho_apply(h, reduced_point(d, m, k).element, g)?;
            let atom = wh_atom(h, d as f64, idx, g)?.scale(orbit_phase(h, d, idx));
            worst = worst.max(orbit.sub(&atom)?.norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridSpec, GridSignal};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn test_window() -> GridSignal {
        let spec = GridSpec::new(-2.0, 1.0 / 32.0, 128).unwrap();
        GridSignal::indicator(spec, 0.0, 0.25, Complex64::new(2.0, 0.0)).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let f = test_window();
        let g = rho_apply(0.25, GroupElement::IDENTITY, &f).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn central_elements_act_by_character() {
        let f = test_window();
        let h = 0.25;
        let t = 0.7;
        let g = rho_apply(h, GroupElement::new(0.0, 0.0, t), &f).unwrap();
        let phase = Complex64::from_polar(1.0, TAU * h * t);
        for (a, b) in f.values().iter().zip(g.values()) {
            let expect = a * phase;
            assert_abs_diff_eq!(expect.re, b.re, epsilon = 1e-15);
            assert_abs_diff_eq!(expect.im, b.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn action_is_unitary() {
        let f = test_window();
        let h = 0.25;
        for x in [
            GroupElement::new(1.0, 0.3, -0.2),
            GroupElement::new(-2.0, 1.7, 0.9),
            GroupElement::new(4.0, -0.5, 0.0),
        ] {
            let g = rho_apply(h, x, &f).unwrap();
            assert_abs_diff_eq!(g.norm(), f.norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn representation_property() {
        // ρ_h(x·y) = ρ_h(x) ρ_h(y) for grid-aligned x, y.
        let f = test_window();
        let h = 0.25;
        let x = GroupElement::new(2.0, 0.4, 0.3);
        let y = GroupElement::new(-1.0, 1.1, -0.8);
        let lhs = rho_apply(h, x.multiply(y), &f).unwrap();
        let rhs = rho_apply(h, x, &rho_apply(h, y, &f).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().norm() < 1e-12);
    }

    #[test]
    fn atom_index_zero_is_window() {
        let g = test_window();
        let atom = wh_atom(0.5, 1.0, WhAtomIndex { k: 0, m: 0 }, &g).unwrap();
        assert_eq!(atom, g);
    }

    #[test]
    fn atom_translation_moves_support() {
        // α = 1/2, k = 0, m = 1 sends χ_[0,1/2) to χ_[-1/2,0).
        let spec = GridSpec::new(-1.0, 1.0 / 8.0, 16).unwrap();
        let g = GridSignal::indicator(spec, 0.0, 0.5, Complex64::new(1.0, 0.0)).unwrap();
        let atom = wh_atom(0.5, 1.0, WhAtomIndex { k: 0, m: 1 }, &g).unwrap();
        let expect = GridSignal::indicator(spec, -0.5, 0.0, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(atom, expect);
    }

    #[test]
    fn atom_norm_preserved() {
        let g = test_window();
        let atom = wh_atom(0.25, 2.0, WhAtomIndex { k: 3, m: -2 }, &g).unwrap();
        assert_abs_diff_eq!(atom.norm(), g.norm(), epsilon = 1e-13);
    }

    #[test]
    fn phase_correspondence_radius_zero() {
        let g = test_window();
        assert_eq!(verify_phase_correspondence(0.25, 1, &g, 0).unwrap(), 0.0);
    }

    #[test]
    fn phase_correspondence_holds() {
        let spec = GridSpec::new(-2.0, 1.0 / 32.0, 128).unwrap();
        let g = GridSignal::indicator(spec, 0.0, 0.25, Complex64::new(1.0, 0.0)).unwrap();
        let dev = verify_phase_correspondence(0.25, 1, &g, 2).unwrap();
        assert!(dev <= 1e-12, "deviation {dev}");
    }

    #[test]
    fn orbit_phase_is_unimodular() {
        for m in -3..=3 {
            for k in -3..=3 {
                let phase = orbit_phase(0.25, 2, WhAtomIndex { k, m });
                assert_abs_diff_eq!(phase.norm(), 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn coefficient_magnitudes_match_orbit_and_wh_system() {
        // Tight-frame data is phase-insensitive: |⟨f, ρ_h(γ)g⟩| = |⟨f, g_{k,m}⟩|.
        let spec = GridSpec::new(-2.0, 1.0 / 32.0, 128).unwrap();
        let g = GridSignal::indicator(spec, 0.0, 0.25, Complex64::new(1.0, 0.0)).unwrap();
        let f = GridSignal::from_fn(spec, |x| {
            Complex64::new((2.1 * x).sin(), (0.4 * x).cos()) * if x.abs() < 1.0 { 1.0 } else { 0.0 }
        });
        let h = 0.25;
        for m in -2..=2i64 {
            for k in -2..=2i64 {
                let idx = WhAtomIndex { k, m };
                let orbit = rho_apply(h, reduced_point(1, m, k).element, &g).unwrap();
                let atom = wh_atom(h, 1.0, idx, &g).unwrap();
                let c1 = f.inner_product(&orbit).unwrap().norm();
                let c2 = f.inner_product(&atom).unwrap().norm();
                assert_abs_diff_eq!(c1, c2, epsilon = 1e-13);
            }
        }
    }
}
