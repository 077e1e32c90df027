//! The 3-dimensional Heisenberg group, its dilation/involution automorphisms
//! and its standard lattices.
//!
//! Elements are written in exponential coordinates `(p, q, t)` with respect to
//! the basis `P, Q, Z` of the Heisenberg Lie algebra (`[P,Q] = Z`), so the
//! Campbell-Baker-Hausdorff product reads
//!
//! ```text
//! (p,q,t) * (p',q',t') = (p+p', q+q', t+t' + (p q' - q p')/2)
//! ```
//!
//! The lattice `Γ_d` is generated by `P, dQ, Z` and consists of the points
//! `(m, dk, ℓ + d m k/2)`; every lattice of the group is the image of some
//! `Γ_d` under an automorphism. We realize the two-parameter family
//! `α_r ∘ α_inv^i` of automorphisms, which is the part acting nontrivially on
//! the frequency axis.
//!
//! Index bookkeeping stays in integers; since `ℓ + d m k/2` is a half-integer
//! it is exactly representable in an `f64`, so lattice coordinates carry no
//! rounding error.

use crate::error::{Error, Result};

/// A point `(p, q, t)` of the Heisenberg group in exponential coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub p: f64,
    pub q: f64,
    pub t: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        p: 0.0,
        q: 0.0,
        t: 0.0,
    };

    pub fn new(p: f64, q: f64, t: f64) -> Self {
        debug_assert!(p.is_finite() && q.is_finite() && t.is_finite());
        GroupElement { p, q, t }
    }

    /// Campbell-Baker-Hausdorff product.
    pub fn multiply(self, other: GroupElement) -> GroupElement {
        GroupElement {
            p: self.p + other.p,
            q: self.q + other.q,
            t: self.t + other.t + 0.5 * (self.p * other.q - self.q * other.p),
        }
    }

    pub fn inverse(self) -> GroupElement {
        GroupElement {
            p: -self.p,
            q: -self.q,
            t: -self.t,
        }
    }

    /// Argument of the involution `g*(x) = conj(g(x⁻¹))`: plain inversion at
    /// the group level, conjugation happens at the signal level.
    pub fn star_argument(self) -> GroupElement {
        self.inverse()
    }

    pub fn is_central(self) -> bool {
        self.p == 0.0 && self.q == 0.0
    }
}

/// An automorphism of the form `α_r ∘ α_inv^i` with
/// `α_r(p,q,t) = (√r p, √r q, r t)` and `α_inv(p,q,t) = (q, p, -t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Automorphism {
    r: f64,
    swap: bool,
}

impl Automorphism {
    pub fn new(r: f64, involution: bool) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dilation parameter must be positive, got {r}"
            )));
        }
        Ok(Automorphism { r, swap: involution })
    }

    pub fn identity() -> Self {
        Automorphism {
            r: 1.0,
            swap: false,
        }
    }

    pub fn dilation(r: f64) -> Result<Self> {
        Self::new(r, false)
    }

    pub fn involution() -> Self {
        Automorphism {
            r: 1.0,
            swap: true,
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn involution_flag(&self) -> bool {
        self.swap
    }

    /// Apply `α_r ∘ α_inv^i` (involution first, then dilation).
    pub fn apply(&self, x: GroupElement) -> GroupElement {
        let (p, q, t) = if self.swap {
            (x.q, x.p, -x.t)
        } else {
            (x.p, x.q, x.t)
        };
        let s = self.r.sqrt();
        GroupElement {
            p: s * p,
            q: s * q,
            t: self.r * t,
        }
    }

    /// Haar-measure distortion `Δ(α) = r²`.
    pub fn modulus(&self) -> f64 {
        self.r * self.r
    }

    /// `(self ∘ other)(x) = self(other(x))`; dilations and the involution
    /// commute, so the family is closed under composition.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            r: self.r * other.r,
            swap: self.swap != other.swap,
        }
    }
}

/// The lattice `α_r ∘ α_inv^i (Γ_d)`, with `d(Γ) = d` and `r(Γ) = r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardLattice {
    d: u32,
    auto: Automorphism,
}

/// A lattice point with its integer indices and realized group element.
///
/// Before the automorphism the element is `(m, d k, ℓ + d m k/2)`; reduced
/// points carry no `ℓ` index and realize `(m, d k, d m k/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub k: i64,
    pub ell: Option<i64>,
    pub element: GroupElement,
}

impl StandardLattice {
    pub fn new(d: u32, r: f64, involution: bool) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("lattice needs d >= 1".into()));
        }
        Ok(StandardLattice {
            d,
            auto: Automorphism::new(r, involution)?,
        })
    }

    /// The untwisted lattice `Γ_d` itself.
    pub fn gamma_d(d: u32) -> Result<Self> {
        Self::new(d, 1.0, false)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> f64 {
        self.auto.r()
    }

    pub fn automorphism(&self) -> Automorphism {
        self.auto
    }

    /// `covol(Γ) = Δ(α) covol(Γ_d) = r² d`.
    pub fn covolume(&self) -> f64 {
        self.auto.modulus() * self.d as f64
    }

    /// Realize the point with indices `(m, k, ℓ)`.
    pub fn point(&self, m: i64, k: i64, ell: i64) -> LatticePoint {
        let d = self.d as i64;
        let base = GroupElement::new(
            m as f64,
            (d * k) as f64,
            ell as f64 + (d * m * k) as f64 / 2.0,
        );
        LatticePoint {
            m,
            k,
            ell: Some(ell),
            element: self.auto.apply(base),
        }
    }

    /// All points with `|m|, |k|, |ℓ| <= radius`, in lexicographic `(m, k, ℓ)`
    /// order so truncated lattice sums are reproducible.
    pub fn elements(&self, radius: u32) -> Vec<LatticePoint> {
        let r = radius as i64;
        let mut out = Vec::with_capacity(((2 * r + 1) as usize).pow(3));
        for m in -r..=r {
            for k in -r..=r {
                for ell in -r..=r {
                    out.push(self.point(m, k, ell));
                }
            }
        }
        out
    }
}

/// A point `(m, d k, d m k/2)` of the reduced lattice `Γ_d^r` (a section of
/// the center quotient, not a subgroup).
pub fn reduced_point(d: u32, m: i64, k: i64) -> LatticePoint {
    let di = d as i64;
    LatticePoint {
        m,
        k,
        ell: None,
        element: GroupElement::new(m as f64, (di * k) as f64, (di * m * k) as f64 / 2.0),
    }
}

/// Reduced-lattice points with `|m|, |k| <= radius`, lexicographic in `(m, k)`.
pub fn reduced_lattice_elements(d: u32, radius: u32) -> Vec<LatticePoint> {
    let r = radius as i64;
    let mut out = Vec::with_capacity(((2 * r + 1) as usize).pow(2));
    for m in -r..=r {
        for k in -r..=r {
            out.push(reduced_point(d, m, k));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_group_law() {
        let a = GroupElement::new(1.0, 0.0, 0.0);
        let b = GroupElement::new(0.0, 1.0, 0.0);
        assert_eq!(a.multiply(b), GroupElement::new(1.0, 1.0, 0.5));
    }

    #[test]
    fn identity_is_neutral() {
        let x = GroupElement::new(0.3, -1.2, 0.7);
        assert_eq!(GroupElement::IDENTITY.multiply(x), x);
        assert_eq!(x.multiply(GroupElement::IDENTITY), x);
    }

    #[test]
    fn inverse_cancels() {
        let x = GroupElement::new(1.0, 2.0, 3.0);
        assert_eq!(x.inverse(), GroupElement::new(-1.0, -2.0, -3.0));
        // (pq' - qp')/2 vanishes on x * x⁻¹, so coordinate negation inverts.
        assert_eq!(x.multiply(x.inverse()), GroupElement::IDENTITY);
        assert_eq!(GroupElement::IDENTITY.inverse(), GroupElement::IDENTITY);
        assert_eq!(x.inverse().inverse(), x);
    }

    #[test]
    fn automorphism_examples() {
        let a = Automorphism::new(4.0, false).unwrap();
        assert_eq!(
            a.apply(GroupElement::new(1.0, 1.0, 1.0)),
            GroupElement::new(2.0, 2.0, 4.0)
        );
        let inv = Automorphism::involution();
        assert_eq!(
            inv.apply(GroupElement::new(1.0, 2.0, 3.0)),
            GroupElement::new(2.0, 1.0, -3.0)
        );
        let id = Automorphism::identity();
        let x = GroupElement::new(0.2, -0.4, 1.1);
        assert_eq!(id.apply(x), x);
    }

    #[test]
    fn modulus_is_r_squared_and_multiplicative() {
        assert_eq!(Automorphism::dilation(4.0).unwrap().modulus(), 16.0);
        assert_eq!(Automorphism::identity().modulus(), 1.0);
        let a = Automorphism::new(3.0, true).unwrap();
        let b = Automorphism::new(0.5, false).unwrap();
        let c = a.compose(&b);
        assert!((c.modulus() - a.modulus() * b.modulus()).abs() < 1e-15);
    }

    #[test]
    fn covolume_values() {
        assert_eq!(StandardLattice::gamma_d(3).unwrap().covolume(), 3.0);
        assert_eq!(StandardLattice::gamma_d(1).unwrap().covolume(), 1.0);
        // Δ(α_2) = 4 times covol(Γ_1) = 1.
        assert_eq!(StandardLattice::new(1, 2.0, false).unwrap().covolume(), 4.0);
    }

    #[test]
    fn lattice_enumeration() {
        let gamma1 = StandardLattice::gamma_d(1).unwrap();
        let r0 = gamma1.elements(0);
        assert_eq!(r0.len(), 1);
        assert_eq!(r0[0].element, GroupElement::IDENTITY);

        let r1 = gamma1.elements(1);
        assert_eq!(r1.len(), 27);
        // (m,k,ℓ) = (1,1,1) realizes (1, 1, 1 + 1/2) = (1, 1, 3/2).
        assert!(r1
            .iter()
            .any(|pt| pt.element == GroupElement::new(1.0, 1.0, 1.5)));
    }

    #[test]
    fn lattice_closure_under_product() {
        // Products of radius-1 points of Γ_1 stay in Γ_1: indices recompute
        // to integers.
        let gamma1 = StandardLattice::gamma_d(1).unwrap();
        let pts = gamma1.elements(1);
        for a in &pts {
            for b in &pts {
                let prod = a.element.multiply(b.element);
                let m = prod.p;
                let k = prod.q;
                let ell = prod.t - m * k / 2.0;
                assert_eq!(m, m.round());
                assert_eq!(k, k.round());
                assert_eq!(ell, ell.round());
            }
        }
    }

    #[test]
    fn reduced_lattice_points() {
        let pts = reduced_lattice_elements(1, 1);
        assert_eq!(pts.len(), 9);
        assert!(pts
            .iter()
            .any(|pt| pt.element == GroupElement::new(1.0, 1.0, 0.5)));
        assert_eq!(
            reduced_point(2, 1, 1).element,
            GroupElement::new(1.0, 2.0, 1.0)
        );
    }

    #[test]
    fn full_lattice_is_central_translates_of_reduced() {
        // Every radius-R point of Γ_d is a central translate of a reduced point.
        let d = 2u32;
        let lattice = StandardLattice::gamma_d(d).unwrap();
        for pt in lattice.elements(2) {
            let red = reduced_point(d, pt.m, pt.k);
            let ell = pt.ell.unwrap();
            let central = GroupElement::new(0.0, 0.0, ell as f64);
            assert_eq!(central.multiply(red.element), pt.element);
        }
    }

    #[test]
    fn central_points_lie_in_r_z() {
        let lattice = StandardLattice::new(3, 0.75, true).unwrap();
        for pt in lattice.elements(2) {
            if pt.m == 0 && pt.k == 0 {
                let ratio = pt.element.t / lattice.r();
                assert!((ratio - ratio.round()).abs() < 1e-12);
                assert_eq!(pt.element.p, 0.0);
                assert_eq!(pt.element.q, 0.0);
            }
        }
    }
}
