//! Plancherel-side objects: multiplicity functions on the frequency axis and
//! discretized fields of finite-rank Hilbert-Schmidt operators.
//!
//! The Plancherel transform sends `f ∈ L²(ℍ)` to the operator field
//! `h ↦ ρ_h(f)` with measure `|h| dh`. A left-invariant subspace is described
//! by its projection field, and all frame-existence questions reduce to the
//! rank function `m(h)` of those projections; concrete functions in the
//! subspace are handled as rank-one expansions `f̂(h) = Σ ψ_i^h ⊗ η_i^h`.

mod field;
mod multiplicity;

pub use field::{
    fibre_criterion_check, FieldBuildConfig, FieldNode, FieldPair, RankOneField,
};
pub use multiplicity::{
    multiplicity_condition_check, simplified_condition_check, support_condition_check,
    unbounded_witness, ConditionReport, MultiplicityFunction, SigmaSet,
};

/// The admissible rescaling of a tight-frame generator: `1/(√d · r)`.
pub fn admissible_normalization(d: u32, r: f64) -> f64 {
    1.0 / ((d as f64).sqrt() * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_values() {
        assert_eq!(admissible_normalization(1, 1.0), 1.0);
        assert_eq!(admissible_normalization(4, 1.0), 0.5);
        assert_eq!(admissible_normalization(1, 2.0), 0.5);
    }
}
