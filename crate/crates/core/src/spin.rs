//! Spin-½ operators `S = σ/2` on a pair of qubits.
//!
//! `S⁺ = |↑⟩⟨↓|`, `S⁻ = |↓⟩⟨↑|`; single-qubit basis `{↑, ↓}`.

use crate::linalg::{CMat, ComplexMatrix2, ComplexMatrix4, I, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    One,
    Two,
}

pub fn raising() -> ComplexMatrix2 {
    CMat::from_real([[0.0, 1.0], [0.0, 0.0]])
}

pub fn lowering() -> ComplexMatrix2 {
    CMat::from_real([[0.0, 0.0], [1.0, 0.0]])
}

pub fn sx() -> ComplexMatrix2 {
    CMat::from_real([[0.0, 0.5], [0.5, 0.0]])
}

pub fn sy() -> ComplexMatrix2 {
    CMat([[ZERO, -I * 0.5], [I * 0.5, ZERO]])
}

pub fn sz() -> ComplexMatrix2 {
    CMat::from_real([[0.5, 0.0], [0.0, -0.5]])
}

/// Embeds a single-qubit operator on `site` into the two-qubit space.
pub fn on(site: Site, op: &ComplexMatrix2) -> ComplexMatrix4 {
    let id = ComplexMatrix2::identity();
    match site {
        Site::One => op.kron(&id),
        Site::Two => id.kron(op),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_operators_from_cartesian_components() {
        // S± = Sx ± i Sy
        assert!((sx() + sy().scale(I)).max_abs_diff(&raising()) < 1e-16);
        assert!((sx() - sy().scale(I)).max_abs_diff(&lowering()) < 1e-16);
    }

    #[test]
    fn anticommutator_is_identity() {
        for site in [Site::One, Site::Two] {
            let (p, m) = (on(site, &raising()), on(site, &lowering()));
            assert_eq!(p * m + m * p, ComplexMatrix4::identity());
        }
    }

    #[test]
    fn cross_site_ladder_operators_commute() {
        let a = on(Site::One, &lowering());
        let b = on(Site::Two, &raising());
        assert_eq!(a * b - b * a, ComplexMatrix4::zeros());
    }

    #[test]
    fn lowering_qubit_one_maps_up_down_to_down_down_basis() {
        // S₁⁻ S₂⁺ |↑↓⟩ = |↓↑⟩: matrix element (row ↓↑ = 2, column ↑↓ = 1)
        let op = on(Site::One, &lowering()) * on(Site::Two, &raising());
        assert_eq!(op[(2, 1)].re, 1.0);
        assert_eq!(op.frobenius_norm(), 1.0);
    }
}
