//! Error types.
//!
//! Structural validation failures carry concrete witnesses (which basis
//! triple broke associativity, which element refuses to nilpotate, ...)
//! so a rejected input explains itself.

use thiserror::Error;

/// A specific way a would-be Weil algebra fails the axioms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraDefect {
    #[error("structure table is not commutative: e{i}*e{j} != e{j}*e{i} (0-indexed)")]
    NotCommutative { i: usize, j: usize },
    #[error("structure table is not associative on basis triple (e{i}, e{j}, e{k}) (0-indexed)")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("basis element 0 is not a multiplicative unit (fails against e{i})")]
    UnitNotNeutral { i: usize },
    #[error("augmentation does not send the unit to 1")]
    AugNotUnital,
    #[error("augmentation is not adapted: aug(e{i}) != 0 for non-unit basis label {i}")]
    AugNotAdapted { i: usize },
    #[error("augmentation is not multiplicative on pair (e{i}, e{j})")]
    AugNotMultiplicative { i: usize, j: usize },
    #[error("maximal ideal is not nilpotent: power sequence stabilized at dimension {stable_dim} (witness element `{witness}`)")]
    IdealNotNilpotent { witness: String, stable_dim: usize },
    #[error("quotient is infinite-dimensional: variable {var} has no pure-power relation")]
    InfiniteDimensional { var: String },
    #[error("malformed algebra data: {0}")]
    Shape(String),
}

/// A specific way a would-be algebra homomorphism fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomDefect {
    #[error("matrix shape {rows}x{cols} does not match target x source dimensions {want_rows}x{want_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("does not send unit to unit")]
    UnitNotPreserved,
    #[error("not multiplicative on basis pair (e{i}, e{j}) of the source (0-indexed)")]
    NotMultiplicative { i: usize, j: usize },
    #[error("does not commute with the augmentations on basis label {i}")]
    AugmentationNotRespected { i: usize },
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different Weil algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("arity mismatch: expected {expected}, got {got} ({context})")]
    ArityMismatch {
        expected: usize,
        got: usize,
        context: String,
    },
    #[error("index {index} out of range (limit {limit}) in {context}")]
    IndexOutOfRange {
        index: usize,
        limit: usize,
        context: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Weil algebra: {0}")]
    Algebra(#[from] AlgebraDefect),
    #[error("invalid algebra homomorphism: {0}")]
    Hom(#[from] HomDefect),
    #[error("Poisson structure fails the Jacobi identity on ({i},{j},{k}) with residual {residual}")]
    JacobiFailed {
        i: usize,
        j: usize,
        k: usize,
        residual: String,
    },
    #[error("cochain/complex mismatch: {0}")]
    ComplexMismatch(String),
    #[error("basis enumeration too large: {0} exceeds cap {1}")]
    BasisOverflow(usize, usize),
    #[error("{0}")]
    Unsupported(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_messages_carry_witnesses() {
        let d = AlgebraDefect::NotAssociative { i: 1, j: 2, k: 3 };
        let msg = d.to_string();
        assert!(msg.contains("e1") && msg.contains("e2") && msg.contains("e3"));

        let e: Error = d.into();
        assert!(e.to_string().contains("invalid Weil algebra"));
    }
}
