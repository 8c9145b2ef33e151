//! Shared error type for enumeration limits and universal-property failures.

use thiserror::Error;

/// Errors surfaced by enumeration caps and by operations whose definition
/// relies on a universal property that the given data fails to satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hom set too large: |Hom({dom}, {cod})| = {size} exceeds cap {cap}")]
    HomTooLarge {
        dom: usize,
        cod: usize,
        size: u128,
        cap: u128,
    },

    #[error("object cap exceeded: required size {required} exceeds cap {cap}")]
    ObjectCapExceeded { required: u128, cap: usize },

    #[error("length bound exceeded: requested {requested}, bound {bound}")]
    LengthBoundExceeded { requested: usize, bound: usize },

    #[error("no mediating morphism for the given cone ({0})")]
    NoMediator(String),

    #[error("mediating morphism is not unique ({0})")]
    NonUniqueMediator(String),

    #[error("cone does not commute with the square's base: {0}")]
    InvalidCone(String),

    #[error("universe not Pi-closed: product {product} exceeds {max}")]
    NotPiClosed { product: usize, max: usize },

    #[error("map is not bijective: {0}")]
    NotBijective(String),

    #[error("Pi is not strictly stable under pullback at {0}")]
    PiNotStable(String),

    #[error("Pi-structure square is not a pullback")]
    PiSquareNotPullback,

    #[error("malformed morphism: {0}")]
    Malformed(String),
}
