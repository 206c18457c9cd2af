use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose: outer morphism has domain {outer_domain}, inner morphism has codomain {inner_codomain}")]
    Composition { outer_domain: String, inner_codomain: String },
    #[error("generator {generator} does not belong to backend {backend}")]
    ForeignGenerator { generator: String, backend: String },
    #[error("matrix of shape {got:?} where {expected:?} was required")]
    Shape { expected: (usize, usize), got: (usize, usize) },
    #[error("not a morphism of the category: {0}")]
    NotAMorphism(String),
    #[error("coloring mismatch at node {node}: expected {expected}, found {found}")]
    Coloring { node: String, expected: String, found: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("slicing failed: {0}")]
    Slicing(String),
    #[error("invalid evaluation rectangle: {0}")]
    InvalidRectangle(String),
    #[error("reduction not supported: {0}")]
    ReductionNotSupported(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("typing mismatch: {0}")]
    Typing(String),
    #[error("law failure: {0}")]
    LawFailure(String),
    #[error("universality solve failed: {0}")]
    Universality(String),
    #[error("axiom violation: {0}")]
    Axiom(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
