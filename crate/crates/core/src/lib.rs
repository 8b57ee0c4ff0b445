//! Exact combinatorial engine for compact 2-complexes.
//!
//! The crate builds the boundary surface of a regular neighbourhood of a
//! 2-complex embedded in an orientable 3-manifold, together with the
//! immersion of that surface back into the complex. Around it sit the
//! supporting tools: validation, links, collapses and collapsed cores, exact
//! homology, π₁ presentations with Tietze simplification, finite covers, and
//! a bounded search over tower maps.
//!
//! ```
//! use complexforge::builtins::builtin;
//! use complexforge::thickening::boundary_complex;
//!
//! let bing = builtin("bing_house").unwrap();
//! let result = boundary_complex(&bing.complex, bing.embedding.as_ref().unwrap()).unwrap();
//! assert_eq!(result.components.len(), 1);
//! assert_eq!(result.components[0].chi, 2);
//! ```

mod bing;
pub mod builtins;
pub mod cli;
pub mod collapse;
pub mod complex;
pub mod contractibility;
pub mod covers;
pub mod error;
pub mod homology;
pub mod iso;
pub mod link;
pub mod morphism;
pub mod presentation;
pub mod thickening;
pub mod towers;

pub use complex::{euler_characteristic, validate_complex, ComplexBuilder, TwoComplex};
pub use error::{ComplexError, CoverError, EmbeddingError, MapError};
pub use morphism::CellularMap;

/// Any error surfaced by the crate's entry points.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("bad presentation: {0}")]
    Presentation(String),
}
