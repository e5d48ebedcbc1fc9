//! Lefschetz numbers of endofunctors of finite acyclic categories.
//!
//! The pipeline goes category → nerve → chain complex over the rationals →
//! induced chain map → trace, with the subdivision and its layered
//! restrictions for fixed-morphism statements.
//!
//! ```
//! use acyclic_lefschetz::{fixtures, lefschetz_number, r_lefschetz_number, Functor};
//!
//! let id = Functor::identity(fixtures::parallel_pair());
//! assert_eq!(lefschetz_number(&id).unwrap(), 0);
//! assert_eq!(r_lefschetz_number(&id).unwrap(), 1);
//! ```

pub mod category;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod layers;
pub mod lefschetz;
pub mod nerve;
pub mod poset;

use thiserror::Error;

pub use category::{
    fixed_data, poset_reflection, poset_reflection_map, Category, CategoryError, Composite,
    Functor, FunctorError, MorphismId, MorphismRef, ObjectId,
};
pub use homology::{betti, chain_complex, euler_char, euler_from_homology, HomologyError};
pub use layers::{
    check_fixed_morphism_theorem, fixed_chain_search, fixed_morphism_report, layered_lefschetz,
    FixedMorphismReport,
};
pub use lefschetz::{
    check_fixed_object_theorem, fixed_object_report, lefschetz_number, r_lefschetz_number,
    LefschetzError, LefschetzReport,
};
pub use nerve::{nerve, order_complex, subdivision, Simplex, Subdivision, Trisp};
pub use poset::{GradedPoset, PosetMap};

/// Any error the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Format(#[from] io::FormatError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Generate(#[from] io::GenerateError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

impl Error {
    /// Stable class name used as an error prefix by the command line tool.
    pub fn class(&self) -> &'static str {
        use io::FormatError as F;
        match self {
            Error::Format(F::Parse { .. }) => "ParseError",
            Error::Format(F::UnknownName { .. }) => "UnknownName",
            Error::Format(F::DuplicateName { .. }) => "DuplicateName",
            Error::Format(F::Incomplete(_)) => "Incomplete",
            Error::Format(F::Category { .. }) => "CategoryError",
            Error::Format(F::Functor { .. }) | Error::Functor(_) => "FunctorError",
            Error::Lefschetz(LefschetzError::TheoremViolated { .. }) => "TheoremViolated",
            Error::Lefschetz(LefschetzError::MethodMismatch { .. }) => "MethodMismatch",
            Error::Lefschetz(_) => "LefschetzError",
            Error::Generate(io::GenerateError::InvalidParameter(_)) => "InvalidParameter",
            Error::Generate(io::GenerateError::GenerationFailed { .. }) => "GenerationFailed",
        }
    }
}
