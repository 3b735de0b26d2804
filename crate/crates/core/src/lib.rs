//! Root systems, Weyl groups, thickenings, dual polytopes and the polyhedral
//! Finsler geometry of symmetric spaces of noncompact type.

pub mod exact;
pub mod finsler;
pub mod polytope;
pub mod rootsys;
pub mod symspace;
pub mod thickening;
pub mod weyl;

use thiserror::Error;

/// Any error raised by the library, tagged with a module-qualified code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] rootsys::RootSystemError),
    #[error(transparent)]
    Weyl(#[from] weyl::WeylError),
    #[error(transparent)]
    Thickening(#[from] thickening::ThickeningError),
    #[error(transparent)]
    Polytope(#[from] polytope::PolytopeError),
    #[error(transparent)]
    Finsler(#[from] finsler::FinslerError),
    #[error(transparent)]
    Symspace(#[from] symspace::SymspaceError),
}

impl Error {
    /// For example `weyl.bad_word`.
    pub fn code(&self) -> &'static str {
        match self {
            Self::RootSystem(e) => e.code(),
            Self::Weyl(e) => e.code(),
            Self::Thickening(e) => e.code(),
            Self::Polytope(e) => e.code(),
            Self::Finsler(e) => e.code(),
            Self::Symspace(e) => e.code(),
        }
    }
}
