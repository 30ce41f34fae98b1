//! Exact computations for the `GLₙ`-equivariant cohomology of the commuting
//! variety: generators, relations, verification and Loday homology.

pub mod cli;
pub mod exactlin;
pub mod hhloday;
pub mod idealcalc;
pub mod relgen;
pub mod superpoly;
pub mod symvan;
pub mod verify;

/// Book chapters compiled as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/hochschild.md")]
    mod hochschild {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
