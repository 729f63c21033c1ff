//! Gentle bound quivers with two independent cycles: structure, moves,
//! the characteristic-sequence invariant, canonical families and orbits.

pub mod cli;
pub mod families;
pub mod invariant;
pub mod moves;
pub mod orbit;
pub mod quiver;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/moves.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/invariant.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/families.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    pub mod chapter6 {}
}
