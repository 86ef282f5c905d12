//! Hierarchical coordinate systems on finite permutation groups.
//!
//! A subgroup chain `G = G₁ ≥ G₂ ≥ … ≥ G_{n+1}` turns every group element
//! into a tuple of coset indices, one per level. The tuple behaves like a
//! positional number system for the group: moves act level by level, each
//! level can be driven to its rest value independently of the levels above,
//! and the resulting per-level "killers" concatenate into a solving word
//! over the original generators. The crate ships exact permutation
//! arithmetic, deterministic stabilizer chains (membership, order,
//! factorization), right-coset tables with their index automata, block
//! systems with induced actions, and ready-made cube puzzles with several
//! chain recipes.
//!
//! ```
//! use wreathcoord::puzzle::{two_level_chain, PuzzleDefinition};
//! use wreathcoord::Decomposition;
//!
//! let cube = PuzzleDefinition::pocket_cube();
//! let coords = two_level_chain(&cube)
//!     .and_then(Decomposition::build)
//!     .unwrap();
//! let scrambled = cube.group().random_element(7);
//! let word = coords.solve_word(&scrambled).unwrap();
//! let solved = scrambled.compose(&cube.group().evaluate_word(&word).unwrap());
//! assert!(solved.is_identity());
//! ```

pub mod blocks;
mod bsgs;
pub mod coset;
pub mod error;
pub mod group;
pub mod lagrange;
pub mod perm;
pub mod puzzle;
pub mod word;

pub use blocks::{BlockSystem, InducedAction};
pub use coset::{CosetActionImage, RightCosetTable, DEFAULT_INDEX_CAP};
pub use error::{Error, Result};
pub use group::{NamedGenerator, PermutationGroup};
pub use lagrange::{
    point_stabilizer_chain, Coordinates, Decomposition, LevelActions, SubgroupChain,
};
pub use perm::{Permutation, Point};
pub use word::{Letter, Word};

#[cfg(test)]
mod thread_safety {
    // groups, tables and decompositions are immutable after construction
    // and must stay shareable across threads
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_sync() {
        assert_send_sync::<crate::Permutation>();
        assert_send_sync::<crate::PermutationGroup>();
        assert_send_sync::<crate::RightCosetTable>();
        assert_send_sync::<crate::CosetActionImage>();
        assert_send_sync::<crate::Decomposition>();
        assert_send_sync::<crate::Word>();
    }
}
