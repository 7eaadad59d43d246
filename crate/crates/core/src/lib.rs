//! Combinatorics on words with a finite group of symmetries: generalized
//! palindromic complexity, G-richness via symmetry graphs, and searches for
//! square-free rich words.

pub mod cli;
pub mod error;
pub mod factors;
pub mod generators;
pub mod graph;
pub mod group;
pub mod pal_tree;
pub mod palindromics;
pub mod repetitions;
pub mod suffix;
pub mod symmetry;
pub mod word;

pub use error::{Error, Result};
pub use factors::{
    stabilize, stabilize_with, Certificate, Factor, FactorIndex, StabilizeOptions, TrustRange,
};
pub use generators::{Substitution, WordSpec};
pub use group::{generate_group, orbit, SymmetryGroup};
pub use pal_tree::ThetaPalTree;
pub use symmetry::{is_theta_palindrome, Kind, Symmetry};
pub use word::{Alphabet, Letter, LetterSet, Word};
