//! Farey trees, paths to reals and the Farey parametrization of Markov irrationalities.

mod fraction;
mod path;
mod tree;

pub use fraction::{associated_matrix, mediant, FareyFraction};
pub use path::{path_matrices, transformed_path, transformed_stream, CfStream, FareyPath, PathTransform, Turns};
pub use tree::{farey_level, markov_level, markov_word, min_level, parents, triple_structure, FareyTree, TripleStructure};
