//! Permutation groups, words, finite presentations and coset enumeration,
//! with a pipeline that builds the Hall–Janko group J2 as a symmetric image of
//! a progenitor and checks its structure.

pub mod cli;
pub mod group;
pub mod j2;
pub mod perm;
pub mod presentation;
pub mod todd_coxeter;
pub mod union_find;
pub mod words;

pub use group::{GroupError, PermutationGroup, StabilizerChain};
pub use perm::{PermError, Permutation};
pub use presentation::{Presentation, ProgenitorSpec, RelationTriple, VerifiedPresentation};
pub use todd_coxeter::{enumerate, CosetTable, EnumerationOptions, Strategy};
pub use words::{Generator, Letter, Word};
