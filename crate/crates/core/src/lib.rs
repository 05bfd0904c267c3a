//! Exact arithmetic in rational quaternion division algebras and
//! decomposition of quaternion matrices into sums of two nilpotents.

pub mod classify;
pub mod conjugacy;
pub mod decompose;
pub mod error;
pub mod hilbert;
pub mod matrix;
pub mod quaternion;
pub mod rational;
pub mod ratmat;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{QMatrix, QVector, SimilarityWitness};
pub use quaternion::{Algebra, Quaternion};
pub use rational::Rational;
pub use search::SearchConfig;
