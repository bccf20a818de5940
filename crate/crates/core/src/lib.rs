//! Exact combinatorics and group theory of complex hyperplane arrangements given by
//! rational linear forms: flats, sweep presentations, the map into a product of local
//! groups, injectivity certificates, cokernels and finiteness types.

pub mod arrangement;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod presentation;
pub mod topology;
pub mod words;

pub use error::{Error, Result};
