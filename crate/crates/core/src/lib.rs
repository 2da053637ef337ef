//! Exact computational Lie theory: root systems, Chevalley bases, real
//! forms, and the real forms of maximal reductive subalgebras.

pub mod chevalley;
pub mod complexsub;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod pipeline;
pub mod realform;
pub mod regreal;
pub mod rootsys;
pub mod ssub;

pub use error::{Error, Partial, Result};
