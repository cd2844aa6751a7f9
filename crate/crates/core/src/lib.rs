//! Construction of subgroups of finite linear groups and mechanical
//! verification of factorizations `G = HK`.

pub mod catalog;
pub mod constructors;
pub mod error;
pub mod factorize;
pub mod gf;
pub mod grpcore;
pub mod linalg;
pub mod orders;
pub mod par;
pub mod perm;

pub use error::{Error, Result};
