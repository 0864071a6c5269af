//! Exact nonabelian Fourier transforms on unipotent families and their
//! elliptic restrictions.

pub mod cyclo;
pub mod elliptic;
pub mod error;
pub mod groups;
pub mod chartab;
pub mod families;
pub mod catalog;
pub mod verify;

pub use cyclo::{parse_coeff, CycNum};
pub use error::{Error, Result};
