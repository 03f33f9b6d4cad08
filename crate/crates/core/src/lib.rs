pub mod algebra;
pub mod criteria;
pub mod error;
pub mod exact;
pub mod killing;
pub mod lich;
pub mod rootsys;
pub mod oracle;
pub mod spaces;

pub use error::{Error, Result};
