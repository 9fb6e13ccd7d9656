pub mod audit;
pub mod census;
pub mod error;
pub mod families;
pub mod group;
pub mod hom;
pub mod io;
pub mod iso;
pub mod nearring;
pub mod profile;
pub mod properties;
pub mod report;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::{Element, Group, GroupDescriptor, GroupKind};
pub use nearring::Nearring;
