pub mod catalogue;
pub mod currents;
pub mod error;
pub mod operators;
pub mod qcore;
pub mod symfun;

pub use error::{Error, Result};
pub use qcore::{Quat, Quat64};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/operator.md")]
    mod operator {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/currents.md")]
    mod currents {}
}
