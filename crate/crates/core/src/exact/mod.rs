//! Exact integer and rational machinery plus certified enclosures.

pub mod ball;
pub mod dyadic;
pub mod form;
pub mod irreducible;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod posreal;
pub mod roots;

pub use ball::{Ball, CBall};
pub use dyadic::{Dyadic, Round};
pub use form::{form_action, BinForm, IntMat2};
pub use poly::{IntPoly, RatPoly};
pub use posreal::PosReal;
pub use roots::{isolate_roots, QSqrt, RootEnclosure};
