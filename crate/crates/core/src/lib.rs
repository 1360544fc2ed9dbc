pub mod algebroid;
pub mod clwx;
pub mod der3;
pub mod exterior;
pub mod gla;
pub mod linalg;
pub mod poly;
pub mod pontryagin;
pub mod rat;
pub mod report;
pub mod samples;
pub mod text;

pub use exterior::{Form, VectorField};
pub use poly::{Mono, Poly};
pub use rat::Rat;
