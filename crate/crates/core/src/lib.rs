//! Exact q-Whittaker, q-Burge and finite-field flag computations.
//!
//! Everything is exact: polynomials and rational functions in `q` over
//! big integers, and point counts over prime fields `𝔽_p` read at `q = 1/p`.

pub mod budget;
pub mod burge;
pub mod combinat;
pub mod error;
pub mod flags;
pub mod gflin;
pub mod kernel;
pub mod par;
pub mod qalg;
pub mod qburge;
pub mod rppquiver;
pub mod verify;
pub mod whittaker;

pub use budget::{set_cap_bits, Budget};
pub use combinat::{Composition, NatMatrix, Partition, Tableau};
pub use error::{Error, Result};
pub use par::set_parallel;
pub use qalg::{QPoly, QRat};
