//! Finite pointfree topology: frames, nuclei, localic maps, frame
//! coproducts, the pretopos of finite sets, and the subobject functor
//! from finite sets into finite compact Hausdorff locales.
//!
//! Everything here is exhaustively checkable at desk scale. Frames are
//! finite distributive lattices in Birkhoff normal form (downsets of the
//! poset of join irreducibles); localic maps carry their computed right
//! adjoints; the property checkers return the first counterexample in
//! index order when they fail. The `functor` module assembles the whole
//! verification: the frame of reversed subobject lattices of finite sets
//! lands in compact Hausdorff locales and the functor taking a map to
//! its image operator is a pretopos embedding, checked piece by piece
//! over all objects and maps up to a configurable size.

pub mod bits;
pub mod config;
pub mod coproduct;
pub mod error;
pub mod finset;
pub mod frame;
pub mod functor;
pub mod homsearch;
pub mod json;
pub mod maps;
pub mod nucleus;
pub mod poset;
pub mod random;
pub mod report;
pub mod stone;

pub use config::{Caps, Config, OutputFormat};
pub use error::{Error, Result, Verdict};
pub use frame::{Frame, FrameRef};
pub use maps::{FrameHom, LocalicMap};
pub use nucleus::Nucleus;
pub use poset::Poset;
