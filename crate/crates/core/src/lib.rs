#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod error;
pub mod conventions;
pub mod coproduct;
pub mod diagram;
pub mod jaeger;
pub mod laurent;
pub mod scalar;
pub mod skein;
pub mod verify;

pub use error::{DiagramError, DiagramErrorKind, EvalError, ScalarError};
pub use diagram::{Colour, Event, Framing, MorseWord, Orientation, Over, Strand, Surface, Turn};
pub use laurent::LaurentPoly;
pub use scalar::Scalar;
pub use skein::{LocalMemo, MemoStore, SkeinEngine};
