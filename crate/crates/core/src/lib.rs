//! Workbench for states and endomorphisms of the Cuntz algebras O_n.
//!
//! - [`algebra`]: symbolic monomials `v_s v_t*` and their linear combinations.
//! - [`product_state`]: product states `ω_f` on the core, shifts, quasi-orbits.
//! - [`measure`], [`extension`]: circle measures and the extensions `ρ̃[μ]`.
//! - [`gns`]: an exact finite model of the extension representations.
//! - [`classifier`]: equivalence and conjugacy decisions with witnesses.
//! - [`parse`], [`io`], [`report`], [`cli`]: the command-line front end.

pub mod algebra;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod exec;
pub mod extension;
pub mod gns;
pub mod io;
pub mod measure;
pub mod parse;
pub mod product_state;
pub mod report;
pub mod sample;

pub use algebra::{AlgebraElement, Letter, Monomial, MultiIndex};
pub use classifier::{ConjugacyVerdict, LineTuple, Verdict, Witness};
pub use error::{Error, Result};
pub use exec::Exec;
pub use extension::ExtensionState;
pub use gns::SimContext;
pub use measure::{Atom, CircleMeasure};
pub use parse::parse_element;
pub use product_state::{ProductState, UnitVector, VectorSequence};
