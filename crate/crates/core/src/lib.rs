//! Chamber-level machinery for Coxeter groups and buildings modeled on them.
//!
//! The crate is organized bottom-up:
//!
//! * [`coxeter`]: Coxeter matrices, the word problem (reduction to a ShortLex
//!   canonical form), reflections and wall separation, balls, gallery hulls,
//!   and weak-order gates inside the group itself.
//! * [`building`]: W-metric chamber complexes behind one trait, with thin,
//!   tree, right-angled (graph product), product, and flag-geometry instances,
//!   plus galleries, residues, thickening, components, and an axiom checker.
//! * [`retraction`]: the folding map onto the base apartment, preimages, and
//!   lifting of minimal galleries along braid-move sequences.
//! * [`cover`]: colored covers of an apartment, their lift through the folding
//!   map, verification (coverage, disjointness scale, diameters), and the
//!   per-component diameter bound check.
//! * [`io`]: serializable descriptors and deterministic JSON/DOT/CSV output.

pub mod building;
pub mod cover;
pub mod coxeter;
pub mod io;
pub mod retraction;
