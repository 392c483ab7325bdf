//! Finite-state multilinear grammar engine.
//!
//! Regular grammars and automata, a six-rank processing cascade, worked
//! grammar fragments, stress coding, tone sandhi and pitch-track analysis.

pub mod fragments;
pub mod fsa;
pub mod prosody;
pub mod rank;
pub mod stress;
pub mod tone;
