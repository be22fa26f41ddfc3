//! Exact computational algebra for 2-string links: free Lie rings over the
//! integers, truncated Magnus expansions, the automorphism tower
//! `Aut0(F/F_{n+1})`, special derivations of the free Lie ring on two
//! generators, and Milnor invariants of string links presented as Morse
//! diagrams.

pub mod freelie;
pub mod milnor;
pub mod nilgrp;
pub mod sder;
pub mod series;
pub mod zlinalg;
