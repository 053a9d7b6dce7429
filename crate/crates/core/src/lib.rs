//! Pairing of immersed curves in the pillowcase through the reduced dual
//! bar DD bimodule, with homology computed over F2.
//!
//! Curves are written as words in the domains and arcs of the pillowcase
//! ([`curves`]), compiled to A-infinity modules over the pillowcase algebra
//! ([`algebra`], [`structures`]), and paired through the reduced bar
//! ([`bar`], [`pairing`]).

pub mod algebra;
pub mod bar;
pub mod cli;
pub mod corpus;
pub mod curves;
pub mod f2linear;
pub mod pairing;
pub mod structures;
