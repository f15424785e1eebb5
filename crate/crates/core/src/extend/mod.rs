//! Local behaviour of decompositions at a template and how to carry them
//! across a transformation.

pub mod forest;
pub mod compat;
pub mod lift;
pub mod manual;
pub mod sat;
pub mod switch;
pub mod symmetry;

pub use forest::{
    enumerate_consistent_forests, naive_witness, realise_assignment, Assignment, ConsistencyError, ConsistentForest,
    Realisation,
};
pub use compat::{check_compatibility, CompatEntry, CompatReport, Resolution};
pub use lift::{lift_decomposition, restrict, LiftError, LiftRule, Lifted};
pub use sat::{naive_source, sat_to_template, Cnf, Literal, SatError, SatGadget};
pub use switch::{square_switch, switch_host, SquareSwitch};
pub use symmetry::{PairSymmetry, SymmetryElement};
