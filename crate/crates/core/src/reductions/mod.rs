//! Compilers between problems and the pattern classifier.

pub mod classify;
pub mod double;
pub mod formula;
pub mod one_in_three;
pub mod shift;

pub use classify::{classify, validate_chain, BaseCase, ChainReport, HardnessVerdict, ReductionChain, StepKind, Verdict};
pub use double::{double_graph, double_pattern, random_double};
pub use formula::{CnfFormula1in3, Literal};
pub use one_in_three::{extract_assignment, lift_assignment, reduce_1in3_to_pgg, LabelMap};
pub use shift::{shift_family, ShiftMember};
