//! Interior residue densities of the torsion functionals and the trace-lemma checker.

mod functional;
mod lemmas;
mod report;
pub mod trials;

pub use functional::{
    closed_coefficient, density_parts, spectral_density, trial_inputs, unit_inputs, verify_assembly, verify_theorem,
    verify_theorem_against, FunctionalId, FunctionalSpec,
};
pub use lemmas::{lemma_check, lemma_lhs, lemma_rhs, LemmaShape, LemmaSpec, Placement, LEMMA_IDS};
pub use report::{summarize, CheckReport, Status, TrialOutcome};
