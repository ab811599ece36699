//! Degree, group, synchronization and the behaviour of degrees under
//! composition.

mod composition;
mod degree;
mod sync;

pub use composition::{code_preservation_check, composition_degree_report, CompositionDegreeReport};
pub use degree::{
    degree, degree_invariance_check, degree_of_automaton, is_synchronized, AutomatonTag,
    DegreeReport,
};
pub use sync::{check_synchronizing_word, find_synchronizing_word, SyncCheck, SYNC_SUBSET_BUDGET};
