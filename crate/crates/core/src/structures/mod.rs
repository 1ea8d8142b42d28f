//! Structure kinds and their axiom checkers, module data with semidirect
//! products and duals, and the maps assembling total operations from splittings.

mod kind;
pub(crate) mod laws;
mod module;
mod presentation;
mod report;

pub use kind::{Role, Side, StructureKind};
pub use laws::check_structure;
pub use module::{
    action_name, assemble_total, check_bimodule_equations, check_module, dualize_module, regular_module,
    splitting_module, star_action, ModuleData,
};
pub use presentation::StructurePresentation;
pub use report::{AxiomReport, Failure, MAX_FAILURES_PER_AXIOM};
