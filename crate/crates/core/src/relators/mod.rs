//! V-relations as finite tables, the relator catalogue, and the exact
//! transportation solver behind the Wasserstein liftings.

mod lift;
mod transport;
mod vrel;

pub use lift::{
    apply_relator, kernel_relator, lift_hausdorff, lift_partial, lift_state, lift_wasserstein,
    RelatorCfg,
};
pub use transport::{solve_transport, TransportProblem, TransportSolution};
pub use vrel::VRelation;
