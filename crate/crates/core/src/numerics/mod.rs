//! First-principles engine: Liouvillians, stationary states and the
//! observables computed from them.

pub mod collision;
pub mod density;
pub mod hilbert;
pub mod liouvillian;
pub mod moments;
pub mod observables;
pub mod steady;

pub use collision::{collision_simulate, CollisionModel};
pub use density::DensityMatrix;
pub use hilbert::{CMatrix, HilbertSpec, SiteKind};
pub use liouvillian::{
    build_chain_liouvillian, build_global_liouvillian, build_local_liouvillian, Approach, Channel,
    Liouvillian,
};
pub use steady::steady_state;
