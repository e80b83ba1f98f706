//! Gaussian states, symplectic maps, optical networks and displaced
//! squeezed states.
//!
//! A unitary `U` acts on the quadrature vector by the Heisenberg map
//! `U† r U = S r + d`; the network `[U₁, U₂, ...]` applied in list order has
//! `S = ⋯ S₂ S₁`.

mod dss;
mod gaussian;
mod network;

pub use dss::{
    chain_echo, coherent_echo, coherent_transform, mode_echo, overlap_dss, DisplacedSqueezedState,
};
pub use gaussian::{GaussianState, SymplecticOp};
pub use network::{propagator_network, NetworkElement, OpticalNetwork};
