pub mod error;
pub mod exact;
pub mod laurent;
pub mod wigner;
pub mod sp4;
pub mod gkmod;
pub mod intertwine;
pub mod verify;
pub mod cli;
