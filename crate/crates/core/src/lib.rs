pub mod cli;
pub mod conn;
pub mod families;
pub mod graph;
pub mod spectral;
pub mod verify;
