pub mod bench;
pub mod catalog;
pub mod client;
pub mod codec;
pub mod error;
pub mod files;
pub mod grid;
pub mod group;
pub mod server;
pub mod transfer;
pub mod wire;
pub mod zkp;
