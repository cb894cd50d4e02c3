pub mod classifier;
pub mod cli;
pub mod error;
pub mod group;
pub mod harness;
pub mod instance;
pub mod monodromy;
pub mod presentation;
pub mod schreier;
pub mod signature;
pub mod snf;
pub mod word;
