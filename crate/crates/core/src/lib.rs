pub mod boundary;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod oracle;
pub mod residue;
pub mod scalars;
pub mod symbols;
