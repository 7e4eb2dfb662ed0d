//! IO, file formats, and the verification suite behind the `qutrit-msd`
//! binary. The algorithms live in `qutrit-msd-core`; this crate adds JSON
//! code files, state specs, CSV reports, and the acceptance checks.

pub mod codefile;
pub mod report;
pub mod statespec;
pub mod verify;
