//! Report construction and rendering shared by the `riccati-galois` binary.

pub mod report;
