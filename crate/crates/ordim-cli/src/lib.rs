//! Document formats shared between the binary and its integration tests.

pub mod docs;
