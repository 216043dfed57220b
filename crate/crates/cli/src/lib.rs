//! Front end for `tauspinor`: configuration, the verification report and the
//! data scenarios behind the `tauspinor` binary.

pub mod config;
pub mod scenarios;
pub mod verify;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
}
