//! Front end for `quatnil`: JSON interchange, instance generators and the
//! acceptance self-test.

pub mod gen;
pub mod io;
pub mod selftest;
