//! Library surface of the command-line tool: input parsing and report
//! serialization, shared with the acceptance tests.

pub mod io;
