//! Numeric oracle and command-line front end for the `wres-core` engine.

pub mod numeric_oracle;
pub mod cli_dsl;
