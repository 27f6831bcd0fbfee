//! Command-line front end: an expression language over the symbol calculus,
//! preset pipelines, and text/JSON/LaTeX emitters.

pub mod ast;
pub mod config;
pub mod emit;
pub mod eval;
pub mod parser;
pub mod run;
pub mod targets;

pub use ast::{BinOp, CliffAtom, Expr, Func, Indet};
pub use config::{ConfigError, Format, OracleConfig, OracleMode, Preset, Projector, RawOptions, RunConfig};
pub use eval::{eval_str, type_of, Context, EvalError, Ty, TypeError, Value};
pub use parser::{parse_expr, ParseError};
pub use run::{run_case, run_eval, run_heat, run_oracle, run_phi, HeatArgs, Report, RunError, EXIT_ERROR, EXIT_MATCH, EXIT_MISMATCH};
pub use targets::TargetsFile;
