//! The command-line contract, independent of process I/O.
//!
//! Exit codes: 0 success, 2 unreadable or malformed config, 3 invalid
//! config, 4 domain error (e.g. `OrderUndefined`, `NotUnitary`).

use super::config::{parse_config_for, Command, ConfigError};
use super::emit::{emit, emit_error, Format};
use super::report::{error_kind, run_command, ErrorDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub exit_code: i32,
    /// The report, or an error document.
    pub output: String,
    /// Human-readable diagnostics.
    pub diagnostics: String,
}

pub fn execute(command: Command, config_text: &str, format: Format) -> Execution {
    let cfg = match parse_config_for(config_text, Some(command)) {
        Ok(cfg) => cfg,
        Err(e) => {
            let (code, doc) = match &e {
                ConfigError::Parse(msg) => (EXIT_PARSE, ErrorDocument::new("ParseError", msg.clone(), vec![], None)),
                ConfigError::Invalid(issues) => (
                    EXIT_VALIDATION,
                    ErrorDocument::new("ValidationError", format!("{} issue(s)", issues.len()), issues.clone(), None),
                ),
            };
            return Execution { exit_code: code, output: emit_error(&doc), diagnostics: format!("{e}\n") };
        }
    };
    match run_command(&cfg) {
        Ok(doc) => Execution { exit_code: EXIT_OK, output: emit(&doc, format), diagnostics: String::new() },
        Err(e) => {
            let kind = error_kind(&e);
            let doc = ErrorDocument::new(kind, e.to_string(), vec![], Some(cfg));
            Execution { exit_code: EXIT_DOMAIN, output: emit_error(&doc), diagnostics: format!("{kind}: {e}\n") }
        }
    }
}
