//! Command-line front end: `cohom`, `verify` and `serre`.

mod args;
mod commands;

pub use args::{Cli, CohomArgs, Command, Format, RunConfig, SerreArgs, VerifyArgs, Window};
pub use commands::{
    error_code, execute, load_variety, Output, EXIT_FAIL, EXIT_GENERICITY, EXIT_INDETERMINATE,
    EXIT_PASS, EXIT_USAGE,
};

/// Parses `argv` and runs; usage errors exit with 2.
pub fn run_from<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            }
        }
    }
}
