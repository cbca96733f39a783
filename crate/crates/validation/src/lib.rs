//! Runs the `gb2d` command line in-process.

use clap::Parser;
use gb2d_cli::args::Cli;

/// Exit status and captured stdout of one invocation. `args` excludes the
/// program name.
pub fn run_cli(args: &[&str]) -> (u8, Vec<u8>) {
    let cli = match Cli::try_parse_from(std::iter::once("gb2d").chain(args.iter().copied())) {
        Ok(cli) => cli,
        Err(e) => return (if e.use_stderr() { 1 } else { 0 }, Vec::new()),
    };
    let mut out = Vec::new();
    let code = match gb2d_cli::run(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => e.exit_code(),
    };
    (code, out)
}
