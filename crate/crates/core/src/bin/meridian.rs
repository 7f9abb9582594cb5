use std::io::Write;
use std::process::ExitCode;

use meridian::cli::{run, RunConfig, MAX_COSETS_ENV};

fn main() -> ExitCode {
    let env = std::env::var(MAX_COSETS_ENV).ok();
    let cfg = match RunConfig::from_args(std::env::args_os(), env.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => e.exit(),
    };
    let out = run(&cfg, &mut std::io::stdin().lock());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
