use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use landau_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run(cli, &mut out, &mut io::stderr());
    match out.flush() {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return ExitCode::from(1),
        _ => {}
    }
    ExitCode::from(code)
}
