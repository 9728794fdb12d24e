// Driving the command-line front end from code. The same commands are
// available from the `qorrelate` binary.

use qorrelate::cli::{run, Cli};
use qorrelate::Result;
use clap::Parser;

pub fn run_example() -> Result<()> {
    let commands: [&[&str]; 3] = [
        &["qorrelate", "table", "--family", "haar", "--n", "3", "--measures", "c,c2", "--samples", "100", "--seed", "7"],
        &["qorrelate", "state", "--name", "w", "--n", "3", "--format", "json"],
        &["qorrelate", "dicke-scan", "--n-min", "4", "--n-max", "5", "--check"],
    ];
    for args in commands {
        let cli = Cli::try_parse_from(args).expect("valid arguments");
        let outcome = run(&cli)?;
        print!("{}", String::from_utf8_lossy(&outcome.bytes));
        assert!(outcome.failures.is_empty(), "{:?}", outcome.failures);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
