use clap::Parser;

use dintime::cli::{run, ExperimentSpec};

fn main() {
    let spec = ExperimentSpec::parse();
    match run(&spec) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
