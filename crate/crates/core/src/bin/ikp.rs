use clap::Parser;
use ikp_kripke::cli::{run, Cli, BAD_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { BAD_INPUT } else { 0 });
        }
    };
    let out = run(&cli);
    if out.code == BAD_INPUT {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    std::process::exit(out.code);
}
