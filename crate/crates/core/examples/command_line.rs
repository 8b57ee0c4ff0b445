//! Driving the command-line front end in-process.
//!
//! cargo run --example command_line

use complexforge::cli::run;

fn main() {
    for args in [
        vec!["complexforge", "builtin", "--list"],
        vec!["complexforge", "boundary", "bing_house"],
        vec!["complexforge", "homology", "torus"],
        vec!["complexforge", "towers-check", "rp2"],
        vec!["complexforge", "--json", "covers", "rp2", "--degree", "2", "--count-only"],
    ] {
        let r = run(&args);
        println!("$ {} (exit {})\n{}", args[1..].join(" "), r.exit_code, r.output());
    }
}
