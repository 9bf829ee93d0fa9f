//! Runs the deterministic acceptance criteria and prints their verdicts.

use flagsob::cli::outcome_line;
use flagsob::suite::{run_criterion, SuiteConfig};

fn main() {
    let cfg = SuiteConfig::default();
    for id in [1, 2, 5, 6, 10] {
        if let Some(o) = run_criterion(id, &cfg) {
            println!("{}", outcome_line(&o));
        }
    }
}
