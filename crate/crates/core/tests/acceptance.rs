//! Runs every acceptance criterion at its pinned sample size and tolerance,
//! one line per criterion. Set `SPECTILE_SEED` to change the seed (default 0).

use std::process::ExitCode;

use spectile::battery::run_criterion;

fn main() -> ExitCode {
    let seed = std::env::var("SPECTILE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    println!("acceptance battery, seed {seed}");
    let mut failed = 0;
    for id in 1..=8 {
        let report = run_criterion(id, seed).expect("criterion ids 1..=8 exist");
        println!("{report}");
        failed += usize::from(!report.passed);
    }
    if failed == 0 {
        println!("all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
