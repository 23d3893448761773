//! One line per acceptance criterion. `WDC_SLOW=1` adds the expensive
//! instances; `WDC_CRITERIA=2,3` runs a subset.

use std::process::ExitCode;
use std::time::Instant;

use wdc_core::verify::{run_criterion, VerifyOptions};

fn main() -> ExitCode {
    let opts = VerifyOptions::from_env();
    let ids: Vec<u8> = match std::env::var("WDC_CRITERIA") {
        Ok(list) => list.split(',').filter_map(|s| s.trim().parse().ok()).collect(),
        Err(_) => (1..=12).collect(),
    };
    let mut failed = Vec::new();
    for id in ids {
        let start = Instant::now();
        let r = run_criterion(id, &opts);
        let tag = if r.experimental { " [experimental]" } else { "" };
        println!(
            "criterion {:>2}: {} — {}{tag} ({}; {:.1?})",
            r.id,
            r.status(),
            r.title,
            r.detail,
            start.elapsed()
        );
        for f in &r.failures {
            println!("    {f}");
        }
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
