//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use plfocal::checks::{criteria, DEFAULT_SEED};

fn main() {
    println!("acceptance: seed {DEFAULT_SEED:#x}");
    let mut failed = 0;
    let all = criteria();
    for c in &all {
        let r = c.run(DEFAULT_SEED);
        let tag = if r.passed { "PASS" } else { "FAIL" };
        if !r.passed {
            failed += 1;
        }
        println!("{tag} [{:>2}] {} ({:.1}s, budget {}s): {}", r.id, r.name, r.elapsed.as_secs_f64(), c.budget.as_secs(), r.detail);
    }
    println!("acceptance: {} of {} passed", all.len() - failed, all.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
