//! Runs every acceptance criterion at its runtime limit and prints one line
//! per criterion. Exits non-zero if any fails.

use mrdlab::battery::{criteria, run_criterion, Scope};

fn main() {
    let mut failed = 0;
    for c in criteria() {
        let r = run_criterion(&c, Scope::All);
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {:>2} {} ({:.3}s, limit {}s)", r.id, r.title, r.seconds, r.limit_seconds);
        if !r.pass {
            failed += 1;
            if let Some(e) = &r.error {
                println!("       error: {e}");
            }
            for ch in r.checks.iter().filter(|ch| !ch.pass) {
                println!("       {}: expected {}, got {}", ch.name, ch.expected, ch.actual);
            }
            if !r.within_limit {
                println!("       over the runtime limit");
            }
        }
    }
    println!("{failed} of {} criteria failed", criteria().len());
    if failed > 0 {
        std::process::exit(1);
    }
}
