//! Running the claim probes programmatically and printing a report.
//!
//! `cargo run --release --example claim_probes -- 3`

use burnside::ideal::IdealEngine;
use burnside::probe::{self, ProbeConfig};
use burnside::report::RunReport;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let mut cfg = ProbeConfig::new(q)?;
    cfg.sample_count = 10;
    let engine = IdealEngine::new();
    let started = std::time::Instant::now();
    let reports = vec![
        probe::metabelian_check(&cfg)?,
        probe::generator_order_check(&cfg, &engine)?,
        probe::exponent_commutator_check(&cfg, &engine)?,
        probe::square_check(&cfg, &engine)?,
        probe::bounds_check(&cfg)?,
        probe::theorem_b_probe(&cfg, &engine)?,
        probe::prop1_entry_check()?,
        probe::t_commute_check()?,
    ];
    for r in &reports {
        assert!(r.failures_reverify());
    }
    let report = RunReport::new(serde_json::to_value(cfg)?, &reports, started.elapsed().as_secs_f64());
    print!("{}", report.to_text());
    Ok(())
}
