//! Least m with every generator of Σ^m inside I(q), against the ceiling
//! e(p^e - p^(e-1)) + 1.

use burnside::ideal::{IdealEngine, IdealSpec, SearchBox};
use burnside::probe::class_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = IdealEngine::new();
    for q in [2u64, 3, 4, 5] {
        let bound = class_bound(q)?;
        let spec = IdealSpec::iq(q)?;
        let report = engine.min_power_in_iq(q, bound.rhs as u32, &SearchBox::default_for(&spec), true)?;
        println!("q={q}: ceiling {}, class bound n={}", bound.rhs, bound.n);
        for level in &report.levels {
            let labels: Vec<&str> = level.verdicts.iter().map(|(_, v)| v.label()).collect();
            println!("  m={}: {}", level.m, labels.join(" "));
        }
        println!("  m_star = {:?}", report.m_star);
    }
    // window 8 is not enough for Σ^4 at q = 4; a wider box settles it
    let wide = SearchBox::new(2, 3, 10);
    let report = engine.min_power_in_iq(4, 4, &wide, false)?;
    println!("q=4 at {wide}: m_star = {:?}", report.m_star);
    Ok(())
}
