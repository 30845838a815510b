//! Exhaustive search for terminal weighted blow-ups.
//!
//! ```text
//! cargo run --release --example classify
//! cargo run --release --example classify -- "xy + z^2 + u^5" 20
//! ```

use std::time::Instant;

use weighted_blowup::{classify_extractions, deg_min, parse_germ, GermModel};

fn report(g: &GermModel, bound: i64) -> weighted_blowup::Result<()> {
    let t = Instant::now();
    let rep = classify_extractions(g, bound)?;
    let accepted: Vec<String> = rep
        .accepted
        .iter()
        .map(|e| format!("{}[{}]", e.weights, e.discrepancy))
        .collect();
    println!("{g}  (bound {bound}, {:.2?})", t.elapsed());
    println!("  accepted: {}", accepted.join(" "));
    println!(
        "  discrepancy-one divisors: {} (deg_min - 1 = {})",
        rep.discrepancy_one_count,
        deg_min(g) - 1
    );
    println!("  classes up to symmetry: {}", rep.orbits.len());
    Ok(())
}

fn main() -> weighted_blowup::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Some(germ) = args.first() {
        let bound = args
            .get(1)
            .and_then(|b| b.parse().ok())
            .unwrap_or(weighted_blowup::classify::DEFAULT_BOUND);
        return report(&parse_germ(germ)?, bound);
    }
    for n in 3..=6 {
        report(&GermModel::fermat(n), 30)?;
    }
    report(&parse_germ("xy + z^3 + u^4")?, 30)?;
    report(&parse_germ("xy + z^2 + u^5")?, 30)?;
    Ok(())
}
