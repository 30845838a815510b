//! Affine charts of weighted blow-ups of `xy + z^n + u^n` and `xy + z^3 + u^4`.
//!
//! ```text
//! cargo run --example charts
//! cargo run --example charts -- "xy + z^2 + u^5" 1,3,2,1
//! ```

use weighted_blowup::{
    discrepancy, exceptional_part, make_charts, parse_germ, weighted_mult, GermModel, WeightVector,
};

fn show(g: &GermModel, w: &WeightVector) {
    let ex = exceptional_part(g, w);
    println!("{g}  weights {w}");
    println!(
        "  weighted multiplicity {}, discrepancy {}",
        weighted_mult(g, w),
        discrepancy(g, w)
    );
    println!(
        "  E = {}: irreducible {}, reduced {}",
        ex.render(),
        ex.irreducible,
        ex.reduced
    );
    for ch in make_charts(g, w) {
        println!("  {}", ch.render());
    }
    println!();
}

fn main() -> weighted_blowup::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [germ, weights] = args.as_slice() {
        show(&parse_germ(germ)?, &weights.parse()?);
        return Ok(());
    }
    for n in 3..=5 {
        show(&GermModel::fermat(n), &WeightVector::new(1, n - 1, 1, 1)?);
    }
    show(
        &parse_germ("xy + z^3 + u^4")?,
        &WeightVector::new(1, 2, 1, 1)?,
    );
    // the ordinary blow-up: E is the quadric cone xy = 0, two planes
    show(&GermModel::fermat(3), &WeightVector::new(1, 1, 1, 1)?);
    Ok(())
}
