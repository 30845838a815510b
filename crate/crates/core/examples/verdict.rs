//! Terminality verdicts: accepted extractions, a non-terminal quotient point,
//! and a singular curve on the exceptional divisor.

use weighted_blowup::{blowup_verdict, parse_germ, WeightVector};

fn main() -> weighted_blowup::Result<()> {
    let cases = [
        ("xy + z^4 + u^4", [2, 2, 1, 1]),
        ("xy + z^4 + u^4", [1, 3, 1, 2]),
        ("xy + z^3 + u^3", [1, 5, 2, 2]),
        ("xy + z^3 + u^4", [2, 1, 1, 1]),
        ("xy + z^3 + u^4", [4, 1, 1, 1]),
        ("xy + z^2 + u^5", [1, 3, 2, 1]),
    ];
    for (germ, [a, b, c, d]) in cases {
        let g = parse_germ(germ)?;
        let v = blowup_verdict(&g, &WeightVector::new(a, b, c, d)?)?;
        println!("{g}  {}  discrepancy {}", v.weights, v.discrepancy);
        for p in &v.singular_points {
            println!("    {p}");
        }
        match &v.rejection_reason {
            Some(r) => println!("  rejected: {r}\n"),
            None => println!("  terminal extraction\n"),
        }
    }
    Ok(())
}
