//! Cyclic quotient singularities: terminality by normal form and by the
//! Reid–Tai sum, isolatedness, and surface quotient types.

use weighted_blowup::quotient::hyperquotient_valuation_terminal;
use weighted_blowup::{
    duval_of_surface_quotient, is_isolated_action, is_terminal_hyperquotient, is_terminal_quotient,
    reid_tai_terminal, CyclicQuotient,
};

fn main() -> weighted_blowup::Result<()> {
    println!("threefold quotients");
    for lit in [
        "1/2(1,1,1)",
        "1/3(1,1,1)",
        "1/5(1,-2,-2)",
        "1/7(1,6,3)",
        "1/6(1,2,3)",
    ] {
        let q: CyclicQuotient = lit.parse()?;
        let sums: Vec<String> = (1..q.order())
            .map(|k| {
                q.weights()
                    .iter()
                    .map(|&w| (k * w).rem_euclid(q.order()))
                    .sum::<i64>()
            })
            .map(|s| format!("{s}/{}", q.order()))
            .collect();
        println!(
            "  {lit:<14} isolated {:<5} normal form {:<5} Reid-Tai {:<5} sums [{}]",
            is_isolated_action(&q),
            is_terminal_quotient(&q),
            reid_tai_terminal(&q),
            sums.join(", ")
        );
    }

    println!("surface quotients");
    for lit in ["1/2(1,1)", "1/3(1,2)", "1/4(1,1)", "1/5(1,2)", "1/7(1,3)"] {
        let q: CyclicQuotient = lit.parse()?;
        let t = duval_of_surface_quotient(&q)?;
        println!(
            "  {lit:<10} {:<10} chain {:?}",
            t.label(),
            t.chain().entries
        );
    }

    // xy + z^4 + u^4 divided by 1/2(1,1,1,1): the equation-weight inequality
    // passes, the valuation (1/2,1/2,1/2,1/2) has discrepancy 0
    let q = CyclicQuotient::with_equation_weight(2, &[1, 1, 1, 1], 0)?;
    let terms = vec![vec![1, 1, 0, 0], vec![0, 0, 4, 0], vec![0, 0, 0, 4]];
    println!(
        "hyperquotient {q} on xy + z^4 + u^4: inequality {}, valuations {}",
        is_terminal_hyperquotient(&q),
        hyperquotient_valuation_terminal(&q, &terms)
    );
    Ok(())
}
