//! Hirzebruch–Jung continued fractions of `1/r(1,q)` and the numerical data
//! of the minimal resolution.

use weighted_blowup::hj_expand;

fn main() -> weighted_blowup::Result<()> {
    for (r, q) in [(2, 1), (5, 4), (4, 1), (5, 2), (7, 3), (12, 5), (19, 7)] {
        let c = hj_expand(r, q)?;
        let ds: Vec<String> = c.discrepancies.iter().map(|d| d.to_string()).collect();
        println!(
            "1/{r}(1,{q}): [{}]  r/q = {}  discrepancies ({})  K^2 correction {}  du Val {}",
            c.entries
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(","),
            c.reconstruct(),
            ds.join(", "),
            c.k2_correction(),
            c.is_du_val()
        );
    }
    Ok(())
}
