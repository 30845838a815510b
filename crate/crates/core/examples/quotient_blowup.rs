//! Ambient charts of the weighted blow-up of `C^n / Z_m(a_1, ..., a_n)` with
//! weights `a_i`.
//!
//! ```text
//! cargo run --example quotient_blowup -- 3 1,2,2
//! ```

use weighted_blowup::quotient_blowup;

fn main() -> weighted_blowup::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (m, a) = match args.as_slice() {
        [m, a] => (
            m.parse().unwrap_or(1),
            a.split(',')
                .filter_map(|x| x.trim().parse().ok())
                .collect::<Vec<i64>>(),
        ),
        _ => (2, vec![1, 1, 3]),
    };
    println!("blow-up of C^{} / Z_{m}{a:?}", a.len());
    for ch in quotient_blowup(m, &a)? {
        println!("  {}", ch.render());
    }
    Ok(())
}
