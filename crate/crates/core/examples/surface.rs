//! Invariants of the exceptional surface `E` and its minimal resolution.

use weighted_blowup::{parse_germ, surface_report, GermModel, WeightVector};

fn main() -> weighted_blowup::Result<()> {
    println!(" n  K_E^2   points      K^2  e   b2  rho  l^2     l~^2");
    for n in 3..=8 {
        let r = surface_report(&GermModel::fermat(n), &WeightVector::new(1, n - 1, 1, 1)?)?;
        let pts: Vec<String> = r.singular_points.iter().map(|p| p.label()).collect();
        let c = r.curve_data.as_ref().expect("x = 0 section");
        println!(
            "{n:>2}  {:<7} {:<11} {:>3}  {:<3} {:<3} {:<4} {:<7} {}",
            r.k2.to_string(),
            pts.join(" "),
            r.k2_resolution.to_string(),
            r.euler_resolution,
            r.b2_resolution,
            r.picard,
            c.self_intersection.to_string(),
            c.resolved_self_intersection
        );
    }

    let g = parse_germ("xy + z^3 + u^4")?;
    let r = surface_report(&g, &WeightVector::new(1, 2, 1, 1)?)?;
    println!("\n{g} with weights (1,2,1,1)");
    println!("  K_E^2 = {}", r.k2);
    for p in &r.singular_points {
        println!("  {} at the origin of U{}", p.label(), p.chart_index);
    }
    println!(
        "  resolution: K^2 = {}, e = {}, b2 = {}, rho = {}",
        r.k2_resolution, r.euler_resolution, r.b2_resolution, r.picard
    );
    if let Some(c) = &r.curve_data {
        println!(
            "  (x = 0)|_E = {} l, l^2 = {}, on the resolution {}",
            c.multiplicity, c.self_intersection, c.resolved_self_intersection
        );
    }
    Ok(())
}
