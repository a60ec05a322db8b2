//! The special functions behind the coverage expressions.

use hetcache::numerics::{cap_delta, cap_lambda, erfc, f_y, gauss_chebyshev_nodes, hyp_s};

fn main() -> hetcache::Result<()> {
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "z", "S0", "S1", "Delta", "Lambda");
    for z in [0.1, 1.0, 10.0, 100.0] {
        println!(
            "{z:>8} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            hyp_s(0, 4.0, 1, z)?,
            hyp_s(1, 4.0, 1, z)?,
            cap_delta(4.0, 1, z)?,
            cap_lambda(4.0, 1, z)?
        );
    }
    println!("F_y(0.5, N=3) = {:.6}", f_y(0.5, 3)?);
    println!("erfc(1) = {:.15}", erfc(1.0));

    // ∫₋₁¹ cos x dx with the unweighted Chebyshev rule
    let rule = gauss_chebyshev_nodes(64)?;
    println!("GC-64 ∫cos = {:.6} (exact {:.6})", rule.integrate(f64::cos), 2.0 * 1f64.sin());
    Ok(())
}
