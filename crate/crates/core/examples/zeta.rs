//! ζ(s) and the two zeta ratios, with the real-axis bounds.
use liouville_zeta::zeta::{real_bounds_check, shifted_ratio, zeta_ratio, zeta_with, ZetaParams};
use liouville_zeta::Complex64;

fn main() -> liouville_zeta::Result<()> {
    for s in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.5, 14.134725), Complex64::new(1.5, 2.0)] {
        let e = zeta_with(s, &ZetaParams::for_s(s))?;
        println!("ζ({s}) = {:.12} ± {:.1e}", e.value, e.error_estimate);
    }
    let s = Complex64::new(0.75, 0.0);
    println!("ζ(2s)/ζ(s) at 0.75 = {:.12}", zeta_ratio(s)?);
    println!("ζ(2s+1)/ζ(s+1/2) at 0.75 = {:.12}", shifted_ratio(s)?);
    for sigma in [0.25, 0.9, 1.1, 4.0] {
        let r = real_bounds_check(sigma)?;
        println!("σ = {sigma}: {:.6} < {:.6} < {:.6} {}", r.lower, r.value, r.upper, r.pass);
    }
    Ok(())
}
