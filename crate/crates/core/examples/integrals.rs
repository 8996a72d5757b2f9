//! Exact truncated Dirichlet integrals of the step functions, with tails.
use liouville_zeta::integral::{integrate_step, j_xi, Kernel, StepFunction, StepKind};
use liouville_zeta::sums::PrefixTable;
use liouville_zeta::zeta::zeta_ratio;
use liouville_zeta::Complex64;

fn main() -> liouville_zeta::Result<()> {
    let x = 1_000_000;
    let prefix = PrefixTable::compute(x)?;
    let s = Complex64::new(2.0, 0.0);
    for kind in [StepKind::FHalf, StepKind::FOne, StepKind::TSum, StepKind::POverU] {
        let g = StepFunction::from_prefix(kind, &prefix);
        let r = integrate_step(&g, kind.default_kernel(), s, x)?;
        println!("{:>9}: {:.12}  tail ≤ {:.1e}", kind.name(), r.value, r.tail_estimate);
    }
    let one = integrate_step(&StepFunction::constant(1.0), Kernel::Shifted, s, x)?;
    println!("      one: {:.12}  (limit 2/3)", one.value);
    let j = j_xi(&prefix, s, x)?;
    println!("J_ξ(2) = {:.12}  tail ≤ {:.1e}", j.value, j.tail_estimate);
    println!("(ζ(4)/ζ(2) − 1)/(3/2) = {:.12}", (zeta_ratio(s)? - 1.0) / 1.5);
    Ok(())
}
