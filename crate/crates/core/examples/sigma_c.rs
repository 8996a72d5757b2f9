//! Brackets for the abscissa of convergence from truncation traces.
use liouville_zeta::integral::{estimate_sigma_c, Kernel, SigmaCOptions, StepFunction, StepKind};
use liouville_zeta::sums::PrefixTable;

fn main() -> liouville_zeta::Result<()> {
    let schedule = [1_000, 3_162, 10_000, 31_623, 100_000, 316_228, 1_000_000];
    let grid: Vec<f64> = (0..11).map(|k| 0.3 + 0.04 * k as f64).collect();
    let prefix = PrefixTable::compute(1_000_000)?;
    let f_one = StepFunction::from_prefix(StepKind::FOne, &prefix);
    let est = estimate_sigma_c(&f_one, Kernel::Shifted, &grid, &schedule, &SigmaCOptions::default())?;
    println!("F_one, u^(-s-1/2): σ_c in ({:.2}, {:.2})", est.lower, est.upper);
    for t in &est.traces {
        println!("  σ = {:.2}  slope {:+.3}  {:?}", t.sigma, t.decay_slope, t.class);
    }
    let grid: Vec<f64> = (0..11).map(|k| 0.8 + 0.04 * k as f64).collect();
    let est = estimate_sigma_c(&StepFunction::constant(1.0), Kernel::Plain, &grid, &schedule, &SigmaCOptions::default())?;
    println!("G = 1, u^(-s): σ_c in ({:.2}, {:.2})", est.lower, est.upper);
    Ok(())
}
