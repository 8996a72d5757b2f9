//! The full identity chain at the default points, as a JSON report.
use liouville_zeta::lab::{default_points, Lab};

fn main() -> liouville_zeta::Result<()> {
    let x = 100_000;
    let lab = Lab::new(x)?;
    let cases = lab.run_all(&default_points(), x)?;
    for c in &cases {
        let gate = if c.is_gating() { "" } else { " (empirical)" };
        println!("{:<44} {:.2e} / {:.1e} {}{gate}", c.name, c.residual, c.tolerance, if c.pass { "ok" } else { "out" });
    }
    println!("{}", serde_json::to_string_pretty(&cases[0])?);
    Ok(())
}
