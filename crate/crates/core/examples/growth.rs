//! Growth exponent of |P(x)| from its record peaks.
use liouville_zeta::lab::growth_exponent_diagnostic;

fn main() -> liouville_zeta::Result<()> {
    for x in [1_000, 100_000, 10_000_000] {
        let r = growth_exponent_diagnostic(x)?;
        println!(
            "x ≤ {x:>9}: θ = {:.3} ± {:.3} from {} peaks over {:.1} decades{}",
            r.exponent,
            r.band,
            r.peaks,
            r.span_decades,
            if r.wide_band { " (wide)" } else { "" }
        );
    }
    Ok(())
}
