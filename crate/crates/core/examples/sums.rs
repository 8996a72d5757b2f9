//! F_x(1/2), F_x(1) and L_x(ξ) at powers of ten.
use liouville_zeta::sums::PrefixTable;

fn main() -> liouville_zeta::Result<()> {
    let table = PrefixTable::compute(1_000_000)?;
    println!("{:>8} {:>14} {:>14} {:>14} {:>10}", "x", "F_x(1/2)", "F_x(1)", "L_x", "gap");
    for k in 1..=6 {
        let x = 10u64.pow(k);
        let i = (x - 1) as usize;
        let gap = table.f_half[i] - table.f_one[i] - table.l_xi[i];
        println!(
            "{x:>8} {:>14.8} {:>14.8} {:>14.8} {gap:>10.1e}",
            table.f_half[i], table.f_one[i], table.l_xi[i]
        );
    }
    Ok(())
}
