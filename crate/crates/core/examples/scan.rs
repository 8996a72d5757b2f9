//! Pólya and Turán sign scans, with a resumable checkpoint.
use liouville_zeta::liouville::{scan, scan_turan, ScanOptions};

fn main() -> liouville_zeta::Result<()> {
    let t = scan_turan(1000)?;
    println!("T(n) on [1, 1000]: first non-positive = {:?}, min = {:.6} at n = {}", t.first_violation, t.min_value, t.argmin);

    let dir = std::env::temp_dir().join("lzeta-scan-example");
    std::fs::create_dir_all(&dir)?;
    let opts = ScanOptions {
        checkpoint: Some(dir.join("scan.ckpt")),
        max_segments: Some(2),
        ..ScanOptions::default()
    };
    let limit = 2_000_000;
    let first = scan(limit, &opts)?;
    println!("first pass stopped at {} (complete: {})", first.scanned_to, first.complete);
    let rest = scan(limit, &ScanOptions { max_segments: None, ..opts })?;
    println!("resumed at segment {:?}, reached {}", rest.resumed_at, rest.scanned_to);
    println!(
        "P: first positive = {:?}, min = {} at {}, sign changes = {}",
        rest.polya.first_violation, rest.polya.min_value, rest.polya.argmin, rest.polya.sign_change_count
    );
    println!("P({limit}) = {}, T({limit}) = {:.8}", rest.final_p, rest.final_t);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
