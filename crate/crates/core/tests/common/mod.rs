//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use num_complex::Complex64;

/// λ(n) by trial division.
pub fn lambda_oracle(mut n: u64) -> i8 {
    assert!(n >= 1);
    let mut omega = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            omega += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        omega += 1;
    }
    if omega.is_multiple_of(2) { 1 } else { -1 }
}

/// Σ_{2≤n≤x} λ(n) n^{−α}, plain f64 summation from the top down.
pub fn f_descending(alpha: f64, x: u64) -> f64 {
    let mut acc = 0.0;
    for n in (2..=x).rev() {
        acc += lambda_oracle(n) as f64 * (n as f64).powf(-alpha);
    }
    acc
}

/// Root of (β−α) log(n) n^{−ξ} = n^{−α} − n^{−β} in (α, β) by bisection.
pub fn xi_bisection(n: u64, alpha: f64, beta: f64) -> f64 {
    let ln_n = (n as f64).ln();
    let target = (n as f64).powf(-alpha) - (n as f64).powf(-beta);
    let f = |xi: f64| (beta - alpha) * ln_n * (-xi * ln_n).exp() - target;
    let (mut lo, mut hi) = (alpha, beta);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // f decreases in ξ
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const GL5_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// ∫_a^b u^{−w} du by composite five-point Gauss–Legendre on `pieces`
/// equal sub-intervals.
pub fn power_integral_gl(w: Complex64, a: f64, b: f64, pieces: usize) -> Complex64 {
    let h = (b - a) / pieces as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..pieces {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, wt) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            let u = mid + 0.5 * h * x;
            acc += wt * 0.5 * h * (-w * u.ln()).exp();
        }
    }
    acc
}

/// ∫_1^X G(u) u^{−w} du for a step function with levels[n−1] on [n, n+1).
pub fn step_integral_gl(levels: &[f64], w: Complex64, x: u64, refine: usize) -> Complex64 {
    (1..x)
        .map(|n| levels[(n - 1) as usize] * power_integral_gl(w, n as f64, (n + 1) as f64, refine))
        .sum()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Reference values computed with mpmath at 30 digits.
pub const ZETA_HALF: f64 = -1.460_354_508_809_586_8;
pub const ZETA_3_QUARTERS: f64 = -3.441_285_386_945_222_9;
pub const ZETA_THREE_HALVES: f64 = 2.612_375_348_685_488;
pub const ZETA_FOUR: f64 = 1.082_323_233_711_138_2;
