//! Fixtures shared by the benchmarks under `benches/`.

use zerosector::{beta0, fb_coeffs, CoeffSeq, Decimal, Mp, Real};

/// A positive sequence of the given degree with every β_j = β₀(θ)·1.01,
/// peaked near the middle so the coefficients stay inside f64 range.
pub fn sector_sequence(theta: f64, degree: usize) -> CoeffSeq {
    let log_beta = (beta0(theta).expect("theta in [pi/2, pi)").beta0 * 1.01).ln();
    let mid = degree as f64 / 2.0;
    let coeffs = (0..=degree)
        .map(|j| {
            let x = j as f64 - mid;
            (-0.5 * x * x * log_beta).exp()
        })
        .collect();
    CoeffSeq::new(coeffs).expect("positive coefficients")
}

/// f_{b,N} at `digits` significant digits.
pub fn constant_ratio(b: &str, degree: usize, digits: u32) -> CoeffSeq<Mp> {
    let b = Mp::parse_decimal(Decimal(digits), b).expect("decimal literal");
    fb_coeffs(&b, degree).expect("b > 1")
}
