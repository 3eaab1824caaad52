//! Independent reference computations for the integration tests.
//!
//! Nothing here calls into the library: every value is rebuilt from
//! elementary series with plain `f64` and Kahan-style summation.

#![allow(dead_code)]

/// Neumaier sum of a sequence of reals.
pub fn ksum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in terms {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// ζ(s) for real s > 1: 10⁶ direct terms plus the integral tail and its
/// trapezoid corrections.
pub fn zeta_direct(s: f64) -> f64 {
    let n = 1_000_000u32;
    let nf = n as f64;
    let head = ksum((1..=n).rev().map(|k| (k as f64).powf(-s)));
    // Σ_{k>N} k^{-s} ≈ N^{1-s}/(s-1) − N^{-s}/2 + s N^{-s-1}/12
    let tail = nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0;
    head + tail
}

/// ζ(s) for real s ≠ 1 by Euler–Maclaurin with 1000 direct terms and a
/// Bernoulli tail through B₈.
pub fn zeta_em(s: f64) -> f64 {
    let n = 1000u32;
    let nf = n as f64;
    let head = ksum((1..n).rev().map(|k| (k as f64).powf(-s)));
    let b = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut rising = s;
    let mut tail = Vec::new();
    for (j, &c) in b.iter().enumerate() {
        if j > 0 {
            let k = (2 * j) as f64;
            rising *= (s + k - 1.0) * (s + k);
        }
        tail.push(c * rising * nf.powf(-s - (2 * j + 1) as f64));
    }
    head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + ksum(tail)
}

/// Euler–Mascheroni constant: H_n − ln n − 1/(2n) + 1/(12n²) − 1/(120n⁴).
pub fn euler_gamma() -> f64 {
    let n = 10_000u32;
    let nf = n as f64;
    let h = ksum((1..=n).rev().map(|k| 1.0 / k as f64));
    ksum([
        h,
        -nf.ln(),
        -0.5 / nf,
        1.0 / (12.0 * nf * nf),
        -1.0 / (120.0 * nf.powi(4)),
    ])
}

/// Stieltjes constant γ_k from Σ_{j≤N} ln^k j / j − ln^{k+1}N/(k+1) with
/// trapezoid and first Bernoulli corrections.
pub fn stieltjes(k: i32) -> f64 {
    let n = 2000u32;
    let nf = n as f64;
    let ln = nf.ln();
    let f = |x: f64| x.ln().powi(k) / x;
    let fp = |x: f64| {
        let l = x.ln();
        let lower = if k == 0 { 0.0 } else { k as f64 * l.powi(k - 1) };
        (lower - l.powi(k)) / (x * x)
    };
    let sum = ksum((1..=n).rev().map(|j| f(j as f64)));
    ksum([
        sum,
        -ln.powi(k + 1) / (k + 1) as f64,
        -0.5 * f(nf),
        -fp(nf) / 12.0,
    ])
}

/// t/(e^t − 1) − e^{−t} as (t − 1 + e^{−t}) / (e^t − 1), both power series
/// summed term by term (no cancellation for small t).
pub fn t_bracket(t: f64) -> f64 {
    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut term = 1.0;
    for n in 1..40 {
        term *= t / n as f64;
        den.push(term);
        if n >= 2 {
            num.push(if n % 2 == 0 { term } else { -term });
        }
    }
    ksum(num) / ksum(den)
}
