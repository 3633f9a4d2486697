//! Small numeric kernels shared across modules: compensated summation,
//! log-sum-exp and exact/log-space binomial coefficients.

use std::f64::consts::LN_2;

/// Neumaier's compensated accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator in, keeping both compensation terms.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `ln Σ exp(x_i)`, stable for large magnitudes. Returns `-inf` for an empty
/// slice or when every term is `-inf`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let s: NeumaierSum = terms.iter().map(|&t| (t - max).exp()).collect();
    max + s.value().ln()
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact `C(n, k)`, or `None` when it does not fit in 128 bits.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        let num = (n - k) as u128 + i;
        // acc * num / i without overflowing early: i / g divides num.
        let g = gcd(acc, i);
        acc = (acc / g).checked_mul(num / (i / g))?;
    }
    Some(acc)
}

/// `ln n!` via the log-gamma function.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// `n!` as a float (exact up to 22!, correctly rounded beyond).
pub fn factorial_f64(n: u64) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Natural log of `C(n, k)`. Exact integer arithmetic while the value fits in
/// 128 bits, log-gamma beyond. `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    match binomial_u128(n, k) {
        Some(v) => (v as f64).ln(),
        None => ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k),
    }
}

/// Base-2 log of `C(n, k)`.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    match binomial_u128(n, k) {
        Some(v) => (v as f64).log2(),
        None => (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)) / LN_2,
    }
}
