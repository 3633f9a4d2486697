//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the permanent code or the basis ranking.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex64;
use qdl_lab::linop::{CMatrix, UnitaryMatrix};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `U` acting on creation operators: `a_i† ↦ Σ_j U_ij a_j†`.
/// Expands `∏_i (a_i†)^{in_i} / √(in_i!)` as a polynomial in the output
/// creation operators and returns the amplitude of every output monomial,
/// keyed by its occupation tuple.
pub fn symbolic_output_state(u: &UnitaryMatrix, input: &[u32]) -> BTreeMap<Vec<u32>, Complex64> {
    let m = input.len();
    let mut poly: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    poly.insert(vec![0; m], c(1.0, 0.0));
    for (i, &count) in input.iter().enumerate() {
        for _ in 0..count {
            let mut next: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
            for (mono, coef) in &poly {
                for j in 0..m {
                    let w = u.get(i, j);
                    if w == c(0.0, 0.0) {
                        continue;
                    }
                    let mut key = mono.clone();
                    key[j] += 1;
                    *next.entry(key).or_insert(c(0.0, 0.0)) += coef * w;
                }
            }
            poly = next;
        }
    }
    let in_norm: f64 = input.iter().map(|&k| factorial(k)).product::<f64>().sqrt();
    // (a†)^k |0⟩ = √(k!) |k⟩
    poly.into_iter()
        .map(|(mono, coef)| {
            let out_norm: f64 = mono.iter().map(|&k| factorial(k)).product::<f64>().sqrt();
            (mono, coef * out_norm / in_norm)
        })
        .collect()
}

/// All occupation tuples of `n` photons in `m` modes, descending lex.
pub fn brute_basis(m: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == m {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(m, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out
}

/// Output probabilities over [`brute_basis`] from the symbolic expansion.
pub fn symbolic_distribution(u: &UnitaryMatrix, input: &[u32]) -> Vec<f64> {
    let n: u32 = input.iter().sum();
    let state = symbolic_output_state(u, input);
    brute_basis(input.len(), n)
        .iter()
        .map(|b| state.get(b).map_or(0.0, |a| a.norm_sqr()))
        .collect()
}

/// Fock-space matrix element `⟨out|U|in⟩` from the symbolic expansion.
pub fn symbolic_amplitude(u: &UnitaryMatrix, input: &[u32], output: &[u32]) -> Complex64 {
    symbolic_output_state(u, input)
        .get(output)
        .copied()
        .unwrap_or(c(0.0, 0.0))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Permanent as the plain sum over all `k!` permutations.
pub fn naive_permanent(a: &CMatrix) -> Complex64 {
    let k = a.rows();
    permutations(k)
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| a.get(i, j)).product::<Complex64>())
        .sum()
}

/// Glynn's formula over all `2^(k-1)` sign vectors with `δ_0 = +1`.
pub fn glynn_permanent(a: &CMatrix) -> Complex64 {
    let k = a.rows();
    if k == 0 {
        return c(1.0, 0.0);
    }
    let mut total = c(0.0, 0.0);
    for mask in 0u64..(1 << (k - 1)) {
        let delta: Vec<f64> = (0..k)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 })
            .collect();
        let sign: f64 = delta.iter().product();
        let prod: Complex64 = (0..k)
            .map(|j| (0..k).map(|i| a.get(i, j) * delta[i]).sum::<Complex64>())
            .product();
        total += prod * sign;
    }
    total / (1u64 << (k - 1)) as f64
}

pub fn random_matrix(k: usize, seed: u64) -> CMatrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    CMatrix::from_fn(k, k, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64_digits().first().copied().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 60;
    let top = (x >> shift).to_u64_digits()[0] as f64;
    top.log2() + shift as f64
}

/// Exact bunched-pattern value `2γ_(n)` for Haar `U(m)`.
///
/// `X = n!·∏_{i<n} |U_i0|²` for one Haar column, whose squared moduli are
/// Dirichlet(1,…,1). Then `E[∏|u_i|^{2a}] = (m−1)!·a!^n / (m−1+na)!`,
/// which gives `γ = 2^n Γ(m+n)² / (Γ(m) Γ(m+2n))`.
pub fn exact_bunched_two_gamma(m: usize, n: usize) -> f64 {
    let lg = |x: f64| libm::lgamma(x);
    let (m, n) = (m as f64, n as f64);
    2.0 * (n * 2f64.ln() + 2.0 * lg(m + n) - lg(m) - lg(m + 2.0 * n)).exp()
}

/// `1/d` from a big-integer binomial. Irreducibility of the n-photon
/// representation forces `c_q = 1/d` for every pattern.
pub fn exact_c(m: usize, n: usize) -> f64 {
    let d = big_binomial((n + m - 1) as u64, n as u64);
    1.0 / big_log2(&d).exp2()
}

/// `2/(m(m+1))`: the bunched two-photon mean `2E|U_11|²|U_21|²`, obtained
/// here by direct quadrature over the first Haar column of `U(m)`, whose
/// squared moduli are uniform on the simplex.
pub fn quadrature_two_photon_bunched(m: usize) -> f64 {
    // E[p1 p2] for Dirichlet(1^m) by integrating p1 p2 over the simplex
    // marginal (p1, p2) with density (m-1)(m-2)(1-p1-p2)^(m-3).
    assert!(m >= 2);
    if m == 2 {
        // p2 = 1 - p1, p1 ~ U(0,1)
        let steps = 200_000;
        let h = 1.0 / steps as f64;
        let s: f64 = (0..steps)
            .map(|i| {
                let p = (i as f64 + 0.5) * h;
                p * (1.0 - p)
            })
            .sum();
        return 2.0 * s * h;
    }
    let steps = 2_000;
    let h = 1.0 / steps as f64;
    let mut s = 0.0;
    for i in 0..steps {
        let p1 = (i as f64 + 0.5) * h;
        for j in 0..steps {
            let p2 = (j as f64 + 0.5) * h;
            let r = 1.0 - p1 - p2;
            if r > 0.0 {
                s += p1 * p2 * (m - 1) as f64 * (m - 2) as f64 * r.powi(m as i32 - 3);
            }
        }
    }
    2.0 * s * h * h
}

/// Joint law of (message, detected pattern) for the loss channel, by
/// enumerating every survival subset of every code word. Returns the mutual
/// information in bits and the variance of the per-trial information
/// density, which sets the Monte Carlo spread of a plug-in estimate.
pub fn brute_lossy_mi(m: usize, n: usize, eta: f64) -> (f64, f64) {
    let words: Vec<Vec<u32>> = brute_basis(m, n as u32)
        .into_iter()
        .filter(|w| w.iter().all(|&k| k <= 1))
        .collect();
    let px = 1.0 / words.len() as f64;
    let mut joint: BTreeMap<(usize, Vec<u32>), f64> = BTreeMap::new();
    for (x, w) in words.iter().enumerate() {
        let modes: Vec<usize> = (0..m).filter(|&i| w[i] == 1).collect();
        for mask in 0u32..(1 << n) {
            let mut y = vec![0u32; m];
            let mut p = px;
            for (b, &mode) in modes.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    y[mode] = 1;
                    p *= eta;
                } else {
                    p *= 1.0 - eta;
                }
            }
            *joint.entry((x, y)).or_insert(0.0) += p;
        }
    }
    let mut py: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
    for ((_, y), p) in &joint {
        *py.entry(y.clone()).or_insert(0.0) += p;
    }
    let (mut mi, mut second) = (0.0, 0.0);
    for ((_, y), &p) in &joint {
        if p > 0.0 {
            let i = (p / (px * py[y])).log2();
            mi += p * i;
            second += p * i * i;
        }
    }
    (mi, second - mi * mi)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
