use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use crate::{Error, Result};

/// Plug-in mutual information in bits of a dense joint count table
/// (`table[x][y]`).
pub fn empirical_mutual_info(table: &[Vec<u64>]) -> Result<f64> {
    let mut joint = JointCounts::new();
    for (x, row) in table.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            joint.add_many(x, y, c);
        }
    }
    joint.mutual_info()
}

/// Sparse joint counts of `(x, y)` outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointCounts<Y: Ord> {
    cells: BTreeMap<(usize, Y), u64>,
    total: u64,
}

impl<Y: Ord> Default for JointCounts<Y> {
    fn default() -> Self {
        Self {
            cells: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<Y: Ord + Clone> JointCounts<Y> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: usize, y: Y) {
        self.add_many(x, y, 1);
    }

    pub fn add_many(&mut self, x: usize, y: Y, count: u64) {
        if count == 0 {
            return;
        }
        *self.cells.entry((x, y)).or_insert(0) += count;
        self.total += count;
    }

    pub fn merge(&mut self, other: &JointCounts<Y>) {
        for ((x, y), &c) in &other.cells {
            self.add_many(*x, y.clone(), c);
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct `x` and `y` values seen.
    pub fn support(&self) -> (usize, usize) {
        let (px, py) = self.marginals();
        (px.len(), py.len())
    }

    fn marginals(&self) -> (BTreeMap<usize, u64>, BTreeMap<&Y, u64>) {
        let mut px = BTreeMap::new();
        let mut py = BTreeMap::new();
        for ((x, y), &c) in &self.cells {
            *px.entry(*x).or_insert(0) += c;
            *py.entry(y).or_insert(0) += c;
        }
        (px, py)
    }

    /// `Σ p̂(x,y) log₂[p̂(x,y) / (p̂(x) p̂(y))]`.
    pub fn mutual_info(&self) -> Result<f64> {
        if self.total == 0 {
            return Err(Error::domain("mutual information of an all-zero table"));
        }
        let n = self.total as f64;
        let (px, py) = self.marginals();
        let mi: f64 = self
            .cells
            .iter()
            .map(|((x, y), &c)| {
                let c = c as f64;
                c / n * (c * n / (px[x] as f64 * py[y] as f64)).log2()
            })
            .sum();
        // Rounding can leave a tiny negative value for independent tables.
        Ok(mi.max(0.0))
    }

    /// First-order upward bias of the plug-in estimator in bits:
    /// `(|X|−1)(|Y|−1) / (2N ln 2)` over the observed supports.
    pub fn plugin_bias(&self) -> f64 {
        let (nx, ny) = self.support();
        plugin_bias(nx, ny, self.total)
    }
}

pub fn plugin_bias(nx: usize, ny: usize, trials: u64) -> f64 {
    if trials == 0 {
        return f64::INFINITY;
    }
    (nx.saturating_sub(1) * ny.saturating_sub(1)) as f64 / (2.0 * trials as f64 * LN_2)
}
