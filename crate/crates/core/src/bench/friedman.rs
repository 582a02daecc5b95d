use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanResult {
    /// Mean rank per treatment; 1 is best (lowest value).
    pub average_ranks: Vec<f64>,
    pub chi_square: f64,
    pub rows: usize,
    pub treatments: usize,
}

/// Ranks of `row` with ties sharing the average of their positions.
pub fn rank_row(row: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[a].total_cmp(&row[b]));
    let mut ranks = vec![0.0; row.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Average ranks per column of an instance × treatment matrix and the Friedman statistic
/// `12N / (k(k+1)) Σ R̄_j² - 3N(k+1)`.
pub fn friedman_ranks(matrix: &[Vec<f64>]) -> Result<FriedmanResult> {
    let rows = matrix.len();
    if rows == 0 {
        return Err(Error::invalid("need at least one row"));
    }
    let k = matrix[0].len();
    if k < 2 {
        return Err(Error::invalid("need at least two treatments"));
    }
    if let Some(bad) = matrix.iter().position(|r| r.len() != k) {
        return Err(Error::invalid(format!(
            "row {bad} has {} values, expected {k}",
            matrix[bad].len()
        )));
    }
    let mut sums = vec![0.0; k];
    for row in matrix {
        for (s, r) in sums.iter_mut().zip(rank_row(row)) {
            *s += r;
        }
    }
    let n = rows as f64;
    let kf = k as f64;
    let average_ranks: Vec<f64> = sums.iter().map(|s| s / n).collect();
    let sq: f64 = average_ranks.iter().map(|r| r * r).sum();
    let chi_square = 12.0 * n / (kf * (kf + 1.0)) * sq - 3.0 * n * (kf + 1.0);
    Ok(FriedmanResult {
        average_ranks,
        chi_square,
        rows,
        treatments: k,
    })
}
