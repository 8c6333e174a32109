//! Reference computations kept independent of the library's Smith form:
//! invariant factors by alternating Hermite reduction, homology from those,
//! and a few helpers for building oracles.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use relcone_core::chain::GradedComplex;
use relcone_core::homology::AbGroup;
use relcone_core::IntMatrix;

pub type Rows = Vec<Vec<BigInt>>;

pub fn rows_of(m: &IntMatrix) -> Rows {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect()).collect()
}

fn transpose(a: &Rows, cols: usize) -> Rows {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row-style Hermite reduction by repeated Euclid steps. Returns the
/// reduced rows (zero rows dropped).
fn hermite(mut a: Rows, cols: usize) -> Rows {
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = a[i][c].div_floor(&a[p][c]);
                    let pr = a[p].clone();
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(p) = (0..a.len()).find(|&i| !a[i][c].is_zero()) {
            out.push(a.remove(p));
        }
    }
    out
}

/// Invariant factors (nonzero, sorted by divisibility) of an integer matrix.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (mut rows, mut cols) = (rows_of(m), m.cols());
    loop {
        rows = hermite(rows, cols);
        let diagonal = rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        if diagonal {
            break;
        }
        let t = transpose(&rows, cols);
        cols = rows.len();
        rows = t;
    }
    let mut d: Vec<BigInt> = rows.iter().enumerate().map(|(i, r)| r[i].abs()).collect();
    // (a, b) -> (gcd, lcm) until the chain divides
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// `H_n` of an integer complex from invariant factors.
pub fn homology_oracle(c: &GradedComplex, n: i64) -> (usize, Vec<BigInt>) {
    let dn = c.int_diff(n);
    let up = c.int_diff(n + 1);
    let out = invariant_factors(&up);
    let free = c.rank(n) - rank(&dn) - out.len();
    (free, out.into_iter().filter(|d| !d.is_one()).collect())
}

pub fn matches(g: &AbGroup, oracle: &(usize, Vec<BigInt>)) -> bool {
    g.free_rank == oracle.0 && g.torsion == oracle.1
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn group(free: usize, torsion: &[i64]) -> (usize, Vec<BigInt>) {
    (free, ints(torsion))
}

pub fn summary(g: &AbGroup) -> (usize, Vec<BigInt>) {
    (g.free_rank, g.torsion.clone())
}
