//! Smith normal form over `Z` with unimodular change-of-basis matrices.
//!
//! Elementary row/column reduction, pivoting on the entry of minimal absolute
//! value. `SnfResult::check` verifies the postconditions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{determinant, IntMatrix};

/// `A = U·D·V` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Checks `A = U·D·V`, unimodularity, diagonal shape and divisibility.
    pub fn check(&self, a: &IntMatrix) -> Result<(), String> {
        let udv = self.u.try_mul(&self.d).and_then(|x| x.try_mul(&self.v)).map_err(|e| e.to_string())?;
        if &udv != a {
            return Err("A != U·D·V".into());
        }
        if determinant(&self.u).abs() != BigInt::one() || determinant(&self.v).abs() != BigInt::one() {
            return Err("U or V is not unimodular".into());
        }
        if self.u.try_mul(&self.u_inv).ok() != Some(IntMatrix::identity(self.u.rows()))
            || self.v.try_mul(&self.v_inv).ok() != Some(IntMatrix::identity(self.v.rows()))
        {
            return Err("stored inverses are wrong".into());
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d[(i, j)].is_zero() {
                    return Err("D is not diagonal".into());
                }
            }
        }
        let diag: Vec<BigInt> = (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect();
        for (i, x) in diag.iter().enumerate() {
            if i < self.rank {
                if !x.is_positive() {
                    return Err("nonzero divisors must be positive and come first".into());
                }
                if i + 1 < self.rank && !diag[i + 1].is_multiple_of(x) {
                    return Err("divisibility chain broken".into());
                }
            } else if !x.is_zero() {
                return Err("nonzero entry past the rank".into());
            }
        }
        Ok(())
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    // row[dst] += k·row[src] applied to the working matrix
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u_inv.add_row_multiple(dst, src, k);
        self.u.add_col_multiple(src, dst, &-k.clone());
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v_inv.add_col_multiple(dst, src, k);
        self.v.add_row_multiple(src, dst, &-k.clone());
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u_inv.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v_inv.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|(_, _, b)| &x < b) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((i, j)) = self.min_entry(t) else {
            return false;
        };
        self.row_swap(t, i);
        self.col_swap(t, j);
        loop {
            let p = self.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..self.a.rows() {
                if !self.a[(i, t)].is_zero() {
                    let q = self.a[(i, t)].div_floor(&p);
                    self.row_add(i, t, &-q);
                    clean &= self.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..self.a.cols() {
                if !self.a[(t, j)].is_zero() {
                    let q = self.a[(t, j)].div_floor(&p);
                    self.col_add(j, t, &-q);
                    clean &= self.a[(t, j)].is_zero();
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived; pivot on it
                let (i, j) = self.min_entry_in_cross(t);
                self.row_swap(t, i);
                self.col_swap(t, j);
                continue;
            }
            let bad = (t + 1..self.a.rows())
                .flat_map(|i| (t + 1..self.a.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !self.a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => self.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.row_negate(t);
        }
        true
    }

    fn min_entry_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a[(t, t)].abs());
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && x < best.2 {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }
}

pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = a.shape();
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    while rank < m.min(n) && r.reduce_at(rank) {
        rank += 1;
    }
    let result = SnfResult { u: r.u, d: r.a, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv, rank };
    result
}
