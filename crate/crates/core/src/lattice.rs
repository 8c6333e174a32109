//! Integer lattices inside `Z^n`: saturated kernels, spans, membership,
//! integer and `Q/Z` linear solving, and subquotients `L/M` presented as
//! finitely generated abelian groups. Everything here is built on [`snf`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeffs::reduce_mod_one;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::snf::snf;

/// Basis (as columns) of the saturated kernel `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let n = a.cols();
    s.v_inv.submatrix(0, n, s.rank, n)
}

/// Basis (as columns) of the lattice spanned by the columns of `g`.
pub fn span_basis(g: &IntMatrix) -> IntMatrix {
    let s = snf(g);
    let m = g.rows();
    IntMatrix::from_fn(m, s.rank, |i, j| &s.u[(i, j)] * &s.d[(j, j)])
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_int(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let s = snf(a);
    let c = s.u_inv.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v_inv.mul_vec(&y))
}

/// Whether `b` lies in the column span of `g`.
pub fn in_span(g: &IntMatrix, b: &[BigInt]) -> bool {
    solve_int(g, b).is_some()
}

/// A solution of `A x ≡ b (mod Z)` with `x` in `(Q/Z)^n`, entries reduced to
/// `[0,1)`. `Q/Z` is divisible, so only the zero rows of the Smith form
/// constrain solvability.
pub fn solve_angle(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len());
    let s = snf(a);
    let ui = s.u_inv.to_rational();
    let c = ui.mul_vec(b);
    let mut y = vec![BigRational::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            y[i] = reduce_mod_one(&(ci / BigRational::from_integer(s.d[(i, i)].clone())));
        } else if !ci.is_integer() {
            return None;
        }
    }
    let x: Vec<BigRational> = s.v_inv.to_rational().mul_vec(&y).iter().map(reduce_mod_one).collect();
    debug_assert!(a.to_rational().mul_vec(&x).iter().zip(b).all(|(l, r)| (l - r).is_integer()));
    Some(x)
}

/// `{x : A x ∈ span(R)}` as a basis of columns.
pub fn preimage(a: &IntMatrix, r: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), r.rows());
    let n = a.cols();
    let stacked = a.hstack(&r.neg()).expect("row counts agree");
    let k = kernel_basis(&stacked);
    span_basis(&k.submatrix(0, n, 0, k.cols()))
}

/// Whether the column spans of `a` and `b` coincide.
pub fn same_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.columns().iter().all(|c| in_span(b, c)) && b.columns().iter().all(|c| in_span(a, c))
}

/// The smallest saturated lattice containing the columns of `g`.
pub fn saturate(g: &IntMatrix) -> IntMatrix {
    let ann = kernel_basis(&g.transpose());
    kernel_basis(&ann.transpose())
}

fn lcm_of_denominators<'a>(qs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    qs.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// `D·m` for the least positive `D` making every entry an integer.
pub fn clear_denominators(m: &RatMatrix) -> IntMatrix {
    let d = BigRational::from_integer(lcm_of_denominators(m.entries().iter()));
    m.map(|q| (q * &d).to_integer())
}

/// `(D·v, D)` for the least positive `D` making `D·v` integral.
pub fn clear_vector(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let d = lcm_of_denominators(v.iter());
    let dq = BigRational::from_integer(d.clone());
    (v.iter().map(|q| (q * &dq).to_integer()).collect(), d)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in 0..m.cols() {
            let x = &m[(r, j)] * &inv;
            m[(r, j)] = x;
        }
        for i in 0..m.rows() {
            if i != r && !m[(i, c)].is_zero() {
                let k = -m[(i, c)].clone();
                m.add_row_multiple(i, r, &k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(m: &RatMatrix) -> usize {
    rref(&mut m.clone()).len()
}

/// A rational solution of `A x = b`, if one exists.
pub fn solve_rat(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len());
    let col = RatMatrix::from_columns(b.len(), &[b.to_vec()]);
    let mut aug = a.hstack(&col).expect("row counts agree");
    let pivots = rref(&mut aug);
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    Some(x)
}

/// `L/M` for lattices `M ⊆ L ⊆ Z^n`, with `L` given by a basis and `M` by
/// generators. Summands are ordered as in the Smith form of `M` written in
/// `L`-coordinates: trivial summands first, then torsion by divisibility, then
/// free ones.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: usize,
    /// Columns: basis of `L` adapted to `M`.
    adapted: IntMatrix,
    /// Maps `L`-coordinates to adapted coordinates.
    to_adapted: IntMatrix,
    lattice: IntMatrix,
    /// Order of each adapted summand (`0` for free).
    orders: Vec<BigInt>,
}

impl Subquotient {
    pub fn new(lattice: &IntMatrix, relations: &IntMatrix) -> Self {
        let k = lattice.cols();
        let coords: Vec<Vec<BigInt>> = relations
            .columns()
            .iter()
            .map(|c| solve_int(lattice, c).expect("relations must lie in the lattice"))
            .collect();
        let cm = IntMatrix::from_columns(k, &coords);
        let s = snf(&cm);
        let orders: Vec<BigInt> = (0..k)
            .map(|i| if i < s.rank { s.d[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let mut adapted = lattice.try_mul(&s.u).expect("shapes agree");
        let mut to_adapted = s.u_inv;
        // free generators are only defined up to sign: make the first nonzero entry positive
        for (j, d) in orders.iter().enumerate() {
            if d.is_zero() && adapted.column(j).iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                adapted.negate_col(j);
                to_adapted.negate_row(j);
            }
        }
        Subquotient { ambient: lattice.rows(), adapted, to_adapted, lattice: lattice.clone(), orders }
    }

    fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.orders.len()).filter(|&i| !self.orders[i].is_one())
    }

    /// Orders of the generators: `d ≥ 2` for torsion, `0` for free.
    pub fn orders(&self) -> Vec<BigInt> {
        self.nontrivial().map(|i| self.orders[i].clone()).collect()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.orders().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|d| d.is_zero()).count()
    }

    pub fn num_generators(&self) -> usize {
        self.nontrivial().count()
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.nontrivial().map(|i| self.adapted.column(i)).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The relation lattice of the presentation in generator coordinates:
    /// `diag(orders)` restricted to torsion summands.
    pub fn relation_matrix(&self) -> IntMatrix {
        let orders = self.orders();
        let g = orders.len();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); g];
                c[i] = d.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(g, &cols)
    }

    /// Coordinates of `z ∈ L` in the generator basis, torsion coordinates
    /// reduced into `[0, d)`. `None` when `z ∉ L`.
    pub fn coords(&self, z: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = solve_int(&self.lattice, z)?;
        let w = self.to_adapted.mul_vec(&y);
        Some(
            self.nontrivial()
                .map(|i| if self.orders[i].is_zero() { w[i].clone() } else { w[i].mod_floor(&self.orders[i]) })
                .collect(),
        )
    }

    /// Ambient vector representing the given generator coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let gens = self.generators();
        assert_eq!(coords.len(), gens.len());
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, g) in coords.iter().zip(&gens) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }
}
