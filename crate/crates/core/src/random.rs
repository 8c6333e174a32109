//! Seeded random instances for property sweeps: small integer matrices,
//! chain complexes, chain maps (general, injective, surjective), homotopies,
//! simplicial complexes and relative cocycles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cech::{CoverMap, RelCechCochain};
use crate::chain::{ComplexMap, GradedComplex, Homotopy};
use crate::coeffs::CoeffRing;
use crate::geo::{representative, CocycleKind, RelCocycle};
use crate::homology::Class;
use crate::lattice::kernel_basis;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::simplicial::SimplicialComplex;

pub const BOUND: i64 = 3;

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

fn within(m: &IntMatrix, bound: i64) -> bool {
    let b = BigInt::from(bound);
    m.entries().iter().all(|x| x.abs() <= b)
}

/// An integer complex concentrated in degrees `0..ranks.len()`, kept as raw
/// matrices while it is being scrambled. `diffs[n]` is `∂_n` for `n ≥ 1`.
#[derive(Debug, Clone)]
struct Raw {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl Raw {
    /// Elementary summands: a free `Z` in one degree, or `Z --k--> Z` across
    /// two adjacent degrees with `k ∈ {1, 2, 3}`.
    fn elementary<R: Rng>(rng: &mut R, top: usize, max_rank: usize) -> Raw {
        let mut ranks = vec![0usize; top + 1];
        let mut arrows: Vec<(usize, usize, usize, i64)> = Vec::new();
        for _ in 0..rng.gen_range(1..=2 * max_rank) {
            if rng.gen_bool(0.4) || top == 0 {
                let n = rng.gen_range(0..=top);
                if ranks[n] < max_rank {
                    ranks[n] += 1;
                }
            } else {
                let n = rng.gen_range(1..=top);
                if ranks[n] < max_rank && ranks[n - 1] < max_rank {
                    arrows.push((n, ranks[n], ranks[n - 1], rng.gen_range(1..=BOUND)));
                    ranks[n] += 1;
                    ranks[n - 1] += 1;
                }
            }
        }
        let diffs = (0..=top)
            .map(|n| {
                if n == 0 {
                    return IntMatrix::zeros(0, ranks[0]);
                }
                IntMatrix::from_fn(ranks[n - 1], ranks[n], |i, j| {
                    arrows
                        .iter()
                        .find(|a| a.0 == n && a.1 == j && a.2 == i)
                        .map_or_else(BigInt::zero, |a| BigInt::from(a.3))
                })
            })
            .collect();
        Raw { ranks, diffs }
    }

    fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Applies `P = I + c·e_i e_jᵀ` as a change of basis in degree `n`:
    /// rows of `∂_{n+1}` and columns of `∂_n` change, as do maps into or out
    /// of this degree. Rejected (and undone) if an entry leaves the bound.
    fn scramble_once<R: Rng>(&mut self, rng: &mut R, into: &mut [&mut Vec<IntMatrix>], out: &mut [&mut Vec<IntMatrix>]) {
        let n = rng.gen_range(0..=self.top());
        if self.ranks[n] < 2 {
            return;
        }
        let i = rng.gen_range(0..self.ranks[n]);
        let j = (i + rng.gen_range(1..self.ranks[n])) % self.ranks[n];
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        let saved = (self.diffs.clone(), into.iter().map(|v| v[n].clone()).collect::<Vec<_>>(), out.iter().map(|v| v[n].clone()).collect::<Vec<_>>());
        if n < self.top() {
            self.diffs[n + 1].add_row_multiple(i, j, &c);
        }
        if n >= 1 {
            self.diffs[n].add_col_multiple(j, i, &-&c);
        }
        for v in into.iter_mut() {
            v[n].add_row_multiple(i, j, &c);
        }
        for v in out.iter_mut() {
            v[n].add_col_multiple(j, i, &-&c);
        }
        let ok = self.diffs.iter().all(|m| within(m, BOUND))
            && into.iter().all(|v| within(&v[n], BOUND))
            && out.iter().all(|v| within(&v[n], BOUND));
        if !ok {
            self.diffs = saved.0;
            for (v, m) in into.iter_mut().zip(saved.1) {
                v[n] = m;
            }
            for (v, m) in out.iter_mut().zip(saved.2) {
                v[n] = m;
            }
        }
    }

    fn graded(&self) -> GradedComplex {
        let ranks = self.ranks.iter().enumerate().map(|(n, &r)| (n as i64, r)).collect();
        let diffs = (1..=self.top()).map(|n| (n as i64, self.diffs[n].to_rational())).collect();
        GradedComplex::new(CoeffRing::Int, ranks, diffs).expect("elementary ops preserve ∂² = 0")
    }

    fn direct_sum(&self, other: &Raw) -> Raw {
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let diffs = self
            .diffs
            .iter()
            .zip(&other.diffs)
            .map(|(a, b)| {
                let za = IntMatrix::zeros(a.rows(), b.cols());
                let zb = IntMatrix::zeros(b.rows(), a.cols());
                IntMatrix::block(&[vec![a, &za], vec![&zb, b]]).expect("block shapes")
            })
            .collect();
        Raw { ranks, diffs }
    }
}

fn raw<R: Rng>(rng: &mut R, max_rank: usize) -> Raw {
    let mut r = Raw::elementary(rng, 3, max_rank);
    for _ in 0..12 {
        r.scramble_once(rng, &mut [], &mut []);
    }
    r
}

/// A random integer complex in degrees `0..=3` with ranks at most
/// `max_rank` and entries in `[−3, 3]`.
pub fn complex<R: Rng>(rng: &mut R, max_rank: usize) -> GradedComplex {
    raw(rng, max_rank).graded()
}

/// A random chain map `x → y`: a small combination of an integral basis of
/// the space of chain maps, rejected when an entry leaves `[−3, 3]`. Falls
/// back to a single small basis element, then to zero.
pub fn chain_map<R: Rng>(rng: &mut R, x: &GradedComplex, y: &GradedComplex) -> ComplexMap {
    let degrees: Vec<i64> = x.degrees().into_iter().filter(|&n| y.rank(n) > 0).collect();
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for &n in &degrees {
        offsets.insert(n, total);
        total += y.rank(n) * x.rank(n);
    }
    let var = |n: i64, i: usize, j: usize| offsets[&n] + i * x.rank(n) + j;
    // ∂^Y_n f_n − f_{n−1} ∂^X_n = 0, entrywise
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for n in x.degrees().into_iter().chain(y.degrees()) {
        let (dy, dx) = (y.int_diff(n), x.int_diff(n));
        for i in 0..y.rank(n - 1) {
            for j in 0..x.rank(n) {
                let mut row = vec![BigInt::zero(); total];
                if offsets.contains_key(&n) {
                    for k in 0..y.rank(n) {
                        row[var(n, k, j)] += &dy[(i, k)];
                    }
                }
                if offsets.contains_key(&(n - 1)) {
                    for k in 0..x.rank(n - 1) {
                        row[var(n - 1, i, k)] -= &dx[(k, j)];
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows.sort();
    rows.dedup();
    let system = IntMatrix::from_fn(rows.len(), total, |i, j| rows[i][j].clone());
    let basis = kernel_basis(&system).columns();
    let build = |v: &[BigInt]| -> Option<ComplexMap> {
        if v.iter().any(|e| e.abs() > BigInt::from(BOUND)) {
            return None;
        }
        let mats = degrees
            .iter()
            .map(|&n| (n, IntMatrix::from_fn(y.rank(n), x.rank(n), |i, j| v[var(n, i, j)].clone()).to_rational()))
            .collect();
        ComplexMap::new(x.clone(), y.clone(), mats).ok()
    };
    if !basis.is_empty() {
        for _ in 0..40 {
            let mut v = vec![BigInt::zero(); total];
            for b in &basis {
                let c = BigInt::from(rng.gen_range(-1..=1));
                for (e, x) in v.iter_mut().zip(b) {
                    *e += &c * x;
                }
            }
            if v.iter().any(|e| !e.is_zero()) {
                if let Some(f) = build(&v) {
                    return f;
                }
            }
        }
        let mut shuffled = basis.clone();
        shuffled.shuffle(rng);
        if let Some(f) = shuffled.iter().find_map(|b| build(b)) {
            return f;
        }
    }
    x.zero_map_to(y)
}

/// A random complex with a random chain map into it.
pub fn map_instance<R: Rng>(rng: &mut R, max_rank: usize) -> ComplexMap {
    let x = complex(rng, max_rank);
    let y = complex(rng, max_rank);
    chain_map(rng, &x, &y)
}

fn inclusion(small: &Raw, big_ranks: &[usize]) -> Vec<IntMatrix> {
    small
        .ranks
        .iter()
        .zip(big_ranks)
        .map(|(&a, &b)| IntMatrix::from_fn(b, a, |i, j| BigInt::from((i == j) as i64)))
        .collect()
}

/// A degreewise injective chain map `X → X ⊕ Z`, scrambled on the target.
pub fn injective_map<R: Rng>(rng: &mut R, max_rank: usize) -> ComplexMap {
    let half = (max_rank / 2).max(1);
    let x = raw(rng, half);
    let mut y = x.direct_sum(&raw(rng, half));
    let mut f = inclusion(&x, &y.ranks);
    for _ in 0..12 {
        y.scramble_once(rng, &mut [&mut f], &mut []);
    }
    let mats = f.iter().enumerate().map(|(n, m)| (n as i64, m.to_rational())).collect();
    ComplexMap::new(x.graded(), y.graded(), mats).expect("inclusion of a summand")
}

/// A degreewise surjective chain map `Y ⊕ K → Y`, scrambled on the source.
pub fn surjective_map<R: Rng>(rng: &mut R, max_rank: usize) -> ComplexMap {
    let half = (max_rank / 2).max(1);
    let y = raw(rng, half);
    let mut x = y.direct_sum(&raw(rng, half));
    let mut f: Vec<IntMatrix> = inclusion(&y, &x.ranks).iter().map(IntMatrix::transpose).collect();
    for _ in 0..12 {
        x.scramble_once(rng, &mut [], &mut [&mut f]);
    }
    let mats = f.iter().enumerate().map(|(n, m)| (n as i64, m.to_rational())).collect();
    ComplexMap::new(x.graded(), y.graded(), mats).expect("projection onto a summand")
}

/// `f = g + h∂ + ∂h` for a random map `g` and random `h` with small entries.
pub fn homotopy<R: Rng>(rng: &mut R, max_rank: usize) -> Homotopy {
    let g = map_instance(rng, max_rank);
    let (x, y) = (g.src(), g.dst());
    let h: BTreeMap<i64, RatMatrix> =
        x.degrees().into_iter().map(|n| (n, matrix(rng, y.rank(n + 1), x.rank(n), 1).to_rational())).collect();
    Homotopy::from_operator(g, h).expect("h∂ + ∂h + g is a chain map")
}

/// A random simplicial complex on `n` vertices with a few facets of
/// dimension at most `dim`.
pub fn simplicial_complex<R: Rng>(rng: &mut R, n: usize, dim: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=n + 2))
        .map(|_| {
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(rng.gen_range(1..=(dim + 1).min(n)));
            vs.sort();
            vs
        })
        .collect();
    SimplicialComplex::from_facets((0..n).map(|i| format!("p{i}")).collect(), &facets).expect("random facets")
}

/// A random rational vector with values `k/den`, `|k| ≤ den·bound`.
pub fn rational_vector<R: Rng>(rng: &mut R, len: usize, den: i64, bound: i64) -> Vec<BigRational> {
    (0..len).map(|_| BigRational::new(rng.gen_range(-den * bound..=den * bound).into(), den.into())).collect()
}

/// A random valid cocycle: the representative of a random torsion class plus
/// the coboundary of a random lower cochain.
pub fn cocycle<R: Rng>(rng: &mut R, kind: CocycleKind, map: &CoverMap, allow_free: bool) -> RelCocycle {
    let group = crate::cech::relative_cohomology(map, &CoeffRing::Int, kind.class_degree()).expect("cohomology");
    let orders = group.orders();
    let coords = orders
        .iter()
        .map(|d| {
            if d.is_zero() {
                BigInt::from(if allow_free { rng.gen_range(-2..=2) } else { 0 })
            } else {
                BigInt::from(rng.gen_range(0..=5)) % d
            }
        })
        .collect();
    let base = representative(kind, map, &Class::new(orders, coords)).expect("realizable class");
    let n = kind.degree();
    let ring = kind.ring();
    let len = map.src().count(n - 2) + map.dst().count(n - 1);
    let den = if ring == CoeffRing::Int { 1 } else { 6 };
    let lower = RelCechCochain::from_vector(map, n - 1, &ring, &rational_vector(rng, len, den, 2)).expect("shape");
    let data = base.data().add(&crate::cech::relative_diff(&lower)).expect("same map");
    RelCocycle::new(kind, data).expect("kind matches")
}
