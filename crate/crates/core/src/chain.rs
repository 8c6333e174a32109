//! Graded complexes, chain maps, algebraic mapping cones, homotopies, duals
//! and the Kronecker pairing between a cone and the cone of the dual map.
//!
//! Everything is stored in chain orientation: the differential in degree `n`
//! is a `rank(n-1) × rank(n)` matrix. A cochain complex `X^•` is stored as the
//! chain complex `X̃_n = X^{-n}` with `∂_n = d^{-n}` and viewed through
//! [`CochainComplex`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::{CoeffRing, Scalar};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use serde_json::{json, Map, Value};

/// Whether `m` vanishes as a matrix over `ring`.
pub fn vanishes_over(ring: &CoeffRing, m: &RatMatrix) -> bool {
    match ring {
        CoeffRing::IntMod(n) => {
            let n = BigInt::from(*n);
            m.entries().iter().all(|q| q.is_integer() && q.to_integer().is_multiple_of(&n))
        }
        _ => m.is_zero(),
    }
}

fn normalize_entries(ring: &CoeffRing, m: RatMatrix) -> Result<RatMatrix> {
    match ring {
        CoeffRing::Rat => Ok(m),
        CoeffRing::IntMod(n) => {
            if !m.entries().iter().all(|q| q.is_integer()) {
                return Err(Error::Parse(format!("non-integer differential entry over {ring}")));
            }
            let n = BigInt::from(*n);
            Ok(m.map(|q| BigRational::from_integer(q.to_integer().mod_floor(&n))))
        }
        CoeffRing::Int | CoeffRing::AngleQ => {
            if !m.entries().iter().all(|q| q.is_integer()) {
                return Err(Error::Parse(format!("non-integer differential entry over {ring}")));
            }
            Ok(m)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedComplex {
    ring: CoeffRing,
    ranks: BTreeMap<i64, usize>,
    diff: BTreeMap<i64, RatMatrix>,
}

impl GradedComplex {
    /// Validates shapes, ring membership of entries and `∂∘∂ = 0`.
    pub fn new(ring: CoeffRing, ranks: BTreeMap<i64, usize>, diff: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in diff {
            if m.shape() != (rank(n - 1), rank(n)) {
                return Err(Error::ShapeMismatch(format!(
                    "differential at degree {n} is {:?}, expected {:?}",
                    m.shape(),
                    (rank(n - 1), rank(n))
                )));
            }
            let m = normalize_entries(&ring, m)?;
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                kept.insert(n, m);
            }
        }
        let c = GradedComplex { ring, ranks, diff: kept };
        for (&n, m) in &c.diff {
            let below = c.diff(n - 1);
            if !vanishes_over(&c.ring, &below.try_mul(m)?) {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(c)
    }

    pub fn zero(ring: CoeffRing) -> Self {
        GradedComplex { ring, ranks: BTreeMap::new(), diff: BTreeMap::new() }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn with_ring(&self, ring: CoeffRing) -> Result<Self> {
        GradedComplex::new(ring, self.ranks.clone(), self.diff.clone())
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// `∂_n : C_n → C_{n-1}`; a zero matrix of the right shape when not stored.
    pub fn diff(&self, n: i64) -> RatMatrix {
        self.diff.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(self.rank(n - 1), self.rank(n)))
    }

    /// The differential as an integer matrix. Only meaningful for integral rings.
    pub fn int_diff(&self, n: i64) -> IntMatrix {
        self.diff(n).to_integer().expect("integral ring has integer differentials")
    }

    /// Lowest and highest degree of nonzero rank.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Degrees where homology can be nonzero.
    pub fn degrees(&self) -> Vec<i64> {
        match self.support() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    /// Shifts every degree by `k`: `C'_n = C_{n-k}`.
    pub fn shift(&self, k: i64) -> Self {
        GradedComplex {
            ring: self.ring.clone(),
            ranks: self.ranks.iter().map(|(&n, &r)| (n + k, r)).collect(),
            diff: self.diff.iter().map(|(&n, m)| (n + k, m.clone())).collect(),
        }
    }

    pub fn identity_map(&self) -> ComplexMap {
        let mats = self.ranks.iter().map(|(&n, &r)| (n, RatMatrix::identity(r))).collect();
        ComplexMap { src: self.clone(), dst: self.clone(), mats }
    }

    pub fn zero_map_to(&self, dst: &GradedComplex) -> ComplexMap {
        ComplexMap { src: self.clone(), dst: dst.clone(), mats: BTreeMap::new() }
    }
}

fn degree_span(a: &GradedComplex, b: &GradedComplex) -> Option<(i64, i64)> {
    match (a.support(), b.support()) {
        (None, None) => None,
        (Some(s), None) | (None, Some(s)) => Some(s),
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
    }
}

/// A degree-preserving map of complexes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMap {
    src: GradedComplex,
    dst: GradedComplex,
    mats: BTreeMap<i64, RatMatrix>,
}

impl ComplexMap {
    /// Validates shapes and the chain-map condition `∂f = f∂`.
    pub fn new(src: GradedComplex, dst: GradedComplex, mats: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        if src.ring != dst.ring {
            return Err(Error::RingMismatch(src.ring.to_string(), dst.ring.to_string()));
        }
        let mut kept = BTreeMap::new();
        for (n, m) in mats {
            if m.shape() != (dst.rank(n), src.rank(n)) {
                return Err(Error::ShapeMismatch(format!(
                    "map at degree {n} is {:?}, expected {:?}",
                    m.shape(),
                    (dst.rank(n), src.rank(n))
                )));
            }
            let m = normalize_entries(&src.ring, m)?;
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                kept.insert(n, m);
            }
        }
        let f = ComplexMap { src, dst, mats: kept };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let Some((lo, hi)) = degree_span(&self.src, &self.dst) else {
            return Ok(());
        };
        for n in lo..=hi + 1 {
            let left = self.dst.diff(n).try_mul(&self.mat(n))?;
            let right = self.mat(n - 1).try_mul(&self.src.diff(n))?;
            if !vanishes_over(&self.src.ring, &left.try_sub(&right)?) {
                return Err(Error::InvalidChainMap(n));
            }
        }
        Ok(())
    }

    pub fn src(&self) -> &GradedComplex {
        &self.src
    }

    pub fn dst(&self) -> &GradedComplex {
        &self.dst
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.src.ring
    }

    pub fn mat(&self, n: i64) -> RatMatrix {
        self.mats.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(self.dst.rank(n), self.src.rank(n)))
    }

    pub fn int_mat(&self, n: i64) -> IntMatrix {
        self.mat(n).to_integer().expect("integral ring has integer maps")
    }

    pub fn degrees(&self) -> Vec<i64> {
        match degree_span(&self.src, &self.dst) {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    /// `g ∘ self`
    pub fn then(&self, g: &ComplexMap) -> Result<ComplexMap> {
        if g.src != self.dst {
            return Err(Error::ShapeMismatch("composition of maps with mismatched complexes".into()));
        }
        let mats = self.degrees().into_iter().map(|n| Ok((n, g.mat(n).try_mul(&self.mat(n))?))).collect::<Result<_>>()?;
        ComplexMap::new(self.src.clone(), g.dst.clone(), mats)
    }

    pub fn add(&self, g: &ComplexMap) -> Result<ComplexMap> {
        if g.src != self.src || g.dst != self.dst {
            return Err(Error::ShapeMismatch("sum of maps with mismatched complexes".into()));
        }
        let mats = self.degrees().into_iter().map(|n| Ok((n, self.mat(n).try_add(&g.mat(n))?))).collect::<Result<_>>()?;
        ComplexMap::new(self.src.clone(), self.dst.clone(), mats)
    }

    pub fn mats(&self) -> &BTreeMap<i64, RatMatrix> {
        &self.mats
    }
}

/// `h : X_n → Y_{n+1}` with `h∂ + ∂h = f − g`.
#[derive(Debug, Clone)]
pub struct Homotopy {
    f: ComplexMap,
    g: ComplexMap,
    h: BTreeMap<i64, RatMatrix>,
}

impl Homotopy {
    pub fn new(f: ComplexMap, g: ComplexMap, h: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        if f.src != g.src || f.dst != g.dst {
            return Err(Error::ShapeMismatch("homotopic maps must share source and target".into()));
        }
        for (&n, m) in &h {
            if m.shape() != (f.dst.rank(n + 1), f.src.rank(n)) {
                return Err(Error::ShapeMismatch(format!("homotopy at degree {n} has shape {:?}", m.shape())));
            }
        }
        let hom = Homotopy { f, g, h };
        for n in hom.f.degrees().into_iter().chain(hom.f.degrees().last().map(|d| d + 1)) {
            let lhs = hom.h_at(n - 1).try_mul(&hom.f.src.diff(n))?.try_add(&hom.f.dst.diff(n + 1).try_mul(&hom.h_at(n))?)?;
            let rhs = hom.f.mat(n).try_sub(&hom.g.mat(n))?;
            if !vanishes_over(hom.f.ring(), &lhs.try_sub(&rhs)?) {
                return Err(Error::InvalidHomotopy(n));
            }
        }
        Ok(hom)
    }

    /// Builds `f := g + h∂ + ∂h` from `g` and an arbitrary `h`.
    pub fn from_operator(g: ComplexMap, h: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        let (src, dst) = (g.src.clone(), g.dst.clone());
        let at = |n: i64| h.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(dst.rank(n + 1), src.rank(n)));
        let mut mats = BTreeMap::new();
        for n in g.degrees() {
            let m = g.mat(n).try_add(&at(n - 1).try_mul(&src.diff(n))?)?.try_add(&dst.diff(n + 1).try_mul(&at(n))?)?;
            mats.insert(n, m);
        }
        let f = ComplexMap::new(src, dst, mats)?;
        Homotopy::new(f, g, h)
    }

    pub fn h_at(&self, n: i64) -> RatMatrix {
        self.h.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(self.f.dst.rank(n + 1), self.f.src.rank(n)))
    }

    pub fn f(&self) -> &ComplexMap {
        &self.f
    }

    pub fn g(&self) -> &ComplexMap {
        &self.g
    }
}

/// Element `(θ, η)` of `Cone_n(f) = X_{n-1} ⊕ Y_n`. For a cochain cone the
/// same two slots carry `(α, β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeElement {
    pub degree: i64,
    pub theta: Vec<BigRational>,
    pub eta: Vec<BigRational>,
}

impl ConeElement {
    pub fn zero(degree: i64, first: usize, second: usize) -> Self {
        ConeElement { degree, theta: vec![BigRational::zero(); first], eta: vec![BigRational::zero(); second] }
    }

    pub fn from_vector(degree: i64, first: usize, v: &[BigRational]) -> Self {
        ConeElement { degree, theta: v[..first].to_vec(), eta: v[first..].to_vec() }
    }

    pub fn to_vector(&self) -> Vec<BigRational> {
        self.theta.iter().chain(&self.eta).cloned().collect()
    }
}

/// `Cone_n(f) = X_{n-1} ⊕ Y_n` with `∂(θ,η) = (∂θ, f(θ) − ∂η)`.
pub fn cone_of_map(f: &ComplexMap) -> GradedComplex {
    let (x, y) = (&f.src, &f.dst);
    let mut ranks = BTreeMap::new();
    let mut diff = BTreeMap::new();
    let Some((lo, hi)) = degree_span(x, y) else {
        return GradedComplex::zero(x.ring.clone());
    };
    for n in lo..=hi + 1 {
        ranks.insert(n, x.rank(n - 1) + y.rank(n));
    }
    for n in lo..=hi + 1 {
        let dx = x.diff(n - 1);
        let dy = y.diff(n).neg();
        let fm = f.mat(n - 1);
        let zero = RatMatrix::zeros(x.rank(n - 2), y.rank(n));
        let block = RatMatrix::block(&[vec![&dx, &zero], vec![&fm, &dy]]).expect("cone blocks are consistent");
        diff.insert(n, block);
    }
    GradedComplex::new(x.ring.clone(), ranks, diff).expect("the cone of a chain map is a complex")
}

/// A cochain complex, stored reindexed as the chain complex `X̃_n = X^{-n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CochainComplex {
    inner: GradedComplex,
}

impl CochainComplex {
    pub fn from_reindexed(inner: GradedComplex) -> Self {
        CochainComplex { inner }
    }

    /// Builds a cochain complex from `d^n : X^n → X^{n+1}` matrices.
    pub fn new(ring: CoeffRing, ranks: BTreeMap<i64, usize>, d: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        let ranks = ranks.into_iter().map(|(n, r)| (-n, r)).collect();
        let diff = d.into_iter().map(|(n, m)| (-n, m)).collect();
        Ok(CochainComplex { inner: GradedComplex::new(ring, ranks, diff)? })
    }

    pub fn reindexed(&self) -> &GradedComplex {
        &self.inner
    }

    pub fn ring(&self) -> &CoeffRing {
        self.inner.ring()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.inner.rank(-n)
    }

    /// `d^n : X^n → X^{n+1}`
    pub fn diff(&self, n: i64) -> RatMatrix {
        self.inner.diff(-n)
    }

    pub fn int_diff(&self, n: i64) -> IntMatrix {
        self.inner.int_diff(-n)
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.inner.degrees().into_iter().map(|n| -n).collect();
        d.sort_unstable();
        d
    }

    pub fn with_ring(&self, ring: CoeffRing) -> Result<Self> {
        Ok(CochainComplex { inner: self.inner.with_ring(ring)? })
    }
}

/// A cochain map, stored reindexed like [`CochainComplex`].
#[derive(Debug, Clone, PartialEq)]
pub struct CochainMap {
    inner: ComplexMap,
}

impl CochainMap {
    pub fn from_reindexed(inner: ComplexMap) -> Self {
        CochainMap { inner }
    }

    pub fn new(src: CochainComplex, dst: CochainComplex, mats: BTreeMap<i64, RatMatrix>) -> Result<Self> {
        let mats = mats.into_iter().map(|(n, m)| (-n, m)).collect();
        Ok(CochainMap { inner: ComplexMap::new(src.inner, dst.inner, mats)? })
    }

    pub fn reindexed(&self) -> &ComplexMap {
        &self.inner
    }

    pub fn src(&self) -> CochainComplex {
        CochainComplex { inner: self.inner.src.clone() }
    }

    pub fn dst(&self) -> CochainComplex {
        CochainComplex { inner: self.inner.dst.clone() }
    }

    /// `f^n : X^n → Y^n`
    pub fn mat(&self, n: i64) -> RatMatrix {
        self.inner.mat(-n)
    }
}

/// `Cone^n(f) = Y^{n-1} ⊕ X^n` with `d(α,β) = (f(β) − dα, dβ)`.
///
/// In reindexed form this is `Cone(f̃)` shifted down by one with its two
/// summands swapped: `(θ, η) = (β, α)`; no signs are involved.
pub fn cone_of_cochain_map(f: &CochainMap) -> CochainComplex {
    let (x, y) = (f.src(), f.dst());
    let mut degrees: Vec<i64> = x.degrees().into_iter().chain(y.degrees()).collect();
    degrees.sort_unstable();
    let ring = x.ring().clone();
    let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
        return CochainComplex { inner: GradedComplex::zero(ring) };
    };
    let mut ranks = BTreeMap::new();
    let mut d = BTreeMap::new();
    for n in lo..=hi + 1 {
        ranks.insert(n, y.rank(n - 1) + x.rank(n));
    }
    for n in lo..=hi {
        let dy = y.diff(n - 1).neg();
        let fm = f.mat(n);
        let zero = RatMatrix::zeros(x.rank(n + 1), y.rank(n - 1));
        let dx = x.diff(n);
        let block = RatMatrix::block(&[vec![&dy, &fm], vec![&zero, &dx]]).expect("cone blocks are consistent");
        d.insert(n, block);
    }
    CochainComplex::new(ring, ranks, d).expect("the cone of a cochain map is a complex")
}

/// Dual of a complex stored in either orientation: `D_m = C_{-m}` with
/// `∂^D_m = (∂^C_{1-m})ᵀ`. Applied twice it returns the original exactly.
fn dual_raw(c: &GradedComplex) -> GradedComplex {
    let ranks = c.ranks.iter().map(|(&n, &r)| (-n, r)).collect();
    let diff = c.diff.iter().map(|(&n, m)| (1 - n, m.transpose())).collect();
    GradedComplex::new(c.ring.clone(), ranks, diff).expect("transposes of a complex form a complex")
}

fn check_dual_ring(ring: &CoeffRing) -> Result<()> {
    if !ring.supports_duals() {
        return Err(Error::UnsupportedRing(ring.to_string(), "dual complexes"));
    }
    Ok(())
}

/// `(X')^n = Hom(X_n, R)` with the transposed differential.
pub fn dual_complex(c: &GradedComplex) -> Result<CochainComplex> {
    check_dual_ring(&c.ring)?;
    Ok(CochainComplex { inner: dual_raw(c) })
}

/// The chain complex dual to a cochain complex.
pub fn dual_cochain_complex(c: &CochainComplex) -> Result<GradedComplex> {
    check_dual_ring(c.ring())?;
    Ok(dual_raw(&c.inner))
}

/// `f' : Y' → X'`, transposing each degree.
pub fn dual_map(f: &ComplexMap) -> Result<CochainMap> {
    check_dual_ring(f.ring())?;
    let src = dual_raw(&f.dst);
    let dst = dual_raw(&f.src);
    let mats = f.mats.iter().map(|(&n, m)| (-n, m.transpose())).collect();
    Ok(CochainMap { inner: ComplexMap::new(src, dst, mats)? })
}

/// `⟨(α,β),(θ,η)⟩ = ⟨α,θ⟩ − ⟨β,η⟩` for `(α,β) ∈ Cone^n(f')`, `(θ,η) ∈ Cone_n(f)`.
pub fn kronecker(f: &ComplexMap, x: &ConeElement, y: &ConeElement) -> Result<Scalar> {
    check_dual_ring(f.ring())?;
    if x.degree != y.degree {
        return Err(Error::DegreeMismatch { expected: y.degree, got: x.degree });
    }
    let n = y.degree;
    let (a, b) = (f.src.rank(n - 1), f.dst.rank(n));
    for (name, e) in [("cochain", x), ("chain", y)] {
        if e.theta.len() != a || e.eta.len() != b {
            return Err(Error::ShapeMismatch(format!(
                "{name} element has blocks ({}, {}), expected ({a}, {b})",
                e.theta.len(),
                e.eta.len()
            )));
        }
    }
    let dot = |u: &[BigRational], v: &[BigRational]| u.iter().zip(v).fold(BigRational::zero(), |acc, (p, q)| acc + p * q);
    let value = dot(&x.theta, &y.theta) - dot(&x.eta, &y.eta);
    f.ring().from_rational(&value)
}

/// Per-degree comparison of the cochain cone of the dual map against the
/// transposed chain cone.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    /// Number of nonzero residual entries, keyed by cochain degree `n` (the
    /// differential `Cone^n(f') → Cone^{n+1}(f')`).
    pub residuals: BTreeMap<i64, usize>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.residuals.values().all(|&r| r == 0)
    }
}

/// Sign change `S_n = (−1)^n · diag(I_{X_{n-1}}, −I_{Y_n})` on `Cone_n(f)`.
///
/// The cochain cone differential satisfies `d^n = S_{n+1} · (∂_{n+1})ᵀ · S_n`;
/// equivalently `⟨dx, y⟩ = −⟨x, ∂y⟩` under the Kronecker pairing.
pub fn duality_sign(f: &ComplexMap, n: i64) -> RatMatrix {
    let (a, b) = (f.src.rank(n - 1), f.dst.rank(n));
    let s = if n.rem_euclid(2) == 0 { BigRational::one() } else { -BigRational::one() };
    RatMatrix::from_fn(a + b, a + b, |i, j| {
        if i != j {
            BigRational::zero()
        } else if i < a {
            s.clone()
        } else {
            -s.clone()
        }
    })
}

pub fn verify_cone_duality(f: &ComplexMap) -> Result<DualityReport> {
    let chain = cone_of_map(f);
    let cochain = cone_of_cochain_map(&dual_map(f)?);
    let mut residuals = BTreeMap::new();
    let lo = chain.support().map_or(0, |s| s.0) - 1;
    let hi = chain.support().map_or(0, |s| s.1) + 1;
    for n in lo..=hi {
        let expected = duality_sign(f, n + 1).try_mul(&chain.diff(n + 1).transpose())?.try_mul(&duality_sign(f, n))?;
        let got = cochain.diff(n);
        let r = got.try_sub(&expected)?;
        residuals.insert(n, r.entries().iter().filter(|x| !x.is_zero()).count());
    }
    Ok(DualityReport { residuals })
}

/// `F(α,β) = (α, −h(α) + β)`, an isomorphism `Cone(f) → Cone(g)`.
pub fn homotopy_cone_iso(h: &Homotopy) -> Result<ComplexMap> {
    cone_shear(h, false)
}

/// `F⁻¹(α,β) = (α, h(α) + β)`.
pub fn homotopy_cone_iso_inverse(h: &Homotopy) -> Result<ComplexMap> {
    cone_shear(h, true)
}

fn cone_shear(h: &Homotopy, inverse: bool) -> Result<ComplexMap> {
    let (cf, cg) = (cone_of_map(&h.f), cone_of_map(&h.g));
    let (src, dst) = if inverse { (cg, cf) } else { (cf, cg) };
    let x = h.f.src();
    let y = h.f.dst();
    let mut mats = BTreeMap::new();
    for n in src.degrees() {
        let (a, b) = (x.rank(n - 1), y.rank(n));
        let hm = if inverse { h.h_at(n - 1) } else { h.h_at(n - 1).neg() };
        let ia = RatMatrix::identity(a);
        let ib = RatMatrix::identity(b);
        let z = RatMatrix::zeros(a, b);
        mats.insert(n, RatMatrix::block(&[vec![&ia, &z], vec![&hm, &ib]])?);
    }
    ComplexMap::new(src, dst, mats)
}

fn degree_key(k: &str) -> Result<i64> {
    k.parse().map_err(|_| Error::Parse(format!("degree key {k:?} is not an integer")))
}

fn mats_to_json(mats: &BTreeMap<i64, RatMatrix>) -> Value {
    Value::Object(mats.iter().map(|(n, m)| (n.to_string(), m.to_json())).collect())
}

/// Reads a degree-keyed object of matrices; `shape(n)` pins each shape.
fn mats_from_json(v: Option<&Value>, shape: impl Fn(i64) -> (usize, usize)) -> Result<BTreeMap<i64, RatMatrix>> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected an object keyed by degree".into()))?;
    obj.iter()
        .map(|(k, m)| {
            let n = degree_key(k)?;
            let (r, c) = shape(n);
            Ok((n, RatMatrix::from_json(m, Some(r), Some(c))?))
        })
        .collect()
}

impl GradedComplex {
    /// `{"ring": "Z", "ranks": {"0": 2, ...}, "diff": {"1": [[...]], ...}}`;
    /// `diff[n]` is `∂_n : C_n → C_{n-1}`.
    pub fn to_json(&self) -> Value {
        let ranks: Map<String, Value> = self.ranks.iter().map(|(n, r)| (n.to_string(), json!(r))).collect();
        json!({"ring": self.ring.to_string(), "ranks": ranks, "diff": mats_to_json(&self.diff)})
    }

    /// `ring` overrides the ring recorded in the document, which defaults to `Z`.
    pub fn from_json(v: &Value, ring: Option<&CoeffRing>) -> Result<Self> {
        let ring = match (ring, v.get("ring").and_then(Value::as_str)) {
            (Some(r), _) => r.clone(),
            (None, Some(s)) => s.parse()?,
            (None, None) => CoeffRing::Int,
        };
        let ranks: BTreeMap<i64, usize> = v
            .get("ranks")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("complex needs a \"ranks\" object".into()))?
            .iter()
            .map(|(k, r)| {
                let r = r.as_u64().ok_or_else(|| Error::Parse(format!("rank {r} is not a natural number")))?;
                Ok((degree_key(k)?, r as usize))
            })
            .collect::<Result<_>>()?;
        let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let diff = mats_from_json(v.get("diff"), |n| (rank(n - 1), rank(n)))?;
        GradedComplex::new(ring, ranks, diff)
    }
}

impl ComplexMap {
    /// `{"src": complex, "dst": complex, "f": {"n": [[...]]}}`.
    pub fn to_json(&self) -> Value {
        json!({"src": self.src.to_json(), "dst": self.dst.to_json(), "f": mats_to_json(&self.mats)})
    }

    pub fn from_json(v: &Value, ring: Option<&CoeffRing>) -> Result<Self> {
        let part = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("chain map needs \"{k}\"")));
        let src = GradedComplex::from_json(part("src")?, ring)?;
        let dst = GradedComplex::from_json(part("dst")?, ring)?;
        let mats = mats_from_json(v.get("f"), |n| (dst.rank(n), src.rank(n)))?;
        ComplexMap::new(src, dst, mats)
    }
}

impl Homotopy {
    /// `{"f": map, "g": map, "h": {"n": [[...]]}}` with `h_n : X_n → Y_{n+1}`.
    pub fn to_json(&self) -> Value {
        json!({"f": self.f.to_json(), "g": self.g.to_json(), "h": mats_to_json(&self.h)})
    }

    pub fn from_json(v: &Value, ring: Option<&CoeffRing>) -> Result<Self> {
        let part = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("homotopy needs \"{k}\"")));
        let f = ComplexMap::from_json(part("f")?, ring)?;
        let g = ComplexMap::from_json(part("g")?, ring)?;
        let h = mats_from_json(v.get("h"), |n| (f.dst.rank(n + 1), f.src.rank(n)))?;
        Homotopy::new(f, g, h)
    }
}

/// Convenience: the integer complex with the given ranks and differentials.
pub fn int_complex(ranks: &[(i64, usize)], diffs: Vec<(i64, IntMatrix)>) -> Result<GradedComplex> {
    GradedComplex::new(
        CoeffRing::Int,
        ranks.iter().copied().collect(),
        diffs.into_iter().map(|(n, m)| (n, m.to_rational())).collect(),
    )
}

pub fn int_map(src: &GradedComplex, dst: &GradedComplex, mats: Vec<(i64, IntMatrix)>) -> Result<ComplexMap> {
    ComplexMap::new(src.clone(), dst.clone(), mats.into_iter().map(|(n, m)| (n, m.to_rational())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> GradedComplex {
        int_complex(&[(0, 1), (1, 1)], vec![]).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let x = int_complex(&[(0, 2), (1, 1)], vec![(1, IntMatrix::from_i64(&[&[1], &[-1]]))]).unwrap();
        assert_eq!(GradedComplex::from_json(&x.to_json(), None).unwrap(), x);
        let f = x.identity_map();
        assert_eq!(ComplexMap::from_json(&f.to_json(), None).unwrap(), f);
        let h = Homotopy::from_operator(f, BTreeMap::from([(0, RatMatrix::from_i64(&[&[1, 0]]))])).unwrap();
        let back = Homotopy::from_json(&h.to_json(), None).unwrap();
        assert_eq!((back.f(), back.g()), (h.f(), h.g()));
    }

    #[test]
    fn rejects_non_complex() {
        let r = int_complex(
            &[(0, 1), (1, 1), (2, 1)],
            vec![(1, IntMatrix::from_i64(&[&[1]])), (2, IntMatrix::from_i64(&[&[1]]))],
        );
        assert_eq!(r, Err(Error::NotAComplex(2)));
    }

    #[test]
    fn rejects_non_chain_map() {
        let x = int_complex(&[(0, 1), (1, 1)], vec![(1, IntMatrix::from_i64(&[&[2]]))]).unwrap();
        let r = int_map(&x, &x, vec![(0, IntMatrix::from_i64(&[&[1]]))]);
        assert_eq!(r, Err(Error::InvalidChainMap(1)));
    }

    #[test]
    fn cone_shape_and_square_zero() {
        let c = circle();
        let cone = cone_of_map(&c.identity_map());
        assert_eq!(cone.rank(0), 1);
        assert_eq!(cone.rank(1), 2);
        assert_eq!(cone.rank(2), 1);
        assert_eq!(cone.diff(1), RatMatrix::from_i64(&[&[1, 0]]));
        assert_eq!(cone.diff(2), RatMatrix::from_i64(&[&[0], &[1]]));
    }

    #[test]
    fn cochain_cone_is_swapped_shift_of_chain_cone() {
        let x = int_complex(&[(0, 2), (1, 1)], vec![(1, IntMatrix::from_i64(&[&[1], &[-1]]))]).unwrap();
        let y = int_complex(&[(0, 1), (1, 1)], vec![]).unwrap();
        let f = int_map(&x, &y, vec![(0, IntMatrix::from_i64(&[&[1, 1]])), (1, IntMatrix::from_i64(&[&[3]]))]).unwrap();
        let cf = CochainMap::from_reindexed(f.clone());
        let co = cone_of_cochain_map(&cf);
        let ch = cone_of_map(&f);
        // Cone~(f)_m ≅ Cone(f~)_{m+1} by swapping summands
        for m in -3..=3 {
            let swap = |deg: i64| {
                let (a, b) = (x.rank(deg - 1), y.rank(deg));
                RatMatrix::from_fn(a + b, a + b, |i, j| {
                    let src = if i < b { a + i } else { i - b };
                    if j == src { BigRational::one() } else { BigRational::zero() }
                })
            };
            assert_eq!(co.reindexed().rank(m), ch.rank(m + 1));
            let expected = swap(m).try_mul(&ch.diff(m + 1)).unwrap().try_mul(&swap(m + 1).transpose()).unwrap();
            assert_eq!(co.reindexed().diff(m), expected, "degree {m}");
        }
    }

    #[test]
    fn dual_twice_is_identity() {
        let x = int_complex(&[(0, 2), (1, 3)], vec![(1, IntMatrix::from_i64(&[&[1, 0, 2], &[-1, 0, -2]]))]).unwrap();
        let d = dual_complex(&x).unwrap();
        assert_eq!(d.rank(1), 3);
        assert_eq!(d.diff(0), x.diff(1).transpose());
        assert_eq!(dual_cochain_complex(&d).unwrap(), x);
    }

    #[test]
    fn duals_need_int_or_rat() {
        let x = circle().with_ring(CoeffRing::IntMod(3)).unwrap();
        assert!(matches!(dual_complex(&x), Err(Error::UnsupportedRing(..))));
    }

    #[test]
    fn zero_homotopy_gives_identity() {
        let c = circle();
        let id = c.identity_map();
        let h = Homotopy::new(id.clone(), id.clone(), BTreeMap::new()).unwrap();
        let f = homotopy_cone_iso(&h).unwrap();
        assert_eq!(f, cone_of_map(&id).identity_map());
    }

    #[test]
    fn kronecker_checks_degrees_and_shapes() {
        let f = circle().identity_map();
        let x = ConeElement::zero(1, 1, 1);
        let y = ConeElement::zero(2, 1, 0);
        assert!(matches!(kronecker(&f, &x, &y), Err(Error::DegreeMismatch { .. })));
        let y = ConeElement::zero(1, 2, 1);
        assert!(matches!(kronecker(&f, &x, &y), Err(Error::ShapeMismatch(_))));
        let y = ConeElement::zero(1, 1, 1);
        assert!(kronecker(&f, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn kronecker_sign() {
        let f = circle().identity_map();
        let one = BigRational::one();
        let x = ConeElement { degree: 1, theta: vec![one.clone()], eta: vec![one.clone()] };
        let y = ConeElement { degree: 1, theta: vec![one.clone() + one.clone()], eta: vec![one] };
        assert_eq!(kronecker(&f, &x, &y).unwrap(), Scalar::int(1));
    }

    #[test]
    fn identity_duality() {
        let r = verify_cone_duality(&circle().identity_map()).unwrap();
        assert!(r.ok());
    }
}
