//! Homology via Smith normal form: presented groups, induced maps, the
//! connecting homomorphism of a cone, the long exact sequences of a chain map,
//! quasi-isomorphism tests and the five-lemma transfer to cones.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::backend::BackendRegistry;
use crate::chain::{cone_of_map, ComplexMap, GradedComplex};
use crate::coeffs::{int_to_json, rational_to_json, CoeffRing};
use crate::error::{Error, Result};
use crate::lattice::{
    clear_denominators, kernel_basis, preimage, rank_rat, solve_int, solve_rat, span_basis, Subquotient,
};
use crate::matrix::{IntMatrix, RatMatrix};

/// A finitely generated abelian group (or vector space over a field) as
/// invariants plus representative generators, torsion generators first.
#[derive(Debug, Clone, PartialEq)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Vec<Vec<BigRational>>,
}

impl AbGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Same invariants, ignoring generator choices.
    pub fn isomorphic(&self, other: &AbGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// `{"rank":r}` plus `"torsion"` when nonempty and `"generators"` on request.
    pub fn to_json(&self, with_generators: bool) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("rank".into(), json!(self.free_rank));
        if !self.torsion.is_empty() {
            obj.insert("torsion".into(), Value::Array(self.torsion.iter().map(int_to_json).collect()));
        }
        if with_generators {
            let gens = self.generators.iter().map(|g| Value::Array(g.iter().map(rational_to_json).collect())).collect();
            obj.insert("generators".into(), Value::Array(gens));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of an integrally presented group: one coordinate per generator,
/// torsion coordinates reduced modulo their order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub orders: Vec<BigInt>,
    pub coords: Vec<BigInt>,
}

impl Class {
    pub fn new(orders: Vec<BigInt>, coords: Vec<BigInt>) -> Self {
        let coords = coords
            .into_iter()
            .zip(&orders)
            .map(|(c, d)| if d.is_zero() { c } else { c.mod_floor(d) })
            .collect();
        Class { orders, coords }
    }

    pub fn zero(orders: Vec<BigInt>) -> Self {
        let coords = vec![BigInt::zero(); orders.len()];
        Class { orders, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Class) -> Result<Class> {
        if self.orders != other.orders {
            return Err(Error::ShapeMismatch("classes live in different groups".into()));
        }
        Ok(Class::new(self.orders.clone(), self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: &BigInt) -> Class {
        Class::new(self.orders.clone(), self.coords.iter().map(|c| c * k).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "class": self.coords.iter().map(int_to_json).collect::<Vec<_>>(),
            "torsion_orders": self.orders.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(c, d)| if d.is_zero() { c.to_string() } else { format!("{c} mod {d}") })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A homology group together with the lattice data needed to take
/// coordinates of cycles.
#[derive(Debug, Clone)]
pub struct HomologyGroup {
    ring: CoeffRing,
    sq: Subquotient,
    /// Indices (into the subquotient's nontrivial summands) kept as generators.
    keep: Vec<usize>,
    field: bool,
}

impl HomologyGroup {
    /// Over a field (`field = true`) only the free summands survive.
    pub fn from_subquotient(ring: CoeffRing, sq: Subquotient, field: bool) -> Self {
        let keep = sq.orders().iter().enumerate().filter(|(_, d)| !field || d.is_zero()).map(|(i, _)| i).collect();
        HomologyGroup { ring, sq, keep, field }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn is_field(&self) -> bool {
        self.field
    }

    pub fn num_generators(&self) -> usize {
        self.keep.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.keep.is_empty()
    }

    /// Order of each generator, `0` meaning infinite (always `0` over `Q`).
    pub fn orders(&self) -> Vec<BigInt> {
        let all = self.sq.orders();
        self.keep.iter().map(|&i| all[i].clone()).collect()
    }

    pub fn generators(&self) -> Vec<Vec<BigRational>> {
        let all = self.sq.generators();
        self.keep
            .iter()
            .map(|&i| all[i].iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Coordinates of a cycle in the generator basis; `None` if `z` is not a
    /// cycle of this group.
    pub fn coords(&self, z: &[BigRational]) -> Option<Vec<BigRational>> {
        if z.len() != self.sq.ambient_dim() {
            return None;
        }
        if self.field {
            let (zi, d) = crate::lattice::clear_vector(z);
            let c = self.sq.coords(&zi)?;
            let d = BigRational::from_integer(d);
            Some(self.keep.iter().map(|&i| BigRational::from_integer(c[i].clone()) / &d).collect())
        } else {
            if !z.iter().all(|x| x.is_integer()) {
                return None;
            }
            let zi: Vec<BigInt> = z.iter().map(|x| x.to_integer()).collect();
            let c = self.sq.coords(&zi)?;
            Some(self.keep.iter().map(|&i| BigRational::from_integer(c[i].clone())).collect())
        }
    }

    /// The class of an integral cycle.
    pub fn class_of(&self, z: &[BigRational]) -> Option<Class> {
        if self.field {
            return None;
        }
        let c = self.coords(z)?;
        Some(Class::new(self.orders(), c.iter().map(|x| x.to_integer()).collect()))
    }

    /// A representative cycle for the given generator coordinates.
    pub fn element(&self, coords: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.sq.ambient_dim()];
        for (c, g) in coords.iter().zip(self.generators()) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }

    /// Relations among generators: one column `d·e_i` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let orders = self.orders();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); orders.len()];
                c[i] = d.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(orders.len(), &cols)
    }

    /// Invariants in reporting form. Over `Z/p` with `p` prime the group is a
    /// vector space and is reported by its dimension.
    pub fn summary(&self) -> AbGroup {
        let orders = self.orders();
        let generators = self.generators();
        match self.ring {
            CoeffRing::IntMod(p) if is_prime(p) => AbGroup { free_rank: orders.len(), torsion: Vec::new(), generators },
            _ => AbGroup {
                free_rank: orders.iter().filter(|d| d.is_zero()).count(),
                torsion: orders.into_iter().filter(|d| !d.is_zero()).collect(),
                generators,
            },
        }
    }
}

/// `{x : A x ∈ span T} / span R` through the registered backend for `ring`.
pub fn present(ring: &CoeffRing, a: &RatMatrix, t: &RatMatrix, r: &RatMatrix) -> Result<HomologyGroup> {
    BackendRegistry::standard().for_ring(ring)?.present(ring, a, t, r)
}

pub fn homology_at(c: &GradedComplex, n: i64) -> Result<HomologyGroup> {
    let d = c.diff(n);
    present(c.ring(), &d, &RatMatrix::zeros(d.rows(), 0), &c.diff(n + 1))
}

/// Homology in every degree of the support, computed in parallel.
pub fn homology(c: &GradedComplex) -> Result<BTreeMap<i64, HomologyGroup>> {
    c.degrees().into_par_iter().map(|n| Ok((n, homology_at(c, n)?))).collect()
}

/// Matrix (columns = images of source generators in target coordinates) of
/// the map on homology induced by a chain-level map.
pub fn induced_by(
    src: &HomologyGroup,
    dst: &HomologyGroup,
    image: impl Fn(&[BigRational]) -> Result<Vec<BigRational>>,
) -> Result<RatMatrix> {
    let cols = src
        .generators()
        .iter()
        .map(|g| {
            let v = image(g)?;
            dst.coords(&v).ok_or_else(|| Error::Internal("image of a cycle is not a cycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_columns(dst.num_generators(), &cols))
}

pub fn induced_map(f: &ComplexMap, n: i64) -> Result<RatMatrix> {
    let m = f.mat(n);
    induced_by(&homology_at(f.src(), n)?, &homology_at(f.dst(), n)?, |g| Ok(m.mul_vec(g)))
}

/// `δ : H_{n-1}(X) → H_{n-1}(Y)` for the sequence `0 → Y → Cone(f) → X[-1] → 0`,
/// computed by the snake construction: lift `γ` to `(γ, 0)`, apply the cone
/// differential and read off the `Y` component. Asserted equal to `f_*`.
pub fn connecting_hom(f: &ComplexMap, n: i64) -> Result<RatMatrix> {
    let cone = cone_of_map(f);
    let d = cone.diff(n);
    let a = f.src().rank(n - 2);
    let hx = homology_at(f.src(), n - 1)?;
    let hy = homology_at(f.dst(), n - 1)?;
    let delta = induced_by(&hx, &hy, |g| {
        let mut lift = g.to_vec();
        lift.extend(std::iter::repeat_n(BigRational::zero(), f.dst().rank(n)));
        let b = d.mul_vec(&lift);
        if b[..a].iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("boundary of a lifted cycle leaves Y".into()));
        }
        Ok(b[a..].to_vec())
    })?;
    let direct = induced_map(f, n - 1)?;
    if !same_on_presentation(&delta, &direct, &hy) {
        return Err(Error::Internal(format!("connecting map differs from f_* in degree {}", n - 1)));
    }
    Ok(delta)
}

fn same_on_presentation(a: &RatMatrix, b: &RatMatrix, dst: &HomologyGroup) -> bool {
    let orders = dst.orders();
    a.shape() == b.shape()
        && (0..a.rows()).all(|i| {
            (0..a.cols()).all(|j| {
                let diff = &a[(i, j)] - &b[(i, j)];
                if orders[i].is_zero() || dst.is_field() {
                    diff.is_zero()
                } else {
                    diff.is_integer() && diff.to_integer().is_multiple_of(&orders[i])
                }
            })
        })
}

/// One group of a long exact sequence and the verdict at that spot.
#[derive(Debug, Clone)]
pub struct LesPosition {
    pub label: String,
    pub group: AbGroup,
    pub exact: bool,
    /// `ker(out) / im(in)` when the sequence fails to be exact here.
    pub defect: Option<AbGroup>,
}

#[derive(Debug, Clone)]
pub struct LesReport {
    pub positions: Vec<LesPosition>,
    /// `maps[i]` goes from `positions[i]` to `positions[i + 1]`.
    pub maps: Vec<RatMatrix>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    pub fn to_json(&self) -> Value {
        let positions: Vec<Value> = self
            .positions
            .iter()
            .map(|p| {
                let mut v = json!({"position": p.label, "group": p.group.to_json(false), "exact": p.exact});
                if let Some(d) = &p.defect {
                    v["defect"] = d.to_json(false);
                }
                v
            })
            .collect();
        let maps: Vec<Value> = self.maps.iter().map(RatMatrix::to_json).collect();
        json!({"exact": self.exact(), "positions": positions, "maps": maps})
    }
}

/// Exactness of `A --alpha--> B --beta--> C` at `B`, returning the defect.
fn exactness_defect(alpha: &RatMatrix, b: &HomologyGroup, beta: &RatMatrix, c: &HomologyGroup) -> Result<Option<AbGroup>> {
    let gb = b.num_generators();
    if b.is_field() {
        let (ra, rb) = (rank_rat(alpha), rank_rat(beta));
        if beta.try_mul(alpha)?.is_zero() && ra + rb == gb {
            return Ok(None);
        }
        let excess = gb.saturating_sub(ra + rb);
        return Ok(Some(AbGroup { free_rank: excess, torsion: Vec::new(), generators: Vec::new() }));
    }
    let to_int = |m: &RatMatrix| m.to_integer().ok_or_else(|| Error::Internal("non-integral induced map".into()));
    let (alpha, beta) = (to_int(alpha)?, to_int(beta)?);
    let rb = b.relation_matrix();
    let rc = c.relation_matrix();
    let kernel = preimage(&beta, &rc);
    let lattice = span_basis(&kernel.hstack(&rb)?);
    let relations = alpha.hstack(&rb)?;
    if relations.columns().iter().any(|col| solve_int(&lattice, col).is_none()) {
        // the composite is nonzero: report the whole middle group
        return Ok(Some(b.summary()));
    }
    let defect = Subquotient::new(&lattice, &relations);
    if defect.num_generators() == 0 {
        Ok(None)
    } else {
        Ok(Some(AbGroup { free_rank: defect.free_rank(), torsion: defect.torsion(), generators: Vec::new() }))
    }
}

/// Assembles a sequence from groups and the maps between consecutive ones;
/// the sequence is padded with zero groups at both ends.
fn assemble(groups: Vec<(String, HomologyGroup)>, maps: Vec<RatMatrix>) -> Result<LesReport> {
    debug_assert_eq!(maps.len() + 1, groups.len());
    let mut positions = Vec::with_capacity(groups.len());
    for (i, (label, g)) in groups.iter().enumerate() {
        let alpha = if i == 0 { RatMatrix::zeros(g.num_generators(), 0) } else { maps[i - 1].clone() };
        let (beta, next) = if i + 1 == groups.len() {
            (RatMatrix::zeros(0, g.num_generators()), None)
        } else {
            (maps[i].clone(), Some(&groups[i + 1].1))
        };
        let empty;
        let next = match next {
            Some(n) => n,
            None => {
                empty = trivial_group(g.ring());
                &empty
            }
        };
        let defect = exactness_defect(&alpha, g, &beta, next)?;
        positions.push(LesPosition { label: label.clone(), group: g.summary(), exact: defect.is_none(), defect });
    }
    Ok(LesReport { positions, maps })
}

fn trivial_group(ring: &CoeffRing) -> HomologyGroup {
    present(ring, &RatMatrix::zeros(0, 0), &RatMatrix::zeros(0, 0), &RatMatrix::zeros(0, 0))
        .expect("the trivial group is presentable")
}

fn les_range(f: &ComplexMap) -> (i64, i64) {
    let degs = f.degrees();
    match (degs.first(), degs.last()) {
        (Some(&lo), Some(&hi)) => (lo - 1, hi + 2),
        _ => (0, 0),
    }
}

/// `⋯ → H_n(X) → H_n(Y) → H_n(f) → H_{n-1}(X) → ⋯` with `f_*`,
/// `j(η) = (0, η)` and `k(θ, η) = θ`, exactness checked at every group.
pub fn les_of_cone(f: &ComplexMap) -> Result<LesReport> {
    let cone = cone_of_map(f);
    let (x, y) = (f.src(), f.dst());
    let (lo, hi) = les_range(f);
    let mut groups = Vec::new();
    let mut maps = Vec::new();
    for n in (lo..=hi).rev() {
        let hx = homology_at(x, n)?;
        let hy = homology_at(y, n)?;
        let hf = homology_at(&cone, n)?;
        let fm = f.mat(n);
        let pad = x.rank(n - 1);
        if let Some((_, prev)) = groups.last() {
            // k : H_{n+1}(f) → H_n(X)
            maps.push(induced_by(prev, &hx, |v| Ok(v[..x.rank(n)].to_vec()))?);
        }
        maps.push(induced_by(&hx, &hy, |v| Ok(fm.mul_vec(v)))?);
        maps.push(induced_by(&hy, &hf, |v| {
            let mut out = vec![BigRational::zero(); pad];
            out.extend_from_slice(v);
            Ok(out)
        })?);
        groups.push((format!("H_{n}(X)"), hx));
        groups.push((format!("H_{n}(Y)"), hy));
        groups.push((format!("H_{n}(f)"), hf));
    }
    assemble(groups, maps)
}

fn empty_cols(rows: usize) -> RatMatrix {
    RatMatrix::zeros(rows, 0)
}

/// `H_n(ker f)`, computed inside `X_n`.
fn kernel_homology(f: &ComplexMap, n: i64) -> Result<HomologyGroup> {
    let x = f.src();
    let a = x.diff(n).vstack(&f.mat(n))?;
    let k = kernel_basis(&clear_denominators(&f.mat(n + 1))).to_rational();
    let r = x.diff(n + 1).try_mul(&k)?;
    present(x.ring(), &a, &empty_cols(a.rows()), &r)
}

/// `H_n(coker f)`, computed inside `Y_n` as `{y : ∂y ∈ im f} / (im ∂ + im f)`.
fn cokernel_homology(f: &ComplexMap, n: i64) -> Result<HomologyGroup> {
    let y = f.dst();
    let r = y.diff(n + 1).hstack(&f.mat(n))?;
    present(y.ring(), &y.diff(n), &f.mat(n - 1), &r)
}

fn solve_preimage(ring: &CoeffRing, m: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let none = || Error::Internal("value is not in the image of f".into());
    if *ring == CoeffRing::Rat {
        return solve_rat(m, b).ok_or_else(none);
    }
    let mi = m.to_integer().ok_or_else(none)?;
    let bi: Vec<BigInt> = b.iter().map(|q| q.to_integer()).collect();
    let x = solve_int(&mi, &bi).ok_or_else(none)?;
    Ok(x.into_iter().map(BigRational::from_integer).collect())
}

/// Whether every degree of `f` is injective / surjective.
pub fn degreewise_injective(f: &ComplexMap) -> bool {
    f.degrees().iter().all(|&n| rank_rat(&f.mat(n)) == f.src().rank(n))
}

pub fn degreewise_surjective(f: &ComplexMap) -> bool {
    f.degrees().iter().all(|&n| {
        let m = f.mat(n);
        match f.ring() {
            CoeffRing::Rat => rank_rat(&m) == f.dst().rank(n),
            _ => {
                let s = crate::snf::snf(&clear_denominators(&m));
                s.rank == f.dst().rank(n) && s.divisors().iter().all(One::is_one)
            }
        }
    })
}

#[derive(Debug, Clone)]
pub struct KerCokerReport {
    pub les: LesReport,
    pub injective: bool,
    pub surjective: bool,
    /// `H_n(f) ≅ H_n(coker f)` in every degree (checked when injective).
    pub injective_specialization: Option<bool>,
    /// `H_n(f) ≅ H_{n-1}(ker f)` in every degree (checked when surjective).
    pub surjective_specialization: Option<bool>,
}

impl KerCokerReport {
    pub fn ok(&self) -> bool {
        self.les.exact() && self.injective_specialization != Some(false) && self.surjective_specialization != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "les": self.les.to_json(),
            "injective": self.injective,
            "surjective": self.surjective,
            "injective_specialization": self.injective_specialization,
            "surjective_specialization": self.surjective_specialization,
        })
    }
}

/// `⋯ → H_{n-1}(ker f) → H_n(f) → H_n(coker f) → H_{n-2}(ker f) → ⋯` with
/// `j[θ] = [(θ,0)]`, `k[(θ,η)] = [η mod f(X)]` and `δ[η mod f(X)] = [∂θ]`
/// where `f(θ) = ∂η`.
pub fn ker_coker_les(f: &ComplexMap) -> Result<KerCokerReport> {
    let ring = f.ring().clone();
    if !matches!(ring, CoeffRing::Int | CoeffRing::Rat) {
        return Err(Error::UnsupportedRing(ring.to_string(), "kernel/cokernel sequences"));
    }
    let cone = cone_of_map(f);
    let (x, y) = (f.src(), f.dst());
    let (lo, hi) = les_range(f);
    let mut groups: Vec<(String, HomologyGroup)> = Vec::new();
    let mut maps = Vec::new();
    let mut rel = BTreeMap::new();
    let mut coker = BTreeMap::new();
    let mut ker = BTreeMap::new();
    for n in (lo..=hi).rev() {
        let hk = kernel_homology(f, n - 1)?;
        let hf = homology_at(&cone, n)?;
        let hq = cokernel_homology(f, n)?;
        if let Some((_, prev)) = groups.last() {
            // δ : H_{n+1}(coker f) → H_{n-1}(ker f)
            let (dy, fm, dx) = (y.diff(n + 1), f.mat(n), x.diff(n));
            maps.push(induced_by(prev, &hk, |eta| {
                let theta = solve_preimage(&ring, &fm, &dy.mul_vec(eta))?;
                Ok(dx.mul_vec(&theta))
            })?);
        }
        let b = y.rank(n);
        maps.push(induced_by(&hk, &hf, |theta| {
            let mut v = theta.to_vec();
            v.extend(std::iter::repeat_n(BigRational::zero(), b));
            Ok(v)
        })?);
        let a = x.rank(n - 1);
        maps.push(induced_by(&hf, &hq, |v| Ok(v[a..].to_vec()))?);
        rel.insert(n, hf.summary());
        coker.insert(n, hq.summary());
        ker.insert(n - 1, hk.summary());
        groups.push((format!("H_{}(ker f)", n - 1), hk));
        groups.push((format!("H_{n}(f)"), hf));
        groups.push((format!("H_{n}(coker f)"), hq));
    }
    let les = assemble(groups, maps)?;
    let injective = degreewise_injective(f);
    let surjective = degreewise_surjective(f);
    let injective_specialization = injective.then(|| rel.iter().all(|(n, g)| g.isomorphic(&coker[n])));
    let surjective_specialization = surjective.then(|| rel.iter().all(|(n, g)| g.isomorphic(&ker[&(n - 1)])));
    Ok(KerCokerReport { les, injective, surjective, injective_specialization, surjective_specialization })
}

/// True iff the cone of `f` is acyclic.
pub fn quasi_iso(f: &ComplexMap) -> Result<bool> {
    Ok(homology(&cone_of_map(f))?.values().all(HomologyGroup::is_trivial))
}

#[derive(Debug, Clone)]
pub struct FiveLemma {
    /// `F(α,β) = (Φ(α), Ψ(β))` from `Cone(f)` to `Cone(f~)`.
    pub cone_map: ComplexMap,
    pub phi_quasi_iso: bool,
    pub psi_quasi_iso: bool,
    pub cone_quasi_iso: bool,
}

impl FiveLemma {
    /// The transfer statement: `Φ`, `Ψ` quasi-isomorphisms force `F` to be one.
    pub fn holds(&self) -> bool {
        !(self.phi_quasi_iso && self.psi_quasi_iso) || self.cone_quasi_iso
    }
}

/// For a square `Ψ∘f = f~∘Φ` builds the induced map of cones and decides
/// which of the three vertical maps are quasi-isomorphisms.
pub fn five_lemma_transfer(phi: &ComplexMap, psi: &ComplexMap, f: &ComplexMap, ft: &ComplexMap) -> Result<FiveLemma> {
    if phi.src() != f.src() || psi.src() != f.dst() || phi.dst() != ft.src() || psi.dst() != ft.dst() {
        return Err(Error::ShapeMismatch("square maps do not line up".into()));
    }
    let mut degrees = f.degrees();
    degrees.extend(ft.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    for &n in &degrees {
        if psi.mat(n).try_mul(&f.mat(n))? != ft.mat(n).try_mul(&phi.mat(n))? {
            return Err(Error::NonCommutingSquare(n));
        }
    }
    let (src, dst) = (cone_of_map(f), cone_of_map(ft));
    let mut mats = BTreeMap::new();
    for n in src.degrees() {
        let (p, q) = (phi.mat(n - 1), psi.mat(n));
        let z1 = RatMatrix::zeros(p.rows(), q.cols());
        let z2 = RatMatrix::zeros(q.rows(), p.cols());
        mats.insert(n, RatMatrix::block(&[vec![&p, &z1], vec![&z2, &q]])?);
    }
    let cone_map = ComplexMap::new(src, dst, mats)?;
    let report = FiveLemma {
        phi_quasi_iso: quasi_iso(phi)?,
        psi_quasi_iso: quasi_iso(psi)?,
        cone_quasi_iso: quasi_iso(&cone_map)?,
        cone_map,
    };
    if !report.holds() {
        return Err(Error::Internal("five lemma transfer failed".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{int_complex, int_map};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn circle() -> GradedComplex {
        int_complex(&[(0, 1), (1, 1)], vec![]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = homology(&circle()).unwrap();
        assert_eq!(h[&0].summary().free_rank, 1);
        assert_eq!(h[&1].summary().free_rank, 1);
    }

    #[test]
    fn multiplication_by_two() {
        // Z --2--> Z in degrees 1 → 0
        let c = int_complex(&[(0, 1), (1, 1)], vec![(1, IntMatrix::from_i64(&[&[2]]))]).unwrap();
        let h0 = homology_at(&c, 0).unwrap().summary();
        assert_eq!(h0.torsion, ints(&[2]));
        assert_eq!(h0.free_rank, 0);
        assert!(homology_at(&c, 1).unwrap().is_trivial());
        let q = homology_at(&c.with_ring(CoeffRing::Rat).unwrap(), 0).unwrap();
        assert!(q.is_trivial());
        let m2 = homology_at(&c.with_ring(CoeffRing::IntMod(2)).unwrap(), 0).unwrap().summary();
        assert_eq!(m2.free_rank, 1);
        let m4 = c.with_ring(CoeffRing::IntMod(4)).unwrap();
        assert_eq!(homology_at(&m4, 0).unwrap().summary().torsion, ints(&[2]));
        assert_eq!(homology_at(&m4, 1).unwrap().summary().torsion, ints(&[2]));
    }

    #[test]
    fn angles_have_no_backend() {
        let c = circle().with_ring(CoeffRing::AngleQ).unwrap();
        assert!(matches!(homology_at(&c, 0), Err(Error::UnsupportedRing(..))));
    }

    #[test]
    fn degree_two_on_circle() {
        let c = circle();
        let f = int_map(&c, &c, vec![(0, IntMatrix::from_i64(&[&[1]])), (1, IntMatrix::from_i64(&[&[2]]))]).unwrap();
        assert_eq!(induced_map(&f, 1).unwrap(), RatMatrix::from_i64(&[&[2]]));
        assert_eq!(connecting_hom(&f, 2).unwrap(), RatMatrix::from_i64(&[&[2]]));
        let les = les_of_cone(&f).unwrap();
        assert!(les.exact());
        assert!(!quasi_iso(&f).unwrap());
        let h1 = homology_at(&cone_of_map(&f), 1).unwrap().summary();
        assert_eq!(h1.torsion, ints(&[2]));
    }

    #[test]
    fn identity_and_zero_maps() {
        let c = circle();
        assert!(quasi_iso(&c.identity_map()).unwrap());
        let z = c.zero_map_to(&c);
        assert!(induced_map(&z, 1).unwrap().is_zero());
        let cone = cone_of_map(&z);
        for n in 0..=2 {
            let expected = c.rank(n - 1) + c.rank(n);
            assert_eq!(homology_at(&cone, n).unwrap().summary().free_rank, expected);
        }
    }

    #[test]
    fn exactness_detects_defect() {
        // Z --0--> Z --0--> Z is not exact in the middle
        let g = present(&CoeffRing::Int, &RatMatrix::zeros(0, 1), &RatMatrix::zeros(0, 0), &RatMatrix::zeros(1, 0))
            .unwrap();
        let zero = RatMatrix::zeros(1, 1);
        let d = exactness_defect(&zero, &g, &zero, &g).unwrap().unwrap();
        assert_eq!(d.free_rank, 1);
        // Z --2--> Z --> Z/2 is exact in the middle
        let z2 = present(&CoeffRing::Int, &RatMatrix::zeros(0, 1), &RatMatrix::zeros(0, 0), &RatMatrix::from_i64(&[&[2]]))
            .unwrap();
        let two = RatMatrix::from_i64(&[&[2]]);
        let one = RatMatrix::from_i64(&[&[1]]);
        assert!(exactness_defect(&two, &g, &one, &z2).unwrap().is_none());
    }

    #[test]
    fn injective_inclusion() {
        // point included as a vertex of an interval
        let pt = int_complex(&[(0, 1)], vec![]).unwrap();
        let interval = int_complex(&[(0, 2), (1, 1)], vec![(1, IntMatrix::from_i64(&[&[-1], &[1]]))]).unwrap();
        let f = int_map(&pt, &interval, vec![(0, IntMatrix::from_i64(&[&[1], &[0]]))]).unwrap();
        let r = ker_coker_les(&f).unwrap();
        assert!(r.injective);
        assert_eq!(r.injective_specialization, Some(true));
        assert!(r.les.exact());
    }

    #[test]
    fn five_lemma_identity_square() {
        let c = circle();
        let id = c.identity_map();
        let r = five_lemma_transfer(&id, &id, &id, &id).unwrap();
        assert!(r.cone_quasi_iso && r.holds());
    }

    #[test]
    fn class_arithmetic() {
        let a = Class::new(ints(&[2, 0]), ints(&[1, 3]));
        let s = a.add(&a).unwrap();
        assert_eq!(s.coords, ints(&[0, 6]));
        assert_eq!(a.to_string(), "(1 mod 2, 3)");
    }
}
