//! Čech cochains on covers (recorded by their nerves), the Čech differential,
//! pullback along a map of covers, the relative Čech cone and the Bockstein
//! map of the exponential sequence `0 → Z → Q → Q/Z → 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::chain::{cone_of_cochain_map, vanishes_over, CochainComplex, CochainMap};
use crate::coeffs::{angle_lift, CoeffRing, Scalar};
use crate::error::{Error, Result};
use crate::homology::{homology_at, AbGroup, Class, HomologyGroup};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::simplicial::{nerve, oriented, SimplicialComplex, SimplicialMap};

/// A cover, remembered only through its nerve.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    nerve: SimplicialComplex,
}

impl Cover {
    pub fn new(sets: Vec<String>, intersections: &[Vec<usize>]) -> Result<Self> {
        Ok(Cover { nerve: nerve(sets, intersections)? })
    }

    /// The cover by open vertex stars, whose nerve is `k` itself.
    pub fn star_cover(k: &SimplicialComplex) -> Self {
        Cover { nerve: k.clone() }
    }

    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    pub fn sets(&self) -> &[String] {
        self.nerve.vertices()
    }

    /// Number of `p`-fold-plus-one intersections, i.e. `dim Č^p`.
    pub fn count(&self, p: i64) -> usize {
        self.nerve.count(p)
    }

    /// `Č^•` with `d^p = (∂_{p+1})ᵀ`.
    pub fn cochain_complex(&self, ring: &CoeffRing) -> CochainComplex {
        let k = &self.nerve;
        let ranks = (0..=k.dim()).map(|p| (p, k.count(p))).collect();
        let d = (0..k.dim()).map(|p| (p, k.boundary_matrix(p + 1).transpose().to_rational())).collect();
        CochainComplex::new(ring.clone(), ranks, d).expect("Čech differential squares to zero")
    }

    pub fn to_json(&self) -> Value {
        let k = &self.nerve;
        let intersections: Vec<Value> = (1..=k.dim()).flat_map(|p| k.simplices(p).iter().map(|s| json!(s))).collect();
        json!({"sets": k.vertices(), "intersections": intersections})
    }

    /// Intersections may list set names or indices.
    pub fn from_json(v: &Value) -> Result<Self> {
        let sets: Vec<String> = v["sets"]
            .as_array()
            .ok_or_else(|| Error::Parse("cover needs a \"sets\" array".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("set names must be strings".into())))
            .collect::<Result<_>>()?;
        let empty = Vec::new();
        let inters = v["intersections"].as_array().unwrap_or(&empty);
        let parsed = inters
            .iter()
            .map(|i| {
                i.as_array()
                    .ok_or_else(|| Error::Parse("intersection must be an array".into()))?
                    .iter()
                    .map(|x| match x {
                        Value::Number(n) => n
                            .as_u64()
                            .map(|n| n as usize)
                            .filter(|&n| n < sets.len())
                            .ok_or_else(|| Error::UnknownVertex(n.to_string())),
                        Value::String(s) => {
                            sets.iter().position(|t| t == s).ok_or_else(|| Error::UnknownVertex(s.clone()))
                        }
                        _ => Err(Error::Parse("intersection entries are names or indices".into())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Cover::new(sets, &parsed)
    }
}

/// `r : I → J` with `Φ(U_i) ⊆ V_{r(i)}`, recorded as a simplicial map of nerves.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverMap {
    src: Cover,
    dst: Cover,
    map: SimplicialMap,
}

impl CoverMap {
    pub fn new(src: Cover, dst: Cover, r: Vec<usize>) -> Result<Self> {
        let map = SimplicialMap::new(src.nerve.clone(), dst.nerve.clone(), r)?;
        Ok(CoverMap { src, dst, map })
    }

    pub fn from_simplicial(map: &SimplicialMap) -> Self {
        CoverMap { src: Cover::star_cover(map.src()), dst: Cover::star_cover(map.dst()), map: map.clone() }
    }

    pub fn identity(c: &Cover) -> Self {
        CoverMap { src: c.clone(), dst: c.clone(), map: SimplicialMap::identity(&c.nerve) }
    }

    pub fn src(&self) -> &Cover {
        &self.src
    }

    pub fn dst(&self) -> &Cover {
        &self.dst
    }

    pub fn nerve_map(&self) -> &SimplicialMap {
        &self.map
    }

    /// `Φ^* : Č^p(dst) → Č^p(src)`, the transpose of the nerve chain map.
    pub fn pullback_matrix(&self, p: i64) -> IntMatrix {
        self.map.chain_matrix(p).transpose()
    }

    pub fn pullback_map(&self, ring: &CoeffRing) -> CochainMap {
        let mats = (0..=self.src.nerve.dim()).map(|p| (p, self.pullback_matrix(p).to_rational())).collect();
        CochainMap::new(self.dst.cochain_complex(ring), self.src.cochain_complex(ring), mats)
            .expect("pullback commutes with the Čech differential")
    }

    pub fn to_json(&self) -> Value {
        let r: serde_json::Map<String, Value> = self
            .map
            .vmap()
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.src.sets()[i].clone(), json!(self.dst.sets()[j])))
            .collect();
        json!({"src": self.src.to_json(), "dst": self.dst.to_json(), "r": r})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let src = Cover::from_json(&v["src"])?;
        let dst = Cover::from_json(&v["dst"])?;
        let obj = v["r"].as_object().ok_or_else(|| Error::Parse("cover map needs an \"r\" object".into()))?;
        let mut r = vec![usize::MAX; src.sets().len()];
        for (k, w) in obj {
            let i = src.sets().iter().position(|s| s == k).ok_or_else(|| Error::UnknownVertex(k.clone()))?;
            let name = w.as_str().ok_or_else(|| Error::Parse("r values must be set names".into()))?;
            r[i] = dst.sets().iter().position(|s| s == name).ok_or_else(|| Error::UnknownVertex(name.into()))?;
        }
        if let Some(i) = r.iter().position(|&j| j == usize::MAX) {
            return Err(Error::Parse(format!("set {} is not mapped", src.sets()[i])));
        }
        CoverMap::new(src, dst, r)
    }
}

/// Brings a rational value into the canonical form for `ring`.
pub fn normalize(ring: &CoeffRing, q: &BigRational) -> Result<BigRational> {
    Ok(ring.from_rational(q)?.to_rational())
}

fn normalize_all(ring: &CoeffRing, v: &[BigRational]) -> Result<Vec<BigRational>> {
    v.iter().map(|q| normalize(ring, q)).collect()
}

/// An antisymmetric cochain, stored once per sorted tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct CechCochain {
    cover: Cover,
    degree: i64,
    ring: CoeffRing,
    values: Vec<BigRational>,
}

impl CechCochain {
    pub fn zero(cover: &Cover, degree: i64, ring: &CoeffRing) -> Self {
        CechCochain {
            cover: cover.clone(),
            degree,
            ring: ring.clone(),
            values: vec![BigRational::zero(); cover.count(degree)],
        }
    }

    /// Values in the order of the sorted `degree`-simplices of the nerve.
    pub fn from_values(cover: &Cover, degree: i64, ring: &CoeffRing, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != cover.count(degree) {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} simplices of degree {degree}",
                values.len(),
                cover.count(degree)
            )));
        }
        Ok(CechCochain { cover: cover.clone(), degree, ring: ring.clone(), values: normalize_all(ring, &values)? })
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Value on an arbitrary ordered tuple: sign-adjusted, zero when an index repeats.
    pub fn value_at(&self, tuple: &[usize]) -> Result<Scalar> {
        let Some((sorted, sign)) = oriented(tuple) else {
            return Ok(self.ring.zero());
        };
        let i = self
            .cover
            .nerve
            .index_of(&sorted)
            .ok_or_else(|| Error::InconsistentIntersections(self.cover.nerve.names(&sorted)))?;
        let q = if sign < 0 { -self.values[i].clone() } else { self.values[i].clone() };
        self.ring.from_rational(&q)
    }

    pub fn set(&mut self, tuple: &[usize], value: &Scalar) -> Result<()> {
        let (sorted, sign) = oriented(tuple).ok_or_else(|| Error::Parse("cochains vanish on repeated indices".into()))?;
        let i = self
            .cover
            .nerve
            .index_of(&sorted)
            .ok_or_else(|| Error::InconsistentIntersections(self.cover.nerve.names(&sorted)))?;
        if value.ring() != self.ring {
            return Err(Error::RingMismatch(value.ring().to_string(), self.ring.to_string()));
        }
        let q = value.to_rational();
        self.values[i] = normalize(&self.ring, &if sign < 0 { -q } else { q })?;
        Ok(())
    }

    fn same_shape(&self, other: &CechCochain) -> Result<()> {
        if self.cover != other.cover || self.degree != other.degree {
            return Err(Error::CoverMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn scalars(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.values.iter().map(|q| self.ring.from_rational(q).expect("stored values are normalized"))
    }

    fn from_scalars(&self, values: Vec<Scalar>) -> CechCochain {
        let values = values.iter().map(Scalar::to_rational).collect();
        CechCochain { cover: self.cover.clone(), degree: self.degree, ring: self.ring.clone(), values }
    }

    pub fn add(&self, other: &CechCochain) -> Result<CechCochain> {
        self.same_shape(other)?;
        let values = self.scalars().zip(other.scalars()).map(|(a, b)| a.add(&b)).collect::<Result<_>>()?;
        Ok(self.from_scalars(values))
    }

    pub fn neg(&self) -> CechCochain {
        self.from_scalars(self.scalars().map(|a| a.neg()).collect())
    }

    /// Multiplies every value by a ring element; fails on `Q/Z`, which has no product.
    pub fn scale(&self, k: &Scalar) -> Result<CechCochain> {
        let values = self.scalars().map(|a| a.mul(k)).collect::<Result<_>>()?;
        Ok(self.from_scalars(values))
    }

    pub fn with_ring(&self, ring: &CoeffRing) -> Result<CechCochain> {
        CechCochain::from_values(&self.cover, self.degree, ring, self.values.clone())
    }

    pub fn to_json(&self) -> Value {
        let k = &self.cover.nerve;
        let values: serde_json::Map<String, Value> = k
            .simplices(self.degree)
            .iter()
            .zip(&self.values)
            .map(|(s, q)| {
                let key = s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
                (key, self.ring.from_rational(q).expect("stored values are normalized").to_json())
            })
            .collect();
        json!({"cover": self.cover.to_json(), "degree": self.degree, "ring": self.ring.to_string(), "values": values})
    }

    /// Missing keys are zero; keys are comma-separated set indices in any order.
    pub fn from_json(v: &Value) -> Result<Self> {
        let cover = Cover::from_json(&v["cover"])?;
        Self::from_json_on(&cover, v)
    }

    pub fn from_json_on(cover: &Cover, v: &Value) -> Result<Self> {
        let degree = v["degree"].as_i64().ok_or_else(|| Error::Parse("cochain needs an integer \"degree\"".into()))?;
        let ring: CoeffRing =
            v["ring"].as_str().ok_or_else(|| Error::Parse("cochain needs a \"ring\"".into()))?.parse()?;
        let mut c = CechCochain::zero(cover, degree, &ring);
        if let Some(obj) = v["values"].as_object() {
            for (key, val) in obj {
                let tuple = key
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad simplex key {key:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if tuple.len() as i64 != degree + 1 {
                    return Err(Error::DegreeMismatch { expected: degree, got: tuple.len() as i64 - 1 });
                }
                c.set(&tuple, &Scalar::from_json(&ring, val)?)?;
            }
        }
        Ok(c)
    }
}

fn apply(ring: &CoeffRing, m: &IntMatrix, v: &[BigRational]) -> Result<Vec<BigRational>> {
    normalize_all(ring, &m.to_rational().mul_vec(v))
}

/// `(dc)_{α_0…α_{p+1}} = Σ (−1)^i c_{α_0…α̂_i…α_{p+1}}`
pub fn cech_diff(c: &CechCochain) -> CechCochain {
    let m = c.cover.nerve.boundary_matrix(c.degree + 1).transpose();
    let values = apply(&c.ring, &m, &c.values).expect("the differential has integer entries");
    CechCochain { cover: c.cover.clone(), degree: c.degree + 1, ring: c.ring.clone(), values }
}

/// `(Φ^*c)_{i_0…i_p} = c_{r(i_0)…r(i_p)}`, zero when indices collapse.
pub fn pullback(c: &CechCochain, m: &CoverMap) -> Result<CechCochain> {
    if c.cover != m.dst {
        return Err(Error::CoverMismatch);
    }
    let values = apply(&c.ring, &m.pullback_matrix(c.degree), &c.values)?;
    Ok(CechCochain { cover: m.src.clone(), degree: c.degree, ring: c.ring.clone(), values })
}

/// `Cone^n(Φ^*) = Č^{n-1}(src) ⊕ Č^n(dst)` with `d(s,t) = (Φ^*t − ds, dt)`.
pub fn relative_cone_complex(m: &CoverMap, ring: &CoeffRing) -> CochainComplex {
    cone_of_cochain_map(&m.pullback_map(ring))
}

/// `H^n(Φ; ring)` as the homology of the reindexed cone.
pub fn relative_cohomology(m: &CoverMap, ring: &CoeffRing, n: i64) -> Result<HomologyGroup> {
    homology_at(relative_cone_complex(m, ring).reindexed(), -n)
}

/// `H^n` of a single cover.
pub fn cohomology(c: &Cover, ring: &CoeffRing, n: i64) -> Result<HomologyGroup> {
    homology_at(c.cochain_complex(ring).reindexed(), -n)
}

/// `(s, t)` in `Cone^n(Φ^*)`: `s` of degree `n−1` on the source cover, `t` of
/// degree `n` on the target cover.
#[derive(Debug, Clone, PartialEq)]
pub struct RelCechCochain {
    map: CoverMap,
    pub s: CechCochain,
    pub t: CechCochain,
}

impl RelCechCochain {
    pub fn new(map: &CoverMap, s: CechCochain, t: CechCochain) -> Result<Self> {
        if s.cover != map.src || t.cover != map.dst {
            return Err(Error::CoverMismatch);
        }
        if s.degree + 1 != t.degree {
            return Err(Error::DegreeMismatch { expected: t.degree - 1, got: s.degree });
        }
        if s.ring != t.ring {
            return Err(Error::RingMismatch(s.ring.to_string(), t.ring.to_string()));
        }
        Ok(RelCechCochain { map: map.clone(), s, t })
    }

    pub fn zero(map: &CoverMap, n: i64, ring: &CoeffRing) -> Self {
        RelCechCochain {
            map: map.clone(),
            s: CechCochain::zero(&map.src, n - 1, ring),
            t: CechCochain::zero(&map.dst, n, ring),
        }
    }

    pub fn map(&self) -> &CoverMap {
        &self.map
    }

    pub fn degree(&self) -> i64 {
        self.t.degree
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.t.ring
    }

    /// Coordinates in `Cone^n`: `s` first, then `t`.
    pub fn to_vector(&self) -> Vec<BigRational> {
        self.s.values.iter().chain(&self.t.values).cloned().collect()
    }

    pub fn from_vector(map: &CoverMap, n: i64, ring: &CoeffRing, v: &[BigRational]) -> Result<Self> {
        let a = map.src.count(n - 1);
        if v.len() != a + map.dst.count(n) {
            return Err(Error::ShapeMismatch(format!("vector of length {} for Cone^{n}", v.len())));
        }
        let s = CechCochain::from_values(&map.src, n - 1, ring, v[..a].to_vec())?;
        let t = CechCochain::from_values(&map.dst, n, ring, v[a..].to_vec())?;
        Ok(RelCechCochain { map: map.clone(), s, t })
    }

    pub fn add(&self, other: &RelCechCochain) -> Result<Self> {
        if self.map != other.map {
            return Err(Error::CoverMismatch);
        }
        Ok(RelCechCochain { map: self.map.clone(), s: self.s.add(&other.s)?, t: self.t.add(&other.t)? })
    }

    pub fn neg(&self) -> Self {
        RelCechCochain { map: self.map.clone(), s: self.s.neg(), t: self.t.neg() }
    }

    pub fn with_ring(&self, ring: &CoeffRing) -> Result<Self> {
        Ok(RelCechCochain { map: self.map.clone(), s: self.s.with_ring(ring)?, t: self.t.with_ring(ring)? })
    }

    pub fn is_zero(&self) -> bool {
        self.to_vector().iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({"map": self.map.to_json(), "s": self.s.to_json(), "t": self.t.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let map = CoverMap::from_json(&v["map"])?;
        let s = CechCochain::from_json_on(&map.src, &v["s"])?;
        let t = CechCochain::from_json_on(&map.dst, &v["t"])?;
        RelCechCochain::new(&map, s, t)
    }
}

/// The relative differential `d(s,t) = (Φ^*t − ds, dt)`.
pub fn relative_diff(u: &RelCechCochain) -> RelCechCochain {
    let n = u.degree();
    let ring = u.ring().clone();
    let d = relative_cone_complex(&u.map, &ring).diff(n);
    let v = normalize_all(&ring, &d.mul_vec(&u.to_vector())).expect("integer differential");
    RelCechCochain::from_vector(&u.map, n + 1, &ring, &v).expect("shapes agree")
}

pub fn is_relative_cocycle(u: &RelCechCochain) -> bool {
    relative_diff(u).is_zero()
}

/// Integer cocycle of `δ(lift u)` and its class in `H^{n+1}(Φ; Z)`.
#[derive(Debug, Clone)]
pub struct BocksteinImage {
    pub cocycle: RelCechCochain,
    pub class: Class,
    pub group: AbGroup,
}

/// Lifts an angle-valued relative cocycle through `Q → Q/Z` with
/// representatives in `[0,1)`, applies the relative differential and reads the
/// resulting integer cocycle as a class.
pub fn bockstein(u: &RelCechCochain) -> Result<BocksteinImage> {
    if *u.ring() != CoeffRing::AngleQ {
        return Err(Error::UnsupportedRing(u.ring().to_string(), "the Bockstein map"));
    }
    let lift = lift_angles(&u.to_vector())?;
    bockstein_of_lift(&u.map, u.degree(), &lift)
}

fn lift_angles(v: &[BigRational]) -> Result<Vec<BigRational>> {
    v.iter().map(|q| Ok(angle_lift(&CoeffRing::AngleQ.from_rational(q)?)?.to_rational())).collect()
}

/// Same as [`bockstein`] for an arbitrary rational lift.
pub fn bockstein_of_lift(map: &CoverMap, n: i64, lift: &[BigRational]) -> Result<BocksteinImage> {
    let cone = relative_cone_complex(map, &CoeffRing::Rat);
    let z = cone.diff(n).mul_vec(lift);
    if !z.iter().all(|q| q.is_integer()) {
        return Err(Error::NotACocycle);
    }
    let cocycle = RelCechCochain::from_vector(map, n + 1, &CoeffRing::Int, &z)?;
    let group = relative_cohomology(map, &CoeffRing::Int, n + 1)?;
    let class = group.class_of(&z).ok_or_else(|| Error::Internal("Bockstein image is not a cocycle".into()))?;
    Ok(BocksteinImage { cocycle, class, group: group.summary() })
}

/// Absolute version on one cover: `δ(lift t)` and its class in `H^{p+1}(N; Z)`.
pub fn absolute_bockstein(t: &CechCochain) -> Result<(CechCochain, Class)> {
    if t.ring != CoeffRing::AngleQ {
        return Err(Error::UnsupportedRing(t.ring.to_string(), "the Bockstein map"));
    }
    let lift = lift_angles(&t.values)?;
    let m = t.cover.nerve.boundary_matrix(t.degree + 1).transpose().to_rational();
    let z = m.mul_vec(&lift);
    if !z.iter().all(|q| q.is_integer()) {
        return Err(Error::NotACocycle);
    }
    let group = cohomology(&t.cover, &CoeffRing::Int, t.degree + 1)?;
    let class = group.class_of(&z).ok_or_else(|| Error::Internal("Bockstein image is not a cocycle".into()))?;
    Ok((CechCochain::from_values(&t.cover, t.degree + 1, &CoeffRing::Int, z)?, class))
}

/// Whether `v` vanishes in the ring (used for defect reports).
pub fn vanishes(ring: &CoeffRing, v: &[BigRational]) -> bool {
    match ring {
        CoeffRing::AngleQ => v.iter().all(|q| q.is_integer()),
        _ => vanishes_over(ring, &RatMatrix::from_columns(v.len(), &[v.to_vec()])),
    }
}

/// Entries of `d` keyed by simplex names, for reports.
pub fn named_values(c: &CechCochain) -> BTreeMap<String, BigRational> {
    let k = &c.cover.nerve;
    k.simplices(c.degree).iter().zip(&c.values).map(|(s, q)| (k.names(s).join(","), q.clone())).collect()
}

/// `lcm` of the denominators of `v`.
pub fn denominator_lcm(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()))
}
