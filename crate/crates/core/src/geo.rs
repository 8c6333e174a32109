//! Relative U(1)-functions, line bundles and gerbes at the level of their
//! relative Čech cocycles, their classes in `H^q(Φ; Z)`, triviality
//! witnesses, and the integrality and Bohr-Sommerfeld checks for relative
//! real cochains on a simplicial model.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cech::{
    absolute_bockstein, bockstein, cohomology, relative_cohomology, relative_cone_complex, relative_diff, CechCochain,
    CoverMap, RelCechCochain,
};
use crate::chain::cone_of_map;
use crate::coeffs::{rational_to_json, reduce_mod_one, CoeffRing};
use crate::error::{Error, Result};
use crate::homology::{homology_at, AbGroup, Class};
use crate::lattice::{solve_angle, solve_int};
use crate::simplicial::SimplicialMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CocycleKind {
    /// `(b, a)`: integer 0-cochain on the source, integer 1-cochain on the target.
    Function,
    /// `(f, g)`: angle 0-cochain on the source, angle 1-cochain on the target.
    LineBundle,
    /// `(s, t)`: angle 1-cochain on the source, angle 2-cochain on the target.
    Gerbe,
}

impl CocycleKind {
    pub const ALL: [CocycleKind; 3] = [CocycleKind::Function, CocycleKind::LineBundle, CocycleKind::Gerbe];

    /// Degree of the pair in the relative cone.
    pub fn degree(self) -> i64 {
        match self {
            CocycleKind::Function | CocycleKind::LineBundle => 1,
            CocycleKind::Gerbe => 2,
        }
    }

    pub fn ring(self) -> CoeffRing {
        match self {
            CocycleKind::Function => CoeffRing::Int,
            _ => CoeffRing::AngleQ,
        }
    }

    /// Degree of the integral class.
    pub fn class_degree(self) -> i64 {
        match self {
            CocycleKind::Function => 1,
            CocycleKind::LineBundle => 2,
            CocycleKind::Gerbe => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CocycleKind::Function => "function",
            CocycleKind::LineBundle => "line_bundle",
            CocycleKind::Gerbe => "gerbe",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        CocycleKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown cocycle kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelCocycle {
    kind: CocycleKind,
    data: RelCechCochain,
}

impl RelCocycle {
    /// Checks shape and ring only; cocycle conditions are checked by [`validate`].
    pub fn new(kind: CocycleKind, data: RelCechCochain) -> Result<Self> {
        if data.degree() != kind.degree() {
            return Err(Error::DegreeMismatch { expected: kind.degree(), got: data.degree() });
        }
        if *data.ring() != kind.ring() {
            return Err(Error::RingMismatch(data.ring().to_string(), kind.ring().to_string()));
        }
        Ok(RelCocycle { kind, data })
    }

    pub fn function(map: &CoverMap, b: CechCochain, a: CechCochain) -> Result<Self> {
        Self::new(CocycleKind::Function, RelCechCochain::new(map, b, a)?)
    }

    pub fn line_bundle(map: &CoverMap, f: CechCochain, g: CechCochain) -> Result<Self> {
        Self::new(CocycleKind::LineBundle, RelCechCochain::new(map, f, g)?)
    }

    pub fn gerbe(map: &CoverMap, s: CechCochain, t: CechCochain) -> Result<Self> {
        Self::new(CocycleKind::Gerbe, RelCechCochain::new(map, s, t)?)
    }

    pub fn zero(kind: CocycleKind, map: &CoverMap) -> Self {
        RelCocycle { kind, data: RelCechCochain::zero(map, kind.degree(), &kind.ring()) }
    }

    pub fn kind(&self) -> CocycleKind {
        self.kind
    }

    pub fn data(&self) -> &RelCechCochain {
        &self.data
    }

    pub fn map(&self) -> &CoverMap {
        self.data.map()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.data.to_json();
        v["kind"] = json!(self.kind.tag());
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = CocycleKind::from_tag(v["kind"].as_str().ok_or_else(|| Error::Parse("missing \"kind\"".into()))?)?;
        Self::new(kind, RelCechCochain::from_json(v)?)
    }
}

/// A nonzero entry of `d(s,t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Defect {
    /// `"src"` for the `Φ^*t − ds` component, `"dst"` for `dt`.
    pub side: &'static str,
    pub simplex: Vec<String>,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub defects: Vec<Defect>,
}

impl Validation {
    pub fn valid(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let defects: Vec<Value> = self
            .defects
            .iter()
            .map(|d| json!({"side": d.side, "simplex": d.simplex, "value": rational_to_json(&d.value)}))
            .collect();
        json!({"valid": self.valid(), "defects": defects})
    }
}

/// Both cocycle conditions, `δt = 0` and `δs = Φ^*t`, checked exactly.
pub fn validate(c: &RelCocycle) -> Validation {
    let d = relative_diff(&c.data);
    let mut defects = Vec::new();
    for (side, part) in [("src", &d.s), ("dst", &d.t)] {
        let k = part.cover().nerve();
        for (simplex, q) in k.simplices(part.degree()).iter().zip(part.values()) {
            if !q.is_zero() {
                defects.push(Defect { side, simplex: k.names(simplex), value: q.clone() });
            }
        }
    }
    Validation { defects }
}

fn require_valid(c: &RelCocycle) -> Result<()> {
    if validate(c).valid() {
        Ok(())
    } else {
        Err(Error::NotACocycle)
    }
}

fn same_kind(c1: &RelCocycle, c2: &RelCocycle) -> Result<()> {
    if c1.kind != c2.kind {
        return Err(Error::Parse(format!("cannot combine a {} with a {}", c1.kind.tag(), c2.kind.tag())));
    }
    if c1.map() != c2.map() {
        return Err(Error::CoverMismatch);
    }
    Ok(())
}

/// Tensor product, written additively.
pub fn group_op(c1: &RelCocycle, c2: &RelCocycle) -> Result<RelCocycle> {
    same_kind(c1, c2)?;
    Ok(RelCocycle { kind: c1.kind, data: c1.data.add(&c2.data)? })
}

/// Dual, written additively.
pub fn inverse(c: &RelCocycle) -> RelCocycle {
    RelCocycle { kind: c.kind, data: c.data.neg() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub degree: i64,
    pub class: Class,
    pub group: AbGroup,
    /// `"H^q(Phi,Z)"` or `"H^q(N,Z)"`.
    pub basis: String,
}

impl Classification {
    pub fn to_json(&self) -> Value {
        let mut v = self.class.to_json();
        v["basis"] = json!(self.basis);
        v["group"] = self.group.to_json(false);
        v
    }
}

/// The class of a valid cocycle in `H^q(Φ; Z)`: directly for functions,
/// through the Bockstein map for angle-valued data.
pub fn classify(c: &RelCocycle) -> Result<Classification> {
    require_valid(c)?;
    let q = c.kind.class_degree();
    let basis = format!("H^{q}(Phi,Z)");
    match c.kind {
        CocycleKind::Function => {
            let group = relative_cohomology(c.map(), &CoeffRing::Int, q)?;
            let class = group.class_of(&c.data.to_vector()).ok_or(Error::NotACocycle)?;
            Ok(Classification { degree: q, class, group: group.summary(), basis })
        }
        _ => {
            let b = bockstein(&c.data)?;
            Ok(Classification { degree: q, class: b.class, group: b.group, basis })
        }
    }
}

/// Absolute Dixmier-Douady class of the target component `t` in `H^3(N; Z)`.
pub fn dixmier_douady(t: &CechCochain) -> Result<Classification> {
    if t.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, got: t.degree() });
    }
    let (_, class) = absolute_bockstein(t)?;
    let group = cohomology(t.cover(), &CoeffRing::Int, 3)?.summary();
    Ok(Classification { degree: 3, class, group, basis: "H^3(N,Z)".into() })
}

/// `(ρ, τ)` with `δ(ρ, τ) = c`, or the class obstructing it.
///
/// Over `Q/Z` a failed solve with zero integral class means the obstruction
/// is rational (a free summand of cohomology with real coefficients), which
/// the Bockstein image cannot see; that case is reported separately.
pub fn trivialize(c: &RelCocycle) -> Result<RelCechCochain> {
    require_valid(c)?;
    let n = c.kind.degree();
    let ring = c.kind.ring();
    let d = relative_cone_complex(c.map(), &CoeffRing::Int).int_diff(n - 1);
    let v = c.data.to_vector();
    let solved = match ring {
        CoeffRing::Int => {
            let b: Vec<BigInt> = v.iter().map(|q| q.to_integer()).collect();
            solve_int(&d, &b).map(|x| x.into_iter().map(BigRational::from_integer).collect::<Vec<_>>())
        }
        _ => solve_angle(&d, &v),
    };
    match solved {
        Some(x) => {
            let w = RelCechCochain::from_vector(c.map(), n - 1, &ring, &x)?;
            if relative_diff(&w) != c.data {
                return Err(Error::Internal("witness does not reproduce the cocycle".into()));
            }
            Ok(w)
        }
        None => {
            let class = classify(c)?.class;
            if class.is_zero() {
                Err(Error::RationalObstruction)
            } else {
                Err(Error::NontrivialClass(class))
            }
        }
    }
}

/// A quasi-line bundle for absolute gerbe data: `s` with `δs = t` over `Q/Z`.
pub fn quasi_line_bundle(t: &CechCochain) -> Result<CechCochain> {
    if *t.ring() != CoeffRing::AngleQ {
        return Err(Error::UnsupportedRing(t.ring().to_string(), "quasi-line bundles"));
    }
    let k = t.cover().nerve();
    if !k.boundary_matrix(t.degree() + 1).transpose().to_rational().mul_vec(t.values()).iter().all(|q| q.is_integer()) {
        return Err(Error::NotACocycle);
    }
    let d = k.boundary_matrix(t.degree()).transpose();
    match solve_angle(&d, t.values()) {
        Some(s) => CechCochain::from_values(t.cover(), t.degree() - 1, t.ring(), s),
        None => {
            let class = dixmier_douady(t)?.class;
            if class.is_zero() {
                Err(Error::RationalObstruction)
            } else {
                Err(Error::NontrivialClass(class))
            }
        }
    }
}

/// `Some(witness)` when `c1 − c2` is a relative coboundary.
pub fn is_equivalent(c1: &RelCocycle, c2: &RelCocycle) -> Result<Option<RelCechCochain>> {
    same_kind(c1, c2)?;
    match trivialize(&group_op(c1, &inverse(c2))?) {
        Ok(w) => Ok(Some(w)),
        Err(Error::NontrivialClass(_) | Error::RationalObstruction) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A canonical cocycle with the given class. Angle-valued kinds can only
/// realize torsion classes.
pub fn representative(kind: CocycleKind, map: &CoverMap, class: &Class) -> Result<RelCocycle> {
    let q = kind.class_degree();
    let group = relative_cohomology(map, &CoeffRing::Int, q)?;
    if class.orders != group.orders() {
        return Err(Error::ShapeMismatch(format!("class does not live in H^{q}(Phi,Z)")));
    }
    let coords: Vec<BigRational> = class.coords.iter().cloned().map(BigRational::from_integer).collect();
    let z = group.element(&coords);
    let n = kind.degree();
    if kind == CocycleKind::Function {
        let data = RelCechCochain::from_vector(map, n, &CoeffRing::Int, &z)?;
        return RelCocycle::new(kind, data);
    }
    let mut order = BigInt::one();
    for (c, d) in class.coords.iter().zip(&class.orders) {
        if c.is_zero() {
            continue;
        }
        if d.is_zero() {
            return Err(Error::NotTorsion);
        }
        order = order.lcm(&(d / d.gcd(c)));
    }
    let d = relative_cone_complex(map, &CoeffRing::Int).int_diff(n);
    let target: Vec<BigInt> = z.iter().map(|x| x.to_integer() * &order).collect();
    let w = solve_int(&d, &target).ok_or_else(|| Error::Internal("torsion multiple is not a coboundary".into()))?;
    let k = BigRational::from_integer(order);
    let u: Vec<BigRational> = w.into_iter().map(|x| reduce_mod_one(&(BigRational::from_integer(x) / &k))).collect();
    RelCocycle::new(kind, RelCechCochain::from_vector(map, n, &CoeffRing::AngleQ, &u)?)
}

/// `(β, α)`: a rational `(n−1)`-cochain on the source and an `n`-cochain on
/// the target of a simplicial map, standing in for a relative form.
#[derive(Debug, Clone, PartialEq)]
pub struct RelRealPair {
    pub map: SimplicialMap,
    pub degree: i64,
    pub alpha: Vec<BigRational>,
    pub beta: Vec<BigRational>,
}

impl RelRealPair {
    pub fn new(map: SimplicialMap, degree: i64, alpha: Vec<BigRational>, beta: Vec<BigRational>) -> Result<Self> {
        let (na, nb) = (map.dst().count(degree), map.src().count(degree - 1));
        if alpha.len() != na || beta.len() != nb {
            return Err(Error::ShapeMismatch(format!(
                "pair has ({}, {}) values, expected ({na}, {nb})",
                alpha.len(),
                beta.len()
            )));
        }
        Ok(RelRealPair { map, degree, alpha, beta })
    }

    /// Layout of the transposed chain cone: `−β` on `X_{n−1}`, then `α` on
    /// `Y_n`. With that sign, closed means `δα = 0` and `φ^*α = δβ`.
    pub fn to_vector(&self) -> Vec<BigRational> {
        self.beta.iter().map(|x| -x).chain(self.alpha.iter().cloned()).collect()
    }

    /// Adds the coboundary of `(β₀, α₀)` of degree `n − 1`.
    pub fn shifted(&self, lower: &[BigRational]) -> Result<Self> {
        let cone = cone_of_map(&self.map.chain_map(&CoeffRing::Rat));
        let d = cone.diff(self.degree).transpose();
        if lower.len() != d.cols() {
            return Err(Error::ShapeMismatch("coboundary input has the wrong length".into()));
        }
        let delta = d.mul_vec(lower);
        let nb = self.beta.len();
        let add = |a: &[BigRational], b: &[BigRational]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        Ok(RelRealPair {
            map: self.map.clone(),
            degree: self.degree,
            beta: add(&self.beta, &delta[..nb].iter().map(|x| -x).collect::<Vec<_>>()),
            alpha: add(&self.alpha, &delta[nb..]),
        })
    }

    fn closed(&self) -> bool {
        let cone = cone_of_map(&self.map.chain_map(&CoeffRing::Rat));
        cone.diff(self.degree + 1).transpose().mul_vec(&self.to_vector()).iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map.to_json(),
            "degree": self.degree,
            "alpha": named_values(self.map.dst(), self.degree, &self.alpha),
            "beta": named_values(self.map.src(), self.degree - 1, &self.beta),
        })
    }

    /// Missing simplices are zero.
    pub fn from_json(v: &Value) -> Result<Self> {
        let map = SimplicialMap::from_json(&v["map"])?;
        let n = v["degree"].as_i64().ok_or_else(|| Error::Parse("pair needs an integer \"degree\"".into()))?;
        let alpha = parse_named(map.dst(), n, &v["alpha"])?;
        let beta = parse_named(map.src(), n - 1, &v["beta"])?;
        RelRealPair::new(map, n, alpha, beta)
    }
}

fn named_values(k: &crate::simplicial::SimplicialComplex, n: i64, values: &[BigRational]) -> Value {
    crate::fixtures::simplex_values(k, n, values)
}

/// Values keyed by comma-joined vertex names, in any vertex order.
pub fn parse_named(k: &crate::simplicial::SimplicialComplex, n: i64, v: &Value) -> Result<Vec<BigRational>> {
    let mut out = vec![BigRational::zero(); k.count(n)];
    let Some(obj) = v.as_object() else {
        return if v.is_null() { Ok(out) } else { Err(Error::Parse("cochain values must be an object".into())) };
    };
    for (key, val) in obj {
        let tuple = key.split(',').map(|s| k.vertex_index(s.trim())).collect::<Result<Vec<_>>>()?;
        if tuple.len() as i64 != n + 1 {
            return Err(Error::DegreeMismatch { expected: n, got: tuple.len() as i64 - 1 });
        }
        let (i, sign) = k.chain_of(&tuple)?.ok_or_else(|| Error::Parse(format!("{key} is not a simplex")))?;
        let q = crate::coeffs::parse_rational(val)?;
        out[i] = if sign < 0 { -q } else { q };
    }
    Ok(out)
}

/// Pairing of a relative class with one generator `(θ, η)` of `H_n(φ; Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorPairing {
    /// `0` for a free generator.
    pub order: BigInt,
    pub theta: Vec<(Vec<String>, BigRational)>,
    pub eta: Vec<(Vec<String>, BigRational)>,
    pub value: BigRational,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityReport {
    pub degree: i64,
    pub pairings: Vec<GeneratorPairing>,
}

impl IntegralityReport {
    pub fn integral(&self) -> bool {
        self.pairings.iter().all(|p| p.integral)
    }

    pub fn to_json(&self) -> Value {
        let chain = |c: &[(Vec<String>, BigRational)]| -> Value {
            Value::Object(c.iter().map(|(s, q)| (s.join(","), rational_to_json(q))).collect())
        };
        let pairings: Vec<Value> = self
            .pairings
            .iter()
            .map(|p| {
                json!({
                    "order": crate::coeffs::int_to_json(&p.order),
                    "theta": chain(&p.theta),
                    "eta": chain(&p.eta),
                    "value": rational_to_json(&p.value),
                    "integral": p.integral,
                })
            })
            .collect();
        json!({"integral": self.integral(), "degree": self.degree, "pairings": pairings})
    }
}

fn support(k: &crate::simplicial::SimplicialComplex, n: i64, v: &[BigRational]) -> Vec<(Vec<String>, BigRational)> {
    k.simplices(n).iter().zip(v).filter(|(_, q)| !q.is_zero()).map(|(s, q)| (k.names(s), q.clone())).collect()
}

/// Pairs `(β, α)` with every generator `(θ, η)` of `H_n(φ; Z)` as
/// `⟨α, η⟩ − ⟨β, θ⟩` (the integral of `α` over the target chain minus that
/// of `β` over the source chain). The class is integral when every free
/// pairing is an integer; a torsion generator of order `d` is judged on
/// `d` times its pairing.
pub fn is_integral(p: &RelRealPair) -> Result<IntegralityReport> {
    if !p.closed() {
        return Err(Error::NotClosed);
    }
    let n = p.degree;
    let f = p.map.chain_map(&CoeffRing::Int);
    let group = homology_at(&cone_of_map(&f), n)?;
    let nb = p.beta.len();
    let dot = |u: &[BigRational], v: &[BigRational]| u.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
    let pairings = group
        .generators()
        .into_iter()
        .zip(group.orders())
        .map(|(g, order)| {
            let (theta, eta) = g.split_at(nb);
            let value = dot(&p.alpha, eta) - dot(&p.beta, theta);
            let judged = if order.is_zero() { value.clone() } else { &value * BigRational::from_integer(order.clone()) };
            GeneratorPairing {
                theta: support(p.map.src(), n - 1, theta),
                eta: support(p.map.dst(), n, eta),
                integral: judged.is_integer(),
                order,
                value,
            }
        })
        .collect();
    Ok(IntegralityReport { degree: n, pairings })
}

/// The Bohr-Sommerfeld condition for `ω` on the target of an isotropic map:
/// integrality of the relative class of `(0, ω)`. Values of `ω` are taken
/// as already normalized.
pub fn bohr_sommerfeld(omega: &[BigRational], phi: &SimplicialMap) -> Result<IntegralityReport> {
    let k = phi.dst();
    if omega.len() != k.count(2) {
        return Err(Error::ShapeMismatch(format!("omega has {} values for {} triangles", omega.len(), k.count(2))));
    }
    if !k.boundary_matrix(3).transpose().to_rational().mul_vec(omega).iter().all(Zero::is_zero) {
        return Err(Error::NotClosed);
    }
    if !phi.chain_matrix(2).transpose().to_rational().mul_vec(omega).iter().all(Zero::is_zero) {
        return Err(Error::NotIsotropic);
    }
    let beta = vec![BigRational::zero(); phi.src().count(1)];
    is_integral(&RelRealPair::new(phi.clone(), 2, omega.to_vec(), beta)?)
}
