//! Finite simplicial complexes and maps, their (augmented) chain complexes,
//! the prism model of the mapping cylinder, the mapping cone space, the cone
//! operator and the chain-level comparison `l` between the algebraic and the
//! topological mapping cone. Nerves of covers live here too.
//!
//! Simplices are sorted vertex-index lists; orientation comes from the vertex
//! order fixed at construction.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::chain::{cone_of_map, vanishes_over, ComplexMap, GradedComplex};
use crate::coeffs::CoeffRing;
use crate::error::{Error, Result};
use crate::homology::{homology, quasi_iso, AbGroup};
use crate::matrix::{IntMatrix, RatMatrix};

/// Sorts a vertex tuple, returning the permutation sign, or `None` when a
/// vertex repeats (a degenerate simplex).
pub fn oriented(tuple: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = tuple.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// `simplices[k]` lists the k-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// The downward closure of `facets`. Isolated vertices are kept.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all = BTreeSet::new();
        for f in facets {
            let Some((f, _)) = oriented(f) else {
                return Err(Error::Parse(format!("facet {f:?} repeats a vertex")));
            };
            if let Some(&bad) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::UnknownVertex(bad.to_string()));
            }
            for mask in 1u64..(1 << f.len()) {
                all.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
            }
        }
        for v in 0..vertices.len() {
            all.insert(vec![v]);
        }
        Ok(Self::from_closed(vertices, all))
    }

    pub fn from_named_facets(vertices: &[&str], facets: &[&[&str]]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let facets = facets
            .iter()
            .map(|f| f.iter().map(|v| lookup(&names, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(names, &facets)
    }

    fn from_closed(vertices: Vec<String>, all: BTreeSet<Vec<usize>>) -> Self {
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        let mut index = HashMap::new();
        for layer in &simplices {
            for (i, s) in layer.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { vertices, simplices, index }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        lookup(&self.vertices, name)
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn count(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.simplices.get(k as usize).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: i64) -> &[Vec<usize>] {
        if k < 0 {
            return &[];
        }
        self.simplices.get(k as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index.contains_key(simplex)
    }

    pub fn names(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Maximal simplices, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut cofaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for layer in self.simplices.iter().skip(1) {
            for s in layer {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    cofaces.insert(f);
                }
            }
        }
        self.simplices.iter().flatten().filter(|s| !cofaces.contains(*s)).cloned().collect()
    }

    /// `∂_k` as an integer matrix `count(k-1) × count(k)`.
    pub fn boundary_matrix(&self, k: i64) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.count(k - 1), self.count(k));
        if k < 1 {
            return m;
        }
        for (j, s) in self.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = self.index[&face];
                m[(r, j)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    fn complex(&self, ring: &CoeffRing, augmented: bool) -> GradedComplex {
        let mut ranks = BTreeMap::new();
        let mut diff = BTreeMap::new();
        for k in 0..=self.dim() {
            ranks.insert(k, self.count(k));
            diff.insert(k, self.boundary_matrix(k).to_rational());
        }
        if augmented {
            ranks.insert(-1, 1);
            diff.insert(0, RatMatrix::from_fn(1, self.count(0), |_, _| BigRational::one()));
        }
        GradedComplex::new(ring.clone(), ranks, diff).expect("simplicial boundary squares to zero")
    }

    /// Simplicial chains with the alternating-sum boundary.
    pub fn chain_complex(&self, ring: &CoeffRing) -> GradedComplex {
        self.complex(ring, false)
    }

    /// Chains augmented by `ε : C_0 → R` in degree `-1`; its homology is the
    /// reduced homology.
    pub fn augmented_chain_complex(&self, ring: &CoeffRing) -> GradedComplex {
        self.complex(ring, true)
    }

    /// Reduced homology in degrees `0..=dim`.
    pub fn reduced_homology(&self, ring: &CoeffRing) -> Result<BTreeMap<i64, AbGroup>> {
        let h = homology(&self.augmented_chain_complex(ring))?;
        Ok((0..=self.dim()).map(|k| (k, h.get(&k).map_or_else(trivial, |g| g.summary()))).collect())
    }

    /// Oriented chain (index, sign) of a vertex tuple; `None` when degenerate.
    pub fn chain_of(&self, tuple: &[usize]) -> Result<Option<(usize, i64)>> {
        let Some((s, sign)) = oriented(tuple) else {
            return Ok(None);
        };
        match self.index_of(&s) {
            Some(i) => Ok(Some((i, sign))),
            None => Err(Error::InvalidSimplicialMap(self.names(&s))),
        }
    }

    pub fn to_json(&self) -> Value {
        let facets: Vec<Value> = self.facets().iter().map(|f| json!(self.names(f))).collect();
        json!({"vertices": self.vertices, "facets": facets})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let vertices: Vec<String> = v["vertices"]
            .as_array()
            .ok_or_else(|| Error::Parse("complex needs a \"vertices\" array".into()))?
            .iter()
            .map(name_of)
            .collect::<Result<_>>()?;
        if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
            return Err(Error::Parse("duplicate vertex names".into()));
        }
        let facets = v["facets"]
            .as_array()
            .ok_or_else(|| Error::Parse("complex needs a \"facets\" array".into()))?
            .iter()
            .map(|f| {
                f.as_array()
                    .ok_or_else(|| Error::Parse("facet must be an array".into()))?
                    .iter()
                    .map(|x| lookup(&vertices, &name_of(x)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(vertices, &facets)
    }
}

fn trivial() -> AbGroup {
    AbGroup { free_rank: 0, torsion: Vec::new(), generators: Vec::new() }
}

fn name_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("vertex name must be a string, got {v}"))),
    }
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialMap {
    src: SimplicialComplex,
    dst: SimplicialComplex,
    vmap: Vec<usize>,
}

impl SimplicialMap {
    /// Checks that every simplex lands on a simplex (possibly of lower dimension).
    pub fn new(src: SimplicialComplex, dst: SimplicialComplex, vmap: Vec<usize>) -> Result<Self> {
        if vmap.len() != src.vertices.len() {
            return Err(Error::ShapeMismatch(format!("vertex map has {} entries for {} vertices", vmap.len(), src.vertices.len())));
        }
        if let Some(&bad) = vmap.iter().find(|&&w| w >= dst.vertices.len()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        for s in src.simplices.iter().flatten() {
            let image: BTreeSet<usize> = s.iter().map(|&v| vmap[v]).collect();
            if !dst.contains(&image.into_iter().collect::<Vec<_>>()) {
                return Err(Error::InvalidSimplicialMap(src.names(s)));
            }
        }
        Ok(SimplicialMap { src, dst, vmap })
    }

    pub fn from_names(src: SimplicialComplex, dst: SimplicialComplex, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut vmap = vec![usize::MAX; src.vertices.len()];
        for (v, w) in pairs {
            vmap[src.vertex_index(v)?] = dst.vertex_index(w)?;
        }
        if let Some(i) = vmap.iter().position(|&w| w == usize::MAX) {
            return Err(Error::Parse(format!("vertex {} is not mapped", src.vertices[i])));
        }
        Self::new(src, dst, vmap)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        SimplicialMap { src: k.clone(), dst: k.clone(), vmap: (0..k.vertices.len()).collect() }
    }

    pub fn src(&self) -> &SimplicialComplex {
        &self.src
    }

    pub fn dst(&self) -> &SimplicialComplex {
        &self.dst
    }

    pub fn vmap(&self) -> &[usize] {
        &self.vmap
    }

    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if g.src != self.dst {
            return Err(Error::ShapeMismatch("composition of simplicial maps with mismatched complexes".into()));
        }
        Ok(SimplicialMap { src: self.src.clone(), dst: g.dst.clone(), vmap: self.vmap.iter().map(|&v| g.vmap[v]).collect() })
    }

    /// `φ_k` as an integer matrix; degenerate images go to zero.
    pub fn chain_matrix(&self, k: i64) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dst.count(k), self.src.count(k));
        for (j, s) in self.src.simplices(k).iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| self.vmap[v]).collect();
            if let Some((i, sign)) = self.dst.chain_of(&image).expect("validated at construction") {
                m[(i, j)] = BigInt::from(sign);
            }
        }
        m
    }

    fn chain_map_impl(&self, ring: &CoeffRing, augmented: bool) -> ComplexMap {
        let mut mats: BTreeMap<i64, RatMatrix> =
            (0..=self.src.dim()).map(|k| (k, self.chain_matrix(k).to_rational())).collect();
        let (src, dst) = if augmented {
            mats.insert(-1, RatMatrix::identity(1));
            (self.src.augmented_chain_complex(ring), self.dst.augmented_chain_complex(ring))
        } else {
            (self.src.chain_complex(ring), self.dst.chain_complex(ring))
        };
        ComplexMap::new(src, dst, mats).expect("simplicial maps induce chain maps")
    }

    pub fn chain_map(&self, ring: &CoeffRing) -> ComplexMap {
        self.chain_map_impl(ring, false)
    }

    pub fn augmented_chain_map(&self, ring: &CoeffRing) -> ComplexMap {
        self.chain_map_impl(ring, true)
    }

    pub fn to_json(&self) -> Value {
        let vmap: serde_json::Map<String, Value> = self
            .vmap
            .iter()
            .enumerate()
            .map(|(v, &w)| (self.src.vertices[v].clone(), json!(self.dst.vertices[w])))
            .collect();
        json!({"src": self.src.to_json(), "dst": self.dst.to_json(), "vmap": vmap})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let src = SimplicialComplex::from_json(&v["src"])?;
        let dst = SimplicialComplex::from_json(&v["dst"])?;
        let obj = v["vmap"].as_object().ok_or_else(|| Error::Parse("map needs a \"vmap\" object".into()))?;
        let pairs = obj.iter().map(|(k, w)| Ok((k.clone(), name_of(w)?))).collect::<Result<Vec<_>>>()?;
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Self::from_names(src, dst, &refs)
    }
}

fn chain_from_terms(k: &SimplicialComplex, dim: i64, terms: &[(Vec<usize>, i64)]) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); k.count(dim)];
    for (tuple, sign) in terms {
        if let Some((i, s)) = k.chain_of(tuple)? {
            v[i] += BigInt::from(s * sign);
        }
    }
    Ok(v)
}

/// Vertex layout shared by the cylinder and the cone space: an optional apex,
/// then the bottom copy of `X`, then `Y`.
struct Layout {
    apex: bool,
    nx: usize,
}

impl Layout {
    fn apex(&self) -> usize {
        0
    }

    fn x(&self, v: usize) -> usize {
        v + usize::from(self.apex)
    }

    fn y(&self, w: usize) -> usize {
        w + self.nx + usize::from(self.apex)
    }
}

/// `Cyl_φ` built from the prisms `(x_{v_0}…x_{v_i}, φ(v_i)…φ(v_n))` of every
/// simplex of `X`, with the top of each prism already glued to `Y`.
#[derive(Debug, Clone)]
pub struct MappingCylinder {
    pub complex: SimplicialComplex,
    /// `X → Cyl`, onto the bottom copy.
    pub src_inclusion: SimplicialMap,
    pub dst_inclusion: SimplicialMap,
    /// `Cyl → Y`, collapsing each prism onto its top.
    pub retraction: SimplicialMap,
    /// False when two different nondegenerate prisms share a vertex set, in
    /// which case the model identifies cells the quotient keeps apart.
    pub faithful: bool,
}

fn prism_tuples(phi: &SimplicialMap, layout: &Layout, s: &[usize]) -> Vec<(Vec<usize>, i64)> {
    (0..s.len())
        .map(|i| {
            let mut t: Vec<usize> = s[..=i].iter().map(|&v| layout.x(v)).collect();
            t.extend(s[i..].iter().map(|&v| layout.y(phi.vmap[v])));
            (t, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

fn build_glued(phi: &SimplicialMap, apex: bool) -> (SimplicialComplex, Layout, bool) {
    let (x, y) = (&phi.src, &phi.dst);
    let layout = Layout { apex, nx: x.vertices.len() };
    let mut names = Vec::new();
    if apex {
        names.push("*".to_string());
    }
    names.extend(x.vertices.iter().map(|v| format!("x:{v}")));
    names.extend(y.vertices.iter().map(|w| format!("y:{w}")));
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut faithful = true;
    for s in x.simplices.iter().flatten() {
        for (t, _) in prism_tuples(phi, &layout, s) {
            if let Some((sorted, _)) = oriented(&t) {
                faithful &= seen.insert(sorted.clone());
                facets.push(sorted);
            } else {
                facets.push(t.into_iter().collect::<BTreeSet<_>>().into_iter().collect());
            }
        }
        if apex {
            let mut c = vec![layout.apex()];
            c.extend(s.iter().map(|&v| layout.x(v)));
            facets.push(c);
        }
    }
    for s in y.simplices.iter().flatten() {
        facets.push(s.iter().map(|&w| layout.y(w)).collect());
    }
    let complex = SimplicialComplex::from_facets(names, &facets).expect("glued facets are valid");
    (complex, layout, faithful)
}

pub fn mapping_cylinder(phi: &SimplicialMap) -> MappingCylinder {
    let (complex, layout, faithful) = build_glued(phi, false);
    let (x, y) = (&phi.src, &phi.dst);
    let inc_x = (0..x.vertices.len()).map(|v| layout.x(v)).collect();
    let inc_y = (0..y.vertices.len()).map(|w| layout.y(w)).collect();
    let retract = (0..x.vertices.len()).map(|v| phi.vmap[v]).chain(0..y.vertices.len()).collect();
    MappingCylinder {
        src_inclusion: SimplicialMap::new(x.clone(), complex.clone(), inc_x).expect("bottom copy is a subcomplex"),
        dst_inclusion: SimplicialMap::new(y.clone(), complex.clone(), inc_y).expect("Y is a subcomplex"),
        retraction: SimplicialMap::new(complex.clone(), y.clone(), retract).expect("prisms collapse onto simplices of Y"),
        complex,
        faithful,
    }
}

/// `Cone_φ`: the cylinder with its bottom copy of `X` coned off to the apex
/// `*` (homotopy equivalent to collapsing it).
#[derive(Debug, Clone)]
pub struct MappingConeSpace {
    pub complex: SimplicialComplex,
    pub dst_inclusion: SimplicialMap,
    pub faithful: bool,
    layout_nx: usize,
}

pub fn mapping_cone_space(phi: &SimplicialMap) -> MappingConeSpace {
    let (complex, layout, faithful) = build_glued(phi, true);
    let inc_y = (0..phi.dst.vertices.len()).map(|w| layout.y(w)).collect();
    MappingConeSpace {
        dst_inclusion: SimplicialMap::new(phi.dst.clone(), complex.clone(), inc_y).expect("Y is a subcomplex"),
        complex,
        faithful,
        layout_nx: layout.nx,
    }
}

impl MappingConeSpace {
    /// `h : C̃_{n-1}(X) → C̃_n(Cone_φ)`, the cone on the bottom copy followed by
    /// the prism: `h(σ) = [*, x_σ] + P(σ)` and `h(∅) = [*]`. It satisfies
    /// `∂h + h∂ = i_* φ_*` on augmented chains.
    pub fn cone_prism_operator(&self, phi: &SimplicialMap, n: i64) -> Result<IntMatrix> {
        let layout = Layout { apex: true, nx: self.layout_nx };
        let k = &self.complex;
        let cols = if n == 0 {
            vec![chain_from_terms(k, 0, &[(vec![layout.apex()], 1)])?]
        } else {
            phi.src
                .simplices(n - 1)
                .iter()
                .map(|s| {
                    let mut terms = prism_tuples(phi, &layout, s);
                    let mut c = vec![layout.apex()];
                    c.extend(s.iter().map(|&v| layout.x(v)));
                    terms.push((c, 1));
                    chain_from_terms(k, n, &terms)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(IntMatrix::from_columns(k.count(n), &cols))
    }
}

/// Cone operator on the simplicial cone `* ∗ K` (apex first in the order):
/// `h(σ) = [*, σ]` and `h(∅) = [*]` on augmented chains.
#[derive(Debug, Clone)]
pub struct ConeOperator {
    pub cone: SimplicialComplex,
    pub inclusion: SimplicialMap,
    /// `h[n] : C̃_{n-1}(K) → C̃_n(Cone K)` for `n = 0..=dim K + 1`.
    pub h: BTreeMap<i64, IntMatrix>,
}

pub fn cone_operator(k: &SimplicialComplex) -> ConeOperator {
    let mut names = vec!["*".to_string()];
    names.extend(k.vertices.iter().cloned());
    let facets: Vec<Vec<usize>> = k
        .facets()
        .iter()
        .map(|f| std::iter::once(0).chain(f.iter().map(|v| v + 1)).collect())
        .chain(std::iter::once(vec![0]))
        .collect();
    let cone = SimplicialComplex::from_facets(names, &facets).expect("cone facets are valid");
    let inclusion = SimplicialMap::new(k.clone(), cone.clone(), (1..=k.vertices.len()).collect()).expect("base is a subcomplex");
    let mut h = BTreeMap::new();
    h.insert(0, IntMatrix::from_columns(cone.count(0), &[chain_from_terms(&cone, 0, &[(vec![0], 1)]).expect("apex")]));
    for n in 1..=k.dim() + 1 {
        let cols: Vec<Vec<BigInt>> = k
            .simplices(n - 1)
            .iter()
            .map(|s| {
                let t: Vec<usize> = std::iter::once(0).chain(s.iter().map(|v| v + 1)).collect();
                chain_from_terms(&cone, n, &[(t, 1)]).expect("joins with the apex are simplices")
            })
            .collect();
        h.insert(n, IntMatrix::from_columns(cone.count(n), &cols));
    }
    ConeOperator { cone, inclusion, h }
}

impl ConeOperator {
    fn h_at(&self, n: i64, base: &GradedComplex) -> RatMatrix {
        self.h
            .get(&n)
            .map(IntMatrix::to_rational)
            .unwrap_or_else(|| RatMatrix::zeros(self.cone.count(n).max(usize::from(n == -1)), base.rank(n - 1)))
    }

    /// Degrees where `∂h + h∂ ≠ k` on augmented integer chains.
    pub fn failures(&self) -> Vec<i64> {
        let base = self.inclusion.src().augmented_chain_complex(&CoeffRing::Int);
        let cone = self.cone.augmented_chain_complex(&CoeffRing::Int);
        let k = self.inclusion.augmented_chain_map(&CoeffRing::Int);
        (-1..=self.cone.dim())
            .filter(|&n| {
                let lhs = cone
                    .diff(n + 1)
                    .try_mul(&self.h_at(n + 1, &base))
                    .and_then(|a| a.try_add(&self.h_at(n, &base).try_mul(&base.diff(n))?));
                lhs.map(|l| l != k.mat(n)).unwrap_or(true)
            })
            .collect()
    }
}

/// Outcome of comparing `H_•(φ)` with `H̃_•(Cone_φ)`.
#[derive(Debug, Clone)]
pub struct ConeComparison {
    pub algebraic: BTreeMap<i64, AbGroup>,
    pub space: BTreeMap<i64, AbGroup>,
    /// `∂l + l∂ = 0` for the raw map `l(x, y) = j_*h(x) − i_*(y)`.
    pub anticommutes: bool,
    /// `(−1)^n l_n` is a chain map.
    pub twisted_chain_map: bool,
    /// The twisted map has acyclic cone.
    pub quasi_iso: bool,
    pub faithful: bool,
}

impl ConeComparison {
    pub fn iso(&self) -> bool {
        self.anticommutes
            && self.twisted_chain_map
            && self.quasi_iso
            && self.algebraic.len() == self.space.len()
            && self.algebraic.iter().all(|(n, g)| self.space.get(n).is_some_and(|s| s.isomorphic(g)))
    }

    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> = self
            .algebraic
            .iter()
            .map(|(n, g)| {
                let s = &self.space[n];
                (n.to_string(), json!({"relative": g.to_json(false), "cone_space": s.to_json(false), "match": g.isomorphic(s)}))
            })
            .collect();
        json!({
            "iso": self.iso(),
            "degrees": degrees,
            "anticommutes": self.anticommutes,
            "twisted_chain_map": self.twisted_chain_map,
            "quasi_iso": self.quasi_iso,
            "faithful": self.faithful,
        })
    }
}

pub fn compare_cones(phi: &SimplicialMap, ring: &CoeffRing) -> Result<ConeComparison> {
    let space = mapping_cone_space(phi);
    let f = phi.augmented_chain_map(ring);
    let cone = cone_of_map(&f);
    let target = space.complex.augmented_chain_complex(ring);
    let plain = cone_of_map(&phi.chain_map(ring));
    let inc_y = space.dst_inclusion.augmented_chain_map(ring);

    let top = cone.support().map_or(0, |s| s.1).max(space.complex.dim());
    let mut raw = BTreeMap::new();
    for n in -1..=top {
        let h = if n >= 0 { space.cone_prism_operator(phi, n)?.to_rational() } else { RatMatrix::zeros(1, 0) };
        let h = if n > space.complex.dim() { RatMatrix::zeros(0, phi.src.count(n - 1)) } else { h };
        raw.insert(n, h.hstack(&inc_y.mat(n).neg())?);
    }
    let at = |n: i64| raw.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(target.rank(n), cone.rank(n)));
    let mut anticommutes = true;
    for n in -1..=top + 1 {
        let s = target.diff(n).try_mul(&at(n))?.try_add(&at(n - 1).try_mul(&cone.diff(n))?)?;
        anticommutes &= vanishes_over(ring, &s);
    }
    let twisted: BTreeMap<i64, RatMatrix> =
        raw.iter().map(|(&n, m)| (n, if n.rem_euclid(2) == 0 { m.clone() } else { m.neg() })).collect();
    let (twisted_chain_map, quasi) = match ComplexMap::new(cone.clone(), target, twisted) {
        Ok(l) => (true, quasi_iso(&l)?),
        Err(Error::InvalidChainMap(_)) => (false, false),
        Err(e) => return Err(e),
    };

    let rel = homology(&cone)?;
    let rel_plain = homology(&plain)?;
    let space_h = space.complex.reduced_homology(ring)?;
    let mut algebraic = BTreeMap::new();
    for n in 0..=top {
        let g = rel.get(&n).map_or_else(trivial, |g| g.summary());
        let p = rel_plain.get(&n).map_or_else(trivial, |g| g.summary());
        if !g.isomorphic(&p) {
            return Err(Error::Internal(format!("augmentation changed H_{n}(f)")));
        }
        algebraic.insert(n, p);
    }
    let space_groups = (0..=top).map(|n| (n, space_h.get(&n).cloned().unwrap_or_else(trivial))).collect();
    Ok(ConeComparison {
        algebraic,
        space: space_groups,
        anticommutes,
        twisted_chain_map,
        quasi_iso: quasi,
        faithful: space.faithful,
    })
}

/// Nerve of a cover: vertices are the sets, simplices the declared nonempty
/// intersections (every face of a declared intersection must be declared).
pub fn nerve(sets: Vec<String>, intersections: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let mut declared = BTreeSet::new();
    for i in intersections {
        let Some((s, _)) = oriented(i) else {
            return Err(Error::Parse(format!("intersection {i:?} repeats a set")));
        };
        if let Some(&bad) = s.iter().find(|&&v| v >= sets.len()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        declared.insert(s);
    }
    for s in &declared {
        if s.len() <= 2 {
            continue;
        }
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            if !declared.contains(&face) {
                return Err(Error::InconsistentIntersections(face.iter().map(|&v| sets[v].clone()).collect()));
            }
        }
    }
    for v in 0..sets.len() {
        declared.insert(vec![v]);
    }
    Ok(SimplicialComplex::from_closed(sets, declared))
}
