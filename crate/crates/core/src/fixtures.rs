//! Named fixtures: circles, degree-`d` circle maps, the disk, the suspended
//! degree-2 map, the projective plane, cover maps and a few cocycles.
//!
//! Everything here is built deterministically from small integer data, so the
//! emitted JSON is byte-stable.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::cech::{Cover, CoverMap, RelCechCochain, CechCochain};
use crate::coeffs::CoeffRing;
use crate::error::{Error, Result};
use crate::lattice::solve_angle;
use crate::simplicial::{oriented, SimplicialComplex, SimplicialMap};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn cycle(prefix: &str, n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_facets(names(prefix, n), &facets).expect("cycle graph")
}

/// `FIX-Sd`: the cycle graph on `3d` vertices `v0, v1, …`.
pub fn circle(d: usize) -> SimplicialComplex {
    assert!(d >= 1, "circle needs d >= 1");
    cycle("v", 3 * d)
}

/// The target of every `FIX-Dd`: a triangle boundary on `w0, w1, w2`.
pub fn target_circle() -> SimplicialComplex {
    cycle("w", 3)
}

/// `FIX-Dd`: `v_i ↦ w_{i mod 3}` from `FIX-Sd` for `d ≥ 1`; for `d = 0` the
/// constant map from the triangle onto `w0`.
pub fn degree_map(d: usize) -> SimplicialMap {
    if d == 0 {
        return SimplicialMap::new(circle(1), target_circle(), vec![0; 3]).expect("constant map");
    }
    SimplicialMap::new(circle(d), target_circle(), (0..3 * d).map(|i| i % 3).collect()).expect("wraps d times")
}

/// `FIX-DISK`: the hexagon `FIX-S2` included into the hexagon coned at `c`.
pub fn disk() -> SimplicialMap {
    let hex = circle(2);
    let mut v = names("v", 6);
    v.push("c".into());
    let facets: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6, 6]).collect();
    let d = SimplicialComplex::from_facets(v, &facets).expect("disk");
    SimplicialMap::new(hex, d, (0..6).collect()).expect("boundary inclusion")
}

/// Orientation of the sorted disk triangles coherent with `[v_i, v_{i+1}, c]`.
pub fn disk_orientation() -> Vec<i64> {
    let map = disk();
    let k = map.dst();
    k.simplices(2)
        .iter()
        .map(|s| {
            let i = (0..6).find(|&i| oriented(&[i, (i + 1) % 6, 6]).is_some_and(|(t, _)| &t == s)).expect("disk face");
            oriented(&[i, (i + 1) % 6, 6]).expect("nondegenerate").1
        })
        .collect()
}

/// A 2-cochain on the disk whose coherent total is `total`, spread evenly.
pub fn disk_area(total: &BigRational) -> Vec<BigRational> {
    let share = total / BigRational::from_integer(6.into());
    disk_orientation().into_iter().map(|e| &share * BigRational::from_integer(e.into())).collect()
}

fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    let mut v = k.vertices().to_vec();
    let (n, s) = (v.len(), v.len() + 1);
    v.push("N".into());
    v.push("S".into());
    let mut facets = Vec::new();
    for f in k.facets() {
        for pole in [n, s] {
            let mut g = f.clone();
            g.push(pole);
            facets.push(g);
        }
    }
    SimplicialComplex::from_facets(v, &facets).expect("suspension")
}

/// `FIX-SUSP-D2`: the unreduced suspension of `FIX-D2`, a degree-2 map of spheres.
pub fn suspended_degree_two() -> SimplicialMap {
    let base = degree_map(2);
    let (src, dst) = (suspension(base.src()), suspension(base.dst()));
    let mut vmap = base.vmap().to_vec();
    let m = base.dst().vertices().len();
    vmap.push(m);
    vmap.push(m + 1);
    SimplicialMap::new(src, dst, vmap).expect("poles go to poles")
}

/// The six-vertex projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let facets: [[usize; 3]; 10] =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
    SimplicialComplex::from_facets((1..=6).map(|i| i.to_string()).collect(), &facets).expect("RP2")
}

/// Three arcs covering a circle, pairwise overlapping, no triple overlap.
pub fn arc_cover() -> Cover {
    Cover::new(names("U", 3), &[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("arc cover")
}

/// The disk covered by three boundary collars `A_i` and an interior set `B`.
pub fn disk_cover() -> Cover {
    let mut sets = names("A", 3);
    sets.push("B".into());
    let mut inter = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
    for i in 0..3 {
        inter.push(vec![i, 3]);
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        inter.push(vec![i, j, 3]);
    }
    Cover::new(sets, &inter).expect("disk cover")
}

/// `U_i ↦ A_i`: the boundary circle into the disk.
pub fn disk_cover_map() -> CoverMap {
    CoverMap::new(arc_cover(), disk_cover(), vec![0, 1, 2]).expect("arcs land in collars")
}

/// The arcs mapped to the one-set cover of a point.
pub fn point_cover_map() -> CoverMap {
    let pt = Cover::new(vec!["P".into()], &[]).expect("point cover");
    CoverMap::new(arc_cover(), pt, vec![0; 3]).expect("constant")
}

/// Star covers of `FIX-SUSP-D2`.
pub fn suspended_cover_map() -> CoverMap {
    CoverMap::from_simplicial(&suspended_degree_two())
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `(s, t)` of degree `n` over `U1` with `t` equal to `1/2` on the first
/// top simplex of the target and `s` solving `δs = Φ^*t`.
fn half_angle(map: &CoverMap, n: i64) -> RelCechCochain {
    let ring = CoeffRing::AngleQ;
    let mut t = vec![BigRational::from_integer(0.into()); map.dst().count(n)];
    t[0] = half();
    let pulled = map.pullback_matrix(n).to_rational().mul_vec(&t);
    let d = map.src().nerve().boundary_matrix(n).transpose();
    let s = solve_angle(&d, &pulled).expect("the pulled-back half angle is a coboundary");
    let s = CechCochain::from_values(map.src(), n - 1, &ring, s).expect("shape");
    let t = CechCochain::from_values(map.dst(), n, &ring, t).expect("shape");
    RelCechCochain::new(map, s, t).expect("matching covers")
}

/// The half-angle relative gerbe on the `FIX-SUSP-D2` star covers.
pub fn half_gerbe() -> RelCechCochain {
    half_angle(&suspended_cover_map(), 2)
}

/// The half-angle relative line bundle on the `FIX-D2` star covers.
pub fn half_line_bundle() -> RelCechCochain {
    half_angle(&CoverMap::from_simplicial(&degree_map(2)), 1)
}

/// `(b, a) = (0, winding)` on the star covers of the constant map `FIX-D0`.
pub fn winding_function() -> RelCechCochain {
    let map = CoverMap::from_simplicial(&degree_map(0));
    let ring = CoeffRing::Int;
    let mut a = CechCochain::zero(map.dst(), 1, &ring);
    a.set(&[0, 1], &crate::coeffs::Scalar::int(1)).expect("edge w0w1");
    let b = CechCochain::zero(map.src(), 0, &ring);
    RelCechCochain::new(&map, b, a).expect("matching covers")
}

fn cocycle_json(kind: &str, c: &RelCechCochain) -> Value {
    let mut v = c.to_json();
    v["kind"] = json!(kind);
    v
}

/// `{"map", "degree", "omega"}` for the Bohr-Sommerfeld check on the disk.
fn omega_json(total: &BigRational) -> Value {
    let map = disk();
    json!({"map": map.to_json(), "degree": 2, "omega": simplex_values(map.dst(), 2, &disk_area(total))})
}

/// Cochain values keyed by comma-joined vertex names.
pub fn simplex_values(k: &SimplicialComplex, n: i64, values: &[BigRational]) -> Value {
    let m: serde_json::Map<String, Value> = k
        .simplices(n)
        .iter()
        .zip(values)
        .map(|(s, q)| (k.names(s).join(","), crate::coeffs::rational_to_json(q)))
        .collect();
    Value::Object(m)
}

/// Names of every fixture, in emission order.
pub fn names_list() -> Vec<String> {
    let mut out: Vec<String> = (1..=3).map(|d| format!("fix-s{d}")).collect();
    out.extend((0..=6).map(|d| format!("fix-d{d}")));
    out.extend(
        [
            "fix-disk",
            "fix-susp-d2",
            "rp2",
            "cover-disk",
            "cover-circle-point",
            "cover-susp-d2",
            "function-winding",
            "line-bundle-half",
            "gerbe-half",
            "omega-disk-1",
            "omega-disk-half",
        ]
        .map(String::from),
    );
    out
}

/// JSON for one named fixture.
pub fn fixture(name: &str) -> Result<Value> {
    let num = |p: &str| name.strip_prefix(p).and_then(|d| d.parse::<usize>().ok());
    if let Some(d) = num("fix-s").filter(|&d| (1..=3).contains(&d)) {
        return Ok(circle(d).to_json());
    }
    if let Some(d) = num("fix-d").filter(|&d| d <= 6) {
        return Ok(degree_map(d).to_json());
    }
    let one = BigRational::from_integer(1.into());
    Ok(match name {
        "fix-disk" => disk().to_json(),
        "fix-susp-d2" => suspended_degree_two().to_json(),
        "rp2" => projective_plane().to_json(),
        "cover-disk" => disk_cover_map().to_json(),
        "cover-circle-point" => point_cover_map().to_json(),
        "cover-susp-d2" => suspended_cover_map().to_json(),
        "function-winding" => cocycle_json("function", &winding_function()),
        "line-bundle-half" => cocycle_json("line_bundle", &half_line_bundle()),
        "gerbe-half" => cocycle_json("gerbe", &half_gerbe()),
        "omega-disk-1" => omega_json(&one),
        "omega-disk-half" => omega_json(&half()),
        _ => return Err(Error::Parse(format!("unknown fixture {name:?}"))),
    })
}
