mod common;

use num_traits::Signed;
use relcone_core::chain::cone_of_map;
use relcone_core::homology::{homology, homology_at};
use relcone_core::simplicial::{
    compare_cones, cone_operator, mapping_cone_space, mapping_cylinder, SimplicialComplex, SimplicialMap,
};
use relcone_core::{fixtures, CoeffRing};

fn reduced(k: &SimplicialComplex, n: i64) -> (usize, Vec<num_bigint::BigInt>) {
    k.reduced_homology(&CoeffRing::Int).unwrap().get(&n).map(common::summary).unwrap_or((0, vec![]))
}

/// Expected `H_1, H_2` of the degree-`d` circle map: `Z/d`, `0` for `d ≥ 2`;
/// `0, 0` for `d = 1`; `Z, Z` for the constant map.
fn expected(d: usize) -> [(usize, Vec<num_bigint::BigInt>); 2] {
    match d {
        0 => [common::group(1, &[]), common::group(1, &[])],
        1 => [common::group(0, &[]), common::group(0, &[])],
        d => [common::group(0, &[d as i64]), common::group(0, &[])],
    }
}

#[test]
fn cone_theorem_on_degree_maps() {
    for d in 0..=6 {
        let phi = fixtures::degree_map(d);
        let cmp = compare_cones(&phi, &CoeffRing::Int).unwrap();
        assert!(cmp.iso(), "d = {d}: {}", cmp.to_json());
        assert!(cmp.faithful);
        let space = mapping_cone_space(&phi);
        let [h1, h2] = expected(d);
        assert_eq!(reduced(&space.complex, 1), h1, "d = {d}");
        assert_eq!(reduced(&space.complex, 2), h2, "d = {d}");
        let alg = cone_of_map(&phi.chain_map(&CoeffRing::Int));
        assert_eq!(common::homology_oracle(&alg, 1), h1);
        assert_eq!(common::homology_oracle(&alg, 2), h2);
    }
}

#[test]
fn cone_theorem_on_disk_and_suspension() {
    let disk = fixtures::disk();
    let cmp = compare_cones(&disk, &CoeffRing::Int).unwrap();
    assert!(cmp.iso());
    assert_eq!(common::summary(&cmp.algebraic[&2]), common::group(1, &[]));
    assert_eq!(common::summary(&cmp.algebraic[&1]), common::group(0, &[]));
    let susp = fixtures::suspended_degree_two();
    let cmp = compare_cones(&susp, &CoeffRing::Int).unwrap();
    assert!(cmp.iso());
    assert_eq!(common::summary(&cmp.algebraic[&2]), common::group(0, &[2]));
}

#[test]
fn cone_comparison_over_other_rings() {
    for ring in [CoeffRing::Rat, CoeffRing::IntMod(2), CoeffRing::IntMod(4)] {
        for d in [0, 2, 3] {
            let cmp = compare_cones(&fixtures::degree_map(d), &ring).unwrap();
            assert!(cmp.iso(), "{ring} d = {d}: {}", cmp.to_json());
        }
    }
}

#[test]
fn degree_two_cone_is_projective_plane() {
    let space = mapping_cone_space(&fixtures::degree_map(2));
    let rp2 = fixtures::projective_plane();
    for n in 0..=2 {
        assert_eq!(reduced(&space.complex, n), reduced(&rp2, n));
    }
}

#[test]
fn projective_plane_over_three_rings() {
    let k = fixtures::projective_plane();
    let z = homology(&k.chain_complex(&CoeffRing::Int)).unwrap();
    assert_eq!(common::summary(&z[&1].summary()), common::group(0, &[2]));
    assert!(z[&2].is_trivial());
    for n in 0..=2 {
        assert_eq!(common::summary(&z[&n].summary()), common::homology_oracle(&k.chain_complex(&CoeffRing::Int), n));
    }
    let q = homology(&k.chain_complex(&CoeffRing::Rat)).unwrap();
    assert!(q[&1].is_trivial());
    let f2 = homology(&k.chain_complex(&CoeffRing::IntMod(2))).unwrap();
    assert_eq!((f2[&1].summary().free_rank, f2[&2].summary().free_rank), (1, 1));
}

#[test]
fn cylinders() {
    let cyl = mapping_cylinder(&fixtures::degree_map(2));
    let h = homology(&cyl.complex.chain_complex(&CoeffRing::Int)).unwrap();
    assert_eq!(common::summary(&h[&1].summary()), common::group(1, &[]));
    assert!(relcone_core::homology::quasi_iso(&cyl.retraction.chain_map(&CoeffRing::Int)).unwrap());
    let s1 = fixtures::circle(1);
    let pt = SimplicialComplex::from_named_facets(&["p"], &[&["p"]]).unwrap();
    let constant = SimplicialMap::new(s1.clone(), pt, vec![0; 3]).unwrap();
    let cyl = mapping_cylinder(&constant);
    assert!(cyl.complex.reduced_homology(&CoeffRing::Int).unwrap().values().all(|g| g.is_trivial()));
    let cone = mapping_cone_space(&constant);
    assert_eq!(reduced(&cone.complex, 2), common::group(1, &[]));
    assert_eq!(reduced(&cone.complex, 1), common::group(0, &[]));
    let id = mapping_cone_space(&SimplicialMap::identity(&s1));
    assert!(id.complex.reduced_homology(&CoeffRing::Int).unwrap().values().all(|g| g.is_trivial()));
}

#[test]
fn cone_operator_contracts() {
    for k in [fixtures::circle(1), fixtures::circle(2), fixtures::projective_plane()] {
        let op = cone_operator(&k);
        assert!(op.failures().is_empty());
        assert!(op.cone.reduced_homology(&CoeffRing::Int).unwrap().values().all(|g| g.is_trivial()));
    }
}

#[test]
fn degree_map_induces_multiplication() {
    let f = fixtures::degree_map(3).chain_map(&CoeffRing::Int);
    let m = relcone_core::homology::induced_map(&f, 1).unwrap();
    assert_eq!(m.entries().len(), 1);
    assert_eq!(m.entries()[0].abs(), num_rational::BigRational::from_integer(3.into()));
    assert_eq!(homology_at(&cone_of_map(&f), 1).unwrap().summary().torsion, vec![3.into()]);
}
