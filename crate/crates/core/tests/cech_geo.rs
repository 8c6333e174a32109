mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relcone_core::cech::{
    absolute_bockstein, bockstein, bockstein_of_lift, cech_diff, cohomology, pullback, relative_cohomology,
    relative_cone_complex, relative_diff, CechCochain, Cover, CoverMap, RelCechCochain,
};
use relcone_core::coeffs::reduce_mod_one;
use relcone_core::geo::{
    bohr_sommerfeld, classify, dixmier_douady, group_op, inverse, is_equivalent, is_integral, quasi_line_bundle,
    representative, trivialize, validate, CocycleKind, RelCocycle, RelRealPair,
};
use relcone_core::homology::{les_of_cone, Class};
use relcone_core::simplicial::{SimplicialComplex, SimplicialMap};
use relcone_core::{fixtures, random, CoeffRing, Error, Scalar};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn random_cochain(r: &mut ChaCha8Rng, c: &Cover, p: i64, ring: &CoeffRing) -> CechCochain {
    let den = if matches!(ring, CoeffRing::Rat | CoeffRing::AngleQ) { 6 } else { 1 };
    CechCochain::from_values(c, p, ring, random::rational_vector(r, c.count(p), den, 3)).unwrap()
}

/// `(dc)(σ) = Σ (−1)^i c(σ with vertex i removed)`, evaluated simplex by simplex.
fn diff_by_formula(c: &CechCochain) -> Vec<Scalar> {
    let k = c.cover().nerve();
    k.simplices(c.degree() + 1)
        .iter()
        .map(|s| {
            let mut acc = c.ring().zero();
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let v = c.value_at(&face).unwrap();
                acc = if i % 2 == 0 { acc.add(&v).unwrap() } else { acc.sub(&v).unwrap() };
            }
            acc
        })
        .collect()
}

fn cover_maps() -> Vec<CoverMap> {
    vec![
        CoverMap::identity(&fixtures::arc_cover()),
        fixtures::disk_cover_map(),
        fixtures::point_cover_map(),
        CoverMap::from_simplicial(&fixtures::degree_map(2)),
        CoverMap::from_simplicial(&fixtures::degree_map(0)),
        fixtures::suspended_cover_map(),
    ]
}

#[test]
fn differential_matches_formula_and_squares_to_zero() {
    let mut r = rng(1);
    let rings = [CoeffRing::Int, CoeffRing::Rat, CoeffRing::IntMod(4), CoeffRing::AngleQ];
    for _ in 0..20 {
        let k = random::simplicial_complex(&mut r, 6, 3);
        let cover = Cover::star_cover(&k);
        for ring in &rings {
            for p in 0..k.dim() {
                let c = random_cochain(&mut r, &cover, p, ring);
                let d = cech_diff(&c);
                let got: Vec<Scalar> = d.values().iter().map(|v| ring.from_rational(v).unwrap()).collect();
                assert_eq!(got, diff_by_formula(&c));
                assert!(cech_diff(&d).values().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn arc_cover_example() {
    let c = CechCochain::from_values(&fixtures::arc_cover(), 0, &CoeffRing::Int, vec![q(0, 1), q(1, 1), q(2, 1)]).unwrap();
    let d = cech_diff(&c);
    let expected: Vec<Scalar> = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(a, b)| c.value_at(&[b]).unwrap().sub(&c.value_at(&[a]).unwrap()).unwrap())
        .collect();
    assert_eq!(expected, vec![Scalar::int(1), Scalar::int(1), Scalar::int(-2)]);
    for (&(a, b), e) in [(0, 1), (1, 2), (2, 0)].iter().zip(&expected) {
        assert_eq!(&d.value_at(&[a, b]).unwrap(), e);
    }
}

#[test]
fn pullback_commutes_with_differential() {
    let mut r = rng(2);
    for m in cover_maps() {
        for ring in [CoeffRing::Int, CoeffRing::AngleQ] {
            for p in 0..=m.dst().nerve().dim() {
                let c = random_cochain(&mut r, m.dst(), p, &ring);
                let lhs = cech_diff(&pullback(&c, &m).unwrap());
                let rhs = pullback(&cech_diff(&c), &m).unwrap();
                assert_eq!(lhs, rhs);
                // collapsed tuples pull back to zero, injective ones copy
                let src = m.src().nerve();
                for (s, v) in src.simplices(p).iter().zip(pullback(&c, &m).unwrap().values()) {
                    let image: Vec<usize> = s.iter().map(|&i| m.nerve_map().vmap()[i]).collect();
                    let expected = c.value_at(&image).unwrap().to_rational();
                    assert_eq!(v, &expected);
                }
            }
        }
    }
}

#[test]
fn relative_cohomology_values() {
    let z = CoeffRing::Int;
    let disk = fixtures::disk_cover_map();
    assert_eq!(common::summary(&relative_cohomology(&disk, &z, 2).unwrap().summary()), common::group(1, &[]));
    assert!(relative_cohomology(&disk, &z, 1).unwrap().is_trivial());
    assert!(cohomology(disk.dst(), &z, 2).unwrap().is_trivial());
    let pt = fixtures::point_cover_map();
    assert_eq!(common::summary(&relative_cohomology(&pt, &z, 2).unwrap().summary()), common::group(1, &[]));
    let susp = fixtures::suspended_cover_map();
    assert_eq!(common::summary(&relative_cohomology(&susp, &z, 3).unwrap().summary()), common::group(0, &[2]));
    for n in 0..=3 {
        assert!(relative_cohomology(&CoverMap::identity(&fixtures::arc_cover()), &z, n).unwrap().is_trivial());
    }
    for m in cover_maps() {
        let cone = relative_cone_complex(&m, &z);
        for n in -1..=4 {
            let got = common::summary(&relative_cohomology(&m, &z, n).unwrap().summary());
            assert_eq!(got, common::homology_oracle(cone.reindexed(), -n));
        }
        assert!(les_of_cone(m.pullback_map(&z).reindexed()).unwrap().exact());
    }
}

#[test]
fn bockstein_ignores_lift_choice() {
    let mut r = rng(3);
    let g = fixtures::half_gerbe();
    let base = bockstein(&g).unwrap();
    assert_eq!(base.class.coords, vec![BigInt::from(1)]);
    assert!(base.cocycle.to_vector().iter().all(|x| x.is_integer()));
    assert!(relative_diff(&base.cocycle).is_zero());
    for _ in 0..20 {
        let lift: Vec<BigRational> = g
            .to_vector()
            .iter()
            .map(|x| reduce_mod_one(x) + BigRational::from_integer(r.gen_range(-3..=3).into()))
            .collect();
        assert_eq!(bockstein_of_lift(g.map(), 2, &lift).unwrap().class, base.class);
    }
    let zero = RelCechCochain::zero(g.map(), 2, &CoeffRing::AngleQ);
    assert!(bockstein(&zero).unwrap().class.is_zero());
    let mut bad = g.clone();
    bad.t = CechCochain::from_values(g.map().dst(), 2, &CoeffRing::AngleQ, vec![q(1, 3); g.map().dst().count(2)]).unwrap();
    assert!(matches!(bockstein(&bad), Err(Error::NotACocycle)));
}

/// The triangle `w0 w1 w2` coned off inside a disk.
fn triangle_into_disk() -> SimplicialMap {
    let dst = SimplicialComplex::from_named_facets(
        &["w0", "w1", "w2", "c"],
        &[&["w0", "w1", "c"], &["w1", "w2", "c"], &["w0", "w2", "c"]],
    )
    .unwrap();
    SimplicialMap::from_names(fixtures::target_circle(), dst, &[("w0", "w0"), ("w1", "w1"), ("w2", "w2")]).unwrap()
}

#[test]
fn bockstein_is_natural() {
    // (s, t) on Cone(ΨΦ) goes to (s, Ψ^*t) on Cone(Φ)
    let phi = fixtures::degree_map(2);
    let psi = triangle_into_disk();
    let big = CoverMap::from_simplicial(&phi.then(&psi).unwrap());
    let small = CoverMap::from_simplicial(&phi);
    let psi_c = CoverMap::from_simplicial(&psi);
    let push = |u: &RelCechCochain| RelCechCochain::new(&small, u.s.clone(), pullback(&u.t, &psi_c).unwrap()).unwrap();
    let mut r = rng(4);
    for _ in 0..15 {
        let u = random::cocycle(&mut r, CocycleKind::LineBundle, &big, false);
        let b = bockstein(u.data()).unwrap();
        let image = push(&b.cocycle);
        let group = relative_cohomology(&small, &CoeffRing::Int, 2).unwrap();
        let expected = group.class_of(&image.to_vector()).unwrap();
        assert_eq!(bockstein(&push(u.data())).unwrap().class, expected);
    }
}

fn sample_maps() -> Vec<(CocycleKind, CoverMap)> {
    vec![
        (CocycleKind::Gerbe, fixtures::suspended_cover_map()),
        (CocycleKind::LineBundle, CoverMap::from_simplicial(&fixtures::degree_map(2))),
        (CocycleKind::LineBundle, CoverMap::from_simplicial(&fixtures::degree_map(3))),
        (CocycleKind::Function, CoverMap::from_simplicial(&fixtures::degree_map(0))),
        (CocycleKind::Function, fixtures::disk_cover_map()),
    ]
}

#[test]
fn classify_is_a_homomorphism() {
    let mut r = rng(5);
    for (kind, m) in sample_maps() {
        for _ in 0..50 {
            let free = kind == CocycleKind::Function;
            let (c1, c2) = (random::cocycle(&mut r, kind, &m, free), random::cocycle(&mut r, kind, &m, free));
            let sum = group_op(&c1, &c2).unwrap();
            assert!(validate(&sum).valid());
            let (k1, k2) = (classify(&c1).unwrap().class, classify(&c2).unwrap().class);
            assert_eq!(classify(&sum).unwrap().class, k1.add(&k2).unwrap());
            assert!(classify(&group_op(&c1, &inverse(&c1)).unwrap()).unwrap().class.is_zero());
        }
    }
}

#[test]
fn trivialize_iff_class_vanishes() {
    let mut r = rng(6);
    for (kind, m) in sample_maps() {
        for _ in 0..20 {
            let c = random::cocycle(&mut r, kind, &m, kind == CocycleKind::Function);
            let class = classify(&c).unwrap().class;
            match trivialize(&c) {
                Ok(w) => {
                    assert!(class.is_zero());
                    assert_eq!(relative_diff(&w), *c.data());
                }
                Err(Error::NontrivialClass(k)) => {
                    assert!(!class.is_zero());
                    assert_eq!(k, class);
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }
}

#[test]
fn half_gerbe_and_its_square() {
    let c = RelCocycle::new(CocycleKind::Gerbe, fixtures::half_gerbe()).unwrap();
    assert!(validate(&c).valid());
    let k = classify(&c).unwrap();
    assert_eq!(k.group.torsion, vec![BigInt::from(2)]);
    assert_eq!(k.class, Class::new(vec![BigInt::from(2)], vec![BigInt::from(1)]));
    assert!(matches!(trivialize(&c), Err(Error::NontrivialClass(ref x)) if *x == k.class));
    let sq = group_op(&c, &c).unwrap();
    let w = trivialize(&sq).unwrap();
    let expected: Vec<BigRational> = c.data().to_vector().iter().map(|x| reduce_mod_one(&(x + x))).collect();
    assert_eq!(relative_diff(&w).to_vector(), expected);
    let zero = RelCocycle::zero(CocycleKind::Gerbe, c.map());
    assert!(is_equivalent(&c, &zero).unwrap().is_none());
    assert!(is_equivalent(&sq, &zero).unwrap().is_some());
}

#[test]
fn equivalence_up_to_coboundaries() {
    let mut r = rng(7);
    for (kind, m) in sample_maps() {
        for _ in 0..10 {
            let c = random::cocycle(&mut r, kind, &m, kind == CocycleKind::Function);
            let n = kind.degree();
            let len = m.src().count(n - 2) + m.dst().count(n - 1);
            let den = if kind == CocycleKind::Function { 1 } else { 12 };
            let lower = RelCechCochain::from_vector(&m, n - 1, &kind.ring(), &random::rational_vector(&mut r, len, den, 2))
                .unwrap();
            let shifted = RelCocycle::new(kind, c.data().add(&relative_diff(&lower)).unwrap()).unwrap();
            let w = is_equivalent(&shifted, &c).unwrap().expect("differ by a coboundary");
            assert_eq!(relative_diff(&w), shifted.data().add(&c.data().neg()).unwrap());
            assert!(is_equivalent(&c, &c).unwrap().is_some());
        }
    }
}

#[test]
fn representatives_hit_every_torsion_class() {
    let m = fixtures::suspended_cover_map();
    for k in 0..2 {
        let class = Class::new(vec![BigInt::from(2)], vec![BigInt::from(k)]);
        let c = representative(CocycleKind::Gerbe, &m, &class).unwrap();
        assert_eq!(classify(&c).unwrap().class, class);
    }
    let d0 = CoverMap::from_simplicial(&fixtures::degree_map(0));
    let h2 = relative_cohomology(&d0, &CoeffRing::Int, 2).unwrap();
    let free = Class::new(h2.orders(), vec![BigInt::from(1); h2.orders().len()]);
    assert!(matches!(representative(CocycleKind::LineBundle, &d0, &free), Err(Error::NotTorsion)));
    let f = RelCocycle::new(CocycleKind::Function, fixtures::winding_function()).unwrap();
    let k = classify(&f).unwrap();
    assert_eq!(k.group.free_rank, 1);
    assert_eq!(classify(&representative(CocycleKind::Function, f.map(), &k.class).unwrap()).unwrap().class, k.class);
}

#[test]
fn absolute_gerbes() {
    let mut r = rng(8);
    // no rational cohomology in degree 2: the class decides
    let rp2 = Cover::star_cover(&fixtures::projective_plane());
    for _ in 0..10 {
        let t = random_cochain(&mut r, &rp2, 2, &CoeffRing::AngleQ);
        assert!(dixmier_douady(&t).unwrap().class.is_zero());
        let s = quasi_line_bundle(&t).unwrap();
        assert_eq!(cech_diff(&s), t);
    }
    // on a sphere a non-integral total is invisible to the integral class
    let s2 = fixtures::suspended_cover_map().dst().clone();
    let mut t = CechCochain::zero(&s2, 2, &CoeffRing::AngleQ);
    t.set(&s2.nerve().simplices(2)[0], &Scalar::angle(1, 2)).unwrap();
    assert!(dixmier_douady(&t).unwrap().class.is_zero());
    assert!(matches!(quasi_line_bundle(&t), Err(Error::RationalObstruction)));
    assert!(absolute_bockstein(&t).unwrap().1.is_zero());
}

#[test]
fn integrality_on_the_disk() {
    let phi = fixtures::disk();
    let zero = RelRealPair::new(phi.clone(), 2, vec![q(0, 1); 6], vec![q(0, 1); 6]).unwrap();
    let rep = is_integral(&zero).unwrap();
    assert!(rep.integral() && rep.pairings.iter().all(|p| p.value.is_zero()));
    let area = |t: BigRational| RelRealPair::new(phi.clone(), 2, fixtures::disk_area(&t), vec![q(0, 1); 6]).unwrap();
    let one = is_integral(&area(q(1, 1))).unwrap();
    assert!(one.integral());
    assert_eq!(one.pairings.iter().map(|p| p.value.clone()).collect::<Vec<_>>(), vec![q(1, 1)]);
    let half = is_integral(&area(q(1, 2))).unwrap();
    assert!(!half.integral());
    assert_eq!(half.pairings[0].value, q(1, 2));
    let mut r = rng(9);
    let cone_rank = phi.src().count(0) + phi.dst().count(1);
    for _ in 0..25 {
        for (p, verdict) in [(area(q(1, 1)), true), (area(q(1, 2)), false)] {
            let shifted = p.shifted(&random::rational_vector(&mut r, cone_rank, 4, 2)).unwrap();
            let rep = is_integral(&shifted).unwrap();
            assert_eq!(rep.integral(), verdict);
            assert_eq!(rep.pairings[0].value, is_integral(&p).unwrap().pairings[0].value);
        }
    }
}

#[test]
fn bohr_sommerfeld_on_the_disk() {
    let phi = fixtures::disk();
    assert!(bohr_sommerfeld(&vec![q(0, 1); 6], &phi).unwrap().integral());
    assert!(bohr_sommerfeld(&fixtures::disk_area(&q(1, 1)), &phi).unwrap().integral());
    let half = bohr_sommerfeld(&fixtures::disk_area(&q(1, 2)), &phi).unwrap();
    assert!(!half.integral());
    let bad = &half.pairings[0];
    assert_eq!(bad.value, q(1, 2));
    assert_eq!(bad.theta.len(), 6);
    assert_eq!(bad.eta.len(), 6);
}
