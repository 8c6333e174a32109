//! The ten acceptance criteria, one PASS/FAIL line each. All arithmetic is
//! exact; random instances come from fixed ChaCha8 seeds.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relcone_cli::render;
use relcone_cli::verbs::sweep;
use relcone_core::cech::{relative_cohomology, relative_diff};
use relcone_core::chain::{
    cone_of_cochain_map, cone_of_map, dual_map, homotopy_cone_iso, homotopy_cone_iso_inverse, kronecker,
    verify_cone_duality, ComplexMap, ConeElement,
};
use relcone_core::coeffs::reduce_mod_one;
use relcone_core::fixtures::{self, names_list};
use relcone_core::geo::{
    classify, group_op, inverse, is_integral, trivialize, validate, CocycleKind, RelCocycle, RelRealPair,
};
use relcone_core::homology::{homology_at, ker_coker_les, les_of_cone, Class};
use relcone_core::lattice::kernel_basis;
use relcone_core::matrix::determinant;
use relcone_core::simplicial::{compare_cones, mapping_cone_space, SimplicialComplex};
use relcone_core::snf::snf;
use relcone_core::{random, CoeffRing, Error, IntMatrix};
use serde_json::Value;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

type Group = (usize, Vec<BigInt>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn reduced(k: &SimplicialComplex, n: i64) -> Result<Group, String> {
    let h = k.reduced_homology(&CoeffRing::Int).map_err(|e| e.to_string())?;
    Ok(h.get(&n).map(common::summary).unwrap_or((0, vec![])))
}

fn cone_theorem() -> Outcome {
    for d in [0usize, 1, 2, 3, 6] {
        let phi = fixtures::degree_map(d);
        let expected = match d {
            0 => [common::group(1, &[]), common::group(1, &[])],
            1 => [common::group(0, &[]), common::group(0, &[])],
            d => [common::group(0, &[d as i64]), common::group(0, &[])],
        };
        let alg = cone_of_map(&phi.chain_map(&CoeffRing::Int));
        let space = mapping_cone_space(&phi);
        for (n, want) in (1..=2).zip(&expected) {
            let a = common::summary(&homology_at(&alg, n).map_err(|e| e.to_string())?.summary());
            let s = reduced(&space.complex, n)?;
            ensure!(a == *want && s == *want, "FIX-D{d} H_{n}: algebraic {a:?}, space {s:?}, expected {want:?}");
        }
        let cmp = compare_cones(&phi, &CoeffRing::Int).map_err(|e| e.to_string())?;
        ensure!(cmp.iso(), "FIX-D{d}: {}", cmp.to_json());
    }
    Ok(())
}

fn pair_three_ways() -> Outcome {
    let phi = fixtures::disk();
    let z = CoeffRing::Int;
    let alg = cone_of_map(&phi.chain_map(&z));
    let space = mapping_cone_space(&phi).complex;
    let cech = fixtures::disk_cover_map();
    for (n, want) in [(1, common::group(0, &[])), (2, common::group(1, &[]))] {
        let a = common::summary(&homology_at(&alg, n).map_err(|e| e.to_string())?.summary());
        let s = reduced(&space, n)?;
        let c = common::summary(&relative_cohomology(&cech, &z, n).map_err(|e| e.to_string())?.summary());
        ensure!(a == want && s == want && c == want, "degree {n}: cone {a:?}, space {s:?}, Čech {c:?}");
    }
    Ok(())
}

fn les_exactness() -> Outcome {
    let mut r = rng(101);
    for i in 0..50 {
        let f = random::map_instance(&mut r, 6);
        let les = les_of_cone(&f).map_err(|e| e.to_string())?;
        ensure!(les.exact(), "instance {i}: {}", les.to_json());
        let cone = cone_of_map(&f);
        for p in &les.positions {
            let label = p.label.as_str();
            let (c, rest) = if let Some(rest) = label.strip_suffix("(X)") {
                (f.src(), rest)
            } else if let Some(rest) = label.strip_suffix("(Y)") {
                (f.dst(), rest)
            } else if let Some(rest) = label.strip_suffix("(f)") {
                (&cone, rest)
            } else {
                continue;
            };
            let Some(n) = rest.strip_prefix("H_").and_then(|n| n.parse().ok()) else { continue };
            ensure!(common::matches(&p.group, &common::homology_oracle(c, n)), "instance {i}: {label} disagrees with oracle");
        }
    }
    Ok(())
}

fn kernel_cokernel() -> Outcome {
    let mut r = rng(102);
    for i in 0..25 {
        let f = random::injective_map(&mut r, 6);
        let rep = ker_coker_les(&f).map_err(|e| e.to_string())?;
        ensure!(rep.les.exact() && rep.injective_specialization == Some(true), "injective {i}: {}", rep.to_json());
        let g = random::surjective_map(&mut r, 6);
        let rep = ker_coker_les(&g).map_err(|e| e.to_string())?;
        ensure!(rep.les.exact() && rep.surjective_specialization == Some(true), "surjective {i}: {}", rep.to_json());
    }
    Ok(())
}

fn snf_contract() -> Outcome {
    let mut r = rng(103);
    for i in 0..200 {
        let (rows, cols) = (r.gen_range(0..=8), r.gen_range(0..=8));
        let a = random::matrix(&mut r, rows, cols, 9);
        let s = snf(&a);
        let product = s.u.try_mul(&s.d).and_then(|ud| ud.try_mul(&s.v)).map_err(|e| e.to_string())?;
        ensure!(product == a, "matrix {i}: U·D·V ≠ A");
        ensure!(determinant(&s.u).abs() == BigInt::from(1), "matrix {i}: U not unimodular");
        ensure!(determinant(&s.v).abs() == BigInt::from(1), "matrix {i}: V not unimodular");
        let d = s.divisors();
        ensure!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])), "matrix {i}: divisibility fails in {d:?}");
        ensure!(d == common::invariant_factors(&a), "matrix {i}: disagrees with the Hermite oracle");
    }
    for i in 0..200 {
        let [a, b, c, e]: [i64; 4] = std::array::from_fn(|_| r.gen_range(-20..=20));
        let g = BigInt::from(a).gcd(&b.into()).gcd(&c.into()).gcd(&e.into());
        let det = BigInt::from(a * e - b * c).abs();
        let want = if g.is_zero() {
            vec![]
        } else if det.is_zero() {
            vec![g]
        } else {
            vec![g.clone(), det / g]
        };
        let got = snf(&IntMatrix::from_i64(&[&[a, b], &[c, e]])).divisors();
        ensure!(got == want, "2×2 case {i}: {got:?} vs gcd/determinant {want:?}");
    }
    Ok(())
}

fn duality() -> Outcome {
    let mut r = rng(104);
    for i in 0..100 {
        let f = random::map_instance(&mut r, 4);
        let chain = cone_of_map(&f);
        let cochain = cone_of_cochain_map(&dual_map(&f).map_err(|e| e.to_string())?);
        for n in 0..=4 {
            let a = f.src().rank(n - 1);
            let pair = |x: &[BigRational], y: &[BigRational]| {
                kronecker(&f, &ConeElement::from_vector(n, a, x), &ConeElement::from_vector(n, a, y))
                    .map(|s| s.is_zero())
                    .map_err(|e| e.to_string())
            };
            let boundary = chain.diff(n + 1).mul_vec(&random::rational_vector(&mut r, chain.rank(n + 1), 1, 2));
            let coboundary = cochain.diff(n - 1).mul_vec(&random::rational_vector(&mut r, cochain.rank(n - 1), 1, 2));
            for z in kernel_basis(&cochain.int_diff(n)).columns() {
                let z: Vec<BigRational> = z.into_iter().map(BigRational::from_integer).collect();
                ensure!(pair(&z, &boundary)?, "instance {i}: cocycle pairs nontrivially with a boundary in degree {n}");
            }
            for c in kernel_basis(&chain.int_diff(n)).columns() {
                let c: Vec<BigRational> = c.into_iter().map(BigRational::from_integer).collect();
                ensure!(pair(&coboundary, &c)?, "instance {i}: coboundary pairs nontrivially with a cycle in degree {n}");
            }
        }
    }
    let mut maps: Vec<(String, ComplexMap)> =
        [0usize, 1, 2, 3, 6].iter().map(|&d| (format!("FIX-D{d}"), fixtures::degree_map(d).chain_map(&CoeffRing::Int))).collect();
    maps.push(("FIX-DISK".into(), fixtures::disk().chain_map(&CoeffRing::Int)));
    maps.push(("FIX-SUSP-D2".into(), fixtures::suspended_degree_two().chain_map(&CoeffRing::Int)));
    maps.extend((0..50).map(|i| (format!("random {i}"), random::map_instance(&mut r, 6))));
    for (name, f) in &maps {
        ensure!(verify_cone_duality(f).map_err(|e| e.to_string())?.ok(), "duality fails on {name}");
    }
    Ok(())
}

fn homotopy_invariance() -> Outcome {
    let mut r = rng(105);
    for i in 0..25 {
        let h = random::homotopy(&mut r, 5);
        let fwd = homotopy_cone_iso(&h).map_err(|e| e.to_string())?;
        let back = homotopy_cone_iso_inverse(&h).map_err(|e| e.to_string())?;
        let (cf, cg) = (cone_of_map(h.f()), cone_of_map(h.g()));
        ensure!(fwd.then(&back).map_err(|e| e.to_string())? == cf.identity_map(), "homotopy {i}: F⁻¹∘F ≠ id");
        ensure!(back.then(&fwd).map_err(|e| e.to_string())? == cg.identity_map(), "homotopy {i}: F∘F⁻¹ ≠ id");
        for n in cf.degrees().into_iter().chain(cg.degrees()) {
            ensure!(
                common::homology_oracle(&cf, n) == common::homology_oracle(&cg, n),
                "homotopy {i}: H_{n} differs between the cones"
            );
        }
    }
    Ok(())
}

fn gerbe_torsion() -> Outcome {
    let m = fixtures::suspended_cover_map();
    let h3 = relative_cohomology(&m, &CoeffRing::Int, 3).map_err(|e| e.to_string())?.summary();
    ensure!(common::summary(&h3) == common::group(0, &[2]), "H³(Φ,Z) = {h3:?}, expected Z/2");
    // (s, 0) with t = 0 is a cocycle only if δs = 0, and then its class is
    // trivial; the generator is carried by t = 1/2 on one target simplex.
    let c = RelCocycle::new(CocycleKind::Gerbe, fixtures::half_gerbe()).map_err(|e| e.to_string())?;
    ensure!(validate(&c).valid(), "half gerbe fails validation");
    let k = classify(&c).map_err(|e| e.to_string())?;
    ensure!(k.class == Class::new(vec![2.into()], vec![1.into()]), "half gerbe classifies to {}", k.class.to_json());
    ensure!(matches!(trivialize(&c), Err(Error::NontrivialClass(_))), "half gerbe trivialized");
    let sq = group_op(&c, &c).map_err(|e| e.to_string())?;
    let w = trivialize(&sq).map_err(|e| e.to_string())?;
    let doubled: Vec<BigRational> = c.data().to_vector().iter().map(|x| reduce_mod_one(&(x + x))).collect();
    ensure!(relative_diff(&w).to_vector() == doubled, "witness does not satisfy δ(ρ,τ) = 2(s,t)");
    let mut r = rng(106);
    for i in 0..50 {
        let (a, b) = (random::cocycle(&mut r, CocycleKind::Gerbe, &m, false), random::cocycle(&mut r, CocycleKind::Gerbe, &m, false));
        let (ka, kb) = (classify(&a).map_err(|e| e.to_string())?.class, classify(&b).map_err(|e| e.to_string())?.class);
        let sum = classify(&group_op(&a, &b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.class;
        ensure!(sum == ka.add(&kb).map_err(|e| e.to_string())?, "pair {i}: class of product is not the sum");
        let neg = classify(&inverse(&a)).map_err(|e| e.to_string())?.class;
        ensure!(neg.add(&ka).map_err(|e| e.to_string())?.is_zero(), "pair {i}: inverse does not negate");
    }
    Ok(())
}

fn integrality() -> Outcome {
    let phi = fixtures::disk();
    let area = |t: BigRational| RelRealPair::new(phi.clone(), 2, fixtures::disk_area(&t), vec![q(0, 1); 6]);
    let one = area(q(1, 1)).map_err(|e| e.to_string())?;
    let half = area(q(1, 2)).map_err(|e| e.to_string())?;
    let r1 = is_integral(&one).map_err(|e| e.to_string())?;
    ensure!(r1.integral(), "area 1 reported non-integral: {}", r1.to_json());
    let r2 = is_integral(&half).map_err(|e| e.to_string())?;
    ensure!(!r2.integral(), "area 1/2 reported integral");
    ensure!(r2.pairings.len() == 1 && r2.pairings[0].value == q(1, 2), "area 1/2 pairs to {}", r2.to_json());
    let mut r = rng(107);
    let len = phi.src().count(0) + phi.dst().count(1);
    for i in 0..25 {
        for (p, verdict, value) in [(&one, true, q(1, 1)), (&half, false, q(1, 2))] {
            let shifted = p.shifted(&random::rational_vector(&mut r, len, 4, 2)).map_err(|e| e.to_string())?;
            let rep = is_integral(&shifted).map_err(|e| e.to_string())?;
            ensure!(rep.integral() == verdict && rep.pairings[0].value == value, "shift {i}: {}", rep.to_json());
        }
    }
    Ok(())
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn determinism() -> Outcome {
    let golden = std::fs::read_to_string(corpus().join("golden/sweep.json")).map_err(|e| e.to_string())?;
    let mut docs = Vec::new();
    for name in names_list() {
        let text = std::fs::read_to_string(corpus().join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
        docs.push((name, v));
    }
    for run in 0..3 {
        let text = render(&sweep(&docs).map_err(|e| e.to_string())?);
        ensure!(text == golden, "in-process sweep {run} differs from the golden report");
    }
    let dir = corpus().display().to_string();
    for threads in ["1", "2", "8"] {
        let out = Command::new(env!("CARGO_BIN_EXE_relcone"))
            .args(["fixtures", "sweep", &dir])
            .env("RELCONE_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.success(), "relcone exited with {:?}", out.status.code());
        ensure!(out.stdout == golden.as_bytes(), "binary sweep with {threads} threads differs from the golden report");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cone theorem on FIX-Dd, d in {0,1,2,3,6}", cone_theorem),
        ("S1 into D2 computed three ways", pair_three_ways),
        ("LES exactness on 50 random maps", les_exactness),
        ("injective and surjective specializations", kernel_cokernel),
        ("Smith normal form contract", snf_contract),
        ("Kronecker annihilation and cone duality", duality),
        ("homotopy invariance of cones", homotopy_invariance),
        ("relative gerbe torsion class on FIX-SUSP-D2", gerbe_torsion),
        ("integrality on FIX-DISK", integrality),
        ("deterministic fixture sweep", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match result {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
