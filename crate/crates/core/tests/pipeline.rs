use eigenpoints_core::configuration::{bezout_guard, max_collinear, subset_on_hypersurface, PointSet, DEFAULT_ENUMERATION_CAP};
use eigenpoints_core::eigensolver::{curve_membership_check, eigenpoints, projective_zeros, EigenOptions};
use eigenpoints_core::numbers::{rat, Rational};
use eigenpoints_core::point::ProjectivePoint;
use eigenpoints_core::reconstruction::{containment_system, eigenscheme_kernel, is_eigenscheme, Answer, ReconstructionOptions};
use eigenpoints_core::solver::SolveOptions;
use eigenpoints_core::tensor::{fermat_tensor, minor_ideal_generators, random_tensor, EigenMatrix};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Plain Gaussian elimination over the rationals, kept separate from the library.
fn oracle_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let v = &f * &rows[r][k];
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn fermat_listed() -> Vec<Vec<i64>> {
    // coordinate points, then two, three and four unit coordinates
    let mut out = Vec::new();
    for w in 1..=4 {
        for m in 1u32..16 {
            if m.count_ones() == w {
                out.push((0..4).map(|i| ((m >> (3 - i)) & 1) as i64).collect());
            }
        }
    }
    out
}

fn as_exact(v: &[i64]) -> ProjectivePoint {
    ProjectivePoint::exact(v.iter().map(|&x| rat(x)).collect()).unwrap()
}

#[test]
fn fermat_cubic_surface_has_the_listed_points() {
    let t = fermat_tensor(3, 3).unwrap().to_partial();
    let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
    assert!(sol.certified);
    let listed: Vec<ProjectivePoint> = fermat_listed().iter().map(|v| as_exact(v)).collect();
    assert_eq!(listed.len(), 15);
    assert_eq!(sol.points.len(), 15);
    for p in &listed {
        assert!(sol.points.iter().any(|q| q.point == *p), "{p:?} missing");
    }
    let gens = minor_ideal_generators(&EigenMatrix::new(&t)).unwrap();
    for p in &sol.points {
        let c = p.point.exact_coords().unwrap();
        assert!(gens.iter().all(|g| g.evaluate(c).unwrap().is_zero()));
    }
}

#[test]
fn fermat_containment_regression() {
    let z = PointSet::new(3, fermat_listed().iter().map(|v| as_exact(v)).collect()).unwrap();
    let m = containment_system(&z, 3).unwrap();
    assert_eq!((m.rows(), m.cols()), (90, 40));
    let rank = oracle_rank(m.row_vectors());
    assert_eq!(m.rank(), rank);
    let k = eigenscheme_kernel(&z, 3, false).unwrap();
    assert_eq!(k.dimension, 40 - rank);
    assert_eq!(k.dimension, 5);
    let ks = eigenscheme_kernel(&z, 3, true).unwrap();
    assert_eq!(ks.dimension, 1);
}

#[test]
fn fermat_configuration() {
    let z = PointSet::new(3, fermat_listed().iter().map(|v| as_exact(v)).collect()).unwrap();
    assert_eq!(max_collinear(&z).max, 3);
    let r = subset_on_hypersurface(&z, 2, 14, DEFAULT_ENUMERATION_CAP).unwrap();
    // oracle: each 14-subset has a 14 x 10 evaluation matrix of full rank
    let quad = eigenpoints_core::poly::monomials_of_degree(4, 2);
    let rows: Vec<Vec<Rational>> = z.points().iter().map(|p| quad.iter().map(|m| m.evaluate(p.exact_coords().unwrap())).collect()).collect();
    let any_deficient = (0..15).any(|skip| {
        let sub: Vec<_> = rows.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r.clone()).collect();
        oracle_rank(sub) < 10
    });
    assert_eq!(r.found, any_deficient);
    assert!(!r.found);
}

fn random(n: usize, d: u32, seed: u64) -> eigenpoints_core::tensor::PartialSymTensor {
    random_tensor(n, d, 5, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

#[test]
fn planar_round_trips() {
    for d in 3..=5u32 {
        let t = random(2, d, 100 + d as u64);
        let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
        assert!(sol.certified, "d={d}: {:?}", sol.diagnostic);
        assert_eq!(sol.points.len() as i64, (0..=2).map(|i| (d as i64 - 1).pow(i)).sum::<i64>());
        let z = PointSet::from_solution(&sol);
        let guard = bezout_guard(&z, d, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(guard.passed, "d={d}: {guard:?}");
        assert!(max_collinear(&z).max <= d as usize);
        let dec = is_eigenscheme(&z, d, false, &ReconstructionOptions::default()).unwrap();
        assert_eq!(dec.answer, Answer::Yes, "d={d}: {:?}", dec.diagnostics);
        assert!(dec.kernel.contains(&t).unwrap());
    }
}

#[test]
fn joint_curve_system_gives_the_same_points() {
    for seed in [7u64, 8] {
        let t = random(3, 3, seed);
        let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
        assert!(sol.certified);
        let mut gens = minor_ideal_generators(&EigenMatrix::deleting(&t, &[0]).unwrap()).unwrap();
        gens.extend(minor_ideal_generators(&EigenMatrix::deleting(&t, &[1]).unwrap()).unwrap());
        let joint = projective_zeros(4, &gens, &SolveOptions::default()).unwrap();
        assert!(joint.positive_dimensional.is_empty());
        assert_eq!(joint.points.len(), sol.points.len());
        for (p, ..) in &joint.points {
            assert!(sol.points.iter().any(|q| q.point.approx_eq(p, 1e-8)));
        }
        let report = curve_membership_check(&t, 0, 1, &sol).unwrap();
        assert!(report.holds(1e-8));
        assert_eq!(report.exact_failures, 0);
    }
}

#[test]
fn real_only_filter() {
    let t = random(2, 3, 3);
    let all = eigenpoints(&t, &EigenOptions::default()).unwrap();
    let real = eigenpoints(&t, &EigenOptions { real_only: true, ..Default::default() }).unwrap();
    assert!(!real.certified);
    assert_eq!(real.points.len(), all.points.iter().filter(|p| p.point.is_real(1e-8)).count());
    // non-real eigenpoints come in conjugate pairs and the total is 7
    assert_eq!(real.points.len() % 2, 1);
}

#[test]
fn eigenvalue_matches_slice() {
    let t = fermat_tensor(2, 4).unwrap().to_partial();
    let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
    assert!(sol.certified);
    for p in &sol.points {
        let c = p.point.exact_coords().unwrap();
        let lambda = Rational::from_float(p.eigenvalue.re).unwrap();
        for (i, ci) in c.iter().enumerate() {
            assert_eq!(t.slice(i).evaluate(c).unwrap(), &lambda * ci);
        }
    }
}
