//! Theorem-level acceptance checks. Each test prints one `criterion N … pass`
//! line (visible with `--nocapture`) and enforces its own runtime budget, so
//! the suite doubles as a release checklist.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homlie::algebra::{self, yau_twist, HomLieAlgebra};
use homlie::cohomology::Representation;
use homlie::derivation::{
    derivation_space, hexp_formula, integrate_derivation, is_automorphism,
};
use homlie::homgroup;
use homlie::linalg::{self, Matrix, Mode, Scalar};
use homlie::matgroup::TwistedMatrixSpace;
use homlie::Error;

/// Largest admissible residual for the h=1e−4 commutator stencil.
const TOL_COMMUTATOR_FD: f64 = 1e-5;
/// Nested-⋄ and product forms of Ω must agree to this.
const TOL_FORM_AGREEMENT: f64 = 1e-9;
/// Factor by which each halving of h must shrink the stencil residual.
const SECOND_ORDER_FACTOR: f64 = 3.5;
/// One-parameter subgroup law is an exact identity; only rounding remains.
const TOL_ONE_PARAM: f64 = 1e-9;
/// Automorphism residual for integrated derivations.
const TOL_INTEGRATED_AUT: f64 = 1e-8;
/// Residual a non-derivation must exceed after Hom-exponentiation.
const NON_DERIVATION_FLOOR: f64 = 1e-7;
/// Adjoint-tower comparisons (one finite-difference layer).
const TOL_ADJOINT: f64 = 1e-4;

fn yau_sl2(lam: Scalar) -> HomLieAlgebra {
    let phi = Matrix::diagonal(&[Scalar::int(1), lam.clone(), Scalar::int(1).div(&lam)]);
    yau_twist(&algebra::sl2(), &phi).unwrap()
}

fn gl2_algebra(beta: Matrix) -> HomLieAlgebra {
    TwistedMatrixSpace::new(beta).unwrap().gl_to_algebra().unwrap()
}

fn unitriangular(m: usize) -> Matrix {
    Matrix::from_fn(Mode::Exact, m, m, |i, j| {
        if i == j || j == i + 1 {
            Scalar::int(1)
        } else {
            Scalar::int(0)
        }
    })
}

/// The exact, multiplicative, regular structures everything is checked on.
fn corpus() -> Vec<(&'static str, HomLieAlgebra)> {
    vec![
        ("sl2", algebra::sl2()),
        ("yau-sl2 lambda=2", yau_sl2(Scalar::int(2))),
        ("yau-sl2 lambda=3", yau_sl2(Scalar::int(3))),
        ("yau-sl2 lambda=1/2", yau_sl2(Scalar::ratio(1, 2))),
        (
            "gl2 beta=diag(1,2)",
            gl2_algebra(Matrix::diagonal(&[Scalar::int(1), Scalar::int(2)])),
        ),
        ("gl2 beta=unitriangular", gl2_algebra(unitriangular(2))),
        ("nonabelian dim 2", algebra::two_dim_nonabelian()),
        ("abelian dim 2", algebra::abelian(2)),
    ]
}

/// The twist shapes used for the numerical group-side criteria, sized to m.
fn betas(m: usize) -> Vec<(&'static str, Matrix)> {
    let diag: Vec<Scalar> = (1..=m as i64).map(Scalar::int).collect();
    vec![
        ("identity", Matrix::identity(Mode::Exact, m)),
        ("diagonal", Matrix::diagonal(&diag)),
        ("unitriangular", unitriangular(m)),
    ]
}

fn sample(rng: &mut ChaCha8Rng, m: usize, scale: f64) -> Matrix {
    Matrix::from_fn(Mode::Approx, m, m, |_, _| {
        Scalar::Approx(rng.random_range(-scale..scale))
    })
}

fn budget(name: &str, started: Instant, max: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < max,
        "{name} exceeded its runtime budget: {elapsed:?} > {max:?}"
    );
}

#[test]
fn criterion_1_axiom_suite() {
    let started = Instant::now();
    for (name, alg) in [
        ("sl2", algebra::sl2()),
        ("yau-sl2 lambda=2", yau_sl2(Scalar::int(2))),
        ("yau-sl2 lambda=3", yau_sl2(Scalar::int(3))),
        ("yau-sl2 lambda=1/2", yau_sl2(Scalar::ratio(1, 2))),
        (
            "gl2 beta=diag(1,2)",
            gl2_algebra(Matrix::diagonal(&[Scalar::int(1), Scalar::int(2)])),
        ),
        ("gl2 beta=unitriangular", gl2_algebra(unitriangular(2))),
    ] {
        let report = alg.check_axioms();
        assert!(report.all_pass(), "{name} must satisfy every axiom");
    }

    // the q-deformation twist fails multiplicativity with known coefficients:
    // the first offending pair is (e, f) and the disagreement sits on the
    // h-component, computed by hand from φ[e,f] = (1+q)/2·φ(h) against
    // [φe, φf] = (q⁻¹+1)/2 · (q+1)/2 · (1+q)/2 · h
    let zero = Scalar::int(0);
    for (q, lhs_h, rhs_h) in [
        (Scalar::int(2), Scalar::ratio(3, 2), Scalar::ratio(27, 16)),
        (Scalar::int(3), Scalar::int(2), Scalar::ratio(8, 3)),
        (
            Scalar::ratio(1, 2),
            Scalar::ratio(3, 4),
            Scalar::ratio(27, 32),
        ),
    ] {
        let report = algebra::q_sl2(&q).unwrap().check_axioms();
        assert!(!report.multiplicative);
        assert!(report.skew && report.hom_jacobi && report.regular);
        let w = report
            .witnesses
            .iter()
            .find(|w| w.axiom == "multiplicative")
            .expect("a witness accompanies the failed verdict");
        assert_eq!(w.indices, vec![0, 2]);
        assert_eq!(w.lhs, vec![zero.clone(), lhs_h, zero.clone()]);
        assert_eq!(w.rhs, vec![zero.clone(), rhs_h, zero.clone()]);
    }
    budget("criterion 1", started, Duration::from_secs(1));
    println!("criterion 1 (exact axiom suite, q-deformation witnesses): pass");
}

#[test]
fn criterion_2_twist_untwist_roundtrip() {
    let started = Instant::now();
    for (name, alg) in corpus() {
        let lie = alg.induced_lie().unwrap();
        let back = yau_twist(&lie, alg.phi()).unwrap();
        assert!(
            back.same_structure(&alg),
            "{name} must survive untwist/retwist unchanged"
        );
    }
    budget("criterion 2", started, Duration::from_secs(1));
    println!("criterion 2 (induced-Lie / twist roundtrip on the corpus): pass");
}

#[test]
fn criterion_3_cohomology_consistency() {
    let started = Instant::now();
    for (name, alg) in corpus() {
        let rep = Representation::adjoint(&alg).unwrap();
        for k in 0..=2 {
            let check = rep.d_squared_check(k).unwrap();
            assert!(check.pass, "{name}: d∘d ≠ 0 entering degree {k}");
        }
        let dims = rep.cohomology_dims(1).unwrap();
        assert_eq!(
            dims[0].h,
            alg.center().cols(),
            "{name}: H⁰ must match the center"
        );
        let der = derivation_space(&alg).unwrap();
        assert_eq!(
            dims[1].h, der.outer_dim,
            "{name}: H¹ must match the outer derivations"
        );
    }
    budget("criterion 3", started, Duration::from_secs(5));
    println!("criterion 3 (d²=0, H⁰=center, H¹=outer derivations): pass");
}

#[test]
fn criterion_4_commutator_theorem() {
    let started = Instant::now();
    for m in [2usize, 3] {
        for (bname, beta) in betas(m) {
            let sp = TwistedMatrixSpace::new(beta.to_approx()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(40 + m as u64);
            for _ in 0..20 {
                let a = sample(&mut rng, m, 0.75);
                let b = sample(&mut rng, m, 0.75);
                let fine = sp.commutator_fd_verify(&a, &b, 1e-4).unwrap();
                assert!(
                    fine.residual <= TOL_COMMUTATOR_FD,
                    "m={m} beta={bname}: stencil residual {} at h=1e-4",
                    fine.residual
                );
                assert!(fine.form_agreement <= TOL_FORM_AGREEMENT);
                let mut residuals = Vec::new();
                for h in [0.05, 0.025, 0.0125] {
                    let chk = sp.commutator_fd_verify(&a, &b, h).unwrap();
                    assert!(chk.form_agreement <= TOL_FORM_AGREEMENT);
                    residuals.push(chk.residual);
                }
                assert!(
                    residuals[0] >= SECOND_ORDER_FACTOR * residuals[1]
                        && residuals[1] >= SECOND_ORDER_FACTOR * residuals[2],
                    "m={m} beta={bname}: residuals {residuals:?} are not second order"
                );
            }
        }
    }
    budget("criterion 4", started, Duration::from_secs(10));
    println!("criterion 4 (commutator stencil matches the twisted bracket): pass");
}

#[test]
fn criterion_5_one_parameter_law() {
    let started = Instant::now();
    let grid: Vec<f64> = (0..5).map(|i| -1.0 + 0.5 * i as f64).collect();
    let pairs: Vec<(f64, f64)> = grid
        .iter()
        .flat_map(|&t| grid.iter().map(move |&s| (t, s)))
        .collect();
    for m in [2usize, 3] {
        for (bname, beta) in betas(m) {
            let sp = TwistedMatrixSpace::new(beta.to_approx()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(50 + m as u64);
            for _ in 0..10 {
                let a = sample(&mut rng, m, 1.0);
                let worst = sp.one_param_check(&a, &pairs).unwrap();
                assert!(
                    worst <= TOL_ONE_PARAM,
                    "m={m} beta={bname}: addition-law residual {worst}"
                );
            }
        }
    }
    budget("criterion 5", started, Duration::from_secs(5));
    println!("criterion 5 (one-parameter twisted addition law on a 5x5 grid): pass");
}

#[test]
fn criterion_6_integrating_derivations() {
    let started = Instant::now();
    for (name, alg) in corpus() {
        let der = derivation_space(&alg).unwrap();
        let approx = alg.to_approx();
        for d in &der.basis {
            for t in [0.1, 0.5, 1.0] {
                let theta = integrate_derivation(&approx, &d.to_approx(), t).unwrap();
                let check = is_automorphism(&approx, &theta).unwrap();
                assert!(
                    check.pass && check.residual <= TOL_INTEGRATED_AUT,
                    "{name}: Hexp({t}·D) strayed by {}",
                    check.residual
                );
            }
        }
    }
    // the identity matrix is not a derivation of sl2 and must not integrate
    let sl2_approx = algebra::sl2().to_approx();
    let eye = Matrix::identity(Mode::Approx, 3);
    assert!(matches!(
        integrate_derivation(&sl2_approx, &eye, 0.1),
        Err(Error::NotDerivation { .. })
    ));
    let forced = hexp_formula(&sl2_approx, &eye, 0.1).unwrap();
    let check = is_automorphism(&sl2_approx, &forced).unwrap();
    assert!(
        check.residual > NON_DERIVATION_FLOOR,
        "a non-derivation must visibly fail to integrate, residual {}",
        check.residual
    );
    budget("criterion 6", started, Duration::from_secs(5));
    println!("criterion 6 (derivations integrate to automorphisms, iff): pass");
}

#[test]
fn criterion_7_adjoint_tower() {
    let started = Instant::now();
    let beta = Matrix::diagonal(&[Scalar::int(1), Scalar::int(2)]).to_approx();
    let beta_inv = linalg::inverse(&beta).unwrap();
    let sp = TwistedMatrixSpace::new(beta.clone()).unwrap();
    // Âd(a): conjugation of the algebra by a group element
    let ad_conj = |a: &Matrix, y: &Matrix| -> Matrix {
        a.mul(y)
            .mul(&beta_inv)
            .mul(&linalg::inverse(a).unwrap())
            .mul(&beta)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let h = 1e-3;
    for _ in 0..10 {
        let x = sample(&mut rng, 2, 1.0);
        let y = sample(&mut rng, 2, 1.0);
        let plus = ad_conj(&sp.hexp(&x.scale(&Scalar::Approx(h))).unwrap(), &y);
        let minus = ad_conj(&sp.hexp(&x.scale(&Scalar::Approx(-h))).unwrap(), &y);
        let deriv = plus.sub(&minus).scale(&Scalar::Approx(1.0 / (2.0 * h)));
        let bracket = sp.gl_bracket(&x, &y).unwrap();
        assert!(
            deriv.max_abs_diff(&bracket) <= TOL_ADJOINT,
            "d/ds Âd(hexp(sX))Y missed the bracket by {}",
            deriv.max_abs_diff(&bracket)
        );
        let check = sp.adhat_hexp_check(&x, TOL_ADJOINT).unwrap();
        assert!(
            check.pass,
            "Âd(Hexp X) vs Hexp(âd X) residual {}",
            check.residual
        );
    }
    budget("criterion 7", started, Duration::from_secs(10));
    println!("criterion 7 (adjoint tower: infinitesimal and exponentiated): pass");
}

#[test]
fn criterion_8_finite_homgroups() {
    let started = Instant::now();
    for n in 1..=12 {
        let table = homgroup::cyclic_table(n);
        for phi in homgroup::cyclic_automorphisms(n) {
            let g = homgroup::from_automorphism(&table, &phi).unwrap();
            let report = g.check_axioms();
            assert!(report.pass(), "Z/{n} twisted by {phi:?}: {report:?}");
            assert!(g.tilde_ad_check().unwrap().pass);
        }
    }
    let s3 = homgroup::symmetric3_table();
    let inner = homgroup::inner_automorphisms(&s3).unwrap();
    assert_eq!(inner.len(), 6, "S₃ has trivial center, so six conjugations");
    for phi in inner {
        let g = homgroup::from_automorphism(&s3, &phi).unwrap();
        assert!(g.check_axioms().pass());
        assert!(g.tilde_ad_check().unwrap().pass);
    }
    let d4 = homgroup::from_automorphism(
        &homgroup::dihedral4_table(),
        &homgroup::dihedral4_outer_automorphism(),
    )
    .unwrap();
    assert!(d4.check_axioms().pass());
    assert!(d4.tilde_ad_check().unwrap().pass);
    budget("criterion 8", started, Duration::from_secs(5));
    println!("criterion 8 (finite Hom-groups from group automorphisms): pass");
}
