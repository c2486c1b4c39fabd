//! The matrix Hom-Lie group (GL(V), ⋄, Ad_β) and its Hom-Lie algebra
//! (gl(V), [·,·]_β, Ad_β) for an invertible twist β.
//!
//! Products, brackets and adjoints are closed-form matrix algebra; the
//! differential-geometric statements (one-parameter law, bracket from the
//! group commutator, the adjoint tower Ãd → Âd → âd) are verified with
//! central finite differences on matrix curves, which is enough because every
//! map involved is matrix-analytic.
//!
//! Basis convention for operators on gl(V): matrices are flattened
//! column-major, i.e. basis order E₁₁, E₂₁, …, E_m1, E₁₂, …

use crate::algebra::HomLieAlgebra;
use crate::error::Error;
use crate::linalg::{self, Matrix, Mode, Scalar, TAU_RES};

/// Central-difference step for first-layer differentials (curves through the
/// Hom-unit).
pub const H_AD: f64 = 1e-5;
/// Step for the second differential layer (derivative of an already
/// finite-differenced map). Larger than `H_AD` so that the inner layer's
/// ~1e−9 absolute error, amplified by 1/(2h), stays well below truncation.
pub const H_AD_OUTER: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct TwistedMatrixSpace {
    m: usize,
    beta: Matrix,
    beta_inv: Matrix,
}

/// Finite-difference verification of the bracket-from-commutator identity.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub fd_estimate: Matrix,
    pub closed_form: Matrix,
    /// ‖fd_estimate − closed_form‖∞.
    pub residual: f64,
    pub step: f64,
    /// Worst disagreement between the nested ⋄/Ad form of Ω and its
    /// simplified product form over the four stencil points.
    pub form_agreement: f64,
}

/// Worst-case residuals of the Hom-group axioms over a sample set.
#[derive(Clone, Debug)]
pub struct MatGroupReport {
    /// Φ(x⋄y) = Φ(x)⋄Φ(y).
    pub multiplicativity: f64,
    /// Φ(x)⋄(y⋄z) = (x⋄y)⋄Φ(z).
    pub hom_associativity: f64,
    /// x⋄β = β⋄x = Φ(x).
    pub unit: f64,
    /// x⋄x⁻¹ = x⁻¹⋄x = β.
    pub inverse: f64,
    pub pass: bool,
}

/// Residuals of the Ãd action laws over a sample set.
#[derive(Clone, Debug)]
pub struct ActionReport {
    /// Ãd(β, x) = Ad_β(x).
    pub unit_residual: f64,
    /// Ãd(a⋄b, x) = Ãd(Φ(a), Φ⁻¹(Ãd(Φ(b), x))).
    pub composition_residual: f64,
    pub pass: bool,
}

/// Comparison of Âd(Hexp X) against the operator-level Hom-exponential of
/// âd(X).
#[derive(Clone, Debug)]
pub struct AdhatHexpCheck {
    pub lhs: Matrix,
    pub rhs: Matrix,
    pub residual: f64,
    pub pass: bool,
}

impl TwistedMatrixSpace {
    pub fn new(beta: Matrix) -> Result<Self, Error> {
        if beta.rows() != beta.cols() {
            return Err(Error::dims(format!(
                "twist must be square, got {}x{}",
                beta.rows(),
                beta.cols()
            )));
        }
        let beta_inv = linalg::inverse(&beta)?;
        Ok(TwistedMatrixSpace {
            m: beta.rows(),
            beta,
            beta_inv,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> Mode {
        self.beta.mode()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn to_approx(&self) -> TwistedMatrixSpace {
        TwistedMatrixSpace {
            m: self.m,
            beta: self.beta.to_approx(),
            beta_inv: self.beta_inv.to_approx(),
        }
    }

    fn want_square(&self, a: &Matrix, what: &str) -> Result<(), Error> {
        if a.rows() != self.m || a.cols() != self.m {
            return Err(Error::dims(format!(
                "{what} must be {0}x{0}, got {1}x{2}",
                self.m,
                a.rows(),
                a.cols()
            )));
        }
        if a.mode() != self.mode() {
            return Err(Error::mode(format!("{what} mode differs from the space's mode")));
        }
        Ok(())
    }

    fn want_approx(&self, what: &str) -> Result<(), Error> {
        if self.mode() != Mode::Approx {
            return Err(Error::mode(format!("{what} needs approx (float) mode")));
        }
        Ok(())
    }

    /// Ad_β(A) = βAβ⁻¹.
    pub fn ad_beta(&self, a: &Matrix) -> Result<Matrix, Error> {
        self.want_square(a, "Ad_β argument")?;
        Ok(self.beta.mul(a).mul(&self.beta_inv))
    }

    /// Ad_β⁻¹(A) = β⁻¹Aβ.
    pub fn ad_beta_inv(&self, a: &Matrix) -> Result<Matrix, Error> {
        self.want_square(a, "Ad_β⁻¹ argument")?;
        Ok(self.beta_inv.mul(a).mul(&self.beta))
    }

    /// Twisted bracket [A,B]_β = βAβ⁻¹Bβ⁻¹ − βBβ⁻¹Aβ⁻¹.
    pub fn gl_bracket(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, Error> {
        self.want_square(a, "bracket argument")?;
        self.want_square(b, "bracket argument")?;
        let left = self.ad_beta(a)?.mul(&b.mul(&self.beta_inv));
        let right = self.ad_beta(b)?.mul(&a.mul(&self.beta_inv));
        Ok(left.sub(&right))
    }

    /// Hom-product A⋄B = βAβ⁻¹Bβ⁻¹.
    pub fn group_product(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, Error> {
        self.want_square(a, "product argument")?;
        self.want_square(b, "product argument")?;
        Ok(self.ad_beta(a)?.mul(&b.mul(&self.beta_inv)))
    }

    /// Hom-inverse βA⁻¹β: the unique X with A⋄X = X⋄A = β.
    pub fn group_inverse(&self, a: &Matrix) -> Result<Matrix, Error> {
        self.want_square(a, "inverse argument")?;
        let a_inv = linalg::inverse(a)?;
        Ok(self.beta.mul(&a_inv).mul(&self.beta))
    }

    /// Hom-exponential 𝔢_β(A) = β·e^{Aβ⁻¹}. Sends 0 to the Hom-unit β.
    pub fn hexp(&self, a: &Matrix) -> Result<Matrix, Error> {
        self.want_approx("hexp")?;
        self.want_square(a, "hexp argument")?;
        Ok(self.beta.mul(&linalg::mat_exp(&a.mul(&self.beta_inv))?))
    }

    /// Verify the Hom-group axioms on the given invertible samples: twist
    /// multiplicativity on pairs, Hom-associativity on triples, the Hom-unit
    /// law and existence of Hom-inverses on singletons. At least three
    /// samples are required; each must be invertible.
    pub fn check_homgroup(&self, samples: &[Matrix]) -> Result<MatGroupReport, Error> {
        if samples.len() < 3 {
            return Err(Error::BadParameter(
                "need at least three sample matrices".into(),
            ));
        }
        for s in samples {
            self.want_square(s, "sample")?;
            linalg::inverse(s)?;
        }
        let mut multiplicativity: f64 = 0.0;
        let mut hom_associativity: f64 = 0.0;
        let mut unit: f64 = 0.0;
        let mut inverse: f64 = 0.0;
        for x in samples {
            let phix = self.ad_beta(x)?;
            let left = self.group_product(x, &self.beta)?;
            let right = self.group_product(&self.beta, x)?;
            unit = unit
                .max(left.max_abs_diff(&phix))
                .max(right.max_abs_diff(&phix));
            let xinv = self.group_inverse(x)?;
            inverse = inverse
                .max(self.group_product(x, &xinv)?.max_abs_diff(&self.beta))
                .max(self.group_product(&xinv, x)?.max_abs_diff(&self.beta));
            for y in samples {
                let lhs = self.ad_beta(&self.group_product(x, y)?)?;
                let rhs = self.group_product(&self.ad_beta(x)?, &self.ad_beta(y)?)?;
                multiplicativity = multiplicativity.max(lhs.max_abs_diff(&rhs));
                for z in samples {
                    let lhs = self.group_product(&self.ad_beta(x)?, &self.group_product(y, z)?)?;
                    let rhs = self.group_product(&self.group_product(x, y)?, &self.ad_beta(z)?)?;
                    hom_associativity = hom_associativity.max(lhs.max_abs_diff(&rhs));
                }
            }
        }
        let tol = match self.mode() {
            Mode::Exact => 0.0,
            Mode::Approx => TAU_RES,
        };
        let pass = multiplicativity <= tol
            && hom_associativity <= tol
            && unit <= tol
            && inverse <= tol;
        Ok(MatGroupReport {
            multiplicativity,
            hom_associativity,
            unit,
            inverse,
            pass,
        })
    }

    /// σ_A(t) = 𝔢_β(tA).
    pub fn one_param(&self, a: &Matrix, t: f64) -> Result<Matrix, Error> {
        self.hexp(&a.scale(&Scalar::Approx(t)))
    }

    /// Max residual of σ_A(t+s) = (Ad_β⁻¹ σ_A(t)) ⋄ (Ad_β⁻¹ σ_A(s)) over the
    /// given (t, s) pairs.
    pub fn one_param_check(&self, a: &Matrix, ts: &[(f64, f64)]) -> Result<f64, Error> {
        self.want_approx("one_param_check")?;
        self.want_square(a, "one_param_check argument")?;
        let mut worst: f64 = 0.0;
        for &(t, s) in ts {
            let lhs = self.one_param(a, t + s)?;
            let rhs = self.group_product(
                &self.ad_beta_inv(&self.one_param(a, t)?)?,
                &self.ad_beta_inv(&self.one_param(a, s)?)?,
            )?;
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        Ok(worst)
    }

    /// The group commutator curve in its nested Hom-group form
    /// ((Ad_β⁻³(𝔢(sA)⋄𝔢(tB))) ⋄ Ad_β⁻²(𝔢(−sA))) ⋄ Ad_β⁻¹(𝔢(−tB)).
    fn omega_nested(&self, a: &Matrix, b: &Matrix, s: f64, t: f64) -> Result<Matrix, Error> {
        let ea = self.one_param(a, s)?;
        let eb = self.one_param(b, t)?;
        let ea_neg = self.one_param(a, -s)?;
        let eb_neg = self.one_param(b, -t)?;
        let mut u = self.group_product(&ea, &eb)?;
        for _ in 0..3 {
            u = self.ad_beta_inv(&u)?;
        }
        let v = self.ad_beta_inv(&self.ad_beta_inv(&ea_neg)?)?;
        let w = self.ad_beta_inv(&eb_neg)?;
        self.group_product(&self.group_product(&u, &v)?, &w)
    }

    /// The same curve collapsed to β·e^{sAβ⁻¹}e^{tBβ⁻¹}e^{−sAβ⁻¹}e^{−tBβ⁻¹}.
    fn omega_product(&self, a: &Matrix, b: &Matrix, s: f64, t: f64) -> Result<Matrix, Error> {
        let e = |m: &Matrix, x: f64| linalg::mat_exp(&m.mul(&self.beta_inv).scale(&Scalar::Approx(x)));
        Ok(self
            .beta
            .mul(&e(a, s)?)
            .mul(&e(b, t)?)
            .mul(&e(a, -s)?)
            .mul(&e(b, -t)?))
    }

    /// Recover [A,B]_β as the mixed second derivative ∂t∂s|₀ of the group
    /// commutator curve Ω, estimated with the four-point central stencil at
    /// step `h`. Both algebraic forms of Ω are evaluated and their worst
    /// disagreement reported.
    pub fn commutator_fd_verify(
        &self,
        a: &Matrix,
        b: &Matrix,
        h: f64,
    ) -> Result<CommutatorCheck, Error> {
        self.want_approx("commutator_fd_verify")?;
        self.want_square(a, "commutator argument")?;
        self.want_square(b, "commutator argument")?;
        if !(h > 0.0 && h <= 0.1) {
            return Err(Error::BadParameter(format!(
                "step must lie in (0, 0.1], got {h}"
            )));
        }
        let mut form_agreement: f64 = 0.0;
        let mut stencil = Vec::with_capacity(4);
        for (s, t) in [(h, h), (h, -h), (-h, h), (-h, -h)] {
            let nested = self.omega_nested(a, b, s, t)?;
            let product = self.omega_product(a, b, s, t)?;
            form_agreement = form_agreement.max(nested.max_abs_diff(&product));
            stencil.push(product);
        }
        let fd_estimate = stencil[0]
            .sub(&stencil[1])
            .sub(&stencil[2].sub(&stencil[3]))
            .scale(&Scalar::Approx(1.0 / (4.0 * h * h)));
        let closed_form = self.gl_bracket(a, b)?;
        let residual = fd_estimate.max_abs_diff(&closed_form);
        Ok(CommutatorCheck {
            fd_estimate,
            closed_form,
            residual,
            step: h,
            form_agreement,
        })
    }

    /// Twisted conjugation Ãd(a, b) = Φ⁻¹(a⋄b) ⋄ a⁻¹ with Φ = Ad_β and a⁻¹
    /// the Hom-inverse.
    pub fn tilde_ad(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, Error> {
        let prod = self.group_product(a, b)?;
        self.group_product(&self.ad_beta_inv(&prod)?, &self.group_inverse(a)?)
    }

    /// Verify the action laws of Ãd on the sample set: the Hom-unit acts as
    /// Ad_β, and Ãd(a⋄b, x) = Ãd(Φ(a), Φ⁻¹(Ãd(Φ(b), x))).
    pub fn tilde_ad_action_check(&self, samples: &[Matrix]) -> Result<ActionReport, Error> {
        if samples.is_empty() {
            return Err(Error::BadParameter("need at least one sample".into()));
        }
        let mut unit_residual: f64 = 0.0;
        let mut composition_residual: f64 = 0.0;
        for x in samples {
            unit_residual =
                unit_residual.max(self.tilde_ad(&self.beta, x)?.max_abs_diff(&self.ad_beta(x)?));
            for a in samples {
                for b in samples {
                    let lhs = self.tilde_ad(&self.group_product(a, b)?, x)?;
                    let inner = self.ad_beta_inv(&self.tilde_ad(&self.ad_beta(b)?, x)?)?;
                    let rhs = self.tilde_ad(&self.ad_beta(a)?, &inner)?;
                    composition_residual = composition_residual.max(lhs.max_abs_diff(&rhs));
                }
            }
        }
        let tol = match self.mode() {
            Mode::Exact => 0.0,
            Mode::Approx => TAU_RES,
        };
        Ok(ActionReport {
            unit_residual,
            composition_residual,
            pass: unit_residual <= tol && composition_residual <= tol,
        })
    }

    fn basis_matrix(&self, k: usize) -> Matrix {
        let mut e = Matrix::zeros(self.mode(), self.m, self.m);
        e.set(k % self.m, k / self.m, Scalar::one(self.mode()));
        e
    }

    fn vec_of(&self, a: &Matrix) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.m * self.m);
        for c in 0..self.m {
            for r in 0..self.m {
                v.push(a.get(r, c).clone());
            }
        }
        v
    }

    /// Matrix of Ad_β as an operator on column-major-flattened gl(V).
    pub fn ad_beta_operator(&self) -> Matrix {
        let n = self.m * self.m;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| self.vec_of(&self.ad_beta(&self.basis_matrix(k)).expect("dims")))
            .collect();
        Matrix::from_cols(self.mode(), n, &cols)
    }

    /// Âd(a), the linearization of Ãd(a, ·) at the Hom-unit, as an m²×m²
    /// matrix: column k is Ad_β⁻¹(d/dt|₀ Ãd(a, 𝔢_β(t·E_k))) by central
    /// differences with step `H_AD`.
    pub fn ad_hat(&self, a: &Matrix) -> Result<Matrix, Error> {
        self.want_approx("ad_hat")?;
        self.want_square(a, "ad_hat argument")?;
        linalg::inverse(a)?;
        let n = self.m * self.m;
        let half_step = Scalar::Approx(1.0 / (2.0 * H_AD));
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let e = self.basis_matrix(k);
            let plus = self.tilde_ad(a, &self.one_param(&e, H_AD)?)?;
            let minus = self.tilde_ad(a, &self.one_param(&e, -H_AD)?)?;
            let deriv = plus.sub(&minus).scale(&half_step);
            cols.push(self.vec_of(&self.ad_beta_inv(&deriv)?));
        }
        Ok(Matrix::from_cols(self.mode(), n, &cols))
    }

    /// âd(X), the infinitesimal adjoint, as an m²×m² matrix: the derivative
    /// of s ↦ Âd(𝔢_β(sX)) at 0, untwisted by the operator-level Ad_β. Uses
    /// the wider step `H_AD_OUTER` because each evaluation of Âd is itself a
    /// finite difference.
    pub fn ad_lower(&self, x: &Matrix) -> Result<Matrix, Error> {
        self.want_approx("ad_lower")?;
        self.want_square(x, "ad_lower argument")?;
        let h = H_AD_OUTER;
        let plus = self.ad_hat(&self.one_param(x, h)?)?;
        let minus = self.ad_hat(&self.one_param(x, -h)?)?;
        let deriv = plus.sub(&minus).scale(&Scalar::Approx(1.0 / (2.0 * h)));
        let p = self.ad_beta_operator();
        let p_inv = linalg::inverse(&p).expect("Ad_β operator is invertible");
        Ok(p_inv.mul(&deriv).mul(&p))
    }

    /// Check Âd(𝔢_β(X)) = 𝔢_P(âd(X)) where P is the operator-level Ad_β and
    /// 𝔢_P is the Hom-exponential of the m²×m² Hom-Lie group twisted by P.
    pub fn adhat_hexp_check(&self, x: &Matrix, tol: f64) -> Result<AdhatHexpCheck, Error> {
        self.want_approx("adhat_hexp_check")?;
        self.want_square(x, "adhat_hexp_check argument")?;
        let lhs = self.ad_hat(&self.hexp(x)?)?;
        let operator_space = TwistedMatrixSpace::new(self.ad_beta_operator())?;
        let rhs = operator_space.hexp(&self.ad_lower(x)?)?;
        let residual = lhs.max_abs_diff(&rhs);
        Ok(AdhatHexpCheck {
            lhs,
            rhs,
            residual,
            pass: residual <= tol,
        })
    }

    /// Present (gl(V), [·,·]_β, Ad_β) as an m²-dimensional Hom-Lie algebra
    /// over the rationals in the flattened elementary-matrix basis. Exact
    /// mode only.
    pub fn gl_to_algebra(&self) -> Result<HomLieAlgebra, Error> {
        if self.mode() != Mode::Exact {
            return Err(Error::mode("gl_to_algebra needs an exact-mode twist"));
        }
        let n = self.m * self.m;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.gl_bracket(&self.basis_matrix(i), &self.basis_matrix(j))?;
                for (k, v) in self.vec_of(&c).into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        let labels = (0..n)
            .map(|k| format!("E{}{}", k % self.m + 1, k / self.m + 1))
            .collect();
        HomLieAlgebra::new(n, Mode::Exact, entries, self.ad_beta_operator(), Some(labels))
    }
}

/// Draw an m×m matrix with entries uniform in [−1,1], rejecting candidates
/// with |det| < 0.1 so that sample sets stay well-conditioned.
pub fn random_invertible<R: rand::Rng>(rng: &mut R, m: usize) -> Matrix {
    loop {
        let cand = Matrix::from_fn(Mode::Approx, m, m, |_, _| {
            Scalar::Approx(rng.random_range(-1.0..=1.0))
        });
        if linalg::det_approx(&cand).expect("square approx matrix").abs() >= 0.1 {
            return cand;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn diag12_exact() -> TwistedMatrixSpace {
        TwistedMatrixSpace::new(Matrix::diagonal(&[Scalar::int(1), Scalar::int(2)])).unwrap()
    }

    fn diag12() -> TwistedMatrixSpace {
        diag12_exact().to_approx()
    }

    fn e12(mode: Mode) -> Matrix {
        let mut a = Matrix::zeros(mode, 2, 2);
        a.set(0, 1, Scalar::one(mode));
        a
    }

    fn e21(mode: Mode) -> Matrix {
        let mut a = Matrix::zeros(mode, 2, 2);
        a.set(1, 0, Scalar::one(mode));
        a
    }

    #[test]
    fn bracket_with_identity_twist_is_the_commutator() {
        let s = TwistedMatrixSpace::new(Matrix::identity(Mode::Exact, 2)).unwrap();
        let got = s.gl_bracket(&e12(Mode::Exact), &e21(Mode::Exact)).unwrap();
        let want = Matrix::diagonal(&[Scalar::int(1), Scalar::int(-1)]);
        assert_eq!(got, want);
        // skew: [A,A] = 0
        assert!(s
            .gl_bracket(&e12(Mode::Exact), &e12(Mode::Exact))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn twisted_bracket_of_elementary_matrices() {
        let s = diag12_exact();
        let got = s.gl_bracket(&e12(Mode::Exact), &e21(Mode::Exact)).unwrap();
        let want = Matrix::diagonal(&[Scalar::ratio(1, 2), Scalar::int(-1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn ad_beta_conjugates() {
        let s = diag12_exact();
        let got = s.ad_beta(&e12(Mode::Exact)).unwrap();
        let mut want = Matrix::zeros(Mode::Exact, 2, 2);
        want.set(0, 1, Scalar::ratio(1, 2));
        assert_eq!(got, want);
        assert_eq!(s.ad_beta(s.beta()).unwrap(), *s.beta());
    }

    #[test]
    fn hom_inverse_and_unit_laws() {
        let s = diag12_exact();
        let a = Matrix::diagonal(&[Scalar::int(3), Scalar::int(4)]);
        let inv = s.group_inverse(&a).unwrap();
        assert_eq!(inv, Matrix::diagonal(&[Scalar::ratio(1, 3), Scalar::int(1)]));
        assert_eq!(s.group_product(&a, &inv).unwrap(), *s.beta());
        assert_eq!(s.group_product(&inv, &a).unwrap(), *s.beta());
        // x⋄β = β⋄x = Ad_β(x)
        let x = Matrix::from_entries(
            Mode::Exact,
            2,
            2,
            vec![Scalar::int(1), Scalar::int(2), Scalar::int(-1), Scalar::int(1)],
        )
        .unwrap();
        let phix = s.ad_beta(&x).unwrap();
        assert_eq!(s.group_product(&x, s.beta()).unwrap(), phix);
        assert_eq!(s.group_product(s.beta(), &x).unwrap(), phix);
    }

    #[test]
    fn homgroup_axioms_hold_on_random_samples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s = diag12();
        let samples: Vec<Matrix> = (0..6).map(|_| random_invertible(&mut rng, 2)).collect();
        let report = s.check_homgroup(&samples).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn homgroup_check_rejects_bad_input() {
        let s = diag12();
        let ok = Matrix::identity(Mode::Approx, 2);
        assert!(matches!(
            s.check_homgroup(&[ok.clone(), ok.clone()]),
            Err(Error::BadParameter(_))
        ));
        let singular = Matrix::zeros(Mode::Approx, 2, 2);
        assert!(matches!(
            s.check_homgroup(&[ok.clone(), ok, singular]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn hexp_frozen_values() {
        let s = diag12();
        assert!(s
            .hexp(&Matrix::zeros(Mode::Approx, 2, 2))
            .unwrap()
            .max_abs_diff(s.beta())
            < 1e-15);
        let a = Matrix::diagonal(&[Scalar::Approx(1.0), Scalar::Approx(2.0)]);
        let got = s.hexp(&a).unwrap();
        let e = std::f64::consts::E;
        let want = Matrix::diagonal(&[Scalar::Approx(e), Scalar::Approx(2.0 * e)]);
        assert!(got.max_abs_diff(&want) < 1e-14);
        // exact mode is refused
        assert!(matches!(
            diag12_exact().hexp(&Matrix::zeros(Mode::Exact, 2, 2)),
            Err(Error::Mode(_))
        ));
    }

    #[test]
    fn one_param_law_on_a_grid() {
        let s = diag12();
        let a = Matrix::from_entries(
            Mode::Approx,
            2,
            2,
            vec![
                Scalar::Approx(0.0),
                Scalar::Approx(1.0),
                Scalar::Approx(1.0),
                Scalar::Approx(0.0),
            ],
        )
        .unwrap();
        let mut grid = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                grid.push((-1.0 + 0.5 * i as f64, -1.0 + 0.5 * j as f64));
            }
        }
        let worst = s.one_param_check(&a, &grid).unwrap();
        assert!(worst <= 1e-9, "worst residual {worst}");
        // σ_A(0) consistency: hexp(tA) ⋄-inverts hexp(−tA) after untwisting
        let t = 0.7;
        let lhs = s
            .group_product(
                &s.ad_beta_inv(&s.one_param(&a, t).unwrap()).unwrap(),
                &s.ad_beta_inv(&s.one_param(&a, -t).unwrap()).unwrap(),
            )
            .unwrap();
        assert!(lhs.max_abs_diff(s.beta()) <= 1e-9);
    }

    #[test]
    fn commutator_fd_matches_closed_form() {
        let s = diag12();
        let check = s
            .commutator_fd_verify(&e12(Mode::Approx), &e21(Mode::Approx), 1e-4)
            .unwrap();
        let want = Matrix::from_entries(
            Mode::Approx,
            2,
            2,
            vec![
                Scalar::Approx(0.5),
                Scalar::Approx(0.0),
                Scalar::Approx(0.0),
                Scalar::Approx(-1.0),
            ],
        )
        .unwrap();
        assert!(check.closed_form.max_abs_diff(&want) < 1e-15);
        assert!(check.residual <= 1e-6, "residual {}", check.residual);
        assert!(check.form_agreement <= TAU_RES, "forms disagree {}", check.form_agreement);
        // identity twist reduces to the classical commutator
        let si = TwistedMatrixSpace::new(Matrix::identity(Mode::Approx, 2)).unwrap();
        let ci = si
            .commutator_fd_verify(&e12(Mode::Approx), &e21(Mode::Approx), 1e-4)
            .unwrap();
        assert!(ci.residual <= 1e-6);
        // A = B gives zero
        let cz = s
            .commutator_fd_verify(&e12(Mode::Approx), &e12(Mode::Approx), 1e-3)
            .unwrap();
        assert!(cz.closed_form.is_zero());
        assert!(cz.residual <= 1e-6);
        assert!(matches!(
            s.commutator_fd_verify(&e12(Mode::Approx), &e21(Mode::Approx), 0.5),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn tilde_ad_closed_form_and_action_laws() {
        let s = diag12();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<Matrix> = (0..4).map(|_| random_invertible(&mut rng, 2)).collect();
        // closed form βaβ⁻¹ba⁻¹
        for a in &samples {
            for b in &samples {
                let got = s.tilde_ad(a, b).unwrap();
                let want = s
                    .ad_beta(a)
                    .unwrap()
                    .mul(b)
                    .mul(&linalg::inverse(a).unwrap());
                assert!(got.max_abs_diff(&want) <= 1e-10);
            }
        }
        let report = s.tilde_ad_action_check(&samples).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.composition_residual <= 1e-8);
        // β = I: ordinary conjugation
        let si = TwistedMatrixSpace::new(Matrix::identity(Mode::Approx, 2)).unwrap();
        let a = &samples[0];
        let b = &samples[1];
        let want = a.mul(b).mul(&linalg::inverse(a).unwrap());
        assert!(si.tilde_ad(a, b).unwrap().max_abs_diff(&want) <= 1e-12);
    }

    #[test]
    fn ad_hat_at_the_unit_is_ad_beta() {
        let s = diag12();
        let got = s.ad_hat(s.beta()).unwrap();
        let want = s.ad_beta_operator();
        assert!(got.max_abs_diff(&want) <= 1e-8, "{}", got.max_abs_diff(&want));
        // identity twist: Âd(a) is classical conjugation E ↦ aEa⁻¹
        let si = TwistedMatrixSpace::new(Matrix::identity(Mode::Approx, 2)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = random_invertible(&mut rng, 2);
        let got = si.ad_hat(&a).unwrap();
        let a_inv = linalg::inverse(&a).unwrap();
        for k in 0..4 {
            let e = si.basis_matrix(k);
            let want = a.mul(&e).mul(&a_inv);
            let col: Vec<f64> = (0..4).map(|r| got.get(r, k).to_f64()).collect();
            let wantv: Vec<f64> = si.vec_of(&want).iter().map(|x| x.to_f64()).collect();
            for (g, w) in col.iter().zip(&wantv) {
                assert!((g - w).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn ad_lower_matches_the_bracket() {
        let s = diag12();
        let x = Matrix::from_entries(
            Mode::Approx,
            2,
            2,
            vec![
                Scalar::Approx(0.3),
                Scalar::Approx(-0.2),
                Scalar::Approx(0.5),
                Scalar::Approx(0.1),
            ],
        )
        .unwrap();
        // the raw derivative of Âd along 𝔢_β(sX), before untwisting, sends Y
        // to [X,Y]_β; equivalently P·âd(X)·P⁻¹ has columns vec([X,E_k]_β)
        let adl = s.ad_lower(&x).unwrap();
        let p = s.ad_beta_operator();
        let raw = p.mul(&adl).mul(&linalg::inverse(&p).unwrap());
        for k in 0..4 {
            let e = s.basis_matrix(k);
            let want = s.vec_of(&s.gl_bracket(&x, &e).unwrap());
            for r in 0..4 {
                let diff = (raw.get(r, k).to_f64() - want[r].to_f64()).abs();
                assert!(diff <= 1e-4, "entry ({r},{k}) off by {diff}");
            }
        }
    }

    #[test]
    fn adhat_of_hexp_is_hexp_of_adlower() {
        let s = diag12();
        let mut x = Matrix::zeros(Mode::Approx, 2, 2);
        x.set(0, 1, Scalar::Approx(0.25));
        x.set(1, 0, Scalar::Approx(0.25));
        let check = s.adhat_hexp_check(&x, 1e-4).unwrap();
        assert!(check.pass, "residual {}", check.residual);
        // X = 0: both sides are the Ad_β operator
        let z = s.adhat_hexp_check(&Matrix::zeros(Mode::Approx, 2, 2), 1e-6).unwrap();
        assert!(z.pass);
        assert!(z.lhs.max_abs_diff(&s.ad_beta_operator()) <= 1e-6);
    }

    #[test]
    fn gl_to_algebra_is_a_regular_multiplicative_hom_lie_algebra() {
        let s = diag12_exact();
        let g = s.gl_to_algebra().unwrap();
        assert_eq!(g.dim(), 4);
        let report = g.check_axioms();
        assert!(report.all_pass(), "{report:?}");
        // center is spanned by β itself: vec(diag(1,2)) ∝ (1/2,0,0,1) in the
        // nullspace's free-coordinate normalization
        let z = g.center();
        assert_eq!(z.cols(), 1);
        let want = [Scalar::ratio(1, 2), Scalar::int(0), Scalar::int(0), Scalar::int(1)];
        let got: Vec<Scalar> = (0..4).map(|r| z.get(r, 0).clone()).collect();
        assert_eq!(got, want);
        // m = 1 is abelian
        let s1 = TwistedMatrixSpace::new(Matrix::diagonal(&[Scalar::int(5)])).unwrap();
        let g1 = s1.gl_to_algebra().unwrap();
        assert_eq!(g1.dim(), 1);
        assert_eq!(g1.bracket_entries().count(), 0);
        // approx-mode twist is refused
        assert!(matches!(diag12().gl_to_algebra(), Err(Error::Mode(_))));
    }

    #[test]
    fn gl_bracket_hom_jacobi_on_random_triples() {
        let s = diag12();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let a = random_invertible(&mut rng, 2);
            let b = random_invertible(&mut rng, 2);
            let c = random_invertible(&mut rng, 2);
            let term = |x: &Matrix, y: &Matrix, z: &Matrix| {
                s.gl_bracket(&s.ad_beta(x).unwrap(), &s.gl_bracket(y, z).unwrap())
                    .unwrap()
            };
            let sum = term(&a, &b, &c).add(&term(&b, &c, &a)).add(&term(&c, &a, &b));
            assert!(sum.max_abs() <= 1e-9, "Hom-Jacobi residual {}", sum.max_abs());
        }
    }
}
