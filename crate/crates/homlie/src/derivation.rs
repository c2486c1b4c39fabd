//! Derivations and automorphisms of a regular Hom-Lie algebra, and the
//! integration theorem connecting them.
//!
//! A derivation is a linear D with
//!
//! ```text
//! D[x,y] = [φ(x), (φ⁻¹Dφ)(y)] + [(φ⁻¹Dφ)(x), φ(y)],
//! ```
//!
//! an automorphism is an invertible θ with θ[x,y] = [(φ⁻¹θφ)(x), (φ⁻¹θφ)(y)].
//! Der(g) is computed as the exact nullspace of one stacked linear system;
//! inner derivations are the span of the ad(e_i). On the group side, Aut(g)
//! carries the twisted product θ₁⋄θ₂ = φθ₁φ⁻¹θ₂φ⁻¹ with unit φ, and the
//! Hom-exponential Hexp(tD) = φ·e^{tDφ⁻¹} of a derivation lands in Aut(g).

use crate::algebra::{AxiomWitness, HomLieAlgebra};
use crate::error::Error;
use crate::linalg::{self, Matrix, Mode, Scalar, TAU_RES};

/// Residual tolerance for float automorphism verdicts (exact mode compares
/// exactly). Sized for outputs of the matrix exponential.
pub const TAU_AUT: f64 = 1e-8;

/// Verdict of a pointwise identity check with the first failing basis pair
/// and the worst residual seen (0 when exact and passing).
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub pass: bool,
    pub residual: f64,
    pub witness: Option<AxiomWitness>,
}

/// Exact basis data for Der(g) ⊇ InnDer(g).
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub basis: Vec<Matrix>,
    /// Independent subset of {ad(e_i)}, chosen by first pivot.
    pub inner_basis: Vec<Matrix>,
    pub dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
}

/// Closure verdicts for the Hom-Lie algebra structure on Der(g).
#[derive(Clone, Debug)]
pub struct DerClosureCheck {
    pub bracket: Matrix,
    pub twist_image: Matrix,
    pub bracket_is_derivation: bool,
    pub twist_is_derivation: bool,
    pub pass: bool,
}

/// Both sides of the correspondence D ∈ Der(g) ⇔ D∘φ⁻¹ ∈ Der(g, [·,·]_Lie).
#[derive(Clone, Debug)]
pub struct LieCorrespondence {
    pub hom_derivation: bool,
    pub lie_derivation: bool,
    pub agree: bool,
}

/// Outputs of the Aut(g) Hom-group operations with closure verdicts.
#[derive(Clone, Debug)]
pub struct AutGroupOps {
    pub product: Matrix,
    pub inverse: Matrix,
    pub twist_image: Matrix,
    pub product_is_automorphism: bool,
    pub inverse_is_automorphism: bool,
    pub twist_is_automorphism: bool,
    /// T⋄φ = Ad_φ(T).
    pub unit_law: bool,
    pub pass: bool,
}

fn tol_for(mode: Mode, approx_tol: f64) -> f64 {
    match mode {
        Mode::Exact => 0.0,
        Mode::Approx => approx_tol,
    }
}

fn check_pairs(
    alg: &HomLieAlgebra,
    axiom: &'static str,
    tol: f64,
    mut lhs_rhs: impl FnMut(usize, usize) -> Result<(Vec<Scalar>, Vec<Scalar>), Error>,
) -> Result<IdentityCheck, Error> {
    let n = alg.dim();
    let mut residual: f64 = 0.0;
    let mut witness = None;
    for i in 0..n {
        for j in i + 1..n {
            let (lhs, rhs) = lhs_rhs(i, j)?;
            let diff = linalg::max_abs_vec(&linalg::sub_vec(&lhs, &rhs));
            residual = residual.max(diff);
            if diff > tol && witness.is_none() {
                witness = Some(AxiomWitness {
                    axiom,
                    indices: vec![i, j],
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(IdentityCheck {
        pass: witness.is_none(),
        residual,
        witness,
    })
}

/// Evaluate the derivation identity for D on all basis pairs.
pub fn is_derivation(alg: &HomLieAlgebra, d: &Matrix) -> Result<IdentityCheck, Error> {
    let n = alg.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::dims(format!("derivation candidate must be {n}x{n}")));
    }
    if d.mode() != alg.mode() {
        return Err(Error::mode("candidate mode differs from algebra mode"));
    }
    let phi = alg.phi();
    let conj = alg.phi_inv()?.mul(&d.mul(phi));
    let tol = tol_for(alg.mode(), TAU_RES);
    check_pairs(alg, "derivation", tol, |i, j| {
        let lhs = d.apply(&alg.bracket_basis(i, j));
        let rhs = linalg::add_vec(
            &alg.bracket(&phi.col(i), &conj.col(j))?,
            &alg.bracket(&conj.col(i), &phi.col(j))?,
        );
        Ok((lhs, rhs))
    })
}

/// Evaluate the automorphism identity for θ on all basis pairs. θ must be
/// invertible.
pub fn is_automorphism(alg: &HomLieAlgebra, theta: &Matrix) -> Result<IdentityCheck, Error> {
    let n = alg.dim();
    if theta.rows() != n || theta.cols() != n {
        return Err(Error::dims(format!(
            "automorphism candidate must be {n}x{n}"
        )));
    }
    if theta.mode() != alg.mode() {
        return Err(Error::mode("candidate mode differs from algebra mode"));
    }
    linalg::inverse(theta)?;
    let conj = alg.phi_inv()?.mul(&theta.mul(alg.phi()));
    let tol = tol_for(alg.mode(), TAU_AUT);
    check_pairs(alg, "automorphism", tol, |i, j| {
        let lhs = theta.apply(&alg.bracket_basis(i, j));
        let rhs = alg.bracket(&conj.col(i), &conj.col(j))?;
        Ok((lhs, rhs))
    })
}

/// Exact basis of Der(g) from the nullspace of the stacked derivation
/// identity (n² unknowns, one n-row block per basis pair), plus the span of
/// the inner derivations. Requires an exact-mode regular multiplicative
/// algebra.
pub fn derivation_space(alg: &HomLieAlgebra) -> Result<DerivationSpace, Error> {
    if alg.mode() != Mode::Exact {
        return Err(Error::mode("derivation_space needs exact (rational) input"));
    }
    let report = alg.check_axioms();
    if !report.regular {
        return Err(Error::NotRegular);
    }
    if !report.multiplicative {
        let w = report
            .witnesses
            .iter()
            .find(|w| w.axiom == "multiplicative")
            .expect("witness recorded");
        return Err(Error::NotMultiplicative {
            i: w.indices[0],
            j: w.indices[1],
        });
    }
    let n = alg.dim();
    let phi = alg.phi();
    let phi_inv = alg.phi_inv()?;
    let pairs = n * (n - 1) / 2;
    let mut sys = Matrix::zeros(Mode::Exact, pairs * n, n * n);
    // unknown vector is D flattened column-major: vec index s·n + p ↦ D[p][s]
    let mut block = 0;
    for i in 0..n {
        for j in i + 1..n {
            let c = alg.bracket_basis(i, j);
            let u = phi.col(i);
            let w = phi.col(j);
            let au = alg.ad(&u)?.mul(&phi_inv); // ad(φe_i)∘φ⁻¹
            let aw = alg.ad(&w)?.mul(&phi_inv);
            for r in 0..n {
                let row = block + r;
                for s in 0..n {
                    if !c[s].is_zero() {
                        let col = s * n + r;
                        sys.set(row, col, &(sys.get(row, col).clone()) + &c[s]);
                    }
                    for p in 0..n {
                        let coeff = &(&aw.get(r, p).clone() * &u[s])
                            - &(&au.get(r, p).clone() * &w[s]);
                        if !coeff.is_zero() {
                            let col = s * n + p;
                            sys.set(row, col, &(sys.get(row, col).clone()) + &coeff);
                        }
                    }
                }
            }
            block += n;
        }
    }
    let null = linalg::nullspace(&sys);
    let unvec = |col: Vec<Scalar>| {
        Matrix::from_fn(Mode::Exact, n, n, |p, s| col[s * n + p].clone())
    };
    let basis: Vec<Matrix> = (0..null.cols()).map(|c| unvec(null.col(c))).collect();

    let mut unit = vec![Scalar::zero(Mode::Exact); n];
    let mut ads = Vec::with_capacity(n);
    for i in 0..n {
        unit[i] = Scalar::one(Mode::Exact);
        ads.push(alg.ad(&unit)?);
        unit[i] = Scalar::zero(Mode::Exact);
    }
    let stacked_cols: Vec<Vec<Scalar>> = ads
        .iter()
        .map(|a| (0..n * n).map(|k| a.get(k % n, k / n).clone()).collect())
        .collect();
    let stacked = Matrix::from_cols(Mode::Exact, n * n, &stacked_cols);
    let pivots = linalg::column_pivots(&stacked);
    let inner_basis: Vec<Matrix> = pivots.iter().map(|&i| ads[i].clone()).collect();

    let dim = basis.len();
    let inner_dim = inner_basis.len();
    Ok(DerivationSpace {
        basis,
        inner_basis,
        dim,
        inner_dim,
        outer_dim: dim - inner_dim,
    })
}

fn require_derivation(alg: &HomLieAlgebra, d: &Matrix) -> Result<(), Error> {
    let check = is_derivation(alg, d)?;
    if !check.pass {
        let w = check.witness.expect("failing check carries a witness");
        return Err(Error::NotDerivation {
            i: w.indices[0],
            j: w.indices[1],
        });
    }
    Ok(())
}

/// Der(g) is closed under the twisted bracket [D₁,D₂]_φ = φD₁φ⁻¹D₂φ⁻¹ −
/// φD₂φ⁻¹D₁φ⁻¹ and under Ad_φ; verify both on the given pair.
pub fn der_algebra_check(
    alg: &HomLieAlgebra,
    d1: &Matrix,
    d2: &Matrix,
) -> Result<DerClosureCheck, Error> {
    require_derivation(alg, d1)?;
    require_derivation(alg, d2)?;
    let phi = alg.phi();
    let phi_inv = alg.phi_inv()?;
    let conj = |m: &Matrix| phi.mul(m).mul(&phi_inv);
    let bracket = conj(d1).mul(&d2.mul(&phi_inv)).sub(&conj(d2).mul(&d1.mul(&phi_inv)));
    let twist_image = conj(d1);
    let bracket_is_derivation = is_derivation(alg, &bracket)?.pass;
    let twist_is_derivation = is_derivation(alg, &twist_image)?.pass;
    Ok(DerClosureCheck {
        bracket,
        twist_image,
        bracket_is_derivation,
        twist_is_derivation,
        pass: bracket_is_derivation && twist_is_derivation,
    })
}

/// Ordinary Leibniz check of E on an identity-twist algebra.
fn is_lie_derivation(lie: &HomLieAlgebra, e: &Matrix) -> Result<bool, Error> {
    let tol = tol_for(lie.mode(), TAU_RES);
    let check = check_pairs(lie, "leibniz", tol, |i, j| {
        let lhs = e.apply(&lie.bracket_basis(i, j));
        let mut ei = vec![Scalar::zero(lie.mode()); lie.dim()];
        let mut ej = vec![Scalar::zero(lie.mode()); lie.dim()];
        ei[i] = Scalar::one(lie.mode());
        ej[j] = Scalar::one(lie.mode());
        let rhs = linalg::add_vec(
            &lie.bracket(&e.col(i), &ej)?,
            &lie.bracket(&ei, &e.col(j))?,
        );
        Ok((lhs, rhs))
    })?;
    Ok(check.pass)
}

/// D is a derivation of (g, [·,·], φ) exactly when D∘φ⁻¹ is a derivation of
/// the induced Lie algebra; evaluate both sides independently.
pub fn derivation_lie_correspondence(
    alg: &HomLieAlgebra,
    d: &Matrix,
) -> Result<LieCorrespondence, Error> {
    let hom = is_derivation(alg, d)?.pass;
    let lie_alg = alg.induced_lie()?;
    let lie = is_lie_derivation(&lie_alg, &d.mul(&alg.phi_inv()?))?;
    Ok(LieCorrespondence {
        hom_derivation: hom,
        lie_derivation: lie,
        agree: hom == lie,
    })
}

fn require_automorphism(alg: &HomLieAlgebra, t: &Matrix) -> Result<(), Error> {
    let check = is_automorphism(alg, t)?;
    if !check.pass {
        let w = check.witness.expect("failing check carries a witness");
        return Err(Error::NotAutomorphism {
            i: w.indices[0],
            j: w.indices[1],
        });
    }
    Ok(())
}

/// The Aut(g) Hom-group operations on a verified pair: product
/// T₁⋄T₂ = φT₁φ⁻¹T₂φ⁻¹, Hom-inverse φT₁⁻¹φ, twist image Ad_φ(T₁); all three
/// are re-verified as automorphisms and the Hom-unit law is checked.
pub fn aut_group_ops(
    alg: &HomLieAlgebra,
    t1: &Matrix,
    t2: &Matrix,
) -> Result<AutGroupOps, Error> {
    require_automorphism(alg, t1)?;
    require_automorphism(alg, t2)?;
    let phi = alg.phi();
    let phi_inv = alg.phi_inv()?;
    let product = phi.mul(t1).mul(&phi_inv).mul(t2).mul(&phi_inv);
    let inverse = phi.mul(&linalg::inverse(t1)?).mul(phi);
    let twist_image = phi.mul(t1).mul(&phi_inv);
    let product_is_automorphism = is_automorphism(alg, &product)?.pass;
    let inverse_is_automorphism = is_automorphism(alg, &inverse)?.pass;
    let twist_is_automorphism = is_automorphism(alg, &twist_image)?.pass;
    let with_unit = phi.mul(t1).mul(&phi_inv).mul(phi).mul(&phi_inv);
    let unit_law = match alg.mode() {
        Mode::Exact => with_unit == twist_image,
        Mode::Approx => with_unit.max_abs_diff(&twist_image) <= TAU_RES,
    };
    Ok(AutGroupOps {
        product,
        inverse,
        twist_image,
        product_is_automorphism,
        inverse_is_automorphism,
        twist_is_automorphism,
        unit_law,
        pass: product_is_automorphism
            && inverse_is_automorphism
            && twist_is_automorphism
            && unit_law,
    })
}

/// The bare integration formula Hexp(tM) = φ·e^{tMφ⁻¹}, with no derivation
/// gate; approx mode only.
pub fn hexp_formula(alg: &HomLieAlgebra, m: &Matrix, t: f64) -> Result<Matrix, Error> {
    if alg.mode() != Mode::Approx {
        return Err(Error::mode("the Hom-exponential needs approx (float) mode"));
    }
    if m.rows() != alg.dim() || m.cols() != alg.dim() || m.mode() != Mode::Approx {
        return Err(Error::dims(format!(
            "argument must be a float {0}x{0} matrix",
            alg.dim()
        )));
    }
    let arg = m.mul(&alg.phi_inv()?).scale(&Scalar::Approx(t));
    Ok(alg.phi().mul(&linalg::mat_exp(&arg)?))
}

/// Integrate a derivation to an automorphism: verifies that D is a
/// derivation, then returns Hexp(tD), which the integration theorem
/// guarantees passes `is_automorphism`.
pub fn integrate_derivation(
    alg: &HomLieAlgebra,
    d: &Matrix,
    t: f64,
) -> Result<Matrix, Error> {
    require_derivation(alg, d)?;
    hexp_formula(alg, d, t)
}
