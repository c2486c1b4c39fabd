//! Hom-Lie algebras presented by structure constants.
//!
//! A Hom-Lie algebra is a vector space with a skew bracket [·,·] and a linear
//! twist φ satisfying the Hom-Jacobi identity
//!
//! ```text
//! [φ(x),[y,z]] + [φ(y),[z,x]] + [φ(z),[x,y]] = 0.
//! ```
//!
//! "Multiplicative" means φ[x,y] = [φ(x),φ(y)]; "regular" means φ is
//! invertible. For a regular multiplicative algebra the untwisted bracket
//! [x,y]_Lie = [φ⁻¹x, φ⁻¹y] is an ordinary Lie bracket, and twisting any Lie
//! bracket along one of its automorphisms ([`yau_twist`]) runs the other way.
//!
//! Only the i < j half of the structure tensor is stored; the rest is implied
//! by skew-symmetry, which therefore holds by construction.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::{self, max_abs_vec, sub_vec, Matrix, Mode, Scalar, TAU_RES};

#[derive(Clone, Debug, PartialEq)]
pub struct HomLieAlgebra {
    dim: usize,
    mode: Mode,
    /// (i, j) with i < j maps to the coefficient vector of [e_i, e_j].
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    phi: Matrix,
    labels: Option<Vec<String>>,
}

/// One failed identity, with the basis indices it failed on and both sides'
/// coefficient vectors.
#[derive(Clone, Debug)]
pub struct AxiomWitness {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// Verdicts of [`HomLieAlgebra::check_axioms`]. All four true certifies a
/// regular multiplicative Hom-Lie algebra. Exact mode compares exactly;
/// approx mode allows `TAU_RES`.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub skew: bool,
    pub multiplicative: bool,
    pub hom_jacobi: bool,
    pub regular: bool,
    pub witnesses: Vec<AxiomWitness>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.skew && self.multiplicative && self.hom_jacobi && self.regular
    }
}

/// Verdicts of [`check_weak_hom`]. `weak` is the twisted bracket condition
/// φ_h∘f∘[·,·]_g = [f∘φ_g(·), f∘φ_g(·)]_h; a homomorphism additionally
/// intertwines the twists.
#[derive(Clone, Debug)]
pub struct WeakHomReport {
    pub weak: bool,
    pub twist_commutes: bool,
    pub homomorphism: bool,
    pub witness: Option<AxiomWitness>,
}

fn vec_eq(a: &[Scalar], b: &[Scalar], mode: Mode, tol: f64) -> bool {
    match mode {
        Mode::Exact => a == b,
        Mode::Approx => max_abs_vec(&sub_vec(a, b)) <= tol,
    }
}

impl HomLieAlgebra {
    /// Build from sparse structure-tensor entries (i, j, k, c) meaning
    /// [e_i, e_j] contains c·e_k, with i < j required.
    pub fn new(
        dim: usize,
        mode: Mode,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        phi: Matrix,
        labels: Option<Vec<String>>,
    ) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::BadParameter("zero-dimensional algebra".into()));
        }
        if phi.rows() != dim || phi.cols() != dim {
            return Err(Error::dims(format!(
                "twist must be {dim}x{dim}, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        if phi.mode() != mode {
            return Err(Error::mode("twist mode differs from algebra mode"));
        }
        if let Some(ls) = &labels {
            if ls.len() != dim {
                return Err(Error::dims("one label per basis vector"));
            }
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= j {
                return Err(Error::schema(format!(
                    "structure entry ({i}, {j}) is not in canonical i < j order"
                )));
            }
            if j >= dim || k >= dim {
                return Err(Error::schema(format!(
                    "structure entry ({i}, {j}, {k}) out of range for dim {dim}"
                )));
            }
            if c.mode() != mode {
                return Err(Error::mode("structure constant mode differs from algebra mode"));
            }
            let v = brackets
                .entry((i, j))
                .or_insert_with(|| vec![Scalar::zero(mode); dim]);
            if !v[k].is_zero() {
                return Err(Error::schema(format!(
                    "duplicate structure entry ({i}, {j}, {k})"
                )));
            }
            v[k] = c;
        }
        brackets.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(HomLieAlgebra {
            dim,
            mode,
            brackets,
            phi,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// Iterate the stored canonical (i < j) structure entries.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, &[Scalar])> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    /// [e_i, e_j] for any index order (zero on the diagonal).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let zero = || vec![Scalar::zero(self.mode); self.dim];
        if i == j {
            return zero();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_else(zero)
        } else {
            match self.brackets.get(&(j, i)) {
                Some(v) => v.iter().map(|c| -c).collect(),
                None => zero(),
            }
        }
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::dims(format!(
                "bracket arguments must have length {}",
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(self.mode); self.dim];
        for (&(i, j), c) in &self.brackets {
            // coefficient of c_{ij} in [x, y] is x_i y_j − x_j y_i
            let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if w.is_zero() {
                continue;
            }
            for (o, ck) in out.iter_mut().zip(c) {
                *o = &*o + &(&w * ck);
            }
        }
        Ok(out)
    }

    pub fn apply_phi(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.phi.apply(x)
    }

    pub fn phi_inv(&self) -> Result<Matrix, Error> {
        linalg::inverse(&self.phi).map_err(|_| Error::NotRegular)
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(self.mode); self.dim];
        v[i] = Scalar::one(self.mode);
        v
    }

    /// Verify skewness, multiplicativity, the Hom-Jacobi identity and
    /// regularity, recording the first failing basis tuple per axiom.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let mut witnesses = Vec::new();

        // Skew-symmetry holds structurally: only i < j is stored and the
        // expansion negates it for i > j, zero on the diagonal.
        let skew = true;

        let regular = linalg::rank(&self.phi) == n;
        if !regular {
            witnesses.push(AxiomWitness {
                axiom: "regular",
                indices: vec![],
                lhs: vec![],
                rhs: vec![],
            });
        }

        let mut multiplicative = true;
        'mult: for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply_phi(&self.bracket_basis(i, j));
                let rhs = self
                    .bracket(&self.phi.col(i), &self.phi.col(j))
                    .expect("dims");
                if !vec_eq(&lhs, &rhs, self.mode, TAU_RES) {
                    multiplicative = false;
                    witnesses.push(AxiomWitness {
                        axiom: "multiplicative",
                        indices: vec![i, j],
                        lhs,
                        rhs,
                    });
                    break 'mult;
                }
            }
        }

        let zero = vec![Scalar::zero(self.mode); n];
        let mut hom_jacobi = true;
        'jac: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = self
                        .bracket(&self.phi.col(i), &self.bracket_basis(j, k))
                        .expect("dims");
                    let t2 = self
                        .bracket(&self.phi.col(j), &self.bracket_basis(k, i))
                        .expect("dims");
                    let t3 = self
                        .bracket(&self.phi.col(k), &self.bracket_basis(i, j))
                        .expect("dims");
                    sum = linalg::add_vec(&linalg::add_vec(&sum, &t2), &t3);
                    if !vec_eq(&sum, &zero, self.mode, TAU_RES) {
                        hom_jacobi = false;
                        witnesses.push(AxiomWitness {
                            axiom: "hom_jacobi",
                            indices: vec![i, j, k],
                            lhs: sum,
                            rhs: zero.clone(),
                        });
                        break 'jac;
                    }
                }
            }
        }

        AxiomReport {
            skew,
            multiplicative,
            hom_jacobi,
            regular,
            witnesses,
        }
    }

    /// The ordinary Lie algebra underlying a regular multiplicative Hom-Lie
    /// algebra: [x,y]_Lie = [φ⁻¹x, φ⁻¹y]. The result carries the identity
    /// twist.
    pub fn induced_lie(&self) -> Result<HomLieAlgebra, Error> {
        let report = self.check_axioms();
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
        let phi_inv = self.phi_inv()?;
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let c = self.bracket(&phi_inv.col(i), &phi_inv.col(j))?;
                for (k, v) in c.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        HomLieAlgebra::new(
            self.dim,
            self.mode,
            entries,
            Matrix::identity(self.mode, self.dim),
            self.labels.clone(),
        )
    }

    /// Adjoint operator ad_x = [x, ·] as a matrix.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix, Error> {
        if x.len() != self.dim {
            return Err(Error::dims(format!("ad argument must have length {}", self.dim)));
        }
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.bracket(x, &self.unit(j)))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_cols(self.mode, self.dim, &cols))
    }

    /// Center {x : [y, x] = 0 for all y}, as the nullspace of the stacked
    /// n²×n system given by all ad(e_j).
    pub fn center(&self) -> Matrix {
        let n = self.dim;
        let mut stacked = Matrix::zeros(self.mode, n * n, n);
        for j in 0..n {
            let adj = self.ad(&self.unit(j)).expect("dims");
            for r in 0..n {
                for c in 0..n {
                    stacked.set(j * n + r, c, adj.get(r, c).clone());
                }
            }
        }
        linalg::nullspace(&stacked)
    }

    pub fn to_approx(&self) -> HomLieAlgebra {
        HomLieAlgebra {
            dim: self.dim,
            mode: Mode::Approx,
            brackets: self
                .brackets
                .iter()
                .map(|(&k, v)| (k, v.iter().map(Scalar::to_approx).collect()))
                .collect(),
            phi: self.phi.to_approx(),
            labels: self.labels.clone(),
        }
    }

    /// True when both algebras have identical dimension, structure constants
    /// and twist (labels ignored).
    pub fn same_structure(&self, other: &HomLieAlgebra) -> bool {
        self.dim == other.dim
            && self.mode == other.mode
            && self.brackets == other.brackets
            && self.phi == other.phi
    }
}

/// Twist an ordinary Lie algebra (identity twist required) along one of its
/// automorphisms: the new bracket is φ∘[·,·] and the new twist is φ.
pub fn yau_twist(lie: &HomLieAlgebra, phi: &Matrix) -> Result<HomLieAlgebra, Error> {
    if lie.phi != Matrix::identity(lie.mode, lie.dim) {
        return Err(Error::BadParameter(
            "yau_twist expects an algebra with identity twist".into(),
        ));
    }
    if phi.rows() != lie.dim || phi.cols() != lie.dim {
        return Err(Error::dims("twist shape"));
    }
    if phi.mode() != lie.mode {
        return Err(Error::mode("twist mode differs from algebra mode"));
    }
    if linalg::rank(phi) != lie.dim {
        return Err(Error::NotRegular);
    }
    // φ must preserve the original bracket.
    for i in 0..lie.dim {
        for j in i + 1..lie.dim {
            let lhs = phi.apply(&lie.bracket_basis(i, j));
            let rhs = lie.bracket(&phi.col(i), &phi.col(j))?;
            if !vec_eq(&lhs, &rhs, lie.mode, TAU_RES) {
                return Err(Error::NotAutomorphism { i, j });
            }
        }
    }
    let mut entries = Vec::new();
    for (i, j, c) in lie.bracket_entries() {
        let twisted = phi.apply(c);
        for (k, v) in twisted.into_iter().enumerate() {
            if !v.is_zero() {
                entries.push((i, j, k, v));
            }
        }
    }
    HomLieAlgebra::new(lie.dim, lie.mode, entries, phi.clone(), lie.labels.clone())
}

/// Check whether f: g → h is a weak homomorphism
/// (φ_h∘f∘[x,y]_g = [f(φ_g x), f(φ_g y)]_h) and whether it is a homomorphism
/// (additionally f∘φ_g = φ_h∘f).
pub fn check_weak_hom(
    f: &Matrix,
    src: &HomLieAlgebra,
    dst: &HomLieAlgebra,
) -> Result<WeakHomReport, Error> {
    if f.rows() != dst.dim() || f.cols() != src.dim() {
        return Err(Error::dims(format!(
            "map must be {}x{}, got {}x{}",
            dst.dim(),
            src.dim(),
            f.rows(),
            f.cols()
        )));
    }
    if f.mode() != src.mode() || src.mode() != dst.mode() {
        return Err(Error::mode("map and algebras must share one mode"));
    }
    let mode = src.mode();
    let mut weak = true;
    let mut witness = None;
    'pairs: for i in 0..src.dim() {
        for j in i + 1..src.dim() {
            let lhs = dst.apply_phi(&f.apply(&src.bracket_basis(i, j)));
            let rhs = dst.bracket(
                &f.apply(&src.phi().col(i)),
                &f.apply(&src.phi().col(j)),
            )?;
            if !vec_eq(&lhs, &rhs, mode, TAU_RES) {
                weak = false;
                witness = Some(AxiomWitness {
                    axiom: "weak_hom",
                    indices: vec![i, j],
                    lhs,
                    rhs,
                });
                break 'pairs;
            }
        }
    }
    let commute_lhs = f.mul(src.phi());
    let commute_rhs = dst.phi().mul(f);
    let twist_commutes = match mode {
        Mode::Exact => commute_lhs == commute_rhs,
        Mode::Approx => commute_lhs.max_abs_diff(&commute_rhs) <= TAU_RES,
    };
    Ok(WeakHomReport {
        weak,
        twist_commutes,
        homomorphism: weak && twist_commutes,
        witness,
    })
}

/// Split-form sl₂ on basis (h, e, f): [h,e] = 2e, [h,f] = −2f, [e,f] = h,
/// identity twist.
pub fn sl2() -> HomLieAlgebra {
    HomLieAlgebra::new(
        3,
        Mode::Exact,
        vec![
            (0, 1, 1, Scalar::int(2)),
            (0, 2, 2, Scalar::int(-2)),
            (1, 2, 0, Scalar::int(1)),
        ],
        Matrix::identity(Mode::Exact, 3),
        Some(vec!["h".into(), "e".into(), "f".into()]),
    )
    .expect("static data")
}

/// Abelian algebra with identity twist.
pub fn abelian(n: usize) -> HomLieAlgebra {
    HomLieAlgebra::new(
        n,
        Mode::Exact,
        Vec::new(),
        Matrix::identity(Mode::Exact, n),
        None,
    )
    .expect("static data")
}

/// The 2-dimensional nonabelian Lie algebra: [x,y] = y, identity twist.
pub fn two_dim_nonabelian() -> HomLieAlgebra {
    HomLieAlgebra::new(
        2,
        Mode::Exact,
        vec![(0, 1, 1, Scalar::int(1))],
        Matrix::identity(Mode::Exact, 2),
        Some(vec!["x".into(), "y".into()]),
    )
    .expect("static data")
}

/// The q-deformed sl₂ on basis (e, h, f):
///
/// ```text
/// [e,f] = (1+q)/2 · h,   [h,e] = 2e,   [h,f] = −2q·f,
/// α = diag((q⁻¹+1)/2, 1, (q+1)/2).
/// ```
///
/// Skew and Hom-Jacobi hold for every admissible q, but α is multiplicative
/// only at q = 1. Undefined at q = 0 (q⁻¹) and q = −1 (α singular).
pub fn q_sl2(q: &Scalar) -> Result<HomLieAlgebra, Error> {
    let Scalar::Exact(qr) = q else {
        return Err(Error::mode("q must be exact"));
    };
    use num_traits::{One, Zero};
    if qr.is_zero() {
        return Err(Error::BadParameter("q = 0 is outside the family".into()));
    }
    if (qr + num_rational::BigRational::one()).is_zero() {
        return Err(Error::BadParameter("q = -1 makes the twist singular".into()));
    }
    let one = Scalar::int(1);
    let half = Scalar::ratio(1, 2);
    let q_inv = one.div(q);
    // (q⁻¹+1)/2, 1, (q+1)/2
    let a_e = &(&q_inv + &one) * &half;
    let a_f = &(q + &one) * &half;
    HomLieAlgebra::new(
        3,
        Mode::Exact,
        vec![
            // [e,h] = −[h,e] = −2e
            (0, 1, 0, Scalar::int(-2)),
            // [e,f] = (1+q)/2 h
            (0, 2, 1, a_f.clone()),
            // [h,f] = −2q f
            (1, 2, 2, &Scalar::int(-2) * q),
        ],
        Matrix::diagonal(&[a_e, Scalar::int(1), a_f]),
        Some(vec!["e".into(), "h".into(), "f".into()]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_passes_all_axioms() {
        let report = sl2().check_axioms();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn bracket_is_bilinear_on_sl2() {
        let g = sl2();
        let x = [Scalar::int(1), Scalar::int(2), Scalar::int(-1)];
        let y = [Scalar::int(0), Scalar::int(3), Scalar::int(5)];
        let z = [Scalar::int(2), Scalar::int(-2), Scalar::int(7)];
        let xy = linalg::add_vec(&x, &y);
        let lhs = g.bracket(&xy, &z).unwrap();
        let rhs = linalg::add_vec(
            &g.bracket(&x, &z).unwrap(),
            &g.bracket(&y, &z).unwrap(),
        );
        assert_eq!(lhs, rhs);
        // antisymmetry on vectors
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        assert_eq!(xy, yx.iter().map(|c| -c).collect::<Vec<_>>());
    }

    #[test]
    fn q_sl2_fails_multiplicativity_with_the_known_witness() {
        let g = q_sl2(&Scalar::int(2)).unwrap();
        let report = g.check_axioms();
        assert!(report.skew && report.hom_jacobi && report.regular);
        assert!(!report.multiplicative);
        let w = &report.witnesses[0];
        assert_eq!(w.axiom, "multiplicative");
        // first failing pair is (e, f)
        assert_eq!(w.indices, vec![0, 2]);
        let zero = Scalar::int(0);
        assert_eq!(w.lhs, vec![zero.clone(), Scalar::ratio(3, 2), zero.clone()]);
        assert_eq!(w.rhs, vec![zero.clone(), Scalar::ratio(27, 16), zero]);
    }

    #[test]
    fn q_sl2_hom_jacobi_holds_for_various_q() {
        for q in [Scalar::int(3), Scalar::ratio(1, 2), Scalar::ratio(-2, 3)] {
            let report = q_sl2(&q).unwrap().check_axioms();
            assert!(report.hom_jacobi && report.skew && report.regular);
        }
    }

    #[test]
    fn q_sl2_rejects_degenerate_parameters() {
        assert!(q_sl2(&Scalar::int(0)).is_err());
        assert!(q_sl2(&Scalar::int(-1)).is_err());
        assert!(q_sl2(&Scalar::Approx(2.0)).is_err());
    }

    #[test]
    fn yau_twist_of_sl2_matches_hand_computation() {
        let lam = Scalar::int(2);
        let phi = Matrix::diagonal(&[
            Scalar::int(1),
            lam.clone(),
            Scalar::int(1).div(&lam),
        ]);
        let g = yau_twist(&sl2(), &phi).unwrap();
        // [h,e]' = 4e, [h,f]' = −f, [e,f]' = h
        assert_eq!(
            g.bracket_basis(0, 1),
            vec![Scalar::int(0), Scalar::int(4), Scalar::int(0)]
        );
        assert_eq!(
            g.bracket_basis(0, 2),
            vec![Scalar::int(0), Scalar::int(0), Scalar::int(-1)]
        );
        assert_eq!(
            g.bracket_basis(1, 2),
            vec![Scalar::int(1), Scalar::int(0), Scalar::int(0)]
        );
        assert!(g.check_axioms().all_pass());
    }

    #[test]
    fn yau_twist_rejects_non_automorphism() {
        // swapping e and f does not preserve the sl₂ bracket
        let mut t = Matrix::zeros(Mode::Exact, 3, 3);
        t.set(0, 0, Scalar::int(1));
        t.set(1, 2, Scalar::int(1));
        t.set(2, 1, Scalar::int(1));
        assert!(matches!(
            yau_twist(&sl2(), &t),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn induced_lie_then_twist_roundtrips() {
        let lam = Scalar::ratio(3, 1);
        let phi = Matrix::diagonal(&[
            Scalar::int(1),
            lam.clone(),
            Scalar::int(1).div(&lam),
        ]);
        let g = yau_twist(&sl2(), &phi).unwrap();
        let lie = g.induced_lie().unwrap();
        assert!(lie.same_structure(&sl2()));
        let back = yau_twist(&lie, g.phi()).unwrap();
        assert!(back.same_structure(&g));
    }

    #[test]
    fn induced_lie_rejects_q_sl2() {
        let g = q_sl2(&Scalar::int(2)).unwrap();
        assert!(matches!(
            g.induced_lie(),
            Err(Error::NotMultiplicative { i: 0, j: 2 })
        ));
    }

    #[test]
    fn ad_matrix_of_h_in_sl2() {
        let g = sl2();
        let adh = g.ad(&[Scalar::int(1), Scalar::int(0), Scalar::int(0)]).unwrap();
        let want = Matrix::diagonal(&[Scalar::int(0), Scalar::int(2), Scalar::int(-2)]);
        assert_eq!(adh, want);
    }

    #[test]
    fn center_of_sl2_is_zero_and_survives_a_central_summand() {
        assert_eq!(sl2().center().cols(), 0);
        // sl₂ ⊕ k: extra central basis vector
        let g = HomLieAlgebra::new(
            4,
            Mode::Exact,
            vec![
                (0, 1, 1, Scalar::int(2)),
                (0, 2, 2, Scalar::int(-2)),
                (1, 2, 0, Scalar::int(1)),
            ],
            Matrix::identity(Mode::Exact, 4),
            None,
        )
        .unwrap();
        let z = g.center();
        assert_eq!(z.cols(), 1);
        assert_eq!(z.get(3, 0), &Scalar::int(1));
        assert!(g.check_axioms().all_pass());
    }

    #[test]
    fn abelian_center_is_everything() {
        assert_eq!(abelian(3).center().cols(), 3);
    }

    #[test]
    fn identity_is_a_weak_and_strong_self_homomorphism() {
        let g = sl2();
        let id = Matrix::identity(Mode::Exact, 3);
        let rep = check_weak_hom(&id, &g, &g).unwrap();
        assert!(rep.weak && rep.twist_commutes && rep.homomorphism);
    }

    #[test]
    fn zero_map_is_weak_but_scaling_is_not() {
        let g = sl2();
        let zero = Matrix::zeros(Mode::Exact, 3, 3);
        assert!(check_weak_hom(&zero, &g, &g).unwrap().weak);
        // x ↦ 2x fails on [e,f] = h: lhs 2h, rhs 4h
        let two = Matrix::identity(Mode::Exact, 3).scale(&Scalar::int(2));
        let rep = check_weak_hom(&two, &g, &g).unwrap();
        assert!(!rep.weak && !rep.homomorphism);
        assert!(rep.twist_commutes);
    }
}
