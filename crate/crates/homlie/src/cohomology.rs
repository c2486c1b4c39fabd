//! Representations of regular Hom-Lie algebras and their cochain complex.
//!
//! A representation is (ρ, V, β) with ρ(φx)∘β = β∘ρ(x) and
//! ρ([x,y])∘β = ρ(φx)ρ(y) − ρ(φy)ρ(x). Cochains in C^k = Hom(∧^k g, V) are
//! stored on sorted index tuples; the coboundary is
//!
//! ```text
//! (df)(x₁,…,x_{k+1}) = Σ_i (−1)^{i+1} ρ(x_i) f(φ⁻¹x₁,…,x̂_i,…)
//!                    + Σ_{i<j} (−1)^{i+j} β f([φ⁻²x_i, φ⁻²x_j], φ⁻¹x₁,…,x̂_i,…,x̂_j,…)
//! ```
//!
//! and cohomology dimensions come from exact ranks: dim Z^k = nullity(d_k),
//! dim B^k = rank(d_{k−1}). Since the dimensions are integers, approx-mode
//! input is rejected rather than thresholded. d² = 0 is verified on the
//! actual matrices, not assumed; a violation is surfaced as a hard error.

use crate::algebra::HomLieAlgebra;
use crate::error::Error;
use crate::linalg::{self, Matrix, Mode, Scalar, TAU_RES};

#[derive(Clone, Debug)]
pub struct Representation {
    alg: HomLieAlgebra,
    vdim: usize,
    rho: Vec<Matrix>,
    beta: Matrix,
    phi_inv: Matrix,
    phi_inv2: Matrix,
}

/// Verdicts of [`check_representation`]: the twist-intertwining equation and
/// the bracket-compatibility equation, with the first failing basis tuple.
#[derive(Clone, Debug)]
pub struct RepCheck {
    pub twist_equation: bool,
    pub bracket_equation: bool,
    pub witness: Option<Vec<usize>>,
    pub pass: bool,
}

/// Exact dimensions of cocycles, coboundaries and cohomology in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDim {
    pub k: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

/// Result of verifying d_{k+1}∘d_k = 0.
#[derive(Clone, Debug)]
pub struct DSquaredCheck {
    pub k: usize,
    pub pass: bool,
    pub max_abs: f64,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sorted k-subsets of {0,…,n−1} in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Index bookkeeping for C^k: flat coordinate = tuple position · vdim + component.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub k: usize,
    pub vdim: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl CochainSpace {
    pub fn new(n: usize, k: usize, vdim: usize) -> CochainSpace {
        CochainSpace {
            k,
            vdim,
            tuples: combinations(n, k),
        }
    }

    pub fn dimension(&self) -> usize {
        self.tuples.len() * self.vdim
    }

    pub fn flat(&self, tuple_pos: usize, component: usize) -> usize {
        tuple_pos * self.vdim + component
    }
}

/// Exact determinant by fraction-producing Gaussian elimination; only ever
/// called on small k×k blocks (k ≤ dim g).
fn det_exact(m: &mut [Vec<Scalar>]) -> Scalar {
    let k = m.len();
    let mut det = Scalar::int(1);
    for col in 0..k {
        let pivot = (col..k).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Scalar::int(0);
        };
        if p != col {
            m.swap(p, col);
            det = -&det;
        }
        let pc = m[col][col].clone();
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].div(&pc);
            for c in col..k {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
        det = &det * &pc;
    }
    det
}

impl Representation {
    pub fn new(alg: HomLieAlgebra, rho: Vec<Matrix>, beta: Matrix) -> Result<Self, Error> {
        let n = alg.dim();
        if rho.len() != n {
            return Err(Error::dims(format!(
                "need one action matrix per basis vector ({n}), got {}",
                rho.len()
            )));
        }
        let vdim = beta.rows();
        if beta.cols() != vdim {
            return Err(Error::dims("carrier twist must be square"));
        }
        if beta.mode() != alg.mode() {
            return Err(Error::mode("carrier twist mode differs from algebra mode"));
        }
        for r in &rho {
            if r.rows() != vdim || r.cols() != vdim {
                return Err(Error::dims(format!(
                    "action matrices must be {vdim}x{vdim}"
                )));
            }
            if r.mode() != alg.mode() {
                return Err(Error::mode("action matrix mode differs from algebra mode"));
            }
        }
        let phi_inv = alg.phi_inv()?;
        let phi_inv2 = phi_inv.mul(&phi_inv);
        Ok(Representation {
            alg,
            vdim,
            rho,
            beta,
            phi_inv,
            phi_inv2,
        })
    }

    /// ρ = 0 on a vdim-dimensional carrier with identity twist.
    pub fn trivial(alg: HomLieAlgebra, vdim: usize) -> Result<Self, Error> {
        let mode = alg.mode();
        let rho = vec![Matrix::zeros(mode, vdim, vdim); alg.dim()];
        let beta = Matrix::identity(mode, vdim);
        Representation::new(alg, rho, beta)
    }

    /// ρ(e_i) = ad(e_i), β = φ. Valid exactly when the algebra is regular and
    /// multiplicative, so that is enforced here.
    pub fn adjoint(alg: &HomLieAlgebra) -> Result<Self, Error> {
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
        let mode = alg.mode();
        let mut unit = vec![Scalar::zero(mode); n];
        let mut rho = Vec::with_capacity(n);
        for i in 0..n {
            unit[i] = Scalar::one(mode);
            rho.push(alg.ad(&unit)?);
            unit[i] = Scalar::zero(mode);
        }
        let beta = alg.phi().clone();
        Representation::new(alg.clone(), rho, beta)
    }

    pub fn alg(&self) -> &HomLieAlgebra {
        &self.alg
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn rho_basis(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    /// Linear extension ρ(x) = Σ x_i ρ(e_i).
    pub fn rho_of(&self, x: &[Scalar]) -> Result<Matrix, Error> {
        if x.len() != self.alg.dim() {
            return Err(Error::dims(format!(
                "ρ argument must have length {}",
                self.alg.dim()
            )));
        }
        let mut out = Matrix::zeros(self.alg.mode(), self.vdim, self.vdim);
        for (xi, ri) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                out = out.add(&ri.scale(xi));
            }
        }
        Ok(out)
    }

    pub fn cochain_space(&self, k: usize) -> CochainSpace {
        CochainSpace::new(self.alg.dim(), k, self.vdim)
    }

    /// Matrix of d: C^k → C^{k+1} on the sorted-tuple bases. The hat-omission
    /// and reordering signs are realized by expanding each basis cochain as
    /// the unique antisymmetric multilinear form on its tuple, i.e. the
    /// coefficient of f(e_I) in f(w₁,…,w_k) is det(w_t[I_u]).
    pub fn coboundary_matrix(&self, k: usize) -> Result<Matrix, Error> {
        if self.alg.mode() != Mode::Exact {
            return Err(Error::mode("cohomology needs exact (rational) input"));
        }
        let n = self.alg.dim();
        let dom = self.cochain_space(k);
        let cod = self.cochain_space(k + 1);
        let mut d = Matrix::zeros(Mode::Exact, cod.dimension(), dom.dimension());

        // positions of the domain tuples for coefficient lookup
        let tuple_pos = |t: &[usize]| -> usize {
            dom.tuples
                .binary_search_by(|probe| probe.as_slice().cmp(t))
                .expect("sorted tuple enumerated")
        };

        for (jpos, jt) in cod.tuples.iter().enumerate() {
            // one accumulation pass per term of the formula
            let mut terms: Vec<(i32, Matrix, Vec<Vec<Scalar>>)> = Vec::new();

            // ρ-terms: drop x_i, twist the remaining arguments by φ⁻¹
            for (i, &ji) in jt.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let args: Vec<Vec<Scalar>> = jt
                    .iter()
                    .enumerate()
                    .filter(|&(l, _)| l != i)
                    .map(|(_, &jl)| self.phi_inv.col(jl))
                    .collect();
                terms.push((sign, self.rho[ji].clone(), args));
            }

            // β-terms: bracket of the φ⁻²-twisted pair goes first
            for i in 0..jt.len() {
                for j in i + 1..jt.len() {
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    let mut args = Vec::with_capacity(k);
                    args.push(self.alg.bracket(
                        &self.phi_inv2.col(jt[i]),
                        &self.phi_inv2.col(jt[j]),
                    )?);
                    for (l, &jl) in jt.iter().enumerate() {
                        if l != i && l != j {
                            args.push(self.phi_inv.col(jl));
                        }
                    }
                    terms.push((sign, self.beta.clone(), args));
                }
            }

            for (sign, op, args) in terms {
                debug_assert_eq!(args.len(), k);
                for it in combinations(n, k) {
                    let mut block: Vec<Vec<Scalar>> = args
                        .iter()
                        .map(|w| it.iter().map(|&u| w[u].clone()).collect())
                        .collect();
                    let coeff = det_exact(&mut block);
                    if coeff.is_zero() {
                        continue;
                    }
                    let signed = if sign < 0 { -&coeff } else { coeff };
                    let ipos = tuple_pos(&it);
                    for c in 0..self.vdim {
                        for r in 0..self.vdim {
                            if op.get(r, c).is_zero() {
                                continue;
                            }
                            let add = &signed * op.get(r, c);
                            let row = cod.flat(jpos, r);
                            let col = dom.flat(ipos, c);
                            d.set(row, col, &(d.get(row, col).clone()) + &add);
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    /// Verify d_{k+1}∘d_k = 0 on the actual coboundary matrices.
    pub fn d_squared_check(&self, k: usize) -> Result<DSquaredCheck, Error> {
        let dk = self.coboundary_matrix(k)?;
        let dk1 = self.coboundary_matrix(k + 1)?;
        let prod = dk1.mul(&dk);
        let max_abs = prod.max_abs();
        Ok(DSquaredCheck {
            k,
            pass: prod.is_zero(),
            max_abs,
        })
    }

    /// (dim Z^k, dim B^k, dim H^k) for k = 0..=kmax (capped at dim g), from
    /// exact ranks. Every consecutive pair of coboundaries is checked to
    /// compose to zero; a violation aborts with an error naming the degree.
    pub fn cohomology_dims(&self, kmax: usize) -> Result<Vec<CohomologyDim>, Error> {
        let kmax = kmax.min(self.alg.dim());
        let mats: Vec<Matrix> = (0..=kmax)
            .map(|k| self.coboundary_matrix(k))
            .collect::<Result<_, _>>()?;
        for k in 0..kmax {
            if !mats[k + 1].mul(&mats[k]).is_zero() {
                return Err(Error::DSquaredNonzero { k });
            }
        }
        let mut out = Vec::with_capacity(kmax + 1);
        let mut prev_rank = 0usize;
        for (k, dk) in mats.iter().enumerate() {
            let rank = linalg::rank(dk);
            let z = dk.cols() - rank;
            let b = if k == 0 { 0 } else { prev_rank };
            out.push(CohomologyDim {
                k,
                z,
                b,
                h: z - b,
            });
            prev_rank = rank;
        }
        Ok(out)
    }
}

/// Check the two representation equations on all basis vectors and pairs.
pub fn check_representation(rep: &Representation) -> RepCheck {
    let alg = &rep.alg;
    let n = alg.dim();
    let mode = alg.mode();
    let tol = match mode {
        Mode::Exact => 0.0,
        Mode::Approx => TAU_RES,
    };
    let close = |a: &Matrix, b: &Matrix| a.max_abs_diff(b) <= tol;

    let mut twist_equation = true;
    let mut bracket_equation = true;
    let mut witness = None;
    for i in 0..n {
        let lhs = rep
            .rho_of(&alg.phi().col(i))
            .expect("dims")
            .mul(&rep.beta);
        let rhs = rep.beta.mul(&rep.rho[i]);
        if !close(&lhs, &rhs) {
            twist_equation = false;
            witness = Some(vec![i]);
            break;
        }
    }
    'outer: for i in 0..n {
        for j in i + 1..n {
            let lhs = rep
                .rho_of(&alg.bracket_basis(i, j))
                .expect("dims")
                .mul(&rep.beta);
            let ri = rep.rho_of(&alg.phi().col(i)).expect("dims");
            let rj = rep.rho_of(&alg.phi().col(j)).expect("dims");
            let rhs = ri.mul(&rep.rho[j]).sub(&rj.mul(&rep.rho[i]));
            if !close(&lhs, &rhs) {
                bracket_equation = false;
                if witness.is_none() {
                    witness = Some(vec![i, j]);
                }
                break 'outer;
            }
        }
    }
    RepCheck {
        twist_equation,
        bracket_equation,
        witness,
        pass: twist_equation && bracket_equation,
    }
}
