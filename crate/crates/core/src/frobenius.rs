//! The linear form `omega_w` on `A^!`, the twisting automorphisms `sigma_w`, `sigma^w` and the
//! Frobenius quotient `F(w,N) = A^!/I`.

use crate::algebra::{algebra_from_form, GradedQuotient, Presentation};
use crate::error::{Error, Limits, Result};
use crate::linalg::{dot, Matrix, SparseVec, Subspace};
use crate::par;
use crate::preregularity::solve_twist;
use crate::scalar::Scalar;
use crate::tensor::{apply_slots_vec, power, MultilinearForm};

/// `omega_w` on the standard basis of `A^!_m`, together with the dual algebra it lives on.
#[derive(Clone, Debug)]
pub struct OmegaForm {
    pub dual: GradedQuotient,
    pub degree: usize,
    pub values: Vec<Scalar>,
}

impl OmegaForm {
    /// `omega(x)` for `x` in `A^!_m`; zero in every other degree.
    pub fn eval(&self, x: &[(usize, Scalar)], deg: usize) -> Scalar {
        if deg != self.degree {
            return Scalar::zero();
        }
        let v: SparseVec = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        dot(x, &v)
    }

    /// `P[i][j] = omega(x_i y_j)` for the standard bases of `A^!_p` and `A^!_{m-p}`.
    pub fn pairing_matrix(&self, p: usize) -> Result<Matrix> {
        if p > self.degree {
            return Err(Error::invalid(format!("degree {p} above {}", self.degree)));
        }
        let q = self.degree - p;
        let rows = par::map_range(self.dual.dim(p), |i| {
            let mut row = Vec::new();
            for j in 0..self.dual.dim(q) {
                let xy = self
                    .dual
                    .mul(&[(i, Scalar::one())], p, &[(j, Scalar::one())], q)
                    .expect("degree in range");
                let c = self.eval(&xy, self.degree);
                if !c.is_zero() {
                    row.push((j, c));
                }
            }
            row
        });
        Matrix::from_rows(self.dual.dim(q), rows)
    }
}

fn require_preregular(w: &MultilinearForm, n: usize) -> Result<Matrix> {
    if n < 2 || n > w.arity() {
        return Err(Error::invalid(format!("need 2 <= N <= {}, got {n}", w.arity())));
    }
    solve_twist(w)
        .matrix()
        .cloned()
        .ok_or_else(|| Error::precondition("w is not preregular"))
}

pub fn omega_form(w: &MultilinearForm, n: usize, limits: &Limits) -> Result<OmegaForm> {
    require_preregular(w, n)?;
    let m = w.arity();
    let d = w.dim();
    limits.check_power("omega consistency check", d, m)?;
    let dual = GradedQuotient::build(&algebra_from_form(w, n)?.dual(), m, limits)?;
    let values: Vec<Scalar> = dual.basis_words(m).iter().map(|u| w.get(u)).collect();
    let om = OmegaForm { dual, degree: m, values };
    // w must vanish on the ideal, i.e. omega(class(u)) = W_u for every word
    let consistent = par::all_range(power(d, m) as usize, |k| {
        let cls = om.dual.class_of_tensor(m, &[(k, Scalar::one())]).expect("degree in range");
        om.eval(&cls, m) == w.get_key(k as u64)
    });
    if !consistent {
        return Err(Error::Verification("w does not define a linear form on A^!_m".into()));
    }
    Ok(om)
}

/// Degree-wise matrices of `sigma_w` on `A^!` (degrees `0..=m`) and `sigma^w` on `A`
/// (degrees `0..=n_max`). Rows are images of basis elements.
#[derive(Clone, Debug)]
pub struct SigmaAutomorphisms {
    pub q: Matrix,
    /// `e_mu -> sum_nu Q[nu][mu] e_nu` on generators.
    pub on_dual: Vec<Matrix>,
    /// `x^mu -> sum_nu Q[mu][nu] x^nu` on generators.
    pub on_algebra: Vec<Matrix>,
}

fn preserves(rel: &Subspace, g: &Matrix, d: usize, n: usize) -> bool {
    let mats = vec![g.clone(); n];
    rel.basis().rows().iter().all(|r| rel.residual(&apply_slots_vec(r, d, &mats)).is_empty())
}

pub fn sigma_automorphisms(
    w: &MultilinearForm,
    n: usize,
    n_max: usize,
    limits: &Limits,
) -> Result<SigmaAutomorphisms> {
    let q = require_preregular(w, n)?;
    let p = algebra_from_form(w, n)?;
    let d = w.dim();
    let qt = q.transpose();
    if !preserves(p.relations(), &q, d, n) || !preserves(&p.relations().perp(), &qt, d, n) {
        return Err(Error::Verification("relations are not stable under Q".into()));
    }
    let dual = GradedQuotient::build(&p.dual(), w.arity(), limits)?;
    let alg = GradedQuotient::build(&p, n_max, limits)?;
    let on_dual = (0..=w.arity()).map(|k| dual.induced_matrix(&qt, k)).collect::<Result<_>>()?;
    let on_algebra = (0..=n_max).map(|k| alg.induced_matrix(&q, k)).collect::<Result<_>>()?;
    Ok(SigmaAutomorphisms { q, on_dual, on_algebra })
}

/// `omega(x y) = omega(sigma_w(y) x)` on all basis pairs of complementary degrees.
pub fn twisted_trace_holds(om: &OmegaForm, sigma_dual: &[Matrix]) -> Result<bool> {
    let m = om.degree;
    for p in 0..=m {
        let q = m - p;
        for i in 0..om.dual.dim(p) {
            for j in 0..om.dual.dim(q) {
                let x = [(i, Scalar::one())];
                let lhs = om.eval(&om.dual.mul(&x, p, &[(j, Scalar::one())], q)?, m);
                let sy = sigma_dual[q].row(j);
                let rhs = om.eval(&om.dual.mul(sy, q, &x, p)?, m);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `F(w,N) = A^!/I` with `I` the radical of `(x,y) -> omega(xy)`.
#[derive(Clone, Debug)]
pub struct FrobeniusQuotient {
    pub degree: usize,
    pub dual_dims: Vec<usize>,
    /// `I_p` inside `A^!_p`, in standard coordinates.
    pub ideal: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// Standard basis indices of `A^!_p` whose classes form a basis of `F_p`.
    pub complement: Vec<Vec<usize>>,
    /// Pairing `F_p x F_{m-p} -> K` on the complement bases.
    pub pairings: Vec<Matrix>,
    /// Induced `sigma_w` on `F_p` in the complement bases.
    pub sigma: Vec<Matrix>,
    pub omega: OmegaForm,
}

impl FrobeniusQuotient {
    pub fn ideal_dims(&self) -> Vec<usize> {
        self.ideal.iter().map(Subspace::dim).collect()
    }

    /// `dim F_0 = dim F_m = 1`, palindromic dimensions, every pairing invertible.
    pub fn is_frobenius(&self) -> bool {
        let m = self.degree;
        self.dims[0] == 1
            && self.dims[m] == 1
            && (0..=m).all(|p| self.dims[p] == self.dims[m - p])
            && self.pairings.iter().all(Matrix::is_invertible)
    }

    /// Coordinates in the complement basis of the class of `x` in `A^!_p`.
    pub fn reduce(&self, p: usize, x: &[(usize, Scalar)]) -> SparseVec {
        let r = self.ideal[p].residual(x);
        let pos = &self.complement[p];
        r.into_iter()
            .map(|(i, c)| (pos.binary_search(&i).expect("residual lies in the complement"), c))
            .collect()
    }

    /// `x y = sigma(y) x` in `F` for basis pairs of complementary degrees.
    pub fn twisted_commutation_holds(&self) -> Result<bool> {
        let m = self.degree;
        let dual = &self.omega.dual;
        for p in 0..=m {
            let q = m - p;
            for &i in &self.complement[p] {
                for (jj, &j) in self.complement[q].iter().enumerate() {
                    let x = [(i, Scalar::one())];
                    let xy = self.reduce(m, &dual.mul(&x, p, &[(j, Scalar::one())], q)?);
                    let sy: SparseVec = self.sigma[q]
                        .row(jj)
                        .iter()
                        .map(|(k, c)| (self.complement[q][*k], c.clone()))
                        .collect();
                    let yx = self.reduce(m, &dual.mul(&sy, q, &x, p)?);
                    if xy != yx {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn frobenius_quotient(w: &MultilinearForm, n: usize, limits: &Limits) -> Result<FrobeniusQuotient> {
    let sig = sigma_automorphisms(w, n, 0, limits)?;
    let omega = omega_form(w, n, limits)?;
    if !twisted_trace_holds(&omega, &sig.on_dual)? {
        return Err(Error::Verification("omega(xy) = omega(sigma(y)x) fails".into()));
    }
    let m = omega.degree;
    let dual = &omega.dual;
    let d = w.dim();
    let full = omega_pairings(&omega)?;
    let mut ideal: Vec<Subspace> = (0..=m).map(|p| full[p].transpose().nullspace()).collect();
    // saturate under left and right multiplication by generators until stable
    loop {
        let mut changed = false;
        for p in 1..=m {
            let mut gens = ideal[p].basis().rows().to_vec();
            for v in ideal[p - 1].basis().rows() {
                for e in 0..d {
                    gens.push(dual.right_mul_word(v, p - 1, &[e])?);
                    gens.push(dual.mul(&[(e, Scalar::one())], 1, v, p - 1)?);
                }
            }
            let s = Subspace::span(dual.dim(p), &gens);
            if s.dim() != ideal[p].dim() {
                ideal[p] = s;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let complement: Vec<Vec<usize>> = (0..=m)
        .map(|p| {
            let piv = ideal[p].pivots();
            (0..dual.dim(p)).filter(|i| !piv.contains(i)).collect()
        })
        .collect();
    let dims: Vec<usize> = complement.iter().map(Vec::len).collect();
    let pairings = (0..=m)
        .map(|p| {
            let rows = complement[p]
                .iter()
                .map(|&i| {
                    complement[m - p]
                        .iter()
                        .enumerate()
                        .filter_map(|(jj, &j)| {
                            let c = full[p].get(i, j);
                            (!c.is_zero()).then_some((jj, c))
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(dims[m - p], rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut fq = FrobeniusQuotient {
        degree: m,
        dual_dims: dual.dims().to_vec(),
        ideal,
        dims,
        complement,
        pairings,
        sigma: Vec::new(),
        omega: omega.clone(),
    };
    fq.sigma = (0..=m)
        .map(|p| {
            let rows = fq.complement[p].iter().map(|&i| fq.reduce(p, sig.on_dual[p].row(i))).collect();
            Matrix::from_rows(fq.dims[p], rows)
        })
        .collect::<Result<_>>()?;
    Ok(fq)
}

/// Pairing matrices `A^!_p x A^!_{m-p}` for `p = 0..=m`.
pub fn omega_pairings(om: &OmegaForm) -> Result<Vec<Matrix>> {
    (0..=om.degree).map(|p| om.pairing_matrix(p)).collect()
}

/// The quadratic elements `e_l e_mu + e_mu e_l` of `A^!_2`, in standard coordinates.
pub fn anticommutators(dual: &GradedQuotient) -> Result<Vec<SparseVec>> {
    let d = dual.generators();
    let mut out = Vec::new();
    for l in 0..d {
        for mu in l..d {
            let a = dual.class_of_word(&[l, mu])?;
            let b = dual.class_of_word(&[mu, l])?;
            out.push(crate::linalg::axpy(&a, &Scalar::one(), &b));
        }
    }
    Ok(out)
}

/// Presentation of `A^!` for `A(w,N)`.
pub fn dual_presentation(w: &MultilinearForm, n: usize) -> Result<Presentation> {
    Ok(algebra_from_form(w, n)?.dual())
}
