//! The generalized Fermat model `X^k_n(Λ) ⊂ P^n`.
//!
//! Every defining form is linear in `y_j = x_j^k`:
//!
//! ```text
//! f_0 = y_1 + ... + y_{d+1} + y_{d+2}
//! f_i = λ_{i,1} y_1 + ... + λ_{i,d} y_d + y_{d+1} + y_{d+2+i}     (1 <= i <= n-d-1)
//! ```
//!
//! so the model is described by an `(n-d) × (n+1)` coefficient matrix `C`.
//! Solving `C y = 0` for the last `n-d` coordinates expresses them through
//! `y_1, ..., y_{d+1}`, which is how points are enumerated: a base point of
//! `P^d` and one `k`-th root per remaining coordinate.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{
    all_maximal_minors_nonzero, lambda_to_arrangement, membership_xnd, normalize, Arrangement, LambdaParams,
    ProjectivePoint,
};
use crate::error::{Error, Result};
use crate::ff::{gcd, Field, FieldDesc};
use crate::linalg::{proportionality, Matrix};
use crate::monomial::MonomialMatrix;
use crate::multinomial::is_power_of_p;

/// Default cap on the number of points of the ambient `P^n` scanned.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// A degree-`k` form `Σ c_j x_j^k`, stored sparsely by variable index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub exponent: u64,
    pub terms: Vec<(usize, u64)>,
}

#[derive(Clone, Debug)]
pub struct FermatModel {
    d: usize,
    k: u64,
    n: usize,
    lambda: LambdaParams,
    field: Field,
    coeffs: Matrix,
    forms: Vec<Form>,
}

impl PartialEq for FermatModel {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.k == other.k && self.n == other.n && self.lambda == other.lambda
    }
}

impl Eq for FermatModel {}

fn check_parameters(d: usize, k: u64, n: usize, lambda: &LambdaParams, field: &Field) -> Result<()> {
    if d < 1 || n < d + 1 || k < 2 {
        return Err(Error::BadParameters(format!("need d >= 1, n >= d+1, k >= 2; got (d;k,n) = ({d};{k},{n})")));
    }
    let p = field.characteristic();
    if gcd(k, p) != 1 {
        return Err(Error::NotCoprime { k, p });
    }
    if lambda.field() != field {
        return Err(Error::FieldMismatch);
    }
    if lambda.d() != d || lambda.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "Λ has shape (d, n) = ({}, {}), model wants ({d}, {n})",
            lambda.d(),
            lambda.n()
        )));
    }
    if !field.contains_roots_of_unity(k) {
        return Err(Error::NoKthRoots { k, q: field.order() });
    }
    Ok(())
}

/// Builds `X^k_n(Λ)`, validating `Λ ∈ X_{n,d}`.
pub fn build_model(d: usize, k: u64, n: usize, lambda: &LambdaParams, field: &Field) -> Result<FermatModel> {
    check_parameters(d, k, n, lambda, field)?;
    if !membership_xnd(lambda) {
        return Err(Error::NotGeneralPosition);
    }
    Ok(FermatModel::assemble(d, k, n, lambda, field))
}

/// Like [`build_model`] but without the general position check. Models built
/// this way may be singular; they exist to exercise the smoothness checks.
pub fn build_model_unchecked(d: usize, k: u64, n: usize, lambda: &LambdaParams, field: &Field) -> Result<FermatModel> {
    check_parameters(d, k, n, lambda, field)?;
    Ok(FermatModel::assemble(d, k, n, lambda, field))
}

/// Number of points of `P^n(GF(q))`.
pub(crate) fn projective_space_size(q: u64, n: usize) -> u128 {
    let q = q as u128;
    (0..=n as u32).map(|i| q.pow(i)).sum()
}

/// Canonical representatives of `P^dim(GF(q))` in a fixed order.
pub(crate) fn projective_points(q: u64, dim: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..=dim).flat_map(move |lead| {
        let free = dim - lead;
        (0..q.pow(free as u32)).map(move |mut idx| {
            let mut coords = vec![0u64; dim + 1];
            coords[lead] = 1;
            for c in coords[lead + 1..].iter_mut().rev() {
                *c = idx % q;
                idx /= q;
            }
            coords
        })
    })
}

#[derive(Clone, Debug)]
pub struct PointCount {
    pub field: Field,
    pub count: u64,
    pub points: Option<Vec<ProjectivePoint>>,
}

impl FermatModel {
    fn assemble(d: usize, k: u64, n: usize, lambda: &LambdaParams, field: &Field) -> FermatModel {
        let rows = n - d;
        let mut coeffs = Matrix::zeros(rows, n + 1);
        for j in 0..=d + 1 {
            coeffs[(0, j)] = 1;
        }
        for (i, row) in lambda.rows().iter().enumerate() {
            for (j, &l) in row.iter().enumerate() {
                coeffs[(i + 1, j)] = l;
            }
            coeffs[(i + 1, d)] = 1;
            coeffs[(i + 1, d + 2 + i)] = 1;
        }
        let forms = (0..rows)
            .map(|i| Form {
                exponent: k,
                terms: (0..=n).filter(|&j| coeffs[(i, j)] != 0).map(|j| (j, coeffs[(i, j)])).collect(),
            })
            .collect();
        FermatModel { d, k, n, lambda: lambda.clone(), field: field.clone(), coeffs, forms }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &LambdaParams {
        &self.lambda
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// Coefficients of the forms in the variables `y_j = x_j^k`.
    pub fn coefficient_matrix(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        lambda_to_arrangement(&self.lambda)
    }

    /// Whether every maximal minor of the coefficient matrix is nonzero.
    pub fn coefficient_minors_nonzero(&self) -> bool {
        all_maximal_minors_nonzero(&self.coeffs, &self.field)
    }

    /// The same model over a field containing this one.
    pub fn base_change(&self, target: &Field) -> Result<FermatModel> {
        if target == &self.field {
            return Ok(self.clone());
        }
        let emb = self.field.embedding_into(target)?;
        let lambda = self.lambda.map_entries(target, |x| emb.map(x));
        Ok(FermatModel::assemble(self.d, self.k, self.n, &lambda, target))
    }

    /// Model over GF(q^ext), where `q` is the order of the current field.
    pub fn extend(&self, ext: u32) -> Result<FermatModel> {
        if ext < 1 {
            return Err(Error::BadDegree(ext));
        }
        let target = crate::ff::make_field(self.field.characteristic(), self.field.degree() * ext)?;
        self.base_change(&target)
    }

    fn check_point(&self, x: &ProjectivePoint) -> Result<()> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if x.coords().len() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!("point of P^{} on a model in P^{}", x.dim(), self.n)));
        }
        Ok(())
    }

    fn eval_forms(&self, coords: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let y: Vec<u64> = coords.iter().map(|&x| f.pow(x, self.k)).collect();
        self.coeffs.mul_vec(&y, f)
    }

    /// All defining forms vanish at `x`.
    pub fn contains(&self, x: &ProjectivePoint) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.eval_forms(x.coords()).iter().all(|&v| v == 0))
    }

    /// Rational points over the current field.
    pub fn points(&self, cap: u64, collect: bool) -> Result<PointCount> {
        let f = &self.field;
        let q = f.order();
        let ambient = projective_space_size(q, self.n);
        if ambient > cap as u128 {
            return Err(Error::BudgetExceeded { needed: ambient, cap: cap as u128 });
        }
        let d = self.d;
        let k = self.k;
        let powers: Vec<u64> = f.elements().map(|x| f.pow(x, k)).collect();
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); q as usize];
        for x in f.elements() {
            roots[powers[x as usize] as usize].push(x);
        }
        // y_{d+1+i} = -Σ_{j<=d} C[i][j] y_j
        let dependent: Vec<Vec<u64>> =
            (0..self.n - d).map(|i| (0..=d).map(|j| f.neg(self.coeffs[(i, j)])).collect()).collect();
        let base: Vec<Vec<u64>> = projective_points(q, d).collect();

        let fibers = |x: &Vec<u64>| -> (u64, Vec<&[u64]>) {
            let y: Vec<u64> = x.iter().map(|&c| powers[c as usize]).collect();
            let mut count = 1u64;
            let mut lists = Vec::with_capacity(dependent.len());
            for row in &dependent {
                let target = row.iter().zip(&y).fold(0, |acc, (&c, &v)| f.add(acc, f.mul(c, v)));
                let r = roots[target as usize].as_slice();
                count *= r.len() as u64;
                lists.push(r);
            }
            (count, lists)
        };

        if !collect {
            let count = base.par_iter().map(|x| fibers(x).0).sum();
            return Ok(PointCount { field: f.clone(), count, points: None });
        }
        let chunks: Vec<Vec<ProjectivePoint>> = base
            .par_iter()
            .map(|x| {
                let (count, lists) = fibers(x);
                if count == 0 {
                    return Vec::new();
                }
                lists
                    .into_iter()
                    .map(|l| l.iter().copied())
                    .multi_cartesian_product()
                    .map(|tail| {
                        let mut coords = x.clone();
                        coords.extend(tail);
                        ProjectivePoint::from_canonical(f, coords)
                    })
                    .collect()
            })
            .collect();
        let points: Vec<ProjectivePoint> = chunks.into_iter().flatten().collect();
        Ok(PointCount { field: f.clone(), count: points.len() as u64, points: Some(points) })
    }

    /// Rational points over GF(q^ext).
    pub fn enumerate_points(&self, ext: u32, cap: u64, collect: bool) -> Result<PointCount> {
        self.extend(ext)?.points(cap, collect)
    }

    /// Rank of the matrix with rows `∇f_i(x)`.
    pub fn jacobian_rank(&self, x: &ProjectivePoint) -> Result<usize> {
        if !self.contains(x)? {
            return Err(Error::NotOnVariety);
        }
        Ok(self.jacobian_rank_unchecked(x.coords()))
    }

    fn jacobian_rank_unchecked(&self, coords: &[u64]) -> usize {
        let f = &self.field;
        let kk = f.from_int(self.k as i64);
        let grads: Vec<u64> = coords.iter().map(|&x| f.mul(kk, f.pow(x, self.k - 1))).collect();
        let mut jac = self.coeffs.clone();
        for i in 0..jac.rows() {
            for j in 0..jac.cols() {
                jac[(i, j)] = f.mul(jac[(i, j)], grads[j]);
            }
        }
        jac.rank(f)
    }

    /// Jacobian rank at every rational point over each requested extension.
    pub fn smoothness_report(&self, ext_degrees: &[u32], cap: u64) -> Result<SmoothnessReport> {
        let expected = self.n - self.d;
        let mut checks = Vec::with_capacity(ext_degrees.len());
        for &ext in ext_degrees {
            let model = self.extend(ext)?;
            let pts = model.points(cap, true)?.points.expect("collected");
            let ranks: Vec<usize> = pts.par_iter().map(|x| model.jacobian_rank_unchecked(x.coords())).collect();
            let singular: Vec<&ProjectivePoint> =
                pts.iter().zip(&ranks).filter(|(_, &r)| r < expected).map(|(x, _)| x).collect();
            checks.push(ExtensionCheck {
                ext,
                field: model.field.describe(),
                points: pts.len() as u64,
                min_rank: ranks.iter().copied().min(),
                max_rank: ranks.iter().copied().max(),
                singular_count: singular.len() as u64,
                singular_examples: singular.into_iter().take(8).cloned().collect(),
            });
        }
        let verdict = if checks.iter().any(|c| c.singular_count > 0) {
            SmoothnessVerdict::Fail
        } else if checks.iter().all(|c| c.points == 0) {
            SmoothnessVerdict::PassVacuous
        } else {
            SmoothnessVerdict::Pass
        };
        Ok(SmoothnessReport {
            expected_rank: expected,
            checks,
            verdict,
            scope: "Jacobian rank at rational points over the listed extensions only; not a proof of smoothness",
        })
    }

    /// `π_0(x) = [x_1^k : ... : x_{d+1}^k]`.
    pub fn covering_map(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if !self.contains(x)? {
            return Err(Error::NotOnVariety);
        }
        let f = &self.field;
        ProjectivePoint::new(f, x.coords()[..=self.d].iter().map(|&c| f.pow(c, self.k)).collect())
    }

    /// The primitive `k`-th root of unity used for the deck group.
    pub fn omega(&self) -> u64 {
        self.field.primitive_root_of_unity(self.k).expect("checked at construction")
    }

    /// `φ_j` scales coordinate `j` by `ω_k`.
    pub fn deck_generators(&self) -> Vec<MonomialMatrix> {
        let omega = self.omega();
        (0..=self.n)
            .map(|j| {
                let mut scalars = vec![1; self.n + 1];
                scalars[j] = omega;
                MonomialMatrix::diagonal(&self.field, scalars).expect("nonzero scalars")
            })
            .collect()
    }

    /// All `k^n` elements of `H_0`, i.e. `diag(1, ω^{e_1}, ..., ω^{e_n})`.
    pub fn deck_group_elements(&self) -> Vec<MonomialMatrix> {
        let f = &self.field;
        let omega = self.omega();
        let powers: Vec<u64> = (0..self.k).map(|e| f.pow(omega, e)).collect();
        (0..self.n)
            .map(|_| powers.iter().copied())
            .multi_cartesian_product()
            .map(|tail| {
                let mut scalars = vec![1];
                scalars.extend(tail);
                MonomialMatrix::diagonal(f, scalars).expect("nonzero scalars")
            })
            .collect()
    }

    /// Whether `g` is in `H_0`: diagonal with `k`-th roots of unity.
    pub fn in_deck_group(&self, g: &MonomialMatrix) -> bool {
        g.field() == &self.field && g.is_diagonal() && g.scalars().iter().all(|&a| self.field.pow(a, self.k) == 1)
    }

    /// The generalized Fermat pair of type `(d-1; k, n-1)` carried by the fixed
    /// locus `F_j = {x_j = 0} ∩ X` (1-based `j`).
    pub fn induced_pair(&self, j: usize) -> Result<InducedPair> {
        if self.d < 2 || j < 1 || j > self.n + 1 {
            return Err(Error::BadIndex(j));
        }
        let f = &self.field;
        let d = self.d;
        // the forms y_i = L_i(u) themselves, not the covectors of Λ, which differ by a sign
        let covectors = self.linear_forms_on_base();
        let basis = Matrix::from_rows(&[covectors[j - 1].clone()]).kernel(f);
        // columns of `b` are coordinates on Σ_j ≅ P^{d-1}
        let b = Matrix::from_columns(&basis.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
        let others: Vec<usize> = (0..=self.n).filter(|&i| i != j - 1).collect();
        let restricted: Vec<Vec<u64>> = others.iter().map(|&i| b.vec_mul(&covectors[i], f)).collect();
        let sub = Arrangement::from_covectors(f, d - 1, restricted.clone())?;
        let (t, lambda) = normalize(&sub)?;
        let model = build_model(d - 1, self.k, self.n - 1, &lambda, f)?;
        // y'_i = s_i y_{others[i]} on F_j, read off from L'_i ∘ T = s_i w_i
        let linear = model.linear_forms_on_base();
        let scales: Vec<u64> = linear
            .iter()
            .zip(&restricted)
            .map(|(l, w)| {
                let lt = t.matrix().vec_mul(l, f);
                proportionality(&lt, w, f).expect("normalized covectors are proportional")
            })
            .collect();
        let s0 = f.inv(scales[0])?;
        let y_scales = scales.iter().map(|&s| f.mul(s, s0)).collect();
        Ok(InducedPair { hyperplane: j, model, coordinate_map: others, y_scales })
    }

    /// Rows `L_j` with `y_j = L_j · (y_1, ..., y_{d+1})` on the solution space
    /// of `C y = 0`.
    pub fn linear_forms_on_base(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let d = self.d;
        let mut rows = Vec::with_capacity(self.n + 1);
        for j in 0..=d {
            let mut e = vec![0; d + 1];
            e[j] = 1;
            rows.push(e);
        }
        for i in 0..self.n - d {
            rows.push((0..=d).map(|j| f.neg(self.coeffs[(i, j)])).collect());
        }
        rows
    }

    pub fn describe_forms(&self) -> Vec<String> {
        self.forms
            .iter()
            .map(|form| {
                form.terms
                    .iter()
                    .map(|&(j, c)| {
                        if c == 1 {
                            format!("x{}^{}", j + 1, form.exponent)
                        } else {
                            format!("({})x{}^{}", self.field.render(c), j + 1, form.exponent)
                        }
                    })
                    .join(" + ")
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct InducedPair {
    /// 1-based index of the hyperplane `Σ_j`.
    pub hyperplane: usize,
    pub model: FermatModel,
    /// `coordinate_map[i]` is the coordinate of `P^n` matching coordinate `i` of the induced model.
    pub coordinate_map: Vec<usize>,
    /// On `F_j`, the induced model's `y'_i` equals `y_scales[i] * y_{coordinate_map[i]}` up to a common factor.
    pub y_scales: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SmoothnessVerdict {
    Pass,
    PassVacuous,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCheck {
    pub ext: u32,
    pub field: FieldDesc,
    pub points: u64,
    pub min_rank: Option<usize>,
    pub max_rank: Option<usize>,
    pub singular_count: u64,
    pub singular_examples: Vec<ProjectivePoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessReport {
    pub expected_rank: usize,
    pub checks: Vec<ExtensionCheck>,
    pub verdict: SmoothnessVerdict,
    pub scope: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub d: usize,
    pub k: u64,
    pub n: usize,
    pub p: u64,
    pub coprimality_ok: bool,
    pub k_minus_1_not_p_power: bool,
    pub exceptional_type: bool,
    pub theorem_applies: bool,
    /// `(n-d)k - n - 1`; the canonical sheaf is `O(r)`.
    pub canonical_degree: i64,
}

pub fn classify_type(d: usize, k: u64, n: usize, p: u64) -> Result<TypeVerdict> {
    if d < 1 || n < d + 1 || k < 2 {
        return Err(Error::BadParameters(format!("need d >= 1, n >= d+1, k >= 2; got ({d};{k},{n})")));
    }
    if !crate::ff::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let coprimality_ok = gcd(k, p) == 1;
    let k_minus_1_not_p_power = !is_power_of_p(k - 1, p)?;
    let exceptional_type = d == 2 && matches!((k, n), (2, 5) | (4, 3)) && p > 2;
    let theorem_applies = coprimality_ok && k_minus_1_not_p_power && (p == 2 || !exceptional_type) && d >= 2;
    let canonical_degree = (n - d) as i64 * k as i64 - n as i64 - 1;
    Ok(TypeVerdict {
        d,
        k,
        n,
        p,
        coprimality_ok,
        k_minus_1_not_p_power,
        exceptional_type,
        theorem_applies,
        canonical_degree,
    })
}
