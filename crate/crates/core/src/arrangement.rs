//! Ordered hyperplane arrangements in P^d.
//!
//! A hyperplane `{ρ_1 x_1 + ... + ρ_{d+1} x_{d+1} = 0}` is stored as its
//! covector `[ρ_1 : ... : ρ_{d+1}]`. A projective map `x ↦ M x` sends the
//! hyperplane with covector `ρ` to the one with covector `M^{-T} ρ`.
//!
//! The normal form of an arrangement puts the first `d+1` hyperplanes on the
//! coordinate hyperplanes, the `(d+2)`-th on `x_1 + ... + x_{d+1} = 0`, and
//! reads the remaining ones off as rows `[λ_{i,1} : ... : λ_{i,d} : 1]`.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::linalg::Matrix;

/// A point of projective space in canonical form (first nonzero coordinate 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectivePoint {
    field: Field,
    coords: Vec<u64>,
}

impl ProjectivePoint {
    pub fn new(field: &Field, coords: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| !field.is_valid(c)) {
            return Err(Error::BadElement(bad));
        }
        let lead = coords.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroVector)?;
        let inv = field.inv(lead)?;
        let coords = coords.into_iter().map(|c| field.mul(c, inv)).collect();
        Ok(ProjectivePoint { field: field.clone(), coords })
    }

    /// Wraps coordinates already in canonical form.
    pub(crate) fn from_canonical(field: &Field, coords: Vec<u64>) -> Self {
        debug_assert_eq!(coords.iter().find(|&&c| c != 0), Some(&1));
        ProjectivePoint { field: field.clone(), coords }
    }

    /// The coordinate point `e_j` (0-based `j`).
    pub fn basis(field: &Field, dim: usize, j: usize) -> Self {
        let mut coords = vec![0; dim + 1];
        coords[j] = 1;
        ProjectivePoint { field: field.clone(), coords }
    }

    pub fn all_ones(field: &Field, dim: usize) -> Self {
        ProjectivePoint { field: field.clone(), coords: vec![1; dim + 1] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Projective dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn render(&self) -> String {
        format!("[{}]", self.coords.iter().map(|&c| self.field.render(c)).join(" : "))
    }
}

/// An element of PGL_{d+1}, stored with its first nonzero entry scaled to 1.
#[derive(Clone, Debug)]
pub struct ProjectiveMap {
    field: Field,
    matrix: Matrix,
    /// Inverse transpose, used to move hyperplane covectors.
    cov: Matrix,
}

impl PartialEq for ProjectiveMap {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.matrix == other.matrix
    }
}

impl Eq for ProjectiveMap {}

impl ProjectiveMap {
    pub fn new(field: &Field, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch("projective maps need a square matrix".into()));
        }
        let inv = matrix.inverse(field)?;
        let lead = matrix.data().iter().copied().find(|&x| x != 0).expect("invertible");
        let s = field.inv(lead)?;
        Ok(ProjectiveMap {
            field: field.clone(),
            matrix: matrix.scale(s, field),
            cov: inv.transpose().scale(lead, field),
        })
    }

    pub fn identity(field: &Field, dim: usize) -> Self {
        ProjectiveMap { field: field.clone(), matrix: Matrix::identity(dim + 1), cov: Matrix::identity(dim + 1) }
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random<R: Rng + ?Sized>(field: &Field, dim: usize, rng: &mut R) -> Self {
        loop {
            let n = dim + 1;
            let data = (0..n * n).map(|_| rng.gen_range(0..field.order())).collect();
            if let Ok(map) = ProjectiveMap::new(field, Matrix::new(n, n, data)) {
                return map;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows())
    }

    pub fn apply_point(&self, x: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(&self.field, self.matrix.mul_vec(x.coords(), &self.field))
            .expect("invertible maps send points to points")
    }

    pub fn apply_hyperplane(&self, rho: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(&self.field, self.cov.mul_vec(rho.coords(), &self.field))
            .expect("invertible maps send hyperplanes to hyperplanes")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjectiveMap) -> ProjectiveMap {
        ProjectiveMap::new(&self.field, self.matrix.mul(&other.matrix, &self.field))
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> ProjectiveMap {
        ProjectiveMap::new(&self.field, self.cov.transpose()).expect("inverse is invertible")
    }
}

/// `n+1` pairwise distinct hyperplanes of P^d, `n >= d+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: Field,
    dim: usize,
    hyperplanes: Vec<ProjectivePoint>,
}

impl Arrangement {
    pub fn new(field: &Field, dim: usize, hyperplanes: Vec<ProjectivePoint>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::BadParameters("arrangements live in P^d with d >= 1".into()));
        }
        if hyperplanes.len() < dim + 2 {
            return Err(Error::BadParameters(format!(
                "need at least {} hyperplanes in P^{dim}, got {}",
                dim + 2,
                hyperplanes.len()
            )));
        }
        for h in &hyperplanes {
            if h.field() != field {
                return Err(Error::FieldMismatch);
            }
            if h.dim() != dim {
                return Err(Error::DimensionMismatch(format!("covector of length {} in P^{dim}", h.coords.len())));
            }
        }
        let mut seen: HashMap<&[u64], usize> = HashMap::new();
        for (j, h) in hyperplanes.iter().enumerate() {
            if let Some(&i) = seen.get(h.coords()) {
                return Err(Error::DuplicateHyperplane(i, j));
            }
            seen.insert(h.coords(), j);
        }
        Ok(Arrangement { field: field.clone(), dim, hyperplanes })
    }

    pub fn from_covectors(field: &Field, dim: usize, covectors: Vec<Vec<u64>>) -> Result<Self> {
        let hyperplanes = covectors.into_iter().map(|c| ProjectivePoint::new(field, c)).collect::<Result<Vec<_>>>()?;
        Arrangement::new(field, dim, hyperplanes)
    }

    /// Random arrangement in general position.
    pub fn random<R: Rng + ?Sized>(field: &Field, dim: usize, n: usize, rng: &mut R) -> Self {
        loop {
            let covectors: Vec<Vec<u64>> =
                (0..=n).map(|_| (0..=dim).map(|_| rng.gen_range(0..field.order())).collect()).collect();
            if let Ok(a) = Arrangement::from_covectors(field, dim, covectors) {
                if is_general_position(&a) {
                    return a;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes minus one.
    pub fn n(&self) -> usize {
        self.hyperplanes.len() - 1
    }

    pub fn hyperplanes(&self) -> &[ProjectivePoint] {
        &self.hyperplanes
    }

    /// `(d+1) × (n+1)` matrix whose columns are the covectors.
    pub fn coefficient_matrix(&self) -> Matrix {
        let cols: Vec<&[u64]> = self.hyperplanes.iter().map(|h| h.coords()).collect();
        Matrix::from_columns(&cols)
    }

    pub fn apply(&self, map: &ProjectiveMap) -> Arrangement {
        Arrangement {
            field: self.field.clone(),
            dim: self.dim,
            hyperplanes: self.hyperplanes.iter().map(|h| map.apply_hyperplane(h)).collect(),
        }
    }

    /// Hyperplanes reordered so that position `i` holds `self[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Arrangement> {
        if order.len() != self.hyperplanes.len() {
            return Err(Error::DimensionMismatch(format!(
                "reordering of length {} for {} hyperplanes",
                order.len(),
                self.hyperplanes.len()
            )));
        }
        let hyperplanes = order
            .iter()
            .map(|&i| self.hyperplanes.get(i).cloned().ok_or(Error::BadIndex(i)))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(&self.field, self.dim, hyperplanes)
    }
}

/// The normalized parameter `Λ`: `n-d-1` rows `(λ_{i,1}, ..., λ_{i,d})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaParams {
    field: Field,
    d: usize,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl LambdaParams {
    /// Shape-checked constructor; membership in X_{n,d} is a separate test.
    pub fn new(field: &Field, d: usize, n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        if d < 1 || n < d + 1 {
            return Err(Error::BadParameters(format!("need d >= 1 and n >= d+1, got d={d}, n={n}")));
        }
        if rows.len() != n - d - 1 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "Λ for (d, n) = ({d}, {n}) has {} rows of length {d}",
                n - d - 1
            )));
        }
        if let Some(&bad) = rows.iter().flatten().find(|&&x| !field.is_valid(x)) {
            return Err(Error::BadElement(bad));
        }
        Ok(LambdaParams { field: field.clone(), d, n, rows })
    }

    /// The parameter of the `n = d+1` stratum.
    pub fn empty(field: &Field, d: usize) -> Self {
        LambdaParams { field: field.clone(), d, n: d + 1, rows: Vec::new() }
    }

    /// Random member of X_{n,d}.
    pub fn random<R: Rng + ?Sized>(field: &Field, d: usize, n: usize, rng: &mut R) -> Result<Self> {
        let shape = LambdaParams::new(field, d, n, vec![vec![0; d]; n.saturating_sub(d + 1)])?;
        for _ in 0..100_000 {
            let rows = (0..n - d - 1).map(|_| (0..d).map(|_| rng.gen_range(0..field.order())).collect()).collect();
            let lambda = LambdaParams { rows, ..shape.clone() };
            if membership_xnd(&lambda) {
                return Ok(lambda);
            }
        }
        Err(Error::BadParameters(format!("X_{{{n},{d}}} looks empty over {field:?}")))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Covectors of `Σ_1(Λ), ..., Σ_{n+1}(Λ)`, not canonicalized.
    pub fn covectors(&self) -> Vec<Vec<u64>> {
        let d = self.d;
        let mut out = Vec::with_capacity(self.n + 1);
        for j in 0..=d {
            let mut e = vec![0; d + 1];
            e[j] = 1;
            out.push(e);
        }
        out.push(vec![1; d + 1]);
        for row in &self.rows {
            let mut v = row.clone();
            v.push(1);
            out.push(v);
        }
        out
    }

    pub fn map_entries(&self, field: &Field, g: impl Fn(u64) -> u64) -> LambdaParams {
        LambdaParams {
            field: field.clone(),
            d: self.d,
            n: self.n,
            rows: self.rows.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect(),
        }
    }
}

/// True iff every maximal minor of `m` (rows <= cols) is nonzero.
pub fn all_maximal_minors_nonzero(m: &Matrix, f: &Field) -> bool {
    let r = m.rows();
    if r > m.cols() {
        return false;
    }
    (0..m.cols()).combinations(r).all(|cols| m.select_columns(&cols).det(f) != 0)
}

pub fn is_general_position(a: &Arrangement) -> bool {
    all_maximal_minors_nonzero(&a.coefficient_matrix(), &a.field)
}

/// The unique map sending the `d+2` covectors of `frame` to the standard
/// frame `e_1, ..., e_{d+1}, [1 : ... : 1]`, if they are in general position.
fn frame_map(field: &Field, frame: &[&[u64]]) -> Option<ProjectiveMap> {
    let d = frame.len() - 2;
    let q = Matrix::from_columns(&frame[..=d]);
    let c = q.solve(frame[d + 1], field).ok()?;
    if c.contains(&0) {
        return None;
    }
    // T = diag(c) Q^T, so T^{-T} = (Q diag(c))^{-1} takes q_j to e_j / c_j.
    let t = Matrix::diagonal(&c).mul(&q.transpose(), field);
    ProjectiveMap::new(field, t).ok()
}

/// Normal form of an ordered arrangement in general position.
pub fn normalize(a: &Arrangement) -> Result<(ProjectiveMap, LambdaParams)> {
    if !is_general_position(a) {
        return Err(Error::NotGeneralPosition);
    }
    let d = a.dim;
    let f = &a.field;
    let frame: Vec<&[u64]> = a.hyperplanes[..d + 2].iter().map(|h| h.coords()).collect();
    let t = frame_map(f, &frame).ok_or(Error::NotGeneralPosition)?;
    let rows = a.hyperplanes[d + 2..]
        .iter()
        .map(|h| {
            let v = t.cov.mul_vec(h.coords(), f);
            let last = f.inv(v[d]).map_err(|_| Error::NotGeneralPosition)?;
            Ok(v[..d].iter().map(|&x| f.mul(x, last)).collect())
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    let lambda = LambdaParams { field: f.clone(), d, n: a.n(), rows };
    Ok((t, lambda))
}

/// The standard arrangement `Σ_1(Λ), ..., Σ_{n+1}(Λ)`.
pub fn lambda_to_arrangement(lambda: &LambdaParams) -> Result<Arrangement> {
    Arrangement::from_covectors(&lambda.field, lambda.d, lambda.covectors())
}

/// Whether `Λ ∈ X_{n,d}`.
pub fn membership_xnd(lambda: &LambdaParams) -> bool {
    let cov = lambda.covectors();
    let cols: Vec<&[u64]> = cov.iter().map(|v| v.as_slice()).collect();
    all_maximal_minors_nonzero(&Matrix::from_columns(&cols), &lambda.field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceMode {
    Labeled,
    Unlabeled,
}

/// A map `T` with `T(Σ^a_j) = Σ^b_{perm[j]}` for every `j`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Equivalence {
    pub map: ProjectiveMap,
    pub perm: Vec<usize>,
}

fn check_compatible(a: &Arrangement, b: &Arrangement) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.dim != b.dim || a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "arrangements of shape (d, n) = ({}, {}) and ({}, {})",
            a.dim,
            a.n(),
            b.dim,
            b.n()
        )));
    }
    if !is_general_position(a) || !is_general_position(b) {
        return Err(Error::NotGeneralPosition);
    }
    Ok(())
}

pub fn pgl_equivalent(a: &Arrangement, b: &Arrangement, mode: EquivalenceMode) -> Result<Option<Equivalence>> {
    check_compatible(a, b)?;
    match mode {
        EquivalenceMode::Labeled => {
            let (ta, la) = normalize(a)?;
            let (tb, lb) = normalize(b)?;
            Ok((la == lb).then(|| Equivalence { map: tb.inverse().compose(&ta), perm: (0..=a.n()).collect() }))
        }
        EquivalenceMode::Unlabeled => Ok(unlabeled_search(a, b, true).into_iter().next()),
    }
}

/// Every `(T, ρ)` carrying `a` onto `b` as unordered sets, sorted by `ρ`.
pub fn all_equivalences(a: &Arrangement, b: &Arrangement) -> Result<Vec<Equivalence>> {
    check_compatible(a, b)?;
    Ok(unlabeled_search(a, b, false))
}

/// Fixes the first `d+2` hyperplanes of `a` as the source frame and tries
/// every ordered choice of `d+2` target slots in `b`; `T` is then forced and
/// the remaining hyperplanes are matched as a set.
fn unlabeled_search(a: &Arrangement, b: &Arrangement, first_only: bool) -> Vec<Equivalence> {
    let d = a.dim;
    let f = &a.field;
    let size = a.hyperplanes.len();
    let source: Vec<&[u64]> = a.hyperplanes[..d + 2].iter().map(|h| h.coords()).collect();
    let Some(src_map) = frame_map(f, &source) else {
        return Vec::new();
    };
    let index: HashMap<&[u64], usize> = b.hyperplanes.iter().enumerate().map(|(i, h)| (h.coords(), i)).collect();
    let selections: Vec<Vec<usize>> = (0..size).permutations(d + 2).collect();

    let attempt = |sel: &Vec<usize>| -> Option<Equivalence> {
        let target: Vec<&[u64]> = sel.iter().map(|&j| b.hyperplanes[j].coords()).collect();
        let dst_map = frame_map(f, &target)?;
        let t = dst_map.inverse().compose(&src_map);
        let mut perm = sel.clone();
        let mut used = vec![false; size];
        for &j in sel {
            used[j] = true;
        }
        for h in &a.hyperplanes[d + 2..] {
            let image = t.apply_hyperplane(h);
            let &j = index.get(image.coords())?;
            if used[j] {
                return None;
            }
            used[j] = true;
            perm.push(j);
        }
        Some(Equivalence { map: t, perm })
    };

    if first_only {
        selections.par_iter().find_map_first(attempt).into_iter().collect()
    } else {
        let mut all: Vec<Equivalence> = selections.par_iter().filter_map(attempt).collect();
        all.sort_by(|x, y| x.perm.cmp(&y.perm));
        all
    }
}
