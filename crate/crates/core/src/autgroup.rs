//! Linear automorphisms of `X^k_n(Λ)` by monomial matrices.
//!
//! A monomial automorphism permutes the coordinate hyperplanes and so induces
//! a symmetry of the branch arrangement in `P^d`. Conversely every symmetry
//! `T` lifts: if `L_j` are the linear forms giving `y_j` on `P^d`, then
//! `L_j ∘ T = b_j L_{τ(j)}` and any `a_j` with `a_j^k = b_j / b_0` defines a
//! lift `x_j ↦ a_j x_{τ(j)}`. The lifts of one `T` form one `H_0`-coset.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{all_equivalences, Equivalence, ProjectiveMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::ff::{inv_mod, make_field, Field};
use crate::linalg::{proportionality, Matrix};
use crate::monomial::MonomialMatrix;
use crate::variety::{classify_type, FermatModel, TypeVerdict};

/// Default cap on `|Lin|` for the subgroup oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 5000;

fn check_field(g: &Field, mdl: &FermatModel) -> Result<()> {
    if g != mdl.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Whether `g` maps the model to itself, i.e. every `f_i ∘ g` lies in the
/// span of the defining forms.
pub fn preserves_ideal(g: &MonomialMatrix, mdl: &FermatModel) -> Result<bool> {
    check_field(g.field(), mdl)?;
    if g.size() != mdl.n() + 1 {
        return Err(Error::DimensionMismatch(format!("{} coordinates on a model in P^{}", g.size(), mdl.n())));
    }
    let f = mdl.field();
    let c = mdl.coefficient_matrix();
    // y_j ∘ g = a_j^k y_{τ(j)}
    let ak: Vec<u64> = g.scalars().iter().map(|&a| f.pow(a, mdl.k())).collect();
    let mut rows = c.to_rows();
    for i in 0..c.rows() {
        let mut pulled = vec![0; c.cols()];
        for (j, &t) in g.perm().iter().enumerate() {
            pulled[t] = f.mul(c[(i, j)], ak[j]);
        }
        rows.push(pulled);
    }
    Ok(Matrix::from_rows(&rows).rank(f) == c.rank(f))
}

type Poly = BTreeMap<Vec<u32>, u64>;

fn linear_form_power(row: &[u64], k: u64, f: &Field) -> Poly {
    let mut acc: Poly = BTreeMap::from([(vec![0; row.len()], 1)]);
    for _ in 0..k {
        let mut next = Poly::new();
        for (mono, &c) in &acc {
            for (l, &m) in row.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let mut e = mono.clone();
                e[l] += 1;
                let slot = next.entry(e).or_insert(0);
                *slot = f.add(*slot, f.mul(c, m));
            }
        }
        acc = next;
    }
    acc
}

/// [`preserves_ideal`] for an arbitrary invertible matrix acting by `x ↦ M x`,
/// by expanding the pulled-back forms as polynomials.
pub fn preserves_ideal_matrix(m: &Matrix, mdl: &FermatModel) -> Result<bool> {
    let size = mdl.n() + 1;
    if m.rows() != size || m.cols() != size {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix on a model in P^{}", m.rows(), m.cols(), mdl.n())));
    }
    let f = mdl.field();
    let k = mdl.k() as u32;
    let c = mdl.coefficient_matrix();
    let powers: Vec<Poly> = (0..size).map(|j| linear_form_power(m.row(j), mdl.k(), f)).collect();
    let mut rows = c.to_rows();
    for i in 0..c.rows() {
        let mut pulled = Poly::new();
        for (j, pj) in powers.iter().enumerate() {
            let cij = c[(i, j)];
            if cij == 0 {
                continue;
            }
            for (mono, &v) in pj {
                let slot = pulled.entry(mono.clone()).or_insert(0);
                *slot = f.add(*slot, f.mul(cij, v));
            }
        }
        let mut diagonal = vec![0; size];
        for (mono, &v) in &pulled {
            if v == 0 {
                continue;
            }
            match mono.iter().position(|&e| e == k) {
                Some(l) => diagonal[l] = v,
                None => return Ok(false),
            }
        }
        rows.push(diagonal);
    }
    Ok(Matrix::from_rows(&rows).rank(f) == c.rank(f))
}

/// A symmetry of the branch arrangement: `T(Σ_j) = Σ_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementSymmetry {
    pub perm: Vec<usize>,
    pub witness: Equivalence,
}

/// All symmetries of the ordered arrangement `Σ_1(Λ), ..., Σ_{n+1}(Λ)`, sorted by permutation.
pub fn arrangement_symmetries(mdl: &FermatModel) -> Result<Vec<ArrangementSymmetry>> {
    let arr = mdl.arrangement()?;
    Ok(all_equivalences(&arr, &arr)?
        .into_iter()
        .map(|e| ArrangementSymmetry { perm: e.perm.clone(), witness: e })
        .collect())
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j]).collect()
}

/// A small generating set, chosen greedily in sorted order.
pub fn permutation_generators(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let Some(first) = perms.first() else {
        return Vec::new();
    };
    let identity: Vec<usize> = (0..first.len()).collect();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut closure: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    for p in perms {
        if closure.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let mut frontier: Vec<Vec<usize>> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = compose_perm(g, &x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// `Lin(X)` as coset representatives over `H_0`, one per arrangement symmetry.
#[derive(Clone, Debug)]
pub struct LinGroup {
    model: FermatModel,
    base_field: Field,
    extension: u32,
    symmetries: Vec<ArrangementSymmetry>,
    coset_reps: Vec<MonomialMatrix>,
    by_perm: BTreeMap<Vec<usize>, usize>,
    closure_verified: bool,
}

impl LinGroup {
    /// The model over the working field (an extension of the input field when lifting needed one).
    pub fn model(&self) -> &FermatModel {
        &self.model
    }

    pub fn base_field(&self) -> &Field {
        &self.base_field
    }

    pub fn field(&self) -> &Field {
        self.model.field()
    }

    /// Degree of the working field over the input field.
    pub fn extension_degree(&self) -> u32 {
        self.extension
    }

    pub fn symmetries(&self) -> &[ArrangementSymmetry] {
        &self.symmetries
    }

    pub fn symmetry_generators(&self) -> Vec<Vec<usize>> {
        permutation_generators(&self.symmetries.iter().map(|s| s.perm.clone()).collect::<Vec<_>>())
    }

    pub fn coset_representatives(&self) -> &[MonomialMatrix] {
        &self.coset_reps
    }

    pub fn deck_order(&self) -> u128 {
        (self.model.k() as u128).pow(self.model.n() as u32)
    }

    pub fn order(&self) -> u128 {
        self.deck_order() * self.symmetries.len() as u128
    }

    /// Generator products and inverses stayed inside the group, and every
    /// coset representative preserves the defining ideal.
    pub fn closure_verified(&self) -> bool {
        self.closure_verified
    }

    pub fn contains(&self, g: &MonomialMatrix) -> bool {
        if g.field() != self.field() || g.size() != self.model.n() + 1 {
            return false;
        }
        let Some(&idx) = self.by_perm.get(&g.hyperplane_permutation()) else {
            return false;
        };
        self.model.in_deck_group(&self.coset_reps[idx].inverse().compose(g))
    }

    /// Every element, grouped by coset in symmetry order.
    pub fn elements(&self) -> Vec<MonomialMatrix> {
        let h0 = self.model.deck_group_elements();
        self.coset_reps.iter().flat_map(|r| h0.iter().map(move |h| r.compose(h))).collect()
    }

    fn generators(&self) -> Vec<MonomialMatrix> {
        let gens = self.symmetry_generators();
        let mut out: Vec<MonomialMatrix> = gens.iter().map(|p| self.coset_reps[self.by_perm[p]].clone()).collect();
        out.extend(self.model.deck_generators());
        out
    }

    fn verify_closure(&self) -> bool {
        let gens = self.generators();
        let reps_ok = self.coset_reps.par_iter().all(|r| preserves_ideal(r, &self.model).unwrap_or(false));
        reps_ok && gens.iter().all(|a| self.contains(&a.inverse()) && gens.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// `b_j / b_0` for each `j`, where `L_j ∘ T = b_j L_{τ(j)}` and `τ = ρ^{-1}`.
fn lift_ratios(mdl: &FermatModel, sym: &ArrangementSymmetry) -> (Vec<usize>, Vec<u64>) {
    let f = mdl.field();
    let forms = mdl.linear_forms_on_base();
    let m = sym.witness.map.matrix();
    let mut tau = vec![0; sym.perm.len()];
    for (i, &j) in sym.perm.iter().enumerate() {
        tau[j] = i;
    }
    let b: Vec<u64> = forms
        .iter()
        .enumerate()
        .map(|(j, l)| {
            let lm = m.vec_mul(l, f);
            proportionality(&lm, &forms[tau[j]], f).expect("a symmetry permutes the branch hyperplanes")
        })
        .collect();
    let b0 = f.inv(b[0]).expect("nonzero");
    (tau, b.iter().map(|&x| f.mul(x, b0)).collect())
}

/// Computes `Lin(X)` by lifting arrangement symmetries, extending the field
/// when a needed `k`-th root is missing.
pub fn compute_lin(mdl: &FermatModel) -> Result<LinGroup> {
    let symmetries = arrangement_symmetries(mdl)?;
    let lifts: Vec<(Vec<usize>, Vec<u64>)> = symmetries.par_iter().map(|s| lift_ratios(mdl, s)).collect();
    let base = mdl.field();
    let k = mdl.k();

    // k-th roots of elements of GF(q) always exist in GF(q^k) once μ_k ⊂ GF(q)
    let mut found = None;
    for e in 1..=k as u32 {
        let field = if e == 1 {
            base.clone()
        } else {
            match make_field(base.characteristic(), base.degree() * e) {
                Ok(f) => f,
                Err(Error::FieldTooLarge { .. }) => break,
                Err(err) => return Err(err),
            }
        };
        let emb = base.embedding_into(&field)?;
        if lifts.iter().all(|(_, r)| r.iter().all(|&x| field.is_kth_power(emb.map(x), k))) {
            found = Some((e, field, emb));
            break;
        }
    }
    let Some((extension, field, emb)) = found else {
        let (tau, _) =
            lifts.iter().find(|(_, r)| r.iter().any(|&x| !base.is_kth_power(x, k))).expect("some ratio lacks a root");
        return Err(Error::LiftObstruction(
            tau.clone(),
            format!("a required {k}-th root lies outside every supported extension of GF({})", base.order()),
        ));
    };

    let model = mdl.base_change(&field)?;
    let symmetries: Vec<ArrangementSymmetry> = if extension == 1 {
        symmetries
    } else {
        symmetries
            .into_iter()
            .map(|s| {
                let matrix = s.witness.map.matrix().map_entries(|x| emb.map(x));
                let map = ProjectiveMap::new(&field, matrix)?;
                Ok(ArrangementSymmetry { perm: s.perm.clone(), witness: Equivalence { map, perm: s.perm } })
            })
            .collect::<Result<_>>()?
    };
    let coset_reps = lifts
        .iter()
        .map(|(tau, ratios)| {
            let scalars = ratios.iter().map(|&x| field.kth_roots(emb.map(x), k)[0]).collect();
            MonomialMatrix::new(&field, tau.clone(), scalars)
        })
        .collect::<Result<Vec<_>>>()?;
    let by_perm = symmetries.iter().enumerate().map(|(i, s)| (s.perm.clone(), i)).collect();
    let mut lin = LinGroup {
        model,
        base_field: base.clone(),
        extension,
        symmetries,
        coset_reps,
        by_perm,
        closure_verified: false,
    };
    lin.closure_verified = lin.verify_closure();
    Ok(lin)
}

fn strip_p(mut x: u64, p: u64) -> u64 {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::ff::gcd(a, b) * b
}

/// Projective dimensions of the eigenspaces of `g` over the algebraic
/// closure, largest first.
///
/// On a cycle of `τ` of length `ℓ` with scalar product `c`, the eigenvalue
/// `μ` has a one-dimensional eigenspace iff `μ^ℓ = c`. Writing `μ = ζ^X` for
/// a generator `ζ` of the roots of unity of order `M = lcm(ℓ') (q-1)`, with
/// `ℓ'` the prime-to-`p` part of `ℓ`, this is a linear congruence in `X`.
pub fn eigenspace_profile(g: &MonomialMatrix) -> Vec<usize> {
    let f = g.field();
    let p = f.characteristic();
    let big_n = f.order() - 1;
    let cycles = g.cycles();
    let info: Vec<(u64, u64, u64)> = cycles
        .iter()
        .map(|cyc| {
            let len = cyc.len() as u64;
            let c = cyc.iter().fold(1, |acc, &j| f.mul(acc, g.scalars()[j]));
            (len, strip_p(len, p), f.log(c).expect("nonzero"))
        })
        .collect();
    let l_all = info.iter().fold(1, |acc, &(_, lp, _)| lcm(acc, lp));
    let big_m = l_all * big_n;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &(len, lp, log) in &info {
        let m2 = big_m / lp;
        let rhs = ((l_all as u128 * log as u128 / lp as u128) % m2 as u128) as u64;
        let unit = (len / lp) % m2;
        let x0 = if m2 == 1 {
            0
        } else {
            let inv = inv_mod(unit, m2).expect("p-power is invertible");
            (rhs as u128 * inv as u128 % m2 as u128) as u64
        };
        for t in 0..lp {
            *counts.entry(x0 + t * m2).or_insert(0) += 1;
        }
    }
    let mut dims: Vec<usize> = counts.into_values().map(|c| c - 1).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims
}

/// Fixes a hyperplane of `P^n` pointwise.
pub fn is_quasi_reflection(g: &MonomialMatrix) -> bool {
    let n = g.size() - 1;
    !g.is_identity() && eigenspace_profile(g).first() == Some(&(n - 1))
}

/// Fixed hyperplane of a quasi-reflection, for `n >= 2`.
fn fixed_hyperplane(g: &MonomialMatrix) -> Option<ProjectivePoint> {
    let f = g.field();
    let size = g.size();
    if size < 3 {
        return None;
    }
    // With n >= 2 the big eigenspace includes a fixed coordinate, so μ is rational.
    let fixed: Vec<usize> = (0..size).filter(|&j| g.perm()[j] == j).collect();
    fixed.iter().find_map(|&j| {
        let mu = g.scalars()[j];
        let mut a = g.to_matrix();
        for i in 0..size {
            a[(i, i)] = f.sub(a[(i, i)], mu);
        }
        if a.rank(f) != 1 {
            return None;
        }
        let row = (0..size).map(|i| a.row(i).to_vec()).find(|r| r.iter().any(|&x| x != 0))?;
        ProjectivePoint::new(f, row).ok()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiReflection {
    pub element: MonomialMatrix,
    pub order: u64,
    pub in_deck_group: bool,
    /// Covector of the fixed hyperplane.
    pub hyperplane: Option<ProjectivePoint>,
}

/// Every element of `Lin` fixing a hyperplane pointwise.
pub fn quasi_reflection_census(lin: &LinGroup) -> Vec<QuasiReflection> {
    let model = lin.model();
    lin.elements()
        .into_par_iter()
        .filter(is_quasi_reflection)
        .map(|g| QuasiReflection {
            order: g.order(),
            in_deck_group: model.in_deck_group(&g),
            hyperplane: fixed_hyperplane(&g),
            element: g,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UniquenessVerdict {
    UniqueVerified,
    HypothesisFailed,
    ExceptionalType,
    /// The theorem applies but the within-`Lin` evidence does not support it.
    CheckFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupOracleResult {
    pub count: usize,
    pub candidates: usize,
    pub restriction: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub verdict: UniquenessVerdict,
    pub type_verdict: TypeVerdict,
    pub lin_order: u64,
    pub extension_degree: u32,
    pub h0_normal: bool,
    pub closure_verified: bool,
    pub quasi_reflections: Vec<QuasiReflection>,
    /// Quasi-reflections outside `H_0`; these are never of order `k` when `k >= 3`.
    pub quasi_reflections_outside_h0: usize,
    pub order_k_quasi_reflections_outside_h0: usize,
    /// Largest fixed-subspace dimension over non-diagonal elements.
    pub max_non_diagonal_fixed_dim: Option<usize>,
    pub oracle: Option<SubgroupOracleResult>,
    pub scope: &'static str,
}

/// `g` scales a single coordinate, modulo the global scalar.
fn scaled_coordinate(g: &MonomialMatrix) -> Option<usize> {
    if !g.is_diagonal() || g.is_identity() {
        return None;
    }
    let s = g.scalars();
    (0..s.len()).find(|&j| {
        let others: BTreeSet<u64> = (0..s.len()).filter(|&i| i != j).map(|i| s[i]).collect();
        others.len() == 1 && !others.contains(&s[j])
    })
}

/// Conjugating each `φ_j` by each coset representative yields a power of a single `φ_i`.
fn h0_is_normal(lin: &LinGroup) -> bool {
    let deck = lin.model().deck_generators();
    lin.coset_representatives().iter().all(|r| {
        let ri = r.inverse();
        let rho = r.hyperplane_permutation();
        deck.iter().enumerate().all(|(j, phi)| {
            let conj = r.compose(phi).compose(&ri);
            lin.model().in_deck_group(&conj) && scaled_coordinate(&conj) == Some(rho[j])
        })
    })
}

pub fn verify_unique_fermat_group(mdl: &FermatModel) -> Result<UniquenessReport> {
    verify_unique_with_budget(mdl, DEFAULT_ORACLE_BUDGET)
}

/// Same as [`verify_unique_fermat_group`], running the subgroup oracle when `|Lin| <= oracle_budget`.
pub fn verify_unique_with_budget(mdl: &FermatModel, oracle_budget: u64) -> Result<UniquenessReport> {
    let type_verdict = classify_type(mdl.d(), mdl.k(), mdl.n(), mdl.field().characteristic())?;
    let lin = compute_lin(mdl)?;
    let h0_normal = h0_is_normal(&lin);
    let census = quasi_reflection_census(&lin);
    let outside = census.iter().filter(|q| !q.in_deck_group).count();
    let outside_k = census.iter().filter(|q| !q.in_deck_group && q.order == mdl.k()).count();
    let max_non_diagonal_fixed_dim =
        lin.elements().par_iter().filter(|g| !g.is_diagonal()).map(|g| eigenspace_profile(g)[0]).max();
    let oracle = match subgroup_oracle(&lin, oracle_budget) {
        Ok(r) => Some(r),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let evidence_ok =
        h0_normal && lin.closure_verified() && outside_k == 0 && oracle.as_ref().is_none_or(|o| o.count == 1);
    let verdict = if type_verdict.exceptional_type {
        UniquenessVerdict::ExceptionalType
    } else if !type_verdict.theorem_applies {
        UniquenessVerdict::HypothesisFailed
    } else if evidence_ok {
        UniquenessVerdict::UniqueVerified
    } else {
        UniquenessVerdict::CheckFailed
    };
    Ok(UniquenessReport {
        verdict,
        type_verdict,
        lin_order: lin.order() as u64,
        extension_degree: lin.extension_degree(),
        h0_normal,
        closure_verified: lin.closure_verified(),
        quasi_reflections_outside_h0: outside,
        order_k_quasi_reflections_outside_h0: outside_k,
        quasi_reflections: census,
        max_non_diagonal_fixed_dim,
        oracle,
        scope: "monomial part of Lin over the working finite field",
    })
}

fn element_key(g: &MonomialMatrix) -> (Vec<usize>, Vec<u64>) {
    (g.perm().to_vec(), g.scalars().to_vec())
}

/// Counts subgroups `H ≅ Z_k^n` of `Lin` generated by `n+1` commuting
/// quasi-reflections of order `k` with distinct fixed hyperplanes and trivial product.
pub fn subgroup_oracle(lin: &LinGroup, budget: u64) -> Result<SubgroupOracleResult> {
    if lin.order() > budget as u128 {
        return Err(Error::BudgetExceeded { needed: lin.order(), cap: budget as u128 });
    }
    let k = lin.model().k();
    let n = lin.model().n();
    let mut classes: BTreeMap<Vec<u64>, Vec<MonomialMatrix>> = BTreeMap::new();
    for q in quasi_reflection_census(lin) {
        if q.order == k {
            let key = q.hyperplane.map(|h| h.coords().to_vec()).unwrap_or_default();
            classes.entry(key).or_default().push(q.element);
        }
    }
    let candidates = classes.values().map(Vec::len).sum();
    let classes: Vec<Vec<MonomialMatrix>> = classes.into_values().collect();
    let class_of: BTreeMap<(Vec<usize>, Vec<u64>), usize> =
        classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |g| (element_key(g), i))).collect();
    let identity = MonomialMatrix::identity(lin.field(), n + 1);
    let mut found: BTreeSet<Vec<(Vec<usize>, Vec<u64>)>> = BTreeSet::new();

    struct Search<'a> {
        classes: &'a [Vec<MonomialMatrix>],
        class_of: &'a BTreeMap<(Vec<usize>, Vec<u64>), usize>,
        n: usize,
        k: u64,
        identity: &'a MonomialMatrix,
        found: &'a mut BTreeSet<Vec<(Vec<usize>, Vec<u64>)>>,
    }

    impl Search<'_> {
        fn go(&mut self, start: usize, picked: &mut Vec<(usize, MonomialMatrix)>) {
            if picked.len() == self.n {
                let prod = picked.iter().fold(self.identity.clone(), |acc, (_, g)| acc.compose(g));
                let last = prod.inverse();
                let Some(&cls) = self.class_of.get(&element_key(&last)) else {
                    return;
                };
                if picked.iter().any(|&(c, _)| c == cls)
                    || !picked.iter().all(|(_, g)| g.compose(&last) == last.compose(g))
                {
                    return;
                }
                let mut elements: BTreeSet<(Vec<usize>, Vec<u64>)> = BTreeSet::from([element_key(self.identity)]);
                let mut layer = vec![self.identity.clone()];
                for (_, g) in picked.iter() {
                    let mut next = Vec::with_capacity(layer.len() * self.k as usize);
                    for h in &layer {
                        let mut x = h.clone();
                        for _ in 0..self.k {
                            next.push(x.clone());
                            x = x.compose(g);
                        }
                    }
                    layer = next;
                }
                elements.extend(layer.iter().map(element_key));
                if elements.len() as u128 == (self.k as u128).pow(self.n as u32) {
                    self.found.insert(elements.into_iter().collect());
                }
                return;
            }
            for c in start..self.classes.len() {
                for g in &self.classes[c] {
                    if picked.iter().all(|(_, h)| h.compose(g) == g.compose(h)) {
                        picked.push((c, g.clone()));
                        self.go(c + 1, picked);
                        picked.pop();
                    }
                }
            }
        }
    }

    Search { classes: &classes, class_of: &class_of, n, k, identity: &identity, found: &mut found }
        .go(0, &mut Vec::new());
    Ok(SubgroupOracleResult {
        count: found.len(),
        candidates,
        restriction: "subgroups generated by quasi-reflections of order k with distinct fixed hyperplanes",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::LambdaParams;
    use crate::ff::make_field;
    use crate::variety::build_model;

    fn quartic(p: u64, m: u32) -> FermatModel {
        let f = make_field(p, m).unwrap();
        build_model(2, 4, 3, &LambdaParams::empty(&f, 2), &f).unwrap()
    }

    #[test]
    fn preserves_ideal_examples() {
        let q = quartic(5, 1);
        let f = q.field().clone();
        for phi in q.deck_generators() {
            assert!(preserves_ideal(&phi, &q).unwrap());
        }
        let swap = MonomialMatrix::new(&f, vec![1, 0, 2, 3], vec![1; 4]).unwrap();
        assert!(preserves_ideal(&swap, &q).unwrap());

        let f7 = make_field(7, 1).unwrap();
        let m = build_model(2, 3, 4, &LambdaParams::new(&f7, 2, 4, vec![vec![2, 3]]).unwrap(), &f7).unwrap();
        let swap = MonomialMatrix::new(&f7, vec![1, 0, 2, 3, 4], vec![1; 5]).unwrap();
        assert!(!preserves_ideal(&swap, &m).unwrap());
        assert!(!preserves_ideal_matrix(&swap.to_matrix(), &m).unwrap());
        assert_eq!(preserves_ideal(&swap, &q).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn eigenspace_examples() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(eigenspace_profile(&MonomialMatrix::identity(&f, 4)), vec![3]);
        // ω_4 = 2 in GF(5)
        let phi = MonomialMatrix::diagonal(&f, vec![2, 1, 1, 1]).unwrap();
        assert_eq!(eigenspace_profile(&phi), vec![2, 0]);
        // a transposition is a reflection: eigenvalue 1 on {x_1 = x_2}, -1 on e_1 - e_2
        let swap = MonomialMatrix::new(&f, vec![1, 0, 2, 3], vec![1; 4]).unwrap();
        assert_eq!(eigenspace_profile(&swap), vec![2, 0]);
        let cycle = MonomialMatrix::new(&f, vec![1, 2, 3, 0], vec![1; 4]).unwrap();
        assert_eq!(eigenspace_profile(&cycle), vec![0, 0, 0, 0]);
    }

    #[test]
    fn quartic_group_has_order_1536() {
        let lin = compute_lin(&quartic(5, 1)).unwrap();
        assert_eq!(lin.symmetries().len(), 24);
        assert_eq!(lin.order(), 1536);
        assert_eq!(lin.extension_degree(), 1);
        assert!(lin.closure_verified());
        let elements = lin.elements();
        let distinct: BTreeSet<_> = elements.iter().map(element_key).collect();
        assert_eq!(distinct.len(), 1536);
    }

    #[test]
    fn quartic_census_includes_transposition_reflections() {
        let lin = compute_lin(&quartic(5, 1)).unwrap();
        let census = quasi_reflection_census(&lin);
        let diagonal = census.iter().filter(|q| q.in_deck_group).count();
        assert_eq!(diagonal, 12);
        assert!(census.iter().filter(|q| !q.in_deck_group).all(|q| q.order == 2));
        assert_eq!(census.len(), 36);
        assert_eq!(subgroup_oracle(&lin, 5000).unwrap().count, 1);
        assert!(matches!(subgroup_oracle(&lin, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn quartic_over_gf3_squared_is_exceptional() {
        let report = verify_unique_fermat_group(&quartic(3, 2)).unwrap();
        assert_eq!(report.verdict, UniquenessVerdict::ExceptionalType);
        assert!(report.h0_normal);
        assert_eq!(report.oracle.as_ref().unwrap().count, 1);
    }

    #[test]
    fn permutation_generators_generate() {
        let all: Vec<Vec<usize>> = itertools::Itertools::permutations(0..4usize, 4).collect();
        let gens = permutation_generators(&all);
        assert!(gens.len() <= 3);
    }
}
