//! Projective monomial transformations of P^n.

use std::fmt;

use itertools::Itertools;

use crate::arrangement::ProjectivePoint;
use crate::error::{Error, Result};
use crate::ff::Field;
use crate::linalg::Matrix;

/// `x_j ↦ a_j x_{τ(j)}` modulo a global scalar.
///
/// Stored in canonical form with `a_0 = 1`, so structural equality is equality
/// of projective transformations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    field: Field,
    perm: Vec<usize>,
    scalars: Vec<u64>,
}

impl MonomialMatrix {
    pub fn new(field: &Field, perm: Vec<usize>, scalars: Vec<u64>) -> Result<Self> {
        let n = perm.len();
        if n == 0 || scalars.len() != n {
            return Err(Error::DimensionMismatch(format!("{} scalars for {} coordinates", scalars.len(), n)));
        }
        let mut seen = vec![false; n];
        for &t in &perm {
            if t >= n || seen[t] {
                return Err(Error::BadParameters(format!("{perm:?} is not a permutation")));
            }
            seen[t] = true;
        }
        if scalars.iter().any(|&a| a == 0 || !field.is_valid(a)) {
            return Err(Error::BadParameters("monomial scalars must be nonzero field elements".into()));
        }
        Ok(Self::canonical(field, perm, scalars))
    }

    fn canonical(field: &Field, perm: Vec<usize>, scalars: Vec<u64>) -> Self {
        let s = field.inv(scalars[0]).expect("nonzero scalar");
        let scalars = scalars.into_iter().map(|a| field.mul(a, s)).collect();
        MonomialMatrix { field: field.clone(), perm, scalars }
    }

    pub fn identity(field: &Field, size: usize) -> Self {
        MonomialMatrix { field: field.clone(), perm: (0..size).collect(), scalars: vec![1; size] }
    }

    pub fn diagonal(field: &Field, scalars: Vec<u64>) -> Result<Self> {
        Self::new(field, (0..scalars.len()).collect(), scalars)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[u64] {
        &self.scalars
    }

    /// Number of coordinates `n+1`.
    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.scalars.iter().all(|&a| a == 1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.size(), other.size());
        let f = &self.field;
        let perm = self.perm.iter().map(|&t| other.perm[t]).collect();
        let scalars = self.perm.iter().zip(&self.scalars).map(|(&t, &a)| f.mul(a, other.scalars[t])).collect();
        Self::canonical(f, perm, scalars)
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.size();
        let f = &self.field;
        let mut perm = vec![0; n];
        let mut scalars = vec![0; n];
        for (j, &t) in self.perm.iter().enumerate() {
            perm[t] = j;
            scalars[t] = f.inv(self.scalars[j]).expect("nonzero scalar");
        }
        Self::canonical(f, perm, scalars)
    }

    pub fn pow(&self, mut e: u64) -> MonomialMatrix {
        let mut result = Self::identity(&self.field, self.size());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Order in PGL_{n+1}.
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    pub fn apply(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if x.coords().len() != self.size() {
            return Err(Error::DimensionMismatch("point and transformation sizes differ".into()));
        }
        let c = x.coords();
        let coords = (0..self.size()).map(|j| self.field.mul(self.scalars[j], c[self.perm[j]])).collect();
        ProjectivePoint::new(&self.field, coords)
    }

    /// The matrix with entry `a_j` at `(j, τ(j))`.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.size(), self.size());
        for (j, (&t, &a)) in self.perm.iter().zip(&self.scalars).enumerate() {
            m[(j, t)] = a;
        }
        m
    }

    /// Cycles of `τ`, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Permutation `τ^{-1}` induced on the coordinate hyperplanes `{x_j = 0}`:
    /// the transformation carries `{x_j = 0}` onto `{x_{τ^{-1}(j)} = 0}`.
    pub fn hyperplane_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for (j, &t) in self.perm.iter().enumerate() {
            inv[t] = j;
        }
        inv
    }

    /// Move to a larger field through an embedding of the scalars.
    pub fn map_field(&self, target: &Field, g: impl Fn(u64) -> u64) -> MonomialMatrix {
        MonomialMatrix {
            field: target.clone(),
            perm: self.perm.clone(),
            scalars: self.scalars.iter().map(|&a| g(a)).collect(),
        }
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mono(perm={:?}, scalars=[{}])",
            self.perm,
            self.scalars.iter().map(|&a| self.field.render(a)).join(", ")
        )
    }
}
