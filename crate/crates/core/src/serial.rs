//! JSON forms of the main objects.
//!
//! A field element is written as its coefficient list `[c_0, ..., c_{m-1}]`
//! in the power basis of the modulus root, constant term first. Fields are
//! `{p, m, modulus}` with the modulus coefficients also constant term first.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arrangement::{Arrangement, LambdaParams, ProjectiveMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldDesc};
use crate::monomial::MonomialMatrix;
use crate::variety::{build_model, FermatModel};

fn encode_all(f: &Field, v: &[u64]) -> Vec<Vec<u64>> {
    v.iter().map(|&a| f.to_coeffs(a)).collect()
}

fn decode_all(f: &Field, v: &[Vec<u64>]) -> Result<Vec<u64>> {
    v.iter().map(|c| f.from_coeffs(c)).collect()
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        encode_all(self.field(), self.coords()).serialize(s)
    }
}

impl Serialize for ProjectiveMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = self.field();
        let rows: Vec<Vec<Vec<u64>>> = self.matrix().to_rows().iter().map(|r| encode_all(f, r)).collect();
        rows.serialize(s)
    }
}

impl Serialize for MonomialMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MonomialMatrix", 2)?;
        st.serialize_field("perm", self.perm())?;
        st.serialize_field("scalars", &encode_all(self.field(), self.scalars()))?;
        st.end()
    }
}

impl Serialize for LambdaParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Vec<u64>>> = self.rows().iter().map(|r| encode_all(self.field(), r)).collect();
        rows.serialize(s)
    }
}

/// On-disk model: `{p, m, modulus, d, k, n, lambda}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
    pub d: usize,
    pub k: u64,
    pub n: usize,
    pub lambda: Vec<Vec<Vec<u64>>>,
}

impl ModelFile {
    pub fn from_model(mdl: &FermatModel) -> Self {
        let f = mdl.field();
        let FieldDesc { p, m, modulus } = f.describe();
        ModelFile {
            p,
            m,
            modulus,
            d: mdl.d(),
            k: mdl.k(),
            n: mdl.n(),
            lambda: mdl.lambda().rows().iter().map(|r| encode_all(f, r)).collect(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        FieldDesc { p: self.p, m: self.m, modulus: self.modulus.clone() }.to_field()
    }

    pub fn lambda(&self) -> Result<LambdaParams> {
        let f = self.field()?;
        let rows = self.lambda.iter().map(|r| decode_all(&f, r)).collect::<Result<_>>()?;
        LambdaParams::new(&f, self.d, self.n, rows)
    }

    pub fn to_model(&self) -> Result<FermatModel> {
        let lambda = self.lambda()?;
        build_model(self.d, self.k, self.n, &lambda, lambda.field())
    }
}

/// On-disk arrangement: `{p, m, modulus, d, hyperplanes}` with one covector per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
    pub d: usize,
    pub hyperplanes: Vec<Vec<Vec<u64>>>,
}

impl ArrangementFile {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        let f = a.field();
        let FieldDesc { p, m, modulus } = f.describe();
        ArrangementFile {
            p,
            m,
            modulus,
            d: a.dim(),
            hyperplanes: a.hyperplanes().iter().map(|h| encode_all(f, h.coords())).collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let f = FieldDesc { p: self.p, m: self.m, modulus: self.modulus.clone() }.to_field()?;
        let covectors = self.hyperplanes.iter().map(|h| decode_all(&f, h)).collect::<Result<_>>()?;
        Arrangement::from_covectors(&f, self.d, covectors)
    }
}

/// Parses `"c0:c1:..."` (constant term first) or a plain residue.
pub fn parse_element(f: &Field, s: &str) -> Result<u64> {
    let coeffs = s
        .trim()
        .split(':')
        .map(|c| {
            let v: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad field element {s:?}")))?;
            Ok(v.rem_euclid(f.characteristic() as i64) as u64)
        })
        .collect::<Result<Vec<u64>>>()?;
    f.from_coeffs(&coeffs)
}

/// Parses rows separated by `;` with entries separated by `,`.
pub fn parse_rows(f: &Field, s: &str) -> Result<Vec<Vec<u64>>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|row| row.split(',').map(|x| parse_element(f, x)).collect()).collect()
}
