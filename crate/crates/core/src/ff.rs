//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! A [`Field`] is a cheap, clonable handle to an immutable [`FieldSpec`].
//! Elements are encoded as integers `v = c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `t^i` in the power basis of the modulus
//! root `t`. Containers (matrices, points, arrangements) store raw encodings
//! next to a single field handle; [`FieldElement`] pairs one encoding with its
//! field for standalone use.
//!
//! Fields up to `2^20` elements carry exp/log tables. Larger fields (up to
//! `2^32`) fall back to polynomial arithmetic and baby-step giant-step logs.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

const TABLE_LIMIT: u64 = 1 << 20;
const MAX_ORDER: u64 = 1 << 32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `n`, when it exists.
pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    Some(poly::inv_mod_p(a % n, n))
}

#[derive(Debug)]
struct Tables {
    /// `exp[i] = g^i`, stored twice over so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    generator: u64,
    unit_order_primes: Vec<u64>,
    tables: Option<Tables>,
}

/// Handle to a finite field.
///
/// Two handles compare equal when characteristic, degree and modulus agree.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) = GF({})[t]/({})", self.0.p, self.0.m, self.0.p, render_poly(&self.0.modulus))
        }
    }
}

fn render_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let term = match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Builds GF(p^m) with the lexicographically smallest monic irreducible
/// modulus (leading coefficients compared first, constant term last).
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 1 {
        return Err(Error::BadDegree(m));
    }
    let q = checked_order(p, m)?;
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        // candidate x encodes (c_0..c_{m-1}) with c_0 least significant, so
        // increasing x walks the lexicographic order with the constant last.
        (0..q)
            .map(|x| {
                let mut f = digits(x, p, m as usize);
                f.push(1);
                f
            })
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists")
    };
    Ok(Field::build(p, m, q, modulus))
}

/// The smallest field GF(p^m) whose unit group contains the `k`-th roots of unity.
pub fn field_with_kth_roots(p: u64, k: u64) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if gcd(k, p) != 1 {
        return Err(Error::NotCoprime { k, p });
    }
    make_field(p, multiplicative_order(p, k)? as u32)
}

/// Smallest `m >= 1` with `base^m = 1 (mod n)`.
pub(crate) fn multiplicative_order(base: u64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    if gcd(base, n) != 1 {
        return Err(Error::NotCoprime { k: n, p: base });
    }
    let mut x = base % n;
    let mut m = 1;
    while x != 1 {
        x = ((x as u128 * base as u128) % n as u128) as u64;
        m += 1;
    }
    Ok(m)
}

fn checked_order(p: u64, m: u32) -> Result<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge { p, m })?;
    }
    Ok(q)
}

fn digits(mut x: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    out
}

impl Field {
    fn build(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Field {
        let mut spec =
            FieldSpec { p, m, q, modulus, generator: 1, unit_order_primes: poly::prime_factors(q - 1), tables: None };
        spec.generator = (1..q)
            .find(|&g| g != 0 && spec.unit_order_primes.iter().all(|&r| spec.pow_slow(g, (q - 1) / r) != 1))
            .expect("the unit group is cyclic");
        if q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u64;
            for i in 0..n {
                exp[i] = x as u32;
                exp[i + n] = x as u32;
                log[x as usize] = i as u32;
                x = spec.mul_slow(x, spec.generator);
            }
            spec.tables = Some(Tables { exp, log });
        }
        Field(Arc::new(spec))
    }

    /// Field from an explicit modulus (coefficients low degree first, monic).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = modulus.len().saturating_sub(1) as u32;
        if m < 1 {
            return Err(Error::BadDegree(m));
        }
        if m == 1 {
            if modulus != [0, 1] {
                return Err(Error::BadModulus(1));
            }
        } else if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) || !poly::is_irreducible(modulus, p) {
            return Err(Error::BadModulus(m));
        }
        let q = checked_order(p, m)?;
        Ok(Field::build(p, m, q, modulus.to_vec()))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Smallest element (by encoding) generating the unit group.
    pub fn generator(&self) -> u64 {
        self.0.generator
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.0.q
    }

    pub fn is_valid(&self, a: u64) -> bool {
        a < self.0.q
    }

    pub fn from_int(&self, x: i64) -> u64 {
        (x.rem_euclid(self.0.p as i64)) as u64
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree {} field",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::BadElement(c));
            }
            v = v * self.0.p + c;
        }
        Ok(v)
    }

    pub fn to_coeffs(&self, a: u64) -> Vec<u64> {
        digits(a, self.0.p, self.0.m as usize)
    }

    pub fn render(&self, a: u64) -> String {
        render_poly(&self.to_coeffs(a))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.m {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.m {
            let c = a % p;
            out += ((p - c) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.0.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let n = (self.0.q - 1) as u32;
                t.exp[((n - t.log[a as usize]) % n) as usize] as u64
            }
            None => self.0.pow_slow(a, self.0.q - 2),
        })
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => {
                let n = self.0.q - 1;
                let l = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
                t.exp[l] as u64
            }
            None => self.0.pow_slow(a, e),
        }
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        match &self.0.tables {
            Some(t) => Some(t.log[a as usize] as u64),
            None => Some(self.log_bsgs(a)),
        }
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> u64 {
        let n = self.0.q - 1;
        match &self.0.tables {
            Some(t) => t.exp[(e % n) as usize] as u64,
            None => self.0.pow_slow(self.0.generator, e % n),
        }
    }

    fn log_bsgs(&self, a: u64) -> u64 {
        let n = self.0.q - 1;
        let s = (n as f64).sqrt().ceil() as u64 + 1;
        let g = self.0.generator;
        let mut baby = HashMap::with_capacity(s as usize);
        let mut x = 1u64;
        for j in 0..s {
            baby.entry(x).or_insert(j);
            x = self.mul(x, g);
        }
        let factor = self.inv(self.pow(g, s)).expect("generator is a unit");
        let mut gamma = a;
        for i in 0..=s {
            if let Some(&j) = baby.get(&gamma) {
                return (i * s + j) % n;
            }
            gamma = self.mul(gamma, factor);
        }
        unreachable!("every unit is a power of the generator")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> Option<u64> {
        let l = self.log(a)?;
        let n = self.0.q - 1;
        Some(n / gcd(l, n))
    }

    /// `a^(p^s)`.
    pub fn frobenius(&self, a: u64, s: u64) -> u64 {
        let mut x = a;
        for _ in 0..(s % self.0.m as u64) {
            x = self.pow(x, self.0.p);
        }
        x
    }

    /// All `x` with `x^k = a`, sorted by encoding.
    pub fn kth_roots(&self, a: u64, k: u64) -> Vec<u64> {
        if k == 0 {
            return if a == 1 { self.elements().collect() } else { Vec::new() };
        }
        if a == 0 {
            return vec![0];
        }
        let n = self.0.q - 1;
        let l = self.log(a).expect("nonzero");
        let g = gcd(k, n);
        if !l.is_multiple_of(g) {
            return Vec::new();
        }
        let modulus = n / g;
        let y0 = if modulus == 1 {
            0
        } else {
            let kinv = inv_mod((k / g) % modulus, modulus).expect("coprime after dividing by gcd");
            ((l / g) as u128 * kinv as u128 % modulus as u128) as u64
        };
        let mut roots: Vec<u64> = (0..g).map(|t| self.exp(y0 + t * modulus)).collect();
        roots.sort_unstable();
        roots
    }

    pub fn is_kth_power(&self, a: u64, k: u64) -> bool {
        a == 0 || !self.kth_roots(a, k).is_empty()
    }

    /// Primitive `k`-th root of unity `g^((q-1)/k)`.
    pub fn primitive_root_of_unity(&self, k: u64) -> Result<u64> {
        let n = self.0.q - 1;
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NoSuchRoot { k, q: self.0.q });
        }
        Ok(self.exp(n / k))
    }

    pub fn contains_roots_of_unity(&self, k: u64) -> bool {
        k >= 1 && (self.0.q - 1).is_multiple_of(k)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        FieldElement::from_value(self, value)
    }

    /// Embedding of `self` into a field of the same characteristic whose
    /// degree is a multiple of ours.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.0.p != target.0.p || !target.0.m.is_multiple_of(self.0.m) {
            return Err(Error::FieldMismatch);
        }
        if self.0.m == 1 {
            return Ok(Embedding { source: self.clone(), target: target.clone(), powers: vec![1] });
        }
        let root = target
            .elements()
            .find(|&x| self.0.modulus.iter().rev().fold(0u64, |acc, &c| target.add(target.mul(acc, x), c)) == 0)
            .expect("an irreducible polynomial splits in every extension of its degree");
        let mut powers = Vec::with_capacity(self.0.m as usize);
        let mut x = 1u64;
        for _ in 0..self.0.m {
            powers.push(x);
            x = target.mul(x, root);
        }
        Ok(Embedding { source: self.clone(), target: target.clone(), powers })
    }

    /// Degree over GF(p) of the subfield generated by `a`.
    pub fn element_degree(&self, a: u64) -> u32 {
        (1..=self.0.m).find(|&s| self.0.m.is_multiple_of(s) && self.frobenius(a, s as u64) == a).unwrap_or(self.0.m)
    }

    pub fn describe(&self) -> FieldDesc {
        FieldDesc { p: self.0.p, m: self.0.m, modulus: self.0.modulus.clone() }
    }
}

impl FieldSpec {
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        let fa = digits(a, self.p, self.m as usize);
        let fb = digits(b, self.p, self.m as usize);
        let r = poly::mulmod(&fa, &fb, &self.modulus, self.p);
        r.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        result
    }
}

/// Field homomorphism `GF(p^m) -> GF(p^m')` fixed by the image of `t`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<u64>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: u64) -> u64 {
        let coeffs = self.source.to_coeffs(a);
        coeffs.iter().zip(&self.powers).fold(0u64, |acc, (&c, &w)| self.target.add(acc, self.target.mul(c, w)))
    }
}

/// A field element that remembers its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldElement {
    pub fn from_value(field: &Field, value: u64) -> Result<Self> {
        if !field.is_valid(value) {
            return Err(Error::BadElement(value));
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Self> {
        Ok(FieldElement { field: field.clone(), value: field.from_coeffs(coeffs)? })
    }

    pub fn from_int(field: &Field, x: i64) -> Self {
        FieldElement { field: field.clone(), value: field.from_int(x) }
    }

    pub fn zero(field: &Field) -> Self {
        FieldElement { field: field.clone(), value: 0 }
    }

    pub fn one(field: &Field) -> Self {
        FieldElement { field: field.clone(), value: 1 }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.to_coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u64) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, s: u64) -> Self {
        self.with(self.field.frobenius(self.value, s))
    }
}

/// Binary dispatch over the basic operations; `b` is only consulted by `Add`
/// and `Mul` but must still share the owner field.
pub fn ff_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.same_field(b)?;
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow(e) => Ok(a.pow(e)),
    }
}

pub fn primitive_kth_root(field: &Field, k: u64) -> Result<FieldElement> {
    FieldElement::from_value(field, field.primitive_root_of_unity(k)?)
}

pub fn kth_roots_of(a: &FieldElement, k: u64) -> Vec<FieldElement> {
    a.field.kth_roots(a.value, k).into_iter().map(|v| a.with(v)).collect()
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.render(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(self.value))
    }
}

/// Serialized form of a field: `{p, m, modulus: [c_0, ..., c_m]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl FieldDesc {
    pub fn to_field(&self) -> Result<Field> {
        if self.modulus.len() != self.m as usize + 1 {
            return Err(Error::BadModulus(self.m));
        }
        Field::with_modulus(self.p, &self.modulus)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.describe().serialize(s)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}
