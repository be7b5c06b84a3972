//! Exact arithmetic in the residue fields.
//!
//! Fields are presented as `F_p[x]/(modulus)` with a fixed primitive element,
//! and units are stored by discrete logarithm. Addition of units goes through a
//! Zech logarithm table, so character evaluation, the dominant operation in
//! the enumeration loops, is pure exponent arithmetic.
//!
//! The modulus and the generator are chosen by deterministic rules (see
//! [`FieldTable::make`]) so that every run of the library presents the same
//! field the same way.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field cardinality the table builder accepts.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("characteristic must be an odd prime, got {0}")]
    BadCharacteristic(u64),
    #[error("extension degree must be positive")]
    BadDegree,
    #[error("field size {0} exceeds the table bound {MAX_FIELD_SIZE}")]
    TooLarge(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("no quadratic subfield registered for this field")]
    NoSubfield,
    #[error("element does not lie in the registered subfield")]
    NotInSubfield,
    #[error("encoding {0} is out of range for this field")]
    BadEncoding(u64),
}

/// A finite field `F_{p^deg}` with full discrete-log, antilog and Zech tables.
///
/// When the field was built as a quadratic extension, the embedding of the
/// base field and its inverse are stored so that norm and trace can return
/// genuine base-field elements.
pub struct FieldTable {
    p: u64,
    deg: u32,
    q: u64,
    /// Monic defining polynomial, little-endian coefficients in `[0, p)`.
    modulus: Vec<u64>,
    /// Encoding of the fixed primitive element.
    generator: u64,
    /// `exp[i]` = encoding of `g^i`.
    exp: Vec<u32>,
    /// `log[enc]` = discrete log of the unit with that encoding; `NO_LOG` at 0.
    log: Vec<u32>,
    /// `zech[i]` = `log(1 + g^i)`; `NO_LOG` where `1 + g^i = 0`.
    zech: Vec<u32>,
    subfield: Option<Subfield>,
}

struct Subfield {
    table: Arc<FieldTable>,
    /// base-field encoding -> extension encoding
    embed: Vec<u32>,
    /// extension encoding -> base-field encoding, defined on the image
    pullback: HashMap<u32, u32>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("p", &self.p)
            .field("deg", &self.deg)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over `F_p`, used only while building tables.
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (k, &mk) in m.iter().enumerate() {
                    let idx = shift + k;
                    let sub = (lead * mk) % p;
                    r[idx] = (r[idx] + p * p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.len() <= dm {
                break;
            }
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            out[i] = (ai + p - bi) % p;
        }
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic before reducing
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = mod_inv(lead, p);
                for c in b.iter_mut() {
                    *c = (*c * inv) % p;
                }
            }
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // p is a small prime; Fermat.
        let mut e = p - 2;
        let mut base = a % p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }
}

/// Irreducibility over `F_p` via the derived-Frobenius criterion:
/// `f` of degree `d` is irreducible iff `x^(p^d) = x (mod f)` and
/// `gcd(x^(p^(d/r)) - x, f) = 1` for every prime `r | d`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = (f.len() - 1) as u64;
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    // xp_i holds x^(p^i) mod f
    let mut powers = vec![x.clone()];
    for _ in 0..d {
        xp = poly::powmod(&xp, p, f, p);
        powers.push(xp.clone());
    }
    if poly::sub(&powers[d as usize], &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(d) {
        let k = (d / r) as usize;
        let diff = poly::sub(&powers[k], &x, p);
        let g = poly::gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn decode(mut enc: u64, p: u64, deg: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(deg as usize);
    for _ in 0..deg {
        out.push(enc % p);
        enc /= p;
    }
    out
}

impl FieldTable {
    /// Builds `F_{p^f}` with the deterministic modulus and generator.
    ///
    /// The modulus is the first monic irreducible polynomial of degree `f` in
    /// lexicographic order on `(c_0, c_1, ...)`; the generator is the first
    /// primitive element in ascending order of the encoding `sum c_i p^i`.
    pub fn make(p: u64, f: u32) -> Result<Arc<FieldTable>, FfError> {
        if p == 2 || !is_prime(p) {
            return Err(FfError::BadCharacteristic(p));
        }
        if f == 0 {
            return Err(FfError::BadDegree);
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(FfError::TooLarge(u64::MAX))?;
        if q > MAX_FIELD_SIZE {
            return Err(FfError::TooLarge(q));
        }
        let modulus = Self::deterministic_modulus(p, f);
        Ok(Arc::new(Self::build(p, f, q, modulus, None)))
    }

    /// Builds the quadratic extension `F_{q^2}` of `base` (degree `2f` over the
    /// prime field) and registers the embedding of `base`.
    pub fn quadratic_extension(base: &Arc<FieldTable>) -> Result<Arc<FieldTable>, FfError> {
        let p = base.p;
        let f2 = base.deg * 2;
        let q2 = base
            .q
            .checked_mul(base.q)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(FfError::TooLarge(u64::MAX))?;
        let modulus = Self::deterministic_modulus(p, f2);
        let mut table = Self::build(p, f2, q2, modulus, None);
        table.register_subfield(base)?;
        Ok(Arc::new(table))
    }

    fn deterministic_modulus(p: u64, deg: u32) -> Vec<u64> {
        // Lex order on (c_0, c_1, ...): c_0 is the most significant digit.
        let count = p.pow(deg);
        for code in 0..count {
            let mut digits = decode(code, p, deg);
            digits.reverse(); // now digits[0] = c_0 varies slowest
            let mut f: Vec<u64> = digits;
            f.push(1); // monic
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    fn build(p: u64, deg: u32, q: u64, modulus: Vec<u64>, subfield: Option<Subfield>) -> Self {
        // generator: first element, in ascending encoding order, of full order
        let order = q - 1;
        let factors = prime_factors(order);
        let mut generator = 0u64;
        'scan: for enc in 1..q {
            let elem = decode(enc, p, deg);
            for &r in &factors {
                let pw = poly::powmod(&elem, order / r, &modulus, p);
                if pw == vec![1] {
                    continue 'scan;
                }
            }
            generator = enc;
            break;
        }
        assert!(generator != 0, "multiplicative group is cyclic");

        let gpoly = decode(generator, p, deg);
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![1u64];
        for (i, slot) in exp.iter_mut().enumerate() {
            let enc = encode(&cur, p);
            *slot = enc as u32;
            log[enc as usize] = i as u32;
            cur = poly::mulmod(&cur, &gpoly, &modulus, p);
        }
        debug_assert_eq!(cur, vec![1], "generator order must be q-1");

        // Zech logarithms: zech[i] = log(1 + g^i)
        let mut zech = vec![NO_LOG; (q - 1) as usize];
        for (i, slot) in zech.iter_mut().enumerate() {
            let mut digits = decode(exp[i] as u64, p, deg);
            digits[0] = (digits[0] + 1) % p;
            let enc = encode(&digits, p);
            if enc != 0 {
                *slot = log[enc as usize];
            }
        }

        FieldTable {
            p,
            deg,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
            subfield,
        }
    }

    fn register_subfield(&mut self, base: &Arc<FieldTable>) -> Result<(), FfError> {
        let p = self.p;
        // Image of the base field's residue class x: the first root of the
        // base modulus in this field, in ascending encoding order.
        let root = if base.deg == 1 {
            vec![] // F_p: x maps to 0 under modulus x
        } else {
            let mut found = None;
            for enc in 1..self.q {
                let cand = decode(enc, p, self.deg);
                let mut value = vec![0u64];
                let mut pw = vec![1u64];
                for &c in &base.modulus {
                    if c != 0 {
                        let term = poly::mulmod(&[c], &pw, &self.modulus, p);
                        value = poly::rem(
                            &{
                                let n = value.len().max(term.len());
                                let mut s = vec![0u64; n];
                                for i in 0..n {
                                    s[i] = (value.get(i).copied().unwrap_or(0)
                                        + term.get(i).copied().unwrap_or(0))
                                        % p;
                                }
                                s
                            },
                            &self.modulus,
                            p,
                        );
                    }
                    pw = poly::mulmod(&pw, &cand, &self.modulus, p);
                }
                if value.is_empty() {
                    found = Some(cand);
                    break;
                }
            }
            found.expect("the base modulus splits in the quadratic extension")
        };

        // embed (c_0, ..., c_{f-1}) -> sum c_i root^i
        let mut embed = vec![0u32; base.q as usize];
        let mut pullback = HashMap::new();
        for enc in 0..base.q {
            let digits = decode(enc, p, base.deg);
            let mut value: Vec<u64> = vec![];
            let mut pw = vec![1u64];
            for &c in &digits {
                if c != 0 {
                    let term = poly::mul(&[c], &pw, p);
                    let n = value.len().max(term.len());
                    let mut s = vec![0u64; n];
                    for i in 0..n {
                        s[i] = (value.get(i).copied().unwrap_or(0)
                            + term.get(i).copied().unwrap_or(0))
                            % p;
                    }
                    poly::trim(&mut s);
                    value = s;
                }
                pw = poly::mulmod(&pw, &root, &self.modulus, p);
            }
            let e = encode(&value, p) as u32;
            embed[enc as usize] = e;
            pullback.insert(e, enc as u32);
        }
        self.subfield = Some(Subfield {
            table: Arc::clone(base),
            embed,
            pullback,
        });
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Little-endian coefficients of the defining polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Encoding of the fixed primitive element.
    pub fn generator_encoding(&self) -> u64 {
        self.generator
    }

    pub fn subfield_table(&self) -> Option<&Arc<FieldTable>> {
        self.subfield.as_ref().map(|s| &s.table)
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem {
            field: Arc::clone(self),
            repr: Repr::Zero,
        }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_dlog(0)
    }

    pub fn generator(self: &Arc<Self>) -> FqElem {
        self.from_dlog(1)
    }

    /// Unit `g^e`.
    pub fn from_dlog(self: &Arc<Self>, e: u64) -> FqElem {
        FqElem {
            field: Arc::clone(self),
            repr: Repr::Unit((e % (self.q - 1)) as u32),
        }
    }

    /// Element from its polynomial encoding `sum c_i p^i`.
    pub fn from_encoding(self: &Arc<Self>, enc: u64) -> Result<FqElem, FfError> {
        if enc >= self.q {
            return Err(FfError::BadEncoding(enc));
        }
        if enc == 0 {
            return Ok(self.zero());
        }
        Ok(FqElem {
            field: Arc::clone(self),
            repr: Repr::Unit(self.log[enc as usize]),
        })
    }

    /// Integer `n` as a prime-field multiple of 1.
    pub fn from_int(self: &Arc<Self>, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_encoding(r).expect("prime residue is in range")
    }

    /// Iterates all elements in ascending encoding order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        let this = Arc::clone(self);
        (0..self.q).map(move |enc| this.from_encoding(enc).unwrap())
    }

    /// Iterates all units as `g^0, g^1, ...`.
    pub fn units(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        let this = Arc::clone(self);
        (0..self.q - 1).map(move |e| this.from_dlog(e))
    }

    /// The deterministically-first nonzero element of the quadratic extension
    /// with relative trace zero; the twist that makes the additive character
    /// of the unramified model trivial on the base field.
    pub fn solve_trace_zero(self: &Arc<Self>) -> Result<FqElem, FfError> {
        if self.subfield.is_none() {
            return Err(FfError::NoSubfield);
        }
        for enc in 1..self.q {
            let x = self.from_encoding(enc).unwrap();
            let (_, tr) = x.norm_and_trace()?;
            if tr.is_zero() {
                return Ok(x);
            }
        }
        unreachable!("relative trace is surjective with a nontrivial kernel")
    }

    fn same_field(&self, other: &FieldTable) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.modulus == other.modulus)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Zero,
    /// Discrete log of a unit, reduced mod q-1.
    Unit(u32),
}

/// An element of a [`FieldTable`], stored by discrete logarithm.
#[derive(Clone)]
pub struct FqElem {
    field: Arc<FieldTable>,
    repr: Repr,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Zero => write!(f, "0@F{}", self.field.q),
            Repr::Unit(e) => write!(f, "g^{}@F{}", e, self.field.q),
        }
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.repr == other.repr
    }
}

impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.q.hash(state);
        self.repr.hash(state);
    }
}

impl FqElem {
    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr == Repr::Zero
    }

    pub fn is_one(&self) -> bool {
        self.repr == Repr::Unit(0)
    }

    /// Discrete log of a unit; `None` for zero.
    pub fn dlog(&self) -> Option<u64> {
        match self.repr {
            Repr::Zero => None,
            Repr::Unit(e) => Some(e as u64),
        }
    }

    /// Polynomial encoding `sum c_i p^i`.
    pub fn encoding(&self) -> u64 {
        match self.repr {
            Repr::Zero => 0,
            Repr::Unit(e) => self.field.exp[e as usize] as u64,
        }
    }

    fn assert_same(&self, other: &FqElem) {
        assert!(
            self.field.same_field(&other.field),
            "mixed-field arithmetic: F_{} vs F_{}",
            self.field.q,
            other.field.q
        );
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.assert_same(other);
        let ord = self.field.q - 1;
        match (self.repr, other.repr) {
            (Repr::Zero, _) => other.clone(),
            (_, Repr::Zero) => self.clone(),
            (Repr::Unit(i), Repr::Unit(j)) => {
                // g^i + g^j = g^j (1 + g^(i-j))
                let d = ((i as u64 + ord - j as u64) % ord) as usize;
                match self.field.zech[d] {
                    NO_LOG => self.field.zero(),
                    z => FqElem {
                        field: Arc::clone(&self.field),
                        repr: Repr::Unit(((j as u64 + z as u64) % ord) as u32),
                    },
                }
            }
        }
    }

    pub fn neg(&self) -> FqElem {
        match self.repr {
            Repr::Zero => self.clone(),
            Repr::Unit(e) => {
                let ord = self.field.q - 1;
                // -1 = g^((q-1)/2) since p is odd
                FqElem {
                    field: Arc::clone(&self.field),
                    repr: Repr::Unit(((e as u64 + ord / 2) % ord) as u32),
                }
            }
        }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.assert_same(other);
        match (self.repr, other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => self.field.zero(),
            (Repr::Unit(i), Repr::Unit(j)) => {
                let ord = self.field.q - 1;
                FqElem {
                    field: Arc::clone(&self.field),
                    repr: Repr::Unit(((i as u64 + j as u64) % ord) as u32),
                }
            }
        }
    }

    pub fn inv(&self) -> Result<FqElem, FfError> {
        match self.repr {
            Repr::Zero => Err(FfError::ZeroInverse),
            Repr::Unit(e) => {
                let ord = self.field.q - 1;
                Ok(FqElem {
                    field: Arc::clone(&self.field),
                    repr: Repr::Unit(((ord - e as u64) % ord) as u32),
                })
            }
        }
    }

    pub fn pow(&self, n: i64) -> Result<FqElem, FfError> {
        match self.repr {
            Repr::Zero => {
                if n > 0 {
                    Ok(self.clone())
                } else if n == 0 {
                    Ok(self.field.one())
                } else {
                    Err(FfError::ZeroInverse)
                }
            }
            Repr::Unit(e) => {
                let ord = (self.field.q - 1) as i128;
                let ee = (e as i128 * n as i128).rem_euclid(ord) as u64;
                Ok(self.field.from_dlog(ee))
            }
        }
    }

    /// Frobenius over the registered subfield: `x -> x^(q_sub)`.
    pub fn frobenius(&self) -> Result<FqElem, FfError> {
        let sub = self.field.subfield.as_ref().ok_or(FfError::NoSubfield)?;
        self.pow(sub.table.q as i64)
    }

    /// `(norm, trace)` down to the registered subfield, as subfield elements.
    pub fn norm_and_trace(&self) -> Result<(FqElem, FqElem), FfError> {
        let sub = self.field.subfield.as_ref().ok_or(FfError::NoSubfield)?;
        let frob = self.pow(sub.table.q as i64)?;
        let norm = self.mul(&frob);
        let trace = self.add(&frob);
        Ok((
            norm.to_subfield().expect("norm lands in the subfield"),
            trace.to_subfield().expect("trace lands in the subfield"),
        ))
    }

    /// Reinterprets an element lying in the registered subfield.
    pub fn to_subfield(&self) -> Result<FqElem, FfError> {
        let sub = self.field.subfield.as_ref().ok_or(FfError::NoSubfield)?;
        let enc = self.encoding() as u32;
        let base_enc = *sub.pullback.get(&enc).ok_or(FfError::NotInSubfield)?;
        sub.table
            .from_encoding(base_enc as u64)
            .map_err(|_| FfError::NotInSubfield)
    }

    /// True if the element lies in the registered subfield.
    pub fn in_subfield(&self) -> Result<bool, FfError> {
        let sub = self.field.subfield.as_ref().ok_or(FfError::NoSubfield)?;
        Ok(sub.pullback.contains_key(&(self.encoding() as u32)))
    }

    /// Embeds a subfield element into this element's field.
    pub fn embed_into(&self, ext: &Arc<FieldTable>) -> Result<FqElem, FfError> {
        let sub = ext.subfield.as_ref().ok_or(FfError::NoSubfield)?;
        assert!(
            sub.table.same_field(&self.field),
            "element is not from the registered subfield"
        );
        let enc = sub.embed[self.encoding() as usize];
        ext.from_encoding(enc as u64)
    }

    /// Absolute trace down to the prime field, as an integer in `[0, p)`.
    pub fn abs_trace(&self) -> u64 {
        let p = self.field.p;
        let mut acc = self.field.zero();
        let mut cur = self.clone();
        for _ in 0..self.field.deg {
            acc = acc.add(&cur);
            cur = cur.pow(p as i64).expect("positive power");
        }
        let enc = acc.encoding();
        debug_assert!(enc < p, "absolute trace lies in the prime field");
        enc
    }

    /// Multiplicative order; zero has none.
    pub fn order(&self) -> Option<u64> {
        let e = self.dlog()?;
        let ord = self.field.q - 1;
        let g = gcd(e, ord);
        Some(ord / if g == 0 { ord } else { g })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::ops::Add for &FqElem {
    type Output = FqElem;
    fn add(self, rhs: &FqElem) -> FqElem {
        FqElem::add(self, rhs)
    }
}

impl std::ops::Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, rhs: &FqElem) -> FqElem {
        FqElem::sub(self, rhs)
    }
}

impl std::ops::Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, rhs: &FqElem) -> FqElem {
        FqElem::mul(self, rhs)
    }
}

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_has_generator_two() {
        let f3 = FieldTable::make(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.generator_encoding(), 2);
    }

    #[test]
    fn f9_generator_has_order_eight() {
        let f9 = FieldTable::make(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        let g = f9.generator();
        assert!(g.pow(8).unwrap().is_one());
        assert!(!g.pow(4).unwrap().is_one());
    }

    #[test]
    fn even_characteristic_is_rejected() {
        assert!(matches!(
            FieldTable::make(2, 1),
            Err(FfError::BadCharacteristic(2))
        ));
        assert!(matches!(
            FieldTable::make(9, 1),
            Err(FfError::BadCharacteristic(9))
        ));
    }

    #[test]
    fn size_bound_is_enforced() {
        assert!(matches!(FieldTable::make(3, 20), Err(FfError::TooLarge(_))));
    }

    #[test]
    fn f3_products() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let two = f3.from_encoding(2).unwrap();
        assert!(two.mul(&two).is_one());
    }

    #[test]
    fn f9_exponent_arithmetic() {
        let f9 = FieldTable::make(3, 2).unwrap();
        let g = f9.generator();
        assert!(g.mul(&g.pow(7).unwrap()).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f3 = FieldTable::make(3, 1).unwrap();
        assert!(matches!(f3.zero().inv(), Err(FfError::ZeroInverse)));
    }

    #[test]
    #[should_panic(expected = "mixed-field arithmetic")]
    fn mixed_fields_panic() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f5 = FieldTable::make(5, 1).unwrap();
        let _ = f3.one().add(&f5.one());
    }

    #[test]
    fn cyclic_enumeration_hits_every_unit_once() {
        let f9 = FieldTable::make(3, 2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for u in f9.units() {
            assert!(seen.insert(u.encoding()));
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn norm_is_power_one_plus_q() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let g = f9.generator();
        let (n, _) = g.norm_and_trace().unwrap();
        let expect = g.pow(1 + 3).unwrap().to_subfield().unwrap();
        assert_eq!(n, expect);
    }

    #[test]
    fn trace_doubles_subfield_elements() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        for a in f3.elements() {
            let lifted = a.embed_into(&f9).unwrap();
            let (_, tr) = lifted.norm_and_trace().unwrap();
            assert_eq!(tr, a.add(&a));
        }
    }

    #[test]
    fn norm_kernel_has_q_plus_one_elements() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let kernel = f9
            .units()
            .filter(|x| x.norm_and_trace().unwrap().0.is_one())
            .count();
        assert_eq!(kernel, 4);
    }

    #[test]
    fn norm_is_surjective() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let image: std::collections::HashSet<u64> = f9
            .units()
            .map(|x| x.norm_and_trace().unwrap().0.encoding())
            .collect();
        assert_eq!(image.len(), 2);
    }

    #[test]
    fn frobenius_is_an_involution_fixing_exactly_the_subfield() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let mut fixed = 0;
        for x in f9.elements() {
            let fx = x.frobenius().unwrap();
            assert_eq!(fx.frobenius().unwrap(), x);
            if fx == x {
                fixed += 1;
            }
        }
        assert_eq!(fixed, 3);
    }

    #[test]
    fn frobenius_times_identity_is_norm() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let g = f9.generator();
        let prod = g.frobenius().unwrap().mul(&g);
        let (n, _) = g.norm_and_trace().unwrap();
        assert_eq!(prod, n.embed_into(&f9).unwrap());
    }

    #[test]
    fn frobenius_requires_a_subfield() {
        let f9 = FieldTable::make(3, 2).unwrap();
        assert!(matches!(
            f9.generator().frobenius(),
            Err(FfError::NoSubfield)
        ));
    }

    #[test]
    fn trace_zero_twist() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let s = f9.solve_trace_zero().unwrap();
        assert!(!s.is_zero());
        let (_, tr) = s.norm_and_trace().unwrap();
        assert!(tr.is_zero());
        // kernel of the relative trace has exactly q elements
        let kernel = f9
            .elements()
            .filter(|x| x.is_zero() || x.norm_and_trace().unwrap().1.is_zero())
            .count();
        assert_eq!(kernel, 3);
        // the kernel is an F_q-line: s*a stays trace-zero
        for a in f3.elements() {
            let sa = s.mul(&a.embed_into(&f9).unwrap());
            assert!(sa.is_zero() || sa.norm_and_trace().unwrap().1.is_zero());
        }
    }

    #[test]
    fn trace_is_surjective() {
        let f3 = FieldTable::make(3, 1).unwrap();
        let f9 = FieldTable::quadratic_extension(&f3).unwrap();
        let image: std::collections::HashSet<u64> = f9
            .elements()
            .map(|x| x.norm_and_trace().unwrap().1.encoding())
            .collect();
        assert_eq!(image.len(), 3);
    }
}
