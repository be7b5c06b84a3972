//! The exact coefficient ring for character values, zeta integrals, and gamma
//! factors: rational combinations of `m`-th roots of unity extended by two
//! central symbols,
//!
//! - `Y`, meaning `q_E^(1/2)`, with the rewrite `Y^2 -> q_E`, and
//! - `X`, meaning `q_E^(-s)`, a free invertible variable.
//!
//! Elements are kept in a canonical basis of `Z[zeta_m]` at all times: the
//! exponent of `zeta_m` is split by CRT across the prime-power factors of `m`,
//! and inside each factor `p^a` the relation `1 + z^(p^(a-1)) + z^(2 p^(a-1))
//! + ... = 0` (for `z` of order `p^a`) rewrites exponents into the power-basis
//! range `[0, phi(p^a))`. Equality of canonical forms is ring equality, so
//! zero-testing is exact.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("value is not a monomial u * Y^j * X^k with u a root of unity")]
    NotAMonomial,
    #[error("cannot extract a monomial from zero")]
    ZeroValue,
    #[error("exponent {0}/{1} is not a half-integer power of q")]
    BadExponent(i64, i64),
}

/// Term key: `(x_exp, y_exp, root_exp)` for `coeff * zeta_m^root * Y^y * X^x`.
/// `y_exp` is always 0 or 1 in canonical form.
type Key = (i64, u8, u64);

/// An exact element of `Q(zeta_m)[Y, X, X^-1] / (Y^2 - q_E)` in canonical form.
///
/// The session parameters `m` and `q_E` ride along in every value; operations
/// on values from different sessions panic.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloVal {
    m: u64,
    q_e: u64,
    terms: BTreeMap<Key, BigRational>,
}

/// Prime-power split of `m` used for canonical exponent reduction.
struct Ctx {
    factors: Vec<Factor>,
}

struct Factor {
    p: u64,
    pa: u64,
    phi: u64,
    step: u64, // p^(a-1)
    cof: u64,  // m / p^a
    cof_inv: u64,
}

fn mod_pow(b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u128;
    let mut bb = (b % n) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % n as u128;
        }
        bb = bb * bb % n as u128;
        e >>= 1;
    }
    acc as u64
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    // n is a prime power and gcd(a, n) = 1; Euler with phi(p^a) = p^a - p^(a-1)
    let mut p = 0;
    let mut t = n;
    for d in 2..=n {
        if t % d == 0 {
            p = d;
            break;
        }
    }
    while t % p == 0 {
        t /= p;
    }
    debug_assert_eq!(t, 1);
    let phi = n - n / p;
    mod_pow(a, phi - 1, n)
}

impl Ctx {
    fn new(m: u64) -> Ctx {
        let mut factors = Vec::new();
        let mut rest = m;
        let mut d = 2;
        while rest > 1 {
            if d * d > rest {
                d = rest;
            }
            if rest % d == 0 {
                let mut pa = 1u64;
                while rest % d == 0 {
                    rest /= d;
                    pa *= d;
                }
                let step = pa / d;
                let cof = m / pa;
                let cof_inv = mod_inverse(cof % pa, pa);
                factors.push(Factor {
                    p: d,
                    pa,
                    phi: pa - step,
                    step,
                    cof,
                    cof_inv,
                });
            }
            d += 1;
        }
        Ctx { factors }
    }

    fn split(&self, j: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| (j % f.pa) * f.cof_inv % f.pa)
            .collect()
    }

    fn join(&self, e: &[u64], m: u64) -> u64 {
        let mut acc: u128 = 0;
        for (f, &ei) in self.factors.iter().zip(e) {
            acc = (acc + ei as u128 * f.cof as u128) % m as u128;
        }
        acc as u64
    }
}

thread_local! {
    static CTX_CACHE: std::cell::RefCell<std::collections::HashMap<u64, std::rc::Rc<Ctx>>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

fn ctx_for(m: u64) -> std::rc::Rc<Ctx> {
    CTX_CACHE.with(|c| {
        let mut map = c.borrow_mut();
        map.entry(m)
            .or_insert_with(|| std::rc::Rc::new(Ctx::new(m)))
            .clone()
    })
}

/// Rewrites `coeff * zeta_m^j` into canonical basis terms, accumulating.
fn push_root(
    ctx: &Ctx,
    m: u64,
    exps: &mut Vec<u64>,
    from: usize,
    key_rest: (i64, u8),
    coeff: &BigRational,
    out: &mut BTreeMap<Key, BigRational>,
) {
    for i in from..ctx.factors.len() {
        let f = &ctx.factors[i];
        if exps[i] >= f.phi {
            let r = exps[i] - f.phi;
            for k in 0..(f.p - 1) {
                let mut e2 = exps.clone();
                e2[i] = r + k * f.step;
                let neg = -coeff.clone();
                push_root(ctx, m, &mut e2, i, key_rest, &neg, out);
            }
            return;
        }
    }
    let j = ctx.join(exps, m);
    let key = (key_rest.0, key_rest.1, j);
    let entry = out.entry(key).or_insert_with(BigRational::zero);
    *entry += coeff;
    if entry.is_zero() {
        out.remove(&key);
    }
}

impl CycloVal {
    pub fn zero(m: u64, q_e: u64) -> CycloVal {
        CycloVal {
            m,
            q_e,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: u64, q_e: u64) -> CycloVal {
        Self::from_rational(m, q_e, BigRational::one())
    }

    pub fn from_rational(m: u64, q_e: u64, r: BigRational) -> CycloVal {
        let mut v = Self::zero(m, q_e);
        if !r.is_zero() {
            v.terms.insert((0, 0, 0), r);
        }
        v
    }

    pub fn from_int(m: u64, q_e: u64, n: i64) -> CycloVal {
        Self::from_rational(m, q_e, BigRational::from(BigInt::from(n)))
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, q_e: u64, k: i64) -> CycloVal {
        Self::monomial(m, q_e, k, 0, 0, BigRational::one())
    }

    /// `coeff * zeta_m^root * Y^y * X^x`, canonicalized.
    pub fn monomial(m: u64, q_e: u64, root: i64, y: i64, x: i64, coeff: BigRational) -> CycloVal {
        let mut v = Self::zero(m, q_e);
        if coeff.is_zero() {
            return v;
        }
        let ctx = ctx_for(m);
        let j = root.rem_euclid(m as i64) as u64;
        let (y_red, extra) = reduce_y(y, q_e);
        let c = coeff * extra;
        let mut exps = ctx.split(j);
        push_root(&ctx, m, &mut exps, 0, (x, y_red), &c, &mut v.terms);
        v
    }

    /// `Y^k` for any integer `k` (negative powers divide by `q_E`).
    pub fn y_power(m: u64, q_e: u64, k: i64) -> CycloVal {
        Self::monomial(m, q_e, 0, k, 0, BigRational::one())
    }

    /// `X^k`.
    pub fn x_power(m: u64, q_e: u64, k: i64) -> CycloVal {
        Self::monomial(m, q_e, 0, 0, k, BigRational::one())
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn q_e(&self) -> u64 {
        self.q_e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    fn assert_session(&self, other: &CycloVal) {
        assert!(
            self.m == other.m && self.q_e == other.q_e,
            "mixed cyclotomic sessions: (m={}, q={}) vs (m={}, q={})",
            self.m,
            self.q_e,
            other.m,
            other.q_e
        );
    }

    pub fn add(&self, other: &CycloVal) -> CycloVal {
        self.assert_session(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let entry = out.terms.entry(*k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> CycloVal {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &CycloVal) -> CycloVal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycloVal) -> CycloVal {
        self.assert_session(other);
        let ctx = ctx_for(self.m);
        let mut out = Self::zero(self.m, self.q_e);
        for ((x1, y1, r1), c1) in &self.terms {
            for ((x2, y2, r2), c2) in &other.terms {
                let (y_red, extra) = reduce_y((*y1 as i64) + (*y2 as i64), self.q_e);
                let c = c1 * c2 * extra;
                let j = (r1 + r2) % self.m;
                let mut exps = ctx.split(j);
                push_root(
                    &ctx,
                    self.m,
                    &mut exps,
                    0,
                    (x1 + x2, y_red),
                    &c,
                    &mut out.terms,
                );
            }
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> CycloVal {
        if r.is_zero() {
            return Self::zero(self.m, self.q_e);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= r;
        }
        out
    }

    /// Complex conjugation: `zeta -> zeta^-1`, fixing `Y` and `X`.
    pub fn conj(&self) -> CycloVal {
        let ctx = ctx_for(self.m);
        let mut out = Self::zero(self.m, self.q_e);
        for ((x, y, r), c) in &self.terms {
            let j = (self.m - r) % self.m;
            let mut exps = ctx.split(j);
            push_root(&ctx, self.m, &mut exps, 0, (*x, *y), c, &mut out.terms);
        }
        out
    }

    pub fn pow(&self, n: u64) -> CycloVal {
        let mut acc = Self::one(self.m, self.q_e);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The purely rational value of a constant element, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Splits a nonzero value as `r * u * Y^y0 * X^x0` with `r` a positive
    /// rational and `u` a root of unity, when it has that shape.
    fn as_scaled_monomial(&self) -> Result<(BigRational, CycloVal, u8, i64), CycloError> {
        if self.is_zero() {
            return Err(CycloError::ZeroValue);
        }
        let mut bidegree: Option<(i64, u8)> = None;
        for (x, y, _) in self.terms.keys() {
            match bidegree {
                None => bidegree = Some((*x, *y)),
                Some(b) if b == (*x, *y) => {}
                Some(_) => return Err(CycloError::NotAMonomial),
            }
        }
        let (x0, y0) = bidegree.unwrap();
        // strip the (Y, X) part
        let mut c = CycloVal::zero(self.m, self.q_e);
        for ((_, _, r), coeff) in &self.terms {
            c.terms.insert((0, 0, *r), coeff.clone());
        }
        let norm = c.mul(&c.conj());
        let r2 = norm.as_rational().ok_or(CycloError::NotAMonomial)?;
        if !r2.is_positive() {
            return Err(CycloError::NotAMonomial);
        }
        let r = rational_sqrt(&r2).ok_or(CycloError::NotAMonomial)?;
        let u = c.scale(&(BigRational::one() / &r));
        // a root of unity in this basis has all coefficients +1 or all -1
        let mut sign: Option<bool> = None;
        for coeff in u.terms.values() {
            let is_plus = if coeff.is_one() {
                true
            } else if (-coeff.clone()).is_one() {
                false
            } else {
                return Err(CycloError::NotAMonomial);
            };
            match sign {
                None => sign = Some(is_plus),
                Some(s) if s == is_plus => {}
                Some(_) => return Err(CycloError::NotAMonomial),
            }
        }
        debug_assert!(u.mul(&u.conj()).is_one());
        // an integral unit on the unit circle lies in mu_2m; insist on mu_m
        if !u.pow(self.m).is_one() {
            return Err(CycloError::NotAMonomial);
        }
        Ok((r, u, y0, x0))
    }

    /// Interprets a nonzero value as a gamma monomial `u * q^(alpha - beta s)`,
    /// i.e. `u * Y^(2 alpha) * X^beta` with `u` a root of unity.
    pub fn as_gamma_monomial(&self) -> Result<GammaMonomial, CycloError> {
        let (r, u, y0, x0) = self.as_scaled_monomial()?;
        // r must be an integer power of q_E^(1/2) compatible with Y-parity
        let t = q_power_exponent(&r, self.q_e).ok_or(CycloError::NotAMonomial)?;
        Ok(GammaMonomial {
            unit: u,
            alpha_twice: y0 as i64 + 2 * t,
            beta: x0,
        })
    }

    /// Exponent of `u` as a power of `zeta_m`, for reporting. Linear scan.
    pub fn root_exponent(&self) -> Option<u64> {
        (0..self.m).find(|&a| CycloVal::root_of_unity(self.m, self.q_e, a as i64) == *self)
    }

    /// Canonical sorted term list for JSON output and golden files.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            root: u64,
            y: u8,
            x: i64,
            num: String,
            den: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|((x, y, r), c)| Term {
                root: *r,
                y: *y,
                x: *x,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        serde_json::json!({ "m": self.m, "q_e": self.q_e, "terms": terms })
    }
}

/// Exact division of two monomial-shaped values, as a gamma monomial.
///
/// Any common positive rational scale (for instance a shared Haar-mass
/// normalization) cancels; what must remain is a root of unity times an exact
/// power of `q^(1/2)` and `q^(-s)`.
pub fn monomial_ratio(num: &CycloVal, den: &CycloVal) -> Result<GammaMonomial, CycloError> {
    assert!(
        num.m == den.m && num.q_e == den.q_e,
        "mixed cyclotomic sessions in monomial division"
    );
    let (r1, u1, y1, x1) = num.as_scaled_monomial()?;
    let (r2, u2, y2, x2) = den.as_scaled_monomial()?;
    let r = r1 / r2;
    let t = q_power_exponent(&r, num.q_e).ok_or(CycloError::NotAMonomial)?;
    let unit = u1.mul(&u2.conj());
    Ok(GammaMonomial {
        unit,
        alpha_twice: (y1 as i64 - y2 as i64) + 2 * t,
        beta: x1 - x2,
    })
}

/// Reduces a `Y`-exponent to 0 or 1, returning the rational `q^k` absorbed
/// into the coefficient.
fn reduce_y(y: i64, q_e: u64) -> (u8, BigRational) {
    let rem = y.rem_euclid(2);
    let half = (y - rem) / 2;
    let q = BigRational::from(BigInt::from(q_e));
    let extra = if half >= 0 {
        num::pow::pow(q, half as usize)
    } else {
        BigRational::one() / num::pow::pow(q, (-half) as usize)
    };
    (rem as u8, extra)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Writes `r = q_e^(t/2)`... more precisely finds integer `t` with
/// `r = q_e^t` allowing `t` negative; returns `None` when `r` is not an exact
/// integer power of `q_e`.
fn q_power_exponent(r: &BigRational, q_e: u64) -> Option<i64> {
    if r.is_one() {
        return Some(0);
    }
    let q = BigInt::from(q_e);
    if r.denom().is_one() {
        let mut n = r.numer().clone();
        let mut t = 0i64;
        while (&n % &q).is_zero() {
            n /= &q;
            t += 1;
        }
        if n.is_one() {
            return Some(t);
        }
        return None;
    }
    if r.numer().is_one() {
        let inv = BigRational::new(r.denom().clone(), r.numer().clone());
        return q_power_exponent(&inv, q_e).map(|t| -t);
    }
    None
}

impl fmt::Debug for CycloVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, y, r), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *r != 0 {
                write!(f, "*z^{r}")?;
            }
            if *y != 0 {
                write!(f, "*Y")?;
            }
            if *x != 0 {
                write!(f, "*X^{x}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CycloVal {
    type Output = CycloVal;
    fn add(self, rhs: &CycloVal) -> CycloVal {
        CycloVal::add(self, rhs)
    }
}

impl std::ops::Sub for &CycloVal {
    type Output = CycloVal;
    fn sub(self, rhs: &CycloVal) -> CycloVal {
        CycloVal::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycloVal {
    type Output = CycloVal;
    fn mul(self, rhs: &CycloVal) -> CycloVal {
        CycloVal::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycloVal {
    type Output = CycloVal;
    fn neg(self) -> CycloVal {
        CycloVal::neg(self)
    }
}

/// A gamma factor in monomial form: `unit * q_E^(alpha - beta s)` where
/// `alpha = alpha_twice / 2`. The unit is a root of unity.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaMonomial {
    unit: CycloVal,
    alpha_twice: i64,
    beta: i64,
}

impl fmt::Debug for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}) * q^({}/2 - {} s)",
            self.unit, self.alpha_twice, self.beta
        )
    }
}

impl GammaMonomial {
    pub fn new(unit: CycloVal, alpha_twice: i64, beta: i64) -> GammaMonomial {
        GammaMonomial {
            unit,
            alpha_twice,
            beta,
        }
    }

    pub fn unit(&self) -> &CycloVal {
        &self.unit
    }

    /// `2 * alpha`, always an integer.
    pub fn alpha_twice(&self) -> i64 {
        self.alpha_twice
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// Substitutes `s = num/den`; the exponent `alpha - beta s` must be a
    /// half-integer.
    pub fn eval_at(&self, num: i64, den: i64) -> Result<CycloVal, CycloError> {
        assert!(den > 0, "rational s must have positive denominator");
        let twice = self.alpha_twice * den - 2 * self.beta * num;
        if twice % den != 0 {
            return Err(CycloError::BadExponent(twice, den));
        }
        let e2 = twice / den;
        let y = CycloVal::y_power(self.unit.m, self.unit.q_e, e2);
        Ok(self.unit.mul(&y))
    }

    /// True exactly when the value at `s = num/den` is 1.
    pub fn is_one_at(&self, num: i64, den: i64) -> bool {
        self.eval_at(num, den).map(|v| v.is_one()).unwrap_or(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unit": self.unit.to_json(),
            "unit_root_exponent": self.unit.root_exponent(),
            "alpha_twice": self.alpha_twice,
            "beta": self.beta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: u64 = 24;
    const Q: u64 = 9;

    fn root(k: i64) -> CycloVal {
        CycloVal::root_of_unity(M, Q, k)
    }

    #[test]
    fn root_plus_negation_cancels() {
        let z = root(1);
        assert!(z.add(&z.neg()).is_zero());
    }

    #[test]
    fn cubic_relation_m3() {
        // 1 + zeta_3 + zeta_3^2 = 0 in the m = 3 session
        let one = CycloVal::one(3, 9);
        let z = CycloVal::root_of_unity(3, 9, 1);
        let z2 = CycloVal::root_of_unity(3, 9, 2);
        assert!(one.add(&z).add(&z2).is_zero());
    }

    #[test]
    fn y_squared_rewrites_to_q() {
        let y = CycloVal::y_power(M, Q, 1);
        let q = CycloVal::from_int(M, Q, Q as i64);
        assert_eq!(y.mul(&y), q);
    }

    #[test]
    fn roots_of_unity_are_periodic_homomorphic() {
        assert!(root(0).is_one());
        assert!(root(M as i64).is_one());
        for a in 0..M as i64 {
            for b in [0, 1, 5, 23] {
                assert_eq!(root(a).mul(&root(b)), root(a + b));
            }
        }
    }

    #[test]
    fn vanishing_sums_over_all_divisors() {
        let m = 240;
        for n in 2..=m {
            if m % n != 0 {
                continue;
            }
            let mut acc = CycloVal::zero(m, Q);
            for k in 0..n {
                acc = acc.add(&CycloVal::root_of_unity(m, Q, (k * m / n) as i64));
            }
            assert!(acc.is_zero(), "sum of the {n}-th roots inside m={m}");
        }
    }

    #[test]
    fn gamma_monomial_extraction() {
        let yx = CycloVal::y_power(M, Q, 1).mul(&CycloVal::x_power(M, Q, 1));
        let g = yx.as_gamma_monomial().unwrap();
        assert!(g.unit().is_one());
        assert_eq!(g.alpha_twice(), 1);
        assert_eq!(g.beta(), 1);

        let qx2 = CycloVal::from_int(M, Q, Q as i64).mul(&CycloVal::x_power(M, Q, 2));
        let g = qx2.as_gamma_monomial().unwrap();
        assert!(g.unit().is_one());
        assert_eq!(g.alpha_twice(), 2);
        assert_eq!(g.beta(), 2);
    }

    #[test]
    fn two_term_sum_is_not_a_monomial() {
        let v = CycloVal::one(3, 9).add(&CycloVal::root_of_unity(3, 9, 1));
        assert!(matches!(
            v.as_gamma_monomial(),
            Err(CycloError::NotAMonomial)
        ));
    }

    #[test]
    fn eval_at_half() {
        // q^(1/2 - s) at s = 1/2 is 1
        let g = GammaMonomial::new(CycloVal::one(M, Q), 1, 1);
        assert!(g.is_one_at(1, 2));
        // with a nontrivial unit the value is the unit
        let u = root(5);
        let g = GammaMonomial::new(u.clone(), 1, 1);
        assert_eq!(g.eval_at(1, 2).unwrap(), u);
        // q^(1 - 2s) at s = 1/2 is 1
        let g = GammaMonomial::new(CycloVal::one(M, Q), 2, 2);
        assert!(g.is_one_at(1, 2));
    }

    #[test]
    fn monomial_roundtrip_through_extraction() {
        for rk in [0i64, 1, 7, 13] {
            for a2 in [-3i64, -1, 0, 1, 2, 5] {
                for b in [-2i64, 0, 1, 3] {
                    let v = CycloVal::monomial(M, Q, rk, a2, b, BigRational::one());
                    let g = v.as_gamma_monomial().unwrap();
                    assert_eq!(g.unit(), &root(rk));
                    assert_eq!(g.alpha_twice(), a2);
                    assert_eq!(g.beta(), b);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "mixed cyclotomic sessions")]
    fn mixed_sessions_panic() {
        let a = CycloVal::one(24, 9);
        let b = CycloVal::one(240, 9);
        let _ = a.add(&b);
    }

    /// Independent oracle: reduction modulo the m-th cyclotomic polynomial in
    /// the plain power basis, computed by recursive division of `x^m - 1`.
    mod phi_oracle {
        pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
            // x^m - 1 divided by all phi_d, d | m, d < m
            let mut num = vec![0i64; m as usize + 1];
            num[0] = -1;
            num[m as usize] = 1;
            for d in 1..m {
                if m % d == 0 {
                    let phi_d = cyclotomic_poly(d);
                    num = poly_div_exact(&num, &phi_d);
                }
            }
            num
        }

        fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
            let mut r = a.to_vec();
            let db = b.len() - 1;
            let mut q = vec![0i64; r.len() - db];
            while r.iter().any(|&c| c != 0) {
                let dr = r.iter().rposition(|&c| c != 0).unwrap();
                assert!(dr >= db);
                let c = r[dr] / b[db];
                q[dr - db] = c;
                for (k, &bk) in b.iter().enumerate() {
                    r[dr - db + k] -= c * bk;
                }
            }
            q
        }

        /// Reduces an exponent soup to the power basis mod phi_m.
        pub fn reduce(m: u64, terms: &[(u64, i64)]) -> Vec<i64> {
            let phi = cyclotomic_poly(m);
            let deg = phi.len() - 1;
            let mut acc = vec![0i64; m as usize];
            for &(e, c) in terms {
                acc[(e % m) as usize] += c;
            }
            for e in (deg..m as usize).rev() {
                let c = acc[e];
                if c != 0 {
                    acc[e] = 0;
                    for (k, &pk) in phi.iter().enumerate().take(deg) {
                        acc[e - deg + k] -= c * pk;
                    }
                }
            }
            acc.truncate(deg);
            acc
        }
    }

    #[test]
    fn canonicalization_agrees_with_cyclotomic_polynomial_oracle() {
        use phi_oracle::reduce;
        for m in [3u64, 8, 12, 24, 40, 60] {
            // pseudo-random but deterministic exponent soups
            let mut soups: Vec<Vec<(u64, i64)>> = Vec::new();
            let mut state = 1u64;
            for _ in 0..40 {
                let mut soup = Vec::new();
                for _ in 0..6 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let e = (state >> 33) % m;
                    let c = ((state >> 20) % 7) as i64 - 3;
                    soup.push((e, c));
                }
                soups.push(soup);
            }
            for (i, a) in soups.iter().enumerate() {
                for b in soups.iter().skip(i) {
                    let mut va = CycloVal::zero(m, Q);
                    for &(e, c) in a {
                        va = va.add(&CycloVal::root_of_unity(m, Q, e as i64).scale(
                            &BigRational::from(BigInt::from(c)),
                        ));
                    }
                    let mut vb = CycloVal::zero(m, Q);
                    for &(e, c) in b {
                        vb = vb.add(&CycloVal::root_of_unity(m, Q, e as i64).scale(
                            &BigRational::from(BigInt::from(c)),
                        ));
                    }
                    let eq_canon = va == vb;
                    let eq_oracle = reduce(m, a) == reduce(m, b);
                    assert_eq!(eq_canon, eq_oracle, "m={m}");
                }
            }
        }
    }
}
