//! Truncated equal-characteristic local fields.
//!
//! The base field is `F = k_F((t))` and `E` is one of its two quadratic
//! extension shapes:
//!
//! - unramified: `E = k_E((t))` with `k_E = F_{q^2}`, uniformizer `t`;
//! - ramified: `E = k_F((u))` with `u^2 = eps * t`, uniformizer `u`.
//!
//! Elements are Laurent series tracked on a finite window: a [`TruncSeries`]
//! represents the exact coset `x + P_E^prec`. Every operation computes the
//! induced coset and reports [`LfError::PrecisionExhausted`] instead of
//! guessing when a needed coefficient falls outside the window.
//!
//! The module also owns the additive character `psi_E` of conductor `P_E`
//! (trivial on `F` in the unramified model only; no additive character of the
//! ramified model can have conductor exactly `P_E` and be trivial on `F`) and
//! multiplicative quasi-characters of `E^x` of depth zero and one.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::CycloVal;
use crate::ff::{FfError, FieldTable, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LfError {
    #[error("coefficient at exponent {0} lies outside the tracked window")]
    PrecisionExhausted(i64),
    #[error("operation undefined on a (truncated) zero series")]
    TruncatedZero,
    #[error("additive character window violated: valuation {0} too low for precision")]
    WindowViolation(i64),
    #[error("coset level {0} out of range for precision {1}")]
    BadLevel(i64, i64),
    #[error("no additive character of the ramified model is trivial on F with conductor P_E")]
    TrivialOnFUnavailable,
    #[error("uniformizer value order {0} does not divide the session root order {1}")]
    PiOrderDoesNotDivideM(u64, u64),
    #[error("precision must be at least 4, got {0}")]
    PrecisionTooSmall(i64),
    #[error(transparent)]
    Ff(#[from] FfError),
}

/// Which quadratic extension `E/F` is modeled.
#[derive(Clone, Debug)]
pub enum ExtKind {
    Unramified,
    /// `u^2 = eps * t` with `eps` a unit of `k_F`.
    Ramified { eps: FqElem },
}

impl ExtKind {
    pub fn is_unramified(&self) -> bool {
        matches!(self, ExtKind::Unramified)
    }
}

/// Session object: residue fields, extension shape, precision, the additive
/// character, and the cyclotomic session parameters.
///
/// Immutable after construction; evaluation is pure, so a configuration can be
/// shared freely across enumeration workers.
#[derive(Clone)]
pub struct LocalFieldCfg {
    base: Arc<FieldTable>,
    residue: Arc<FieldTable>,
    kind: ExtKind,
    precision: i64,
    zeta_bound: u64,
    m: u64,
    psi: AddCharPsi,
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl LocalFieldCfg {
    /// The unramified quadratic extension of `F_{p^f}((t))`.
    pub fn unramified(p: u64, f: u32, precision: i64, zeta_bound: u64) -> Result<Self, LfError> {
        if precision < 4 {
            return Err(LfError::PrecisionTooSmall(precision));
        }
        let base = FieldTable::make(p, f)?;
        let residue = FieldTable::quadratic_extension(&base)?;
        let q_e = residue.q();
        let m = [p, q_e - 1, q_e * q_e - 1, zeta_bound]
            .into_iter()
            .fold(1, lcm);
        let twist = residue.solve_trace_zero()?;
        let psi = AddCharPsi {
            twist,
            trivial_on_f: true,
            m,
            q_e,
            p,
        };
        Ok(LocalFieldCfg {
            base,
            residue,
            kind: ExtKind::Unramified,
            precision,
            zeta_bound,
            m,
            psi,
        })
    }

    /// The ramified quadratic extension `u^2 = eps * t` of `F_{p^f}((t))`.
    ///
    /// `eps_encoding` selects the unit `eps` of `k_F` by polynomial encoding.
    pub fn ramified(
        p: u64,
        f: u32,
        eps_encoding: u64,
        precision: i64,
        zeta_bound: u64,
    ) -> Result<Self, LfError> {
        if precision < 4 {
            return Err(LfError::PrecisionTooSmall(precision));
        }
        let base = FieldTable::make(p, f)?;
        let eps = base.from_encoding(eps_encoding)?;
        if eps.is_zero() {
            return Err(LfError::Ff(FfError::BadEncoding(0)));
        }
        let q_e = base.q();
        let m = [p, q_e - 1, zeta_bound].into_iter().fold(1, lcm);
        let psi = AddCharPsi {
            twist: base.one(),
            trivial_on_f: false,
            m,
            q_e,
            p,
        };
        Ok(LocalFieldCfg {
            residue: Arc::clone(&base),
            base,
            kind: ExtKind::Ramified { eps },
            precision,
            zeta_bound,
            m,
            psi,
        })
    }

    pub fn base_field(&self) -> &Arc<FieldTable> {
        &self.base
    }

    /// Residue field of `E`.
    pub fn residue_field(&self) -> &Arc<FieldTable> {
        &self.residue
    }

    pub fn kind(&self) -> &ExtKind {
        &self.kind
    }

    pub fn is_unramified(&self) -> bool {
        self.kind.is_unramified()
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn zeta_bound(&self) -> u64 {
        self.zeta_bound
    }

    /// Root-of-unity order of the cyclotomic session.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn q_f(&self) -> u64 {
        self.base.q()
    }

    pub fn q_e(&self) -> u64 {
        self.residue.q()
    }

    pub fn psi(&self) -> &AddCharPsi {
        &self.psi
    }

    /// The additive character, checked to be trivial on `F`.
    ///
    /// No additive character of the ramified model has conductor exactly
    /// `P_E` and kills `F`, so the ramified model refuses with a dedicated
    /// error; statements needing that combination only concern the
    /// unramified model.
    pub fn psi_trivial_on_f(&self) -> Result<&AddCharPsi, LfError> {
        if self.psi.trivial_on_f {
            Ok(&self.psi)
        } else {
            Err(LfError::TrivialOnFUnavailable)
        }
    }

    /// Same session at a different precision.
    pub fn at_precision(&self, precision: i64) -> LocalFieldCfg {
        let mut cfg = self.clone();
        cfg.precision = precision;
        cfg
    }

    pub fn cy_zero(&self) -> CycloVal {
        CycloVal::zero(self.m, self.q_e())
    }

    pub fn cy_one(&self) -> CycloVal {
        CycloVal::one(self.m, self.q_e())
    }

    pub fn cy_root(&self, k: i64) -> CycloVal {
        CycloVal::root_of_unity(self.m, self.q_e(), k)
    }

    /// `zeta_Z^k` inside the session ring.
    pub fn cy_zeta(&self, k: u64) -> CycloVal {
        let step = (self.m / self.zeta_bound) as i64;
        self.cy_root(k as i64 * step)
    }

    pub fn series_zero(&self) -> TruncSeries {
        TruncSeries {
            field: Arc::clone(&self.residue),
            val: self.precision,
            coeffs: Vec::new(),
            prec: self.precision,
        }
    }

    pub fn one(&self) -> TruncSeries {
        self.teichmuller(&self.residue.one())
    }

    /// `pi_E^k` at the default relative precision.
    pub fn uniformizer_pow(&self, k: i64) -> TruncSeries {
        self.teichmuller(&self.residue.one()).shift(k)
    }

    pub fn uniformizer(&self) -> TruncSeries {
        self.uniformizer_pow(1)
    }

    /// `pi_F` as an element of `E`: `t` (unramified) or `eps^-1 u^2` (ramified).
    pub fn uniformizer_f(&self) -> TruncSeries {
        match &self.kind {
            ExtKind::Unramified => self.uniformizer(),
            ExtKind::Ramified { eps } => {
                let inv = eps.inv().expect("eps is a unit");
                let lift = inv.embed_in(self); // k_F = k_E here
                self.teichmuller(&lift).shift(2)
            }
        }
    }

    /// Constant-series lift of a residue element (the Teichmuller section).
    pub fn teichmuller(&self, a: &FqElem) -> TruncSeries {
        if a.is_zero() {
            return self.series_zero();
        }
        let mut coeffs = vec![a.clone()];
        coeffs.resize(self.precision as usize, self.residue.zero());
        TruncSeries {
            field: Arc::clone(&self.residue),
            val: 0,
            coeffs,
            prec: self.precision,
        }
    }

    /// Series from `(exponent, coefficient)` terms, at default precision
    /// relative to the smallest exponent.
    pub fn series_from_terms(&self, terms: &[(i64, FqElem)]) -> TruncSeries {
        let nonzero: Vec<&(i64, FqElem)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return self.series_zero();
        }
        let val = nonzero.iter().map(|(e, _)| *e).min().unwrap();
        let prec = val + self.precision;
        let mut coeffs = vec![self.residue.zero(); self.precision as usize];
        for (e, c) in nonzero {
            if *e < prec {
                coeffs[(*e - val) as usize] = c.clone();
            }
        }
        TruncSeries::normalized(Arc::clone(&self.residue), val, coeffs, prec)
    }

    /// The Galois involution: coefficientwise Frobenius (unramified) or
    /// `u -> -u` (ramified). Fixes exactly `F`.
    pub fn sigma(&self, x: &TruncSeries) -> TruncSeries {
        let coeffs: Vec<FqElem> = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match &self.kind {
                ExtKind::Unramified => {
                    if c.is_zero() {
                        c.clone()
                    } else {
                        c.pow(self.q_f() as i64).expect("unit power")
                    }
                }
                ExtKind::Ramified { .. } => {
                    if (x.val + i as i64).rem_euclid(2) == 1 {
                        c.neg()
                    } else {
                        c.clone()
                    }
                }
            })
            .collect();
        TruncSeries::normalized(Arc::clone(&x.field), x.val, coeffs, x.prec)
    }

    /// Membership in `F` (decided on the tracked window).
    pub fn is_in_f(&self, x: &TruncSeries) -> bool {
        match &self.kind {
            ExtKind::Unramified => x
                .coeffs
                .iter()
                .all(|c| c.is_zero() || c.in_subfield().unwrap_or(false)),
            ExtKind::Ramified { .. } => x
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || (x.val + i as i64).rem_euclid(2) == 0),
        }
    }

    /// Exact transversals of the standard compact quotients.
    pub fn coset_reps(&self, shape: CosetShape) -> Result<Vec<TruncSeries>, LfError> {
        let level = match shape {
            CosetShape::UnitsMod(k) | CosetShape::OnePlusPMod(k) | CosetShape::Shell(_, k) => k,
        };
        if level < 1 || level > self.precision {
            return Err(LfError::BadLevel(level, self.precision));
        }
        let q = self.q_e();
        let field = &self.residue;
        let mut out = Vec::new();
        match shape {
            CosetShape::UnitsMod(k) | CosetShape::Shell(_, k) => {
                let shift = match shape {
                    CosetShape::Shell(v, _) => v,
                    _ => 0,
                };
                let tail = q.pow((k - 1) as u32);
                for lead in 1..q {
                    for rest in 0..tail {
                        let mut terms = vec![(shift, field.from_encoding(lead)?)];
                        let mut r = rest;
                        for i in 1..k {
                            let c = field.from_encoding(r % q)?;
                            r /= q;
                            terms.push((shift + i, c));
                        }
                        out.push(self.series_from_terms(&terms));
                    }
                }
            }
            CosetShape::OnePlusPMod(k) => {
                let tail = q.pow((k - 1) as u32);
                for rest in 0..tail {
                    let mut terms = vec![(0, field.one())];
                    let mut r = rest;
                    for i in 1..k {
                        let c = field.from_encoding(r % q)?;
                        r /= q;
                        terms.push((i, c));
                    }
                    out.push(self.series_from_terms(&terms));
                }
            }
        }
        Ok(out)
    }

    /// All multiplicative quasi-characters with the requested constraints.
    ///
    /// `pi_order`: the value at the uniformizer ranges over the roots of unity
    /// of this order (must divide the session `m`); ignored when
    /// `trivial_on_f` forces the value.
    pub fn enumerate_chars(
        &self,
        depth: u8,
        trivial_on_f: bool,
        pi_order: u64,
    ) -> Result<Vec<MultChar>, LfError> {
        assert!(depth <= 1, "only depth 0 and 1 characters are modeled");
        let q_e = self.q_e();
        let m = self.m;
        if m % pi_order != 0 {
            return Err(LfError::PiOrderDoesNotDivideM(pi_order, m));
        }

        let residue_indices: Vec<u64> = if trivial_on_f {
            match self.kind {
                // characters of k_E^x trivial on k_F^x: indices divisible by q_F - 1
                ExtKind::Unramified => {
                    let step = self.q_f() - 1;
                    (0..(q_e - 1) / step).map(|b| b * step).collect()
                }
                // k_E = k_F: triviality on Teichmuller units forces the
                // trivial residue character
                ExtKind::Ramified { .. } => vec![0],
            }
        } else {
            (0..q_e - 1).collect()
        };

        let pi_exps: Vec<u64> = if trivial_on_f {
            match self.kind {
                // pi_F = pi_E, so the value at the uniformizer is 1
                ExtKind::Unramified => vec![0],
                // lambda(t) = lambda(pi)^2 = 1 once the residue part is trivial
                ExtKind::Ramified { .. } => vec![0, m / 2],
            }
        } else {
            (0..pi_order).map(|k| k * (m / pi_order)).collect()
        };

        let c_bars: Vec<Option<FqElem>> = if depth == 0 {
            vec![None]
        } else if trivial_on_f && self.is_unramified() {
            // triviality on 1 + P_F forces the depth parameter into k_F^x
            self.base
                .units()
                .map(|u| Some(u.embed_in(self)))
                .collect()
        } else {
            self.residue.units().map(Some).collect()
        };

        let mut out = Vec::new();
        for &j in &residue_indices {
            for &pe in &pi_exps {
                for cb in &c_bars {
                    out.push(MultChar {
                        depth,
                        residue_index: j,
                        pi_exp: pe,
                        c_bar: cb.clone(),
                        m,
                        q_e,
                    });
                }
            }
        }
        out.sort_by_key(|c| {
            (
                c.residue_index,
                c.pi_exp,
                c.c_bar.as_ref().and_then(|b| b.dlog()),
            )
        });
        out.dedup_by(|a, b| a == b);
        Ok(out)
    }
}

trait EmbedExt {
    fn embed_in(&self, cfg: &LocalFieldCfg) -> FqElem;
}

impl EmbedExt for FqElem {
    /// Interprets a `k_F` element inside `k_E` (identity in the ramified model).
    fn embed_in(&self, cfg: &LocalFieldCfg) -> FqElem {
        match cfg.kind {
            ExtKind::Unramified => self
                .embed_into(cfg.residue_field())
                .expect("base field embeds in its quadratic extension"),
            ExtKind::Ramified { .. } => self.clone(),
        }
    }
}

/// Lifts a `k_F` element into the residue field of `E`.
pub fn embed_residue(cfg: &LocalFieldCfg, a: &FqElem) -> FqElem {
    a.embed_in(cfg)
}

/// Transversal shapes for [`LocalFieldCfg::coset_reps`].
#[derive(Clone, Copy, Debug)]
pub enum CosetShape {
    /// `O_E^x / (1 + P_E^k)`
    UnitsMod(i64),
    /// `(1 + P_E) / (1 + P_E^k)`
    OnePlusPMod(i64),
    /// `pi^v O_E^x / (1 + P_E^k)`
    Shell(i64, i64),
}

/// A truncated Laurent series over the residue field of `E`: the exact coset
/// `x + P_E^prec`, with the leading stored coefficient nonzero unless the
/// element is (truncated) zero.
#[derive(Clone)]
pub struct TruncSeries {
    field: Arc<FieldTable>,
    val: i64,
    coeffs: Vec<FqElem>,
    prec: i64,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.prec == other.prec && self.coeffs == other.coeffs
    }
}

impl Eq for TruncSeries {}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "O(pi^{})", self.prec);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*pi^{}", c.encoding(), self.val + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(pi^{})", self.prec)
    }
}

impl TruncSeries {
    fn normalized(field: Arc<FieldTable>, val: i64, mut coeffs: Vec<FqElem>, prec: i64) -> Self {
        let mut val = val;
        coeffs.truncate((prec - val).max(0) as usize);
        while coeffs.first().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.remove(0);
            val += 1;
        }
        if coeffs.is_empty() {
            val = prec;
        }
        TruncSeries {
            field,
            val,
            coeffs,
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; `None` for a truncated zero (valuation at least `prec`).
    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// End of the tracked window: the element is known modulo `pi^prec`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.first()
    }

    /// Coefficient at an exponent inside the window; exponents below the
    /// valuation are exactly zero.
    pub fn coeff_at(&self, e: i64) -> Result<FqElem, LfError> {
        if e >= self.prec {
            return Err(LfError::PrecisionExhausted(e));
        }
        if self.is_zero() || e < self.val {
            return Ok(self.field.zero());
        }
        Ok(self.coeffs[(e - self.val) as usize].clone())
    }

    /// Multiplies by `pi^k` (exact; shifts the window).
    pub fn shift(&self, k: i64) -> TruncSeries {
        TruncSeries {
            field: Arc::clone(&self.field),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(other.prec);
        let base = self
            .val()
            .unwrap_or(prec)
            .min(other.val().unwrap_or(prec))
            .min(prec);
        let len = (prec - base).max(0) as usize;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let e = base + i as i64;
            let a = self.coeff_at(e).expect("within window");
            let b = other.coeff_at(e).expect("within window");
            *slot = a.add(&b);
        }
        TruncSeries::normalized(Arc::clone(&self.field), base, coeffs, prec)
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            field: Arc::clone(&self.field),
            val: self.val,
            coeffs: self.coeffs.iter().map(FqElem::neg).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let va = self.val().unwrap_or(self.prec);
        let vb = other.val().unwrap_or(other.prec);
        let prec = (va + other.prec).min(vb + self.prec);
        if self.is_zero() || other.is_zero() {
            return TruncSeries {
                field: Arc::clone(&self.field),
                val: prec,
                coeffs: Vec::new(),
                prec,
            };
        }
        let base = va + vb;
        let len = (prec - base).max(0) as usize;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncSeries::normalized(Arc::clone(&self.field), base, coeffs, prec)
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn inv(&self) -> Result<TruncSeries, LfError> {
        if self.is_zero() {
            return Err(LfError::TruncatedZero);
        }
        let rel = self.coeffs.len();
        let u0_inv = self.coeffs[0].inv()?;
        let mut w = vec![self.field.zero(); rel];
        w[0] = u0_inv.clone();
        for k in 1..rel {
            let mut acc = self.field.zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&w[k - i]));
            }
            w[k] = u0_inv.mul(&acc).neg();
        }
        Ok(TruncSeries {
            field: Arc::clone(&self.field),
            val: -self.val,
            coeffs: w,
            prec: -self.val + rel as i64,
        })
    }

    /// Scales by a residue-field constant.
    pub fn scale(&self, c: &FqElem) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries {
                field: Arc::clone(&self.field),
                val: self.prec,
                coeffs: Vec::new(),
                prec: self.prec,
            };
        }
        TruncSeries {
            field: Arc::clone(&self.field),
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            prec: self.prec,
        }
    }

    /// Stable key for memoization tables.
    pub fn cache_key(&self, out: &mut Vec<u64>) {
        out.push(self.val as u64);
        out.push(self.prec as u64);
        out.push(self.coeffs.len() as u64);
        for c in &self.coeffs {
            out.push(c.encoding());
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            val: i64,
            prec: i64,
            coeffs: Vec<u64>,
        }
        serde_json::to_value(Repr {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| c.encoding()).collect(),
        })
        .expect("serializable")
    }
}

/// The additive character `psi_E` of conductor `P_E`.
///
/// On the tracked window, `psi_E(sum a_i pi^i) = eta(sum_{i <= 0} a_i)` where
/// `eta(a)` is the fixed nontrivial character of the residue field twisted so
/// that (in the unramified model) `eta` kills `k_F`, making `psi_E` trivial
/// on `F`.
#[derive(Clone)]
pub struct AddCharPsi {
    twist: FqElem,
    trivial_on_f: bool,
    m: u64,
    q_e: u64,
    p: u64,
}

impl AddCharPsi {
    pub fn trivial_on_f(&self) -> bool {
        self.trivial_on_f
    }

    pub fn twist(&self) -> &FqElem {
        &self.twist
    }

    /// The residue-level character `eta`.
    pub fn eval_residue(&self, a: &FqElem) -> CycloVal {
        if a.is_zero() {
            return CycloVal::one(self.m, self.q_e);
        }
        let t = self.twist.mul(a).abs_trace();
        CycloVal::root_of_unity(self.m, self.q_e, (t * (self.m / self.p)) as i64)
    }

    /// `psi_E(x)`. The window must cover every exponent `<= 0`.
    pub fn eval(&self, x: &TruncSeries) -> Result<CycloVal, LfError> {
        if x.prec < 1 {
            return Err(LfError::WindowViolation(x.prec));
        }
        if x.is_zero() || x.val > 0 {
            return Ok(CycloVal::one(self.m, self.q_e));
        }
        let mut a = x.field.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            if x.val + i as i64 > 0 {
                break;
            }
            a = a.add(c);
        }
        Ok(self.eval_residue(&a))
    }
}

/// A unitary multiplicative quasi-character of `E^x` of depth zero or one.
///
/// Stored data: the residue character index `j` (acting on Teichmuller units
/// through the fixed generator), the value at the uniformizer as an exponent
/// of `zeta_m`, and for depth one the class `c_bar` with
/// `lambda(1 + pi x) = psi_E(c x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultChar {
    depth: u8,
    residue_index: u64,
    pi_exp: u64,
    c_bar: Option<FqElem>,
    m: u64,
    q_e: u64,
}

impl MultChar {
    pub fn new(
        cfg: &LocalFieldCfg,
        depth: u8,
        residue_index: u64,
        pi_exp: u64,
        c_bar: Option<FqElem>,
    ) -> MultChar {
        assert!(depth <= 1);
        assert_eq!(depth == 1, c_bar.is_some(), "depth one needs c_bar");
        if let Some(c) = &c_bar {
            assert!(!c.is_zero(), "depth-one parameter must be a unit");
        }
        MultChar {
            depth,
            residue_index: residue_index % (cfg.q_e() - 1),
            pi_exp: pi_exp % cfg.m(),
            c_bar,
            m: cfg.m(),
            q_e: cfg.q_e(),
        }
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn residue_index(&self) -> u64 {
        self.residue_index
    }

    pub fn pi_exp(&self) -> u64 {
        self.pi_exp
    }

    pub fn c_bar(&self) -> Option<&FqElem> {
        self.c_bar.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.depth == 0 && self.residue_index == 0 && self.pi_exp == 0
    }

    /// The inverse character.
    pub fn inv(&self) -> MultChar {
        MultChar {
            depth: self.depth,
            residue_index: (self.q_e - 1 - self.residue_index) % (self.q_e - 1),
            pi_exp: (self.m - self.pi_exp) % self.m,
            c_bar: self.c_bar.as_ref().map(FqElem::neg),
            m: self.m,
            q_e: self.q_e,
        }
    }

    /// Value of the residue character on a unit of `k_E`.
    pub fn eval_residue(&self, a: &FqElem) -> CycloVal {
        let d = a.dlog().expect("residue character needs a unit");
        let step = self.m / (self.q_e - 1);
        CycloVal::root_of_unity(self.m, self.q_e, (d * self.residue_index % self.m * step) as i64)
    }

    /// Value at the uniformizer raised to `k`.
    pub fn eval_pi_power(&self, k: i64) -> CycloVal {
        CycloVal::root_of_unity(self.m, self.q_e, self.pi_exp as i64 * k)
    }

    /// Full evaluation through the decomposition
    /// `x = pi^k * teich(leading) * (1 + pi x_1)`.
    pub fn eval(&self, cfg: &LocalFieldCfg, x: &TruncSeries) -> Result<CycloVal, LfError> {
        if x.is_zero() {
            return Err(LfError::TruncatedZero);
        }
        let k = x.val;
        let lead = x.coeffs[0].clone();
        let mut value = self.eval_pi_power(k).mul(&self.eval_residue(&lead));
        if self.depth == 1 {
            let z1 = self.unit_one_coeff(x, k, &lead)?;
            let c = self.c_bar.as_ref().expect("depth one");
            value = value.mul(&cfg.psi().eval_residue(&c.mul(&z1)));
        }
        Ok(value)
    }

    /// Coefficient of `pi` in `x * pi^-k * teich(lead)^-1`.
    fn unit_one_coeff(&self, x: &TruncSeries, k: i64, lead: &FqElem) -> Result<FqElem, LfError> {
        // z_1 = (coefficient of pi^(k+1) in x) / lead
        let c1 = x.coeff_at(k + 1)?;
        Ok(c1.mul(&lead.inv().expect("leading coefficient is a unit")))
    }

    /// Serialization used by the CLI and golden files.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth,
            "residue_index": self.residue_index,
            "value_at_uniformizer": self.pi_exp,
            "c_lambda": self.c_bar.as_ref().map(|c| c.dlog()),
        })
    }
}
