//! Simple supercuspidal parameter triples and their invariants.
//!
//! A representation of `GL(n, E)` of minimal positive depth is determined up
//! to isomorphism by a triple `(v_bar, phi, zeta)`: a unit of the residue
//! field, a residue character, and a root of unity (the value of the extended
//! type at its anti-diagonal generator). Isomorphism questions about the
//! representations (contragredient, Galois twist, self-duality, distinction)
//! therefore reduce to exact arithmetic on triples, and the twisted gamma
//! factors of the two twist depths in scope have closed monomial forms which
//! this module evaluates exactly.

use thiserror::Error;

use crate::cyclo::{CycloVal, GammaMonomial};
use crate::ff::FqElem;
use crate::lf::{embed_residue, ExtKind, LfError, LocalFieldCfg, MultChar, TruncSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SscError {
    #[error("depth-one gamma factors are computed for n = 2 only, got n = {0}")]
    DegreeNotTwo(u32),
    #[error("depth-one gamma factors require the unramified model")]
    RequiresUnramified,
    #[error("expected a character of depth {expected}, got depth {got}")]
    WrongDepth { expected: u8, got: u8 },
    #[error(transparent)]
    Lf(#[from] LfError),
}

/// The parameter triple `(v_bar, phi, zeta)` of a simple supercuspidal
/// representation of `GL(n, E)`.
///
/// `zeta` is stored as an exponent `k` with `zeta = zeta_Z^k` for the session
/// bound `Z`; two triples describe isomorphic representations iff they are
/// componentwise equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSCTriple {
    n: u32,
    v_bar: FqElem,
    phi_index: u64,
    zeta_k: u64,
}

impl SSCTriple {
    pub fn new(cfg: &LocalFieldCfg, n: u32, v_bar: FqElem, phi_index: u64, zeta_k: u64) -> SSCTriple {
        assert!(n >= 2, "simple supercuspidals exist for n >= 2");
        assert!(!v_bar.is_zero(), "v_bar must be a unit of k_E");
        SSCTriple {
            n,
            v_bar,
            phi_index: phi_index % (cfg.q_e() - 1),
            zeta_k: zeta_k % cfg.zeta_bound(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v_bar(&self) -> &FqElem {
        &self.v_bar
    }

    pub fn phi_index(&self) -> u64 {
        self.phi_index
    }

    /// Exponent of `zeta` with respect to `zeta_Z`.
    pub fn zeta_k(&self) -> u64 {
        self.zeta_k
    }

    /// `zeta` as a ring element.
    pub fn zeta(&self, cfg: &LocalFieldCfg) -> CycloVal {
        cfg.cy_zeta(self.zeta_k)
    }

    /// `phi` on a unit of `k_E`.
    pub fn phi_eval(&self, cfg: &LocalFieldCfg, a: &FqElem) -> CycloVal {
        let d = a.dlog().expect("phi needs a unit");
        let step = cfg.m() / (cfg.q_e() - 1);
        cfg.cy_root((d * self.phi_index % cfg.m() * step) as i64)
    }

    /// True iff `phi` restricted to `k_F^x` is trivial.
    pub fn phi_trivial_on_base(&self, cfg: &LocalFieldCfg) -> bool {
        match cfg.kind() {
            // k_F^x is generated by g^(q_F + 1), so triviality means the
            // index is a multiple of q_F - 1
            ExtKind::Unramified => self.phi_index % (cfg.q_f() - 1) == 0,
            // k_E = k_F
            ExtKind::Ramified { .. } => self.phi_index == 0,
        }
    }

    /// Central character value `omega(x)` for `x = pi^k y z`:
    /// `phi` on units, `(zeta^n phi(v))^(-1)` at the uniformizer.
    pub fn central_char_eval(
        &self,
        cfg: &LocalFieldCfg,
        x: &TruncSeries,
    ) -> Result<CycloVal, LfError> {
        if x.is_zero() {
            return Err(LfError::TruncatedZero);
        }
        let k = x.val().expect("nonzero");
        let lead = x.leading().expect("nonzero").clone();
        let at_pi = self.central_char_at_uniformizer(cfg);
        let pi_part = if k >= 0 {
            at_pi.pow(k as u64)
        } else {
            at_pi.conj().pow((-k) as u64)
        };
        Ok(pi_part.mul(&self.phi_eval(cfg, &lead)))
    }

    /// `omega(pi_E) = (zeta^n phi(v_bar))^(-1)`.
    pub fn central_char_at_uniformizer(&self, cfg: &LocalFieldCfg) -> CycloVal {
        let z_n = self.zeta(cfg).pow(self.n as u64);
        let inner = z_n.mul(&self.phi_eval(cfg, &self.v_bar));
        inner.conj() // roots of unity: inverse = conjugate
    }

    /// True iff the central character is trivial on `F^x`: `phi` trivial on
    /// `k_F^x` and `omega(pi_F) = 1`.
    pub fn central_char_trivial_on_f(&self, cfg: &LocalFieldCfg) -> bool {
        if !self.phi_trivial_on_base(cfg) {
            return false;
        }
        let at_pi_f = self
            .central_char_eval(cfg, &cfg.uniformizer_f())
            .expect("uniformizer is nonzero");
        at_pi_f.is_one()
    }

    /// Contragredient parameters: `(-v, phi^-1, zeta^-1)` for odd `n`,
    /// `(v, phi^-1, zeta^-1)` for even `n`.
    pub fn contragredient(&self, cfg: &LocalFieldCfg) -> SSCTriple {
        let v = if self.n % 2 == 1 {
            self.v_bar.neg()
        } else {
            self.v_bar.clone()
        };
        SSCTriple {
            n: self.n,
            v_bar: v,
            phi_index: (cfg.q_e() - 1 - self.phi_index) % (cfg.q_e() - 1),
            zeta_k: (cfg.zeta_bound() - self.zeta_k) % cfg.zeta_bound(),
        }
    }

    /// Galois-twist parameters: `(sigma(v), phi o sigma, zeta)`.
    pub fn galois_twist(&self, cfg: &LocalFieldCfg) -> SSCTriple {
        match cfg.kind() {
            ExtKind::Unramified => SSCTriple {
                n: self.n,
                v_bar: self.v_bar.pow(cfg.q_f() as i64).expect("unit"),
                phi_index: self.phi_index * cfg.q_f() % (cfg.q_e() - 1),
                zeta_k: self.zeta_k,
            },
            // sigma acts trivially on the residue field
            ExtKind::Ramified { .. } => self.clone(),
        }
    }

    /// Self-duality under the Galois twist: contragredient equals twist.
    pub fn is_sigma_self_dual(&self, cfg: &LocalFieldCfg) -> bool {
        self.contragredient(cfg) == self.galois_twist(cfg)
    }

    /// The distinction classification: even degree, unramified extension,
    /// `v_bar` in `k_F^x`, `phi` trivial on `k_F^x`, and `zeta = 1`.
    /// Odd degree never distinguishes.
    pub fn is_distinguished(&self, cfg: &LocalFieldCfg) -> bool {
        self.n % 2 == 0
            && cfg.is_unramified()
            && self.v_bar_in_base(cfg)
            && self.phi_trivial_on_base(cfg)
            && self.zeta_k == 0
    }

    pub fn v_bar_in_base(&self, cfg: &LocalFieldCfg) -> bool {
        match cfg.kind() {
            ExtKind::Unramified => self.v_bar.in_subfield().expect("subfield registered"),
            ExtKind::Ramified { .. } => true,
        }
    }

    /// Twisted gamma factor against a tame quasi-character:
    /// `zeta^-1 lambda(-1)^(n-1) lambda(v pi) q^(1/2 - s)`.
    pub fn gamma_tame(
        &self,
        cfg: &LocalFieldCfg,
        lambda: &MultChar,
    ) -> Result<GammaMonomial, SscError> {
        if lambda.depth() != 0 {
            return Err(SscError::WrongDepth {
                expected: 0,
                got: lambda.depth(),
            });
        }
        let v_pi = cfg.teichmuller(&self.v_bar).mul(&cfg.uniformizer());
        let lam_v_pi = lambda.eval(cfg, &v_pi)?;
        let minus_one = cfg.teichmuller(&cfg.residue_field().one().neg());
        let lam_minus_one = lambda.eval(cfg, &minus_one)?;
        let mut unit = self.zeta(cfg).conj().mul(&lam_v_pi);
        if (self.n - 1) % 2 == 1 {
            unit = unit.mul(&lam_minus_one);
        }
        Ok(GammaMonomial::new(unit, 1, 1))
    }

    /// Twisted gamma factor of a `GL(2)` triple against a depth-one
    /// quasi-character, in closed form:
    /// `omega(c^-1 pi) lambda(c^-2 pi^2 (1 - (c^2 v)^-1 pi)) psi(2 c pi^-1) q^(1-2s)`
    /// where `c` is the Teichmuller lift of the depth parameter of `lambda`.
    pub fn gamma_depth_one_gl2(
        &self,
        cfg: &LocalFieldCfg,
        lambda: &MultChar,
    ) -> Result<GammaMonomial, SscError> {
        if self.n != 2 {
            return Err(SscError::DegreeNotTwo(self.n));
        }
        if !cfg.is_unramified() {
            return Err(SscError::RequiresUnramified);
        }
        if lambda.depth() != 1 {
            return Err(SscError::WrongDepth {
                expected: 1,
                got: lambda.depth(),
            });
        }
        let c_bar = lambda.c_bar().expect("depth one").clone();
        let c = cfg.teichmuller(&c_bar);
        let v = cfg.teichmuller(&self.v_bar);
        let pi = cfg.uniformizer();

        // omega(c^-1 pi)
        let omega_arg = c.inv()?.mul(&pi);
        let omega_val = self.central_char_eval(cfg, &omega_arg)?;

        // lambda(c^-2 pi^2 (1 - (c^2 v)^-1 pi))
        let c2v_inv = c.mul(&c).mul(&v).inv()?;
        let inner = cfg.one().sub(&c2v_inv.mul(&pi));
        let lam_arg = c.inv()?.mul(&c.inv()?).mul(&pi).mul(&pi).mul(&inner);
        let lam_val = lambda.eval(cfg, &lam_arg)?;

        // psi(2 c pi^-1)
        let two = cfg.residue_field().from_int(2);
        let psi_arg = c.scale(&two).shift(-1);
        let psi_val = cfg.psi().eval(&psi_arg)?;

        let unit = omega_val.mul(&lam_val).mul(&psi_val);
        Ok(GammaMonomial::new(unit, 2, 2))
    }

    /// The tame gamma criterion: every tame quasi-character of `E^x` trivial
    /// on `F^x` gives gamma factor 1 at `s = 1/2`.
    pub fn gamma_condition_tame(&self, cfg: &LocalFieldCfg) -> Result<bool, SscError> {
        let chars = cfg.enumerate_chars(0, true, 1)?;
        for lam in &chars {
            if !self.gamma_tame(cfg, lam)?.is_one_at(1, 2) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "v_dlog": self.v_bar.dlog(),
            "phi_index": self.phi_index,
            "zeta_k": self.zeta_k,
        })
    }
}

/// All triples `(v_bar, phi, zeta)` for fixed `n`, with `zeta` ranging over
/// the roots of unity of order dividing `zeta_order` (which must divide the
/// session bound `Z`). Deterministic parameter order.
pub fn enumerate_triples(cfg: &LocalFieldCfg, n: u32, zeta_order: u64) -> Vec<SSCTriple> {
    let z = cfg.zeta_bound();
    assert!(
        z % zeta_order == 0,
        "zeta_order {zeta_order} must divide the session bound {z}"
    );
    let step = z / zeta_order;
    let mut out = Vec::new();
    for v in cfg.residue_field().units() {
        for phi in 0..cfg.q_e() - 1 {
            for k in 0..zeta_order {
                out.push(SSCTriple::new(cfg, n, v.clone(), phi, k * step));
            }
        }
    }
    out
}

/// The residue-level norm condition `phi o N = 1`: the character kills the
/// image of the norm map of `k_E/k_F` (`x -> x^(1+q_F)` unramified, squares
/// in the ramified residue field).
pub fn phi_norm_trivial(cfg: &LocalFieldCfg, phi_index: u64) -> bool {
    let q_e = cfg.q_e();
    match cfg.kind() {
        ExtKind::Unramified => phi_index * (1 + cfg.q_f()) % (q_e - 1) == 0,
        ExtKind::Ramified { .. } => phi_index * 2 % (q_e - 1) == 0,
    }
}

/// Builds the element `v pi_E` used throughout the kernel arguments.
pub fn v_pi_element(cfg: &LocalFieldCfg, v_bar: &FqElem) -> TruncSeries {
    cfg.teichmuller(v_bar).mul(&cfg.uniformizer())
}

/// Lifts a base-field unit encoding into `k_E` (for CLI parameter parsing).
pub fn base_unit(cfg: &LocalFieldCfg, encoding: u64) -> Result<FqElem, LfError> {
    let a = cfg.base_field().from_encoding(encoding)?;
    Ok(embed_residue(cfg, &a))
}
