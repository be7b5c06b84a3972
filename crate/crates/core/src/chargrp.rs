//! The finite abelian quotient `G = E^x / F^x (1 + P_E)` and its Pontryagin
//! dual.
//!
//! This is the only quotient of `E^x` the distinction analysis needs: the tame
//! quasi-characters of `E^x` trivial on `F^x` are exactly the characters of
//! `G`, and an element of `E^x` is killed by all of them iff it lies in
//! `F^x (1 + P_E)`. The group is cyclic of order `q_F + 1` (unramified, the
//! residue quotient `k_E^x / k_F^x`) or of order 2 (ramified, the parity of
//! the valuation).

use crate::lf::{CosetShape, ExtKind, LfError, LocalFieldCfg, MultChar, TruncSeries};

/// A cyclic factor with an explicit generator lift in `E^x`.
#[derive(Clone, Debug)]
pub struct CyclicFactor {
    pub order: u64,
    pub generator_lift: TruncSeries,
}

/// `E^x / F^x (1 + P_E)` with generators, relations, and a normal-form map.
pub struct QuotientGroup {
    cfg: LocalFieldCfg,
    factors: Vec<CyclicFactor>,
}

impl QuotientGroup {
    /// Builds the quotient and verifies the expected order by coset counting
    /// over representatives `pi^a teich(u)`.
    pub fn build(cfg: &LocalFieldCfg) -> Result<QuotientGroup, LfError> {
        let factors = match cfg.kind() {
            ExtKind::Unramified => vec![CyclicFactor {
                order: cfg.q_f() + 1,
                generator_lift: cfg.teichmuller(&cfg.residue_field().generator()),
            }],
            ExtKind::Ramified { .. } => vec![CyclicFactor {
                order: 2,
                generator_lift: cfg.uniformizer(),
            }],
        };
        let group = QuotientGroup {
            cfg: cfg.clone(),
            factors,
        };

        // coset count: every class is represented by pi^a teich(u)
        let mut seen = std::collections::HashSet::new();
        for a in 0..2i64 {
            for u in cfg.residue_field().units() {
                let x = cfg.teichmuller(&u).shift(a);
                seen.insert(group.normal_form(&x)?);
            }
        }
        let expected: u64 = group.factors.iter().map(|f| f.order).product();
        assert_eq!(
            seen.len() as u64,
            expected,
            "coset count disagrees with the declared group order"
        );
        Ok(group)
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    /// Normal form of the class of `x`: one exponent per cyclic factor.
    pub fn normal_form(&self, x: &TruncSeries) -> Result<Vec<u64>, LfError> {
        if x.is_zero() {
            return Err(LfError::TruncatedZero);
        }
        match self.cfg.kind() {
            ExtKind::Unramified => {
                // pi and 1 + P_E die; k_F^x dies; class = dlog(leading) mod (q_F + 1)
                let lead = x.leading().expect("nonzero");
                let d = lead.dlog().expect("unit");
                Ok(vec![d % (self.cfg.q_f() + 1)])
            }
            ExtKind::Ramified { .. } => {
                // F^x (1 + P_E) is exactly the even-valuation part
                Ok(vec![x.val().expect("nonzero").rem_euclid(2) as u64])
            }
        }
    }

    pub fn is_identity_class(&self, x: &TruncSeries) -> Result<bool, LfError> {
        Ok(self.normal_form(x)?.iter().all(|&e| e == 0))
    }

    /// All characters of `G`, lifted to tame quasi-characters of `E^x` trivial
    /// on `F^x`.
    pub fn dual_group(&self) -> Vec<MultChar> {
        match self.cfg.kind() {
            ExtKind::Unramified => {
                let q_f = self.cfg.q_f();
                (0..q_f + 1)
                    .map(|b| MultChar::new(&self.cfg, 0, b * (q_f - 1), 0, None))
                    .collect()
            }
            ExtKind::Ramified { .. } => vec![
                MultChar::new(&self.cfg, 0, 0, 0, None),
                MultChar::new(&self.cfg, 0, 0, self.cfg.m() / 2, None),
            ],
        }
    }

    /// True iff every character of the dual kills `x`; checked both through
    /// the full dual enumeration and through the normal form, which must
    /// agree (Pontryagin duality at this scale).
    pub fn kernel_intersection_contains(&self, x: &TruncSeries) -> Result<bool, LfError> {
        let by_dual = self
            .dual_group()
            .iter()
            .map(|lam| lam.eval(&self.cfg, x).map(|v| v.is_one()))
            .collect::<Result<Vec<bool>, LfError>>()?
            .into_iter()
            .all(|b| b);
        let by_normal_form = self.is_identity_class(x)?;
        assert_eq!(
            by_dual, by_normal_form,
            "dual-kernel membership must match the normal-form identity test"
        );
        Ok(by_dual)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "factors": self.factors.iter().map(|f| serde_json::json!({
                "order": f.order,
                "generator_lift": f.generator_lift.to_json(),
            })).collect::<Vec<_>>(),
            "dual_size": self.dual_group().len(),
        })
    }

    pub fn cfg(&self) -> &LocalFieldCfg {
        &self.cfg
    }

    /// Representatives of all classes of `E^x/(1 + P_E)` with valuation in
    /// `[lo, hi]`, for exhaustive kernel sweeps.
    pub fn class_reps_in_window(&self, lo: i64, hi: i64) -> Result<Vec<TruncSeries>, LfError> {
        let mut out = Vec::new();
        for v in lo..=hi {
            for rep in self.cfg.coset_reps(CosetShape::Shell(v, 1))? {
                out.push(rep);
            }
        }
        Ok(out)
    }
}

/// Convenience: the class pairing value `chi(gen)` used in the pairing-table
/// tests.
pub fn pairing(cfg: &LocalFieldCfg, chi: &MultChar, lift: &TruncSeries) -> Result<crate::cyclo::CycloVal, LfError> {
    chi.eval(cfg, lift)
}
