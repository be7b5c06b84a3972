//! Shared fixtures for the criterion benchmarks: a standard session at
//! `q_F = 3`, unramified, with the default acceptance parameters.

use sscgamma::lf::LocalFieldCfg;
use sscgamma::ssc::SSCTriple;

pub fn standard_cfg() -> LocalFieldCfg {
    LocalFieldCfg::unramified(3, 1, 6, 24).expect("standard session")
}

pub fn standard_triple(cfg: &LocalFieldCfg) -> SSCTriple {
    SSCTriple::new(cfg, 2, cfg.residue_field().from_dlog(1), 1, 3)
}
