//! Benchmarks for the kernels that dominate the verification sweeps: residue
//! field arithmetic, cyclotomic canonicalization, character evaluation,
//! Whittaker evaluation, and full gamma extraction.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sscgamma::cyclo::CycloVal;
use sscgamma::lf::{CosetShape, MultChar};
use sscgamma::rso::{
    gamma_from_functional_equation, integral_psi, IntegralMode, IntegralParams, Mat2,
    WhittakerSpec,
};
use sscgamma_bench::{standard_cfg, standard_triple};

fn bench_field_ops(c: &mut Criterion) {
    let cfg = standard_cfg();
    let f = cfg.residue_field().clone();
    let units: Vec<_> = f.units().collect();
    c.bench_function("ff/zech_add_sweep", |b| {
        b.iter(|| {
            let mut acc = f.zero();
            for x in &units {
                for y in &units {
                    acc = acc.add(&x.mul(y));
                }
            }
            black_box(acc)
        })
    });
}

fn bench_cyclo(c: &mut Criterion) {
    let m = 240;
    let roots: Vec<CycloVal> = (0..24).map(|k| CycloVal::root_of_unity(m, 9, k * 7)).collect();
    c.bench_function("cyclo/root_products", |b| {
        b.iter(|| {
            let mut acc = CycloVal::one(m, 9);
            for r in &roots {
                acc = acc.mul(r);
            }
            black_box(acc)
        })
    });
    c.bench_function("cyclo/vanishing_sum", |b| {
        b.iter(|| {
            let mut acc = CycloVal::zero(m, 9);
            for k in 0..m {
                acc = acc.add(&CycloVal::root_of_unity(m, 9, k as i64));
            }
            black_box(acc.is_zero())
        })
    });
}

fn bench_char_eval(c: &mut Criterion) {
    let cfg = standard_cfg();
    let lam = MultChar::new(&cfg, 1, 3, cfg.m() / 8, Some(cfg.residue_field().from_dlog(2)));
    let reps = cfg.coset_reps(CosetShape::UnitsMod(3)).unwrap();
    c.bench_function("lf/char_eval_transversal", |b| {
        b.iter(|| {
            let mut acc = cfg.cy_zero();
            for x in &reps {
                acc = acc.add(&lam.eval(&cfg, x).unwrap());
            }
            black_box(acc)
        })
    });
}

fn bench_whittaker(c: &mut Criterion) {
    let cfg = standard_cfg();
    let t = standard_triple(&cfg);
    let spec = WhittakerSpec::new(&cfg, &t).unwrap();
    let reps = cfg.coset_reps(CosetShape::UnitsMod(3)).unwrap();
    let mats: Vec<Mat2> = reps
        .iter()
        .map(|y| Mat2::diag(&cfg, y.shift(-1)))
        .collect();
    c.bench_function("rso/whittaker_shell", |b| {
        b.iter(|| {
            let mut acc = cfg.cy_zero();
            for g in &mats {
                acc = acc.add(&spec.eval(g).unwrap());
            }
            black_box(acc)
        })
    });
}

fn bench_integrals(c: &mut Criterion) {
    let cfg = standard_cfg();
    let t = standard_triple(&cfg);
    let spec = WhittakerSpec::new(&cfg, &t).unwrap();
    let lam = MultChar::new(&cfg, 0, 2, cfg.m() / 8, None);
    let params = IntegralParams::default();
    let id = Mat2::identity(&cfg);
    c.bench_function("rso/integral_plain_tame", |b| {
        b.iter(|| {
            black_box(integral_psi(&spec, &id, &lam, IntegralMode::Plain, &params).unwrap())
        })
    });
    c.bench_function("rso/gamma_extraction_tame", |b| {
        b.iter(|| black_box(gamma_from_functional_equation(&cfg, &t, &lam, &params).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_field_ops,
    bench_cyclo,
    bench_char_eval,
    bench_whittaker,
    bench_integrals
);
criterion_main!(benches);
