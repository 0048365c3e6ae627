//! Numerical oracle: explicit matrices for the whole algebra on a finite
//! lattice (exact for fermions, truncated for bosons), with thermal vacua
//! obtained by solving the thermal state conditions.

mod ops;
mod vacuum;
mod verify;

pub use ops::{max_ladders, LatticeConfig, MonoOp, OpSum, Representation};
pub use vacuum::{c_operator, ThermalRepresentation};
pub use verify::{
    boson_thermal_tolerance, numeric_ito_table, random_level0, verify_suite, CheckResult, NumericTable, ReportConfig,
    VerifyOptions, VerifyReport,
};

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::algebra::{Generator, OperatorPoly};
    use crate::poly::Poly;
    use crate::statistics::StatisticsFlag::{self, Boson, Fermion};
    use crate::thermal::{fb, fb_dag, fraktur_words, tfb, tfb_dag};

    fn g(x: Generator) -> OperatorPoly {
        x.poly()
    }

    #[test]
    fn single_fermion_mode() {
        let rep = Representation::new(LatticeConfig::new(Fermion, 1, 0.1).singled()).unwrap();
        let a = rep.evaluate(&g(Generator::a(1)), 0.0).unwrap().to_dense(2);
        assert_eq!(a[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(a.iter().filter(|x| x.norm() > 0.0).count(), 1);
        let aa = rep.evaluate(&(&g(Generator::a(1)) * &g(Generator::a(1))), 0.0).unwrap();
        assert_eq!(aa.deviation_from_scalar(Complex64::new(0.0, 0.0), &[0, 1]), 0.0);
    }

    #[test]
    fn fraktur_fermions_anticommute() {
        let rep = Representation::new(LatticeConfig::new(Fermion, 3, 0.1)).unwrap();
        let cols = rep.exact_columns(2);
        for k in 1..=3 {
            for l in 1..=3 {
                let x = fraktur_words(&fb(k));
                let y = fraktur_words(&fb_dag(l));
                let p = &(&x * &y) + &(&y * &x);
                let want = if k == l { 1.0 } else { 0.0 };
                let dev = rep
                    .evaluate(&p, 0.0)
                    .unwrap()
                    .deviation_from_scalar(Complex64::new(want, 0.0), &cols);
                assert!(dev < 1e-14, "{k} {l}");
                let t = fraktur_words(&tfb(l));
                let q = &(&x * &t) + &(&t * &x);
                assert!(
                    rep.evaluate(&q, 0.0)
                        .unwrap()
                        .deviation_from_scalar(Complex64::new(0.0, 0.0), &cols)
                        < 1e-14
                );
            }
        }
    }

    #[test]
    fn dimension_guard() {
        let cfg = LatticeConfig::new(Boson, 20, 0.1).with_cutoff(16);
        assert!(matches!(
            cfg.validate(),
            Err(crate::error::FockError::DimensionGuard { .. })
        ));
    }

    #[test]
    fn thermal_second_moment() {
        for (flag, cfg) in [
            (Fermion, LatticeConfig::new(Fermion, 1, 0.1)),
            (Fermion, LatticeConfig::new(Fermion, 3, 0.1)),
            (Boson, LatticeConfig::new(Boson, 1, 0.1).with_cutoff(12)),
        ] {
            let th = ThermalRepresentation::build(cfg.clone(), 0.2).unwrap();
            let tol: f64 = if flag == Fermion { 1e-10 } else { 1e-8 };
            assert!(
                th.residual() < tol.max(10.0 * th.truncation_estimate()),
                "{}",
                th.residual()
            );
            let one: Complex64 = th.expectation(&Poly::one()).unwrap();
            assert!((one - 1.0).norm() < 1e-12);
            for k in 1..=cfg.slots {
                let n = th.expectation(&fraktur_words(&(&fb_dag(k) * &fb(k)))).unwrap();
                assert!((n - 0.2).norm() < tol, "{flag:?} {n}");
                let m = th.expectation(&fraktur_words(&(&tfb_dag(k) * &fb_dag(k)))).unwrap();
                let sym = (StatisticsFlag::tau_c64(flag) * (1.0 + flag.sigma() as f64 * 0.2)) * flag.sigma() as f64;
                assert!((m - sym).norm() < tol, "{flag:?} {m} {sym}");
            }
        }
    }

    #[test]
    fn zero_temperature_ket_is_vacuum() {
        let th = ThermalRepresentation::build(LatticeConfig::new(Fermion, 2, 0.1), 0.0).unwrap();
        // only proportional: the ket is scaled so that <|> = 1
        assert!(th.ket()[0].norm() > 1e-3);
        assert!(th.ket()[1..].iter().all(|x| x.norm() < 1e-12));
    }
}
