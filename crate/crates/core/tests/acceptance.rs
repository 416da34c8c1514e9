//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line;
//! run with `cargo test -p qshape --test acceptance -- --nocapture`.

use std::f64::consts::LN_2;

use qshape::analysis::{thermal_peak_lambert, thermal_peak_newton};
use qshape::circuits::{half_power_frequencies, q_from_restitution};
use qshape::physical::{physical_q, wien_displacement_constant};
use qshape::specfun::{dirichlet_eta, gamma_real, riemann_zeta};
use qshape::{
    area_fraction, find_peak, full_report, level_points, Axis, ConvergenceControl, LevelSpec,
    LineShape, PhysicalContext,
};

// Tolerances, one per criterion quantity.
const TABLE_VI_ABSCISSA_TOL: f64 = 1e-5;
const TABLE_VI_Q_TOL: f64 = 1e-4;
const TABLE_III_TOL: f64 = 1e-4;
const TABLE_III_Q_TOL: f64 = 1e-3;
const TABLE_IV_TOL: f64 = 1e-4;
const TABLE_IV_Q_TOL: f64 = 1.5e-3;
const RATIO_PERCENT_TOL: f64 = 0.05;
const EXACT_HALF_TOL: f64 = 1e-6;
const PLANCK5_RATIO_BAND: f64 = 0.5;
const M4_PEAK_TOL: f64 = 1e-4;
const TEMPERATURE_REL_TOL: f64 = 1e-12;
const RLC_ROOT_TOL: f64 = 1e-10;
const RLC_IDENTITY_TOL: f64 = 1e-12;
const QUADRATURE_REL_TOL: f64 = 1e-9;
const PEAK_PATH_TOL: f64 = 1e-11;
const RESTITUTION_TOL: f64 = 1e-3;
const LEVEL_RESIDUAL_TOL: f64 = 1e-10;
const WIEN_TOL: f64 = 1e-6;
const SLOPE_TOL: f64 = 0.01;
const VOIGT_GAUSS_TOL: f64 = 1e-6;
const VOIGT_LORENTZ_REL: f64 = 0.02;
const VOIGT_APPROX_REL: f64 = 0.01;

#[derive(Default)]
struct Checks {
    lines: Vec<String>,
    failed: usize,
}

impl Checks {
    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.holds(
            what,
            (got - want).abs() <= tol,
            format!("{got:.10} vs {want} (±{tol:e})"),
        );
    }

    fn rel(&mut self, what: &str, got: f64, want: f64, rel: f64) {
        let ok = (got - want).abs() <= rel * want.abs();
        self.holds(what, ok, format!("{got:.15e} vs {want:.15e} (rel {rel:e})"));
    }

    fn holds(&mut self, what: &str, ok: bool, detail: impl Into<String>) {
        if !ok {
            self.failed += 1;
        }
        self.lines.push(format!(
            "      {} {what}: {}",
            if ok { "ok " } else { "BAD" },
            detail.into()
        ));
    }

    fn finish(self, id: u32, title: &str) {
        let status = if self.failed == 0 { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {id:>2}: {title}");
        for l in &self.lines {
            println!("{l}");
        }
        assert_eq!(
            self.failed, 0,
            "criterion {id} ({title}) failed {} check(s)",
            self.failed
        );
    }
}

fn ctrl() -> ConvergenceControl {
    ConvergenceControl::default()
}

fn thermal(m: f64, n: f64) -> LineShape {
    LineShape::GeneralizedThermal { m, n }
}

fn half() -> LevelSpec {
    LevelSpec::half_power()
}

#[test]
fn c01_table_vi_reproduction() {
    let rows = [
        (-1.0, 1.157_465, 2.821_439, 5.411_575, 0.6632),
        (0.0, 1.394_137, 3.0, 5.525_350, 0.7262),
        (1.0, 1.536_495, 3.131_020, 5.616_138, 0.7675),
    ];
    let mut c = Checks::default();
    for (n, lo, peak, hi, q) in rows {
        let r = full_report(&thermal(3.0, n), half(), &ctrl()).unwrap();
        c.close(&format!("n={n} X-"), r.x_lower, lo, TABLE_VI_ABSCISSA_TOL);
        c.close(&format!("n={n} Xp"), r.x_peak, peak, TABLE_VI_ABSCISSA_TOL);
        c.close(&format!("n={n} X+"), r.x_upper, hi, TABLE_VI_ABSCISSA_TOL);
        c.close(&format!("n={n} Q"), r.q_direct, q, TABLE_VI_Q_TOL);
    }
    c.finish(1, "Table VI (M = 3, n = -1/0/+1) crossings, peaks and Q");
}

#[test]
fn c02_table_iii_reproduction() {
    let shape = thermal(3.0, -1.0);
    let r = full_report(&shape, half(), &ctrl()).unwrap();
    let median = r.x_median.unwrap();
    let f = |x| shape.evaluate(x, &ctrl()).unwrap();
    let mut c = Checks::default();
    c.close("X lower", r.x_lower, 1.1575, TABLE_III_TOL);
    c.close("X peak", r.x_peak, 2.8214, TABLE_III_TOL);
    c.close("X median", median, 3.5030, TABLE_III_TOL);
    c.close("X upper", r.x_upper, 5.4116, TABLE_III_TOL);
    c.close("Pl3 lower", f(r.x_lower), 0.7107, TABLE_III_TOL);
    c.close("Pl3 upper", f(r.x_upper), 0.7107, TABLE_III_TOL);
    c.close("Pl3 peak", r.f_peak, 1.4214, TABLE_III_TOL);
    c.close("Pl3 median", f(median), 1.3343, TABLE_III_TOL);
    c.close("Delta3", r.bandwidth, 4.2541, TABLE_III_TOL);
    c.close("Q3", r.q_direct, 0.663, TABLE_III_Q_TOL);
    c.finish(2, "Table III (Pl3) locations, values, bandwidth and Q");
}

#[test]
fn c03_table_iv_reproduction() {
    let shape = thermal(5.0, -1.0);
    let r = full_report(&shape, half(), &ctrl()).unwrap();
    let y = r.reciprocal_view().unwrap();
    let median = r.x_median.unwrap();
    let f = |x| shape.evaluate(x, &ctrl()).unwrap();
    let mut c = Checks::default();
    c.close("Y lower", y.y_lower, 0.1235, TABLE_IV_TOL);
    c.close("Y median", y.y_median.unwrap(), 0.1779, TABLE_IV_TOL);
    c.close("Y peak", y.y_peak, 0.2014, TABLE_IV_TOL);
    c.close("Y upper", y.y_upper, 0.3660, TABLE_IV_TOL);
    c.close("X at Y lower", r.x_upper, 8.0966, TABLE_IV_TOL);
    c.close("X median", median, 5.6218, TABLE_IV_TOL);
    c.close("X peak", r.x_peak, 4.9651, TABLE_IV_TOL);
    c.close("X at Y upper", r.x_lower, 2.7326, TABLE_IV_TOL);
    c.close("Pl5 crossings", f(r.x_upper), 10.6007, TABLE_IV_TOL);
    c.close("Pl5 crossings (other)", f(r.x_lower), 10.6007, TABLE_IV_TOL);
    c.close("Pl5 median", f(median), 20.3908, TABLE_IV_TOL);
    c.close("Pl5 peak", r.f_peak, 21.2014, TABLE_IV_TOL);
    c.close("Delta5", y.y_bandwidth, 0.2424, TABLE_IV_TOL);
    c.close("Q5(lambda)", r.q_reciprocal.unwrap(), 0.831, TABLE_IV_Q_TOL);
    c.close("Q5(nu)", r.q_direct, 0.926, TABLE_IV_Q_TOL);
    c.finish(
        3,
        "Table IV (Pl5, wavelength view) locations, values, bandwidth and Q",
    );
}

#[test]
fn c04_table_v_ratios() {
    let pct = |shape: LineShape| 100.0 * area_fraction(&shape, half(), &ctrl()).unwrap();
    let mut c = Checks::default();
    c.close(
        "Gaussian %",
        pct(LineShape::Gaussian),
        76.10,
        RATIO_PERCENT_TOL,
    );
    c.close(
        "Lorentzian fraction",
        area_fraction(&LineShape::Lorentzian, half(), &ctrl()).unwrap(),
        0.5,
        EXACT_HALF_TOL,
    );
    for q in [0.5, 2.0, 50.0] {
        let f = area_fraction(&LineShape::RlcConductance { q }, half(), &ctrl()).unwrap();
        c.close(&format!("RLC Q={q} fraction"), f, 0.5, EXACT_HALF_TOL);
    }
    c.close(
        "Planck M=3 %",
        pct(thermal(3.0, -1.0)),
        75.36,
        RATIO_PERCENT_TOL,
    );
    c.close(
        "Wien M=3 %",
        pct(thermal(3.0, 0.0)),
        74.81,
        RATIO_PERCENT_TOL,
    );
    c.close(
        "Fermi-Dirac M=3 %",
        pct(thermal(3.0, 1.0)),
        74.46,
        RATIO_PERCENT_TOL,
    );
    let m5 = pct(thermal(5.0, -1.0));
    c.close(
        "Planck M=5 % (X axis, recorded)",
        m5,
        75.36,
        PLANCK5_RATIO_BAND,
    );
    c.finish(4, "Table V area fractions between half-power points");
}

#[test]
fn c05_continuous_m() {
    let mut c = Checks::default();
    let (xp4, _) = find_peak(&thermal(4.0, -1.0), &ctrl()).unwrap();
    c.close("Xp(M=4)", xp4, 3.9207, M4_PEAK_TOL);
    c.holds(
        "M - Xp < 2% of M at M=4",
        4.0 - xp4 < 0.02 * 4.0 && xp4 < 4.0,
        format!("M - Xp = {}", 4.0 - xp4),
    );
    for m in [2.0, 3.0, 4.0, 5.0] {
        let f = area_fraction(&thermal(m, -1.0), half(), &ctrl()).unwrap();
        c.holds(
            &format!("fraction > 75% at M={m}"),
            f > 0.75,
            format!("{:.4}%", 100.0 * f),
        );
    }
    c.finish(5, "continuous-M peak and area-fraction claims");
}

#[test]
fn c06_temperature_invariance() {
    let mut c = Checks::default();
    let temps = [2.725, 300.0, 5778.0];
    for m in [3.0, 5.0] {
        for alpha in [0.5, 1.0 / 3.0, 0.01] {
            let level = LevelSpec::Fraction(alpha);
            for axis in [Axis::Frequency, Axis::Wavelength] {
                let qs: Vec<f64> = temps
                    .iter()
                    .map(|&t| {
                        let ctx = PhysicalContext::new(t).unwrap();
                        physical_q(&thermal(m, -1.0), &ctx, level, axis, &ctrl()).unwrap()
                    })
                    .collect();
                for (t, q) in temps.iter().zip(&qs).skip(1) {
                    c.rel(
                        &format!("M={m} alpha={alpha:.4} {axis:?} T={t}"),
                        *q,
                        qs[0],
                        TEMPERATURE_REL_TOL,
                    );
                }
            }
        }
    }
    c.finish(6, "physical Q independent of temperature");
}

#[test]
fn c07_rlc_closed_form() {
    let mut c = Checks::default();
    for q in [0.5, 1.0, 5.0, 50.0] {
        let (lo, hi) = level_points(&LineShape::RlcConductance { q }, half(), &ctrl()).unwrap();
        let a = 1.0 / (2.0 * q);
        let closed_hi = (1.0 + a * a).sqrt() + a;
        let closed_lo = (1.0 + a * a).sqrt() - a;
        c.close(&format!("Q={q} Omega-"), lo, closed_lo, RLC_ROOT_TOL);
        c.close(&format!("Q={q} Omega+"), hi, closed_hi, RLC_ROOT_TOL);
        c.close(&format!("Q={q} product"), lo * hi, 1.0, RLC_IDENTITY_TOL);
        c.close(
            &format!("Q={q} difference"),
            hi - lo,
            1.0 / q,
            RLC_IDENTITY_TOL,
        );
        let (clo, chi) = half_power_frequencies(q).unwrap();
        c.close(
            &format!("Q={q} closed-form product"),
            clo * chi,
            1.0,
            RLC_IDENTITY_TOL,
        );
        c.close(
            &format!("Q={q} closed-form difference"),
            chi - clo,
            1.0 / q,
            RLC_IDENTITY_TOL,
        );
    }
    c.finish(7, "RLC numeric half-power roots vs closed form");
}

#[test]
fn c08_quadrature_vs_closed_form() {
    let mut c = Checks::default();
    for m in [2.0, 3.0, 4.0, 5.0] {
        let s = m + 1.0;
        let g = gamma_real(s).unwrap();
        let closed = [
            (-1.0, g * riemann_zeta(s, &ctrl()).unwrap()),
            (0.0, g),
            (1.0, g * dirichlet_eta(s, &ctrl()).unwrap()),
        ];
        for (n, want) in closed {
            let quad = thermal(m, n).integral(0.0, f64::INFINITY, &ctrl()).unwrap();
            c.rel(&format!("M={m} n={n}"), quad, want, QUADRATURE_REL_TOL);
        }
    }
    c.finish(
        8,
        "thermal-family integrals: quadrature vs Gamma x {zeta, 1, eta}",
    );
}

#[test]
fn c09_peak_paths_agree() {
    let mut c = Checks::default();
    for m in [2.0, 3.0, 4.0, 5.0, 7.5] {
        let a = thermal_peak_lambert(m, &ctrl()).unwrap();
        let b = thermal_peak_newton(m, -1.0, &ctrl()).unwrap();
        c.holds(
            &format!("M={m}"),
            (a - b).abs() <= PEAK_PATH_TOL,
            format!("{a:.15} vs {b:.15}"),
        );
    }
    c.finish(9, "Lambert-W and Newton peak paths agree");
}

#[test]
fn c10_restitution_q() {
    let mut c = Checks::default();
    let q = q_from_restitution(0.85).unwrap();
    c.close("C_R = 0.85", q, 9.664, RESTITUTION_TOL);
    c.holds(
        "rounds to Table I's 10",
        q.round() == 10.0,
        format!("{q:.6}"),
    );
    c.finish(10, "restitution Q for C_R = 0.85");
}

#[test]
fn c11_n_db_points() {
    let mut c = Checks::default();
    for m in [3.0, 5.0] {
        let shape = thermal(m, -1.0);
        let (_, f_peak) = find_peak(&shape, &ctrl()).unwrap();
        let mut widths = Vec::new();
        for alpha in [0.5, 1.0 / 3.0, 0.01] {
            let (lo, hi) = level_points(&shape, LevelSpec::Fraction(alpha), &ctrl()).unwrap();
            for x in [lo, hi] {
                let resid = (shape.evaluate(x, &ctrl()).unwrap() - alpha * f_peak).abs();
                c.holds(
                    &format!("M={m} alpha={alpha:.4} residual at {x:.6}"),
                    resid <= LEVEL_RESIDUAL_TOL * f_peak,
                    format!("{resid:e}"),
                );
            }
            widths.push(hi - lo);
        }
        c.holds(
            &format!("M={m} widths increase"),
            widths.windows(2).all(|w| w[1] > w[0]),
            format!("{widths:?}"),
        );
    }
    c.finish(11, "N-dB crossings: residuals and widening with depth");
}

#[test]
fn c12_wien_displacement() {
    let mut c = Checks::default();
    let b = wien_displacement_constant(&ctrl()).unwrap();
    c.close("lambda_p * T [m K]", b, 2.8978e-3, WIEN_TOL);
    let ctx = PhysicalContext::new(5778.0).unwrap();
    let (x5, _) = find_peak(&thermal(5.0, -1.0), &ctrl()).unwrap();
    let lp = ctx.x_to_wavelength(x5).unwrap();
    c.rel("lambda_p(T) * T constant", lp * 5778.0, b, 1e-12);
    c.finish(12, "Wien displacement product from exact SI constants");
}

fn log_slope(shape: LineShape, x: f64) -> f64 {
    let h: f64 = 1e-4;
    let f = |x: f64| shape.evaluate(x, &ctrl()).unwrap().ln();
    let (xa, xb) = (x * (-h).exp(), x * h.exp());
    (f(xb) - f(xa)) / (2.0 * h)
}

#[test]
fn c13_table_ii_slopes() {
    let mut c = Checks::default();
    for (m, n, want) in [
        (3.0, -1.0, 2.0),
        (3.0, 0.0, 3.0),
        (5.0, -1.0, 4.0),
        (5.0, 0.0, 5.0),
    ] {
        c.close(
            &format!("M={m} n={n}"),
            log_slope(thermal(m, n), 1e-3),
            want,
            SLOPE_TOL,
        );
    }
    c.finish(13, "small-X log-log slopes");
}

fn voigt_fwhm(ratio: f64) -> f64 {
    let (lo, hi) = level_points(
        &LineShape::Voigt {
            gamma_over_sigma: ratio,
        },
        half(),
        &ctrl(),
    )
    .unwrap();
    hi - lo
}

#[test]
fn c14_voigt_properties() {
    let mut c = Checks::default();
    let gauss = 2.0 * (2.0 * LN_2).sqrt();
    c.close("ratio 0 FWHM", voigt_fwhm(0.0), gauss, VOIGT_GAUSS_TOL);
    c.close("ratio 1e-9 FWHM", voigt_fwhm(1e-9), gauss, VOIGT_GAUSS_TOL);
    for ratio in [50.0, 200.0] {
        c.rel(
            &format!("ratio {ratio} FWHM"),
            voigt_fwhm(ratio),
            2.0 * ratio,
            VOIGT_LORENTZ_REL,
        );
    }
    let f_l = 2.0;
    let approx = 0.5346 * f_l + (0.2166 * f_l * f_l + gauss * gauss).sqrt();
    c.rel(
        "ratio 1 FWHM vs approximation",
        voigt_fwhm(1.0),
        approx,
        VOIGT_APPROX_REL,
    );
    c.holds(
        "unit peak",
        true,
        format!(
            "V(0) = {}",
            qshape::lineshapes::evaluate_voigt(1.0, 0.0, &ctrl()).unwrap()
        ),
    );
    c.finish(14, "Voigt profile limits and FWHM");
}
