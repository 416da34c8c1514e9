//! Bracketed one-dimensional solvers.

use crate::control::ConvergenceControl;
use crate::error::{Error, Result};

/// Brent's method (zeroin) on a bracket `[a, b]` with `f(a)·f(b) ≤ 0`.
///
/// Terminates when the bracket half-width drops below
/// `2·eps·|x| + rel_tol·|x|/2` or the residual is exactly zero.
pub fn brent<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoBracket { what: "brent" });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..ctrl.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol =
            2.0 * f64::EPSILON * b.abs() + 0.5 * ctrl.rel_tol * b.abs() + 0.5 * f64::MIN_POSITIVE;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::domain("brent", format!("function is NaN at {b}")));
        }
    }
    Err(Error::Convergence {
        method: "brent",
        iterations: ctrl.max_iter,
        estimate: b,
    })
}

/// Newton's method kept inside a sign-change bracket; any step that leaves
/// the bracket, or fails to halve the residual interval, falls back to
/// bisection.
pub fn safeguarded_newton<F>(fdf: F, lo: f64, hi: f64, ctrl: &ConvergenceControl) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = (lo, hi);
    let (flo, _) = fdf(lo);
    let (fhi, _) = fdf(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket {
            what: "safeguarded newton",
        });
    }
    let rising = fhi > 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..ctrl.max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= ctrl.rel_tol * x.abs() + f64::MIN_POSITIVE
            || hi - lo <= 2.0 * f64::EPSILON * x.abs()
        {
            return Ok(x);
        }
    }
    Err(Error::Convergence {
        method: "safeguarded newton",
        iterations: ctrl.max_iter,
        estimate: x,
    })
}

/// Brent's parabolic/golden-section minimizer on `[a, b]`; returns the
/// abscissa of the minimum.
pub fn minimize<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x = a + GOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    // a minimum is only located to ~sqrt(eps) relative
    let rtol = ctrl.rel_tol.max(f64::EPSILON.sqrt());

    for _ in 0..ctrl.max_iter {
        let xm = 0.5 * (a + b);
        let tol1 = rtol * x.abs() + 1e-300;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(x);
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::Convergence {
        method: "brent minimize",
        iterations: ctrl.max_iter,
        estimate: x,
    })
}
