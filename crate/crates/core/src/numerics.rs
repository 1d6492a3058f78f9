//! Numerical support: adaptive quadrature for oscillatory Lorentzian-type
//! integrands, a small dense matrix exponential, finite-difference stencils
//! for ODE residual checks, and deterministic float formatting.

use nalgebra::Matrix2;
use num_complex::Complex64;
use thiserror::Error;

/// Errors from the numerical routines.
#[derive(Debug, Error)]
pub enum NumericsError {
    /// Adaptive quadrature could not meet its error budget.
    #[error(
        "quadrature failed to converge on [{a:.6e}, {b:.6e}]: \
         error estimate {err:.3e} exceeds budget {budget:.3e} \
         after {panels} panels (depth limit {max_depth})"
    )]
    NonConvergent {
        /// Lower integration limit.
        a: f64,
        /// Upper integration limit.
        b: f64,
        /// Accumulated unresolved error estimate.
        err: f64,
        /// Requested absolute tolerance.
        budget: f64,
        /// Panels evaluated before giving up.
        panels: usize,
        /// Bisection depth limit that was exhausted.
        max_depth: u32,
    },
    /// Invalid quadrature setup (empty or unsorted breakpoints, bad tolerance).
    #[error("invalid quadrature setup: {0}")]
    InvalidSetup(String),
}

/// Result of an adaptive quadrature run.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    /// Integral estimate.
    pub value: Complex64,
    /// Accumulated local error estimate (absolute).
    pub error_estimate: f64,
    /// Number of accepted panels.
    pub panels: usize,
}

const MAX_DEPTH: u32 = 48;

struct Panel {
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    estimate: Complex64,
}

fn simpson_estimate(a: f64, fa: Complex64, fm: Complex64, fb: Complex64, b: f64) -> Complex64 {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)] // one recursion frame of the adaptive scheme
fn refine(
    f: &dyn Fn(f64) -> Complex64,
    panel: Panel,
    tol: f64,
    depth: u32,
    acc: &mut Complex64,
    err_acc: &mut f64,
    bad_err: &mut f64,
    panels: &mut usize,
) {
    let m = 0.5 * (panel.a + panel.b);
    let lm = 0.5 * (panel.a + m);
    let rm = 0.5 * (m + panel.b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_estimate(panel.a, panel.fa, flm, panel.fm, m);
    let right = simpson_estimate(m, panel.fm, frm, panel.fb, panel.b);
    let two = left + right;
    let err = (two - panel.estimate).norm() / 15.0;
    if err <= tol || (panel.b - panel.a) < 1e-14 * (1.0 + panel.a.abs() + panel.b.abs()) {
        // Accept with Richardson correction.
        *acc += two + (two - panel.estimate) / 15.0;
        *err_acc += err;
        *panels += 1;
        return;
    }
    if depth >= MAX_DEPTH {
        *acc += two;
        *err_acc += err;
        *bad_err += err;
        *panels += 1;
        return;
    }
    refine(
        f,
        Panel { a: panel.a, b: m, fa: panel.fa, fm: flm, fb: panel.fm, estimate: left },
        tol * 0.5,
        depth + 1,
        acc,
        err_acc,
        bad_err,
        panels,
    );
    refine(
        f,
        Panel { a: m, b: panel.b, fa: panel.fm, fm: frm, fb: panel.fb, estimate: right },
        tol * 0.5,
        depth + 1,
        acc,
        err_acc,
        bad_err,
        panels,
    );
}

/// Adaptive Simpson quadrature of a complex-valued integrand over the panels
/// delimited by `breakpoints` (strictly increasing). The absolute error
/// budget `tol` is split across panels proportionally to width; panels that
/// cannot meet their share within the depth limit accumulate into a failure
/// diagnostic.
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> Complex64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<Quadrature, NumericsError> {
    if breakpoints.len() < 2 {
        return Err(NumericsError::InvalidSetup(
            "need at least two breakpoints".into(),
        ));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(NumericsError::InvalidSetup(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    for w in breakpoints.windows(2) {
        if !(w[1] > w[0]) {
            return Err(NumericsError::InvalidSetup(format!(
                "breakpoints must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    let total = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err_acc = 0.0;
    let mut bad_err = 0.0;
    let mut panels = 0usize;
    for w in breakpoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let estimate = simpson_estimate(a, fa, fm, fb, b);
        let share = tol * ((b - a) / total).max(1e-6);
        refine(
            f,
            Panel { a, b, fa, fm, fb, estimate },
            share,
            0,
            &mut acc,
            &mut err_acc,
            &mut bad_err,
            &mut panels,
        );
    }
    if bad_err > tol {
        return Err(NumericsError::NonConvergent {
            a: breakpoints[0],
            b: breakpoints[breakpoints.len() - 1],
            err: err_acc,
            budget: tol,
            panels,
            max_depth: MAX_DEPTH,
        });
    }
    Ok(Quadrature { value: acc, error_estimate: err_acc, panels })
}

/// Breakpoints that are geometrically refined toward `center` (spacing
/// `scale * 2^j`) and capped at `max_width` elsewhere, covering `[a, b]`.
/// Suited to a narrow peak at `center` under an oscillation of period
/// `~ 2 pi / freq`: pass `max_width <~ period / 4`.
pub fn peaked_breakpoints(a: f64, b: f64, center: f64, scale: f64, max_width: f64) -> Vec<f64> {
    assert!(b > a && scale > 0.0 && max_width > 0.0);
    let mut pts = vec![a, b];
    if center > a && center < b {
        pts.push(center);
        let mut step = scale;
        loop {
            let lo = center - step;
            let hi = center + step;
            let mut any = false;
            if lo > a {
                pts.push(lo);
                any = true;
            }
            if hi < b {
                pts.push(hi);
                any = true;
            }
            if !any || step > (b - a) {
                break;
            }
            step *= 2.0;
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    // Cap panel widths for oscillatory integrands.
    let mut out = Vec::with_capacity(pts.len());
    for w in pts.windows(2) {
        out.push(w[0]);
        let width = w[1] - w[0];
        if width > max_width {
            let n = (width / max_width).ceil() as usize;
            for i in 1..n {
                out.push(w[0] + width * (i as f64) / (n as f64));
            }
        }
    }
    out.push(pts[pts.len() - 1]);
    out
}

/// Matrix exponential of a complex 2x2 matrix by scaling-and-squaring with a
/// Taylor core.
pub fn expm2(a: &Matrix2<Complex64>) -> Matrix2<Complex64> {
    let norm = a.norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(s), 0.0);
    let mut term = Matrix2::identity();
    let mut sum = Matrix2::identity();
    for k in 1..64 {
        term = term * scaled / Complex64::new(k as f64, 0.0);
        sum += term;
        if term.norm() < 1e-20 {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..s {
        out = out * out;
    }
    out
}

/// Central second derivative, second-order accurate:
/// `(f(t+h) - 2 f(t) + f(t-h)) / h^2`.
pub fn second_derivative(f: &dyn Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (f(t + h) - f(t) * 2.0 + f(t - h)) / (h * h)
}

/// Central second derivative, fourth-order accurate (five-point stencil):
/// `(-f(t+2h) + 16 f(t+h) - 30 f(t) + 16 f(t-h) - f(t-2h)) / (12 h^2)`.
pub fn second_derivative_o4(f: &dyn Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (-f(t + 2.0 * h) + f(t + h) * 16.0 - f(t) * 30.0 + f(t - h) * 16.0 - f(t - 2.0 * h))
        / (12.0 * h * h)
}

/// Central first derivative, second-order accurate.
pub fn first_derivative(f: &dyn Fn(f64) -> Complex64, t: f64, h: f64) -> Complex64 {
    (f(t + h) - f(t - h)) / (2.0 * h)
}

/// Residual of the harmonic equation `(d^2/dt^2 + omega^2) f` at `t`,
/// second-order stencil with `h = 1e-4 (1 + |t|)`.
pub fn harmonic_residual(f: &dyn Fn(f64) -> Complex64, t: f64, omega: f64) -> Complex64 {
    let h = 1e-4 * (1.0 + t.abs());
    second_derivative(f, t, h) + f(t) * (omega * omega)
}

/// Residual of the squared harmonic equation `(d^2/dt^2 + omega^2)^2 f` at
/// `t`, evaluated by applying the fourth-order stencil to
/// `g = (d^2 + omega^2) f`. The step is kept large (`h = 0.02 / max(omega,1)`)
/// because the doubly-applied stencil amplifies rounding as `1/h^4`.
pub fn harmonic_squared_residual(f: &dyn Fn(f64) -> Complex64, t: f64, omega: f64) -> Complex64 {
    let h = 0.02 / omega.abs().max(1.0);
    let g = |u: f64| second_derivative_o4(f, u, h) + f(u) * (omega * omega);
    second_derivative_o4(&g, t, h) + g(t) * (omega * omega)
}

/// Format a float with 17 significant digits in the style of C's `%.17g`:
/// scientific notation only when the decimal exponent is below -5 or at
/// least 17, trailing zeros stripped, exponent written with a sign and at
/// least two digits. Deterministic (used for byte-identical reports).
pub fn format_g17(x: f64) -> String {
    format_g(x, 17)
}

/// `%.Ng`-style formatting; see [`format_g17`].
pub fn format_g(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Exponent after rounding to `sig` digits, via the scientific rendering.
    let sci = format!("{:.*e}", sig - 1, x);
    let epos = sci.find('e').expect("scientific format");
    let exp: i32 = sci[epos + 1..].parse().expect("exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = sci[..epos].trim_end_matches('0').trim_end_matches('.');
        format!("{}e{}{:02}", mantissa, if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let prec = (sig as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{:.*}", prec, x);
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}
