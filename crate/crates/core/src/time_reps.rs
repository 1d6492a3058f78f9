//! Time-translation representations in one dimension: the compact `U(1)`
//! phase and harmonic-oscillator kernels, the indefinite nondecomposable
//! `U(1,1)` representation with its good/bad doublet, the two-position
//! mechanical model whose kernel realizes that representation, and the
//! regularized `delta`/`delta'` correspondence between distributions and
//! representation matrix elements.

use crate::minkowski::c;
use crate::numerics::{integrate_adaptive, peaked_breakpoints, NumericsError};
use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex64;
use thiserror::Error;

/// Errors from time-representation constructors and the regularized
/// distribution integrals.
#[derive(Debug, Error)]
pub enum TimeRepError {
    /// Parameter validation failed.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Regularization arguments out of range.
    #[error("invalid regularization: {0}")]
    InvalidRegularization(String),
    /// Quadrature failure, with diagnostics.
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

/// Harmonic oscillator scales: mass `M > 0` and spring constant `k > 0`,
/// with derived frequency `omega = sqrt(k/M)` and intrinsic length
/// `l^4 = 1/(kM) = omega^2/k^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    spring: f64,
}

impl OscillatorParams {
    /// Validating constructor: both scales strictly positive and finite.
    pub fn new(mass: f64, spring: f64) -> Result<Self, TimeRepError> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(TimeRepError::InvalidParams(format!(
                "mass must be positive and finite, got {mass}"
            )));
        }
        if !(spring > 0.0) || !spring.is_finite() {
            return Err(TimeRepError::InvalidParams(format!(
                "spring constant must be positive and finite, got {spring}"
            )));
        }
        Ok(OscillatorParams { mass, spring })
    }

    /// Mass `M`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Spring constant `k`.
    pub fn spring(&self) -> f64 {
        self.spring
    }

    /// Frequency `omega = sqrt(k/M)`.
    pub fn omega(&self) -> f64 {
        (self.spring / self.mass).sqrt()
    }

    /// Fourth power of the intrinsic length, `l^4 = 1/(kM)`.
    pub fn length_pow4(&self) -> f64 {
        1.0 / (self.spring * self.mass)
    }
}

/// Two-position mechanical model: masses `M`, `M'` with `M M' > 0`, spring
/// constant `k`, derived frequency `omega = k/sqrt(M M')` and mass scale
/// `M0 = sign(M) sqrt(M M')`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoPositionParams {
    mass: f64,
    mass_prime: f64,
    spring: f64,
}

impl TwoPositionParams {
    /// Validating constructor: `M M' > 0` (same sign, both nonzero), all
    /// finite.
    pub fn new(mass: f64, mass_prime: f64, spring: f64) -> Result<Self, TimeRepError> {
        if !(mass * mass_prime > 0.0)
            || !mass.is_finite()
            || !mass_prime.is_finite()
        {
            return Err(TimeRepError::InvalidParams(format!(
                "masses must be finite with M*M' > 0, got M={mass}, M'={mass_prime}"
            )));
        }
        if !spring.is_finite() {
            return Err(TimeRepError::InvalidParams(format!(
                "spring constant must be finite, got {spring}"
            )));
        }
        Ok(TwoPositionParams { mass, mass_prime, spring })
    }

    /// First mass `M`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Second mass `M'`.
    pub fn mass_prime(&self) -> f64 {
        self.mass_prime
    }

    /// Spring constant `k`.
    pub fn spring(&self) -> f64 {
        self.spring
    }

    /// Frequency `omega = k / sqrt(M M')`.
    pub fn omega(&self) -> f64 {
        self.spring / (self.mass * self.mass_prime).sqrt()
    }

    /// Mass scale `M0 = sign(M) sqrt(M M')`.
    pub fn m0(&self) -> f64 {
        self.mass.signum() * (self.mass * self.mass_prime).sqrt()
    }

    /// The `(omega, M0)` pair of the indefinite representation this model
    /// realizes.
    pub fn indefinite_params(&self) -> IndefiniteRepParams {
        IndefiniteRepParams {
            omega: self.omega(),
            m0: self.m0(),
        }
    }
}

/// Parameters of the indefinite `U(1,1)` time representation: frequency
/// `omega` and mass scale `M0 != 0`. Also carries the good/bad doublet basis
/// (see [`DoubletVector`]).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndefiniteRepParams {
    omega: f64,
    m0: f64,
}

impl IndefiniteRepParams {
    /// Validating constructor: `M0 != 0`, both finite.
    pub fn new(omega: f64, m0: f64) -> Result<Self, TimeRepError> {
        if !omega.is_finite() {
            return Err(TimeRepError::InvalidParams(format!(
                "omega must be finite, got {omega}"
            )));
        }
        if m0 == 0.0 || !m0.is_finite() {
            return Err(TimeRepError::InvalidParams(format!(
                "M0 must be nonzero and finite, got {m0}"
            )));
        }
        Ok(IndefiniteRepParams { omega, m0 })
    }

    /// Frequency `omega`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Mass scale `M0`.
    pub fn m0(&self) -> f64 {
        self.m0
    }

    /// Basis vector for a doublet label.
    pub fn basis_vector(&self, label: DoubletVector) -> Vector2<Complex64> {
        match label {
            DoubletVector::Good => Vector2::new(c(1.0, 0.0), c(0.0, 0.0)),
            DoubletVector::Bad => Vector2::new(c(0.0, 0.0), c(1.0, 0.0)),
        }
    }
}

/// Labels for the nondecomposable doublet basis. The *good* vector spans the
/// invariant null line (evolves by a pure phase, annihilated by the
/// nilpotent part of the generator); the *bad* vector is its metric partner
/// (null as well, but leaks onto the good line at the rate `1/M0`).
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum DoubletVector {
    /// Spans the invariant line: `R(t) g = e^{i omega t} g`.
    Good,
    /// Metric partner: `R(t) b = e^{i omega t} (b + (it/M0) g)`.
    Bad,
}

/// Which bilinear a kernel packages: the commutator (state-independent) or
/// the Fock expectation of the anticommutator.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum KernelVariant {
    /// Commutator kernel; equals the identity at `t = 0`.
    Commutator,
    /// Fock-state anticommutator kernel; off-diagonal at `t = 0`.
    Fock,
}

/// Unitary `U(1)` time development `e^{i omega t}`.
pub fn u1_phase(t: f64, omega: f64) -> Complex64 {
    Complex64::from_polar(1.0, omega * t)
}

/// Indefinite metric `J = [[0,1],[1,0]]` pairing good with bad.
pub fn u11_metric() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

/// Nondecomposable `U(1,1)` time representation
/// `R(t) = e^{i omega t} [[1, it/M0],[0, 1]]`.
///
/// A one-parameter group (`R(t) R(s) = R(t+s)`) preserving the indefinite
/// metric `J`: `R(t)^dagger J R(t) = J`. Not diagonalizable for `t != 0`.
pub fn u11_matrix(t: f64, p: &IndefiniteRepParams) -> Matrix2<Complex64> {
    let phase = u1_phase(t, p.omega());
    Matrix2::new(phase, phase * c(0.0, t / p.m0()), c(0.0, 0.0), phase)
}

/// Generator `G = i [[omega, 1/M0],[0, omega]]` of [`u11_matrix`]:
/// `R(t) = exp(t G)`, with semisimple part `i omega 1` (invariant
/// `(1/2) tr(-iG) = omega`) and nilpotent part `N = G - i omega 1`, `N^2 = 0`.
pub fn u11_generator(p: &IndefiniteRepParams) -> Matrix2<Complex64> {
    Matrix2::new(
        c(0.0, p.omega()),
        c(0.0, 1.0 / p.m0()),
        c(0.0, 0.0),
        c(0.0, p.omega()),
    )
}

/// Harmonic-oscillator kernel in the `(x, p)`-like doublet:
///
/// - commutator variant: `[[cos wt, (w/k) i sin wt],[(k/w) i sin wt, cos wt]]`
///   (identity at `t = 0`, determinant 1);
/// - Fock variant: `[[i sin wt, (w/k) cos wt],[(k/w) cos wt, i sin wt]]`
///   (equal-time value is the intrinsic-length pairing `(w/k)` off-diagonal).
///
/// Both solve `(d^2/dt^2 + w^2) K = 0` entrywise.
pub fn oscillator_kernel(
    t: f64,
    p: &OscillatorParams,
    variant: KernelVariant,
) -> Matrix2<Complex64> {
    let w = p.omega();
    let k = p.spring();
    let (s, co) = (w * t).sin_cos();
    match variant {
        KernelVariant::Commutator => Matrix2::new(
            c(co, 0.0),
            c(0.0, w / k * s),
            c(0.0, k / w * s),
            c(co, 0.0),
        ),
        KernelVariant::Fock => Matrix2::new(
            c(0.0, s),
            c(w / k * co, 0.0),
            c(k / w * co, 0.0),
            c(0.0, s),
        ),
    }
}

/// Two-position commutator kernel, explicit closed form (with
/// `w = k/sqrt(M M')`):
///
/// ```text
/// [ cos wt              i sqrt(M'/M) sin wt   -(t/sqrt(MM')) sin wt   (it/M) cos wt        ]
/// [ i sqrt(M/M') sin wt cos wt                (it/M') cos wt          -(t/sqrt(MM')) sin wt]
/// [ 0                   0                     cos wt                  i sqrt(M'/M) sin wt  ]
/// [ 0                   0                     i sqrt(M/M') sin wt     cos wt               ]
/// ```
///
/// The vanishing lower-left block makes the representation nondecomposable:
/// the first doublet is invariant, the second leaks into it linearly in `t`.
/// Every entry is annihilated by `(d^2/dt^2 + w^2)^2`; the `t cos`/`t sin`
/// entries are genuine dipole (second-order pole) contributions not killed
/// by `(d^2/dt^2 + w^2)` alone.
///
/// All square roots take the positive branch; the `t/M`, `t/M'` entries
/// shown above are the positive-mass reductions of `t sqrt(M'/M)/sqrt(MM')`
/// and `t sqrt(M/M')/sqrt(MM')`, so a negative-mass pair (still `MM' > 0`)
/// uses the magnitudes `|M|`, `|M'|` there, keeping the closed form and the
/// tensor factorization identical on the whole parameter domain.
pub fn two_position_kernel(t: f64, p: &TwoPositionParams) -> Matrix4<Complex64> {
    let w = p.omega();
    let (s, co) = (w * t).sin_cos();
    let (m, mp) = (p.mass().abs(), p.mass_prime().abs());
    let root = (mp / m).sqrt();
    let rootinv = (m / mp).sqrt();
    let mm = (m * mp).sqrt();
    let z = c(0.0, 0.0);
    Matrix4::new(
        c(co, 0.0),
        c(0.0, root * s),
        c(-t / mm * s, 0.0),
        c(0.0, t / m * co),
        c(0.0, rootinv * s),
        c(co, 0.0),
        c(0.0, t / mp * co),
        c(-t / mm * s, 0.0),
        z,
        z,
        c(co, 0.0),
        c(0.0, root * s),
        z,
        z,
        c(0.0, rootinv * s),
        c(co, 0.0),
    )
}

/// The same kernel assembled from its tensor factorization
/// `[[1, (1/sqrt(MM')) d/dw],[0, 1]] (x) B(t)`, where
/// `B(t) = [[cos wt, i sqrt(M'/M) sin wt],[i sqrt(M/M') sin wt, cos wt]]`
/// and the frequency derivative acts analytically
/// (`d/dw cos wt = -t sin wt`, `d/dw sin wt = t cos wt`).
pub fn two_position_kernel_tensor(t: f64, p: &TwoPositionParams) -> Matrix4<Complex64> {
    let w = p.omega();
    let (s, co) = (w * t).sin_cos();
    let (m, mp) = (p.mass(), p.mass_prime());
    let root = (mp / m).sqrt();
    let rootinv = (m / mp).sqrt();
    let mm = (m * mp).sqrt();
    let b = Matrix2::new(
        c(co, 0.0),
        c(0.0, root * s),
        c(0.0, rootinv * s),
        c(co, 0.0),
    );
    let db_dw = Matrix2::new(
        c(-t * s, 0.0),
        c(0.0, root * t * co),
        c(0.0, rootinv * t * co),
        c(-t * s, 0.0),
    );
    let mut out = Matrix4::zeros();
    out.fixed_view_mut::<2, 2>(0, 0).copy_from(&b);
    out.fixed_view_mut::<2, 2>(0, 2).copy_from(&(db_dw / c(mm, 0.0)));
    out.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    out
}

/// Which regularized distribution to integrate against the phase `e^{i t q0}`.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum DeltaOrder {
    /// Simple pole: `Re (i/pi)(E + i eps - q0)^{-1}`, a Lorentzian of weight
    /// one; the integral tends to `e^{itE}`.
    Pole,
    /// Squared pole (dipole): `Re (i/pi)(E + i eps - q0)^{-2}`; the integral
    /// tends to `-it e^{itE}`.
    Dipole,
}

/// Outcome of a regularized-delta integration.
#[derive(Clone, Copy, Debug)]
pub struct RegularizedDelta {
    /// Value of the windowed integral.
    pub value: Complex64,
    /// Quadrature error estimate (absolute).
    pub quadrature_error: f64,
    /// Bound on the neglected tails outside the window.
    pub tail_bound: f64,
    /// Number of quadrature panels used.
    pub panels: usize,
}

/// Half-width of the integration window around `E`.
pub const DELTA_WINDOW: f64 = 200.0;

/// Limit target of the regularized integral as `eps -> 0`:
/// `e^{itE}` for [`DeltaOrder::Pole`], `-it e^{itE}` for
/// [`DeltaOrder::Dipole`].
pub fn delta_target(t: f64, e: f64, order: DeltaOrder) -> Complex64 {
    let phase = Complex64::from_polar(1.0, t * e);
    match order {
        DeltaOrder::Pole => phase,
        DeltaOrder::Dipole => phase * c(0.0, -t),
    }
}

/// Exact value of the full-line regularized integral at finite `eps > 0`
/// (for `t >= 0`): the limit target damped by `e^{-eps t}`. Serves as the
/// quadrature oracle.
pub fn delta_damped_target(t: f64, e: f64, eps: f64, order: DeltaOrder) -> Complex64 {
    delta_target(t, e, order) * c((-eps * t).exp(), 0.0)
}

/// Integrate `e^{i t q0}` against the regularized `delta` (order
/// [`DeltaOrder::Pole`]) or `delta'`-type dipole ([`DeltaOrder::Dipole`])
/// concentrated at `q0 = E`, over the window `[E - 200, E + 200]` with
/// panels refined geometrically toward the peak and capped below the
/// oscillation scale.
///
/// Requires `eps > 0` and `t >= 0`. The reported [`RegularizedDelta`]
/// carries the quadrature error estimate and a closed-form bound on the
/// neglected Lorentzian tails; the windowed value converges to
/// [`delta_target`] as `eps -> 0`.
pub fn regularized_delta(
    t: f64,
    e: f64,
    eps: f64,
    order: DeltaOrder,
) -> Result<RegularizedDelta, TimeRepError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(TimeRepError::InvalidRegularization(format!(
            "eps must be positive and finite, got {eps}"
        )));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(TimeRepError::InvalidRegularization(format!(
            "t must be nonnegative and finite, got {t}"
        )));
    }
    if !e.is_finite() {
        return Err(TimeRepError::InvalidRegularization(format!(
            "E must be finite, got {e}"
        )));
    }
    let l = DELTA_WINDOW;
    let weight = move |q0: f64| -> f64 {
        let u = q0 - e;
        match order {
            DeltaOrder::Pole => eps / (u * u + eps * eps) / std::f64::consts::PI,
            DeltaOrder::Dipole => {
                let d = u * u + eps * eps;
                -2.0 * u * eps / (d * d) / std::f64::consts::PI
            }
        }
    };
    let f = move |q0: f64| Complex64::from_polar(1.0, t * q0) * weight(q0);
    // Panel caps: a quarter oscillation period, and never wider than 4 so the
    // Lorentzian cannot hide between samples even at t = 0.
    let max_width = (std::f64::consts::FRAC_PI_2 / t.max(1e-3)).min(4.0);
    let bp = peaked_breakpoints(e - l, e + l, e, eps, max_width);
    let quad = integrate_adaptive(&f, &bp, 1e-8)?;
    let tail_bound = match order {
        DeltaOrder::Pole => 2.0 / std::f64::consts::PI * (eps / l).atan(),
        DeltaOrder::Dipole => 2.0 * eps / (std::f64::consts::PI * (l * l + eps * eps)),
    };
    Ok(RegularizedDelta {
        value: quad.value,
        quadrature_error: quad.error_estimate,
        tail_bound,
        panels: quad.panels,
    })
}
