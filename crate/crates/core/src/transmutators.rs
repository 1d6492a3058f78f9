//! Coset representatives ("transmutators") and projectors of the Lorentz
//! group.
//!
//! Two decompositions of a momentum orbit are covered:
//!
//! - massive (time-space / Sylvester split): the Weyl boost `s(q,m)` in
//!   `SL(2,C)/SU(2)` and its vector image `Lambda(q,m)`, with the spin-1
//!   projector of the `SO(3)` little group;
//! - massless (lightlike / Witt split): helicity projectors `p±(q)`, the
//!   rotation `u(q)` in `SU(2)/U(1)` taking the z-axis to `qhat` and its
//!   vector image `O(q)`, the constant basis change `w` between the
//!   time-space and Witt bases, and their composition `H(q) = O(q) w`,
//!   which carries the form `iota` into `eta`.
//!
//! Explicit matrices are transcribed as closed forms *and* re-derived via
//! composition (`vector_rep`, `O * w`); the verification suite compares the
//! two routes entry by entry.

use crate::minkowski::{
    c, sigma_dot, slash, vector_rep, FourVector, MetricForm, MinkowskiError, PauliVector,
};
use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use thiserror::Error;

/// Relative threshold on `q^0 + q^3` below which the Witt-rotation chart is
/// considered singular (the chart breaks down for momenta along `-z`).
pub const CHART_TOL: f64 = 1e-10;

/// Errors from transmutator constructors and chart-dependent maps.
#[derive(Debug, Error)]
pub enum TransmutatorError {
    /// Momentum data failed validation.
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    /// The `u(q)` chart degenerates as `q` approaches the `-z` direction.
    #[error(
        "singular chart: q0 + q3 = {q0_plus_q3:.3e} <= {threshold:.3e}; \
         pre-rotate momenta pointing along -z"
    )]
    SingularChart {
        /// Offending value of `q^0 + q^3`.
        q0_plus_q3: f64,
        /// Threshold `CHART_TOL * q^0`.
        threshold: f64,
    },
    /// Gauge parameters failed validation.
    #[error("invalid gauge parameters: {0}")]
    InvalidGauge(String),
}

/// On-shell massive momentum: mass `m > 0` plus spatial momentum `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassiveMomentum {
    m: f64,
    q: Vector3<f64>,
}

impl MassiveMomentum {
    /// Validating constructor.
    pub fn new(m: f64, q: Vector3<f64>) -> Result<Self, TransmutatorError> {
        // Reuse the on-shell validation.
        FourVector::massive_onshell(m, q)?;
        Ok(MassiveMomentum { m, q })
    }

    /// Mass.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Spatial momentum.
    pub fn q(&self) -> Vector3<f64> {
        self.q
    }

    /// Energy `q^0 = sqrt(m^2 + |q|^2)`.
    pub fn q0(&self) -> f64 {
        (self.m * self.m + self.q.norm_squared()).sqrt()
    }

    /// Full four-vector.
    pub fn four_vector(&self) -> FourVector {
        FourVector::from_parts(self.q0(), self.q)
    }
}

/// On-shell massless momentum: nonzero spatial momentum, `q^0 = |q|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LightlikeMomentum {
    q: Vector3<f64>,
}

impl LightlikeMomentum {
    /// Validating constructor.
    pub fn new(q: Vector3<f64>) -> Result<Self, TransmutatorError> {
        FourVector::lightlike_onshell(q)?;
        Ok(LightlikeMomentum { q })
    }

    /// Spatial momentum.
    pub fn q(&self) -> Vector3<f64> {
        self.q
    }

    /// Energy `q^0 = |q|`.
    pub fn q0(&self) -> f64 {
        self.q.norm()
    }

    /// Full four-vector.
    pub fn four_vector(&self) -> FourVector {
        FourVector::from_parts(self.q0(), self.q)
    }

    fn require_chart(&self) -> Result<(), TransmutatorError> {
        let q0 = self.q0();
        let threshold = CHART_TOL * q0;
        let q0_plus_q3 = q0 + self.q.z;
        if q0_plus_q3 <= threshold {
            Err(TransmutatorError::SingularChart {
                q0_plus_q3,
                threshold,
            })
        } else {
            Ok(())
        }
    }
}

/// Gauge-fixing parameters for the massless vector kernels: the normalization
/// `mu^2 > 0` and the gauge-fixing combination `eps*sigma^2 != 0`.
///
/// Derived quantities: `1/M0 = -(mu^2 + eps sigma^2)/mu^2` (dipole strength;
/// stored inverted so the Feynman point `1/M0 = 0` needs no infinities) and
/// `N0 = (3 mu^2 + eps sigma^2)/mu^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeTriple {
    mu2: f64,
    eps_sigma2: f64,
}

impl GaugeTriple {
    /// Validating constructor.
    pub fn new(mu2: f64, eps_sigma2: f64) -> Result<Self, TransmutatorError> {
        if !(mu2 > 0.0) || !mu2.is_finite() {
            return Err(TransmutatorError::InvalidGauge(format!(
                "mu^2 must be positive and finite, got {mu2}"
            )));
        }
        if eps_sigma2 == 0.0 || !eps_sigma2.is_finite() {
            return Err(TransmutatorError::InvalidGauge(format!(
                "eps*sigma^2 must be nonzero and finite, got {eps_sigma2}"
            )));
        }
        Ok(GaugeTriple { mu2, eps_sigma2 })
    }

    /// The gauge choice `eps sigma^2 = -mu^2` at which all dipole terms
    /// cancel.
    pub fn feynman(mu2: f64) -> Result<Self, TransmutatorError> {
        GaugeTriple::new(mu2, -mu2)
    }

    /// Normalization `mu^2`.
    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// Gauge-fixing combination `eps sigma^2`.
    pub fn eps_sigma2(&self) -> f64 {
        self.eps_sigma2
    }

    /// Dipole strength `1/M0 = -(mu^2 + eps sigma^2)/mu^2`; zero exactly at
    /// the Feynman point.
    pub fn m0_inv(&self) -> f64 {
        -(self.mu2 + self.eps_sigma2) / self.mu2
    }

    /// Off-diagonal lightlike weight `N0 = (3 mu^2 + eps sigma^2)/mu^2`;
    /// equals 2 at the Feynman point.
    pub fn n0(&self) -> f64 {
        (3.0 * self.mu2 + self.eps_sigma2) / self.mu2
    }

    /// Whether this is exactly the Feynman point.
    pub fn is_feynman(&self) -> bool {
        self.eps_sigma2 == -self.mu2
    }
}

/// Weyl boost `s(q,m) = sqrt((q0+m)/2m) [1 + sigma.q/(q0+m)]`: the
/// `SL(2,C)/SU(2)` coset representative taking the rest momentum to `q`.
///
/// Hermitian, positive definite, `det = 1`, and `s s^dagger = slash(q)/m`.
pub fn weyl_boost(p: &MassiveMomentum) -> Matrix2<Complex64> {
    let (m, q0) = (p.m(), p.q0());
    let norm = ((q0 + m) / (2.0 * m)).sqrt();
    let core = Matrix2::identity() + sigma_dot(p.q()) / c(q0 + m, 0.0);
    core * c(norm, 0.0)
}

/// Closed-form inverse boost `s(q,m)^{-1} = sqrt((q0+m)/2m) [1 - sigma.q/(q0+m)]`.
pub fn weyl_boost_inverse(p: &MassiveMomentum) -> Matrix2<Complex64> {
    let (m, q0) = (p.m(), p.q0());
    let norm = ((q0 + m) / (2.0 * m)).sqrt();
    let core = Matrix2::identity() - sigma_dot(p.q()) / c(q0 + m, 0.0);
    core * c(norm, 0.0)
}

/// Vector boost `Lambda(q,m) = (1/m) [[q0, q],[q, m delta + q q/(q0+m)]]`,
/// the `SO+(1,3)` image of [`weyl_boost`]. Symmetric; maps `(m,0,0,0)` to `q`.
pub fn lorentz_boost(p: &MassiveMomentum) -> Matrix4<f64> {
    let (m, q0, q) = (p.m(), p.q0(), p.q());
    let mut out = Matrix4::zeros();
    out[(0, 0)] = q0 / m;
    for a in 0..3 {
        out[(0, a + 1)] = q[a] / m;
        out[(a + 1, 0)] = q[a] / m;
        for b in 0..3 {
            let delta = if a == b { 1.0 } else { 0.0 };
            out[(a + 1, b + 1)] = delta + q[a] * q[b] / (m * (q0 + m));
        }
    }
    out
}

/// Spin-1 projector with both indices up: `P^{kj} = -eta^{kj} + q^k q^j / m^2`.
///
/// Annihilates `q` under the `eta` contraction (`P^{kj} eta_{jl} q^l = 0`)
/// and reproduces the boost sandwich `Lambda (m^2 delta) Lambda^T` on the
/// spatial block.
pub fn spin1_projector(p: &MassiveMomentum) -> Matrix4<f64> {
    let q = p.four_vector().as_vector4();
    -MetricForm::Eta.matrix() + q * q.transpose() / (p.m() * p.m())
}

/// Mixed-index form of the spin-1 projector: the idempotent
/// `Pi^k_l = delta^k_l - q^k q_l / m^2` of trace 3 projecting onto the
/// `eta`-orthogonal complement of `q`.
///
/// Note the sign: the literal contraction `P^{kj} eta_{jl}` of
/// [`spin1_projector`] with `eta = diag(1,-1,-1,-1)` equals `-Pi` and squares
/// to *minus* itself; the genuine projector is this one.
pub fn spin1_projector_mixed(p: &MassiveMomentum) -> Matrix4<f64> {
    -spin1_projector(p) * MetricForm::Eta.matrix()
}

/// Helicity projectors `p±(q) = (1/2)[1 ± sigma.q/q0]` for a lightlike
/// momentum: hermitian, idempotent, rank one, summing to the identity.
pub fn helicity_projectors(q: &LightlikeMomentum) -> (Matrix2<Complex64>, Matrix2<Complex64>) {
    let unit = sigma_dot(q.q()) / c(q.q0(), 0.0);
    let half = c(0.5, 0.0);
    (
        (Matrix2::identity() + unit) * half,
        (Matrix2::identity() - unit) * half,
    )
}

/// Witt rotation in `SU(2)`:
/// `u(q) = (1/sqrt(2 q0 (q0+q3))) [[q0+q3, -q1+i q2],[q1+i q2, q0+q3]]`,
/// rotating the z-axis into `qhat`. Unitary with `det = 1`; diagonalizes the
/// helicity projectors: `u (1±sigma3)/2 u^dagger = p±(q)`.
///
/// The chart degenerates for `q` along `-z`; see [`CHART_TOL`].
pub fn witt_rotation_su2(q: &LightlikeMomentum) -> Result<Matrix2<Complex64>, TransmutatorError> {
    q.require_chart()?;
    let (q0, qs) = (q.q0(), q.q());
    let n = 1.0 / (2.0 * q0 * (q0 + qs.z)).sqrt();
    Ok(Matrix2::new(
        c(q0 + qs.z, 0.0),
        c(-qs.x, qs.y),
        c(qs.x, qs.y),
        c(q0 + qs.z, 0.0),
    ) * c(n, 0.0))
}

/// Witt rotation acting on four-vectors: identity on the time component,
/// the `SO(3)` rotation taking `zhat` to `qhat` on space. Transcribed closed
/// form; equals `vector_rep(witt_rotation_su2(q))`.
pub fn witt_rotation_so3(q: &LightlikeMomentum) -> Result<Matrix4<f64>, TransmutatorError> {
    q.require_chart()?;
    let (q0, qs) = (q.q0(), q.q());
    let (q1, q2, q3) = (qs.x, qs.y, qs.z);
    let a = 1.0 / (q0 * (q0 + q3));
    let spatial = Matrix3::new(
        1.0 - q1 * q1 * a,
        -q1 * q2 * a,
        q1 / q0,
        -q1 * q2 * a,
        1.0 - q2 * q2 * a,
        q2 / q0,
        -q1 / q0,
        -q2 / q0,
        q3 / q0,
    );
    let mut out = Matrix4::identity();
    out.fixed_view_mut::<3, 3>(1, 1).copy_from(&spatial);
    Ok(out)
}

/// Constant change of basis `w` between the Witt basis (lightlike pair plus
/// transverse plane) and the time-space basis: a 45-degree rotation in the
/// 0-3 plane, orthogonal, with `w^T eta w = iota`.
pub fn witt_basis_change() -> Matrix4<f64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Matrix4::new(
        r, 0.0, 0.0, -r, //
        0.0, 1.0, 0.0, 0.0, //
        0.0, 0.0, 1.0, 0.0, //
        r, 0.0, 0.0, r,
    )
}

/// Sylvester-Witt transmutator `H(q) = O(q) w`, transcribed closed form:
///
/// ```text
///            [ q0/sqrt2   0                    0                    -q0/sqrt2 ]
/// H = (1/q0) [ q1/sqrt2   q0 - q1^2/(q0+q3)    -q1 q2/(q0+q3)        q1/sqrt2 ]
///            [ q2/sqrt2   -q1 q2/(q0+q3)       q0 - q2^2/(q0+q3)     q2/sqrt2 ]
///            [ q3/sqrt2   -q1                  -q2                   q3/sqrt2 ]
/// ```
///
/// Carries the Witt form into the time-space form: `H iota H^T = eta` and
/// `H^T eta H = iota`. Column 0 is `q / (sqrt2 q0)`.
///
/// (The middle 2x2 block is `O(q)`'s and hence symmetric: the rotation axis
/// taking `zhat` to `qhat` is perpendicular to `zhat`, so its Rodrigues form
/// has equal (1,2) and (2,1) entries.)
pub fn sylvester_witt(q: &LightlikeMomentum) -> Result<Matrix4<f64>, TransmutatorError> {
    q.require_chart()?;
    let (q0, qs) = (q.q0(), q.q());
    let (q1, q2, q3) = (qs.x, qs.y, qs.z);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let d = q0 + q3;
    Ok(Matrix4::new(
        q0 * r,
        0.0,
        0.0,
        -q0 * r,
        q1 * r,
        q0 - q1 * q1 / d,
        -q1 * q2 / d,
        q1 * r,
        q2 * r,
        -q1 * q2 / d,
        q0 - q2 * q2 / d,
        q2 * r,
        q3 * r,
        -q1,
        -q2,
        q3 * r,
    ) / q0)
}

/// The same transmutator built by composition, `O(q) * w`; the verification
/// suite checks this against the transcribed [`sylvester_witt`].
pub fn sylvester_witt_composed(q: &LightlikeMomentum) -> Result<Matrix4<f64>, TransmutatorError> {
    Ok(witt_rotation_so3(q)? * witt_basis_change())
}

/// `sqrt(m/2q0(m)) * s(q,m)` for the massive momentum with the same spatial
/// part; converges to `p+(q)` as `m -> 0`. Used by the limit checks.
pub fn scaled_boost_toward_lightlike(
    q: &LightlikeMomentum,
    m: f64,
) -> Result<Matrix2<Complex64>, TransmutatorError> {
    let p = MassiveMomentum::new(m, q.q())?;
    Ok(weyl_boost(&p) * c((m / (2.0 * p.q0())).sqrt(), 0.0))
}

/// `vector_rep` lifted to a `Result` in this module's error type.
pub fn vector_rep_checked(s: &Matrix2<Complex64>) -> Result<Matrix4<f64>, TransmutatorError> {
    Ok(vector_rep(s)?)
}

/// Helper: `slash(q)/m` target for the `s s^dagger` identity.
pub fn slash_over_m(p: &MassiveMomentum) -> Matrix2<Complex64> {
    slash(p.four_vector(), PauliVector::Rho) / c(p.m(), 0.0)
}
