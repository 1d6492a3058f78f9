//! Minkowski-space primitives.
//!
//! Fixes the conventions used across the crate:
//!
//! - metric `eta = diag(1, -1, -1, -1)` in the time-space (Sylvester) basis;
//! - the Witt form `iota = w^T eta w`, the same bilinear form expressed in a
//!   basis of two lightlike directions plus two spacelike ones;
//! - Pauli vectors `rho = (1, sigma)` and `rhobar = (1, -sigma)` mapping real
//!   four-vectors to hermitian 2x2 matrices with `det = q.q`;
//! - the two-to-one vector representation `SL(2,C) -> SO+(1,3)`,
//!   `Lambda^k_j = (1/2) tr(rho^k s rho_j s^dagger)`.
//!
//! Components are ordered `(q^0, q^1, q^2, q^3)` with `q^0` the time (energy)
//! component.

use nalgebra::{Matrix2, Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use thiserror::Error;

/// Shorthand for a complex number with the given real and imaginary parts.
#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Errors from Minkowski-level operations.
#[derive(Debug, Error)]
pub enum MinkowskiError {
    /// `vector_rep` requires an invertible 2x2 matrix.
    #[error("singular 2x2 matrix: |det| = {det_abs:.3e} is below {threshold:.3e}")]
    Singular {
        /// Absolute value of the offending determinant.
        det_abs: f64,
        /// Rejection threshold, relative to the matrix scale.
        threshold: f64,
    },
    /// The vector representation of an invertible matrix must be real.
    #[error("vector representation has non-real entries: max |Im| = {max_im:.3e}")]
    NonReal {
        /// Largest imaginary part encountered.
        max_im: f64,
    },
    /// On-shell constructors need a valid mass or a nonzero momentum.
    #[error("invalid on-shell data: {0}")]
    OffShell(String),
}

/// Absolute/relative tolerance pair used by the verification checks.
///
/// A residual `|a - b|` passes when it is at most `abs + rel * scale`, where
/// `scale` is the larger magnitude of the two values being compared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Absolute floor.
    pub abs: f64,
    /// Relative factor.
    pub rel: f64,
}

impl Tolerance {
    /// A tolerance with the given absolute floor and relative factor.
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// Purely absolute tolerance.
    pub const fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    /// Whether `actual` agrees with `expected` under this tolerance.
    pub fn within(&self, actual: f64, expected: f64) -> bool {
        let scale = actual.abs().max(expected.abs());
        (actual - expected).abs() <= self.abs + self.rel * scale
    }

    /// Margin available to a residual of magnitude `|r|` at scale `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(1e-12, 1e-12)
    }
}

/// A real four-vector `(q^0, q^1, q^2, q^3)` in the time-space basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub f64, pub f64, pub f64, pub f64);

impl FourVector {
    /// Four-vector from explicit components.
    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        FourVector(q0, q1, q2, q3)
    }

    /// Four-vector from an energy and a spatial three-vector.
    pub fn from_parts(q0: f64, q: Vector3<f64>) -> Self {
        FourVector(q0, q.x, q.y, q.z)
    }

    /// On-shell momentum of a massive particle: `q^0 = sqrt(m^2 + |q|^2)`.
    pub fn massive_onshell(m: f64, q: Vector3<f64>) -> Result<Self, MinkowskiError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(MinkowskiError::OffShell(format!(
                "mass must be positive and finite, got {m}"
            )));
        }
        Ok(Self::from_parts((m * m + q.norm_squared()).sqrt(), q))
    }

    /// On-shell momentum of a massless particle: `q^0 = |q| > 0`.
    pub fn lightlike_onshell(q: Vector3<f64>) -> Result<Self, MinkowskiError> {
        let n = q.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(MinkowskiError::OffShell(format!(
                "lightlike momentum needs a nonzero finite spatial part, got |q| = {n}"
            )));
        }
        Ok(Self::from_parts(n, q))
    }

    /// Time (energy) component.
    pub fn t(&self) -> f64 {
        self.0
    }

    /// Spatial part as a three-vector.
    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.1, self.2, self.3)
    }

    /// Column-vector view for matrix arithmetic.
    pub fn as_vector4(&self) -> Vector4<f64> {
        Vector4::new(self.0, self.1, self.2, self.3)
    }

    /// Minkowski square `q.q` with respect to `eta`.
    pub fn norm_eta(&self) -> f64 {
        inner(*self, *self, MetricForm::Eta)
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, index: usize) -> &f64 {
        match index {
            0 => &self.0,
            1 => &self.1,
            2 => &self.2,
            3 => &self.3,
            _ => panic!("four-vector index out of range: {index}"),
        }
    }
}

impl From<Vector4<f64>> for FourVector {
    fn from(v: Vector4<f64>) -> Self {
        FourVector(v.x, v.y, v.z, v.w)
    }
}

/// The invariant bilinear form in one of its two bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricForm {
    /// Time-space basis: `diag(1, -1, -1, -1)`.
    Eta,
    /// Witt basis (lightlike pair + transverse plane): `w^T eta w`.
    Iota,
}

impl MetricForm {
    /// Matrix of the form.
    pub fn matrix(&self) -> Matrix4<f64> {
        match self {
            MetricForm::Eta => Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0)),
            // iota = w^T eta w for the 45-degree rotation w in the 0-3 plane;
            // see `transmutators::witt_basis_change`.
            MetricForm::Iota => Matrix4::new(
                0.0, 0.0, 0.0, -1.0, //
                0.0, -1.0, 0.0, 0.0, //
                0.0, 0.0, -1.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0,
            ),
        }
    }
}

/// Invariant inner product `a^T G b` in the requested basis.
pub fn inner(a: FourVector, b: FourVector, form: MetricForm) -> f64 {
    (a.as_vector4().transpose() * form.matrix() * b.as_vector4())[(0, 0)]
}

/// Pauli matrix `sigma_a`, `a = 1, 2, 3`.
pub fn sigma(a: usize) -> Matrix2<Complex64> {
    match a {
        1 => Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        2 => Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        3 => Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        _ => panic!("Pauli index out of range: {a}"),
    }
}

/// `sigma . q` for a spatial three-vector `q`.
pub fn sigma_dot(q: Vector3<f64>) -> Matrix2<Complex64> {
    Matrix2::new(
        c(q.z, 0.0),
        c(q.x, -q.y),
        c(q.x, q.y),
        c(-q.z, 0.0),
    )
}

/// The two Pauli vectors mapping four-vectors to hermitian 2x2 matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliVector {
    /// `rho_k = (1, sigma)`.
    Rho,
    /// `rhobar_k = (1, -sigma)`.
    RhoBar,
}

impl PauliVector {
    /// Component matrix `rho_k` (lower index).
    pub fn component(&self, k: usize) -> Matrix2<Complex64> {
        match (self, k) {
            (_, 0) => Matrix2::identity(),
            (PauliVector::Rho, a @ 1..=3) => sigma(a),
            (PauliVector::RhoBar, a @ 1..=3) => -sigma(a),
            _ => panic!("Pauli-vector index out of range: {k}"),
        }
    }
}

/// Slash map `rho_k q^k` (or `rhobar_k q^k`): a hermitian 2x2 matrix with
/// `det = q.q`.
pub fn slash(q: FourVector, v: PauliVector) -> Matrix2<Complex64> {
    let s = sigma_dot(q.spatial());
    let unit = Matrix2::identity() * c(q.0, 0.0);
    match v {
        PauliVector::Rho => unit + s,
        PauliVector::RhoBar => unit - s,
    }
}

/// Antisymmetrizing contraction `A^{jk} - A^{kj}`, i.e. the action of
/// `epsilon^{jk}_{lr} = delta^j_l delta^k_r - delta^k_l delta^j_r` on a
/// rank-2 tensor.
pub fn epsilon_antisymmetrize<S>(a: &Matrix4<S>) -> Matrix4<S>
where
    S: nalgebra::Scalar + std::ops::Sub<Output = S> + Copy,
{
    Matrix4::from_fn(|j, k| a[(j, k)] - a[(k, j)])
}

/// Relative determinant threshold below which `vector_rep` rejects its input.
const SINGULAR_REL: f64 = 1e-14;

/// Vector (spin-1/2 x spin-1/2) representation of `SL(2,C)`:
/// `Lambda^k_j = (1/2) tr(rho^k s rho_j s^dagger)` with the raised index
/// `rho^k = eta^{kl} rhobar_l = (1, sigma)`.
///
/// The result is real for any invertible `s` (imaginary parts are checked to
/// 1e-12 of the matrix scale and then dropped) and satisfies
/// `vector_rep(s) == vector_rep(-s)`. For `|det s| = 1` the image lies in
/// `SO+(1,3)`.
pub fn vector_rep(s: &Matrix2<Complex64>) -> Result<Matrix4<f64>, MinkowskiError> {
    let scale = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let det = s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)];
    let threshold = SINGULAR_REL * scale * scale;
    if det.norm() <= threshold || !det.is_finite() {
        return Err(MinkowskiError::Singular {
            det_abs: det.norm(),
            threshold,
        });
    }

    let sd = s.adjoint();
    let mut out = Matrix4::zeros();
    let mut max_im: f64 = 0.0;
    let mut out_scale: f64 = 0.0;
    for j in 0..4 {
        let xj = s * PauliVector::Rho.component(j) * sd;
        for k in 0..4 {
            // rho^k numerically equals rho_k = (1, sigma).
            let entry = 0.5 * (PauliVector::Rho.component(k) * xj).trace();
            max_im = max_im.max(entry.im.abs());
            out_scale = out_scale.max(entry.re.abs());
            out[(k, j)] = entry.re;
        }
    }
    if max_im > 1e-12 * out_scale.max(1.0) {
        return Err(MinkowskiError::NonReal { max_im });
    }
    Ok(out)
}
