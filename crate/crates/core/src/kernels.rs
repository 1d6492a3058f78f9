//! Mode-level commutator and Fock kernels for three field species: the
//! massive vector field (spin split), the massless Weyl spinor (helicity
//! split), and the massless gauge vector (Witt split with its indefinite
//! lightlike doublet), together with the rest-frame/Witt-basis consistency
//! residual and a pole-vs-dipole ODE-order classifier.
//!
//! All kernels are per-momentum-mode objects: for a fixed spatial momentum
//! the field bilinear reduces to a finite matrix function of the time
//! difference `x0`. Spatial superpositions into position-space distributions
//! are out of scope.
//!
//! Time-reflection structure (used by the verification suite): commutator
//! kernels are odd and Fock kernels even under the involution natural to
//! each species — plain `x0`-reflection with transposition for the massive
//! vector (its matrix part is symmetric and time-independent), combined
//! `(x0, q) -> (-x0, -q)` reflection for the spinor and the rest-frame gauge
//! kernel (whose matrix parts depend on the momentum direction), and
//! `x0`-reflection with a swap of the two lightlike slots for the Witt-basis
//! kernel (reversing the momentum exchanges the two lightlike directions).

use crate::minkowski::{c, MetricForm};
use crate::numerics::{harmonic_residual, harmonic_squared_residual};
use crate::time_reps::KernelVariant;
use crate::transmutators::{
    helicity_projectors, lorentz_boost, spin1_projector, sylvester_witt, GaugeTriple,
    LightlikeMomentum, MassiveMomentum, TransmutatorError,
};
use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use thiserror::Error;

/// Errors from kernel constructors and the ODE-order classifier.
#[derive(Debug, Error)]
pub enum KernelError {
    /// Parameter validation failed.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Momentum or chart validation failed.
    #[error(transparent)]
    Transmutator(#[from] TransmutatorError),
    /// An entry was annihilated by neither the oscillator operator nor its
    /// square.
    #[error(
        "entry ({row},{col}) is annihilated by neither (d^2+q0^2) nor its square \
         (residuals {pole_residual:.3e}, {dipole_residual:.3e})"
    )]
    UnclassifiedEntry {
        /// Row of the offending entry.
        row: usize,
        /// Column of the offending entry.
        col: usize,
        /// Residual of the first-order (pole) test.
        pole_residual: f64,
        /// Residual of the squared-operator (dipole) test.
        dipole_residual: f64,
    },
}

/// Massive vector field parameters: mass `m > 0` and coupling `lambda`
/// with `m lambda > 0`. The product `m lambda` is the squared coupling
/// normalizing the equal-time Fock value; the default identification is
/// `lambda = m`, which makes that normalization the squared mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassiveVectorParams {
    m: f64,
    lambda: f64,
}

impl MassiveVectorParams {
    /// Validating constructor: `m > 0`, `m lambda > 0`, both finite.
    pub fn new(m: f64, lambda: f64) -> Result<Self, KernelError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(KernelError::InvalidParams(format!(
                "mass must be positive and finite, got {m}"
            )));
        }
        if !(m * lambda > 0.0) || !lambda.is_finite() {
            return Err(KernelError::InvalidParams(format!(
                "coupling must satisfy m*lambda > 0, got m={m}, lambda={lambda}"
            )));
        }
        Ok(MassiveVectorParams { m, lambda })
    }

    /// The default identification `lambda = m`.
    pub fn with_default_coupling(m: f64) -> Result<Self, KernelError> {
        MassiveVectorParams::new(m, m)
    }

    /// Mass `m`.
    pub fn mass(&self) -> f64 {
        self.m
    }

    /// Coupling `lambda`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Squared coupling `m lambda` (the equal-time Fock normalization).
    pub fn coupling_squared(&self) -> f64 {
        self.m * self.lambda
    }
}

/// Massive vector mode kernel in both shapes: the 3x3 spin block and its
/// 4x4 boost embedding.
#[derive(Clone, Copy, Debug)]
pub struct MassiveVectorMode {
    /// Spin-space block `m lambda delta^{ab} f(x0 q0)` with `f = i sin`
    /// (commutator) or `cos` (Fock).
    pub spin_block: Matrix3<Complex64>,
    /// Boost embedding `Lambda (0 (+) spin_block) Lambda^T`; equals
    /// `m lambda f(x0 q0) (-eta + q q / m^2)`.
    pub embedded: Matrix4<Complex64>,
}

fn mode_scalar(x0: f64, q0: f64, variant: KernelVariant) -> Complex64 {
    let (s, co) = (q0 * x0).sin_cos();
    match variant {
        KernelVariant::Commutator => c(0.0, s),
        KernelVariant::Fock => c(co, 0.0),
    }
}

/// Massive vector mode kernel at time difference `x0` for spatial momentum
/// `q`: spin block `m lambda delta^{ab} i sin(q0 x0)` (commutator variant)
/// or `m lambda delta^{ab} cos(q0 x0)` (Fock variant), with
/// `q0 = sqrt(m^2 + |q|^2)`, plus its embedding by the vector boost. The
/// time row/column of the spin block are padded with zeros before the
/// sandwich, so at `q = 0` the embedded form is `diag(0, spin_block)`.
pub fn massive_vector_mode(
    x0: f64,
    p: &MassiveVectorParams,
    q: Vector3<f64>,
    variant: KernelVariant,
) -> Result<MassiveVectorMode, KernelError> {
    let mom = MassiveMomentum::new(p.mass(), q)?;
    let f = mode_scalar(x0, mom.q0(), variant) * p.coupling_squared();
    let lam = lorentz_boost(&mom);
    let mut pad = Matrix4::zeros();
    pad.fixed_view_mut::<3, 3>(1, 1).copy_from(&Matrix3::identity());
    let sandwich = lam * pad * lam.transpose();
    Ok(MassiveVectorMode {
        spin_block: Matrix3::identity() * f,
        embedded: sandwich.map(|x| c(x, 0.0) * f),
    })
}

/// The four derived commutator blocks of the massive vector field, arranged
/// row-major as
///
/// ```text
/// [ <strength, field>    <field, field>     ]
/// [ <strength, strength> <field, strength>  ]
/// ```
///
/// obtained from the field-field pairing by the derivative substitution
/// `d -> (d/dx0, -i q^a)` and antisymmetrization over the field-strength
/// index pair. Only the electric components (index pair `(a, 0)`) of the
/// field strength enter; their slots occupy rows/columns 1..3 and the
/// corresponding time row/column is zero.
///
/// The substitution acts on the frequency-split form of the pairing — the
/// two mass shells `q_0 = ±q0` of the invariant measure, with the spatial
/// phase convention matching `-i q^a` — not on the boost-sandwich
/// presentation, whose time/space entries repackage shell-odd terms. This
/// is what restores the canonical equal-time structure: at `x0 = 0` only
/// the two mixed blocks survive, with spatial diagonal `q0 delta^{ab}`,
/// exactly as in the one-mode position/momentum matrix. With
/// `s = sin(q0 x0)`, `co = cos(q0 x0)`, `P = -eta + q q / m^2`:
///
/// - `(0,0)`: spatial `q0 delta^{ab} co`, time column `-i q^a s`
/// - `(0,1)`: `m lambda P^{kj} i s` (the embedded field-field kernel)
/// - `(1,0)`: `(q0^2 delta^{ab} - q^a q^b) i s / (m lambda)` (the
///   transverse projector shape of the electric-electric bracket)
/// - `(1,1)`: spatial `q0 delta^{kb} co`, time row `-i q^b s`
///
/// For each mode the scalar skeleton is the one-mode matrix
/// `[[co, (w/k) i s], [(k/w) i s, co]]` with `w = q0` and the coupling in
/// the role of `k`.
pub fn massive_vector_derived_blocks(
    x0: f64,
    p: &MassiveVectorParams,
    q: Vector3<f64>,
) -> Result<[[Matrix4<Complex64>; 2]; 2], KernelError> {
    let mom = MassiveMomentum::new(p.mass(), q)?;
    let q0 = mom.q0();
    let proj = spin1_projector(&mom);
    let (s, co) = (q0 * x0).sin_cos();
    let ml = p.coupling_squared();

    let b01 = proj.map(|x| c(0.0, x * s * ml));

    let mut b00 = Matrix4::zeros();
    let mut b11 = Matrix4::zeros();
    let mut b10 = Matrix4::zeros();
    for a in 0..3 {
        b00[(a + 1, 0)] = c(0.0, -q[a] * s);
        b11[(0, a + 1)] = c(0.0, -q[a] * s);
        for b in 0..3 {
            let diag = if a == b { q0 * co } else { 0.0 };
            b00[(a + 1, b + 1)] = c(diag, 0.0);
            b11[(a + 1, b + 1)] = c(diag, 0.0);
            let trans = if a == b { q0 * q0 - q[a] * q[b] } else { -q[a] * q[b] };
            b10[(a + 1, b + 1)] = c(0.0, trans * s / ml);
        }
    }

    Ok([[b00, b01], [b10, b11]])
}

/// Which bilinear the spinor kernel packages. For a fermionic field the
/// state-independent bracket is the anticommutator; the commutator is a
/// Fock expectation value.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum SpinorVariant {
    /// Canonical anticommutator kernel; equals the identity at `x0 = 0`.
    Anticommutator,
    /// Fock-state commutator kernel; equals `sigma.q / q0` at `x0 = 0`.
    Commutator,
}

/// Massless Weyl spinor mode kernel
/// `K(x0) = p+(q) e^{i x0 q0} ± p-(q) e^{-i x0 q0}` with `q0 = |q|`:
/// `+` for the anticommutator, `-` for the Fock commutator.
///
/// The relative sign is fixed by integrating the frequency component of the
/// invariant measure over the two mass-shell roots `q_0 = ±q0`: the Pauli
/// pairing `q_0 1 + sigma.q` evaluates to `2 q0 p+(q)` at the positive root
/// and `-2 q0 p-(q)` at the negative root, so the plain measure (Fock
/// commutator) yields `p+ e^{+} - p- e^{-}` while the energy-sign-weighted
/// measure (anticommutator) flips the second term to `p+ e^{+} + p- e^{-}`.
/// Both variants solve the mode Weyl equation `dK/dx0 = i (sigma.q) K`.
pub fn massless_spinor_mode(
    x0: f64,
    q: &LightlikeMomentum,
    variant: SpinorVariant,
) -> Matrix2<Complex64> {
    let (pp, pm) = helicity_projectors(q);
    let ep = Complex64::from_polar(1.0, x0 * q.q0());
    let em = ep.conj();
    match variant {
        SpinorVariant::Anticommutator => pp * ep + pm * em,
        SpinorVariant::Commutator => pp * ep - pm * em,
    }
}

/// Rest-frame commutator kernel of the massless gauge vector field for
/// momentum `q` (`q0 = |q|`), gauge data `g`:
///
/// ```text
/// K^{kj} = -mu^2 eta^{kj} i sin(x0 q0)
///          - (mu^2 + eps sigma^2)/2 * D^{kj},
/// D^{00}   = i (x0 q0 cos + sin),
/// D^{0a}   = D^{a0} = x0 q^a sin,
/// D^{ab}   = (q^a q^b / q0^2) i (x0 q0 cos - sin),
/// ```
///
/// all trig arguments `x0 q0`. The pole part (first term) is annihilated by
/// `(d^2/dx0^2 + q0^2)`; the dipole part `D` only by its square. The whole
/// kernel vanishes at `x0 = 0`, and at the Feynman point
/// `eps sigma^2 = -mu^2` it degenerates to the pure pole `-mu^2 eta i sin`.
pub fn massless_vector_rest_mode(
    x0: f64,
    q: &LightlikeMomentum,
    g: &GaugeTriple,
) -> Matrix4<Complex64> {
    let q0 = q.q0();
    let qs = q.q();
    let (s, co) = (q0 * x0).sin_cos();
    let eta = MetricForm::Eta.matrix();
    let pole = eta.map(|e| c(0.0, -g.mu2() * e * s));
    let pre = 0.5 * (g.mu2() + g.eps_sigma2());
    let mut dip = Matrix4::zeros();
    dip[(0, 0)] = c(0.0, x0 * q0 * co + s);
    for a in 0..3 {
        let d0a = c(x0 * qs[a] * s, 0.0);
        dip[(0, a + 1)] = d0a;
        dip[(a + 1, 0)] = d0a;
        for b in 0..3 {
            dip[(a + 1, b + 1)] = c(0.0, qs[a] * qs[b] / (q0 * q0) * (x0 * q0 * co - s));
        }
    }
    pole - dip * c(pre, 0.0)
}

/// The two 2x2 blocks of the massless vector commutator kernel in the Witt
/// basis.
#[derive(Clone, Copy, Debug)]
pub struct WittBlocks {
    /// Transverse (polarized) block on slots 1, 2: `mu^2 i sin(x0 q0) 1`.
    /// Independent of the gauge-fixing parameter.
    pub transverse: Matrix2<Complex64>,
    /// Lightlike (unpolarized) block on slots 0, 3:
    /// `(mu^2/2) [[i x0 q0 (1/M0) e^{-i x0 q0}, N0 i sin],
    ///           [N0 i sin, i x0 q0 (1/M0) e^{+i x0 q0}]]`.
    pub lightlike: Matrix2<Complex64>,
}

/// Witt-basis blocks of the massless vector commutator kernel at time
/// difference `x0` and energy `q0 > 0`. The lightlike block carries the
/// indefinite nondecomposable time representation (dipole strength `1/M0`);
/// at the Feynman point it degenerates to `mu^2 i sin [[0,1],[1,0]]`.
pub fn massless_vector_witt_blocks(
    x0: f64,
    q0: f64,
    g: &GaugeTriple,
) -> Result<WittBlocks, KernelError> {
    if !(q0 > 0.0) || !q0.is_finite() {
        return Err(KernelError::InvalidParams(format!(
            "energy must be positive and finite, got {q0}"
        )));
    }
    let s = (q0 * x0).sin();
    let mu2 = g.mu2();
    let transverse = Matrix2::identity() * c(0.0, mu2 * s);
    let ep = Complex64::from_polar(1.0, x0 * q0);
    let em = ep.conj();
    let diag = c(0.0, x0 * q0 * g.m0_inv());
    let off = c(0.0, g.n0() * s);
    let lightlike = Matrix2::new(diag * em, off, off, diag * ep) * c(0.5 * mu2, 0.0);
    Ok(WittBlocks { transverse, lightlike })
}

/// Fock companion of the transverse Witt block: `mu^2 cos(x0 q0) 1`, whose
/// equal-time value `mu^2 delta` normalizes the polarization invariant.
pub fn transverse_fock_block(
    x0: f64,
    q0: f64,
    g: &GaugeTriple,
) -> Result<Matrix2<Complex64>, KernelError> {
    if !(q0 > 0.0) || !q0.is_finite() {
        return Err(KernelError::InvalidParams(format!(
            "energy must be positive and finite, got {q0}"
        )));
    }
    Ok(Matrix2::identity() * c(g.mu2() * (q0 * x0).cos(), 0.0))
}

/// The full 4x4 Witt-basis kernel: lightlike block on slots {0, 3} (in that
/// order), transverse block on slots {1, 2}.
pub fn witt_kernel(x0: f64, q0: f64, g: &GaugeTriple) -> Result<Matrix4<Complex64>, KernelError> {
    let blocks = massless_vector_witt_blocks(x0, q0, g)?;
    let mut w = Matrix4::zeros();
    w[(0, 0)] = blocks.lightlike[(0, 0)];
    w[(0, 3)] = blocks.lightlike[(0, 1)];
    w[(3, 0)] = blocks.lightlike[(1, 0)];
    w[(3, 3)] = blocks.lightlike[(1, 1)];
    w[(1, 1)] = blocks.transverse[(0, 0)];
    w[(1, 2)] = blocks.transverse[(0, 1)];
    w[(2, 1)] = blocks.transverse[(1, 0)];
    w[(2, 2)] = blocks.transverse[(1, 1)];
    Ok(w)
}

/// Max-norm residual of the basis-change identity between the Witt-basis
/// kernel and the rest-frame kernel: `|H W(x0) H^T - K(x0, q)|_max` with
/// `H = O(q) w`. This is the central cross-check tying the lightlike
/// doublet, the transverse doublet, and the rest-frame dipole structure
/// together; it is expected below 1e-9 generically and at rounding level at
/// the Feynman point.
pub fn witt_sylvester_residual(
    x0: f64,
    q: &LightlikeMomentum,
    g: &GaugeTriple,
) -> Result<f64, KernelError> {
    let h = sylvester_witt(q)?;
    let w = witt_kernel(x0, q.q0(), g)?;
    let hc = h.map(|x| c(x, 0.0));
    let sandwich = hc * w * hc.transpose();
    let rest = massless_vector_rest_mode(x0, q, g);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((sandwich[(i, j)] - rest[(i, j)]).norm());
        }
    }
    Ok(worst)
}

/// Field species covered by [`ModeKernel`].
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Species {
    /// Massive vector, 4x4 boost-embedded form.
    MassiveVector,
    /// Massive vector, 3x3 spin block.
    MassiveVectorSpin,
    /// Massless Weyl spinor, 2x2.
    MasslessSpinor,
    /// Massless gauge vector in the rest frame, 4x4.
    MasslessVectorRest,
    /// Massless gauge vector in the Witt basis, 4x4.
    MasslessVectorWitt,
}

/// Which bilinear a [`ModeKernel`] packages: `Canonical` is the
/// state-independent bracket (commutator for bosons, anticommutator for the
/// spinor), `Fock` the vacuum expectation of the opposite bracket.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum ModeVariant {
    /// State-independent bracket.
    Canonical,
    /// Fock expectation value.
    Fock,
}

/// A per-mode kernel packaged as an evaluable matrix function of the time
/// difference, with its species, variant, and dimension tags. Canonical
/// bosonic kernels vanish at `x0 = 0`; the canonical spinor kernel equals
/// the identity there.
pub struct ModeKernel {
    species: Species,
    variant: ModeVariant,
    dim: usize,
    eval: Box<dyn Fn(f64) -> DMatrix<Complex64> + Send + Sync>,
}

impl ModeKernel {
    /// Evaluate the kernel at time difference `x0`.
    pub fn evaluate(&self, x0: f64) -> DMatrix<Complex64> {
        (self.eval)(x0)
    }

    /// Species tag.
    pub fn species(&self) -> Species {
        self.species
    }

    /// Variant tag.
    pub fn variant(&self) -> ModeVariant {
        self.variant
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Massive vector kernel, 4x4 embedded form.
    pub fn massive_vector(
        p: MassiveVectorParams,
        q: Vector3<f64>,
        variant: KernelVariant,
    ) -> Result<Self, KernelError> {
        MassiveMomentum::new(p.mass(), q)?;
        let tag = match variant {
            KernelVariant::Commutator => ModeVariant::Canonical,
            KernelVariant::Fock => ModeVariant::Fock,
        };
        Ok(ModeKernel {
            species: Species::MassiveVector,
            variant: tag,
            dim: 4,
            eval: Box::new(move |x0| {
                let m = massive_vector_mode(x0, &p, q, variant)
                    .expect("validated parameters")
                    .embedded;
                DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
            }),
        })
    }

    /// Massive vector kernel, 3x3 spin block.
    pub fn massive_vector_spin(
        p: MassiveVectorParams,
        q: Vector3<f64>,
        variant: KernelVariant,
    ) -> Result<Self, KernelError> {
        MassiveMomentum::new(p.mass(), q)?;
        let tag = match variant {
            KernelVariant::Commutator => ModeVariant::Canonical,
            KernelVariant::Fock => ModeVariant::Fock,
        };
        Ok(ModeKernel {
            species: Species::MassiveVectorSpin,
            variant: tag,
            dim: 3,
            eval: Box::new(move |x0| {
                let m = massive_vector_mode(x0, &p, q, variant)
                    .expect("validated parameters")
                    .spin_block;
                DMatrix::from_fn(3, 3, |i, j| m[(i, j)])
            }),
        })
    }

    /// Massless spinor kernel, 2x2.
    pub fn massless_spinor(q: LightlikeMomentum, variant: SpinorVariant) -> Self {
        let tag = match variant {
            SpinorVariant::Anticommutator => ModeVariant::Canonical,
            SpinorVariant::Commutator => ModeVariant::Fock,
        };
        ModeKernel {
            species: Species::MasslessSpinor,
            variant: tag,
            dim: 2,
            eval: Box::new(move |x0| {
                let m = massless_spinor_mode(x0, &q, variant);
                DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
            }),
        }
    }

    /// Massless vector rest-frame kernel, 4x4 (commutator).
    pub fn massless_vector_rest(q: LightlikeMomentum, g: GaugeTriple) -> Self {
        ModeKernel {
            species: Species::MasslessVectorRest,
            variant: ModeVariant::Canonical,
            dim: 4,
            eval: Box::new(move |x0| {
                let m = massless_vector_rest_mode(x0, &q, &g);
                DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
            }),
        }
    }

    /// Massless vector Witt-basis kernel, 4x4 (commutator).
    pub fn massless_vector_witt(q0: f64, g: GaugeTriple) -> Result<Self, KernelError> {
        witt_kernel(0.0, q0, &g)?;
        Ok(ModeKernel {
            species: Species::MasslessVectorWitt,
            variant: ModeVariant::Canonical,
            dim: 4,
            eval: Box::new(move |x0| {
                let m = witt_kernel(x0, q0, &g).expect("validated parameters");
                DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
            }),
        })
    }
}

/// Classification of a kernel entry by the order of the oscillator operator
/// that annihilates it.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum OdeOrder {
    /// Identically zero on the probe grid.
    Zero,
    /// Annihilated by `(d^2/dx0^2 + q0^2)`: a simple-pole contribution.
    Pole,
    /// Annihilated only by the squared operator: a dipole contribution.
    Dipole,
}

/// Classify every kernel entry as pole, dipole, or zero by finite-difference
/// annihilation tests at a fixed probe grid. Residual thresholds are `1e-5`
/// at unit scales, scaled by the entry amplitude and powers of `q0` to keep
/// the truncation/rounding balance of the stencils.
pub fn ode_order_check(
    kernel: &ModeKernel,
    q0: f64,
) -> Result<Vec<Vec<OdeOrder>>, KernelError> {
    let grid: Vec<f64> = [0.3, 0.8, 1.4, 2.1, 2.7]
        .iter()
        .map(|t| t / q0.abs().max(1.0))
        .collect();
    let n = kernel.dim();
    let mut out = vec![vec![OdeOrder::Zero; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let f = |x0: f64| kernel.evaluate(x0)[(i, j)];
            let amp = grid.iter().map(|&t| f(t).norm()).fold(0.0_f64, f64::max);
            if amp < 1e-12 * q0.abs().max(1.0) {
                *slot = OdeOrder::Zero;
                continue;
            }
            let scale = amp.max(1.0);
            let pole_res = grid
                .iter()
                .map(|&t| harmonic_residual(&f, t, q0).norm())
                .fold(0.0_f64, f64::max);
            if pole_res < 1e-5 * scale * (q0 * q0).max(1.0) {
                *slot = OdeOrder::Pole;
                continue;
            }
            let dip_res = grid
                .iter()
                .map(|&t| harmonic_squared_residual(&f, t, q0).norm())
                .fold(0.0_f64, f64::max);
            if dip_res < 1e-5 * scale * (q0 * q0).max(1.0).powi(2) {
                *slot = OdeOrder::Dipole;
            } else {
                return Err(KernelError::UnclassifiedEntry {
                    row: i,
                    col: j,
                    pole_residual: pole_res,
                    dipole_residual: dip_res,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{first_derivative, second_derivative};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_gauge(rng: &mut ChaCha8Rng) -> GaugeTriple {
        let mu2 = rng.gen_range(0.4..2.0);
        let mut eps = 0.0;
        while eps == 0.0 {
            eps = rng.gen_range(-2.0..2.0);
        }
        GaugeTriple::new(mu2, eps * mu2).unwrap()
    }

    #[test]
    fn massive_vector_mode_examples() {
        let p = MassiveVectorParams::with_default_coupling(1.0).unwrap();
        let q = Vector3::new(0.0, 0.0, 0.75);

        let k0 = massive_vector_mode(0.0, &p, q, KernelVariant::Commutator).unwrap();
        assert!(k0.spin_block.norm() < 1e-15);
        assert!(k0.embedded.norm() < 1e-15);

        let f0 = massive_vector_mode(0.0, &p, Vector3::zeros(), KernelVariant::Fock).unwrap();
        assert!((f0.spin_block - Matrix3::identity()).norm() < 1e-14);

        // q0 = 1.25; at x0 = (2 pi / 1.25)/4 the phase is pi/2.
        let x0 = 2.0 * PI / 1.25 / 4.0;
        let k = massive_vector_mode(x0, &p, q, KernelVariant::Commutator).unwrap();
        assert_abs_diff_eq!(k.spin_block[(1, 1)].im, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k.spin_block[(1, 1)].re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn embedded_form_is_projector_multiple() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let m = rng.gen_range(0.4..2.5);
            let lam = rng.gen_range(0.3..2.0);
            let p = MassiveVectorParams::new(m, lam).unwrap();
            let q = Vector3::new(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            );
            let x0: f64 = rng.gen_range(-3.0..3.0);
            for variant in [KernelVariant::Commutator, KernelVariant::Fock] {
                let mode = massive_vector_mode(x0, &p, q, variant).unwrap();
                let mom = MassiveMomentum::new(m, q).unwrap();
                let f = mode_scalar(x0, mom.q0(), variant) * p.coupling_squared();
                let oracle = spin1_projector(&mom).map(|x| c(x, 0.0) * f);
                assert!(
                    (mode.embedded - oracle).norm() < 1e-12 * (1.0 + oracle.norm()),
                    "sandwich vs projector multiple"
                );
            }
            // Rest frame: embedded = diag(0, spin block).
            let rest = massive_vector_mode(x0, &p, Vector3::zeros(), KernelVariant::Fock).unwrap();
            assert!(rest.embedded[(0, 0)].norm() < 1e-14);
            for a in 0..3 {
                assert!(
                    (rest.embedded[(a + 1, a + 1)] - rest.spin_block[(a, a)]).norm() < 1e-13
                );
            }
        }
    }

    #[test]
    fn massive_vector_equal_time_rate() {
        // d/dx0 of the commutator spin block at 0 is i q0 m lambda delta.
        let p = MassiveVectorParams::new(1.3, 0.7).unwrap();
        let q: Vector3<f64> = Vector3::new(0.4, -0.2, 0.9);
        let q0: f64 = (1.3_f64 * 1.3 + q.norm_squared()).sqrt();
        for a in 0..3 {
            let f = |x0: f64| {
                massive_vector_mode(x0, &p, q, KernelVariant::Commutator)
                    .unwrap()
                    .spin_block[(a, a)]
            };
            let fd = first_derivative(&f, 0.0, 1e-5);
            let want = c(0.0, q0 * p.coupling_squared());
            assert!((fd - want).norm() < 1e-8, "diagonal {a}");
        }
    }

    #[test]
    fn derived_blocks_structure() {
        let p = MassiveVectorParams::new(1.1, 0.9).unwrap();
        let q: Vector3<f64> = Vector3::new(0.3, 0.5, -0.4);
        let q0: f64 = (1.1_f64 * 1.1 + q.norm_squared()).sqrt();
        let blocks = massive_vector_derived_blocks(0.0, &p, q).unwrap();
        // Off-diagonal blocks vanish at equal time; the mixed pair carries
        // the canonical spatial diagonal q0 delta^{ab}.
        assert!(blocks[0][1].norm() < 1e-14);
        assert!(blocks[1][0].norm() < 1e-14);
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { c(q0, 0.0) } else { c(0.0, 0.0) };
                assert!((blocks[0][0][(a + 1, b + 1)] - want).norm() < 1e-14);
                assert!((blocks[1][1][(a + 1, b + 1)] - want).norm() < 1e-14);
            }
        }
        // Field-strength slots: time row of (0,0), time column of (1,1),
        // and both borders of (1,0) are identically zero.
        let b = massive_vector_derived_blocks(0.7, &p, q).unwrap();
        for j in 0..4 {
            assert_eq!(b[0][0][(0, j)], c(0.0, 0.0));
            assert_eq!(b[1][1][(j, 0)], c(0.0, 0.0));
            assert_eq!(b[1][0][(0, j)], c(0.0, 0.0));
            assert_eq!(b[1][0][(j, 0)], c(0.0, 0.0));
        }
        // (0,1) is the embedded field-field kernel.
        let mode = massive_vector_mode(0.7, &p, q, KernelVariant::Commutator).unwrap();
        assert!((b[0][1] - mode.embedded).norm() < 1e-13);
        // Reflection pairing: the two mixed blocks exchange under
        // (x0, q) -> (-x0, -q) with transposition; the strength-strength
        // block is odd under the same pairing.
        let br = massive_vector_derived_blocks(-0.7, &p, -q).unwrap();
        assert!((b[0][0] - br[1][1].transpose()).norm() < 1e-14);
        assert!((b[1][0] + br[1][0].transpose()).norm() < 1e-14);
    }

    /// Frequency-split form of the field-field pairing: the two mass shells
    /// q_0 = ±q0 kept separate, so that time derivatives act per shell. Its
    /// shell-even entries reproduce the embedded kernel; the shell-odd
    /// (time/space) entries carry cos instead of i sin.
    fn split_base(x0: f64, p: &MassiveVectorParams, q: Vector3<f64>) -> Matrix4<Complex64> {
        let mom = MassiveMomentum::new(p.mass(), q).unwrap();
        let q0 = mom.q0();
        let proj = spin1_projector(&mom);
        let (s, co) = (q0 * x0).sin_cos();
        let ml = p.coupling_squared();
        let mut k = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let odd = (i == 0) != (j == 0);
                k[(i, j)] = if odd {
                    c(-proj[(i, j)] * co * ml, 0.0)
                } else {
                    c(0.0, proj[(i, j)] * s * ml)
                };
            }
        }
        k
    }

    #[test]
    fn derived_blocks_match_finite_difference_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..100 {
            let m = rng.gen_range(0.5..2.0);
            let lam = rng.gen_range(0.4..1.8);
            let p = MassiveVectorParams::new(m, lam).unwrap();
            let q = Vector3::new(
                rng.gen_range(-1.2..1.2),
                rng.gen_range(-1.2..1.2),
                rng.gen_range(-1.2..1.2),
            );
            let x0: f64 = rng.gen_range(-2.5..2.5);
            let ml = p.coupling_squared();
            let blocks = massive_vector_derived_blocks(x0, &p, q).unwrap();
            let base = |t: f64, i: usize, j: usize| split_base(t, &p, q)[(i, j)];
            let dq = |a: usize| c(0.0, -q[a - 1]);

            // (0,0): -i (d0 K^{aj} - (-i q^a) K^{0j}) / (m lambda).
            for a in 1..4 {
                for j in 0..4 {
                    let d0 = first_derivative(&|t| base(t, a, j), x0, 1e-5);
                    let want = (d0 - dq(a) * base(x0, 0, j)) * c(0.0, -1.0) / c(ml, 0.0);
                    assert!(
                        (blocks[0][0][(a, j)] - want).norm() < 1e-6,
                        "(0,0) entry ({a},{j})"
                    );
                }
            }
            // (1,1): -i (d0 K^{kb} - (-i q^b) K^{k0}) / (m lambda).
            for k in 0..4 {
                for bcol in 1..4 {
                    let d0 = first_derivative(&|t| base(t, k, bcol), x0, 1e-5);
                    let want = (d0 - dq(bcol) * base(x0, k, 0)) * c(0.0, -1.0) / c(ml, 0.0);
                    assert!(
                        (blocks[1][1][(k, bcol)] - want).norm() < 1e-6,
                        "(1,1) entry ({k},{bcol})"
                    );
                }
            }
            // (1,0): -(1/(m lambda)^2) [d0 d0 K^{ab} - (-i q^b) d0 K^{a0}
            //        - (-i q^a) d0 K^{0b} + (-i q^a)(-i q^b) K^{00}].
            for a in 1..4 {
                for bcol in 1..4 {
                    let dd = second_derivative(&|t| base(t, a, bcol), x0, 1e-4);
                    let da0 = first_derivative(&|t| base(t, a, 0), x0, 1e-5);
                    let d0b = first_derivative(&|t| base(t, 0, bcol), x0, 1e-5);
                    let want = -(dd - dq(bcol) * da0 - dq(a) * d0b
                        + dq(a) * dq(bcol) * base(x0, 0, 0))
                        / c(ml * ml, 0.0);
                    assert!(
                        (blocks[1][0][(a, bcol)] - want).norm() < 1e-5,
                        "(1,0) entry ({a},{bcol})"
                    );
                }
            }
        }
    }

    #[test]
    fn spinor_mode_examples() {
        let qz = LightlikeMomentum::new(Vector3::new(0.0, 0.0, 1.0)).unwrap();
        let t = 0.9;
        let anti = massless_spinor_mode(t, &qz, SpinorVariant::Anticommutator);
        assert!((anti[(0, 0)] - Complex64::from_polar(1.0, t)).norm() < 1e-14);
        assert!((anti[(1, 1)] - Complex64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!(anti[(0, 1)].norm() < 1e-15);
        let comm = massless_spinor_mode(t, &qz, SpinorVariant::Commutator);
        assert!((comm[(1, 1)] + Complex64::from_polar(1.0, -t)).norm() < 1e-14);

        let anti0 = massless_spinor_mode(0.0, &qz, SpinorVariant::Anticommutator);
        assert!((anti0 - Matrix2::identity()).norm() < 1e-14);
    }

    #[test]
    fn spinor_mode_weyl_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let q = LightlikeMomentum::new(Vector3::new(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ));
            let q = match q {
                Ok(q) => q,
                Err(_) => continue,
            };
            let x0: f64 = rng.gen_range(-3.0..3.0);
            for variant in [SpinorVariant::Anticommutator, SpinorVariant::Commutator] {
                let sq = crate::minkowski::sigma_dot(q.q());
                let k = massless_spinor_mode(x0, &q, variant);
                let mut fd = Matrix2::zeros();
                for i in 0..2 {
                    for j in 0..2 {
                        fd[(i, j)] = first_derivative(
                            &|t| massless_spinor_mode(t, &q, variant)[(i, j)],
                            x0,
                            1e-5,
                        );
                    }
                }
                let rhs = sq * k * c(0.0, 1.0);
                assert!((fd - rhs).norm() < 1e-8, "Weyl equation residual");
            }
        }
    }

    #[test]
    fn rest_mode_examples() {
        let q = LightlikeMomentum::new(Vector3::new(0.4, -0.7, 1.1)).unwrap();
        let g = GaugeTriple::new(1.3, 0.8).unwrap();
        assert!(massless_vector_rest_mode(0.0, &q, &g).norm() < 1e-15);

        // Feynman point: pure pole -mu^2 eta i sin.
        let gf = GaugeTriple::feynman(1.3).unwrap();
        let x0 = 1.7;
        let k = massless_vector_rest_mode(x0, &q, &gf);
        let s = (q.q0() * x0).sin();
        let oracle = MetricForm::Eta.matrix().map(|e| c(0.0, -1.3 * e * s));
        assert!((k - oracle).norm() < 1e-14);

        // d/dx0 of the (0,0) entry at 0 is -i q0 (2 mu^2 + eps sigma^2).
        let f = |t: f64| massless_vector_rest_mode(t, &q, &g)[(0, 0)];
        let fd = first_derivative(&f, 0.0, 1e-5);
        let want = c(0.0, -q.q0() * (2.0 * g.mu2() + g.eps_sigma2()));
        assert!((fd - want).norm() < 1e-8);
    }

    #[test]
    fn witt_blocks_examples() {
        let g = GaugeTriple::new(1.0, 0.5).unwrap();
        let b0 = massless_vector_witt_blocks(0.0, 1.2, &g).unwrap();
        assert!(b0.transverse.norm() < 1e-15);
        assert!(b0.lightlike.norm() < 1e-15);

        // Feynman point: lightlike block = mu^2 i sin [[0,1],[1,0]].
        let gf = GaugeTriple::feynman(1.0).unwrap();
        let x0 = 0.8;
        let q0 = 1.2;
        let b = massless_vector_witt_blocks(x0, q0, &gf).unwrap();
        let s = (q0 * x0).sin();
        assert!(b.lightlike[(0, 0)].norm() < 1e-15);
        assert!(b.lightlike[(1, 1)].norm() < 1e-15);
        assert!((b.lightlike[(0, 1)] - c(0.0, s)).norm() < 1e-14);

        // Fock transverse normalization at equal time.
        let f = transverse_fock_block(0.0, q0, &g).unwrap();
        assert!((f - Matrix2::identity()).norm() < 1e-15);

        assert!(massless_vector_witt_blocks(0.1, 0.0, &g).is_err());
    }

    #[test]
    fn transverse_block_is_gauge_independent() {
        let mu2 = 1.4;
        let x0 = 1.9;
        let q0 = 0.7;
        let reference = massless_vector_witt_blocks(x0, q0, &GaugeTriple::new(mu2, 0.5 * mu2).unwrap())
            .unwrap()
            .transverse;
        for factor in [-0.5, 0.5, -2.0, 2.0] {
            let g = GaugeTriple::new(mu2, factor * mu2).unwrap();
            let b = massless_vector_witt_blocks(x0, q0, &g).unwrap().transverse;
            // Bit-identical, not merely close.
            assert_eq!(b, reference);
        }
    }

    #[test]
    fn witt_sylvester_residual_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let q = match LightlikeMomentum::new(Vector3::new(
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.2..1.5),
            )) {
                Ok(q) if q.q0() + q.q().z > 1e-3 => q,
                _ => continue,
            };
            let g = random_gauge(&mut rng);
            let x0: f64 = rng.gen_range(-3.0..3.0);
            let r = witt_sylvester_residual(x0, &q, &g).unwrap();
            assert!(r < 1e-9, "generic residual {r}");

            let gf = GaugeTriple::feynman(g.mu2()).unwrap();
            let rf = witt_sylvester_residual(x0, &q, &gf).unwrap();
            assert!(rf < 1e-12, "Feynman residual {rf}");
        }
        // Equal time: exactly zero.
        let q = LightlikeMomentum::new(Vector3::new(0.3, 0.2, 0.9)).unwrap();
        let g = GaugeTriple::new(1.0, 0.7).unwrap();
        assert_eq!(witt_sylvester_residual(0.0, &q, &g).unwrap(), 0.0);
    }

    #[test]
    fn time_reflection_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..40 {
            let x0: f64 = rng.gen_range(0.1..3.0);
            let qvec = Vector3::new(
                rng.gen_range(-1.2..1.2),
                rng.gen_range(-1.2..1.2),
                rng.gen_range(-1.2..1.2),
            );
            // Massive vector: reflection + transpose, odd (commutator) /
            // even (Fock).
            let p = MassiveVectorParams::new(rng.gen_range(0.5..2.0), rng.gen_range(0.4..1.5))
                .unwrap();
            let kc = |t: f64| massive_vector_mode(t, &p, qvec, KernelVariant::Commutator)
                .unwrap()
                .embedded;
            let kf = |t: f64| massive_vector_mode(t, &p, qvec, KernelVariant::Fock)
                .unwrap()
                .embedded;
            assert!((kc(-x0).transpose() + kc(x0)).norm() < 1e-12);
            assert!((kf(-x0).transpose() - kf(x0)).norm() < 1e-12);

            // Spinor: (x0, q) -> (-x0, -q), even (anticommutator) / odd
            // (commutator).
            if let Ok(q) = LightlikeMomentum::new(qvec) {
                let qm = LightlikeMomentum::new(-qvec).unwrap();
                let anti = massless_spinor_mode(x0, &q, SpinorVariant::Anticommutator);
                let anti_r = massless_spinor_mode(-x0, &qm, SpinorVariant::Anticommutator);
                assert!((anti_r - anti).norm() < 1e-13);
                let comm = massless_spinor_mode(x0, &q, SpinorVariant::Commutator);
                let comm_r = massless_spinor_mode(-x0, &qm, SpinorVariant::Commutator);
                assert!((comm_r + comm).norm() < 1e-13);

                // Rest-frame gauge kernel: same pairing, odd.
                let g = random_gauge(&mut rng);
                let rest = massless_vector_rest_mode(x0, &q, &g);
                let rest_r = massless_vector_rest_mode(-x0, &qm, &g);
                assert!((rest_r + rest).norm() < 1e-12);

                // Witt kernel: x0-reflection with lightlike slot swap, odd.
                let w = witt_kernel(x0, q.q0(), &g).unwrap();
                let wr = witt_kernel(-x0, q.q0(), &g).unwrap();
                let swap = {
                    let mut s = Matrix4::<f64>::zeros();
                    s[(0, 3)] = 1.0;
                    s[(3, 0)] = 1.0;
                    s[(1, 1)] = 1.0;
                    s[(2, 2)] = 1.0;
                    s.map(|x| c(x, 0.0))
                };
                assert!((swap * wr * swap + w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn ode_order_classification() {
        let p = MassiveVectorParams::with_default_coupling(1.0).unwrap();
        let q = Vector3::new(0.0, 0.0, 0.75);
        let spin = ModeKernel::massive_vector_spin(p, q, KernelVariant::Commutator).unwrap();
        let classes = ode_order_check(&spin, 1.25).unwrap();
        for (i, row) in classes.iter().enumerate() {
            for (j, cls) in row.iter().enumerate() {
                let want = if i == j { OdeOrder::Pole } else { OdeOrder::Zero };
                assert_eq!(*cls, want, "spin entry ({i},{j})");
            }
        }

        // Witt kernel, generic gauge: lightlike diagonal entries are
        // dipoles, the rest poles or zero.
        let g = GaugeTriple::new(1.0, 0.6).unwrap();
        let witt = ModeKernel::massless_vector_witt(1.1, g).unwrap();
        let classes = ode_order_check(&witt, 1.1).unwrap();
        assert_eq!(classes[0][0], OdeOrder::Dipole);
        assert_eq!(classes[3][3], OdeOrder::Dipole);
        assert_eq!(classes[0][3], OdeOrder::Pole);
        assert_eq!(classes[3][0], OdeOrder::Pole);
        assert_eq!(classes[1][1], OdeOrder::Pole);
        assert_eq!(classes[2][2], OdeOrder::Pole);
        assert_eq!(classes[0][1], OdeOrder::Zero);
        assert_eq!(classes[1][2], OdeOrder::Zero);

        // Feynman point: no dipole anywhere.
        let gf = GaugeTriple::feynman(1.0).unwrap();
        let wittf = ModeKernel::massless_vector_witt(1.1, gf).unwrap();
        let classes = ode_order_check(&wittf, 1.1).unwrap();
        for row in &classes {
            for cls in row {
                assert_ne!(*cls, OdeOrder::Dipole);
            }
        }
        // Rest-frame kernel, generic direction: dipole entries everywhere
        // the direction matrix is nonzero, and none at the Feynman point.
        let qm = LightlikeMomentum::new(Vector3::new(0.5, 0.4, 0.8)).unwrap();
        let rest = ModeKernel::massless_vector_rest(qm, g);
        let classes = ode_order_check(&rest, qm.q0()).unwrap();
        assert_eq!(classes[0][0], OdeOrder::Dipole);
        assert_eq!(classes[0][1], OdeOrder::Dipole);
        assert_eq!(classes[1][2], OdeOrder::Dipole);
        let restf = ModeKernel::massless_vector_rest(qm, gf);
        let classes = ode_order_check(&restf, qm.q0()).unwrap();
        for (i, row) in classes.iter().enumerate() {
            for (j, cls) in row.iter().enumerate() {
                let want = if i == j { OdeOrder::Pole } else { OdeOrder::Zero };
                assert_eq!(*cls, want, "Feynman rest entry ({i},{j})");
            }
        }

        // Spinor: all entries are poles for a generic direction.
        let spinor = ModeKernel::massless_spinor(qm, SpinorVariant::Anticommutator);
        let classes = ode_order_check(&spinor, qm.q0()).unwrap();
        for row in &classes {
            for cls in row {
                assert_eq!(*cls, OdeOrder::Pole);
            }
        }
    }

    #[test]
    fn mode_kernel_equal_time_invariants() {
        let p = MassiveVectorParams::new(0.9, 1.1).unwrap();
        let q = Vector3::new(0.2, -0.4, 0.6);
        let g = GaugeTriple::new(1.2, 0.9).unwrap();
        let lk = LightlikeMomentum::new(q).unwrap();

        let bosonic = [
            ModeKernel::massive_vector(p, q, KernelVariant::Commutator).unwrap(),
            ModeKernel::massive_vector_spin(p, q, KernelVariant::Commutator).unwrap(),
            ModeKernel::massless_vector_rest(lk, g),
            ModeKernel::massless_vector_witt(lk.q0(), g).unwrap(),
        ];
        for k in &bosonic {
            assert_eq!(k.variant(), ModeVariant::Canonical);
            assert!(k.evaluate(0.0).norm() < 1e-14, "{:?} at x0=0", k.species());
        }
        let spinor = ModeKernel::massless_spinor(lk, SpinorVariant::Anticommutator);
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!((spinor.evaluate(0.0) - id).norm() < 1e-14);
    }

    #[test]
    fn parameter_validation() {
        assert!(MassiveVectorParams::new(0.0, 1.0).is_err());
        assert!(MassiveVectorParams::new(1.0, 0.0).is_err());
        assert!(MassiveVectorParams::new(1.0, -0.5).is_err());
        let p = MassiveVectorParams::with_default_coupling(2.0).unwrap();
        assert_abs_diff_eq!(p.coupling_squared(), 4.0, epsilon = 1e-15);
    }
}
