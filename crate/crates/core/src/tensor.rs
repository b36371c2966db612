//! Index conventions, complex four-vectors, complex-orthogonal maps, and the
//! plane-wave rule that turns differential operators into wavevector arithmetic.
//!
//! Conventions used throughout the crate:
//!
//! * Components are 0-indexed in code; component 3 is the temporal one
//!   (`x4 = ict`), so a physically real spacetime point has real components
//!   0..2 and a purely imaginary component 3.
//! * The metric is the Kronecker delta: `dot(u, v) = Σ u_a v_a` with no
//!   conjugation and no signs. All raising/lowering is trivial.
//! * Under the plane-wave ansatz `f(x) = f0 · exp(i n·x)` the derivative
//!   along axis `a` acts as multiplication by `i·n_a`, and its inverse as
//!   division by `i·n_a`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The imaginary unit.
pub const IM: C64 = C64::new(0.0, 1.0);

/// Default relative tolerance for identity residuals (double precision with
/// at most a few chained contractions).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Components below this magnitude count as zero for regularity checks.
pub const REGULARITY_EPS: f64 = 1e-12;

#[inline]
pub(crate) fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// A complex four-vector in the `x4 = ict` convention.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub fn new(components: [C64; 4]) -> Self {
        FourVector(components)
    }

    /// Builds a four-vector from real components.
    pub fn from_reals(components: [f64; 4]) -> Self {
        FourVector(components.map(|x| c64(x, 0.0)))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Euclidean-form dot product `Σ u_a v_a` (bilinear, no conjugation).
    pub fn dot(&self, other: &FourVector) -> C64 {
        (0..4).map(|a| self.0[a] * other.0[a]).sum()
    }

    /// Root sum of squared magnitudes.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True when the spatial components are real and the temporal one purely
    /// imaginary, to tolerance `tol` relative to the vector norm.
    pub fn is_physical(&self, tol: f64) -> bool {
        let scale = self.norm().max(f64::MIN_POSITIVE);
        self.0[..3].iter().all(|z| z.im.abs() <= tol * scale) && self.0[3].re.abs() <= tol * scale
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = C64;
    fn index(&self, index: usize) -> &C64 {
        &self.0[index]
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;
    fn add(self, other: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|a| self.0[a] + other.0[a]))
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;
    fn sub(self, other: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|a| self.0[a] - other.0[a]))
    }
}

impl std::ops::Mul<C64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: C64) -> FourVector {
        FourVector(self.0.map(|z| z * s))
    }
}

/// `dot(u, v) = Σ u_a v_a`, symmetric and bilinear.
pub fn dot(u: &FourVector, v: &FourVector) -> C64 {
    u.dot(v)
}

/// The Fourier dual of a spacetime point: carries the rule `∂/∂x^a ↦ i·n_a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveVector {
    pub n: FourVector,
}

impl WaveVector {
    pub fn new(n: FourVector) -> Self {
        WaveVector { n }
    }

    pub fn from_reals(components: [f64; 4]) -> Self {
        WaveVector {
            n: FourVector::from_reals(components),
        }
    }

    pub fn components(&self) -> &[C64; 4] {
        &self.n.0
    }

    /// Spatial part `(n1, n2, n3)`.
    pub fn spatial(&self) -> [C64; 3] {
        [self.n[0], self.n[1], self.n[2]]
    }

    /// The invariant `n·n`; the d'Alembertian `−X_iX^i` acts as multiplication
    /// by this scalar on plane waves.
    pub fn n_dot_n(&self) -> C64 {
        self.n.dot(&self.n)
    }

    pub fn norm(&self) -> f64 {
        self.n.norm()
    }

    /// Regular means all four components nonzero and `n·n` nonzero, so every
    /// rational operator expression at this wavevector is well-defined.
    pub fn is_regular(&self) -> bool {
        self.n.0.iter().all(|z| z.norm() > REGULARITY_EPS) && self.n_dot_n().norm() > REGULARITY_EPS
    }

    pub(crate) fn require_regular(&self) -> crate::Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(crate::Error::NonRegularWavevector(format!(
                "components {:?}, n·n = {}",
                self.components(),
                self.n_dot_n()
            )))
        }
    }

    pub fn scale(&self, s: C64) -> WaveVector {
        WaveVector { n: self.n * s }
    }
}

/// Plane-wave image of the derivative along axis `a` (0-indexed): `i·n_a·f0`.
pub fn fourier_diff(a: usize, n: &WaveVector, f0: C64) -> C64 {
    IM * n.n[a] * f0
}

/// Plane-wave image of the inverse derivative (indefinite integral) along
/// axis `a`: division by `i·n_a`. Requires a nonzero component.
pub fn fourier_integrate(a: usize, n: &WaveVector, f0: C64) -> crate::Result<C64> {
    if n.n[a].norm() < REGULARITY_EPS {
        return Err(crate::Error::NonRegularWavevector(format!(
            "component {a} vanishes; the inverse derivative is undefined"
        )));
    }
    Ok(f0 / (IM * n.n[a]))
}

/// Flattens a 0-indexed pair `(a, b)` into `0..16`, row-major.
#[inline]
pub fn flatten(a: usize, b: usize) -> usize {
    debug_assert!(a < 4 && b < 4);
    4 * a + b
}

/// Inverse of [`flatten`].
#[inline]
pub fn unflatten(i: usize) -> (usize, usize) {
    debug_assert!(i < 16);
    (i / 4, i % 4)
}

/// A complex-orthogonal 4×4 map: `T·Tᵀ = I` in the ict convention.
///
/// Spatial rotations have real entries; boosts mix a spatial axis with the
/// temporal one through entries `{cosh χ, ±i·sinh χ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzMap {
    t: [[C64; 4]; 4],
}

impl LorentzMap {
    pub fn identity() -> Self {
        let mut t = [[C64::default(); 4]; 4];
        for a in 0..4 {
            t[a][a] = c64(1.0, 0.0);
        }
        LorentzMap { t }
    }

    pub fn from_rows(t: [[C64; 4]; 4]) -> Self {
        LorentzMap { t }
    }

    /// Boost along a spatial axis (1..=3) with the given rapidity.
    ///
    /// On the (axis, 4) block: `T_kk = T_44 = cosh χ`, `T_k4 = i·sinh χ`,
    /// `T_4k = −i·sinh χ`; identity elsewhere.
    pub fn boost(axis: usize, rapidity: f64) -> Self {
        assert!((1..=3).contains(&axis), "boost axis must be 1..=3");
        let k = axis - 1;
        let mut map = Self::identity();
        map.t[k][k] = c64(rapidity.cosh(), 0.0);
        map.t[3][3] = c64(rapidity.cosh(), 0.0);
        map.t[k][3] = c64(0.0, rapidity.sinh());
        map.t[3][k] = c64(0.0, -rapidity.sinh());
        map
    }

    /// Right-handed rotation about a spatial axis (1..=3).
    ///
    /// `rotation(3, π/2)` maps `(1,0,0,0)` to `(0,1,0,0)`.
    pub fn rotation(axis: usize, angle: f64) -> Self {
        assert!((1..=3).contains(&axis), "rotation axis must be 1..=3");
        // the rotated plane, cyclically complementary to the axis
        let (p, q) = match axis {
            1 => (1, 2),
            2 => (2, 0),
            _ => (0, 1),
        };
        let mut map = Self::identity();
        map.t[p][p] = c64(angle.cos(), 0.0);
        map.t[q][q] = c64(angle.cos(), 0.0);
        map.t[p][q] = c64(-angle.sin(), 0.0);
        map.t[q][p] = c64(angle.sin(), 0.0);
        map
    }

    pub fn entry(&self, a: usize, b: usize) -> C64 {
        self.t[a][b]
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LorentzMap) -> LorentzMap {
        let mut t = [[C64::default(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                t[a][b] = (0..4).map(|k| self.t[a][k] * other.t[k][b]).sum();
            }
        }
        LorentzMap { t }
    }

    /// Inverse map; for a complex-orthogonal matrix this is the plain transpose.
    pub fn inverse(&self) -> LorentzMap {
        let mut t = [[C64::default(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                t[a][b] = self.t[b][a];
            }
        }
        LorentzMap { t }
    }

    /// Transforms a four-vector: `v̂ = T·v`.
    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|a| {
            (0..4).map(|i| self.t[a][i] * v.0[i]).sum()
        }))
    }

    /// Transforms a wavevector along with the coordinates.
    pub fn apply_wavevector(&self, n: &WaveVector) -> WaveVector {
        WaveVector {
            n: self.apply(&n.n),
        }
    }

    /// Transforms a rank-2 amplitude: `Ĥ_ab = T_a^i T_b^j H_ij`.
    pub fn apply_rank2(&self, h: &[[C64; 4]; 4]) -> [[C64; 4]; 4] {
        let mut out = [[C64::default(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = C64::default();
                for i in 0..4 {
                    for j in 0..4 {
                        acc += self.t[a][i] * self.t[b][j] * h[i][j];
                    }
                }
                out[a][b] = acc;
            }
        }
        out
    }

    /// Frobenius norm of `T·Tᵀ − I`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let e: C64 = (0..4).map(|k| self.t[a][k] * self.t[b][k]).sum();
                acc += (e - c64(delta(a, b), 0.0)).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn determinant(&self) -> C64 {
        let m = nalgebra::Matrix4::from_fn(|a, b| self.t[a][b]);
        m.determinant()
    }
}

/// Deterministic sampler for regular wavevectors and random orthogonal maps.
pub struct WaveVectorSampler {
    rng: ChaCha8Rng,
}

impl WaveVectorSampler {
    pub fn new(seed: u64) -> Self {
        WaveVectorSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn signed_magnitude(&mut self) -> f64 {
        let mag = self.rng.random_range(0.5..4.0);
        if self.rng.random_bool(0.5) {
            mag
        } else {
            -mag
        }
    }

    /// Regular wavevector with real components; every |n_a| lies in [0.5, 4],
    /// so n·n ≥ 1 automatically.
    pub fn real(&mut self) -> WaveVector {
        let n = FourVector(std::array::from_fn(|_| c64(self.signed_magnitude(), 0.0)));
        let w = WaveVector { n };
        debug_assert!(w.is_regular());
        w
    }

    /// Regular wavevector with real spatial components and a purely imaginary
    /// temporal component, rejection-sampled so that |n·n| > 0.1.
    pub fn complex_temporal(&mut self) -> WaveVector {
        loop {
            let mut n = FourVector(std::array::from_fn(|_| c64(self.signed_magnitude(), 0.0)));
            n.0[3] = c64(0.0, n.0[3].re);
            let w = WaveVector { n };
            if w.n_dot_n().norm() > 0.1 {
                return w;
            }
        }
    }

    /// Alternates between the real and complex-temporal families.
    pub fn mixed(&mut self) -> WaveVector {
        if self.rng.random_bool(0.5) {
            self.real()
        } else {
            self.complex_temporal()
        }
    }

    /// Random three-amplitude with components in the unit box.
    pub fn amplitude3(&mut self) -> [C64; 3] {
        std::array::from_fn(|_| {
            c64(
                self.rng.random_range(-1.0..1.0),
                self.rng.random_range(-1.0..1.0),
            )
        })
    }

    /// Random four-amplitude with components in the unit box.
    pub fn amplitude4(&mut self) -> [C64; 4] {
        std::array::from_fn(|_| {
            c64(
                self.rng.random_range(-1.0..1.0),
                self.rng.random_range(-1.0..1.0),
            )
        })
    }

    /// Random orthogonal map: a boost with |rapidity| ≤ `max_rapidity`
    /// composed with two rotations, axes chosen at random.
    pub fn lorentz_map(&mut self, max_rapidity: f64) -> LorentzMap {
        let boost_axis = self.rng.random_range(1..=3);
        let chi = self.rng.random_range(-max_rapidity..max_rapidity);
        let rot_axis1 = self.rng.random_range(1..=3);
        let ang1 = self.rng.random_range(-3.0..3.0);
        let rot_axis2 = self.rng.random_range(1..=3);
        let ang2 = self.rng.random_range(-3.0..3.0);
        LorentzMap::boost(boost_axis, chi)
            .compose(&LorentzMap::rotation(rot_axis1, ang1))
            .compose(&LorentzMap::rotation(rot_axis2, ang2))
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Bernoulli draw with probability `p`.
    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Regular wavevector with real components, deterministic per seed.
pub fn random_regular_wavevector(seed: u64) -> WaveVector {
    WaveVectorSampler::new(seed).real()
}

/// Regular wavevector with an imaginary temporal component, deterministic per seed.
pub fn random_regular_wavevector_complex(seed: u64) -> WaveVector {
    WaveVectorSampler::new(seed).complex_temporal()
}
