//! Plane-wave mode classification and a pseudo-spectral periodic-grid evolver
//! for the source-free three-potential wave equation
//! `∂²_t A = c²(∇²A − ∇(∇·A))`.
//!
//! Per spatial Fourier mode the equation splits: the component transverse to
//! the mode oscillates at `ω = c|k|`, while the longitudinal component is
//! free of restoring force (stationary for zero initial velocity, linear in
//! time otherwise). The evolver advances every mode by this exact solution,
//! so `dt` is a sampling interval rather than a stability constraint and
//! transverse mode energy is conserved to round-off per step.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{c64, WaveVector, C64, IM};

/// Classification tolerance for plane-wave modes.
pub const MODE_TOL: f64 = 1e-9;

/// `(n·n)·A0 − (n̂·A0)·n̂` with `n̂` the spatial part; zero exactly on
/// solutions of the source-free wave equation.
pub fn vacuum_residual(a0: &[C64; 3], n: &WaveVector) -> [C64; 3] {
    let nn = n.n_dot_n();
    let spatial = n.spatial();
    let spatial_dot: C64 = (0..3).map(|k| spatial[k] * a0[k]).sum();
    std::array::from_fn(|k| nn * a0[k] - spatial_dot * spatial[k])
}

/// The two solution families of the vacuum equation, plus the rejection class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModeKind {
    /// Null wavevector with amplitude orthogonal to the spatial part;
    /// propagates at speed c.
    Transverse,
    /// Purely spatial wavevector with amplitude parallel to it; stationary,
    /// with vanishing electric and magnetic fields.
    Longitudinal,
    NonSolution,
}

/// Classification verdict with the diagnostics that produced it.
#[derive(Clone, Copy, Debug)]
pub struct ModeClass {
    pub kind: ModeKind,
    /// Norm of [`vacuum_residual`].
    pub residual_norm: f64,
    /// `n̂·A0`.
    pub spatial_projection: C64,
    pub n_dot_n: C64,
}

/// Classifies an amplitude/wavevector pair against the two solution families.
///
/// Checks the transverse conditions first; a zero amplitude therefore reports
/// as (trivially) transverse.
pub fn classify_mode(a0: &[C64; 3], n: &WaveVector) -> ModeClass {
    let residual = vacuum_residual(a0, n);
    let residual_norm = residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let spatial = n.spatial();
    let spatial_dot: C64 = (0..3).map(|k| spatial[k] * a0[k]).sum();
    let nn = n.n_dot_n();
    let a_norm = a0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nhat_norm = spatial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let kind = if nn.norm() <= MODE_TOL && spatial_dot.norm() <= MODE_TOL * a_norm * nhat_norm {
        ModeKind::Transverse
    } else {
        let spatial_sq: C64 = (0..3).map(|k| spatial[k] * spatial[k]).sum();
        let longitudinal = n.n[3].norm() <= MODE_TOL && spatial_sq.norm() > MODE_TOL && {
            let coeff = spatial_dot / spatial_sq;
            let defect: f64 = (0..3)
                .map(|k| (a0[k] - coeff * spatial[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            defect <= MODE_TOL * a_norm
        };
        if longitudinal {
            ModeKind::Longitudinal
        } else {
            ModeKind::NonSolution
        }
    };
    ModeClass {
        kind,
        residual_norm,
        spatial_projection: spatial_dot,
        n_dot_n: nn,
    }
}

/// The temporal source component implied by a mode:
/// `J_4 = (c/4π)·(i n_4)·(i n̂·A0)`.
pub fn j4_diagnostic(a0: &[C64; 3], n: &WaveVector, speed_of_light: f64) -> C64 {
    let spatial = n.spatial();
    let spatial_dot: C64 = (0..3).map(|k| spatial[k] * a0[k]).sum();
    c64(speed_of_light / (4.0 * std::f64::consts::PI), 0.0) * (IM * n.n[3]) * (IM * spatial_dot)
}

/// How a configured initial mode populates the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WaveModeKind {
    /// Amplitude projected transverse to the mode, initial velocity set for a
    /// rightward-traveling wave.
    Transverse,
    /// Amplitude projected along the mode, zero initial velocity (stationary).
    Longitudinal,
}

/// One spectral mode of the initial condition.
#[derive(Clone, Copy, Debug)]
pub struct ModeInit {
    pub amplitude: [C64; 3],
    /// Integer mode numbers per axis, in `−N/2..N/2`.
    pub mode: [i32; 3],
    pub kind: WaveModeKind,
}

/// Evolver configuration.
#[derive(Clone, Debug)]
pub struct SimConfig {
    /// Grid points per axis; a power of two, at least 8.
    pub grid: usize,
    /// Grid spacing (length units).
    pub dx: f64,
    pub speed_of_light: f64,
    /// Sampling interval (time units).
    pub dt: f64,
    pub steps: usize,
    pub modes: Vec<ModeInit>,
    /// Record a snapshot every this many steps (the last step is always
    /// recorded).
    pub sample_every: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 8 || !self.grid.is_power_of_two() {
            return Err(Error::ConfigError(format!(
                "grid must be a power of two ≥ 8, got {}",
                self.grid
            )));
        }
        if !(self.dt > 0.0) {
            return Err(Error::ConfigError(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.dx > 0.0) || !(self.speed_of_light > 0.0) {
            return Err(Error::ConfigError("dx and c must be positive".to_string()));
        }
        if self.steps == 0 {
            return Err(Error::ConfigError("steps must be at least 1".to_string()));
        }
        if self.sample_every == 0 {
            return Err(Error::ConfigError(
                "sample_every must be at least 1".to_string(),
            ));
        }
        let half = (self.grid / 2) as i32;
        for m in &self.modes {
            if m.mode.iter().any(|idx| idx.abs() > half) {
                return Err(Error::ConfigError(format!(
                    "mode {:?} outside the resolvable band ±{half}",
                    m.mode
                )));
            }
            if m.mode == [0, 0, 0] {
                return Err(Error::ConfigError(
                    "the zero mode carries no direction to project onto".to_string(),
                ));
            }
            if m.amplitude
                .iter()
                .any(|z| !z.re.is_finite() || !z.im.is_finite())
            {
                return Err(Error::ConfigError(format!(
                    "mode {:?} has a non-finite amplitude",
                    m.mode
                )));
            }
        }
        Ok(())
    }
}

/// Periodic grid of 3-component complex amplitudes with its velocity field.
#[derive(Clone, Debug)]
pub struct GridField {
    n: usize,
    dx: f64,
    speed_of_light: f64,
    /// Position-space amplitude, row-major `(ix, iy, iz)`.
    a: Vec<[C64; 3]>,
    /// Position-space time derivative of the amplitude.
    v: Vec<[C64; 3]>,
}

impl GridField {
    pub fn zeros(n: usize, dx: f64, speed_of_light: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::ConfigError(format!(
                "grid must be a power of two ≥ 8, got {n}"
            )));
        }
        Ok(GridField {
            n,
            dx,
            speed_of_light,
            a: vec![[C64::default(); 3]; n * n * n],
            v: vec![[C64::default(); 3]; n * n * n],
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn speed_of_light(&self) -> f64 {
        self.speed_of_light
    }

    pub fn amplitude(&self) -> &[[C64; 3]] {
        &self.a
    }

    pub fn velocity(&self) -> &[[C64; 3]] {
        &self.v
    }

    pub fn amplitude_mut(&mut self) -> &mut [[C64; 3]] {
        &mut self.a
    }

    pub fn velocity_mut(&mut self) -> &mut [[C64; 3]] {
        &mut self.v
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n + iy) * self.n + iz
    }

    /// Builds the initial condition described by a configuration.
    pub fn from_config(cfg: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.grid;
        let mut spectral = SpectralField::zeros(n, cfg.dx, cfg.speed_of_light);
        for mode in &cfg.modes {
            let idx = spectral.mode_index(mode.mode)?;
            let k = spectral.wavenumber(mode.mode);
            let k_norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            let khat = [k[0] / k_norm, k[1] / k_norm, k[2] / k_norm];
            let along: C64 = (0..3).map(|c| c64(khat[c], 0.0) * mode.amplitude[c]).sum();
            match mode.kind {
                WaveModeKind::Transverse => {
                    let transverse: [C64; 3] =
                        std::array::from_fn(|c| mode.amplitude[c] - along * khat[c]);
                    let t_norm = transverse.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    if t_norm < 1e-12 {
                        return Err(Error::ConfigError(format!(
                            "amplitude {:?} has no transverse part on mode {:?}",
                            mode.amplitude, mode.mode
                        )));
                    }
                    let omega = cfg.speed_of_light * k_norm;
                    for c in 0..3 {
                        spectral.a_hat[idx][c] += transverse[c];
                        // rightward-traveling: ∂_t A = −iωA
                        spectral.v_hat[idx][c] += -IM * c64(omega, 0.0) * transverse[c];
                    }
                }
                WaveModeKind::Longitudinal => {
                    if along.norm() < 1e-12 {
                        return Err(Error::ConfigError(format!(
                            "amplitude {:?} has no longitudinal part on mode {:?}",
                            mode.amplitude, mode.mode
                        )));
                    }
                    for c in 0..3 {
                        spectral.a_hat[idx][c] += along * c64(khat[c], 0.0);
                    }
                }
            }
        }
        Ok(spectral.to_grid())
    }

    /// Spectral representation of this field.
    pub fn spectrum(&self) -> SpectralField {
        let mut out = SpectralField::zeros(self.n, self.dx, self.speed_of_light);
        out.a_hat = self.a.clone();
        out.v_hat = self.v.clone();
        let fft = Fft3::new(self.n);
        fft.forward(&mut out.a_hat);
        fft.forward(&mut out.v_hat);
        out
    }

    /// RMS norm over grid points of the amplitude.
    pub fn amplitude_norm(&self) -> f64 {
        rms(&self.a)
    }

    /// Maximum pointwise difference of the amplitudes of two fields.
    pub fn max_amplitude_difference(&self, other: &GridField) -> f64 {
        self.a
            .iter()
            .zip(other.a.iter())
            .map(|(x, y)| (0..3).map(|c| (x[c] - y[c]).norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

fn rms(data: &[[C64; 3]]) -> f64 {
    (data
        .iter()
        .flat_map(|p| p.iter())
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        / data.len() as f64)
        .sqrt()
}

/// Per-mode spectral coefficients of a grid field.
#[derive(Clone, Debug)]
pub struct SpectralField {
    n: usize,
    dx: f64,
    speed_of_light: f64,
    pub a_hat: Vec<[C64; 3]>,
    pub v_hat: Vec<[C64; 3]>,
    /// Physical wavenumber of every flat mode index, precomputed once.
    k_table: Vec<[f64; 3]>,
    /// Index of each mode's |k| into `k_norms` (modes share few distinct norms).
    k_class: Vec<u32>,
    /// Distinct |k| values.
    k_norms: Vec<f64>,
}

impl SpectralField {
    fn zeros(n: usize, dx: f64, speed_of_light: f64) -> Self {
        let base = 2.0 * std::f64::consts::PI / (n as f64 * dx);
        let signed = |i: usize| -> f64 {
            let i = i as i64;
            let n = n as i64;
            (if i <= n / 2 { i } else { i - n }) as f64
        };
        let mut k_table = Vec::with_capacity(n * n * n);
        // distinct |k|² = base²·(i²+j²+l²): classify by the integer square sum
        let mut class_of_sq = std::collections::HashMap::new();
        let mut k_class = Vec::with_capacity(n * n * n);
        let mut k_norms = Vec::new();
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let (si, sj, sl) = (signed(ix), signed(iy), signed(iz));
                    k_table.push([base * si, base * sj, base * sl]);
                    let sq = (si * si + sj * sj + sl * sl) as u64;
                    let class = *class_of_sq.entry(sq).or_insert_with(|| {
                        k_norms.push(base * (sq as f64).sqrt());
                        (k_norms.len() - 1) as u32
                    });
                    k_class.push(class);
                }
            }
        }
        SpectralField {
            n,
            dx,
            speed_of_light,
            a_hat: vec![[C64::default(); 3]; n * n * n],
            v_hat: vec![[C64::default(); 3]; n * n * n],
            k_table,
            k_class,
            k_norms,
        }
    }

    /// Flat storage index of an integer mode triple.
    pub fn mode_index(&self, mode: [i32; 3]) -> Result<usize> {
        let n = self.n as i32;
        let mut idx = 0usize;
        for axis in 0..3 {
            let m = mode[axis];
            if m.abs() > n / 2 {
                return Err(Error::ConfigError(format!(
                    "mode {mode:?} outside the resolvable band"
                )));
            }
            let wrapped = if m >= 0 { m } else { m + n } as usize;
            idx = idx * self.n + wrapped;
        }
        Ok(idx)
    }

    /// Physical wavenumber of an integer mode triple.
    pub fn wavenumber(&self, mode: [i32; 3]) -> [f64; 3] {
        let base = 2.0 * std::f64::consts::PI / (self.n as f64 * self.dx);
        [
            base * mode[0] as f64,
            base * mode[1] as f64,
            base * mode[2] as f64,
        ]
    }

    #[inline]
    fn wavenumber_of_flat(&self, idx: usize) -> [f64; 3] {
        self.k_table[idx]
    }

    /// Advances every mode by the exact solution over `dt`.
    pub fn advance(&mut self, dt: f64) {
        let c = self.speed_of_light;
        // the trig factors depend only on |k|, shared by whole mode shells
        let trig: Vec<(f64, f64)> = self
            .k_norms
            .iter()
            .map(|k_norm| (c * k_norm * dt).sin_cos())
            .collect();
        for idx in 0..self.a_hat.len() {
            let k = self.k_table[idx];
            let k_norm = self.k_norms[self.k_class[idx] as usize];
            let a = self.a_hat[idx];
            let v = self.v_hat[idx];
            if k_norm == 0.0 {
                // no restoring force on the uniform mode
                for comp in 0..3 {
                    self.a_hat[idx][comp] = a[comp] + c64(dt, 0.0) * v[comp];
                }
                continue;
            }
            let khat = [k[0] / k_norm, k[1] / k_norm, k[2] / k_norm];
            let a_along: C64 = (0..3).map(|comp| c64(khat[comp], 0.0) * a[comp]).sum();
            let v_along: C64 = (0..3).map(|comp| c64(khat[comp], 0.0) * v[comp]).sum();
            let omega = c * k_norm;
            let (sin, cos) = trig[self.k_class[idx] as usize];
            for comp in 0..3 {
                let a_l = a_along * khat[comp];
                let v_l = v_along * khat[comp];
                let a_t = a[comp] - a_l;
                let v_t = v[comp] - v_l;
                self.a_hat[idx][comp] =
                    a_t * c64(cos, 0.0) + v_t * c64(sin / omega, 0.0) + a_l + v_l * c64(dt, 0.0);
                self.v_hat[idx][comp] = -a_t * c64(omega * sin, 0.0) + v_t * c64(cos, 0.0) + v_l;
            }
        }
    }

    /// One-pass electric, magnetic and divergence norms (RMS over the grid).
    pub fn grid_norms(&self) -> (f64, f64, f64) {
        let mut e_acc = 0.0;
        let mut b_acc = 0.0;
        let mut d_acc = 0.0;
        for idx in 0..self.a_hat.len() {
            let k = self.k_table[idx];
            let a = self.a_hat[idx];
            let v = self.v_hat[idx];
            e_acc += v.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let curl = [
                IM * (c64(k[1], 0.0) * a[2] - c64(k[2], 0.0) * a[1]),
                IM * (c64(k[2], 0.0) * a[0] - c64(k[0], 0.0) * a[2]),
                IM * (c64(k[0], 0.0) * a[1] - c64(k[1], 0.0) * a[0]),
            ];
            b_acc += curl.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let div: C64 = (0..3).map(|comp| IM * c64(k[comp], 0.0) * a[comp]).sum();
            d_acc += div.norm_sqr();
        }
        (
            e_acc.sqrt() / self.speed_of_light,
            b_acc.sqrt(),
            d_acc.sqrt(),
        )
    }

    /// Inverse transform back to position space.
    pub fn to_grid(&self) -> GridField {
        let mut a = self.a_hat.clone();
        let mut v = self.v_hat.clone();
        let fft = Fft3::new(self.n);
        fft.inverse(&mut a);
        fft.inverse(&mut v);
        GridField {
            n: self.n,
            dx: self.dx,
            speed_of_light: self.speed_of_light,
            a,
            v,
        }
    }

    /// RMS electric-field norm over the grid, `E = −(1/c)·∂_t A`.
    pub fn e_norm(&self) -> f64 {
        (self
            .v_hat
            .iter()
            .flat_map(|p| p.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>())
        .sqrt()
            / self.speed_of_light
    }

    /// RMS magnetic-field norm over the grid, `B = ∇×A` mode by mode.
    pub fn b_norm(&self) -> f64 {
        let mut acc = 0.0;
        for idx in 0..self.a_hat.len() {
            let k = self.wavenumber_of_flat(idx);
            let a = self.a_hat[idx];
            let curl = [
                IM * (c64(k[1], 0.0) * a[2] - c64(k[2], 0.0) * a[1]),
                IM * (c64(k[2], 0.0) * a[0] - c64(k[0], 0.0) * a[2]),
                IM * (c64(k[0], 0.0) * a[1] - c64(k[1], 0.0) * a[0]),
            ];
            acc += curl.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        acc.sqrt()
    }

    /// RMS of `∇·A` over the grid.
    pub fn divergence_norm(&self) -> f64 {
        let mut acc = 0.0;
        for idx in 0..self.a_hat.len() {
            let k = self.wavenumber_of_flat(idx);
            let a = self.a_hat[idx];
            let div: C64 = (0..3).map(|comp| IM * c64(k[comp], 0.0) * a[comp]).sum();
            acc += div.norm_sqr();
        }
        acc.sqrt()
    }

    /// Conserved energy of the oscillating part of one mode,
    /// `|v_T|² + ω²|a_T|²`.
    pub fn transverse_mode_energy(&self, mode: [i32; 3]) -> Result<f64> {
        let idx = self.mode_index(mode)?;
        let k = self.wavenumber(mode);
        let k_sq = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k_sq == 0.0 {
            return Ok(0.0);
        }
        let k_norm = k_sq.sqrt();
        let khat = [k[0] / k_norm, k[1] / k_norm, k[2] / k_norm];
        let a = self.a_hat[idx];
        let v = self.v_hat[idx];
        let a_along: C64 = (0..3).map(|c| c64(khat[c], 0.0) * a[c]).sum();
        let v_along: C64 = (0..3).map(|c| c64(khat[c], 0.0) * v[c]).sum();
        let omega = self.speed_of_light * k_norm;
        let mut energy = 0.0;
        for c in 0..3 {
            let a_t = a[c] - a_along * khat[c];
            let v_t = v[c] - v_along * khat[c];
            energy += v_t.norm_sqr() + omega * omega * a_t.norm_sqr();
        }
        Ok(energy)
    }
}

/// Three-dimensional FFT over the cube, applied per field component.
struct Fft3 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft3 {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft3 {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    fn forward(&self, data: &mut [[C64; 3]]) {
        self.transform(data, true);
    }

    fn inverse(&self, data: &mut [[C64; 3]]) {
        self.transform(data, false);
    }

    fn transform(&self, data: &mut [[C64; 3]], forward: bool) {
        let n = self.n;
        let plan = if forward {
            &self.forward
        } else {
            &self.inverse
        };
        let scale = if forward {
            1.0 / (n * n * n) as f64
        } else {
            1.0
        };
        let mut line = vec![C64::default(); n];
        for component in 0..3 {
            // axis 2 (contiguous)
            for ix in 0..n {
                for iy in 0..n {
                    let base = (ix * n + iy) * n;
                    for iz in 0..n {
                        line[iz] = data[base + iz][component];
                    }
                    plan.process(&mut line);
                    for iz in 0..n {
                        data[base + iz][component] = line[iz];
                    }
                }
            }
            // axis 1
            for ix in 0..n {
                for iz in 0..n {
                    for iy in 0..n {
                        line[iy] = data[(ix * n + iy) * n + iz][component];
                    }
                    plan.process(&mut line);
                    for iy in 0..n {
                        data[(ix * n + iy) * n + iz][component] = line[iy];
                    }
                }
            }
            // axis 0
            for iy in 0..n {
                for iz in 0..n {
                    for ix in 0..n {
                        line[ix] = data[(ix * n + iy) * n + iz][component];
                    }
                    plan.process(&mut line);
                    for ix in 0..n {
                        data[(ix * n + iy) * n + iz][component] = line[ix];
                    }
                }
            }
        }
        if scale != 1.0 {
            for point in data.iter_mut() {
                for component in 0..3 {
                    point[component] *= scale;
                }
            }
        }
    }
}

/// State of one tracked mode at one snapshot.
#[derive(Clone, Debug, Serialize)]
pub struct ModeRecord {
    pub mode: [i32; 3],
    /// Spectral amplitude of the mode.
    pub amplitude: [[f64; 2]; 3],
    /// Instantaneous phase-speed estimate from the previous snapshot
    /// (0 for the first snapshot and for phase-stationary modes).
    /// Unambiguous while ω·(sampling interval) stays below π.
    pub phase_speed: f64,
    /// Contribution of this mode to the electric-field norm.
    pub e_norm: f64,
    /// Contribution of this mode to the magnetic-field norm.
    pub b_norm: f64,
}

/// Grid-level diagnostics at one sampled step.
#[derive(Clone, Debug, Serialize)]
pub struct WaveSnapshot {
    pub step: usize,
    pub t: f64,
    pub modes: Vec<ModeRecord>,
    pub e_norm: f64,
    pub b_norm: f64,
    pub divergence_norm: f64,
}

/// Full result of a simulation run.
#[derive(Debug)]
pub struct Evolution {
    pub snapshots: Vec<WaveSnapshot>,
    pub final_field: GridField,
}

fn dominant_component(a: &[C64; 3]) -> usize {
    let mut best = 0;
    for c in 1..3 {
        if a[c].norm() > a[best].norm() {
            best = c;
        }
    }
    best
}

fn mode_records(
    spectral: &SpectralField,
    cfg: &SimConfig,
    previous: Option<(&WaveSnapshot, f64)>,
) -> Result<Vec<ModeRecord>> {
    let mut out = Vec::with_capacity(cfg.modes.len());
    for (mi, mode) in cfg.modes.iter().enumerate() {
        let idx = spectral.mode_index(mode.mode)?;
        let a = spectral.a_hat[idx];
        let v = spectral.v_hat[idx];
        let k = spectral.wavenumber(mode.mode);
        let k_norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        let phase_speed = match previous {
            Some((prev, elapsed)) if elapsed > 0.0 && k_norm > 0.0 => {
                let comp = dominant_component(&a);
                let prev_amp = prev.modes[mi].amplitude[comp];
                let prev_z = c64(prev_amp[0], prev_amp[1]);
                if prev_z.norm() > 1e-300 && a[comp].norm() > 1e-300 {
                    let dphase = (a[comp] * prev_z.conj()).arg();
                    -dphase / (elapsed * k_norm)
                } else {
                    0.0
                }
            }
            _ => 0.0,
        };
        let curl = [
            IM * (c64(k[1], 0.0) * a[2] - c64(k[2], 0.0) * a[1]),
            IM * (c64(k[2], 0.0) * a[0] - c64(k[0], 0.0) * a[2]),
            IM * (c64(k[0], 0.0) * a[1] - c64(k[1], 0.0) * a[0]),
        ];
        out.push(ModeRecord {
            mode: mode.mode,
            amplitude: std::array::from_fn(|c| [a[c].re, a[c].im]),
            phase_speed,
            e_norm: v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / spectral.speed_of_light,
            b_norm: curl.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        });
    }
    Ok(out)
}

/// Runs the exact spectral evolution of an initial field.
pub fn evolve(initial: &GridField, cfg: &SimConfig) -> Result<Evolution> {
    cfg.validate()?;
    if initial.size() != cfg.grid {
        return Err(Error::ConfigError(format!(
            "initial field size {} does not match configured grid {}",
            initial.size(),
            cfg.grid
        )));
    }
    let mut spectral = initial.spectrum();
    let mut snapshots = Vec::new();
    let (e_norm, b_norm, divergence_norm) = spectral.grid_norms();
    let first = WaveSnapshot {
        step: 0,
        t: 0.0,
        modes: mode_records(&spectral, cfg, None)?,
        e_norm,
        b_norm,
        divergence_norm,
    };
    snapshots.push(first);
    for step in 1..=cfg.steps {
        spectral.advance(cfg.dt);
        if step % cfg.sample_every == 0 || step == cfg.steps {
            let t = step as f64 * cfg.dt;
            let previous = snapshots.last().map(|s| (s, t - s.t));
            let modes = mode_records(&spectral, cfg, previous)?;
            let (e_norm, b_norm, divergence_norm) = spectral.grid_norms();
            snapshots.push(WaveSnapshot {
                step,
                t,
                modes,
                e_norm,
                b_norm,
                divergence_norm,
            });
        }
    }
    Ok(Evolution {
        snapshots,
        final_field: spectral.to_grid(),
    })
}

/// Per-mode summary over a finished run.
#[derive(Clone, Debug, Serialize)]
pub struct ModeDiagnostics {
    pub mode: [i32; 3],
    /// Mean of the instantaneous phase-speed estimates.
    pub phase_speed: f64,
    /// Largest relative deviation of the mode amplitude from its initial value.
    pub amplitude_drift: f64,
}

/// Summary over a finished run.
#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticsReport {
    pub per_mode: Vec<ModeDiagnostics>,
    pub max_e_norm: f64,
    pub max_b_norm: f64,
    pub max_divergence_norm: f64,
}

/// Reduces a snapshot series to per-mode phase speeds and drifts.
///
/// Needs at least two snapshots.
pub fn measure_diagnostics(snapshots: &[WaveSnapshot]) -> Result<DiagnosticsReport> {
    if snapshots.len() < 2 {
        return Err(Error::ConfigError(
            "diagnostics need at least two snapshots".to_string(),
        ));
    }
    let first = &snapshots[0];
    let mut per_mode = Vec::with_capacity(first.modes.len());
    for mi in 0..first.modes.len() {
        let initial: Vec<C64> = first.modes[mi]
            .amplitude
            .iter()
            .map(|p| c64(p[0], p[1]))
            .collect();
        let initial_norm = initial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut speed_acc = 0.0;
        let mut speed_count = 0usize;
        let mut drift: f64 = 0.0;
        for snap in snapshots.iter().skip(1) {
            let record = &snap.modes[mi];
            speed_acc += record.phase_speed;
            speed_count += 1;
            let diff: f64 = record
                .amplitude
                .iter()
                .zip(initial.iter())
                .map(|(p, z0)| (c64(p[0], p[1]) - z0).norm_sqr())
                .sum::<f64>()
                .sqrt();
            drift = drift.max(diff / initial_norm.max(f64::MIN_POSITIVE));
        }
        per_mode.push(ModeDiagnostics {
            mode: first.modes[mi].mode,
            phase_speed: speed_acc / speed_count as f64,
            amplitude_drift: drift,
        });
    }
    Ok(DiagnosticsReport {
        per_mode,
        max_e_norm: snapshots.iter().map(|s| s.e_norm).fold(0.0, f64::max),
        max_b_norm: snapshots.iter().map(|s| s.b_norm).fold(0.0, f64::max),
        max_divergence_norm: snapshots
            .iter()
            .map(|s| s.divergence_norm)
            .fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{FourVector, WaveVectorSampler};
    use rand::Rng;

    fn null_n() -> WaveVector {
        WaveVector::new(FourVector::new([
            c64(3.0, 0.0),
            c64(4.0, 0.0),
            C64::default(),
            c64(0.0, 5.0),
        ]))
    }

    #[test]
    fn residual_vanishes_on_transverse_mode() {
        let a0 = [c64(4.0, 0.0), c64(-3.0, 0.0), C64::default()];
        let r = vacuum_residual(&a0, &null_n());
        assert!(r.iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn residual_vanishes_on_longitudinal_mode() {
        let n = WaveVector::from_reals([1.0, 2.0, 2.0, 0.0]);
        let a0 = [c64(1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0)];
        let r = vacuum_residual(&a0, &n);
        assert!(r.iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn residual_arithmetic_on_generic_pair() {
        let n = WaveVector::from_reals([1.0, 2.0, 3.0, 4.0]);
        let a0 = [c64(1.0, 0.0), C64::default(), C64::default()];
        let r = vacuum_residual(&a0, &n);
        assert_eq!(r[0], c64(29.0, 0.0));
        assert_eq!(r[1], c64(-2.0, 0.0));
        assert_eq!(r[2], c64(-3.0, 0.0));
    }

    #[test]
    fn classification_of_the_three_families() {
        let transverse = classify_mode(&[c64(4.0, 0.0), c64(-3.0, 0.0), C64::default()], &null_n());
        assert_eq!(transverse.kind, ModeKind::Transverse);

        let n_long = WaveVector::from_reals([1.0, 2.0, 2.0, 0.0]);
        let longitudinal = classify_mode(&[c64(1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0)], &n_long);
        assert_eq!(longitudinal.kind, ModeKind::Longitudinal);

        let generic = classify_mode(
            &[c64(1.0, 0.0), C64::default(), C64::default()],
            &WaveVector::from_reals([1.0, 2.0, 3.0, 4.0]),
        );
        assert_eq!(generic.kind, ModeKind::NonSolution);
        assert!(generic.residual_norm > 1.0);
    }

    #[test]
    fn classification_agrees_with_residual_thresholding() {
        let mut sampler = WaveVectorSampler::new(80);
        for _ in 0..1000 {
            let n = sampler.mixed();
            let a0 = sampler.amplitude3();
            let class = classify_mode(&a0, &n);
            let a_norm = a0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let relative = class.residual_norm / (a_norm * n.norm().powi(2)).max(1e-300);
            match class.kind {
                ModeKind::NonSolution => assert!(relative > MODE_TOL),
                _ => assert!(relative <= MODE_TOL),
            }
        }
    }

    #[test]
    fn j4_vanishes_on_both_solution_families() {
        let j = j4_diagnostic(
            &[c64(4.0, 0.0), c64(-3.0, 0.0), C64::default()],
            &null_n(),
            1.0,
        );
        assert!(j.norm() < 1e-14);
        let n_long = WaveVector::from_reals([1.0, 2.0, 2.0, 0.0]);
        let j = j4_diagnostic(&[c64(1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0)], &n_long, 1.0);
        assert!(j.norm() < 1e-14);
    }

    #[test]
    fn j4_arithmetic() {
        // −(1/4π)·n4·(n̂·A0) = −4/4π = −1/π
        let n = WaveVector::from_reals([1.0, 2.0, 3.0, 4.0]);
        let j = j4_diagnostic(&[c64(1.0, 0.0), C64::default(), C64::default()], &n, 1.0);
        assert!((j - c64(-1.0 / std::f64::consts::PI, 0.0)).norm() < 1e-15);
    }

    fn transverse_cfg(steps: usize) -> SimConfig {
        SimConfig {
            grid: 16,
            dx: 1.0,
            speed_of_light: 1.0,
            dt: 0.05,
            steps,
            modes: vec![ModeInit {
                amplitude: [C64::default(), c64(1.0, 0.0), C64::default()],
                mode: [1, 0, 0],
                kind: WaveModeKind::Transverse,
            }],
            sample_every: 1,
        }
    }

    fn longitudinal_cfg(steps: usize) -> SimConfig {
        SimConfig {
            grid: 16,
            dx: 1.0,
            speed_of_light: 1.0,
            dt: 0.05,
            steps,
            modes: vec![ModeInit {
                amplitude: [c64(0.7, 0.0), C64::default(), C64::default()],
                mode: [1, 0, 0],
                kind: WaveModeKind::Longitudinal,
            }],
            sample_every: 1,
        }
    }

    #[test]
    fn config_validation_errors() {
        let mut cfg = transverse_cfg(10);
        cfg.grid = 12;
        assert!(matches!(cfg.validate(), Err(Error::ConfigError(_))));
        let mut cfg = transverse_cfg(10);
        cfg.dt = 0.0;
        assert!(matches!(cfg.validate(), Err(Error::ConfigError(_))));
        let mut cfg = transverse_cfg(10);
        cfg.modes[0].mode = [9, 0, 0];
        assert!(matches!(cfg.validate(), Err(Error::ConfigError(_))));
    }

    #[test]
    fn spectral_round_trip() {
        let mut sampler = WaveVectorSampler::new(81);
        let mut field = GridField::zeros(8, 0.5, 1.0).unwrap();
        for p in field.amplitude_mut() {
            for comp in 0..3 {
                p[comp] = c64(
                    sampler.rng().random_range(-1.0..1.0),
                    sampler.rng().random_range(-1.0..1.0),
                );
            }
        }
        let back = field.spectrum().to_grid();
        assert!(field.max_amplitude_difference(&back) < 1e-12);
    }

    #[test]
    fn zero_field_stays_zero() {
        let cfg = SimConfig {
            modes: vec![],
            ..transverse_cfg(50)
        };
        let field = GridField::zeros(16, 1.0, 1.0).unwrap();
        let evolution = evolve(&field, &cfg).unwrap();
        assert!(evolution.final_field.amplitude_norm() < 1e-300);
        for snap in &evolution.snapshots {
            assert!(snap.e_norm < 1e-300);
        }
    }

    #[test]
    fn transverse_mode_propagates_at_c() {
        let cfg = transverse_cfg(200);
        let field = GridField::from_config(&cfg).unwrap();
        let evolution = evolve(&field, &cfg).unwrap();
        let report = measure_diagnostics(&evolution.snapshots).unwrap();
        let speed = report.per_mode[0].phase_speed;
        assert!(
            (speed - cfg.speed_of_light).abs() < 5e-3 * cfg.speed_of_light,
            "measured speed {speed}"
        );
    }

    #[test]
    fn transverse_energy_is_conserved() {
        let cfg = transverse_cfg(100);
        let field = GridField::from_config(&cfg).unwrap();
        let mut spectral = field.spectrum();
        let e0 = spectral.transverse_mode_energy([1, 0, 0]).unwrap();
        for _ in 0..100 {
            spectral.advance(cfg.dt);
            let e = spectral.transverse_mode_energy([1, 0, 0]).unwrap();
            assert!((e - e0).abs() < 1e-12 * e0);
        }
    }

    #[test]
    fn longitudinal_mode_is_stationary_with_zero_fields() {
        let cfg = longitudinal_cfg(200);
        let field = GridField::from_config(&cfg).unwrap();
        let evolution = evolve(&field, &cfg).unwrap();
        let report = measure_diagnostics(&evolution.snapshots).unwrap();
        assert!(report.per_mode[0].amplitude_drift < 1e-10);
        assert!(report.max_e_norm < 1e-10);
        assert!(report.max_b_norm < 1e-10);
        // the longitudinal mode carries nonzero divergence, constant in time
        assert!(report.max_divergence_norm > 1e-3);
    }

    #[test]
    fn driven_longitudinal_mode_grows_linearly() {
        // nonzero initial longitudinal velocity: the equation applies no
        // restoring force, so the amplitude drifts linearly with time
        let cfg = longitudinal_cfg(100);
        let mut field = GridField::from_config(&cfg).unwrap();
        let spectral0 = field.spectrum();
        let idx = spectral0.mode_index([1, 0, 0]).unwrap();
        let a0 = spectral0.a_hat[idx];
        // inject a longitudinal velocity of magnitude 0.1 along the mode
        drop(spectral0);
        for (point, base) in field
            .velocity_mut()
            .iter_mut()
            .zip(GridField::from_config(&cfg).unwrap().amplitude().iter())
        {
            for comp in 0..3 {
                point[comp] = base[comp] * c64(0.1 / 0.7, 0.0);
            }
        }
        let evolution = evolve(&field, &cfg).unwrap();
        for snap in evolution.snapshots.iter() {
            let rec = &snap.modes[0];
            let amp = c64(rec.amplitude[0][0], rec.amplitude[0][1]);
            let expected = a0[0] * c64(1.0 + 0.1 / 0.7 * snap.t, 0.0);
            assert!(
                (amp - expected).norm() < 1e-10 * (1.0 + expected.norm()),
                "t = {}: {} vs {}",
                snap.t,
                amp,
                expected
            );
        }
        // the drift diagnostic surfaces the growth instead of hiding it
        let report = measure_diagnostics(&evolution.snapshots).unwrap();
        assert!(report.per_mode[0].amplitude_drift > 0.5);
    }

    #[test]
    fn standing_transverse_fields_match_analytic_solution() {
        // zero initial velocity: A(t) = A0·cos(ωt), E-norm ∝ |sin(ωt)|
        let mut cfg = transverse_cfg(120);
        cfg.modes[0].kind = WaveModeKind::Transverse;
        let mut field = GridField::from_config(&cfg).unwrap();
        // strip the traveling-wave velocity to get a standing wave
        for v in field.velocity_mut() {
            *v = [C64::default(); 3];
        }
        let spectral0 = field.spectrum();
        let idx = spectral0.mode_index([1, 0, 0]).unwrap();
        let a0_norm = spectral0.a_hat[idx]
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let k = spectral0.wavenumber([1, 0, 0]);
        let omega = cfg.speed_of_light * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        let evolution = evolve(&field, &cfg).unwrap();
        for snap in &evolution.snapshots {
            let expected_e = a0_norm * omega * (omega * snap.t).sin().abs() / cfg.speed_of_light;
            assert!(
                (snap.e_norm - expected_e).abs() <= 1e-2 * a0_norm * omega + 1e-12,
                "t = {}: e_norm {} vs analytic {expected_e}",
                snap.t,
                snap.e_norm
            );
        }
    }

    #[test]
    fn evolution_is_linear_in_the_initial_field() {
        let t_cfg = transverse_cfg(60);
        let l_cfg = longitudinal_cfg(60);
        let combined_cfg = SimConfig {
            modes: vec![t_cfg.modes[0], l_cfg.modes[0]],
            ..t_cfg.clone()
        };
        let f_t = GridField::from_config(&t_cfg).unwrap();
        let f_l = GridField::from_config(&l_cfg).unwrap();
        let f_combined = GridField::from_config(&combined_cfg).unwrap();

        let e_t = evolve(&f_t, &t_cfg).unwrap().final_field;
        let e_l = evolve(&f_l, &l_cfg).unwrap().final_field;
        let e_combined = evolve(&f_combined, &combined_cfg).unwrap().final_field;

        let mut sum = e_t.clone();
        for (p, q) in sum.amplitude_mut().iter_mut().zip(e_l.amplitude().iter()) {
            for comp in 0..3 {
                p[comp] += q[comp];
            }
        }
        assert!(e_combined.max_amplitude_difference(&sum) < 1e-11);
    }

    #[test]
    fn superposition_recovers_the_two_parts_by_projection() {
        let cfg = SimConfig {
            modes: vec![
                ModeInit {
                    amplitude: [C64::default(), c64(1.0, 0.0), C64::default()],
                    mode: [1, 0, 0],
                    kind: WaveModeKind::Transverse,
                },
                ModeInit {
                    amplitude: [c64(0.5, 0.0), C64::default(), C64::default()],
                    mode: [1, 0, 0],
                    kind: WaveModeKind::Longitudinal,
                },
            ],
            ..transverse_cfg(40)
        };
        let field = GridField::from_config(&cfg).unwrap();
        let evolution = evolve(&field, &cfg).unwrap();
        let spec = evolution.final_field.spectrum();
        let idx = spec.mode_index([1, 0, 0]).unwrap();
        let k = spec.wavenumber([1, 0, 0]);
        let k_norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        let khat = [k[0] / k_norm, k[1] / k_norm, k[2] / k_norm];
        let a = spec.a_hat[idx];
        let along: C64 = (0..3).map(|c| c64(khat[c], 0.0) * a[c]).sum();
        // longitudinal projection equals the untouched initial longitudinal part
        assert!((along - c64(0.5, 0.0)).norm() < 1e-10);
        // transverse projection keeps the traveling-wave magnitude
        let transverse_norm = (0..3)
            .map(|c| (a[c] - along * c64(khat[c], 0.0)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((transverse_norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn diagnostics_need_two_snapshots() {
        let cfg = transverse_cfg(1);
        let field = GridField::from_config(&cfg).unwrap();
        let evolution = evolve(&field, &cfg).unwrap();
        assert!(measure_diagnostics(&evolution.snapshots).is_ok());
        assert!(matches!(
            measure_diagnostics(&evolution.snapshots[..1]),
            Err(Error::ConfigError(_))
        ));
    }
}
