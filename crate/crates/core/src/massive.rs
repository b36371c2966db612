//! The symmetric λ = 1 family realized as a massive vector field: the
//! divergence-free four-amplitude θ built from a three-potential C, the
//! symmetric tensor G, its conserved current, the Klein-Gordon shell, a
//! four-force balance, and the covariant three-value representation of C with
//! its transformation pipeline.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::field::FieldTensor;
use crate::tensor::{c64, LorentzMap, WaveVector, C64, IM, REGULARITY_EPS};

/// Three-potential amplitude with an inverse-length mass parameter
/// `κ = mc/ħ ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CPotential {
    pub c: [C64; 3],
    pub n: WaveVector,
    pub kappa: f64,
}

impl CPotential {
    pub fn new(c: [C64; 3], n: WaveVector, kappa: f64) -> Self {
        assert!(kappa >= 0.0, "mass parameter must be non-negative");
        CPotential { c, n, kappa }
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Divergence-free four-amplitude derived from a three-potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaField {
    pub theta: [C64; 4],
    pub n: WaveVector,
}

impl ThetaField {
    /// `Σ_a n_a θ_a`; identically zero when built by [`theta_from_c`].
    pub fn divergence(&self) -> C64 {
        (0..4).map(|a| self.n.n[a] * self.theta[a]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.theta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Symmetric rank-2 amplitude of the massive field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GTensor {
    pub g: [[C64; 4]; 4],
    pub n: WaveVector,
}

impl GTensor {
    pub fn norm(&self) -> f64 {
        self.g
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                acc += (self.g[a][b] - self.g[b][a]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Double contraction `Σ_ij n_i n_j G_ij`; vanishes for G built from a
    /// divergence-free θ.
    pub fn double_contraction(&self) -> C64 {
        let mut acc = C64::default();
        for i in 0..4 {
            for j in 0..4 {
                acc += self.n.n[i] * self.n.n[j] * self.g[i][j];
            }
        }
        acc
    }

    pub fn to_column(&self) -> crate::spaces::ColumnVec16 {
        crate::spaces::ColumnVec16::from_matrix(&self.g)
    }
}

/// Which conservation law a four-current belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurrentFlavor {
    Em,
    Mass,
}

/// Four-current amplitude; conserved flavors satisfy `Σ n_a J_a = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourCurrent {
    pub j: [C64; 4],
    pub n: WaveVector,
    pub flavor: CurrentFlavor,
}

impl FourCurrent {
    pub fn new(j: [C64; 4], n: WaveVector, flavor: CurrentFlavor) -> Self {
        FourCurrent { j, n, flavor }
    }

    pub fn divergence(&self) -> C64 {
        (0..4).map(|a| self.n.n[a] * self.j[a]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.j.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// The covariant three-value representation: values `D` and the skew tensor
/// they populate.
///
/// The tensor pattern pairs equal entries as `(1,2)=(3,4)`, `(1,3)=(2,4)`,
/// `(1,4)=(2,3)` with skew counterparts below the diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovariantPhi {
    pub d: [C64; 3],
    pub phi: [[C64; 4]; 4],
    /// Residual of the fourth, linearly dependent row of the defining system,
    /// normalized by `‖n‖·‖C‖`.
    pub fourth_row_residual: f64,
}

/// Assembles the patterned skew tensor from three values.
pub fn phi_from_d(d: &[C64; 3]) -> [[C64; 4]; 4] {
    let z = C64::default();
    [
        [z, d[0], d[1], d[2]],
        [-d[0], z, d[2], d[1]],
        [-d[1], -d[2], z, d[0]],
        [-d[2], -d[1], -d[0], z],
    ]
}

/// `θ_k = −i·n_4·C_k` for k = 1..3 and `θ_4 = i·(n_1 C_1 + n_2 C_2 + n_3 C_3)`.
///
/// The result is divergence-free for every C and n.
pub fn theta_from_c(c: &CPotential) -> ThetaField {
    let n = c.n.components();
    let theta = [
        -IM * n[3] * c.c[0],
        -IM * n[3] * c.c[1],
        -IM * n[3] * c.c[2],
        IM * (n[0] * c.c[0] + n[1] * c.c[1] + n[2] * c.c[2]),
    ];
    ThetaField { theta, n: c.n }
}

/// `G_ab = i(n_a θ_b + n_b θ_a)`; symmetric, and doubly transverse whenever
/// θ is divergence-free.
pub fn g_from_theta(t: &ThetaField) -> GTensor {
    let n = t.n.components();
    let mut g = [[C64::default(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            g[a][b] = IM * (n[a] * t.theta[b] + n[b] * t.theta[a]);
        }
    }
    GTensor { g, n: t.n }
}

/// `J_a = i·Σ_j n_j G_aj`, the divergence of the massive tensor.
///
/// Conserved whenever G is doubly transverse; on the mass shell
/// `n·n = −κ²` it reduces to `κ²·θ` exactly.
pub fn current_from_g(g: &GTensor) -> FourCurrent {
    let n = g.n.components();
    let j = std::array::from_fn(|a| {
        let mut acc = C64::default();
        for jx in 0..4 {
            acc += IM * n[jx] * g.g[a][jx];
        }
        acc
    });
    FourCurrent {
        j,
        n: g.n,
        flavor: CurrentFlavor::Mass,
    }
}

/// Per-component Klein-Gordon residual `(n·n + κ²)·C_k`; zero exactly on the
/// mass shell `n·n = −κ²`.
pub fn kg_residual(c: &CPotential) -> [C64; 3] {
    let factor = c.n.n_dot_n() + c64(c.kappa * c.kappa, 0.0);
    c.c.map(|ck| factor * ck)
}

/// The part of the tensor divergence not explained by the mass term:
/// `J⁰ = J − κ²·θ`, with the whole chain evaluated from the potential.
///
/// Conserved for every potential (both `J` and `θ` are), and identically
/// zero on the mass shell.
pub fn residual_current(c: &CPotential) -> FourCurrent {
    let theta = theta_from_c(c);
    let j = current_from_g(&g_from_theta(&theta));
    let kappa_sq = c64(c.kappa * c.kappa, 0.0);
    FourCurrent {
        j: std::array::from_fn(|a| j.j[a] - kappa_sq * theta.theta[a]),
        n: c.n,
        flavor: CurrentFlavor::Mass,
    }
}

/// Four-force of a current on a rank-2 amplitude: `f_a = Σ_i J^i M_ai`.
fn contract_force(j: &[C64; 4], m: &[[C64; 4]; 4]) -> [C64; 4] {
    std::array::from_fn(|a| (0..4).map(|i| j[i] * m[a][i]).sum())
}

/// Residual of the four-momentum balance `Σ_i J_em^i F_ai + Σ_i J_mass^i G_ai`.
///
/// All four amplitudes are taken at a shared evaluation point.
pub fn force_balance_residual(
    j_em: &FourCurrent,
    f: &FieldTensor,
    j_mass: &FourCurrent,
    g: &GTensor,
) -> [C64; 4] {
    let f_em = contract_force(&j_em.j, &f.f);
    let f_mass = contract_force(&j_mass.j, &g.g);
    std::array::from_fn(|a| f_em[a] + f_mass[a])
}

/// Least-squares answer to "how much mass force balances the field force".
#[derive(Clone, Copy, Debug)]
pub struct BalanceSolution {
    /// Scale `s` minimizing `‖f_em + s·f_dir‖`.
    pub scale: C64,
    /// Norm of the minimized residual.
    pub residual: f64,
}

/// Solves for the complex scale on the mass-force direction that best cancels
/// the field force. Errors when the direction force is numerically zero.
pub fn solve_balance_scale(
    j_em: &FourCurrent,
    f: &FieldTensor,
    j_mass_direction: &FourCurrent,
    g: &GTensor,
) -> Result<BalanceSolution> {
    let f_em = contract_force(&j_em.j, &f.f);
    let f_dir = contract_force(&j_mass_direction.j, &g.g);
    let dir_sq: f64 = f_dir.iter().map(|z| z.norm_sqr()).sum();
    if dir_sq < 1e-24 {
        return Err(Error::DegenerateDirection(dir_sq.sqrt()));
    }
    // Hermitian least squares in the scale
    let cross: C64 = (0..4).map(|a| f_dir[a].conj() * f_em[a]).sum();
    let scale = -cross / c64(dir_sq, 0.0);
    let residual = (0..4)
        .map(|a| (f_em[a] + scale * f_dir[a]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(BalanceSolution { scale, residual })
}

fn covariant_system(n: &WaveVector) -> Matrix3<C64> {
    let nc = n.components();
    Matrix3::new(
        nc[1], nc[2], nc[3], nc[0], -nc[3], -nc[2], -nc[3], nc[0], nc[1],
    )
}

fn covariant_rhs(c: &CPotential) -> Vector3<C64> {
    let nc = c.n.components();
    Vector3::new(nc[3] * c.c[0], -nc[3] * c.c[1], -nc[3] * c.c[2])
}

fn system_condition(m: &Matrix3<C64>) -> f64 {
    match m.try_svd(false, false, 1e-12, 4000) {
        Some(svd) => svd.singular_values[0] / svd.singular_values[2].max(f64::MIN_POSITIVE),
        None => f64::INFINITY,
    }
}

/// Condition-number ceiling for the pointwise 3×3 solves.
pub const SYSTEM_CONDITION_LIMIT: f64 = 1e12;

/// Solves the first three rows of the covariant-value system for `D`, checks
/// the dependent fourth row, and assembles the patterned tensor.
pub fn d_from_c(c: &CPotential) -> Result<CovariantPhi> {
    let m = covariant_system(&c.n);
    let cond = system_condition(&m);
    if cond > SYSTEM_CONDITION_LIMIT {
        return Err(Error::SingularSystem(format!(
            "covariant 3x3 system condition {cond:.3e}"
        )));
    }
    let rhs = covariant_rhs(c);
    let d = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SingularSystem("covariant 3x3 solve failed".to_string()))?;
    let nc = c.n.components();
    let fourth = nc[0] * d[2] + nc[1] * d[1] + nc[2] * d[0]
        - (nc[0] * c.c[0] + nc[1] * c.c[1] + nc[2] * c.c[2]);
    let scale = (c.n.norm() * c.norm()).max(f64::MIN_POSITIVE);
    let d_arr = [d[0], d[1], d[2]];
    Ok(CovariantPhi {
        d: d_arr,
        phi: phi_from_d(&d_arr),
        fourth_row_residual: fourth.norm() / scale,
    })
}

/// Tolerance on the pairwise agreement of transformed tensor entries.
pub const TEMPLATE_MISMATCH_TOL: f64 = 1e-9;

/// Result of transporting a three-potential to another frame.
#[derive(Clone, Debug)]
pub struct CTransformation {
    pub potential: CPotential,
    /// Covariant values re-solved at the transformed wavevector.
    pub d_hat: [C64; 3],
    /// How far the transformed tensor strays from the three-value pattern,
    /// relative to its norm. Zero means the pattern carried over exactly.
    pub template_mismatch: f64,
}

/// Transports a three-potential through `C → D → Φ → Φ̂ = TΦTᵀ → Ĉ`.
///
/// The final read-off contracts the transformed tensor column by column,
/// `V̂_a = i·Σ_i n̂_i Φ̂_ia`, which coincides with reading values straight off
/// the pattern whenever the pattern survives the transform, and extends it
/// covariantly when it does not (the measured deviation is reported in
/// `template_mismatch`). This route transports θ as a four-vector, so the
/// transform reverses exactly under the inverse map and preserves the
/// Klein-Gordon shell.
pub fn transform_c(map: &LorentzMap, c: &CPotential) -> Result<CTransformation> {
    let cov = d_from_c(c)?;
    let phi_hat = map.apply_rank2(&cov.phi);
    let n_hat = map.apply_wavevector(&c.n);
    if n_hat.n[3].norm() < REGULARITY_EPS {
        return Err(Error::SingularSystem(format!(
            "transformed temporal component |n4| = {:.3e}",
            n_hat.n[3].norm()
        )));
    }

    let fro: f64 = phi_hat
        .iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let mismatch = ((phi_hat[0][1] - phi_hat[2][3]).norm()
        + (phi_hat[0][2] - phi_hat[1][3]).norm()
        + (phi_hat[0][3] - phi_hat[1][2]).norm())
        / fro.max(f64::MIN_POSITIVE);

    // V̂_a = i Σ_i n̂_i Φ̂_ia  (half the generator contraction)
    let mut v_hat = [C64::default(); 4];
    for a in 0..4 {
        for i in 0..4 {
            v_hat[a] += IM * n_hat.n[i] * phi_hat[i][a];
        }
    }
    let c_hat = std::array::from_fn(|k| v_hat[k] / (-IM * n_hat.n[3]));
    let potential = CPotential {
        c: c_hat,
        n: n_hat,
        kappa: c.kappa,
    };
    let d_hat = d_from_c(&potential)?.d;
    Ok(CTransformation {
        potential,
        d_hat,
        template_mismatch: mismatch,
    })
}

/// Like [`transform_c`] but refuses transforms under which the three-value
/// pattern does not carry over within [`TEMPLATE_MISMATCH_TOL`].
pub fn transform_c_strict(map: &LorentzMap, c: &CPotential) -> Result<CPotential> {
    let out = transform_c(map, c)?;
    if out.template_mismatch > TEMPLATE_MISMATCH_TOL {
        return Err(Error::TemplateMismatch(out.template_mismatch));
    }
    Ok(out.potential)
}
