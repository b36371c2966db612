//! The sixteen-dimensional operator column space and its five invariant
//! subspaces.
//!
//! Every rank-2 operator column is represented pointwise at a sampled
//! wavevector through the plane-wave rule, so operator arithmetic reduces to
//! complex arithmetic and commutativity holds exactly. The sixteen basis
//! columns split into five families:
//!
//! | family | dimension | eigenvalue | symmetry |
//! |--------|-----------|------------|----------|
//! | `BSy1` | 1         | 2          | symmetric |
//! | `ASk3` | 3         | 1          | skew |
//! | `ASy3` | 3         | 1          | symmetric |
//! | `CSk3` | 3         | 0          | skew |
//! | `CSy6` | 6         | 0          | symmetric |
//!
//! The eigenvalue refers to the 16×16 contraction matrix assembled by
//! [`assemble_m16`]: each basis column `U` satisfies `K·U = λ·(n·n)·U`.
//!
//! The normalization comes from transcribing the operator eigenproblem into
//! wavevector arithmetic. In operator form the contraction acts entrywise as
//! `∂_a ∂^i U_ib + ∂_b ∂^i U_ai`, and its eigenvalues are multiples of the
//! invariant second-order scalar `−∂_i∂^i`. Under the plane-wave rule each
//! derivative contributes `i·n`, so the left side maps to
//! `−(n_a n^i U_ib + n_b n^i U_ai)` and the invariant scalar to `+n·n`;
//! cancelling the common sign gives the positive-eigenvalue convention used
//! here, with the rank-one column `−n_a n_b` as the λ = 2 anchor.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{c64, delta, flatten, WaveVector, C64, IM};

/// A rank-2 amplitude flattened to 16 complex entries, row-major in `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ColumnVec16(pub [C64; 16]);

impl ColumnVec16 {
    pub fn zero() -> Self {
        Self::default()
    }

    #[inline]
    pub fn entry(&self, a: usize, b: usize) -> C64 {
        self.0[flatten(a, b)]
    }

    #[inline]
    pub fn set_entry(&mut self, a: usize, b: usize, value: C64) {
        self.0[flatten(a, b)] = value;
    }

    pub fn from_matrix(m: &[[C64; 4]; 4]) -> Self {
        let mut col = Self::zero();
        for a in 0..4 {
            for b in 0..4 {
                col.set_entry(a, b, m[a][b]);
            }
        }
        col
    }

    pub fn to_matrix(&self) -> [[C64; 4]; 4] {
        let mut m = [[C64::default(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                m[a][b] = self.entry(a, b);
            }
        }
        m
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Bilinear pairing `Σ_ab U_ab V_ab` (no conjugation); this is the inner
    /// product in which the five families are mutually orthogonal.
    pub fn bilinear(&self, other: &ColumnVec16) -> C64 {
        (0..16).map(|i| self.0[i] * other.0[i]).sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.norm().max(f64::MIN_POSITIVE);
        (0..4).all(|a| (0..4).all(|b| (self.entry(a, b) - self.entry(b, a)).norm() <= tol * scale))
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        let scale = self.norm().max(f64::MIN_POSITIVE);
        (0..4).all(|a| (0..4).all(|b| (self.entry(a, b) + self.entry(b, a)).norm() <= tol * scale))
    }

    pub fn scaled(&self, s: C64) -> ColumnVec16 {
        ColumnVec16(self.0.map(|z| z * s))
    }

    pub fn add(&self, other: &ColumnVec16) -> ColumnVec16 {
        ColumnVec16(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    pub fn sub(&self, other: &ColumnVec16) -> ColumnVec16 {
        ColumnVec16(std::array::from_fn(|i| self.0[i] - other.0[i]))
    }

    pub(crate) fn to_dvector(self) -> DVector<C64> {
        DVector::from_iterator(16, self.0)
    }
}

/// Identifier for one of the five invariant subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubspaceId {
    BSy1,
    ASk3,
    ASy3,
    CSk3,
    CSy6,
}

impl SubspaceId {
    pub const ALL: [SubspaceId; 5] = [
        SubspaceId::BSy1,
        SubspaceId::ASk3,
        SubspaceId::ASy3,
        SubspaceId::CSk3,
        SubspaceId::CSy6,
    ];

    pub fn dimension(&self) -> usize {
        match self {
            SubspaceId::BSy1 => 1,
            SubspaceId::ASk3 | SubspaceId::ASy3 | SubspaceId::CSk3 => 3,
            SubspaceId::CSy6 => 6,
        }
    }

    /// Eigenvalue tag of the family in the normalized eigenproblem.
    pub fn eigenvalue(&self) -> f64 {
        match self {
            SubspaceId::BSy1 => 2.0,
            SubspaceId::ASk3 | SubspaceId::ASy3 => 1.0,
            SubspaceId::CSk3 | SubspaceId::CSy6 => 0.0,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, SubspaceId::BSy1 | SubspaceId::ASy3 | SubspaceId::CSy6)
    }

    /// Global basis indices (1-based, inclusive) belonging to this family.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        match self {
            SubspaceId::BSy1 => 1..=1,
            SubspaceId::ASk3 => 2..=4,
            SubspaceId::ASy3 => 5..=7,
            SubspaceId::CSk3 => 8..=10,
            SubspaceId::CSy6 => 11..=16,
        }
    }

    /// Homogeneity degree of the family's basis columns in `n`.
    pub fn degree(&self) -> u32 {
        match self {
            SubspaceId::BSy1 | SubspaceId::ASy3 | SubspaceId::CSy6 => 2,
            SubspaceId::ASk3 | SubspaceId::CSk3 => 1,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SubspaceId::BSy1 => "B_sy1",
            SubspaceId::ASk3 => "A_sk3",
            SubspaceId::ASy3 => "A_sy3",
            SubspaceId::CSk3 => "C_sk3",
            SubspaceId::CSy6 => "C_sy6",
        }
    }

    pub fn of_index(k: usize) -> Option<SubspaceId> {
        match k {
            1 => Some(SubspaceId::BSy1),
            2..=4 => Some(SubspaceId::ASk3),
            5..=7 => Some(SubspaceId::ASy3),
            8..=10 => Some(SubspaceId::CSk3),
            11..=16 => Some(SubspaceId::CSy6),
            _ => None,
        }
    }
}

impl std::fmt::Display for SubspaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Index pairs fixed for the `CSy6` family: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
const CSY6_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
/// Index triples fixed for the `CSk3` family: (2,3,4),(1,3,4),(1,2,4).
const CSK3_TRIPLES: [(usize, usize, usize); 3] = [(1, 2, 3), (0, 2, 3), (0, 1, 3)];

/// The four antisymmetric generator columns `P^r(a,b) = i(n_a δ_b^r − n_b δ_a^r)`.
///
/// Any three of them span the `ASk3` family; their wavevector-weighted sum
/// `Σ_r n_r P^r` vanishes identically.
pub fn p_columns(n: &WaveVector) -> [ColumnVec16; 4] {
    std::array::from_fn(|r| {
        let mut col = ColumnVec16::zero();
        for a in 0..4 {
            for b in 0..4 {
                col.set_entry(
                    a,
                    b,
                    IM * (n.n[a] * c64(delta(b, r), 0.0) - n.n[b] * c64(delta(a, r), 0.0)),
                );
            }
        }
        col
    })
}

/// Skew column with rational dependence on the wavevector:
/// `R^{rst}(a,b) = i·n_r n_s n_t / (2 n_a n_b) · [(δ_a^r−δ_a^s)(δ_b^s−δ_b^t) − (δ_b^r−δ_b^s)(δ_a^s−δ_a^t)]`.
///
/// Indices are 0-based and must be distinct. Cyclic permutations of `(r,s,t)`
/// leave the column unchanged; odd permutations flip its sign. Contracted
/// with an antisymmetric amplitude it reproduces the cyclic derivative sum
/// `i(n_r H_st + n_s H_tr + n_t H_rs)` exactly.
pub fn r_operator(n: &WaveVector, r: usize, s: usize, t: usize) -> Result<ColumnVec16> {
    assert!(r < 4 && s < 4 && t < 4 && r != s && s != t && r != t);
    n.require_regular()?;
    let mut col = ColumnVec16::zero();
    let num = IM * n.n[r] * n.n[s] * n.n[t];
    for a in 0..4 {
        for b in 0..4 {
            let bracket = (delta(a, r) - delta(a, s)) * (delta(b, s) - delta(b, t))
                - (delta(b, r) - delta(b, s)) * (delta(a, s) - delta(a, t));
            if bracket != 0.0 {
                col.set_entry(
                    a,
                    b,
                    num * c64(bracket, 0.0) / (c64(2.0, 0.0) * n.n[a] * n.n[b]),
                );
            }
        }
    }
    Ok(col)
}

/// Symmetric generator column for an index pair:
/// `Q^{rs}(a,b) = −[n_a(n_r δ_b^s − n_s δ_b^r) + n_b(n_r δ_a^s − n_s δ_a^r)]`.
///
/// For any distinct triple the weighted cyclic sum
/// `n_r Q^{st} + n_t Q^{rs} + n_s Q^{tr}` vanishes identically, which is why
/// three pairs sharing one index suffice as a basis of the symmetric λ = 1
/// family.
pub fn q_generator(n: &WaveVector, r: usize, s: usize) -> ColumnVec16 {
    assert!(r < 4 && s < 4 && r != s);
    let nc = n.components();
    let mut col = ColumnVec16::zero();
    for a in 0..4 {
        for b in 0..4 {
            let v = -(nc[a] * (nc[r] * c64(delta(b, s), 0.0) - nc[s] * c64(delta(b, r), 0.0))
                + nc[b] * (nc[r] * c64(delta(a, s), 0.0) - nc[s] * c64(delta(a, r), 0.0)));
            col.set_entry(a, b, v);
        }
    }
    col
}

fn basis_unchecked(k: usize, n: &WaveVector) -> Result<ColumnVec16> {
    let nc = n.components();
    let mut col = ColumnVec16::zero();
    match k {
        // symmetric rank-1 square: U(a,b) = −n_a n_b
        1 => {
            for a in 0..4 {
                for b in 0..4 {
                    col.set_entry(a, b, -nc[a] * nc[b]);
                }
            }
        }
        // the three generator columns with r = 1,2,3
        2..=4 => {
            col = p_columns(n)[k - 2];
        }
        // symmetric second-degree columns with (r,s) = (1,4),(2,4),(3,4)
        5..=7 => {
            col = q_generator(n, k - 5, 3);
        }
        8..=10 => {
            let (r, s, t) = CSK3_TRIPLES[k - 8];
            col = r_operator(n, r, s, t)?;
        }
        // symmetric products of generator rows, (r,s) over the six pairs
        11..=16 => {
            let (r, s) = CSY6_PAIRS[k - 11];
            for a in 0..4 {
                for b in 0..4 {
                    let pa = nc[r] * c64(delta(a, s), 0.0) - nc[s] * c64(delta(a, r), 0.0);
                    let pb = nc[r] * c64(delta(b, s), 0.0) - nc[s] * c64(delta(b, r), 0.0);
                    col.set_entry(a, b, -pa * pb);
                }
            }
        }
        _ => unreachable!("basis index must be 1..=16"),
    }
    Ok(col)
}

/// Basis column `k` (global index 1..=16) of the given subspace at `n`.
///
/// The index choices per family are fixed so that golden values reproduce:
/// `ASk3` uses r = 1,2,3; `ASy3` uses (r,s) = (1,4),(2,4),(3,4); `CSk3` uses
/// (r,s,t) = (2,3,4),(1,3,4),(1,2,4); `CSy6` uses the six pairs in
/// lexicographic order. Only `CSk3` requires a regular wavevector.
pub fn basis(space: SubspaceId, k: usize, n: &WaveVector) -> Result<ColumnVec16> {
    if !space.indices().contains(&k) {
        return Err(Error::IndexOutOfSubspace {
            index: k,
            subspace: space.label().to_string(),
        });
    }
    basis_unchecked(k, n)
}

/// Basis column by global index 1..=16.
pub fn basis_element(k: usize, n: &WaveVector) -> Result<ColumnVec16> {
    let space = SubspaceId::of_index(k).expect("basis index must be 1..=16");
    basis(space, k, n)
}

/// All sixteen basis columns at `n`.
pub fn all_basis(n: &WaveVector) -> Result<[ColumnVec16; 16]> {
    let mut out = [ColumnVec16::zero(); 16];
    for k in 1..=16 {
        out[k - 1] = basis_element(k, n)?;
    }
    Ok(out)
}

/// The 16×16 contraction matrix at a wavevector.
#[derive(Clone, Debug)]
pub struct M16 {
    pub k: DMatrix<C64>,
    pub n: WaveVector,
}

impl M16 {
    /// Frobenius norm of `K − Kᵀ` under the flat-index transpose.
    pub fn symmetry_defect(&self) -> f64 {
        (&self.k - self.k.transpose()).norm()
    }

    /// Applies the contraction to a column.
    pub fn apply(&self, u: &ColumnVec16) -> ColumnVec16 {
        let v = &self.k * u.to_dvector();
        let mut out = ColumnVec16::zero();
        for i in 0..16 {
            out.0[i] = v[i];
        }
        out
    }
}

/// Assembles `K[(ab),(ij)] = n_a n_i δ_bj + n_b n_j δ_ai`, the unique
/// non-trivial invariant contraction on the column space. Homogeneous of
/// degree 2 in `n` and symmetric under the flat-index transpose.
pub fn assemble_m16(n: &WaveVector) -> M16 {
    let nc = n.components();
    let mut k = DMatrix::<C64>::zeros(16, 16);
    for a in 0..4 {
        for b in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    k[(flatten(a, b), flatten(i, j))] = nc[a] * nc[i] * c64(delta(b, j), 0.0)
                        + nc[b] * nc[j] * c64(delta(a, i), 0.0);
                }
            }
        }
    }
    M16 { k, n: *n }
}

/// The trivial (diagonal) alternative contraction: `−(δ_m^r δ_n^s + δ_n^r δ_m^s)·(n·n)`.
pub fn assemble_m16_trivial(n: &WaveVector) -> M16 {
    let nn = n.n_dot_n();
    let mut k = DMatrix::<C64>::zeros(16, 16);
    for m in 0..4 {
        for nn_idx in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let coeff = delta(m, r) * delta(nn_idx, s) + delta(nn_idx, r) * delta(m, s);
                    if coeff != 0.0 {
                        k[(flatten(m, nn_idx), flatten(r, s))] = -nn * c64(coeff, 0.0);
                    }
                }
            }
        }
    }
    M16 { k, n: *n }
}

/// Maximum deviation allowed between a normalized eigenvalue and {0, 1, 2}.
pub const CLUSTER_TOL: f64 = 1e-6;

// Iterative decompositions run with a capped iteration count and a looser
// convergence epsilon: the spectrum is highly degenerate and the default
// machine-epsilon target can stall the QR sweep indefinitely.
const ITER_EPS: f64 = 1e-12;
const ITER_MAX: usize = 4000;

/// One eigenvalue cluster of the normalized contraction matrix.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    /// The integer eigenvalue this cluster collapses to (0, 1 or 2).
    pub lambda: u8,
    /// Number of normalized eigenvalues assigned to the cluster.
    pub multiplicity: usize,
    /// Orthonormal basis of the eigenspace, from the null space of `K/(n·n) − λI`.
    pub eigenvectors: Vec<ColumnVec16>,
    /// Worst relative residual `‖K·v − λ(n·n)v‖/‖v‖` over the extracted vectors.
    pub max_residual: f64,
}

/// Result of the eigenvalue decomposition of `K/(n·n)`.
#[derive(Clone, Debug)]
pub struct EigenReport {
    /// All sixteen normalized eigenvalues.
    pub normalized_eigenvalues: Vec<C64>,
    /// Multiplicities of the clusters at 0, 1, 2 (in that order).
    pub multiplicities: [usize; 3],
    /// Worst distance of any normalized eigenvalue from its nearest cluster.
    pub max_cluster_deviation: f64,
    pub clusters: Vec<EigenCluster>,
    /// Relative eigen-equation residual of each of the sixteen basis columns.
    pub basis_residuals: [f64; 16],
}

impl EigenReport {
    pub fn multiplicities_ok(&self) -> bool {
        self.multiplicities == [9, 6, 1]
    }
}

/// Solves the eigenproblem `K·U = λ·(n·n)·U` at a regular wavevector.
///
/// The normalized matrix `K/(n·n)` is treated as a general complex matrix
/// (it is complex-symmetric, not Hermitian): eigenvalues come from the Schur
/// form, eigenvectors from SVD null spaces of the shifted matrix. Every
/// basis column is substituted back as an independent verification.
pub fn eigendecompose(n: &WaveVector) -> Result<EigenReport> {
    n.require_regular()?;
    let m16 = assemble_m16(n);
    let nn = n.n_dot_n();
    let b = m16.k.map(|z| z / nn);

    let schur = b
        .clone()
        .try_schur(ITER_EPS, ITER_MAX)
        .ok_or_else(|| Error::SingularSystem("Schur iteration did not converge".to_string()))?;
    let eigenvalues = schur
        .eigenvalues()
        .ok_or_else(|| Error::SingularSystem("Schur eigenvalue extraction failed".to_string()))?;

    let mut multiplicities = [0usize; 3];
    let mut max_dev: f64 = 0.0;
    for lam in eigenvalues.iter() {
        let (cluster, dev) = nearest_cluster(*lam);
        if dev > CLUSTER_TOL {
            return Err(Error::ClusterFailure {
                value: format!("{lam}"),
                deviation: dev,
            });
        }
        multiplicities[cluster as usize] += 1;
        max_dev = max_dev.max(dev);
    }

    let mut clusters = Vec::with_capacity(3);
    for lambda in [0u8, 1, 2] {
        let shifted = &b - DMatrix::<C64>::identity(16, 16) * c64(lambda as f64, 0.0);
        let svd = shifted
            .try_svd(false, true, ITER_EPS, ITER_MAX)
            .ok_or_else(|| Error::SingularSystem("null-space SVD did not converge".to_string()))?;
        let v_t = svd.v_t.as_ref().expect("requested V^T");
        let scale = svd.singular_values[0].max(1.0);
        let mut eigenvectors = Vec::new();
        let mut max_residual: f64 = 0.0;
        for (i, sv) in svd.singular_values.iter().enumerate() {
            if *sv < 1e-8 * scale {
                // right singular vector = row i of V^T, conjugated
                let mut col = ColumnVec16::zero();
                for j in 0..16 {
                    col.0[j] = v_t[(i, j)].conj();
                }
                let resid = m16
                    .apply(&col)
                    .sub(&col.scaled(nn * c64(lambda as f64, 0.0)))
                    .norm()
                    / col.norm();
                max_residual = max_residual.max(resid);
                eigenvectors.push(col);
            }
        }
        clusters.push(EigenCluster {
            lambda,
            multiplicity: eigenvectors.len(),
            eigenvectors,
            max_residual,
        });
    }

    let mut basis_residuals = [0.0; 16];
    for k in 1..=16 {
        let space = SubspaceId::of_index(k).unwrap();
        let u = basis_element(k, n)?;
        let lhs = m16.apply(&u);
        let rhs = u.scaled(nn * c64(space.eigenvalue(), 0.0));
        basis_residuals[k - 1] = lhs.sub(&rhs).norm() / u.norm();
    }

    Ok(EigenReport {
        normalized_eigenvalues: eigenvalues.iter().cloned().collect(),
        multiplicities,
        max_cluster_deviation: max_dev,
        clusters,
        basis_residuals,
    })
}

fn nearest_cluster(lam: C64) -> (u8, f64) {
    let mut best = 0u8;
    let mut best_dev = f64::MAX;
    for target in [0u8, 1, 2] {
        let dev = (lam - c64(target as f64, 0.0)).norm();
        if dev < best_dev {
            best_dev = dev;
            best = target;
        }
    }
    (best, best_dev)
}

/// Normalized pairwise products of all sixteen basis columns.
#[derive(Clone, Debug)]
pub struct GramReport {
    /// `entries[k][l] = ⟨U^k, U^l⟩ / (‖U^k‖‖U^l‖)` with the bilinear pairing.
    pub entries: [[C64; 16]; 16],
    /// Largest |entry| between columns of different families.
    pub max_cross_cluster: f64,
    /// Condition number of each family's own (normalized) Gram block.
    pub cluster_conditions: [f64; 5],
}

/// Evaluates all pairwise basis products at `n` and summarizes the
/// cross-family orthogonality and the per-family conditioning.
pub fn gram_orthogonality(n: &WaveVector) -> Result<GramReport> {
    n.require_regular()?;
    let cols = all_basis(n)?;
    let norms: Vec<f64> = cols.iter().map(|c| c.norm()).collect();
    let mut entries = [[C64::default(); 16]; 16];
    let mut max_cross: f64 = 0.0;
    for k in 0..16 {
        for l in 0..16 {
            let e = cols[k].bilinear(&cols[l]) / c64(norms[k] * norms[l], 0.0);
            entries[k][l] = e;
            let same_family =
                SubspaceId::of_index(k + 1).unwrap() == SubspaceId::of_index(l + 1).unwrap();
            if !same_family {
                max_cross = max_cross.max(e.norm());
            }
        }
    }
    let mut cluster_conditions = [0.0; 5];
    for (ci, space) in SubspaceId::ALL.iter().enumerate() {
        let idx: Vec<usize> = space.indices().map(|k| k - 1).collect();
        let d = idx.len();
        let g = DMatrix::<C64>::from_fn(d, d, |i, j| entries[idx[i]][idx[j]]);
        let sv = g
            .try_svd(false, false, ITER_EPS, ITER_MAX)
            .ok_or_else(|| Error::SingularSystem("Gram SVD did not converge".to_string()))?
            .singular_values;
        cluster_conditions[ci] = sv[0] / sv[d - 1].max(f64::MIN_POSITIVE);
    }
    Ok(GramReport {
        entries,
        max_cross_cluster: max_cross,
        cluster_conditions,
    })
}

/// Condition-number ceiling above which Gram systems are rejected.
pub const GRAM_CONDITION_LIMIT: f64 = 1e12;

/// Oblique projection of `h` onto the span of one family's basis, through the
/// family's bilinear Gram matrix. Because the five families are mutually
/// orthogonal under the bilinear pairing, the five projections of any column
/// sum back to the column, and projecting a member of another family gives zero.
pub fn project(space: SubspaceId, h: &ColumnVec16, n: &WaveVector) -> Result<ColumnVec16> {
    n.require_regular()?;
    let cols: Vec<ColumnVec16> = space
        .indices()
        .map(|k| basis_element(k, n))
        .collect::<Result<_>>()?;
    let d = cols.len();
    let g = DMatrix::<C64>::from_fn(d, d, |i, j| cols[i].bilinear(&cols[j]));
    let sv = g
        .clone()
        .try_svd(false, false, ITER_EPS, ITER_MAX)
        .ok_or_else(|| Error::SingularSystem("Gram SVD did not converge".to_string()))?
        .singular_values;
    let cond = sv[0] / sv[d - 1].max(f64::MIN_POSITIVE);
    if cond > GRAM_CONDITION_LIMIT {
        return Err(Error::SingularGram(cond));
    }
    let rhs = DVector::from_iterator(d, cols.iter().map(|u| u.bilinear(h)));
    let coeffs = g.lu().solve(&rhs).ok_or(Error::SingularGram(cond))?;
    let mut out = ColumnVec16::zero();
    for (i, u) in cols.iter().enumerate() {
        out = out.add(&u.scaled(coeffs[i]));
    }
    Ok(out)
}
