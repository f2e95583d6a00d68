//! State families: pure states, GHZ and generalized GHZ, Werner-like GHZ
//! mixtures, products, convex mixtures, seeded random states and the
//! two-qubit Schmidt decomposition.
//!
//! Random states are drawn from `ChaCha8Rng::seed_from_u64(seed)`, consuming
//! standard normals in row-major order, real part before imaginary part.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, HermitianOperator};

pub const NORM_TOLERANCE: f64 = 1e-9;
pub const TRACE_TOLERANCE: f64 = 1e-9;
pub const EIGENVALUE_TOLERANCE: f64 = 1e-9;

fn total_dim(local_dims: &[usize]) -> Result<usize> {
    if local_dims.is_empty() {
        return Err(Error::InvalidSize("at least one site is required".into()));
    }
    if local_dims.contains(&0) {
        return Err(Error::InvalidSize("site dimensions must be positive".into()));
    }
    local_dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::InvalidSize("Hilbert space dimension overflows".into()))
}

/// Positive semidefinite, unit-trace operator over a tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    local_dims: Vec<usize>,
    operator: HermitianOperator,
}

impl DensityMatrix {
    /// Validates trace, spectrum and dimensions.
    pub fn new(local_dims: Vec<usize>, operator: HermitianOperator) -> Result<Self> {
        let dim = total_dim(&local_dims)?;
        if operator.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: operator.dim(),
            });
        }
        let trace = linalg::trace(operator.matrix()).re;
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::InvalidTrace { trace });
        }
        let spectral = operator.eigendecomposition()?;
        let min = spectral.eigenvalues[0];
        if min < -EIGENVALUE_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
        }
        Ok(Self {
            local_dims,
            operator,
        })
    }

    /// Skips the spectral check; for outputs valid by construction.
    pub(crate) fn from_trusted(local_dims: Vec<usize>, operator: HermitianOperator) -> Self {
        debug_assert_eq!(total_dim(&local_dims).ok(), Some(operator.dim()));
        Self {
            local_dims,
            operator,
        }
    }

    /// `|psi><psi|`.
    pub fn from_pure(psi: &PureState) -> Self {
        Self::from_trusted(
            psi.local_dims.clone(),
            HermitianOperator::symmetrized(ComplexMatrix::outer(&psi.amplitudes)),
        )
    }

    /// `I / dim` on the given sites.
    pub fn maximally_mixed(local_dims: Vec<usize>) -> Result<Self> {
        let dim = total_dim(&local_dims)?;
        Ok(Self::from_trusted(
            local_dims,
            HermitianOperator::symmetrized(ComplexMatrix::identity(dim).scale(1.0 / dim as f64)),
        ))
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn num_sites(&self) -> usize {
        self.local_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.operator.matrix()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let m = self.matrix().as_dmatrix();
        m.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_qubit_register(&self) -> bool {
        self.local_dims.iter().all(|&d| d == 2)
    }
}

/// Normalized state vector over a tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    local_dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(local_dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = total_dim(&local_dims)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            local_dims,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(local_dims: Vec<usize>, index: usize) -> Result<Self> {
        let dim = total_dim(&local_dims)?;
        if index >= dim {
            return Err(Error::OutOfRange {
                what: "basis index",
                detail: format!("{index} >= {dim}"),
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            local_dims,
            amplitudes,
        })
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Kronecker product of state vectors.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        let mut local_dims = self.local_dims.clone();
        local_dims.extend_from_slice(&other.local_dims);
        PureState {
            local_dims,
            amplitudes,
        }
    }
}

/// `p|phi1>|chi1> + q|phi2>|chi2>` with `p >= q >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtForm {
    pub p: f64,
    pub q: f64,
    pub basis_1: [[Complex64; 2]; 2],
    pub basis_2: [[Complex64; 2]; 2],
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (coef, k) in [(self.p, 0), (self.q, 1)] {
            for i in 0..2 {
                for j in 0..2 {
                    out[2 * i + j] += coef * self.basis_1[k][i] * self.basis_2[k][j];
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerGhzParams {
    n: usize,
    lambda: f64,
}

impl WernerGhzParams {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(format!("Werner GHZ needs n >= 2, got {n}")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange {
                what: "lambda",
                detail: format!("{lambda} not in [0, 1]"),
            });
        }
        Ok(Self { n, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Convex combination of states sharing one factorization.
#[derive(Debug, Clone)]
pub struct MixtureSpec {
    weights: Vec<f64>,
    components: Vec<DensityMatrix>,
}

impl MixtureSpec {
    pub fn new(weights: Vec<f64>, components: Vec<DensityMatrix>) -> Result<Self> {
        if weights.len() != components.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: components.len(),
            });
        }
        if components.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::OutOfRange {
                what: "mixture weight",
                detail: "weights must be nonnegative".into(),
            });
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq: total });
        }
        let dims = components[0].local_dims();
        for c in &components[1..] {
            if c.local_dims() != dims {
                return Err(Error::DimensionMismatch {
                    expected: components[0].dim(),
                    found: c.dim(),
                });
            }
        }
        Ok(Self {
            weights,
            components,
        })
    }
}

fn ghz_amplitudes(n: usize, alpha: Complex64, beta: Complex64) -> Vec<Complex64> {
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = alpha;
    amps[dim - 1] = beta;
    amps
}

/// `(|0...0> + |1...1>)/sqrt(2)` on `n` qubits.
pub fn ghz_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("GHZ needs n >= 2, got {n}")));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::InvalidSize(format!("{n} qubits is too many")));
    }
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(PureState {
        local_dims: vec![2; n],
        amplitudes: ghz_amplitudes(n, s, s),
    })
}

/// `alpha|000> + beta|111>`.
pub fn generalized_ghz(alpha: f64, beta: f64) -> Result<PureState> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::OutOfRange {
            what: "generalized GHZ amplitude",
            detail: format!("alpha = {alpha}, beta = {beta} must both be positive"),
        });
    }
    PureState::new(
        vec![2; 3],
        ghz_amplitudes(3, Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0)),
    )
}

/// `lambda |GHZ><GHZ| + (1 - lambda)/2^n I`.
pub fn werner_ghz(params: WernerGhzParams) -> DensityMatrix {
    let n = params.n;
    let dim = 1usize << n;
    let lambda = params.lambda;
    let noise = (1.0 - lambda) / dim as f64;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(noise, 0.0);
    }
    let half = Complex64::new(lambda / 2.0, 0.0);
    for &i in &[0, dim - 1] {
        for &j in &[0, dim - 1] {
            m[(i, j)] += half;
        }
    }
    DensityMatrix::from_trusted(
        vec![2; n],
        HermitianOperator::symmetrized(ComplexMatrix::from_dmatrix(m)),
    )
}

/// `rho_1 ⊗ ... ⊗ rho_n`.
pub fn product_state(locals: &[DensityMatrix]) -> Result<DensityMatrix> {
    if locals.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let factors: Vec<ComplexMatrix> = locals.iter().map(|d| d.matrix().clone()).collect();
    let local_dims = locals.iter().flat_map(|d| d.local_dims().iter().copied()).collect();
    let m = linalg::tensor_product(&factors)?;
    Ok(DensityMatrix::from_trusted(local_dims, HermitianOperator::symmetrized(m)))
}

/// Convex combination described by `spec`.
pub fn mix(spec: &MixtureSpec) -> DensityMatrix {
    let first = &spec.components[0];
    let dim = first.dim();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (w, c) in spec.weights.iter().zip(&spec.components) {
        acc += c.matrix().as_dmatrix() * Complex64::new(*w, 0.0);
    }
    DensityMatrix::from_trusted(
        first.local_dims().to_vec(),
        HermitianOperator::symmetrized(ComplexMatrix::from_dmatrix(acc)),
    )
}

/// Schmidt decomposition of a two-qubit pure state via the SVD of its
/// 2x2 amplitude matrix. The largest-magnitude component of `|phi1>` is made
/// real and nonnegative; the compensating phase goes into `|chi1>`, so the
/// reconstruction matches the input exactly.
pub fn schmidt_decompose_two_qubit(psi: &PureState) -> Result<SchmidtForm> {
    if psi.local_dims() != [2, 2] {
        return Err(Error::WrongShape(format!(
            "expected local dims [2, 2], got {:?}",
            psi.local_dims()
        )));
    }
    let a = psi.amplitudes();
    let m = nalgebra::Matrix2::new(a[0], a[1], a[2], a[3]);
    let svd = SVD::new(m, true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order = [0usize, 1];
    if svd.singular_values[1] > svd.singular_values[0] {
        order = [1, 0];
    }
    let mut basis_1 = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut basis_2 = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (slot, &k) in order.iter().enumerate() {
        basis_1[slot] = [u[(0, k)], u[(1, k)]];
        // M = U S V^H, so the second-party vector is row k of V^H.
        basis_2[slot] = [v_t[(k, 0)], v_t[(k, 1)]];
    }
    let lead = if basis_1[0][0].norm() >= basis_1[0][1].norm() {
        basis_1[0][0]
    } else {
        basis_1[0][1]
    };
    if lead.norm() > 0.0 {
        let phase = lead / lead.norm();
        for z in basis_1[0].iter_mut() {
            *z /= phase;
        }
        for z in basis_2[0].iter_mut() {
            *z *= phase;
        }
    }
    let p = svd.singular_values[order[0]];
    let q = svd.singular_values[order[1]];
    // renormalize against rounding so p^2 + q^2 = 1 exactly to machine precision
    let norm = (p * p + q * q).sqrt();
    Ok(SchmidtForm {
        p: p / norm,
        q: q / norm,
        basis_1,
        basis_2,
    })
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn random_pure(local_dims: &[usize], seed: u64) -> Result<PureState> {
    let dim = total_dim(local_dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_pure_with(local_dims.to_vec(), dim, &mut rng))
}

fn random_pure_with(local_dims: Vec<usize>, dim: usize, rng: &mut ChaCha8Rng) -> PureState {
    let mut amplitudes: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amplitudes.iter_mut() {
        *a /= norm;
    }
    PureState {
        local_dims,
        amplitudes,
    }
}

/// `G G† / tr(G G†)` with `G` a `dim x rank` complex Gaussian matrix.
pub fn random_density(local_dims: &[usize], rank: usize, seed: u64) -> Result<DensityMatrix> {
    let dim = total_dim(local_dims)?;
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank(rank));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DMatrix::<Complex64>::zeros(dim, rank);
    for i in 0..dim {
        for j in 0..rank {
            g[(i, j)] = gaussian(&mut rng);
        }
    }
    let gg = &g * g.adjoint();
    let tr = gg.trace().re;
    Ok(DensityMatrix::from_trusted(
        local_dims.to_vec(),
        HermitianOperator::symmetrized(ComplexMatrix::from_dmatrix(gg / Complex64::new(tr, 0.0))),
    ))
}

/// Product of `n` independent Haar-random qubit states, drawn in site order
/// from one seeded stream.
pub fn random_product_pure(n: usize, seed: u64) -> Result<PureState> {
    if n == 0 {
        return Err(Error::InvalidSize("at least one site is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = random_pure_with(vec![2], 2, &mut rng);
    for _ in 1..n {
        state = state.tensor(&random_pure_with(vec![2], 2, &mut rng));
    }
    Ok(state)
}

/// Separable state: a mixture of `terms` random product states whose
/// factors are random qubit density matrices of rank 1 or 2. Weights are
/// Dirichlet(1, ..., 1).
pub fn random_separable(n: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    if n == 0 || terms == 0 {
        return Err(Error::InvalidSize("need at least one site and one term".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = Vec::with_capacity(terms);
    for _ in 0..terms {
        let locals: Vec<DensityMatrix> = (0..n)
            .map(|_| {
                let rank = rng.random_range(1..=2);
                let s = rng.random::<u64>();
                random_density(&[2], rank, s).expect("valid rank")
            })
            .collect();
        components.push(product_state(&locals)?);
    }
    let raw: Vec<f64> = (0..terms)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|w| w / total).collect();
    Ok(mix(&MixtureSpec::new(weights, components)?))
}
