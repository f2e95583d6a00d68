//! Spin observables (`A^2 = 1`), their Bloch parameterization on qubits,
//! and the local sum `A_1 + ... + A_n` on the full register.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, HermitianOperator};

pub const UNIT_TOLERANCE: f64 = 1e-9;
pub const INVOLUTION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn bloch(self) -> BlochVector {
        match self {
            Axis::X => BlochVector([1.0, 0.0, 0.0]),
            Axis::Y => BlochVector([0.0, 1.0, 0.0]),
            Axis::Z => BlochVector([0.0, 0.0, 1.0]),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }

    /// Parses an axis string such as `"zzx"`, one character per site.
    pub fn parse_list(s: &str) -> Result<Vec<Axis>> {
        s.chars()
            .map(|ch| match ch.to_ascii_lowercase() {
                'x' => Ok(Axis::X),
                'y' => Ok(Axis::Y),
                'z' => Ok(Axis::Z),
                other => Err(Error::OutOfRange {
                    what: "axis",
                    detail: format!("'{other}' is not one of x, y, z"),
                }),
            })
            .collect()
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match Axis::parse_list(s)?.as_slice() {
            [a] => Ok(*a),
            _ => Err(Error::OutOfRange {
                what: "axis",
                detail: format!("expected a single character, got {s:?}"),
            }),
        }
    }
}

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(components: [f64; 3]) -> Result<Self> {
        let norm_sq: f64 = components.iter().map(|a| a * a).sum();
        if !((norm_sq - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(Error::NotUnitVector { norm_sq });
        }
        Ok(Self(components))
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    /// Polar and azimuthal angles with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn to_angles(&self) -> (f64, f64) {
        let [x, y, z] = self.0;
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x).rem_euclid(std::f64::consts::TAU);
        (theta, phi)
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;
    fn try_from(value: [f64; 3]) -> Result<Self> {
        Self::new(value)
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(value: BlochVector) -> Self {
        value.0
    }
}

/// A single-site observable with spectrum in `{-1, +1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSpinObservable {
    operator: HermitianOperator,
    bloch: Option<BlochVector>,
}

impl LocalSpinObservable {
    /// Wraps a Hermitian operator after checking `A^2 = 1`. Works for any
    /// site dimension; qubit operators get their Bloch vector recovered.
    pub fn from_involution(operator: HermitianOperator) -> Result<Self> {
        let dim = operator.dim();
        let sq = operator.matrix() * operator.matrix();
        let deviation = sq.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > INVOLUTION_TOLERANCE {
            return Err(Error::NotInvolution { deviation });
        }
        let bloch = if dim == 2 {
            let m = operator.matrix();
            let a = [m.get(0, 1).re, -m.get(0, 1).im, m.get(0, 0).re];
            // ±identity is an involution without a Bloch vector
            BlochVector::new(a).ok()
        } else {
            None
        };
        Ok(Self { operator, bloch })
    }

    pub fn site_dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn bloch(&self) -> Option<BlochVector> {
        self.bloch
    }
}

/// `a · σ` for a unit Bloch vector.
pub fn spin_from_bloch(b: BlochVector) -> LocalSpinObservable {
    let [x, y, z] = b.0;
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(z, 0.0),
            Complex64::new(x, -y),
            Complex64::new(x, y),
            Complex64::new(-z, 0.0),
        ],
    );
    LocalSpinObservable {
        operator: HermitianOperator::symmetrized(ComplexMatrix::from_dmatrix(m)),
        bloch: Some(b),
    }
}

pub fn pauli(axis: Axis) -> LocalSpinObservable {
    spin_from_bloch(axis.bloch())
}

/// One spin observable per site.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalObservableSet {
    sites: Vec<LocalSpinObservable>,
}

impl LocalObservableSet {
    pub fn new(sites: Vec<LocalSpinObservable>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidSize("observable set must be nonempty".into()));
        }
        Ok(Self { sites })
    }

    pub fn from_axes(axes: &[Axis]) -> Result<Self> {
        Self::new(axes.iter().map(|&a| pauli(a)).collect())
    }

    pub fn from_bloch(vectors: &[BlochVector]) -> Result<Self> {
        Self::new(vectors.iter().map(|&b| spin_from_bloch(b)).collect())
    }

    /// Pairs of `(θ, φ)` per site.
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        if !angles.len().is_multiple_of(2) {
            return Err(Error::WrongShape(format!(
                "expected (theta, phi) pairs, got {} angles",
                angles.len()
            )));
        }
        Self::new(
            angles
                .chunks_exact(2)
                .map(|p| spin_from_bloch(BlochVector::from_angles(p[0], p[1])))
                .collect(),
        )
    }

    pub fn sites(&self) -> &[LocalSpinObservable] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn site_dims(&self) -> Vec<usize> {
        self.sites.iter().map(|s| s.site_dim()).collect()
    }

    pub fn bloch_vectors(&self) -> Option<Vec<BlochVector>> {
        self.sites.iter().map(|s| s.bloch()).collect()
    }

    fn check_dims(&self, local_dims: &[usize]) -> Result<()> {
        if self.site_dims() != local_dims {
            return Err(Error::DimensionMismatch {
                expected: local_dims.iter().product(),
                found: self.site_dims().iter().product(),
            });
        }
        Ok(())
    }
}

/// `Σ_j 1 ⊗ ... ⊗ A_j ⊗ ... ⊗ 1` on the full register.
pub fn local_sum_operator(set: &LocalObservableSet) -> Result<HermitianOperator> {
    let dims = set.site_dims();
    let total: usize = dims.iter().product();
    let mut acc = ComplexMatrix::zeros(total);
    for (j, site) in set.sites().iter().enumerate() {
        let left: usize = dims[..j].iter().product();
        let right: usize = dims[j + 1..].iter().product();
        let term = linalg::tensor_product(&[
            ComplexMatrix::identity(left),
            site.operator().matrix().clone(),
            ComplexMatrix::identity(right),
        ])?;
        acc = &acc + &term;
    }
    Ok(HermitianOperator::symmetrized(acc))
}

/// `X · (A_1 + ... + A_n)` without forming the dense local sum.
///
/// Costs `O(dim^2 · Σ d_j)` instead of a dense `O(dim^3)` product.
pub fn right_multiply_local_sum(
    x: &ComplexMatrix,
    set: &LocalObservableSet,
    local_dims: &[usize],
) -> Result<ComplexMatrix> {
    set.check_dims(local_dims)?;
    let dim = x.dim();
    let total: usize = local_dims.iter().product();
    if dim != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: dim,
        });
    }
    let xm = x.as_dmatrix();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    let mut stride = total;
    for (site, &d) in set.sites().iter().zip(local_dims) {
        stride /= d;
        let a = site.operator().matrix();
        for c in 0..dim {
            let digit = (c / stride) % d;
            let base = c - digit * stride;
            for t in 0..d {
                let coef = a.get(t, digit);
                if coef == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = base + t * stride;
                let mut col = out.column_mut(c);
                col.axpy(coef, &xm.column(src), Complex64::new(1.0, 0.0));
            }
        }
    }
    Ok(ComplexMatrix::from_dmatrix(out))
}
