//! Closed-form quantities: the `E_k` hierarchy, Werner-like GHZ values and
//! thresholds, the two-qubit and generalized-GHZ optima, and the three-qubit
//! reference table.

use serde::Serialize;

use crate::error::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `floor(n/k)·k² + (n − floor(n/k)·k)²`, in exact integer arithmetic.
pub fn e_k(n: u64, k: u64) -> Result<u64> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            detail: format!("k = {k} must lie in [1, {n}]"),
        });
    }
    let blocks = n / k;
    let rest = n - blocks * k;
    Ok(blocks * k * k + rest * rest)
}

/// `E_1, ..., E_n` for one register size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    n: u64,
    e: Vec<u64>,
}

impl BoundTable {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "n",
                detail: "need at least one site".into(),
            });
        }
        let e = (1..=n).map(|k| e_k(n, k)).collect::<Result<_>>()?;
        Ok(Self { n, e })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `E_k` for `k` in `1..=n`.
    pub fn get(&self, k: u64) -> Option<u64> {
        (k >= 1).then(|| self.e.get((k - 1) as usize).copied()).flatten()
    }

    pub fn values(&self) -> &[u64] {
        &self.e
    }
}

fn check_normalized(a: f64, b: f64) -> Result<()> {
    let norm_sq = a * a + b * b;
    if !((norm_sq - 1.0).abs() <= NORMALIZATION_TOLERANCE) || a < 0.0 || b < 0.0 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// `2 + 4pq` for a two-qubit pure state with Schmidt coefficients `p, q`.
pub fn two_qubit_pure_value(p: f64, q: f64) -> Result<f64> {
    check_normalized(p, q)?;
    Ok(2.0 + 4.0 * p * q)
}

fn two_pow(n: u32) -> f64 {
    2f64.powi(n as i32)
}

/// `[λ − 2√μ (√(λ + μ) − √μ)] n²` with `μ = (1 − λ)/2ⁿ`.
pub fn werner_closed_form(n: u32, lambda: f64) -> f64 {
    let mu = (1.0 - lambda) / two_pow(n);
    let f = (lambda + mu).sqrt() - mu.sqrt();
    let nn = f64::from(n) * f64::from(n);
    (lambda - 2.0 * mu.sqrt() * f) * nn
}

/// Smallest `λ` at which the Werner-like GHZ mixture violates the separable
/// bound `n`.
pub fn lambda_threshold(n: u32) -> f64 {
    let nf = f64::from(n);
    let linear = (1.0 - 1.0 / two_pow(n - 1)) / nf;
    let radicand = (1.0 - 1.0 / nf + 1.0 / (two_pow(n) * nf)) / (two_pow(n - 2) * nf);
    linear + radicand.sqrt()
}

/// Root of `werner_closed_form(n, ·) = n` by bisection on `[0, 1]`.
/// The closed form is increasing in `λ`, from 0 to `n²`.
pub fn lambda_threshold_by_bisection(n: u32, tolerance: f64) -> f64 {
    let target = f64::from(n);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if werner_closed_form(n, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `1/(1 + 2^{n−1})`: the mixture is separable iff `λ` is at most this.
pub fn werner_separability_threshold(n: u32) -> f64 {
    1.0 / (1.0 + two_pow(n - 1))
}

/// Supremum of `I(α|000⟩ + β|111⟩, A_1 + A_2 + A_3)` over spin observables:
/// `max(3, 9 − 9(α² − β²)²)`.
///
/// With `s = a_13 + a_23 + a_33` and `c = (α² − β²)²` the objective is
/// `3 + (1 − c)s² − Σ a_j3²`; the aligned vertex gives `9 − 9c`, which only
/// wins while `c ≤ 2/3`. Past that the optimum is `3`, with every `a_j3 = 0`.
pub fn gen_ghz_value(alpha: f64, beta: f64) -> Result<f64> {
    check_normalized(alpha, beta)?;
    let c = (alpha * alpha - beta * beta).powi(2);
    Ok((9.0 - 9.0 * c).max(3.0))
}

/// Uncorrected `3 + 3[2 − 3(α² − β²)²]`, valid only while it exceeds 3.
pub fn gen_ghz_vertex_value(alpha: f64, beta: f64) -> Result<f64> {
    check_normalized(alpha, beta)?;
    let c = (alpha * alpha - beta * beta).powi(2);
    Ok(3.0 + 3.0 * (2.0 - 3.0 * c))
}

/// `√((1 − √(2/3))/2)`: both amplitudes must exceed this for the
/// generalized GHZ state to beat the separable value 3.
pub fn gen_ghz_detection_threshold() -> f64 {
    (0.5 * (1.0 - (2.0_f64 / 3.0).sqrt())).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaBracket {
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `1/(n−1) < λ_n < 1/(n−2)` for `8 ≤ n ≤ 12`, `1/n < λ_n < 1/(n−1)` above.
pub fn lambda_bracket_check(n: u32) -> Result<LambdaBracket> {
    if n < 8 {
        return Err(Error::OutOfRange {
            what: "n",
            detail: format!("bracket estimates start at n = 8, got {n}"),
        });
    }
    let nf = f64::from(n);
    let (lower, upper) = if n <= 12 {
        (1.0 / (nf - 1.0), 1.0 / (nf - 2.0))
    } else {
        (1.0 / nf, 1.0 / (nf - 1.0))
    };
    let l = lambda_threshold(n);
    Ok(LambdaBracket {
        lower,
        upper,
        holds: lower < l && l < upper,
    })
}

/// Maximum values per entanglement class (`ES_1`, `ES_2`, `ES_3`) for three
/// qubits. The MK and BI₂ rows are quoted constants; WY is computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceComparison {
    pub mk: [f64; 3],
    pub bi2: [f64; 3],
    pub wy: [f64; 3],
}

pub const MK_ROW: [f64; 3] = [1.0, std::f64::consts::SQRT_2, 2.0];
pub const BI2_ROW: [f64; 3] = [8.0, 8.0, 16.0];

pub fn reference_comparison() -> ReferenceComparison {
    let table = BoundTable::new(3).expect("n = 3 is valid");
    let v = table.values();
    ReferenceComparison {
        mk: MK_ROW,
        bi2: BI2_ROW,
        wy: [v[0] as f64, v[1] as f64, v[2] as f64],
    }
}
