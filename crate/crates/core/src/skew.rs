//! Wigner–Yanase skew information
//!
//! ```text
//! I(ρ, A) = tr ρA² − tr ρ^{1/2} A ρ^{1/2} A = −½ tr [ρ^{1/2}, A]²
//! ```
//!
//! The trace form is the default path. The commutator form is kept as an
//! independent cross-check, and pure states have a variance shortcut.

use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, ComplexMatrix, HermitianOperator};
use crate::observables::{right_multiply_local_sum, LocalObservableSet};
use crate::states::{DensityMatrix, PureState};

/// Values in `[-NEGATIVE_CLAMP, 0)` are rounded up to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewForm {
    TraceForm,
    CommutatorForm,
    PureVariance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SkewResult {
    pub value: f64,
    pub form_used: SkewForm,
}

fn finish(value: f64, form_used: SkewForm) -> Result<SkewResult> {
    if value < -NEGATIVE_CLAMP || value.is_nan() {
        return Err(Error::NegativeSkew { value });
    }
    Ok(SkewResult {
        value: value.max(0.0),
        form_used,
    })
}

fn check_dims(dim: usize, a: &HermitianOperator) -> Result<()> {
    if a.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: a.dim(),
        });
    }
    Ok(())
}

/// `tr(Y†Y) − Re tr(Y Y)` with `Y = ρ^{1/2} A`.
fn trace_form_from_product(y: &ComplexMatrix) -> f64 {
    let m = y.as_dmatrix();
    let n = m.nrows();
    let frob: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let mut tr_sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            tr_sq += (m[(i, j)] * m[(j, i)]).re;
        }
    }
    frob - tr_sq
}

/// Skew information via `tr ρA² − tr ρ^{1/2} A ρ^{1/2} A`.
pub fn skew_information(rho: &DensityMatrix, a: &HermitianOperator) -> Result<SkewResult> {
    check_dims(rho.dim(), a)?;
    let sqrt_rho = linalg::psd_sqrt(rho.operator())?;
    let y = sqrt_rho.matrix() * a.matrix();
    finish(trace_form_from_product(&y), SkewForm::TraceForm)
}

/// Skew information via `−½ tr [ρ^{1/2}, A]²`.
pub fn skew_information_commutator(rho: &DensityMatrix, a: &HermitianOperator) -> Result<SkewResult> {
    check_dims(rho.dim(), a)?;
    let sqrt_rho = linalg::psd_sqrt(rho.operator())?;
    let sa = sqrt_rho.matrix() * a.matrix();
    let as_ = a.matrix() * sqrt_rho.matrix();
    let comm = &sa - &as_;
    let value = -0.5 * linalg::trace(&(&comm * &comm)).re;
    finish(value, SkewForm::CommutatorForm)
}

/// Variance `⟨ψ|A²|ψ⟩ − ⟨ψ|A|ψ⟩²`.
pub fn pure_state_skew(psi: &PureState, a: &HermitianOperator) -> Result<SkewResult> {
    check_dims(psi.dim(), a)?;
    let v = DVector::from_column_slice(psi.amplitudes());
    let av = a.matrix().as_dmatrix() * &v;
    // A Hermitian: <A²> = |A ψ|², <A> = <ψ|Aψ>
    let second = av.norm_squared();
    let first = v.dotc(&av).re;
    finish(second - first * first, SkewForm::PureVariance)
}

/// Holds `ρ^{1/2}` so many observables can be scored against one state.
#[derive(Debug, Clone)]
pub struct SkewEvaluator {
    local_dims: Vec<usize>,
    sqrt_rho: HermitianOperator,
}

impl SkewEvaluator {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            local_dims: rho.local_dims().to_vec(),
            sqrt_rho: linalg::psd_sqrt(rho.operator())?,
        })
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn sqrt_rho(&self) -> &HermitianOperator {
        &self.sqrt_rho
    }

    pub fn evaluate(&self, a: &HermitianOperator) -> Result<SkewResult> {
        check_dims(self.sqrt_rho.dim(), a)?;
        let y = self.sqrt_rho.matrix() * a.matrix();
        finish(trace_form_from_product(&y), SkewForm::TraceForm)
    }

    /// `I(ρ, A_1 + ... + A_n)` using the structured local-sum product.
    pub fn evaluate_local_sum(&self, set: &LocalObservableSet) -> Result<SkewResult> {
        let y = right_multiply_local_sum(self.sqrt_rho.matrix(), set, &self.local_dims)?;
        finish(trace_form_from_product(&y), SkewForm::TraceForm)
    }

    /// Scores every observable set; output order matches input order.
    pub fn evaluate_batch(
        &self,
        sets: &[LocalObservableSet],
        execution: Execution,
    ) -> Vec<Result<SkewResult>> {
        execution.map(sets, |s| self.evaluate_local_sum(s))
    }
}
