//! Entanglement-depth certification from a nonlocal skew information value.
//!
//! A state in `ES_k` (at most k-entangled) satisfies `I(ρ) ≤ E_k`. A value
//! above `E_k` therefore certifies depth at least `k + 1`. The verdict is
//! one-sided: class 1 means "nothing certified", never "separable".

use serde::Serialize;

use crate::bounds::BoundTable;
use crate::error::{Error, Result};
use crate::observables::Axis;
use crate::states::{ghz_state, product_state, DensityMatrix, PureState};

pub const DEFAULT_CERTIFICATION_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementVerdict {
    pub n: u64,
    pub i_value: f64,
    pub margin: f64,
    /// Smallest k such that the state is certified not to lie in `ES_{k-1}`.
    pub certified_min_class: u64,
    pub fully_entangled_certified: bool,
    pub thresholds: BoundTable,
}

pub fn classify(i_value: f64, n: u64, margin: f64) -> Result<EntanglementVerdict> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            detail: format!("classification needs n >= 2, got {n}"),
        });
    }
    if !(i_value >= 0.0) || !i_value.is_finite() {
        return Err(Error::OutOfRange {
            what: "i_value",
            detail: format!("{i_value} must be finite and nonnegative"),
        });
    }
    if !(margin >= 0.0) {
        return Err(Error::OutOfRange {
            what: "margin",
            detail: format!("{margin} must be nonnegative"),
        });
    }
    let thresholds = BoundTable::new(n)?;
    let exceeded = thresholds
        .values()
        .iter()
        .filter(|&&e| i_value > e as f64 + margin)
        .count() as u64;
    let e_penultimate = thresholds.get(n - 1).expect("n >= 2") as f64;
    Ok(EntanglementVerdict {
        n,
        i_value,
        margin,
        certified_min_class: (1 + exceeded).min(n),
        fully_entangled_certified: i_value > e_penultimate + margin,
        thresholds,
    })
}

/// Sizes of the blocks used to attain `E_k`: `floor(n/k)` blocks of `k`
/// and one block with the remainder.
pub fn attainment_blocks(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            detail: format!("k = {k} must lie in [1, {n}]"),
        });
    }
    let mut blocks = vec![k; n / k];
    if !n.is_multiple_of(k) {
        blocks.push(n % k);
    }
    Ok(blocks)
}

/// Product of GHZ blocks attaining `E_k`; single-qubit blocks are `|0⟩`.
pub fn attainment_state(n: usize, k: usize) -> Result<DensityMatrix> {
    let factors = attainment_blocks(n, k)?
        .into_iter()
        .map(|size| {
            if size == 1 {
                Ok(PureState::basis(vec![2], 0)?.density())
            } else {
                Ok(ghz_state(size)?.density())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    product_state(&factors)
}

/// Per-site axes that attain `E_k` on [`attainment_state`]: `z` on GHZ
/// blocks, `x` on single-qubit `|0⟩` blocks.
pub fn attainment_axes(n: usize, k: usize) -> Result<Vec<Axis>> {
    Ok(attainment_blocks(n, k)?
        .into_iter()
        .flat_map(|size| {
            let axis = if size == 1 { Axis::X } else { Axis::Z };
            std::iter::repeat_n(axis, size)
        })
        .collect())
}
