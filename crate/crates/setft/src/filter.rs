//! Set convolution, one-hop filters, and frequency responses.
//!
//! Convolving with a filter `h` multiplies each Fourier coefficient by
//! the filter's frequency response. A one-hop filter is supported on the
//! empty set and singletons only, so a filtered oracle costs at most
//! `n + 1` raw queries per evaluation.

use std::cell::RefCell;

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::{DenseSetFunction, Model, SetFunctionOracle};
use crate::rng::{seeded_rng, standard_normal};
use crate::set::SubsetMask;

/// Filter with `h(∅) = 1`, free coefficients on singletons, and zero
/// everywhere else.
#[derive(Clone, Debug, PartialEq)]
pub struct OneHopFilter {
    singleton: Vec<f64>,
}

impl OneHopFilter {
    pub fn new(singleton_coeffs: Vec<f64>) -> Result<Self> {
        if singleton_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("one-hop filter coefficients must be finite"));
        }
        Ok(OneHopFilter {
            singleton: singleton_coeffs,
        })
    }

    /// Filter with i.i.d. standard-normal singleton coefficients,
    /// deterministic in the seed.
    pub fn sample(n: usize, seed: u64) -> Self {
        OneHopFilter::sample_with(n, &mut seeded_rng(seed))
    }

    pub fn sample_with(n: usize, rng: &mut impl Rng) -> Self {
        OneHopFilter {
            singleton: (0..n).map(|_| standard_normal(rng)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.singleton.len()
    }

    /// `h(∅)`, fixed to one.
    pub fn base(&self) -> f64 {
        1.0
    }

    /// `h({x_e})` for a 0-based element index.
    pub fn singleton(&self, e: usize) -> f64 {
        self.singleton[e]
    }

    pub fn singletons(&self) -> &[f64] {
        &self.singleton
    }
}

/// Oracle for the convolution `h * s`, wrapping (and consuming) the inner
/// oracle. Keep a [`SetFunctionOracle::counter`] handle beforehand to
/// observe the raw query count.
///
/// Shifts that coincide with the evaluation point are queried once: under
/// model 4 evaluating at `A` costs exactly `1 + n - |A|` inner queries,
/// under model 3 exactly `1 + |A|`, under model 5 exactly `1 + n`.
pub fn filtered_oracle(
    h: &OneHopFilter,
    inner: SetFunctionOracle,
    model: Model,
) -> SetFunctionOracle {
    let n = inner.n();
    assert_eq!(h.n(), n, "filter size mismatch");
    let h = h.clone();
    let inner = RefCell::new(inner);
    SetFunctionOracle::new(n, move |a| {
        let mut s = inner.borrow_mut();
        match model {
            Model::M4 => {
                // A ∪ {x} = A for x ∈ A.
                let mut self_weight = 1.0;
                for e in a.elements() {
                    self_weight += h.singleton(e);
                }
                let mut acc = self_weight * s.eval(a);
                for e in 0..n {
                    if !a.contains(e) {
                        acc += h.singleton(e) * s.eval(&a.with(e));
                    }
                }
                acc
            }
            Model::M3 => {
                // A \ {x} = A for x ∉ A.
                let mut self_weight = 1.0;
                for e in 0..n {
                    if !a.contains(e) {
                        self_weight += h.singleton(e);
                    }
                }
                let mut acc = self_weight * s.eval(a);
                for e in a.elements() {
                    acc += h.singleton(e) * s.eval(&a.without(e));
                }
                acc
            }
            Model::M5 => {
                let mut acc = s.eval(a);
                for e in 0..n {
                    let shifted = if a.contains(e) {
                        a.without(e)
                    } else {
                        a.with(e)
                    };
                    acc += h.singleton(e) * s.eval(&shifted);
                }
                acc
            }
        }
    })
}

/// Frequency response of a one-hop filter at frequency `B`.
///
/// Models 3 and 4 share `1 + Σ_{x ∉ B} h({x})`; the Walsh-Hadamard
/// response subtracts the in-set coefficients as well.
pub fn frequency_response(h: &OneHopFilter, b: &SubsetMask, model: Model) -> f64 {
    assert_eq!(h.n(), b.n(), "filter size mismatch");
    let mut acc = 1.0;
    for e in 0..h.n() {
        if !b.contains(e) {
            acc += h.singleton(e);
        } else if model == Model::M5 {
            acc -= h.singleton(e);
        }
    }
    acc
}

/// Dense set convolution `(h * s)(A) = Σ_Q h(Q) s(A ⊕ Q)` with the
/// model's shift. Costs `O(4^n)`; this is the reference path that the
/// one-hop fast paths are tested against.
pub fn convolve_dense(
    h: &DenseSetFunction,
    s: &DenseSetFunction,
    model: Model,
) -> Result<DenseSetFunction> {
    if h.n() != s.n() {
        return Err(Error::invalid(
            "convolution operands must share a ground set",
        ));
    }
    let n = s.n();
    DenseSetFunction::from_fn(n, |a| {
        crate::set::all_masks(n)
            .map(|q| h.value(&q) * s.value(&model.shift(a, &q)))
            .sum()
    })
}

/// Dense vector of a one-hop filter, for feeding [`convolve_dense`].
pub fn one_hop_dense(h: &OneHopFilter) -> Result<DenseSetFunction> {
    let n = h.n();
    DenseSetFunction::from_fn(n, |q| match q.cardinality() {
        0 => 1.0,
        1 => h.singleton(q.elements().next().expect("cardinality one")),
        _ => 0.0,
    })
}
