//! Set-function values: dense vectors, counting query oracles, and sparse
//! Fourier spectra.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::set::SubsetMask;

/// Shift model selecting a Fourier basis.
///
/// * `M3` shifts by set difference `A \ Q` (zeta-transform basis),
/// * `M4` shifts by union `A ∪ Q` (W-transform basis),
/// * `M5` shifts by symmetric difference (classical Walsh-Hadamard).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    M3,
    M4,
    M5,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::M3, Model::M4, Model::M5];

    pub fn from_id(id: u8) -> Result<Model> {
        match id {
            3 => Ok(Model::M3),
            4 => Ok(Model::M4),
            5 => Ok(Model::M5),
            other => Err(Error::invalid(format!(
                "unknown model {other}, expected 3, 4 or 5"
            ))),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            Model::M3 => 3,
            Model::M4 => 4,
            Model::M5 => 5,
        }
    }

    /// The model's shift applied to a query point: where `s` must be read
    /// to evaluate the `Q`-translate at `A`.
    pub fn shift(self, a: &SubsetMask, q: &SubsetMask) -> SubsetMask {
        match self {
            Model::M3 => a.difference(q),
            Model::M4 => a.union(q),
            Model::M5 => a.symmetric_difference(q),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model {}", self.id())
    }
}

/// A set function stored as all `2^n` values in dense rank order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSetFunction {
    n: usize,
    values: Vec<f64>,
}

impl DenseSetFunction {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        let len = dense_len(n)?;
        if values.len() != len {
            return Err(Error::invalid(format!(
                "dense vector for n = {n} needs {len} values, got {}",
                values.len()
            )));
        }
        Ok(DenseSetFunction { n, values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Ok(DenseSetFunction {
            n,
            values: vec![0.0; dense_len(n)?],
        })
    }

    /// Tabulate a function over all subsets.
    pub fn from_fn(n: usize, mut f: impl FnMut(&SubsetMask) -> f64) -> Result<Self> {
        let len = dense_len(n)?;
        let values = (0..len)
            .map(|rank| f(&SubsetMask::from_lex_rank(n, rank)))
            .collect();
        Ok(DenseSetFunction { n, values })
    }

    /// Query an oracle on every subset; costs `2^n` queries.
    pub fn from_oracle(oracle: &mut SetFunctionOracle) -> Result<Self> {
        DenseSetFunction::from_fn(oracle.n(), |a| oracle.eval(a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value_at(&self, rank: usize) -> f64 {
        self.values[rank]
    }

    pub fn value(&self, a: &SubsetMask) -> f64 {
        assert_eq!(a.n(), self.n, "mask size mismatch");
        self.values[a.lex_rank()]
    }
}

fn dense_len(n: usize) -> Result<usize> {
    1usize
        .checked_shl(n as u32)
        .filter(|_| n < usize::BITS as usize)
        .ok_or(Error::Capacity { n })
}

/// Shared handle on an oracle's query counter.
///
/// Wrappers such as filtered oracles take ownership of the oracle they
/// wrap; keeping a counter handle is how callers observe the inner
/// query count afterwards.
#[derive(Clone)]
pub struct QueryCounter(Rc<Cell<u64>>);

impl QueryCounter {
    pub fn get(&self) -> u64 {
        self.0.get()
    }
}

/// Query access to a set function with a monotone query counter.
///
/// Every [`SetFunctionOracle::eval`] call increments the counter by one.
/// Oracles are single-threaded values; cloning one yields an oracle that
/// evaluates identically but starts counting from zero, which is how
/// independent repetitions of an experiment get separate accounting.
pub struct SetFunctionOracle {
    n: usize,
    counter: Rc<Cell<u64>>,
    eval_fn: Rc<dyn Fn(&SubsetMask) -> f64>,
}

impl SetFunctionOracle {
    pub fn new(n: usize, eval_fn: impl Fn(&SubsetMask) -> f64 + 'static) -> Self {
        SetFunctionOracle {
            n,
            counter: Rc::new(Cell::new(0)),
            eval_fn: Rc::new(eval_fn),
        }
    }

    /// Oracle backed by a dense vector: `eval(A) = values[rank(A)]`.
    pub fn from_dense(f: DenseSetFunction) -> Self {
        SetFunctionOracle::new(f.n(), move |a| f.value(a))
    }

    /// Oracle that evaluates a sparse spectrum in `O(k)` per query.
    pub fn from_sparse(ft: SparseFT) -> Self {
        SetFunctionOracle::new(ft.n(), move |a| ft.evaluate(a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&mut self, a: &SubsetMask) -> f64 {
        assert_eq!(a.n(), self.n, "mask size mismatch");
        self.counter.set(self.counter.get() + 1);
        (self.eval_fn)(a)
    }

    pub fn query_count(&self) -> u64 {
        self.counter.get()
    }

    /// Handle that keeps reading this oracle's counter after the oracle
    /// itself has been moved into a wrapper.
    pub fn counter(&self) -> QueryCounter {
        QueryCounter(Rc::clone(&self.counter))
    }
}

impl Clone for SetFunctionOracle {
    fn clone(&self) -> Self {
        SetFunctionOracle {
            n: self.n,
            counter: Rc::new(Cell::new(0)),
            eval_fn: Rc::clone(&self.eval_fn),
        }
    }
}

impl fmt::Debug for SetFunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SetFunctionOracle(n={}, queries={})",
            self.n,
            self.query_count()
        )
    }
}

/// A sparse Fourier spectrum: frequency masks mapped to nonzero
/// coefficients, tagged with the basis they belong to.
///
/// Exact zeros are never stored; inserting `0.0` is a no-op.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseFT {
    n: usize,
    model: Model,
    entries: BTreeMap<SubsetMask, f64>,
}

impl SparseFT {
    pub fn new(n: usize, model: Model) -> Self {
        SparseFT {
            n,
            model,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(n: usize, model: Model, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, f64)>,
    {
        let mut ft = SparseFT::new(n, model);
        for (mask, value) in entries {
            if mask.n() != n {
                return Err(Error::invalid(format!(
                    "frequency {mask:?} does not fit ground set of size {n}"
                )));
            }
            if !value.is_finite() {
                return Err(Error::invalid(format!("non-finite coefficient at {mask}")));
            }
            if value != 0.0 {
                ft.entries.insert(mask, value);
            }
        }
        Ok(ft)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Number of stored (nonzero) coefficients.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Insert a coefficient; exact zeros are dropped.
    pub fn insert(&mut self, mask: SubsetMask, value: f64) {
        assert_eq!(mask.n(), self.n, "mask size mismatch");
        if value != 0.0 {
            self.entries.insert(mask, value);
        } else {
            self.entries.remove(&mask);
        }
    }

    pub fn get(&self, mask: &SubsetMask) -> Option<f64> {
        self.entries.get(mask).copied()
    }

    /// Coefficient at a frequency, zero when absent.
    pub fn coefficient(&self, mask: &SubsetMask) -> f64 {
        self.get(mask).unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SubsetMask, f64)> {
        self.entries.iter().map(|(m, &v)| (m, v))
    }

    pub fn support(&self) -> impl Iterator<Item = &SubsetMask> {
        self.entries.keys()
    }

    /// Evaluate the represented set function at `a` by summing only the
    /// stored coefficients the model's synthesis rule selects.
    pub fn evaluate(&self, a: &SubsetMask) -> f64 {
        assert_eq!(a.n(), self.n, "mask size mismatch");
        // The trailing + 0.0 turns an empty sum's -0.0 into 0.0.
        match self.model {
            Model::M4 => {
                self.entries
                    .iter()
                    .filter(|(b, _)| b.is_disjoint(a))
                    .map(|(_, &v)| v)
                    .sum::<f64>()
                    + 0.0
            }
            Model::M3 => {
                self.entries
                    .iter()
                    .filter(|(b, _)| b.is_subset_of(a))
                    .map(|(b, &v)| if b.cardinality() % 2 == 1 { -v } else { v })
                    .sum::<f64>()
                    + 0.0
            }
            Model::M5 => {
                let sum: f64 = self
                    .entries
                    .iter()
                    .map(|(b, &v)| if a.intersection_parity(b) { -v } else { v })
                    .sum();
                sum * 2f64.powi(-(self.n as i32)) + 0.0
            }
        }
    }

    /// Scatter the coefficients into a dense vector (still in the
    /// frequency domain).
    pub fn to_dense_coefficients(&self) -> Result<DenseSetFunction> {
        let mut dense = DenseSetFunction::zeros(self.n)?;
        for (mask, &value) in &self.entries {
            dense.values_mut()[mask.lex_rank()] = value;
        }
        Ok(dense)
    }

    /// Largest absolute difference against another spectrum over the
    /// union of both supports. Errors on model or size mismatch.
    pub fn max_abs_difference(&self, other: &SparseFT) -> Result<f64> {
        if self.n != other.n || self.model != other.model {
            return Err(Error::invalid("cannot compare spectra of different bases"));
        }
        let mut worst = 0f64;
        for (mask, value) in self.iter() {
            worst = worst.max((value - other.coefficient(mask)).abs());
        }
        for (mask, value) in other.iter() {
            worst = worst.max((value - self.coefficient(mask)).abs());
        }
        Ok(worst)
    }
}
