//! Sparse set-function Fourier transforms learned from oracle queries.
//!
//! The learner walks the chain of sub-ground-sets `∅ ⊂ {x_1} ⊂ {x_1,x_2}
//! ⊂ .. ⊂ N`, maintaining the support and coefficients of the restricted
//! spectrum at each step. A restricted coefficient at frequency `B`
//! splits into the coefficients at `B` and `B ∪ {x_i}` one step later, so
//! (absent cancellations) the known support at step `i-1` yields a
//! candidate superset at step `i`, whose coefficients are recovered from
//! one triangular solve; every query from the previous step is reused,
//! giving at most `nk - k·log2(k) + 2k` queries for a `k`-sparse
//! function. [`ssft_plus`] additionally convolves the oracle with a
//! random one-hop filter first, which repairs (almost surely) the
//! cancellations that make the plain chain fail on functions such as
//! unit-weight graph cuts.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filter::{filtered_oracle, frequency_response, OneHopFilter};
use crate::function::{Model, SetFunctionOracle, SparseFT};
use crate::linalg::{least_squares, RowMatrix};
use crate::rng::{seeded_stream, STREAM_LS_SAMPLER};
use crate::set::SubsetMask;

/// Frequency responses below this magnitude are treated as degenerate.
const MIN_RESPONSE: f64 = 1e-12;

/// Tuning knobs for [`ssft`], [`ssft_plus`], and [`solve_known_support`].
#[derive(Clone, Debug)]
pub struct SsftConfig {
    pub model: Model,
    /// Solved coefficients below this magnitude count as zero.
    pub epsilon: f64,
    /// Per-step cap on the support size; the largest-magnitude entries
    /// survive and the run is flagged as truncated.
    pub k_max: usize,
    /// Seed for the random one-hop filter of [`ssft_plus`] and for the
    /// model-5 least-squares sampler.
    pub seed: u64,
    /// Row oversampling factor of the model-5 least-squares systems.
    pub ls_oversampling: f64,
    /// Keep the empty frequency in the step-0 support even when `s(∅)`
    /// (`s(N)` for model 3) falls below epsilon.
    ///
    /// The plain chain reads a structural zero at step 0 for every
    /// function that vanishes on its base query point (graph cuts and
    /// facility-location objectives alike) and stops with the zero
    /// function. Pinning the start lets the step-1 solve decide instead,
    /// for at most one extra query. Off by default; the filtered learner
    /// [`ssft_plus`] needs no pinning.
    pub pin_empty_start: bool,
}

impl SsftConfig {
    /// Defaults for exact (noise-free) oracles.
    pub fn new(model: Model) -> Self {
        SsftConfig {
            model,
            epsilon: 1e-8,
            k_max: 1000,
            seed: 0,
            ls_oversampling: 2.0,
            pin_empty_start: false,
        }
    }

    /// Defaults for experiment pipelines on measured data.
    pub fn experiment(model: Model) -> Self {
        SsftConfig {
            epsilon: 1e-3,
            ..SsftConfig::new(model)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::invalid("epsilon must be finite and non-negative"));
        }
        if self.k_max == 0 {
            return Err(Error::invalid("k_max must be at least one"));
        }
        if !(self.ls_oversampling >= 1.0 && self.ls_oversampling.is_finite()) {
            return Err(Error::invalid("ls_oversampling must be at least one"));
        }
        Ok(())
    }
}

/// Outcome of one learner run.
#[derive(Clone, Debug)]
pub struct SsftReport {
    pub result: SparseFT,
    /// Raw oracle evaluations consumed (for [`ssft_plus`], the queries of
    /// the unfiltered oracle underneath the filter).
    pub queries_used: u64,
    /// Support size after each chain step, `n + 1` entries.
    pub support_sizes_per_step: Vec<usize>,
    /// True when some step had to drop entries to honor `k_max`.
    pub truncated: bool,
    /// Seed that influenced the run, when randomness was involved.
    pub seed_used: Option<u64>,
}

fn query(
    cache: &mut HashMap<SubsetMask, f64>,
    oracle: &mut SetFunctionOracle,
    point: SubsetMask,
) -> f64 {
    if let Some(&v) = cache.get(&point) {
        return v;
    }
    let v = oracle.eval(&point);
    cache.insert(point, v);
    v
}

fn sort_chain_order(masks: &mut [SubsetMask]) {
    // Any linear extension of subset inclusion keeps the systems
    // triangular; (cardinality, rank order) is one.
    masks.sort_by(|a, b| a.cardinality().cmp(&b.cardinality()).then_with(|| a.cmp(b)));
}

/// Forward substitution for the subset-indexed systems of models 3/4.
/// `masks` must be sorted so that `B_l ⊆ B_j` implies `l <= j`; `q[j]` is
/// the function value at the query point associated with `masks[j]`.
fn triangular_coefficients(model: Model, masks: &[SubsetMask], q: &[f64]) -> Vec<f64> {
    debug_assert!(matches!(model, Model::M3 | Model::M4));
    let mut x = vec![0.0; masks.len()];
    for j in 0..masks.len() {
        let mut acc = q[j];
        for l in 0..j {
            if x[l] == 0.0 || !masks[l].is_subset_of(&masks[j]) {
                continue;
            }
            let term = match model {
                Model::M3 if masks[l].cardinality() % 2 == 1 => -x[l],
                _ => x[l],
            };
            acc -= term;
        }
        x[j] = match model {
            Model::M4 => acc,
            // Diagonal entry is (-1)^{|B_j|}.
            Model::M3 if masks[j].cardinality() % 2 == 1 => -acc,
            Model::M3 => acc,
            Model::M5 => unreachable!("model 5 solves least squares"),
        };
    }
    x
}

/// Model-4 query point for candidate `c` at chain step `i`: `M_i \ c`.
fn m4_point(n: usize, step: usize, c: &SubsetMask) -> SubsetMask {
    SubsetMask::prefix(n, step).difference(c)
}

/// Model-3 query point for candidate `c` at chain step `i`: `M_i^c ∪ c`.
fn m3_point(n: usize, step: usize, c: &SubsetMask) -> SubsetMask {
    SubsetMask::prefix(n, step).complement().union(c)
}

/// Least-squares coefficient recovery for model 5 over the first
/// `step` elements. Rows are sampled uniformly from `2^{M_step}`,
/// reusing cached queries; rank-deficient samples are redrawn a few
/// times before giving up. Small subproblems enumerate all rows, which
/// is both cheaper than near-exhaustive rejection sampling and always
/// full rank.
fn model5_coefficients(
    oracle: &mut SetFunctionOracle,
    cache: &mut HashMap<SubsetMask, f64>,
    candidates: &[SubsetMask],
    step: usize,
    oversampling: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    const MAX_RESAMPLES: usize = 4;
    let n = oracle.n();
    let k = candidates.len();
    let target = ((oversampling * k as f64).ceil() as usize).max(k);
    let exhaustive = step < 63 && (1u64 << step) <= 2 * target as u64;

    let sample_points = |rng: &mut ChaCha8Rng| -> Vec<SubsetMask> {
        if exhaustive {
            (0..1usize << step)
                .map(|bits| SubsetMask::from_elements(n, (0..step).filter(|e| bits >> e & 1 == 1)))
                .collect()
        } else {
            let mut seen = BTreeSet::new();
            while seen.len() < target {
                let mut point = SubsetMask::empty(n);
                for e in 0..step {
                    if rng.gen::<bool>() {
                        point.insert(e);
                    }
                }
                seen.insert(point);
            }
            seen.into_iter().collect()
        }
    };

    // The restricted synthesis carries 1/2^step; fold it into the rhs.
    let scale = 2f64.powi(step as i32);
    let mut attempt = 0;
    loop {
        let points = sample_points(rng);
        let mut matrix = RowMatrix::zeros(points.len(), k);
        let mut rhs = Vec::with_capacity(points.len());
        for (r, point) in points.iter().enumerate() {
            for (c, freq) in candidates.iter().enumerate() {
                let sign = if point.intersection_parity(freq) {
                    -1.0
                } else {
                    1.0
                };
                matrix.set(r, c, sign);
            }
            rhs.push(scale * query(cache, oracle, point.clone()));
        }
        match least_squares(matrix, rhs) {
            Some(x) => return Ok(x),
            None if !exhaustive && attempt < MAX_RESAMPLES => attempt += 1,
            None => {
                return Err(Error::RankDeficient {
                    support: candidates.to_vec(),
                })
            }
        }
    }
}

/// Recover the coefficients of a function whose spectrum is known to lie
/// inside `support`.
///
/// Models 3 and 4 query one point per frequency (`B` resp. `N \ B`) and
/// solve a triangular system exactly. Model 5 samples
/// `ceil(ls_oversampling * k)` uniformly random subsets and solves a
/// least-squares problem, redrawing a few times on rank deficiency.
pub fn solve_known_support(
    oracle: &mut SetFunctionOracle,
    support: &BTreeSet<SubsetMask>,
    cfg: &SsftConfig,
) -> Result<SparseFT> {
    cfg.validate()?;
    let n = oracle.n();
    if support.is_empty() {
        return Err(Error::invalid(
            "known-support recovery needs a nonempty support",
        ));
    }
    if let Some(bad) = support.iter().find(|m| m.n() != n) {
        return Err(Error::invalid(format!(
            "support mask {bad:?} does not match n = {n}"
        )));
    }
    let mut masks: Vec<SubsetMask> = support.iter().cloned().collect();
    sort_chain_order(&mut masks);
    let mut cache = HashMap::new();
    let coeffs = match cfg.model {
        Model::M4 => {
            let q: Vec<f64> = masks
                .iter()
                .map(|b| query(&mut cache, oracle, b.complement()))
                .collect();
            triangular_coefficients(Model::M4, &masks, &q)
        }
        Model::M3 => {
            let q: Vec<f64> = masks
                .iter()
                .map(|b| query(&mut cache, oracle, b.clone()))
                .collect();
            triangular_coefficients(Model::M3, &masks, &q)
        }
        Model::M5 => {
            let mut rng = seeded_stream(cfg.seed, STREAM_LS_SAMPLER);
            model5_coefficients(oracle, &mut cache, &masks, n, cfg.ls_oversampling, &mut rng)?
        }
    };
    SparseFT::from_entries(n, cfg.model, masks.into_iter().zip(coeffs))
}

/// Candidate support and aligned query points for one chain step.
///
/// Given the support over `{x_1, .., x_element}` and the next element
/// (0-based), every frequency `B` spawns candidates `B` and
/// `B ∪ {x}`. Models 3 and 4 pair each candidate with its query point;
/// model 5 leaves the points to the least-squares sampler.
pub fn support_propagate(
    prev_support: &BTreeSet<SubsetMask>,
    element: usize,
    model: Model,
) -> (Vec<SubsetMask>, Vec<SubsetMask>) {
    let Some(first) = prev_support.iter().next() else {
        return (Vec::new(), Vec::new());
    };
    let n = first.n();
    assert!(element < n, "element {element} out of range for n = {n}");
    let prefix = SubsetMask::prefix(n, element);
    assert!(
        prev_support.iter().all(|m| m.is_subset_of(&prefix)),
        "support must live on the first {element} elements"
    );
    let prev: Vec<SubsetMask> = prev_support.iter().cloned().collect();
    let candidates = propagate_candidates(&prev, element);
    let queries = match model {
        Model::M4 => candidates
            .iter()
            .map(|c| m4_point(n, element + 1, c))
            .collect(),
        Model::M3 => candidates
            .iter()
            .map(|c| m3_point(n, element + 1, c))
            .collect(),
        Model::M5 => Vec::new(),
    };
    (candidates, queries)
}

fn propagate_candidates(prev: &[SubsetMask], element: usize) -> Vec<SubsetMask> {
    let mut candidates = Vec::with_capacity(prev.len() * 2);
    for mask in prev {
        debug_assert!(!mask.contains(element));
        candidates.push(mask.clone());
        candidates.push(mask.with(element));
    }
    sort_chain_order(&mut candidates);
    candidates
}

/// Learn the sparse spectrum of the oracle by walking the restriction
/// chain. See the module docs; configuration is honored as follows:
/// solved entries below `epsilon` are dropped, at most `k_max` entries
/// (largest magnitude first, ties to the earlier frequency) survive a
/// step, and `pin_empty_start` controls the step-0 support.
pub fn ssft(oracle: &mut SetFunctionOracle, cfg: &SsftConfig) -> Result<SsftReport> {
    cfg.validate()?;
    let n = oracle.n();
    let start_queries = oracle.query_count();
    let mut cache: HashMap<SubsetMask, f64> = HashMap::new();
    let mut rng = seeded_stream(cfg.seed, STREAM_LS_SAMPLER);

    let base_point = match cfg.model {
        Model::M3 => SubsetMask::full(n),
        _ => SubsetMask::empty(n),
    };
    let base_value = query(&mut cache, oracle, base_point);
    let mut support: Vec<(SubsetMask, f64)> =
        if base_value.abs() >= cfg.epsilon || cfg.pin_empty_start {
            vec![(SubsetMask::empty(n), base_value)]
        } else {
            Vec::new()
        };

    let mut sizes = Vec::with_capacity(n + 1);
    sizes.push(support.len());
    let mut truncated = false;

    for step in 1..=n {
        if support.is_empty() {
            sizes.push(0);
            continue;
        }
        let element = step - 1;
        let prev: Vec<SubsetMask> = support.iter().map(|(m, _)| m.clone()).collect();
        let candidates = propagate_candidates(&prev, element);

        let coeffs = match cfg.model {
            Model::M4 => {
                let q: Vec<f64> = candidates
                    .iter()
                    .map(|c| query(&mut cache, oracle, m4_point(n, step, c)))
                    .collect();
                triangular_coefficients(Model::M4, &candidates, &q)
            }
            Model::M3 => {
                let q: Vec<f64> = candidates
                    .iter()
                    .map(|c| query(&mut cache, oracle, m3_point(n, step, c)))
                    .collect();
                triangular_coefficients(Model::M3, &candidates, &q)
            }
            Model::M5 => model5_coefficients(
                oracle,
                &mut cache,
                &candidates,
                step,
                cfg.ls_oversampling,
                &mut rng,
            )?,
        };

        let mut kept: Vec<(SubsetMask, f64)> = candidates
            .into_iter()
            .zip(coeffs)
            .filter(|(_, v)| v.abs() >= cfg.epsilon)
            .collect();
        if kept.len() > cfg.k_max {
            truncated = true;
            kept.sort_by(|(ma, va), (mb, vb)| {
                vb.abs()
                    .partial_cmp(&va.abs())
                    .expect("finite coefficients")
                    .then_with(|| ma.cmp(mb))
            });
            kept.truncate(cfg.k_max);
            kept.sort_by(|(ma, _), (mb, _)| {
                ma.cardinality()
                    .cmp(&mb.cardinality())
                    .then_with(|| ma.cmp(mb))
            });
        }
        sizes.push(kept.len());
        support = kept;
    }

    let result = SparseFT::from_entries(
        n,
        cfg.model,
        support.into_iter().filter(|(_, v)| v.abs() >= cfg.epsilon),
    )?;
    Ok(SsftReport {
        result,
        queries_used: oracle.query_count() - start_queries,
        support_sizes_per_step: sizes,
        truncated,
        seed_used: (cfg.model == Model::M5).then_some(cfg.seed),
    })
}

/// Filtering-based learner: convolve the oracle with a random one-hop
/// filter, run [`ssft`] on the filtered function, then divide each
/// recovered coefficient by the filter's frequency response.
///
/// `queries_used` reports the raw (unfiltered) oracle's evaluations.
/// Responses below `1e-12` in magnitude abort with
/// [`Error::DegenerateFilter`]; reseeding is the remedy.
pub fn ssft_plus(oracle: SetFunctionOracle, cfg: &SsftConfig) -> Result<SsftReport> {
    cfg.validate()?;
    let n = oracle.n();
    let h = OneHopFilter::sample(n, cfg.seed);
    let raw_counter = oracle.counter();
    let raw_start = raw_counter.get();
    let mut filtered = filtered_oracle(&h, oracle, cfg.model);
    let inner = ssft(&mut filtered, cfg)?;

    let mut result = SparseFT::new(n, cfg.model);
    for (freq, value) in inner.result.iter() {
        let response = frequency_response(&h, freq, cfg.model);
        if response.abs() < MIN_RESPONSE {
            return Err(Error::DegenerateFilter {
                frequency: freq.clone(),
            });
        }
        result.insert(freq.clone(), value / response);
    }
    Ok(SsftReport {
        result,
        queries_used: raw_counter.get() - raw_start,
        support_sizes_per_step: inner.support_sizes_per_step,
        truncated: inner.truncated,
        seed_used: Some(cfg.seed),
    })
}
