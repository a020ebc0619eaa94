//! Constructors for the set-function families the crate ships with:
//! weighted coverage, preference, facility-location, graph-cut,
//! information-gain, and random Fourier-sparse functions. Each family
//! exposes a counting oracle; coverage additionally exposes its
//! closed-form union-shift spectrum.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::{Model, SetFunctionOracle, SparseFT};
use crate::linalg::cholesky_logdet;
use crate::rng::{nonzero_normal, random_mask, seeded_rng, standard_normal};
use crate::set::SubsetMask;

/// Generalized (signed-weight) coverage function: `n` member sets over a
/// weighted universe, `s(A) = w(∪_{i ∈ A} S_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverageSpec {
    pub n: usize,
    pub universe_size: usize,
    /// `membership[i]` is `S_i` as a mask over the universe.
    pub membership: Vec<SubsetMask>,
    pub weights: Vec<f64>,
}

impl CoverageSpec {
    pub fn new(membership: Vec<SubsetMask>, weights: Vec<f64>) -> Result<Self> {
        let n = membership.len();
        if n == 0 {
            return Err(Error::invalid("coverage needs at least one member set"));
        }
        let universe_size = membership[0].n();
        if membership.iter().any(|m| m.n() != universe_size) {
            return Err(Error::invalid("member sets must share one universe"));
        }
        if weights.len() != universe_size {
            return Err(Error::invalid(format!(
                "universe has {universe_size} elements but {} weights given",
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::invalid("coverage weights must be finite"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if membership[i] == membership[j] {
                    return Err(Error::invalid(format!(
                        "member sets {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoverageSpec {
            n,
            universe_size,
            membership,
            weights,
        })
    }

    /// The single weighted universe element is covered by every member
    /// set (zero-weight padding elements keep the member sets distinct).
    /// Its union-shift spectrum is `{∅: 1, N: -1}` while its
    /// Walsh-Hadamard spectrum is fully dense.
    pub fn all_cover_one(n: usize) -> Self {
        assert!(n >= 1, "all_cover_one needs n >= 1");
        let universe = n + 1;
        let membership = (0..n)
            .map(|i| SubsetMask::from_elements(universe, [0, i + 1]))
            .collect();
        let mut weights = vec![0.0; universe];
        weights[0] = 1.0;
        CoverageSpec::new(membership, weights).expect("valid by construction")
    }

    /// Random instance: distinct uniformly random member sets, weights
    /// uniform on `[0, 1)`.
    pub fn random(n: usize, universe_size: usize, rng: &mut ChaCha8Rng) -> Result<Self> {
        if n == 0 || universe_size == 0 {
            return Err(Error::invalid(
                "coverage needs n >= 1 and a nonempty universe",
            ));
        }
        if universe_size < usize::BITS as usize && n > 1usize << universe_size {
            return Err(Error::invalid(format!(
                "cannot pick {n} distinct member sets from a universe of {universe_size}"
            )));
        }
        let weights: Vec<f64> = (0..universe_size).map(|_| rng.gen::<f64>()).collect();
        let mut seen = std::collections::BTreeSet::new();
        while seen.len() < n {
            seen.insert(random_mask(universe_size, rng));
        }
        let mut membership: Vec<SubsetMask> = seen.into_iter().collect();
        for i in (1..membership.len()).rev() {
            membership.swap(i, rng.gen_range(0..=i));
        }
        CoverageSpec::new(membership, weights)
    }
}

/// `s(A) = w(∪_{i ∈ A} S_i)`, with `s(∅) = 0`.
pub fn coverage_oracle(spec: &CoverageSpec) -> SetFunctionOracle {
    let spec = spec.clone();
    SetFunctionOracle::new(spec.n, move |a| {
        let mut covered = SubsetMask::empty(spec.universe_size);
        for i in a.elements() {
            covered = covered.union(&spec.membership[i]);
        }
        covered.elements().map(|u| spec.weights[u]).sum::<f64>() + 0.0
    })
}

/// Closed-form union-shift (model 4) spectrum of a coverage function:
/// the empty frequency holds the total covered weight and each other
/// frequency `B` holds the negated weight of the universe fragment
/// covered by exactly the sets in `B`. Universe elements outside every
/// member set never influence the function and carry no coefficient.
/// Costs `O(|U| * n)`, never enumerating fragments that do not occur.
pub fn coverage_exact_ft(spec: &CoverageSpec) -> SparseFT {
    let mut ft = SparseFT::new(spec.n, Model::M4);
    let mut total = 0.0;
    let mut fragments: std::collections::BTreeMap<SubsetMask, f64> =
        std::collections::BTreeMap::new();
    for u in 0..spec.universe_size {
        let signature = SubsetMask::from_elements(
            spec.n,
            (0..spec.n).filter(|&i| spec.membership[i].contains(u)),
        );
        if !signature.is_empty() {
            total += spec.weights[u];
            *fragments.entry(signature).or_insert(0.0) += spec.weights[u];
        }
    }
    ft.insert(SubsetMask::empty(spec.n), total);
    for (signature, weight) in fragments {
        ft.insert(signature, -weight);
    }
    ft
}

/// Preference function: modular part plus repulsive (substitution) and
/// attractive (complement) max-terms.
#[derive(Clone, Debug, PartialEq)]
pub struct PreferenceSpec {
    pub u: Vec<f64>,
    /// Repulsive rows, entrywise non-negative, each of length `n`.
    pub r: Vec<Vec<f64>>,
    /// Attractive rows, entrywise non-negative, each of length `n`.
    pub a: Vec<Vec<f64>>,
}

impl PreferenceSpec {
    pub fn new(u: Vec<f64>, r: Vec<Vec<f64>>, a: Vec<Vec<f64>>) -> Result<Self> {
        let n = u.len();
        if n == 0 {
            return Err(Error::invalid("preference needs at least one element"));
        }
        for (name, rows) in [("r", &r), ("a", &a)] {
            for row in rows.iter() {
                if row.len() != n {
                    return Err(Error::invalid(format!("{name} rows must have length {n}")));
                }
                if row.iter().any(|v| *v < 0.0 || !v.is_finite()) {
                    return Err(Error::invalid(format!(
                        "{name} must be non-negative and finite"
                    )));
                }
            }
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("u must be finite"));
        }
        Ok(PreferenceSpec { u, r, a })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    /// Random spec with uniform `[0, 1)` entries and strictly distinct
    /// values within every max-term row, so the closed-form sparsity
    /// bounds apply without tie-breaking ambiguity.
    pub fn random_tie_free(
        n: usize,
        repulsive_rows: usize,
        attractive_rows: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self> {
        let u = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mut sample_rows = |count: usize| -> Vec<Vec<f64>> {
            (0..count)
                .map(|_| loop {
                    let row: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
                    let mut sorted = row.clone();
                    sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
                    if sorted.windows(2).all(|w| w[0] != w[1]) {
                        return row;
                    }
                })
                .collect()
        };
        let r = sample_rows(repulsive_rows);
        let a = sample_rows(attractive_rows);
        PreferenceSpec::new(u, r, a)
    }
}

/// Evaluate a preference function; maxima over the empty set are zero.
pub fn preference_oracle(spec: &PreferenceSpec) -> SetFunctionOracle {
    let spec = spec.clone();
    SetFunctionOracle::new(spec.n(), move |set| {
        let mut value: f64 = set.elements().map(|i| spec.u[i]).sum::<f64>() + 0.0;
        for row in &spec.r {
            value += max_over(set, row) - set.elements().map(|i| row[i]).sum::<f64>();
        }
        for row in &spec.a {
            value -= max_over(set, row) - set.elements().map(|i| row[i]).sum::<f64>();
        }
        value
    })
}

/// Max over the selected entries, zero for the empty set; the rows this
/// applies to are validated non-negative.
fn max_over(set: &SubsetMask, row: &[f64]) -> f64 {
    set.elements().map(|i| row[i]).fold(0.0, f64::max)
}

/// Facility-location utilities: rows are events, entry `(l, i)` is the
/// utility of element `i` under event `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct FacilitySpec {
    pub utilities: Vec<Vec<f64>>,
}

impl FacilitySpec {
    pub fn new(utilities: Vec<Vec<f64>>) -> Result<Self> {
        if utilities.is_empty() || utilities[0].is_empty() {
            return Err(Error::invalid(
                "facility location needs at least one row and column",
            ));
        }
        let n = utilities[0].len();
        for row in &utilities {
            if row.len() != n {
                return Err(Error::invalid("utility rows must have equal length"));
            }
            if row.iter().any(|v| *v < 0.0 || !v.is_finite()) {
                return Err(Error::invalid("utilities must be non-negative and finite"));
            }
        }
        Ok(FacilitySpec { utilities })
    }

    pub fn n(&self) -> usize {
        self.utilities[0].len()
    }

    pub fn rows(&self) -> usize {
        self.utilities.len()
    }

    /// Random utilities, uniform on `[0, 1)`; `density` is the fraction
    /// of entries kept nonzero (rounded up per row).
    pub fn random(n: usize, rows: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::invalid("density must lie in [0, 1]"));
        }
        let keep = ((n as f64 * density).ceil() as usize).clamp(1, n);
        let utilities = (0..rows)
            .map(|_| {
                let mut row = vec![0.0; n];
                let mut order: Vec<usize> = (0..n).collect();
                for i in (1..order.len()).rev() {
                    order.swap(i, rng.gen_range(0..=i));
                }
                for &i in order.iter().take(keep) {
                    row[i] = rng.gen::<f64>();
                }
                row
            })
            .collect();
        FacilitySpec::new(utilities)
    }
}

/// `p(A) = Σ_l max_{i ∈ A} utilities[l][i]`, with `p(∅) = 0`.
pub fn facility_location_oracle(spec: &FacilitySpec) -> SetFunctionOracle {
    let spec = spec.clone();
    SetFunctionOracle::new(spec.n(), move |set| {
        spec.utilities
            .iter()
            .map(|row| max_over(set, row))
            .sum::<f64>()
            + 0.0
    })
}

/// Simple weighted undirected graph for cut functions.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSpec {
    pub n: usize,
    /// Edges as (u, v, weight) with 0-based distinct endpoints.
    pub edges: Vec<(usize, usize, f64)>,
}

impl GraphSpec {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v, w) in &edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {}", u + 1)));
            }
            if u >= n || v >= n {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            if !w.is_finite() {
                return Err(Error::invalid("edge weights must be finite"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!(
                    "duplicate edge between {} and {}",
                    u + 1,
                    v + 1
                )));
            }
        }
        Ok(GraphSpec { n, edges })
    }

    /// Path `x_1 - x_2 - .. - x_n` with unit weights.
    pub fn path(n: usize) -> Result<Self> {
        GraphSpec::new(
            n,
            (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1.0)).collect(),
        )
    }

    /// Star centered at `x_1` with unit weights.
    pub fn star(n: usize) -> Result<Self> {
        GraphSpec::new(n, (1..n).map(|i| (0, i, 1.0)).collect())
    }
}

/// Cut function: total weight of edges with exactly one endpoint inside.
pub fn graph_cut_oracle(spec: &GraphSpec) -> SetFunctionOracle {
    let spec = spec.clone();
    SetFunctionOracle::new(spec.n, move |a| {
        spec.edges
            .iter()
            .filter(|(u, v, _)| a.contains(*u) != a.contains(*v))
            .map(|&(_, _, w)| w)
            .sum::<f64>()
            + 0.0
    })
}

/// Coefficient distribution for [`random_sparse_oracle`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoefficientDist {
    /// Standard normal, resampled on exact zeros.
    StandardNormal,
    /// Uniform on `[lo, hi)`, resampled on exact zeros.
    Uniform { lo: f64, hi: f64 },
}

impl CoefficientDist {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            CoefficientDist::StandardNormal => nonzero_normal(rng),
            CoefficientDist::Uniform { lo, hi } => loop {
                let v = lo + (hi - lo) * rng.gen::<f64>();
                if v != 0.0 {
                    return v;
                }
            },
        }
    }
}

/// Function with exactly `k` nonzero Fourier coefficients on a uniformly
/// random support (without replacement). Returns the oracle (which
/// evaluates the spectrum in `O(k)` per query) together with the planted
/// ground truth.
pub fn random_sparse_oracle(
    n: usize,
    k: usize,
    model: Model,
    dist: CoefficientDist,
    seed: u64,
) -> Result<(SetFunctionOracle, SparseFT)> {
    if n == 0 {
        return Err(Error::invalid("random sparse function needs n >= 1"));
    }
    if k == 0 || (n < usize::BITS as usize && k > 1usize << n) {
        return Err(Error::invalid(format!("k must lie in 1..=2^{n}, got {k}")));
    }
    let mut rng = seeded_rng(seed);
    let mut support = std::collections::BTreeSet::new();
    while support.len() < k {
        support.insert(random_mask(n, &mut rng));
    }
    let truth = SparseFT::from_entries(
        n,
        model,
        support
            .into_iter()
            .map(|mask| (mask, dist.sample(&mut rng))),
    )?;
    Ok((SetFunctionOracle::from_sparse(truth.clone()), truth))
}

/// Information gain of sensor subsets under a Gaussian model:
/// `G(A) = 1/2 · ln det(I + sigma^-2 K_AA)`.
///
/// `covariance` must be symmetric positive semidefinite (checked once,
/// via a Cholesky factorization of `I + sigma^-2 K`); every principal
/// submatrix of a valid input is then safely factorizable.
pub fn information_gain_oracle(covariance: Vec<Vec<f64>>, sigma: f64) -> Result<SetFunctionOracle> {
    let n = covariance.len();
    if n == 0 {
        return Err(Error::invalid("covariance must be nonempty"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::invalid("sigma must be positive"));
    }
    let mut flat = vec![0.0; n * n];
    for (i, row) in covariance.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid("covariance must be square"));
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::invalid("covariance entries must be finite"));
            }
            flat[i * n + j] = v;
        }
    }
    let scale = flat.iter().fold(1f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        for j in 0..i {
            if (flat[i * n + j] - flat[j * n + i]).abs() > 1e-9 * scale {
                return Err(Error::invalid("covariance must be symmetric"));
            }
        }
    }
    // Positive semidefiniteness up to a tiny diagonal shift; any true
    // PSD matrix passes and every principal submatrix of I + K_AA/σ²
    // then stays safely positive definite.
    let inv_noise = sigma.powi(-2);
    let mut shifted = flat.clone();
    let tolerance = 1e-9 * scale;
    for i in 0..n {
        shifted[i * n + i] += tolerance;
    }
    if cholesky_logdet(&shifted, n).is_none() {
        return Err(Error::invalid("covariance is not positive semidefinite"));
    }

    Ok(SetFunctionOracle::new(n, move |a| {
        let elems: Vec<usize> = a.elements().collect();
        let d = elems.len();
        if d == 0 {
            return 0.0;
        }
        let mut sub = vec![0.0; d * d];
        for (i, &ei) in elems.iter().enumerate() {
            for (j, &ej) in elems.iter().enumerate() {
                sub[i * d + j] = inv_noise * flat[ei * n + ej];
            }
            sub[i * d + i] += 1.0;
        }
        0.5 * cholesky_logdet(&sub, d)
            .expect("principal submatrix of a validated covariance is positive definite")
    }))
}

/// Random positive-semidefinite covariance `G Gᵀ + 1e-6 I` with standard
/// normal `G`; a synthetic stand-in for measured sensor covariances.
pub fn random_psd_covariance(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    gram_covariance(n, n, 1e-6, rng)
}

/// Covariance with `rank` dominant directions plus isotropic noise,
/// `G Gᵀ + noise · I` with standard normal `n x rank` factor `G`.
/// Measured sensor correlations are usually close to this shape, which
/// also makes the induced information gain compressible.
pub fn low_rank_psd_covariance(
    n: usize,
    rank: usize,
    noise: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<f64>> {
    gram_covariance(n, rank, noise, rng)
}

fn gram_covariance(n: usize, rank: usize, noise: f64, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let g: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..rank).map(|_| standard_normal(rng)).collect())
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: f64 = (0..rank).map(|t| g[i][t] * g[j][t]).sum();
                    dot + if i == j { noise } else { 0.0 }
                })
                .collect()
        })
        .collect()
}
