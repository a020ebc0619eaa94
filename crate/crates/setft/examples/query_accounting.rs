//! Oracle query accounting: every evaluation is counted, wrappers reuse
//! queries where the algebra allows, and reports carry exact deltas.
//!
//! ```sh
//! cargo run --example query_accounting
//! ```

use setft::filter::{filtered_oracle, OneHopFilter};
use setft::function::{Model, SetFunctionOracle};
use setft::generators::{random_sparse_oracle, CoefficientDist};
use setft::set::SubsetMask;
use setft::ssft::{ssft, SsftConfig};

fn main() {
    let n = 12;
    let k = 16;
    let (oracle, _) =
        random_sparse_oracle(n, k, Model::M4, CoefficientDist::StandardNormal, 5).unwrap();

    // Forked oracles share the function but count independently.
    let mut probe: SetFunctionOracle = oracle.clone();
    probe.eval(&SubsetMask::empty(n));
    probe.eval(&SubsetMask::full(n));
    println!(
        "probe oracle consumed {} queries; original still at {}",
        probe.query_count(),
        oracle.query_count()
    );

    // The chain reuses half of each step's system from the previous
    // step: queries = 1 + sum of per-step support sizes.
    let mut learner = oracle.clone();
    let report = ssft(&mut learner, &SsftConfig::new(Model::M4)).unwrap();
    let replay: u64 = 1 + report.support_sizes_per_step[..n].iter().sum::<usize>() as u64;
    println!(
        "chain run: queries_used = {} (= 1 + per-step supports {:?})",
        report.queries_used,
        &report.support_sizes_per_step[..n]
    );
    assert_eq!(report.queries_used, replay);

    // A one-hop filtered evaluation at A costs 1 + n - |A| raw queries
    // under the union shift.
    let h = OneHopFilter::sample(n, 1);
    let inner = oracle.clone();
    let raw = inner.counter();
    let mut filtered = filtered_oracle(&h, inner, Model::M4);
    let a = SubsetMask::from_elements(n, [0, 3, 4]);
    filtered.eval(&a);
    println!(
        "filtered eval at |A| = {}: {} raw queries (1 + n - |A| = {})",
        a.cardinality(),
        raw.get(),
        1 + n - a.cardinality()
    );
}
