//! Learn a k-sparse spectrum from few queries: the query count stays
//! under n*k - k*log2(k) + 2k instead of the dense 2^n.
//!
//! ```sh
//! cargo run --example sparse_recovery
//! ```

use setft::function::Model;
use setft::generators::{random_sparse_oracle, CoefficientDist};
use setft::ssft::{ssft, SsftConfig};

fn main() {
    let n = 20;
    println!(
        "ground set size n = {n}, dense tabulation would need 2^{n} = {} queries\n",
        1u64 << n
    );
    for model in Model::ALL {
        println!("{model}:");
        for k in [4usize, 16, 64] {
            let (mut oracle, truth) =
                random_sparse_oracle(n, k, model, CoefficientDist::StandardNormal, 7 + k as u64)
                    .unwrap();
            let report = ssft(&mut oracle, &SsftConfig::new(model)).unwrap();
            let worst = report.result.max_abs_difference(&truth).unwrap();
            let kf = k as f64;
            let bound = (n as f64 * kf - kf * kf.log2() + 2.0 * kf).ceil();
            println!(
                "  k = {k:>3}: {:>4} queries (chain bound {bound:>4}), \
                 recovered {} coefficients, max |error| = {worst:.2e}",
                report.queries_used,
                report.result.len(),
            );
        }
    }
    println!("\nper-step support growth for one run (model 4, k = 16):");
    let (mut oracle, _) =
        random_sparse_oracle(n, 16, Model::M4, CoefficientDist::StandardNormal, 3).unwrap();
    let report = ssft(&mut oracle, &SsftConfig::new(Model::M4)).unwrap();
    println!("  {:?}", report.support_sizes_per_step);
}
