//! Sensor-placement shaped pipeline: learn a sparse surrogate of an
//! information-gain objective, then pick sensor subsets greedily on the
//! surrogate and compare against greedy on the true objective and a
//! random baseline.
//!
//! ```sh
//! cargo run --example sensor_placement
//! ```

use setft::evaluation::{greedy_maximize, relative_error};
use setft::function::Model;
use setft::generators::{information_gain_oracle, low_rank_psd_covariance};
use setft::rng::seeded_rng;
use setft::set::SubsetMask;
use setft::ssft::{ssft_plus, SsftConfig};

use rand::Rng;

fn main() {
    let n = 12;
    let sigma = 1.0;
    let mut rng = seeded_rng(2);
    // Sensor correlations: a few dominant directions plus noise.
    let covariance = low_rank_psd_covariance(n, 3, 0.05, &mut rng);
    let truth = information_gain_oracle(covariance, sigma).unwrap();

    // Information gain is not exactly sparse, so run with the
    // experiment-mode threshold and let the cap do its job.
    let mut cfg = SsftConfig::experiment(Model::M4).with_seed(9);
    cfg.k_max = 1000;
    let learner_oracle = truth.clone();
    let queries = learner_oracle.counter();
    let report = ssft_plus(learner_oracle, &cfg).unwrap();
    println!(
        "learnt surrogate: {} coefficients from {} queries (truncated: {})",
        report.result.len(),
        queries.get(),
        report.truncated
    );

    let estimate = relative_error(&mut truth.clone(), &report.result, 50_000, 3).unwrap();
    println!("sampled relative error: {:.4}", estimate.relative_error);

    println!("\n placements (information gain of the selected sensors):");
    println!("  d | greedy on truth | greedy on surrogate | random");
    for d in 1..=6 {
        let (_, value_true) = greedy_maximize(&mut truth.clone(), d).unwrap();
        let (set_surrogate, _) = greedy_maximize(&mut report.result.clone(), d).unwrap();
        let value_surrogate = truth.clone().eval(&set_surrogate);
        let random_value = {
            // Random baseline: one uniform d-subset.
            let mut draw_rng = seeded_rng(100 + d as u64);
            let mut chosen = std::collections::BTreeSet::new();
            while chosen.len() < d {
                chosen.insert(draw_rng.gen_range(0..n));
            }
            truth.clone().eval(&SubsetMask::from_elements(n, chosen))
        };
        println!("  {d} | {value_true:>15.4} | {value_surrogate:>19.4} | {random_value:>6.4}");
    }

    let full = truth.clone().eval(&SubsetMask::full(n));
    println!("\ninformation gain of all {n} sensors: {full:.4}");
}
