//! Facility-location benchmark: the union-shift basis represents these
//! objectives with about 1 + rows*n coefficients, so the learner
//! reconstructs them exactly from a few thousand queries where a dense
//! tabulation would need 2^n.
//!
//! ```sh
//! cargo run --example facility_benchmark
//! ```

use setft::evaluation::{rows_to_csv, run_experiment, Learner, TaskFamily, TaskSpec};
use setft::function::Model;
use setft::ssft::SsftConfig;

fn main() {
    let rows = 10;
    for n in [20usize, 50] {
        // Facility-location objectives vanish on the empty set; pin the
        // chain start so step 0 survives.
        let mut config = SsftConfig::new(Model::M4);
        config.pin_empty_start = true;
        let task = TaskSpec {
            family: TaskFamily::Facility {
                n,
                rows,
                density: 1.0,
            },
            learner: Learner::Ssft,
            config,
            repetitions: 3,
            base_seed: 17,
            num_samples: 100_000,
            placement_d: Some(5),
        };
        let result = run_experiment(&task).unwrap();
        println!("facility location, n = {n}, {rows} utility rows:");
        print!("{}", rows_to_csv(&result));
        let worst = result.iter().map(|r| r.rel_error).fold(0.0f64, f64::max);
        let k_max = result.iter().map(|r| r.recovered_k).max().unwrap();
        println!(
            "  -> worst relative error {worst:.1e}, k <= {k_max} (dense size would be 2^{n})\n"
        );
    }
}
