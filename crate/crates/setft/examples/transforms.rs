//! Dense Fourier transforms of a small cut function under all three
//! shift models.
//!
//! ```sh
//! cargo run --example transforms
//! ```

use setft::function::{DenseSetFunction, Model};
use setft::generators::{graph_cut_oracle, GraphSpec};
use setft::set::all_masks;
use setft::transform::{dense_ft, dense_ft_counted, dense_ift};

fn main() {
    let n = 3;
    let graph = GraphSpec::path(n).unwrap();
    let mut cut = graph_cut_oracle(&graph);
    let dense = DenseSetFunction::from_oracle(&mut cut).unwrap();

    println!("unit-weight path cut on {n} vertices, values in rank order:");
    println!("  {:?}", dense.values());

    for model in Model::ALL {
        let (spectrum, butterflies) = dense_ft_counted(&dense, model);
        println!("\n{model} spectrum ({butterflies} butterflies = n*2^(n-1)):");
        for mask in all_masks(n) {
            let coeff = spectrum.value(&mask);
            if coeff != 0.0 {
                println!("  {mask:>7} -> {coeff:+.1}");
            }
        }
        let back = dense_ift(&spectrum, model);
        let worst = back
            .values()
            .iter()
            .zip(dense.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("  inverse round trip, max |error| = {worst:.2e}");
    }

    // The union-shift spectrum of the path cut is the textbook
    // pathological example for sparse learning: it sums to zero.
    let total: f64 = dense_ft(&dense, Model::M4).values().iter().sum();
    println!("\nsum of union-shift coefficients = {total} (the learner's step-0 view)");
}
