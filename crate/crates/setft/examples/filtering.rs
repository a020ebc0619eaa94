//! One-hop filters and the convolution theorem: filtering a set
//! function multiplies each Fourier coefficient by the filter's
//! frequency response.
//!
//! ```sh
//! cargo run --example filtering
//! ```

use setft::filter::{filtered_oracle, frequency_response, OneHopFilter};
use setft::function::{DenseSetFunction, Model, SetFunctionOracle};
use setft::rng::{seeded_rng, standard_normal};
use setft::set::all_masks;
use setft::transform::dense_ft;

fn main() {
    let n = 5;
    let mut rng = seeded_rng(7);
    let f = DenseSetFunction::from_fn(n, |_| standard_normal(&mut rng)).unwrap();
    let h = OneHopFilter::sample(n, 42);
    println!("one-hop filter h(∅) = 1, singleton coefficients:");
    println!("  {:?}", h.singletons());

    let inner = SetFunctionOracle::from_dense(f.clone());
    let raw_queries = inner.counter();
    let mut filtered = filtered_oracle(&h, inner, Model::M4);

    // Tabulating h * s costs 1 + n - |A| raw queries per point.
    let mut values = Vec::with_capacity(1 << n);
    for mask in all_masks(n) {
        values.push(filtered.eval(&mask));
    }
    println!(
        "tabulated h*s over {} subsets with {} raw queries",
        1 << n,
        raw_queries.get()
    );

    let filtered_spectrum = dense_ft(&DenseSetFunction::new(n, values).unwrap(), Model::M4);
    let plain_spectrum = dense_ft(&f, Model::M4);
    let mut worst = 0.0f64;
    for mask in all_masks(n) {
        let response = frequency_response(&h, &mask, Model::M4);
        let predicted = response * plain_spectrum.value(&mask);
        worst = worst.max((filtered_spectrum.value(&mask) - predicted).abs());
    }
    println!("convolution theorem residual max |FT(h*s) - response*FT(s)| = {worst:.2e}");

    // Responses under the symmetric-difference model subtract in-set
    // coefficients.
    let b = setft::set::SubsetMask::from_elements(n, [0, 2]);
    println!(
        "response at {b}: union-shift {:+.4}, Walsh-Hadamard {:+.4}",
        frequency_response(&h, &b, Model::M4),
        frequency_response(&h, &b, Model::M5),
    );
}
