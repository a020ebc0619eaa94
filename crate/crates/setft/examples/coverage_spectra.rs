//! Coverage functions have closed-form spectra under the union shift:
//! one coefficient per Venn fragment of the member sets. The same
//! functions are dense in the Walsh-Hadamard basis, which is the whole
//! point of choosing the right basis before learning.
//!
//! ```sh
//! cargo run --example coverage_spectra
//! ```

use setft::function::{DenseSetFunction, Model};
use setft::generators::{coverage_exact_ft, coverage_oracle, CoverageSpec};
use setft::rng::seeded_rng;
use setft::ssft::{ssft_plus, SsftConfig};
use setft::transform::dense_ft;

fn main() {
    let n = 8;
    let mut rng = seeded_rng(11);
    let spec = CoverageSpec::random(n, 12, &mut rng).unwrap();

    let closed_form = coverage_exact_ft(&spec);
    let mut oracle = coverage_oracle(&spec);
    let dense = DenseSetFunction::from_oracle(&mut oracle).unwrap();

    let m4 = dense_ft(&dense, Model::M4);
    let m5 = dense_ft(&dense, Model::M5);
    let scale4 = m4.values().iter().fold(1f64, |m, v| m.max(v.abs()));
    let nonzero4 = m4
        .values()
        .iter()
        .filter(|v| v.abs() > 1e-9 * scale4)
        .count();
    let scale5 = m5.values().iter().fold(1f64, |m, v| m.max(v.abs()));
    let nonzero5 = m5
        .values()
        .iter()
        .filter(|v| v.abs() > 1e-9 * scale5)
        .count();

    println!("random coverage instance: n = {n}, universe = 12");
    println!(
        "  union-shift nonzeros:     {nonzero4:>4} (closed form predicts {})",
        closed_form.len()
    );
    println!(
        "  Walsh-Hadamard nonzeros:  {nonzero5:>4} (of {} total)",
        m5.len()
    );

    let worst = closed_form
        .iter()
        .map(|(mask, value)| (m4.value(mask) - value).abs())
        .fold(0.0f64, f64::max);
    println!("  fragment weights vs transform, max |error| = {worst:.2e}");

    // Learn the spectrum from queries alone and compare.
    let cfg = SsftConfig::new(Model::M4).with_seed(5);
    let report = ssft_plus(coverage_oracle(&spec), &cfg).unwrap();
    println!(
        "  learnt from {} queries: {} coefficients, max |error| = {:.2e}",
        report.queries_used,
        report.result.len(),
        report.result.max_abs_difference(&closed_form).unwrap()
    );

    // The degenerate single-need instance from the docs: {∅: 1, N: -1}
    // under the union shift, fully dense under Walsh-Hadamard.
    let tiny = CoverageSpec::all_cover_one(4);
    let tiny_ft = coverage_exact_ft(&tiny);
    println!(
        "\nall-cover-one instance (n = 4): union-shift support size {}",
        tiny_ft.len()
    );
    let mut tiny_oracle = coverage_oracle(&tiny);
    let tiny_dense = DenseSetFunction::from_oracle(&mut tiny_oracle).unwrap();
    let tiny_m5 = dense_ft(&tiny_dense, Model::M5);
    println!(
        "  Walsh-Hadamard values: first = {}, rest = {}",
        tiny_m5.value_at(0),
        tiny_m5.value_at(1)
    );
}
