//! Dense fast Fourier transforms for set functions.
//!
//! Each basis factors into an n-fold Kronecker product of a 2x2 matrix,
//! so both directions run in-place as `n` stages of `2^(n-1)` butterflies.
//! Stages are applied for `x_1, .., x_n` in order with halving strides;
//! the stages commute, the order is fixed for reproducibility.
//!
//! Conventions per model (index 0 = element absent, 1 = present):
//!
//! * model 3: analysis and synthesis are both `[[1, 0], [1, -1]]`,
//! * model 4: analysis `[[0, 1], [1, -1]]`, synthesis `[[1, 1], [1, 0]]`,
//! * model 5: analysis is the unnormalized `[[1, 1], [1, -1]]`; the
//!   whole `1/2^n` factor sits on the synthesis side.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::function::{DenseSetFunction, Model, SparseFT};
use crate::set::SubsetMask;

/// Apply one 2x2 kernel along every element dimension. Returns the number
/// of butterflies executed, which is always `n * 2^(n-1)`.
fn apply_stages(values: &mut [f64], n: usize, butterfly: impl Fn(f64, f64) -> (f64, f64)) -> u64 {
    let mut count = 0u64;
    for e in 0..n {
        let stride = 1usize << (n - 1 - e);
        let mut base = 0;
        while base < values.len() {
            for i in base..base + stride {
                let (absent, present) = butterfly(values[i], values[i + stride]);
                values[i] = absent;
                values[i + stride] = present;
                count += 1;
            }
            base += 2 * stride;
        }
    }
    count
}

fn forward_butterfly(model: Model) -> fn(f64, f64) -> (f64, f64) {
    match model {
        Model::M3 => |a, b| (a, a - b),
        Model::M4 => |a, b| (b, a - b),
        Model::M5 => |a, b| (a + b, a - b),
    }
}

fn inverse_butterfly(model: Model) -> fn(f64, f64) -> (f64, f64) {
    match model {
        Model::M3 => |a, b| (a, a - b),
        Model::M4 => |a, b| (a + b, a),
        Model::M5 => |a, b| (a + b, a - b),
    }
}

/// Fourier transform of a dense set function: coefficients in rank order.
pub fn dense_ft(f: &DenseSetFunction, model: Model) -> DenseSetFunction {
    dense_ft_counted(f, model).0
}

/// As [`dense_ft`], also reporting the butterfly count.
pub fn dense_ft_counted(f: &DenseSetFunction, model: Model) -> (DenseSetFunction, u64) {
    let mut out = f.clone();
    let ops = apply_stages(out.values_mut(), f.n(), forward_butterfly(model));
    (out, ops)
}

/// Inverse transform: set-function values from dense coefficients.
pub fn dense_ift(coeffs: &DenseSetFunction, model: Model) -> DenseSetFunction {
    dense_ift_counted(coeffs, model).0
}

/// As [`dense_ift`], also reporting the butterfly count.
pub fn dense_ift_counted(coeffs: &DenseSetFunction, model: Model) -> (DenseSetFunction, u64) {
    let mut out = coeffs.clone();
    let n = coeffs.n();
    let ops = apply_stages(out.values_mut(), n, inverse_butterfly(model));
    if model == Model::M5 {
        let scale = 2f64.powi(-(n as i32));
        for v in out.values_mut() {
            *v *= scale;
        }
    }
    (out, ops)
}

/// Densify a sparse spectrum into set-function values.
pub fn sparse_to_dense(ft: &SparseFT) -> Result<DenseSetFunction> {
    Ok(dense_ift(&ft.to_dense_coefficients()?, ft.model()))
}

/// Fourier transform of the restriction of a set function to the
/// sub-ground-set `M`, computed directly from the sparse spectrum.
///
/// Each original frequency `B` contributes its coefficient to the
/// restricted frequency `B ∩ M`; the sum carries the model's sign
/// (`(-1)^{|B \ M|}` for model 3) or scale (`2^{-(n-m)}` for model 5).
/// Exact zeros after accumulation are dropped.
///
/// The result is indexed by the elements of `M`, renumbered in
/// increasing order, i.e. it is a spectrum over a ground set of size
/// `|M|`. For model 4 and model 5 it is the spectrum of `A ↦ s(A)` on
/// `2^M`; for model 3 it is the spectrum of `A ↦ s(M^c ∪ A)`.
pub fn restrict_ft(ft: &SparseFT, m: &SubsetMask, model: Model) -> Result<SparseFT> {
    if model != ft.model() {
        return Err(Error::invalid(format!(
            "restriction model {model} does not match spectrum {}",
            ft.model()
        )));
    }
    if m.n() != ft.n() {
        return Err(Error::invalid(format!(
            "restriction mask has n = {}, spectrum has n = {}",
            m.n(),
            ft.n()
        )));
    }
    let sub_n = m.cardinality();
    // Position of each retained element in the compacted ground set.
    let mut position = vec![usize::MAX; ft.n()];
    for (i, e) in m.elements().enumerate() {
        position[e] = i;
    }
    let scale = match model {
        Model::M5 => 2f64.powi(-((ft.n() - sub_n) as i32)),
        _ => 1.0,
    };

    let mut acc: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for (freq, value) in ft.iter() {
        let kept = SubsetMask::from_elements(
            sub_n,
            freq.elements()
                .filter(|&e| m.contains(e))
                .map(|e| position[e]),
        );
        let dropped = freq.cardinality() - kept.cardinality();
        let contribution = match model {
            Model::M3 if dropped % 2 == 1 => -value,
            _ => value,
        } * scale;
        *acc.entry(kept).or_insert(0.0) += contribution;
    }
    acc.retain(|_, v| *v != 0.0);
    SparseFT::from_entries(sub_n, model, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_mask, seeded_rng, standard_normal};
    use crate::set::all_masks;
    use rand::Rng;

    /// Analysis sums straight from the definitions; the reference the
    /// butterflies are checked against.
    fn naive_ft(f: &DenseSetFunction, model: Model) -> Vec<f64> {
        let n = f.n();
        all_masks(n)
            .map(|b| {
                all_masks(n)
                    .map(|a| {
                        let coeff = match model {
                            Model::M3 => {
                                if !a.is_subset_of(&b) {
                                    return 0.0;
                                }
                                if a.cardinality() % 2 == 1 {
                                    -1.0
                                } else {
                                    1.0
                                }
                            }
                            Model::M4 => {
                                if a.union(&b) != SubsetMask::full(n) {
                                    return 0.0;
                                }
                                if a.intersection_parity(&b) {
                                    -1.0
                                } else {
                                    1.0
                                }
                            }
                            Model::M5 => {
                                if a.intersection_parity(&b) {
                                    -1.0
                                } else {
                                    1.0
                                }
                            }
                        };
                        coeff * f.value(&a)
                    })
                    .sum()
            })
            .collect()
    }

    /// n-fold Kronecker power of a 2x2 matrix, row-major, with x_1 as the
    /// most significant index.
    fn kronecker_power(base: [[f64; 2]; 2], n: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![1.0]];
        for _ in 0..n {
            let dim = m.len();
            let mut next = vec![vec![0.0; dim * 2]; dim * 2];
            for (bi, row) in base.iter().enumerate() {
                for (bj, &b) in row.iter().enumerate() {
                    for i in 0..dim {
                        for j in 0..dim {
                            next[bi * dim + i][bj * dim + j] = b * m[i][j];
                        }
                    }
                }
            }
            m = next;
        }
        m
    }

    fn forward_matrix(model: Model) -> [[f64; 2]; 2] {
        match model {
            Model::M3 => [[1.0, 0.0], [1.0, -1.0]],
            Model::M4 => [[0.0, 1.0], [1.0, -1.0]],
            Model::M5 => [[1.0, 1.0], [1.0, -1.0]],
        }
    }

    fn random_dense(n: usize, rng: &mut impl Rng) -> DenseSetFunction {
        DenseSetFunction::from_fn(n, |_| standard_normal(rng)).unwrap()
    }

    fn path_cut_values() -> DenseSetFunction {
        DenseSetFunction::new(3, vec![0.0, 1.0, 2.0, 1.0, 1.0, 2.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn model4_single_element() {
        let f = DenseSetFunction::new(1, vec![2.5, -3.0]).unwrap();
        let ft = dense_ft(&f, Model::M4);
        assert_eq!(ft.values(), &[-3.0, 5.5]);
    }

    #[test]
    fn model4_path_cut_spectrum() {
        let ft = dense_ft(&path_cut_values(), Model::M4);
        assert_eq!(ft.values(), &[0.0, 1.0, 2.0, -2.0, 1.0, 0.0, -2.0, 0.0]);
    }

    #[test]
    fn model4_path_cut_round_trip() {
        let coeffs =
            DenseSetFunction::new(3, vec![0.0, 1.0, 2.0, -2.0, 1.0, 0.0, -2.0, 0.0]).unwrap();
        let back = dense_ift(&coeffs, Model::M4);
        assert_eq!(back.values(), path_cut_values().values());
    }

    #[test]
    fn model5_all_cover_one_spectrum() {
        let n = 3;
        let f = DenseSetFunction::from_fn(n, |a| if a.is_empty() { 0.0 } else { 1.0 }).unwrap();
        let ft = dense_ft(&f, Model::M5);
        assert_eq!(ft.value_at(0), 7.0);
        for rank in 1..f.len() {
            assert_eq!(ft.value_at(rank), -1.0);
        }
    }

    #[test]
    fn model4_nonempty_indicator_synthesis() {
        // Coefficients {∅: 1, N: -1} synthesise the indicator of A ≠ ∅.
        let n = 3;
        let mut coeffs = DenseSetFunction::zeros(n).unwrap();
        coeffs.values_mut()[0] = 1.0;
        coeffs.values_mut()[(1 << n) - 1] = -1.0;
        let f = dense_ift(&coeffs, Model::M4);
        for mask in all_masks(n) {
            let expect = if mask.is_empty() { 0.0 } else { 1.0 };
            assert_eq!(f.value(&mask), expect);
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let z = DenseSetFunction::zeros(5).unwrap();
        for model in Model::ALL {
            assert_eq!(dense_ift(&z, model).values(), z.values());
            assert_eq!(dense_ft(&z, model).values(), z.values());
        }
    }

    #[test]
    fn butterflies_match_naive_sums() {
        let mut rng = seeded_rng(11);
        for n in 0..=5 {
            for model in Model::ALL {
                let f = random_dense(n, &mut rng);
                let fast = dense_ft(&f, model);
                let slow = naive_ft(&f, model);
                for (a, b) in fast.values().iter().zip(&slow) {
                    assert!((a - b).abs() < 1e-10, "{model} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn butterflies_match_kronecker_matrix() {
        let mut rng = seeded_rng(12);
        for n in 0..=6 {
            for model in Model::ALL {
                let f = random_dense(n, &mut rng);
                let matrix = kronecker_power(forward_matrix(model), n);
                let fast = dense_ft(&f, model);
                for (row, &got) in matrix.iter().zip(fast.values()) {
                    let want: f64 = row.iter().zip(f.values()).map(|(&m, &v)| m * v).sum();
                    assert!((want - got).abs() < 1e-9, "{model} n={n}");
                }
            }
        }
    }

    #[test]
    fn round_trip_all_models() {
        let mut rng = seeded_rng(13);
        for n in 1..=10 {
            for model in Model::ALL {
                let f = random_dense(n, &mut rng);
                let back = dense_ift(&dense_ft(&f, model), model);
                let scale = f.values().iter().fold(1f64, |m, v| m.max(v.abs()));
                for (a, b) in f.values().iter().zip(back.values()) {
                    assert!((a - b).abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn butterfly_count_is_exact() {
        for n in 0..=10 {
            let f = DenseSetFunction::zeros(n).unwrap();
            let expected = n as u64 * (1u64 << n) / 2;
            for model in Model::ALL {
                assert_eq!(dense_ft_counted(&f, model).1, expected);
                assert_eq!(dense_ift_counted(&f, model).1, expected);
            }
        }
    }

    #[test]
    fn sparse_evaluate_matches_densified() {
        let mut rng = seeded_rng(17);
        for model in Model::ALL {
            for _ in 0..20 {
                let n = rng.gen_range(1..=8);
                let k = rng.gen_range(1..=1 << n.min(4));
                let mut ft = SparseFT::new(n, model);
                for _ in 0..k {
                    ft.insert(random_mask(n, &mut rng), standard_normal(&mut rng));
                }
                let dense = sparse_to_dense(&ft).unwrap();
                for mask in all_masks(n) {
                    let direct = ft.evaluate(&mask);
                    let tabulated = dense.value(&mask);
                    assert!((direct - tabulated).abs() < 1e-9, "{model} at {mask}");
                }
            }
        }
    }

    #[test]
    fn restrict_full_ground_set_is_identity() {
        let mut rng = seeded_rng(19);
        let n = 6;
        let mut ft = SparseFT::new(n, Model::M4);
        for _ in 0..5 {
            ft.insert(random_mask(n, &mut rng), standard_normal(&mut rng));
        }
        let same = restrict_ft(&ft, &SubsetMask::full(n), Model::M4).unwrap();
        assert_eq!(same, ft);
    }

    #[test]
    fn restrict_path_cut_examples() {
        let ft = SparseFT::from_entries(
            3,
            Model::M4,
            all_masks(3).zip([0.0, 1.0, 2.0, -2.0, 1.0, 0.0, -2.0, 0.0]),
        )
        .unwrap();
        // Restricting to ∅ sums every coefficient: exactly zero here.
        let collapsed = restrict_ft(&ft, &SubsetMask::empty(3), Model::M4).unwrap();
        assert!(collapsed.is_empty());
        // Restricting to {x1} groups by B ∩ {x1}.
        let restricted = restrict_ft(&ft, &SubsetMask::singleton(3, 0), Model::M4).unwrap();
        assert_eq!(restricted.len(), 2);
        assert_eq!(restricted.coefficient(&SubsetMask::empty(1)), 1.0);
        assert_eq!(restricted.coefficient(&SubsetMask::singleton(1, 0)), -1.0);
    }

    #[test]
    fn restriction_agrees_with_restricted_function() {
        // For all C ⊆ M the restricted spectrum must synthesise s(C)
        // (models 4 and 5) or s(M^c ∪ C) (model 3).
        let mut rng = seeded_rng(23);
        for model in Model::ALL {
            for _ in 0..30 {
                let n = rng.gen_range(1..=8);
                let mut ft = SparseFT::new(n, model);
                for _ in 0..rng.gen_range(1..=6) {
                    ft.insert(random_mask(n, &mut rng), standard_normal(&mut rng));
                }
                let full = sparse_to_dense(&ft).unwrap();
                let m = random_mask(n, &mut rng);
                let restricted = restrict_ft(&ft, &m, model).unwrap();
                let elems: Vec<usize> = m.elements().collect();
                for sub in all_masks(elems.len()) {
                    let c = SubsetMask::from_elements(n, sub.elements().map(|i| elems[i]));
                    let point = match model {
                        Model::M3 => c.union(&m.complement()),
                        _ => c.clone(),
                    };
                    let want = full.value(&point);
                    let got = restricted.evaluate(&sub);
                    assert!(
                        (want - got).abs() < 1e-9,
                        "{model} M={m} C={c}: {want} vs {got}"
                    );
                }
            }
        }
    }
}
