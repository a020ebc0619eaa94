//! Stable file formats.
//!
//! * Sparse spectra: JSON
//!   `{"n":int,"model":int,"coefficients":[{"set":[..],"value":f},..]}`
//!   with `set` holding sorted 1-based element indices (`[]` is the
//!   empty set). Entries are written in frequency rank order, so equal
//!   spectra serialize to identical bytes.
//! * Dense vectors: CSV with header `rank,value`, one row per subset in
//!   rank order, or raw little-endian `f64` values preceded by an
//!   8-byte little-endian count.
//! * Generator specs: one JSON object per family, tagged by `"family"`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{DenseSetFunction, Model, SparseFT};
use crate::generators::{CoverageSpec, FacilitySpec, GraphSpec, PreferenceSpec};
use crate::set::SubsetMask;

/// Version of every JSON schema in this module.
pub const SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------------
// Sparse spectra

#[derive(Serialize, Deserialize)]
struct SparseFtFile {
    n: usize,
    model: u8,
    coefficients: Vec<CoefficientEntry>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientEntry {
    set: Vec<usize>,
    value: f64,
}

fn mask_to_indices(mask: &SubsetMask) -> Vec<usize> {
    mask.elements().map(|e| e + 1).collect()
}

fn mask_from_indices(n: usize, indices: &[usize]) -> Result<SubsetMask> {
    let mut mask = SubsetMask::empty(n);
    let mut previous = 0usize;
    for &index in indices {
        if index == 0 || index > n {
            return Err(Error::invalid(format!(
                "element index {index} outside 1..={n}"
            )));
        }
        if index <= previous {
            return Err(Error::invalid("set indices must be sorted and distinct"));
        }
        previous = index;
        mask.insert(index - 1);
    }
    Ok(mask)
}

pub fn sparse_to_json(ft: &SparseFT) -> String {
    let file = SparseFtFile {
        n: ft.n(),
        model: ft.model().id(),
        coefficients: ft
            .iter()
            .map(|(mask, value)| CoefficientEntry {
                set: mask_to_indices(mask),
                value,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("spectrum serialization cannot fail")
}

pub fn sparse_from_json(text: &str) -> Result<SparseFT> {
    let file: SparseFtFile = serde_json::from_str(text)?;
    let model = Model::from_id(file.model)?;
    let mut entries = Vec::with_capacity(file.coefficients.len());
    for entry in &file.coefficients {
        if entry.value == 0.0 {
            return Err(Error::invalid("stored coefficients must be nonzero"));
        }
        entries.push((mask_from_indices(file.n, &entry.set)?, entry.value));
    }
    let ft = SparseFT::from_entries(file.n, model, entries)?;
    if ft.len() != file.coefficients.len() {
        return Err(Error::invalid("duplicate frequency in coefficient list"));
    }
    Ok(ft)
}

pub fn write_sparse(path: &Path, ft: &SparseFT) -> Result<()> {
    std::fs::write(path, sparse_to_json(ft))?;
    Ok(())
}

pub fn read_sparse(path: &Path) -> Result<SparseFT> {
    sparse_from_json(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------
// Dense vectors

pub fn dense_to_csv(f: &DenseSetFunction) -> String {
    let mut out = String::from("rank,value\n");
    for (rank, value) in f.values().iter().enumerate() {
        out.push_str(&format!("{rank},{value}\n"));
    }
    out
}

pub fn dense_from_csv(text: &str) -> Result<DenseSetFunction> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header.trim() == "rank,value" => {}
        _ => {
            return Err(Error::invalid(
                "dense CSV must start with header 'rank,value'",
            ))
        }
    }
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (rank, value) = line
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("malformed CSV row {i}")))?;
        let rank: usize = rank
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad rank in CSV row {i}")))?;
        if rank != i {
            return Err(Error::invalid(format!(
                "CSV rows must be in rank order, row {i} has rank {rank}"
            )));
        }
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad value in CSV row {i}")))?;
        values.push(value);
    }
    let n = values.len().trailing_zeros() as usize;
    if values.is_empty() || values.len() != 1 << n {
        return Err(Error::invalid(format!(
            "dense vector length must be a power of two, got {}",
            values.len()
        )));
    }
    DenseSetFunction::new(n, values)
}

pub fn dense_to_bin(f: &DenseSetFunction) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 8 * f.len());
    out.extend_from_slice(&(f.len() as u64).to_le_bytes());
    for value in f.values() {
        out.extend_from_slice(&value.to_le_bytes());
    }
    out
}

pub fn dense_from_bin(mut reader: impl Read) -> Result<DenseSetFunction> {
    let mut header = [0u8; 8];
    reader.read_exact(&mut header)?;
    let count = u64::from_le_bytes(header) as usize;
    let n = count.trailing_zeros() as usize;
    if count == 0 || count != 1 << n {
        return Err(Error::invalid("binary dense length must be a power of two"));
    }
    let mut values = Vec::with_capacity(count);
    let mut buf = [0u8; 8];
    for _ in 0..count {
        reader.read_exact(&mut buf)?;
        values.push(f64::from_le_bytes(buf));
    }
    DenseSetFunction::new(n, values)
}

/// Read a dense vector, picking the format from the extension
/// (`.bin` is raw floats, anything else is CSV).
pub fn read_dense(path: &Path) -> Result<DenseSetFunction> {
    if path.extension().is_some_and(|e| e == "bin") {
        dense_from_bin(std::fs::File::open(path)?)
    } else {
        dense_from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Write a dense vector, picking the format from the extension.
pub fn write_dense(path: &Path, f: &DenseSetFunction) -> Result<()> {
    if path.extension().is_some_and(|e| e == "bin") {
        let mut file = std::fs::File::create(path)?;
        file.write_all(&dense_to_bin(f))?;
    } else {
        std::fs::write(path, dense_to_csv(f))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Generator specs

/// On-disk form of a generator instance; the `generate` subcommand
/// writes these and `--oracle <path>.json` loads them.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorFile {
    Coverage {
        n: usize,
        universe_size: usize,
        /// 1-based universe indices per member set.
        membership: Vec<Vec<usize>>,
        weights: Vec<f64>,
    },
    Preference {
        u: Vec<f64>,
        r: Vec<Vec<f64>>,
        a: Vec<Vec<f64>>,
    },
    Facility {
        utilities: Vec<Vec<f64>>,
    },
    Cut {
        n: usize,
        /// 1-based endpoints with weight.
        edges: Vec<(usize, usize, f64)>,
    },
    RandomSparse {
        truth: serde_json::Value,
    },
    Infogain {
        sigma: f64,
        covariance: Vec<Vec<f64>>,
    },
}

impl GeneratorFile {
    pub fn from_coverage(spec: &CoverageSpec) -> Self {
        GeneratorFile::Coverage {
            n: spec.n,
            universe_size: spec.universe_size,
            membership: spec.membership.iter().map(mask_to_indices).collect(),
            weights: spec.weights.clone(),
        }
    }

    pub fn from_preference(spec: &PreferenceSpec) -> Self {
        GeneratorFile::Preference {
            u: spec.u.clone(),
            r: spec.r.clone(),
            a: spec.a.clone(),
        }
    }

    pub fn from_facility(spec: &FacilitySpec) -> Self {
        GeneratorFile::Facility {
            utilities: spec.utilities.clone(),
        }
    }

    pub fn from_cut(spec: &GraphSpec) -> Self {
        GeneratorFile::Cut {
            n: spec.n,
            edges: spec
                .edges
                .iter()
                .map(|&(u, v, w)| (u + 1, v + 1, w))
                .collect(),
        }
    }

    pub fn from_random_sparse(truth: &SparseFT) -> Result<Self> {
        Ok(GeneratorFile::RandomSparse {
            truth: serde_json::from_str(&sparse_to_json(truth))?,
        })
    }

    pub fn from_infogain(covariance: &[Vec<f64>], sigma: f64) -> Self {
        GeneratorFile::Infogain {
            sigma,
            covariance: covariance.to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn coverage_spec(
        n: usize,
        universe_size: usize,
        membership: &[Vec<usize>],
        weights: Vec<f64>,
    ) -> Result<CoverageSpec> {
        let masks = membership
            .iter()
            .map(|indices| mask_from_indices(universe_size, indices))
            .collect::<Result<Vec<_>>>()?;
        let spec = CoverageSpec::new(masks, weights)?;
        if spec.n != n {
            return Err(Error::invalid("membership count does not match n"));
        }
        Ok(spec)
    }

    /// Reconstruct the counting oracle this file describes.
    pub fn build_oracle(&self) -> Result<crate::function::SetFunctionOracle> {
        use crate::generators;
        match self {
            GeneratorFile::Coverage {
                n,
                universe_size,
                membership,
                weights,
            } => {
                let spec =
                    GeneratorFile::coverage_spec(*n, *universe_size, membership, weights.clone())?;
                Ok(generators::coverage_oracle(&spec))
            }
            GeneratorFile::Preference { u, r, a } => {
                let spec = PreferenceSpec::new(u.clone(), r.clone(), a.clone())?;
                Ok(generators::preference_oracle(&spec))
            }
            GeneratorFile::Facility { utilities } => {
                let spec = FacilitySpec::new(utilities.clone())?;
                Ok(generators::facility_location_oracle(&spec))
            }
            GeneratorFile::Cut { n, edges } => {
                let mut shifted = Vec::with_capacity(edges.len());
                for &(u, v, w) in edges {
                    if u == 0 || v == 0 {
                        return Err(Error::invalid("edge endpoints are 1-based"));
                    }
                    shifted.push((u - 1, v - 1, w));
                }
                let spec = GraphSpec::new(*n, shifted)?;
                Ok(generators::graph_cut_oracle(&spec))
            }
            GeneratorFile::RandomSparse { truth } => {
                let ft = sparse_from_json(&truth.to_string())?;
                Ok(crate::function::SetFunctionOracle::from_sparse(ft))
            }
            GeneratorFile::Infogain { sigma, covariance } => {
                generators::information_gain_oracle(covariance.clone(), *sigma)
            }
        }
    }
}

/// Report JSON mirroring [`crate::ssft::SsftReport`].
#[derive(Serialize, Deserialize)]
struct ReportFile {
    result: SparseFtFile,
    queries_used: u64,
    support_sizes_per_step: Vec<usize>,
    truncated: bool,
    seed_used: Option<u64>,
    recovered_k: usize,
}

pub fn report_to_json(report: &crate::ssft::SsftReport) -> String {
    let result: SparseFtFile = serde_json::from_str(&sparse_to_json(&report.result))
        .expect("spectrum serialization round trip");
    let file = ReportFile {
        result,
        queries_used: report.queries_used,
        support_sizes_per_step: report.support_sizes_per_step.clone(),
        truncated: report.truncated,
        seed_used: report.seed_used,
        recovered_k: report.result.len(),
    };
    serde_json::to_string_pretty(&file).expect("report serialization cannot fail")
}

pub fn write_generator(path: &Path, file: &GeneratorFile) -> Result<()> {
    std::fs::write(path, file.to_json())?;
    Ok(())
}

pub fn read_generator(path: &Path) -> Result<GeneratorFile> {
    GeneratorFile::from_json(&std::fs::read_to_string(path)?)
}
