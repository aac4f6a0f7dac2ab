//! Input tensors: files and seeded generators.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subranks_core::json::tensor_from_json;
use subranks_core::{Field, Tensor};

use crate::args::{Generator, TensorSource};

pub fn parse_field(s: &str) -> Result<Field> {
    match s.to_ascii_lowercase().as_str() {
        "rational" | "q" => Ok(Field::Rational),
        other => {
            let p: u32 = other
                .parse()
                .map_err(|_| subranks_core::Error::Parse(format!("field {s:?} is neither a prime nor \"rational\"")))?;
            Ok(Field::prime(p)?)
        }
    }
}

pub fn read_tensor(path: &Path) -> Result<Tensor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(tensor_from_json(&text)?)
}

pub fn generate(kind: Generator, dims: &[usize], field: Field, seed: u64) -> Result<Tensor> {
    if dims.is_empty() || dims.contains(&0) {
        bail!(subranks_core::Error::Parse(format!("bad dims {dims:?}")));
    }
    let uniform_density = match field.modulus() {
        Some(p) => (p - 1) as f64 / p as f64,
        None => 1.0,
    };
    Ok(match kind {
        Generator::Uniform => Tensor::random(dims, field, seed, uniform_density)?,
        Generator::Sparse => Tensor::random(dims, field, seed, 0.2)?,
        Generator::Diagonal => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut t = Tensor::zeros(dims, field);
            let len = *dims.iter().min().unwrap();
            for i in 0..len {
                let v = match field.modulus() {
                    Some(p) => field.from_u32(rng.random_range(1..p)),
                    None => field.from_i64(rng.random_range(1..6)),
                };
                t.set(&vec![i; dims.len()], v);
            }
            t
        }
    })
}

/// The tensor named by a source, with seed `seed`.
pub fn load(src: &TensorSource, seed: u64) -> Result<Tensor> {
    match (&src.input, src.gen) {
        (Some(path), None) => read_tensor(path),
        (None, Some(g)) => generate(g, &src.dims, parse_field(&src.field)?, seed),
        (Some(_), Some(_)) => bail!(subranks_core::Error::Parse("give a tensor file or --gen, not both".into())),
        (None, None) => bail!(subranks_core::Error::Parse("need a tensor file or --gen".into())),
    }
}
