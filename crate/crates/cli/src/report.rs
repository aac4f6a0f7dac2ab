//! Report layout. Every report lists the certificates behind its numbers so
//! that `verify-report` can re-check them without trusting the run.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use subranks_core::bridge::StrengthCertificate;
use subranks_core::json::{
    tensor_hash, DecompositionJson, PolyJson, StrengthTermJson, TensorJson, TripleJson,
};
use subranks_core::nullcone::SubspaceTriple;
use subranks_core::rank::{LowerBound, PartitionDecomposition, RankCertificate, RankKind};
use subranks_core::Tensor;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub config: Value,
    pub results: Value,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, config: Value, results: Value) -> Self {
        Report {
            command: command.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config,
            results,
            certificates: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankKindJson {
    Partition,
    Slice,
}

impl From<RankKind> for RankKindJson {
    fn from(k: RankKind) -> Self {
        match k {
            RankKind::Partition => RankKindJson::Partition,
            RankKind::Slice => RankKindJson::Slice,
        }
    }
}

impl From<RankKindJson> for RankKind {
    fn from(k: RankKindJson) -> Self {
        match k {
            RankKindJson::Partition => RankKind::Partition,
            RankKindJson::Slice => RankKind::Slice,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `rank(tensor) = value` (an upper bound only when `lower_bound` is
    /// `none`).
    Rank {
        rank_kind: RankKindJson,
        label: String,
        tensor_hash: String,
        tensor: TensorJson,
        value: usize,
        lower_bound: LowerBound,
        witness: DecompositionJson,
    },
    /// A decomposition of at most `bound` terms.
    Decomposition {
        label: String,
        tensor_hash: String,
        tensor: TensorJson,
        bound: usize,
        witness: DecompositionJson,
    },
    Strength {
        label: String,
        poly: PolyJson,
        value: usize,
        lower_bound: LowerBound,
        witness: Vec<StrengthTermJson>,
    },
    /// `poly` vanishes on the image of every parametrization of the mode.
    Equation {
        d: usize,
        n: usize,
        r: usize,
        mode: String,
        poly: PolyJson,
    },
    Nullcone {
        label: String,
        tensor_hash: String,
        tensor: TensorJson,
        triple: TripleJson,
        certified: bool,
    },
}

pub fn rank_certificate(label: &str, kind: RankKind, t: &Tensor, c: &RankCertificate) -> Certificate {
    Certificate::Rank {
        rank_kind: kind.into(),
        label: label.into(),
        tensor_hash: tensor_hash(t),
        tensor: TensorJson::from_tensor(t),
        value: c.value,
        lower_bound: c.lower_bound,
        witness: DecompositionJson::from_decomposition(&c.witness),
    }
}

pub fn decomposition_certificate(label: &str, t: &Tensor, bound: usize, d: &PartitionDecomposition) -> Certificate {
    Certificate::Decomposition {
        label: label.into(),
        tensor_hash: tensor_hash(t),
        tensor: TensorJson::from_tensor(t),
        bound,
        witness: DecompositionJson::from_decomposition(d),
    }
}

pub fn strength_certificate(
    label: &str,
    p: &subranks_core::bridge::HomogPoly,
    c: &StrengthCertificate,
) -> subranks_core::Result<Certificate> {
    Ok(Certificate::Strength {
        label: label.into(),
        poly: PolyJson::from_poly(p)?,
        value: c.value,
        lower_bound: c.lower_bound,
        witness: subranks_core::json::strength_terms_json(&c.witness)?,
    })
}

pub fn nullcone_certificate(label: &str, t: &Tensor, triple: &SubspaceTriple, certified: bool) -> Certificate {
    Certificate::Nullcone {
        label: label.into(),
        tensor_hash: tensor_hash(t),
        tensor: TensorJson::from_tensor(t),
        triple: TripleJson::from_triple(triple),
        certified,
    }
}
