//! JSON file formats. Indices and axes are 1-based on disk.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Field, Scalar};
use crate::bridge::{StrengthCertificate, StrengthTerm};
use crate::equations::{Monomial, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::rank::{LowerBound, PartitionDecomposition, PartitionTerm, RankCertificate};
use crate::nullcone::SubspaceTriple;
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Prime { char: u32 },
    Named(String),
}

impl FieldJson {
    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Prime(p) => FieldJson::Prime { char: p },
            Field::Rational => FieldJson::Named("rational".into()),
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldJson::Prime { char } => Field::prime(*char),
            FieldJson::Named(s) if s == "rational" => Ok(Field::Rational),
            FieldJson::Named(s) => Err(Error::Parse(format!("unknown field {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub idx: Vec<usize>,
    pub val: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub order: usize,
    pub dims: Vec<usize>,
    pub field: FieldJson,
    pub entries: Vec<EntryJson>,
}

impl TensorJson {
    pub fn from_tensor(t: &Tensor) -> Self {
        TensorJson {
            order: t.order(),
            dims: t.dims().to_vec(),
            field: FieldJson::from_field(t.field()),
            entries: t
                .support()
                .map(|(idx, v)| EntryJson {
                    idx: idx.iter().map(|i| i + 1).collect(),
                    val: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor> {
        let field = self.field.to_field()?;
        if self.order != self.dims.len() || self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Parse(format!(
                "order {} does not match dims {:?}",
                self.order, self.dims
            )));
        }
        let mut t = Tensor::zeros(&self.dims, field);
        for e in &self.entries {
            if e.idx.len() != self.order
                || e.idx.iter().zip(&self.dims).any(|(&i, &n)| i == 0 || i > n)
            {
                return Err(Error::Parse(format!("entry index {:?} out of range", e.idx)));
            }
            let idx: Vec<usize> = e.idx.iter().map(|i| i - 1).collect();
            let v = field.parse_scalar(&e.val)?;
            let cur = t.get(&idx).clone();
            t.set(&idx, &cur + &v);
        }
        Ok(t)
    }
}

pub fn tensor_to_json(t: &Tensor) -> String {
    serde_json::to_string(&TensorJson::from_tensor(t)).expect("serializable")
}

pub fn tensor_from_json(s: &str) -> Result<Tensor> {
    let j: TensorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_tensor()
}

/// SHA-256 of the compact canonical JSON of the tensor, as hex.
pub fn tensor_hash(t: &Tensor) -> String {
    let digest = Sha256::digest(tensor_to_json(t).as_bytes());
    hex::encode(digest.as_slice())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "I")]
    pub axes: Vec<usize>,
    #[serde(rename = "A")]
    pub a: TensorJson,
    #[serde(rename = "B")]
    pub b: TensorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub dims: Vec<usize>,
    pub field: FieldJson,
    pub terms: Vec<TermJson>,
}

impl DecompositionJson {
    pub fn from_decomposition(d: &PartitionDecomposition) -> Self {
        DecompositionJson {
            dims: d.dims().to_vec(),
            field: FieldJson::from_field(d.field()),
            terms: d
                .terms()
                .iter()
                .map(|t| TermJson {
                    axes: t.split.axes().iter().map(|a| a + 1).collect(),
                    a: TensorJson::from_tensor(&t.a),
                    b: TensorJson::from_tensor(&t.b),
                })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<PartitionDecomposition> {
        let field = self.field.to_field()?;
        let order = self.dims.len();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.axes.contains(&0) {
                    return Err(Error::Parse("axes are 1-based".into()));
                }
                let axes: Vec<usize> = t.axes.iter().map(|a| a - 1).collect();
                PartitionTerm::new(order, &axes, t.a.to_tensor()?, t.b.to_tensor()?)
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionDecomposition::new(&self.dims, field, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub value: usize,
    pub lower_bound: LowerBound,
    pub tensor_hash: String,
    pub witness: DecompositionJson,
}

impl CertificateJson {
    pub fn new(t: &Tensor, c: &RankCertificate) -> Self {
        CertificateJson {
            value: c.value,
            lower_bound: c.lower_bound,
            tensor_hash: tensor_hash(t),
            witness: DecompositionJson::from_decomposition(&c.witness),
        }
    }
}

/// One variable with its power: the 1-based indices followed by the power.
pub type PowerJson = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exp: Vec<PowerJson>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub terms: Vec<PolyTermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &Poly) -> Result<Self> {
        let (vars, dims, n) = match p.space() {
            VarSpace::Tensor(d) => ("tensor", Some(d.clone()), None),
            VarSpace::Point(n) => ("point", None, Some(*n)),
            VarSpace::Params => {
                return Err(Error::InvalidInput("parameter polynomials have no file format".into()))
            }
        };
        Ok(PolyJson {
            vars: vars.into(),
            dims,
            n,
            degree: p.degree(),
            field: Some(FieldJson::from_field(p.field())),
            terms: p
                .terms()
                .map(|(m, c)| PolyTermJson {
                    exp: m
                        .powers()
                        .iter()
                        .map(|(v, e)| v.iter().map(|i| i + 1).chain([*e as usize]).collect())
                        .collect(),
                    coef: c.to_string(),
                })
                .collect(),
        })
    }

    /// `default_field` applies when the file names none.
    pub fn to_poly(&self, default_field: Field) -> Result<Poly> {
        let field = match &self.field {
            Some(f) => f.to_field()?,
            None => default_field,
        };
        let (space, width) = match (self.vars.as_str(), &self.dims, self.n) {
            ("tensor", Some(d), _) => (VarSpace::Tensor(d.clone()), d.len()),
            ("point", _, Some(n)) => (VarSpace::Point(n), 1),
            _ => return Err(Error::Parse("need vars \"tensor\" with dims or \"point\" with n".into())),
        };
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let powers = t
                    .exp
                    .iter()
                    .map(|p| {
                        if p.len() != width + 1 || p[..width].contains(&0) {
                            return Err(Error::Parse(format!("bad exponent entry {p:?}")));
                        }
                        let e = u32::try_from(p[width]).map_err(|_| Error::Parse("power too large".into()))?;
                        Ok((p[..width].iter().map(|i| i - 1).collect(), e))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((Monomial::from_powers(powers), field.parse_scalar(&t.coef)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(space, field, self.degree, terms)
    }
}

pub fn poly_to_json(p: &Poly) -> Result<String> {
    Ok(serde_json::to_string(&PolyJson::from_poly(p)?).expect("serializable"))
}

pub fn poly_from_json(s: &str, default_field: Field) -> Result<Poly> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_poly(default_field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthTermJson {
    #[serde(rename = "Q")]
    pub q: PolyJson,
    #[serde(rename = "R")]
    pub r: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthJson {
    pub value: usize,
    pub lower_bound: LowerBound,
    pub witness: Vec<StrengthTermJson>,
}

impl StrengthJson {
    pub fn new(c: &StrengthCertificate) -> Result<Self> {
        Ok(StrengthJson {
            value: c.value,
            lower_bound: c.lower_bound,
            witness: strength_terms_json(&c.witness)?,
        })
    }
}

pub fn strength_terms_json(terms: &[StrengthTerm]) -> Result<Vec<StrengthTermJson>> {
    terms
        .iter()
        .map(|t| {
            Ok(StrengthTermJson {
                q: PolyJson::from_poly(&t.q)?,
                r: PolyJson::from_poly(&t.r)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub bases: [Vec<Vec<String>>; 3],
}

impl TripleJson {
    pub fn from_triple(t: &SubspaceTriple) -> Self {
        TripleJson {
            n: t.n,
            field: Some(FieldJson::from_field(t.field)),
            bases: t
                .bases
                .clone()
                .map(|b| b.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()),
        }
    }

    pub fn to_triple(&self, default_field: Field) -> Result<SubspaceTriple> {
        let field = match &self.field {
            Some(f) => f.to_field()?,
            None => default_field,
        };
        let parse = |b: &Vec<Vec<String>>| -> Result<Vec<Vec<Scalar>>> {
            b.iter()
                .map(|v| v.iter().map(|x| field.parse_scalar(x)).collect())
                .collect()
        };
        let [a, b, c] = &self.bases;
        SubspaceTriple::new(self.n, field, [parse(a)?, parse(b)?, parse(c)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::{prank, SearchOptions};

    #[test]
    fn tensor_round_trip() {
        for field in [Field::Prime(5), Field::Rational] {
            let t = Tensor::random(&[2, 3, 2], field, 3, 0.5).unwrap();
            assert_eq!(tensor_from_json(&tensor_to_json(&t)).unwrap(), t);
        }
    }

    #[test]
    fn parses_documented_layout() {
        let s = r#"{"order":3,"dims":[2,2,2],"field":{"char":2},
            "entries":[{"idx":[1,1,1],"val":"1"},{"idx":[2,2,2],"val":"1"}]}"#;
        let t = tensor_from_json(s).unwrap();
        assert!(t.get(&[1, 1, 1]).is_one() && t.get(&[0, 1, 1]).is_zero());
        let q = r#"{"order":2,"dims":[1,1],"field":"rational","entries":[{"idx":[1,1],"val":"3/7"}]}"#;
        assert_eq!(tensor_from_json(q).unwrap().get(&[0, 0]).to_string(), "3/7");
        let bad = r#"{"order":2,"dims":[1,1],"field":"rational","entries":[{"idx":[0,1],"val":"1"}]}"#;
        assert!(matches!(tensor_from_json(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn decomposition_round_trip() {
        let t = Tensor::random(&[2, 2, 2], Field::Prime(3), 11, 0.7).unwrap();
        let c = prank(&t, &SearchOptions::default()).unwrap();
        let j = DecompositionJson::from_decomposition(&c.witness);
        let text = serde_json::to_string(&j).unwrap();
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_decomposition().unwrap(), c.witness);
        assert_eq!(tensor_hash(&t).len(), 64);
    }

    #[test]
    fn poly_round_trip() {
        let q = Field::Rational;
        let det = Poly::from_i64(
            VarSpace::Tensor(vec![2, 2]),
            q,
            &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], -1)],
        )
        .unwrap();
        assert_eq!(poly_from_json(&poly_to_json(&det).unwrap(), Field::Prime(2)).unwrap(), det);
        let s = r#"{"vars":"point","n":2,"degree":2,"terms":[{"exp":[[1,2]],"coef":"3"},{"exp":[[1,1],[2,1]],"coef":"1"}]}"#;
        let p = poly_from_json(s, Field::Prime(7)).unwrap();
        assert_eq!(p.field(), Field::Prime(7));
        assert_eq!(p.len(), 2);
        let bad = r#"{"vars":"point","n":2,"degree":1,"terms":[{"exp":[[0,1]],"coef":"1"}]}"#;
        assert!(poly_from_json(bad, Field::Prime(7)).is_err());
    }

    #[test]
    fn triple_round_trip() {
        let f = Field::Prime(5);
        let t = SubspaceTriple::new(3, f, [vec![vec![f.one(), f.zero(), f.one()]], Vec::new(), Vec::new()]).unwrap();
        let j = serde_json::to_string(&TripleJson::from_triple(&t)).unwrap();
        let back: TripleJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_triple(f).unwrap(), t);
    }
}
