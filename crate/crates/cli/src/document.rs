//! JSON documents read and written by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use toric_kring_core::BigInt;
use toric_kring_core::{Cone, LatticeVector, LaurentPoly, QuotientRingElem};

use crate::error::CliError;

/// A fan given by rays and maximal cones (0-based ray indices), with an
/// optional generic vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<i64>>,
}

/// An integer that may exceed 64 bits; large values travel as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDoc {
    Small(i64),
    Big(String),
}

impl IntDoc {
    pub fn from_bigint(x: &BigInt) -> IntDoc {
        i64::try_from(x).map_or_else(|_| IntDoc::Big(x.to_string()), IntDoc::Small)
    }

    pub fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            IntDoc::Small(x) => Ok(BigInt::from(*x)),
            IntDoc::Big(s) => s
                .parse()
                .map_err(|_| CliError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exponent: Vec<IntDoc>,
    pub coeff: IntDoc,
}

/// A tuple of Laurent polynomials, one per maximal cone in input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDocument {
    pub rank: usize,
    pub components: Vec<Vec<TermDoc>>,
}

/// A list of classes in maximal-cone order, used as an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDocument {
    pub rank: usize,
    pub classes: Vec<Vec<Vec<TermDoc>>>,
}

/// Every command's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub kind: String,
    pub payload: Value,
    pub tool_version: String,
}

impl ResultDocument {
    pub fn new(kind: &str, payload: Value) -> Self {
        ResultDocument {
            kind: kind.to_string(),
            payload,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered, so converting through Value
        // sorts every object's keys
        let value = serde_json::to_value(self).expect("documents are plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        parse_json(s, "result document")
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(s: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn terms_to_doc(p: &LaurentPoly) -> Vec<TermDoc> {
    p.terms()
        .map(|(u, c)| TermDoc {
            exponent: u.entries().iter().map(IntDoc::from_bigint).collect(),
            coeff: IntDoc::from_bigint(c),
        })
        .collect()
}

pub fn doc_to_poly(rank: usize, terms: &[TermDoc], ctx: &str) -> Result<LaurentPoly, CliError> {
    let mut out = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        if t.exponent.len() != rank {
            return Err(CliError::Parse(format!(
                "{ctx}[{k}]: exponent has {} entries, expected {rank}",
                t.exponent.len()
            )));
        }
        let e = t
            .exponent
            .iter()
            .map(IntDoc::to_bigint)
            .collect::<Result<Vec<_>, _>>()?;
        out.push((LatticeVector::new(e), t.coeff.to_bigint()?));
    }
    LaurentPoly::from_terms(rank, out).map_err(|e| CliError::Parse(format!("{ctx}: {e}")))
}

impl ClassDocument {
    pub fn from_components(rank: usize, comps: &[LaurentPoly]) -> Self {
        ClassDocument {
            rank,
            components: comps.iter().map(terms_to_doc).collect(),
        }
    }

    pub fn to_polys(&self) -> Result<Vec<LaurentPoly>, CliError> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| doc_to_poly(self.rank, c, &format!("components[{i}]")))
            .collect()
    }
}

impl BasisDocument {
    pub fn to_polys(&self) -> Result<Vec<Vec<LaurentPoly>>, CliError> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, cls)| {
                cls.iter()
                    .enumerate()
                    .map(|(l, c)| doc_to_poly(self.rank, c, &format!("classes[{i}][{l}]")))
                    .collect()
            })
            .collect()
    }
}

pub fn int_json(x: &BigInt) -> Value {
    serde_json::to_value(IntDoc::from_bigint(x)).expect("integers serialize")
}

pub fn vector_json(v: &LatticeVector) -> Value {
    Value::Array(v.entries().iter().map(int_json).collect())
}

pub fn cone_json(c: &Cone) -> Value {
    Value::Array(c.rays().iter().map(vector_json).collect())
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    serde_json::to_value(terms_to_doc(p)).expect("terms serialize")
}

pub fn quotient_elem_json(x: &QuotientRingElem) -> Value {
    json!({
        "projection": x.quotient().projection.row_vectors().iter().map(vector_json).collect::<Vec<_>>(),
        "terms": poly_json(x.poly()),
    })
}

/// Object built from ordered pairs.
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    let map: BTreeMap<String, Value> = pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    serde_json::to_value(map).expect("maps serialize")
}
