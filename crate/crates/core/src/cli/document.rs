//! The versioned JSON input format.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cwstruct::Objective;
use crate::exactalg::Gf2Vector;
use crate::polytope::{PolytopeData, SimplePolytope};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A rational number written as `"p/q"`, `"p"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    pub fn parse(&self) -> Result<BigRational> {
        match self {
            RationalText::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            RationalText::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RationalText::Text(q.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number of the form p/q"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectiveDoc {
    Functional(Vec<RationalText>),
    Order(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub schema_version: u32,
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<RationalText>>>,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schar: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<ObjectiveDoc>,
}

/// A validated polytope with the optional sections of its document.
#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub polytope: SimplePolytope,
    pub schar: Option<Vec<Gf2Vector>>,
    pub isotropy: Option<Vec<Vec<i64>>>,
    pub objective: Option<Objective>,
}

impl PolytopeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolytopeDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_data(data: &PolytopeData) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            name: data.name.clone(),
            dim: data.dim,
            vertex_count: Some(data.vertex_count),
            vertices: data.coords.as_ref().map(|c| {
                c.iter()
                    .map(|row| row.iter().map(RationalText::from_rational).collect())
                    .collect()
            }),
            facets: data.facets.clone(),
            schar: None,
            isotropy: None,
            objective: None,
        }
    }

    pub fn to_data(&self) -> Result<PolytopeData> {
        let coords = match &self.vertices {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(v, row)| {
                        row.iter()
                            .map(|x| x.parse())
                            .collect::<Result<Vec<_>>>()
                            .map_err(|e| Error::Parse(format!("vertices[{v}]: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let vertex_count = match (self.vertex_count, &coords) {
            (Some(n), Some(c)) if n != c.len() => {
                return Err(Error::Parse(format!(
                    "vertex_count is {n} but {} coordinate rows are given",
                    c.len()
                )))
            }
            (Some(n), _) => n,
            (None, Some(c)) => c.len(),
            (None, None) => self.facets.iter().flatten().max().map_or(0, |&m| m + 1),
        };
        Ok(PolytopeData {
            name: self.name.clone(),
            dim: self.dim,
            vertex_count,
            facets: self.facets.clone(),
            coords,
        })
    }

    /// Validates the polytope and checks the shapes of the optional sections.
    pub fn parse(&self) -> Result<ParsedInput> {
        let polytope = SimplePolytope::new(self.to_data()?)?;
        let m = polytope.facet_count();
        let d = self.dim.saturating_sub(1);
        let schar = match &self.schar {
            None => None,
            Some(rows) => {
                if rows.len() != m {
                    return Err(Error::Parse(format!("schar has {} rows for {m} facets", rows.len())));
                }
                for (i, r) in rows.iter().enumerate() {
                    if r.len() != d || r.iter().any(|&b| b > 1) {
                        return Err(Error::Parse(format!(
                            "schar[{i}] must be {d} bits, each 0 or 1"
                        )));
                    }
                }
                Some(rows.iter().map(|r| Gf2Vector::from_bits(r)).collect())
            }
        };
        if let Some(rows) = &self.isotropy {
            if rows.len() != m || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Parse(format!(
                    "isotropy must have {m} rows of length {d}"
                )));
            }
        }
        let objective = match &self.objective {
            None => None,
            Some(ObjectiveDoc::Order(o)) => Some(Objective::Order(o.clone())),
            Some(ObjectiveDoc::Functional(c)) => Some(Objective::Functional(
                c.iter().map(RationalText::parse).collect::<Result<_>>()?,
            )),
        };
        Ok(ParsedInput { polytope, schar, isotropy: self.isotropy.clone(), objective })
    }
}

pub fn parse_polytope(text: &str) -> Result<ParsedInput> {
    PolytopeDocument::from_json(text)?.parse()
}
