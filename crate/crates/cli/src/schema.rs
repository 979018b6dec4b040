//! The JSON input schema. Field names follow the data of a 1-motive:
//! `X_rank`, `Yv_rank`, `v`, `vstar`, `psi`, `relations`, `mult_relations`.
//! Rationals are strings such as `"3"` or `"-2/5"`; plain JSON integers
//! are accepted on input.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use motcalc_core::exactlin::{RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational that serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub Rational);

impl Q {
    pub fn int(n: i64) -> Self {
        Q(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not a rational number");
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        match s.split_once('/') {
            None => Ok(Q(Rational::from_integer(int(s)?))),
            Some((p, q)) => {
                let q = int(q)?;
                if q.is_zero() {
                    return Err(format!("`{s}` has a zero denominator"));
                }
                Ok(Q(Rational::new(int(p)?, q)))
            }
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl<'de> Visitor<'de> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }

        d.deserialize_any(QVisitor)
    }
}

pub type Vector = Vec<Q>;
/// Row-major.
pub type Matrix = Vec<Vec<Q>>;
/// Exponents over named multiplicative generators; absent names are 0.
pub type Exponents = BTreeMap<String, Q>;

pub fn to_rationals(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn from_rationals(v: &[Rational]) -> Vector {
    v.iter().cloned().map(Q).collect()
}

pub fn matrix_from_rows(m: &Matrix, cols: usize) -> Result<RatMatrix, String> {
    let rows: Vec<Vec<Rational>> = m.iter().map(|r| to_rationals(r)).collect();
    RatMatrix::from_rows(cols, &rows).map_err(|e| e.to_string())
}

pub fn matrix_to_rows(m: &RatMatrix) -> Matrix {
    m.row_vectors().iter().map(|r| from_rationals(r)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDecl {
    pub generators: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDecl {
    pub name: String,
    pub g: usize,
    pub dual: String,
    pub point_space_dim: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub end_generators: Vec<Matrix>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub end_commutative: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub end_action: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_transfer: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub galois_action: Vec<Matrix>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// A point given by name (looked up in the variety) or by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Named(String),
    Coords(Vector),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveDecl {
    pub name: String,
    #[serde(rename = "X_rank")]
    pub x_rank: usize,
    #[serde(rename = "Yv_rank")]
    pub yv_rank: usize,
    #[serde(rename = "X_action", default, skip_serializing_if = "Vec::is_empty")]
    pub x_action: Vec<Matrix>,
    #[serde(rename = "Yv_action", default, skip_serializing_if = "Vec::is_empty")]
    pub yv_action: Vec<Matrix>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(rename = "Astar", default, skip_serializing_if = "Option::is_none")]
    pub astar: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub v: Vec<PointRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vstar: Vec<PointRef>,
    /// `X_rank` rows of `Yv_rank` entries.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub psi: Vec<Vec<Exponents>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reductive_dim: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reductive_dim: Option<usize>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.reductive_dim.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult_basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult_relations: Vec<Exponents>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult_action: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub varieties: Vec<VarietyDecl>,
    pub motives: Vec<MotiveDecl>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

fn toggle_dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

impl MotiveDecl {
    /// The Cartier dual at the declaration level: `X ↔ Y^v`, `A ↔ A*`,
    /// `v ↔ v*`, `ψ` transposed.
    pub fn cartier_dual(&self, dual_of: impl Fn(&str) -> Option<String>) -> MotiveDecl {
        let astar = self
            .astar
            .clone()
            .or_else(|| self.a.as_deref().and_then(&dual_of));
        let psi = if self.psi.is_empty() {
            Vec::new()
        } else {
            (0..self.yv_rank)
                .map(|j| {
                    (0..self.x_rank)
                        .map(|i| {
                            self.psi
                                .get(i)
                                .and_then(|row| row.get(j))
                                .cloned()
                                .unwrap_or_default()
                        })
                        .collect()
                })
                .collect()
        };
        MotiveDecl {
            name: toggle_dual_name(&self.name),
            x_rank: self.yv_rank,
            yv_rank: self.x_rank,
            x_action: self.yv_action.clone(),
            yv_action: self.x_action.clone(),
            a: astar,
            astar: self.a.clone(),
            v: self.vstar.clone(),
            vstar: self.v.clone(),
            psi,
            reductive_dim: self.reductive_dim,
        }
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Every motive replaced by its Cartier dual; varieties and the rest are kept.
    pub fn cartier_dual(&self) -> InputDocument {
        let dual_of = |name: &str| {
            self.varieties
                .iter()
                .find(|v| v.name == name)
                .map(|v| v.dual.clone())
        };
        InputDocument {
            motives: self.motives.iter().map(|m| m.cartier_dual(dual_of)).collect(),
            ..self.clone()
        }
    }
}
