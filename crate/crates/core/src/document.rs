//! JSON set descriptions.
//!
//! ```json
//! {"kind":"middle_cantor","epsilon":"1/3"}
//! {"kind":"cutout","hull":["0","4"],"gaps":[["1","3"]]}
//! {"kind":"ifs","hull":["0","1"],"maps":[{"ratio":"1/3","offset":"0"},{"ratio":"1/3","offset":"2/3"}]}
//! {"kind":"corner_cantor","d":2,"n":10,"ell":"7/50"}
//! {"kind":"cube_tree","root":{"center":["0","0"],"radius":"1"},"children":[...]}
//! {"kind":"fy_cutout","hull":{"center":["0","0"],"radius":"1"},"gaps":[{"lo":[..],"hi":[..]}]}
//! ```
//!
//! Rationals are strings `"p/q"` (decimals are accepted too) or JSON
//! integers; they are written back as `"p/q"` strings.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::core1d::{AffineMap, CutOutSet};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::{format_rational, parse_rational};
use crate::setsrd::{BoxRd, CubeRd, CubeSystem, FYCutOutSpec, PointRd, TreeNode};
use crate::Rational;

/// An exact rational in a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse_rational(v).map(Rat).ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(Rational::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<Rational> for Rat {
    fn from(x: Rational) -> Self {
        Rat(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub ratio: Rat,
    pub offset: Rat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeDoc {
    pub center: Vec<Rat>,
    pub radius: Rat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub root: CubeDoc,
    #[serde(default)]
    pub children: Vec<TreeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxDoc {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetDocument {
    MiddleCantor { epsilon: Rat },
    Cutout { hull: [Rat; 2], gaps: Vec<[Rat; 2]> },
    Ifs { hull: [Rat; 2], maps: Vec<MapDoc> },
    CornerCantor { d: usize, n: usize, ell: Rat },
    CubeTree(TreeDoc),
    FyCutout { hull: CubeDoc, gaps: Vec<BoxDoc> },
}

/// A document turned into the object it describes.
#[derive(Debug, Clone)]
pub enum BuiltSet {
    Line(CutOutSet<Rational>),
    Cubes(CubeSystem<Rational>),
    Fy(FYCutOutSpec<Rational>),
}

impl BuiltSet {
    pub fn ambient_dim(&self) -> usize {
        match self {
            BuiltSet::Line(_) => 1,
            BuiltSet::Cubes(s) => s.dim(),
            BuiltSet::Fy(f) => f.hull.dim(),
        }
    }
}

fn rats(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn interval(pair: &[Rat; 2]) -> Result<Interval<Rational>> {
    Interval::try_new(pair[0].0.clone(), pair[1].0.clone())
        .ok_or_else(|| Error::Parse(format!("interval [{}, {}] has its ends reversed", pair[0].0, pair[1].0)))
}

impl CubeDoc {
    fn build(&self) -> Result<CubeRd<Rational>> {
        CubeRd::new(PointRd::new(rats(&self.center))?, self.radius.0.clone())
    }

    pub fn from_cube(c: &CubeRd<Rational>) -> Self {
        CubeDoc { center: c.center.0.iter().cloned().map(Rat).collect(), radius: Rat(c.radius.clone()) }
    }
}

impl TreeDoc {
    fn build(&self) -> Result<TreeNode<Rational>> {
        let children = self.children.iter().map(TreeDoc::build).collect::<Result<_>>()?;
        Ok(TreeNode { cube: self.root.build()?, children })
    }

    pub fn from_tree(t: &TreeNode<Rational>) -> Self {
        TreeDoc { root: CubeDoc::from_cube(&t.cube), children: t.children.iter().map(TreeDoc::from_tree).collect() }
    }
}

impl SetDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetDocument::MiddleCantor { .. } => "middle_cantor",
            SetDocument::Cutout { .. } => "cutout",
            SetDocument::Ifs { .. } => "ifs",
            SetDocument::CornerCantor { .. } => "corner_cantor",
            SetDocument::CubeTree(_) => "cube_tree",
            SetDocument::FyCutout { .. } => "fy_cutout",
        }
    }

    /// Constructs the set, reporting the constructor's error for invalid data.
    pub fn build(&self) -> Result<BuiltSet> {
        Ok(match self {
            SetDocument::MiddleCantor { epsilon } => BuiltSet::Line(CutOutSet::middle_cantor(epsilon.0.clone())?),
            SetDocument::Cutout { hull, gaps } => {
                let gaps = gaps.iter().map(interval).collect::<Result<_>>()?;
                BuiltSet::Line(CutOutSet::explicit(interval(hull)?, gaps)?)
            }
            SetDocument::Ifs { hull, maps } => {
                let maps = maps.iter().map(|m| AffineMap::new(m.ratio.0.clone(), m.offset.0.clone())).collect();
                BuiltSet::Line(CutOutSet::ifs(interval(hull)?, maps)?)
            }
            SetDocument::CornerCantor { d, n, ell } => {
                BuiltSet::Cubes(CubeSystem::corner_cantor(*d, *n, ell.0.clone())?)
            }
            SetDocument::CubeTree(t) => BuiltSet::Cubes(CubeSystem::explicit_tree(t.build()?)?),
            SetDocument::FyCutout { hull, gaps } => {
                let gaps = gaps.iter().map(|b| BoxRd::new(rats(&b.lo), rats(&b.hi))).collect::<Result<_>>()?;
                BuiltSet::Fy(FYCutOutSpec::new(hull.build()?, gaps)?)
            }
        })
    }
}
