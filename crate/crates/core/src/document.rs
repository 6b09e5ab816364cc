//! On-disk representations.
//!
//! Two formats exist for both designs and factorizations. The text format
//! is the canonical comparison format: a header line, one object per line,
//! ascending integers, LF endings, no trailing whitespace, bit-identical
//! across runs. The JSON format additionally carries labels, an independent
//! set, a coloring, and step metadata; field order is fixed and nothing is
//! floating point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construct::ConstructionTrace;
use crate::design::{Coloring, Factor, FactorTag, Factorization, TripleSystem};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Step metadata carried by a design document: which doubling produced the
/// system, under which difference triple and factor assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMetadata {
    pub n: u32,
    pub triple: [usize; 3],
    /// Factor tag per seed point.
    pub phi: Vec<String>,
}

/// A triple system with optional carried structure, ready for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignDocument {
    pub format_version: u32,
    pub v: usize,
    pub blocks: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<usize, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independent_set: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceMetadata>,
}

impl DesignDocument {
    pub fn from_system(system: &TripleSystem) -> Self {
        DesignDocument {
            format_version: FORMAT_VERSION,
            v: system.order(),
            blocks: system.blocks().iter().map(|b| b.points()).collect(),
            labels: if system.labels().is_empty() {
                None
            } else {
                Some(system.labels().clone())
            },
            independent_set: None,
            coloring: None,
            trace: None,
        }
    }

    /// Document for a doubling step's result, with whatever structure the
    /// step carried.
    pub fn from_trace(trace: &ConstructionTrace) -> Self {
        let mut doc = Self::from_system(&trace.result);
        doc.independent_set = trace.carried_independent_set.clone();
        doc.coloring = trace
            .carried_coloring
            .as_ref()
            .map(|c| c.assignment().to_vec());
        doc.trace = Some(TraceMetadata {
            n: trace.n,
            triple: trace.triple.members(),
            phi: trace.phi.tags().iter().map(|t| t.to_string()).collect(),
        });
        doc
    }

    pub fn with_independent_set(mut self, set: &[usize]) -> Self {
        self.independent_set = Some(set.to_vec());
        self
    }

    pub fn with_coloring(mut self, coloring: &Coloring) -> Self {
        self.coloring = Some(coloring.assignment().to_vec());
        self
    }

    /// Canonicalizes the block list back into a system. Out-of-range points
    /// and duplicate blocks are rejected, so serialize-parse-canonicalize is
    /// the identity on canonical documents.
    pub fn to_system(&self) -> Result<TripleSystem> {
        let ts = TripleSystem::new(self.v, self.blocks.iter().copied())?;
        match &self.labels {
            Some(labels) => ts.with_labels(labels.clone()),
            None => Ok(ts),
        }
    }

    pub fn coloring(&self) -> Result<Option<Coloring>> {
        self.coloring.clone().map(Coloring::new).transpose()
    }

    /// The canonical text form: `v <order>` then one block per line.
    pub fn render_txt(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("v {}\n", self.v));
        for block in &self.blocks {
            out.push_str(&format!("{} {} {}\n", block[0], block[1], block[2]));
        }
        out
    }

    pub fn parse_txt(text: &str) -> Result<Self> {
        let mut lines = non_empty_lines(text);
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty design document".into()))?;
        let v = parse_header(header, "v")?;
        let mut blocks = Vec::new();
        for line in lines {
            let fields = parse_fields(line, 3)?;
            blocks.push([fields[0], fields[1], fields[2]]);
        }
        Ok(DesignDocument {
            format_version: FORMAT_VERSION,
            v,
            blocks,
            labels: None,
            independent_set: None,
            coloring: None,
            trace: None,
        })
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serialization");
        out.push('\n');
        out
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses either format, deciding by the leading character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_txt(text)
        }
    }
}

/// A factor family with tags, ready for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDocument {
    pub format_version: u32,
    pub m: usize,
    pub factors: Vec<FactorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub tag: String,
    pub pairs: Vec<[usize; 2]>,
}

impl FactorizationDocument {
    pub fn from_factors(m: usize, factors: &[Factor]) -> Self {
        FactorizationDocument {
            format_version: FORMAT_VERSION,
            m,
            factors: factors
                .iter()
                .map(|f| FactorEntry {
                    tag: f.tag().to_string(),
                    pairs: f.pairs().iter().map(|&(x, y)| [x, y]).collect(),
                })
                .collect(),
        }
    }

    pub fn from_factorization(f: &Factorization) -> Self {
        Self::from_factors(f.m(), f.factors())
    }

    pub fn to_factors(&self) -> Result<Vec<Factor>> {
        self.factors
            .iter()
            .map(|entry| {
                Factor::new(
                    self.m,
                    FactorTag::parse(&entry.tag)?,
                    entry.pairs.iter().map(|&[x, y]| (x, y)).collect(),
                )
            })
            .collect()
    }

    pub fn to_factorization(&self) -> Result<Factorization> {
        Factorization::new(self.m, self.to_factors()?)
    }

    /// The canonical text form: `m <order>` then one factor per line as
    /// `<tag> x-y x-y ...` with pairs in canonical order.
    pub fn render_txt(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("m {}\n", self.m));
        for factor in &self.factors {
            out.push_str(&factor.tag);
            for pair in &factor.pairs {
                out.push_str(&format!(" {}-{}", pair[0], pair[1]));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_txt(text: &str) -> Result<Self> {
        let mut lines = non_empty_lines(text);
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty factorization document".into()))?;
        let m = parse_header(header, "m")?;
        let mut factors = Vec::new();
        for line in lines {
            let mut fields = line.split_whitespace();
            let tag = fields
                .next()
                .ok_or_else(|| Error::Parse("factor line without a tag".into()))?
                .to_string();
            let mut pairs = Vec::new();
            for field in fields {
                let (x, y) = field
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("malformed pair {field:?}")))?;
                let x = x
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed pair {field:?}")))?;
                let y = y
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed pair {field:?}")))?;
                pairs.push([x, y]);
            }
            factors.push(FactorEntry { tag, pairs });
        }
        Ok(FactorizationDocument {
            format_version: FORMAT_VERSION,
            m,
            factors,
        })
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serialization");
        out.push('\n');
        out
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_txt(text)
        }
    }
}

fn non_empty_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim_end).filter(|l| !l.is_empty())
}

fn parse_header(line: &str, key: &str) -> Result<usize> {
    let mut fields = line.split_whitespace();
    match (fields.next(), fields.next(), fields.next()) {
        (Some(k), Some(value), None) if k == key => value
            .parse()
            .map_err(|_| Error::Parse(format!("bad header value {value:?}"))),
        _ => Err(Error::Parse(format!(
            "expected header '{key} <count>', got {line:?}"
        ))),
    }
}

fn parse_fields(line: &str, arity: usize) -> Result<Vec<usize>> {
    let fields: Vec<usize> = line
        .split_whitespace()
        .map(|f| {
            f.parse()
                .map_err(|_| Error::Parse(format!("malformed field {f:?}")))
        })
        .collect::<Result<_>>()?;
    if fields.len() != arity {
        return Err(Error::Parse(format!(
            "expected {arity} fields, got {} in {line:?}",
            fields.len()
        )));
    }
    Ok(fields)
}
