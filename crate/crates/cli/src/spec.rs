//! The tableau spec file format: a JSON document describing a tableau either
//! by spanning generator matrices or by reduced-form data, plus optional
//! seed and resource-cap overrides.
//!
//! Rationals are always strings (`"3"`, `"-2/5"`) so that no value ever
//! passes through floating point.  Exactly one of `generators` / `reduced`
//! must be present.  Unknown fields are rejected.

use num::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};
use std::str::FromStr;

use involutive::config::Caps;
use involutive::mat::Mat;
use involutive::scalar::Scalar;
use involutive::tableau::Tableau;
use involutive::{Error, Result};

/// Overrides for individual [`Caps`] fields, applied on top of defaults.
#[derive(Clone, Debug, Default)]
pub struct CapsOverride {
    pub max_dim: Option<usize>,
    pub max_generators: Option<usize>,
    pub max_minors: Option<usize>,
    pub genericity_trials: Option<usize>,
    pub max_rounds: Option<usize>,
    pub trials_per_cut: Option<usize>,
    pub stable_rounds: Option<usize>,
}

impl CapsOverride {
    pub fn apply(&self, caps: &mut Caps) {
        if let Some(v) = self.max_dim {
            caps.max_dim = v;
        }
        if let Some(v) = self.max_generators {
            caps.max_generators = v;
        }
        if let Some(v) = self.max_minors {
            caps.max_minors = v;
        }
        if let Some(v) = self.genericity_trials {
            caps.genericity_trials = v;
        }
        if let Some(v) = self.max_rounds {
            caps.max_rounds = v;
        }
        if let Some(v) = self.trials_per_cut {
            caps.trials_per_cut = v;
        }
        if let Some(v) = self.stable_rounds {
            caps.stable_rounds = v;
        }
    }
}

/// How the spec describes the tableau.
#[derive(Clone, Debug)]
pub enum SpecBody {
    /// Spanning generator matrices, each `r x n`.
    Generators(Vec<Mat>),
    /// Reduced-form data: the Cartan characters and the coefficient
    /// quintuples `[a, lambda, k, b, value]`.
    Reduced {
        characters: Vec<usize>,
        entries: Vec<(usize, usize, usize, usize, Scalar)>,
    },
}

/// A validated tableau spec document.
#[derive(Clone, Debug)]
pub struct TableauSpec {
    pub n: usize,
    pub r: usize,
    pub body: SpecBody,
    pub seed: Option<u64>,
    pub caps: Option<CapsOverride>,
}

impl TableauSpec {
    /// Build the tableau the spec describes.
    pub fn to_tableau(&self, seed: u64, caps: &Caps) -> Result<Tableau> {
        match &self.body {
            SpecBody::Generators(gens) => {
                Tableau::from_generators(self.n, self.r, gens.clone(), seed, caps)
            }
            SpecBody::Reduced {
                characters,
                entries,
            } => Tableau::from_reduced(self.n, self.r, characters.clone(), entries, caps),
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn value_err(msg: impl Into<String>) -> Error {
    Error::Value(msg.into())
}

/// Parse a rational from its string form `"p"` or `"p/q"`.
pub fn parse_rational(s: &str, context: &str) -> Result<Scalar> {
    let bad = || value_err(format!("{context}: malformed rational {s:?}"));
    let mut parts = s.split('/');
    let numer = parts.next().ok_or_else(bad)?;
    let numer = BigInt::from_str(numer.trim()).map_err(|_| bad())?;
    let denom = match parts.next() {
        None => BigInt::from(1),
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    if denom == BigInt::from(0) {
        return Err(value_err(format!(
            "{context}: zero denominator in rational {s:?}"
        )));
    }
    Ok(Scalar::new(numer, denom))
}

fn rational_field(v: &Value, context: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_rational(s, context),
        _ => Err(value_err(format!(
            "{context}: rationals must be strings like \"3\" or \"-2/5\", got {v}"
        ))),
    }
}

fn count_field(map: &Map<String, Value>, key: &str) -> Result<usize> {
    let v = map
        .get(key)
        .ok_or_else(|| schema(format!("missing required field {key:?}")))?;
    usize_value(v, key)
}

fn usize_value(v: &Value, context: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| schema(format!("{context} must be a non-negative integer, got {v}")))
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], context: &str) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(format!("unknown field {key:?} in {context}")));
        }
    }
    Ok(())
}

fn parse_generators(v: &Value, n: usize, r: usize) -> Result<Vec<Mat>> {
    let list = v
        .as_array()
        .ok_or_else(|| schema("\"generators\" must be an array of matrices"))?;
    let mut gens = Vec::with_capacity(list.len());
    for (g, matrix) in list.iter().enumerate() {
        let rows = matrix
            .as_array()
            .ok_or_else(|| schema(format!("generator {g} must be an array of rows")))?;
        if rows.len() != r {
            return Err(schema(format!(
                "generator {g} has {} rows, expected r = {r}",
                rows.len()
            )));
        }
        let mut mat_rows = Vec::with_capacity(r);
        for (a, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| schema(format!("generator {g} row {a} must be an array")))?;
            if cells.len() != n {
                return Err(schema(format!(
                    "generator {g} row {a} has {} entries, expected n = {n}",
                    cells.len()
                )));
            }
            let mut out = Vec::with_capacity(n);
            for (k, cell) in cells.iter().enumerate() {
                out.push(rational_field(
                    cell,
                    &format!("generator {g} entry ({a}, {k})"),
                )?);
            }
            mat_rows.push(out);
        }
        gens.push(Mat::from_rows(n, mat_rows));
    }
    Ok(gens)
}

fn parse_reduced(v: &Value, n: usize) -> Result<SpecBody> {
    let map = v
        .as_object()
        .ok_or_else(|| schema("\"reduced\" must be an object"))?;
    check_keys(map, &["characters", "entries"], "\"reduced\"")?;
    let characters = map
        .get("characters")
        .ok_or_else(|| schema("missing required field \"characters\" in \"reduced\""))?
        .as_array()
        .ok_or_else(|| schema("\"characters\" must be an array of integers"))?
        .iter()
        .enumerate()
        .map(|(i, c)| usize_value(c, &format!("character {i}")))
        .collect::<Result<Vec<usize>>>()?;
    if characters.len() != n {
        return Err(schema(format!(
            "\"characters\" has {} entries, expected n = {n}",
            characters.len()
        )));
    }
    let entries_val = map
        .get("entries")
        .ok_or_else(|| schema("missing required field \"entries\" in \"reduced\""))?
        .as_array()
        .ok_or_else(|| schema("\"entries\" must be an array of quintuples"))?;
    let mut entries = Vec::with_capacity(entries_val.len());
    for (i, quintuple) in entries_val.iter().enumerate() {
        let parts = quintuple
            .as_array()
            .ok_or_else(|| schema(format!("entry {i} must be [a, lambda, k, b, value]")))?;
        if parts.len() != 5 {
            return Err(schema(format!(
                "entry {i} has {} components, expected [a, lambda, k, b, value]",
                parts.len()
            )));
        }
        let a = usize_value(&parts[0], &format!("entry {i} index a"))?;
        let lambda = usize_value(&parts[1], &format!("entry {i} index lambda"))?;
        let k = usize_value(&parts[2], &format!("entry {i} index k"))?;
        let b = usize_value(&parts[3], &format!("entry {i} index b"))?;
        let value = rational_field(&parts[4], &format!("entry {i} value"))?;
        entries.push((a, lambda, k, b, value));
    }
    Ok(SpecBody::Reduced {
        characters,
        entries,
    })
}

fn parse_caps(v: &Value) -> Result<CapsOverride> {
    let map = v
        .as_object()
        .ok_or_else(|| schema("\"caps\" must be an object"))?;
    check_keys(
        map,
        &[
            "max_dim",
            "max_generators",
            "max_minors",
            "genericity_trials",
            "max_rounds",
            "trials_per_cut",
            "stable_rounds",
        ],
        "\"caps\"",
    )?;
    let field = |key: &str| -> Result<Option<usize>> {
        map.get(key).map(|v| usize_value(v, key)).transpose()
    };
    Ok(CapsOverride {
        max_dim: field("max_dim")?,
        max_generators: field("max_generators")?,
        max_minors: field("max_minors")?,
        genericity_trials: field("genericity_trials")?,
        max_rounds: field("max_rounds")?,
        trials_per_cut: field("trials_per_cut")?,
        stable_rounds: field("stable_rounds")?,
    })
}

/// Parse and validate a spec document.
pub fn parse_spec(text: &str) -> Result<TableauSpec> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let map = root
        .as_object()
        .ok_or_else(|| schema("spec document must be a JSON object"))?;
    check_keys(
        map,
        &[
            "format_version",
            "n",
            "r",
            "generators",
            "reduced",
            "seed",
            "caps",
        ],
        "spec document",
    )?;
    let version = map
        .get("format_version")
        .ok_or_else(|| schema("missing required field \"format_version\""))?;
    if version.as_str() != Some("1") {
        return Err(schema(format!(
            "unsupported format_version {version}, expected \"1\""
        )));
    }
    let n = count_field(map, "n")?;
    let r = count_field(map, "r")?;
    let body = match (map.get("generators"), map.get("reduced")) {
        (Some(g), None) => SpecBody::Generators(parse_generators(g, n, r)?),
        (None, Some(q)) => parse_reduced(q, n)?,
        (Some(_), Some(_)) => {
            return Err(schema(
                "exactly one of \"generators\" and \"reduced\" must be present, found both",
            ))
        }
        (None, None) => {
            return Err(schema(
                "exactly one of \"generators\" and \"reduced\" must be present, found neither",
            ))
        }
    };
    let seed = map
        .get("seed")
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| schema(format!("\"seed\" must be a non-negative integer, got {v}")))
        })
        .transpose()?;
    let caps = map.get("caps").map(parse_caps).transpose()?;
    Ok(TableauSpec {
        n,
        r,
        body,
        seed,
        caps,
    })
}

#[derive(Serialize)]
struct EmittedSpec {
    format_version: &'static str,
    n: usize,
    r: usize,
    generators: Vec<Vec<Vec<String>>>,
}

/// Render a tableau as a spec document with generator matrices: the rows of
/// its canonical spanning basis, each unflattened to an `r x n` matrix.
pub fn emit_spec(t: &Tableau) -> String {
    let n = t.n();
    let r = t.r();
    let span = t.span_original();
    let basis = span.basis();
    let generators: Vec<Vec<Vec<String>>> = (0..span.dim())
        .map(|g| {
            (0..r)
                .map(|a| {
                    (0..n)
                        .map(|k| basis.at(g, a * n + k).to_string())
                        .collect()
                })
                .collect()
        })
        .collect();
    let doc = EmittedSpec {
        format_version: "1",
        n,
        r,
        generators,
    };
    serde_json::to_string_pretty(&doc).expect("spec serialization cannot fail")
}
