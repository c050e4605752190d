//! JSON model descriptions shared by the library and the CLI.
//!
//! A model is an object `{"family": ..., "dimension": d, "params": {...}}`.
//! Stable tail dependence families are `independence`, `comonotone`,
//! `logistic`, `marshall_olkin`, `tawn1`, `tawn2` and `mixture`; tail copula
//! families are `survival_evc`, `archimax`, `archimedean`, `nac` and
//! `mixture_tc`. Where a tail copula is expected, a bare stable tail
//! dependence family stands for its survival extreme value copula.
//!
//! Errors carry the path of the offending field, e.g. `params.first.params.s`.

use std::io;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::nac::NacTree;
use crate::stdf::{StdfKind, StdfModel};
use crate::tail_copula::{rv_index, GeneratorTransform, TailCopulaKind, TailCopulaModel};
use crate::{Error, Result};

const STDF_FAMILIES: [&str; 7] = [
    "independence",
    "comonotone",
    "logistic",
    "marshall_olkin",
    "tawn1",
    "tawn2",
    "mixture",
];

fn at(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else if key.starts_with('[') {
        format!("{path}{key}")
    } else {
        format!("{path}.{key}")
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: if path.is_empty() { "<root>".into() } else { path.to_string() },
        message: message.into(),
    }
}

/// Re-homes construction errors under the `params` path of the model.
fn localize(err: Error, params_path: &str, model_path: &str) -> Error {
    match err {
        Error::InvalidParameter { name, reason } if name == "dimension" => schema(&at(model_path, "dimension"), reason),
        Error::InvalidParameter { name, reason } => schema(&at(params_path, &name), reason),
        Error::DimensionMismatch { expected, got } => schema(
            params_path,
            format!("components have different dimensions ({expected} and {got})"),
        ),
        Error::Schema { .. } => err,
        other => schema(model_path, other.to_string()),
    }
}

struct Envelope<'a> {
    family: &'a str,
    dimension: Option<usize>,
    params: Value,
    path: String,
}

fn envelope<'a>(value: &'a Value, path: &str) -> Result<Envelope<'a>> {
    let obj: &Map<String, Value> = value.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "family" | "dimension" | "params"))
    {
        return Err(schema(&at(path, key), "unknown field"));
    }
    let family = obj
        .get("family")
        .ok_or_else(|| schema(&at(path, "family"), "missing field"))?
        .as_str()
        .ok_or_else(|| schema(&at(path, "family"), "expected a string"))?;
    let dimension = match obj.get("dimension") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| schema(&at(path, "dimension"), "expected a nonnegative integer"))?
                as usize,
        ),
    };
    let params = match obj.get("params") {
        None | Some(Value::Null) => Value::Object(Map::new()),
        Some(v @ Value::Object(_)) => v.clone(),
        Some(_) => return Err(schema(&at(path, "params"), "expected an object")),
    };
    Ok(Envelope {
        family,
        dimension,
        params,
        path: path.to_string(),
    })
}

impl Envelope<'_> {
    fn params_path(&self) -> String {
        at(&self.path, "params")
    }

    fn params<T: DeserializeOwned>(&self) -> Result<T> {
        let base = self.params_path();
        serde_path_to_error::deserialize(&self.params).map_err(|e| {
            let inner = e.path().to_string();
            let path = if inner == "." || inner.is_empty() {
                base.clone()
            } else {
                at(&base, &inner)
            };
            schema(&path, e.into_inner().to_string())
        })
    }

    fn required_dimension(&self) -> Result<usize> {
        self.dimension
            .ok_or_else(|| schema(&at(&self.path, "dimension"), format!("required for family `{}`", self.family)))
    }

    fn check_dimension(&self, actual: usize) -> Result<()> {
        match self.dimension {
            Some(d) if d != actual => Err(schema(
                &at(&self.path, "dimension"),
                format!("declared {d} but the parameters imply {actual}"),
            )),
            _ => Ok(()),
        }
    }

    fn localize(&self, err: Error) -> Error {
        localize(err, &self.params_path(), &self.path)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LogisticParams {
    s: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoParams {
    alpha: Vec<f64>,
}

fn default_r() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tawn1Params {
    s: f64,
    /// Only enters through the `(1 - θ_j)` terms; defaults to 1.
    #[serde(default = "default_r")]
    r: f64,
    theta1: f64,
    theta2: f64,
    theta3: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tawn2Params {
    s: f64,
    r: f64,
    t: f64,
    phi: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureParams {
    weight: f64,
    first: Value,
    second: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurvivalEvcParams {
    stdf: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArchimaxParams {
    stdf: Value,
    alpha: Option<f64>,
    generator: Option<GeneratorTransform>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArchimedeanParams {
    alpha: Option<f64>,
    generator: Option<GeneratorTransform>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NacParams {
    tree: Value,
}

fn resolve_alpha(env: &Envelope<'_>, alpha: Option<f64>, generator: Option<GeneratorTransform>) -> Result<f64> {
    let params = env.params_path();
    match (alpha, generator) {
        (Some(a), None) => Ok(a),
        (None, Some(g)) => rv_index(&g).map_err(|e| match e {
            Error::InvalidParameter { name, reason } => schema(&at(&at(&params, "generator"), &name), reason),
            other => other,
        }),
        _ => Err(schema(&params, "exactly one of `alpha` and `generator` is required")),
    }
}

pub fn parse_stdf(value: &Value) -> Result<StdfModel> {
    parse_stdf_at(value, "")
}

fn parse_stdf_at(value: &Value, path: &str) -> Result<StdfModel> {
    let env = envelope(value, path)?;
    let model = match env.family {
        "independence" => {
            env.params::<NoParams>()?;
            StdfModel::independence(env.required_dimension()?)
        }
        "comonotone" => {
            env.params::<NoParams>()?;
            StdfModel::comonotone(env.required_dimension()?)
        }
        "logistic" => {
            let p: LogisticParams = env.params()?;
            StdfModel::logistic(p.s, env.required_dimension()?)
        }
        "marshall_olkin" => {
            let p: MoParams = env.params()?;
            env.check_dimension(p.alpha.len())?;
            StdfModel::marshall_olkin(p.alpha)
        }
        "tawn1" => {
            let p: Tawn1Params = env.params()?;
            env.check_dimension(3)?;
            StdfModel::tawn_type_i(p.s, p.r, [p.theta1, p.theta2, p.theta3])
        }
        "tawn2" => {
            let p: Tawn2Params = env.params()?;
            env.check_dimension(3)?;
            StdfModel::tawn_type_ii(p.s, p.r, p.t, p.phi)
        }
        "mixture" => {
            let p: MixtureParams = env.params()?;
            let params = env.params_path();
            let first = parse_stdf_at(&p.first, &at(&params, "first"))?;
            let second = parse_stdf_at(&p.second, &at(&params, "second"))?;
            env.check_dimension(first.dim())?;
            StdfModel::mixture(p.weight, first, second)
        }
        other => {
            return Err(schema(
                &at(path, "family"),
                format!(
                    "unknown stable tail dependence family `{other}`; expected one of {}",
                    STDF_FAMILIES.join(", ")
                ),
            ))
        }
    };
    model.map_err(|e| env.localize(e))
}

pub fn parse_tail_copula(value: &Value) -> Result<TailCopulaModel> {
    parse_tail_copula_at(value, "")
}

fn parse_tail_copula_at(value: &Value, path: &str) -> Result<TailCopulaModel> {
    let env = envelope(value, path)?;
    if STDF_FAMILIES.contains(&env.family) {
        let stdf = parse_stdf_at(value, path)?;
        return TailCopulaModel::survival_evc(stdf).map_err(|e| env.localize(e));
    }
    let params = env.params_path();
    let model = match env.family {
        "survival_evc" => {
            let p: SurvivalEvcParams = env.params()?;
            let stdf = parse_stdf_at(&p.stdf, &at(&params, "stdf"))?;
            env.check_dimension(stdf.dim())?;
            TailCopulaModel::survival_evc(stdf)
        }
        "archimax" => {
            let p: ArchimaxParams = env.params()?;
            let stdf = parse_stdf_at(&p.stdf, &at(&params, "stdf"))?;
            env.check_dimension(stdf.dim())?;
            let alpha = resolve_alpha(&env, p.alpha, p.generator)?;
            TailCopulaModel::archimax(stdf, alpha)
        }
        "archimedean" => {
            let p: ArchimedeanParams = env.params()?;
            let alpha = resolve_alpha(&env, p.alpha, p.generator)?;
            TailCopulaModel::archimedean(alpha, env.required_dimension()?)
        }
        "nac" => {
            let p: NacParams = env.params()?;
            let tree = NacTree::from_json(&p.tree).map_err(|e| match e {
                Error::Schema { path: inner, message } => {
                    let tree_path = at(&params, "tree");
                    let path = if inner == "<root>" { tree_path } else { at(&tree_path, &inner) };
                    schema(&path, message)
                }
                other => schema(&at(&params, "tree"), other.to_string()),
            })?;
            env.check_dimension(tree.dim())?;
            Ok(TailCopulaModel::nac(tree))
        }
        "mixture_tc" => {
            let p: MixtureParams = env.params()?;
            let first = parse_tail_copula_at(&p.first, &at(&params, "first"))?;
            let second = parse_tail_copula_at(&p.second, &at(&params, "second"))?;
            env.check_dimension(first.dim())?;
            TailCopulaModel::mixture(p.weight, first, second)
        }
        other => {
            return Err(schema(
                &at(path, "family"),
                format!("unknown model family `{other}`"),
            ))
        }
    };
    model.map_err(|e| env.localize(e))
}

pub fn stdf_to_json(model: &StdfModel) -> Value {
    let d = model.dim();
    let (family, params) = match model.kind() {
        StdfKind::Independence { .. } => ("independence", json!({})),
        StdfKind::Comonotone { .. } => ("comonotone", json!({})),
        StdfKind::Logistic { s, .. } => ("logistic", json!({ "s": s })),
        StdfKind::MarshallOlkin { alpha } => ("marshall_olkin", json!({ "alpha": alpha })),
        StdfKind::TawnTypeI { s, r, theta } => (
            "tawn1",
            json!({ "s": s, "r": r, "theta1": theta[0], "theta2": theta[1], "theta3": theta[2] }),
        ),
        StdfKind::TawnTypeII { s, r, t, phi } => ("tawn2", json!({ "s": s, "r": r, "t": t, "phi": phi })),
        StdfKind::Mixture { weight, first, second } => (
            "mixture",
            json!({ "weight": weight, "first": stdf_to_json(first), "second": stdf_to_json(second) }),
        ),
    };
    json!({ "family": family, "dimension": d, "params": params })
}

pub fn tail_copula_to_json(model: &TailCopulaModel) -> Value {
    let d = model.dim();
    let (family, params) = match model.kind() {
        TailCopulaKind::SurvivalEvc(stdf) => ("survival_evc", json!({ "stdf": stdf_to_json(stdf) })),
        TailCopulaKind::Archimax { stdf, alpha } => {
            ("archimax", json!({ "stdf": stdf_to_json(stdf), "alpha": alpha }))
        }
        TailCopulaKind::Archimedean { alpha, .. } => ("archimedean", json!({ "alpha": alpha })),
        TailCopulaKind::Nac(tree) => ("nac", json!({ "tree": tree.to_json() })),
        TailCopulaKind::Mixture { weight, first, second } => (
            "mixture_tc",
            json!({
                "weight": weight,
                "first": tail_copula_to_json(first),
                "second": tail_copula_to_json(second),
            }),
        ),
    };
    json!({ "family": family, "dimension": d, "params": params })
}

pub fn read_json_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })?;
    serde_json::from_str(&text).map_err(|e| schema(&path.display().to_string(), e.to_string()))
}

/// Pretty JSON with every float written to 17 significant digits.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Pretty-printing formatter that writes floats as `{:.16e}`.
#[derive(Default)]
struct SignificantDigits {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}
