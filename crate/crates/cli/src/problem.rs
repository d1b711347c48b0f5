use std::fmt;
use std::str::FromStr;

use glr_core::horn::{SubsetTuple, Variant};
use glr_core::{IntSequence, Subset};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self.code {
            "oracle_disagreement" => 2,
            "budget_exceeded" => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<glr_core::Error> for CliError {
    fn from(e: glr_core::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lr,
    FSun,
    F1,
    F2,
    Positivity,
    Cone,
    HornGen,
    Stretch,
    Facets26,
    Factorize,
    Selftest,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Lr => "lr",
            Kind::FSun => "f_sun",
            Kind::F1 => "f1",
            Kind::F2 => "f2",
            Kind::Positivity => "positivity",
            Kind::Cone => "cone",
            Kind::HornGen => "horn_gen",
            Kind::Stretch => "stretch",
            Kind::Facets26 => "facets26",
            Kind::Factorize => "factorize",
            Kind::Selftest => "selftest",
        }
    }

    fn accepts(self, name: &str) -> bool {
        let name = name.replace('-', "_");
        name == self.name() || (self == Kind::FSun && name == "f")
    }

    fn needs_lambdas(self) -> bool {
        !matches!(self, Kind::HornGen | Kind::Facets26 | Kind::Selftest)
    }

    fn check_m(self, m: usize) -> Result<(), CliError> {
        let (ok, need) = match self {
            Kind::Lr => (m == 3, "exactly 3 sequences (lambda, mu, nu)"),
            Kind::F1 => (m >= 4, "m >= 4"),
            Kind::F2 => (m >= 3, "m >= 3"),
            Kind::Facets26 | Kind::Selftest => (true, ""),
            _ => (m >= 4 && m.is_multiple_of(2), "an even m >= 4"),
        };
        if ok {
            Ok(())
        } else {
            Err(CliError::new("unsupported_shape", format!("{} needs {need}, got m = {m}", self.name())))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    kind: Option<String>,
    n: Option<usize>,
    m: Option<usize>,
    lambdas: Option<Vec<Vec<Value>>>,
    #[serde(rename = "N_max")]
    n_max: Option<u32>,
    r_max: Option<u32>,
    variant: Option<String>,
    subsets: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    pub lambdas: Vec<Vec<BigRational>>,
    pub n_max: Option<u32>,
    pub r_max: Option<u32>,
    pub variant: Option<Variant>,
    pub subsets: Option<SubsetTuple>,
}

pub fn parse_variant(s: &str) -> Result<Variant, CliError> {
    match s {
        "one" | "equal_one" => Ok(Variant::EqualOne),
        "nonzero" => Ok(Variant::Nonzero),
        other => {
            Err(CliError::new("invalid_variant", format!("variant must be \"one\" or \"nonzero\", got {other:?}")))
        }
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::EqualOne => "one",
        Variant::Nonzero => "nonzero",
    }
}

fn entry(i: usize, v: &Value) -> Result<BigRational, CliError> {
    let bad =
        || CliError::new("invalid_number", format!("lambda({i}) entry {v} is not an integer or a \"p/q\" string"));
    match v {
        Value::Number(x) => x.as_i64().map(|k| BigRational::from_integer(k.into())).ok_or_else(bad),
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Reads and validates a problem document for the given subcommand.
pub fn parse_problem(text: &str, expected: Kind) -> Result<ProblemFile, CliError> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| CliError::new("malformed_json", e.to_string()))?;
    if let Some(k) = &raw.kind {
        if !expected.accepts(k) {
            return Err(CliError::new(
                "kind_mismatch",
                format!("file has kind {k:?} but the subcommand expects {:?}", expected.name()),
            ));
        }
    }
    let mut lambdas = Vec::new();
    if let Some(ls) = &raw.lambdas {
        for (idx, l) in ls.iter().enumerate() {
            let seq = l.iter().map(|v| entry(idx + 1, v)).collect::<Result<Vec<_>, _>>()?;
            if let Some(w) = seq.windows(2).find(|w| w[0] < w[1]) {
                return Err(CliError::new(
                    "not_weakly_decreasing",
                    format!("lambda({}) = {} is not weakly decreasing ({} < {})", idx + 1, show(&seq), w[0], w[1]),
                ));
            }
            lambdas.push(seq);
        }
    } else if expected.needs_lambdas() {
        return Err(CliError::new("missing_field", format!("{} needs a \"lambdas\" field", expected.name())));
    }
    let m = match (raw.m, raw.lambdas.is_some()) {
        (Some(m), true) if m != lambdas.len() => {
            return Err(CliError::new("shape_mismatch", format!("m = {m} but {} sequences were given", lambdas.len())))
        }
        (Some(m), _) => m,
        (None, true) => lambdas.len(),
        (None, false) if expected == Kind::HornGen => {
            return Err(CliError::new("missing_field", "horn_gen needs \"n\" and \"m\""))
        }
        (None, false) => 0,
    };
    expected.check_m(m)?;
    let n = match raw.n {
        Some(0) => return Err(CliError::new("invalid_input", "n must be positive")),
        Some(n) => n,
        None if expected == Kind::HornGen => {
            return Err(CliError::new("missing_field", "horn_gen needs \"n\" and \"m\""))
        }
        None => lambdas.iter().map(|l| trimmed(l).len()).max().unwrap_or(0).max(1),
    };
    for (idx, l) in lambdas.iter_mut().enumerate() {
        let len = trimmed(l).len();
        if len > n {
            return Err(CliError::new(
                "too_many_parts",
                format!(
                    "lambda({}) = {} has more than n = {n} entries after dropping trailing zeros",
                    idx + 1,
                    show(l)
                ),
            ));
        }
        l.truncate(len);
    }
    if expected != Kind::Cone {
        for (idx, l) in lambdas.iter().enumerate() {
            if let Some(x) = l.iter().find(|x| !x.is_integer()) {
                return Err(CliError::new(
                    "not_integer",
                    format!("lambda({}) has non-integer entry {x}; only cone accepts rationals", idx + 1),
                ));
            }
        }
    }
    let variant = raw.variant.as_deref().map(parse_variant).transpose()?;
    let subsets = match raw.subsets {
        None => None,
        Some(ss) => {
            let ss = ss.into_iter().map(Subset::new).collect::<Result<Vec<_>, _>>()?;
            Some(SubsetTuple::new(n, ss)?)
        }
    };
    if raw.n_max == Some(0) || raw.r_max == Some(0) {
        return Err(CliError::new("invalid_input", "N_max and r_max must be positive"));
    }
    Ok(ProblemFile { kind: expected, n, m, lambdas, n_max: raw.n_max, r_max: raw.r_max, variant, subsets })
}

fn trimmed(l: &[BigRational]) -> &[BigRational] {
    let end = l.iter().rposition(|x| !x.is_zero()).map_or(0, |k| k + 1);
    &l[..end]
}

fn show(l: &[BigRational]) -> String {
    let parts: Vec<String> = l.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn rational_json(x: &BigRational) -> Value {
    if x.denom().is_one() {
        if let Ok(k) = i64::try_from(x.numer()) {
            return json!(k);
        }
    }
    json!(x.to_string())
}

impl ProblemFile {
    pub fn sequences(&self) -> Result<Vec<IntSequence>, CliError> {
        self.lambdas
            .iter()
            .map(|l| {
                let parts = l.iter().map(|x| {
                    i64::try_from(x.numer()).map_err(|_| CliError::new("invalid_number", "entry out of range"))
                });
                Ok(IntSequence::new(parts.collect::<Result<_, _>>()?)?)
            })
            .collect()
    }

    /// The input after trailing-zero normalization, as echoed in reports.
    pub fn canonical(&self) -> Value {
        let mut out = Map::new();
        out.insert("kind".into(), json!(self.kind.name()));
        if self.kind.needs_lambdas() || self.kind == Kind::HornGen {
            out.insert("n".into(), json!(self.n));
            out.insert("m".into(), json!(self.m));
        }
        if self.kind.needs_lambdas() {
            let ls: Vec<Value> =
                self.lambdas.iter().map(|l| Value::Array(l.iter().map(rational_json).collect())).collect();
            out.insert("lambdas".into(), Value::Array(ls));
        }
        if let Some(v) = self.n_max {
            out.insert("N_max".into(), json!(v));
        }
        if let Some(v) = self.r_max {
            out.insert("r_max".into(), json!(v));
        }
        if let Some(v) = self.variant {
            out.insert("variant".into(), json!(variant_name(v)));
        }
        if let Some(t) = &self.subsets {
            out.insert("subsets".into(), subsets_json(t));
        }
        Value::Object(out)
    }
}

pub fn subsets_json(t: &SubsetTuple) -> Value {
    Value::Array(t.subsets().iter().map(|s| json!(s.elements())).collect())
}

/// A problem with no input fields, for subcommands that take none.
pub fn bare(kind: Kind) -> ProblemFile {
    ProblemFile { kind, n: 0, m: 0, lambdas: Vec::new(), n_max: None, r_max: None, variant: None, subsets: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_problem() {
        let p = parse_problem(
            r#"{"kind":"f_sun","n":2,"m":6,"lambdas":[[1,0],[1,0],[1,0],[1,0],[1,0],[1,0]]}"#,
            Kind::FSun,
        )
        .unwrap();
        assert_eq!((p.n, p.m), (2, 6));
        assert_eq!(p.canonical()["lambdas"][0], json!([1]));
    }

    #[test]
    fn rejects_bad_input() {
        let err = |text: &str, k: Kind| parse_problem(text, k).unwrap_err().code;
        assert_eq!(err(r#"{"lambdas":[[0,1],[1],[1],[1]]}"#, Kind::FSun), "not_weakly_decreasing");
        assert_eq!(err(r#"{"kind":"f_sun","lambdas":[[1],[1],[1],[1],[1]]}"#, Kind::FSun), "unsupported_shape");
        assert_eq!(err("{", Kind::FSun), "malformed_json");
        assert_eq!(err(r#"{"kind":"lr","lambdas":[[1],[1],[2]]}"#, Kind::FSun), "kind_mismatch");
        assert_eq!(err(r#"{"lambdas":[[1],[1],[1],[1]],"extra":1}"#, Kind::FSun), "malformed_json");
        assert_eq!(err(r#"{"n":1,"lambdas":[[1,1],[1],[1],[1]]}"#, Kind::FSun), "too_many_parts");
        assert_eq!(err(r#"{"lambdas":[["1/2"],[1],[1],[1]]}"#, Kind::FSun), "not_integer");
        assert_eq!(err(r#"{"lambdas":[[1.5],[1],[1],[1]]}"#, Kind::Cone), "invalid_number");
        assert_eq!(err(r#"{"n":2}"#, Kind::HornGen), "missing_field");
        assert_eq!(err(r#"{"m":5,"lambdas":[[1],[1],[1],[1]]}"#, Kind::FSun), "shape_mismatch");
    }

    #[test]
    fn error_message_names_sequence() {
        let e = parse_problem(r#"{"lambdas":[[1],[0,1],[1],[1]]}"#, Kind::FSun).unwrap_err();
        assert!(e.message.contains("lambda(2)"), "{}", e.message);
    }

    #[test]
    fn rationals_for_cone() {
        let p = parse_problem(r#"{"n":2,"lambdas":[["3/2","1/2"],[1,1],[1],[1,0]]}"#, Kind::Cone).unwrap();
        assert_eq!(p.canonical()["lambdas"][0], json!(["3/2", "1/2"]));
        assert_eq!(p.canonical()["lambdas"][3], json!([1]));
    }
}
