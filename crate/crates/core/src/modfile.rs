//! Text formats for modules and extension classes.
//!
//! A module file is a JSON object:
//!
//! ```text
//! {"algebra": {"kind": "exterior", "nvars": 2},
//!  "window": [0, 1],
//!  "dims": {"0": 1, "1": 2},
//!  "action": {"0": {"0": [["1"], ["0"]]}, "1": {"0": [["0"], ["1"]]}}}
//! ```
//!
//! `action[j][d]` is the matrix of `x_j` from degree `d` to `d + 1`, as rows of
//! rationals `"p"` or `"p/q"`. Missing matrices are zero. An extension file
//! holds `{"source": module, "target": module, "cocycle": {j: {d: matrix}}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraKind};
use crate::error::{BggError, Result};
use crate::grmodule::{validate, DegreewiseModule, ExtensionClass};
use crate::qlinalg::{Rat, RatMatrix};

type MatrixText = Vec<Vec<String>>;
type ActionText = BTreeMap<String, BTreeMap<String, MatrixText>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraText {
    kind: AlgebraKind,
    nvars: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleText {
    algebra: AlgebraText,
    window: [i32; 2],
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    action: ActionText,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionText {
    source: ModuleText,
    target: ModuleText,
    #[serde(default)]
    cocycle: ActionText,
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| BggError::Parse(format!("{what}: {s:?} is not an integer")))
}

fn parse_matrix(rows: &MatrixText, shape: (usize, usize), at: &str) -> Result<RatMatrix> {
    if rows.len() != shape.0 {
        return Err(BggError::Parse(format!(
            "{at}: expected {} rows, found {}",
            shape.0,
            rows.len()
        )));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != shape.1 {
            return Err(BggError::Parse(format!(
                "{at}: row {r} has {} entries, expected {}",
                row.len(),
                shape.1
            )));
        }
        let parsed: Vec<Rat> = row
            .iter()
            .map(|x| x.parse::<Rat>().map_err(|e| BggError::Parse(format!("{at}: row {r}: {e}"))))
            .collect::<Result<_>>()?;
        out.push(parsed);
    }
    RatMatrix::from_rows_shaped(shape.0, shape.1, out)
}

fn matrix_text(m: &RatMatrix) -> MatrixText {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

fn parse_action(
    text: &ActionText,
    nvars: usize,
    shape: impl Fn(i32) -> (usize, usize),
    field: &str,
) -> Result<BTreeMap<(usize, i32), RatMatrix>> {
    let mut out = BTreeMap::new();
    for (js, per_degree) in text {
        let j: usize = parse_int(js, &format!("{field} variable"))?;
        if j >= nvars {
            return Err(BggError::Parse(format!("{field}: variable {j} out of range (nvars {nvars})")));
        }
        for (ds, rows) in per_degree {
            let d: i32 = parse_int(ds, &format!("{field}.{j} degree"))?;
            let m = parse_matrix(rows, shape(d), &format!("{field}.{j}.{d}"))?;
            if !m.is_zero() {
                out.insert((j, d), m);
            }
        }
    }
    Ok(out)
}

fn module_from_text(t: &ModuleText) -> Result<DegreewiseModule> {
    let algebra = Algebra::new(t.algebra.kind, t.algebra.nvars)?;
    let (lo, hi) = (t.window[0], t.window[1]);
    let mut dims = BTreeMap::new();
    for (ds, n) in &t.dims {
        let d: i32 = parse_int(ds, "dims degree")?;
        if *n > 0 && (d < lo || d > hi) {
            return Err(BggError::Parse(format!("dims: degree {d} lies outside the window [{lo}, {hi}]")));
        }
        dims.insert(d, *n);
    }
    let dim = |d: i32| dims.get(&d).copied().unwrap_or(0);
    let action = parse_action(&t.action, algebra.nvars(), |d| (dim(d + 1), dim(d)), "action")?;
    if let Some(((j, d), _)) = action.iter().find(|((_, d), _)| *d < lo || *d >= hi) {
        return Err(BggError::Parse(format!("action.{j}.{d}: degree outside the window")));
    }
    DegreewiseModule::from_parts(algebra, (lo, hi), &dims, action)
}

fn module_to_text(m: &DegreewiseModule) -> ModuleText {
    let mut action: ActionText = BTreeMap::new();
    for ((j, d), a) in m.action_map() {
        if !a.is_zero() {
            action.entry(j.to_string()).or_default().insert(d.to_string(), matrix_text(&a));
        }
    }
    ModuleText {
        algebra: AlgebraText {
            kind: m.kind(),
            nvars: m.nvars(),
        },
        window: [m.lo(), m.hi()],
        dims: m.dims().into_iter().map(|(d, n)| (d.to_string(), n)).collect(),
        action,
    }
}

fn json_error(e: serde_json::Error) -> BggError {
    BggError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses a module file without checking the algebra relations.
pub fn parse_module_unchecked(text: &str) -> Result<DegreewiseModule> {
    let t: ModuleText = serde_json::from_str(text).map_err(json_error)?;
    module_from_text(&t)
}

/// Parses a module file and checks the algebra relations.
pub fn parse_module(text: &str) -> Result<DegreewiseModule> {
    let m = parse_module_unchecked(text)?;
    validate(&m).map_err(BggError::Violation)?;
    Ok(m)
}

pub fn export_module(m: &DegreewiseModule) -> String {
    serde_json::to_string_pretty(&module_to_text(m)).expect("module text serializes")
}

/// An extension class with its end modules.
#[derive(Clone, Debug)]
pub struct ExtensionFile {
    pub source: DegreewiseModule,
    pub target: DegreewiseModule,
    pub class: ExtensionClass,
}

pub fn parse_extension(text: &str) -> Result<ExtensionFile> {
    let t: ExtensionText = serde_json::from_str(text).map_err(json_error)?;
    let source = module_from_text(&t.source)?;
    validate(&source).map_err(BggError::Violation)?;
    let target = module_from_text(&t.target)?;
    validate(&target).map_err(BggError::Violation)?;
    let cocycle = parse_action(
        &t.cocycle,
        source.nvars(),
        |d| (target.dim(d + 1), source.dim(d)),
        "cocycle",
    )?;
    let class = ExtensionClass::from_cocycle(cocycle);
    if !class.is_cocycle(&source, &target) {
        return Err(BggError::Parse("cocycle: the class fails the cocycle condition".into()));
    }
    Ok(ExtensionFile { source, target, class })
}

pub fn export_extension(source: &DegreewiseModule, target: &DegreewiseModule, class: &ExtensionClass) -> String {
    let mut cocycle: ActionText = BTreeMap::new();
    for ((j, d), a) in class.cocycle() {
        if !a.is_zero() {
            cocycle.entry(j.to_string()).or_default().insert(d.to_string(), matrix_text(a));
        }
    }
    let t = ExtensionText {
        source: module_to_text(source),
        target: module_to_text(target),
        cocycle,
    };
    serde_json::to_string_pretty(&t).expect("extension text serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;
    use crate::grmodule::{ext1_0, Violation};

    #[test]
    fn round_trip_corpus() {
        for name in ["simple:1", "free", "radical:2", "twistmod:2", "nonsheaf-pair", "loewy2-rigid"] {
            let m = builtin(name, 3).unwrap().module;
            let text = export_module(&m);
            let back = parse_module(&text).unwrap();
            assert_eq!(back.window(), m.window(), "{name}");
            assert_eq!(back.dims(), m.dims());
            assert_eq!(back.action_map(), m.action_map());
            assert_eq!(export_module(&back), text);
        }
    }

    #[test]
    fn fractions_and_symmetric_windows() {
        let text = r#"{"algebra":{"kind":"symmetric","nvars":2},"window":[0,3],
            "dims":{"0":1,"1":1},"action":{"0":{"0":[["-3/4"]]},"1":{"0":[["2"]]}}}"#;
        let m = parse_module(text).unwrap();
        assert_eq!(m.window(), (0, 3));
        assert_eq!(m.act(0, 0).get(0, 0), &Rat::new(-3, 4));
        assert_eq!(parse_module(&export_module(&m)).unwrap().action_map(), m.action_map());
    }

    #[test]
    fn malformed_inputs() {
        let broken = r#"{"algebra":{"kind":"exterior","nvars":2},"window":[0,2],
            "dims":{"0":1,"1":1,"2":1},"action":{"0":{"0":[["1"]],"1":[["1"]]}}}"#;
        match parse_module(broken) {
            Err(BggError::Violation(v)) => assert_eq!(
                v,
                Violation {
                    relation: "square-zero",
                    vars: (0, 0),
                    degree: 0
                }
            ),
            other => panic!("expected a violation, got {other:?}"),
        }
        let shape = r#"{"algebra":{"kind":"exterior","nvars":2},"window":[0,1],
            "dims":{"0":1,"1":1},"action":{"0":{"0":[["1","2"]]}}}"#;
        let err = parse_module(shape).unwrap_err().to_string();
        assert!(err.contains("action.0.0"), "{err}");
        assert!(parse_module("{").is_err());
        let kind = r#"{"algebra":{"kind":"weyl","nvars":2},"window":[0,0],"dims":{"0":1}}"#;
        assert!(parse_module(kind).is_err());
    }

    #[test]
    fn extension_round_trip() {
        let q = crate::koszul::koszul_dual(&builtin("exterior-quotient:1", 2).unwrap().module, 3)
            .unwrap()
            .dual;
        let ext = ext1_0(&q, &q).unwrap();
        let class = &ext.classes()[0];
        let text = export_extension(&q, &q, class);
        let back = parse_extension(&text).unwrap();
        assert_eq!(back.class.cocycle(), class.cocycle());
        assert!(!ext.is_trivial(&back.class));
    }
}
