//! JSON formats for algebras, modules, chains and catalogs.
//!
//! Rationals are strings `"p"` or `"p/q"`; integers are accepted on input.
//! Matrices are arrays of rows.
//!
//! A chain `{"algebra", "n", "branches", "phi"}` lists branches `X_1, …, X_n`
//! and `phi[i]` is the matrix of `φ_{i+1}: X_{i+2} → X_{i+1}`, so it has
//! `dim X_{i+1}` rows and `dim X_{i+2}` columns. Branches are module objects
//! or names such as `"P(1)"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algcore::{path_algebra_with_cap, Algebra, QuiverPresentation, DEFAULT_PATH_CAP};
use crate::cotilt::Catalog;
use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Matrix, Rational};
use crate::modrep::{named_module, Module};
use crate::morcat::MorObject;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Str(String),
    Int(i64),
}

impl Entry {
    fn value(&self) -> Result<Rational> {
        match self {
            Entry::Str(s) => parse_rational(s),
            Entry::Int(n) => Ok(crate::exactla::int(*n)),
        }
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("malformed {what}: {e}")))
}

/// Parses JSON text.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(rational_to_json).collect())).collect())
}

/// Reads a matrix of the given shape. An empty array stands for any matrix
/// with zero rows.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let raw: Vec<Vec<Entry>> = from_value(v, "matrix")?;
    if raw.len() != rows && !(rows == 0 && raw.is_empty()) {
        return Err(Error::input(format!("matrix has {} rows, expected {rows}", raw.len())));
    }
    let parsed =
        raw.iter().map(|r| r.iter().map(Entry::value).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, parsed)
}

fn vector_from_json(v: &[Entry]) -> Result<Vec<Rational>> {
    v.iter().map(Entry::value).collect()
}

#[derive(Serialize, Deserialize)]
struct ArrowWire {
    name: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: Entry,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum AlgebraWire {
    Quiver {
        name: String,
        vertices: Vec<String>,
        arrows: Vec<ArrowWire>,
        #[serde(default)]
        relations: Vec<Vec<TermWire>>,
    },
    StructureConstants {
        name: String,
        dim: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
        /// `mult[i][j]` is the coordinate vector of `b_i b_j`.
        mult: Vec<Vec<Vec<Entry>>>,
        unit: Vec<Entry>,
    },
}

pub fn algebra_from_json(v: &Value) -> Result<Arc<Algebra>> {
    match from_value::<AlgebraWire>(v, "algebra")? {
        AlgebraWire::Quiver { name, vertices, arrows, relations } => {
            let relations = relations
                .into_iter()
                .map(|r| r.into_iter().map(|t| Ok((t.coeff.value()?, t.path))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let q = QuiverPresentation {
                vertices,
                arrows: arrows.into_iter().map(|a| (a.name, a.from, a.to)).collect(),
                relations,
            };
            path_algebra_with_cap(&name, &q, DEFAULT_PATH_CAP)
        }
        AlgebraWire::StructureConstants { name, dim, labels, mult, unit } => {
            if mult.len() != dim {
                return Err(Error::input(format!("mult has {} rows, expected {dim}", mult.len())));
            }
            let mult = mult
                .iter()
                .map(|row| row.iter().map(|v| vector_from_json(v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Algebra::from_structure_constants(&name, labels, mult, vector_from_json(&unit)?)
        }
    }
}

/// Quiver algebras keep their presentation; anything else is written as
/// structure constants.
pub fn algebra_to_json(a: &Algebra) -> Value {
    if let Some(q) = a.quiver() {
        let p = &q.presentation;
        let wire = AlgebraWire::Quiver {
            name: a.name().to_string(),
            vertices: p.vertices.clone(),
            arrows: p
                .arrows
                .iter()
                .map(|(n, s, t)| ArrowWire { name: n.clone(), from: s.clone(), to: t.clone() })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, path)| TermWire { coeff: Entry::Str(format_rational(c)), path: path.clone() })
                        .collect()
                })
                .collect(),
        };
        return serde_json::to_value(wire).expect("algebra serializes");
    }
    let strs = |v: &[Rational]| v.iter().map(|x| Entry::Str(format_rational(x))).collect::<Vec<_>>();
    let mult = (0..a.dim()).map(|i| (0..a.dim()).map(|j| strs(&a.structure_constant(i, j))).collect()).collect();
    let wire = AlgebraWire::StructureConstants {
        name: a.name().to_string(),
        dim: a.dim(),
        labels: Some(a.labels().to_vec()),
        mult,
        unit: strs(a.unit()),
    };
    serde_json::to_value(wire).expect("algebra serializes")
}

fn check_algebra_name(a: &Algebra, v: &Value) -> Result<()> {
    match v.get("algebra").and_then(Value::as_str) {
        Some(name) if name != a.name() => {
            Err(Error::input(format!("object is over {name:?} but the algebra is {:?}", a.name())))
        }
        _ => Ok(()),
    }
}

/// A module given by its action, by a quiver representation, or by name.
pub fn module_from_json(a: &Arc<Algebra>, v: &Value) -> Result<Module> {
    if let Some(name) = v.as_str() {
        return named_module(a, name);
    }
    check_algebra_name(a, v)?;
    if let Some(spaces) = v.get("spaces") {
        let spaces: BTreeMap<String, usize> = from_value(spaces, "spaces")?;
        let q = a.quiver().ok_or_else(|| Error::input("the compact form needs a quiver algebra"))?;
        let mut maps = BTreeMap::new();
        if let Some(obj) = v.get("maps").and_then(Value::as_object) {
            for (arrow, m) in obj {
                let ai = q.arrow_index(arrow).ok_or_else(|| Error::input(format!("unknown arrow {arrow:?}")))?;
                let (_, s, t) = &q.presentation.arrows[ai];
                let dim = |x: &String| spaces.get(x).copied().unwrap_or(0);
                maps.insert(arrow.clone(), matrix_from_json(m, dim(t), dim(s))?);
            }
        }
        return Module::from_representation(a, &spaces, &maps);
    }
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::input("module needs \"dim\", \"spaces\" or a name"))? as usize;
    let action = v.get("action").and_then(Value::as_object).ok_or_else(|| Error::input("module needs \"action\""))?;
    let mut mats = vec![None; a.dim()];
    for (label, m) in action {
        let i = a.label_index(label).ok_or_else(|| Error::input(format!("unknown basis label {label:?}")))?;
        mats[i] = Some(matrix_from_json(m, dim, dim)?);
    }
    let mats = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::input(format!("missing action of {}", a.labels()[i]))))
        .collect::<Result<Vec<_>>>()?;
    Module::new(a, mats)
}

pub fn module_to_json(m: &Module) -> Value {
    let a = m.algebra();
    let action: serde_json::Map<String, Value> =
        a.labels().iter().zip(m.actions()).map(|(l, x)| (l.clone(), matrix_to_json(x))).collect();
    json!({ "algebra": a.name(), "dim": m.dim(), "action": action })
}

pub fn mor_from_json(a: &Arc<Algebra>, v: &Value) -> Result<MorObject> {
    check_algebra_name(a, v)?;
    let branches = v
        .get("branches")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("chain needs \"branches\""))?
        .iter()
        .map(|b| module_from_json(a, b))
        .collect::<Result<Vec<_>>>()?;
    if branches.is_empty() {
        return Err(Error::input("chain has no branches"));
    }
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if n as usize != branches.len() {
            return Err(Error::input(format!("n = {n} but {} branches", branches.len())));
        }
    }
    let empty = Vec::new();
    let phi = v.get("phi").and_then(Value::as_array).unwrap_or(&empty);
    if phi.len() + 1 != branches.len() {
        return Err(Error::input(format!(
            "{} branches need {} connecting maps, got {}",
            branches.len(),
            branches.len() - 1,
            phi.len()
        )));
    }
    let mats = phi
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_json(m, branches[i].dim(), branches[i + 1].dim()))
        .collect::<Result<Vec<_>>>()?;
    MorObject::from_matrices(a, branches, mats)
}

pub fn mor_to_json(x: &MorObject) -> Value {
    json!({
        "algebra": x.algebra().name(),
        "n": x.n(),
        "branches": x.branches().iter().map(module_to_json).collect::<Vec<_>>(),
        "phi": x.phis().iter().map(|f| matrix_to_json(&f.matrix)).collect::<Vec<_>>(),
    })
}

/// Objects are chains when `n` is a number and modules when it is null or
/// absent.
pub fn catalog_from_json(a: &Arc<Algebra>, v: &Value) -> Result<Catalog> {
    check_algebra_name(a, v)?;
    let n = v.get("n").and_then(Value::as_u64).map(|n| n as usize);
    let objs = v.get("objects").and_then(Value::as_array).ok_or_else(|| Error::input("catalog needs \"objects\""))?;
    let names: Vec<String> = match v.get("names") {
        Some(x) => from_value(x, "names")?,
        None => Vec::new(),
    };
    let provenance = v.get("provenance").and_then(Value::as_str).unwrap_or("file");
    let mut c = match n {
        Some(n) => {
            let objects = objs.iter().map(|o| mor_from_json(a, o)).collect::<Result<Vec<_>>>()?;
            if let Some(x) = objects.iter().find(|x| x.n() != n) {
                return Err(Error::input(format!("catalog has n = {n} but an object of length {}", x.n())));
            }
            Catalog::of_chains(a, Some(n), objects, names, provenance)?
        }
        None => {
            let mods = objs.iter().map(|o| module_from_json(a, o)).collect::<Result<Vec<_>>>()?;
            Catalog::of_modules(a, mods, names, provenance)?
        }
    };
    c.claims_complete = v.get("claims_complete").and_then(Value::as_bool).unwrap_or(false);
    Ok(c)
}

/// `projective` lists catalog indices to flag, if any.
pub fn catalog_to_json(c: &Catalog, projective: Option<&[usize]>) -> Value {
    let objects: Vec<Value> = match c.n {
        Some(_) => c.objects.iter().map(mor_to_json).collect(),
        None => c.objects.iter().map(|x| module_to_json(x.branch(1))).collect(),
    };
    let mut v = json!({
        "algebra": c.algebra.name(),
        "n": c.n,
        "names": c.names,
        "objects": objects,
        "claims_complete": c.claims_complete,
        "provenance": c.provenance,
    });
    if let Some(p) = projective {
        v["projective"] = json!(p);
    }
    if let Some(e) = &c.evidence {
        v["evidence"] = serde_json::to_value(e).expect("evidence serializes");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ka2, ka2_mor2_catalog, lambda};
    use crate::modrep::{is_isomorphic, projective};
    use crate::morcat::mor_is_isomorphic;

    #[test]
    fn algebra_round_trip() {
        for a in [ka2(), lambda(2), crate::algcore::triangular_algebra(&ka2(), 2).unwrap()] {
            let v = algebra_to_json(&a);
            let b = algebra_from_json(&v).unwrap();
            assert_eq!(a.fingerprint(), b.fingerprint(), "{}", a.name());
        }
    }

    #[test]
    fn relation_paths_apply_left_to_right() {
        let v = json!({
            "name": "A3/ab", "kind": "quiver", "vertices": ["1", "2", "3"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "3"}],
            "relations": [[{"coeff": "1", "path": ["a", "b"]}]]
        });
        assert_eq!(algebra_from_json(&v).unwrap().dim(), 5);
    }

    #[test]
    fn compact_and_named_modules() {
        let a = ka2();
        let v = json!({"algebra": "kA2", "spaces": {"1": 1, "2": 1}, "maps": {"a": [["1"]]}});
        let m = module_from_json(&a, &v).unwrap();
        assert!(is_isomorphic(&m, &projective(&a, 0), 0).unwrap().isomorphic);
        let p = module_from_json(&a, &json!("P(1)")).unwrap();
        let back = module_from_json(&a, &module_to_json(&p)).unwrap();
        assert_eq!(back.actions(), p.actions());
    }

    #[test]
    fn rejects_bad_input() {
        let a = ka2();
        let bad = json!({"algebra": "kA2", "spaces": {"1": 1, "2": 1}, "maps": {"a": [["1", "2"]]}});
        assert!(matches!(module_from_json(&a, &bad), Err(Error::Input(_))));
        let wrong = json!({"algebra": "lambda2", "dim": 0, "action": {}});
        assert!(module_from_json(&a, &wrong).is_err());
        assert!(matrix_from_json(&json!([["1/0"]]), 1, 1).is_err());
        let chain = json!({"algebra": "kA2", "n": 2, "branches": ["S(2)", "P(1)"], "phi": [[["1", "0"]]]});
        assert!(mor_from_json(&a, &chain).is_err());
    }

    #[test]
    fn catalog_round_trip() {
        let c = ka2_mor2_catalog();
        let v = catalog_to_json(&c, Some(&[0, 1, 2, 5]));
        let d = catalog_from_json(&c.algebra, &v).unwrap();
        assert_eq!(d.names, c.names);
        assert!(d.claims_complete);
        for (x, y) in c.objects.iter().zip(&d.objects) {
            assert!(mor_is_isomorphic(x, y, 0).unwrap().is_some());
        }
        assert_eq!(v["projective"], json!([0, 1, 2, 5]));
    }
}
