//! JSON interchange. Rationals travel as strings such as `"-3/4"`.

use std::path::Path;

use quatnil::classify::{Classification, Decision, Obstruction};
use quatnil::decompose::TwoNilpotentDecomposition;
use quatnil::{Algebra, QMatrix, Quaternion, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] quatnil::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub algebra: AlgebraJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[String; 4]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(rename = "N1")]
    pub n1: MatrixJson,
    #[serde(rename = "N2")]
    pub n2: MatrixJson,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<MatrixJson>,
    #[serde(rename = "Pinv", default, skip_serializing_if = "Option::is_none")]
    pub p_inv: Option<MatrixJson>,
    #[serde(rename = "diagZero", default, skip_serializing_if = "Option::is_none")]
    pub diag_zero: Option<MatrixJson>,
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| IoError::Parse(format!("not a rational: {s:?} ({e})")))
}

/// `"a,b"` as on the command line.
pub fn parse_algebra_flag(s: &str) -> Result<Algebra, IoError> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(IoError::Parse(format!("algebra must be \"a,b\", got {s:?}")));
    };
    Ok(Algebra::new(parse_rational(a)?, parse_rational(b)?)?)
}

pub fn algebra_to_json(alg: &Algebra) -> AlgebraJson {
    AlgebraJson {
        a: alg.a().to_string(),
        b: alg.b().to_string(),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Algebra, IoError> {
    Ok(Algebra::new(parse_rational(&j.a)?, parse_rational(&j.b)?)?)
}

pub fn quaternion_to_json(q: &Quaternion) -> [String; 4] {
    q.coords().clone().map(|c| c.to_string())
}

pub fn quaternion_from_json(alg: &Algebra, q: &[String; 4]) -> Result<Quaternion, IoError> {
    Ok(alg.quaternion([
        parse_rational(&q[0])?,
        parse_rational(&q[1])?,
        parse_rational(&q[2])?,
        parse_rational(&q[3])?,
    ]))
}

pub fn matrix_to_json(m: &QMatrix) -> MatrixJson {
    MatrixJson {
        algebra: algebra_to_json(m.algebra()),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| m.row(i).iter().map(quaternion_to_json).collect())
            .collect(),
    }
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<QMatrix, IoError> {
    let alg = algebra_from_json(&j.algebra)?;
    matrix_from_json_in(&alg, j)
}

fn matrix_from_json_in(alg: &Algebra, j: &MatrixJson) -> Result<QMatrix, IoError> {
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(IoError::Parse(format!(
            "entries do not match the declared shape {}x{}",
            j.rows, j.cols
        )));
    }
    let rows = j
        .entries
        .iter()
        .map(|r| r.iter().map(|q| quaternion_from_json(alg, q)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    QMatrix::from_rows(alg, rows).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn decomposition_to_json(d: &TwoNilpotentDecomposition) -> DecompositionJson {
    DecompositionJson {
        n1: matrix_to_json(&d.n1),
        n2: matrix_to_json(&d.n2),
        p: d.witness.as_ref().map(|w| matrix_to_json(&w.p)),
        p_inv: d.witness.as_ref().map(|w| matrix_to_json(&w.p_inv)),
        diag_zero: d.diag_zero_form.as_ref().map(matrix_to_json),
    }
}

/// Parses the summands; the witness is carried along when complete.
pub fn decomposition_from_json(j: &DecompositionJson) -> Result<TwoNilpotentDecomposition, IoError> {
    let n1 = matrix_from_json(&j.n1)?;
    let alg = n1.algebra().clone();
    let n2 = matrix_from_json_in(&alg, &j.n2)?;
    let opt = |m: &Option<MatrixJson>| m.as_ref().map(|m| matrix_from_json_in(&alg, m)).transpose();
    let (p, p_inv, diag_zero) = (opt(&j.p)?, opt(&j.p_inv)?, opt(&j.diag_zero)?);
    let witness = match (p, p_inv) {
        (Some(p), Some(p_inv)) => Some(quatnil::SimilarityWitness { p, p_inv }),
        (None, None) => None,
        _ => return Err(IoError::Parse("P and Pinv must appear together".into())),
    };
    Ok(TwoNilpotentDecomposition {
        n1,
        n2,
        witness,
        diag_zero_form: diag_zero,
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_matrix(path: &Path) -> Result<QMatrix, IoError> {
    matrix_from_json(&read_json(path)?)
}

fn obstruction_json(o: &Obstruction) -> Value {
    match o {
        Obstruction::ReducedTrace(t) => json!({"kind": "reducedTrace", "value": t.to_string()}),
        Obstruction::Scalar(l) => json!({"kind": "scalar", "lambda": l.to_string()}),
        Obstruction::TypeII(d) => json!({
            "kind": "typeII",
            "lambda": d.lambda.to_string(),
            "column": d.column.0.iter().map(quaternion_to_json).collect::<Vec<_>>(),
            "row": d.row.iter().map(quaternion_to_json).collect::<Vec<_>>(),
            "supertrace": d.supertrace.to_string(),
        }),
        Obstruction::TypeIII(c) => json!({
            "kind": "typeIII",
            "eigenvalue": quaternion_to_json(&c.eigenvalue),
            "P": matrix_to_json(&c.witness.p),
            "Pinv": matrix_to_json(&c.witness.p_inv),
        }),
        Obstruction::SquareNotUnispectral => json!({"kind": "squareNotUnispectral"}),
        Obstruction::Eigenvalue(c) => json!({
            "kind": "eigenvalue",
            "eigenvalue": quaternion_to_json(&c.eigenvalue),
        }),
        Obstruction::Entry(q) => json!({"kind": "entry", "value": quaternion_to_json(q)}),
    }
}

pub fn decision_json(d: &Decision) -> Value {
    let mut v = json!({
        "verdict": d.classification.verdict().to_string(),
        "decision": if d.answer { "YES" } else { "NO" },
        "reason": d.reason.to_string(),
    });
    if let Classification::TypeII(t) = &d.classification {
        v["supertrace"] = json!(t.supertrace.to_string());
    }
    if let Some(o) = &d.obstruction {
        v["obstruction"] = obstruction_json(o);
    }
    v
}

/// One-line summary such as `TypeII, supertrace=[t=0,N=1] rep=i, decision=NO`.
pub fn decision_line(d: &Decision) -> String {
    let mut parts = vec![d.classification.verdict().to_string()];
    if let Classification::TypeII(t) = &d.classification {
        parts.push(format!("supertrace={}", t.supertrace));
    }
    parts.push(format!("decision={}", if d.answer { "YES" } else { "NO" }));
    if !d.answer {
        parts.push(format!("reason={}", d.reason));
    }
    parts.join(", ")
}
