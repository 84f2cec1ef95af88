//! JSON input/output and OFF export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{HullResult, Side};
use crate::matrix::MatrixK;
use crate::scalar::{parse_scalar, FieldContext};

/// Input document: a field and a list of matrices with scalar strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub field: FieldContext,
    pub matrices: Vec<Vec<Vec<String>>>,
}

/// Parse an input document into its field and matrices.
pub fn parse_input(text: &str) -> Result<(FieldContext, Vec<MatrixK>)> {
    let doc: InputDoc = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("input JSON: {e}")))?;
    let ctx = doc.field.validate()?;
    let matrices = doc
        .matrices
        .iter()
        .enumerate()
        .map(|(k, rows)| parse_matrix(rows, ctx).map_err(|e| annotate(e, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, matrices))
}

fn annotate(e: Error, k: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("matrix {k}: {msg}") },
        Error::Dimension(msg) => Error::Dimension(format!("matrix {k}: {msg}")),
        other => other,
    }
}

pub fn parse_matrix(rows: &[Vec<String>], ctx: FieldContext) -> Result<MatrixK> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MatrixK::from_rows(ctx, parsed)
}

pub fn matrix_strings(m: &MatrixK) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

/// Serializable form of a [`HullResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub field: FieldContext,
    /// Membrane matrix by rows.
    pub membrane: Vec<Vec<String>>,
    pub provenance: Vec<usize>,
    /// `s × n` image matrix by rows.
    pub image: Vec<Vec<i64>>,
    /// `"columns"` or `"rows"`.
    pub side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<Vec<String>>>>,
}

impl HullReport {
    pub fn new(result: &HullResult) -> Self {
        let complex = result.complex.as_ref();
        HullReport {
            field: result.membrane.matrix.context(),
            membrane: matrix_strings(&result.membrane.matrix),
            provenance: result.membrane.provenance.clone(),
            image: result.image.clone(),
            side: match result.side {
                Side::Rows => "rows".into(),
                _ => "columns".into(),
            },
            points: complex.map(|c| c.points.clone()),
            simplices: complex.map(|c| c.simplices.clone()),
            f_vector: complex.map(|c| c.f_vector()),
            representatives: result.representatives.as_ref().map(|reps| reps.iter().map(matrix_strings).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("report JSON: {e}")))
    }
}

/// OFF document with the hull points (chart `x_1 = 0`, first coordinate
/// dropped), its edges as 2-gons and its triangles.
pub fn to_off(result: &HullResult) -> Result<String> {
    let complex = result.complex.as_ref().ok_or_else(|| Error::Invalid("no complex computed".into()))?;
    let dim = complex.points.first().map_or(0, |p| p.len().saturating_sub(1));
    if dim > 3 {
        return Err(Error::OffDimension(dim));
    }
    let faces: Vec<&Vec<usize>> = complex.simplices.iter().skip(1).take(2).flatten().collect();
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", complex.points.len(), faces.len()).expect("write to string");
    for p in &complex.points {
        let mut coords: Vec<i64> = p.iter().skip(1).copied().collect();
        coords.resize(3, 0);
        writeln!(out, "{} {} {}", coords[0], coords[1], coords[2]).expect("write to string");
    }
    for f in faces {
        let idx: Vec<String> = f.iter().map(ToString::to_string).collect();
        writeln!(out, "{} {}", f.len(), idx.join(" ")).expect("write to string");
    }
    Ok(out)
}
