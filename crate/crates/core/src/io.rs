//! Exact JSON and float CSV encodings of [`PointSet`].

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Meta, Point, PointSet};
use crate::rational;

#[derive(Serialize, Deserialize)]
struct PointSetRepr {
    dim: usize,
    points: Vec<Point>,
    #[serde(default)]
    meta: Meta,
}

pub fn to_json(set: &PointSet) -> String {
    let repr = PointSetRepr {
        dim: set.dim(),
        points: set.points().to_vec(),
        meta: set.meta.clone(),
    };
    serde_json::to_string_pretty(&repr).expect("point sets always serialize")
}

pub fn from_json(text: &str) -> Result<PointSet> {
    let repr: PointSetRepr = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    PointSet::new(repr.dim, repr.points, repr.meta)
}

/// One row per point, header `x0,x1,...`, 17 significant digits.
pub fn write_csv<W: Write>(set: &PointSet, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = (0..set.dim()).map(|i| format!("x{i}")).collect();
    w.write_record(&header).map_err(csv_err)?;
    for p in set.points() {
        w.write_record(p.to_f64().iter().map(|v| format!("{v:.16e}")))
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads float rows. Each data row must have as many fields as the header.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let width = r.headers().map_err(csv_err)?.len();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != width {
            return Err(Error::Parse {
                line,
                column: 0,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| match field.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse {
                    line,
                    column: col + 1,
                    message: format!("not a finite number: {field:?}"),
                }),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Builds a point set from float rows. With `max_den`, coordinates are
/// rationalized; otherwise each float is taken at its exact binary value.
pub fn point_set_from_floats(
    rows: &[Vec<f64>],
    max_den: Option<u64>,
    meta: Meta,
) -> Result<PointSet> {
    let dim = rows.first().map_or(0, Vec::len);
    let points = rows
        .iter()
        .map(|row| {
            let coords = match max_den {
                Some(d) => rational::rationalize(row, d)?,
                None => row
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| rational::from_f64_exact(v).ok_or(Error::NonFinite(i)))
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(Point::new(coords))
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(dim, points, meta)
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse {
            line,
            column: 0,
            message: format!("{kind:?}"),
        },
    }
}
