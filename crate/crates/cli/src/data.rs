use std::fs::File;
use std::path::Path;

use nalgebra::DMatrix;

use crate::failure::Failure;

/// Response and design read from `Y,x1,...,xp`.
pub struct Table {
    pub y: Vec<f64>,
    pub x: DMatrix<f64>,
    pub predictors: Vec<String>,
}

pub fn read_table(path: &Path) -> Result<Table, Failure> {
    let file = File::open(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?
        .clone();
    if headers.is_empty() || !headers[0].eq_ignore_ascii_case("y") {
        return Err(Failure::input(format!(
            "{}: first column must be named Y",
            path.display()
        )));
    }
    let predictors: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let p = predictors.len();
    let mut y = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        if record.len() != p + 1 {
            return Err(Failure::input(format!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                line + 2,
                record.len(),
                p + 1
            )));
        }
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                Failure::input(format!("{}: row {} has non-numeric value '{field}'", path.display(), line + 2))
            })?;
            if col == 0 {
                y.push(v);
            } else {
                values.push(v);
            }
        }
    }
    let n = y.len();
    Ok(Table {
        y,
        x: DMatrix::from_row_slice(n, p, &values),
        predictors,
    })
}
