//! A TSPLIB subset: EUC_2D with a NODE_COORD_SECTION (distances rounded to
//! the nearest integer, per the TSPLIB convention) and EXPLICIT FULL_MATRIX.

use crate::error::{Error, Result};
use crate::formulations::TspInstance;

use super::{ParseMode, Parsed};

pub fn parse_tsplib(text: &str, _mode: ParseMode) -> Result<Parsed<TspInstance>> {
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut section: Option<&str> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        match section {
            Some("coords") => {
                let mut tokens = line.split_whitespace();
                let _index: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "expected node index"))?;
                let x: f64 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "malformed x coordinate"))?;
                let y: f64 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "malformed y coordinate"))?;
                if tokens.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after coordinates"));
                }
                coords.push((x, y));
            }
            Some("weights") => {
                for token in line.split_whitespace() {
                    let w: f64 = token.parse().map_err(|_| {
                        Error::parse(lineno, format!("malformed weight '{token}'"))
                    })?;
                    weights.push(w);
                }
            }
            _ => {
                let (key, value) = match line.split_once(':') {
                    Some((k, v)) => (k.trim(), v.trim()),
                    None => (line, ""),
                };
                match key {
                    "DIMENSION" => {
                        dimension = Some(value.parse().map_err(|_| {
                            Error::parse(lineno, "invalid DIMENSION")
                        })?);
                    }
                    "EDGE_WEIGHT_TYPE" => weight_type = Some(value.to_string()),
                    "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_string()),
                    "NODE_COORD_SECTION" => section = Some("coords"),
                    "EDGE_WEIGHT_SECTION" => section = Some("weights"),
                    "NAME" | "COMMENT" | "TYPE" | "DISPLAY_DATA_TYPE" => {}
                    other => {
                        return Err(Error::parse(
                            lineno,
                            format!("unsupported keyword '{other}'"),
                        ))
                    }
                }
            }
        }
    }

    let n = dimension.ok_or_else(|| Error::parse(0, "missing DIMENSION"))?;
    let wt = weight_type.ok_or_else(|| Error::parse(0, "missing EDGE_WEIGHT_TYPE"))?;
    let cost = match wt.as_str() {
        "EUC_2D" => {
            if coords.len() != n {
                return Err(Error::parse(
                    0,
                    format!("DIMENSION {n} but {} coordinates", coords.len()),
                ));
            }
            let mut cost = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let dx = coords[i].0 - coords[j].0;
                        let dy = coords[i].1 - coords[j].1;
                        cost[i][j] = (dx * dx + dy * dy).sqrt().round();
                    }
                }
            }
            cost
        }
        "EXPLICIT" => {
            match weight_format.as_deref() {
                Some("FULL_MATRIX") => {}
                other => {
                    return Err(Error::parse(
                        0,
                        format!("unsupported EDGE_WEIGHT_FORMAT {other:?}"),
                    ))
                }
            }
            if weights.len() != n * n {
                return Err(Error::parse(
                    0,
                    format!("expected {} weights, found {}", n * n, weights.len()),
                ));
            }
            weights.chunks(n).map(|row| row.to_vec()).collect()
        }
        other => {
            return Err(Error::parse(
                0,
                format!("unsupported EDGE_WEIGHT_TYPE '{other}'"),
            ))
        }
    };
    let inst = TspInstance::new(cost)?;
    Ok(Parsed::clean(inst))
}

pub fn write_tsplib(inst: &TspInstance) -> String {
    let mut out = String::new();
    out.push_str("NAME: instance\n");
    out.push_str("TYPE: TSP\n");
    out.push_str(&format!("DIMENSION: {}\n", inst.n));
    out.push_str("EDGE_WEIGHT_TYPE: EXPLICIT\n");
    out.push_str("EDGE_WEIGHT_FORMAT: FULL_MATRIX\n");
    out.push_str("EDGE_WEIGHT_SECTION\n");
    for row in &inst.cost {
        let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("EOF\n");
    out
}
