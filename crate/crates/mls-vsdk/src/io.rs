//! Node-set CSV serialization.
//!
//! Schema: header `x0,...,x{d-1}[,value]`, one row per node, numbers at
//! 17 significant digits in scientific notation.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiments::format_f64;
use crate::geometry::{NodeSet, Point};

pub fn write_nodes<W: Write>(nodes: &NodeSet, w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    let d = nodes.dim();
    let mut header: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
    if nodes.values().is_some() {
        header.push("value".into());
    }
    w.write_record(&header)?;
    for (i, p) in nodes.points().iter().enumerate() {
        let mut row: Vec<String> = p.coords().iter().map(|&c| format_f64(c)).collect();
        if let Some(values) = nodes.values() {
            row.push(format_f64(values[i]));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_nodes_file(nodes: &NodeSet, path: &Path) -> Result<()> {
    write_nodes(nodes, std::fs::File::create(path)?)
}

pub fn read_nodes<R: Read>(r: R) -> Result<NodeSet> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    let mut dim = 0;
    for (j, field) in header.iter().enumerate() {
        if field == format!("x{j}") {
            dim += 1;
        } else if field == "value" && j == header.len() - 1 {
            break;
        } else {
            return Err(Error::invalid(format!(
                "node CSV header field {j} is {field:?}, expected x{j} or trailing value"
            )));
        }
    }
    if dim == 0 {
        return Err(Error::invalid("node CSV has no coordinate columns"));
    }
    let has_values = header.len() == dim + 1;
    let mut points = Vec::new();
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record?;
        if record.len() != header.len() {
            return Err(Error::invalid(format!(
                "node CSV row has {} fields, expected {}",
                record.len(),
                header.len()
            )));
        }
        let coords: Vec<f64> = record
            .iter()
            .take(dim)
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad coordinate {s:?}")))
            })
            .collect::<Result<_>>()?;
        points.push(Point::new(coords)?);
        if has_values {
            let s = record.get(dim).unwrap();
            values.push(
                s.trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad value {s:?}")))?,
            );
        }
    }
    if points.is_empty() {
        return Err(Error::invalid("node CSV contains no rows"));
    }
    let nodes = NodeSet::new(dim, points)?;
    if has_values {
        nodes.with_values(values)
    } else {
        Ok(nodes)
    }
}
