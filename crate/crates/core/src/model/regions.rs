//! Readers for the region, coverage and fiber point-of-presence CSV files.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{NodeCoord, Region, Technology};
use crate::error::{Error, Result};

pub const REGION_HEADER: [&str; 8] = [
    "id",
    "country",
    "population",
    "area_km2",
    "luminosity_dn",
    "existing_sites",
    "node_x",
    "node_y",
];
pub const COVERAGE_HEADER: [&str; 2] = ["region_id", "technology"];
pub const FIBER_POP_HEADER: [&str; 3] = ["pop_id", "node_x", "node_y"];

/// A node already connected to the national fiber backbone.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPop {
    pub id: String,
    pub node: NodeCoord,
}

struct Rows<'a> {
    file: &'a str,
    records: Vec<csv::StringRecord>,
    header: &'static [&'static str],
}

impl<'a> Rows<'a> {
    fn read(file: &'a str, text: &str, header: &'static [&'static str]) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let found: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        if found != header {
            return Err(Error::Parse {
                file: file.to_owned(),
                row: 0,
                column: "header".into(),
                message: format!(
                    "expected `{}`, found `{}`",
                    header.join(","),
                    found.join(",")
                ),
            });
        }
        let mut records = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse {
                file: file.to_owned(),
                row: i + 1,
                column: "*".into(),
                message: e.to_string(),
            })?;
            records.push(rec);
        }
        Ok(Rows {
            file,
            records,
            header,
        })
    }

    fn text(&self, row: usize, col: usize) -> &str {
        self.records[row].get(col).unwrap_or("")
    }

    fn parse<T: FromStr>(&self, row: usize, col: usize) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.text(row, col);
        raw.parse().map_err(|e: T::Err| Error::Parse {
            file: self.file.to_owned(),
            row: row + 1,
            column: self.header[col].to_owned(),
            message: format!("`{raw}`: {e}"),
        })
    }

    fn optional<T: FromStr>(&self, row: usize, col: usize) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if self.text(row, col).is_empty() {
            Ok(None)
        } else {
            self.parse(row, col).map(Some)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_regions(path: impl AsRef<Path>) -> Result<Vec<Region>> {
    let path = path.as_ref();
    parse_regions(&path.display().to_string(), &read_file(path)?)
}

/// Parses region rows in file order and validates each one.
pub fn parse_regions(file: &str, text: &str) -> Result<Vec<Region>> {
    let rows = Rows::read(file, text, &REGION_HEADER)?;
    let mut regions = Vec::with_capacity(rows.records.len());
    for r in 0..rows.records.len() {
        let region = Region {
            id: rows.text(r, 0).to_owned(),
            country: rows.text(r, 1).to_owned(),
            population: rows.parse(r, 2)?,
            area_km2: rows.parse(r, 3)?,
            mean_luminosity: rows.parse(r, 4)?,
            existing_sites: rows.optional(r, 5)?,
            node: NodeCoord::new(rows.parse(r, 6)?, rows.parse(r, 7)?),
        };
        region.validate()?;
        if regions.iter().any(|o: &Region| o.id == region.id) {
            return Err(Error::validation(format!(
                "duplicate region id `{}`",
                region.id
            )));
        }
        regions.push(region);
    }
    Ok(regions)
}

pub fn load_coverage(path: impl AsRef<Path>) -> Result<HashMap<String, Technology>> {
    let path = path.as_ref();
    parse_coverage(&path.display().to_string(), &read_file(path)?)
}

/// Parses `region_id,technology` rows. Unknown labels are rejected.
pub fn parse_coverage(file: &str, text: &str) -> Result<HashMap<String, Technology>> {
    let rows = Rows::read(file, text, &COVERAGE_HEADER)?;
    let mut map = HashMap::with_capacity(rows.records.len());
    for r in 0..rows.records.len() {
        let tech: Technology = rows.parse(r, 1)?;
        map.insert(rows.text(r, 0).to_owned(), tech);
    }
    Ok(map)
}

pub fn load_fiber_pops(path: impl AsRef<Path>) -> Result<Vec<FiberPop>> {
    let path = path.as_ref();
    parse_fiber_pops(&path.display().to_string(), &read_file(path)?)
}

pub fn parse_fiber_pops(file: &str, text: &str) -> Result<Vec<FiberPop>> {
    let rows = Rows::read(file, text, &FIBER_POP_HEADER)?;
    (0..rows.records.len())
        .map(|r| {
            Ok(FiberPop {
                id: rows.text(r, 0).to_owned(),
                node: NodeCoord::new(rows.parse(r, 1)?, rows.parse(r, 2)?),
            })
        })
        .collect()
}
