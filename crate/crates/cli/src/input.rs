//! Turning flags and input files into engine values.
//!
//! Polynomials are given as `poly` or `poly @ row;row;...`, where the rows
//! form the integer matrix of the monomial map the polynomial is pulled back
//! along (one row per variable of `poly`, one column per ambient
//! coordinate). Halfspaces are `dir:<csv> bnd:<csv>;<csv>...`.

use std::path::Path;

use amoeba_core::classify::{Halfspace, ImagePresentation};
use amoeba_core::laurent::LaurentPoly;
use amoeba_core::scalars::{Field, Place, Scalar};
use amoeba_core::tropical::{ConstraintSystem, PulledBack};
use anyhow::{bail, Context, Result};
use serde::Deserialize;

/// Contents of an `--input` JSON file; every field is optional and flags
/// take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub rank: Option<usize>,
    pub field: Option<String>,
    #[serde(default)]
    pub polynomials: Vec<String>,
    pub place: Option<String>,
    pub halfspace: Option<String>,
    pub image: Option<String>,
    #[serde(default)]
    pub codim_gt_one: bool,
}

impl InputFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Largest `k` among the variables `x<k>` in `text`.
pub fn max_variable(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
            i += 1 + digits.len();
        } else {
            i += 1;
        }
    }
    best
}

/// Explicit field, or Q(z) when any text mentions `z`.
pub fn detect_field(explicit: Option<&str>, texts: &[&str]) -> Result<Field> {
    match explicit {
        Some(f) => Ok(f.parse()?),
        None if texts.iter().any(|t| t.contains('z')) => Ok(Field::FunctionField),
        None => Ok(Field::Rationals),
    }
}

fn parse_int_csv(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("`{x}` is not an integer")))
        .collect()
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';').filter(|r| !r.trim().is_empty()).map(parse_int_csv).collect()
}

/// One `poly [@ rows]` item, split into text and pullback rows.
fn split_item(item: &str) -> Result<(&str, Option<Vec<Vec<i64>>>)> {
    match item.split_once('@') {
        Some((poly, rows)) => Ok((poly.trim(), Some(parse_rows(rows)?))),
        None => Ok((item.trim(), None)),
    }
}

/// Builds the constraint system; the ambient rank is `rank` or inferred
/// from the variables and pullback rows.
pub fn parse_system(items: &[String], rank: Option<usize>, field: Option<&str>) -> Result<ConstraintSystem> {
    if items.is_empty() {
        bail!("no polynomial given; use --f or --input");
    }
    let split = items.iter().map(|s| split_item(s)).collect::<Result<Vec<_>>>()?;
    let texts: Vec<&str> = split.iter().map(|(p, _)| *p).collect();
    let field = detect_field(field, &texts)?;
    let inferred = split
        .iter()
        .map(|(p, rows)| match rows {
            Some(rows) => rows.first().map_or(0, Vec::len),
            None => max_variable(p),
        })
        .max()
        .unwrap_or(0);
    let n = rank.unwrap_or(inferred.max(1));
    let mut constraints = Vec::new();
    for (text, rows) in split {
        let k = match rows {
            Some(rows) => {
                let poly = LaurentPoly::parse(text, rows.len(), field)?;
                PulledBack { poly, pullback: rows }
            }
            None => PulledBack::identity(LaurentPoly::parse(text, n, field)?),
        };
        constraints.push(k);
    }
    Ok(ConstraintSystem::new(n, constraints)?)
}

/// A single hypersurface (identity pullback).
pub fn parse_hypersurface(items: &[String], rank: Option<usize>, field: Option<&str>) -> Result<LaurentPoly> {
    let system = parse_system(items, rank, field)?;
    match system.as_hypersurface() {
        Some(f) => Ok(f.clone()),
        None => bail!("this command takes exactly one polynomial without a pullback"),
    }
}

pub fn parse_place(text: Option<&str>) -> Result<Place> {
    Ok(text.unwrap_or("generic").parse()?)
}

/// `dir:<csv> bnd:<csv>;<csv>...` (the boundary part is optional).
pub fn parse_halfspace(text: &str) -> Result<Halfspace> {
    let mut direction = None;
    let mut boundary = Vec::new();
    for part in text.split_whitespace() {
        if let Some(d) = part.strip_prefix("dir:") {
            direction = Some(parse_int_csv(d)?);
        } else if let Some(b) = part.strip_prefix("bnd:") {
            boundary = parse_rows(b)?;
        } else {
            bail!("unexpected halfspace component `{part}`; expected dir:<csv> or bnd:<csv>;...");
        }
    }
    let Some(direction) = direction else {
        bail!("halfspace needs a direction, e.g. `dir:1,1,0`");
    };
    Ok(Halfspace::new(boundary, direction)?)
}

/// The image hypersurface in the quotient torus of rank `rank`.
pub fn parse_image(text: Option<&str>, codim_gt_one: bool, rank: usize, field: Field) -> Result<Option<ImagePresentation>> {
    match (text, codim_gt_one) {
        (Some(_), true) => bail!("give either --image or --codim-gt-one, not both"),
        (Some(t), false) => Ok(Some(ImagePresentation::Hypersurface(LaurentPoly::parse(t, rank, field)?))),
        (None, true) => Ok(Some(ImagePresentation::CodimGreaterThanOne)),
        (None, false) => Ok(None),
    }
}

pub fn parse_scalar(text: &str, field: Option<&str>) -> Result<Scalar> {
    let field = detect_field(field, &[text])?;
    Ok(Scalar::parse(text, field)?)
}
