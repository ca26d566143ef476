//! SVG rendering of rank-2 complexes and archimedean membership scans.
//!
//! Geometry stays exact until the final conversion to screen coordinates:
//! cell vertices inside the viewing box are found as feasible intersections
//! of pairs of boundary lines.

use std::fmt::Write as _;

use amoeba_core::archimedean::{self, PointVerdict, SampleOptions};
use amoeba_core::laurent::LaurentPoly;
use amoeba_core::polyhedral::{Constraint, PolyhedralComplex, Polyhedron};
use amoeba_core::scalars::{to_f64, Rational};
use anyhow::{bail, Result};
use num_traits::{Signed, Zero};

const SIZE: f64 = 480.0;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Lines `a . x = b` bounding a cell.
fn lines(p: &Polyhedron) -> Vec<(Rational, Rational, Rational)> {
    let line = |c: &Constraint| (Rational::from_integer(c.normal[0].clone()), Rational::from_integer(c.normal[1].clone()), c.rhs.clone());
    p.equalities().iter().chain(p.inequalities()).map(line).collect()
}

/// Exact vertices of `p`, clipped to the square `[-b, b]^2` when `b` is
/// given, in counterclockwise order.
fn vertices(p: &Polyhedron, b: Option<&Rational>) -> Vec<[Rational; 2]> {
    let mut clipped = p.clone();
    let mut ls = lines(p);
    if let Some(b) = b {
        for (x, y) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            clipped.add_inequality(Constraint::from_ints(&[x, y], b.clone()));
            ls.push((q(x), q(y), b.clone()));
        }
    }
    let mut pts: Vec<[Rational; 2]> = Vec::new();
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            let (a1, b1, c1) = &ls[i];
            let (a2, b2, c2) = &ls[j];
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / &det;
            let y = (a1 * c2 - a2 * c1) / &det;
            let pt = [x, y];
            if clipped.contains(&pt) && !pts.contains(&pt) {
                pts.push(pt);
            }
        }
    }
    if pts.is_empty() {
        if let Some(pt) = clipped.feasible_point() {
            pts.push([pt[0].clone(), pt[1].clone()]);
        }
    }
    // order by angle around the centroid
    let k = q(pts.len().max(1) as i64);
    let cx: Rational = pts.iter().map(|p| p[0].clone()).sum::<Rational>() / &k;
    let cy: Rational = pts.iter().map(|p| p[1].clone()).sum::<Rational>() / &k;
    let mut pts: Vec<(f64, [Rational; 2])> =
        pts.into_iter().map(|p| (to_f64(&(&p[1] - &cy)).atan2(to_f64(&(&p[0] - &cx))), p)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.into_iter().map(|(_, p)| p).collect()
}

/// Half-width of a box holding every cell vertex with a margin.
fn extent(c: &PolyhedralComplex) -> Rational {
    let mut m = q(1);
    for cell in c.cells() {
        for v in vertices(&cell.polyhedron, None) {
            for x in v {
                if x.abs() > m {
                    m = x.abs();
                }
            }
        }
    }
    (m + q(2)).ceil()
}

struct Canvas {
    half: f64,
    body: String,
}

impl Canvas {
    fn new(half: f64) -> Self {
        let mut c = Canvas { half, body: String::new() };
        let (lo, hi) = (c.sx(-half), c.sx(half));
        let _ = writeln!(c.body, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
        let o = c.sx(0.0);
        let _ = writeln!(c.body, r##"<line x1="{lo}" y1="{o}" x2="{hi}" y2="{o}" stroke="#cccccc" stroke-width="1"/>"##);
        let _ = writeln!(c.body, r##"<line x1="{o}" y1="{lo}" x2="{o}" y2="{hi}" stroke="#cccccc" stroke-width="1"/>"##);
        c
    }

    fn sx(&self, x: f64) -> f64 {
        round2((x + self.half) / (2.0 * self.half) * SIZE)
    }

    fn sy(&self, y: f64) -> f64 {
        round2(SIZE - (y + self.half) / (2.0 * self.half) * SIZE)
    }

    fn finish(self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draws every cell of a rank-2 complex, clipped to a box around its
/// vertices; multiplicities above one are labelled.
pub fn complex_svg(c: &PolyhedralComplex, title: &str) -> Result<String> {
    if c.rank() != 2 {
        bail!("plotting needs rank 2, got rank {}", c.rank());
    }
    let b = extent(c);
    let mut canvas = Canvas::new(to_f64(&b));
    for cell in c.cells() {
        let pts: Vec<(f64, f64)> = vertices(&cell.polyhedron, Some(&b))
            .iter()
            .map(|p| (canvas.sx(to_f64(&p[0])), canvas.sy(to_f64(&p[1]))))
            .collect();
        match cell.polyhedron.dimension() {
            0 => {
                let (x, y) = pts[0];
                let _ = writeln!(canvas.body, r##"<circle cx="{x}" cy="{y}" r="4" fill="#1f4e9c"/>"##);
            }
            1 => {
                let (&(x1, y1), &(x2, y2)) = (pts.first().unwrap(), pts.last().unwrap());
                let w = 1 + cell.multiplicity.min(4);
                let _ = writeln!(
                    canvas.body,
                    r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#1f4e9c" stroke-width="{w}"/>"##
                );
                if cell.multiplicity > 1 {
                    let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                    let m = cell.multiplicity;
                    let _ = writeln!(canvas.body, r##"<text x="{mx}" y="{my}" font-size="12" fill="#b03030">{m}</text>"##);
                }
            }
            2 => {
                let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
                let _ = writeln!(
                    canvas.body,
                    r##"<polygon points="{}" fill="#1f4e9c" fill-opacity="0.3" stroke="#1f4e9c"/>"##,
                    path.join(" ")
                );
            }
            _ => {}
        }
    }
    Ok(canvas.finish(title))
}

/// Colors a `grid x grid` scan of `[-half, half]^2` by archimedean
/// membership verdict at each cell center.
pub fn archimedean_svg(f: &LaurentPoly, half: u32, grid: u32, opts: &SampleOptions, title: &str) -> Result<String> {
    if f.rank() != 2 {
        bail!("plotting needs rank 2, got rank {}", f.rank());
    }
    if grid == 0 || half == 0 {
        bail!("grid and extent must be positive");
    }
    let mut canvas = Canvas::new(half as f64);
    let step = Rational::new((2 * half as i64).into(), (grid as i64).into());
    let cell = SIZE / grid as f64;
    for i in 0..grid {
        for j in 0..grid {
            let center = |k: u32| -q(half as i64) + &step * Rational::new((2 * k as i64 + 1).into(), 2.into());
            let v = [center(i), center(j)];
            let color = match archimedean::membership(f, &v, opts)? {
                PointVerdict::Outside { .. } => "#f4f4f4",
                PointVerdict::Inside { .. } => "#1f4e9c",
                PointVerdict::NumericInside { .. } => "#4f7ecc",
                PointVerdict::Unknown => "#bbbbbb",
            };
            let x = round2(i as f64 * cell);
            let y = round2(SIZE - (j + 1) as f64 * cell);
            let w = round2(cell);
            let _ = writeln!(canvas.body, r##"<rect x="{x}" y="{y}" width="{w}" height="{w}" fill="{color}"/>"##);
        }
    }
    Ok(canvas.finish(title))
}
