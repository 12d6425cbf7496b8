//! SVG drawing of a curve, its caustic and its special points.
//!
//! The curve is one path of class "curve", every caustic branch a path of
//! class "caustic", and each special point one marker: disc for vertices,
//! square for inflections, star for lightlike points, triangle for cusps.

use minkowski_curves::detect::{PointKind, SpecialPoint};
use minkowski_curves::mink::Vec2;
use std::fmt::Write;

pub struct Drawing<'a> {
    pub curve: &'a [Vec2],
    pub caustic: &'a [Vec<Vec2>],
    pub points: &'a [(Vec2, &'a SpecialPoint)],
}

struct Frame {
    x0: f64,
    y1: f64,
    w: f64,
    h: f64,
}

impl Frame {
    /// Data extent plus a 5% margin on every side.
    fn new<'b>(pts: impl Iterator<Item = &'b Vec2>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in pts.filter(|p| p.x.is_finite() && p.y.is_finite()) {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let (w, h) = ((x1 - x0).max(1e-3 * span), (y1 - y0).max(1e-3 * span));
        Frame {
            x0: x0 - 0.05 * w,
            y1: y1 + 0.05 * h,
            w: 1.1 * w,
            h: 1.1 * h,
        }
    }

    /// SVG y grows downwards.
    fn map(&self, p: Vec2) -> (f64, f64) {
        (p.x - self.x0, self.y1 - p.y)
    }
}

fn path(out: &mut String, class: &str, pts: &[Vec2], f: &Frame) {
    let d: Vec<String> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (x, y) = f.map(p);
            format!("{}{x:.9} {y:.9}", if i == 0 { "M" } else { "L" })
        })
        .collect();
    if !d.is_empty() {
        writeln!(out, r#"  <path class="{class}" d="{}"/>"#, d.join(" ")).expect("string write");
    }
}

fn marker(out: &mut String, p: &SpecialPoint, at: Vec2, f: &Frame, r: f64) {
    let (x, y) = f.map(at);
    let t = p.t;
    let sym = p.kind.symbol();
    match p.kind {
        PointKind::Vertex { .. } => {
            writeln!(out, r#"  <circle class="marker vertex" data-t="{t}" data-symbol="{sym}" cx="{x:.9}" cy="{y:.9}" r="{r:.9}"/>"#)
        }
        PointKind::Inflection { .. } => writeln!(
            out,
            r#"  <rect class="marker inflection" data-t="{t}" data-symbol="{sym}" x="{:.9}" y="{:.9}" width="{:.9}" height="{:.9}"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
        PointKind::Lightlike | PointKind::LightlikeInflection { .. } => {
            let pts: Vec<String> = (0..10)
                .map(|k| {
                    let a = std::f64::consts::PI * (k as f64 / 5.0 - 0.5);
                    let rr = if k % 2 == 0 { 1.4 * r } else { 0.6 * r };
                    format!("{:.9},{:.9}", x + rr * a.cos(), y + rr * a.sin())
                })
                .collect();
            let class = if matches!(p.kind, PointKind::Lightlike) { "lightlike" } else { "lightlike-inflection" };
            writeln!(out, r#"  <polygon class="marker {class}" data-t="{t}" data-symbol="{sym}" points="{}"/>"#, pts.join(" "))
        }
        PointKind::Cusp { .. } => writeln!(
            out,
            r#"  <polygon class="marker cusp" data-t="{t}" data-symbol="{sym}" points="{:.9},{:.9} {:.9},{:.9} {:.9},{:.9}"/>"#,
            x,
            y - 1.2 * r,
            x - r,
            y + 0.8 * r,
            x + r,
            y + 0.8 * r
        ),
    }
    .expect("string write");
}

pub fn render(d: &Drawing) -> String {
    let all = d.curve.iter().chain(d.caustic.iter().flatten()).chain(d.points.iter().map(|(p, _)| p));
    let f = Frame::new(all);
    let r = 0.01 * f.w.max(f.h);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {:.9} {:.9}">"#,
        f.w, f.h
    )
    .expect("string write");
    let sw = 0.003 * f.w.max(f.h);
    writeln!(
        out,
        "  <style>.curve{{fill:none;stroke:black;stroke-width:{sw:.9}}} .caustic{{fill:none;stroke:#c0392b;stroke-width:{sw:.9}}} .marker{{fill:#1f4e9c}}</style>"
    )
    .expect("string write");
    path(&mut out, "curve", d.curve, &f);
    for b in d.caustic {
        path(&mut out, "caustic", b, &f);
    }
    for (at, p) in d.points {
        marker(&mut out, p, *at, &f, r);
    }
    out.push_str("</svg>\n");
    out
}
