//! Deterministic SVG rendering of the feasibility regions.
//!
//! Coordinates are data units; the outer group flips the y axis so `y` grows
//! upward. Output carries no timestamps and uses fixed-precision numbers, so
//! the same input always yields the same bytes.

use std::fmt::Write;

use crate::regions::{Point2, RegionBundle};

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const GUIDE: &str = "#555555";
const CHOSEN: &str = "#ff7f0e";

/// Everything drawn in one figure.
#[derive(Clone, Debug, Default)]
pub struct RegionFigure {
    pub regions: Vec<RegionBundle>,
    /// Construction segments such as `(A13, B3)` and `(A24, B2)`.
    pub guides: Vec<(String, Point2, Point2)>,
    pub chosen: Option<Point2>,
    /// Points sampled along each ellipse.
    pub resolution: usize,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

struct Bounds {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, (x, y): (f64, f64)) {
        if x.is_finite() && y.is_finite() {
            self.min_x = self.min_x.min(x);
            self.max_x = self.max_x.max(x);
            self.min_y = self.min_y.min(y);
            self.max_y = self.max_y.max(y);
        }
    }

    /// Box grown by 10% of its extent on every side.
    fn padded(&self) -> (f64, f64, f64, f64) {
        if self.min_x > self.max_x {
            return (-1.0, -1.0, 2.0, 2.0);
        }
        let w = (self.max_x - self.min_x).max(1e-9);
        let h = (self.max_y - self.min_y).max(1e-9);
        (self.min_x - 0.1 * w, self.min_y - 0.1 * h, 1.2 * w, 1.2 * h)
    }
}

impl RegionFigure {
    pub fn to_svg(&self) -> String {
        let ellipses: Vec<Vec<(f64, f64)>> = self
            .regions
            .iter()
            .map(|r| {
                r.boundary_samples(self.resolution)
                    .iter()
                    .map(Point2::to_f64)
                    .collect()
            })
            .collect();
        let mut bounds = Bounds::new();
        for pts in &ellipses {
            pts.iter().for_each(|p| bounds.add(*p));
        }
        for r in &self.regions {
            r.triangle_vertices()
                .iter()
                .for_each(|p| bounds.add(p.to_f64()));
        }
        for (_, a, b) in &self.guides {
            bounds.add(a.to_f64());
            bounds.add(b.to_f64());
        }
        if let Some(p) = &self.chosen {
            bounds.add(p.to_f64());
        }
        let (x0, y0, w, h) = bounds.padded();
        let stroke = 0.004 * w.max(h);
        let dot = 0.008 * w.max(h);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}" preserveAspectRatio="none">"#,
            num(x0),
            num(-(y0 + h)),
            num(w),
            num(h),
            num((800.0 * h / w).clamp(200.0, 1600.0)),
        );
        let _ = writeln!(
            out,
            r#"<g transform="scale(1,-1)" fill="none" stroke-width="{}">"#,
            num(stroke)
        );
        for (i, (r, pts)) in self.regions.iter().zip(&ellipses).enumerate() {
            let colour = PALETTE[i % PALETTE.len()];
            let _ = writeln!(out, r#"<g stroke="{colour}"><title>{}</title>"#, r.source());
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{},{}", num(x), num(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon class="ellipse" points="{}"/>"#,
                path.join(" ")
            );
            let tri: Vec<String> = r
                .triangle_vertices()
                .iter()
                .map(|p| {
                    let (x, y) = p.to_f64();
                    format!("{},{}", num(x), num(y))
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon class="triangle" points="{}" stroke-dasharray="{} {}"/>"#,
                tri.join(" "),
                num(3.0 * stroke),
                num(2.0 * stroke)
            );
            for p in r.tangent_points() {
                let (x, y) = p.to_f64();
                let _ = writeln!(
                    out,
                    r#"<circle class="tangent" cx="{}" cy="{}" r="{}" fill="{colour}"/>"#,
                    num(x),
                    num(y),
                    num(dot)
                );
            }
            let _ = writeln!(out, "</g>");
        }
        for (name, a, b) in &self.guides {
            let (ax, ay) = a.to_f64();
            let (bx, by) = b.to_f64();
            let _ = writeln!(
                out,
                r#"<line class="guide" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{GUIDE}"><title>{name}</title></line>"#,
                num(ax),
                num(ay),
                num(bx),
                num(by)
            );
        }
        if let Some(p) = &self.chosen {
            let (x, y) = p.to_f64();
            let _ = writeln!(
                out,
                r#"<circle class="chosen" cx="{}" cy="{}" r="{}" fill="{CHOSEN}" stroke="black"><title>({}, {})</title></circle>"#,
                num(x),
                num(y),
                num(1.5 * dot),
                crate::rational::fraction_string(&p.x),
                crate::rational::fraction_string(&p.y)
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}
