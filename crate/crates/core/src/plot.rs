//! Plot documents for function graphs on [0, 1], rendered as SVG or CSV.
//!
//! Coordinates stay exact until rendering; SVG output rounds them to 12
//! significant digits, CSV output keeps rational strings.

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::pwl::PwlPeriodic;
use crate::rational::{format_rational, grid, int, Rational};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

pub type Point = (Rational, Rational);

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub segments: Vec<(Point, Point)>,
}

impl Series {
    pub fn from_function(pi: &PwlPeriodic, label: impl Into<String>, color: impl Into<String>) -> Self {
        let pts: Vec<Point> = pi
            .breakpoints()
            .iter()
            .cloned()
            .zip(pi.values().iter().cloned())
            .collect();
        let segments = pts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Series {
            label: label.into(),
            color: color.into(),
            segments,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlotDocument {
    pub series: Vec<Series>,
    /// draw vertical ticks at `(1/n)Z` when set
    pub grid_ticks: Option<usize>,
}

impl PlotDocument {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a function with the next palette color.
    pub fn push(&mut self, pi: &PwlPeriodic, label: impl Into<String>) {
        let color = PALETTE[self.series.len() % PALETTE.len()];
        self.series.push(Series::from_function(pi, label, color));
    }

    pub fn with_grid_ticks(mut self, n: usize) -> Self {
        self.grid_ticks = Some(n);
        self
    }

    /// One row `x0,y0,x1,y1,label` per segment, preceded by a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x0,y0,x1,y1,label\n");
        for s in &self.series {
            for ((x0, y0), (x1, y1)) in &s.segments {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_rational(x0),
                    format_rational(y0),
                    format_rational(x1),
                    format_rational(y1),
                    s.label
                );
            }
        }
        out
    }

    fn y_range(&self) -> (Rational, Rational) {
        let ys = self
            .series
            .iter()
            .flat_map(|s| s.segments.iter().flat_map(|(a, b)| [&a.1, &b.1]));
        let mut lo = int(0);
        let mut hi = int(1);
        for y in ys {
            if *y < lo {
                lo = y.clone();
            }
            if *y > hi {
                hi = y.clone();
            }
        }
        (lo, hi)
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self.y_range();
        let span = &hi - &lo;
        let px = |x: &Rational| MARGIN + (WIDTH - 2.0 * MARGIN) * x.to_f64().unwrap_or(0.0);
        let py = |y: &Rational| {
            let t = if span.is_zero() { Rational::zero() } else { (y - &lo) / &span };
            HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * t.to_f64().unwrap_or(0.0)
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = WIDTH,
            h = HEIGHT
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        if let Some(n) = self.grid_ticks.filter(|&n| n > 0) {
            let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="0.5">"##);
            for i in 0..=n {
                let x = decimal(px(&grid(i, n)));
                let _ = writeln!(
                    out,
                    r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
                    decimal(MARGIN),
                    decimal(HEIGHT - MARGIN)
                );
            }
            let _ = writeln!(out, "</g>");
        }
        let zero = decimal(py(&int(0)));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{zero}" x2="{}" y2="{zero}" stroke="black"/>"#,
            decimal(MARGIN),
            decimal(WIDTH - MARGIN)
        );
        for (k, s) in self.series.iter().enumerate() {
            let mut points: Vec<String> = Vec::new();
            if let Some(((x, y), _)) = s.segments.first() {
                points.push(format!("{},{}", decimal(px(x)), decimal(py(y))));
            }
            for (_, (x, y)) in &s.segments {
                points.push(format!("{},{}", decimal(px(x)), decimal(py(y))));
            }
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
                s.color,
                points.join(" "),
                escape(&s.label)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" fill="{}" font-size="12">{}</text>"#,
                decimal(MARGIN + 8.0),
                decimal(MARGIN + 14.0 * (k as f64 + 1.0)),
                s.color,
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Decimal rendering with at most 12 significant digits.
pub fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Exact rational rendered with 12 significant digits.
pub fn decimal_rational(x: &Rational) -> String {
    if x.is_negative() {
        format!("-{}", decimal(x.abs().to_f64().unwrap_or(0.0)))
    } else {
        decimal(x.to_f64().unwrap_or(0.0))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::gj_2_slope;
    use crate::rational::rat;

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(0.5), "0.5");
        assert_eq!(decimal(1.0 / 3.0), "0.333333333333");
        assert_eq!(decimal(200.0), "200");
        assert_eq!(decimal(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(decimal_rational(&rat(2, 3)), "0.666666666667");
    }

    #[test]
    fn csv_rows_are_exact() {
        let pi = gj_2_slope(&rat(1, 2), &rat(1, 3)).unwrap();
        let mut doc = PlotDocument::new();
        doc.push(&pi, "gj");
        let csv = doc.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x0,y0,x1,y1,label");
        assert_eq!(lines[1], "0,0,1/6,2/3,gj");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn svg_has_one_polyline_per_function() {
        let pi = gj_2_slope(&rat(1, 2), &rat(1, 3)).unwrap();
        let mut doc = PlotDocument::new().with_grid_ticks(8);
        doc.push(&pi, "a");
        doc.push(&pi, "b");
        let svg = doc.to_svg();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn segments_chain() {
        let pi = gj_2_slope(&rat(1, 2), &rat(1, 3)).unwrap();
        let s = Series::from_function(&pi, "x", "black");
        for w in s.segments.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
