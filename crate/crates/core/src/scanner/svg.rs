//! Deterministic SVG drawings of a point configuration.
//!
//! The same input always gives the same bytes: coordinates are integers,
//! and paths and points are drawn in index order.

use std::fmt::Write as _;

use crate::lattice::{LatticePath, LatticePoint, PointConfiguration};

const UNIT: i64 = 40;
const MARGIN: i64 = 1;
const PATH_COLOURS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Frame {
    x0: i64,
    y1: i64,
    width: i64,
    height: i64,
}

impl Frame {
    fn around(points: &[LatticePoint]) -> Self {
        let x0 = points.iter().map(|p| p.x).min().unwrap_or(0) - MARGIN;
        let x1 = points.iter().map(|p| p.x).max().unwrap_or(0) + MARGIN;
        let y0 = points.iter().map(|p| p.y).min().unwrap_or(0) - MARGIN;
        let y1 = points.iter().map(|p| p.y).max().unwrap_or(0) + MARGIN;
        Frame { x0, y1, width: (x1 - x0) * UNIT, height: (y1 - y0) * UNIT }
    }

    // y grows upward in the lattice, downward in SVG
    fn px(&self, p: LatticePoint) -> (i64, i64) {
        ((p.x - self.x0) * UNIT, (self.y1 - p.y) * UNIT)
    }
}

/// Draws the grid, the diagonal `y = x`, the start points `A_j`, the end
/// points `B_j`, the rectangle each path `A_j -> B_j` must stay in, and
/// optionally a tuple of paths.
pub fn render(config: &PointConfiguration, paths: Option<&[LatticePath]>) -> String {
    let points: Vec<LatticePoint> = config.starts.iter().chain(&config.ends).copied().collect();
    let frame = Frame::around(&points);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = frame.width,
        h = frame.height
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for x in (0..=frame.width).step_by(UNIT as usize) {
        let _ = writeln!(out, r#"<line x1="{x}" y1="0" x2="{x}" y2="{}"/>"#, frame.height);
    }
    for y in (0..=frame.height).step_by(UNIT as usize) {
        let _ = writeln!(out, r#"<line x1="0" y1="{y}" x2="{}" y2="{y}"/>"#, frame.width);
    }
    let _ = writeln!(out, "</g>");

    // y = x clipped to the frame
    let lo = frame.x0.max(frame.y1 - frame.height / UNIT);
    let hi = (frame.x0 + frame.width / UNIT).min(frame.y1);
    if lo <= hi {
        let (ax, ay) = frame.px(LatticePoint::new(lo, lo));
        let (bx, by) = frame.px(LatticePoint::new(hi, hi));
        let _ = writeln!(
            out,
            r##"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#999999" stroke-dasharray="4 4"/>"##
        );
    }

    for (a, b) in config.starts.iter().zip(&config.ends) {
        if !a.reaches(b) {
            continue;
        }
        let (ax, ay) = frame.px(*a);
        let (bx, by) = frame.px(*b);
        let _ = writeln!(
            out,
            r##"<rect x="{ax}" y="{ay}" width="{}" height="{}" fill="#ffe08a" fill-opacity="0.25"/>"##,
            bx - ax,
            by - ay
        );
    }

    if let Some(paths) = paths {
        for (r, path) in paths.iter().enumerate() {
            let pts: Vec<String> = path
                .points()
                .map(|p| {
                    let (x, y) = frame.px(p);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="3"/>"#,
                pts.join(" "),
                PATH_COLOURS[r % PATH_COLOURS.len()]
            );
        }
    }

    for (label, set, colour) in [("A", &config.starts, "#c0392b"), ("B", &config.ends, "#2c3e50")] {
        for (r, p) in set.iter().enumerate() {
            let (x, y) = frame.px(*p);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="5" fill="{colour}"/>"#);
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12" fill="{colour}">{label}{} ({},{})</text>"#,
                x + 7,
                y - 7,
                r + 1,
                p.x,
                p.y
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{Partition, SequenceIndex3};
    use crate::oracle::{enumerate_tuples, Permutation};

    fn config() -> PointConfiguration {
        let l: Partition = "3,3,3".parse().unwrap();
        let m: Partition = "2,2,1".parse().unwrap();
        PointConfiguration::from_partitions(&l, &m, &SequenceIndex3::new(1, 1, 1).to_sequence()).unwrap()
    }

    #[test]
    fn deterministic_and_labelled() {
        let c = config();
        let tuples = enumerate_tuples(&c, &Permutation::identity(3));
        let a = render(&c, Some(&tuples[0].paths));
        let b = render(&c, Some(&tuples[0].paths));
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        for l in ["A1", "A2", "A3", "B1", "B2", "B3"] {
            assert!(a.contains(l), "missing {l}");
        }
        assert_eq!(a.matches("<polyline").count(), 3);
        assert_eq!(render(&c, None).matches("<polyline").count(), 0);
    }

    #[test]
    fn single_pair() {
        let c = PointConfiguration::new(vec![LatticePoint::new(1, 3)], vec![LatticePoint::new(2, 2)]);
        let s = render(&c, None);
        assert_eq!(s.matches("<circle").count(), 2);
        assert_eq!(s.matches("fill-opacity").count(), 1);
    }
}
