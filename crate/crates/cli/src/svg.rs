//! Hand-rolled SVG 1.1 figures: star drawings and flow value sheets. Output
//! is plain XML text with a fixed element order, so figures are diffable.

use polyarea::polygon::Polygon;

const CANVAS: f64 = 400.0;

fn bounds(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    (cx, cy, span)
}

/// Draws the polygon with one `<line>` per edge (overlapping edges are drawn
/// individually, so a figure always contains exactly `n` edge elements),
/// vertex dots, a centroid cross, and a text label.
pub fn star_figure(poly: &Polygon, label: &str) -> String {
    let pts: Vec<(f64, f64)> = poly.vertices().iter().map(|v| (v.re, v.im)).collect();
    let (cx, cy, span) = bounds(&pts);
    let scale = 0.8 * CANVAS / span;
    // SVG's y axis points down; flip it so positive orientation reads
    // counterclockwise as on paper.
    let map = |(x, y): (f64, f64)| {
        (CANVAS / 2.0 + (x - cx) * scale, CANVAS / 2.0 - (y - cy) * scale)
    };
    let n = pts.len();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"0 0 {CANVAS} {CANVAS}\" width=\"{CANVAS}\" height=\"{CANVAS}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>\n"
    ));
    for i in 0..n {
        let (x1, y1) = map(pts[i]);
        let (x2, y2) = map(pts[(i + 1) % n]);
        out.push_str(&format!(
            "  <line class=\"edge\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" \
             stroke=\"#1f4e9c\" stroke-width=\"1.6\"/>\n"
        ));
    }
    for &p in &pts {
        let (x, y) = map(p);
        out.push_str(&format!(
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3.2\" fill=\"#c23b22\"/>\n"
        ));
    }
    let c = poly.centroid();
    let (x, y) = map((c.re, c.im));
    out.push_str(&format!(
        "  <line x1=\"{:.3}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        x - 5.0,
        x + 5.0
    ));
    out.push_str(&format!(
        "  <line x1=\"{x:.3}\" y1=\"{:.3}\" x2=\"{x:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        y - 5.0,
        y + 5.0
    ));
    out.push_str(&format!(
        "  <text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"16\">{label}</text>\n"
    ));
    out.push_str("</svg>\n");
    out
}

/// One polyline per flow: normalized step index against objective value.
pub fn flow_sheet(flows: &[Vec<f64>], title: &str) -> String {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for values in flows {
        for &v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let span = (hi - lo).max(1e-12);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"0 0 {CANVAS} {CANVAS}\" width=\"{CANVAS}\" height=\"{CANVAS}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>\n"
    ));
    for values in flows {
        if values.len() < 2 {
            continue;
        }
        let last = (values.len() - 1) as f64;
        let points: Vec<String> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let x = 20.0 + (CANVAS - 40.0) * i as f64 / last;
                let y = CANVAS - 20.0 - (CANVAS - 40.0) * (v - lo) / span;
                format!("{x:.2},{y:.2}")
            })
            .collect();
        out.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.7\" stroke-opacity=\"0.5\"/>\n",
            points.join(" ")
        ));
    }
    out.push_str(&format!(
        "  <text x=\"12\" y=\"16\" font-family=\"monospace\" font-size=\"12\">{title}</text>\n"
    ));
    out.push_str("</svg>\n");
    out
}
