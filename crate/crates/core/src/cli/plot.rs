//! CSV and SVG renderings of boundary curves.
//!
//! SVGs are 800×800 with the square `[−2, 2]²` mapped onto the viewport, the unit
//! circle drawn as a dashed reference and the curve as a closed polyline.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::numrange::BoundaryCurve;

const VIEWPORT: f64 = 800.0;
const EXTENT: f64 = 2.0;

fn to_screen(z: Complex64) -> (f64, f64) {
    let scale = VIEWPORT / (2.0 * EXTENT);
    ((z.re + EXTENT) * scale, (EXTENT - z.im) * scale)
}

/// `theta,support,re,im`, one row per sampled direction.
pub fn range_csv(curve: &BoundaryCurve) -> String {
    let mut out = String::from("theta,support,re,im\n");
    for s in &curve.samples {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", s.theta, s.support, s.point.re, s.point.im);
    }
    out
}

/// `phi,re,im`, one row per boundary vertex.
pub fn teardrop_csv(points: &[(f64, Complex64)]) -> String {
    let mut out = String::from("phi,re,im\n");
    for (phi, z) in points {
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", phi, z.re, z.im);
    }
    out
}

pub fn svg(points: &[Complex64], title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{v}" height="{v}" viewBox="0 0 {v} {v}">"#,
        v = VIEWPORT
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{v}" height="{v}" style="fill:#ffffff"/>"#, v = VIEWPORT);
    let (cx, cy) = to_screen(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r#"<line x1="0" y1="{cy}" x2="{v}" y2="{cy}" style="stroke:#cccccc;stroke-width:1"/>"#,
        v = VIEWPORT
    );
    let _ = writeln!(
        out,
        r#"<line x1="{cx}" y1="0" x2="{cx}" y2="{v}" style="stroke:#cccccc;stroke-width:1"/>"#,
        v = VIEWPORT
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{cx}" cy="{cy}" r="{r}" style="fill:none;stroke:#888888;stroke-width:1;stroke-dasharray:6 4"/>"#,
        r = VIEWPORT / (2.0 * EXTENT)
    );
    let coords: Vec<String> = points
        .iter()
        .map(|&z| {
            let (x, y) = to_screen(z);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" style="fill:#1f77b4;fill-opacity:0.15;stroke:#1f77b4;stroke-width:2"/>"#,
        coords.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
