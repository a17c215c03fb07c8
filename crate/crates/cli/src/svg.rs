//! Orbit-graph drawing: frame points on a line, generator images as arcs.
//!
//! Presentation only; floating point is used for layout and nowhere else.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::table::FrameTable;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 30.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub fn render(table: &FrameTable, title: &str) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r.coordinate.to_rational().to_f64().unwrap_or(0.0)).collect();
    let (lo, hi) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let px = |x: f64| MARGIN + (x - lo) / span * (WIDTH - 2.0 * MARGIN);
    let axis = HEIGHT / 2.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r##"<line x1="{MARGIN}" y1="{axis}" x2="{}" y2="{axis}" stroke="#888"/>"##, WIDTH - MARGIN);
    for (k, gen) in table.generators.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        // Alternate generators above and below the axis.
        let up = k % 2 == 0;
        let _ = writeln!(s, r#"<g fill="none" stroke="{color}" stroke-opacity="0.6"><desc>{}</desc>"#, escape(gen));
        for (i, r) in table.rows.iter().enumerate() {
            let Some(j) = r.images[k] else { continue };
            if i == j {
                continue;
            }
            let (a, b) = (px(xs[i]), px(xs[j]));
            let h = ((b - a).abs() / 2.0).min(axis - MARGIN);
            let cy = if up { axis - h } else { axis + h };
            let _ = writeln!(s, r#"<path d="M {a:.2} {axis} Q {:.2} {cy:.2} {b:.2} {axis}"/>"#, (a + b) / 2.0);
        }
        let _ = writeln!(s, "</g>");
    }
    for (r, x) in table.rows.iter().zip(&xs) {
        let fill = if r.word.is_empty() { "#000" } else { "#fff" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{axis}" r="2.5" fill="{fill}" stroke="black"><title>{} @ {}</title></circle>"#,
            px(*x),
            escape(if r.word.is_empty() { "e" } else { &r.word }),
            r.coordinate
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
