//! Pictures of rank-2 tropical cycles: rays drawn from the centre with
//! their weights written at the tips. Integer coordinates only.

use std::fmt::Write;

use refinedtrop::tropcycle::{Cone, TropicalCycle, WeightPoly};

const SIZE: i64 = 480;
const CENTER: i64 = SIZE / 2;
const LENGTH: i64 = 150;

fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// The point at distance `len` from the centre in direction `v`, with the
/// y axis flipped.
fn tip(v: (i64, i64), len: i64) -> (i64, i64) {
    let (a, b) = (v.0 as i128, v.1 as i128);
    // |v| scaled by 10^6 keeps rounding below a pixel
    let norm = isqrt((a * a + b * b) * 1_000_000_000_000);
    let scale = len as i128 * 1_000_000;
    let x = div_round(a * scale, norm);
    let y = div_round(b * scale, norm);
    (CENTER + x as i64, CENTER - y as i64)
}

fn div_round(p: i128, q: i128) -> i128 {
    let (d, r) = (p.div_euclid(q), p.rem_euclid(q));
    if 2 * r >= q {
        d + 1
    } else {
        d
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn direction(c: &Cone) -> Option<(i64, i64)> {
    let r = c.rays().first()?;
    let v = r.to_i64s()?;
    Some((v[0], v[1]))
}

/// Lines of rays and lineality directions with their labels.
fn segments(c: &TropicalCycle) -> (Vec<((i64, i64), WeightPoly)>, Option<WeightPoly>) {
    let mut rays = Vec::new();
    let mut origin = None;
    for (cone, w) in c.iter() {
        match (cone.dim(), cone.lineality().len()) {
            (0, _) => origin = Some(w.clone()),
            (1, 0) => {
                if let Some(d) = direction(cone) {
                    rays.push((d, w.clone()));
                }
            }
            (1, 1) => {
                if let Some(v) = cone.lineality()[0].to_i64s() {
                    rays.push(((v[0], v[1]), w.clone()));
                    rays.push(((-v[0], -v[1]), w.clone()));
                }
            }
            _ => {}
        }
    }
    rays.sort_by(|a, b| a.0.cmp(&b.0));
    (rays, origin)
}

pub fn render(title: &str, c: &TropicalCycle, note: &str) -> String {
    let (rays, origin) = segments(c);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="2" fill="none">"#);
    for (d, _) in &rays {
        let (x, y) = tip(*d, LENGTH);
        let _ = writeln!(s, r#"<line x1="{CENTER}" y1="{CENTER}" x2="{x}" y2="{y}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g font-family="monospace" font-size="12" fill="black">"#);
    for (d, w) in &rays {
        let (x, y) = tip(*d, LENGTH + 14);
        let anchor = match d.0.cmp(&0) {
            std::cmp::Ordering::Less => "end",
            std::cmp::Ordering::Equal => "middle",
            std::cmp::Ordering::Greater => "start",
        };
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{}</text>"#, escape(&w.to_string()));
    }
    let _ = writeln!(s, r#"<circle cx="{CENTER}" cy="{CENTER}" r="3"/>"#);
    let origin_label = match &origin {
        Some(w) => w.to_string(),
        None if rays.is_empty() => "weight 0".to_string(),
        None => String::new(),
    };
    if !origin_label.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="start">{}</text>"#,
            CENTER + 8,
            CENTER + 18,
            escape(&origin_label)
        );
    }
    let _ = writeln!(s, r#"<text x="8" y="{}" font-size="10">{}</text>"#, SIZE - 8, escape(note));
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
