use std::fmt::Write;

use cosmeasure::solvers::Method;

use crate::AccuracyProfile;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

fn color(m: Method) -> &'static str {
    match m {
        Method::BasisEnum => "#1f77b4",
        Method::KktEnum => "#d62728",
        Method::VertexEnum => "#2ca02c",
        Method::RandomLp => "#ff7f0e",
    }
}

/// Step plot of an accuracy profile as a standalone SVG document. The output
/// depends only on the profile.
pub fn profile_svg(profile: &AccuracyProfile) -> String {
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let xmax = profile.grid.last().copied().unwrap_or(16.0).max(1.0);
    let px = |t: f64| LEFT + pw * t / xmax;
    let py = |f: f64| TOP + ph * (1.0 - f);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    for i in 0..=8 {
        let t = xmax * i as f64 / 8.0;
        let x = px(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.0}</text>"##,
            py(0.0),
            py(1.0),
            py(0.0) + 16.0
        );
    }
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let y = py(f);
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{f:.1}</text>"##,
            px(0.0),
            px(xmax),
            px(0.0) - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">correct digits</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">fraction of cases</text>"#,
        TOP + ph / 2.0
    );
    for (idx, (m, curve)) in profile.curves.iter().enumerate() {
        let mut d = String::new();
        for (i, (&t, &f)) in profile.grid.iter().zip(curve).enumerate() {
            if i == 0 {
                let _ = write!(d, "M{:.2},{:.2}", px(t), py(f));
            } else {
                let _ = write!(d, " H{:.2} V{:.2}", px(t), py(f));
            }
        }
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="2"/>"#,
            color(*m)
        );
        let ly = TOP + 10.0 + 20.0 * idx as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            color(*m),
            lx + 26.0,
            ly + 4.0,
            m.name()
        );
    }
    s.push_str("</svg>\n");
    s
}
