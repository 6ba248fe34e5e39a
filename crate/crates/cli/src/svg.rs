//! Minimal scatter plots with an identity baseline.

use std::fmt::Write as _;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 80.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Shared axis range covering both coordinates, padded by 5%.
fn range(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let finite = xs.iter().chain(ys).copied().filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
    (lo - pad, hi + pad)
}

/// `points` against each other on equal axes, with the line `y = x`.
pub fn scatter(title: &str, x_label: &str, y_label: &str, xs: &[f64], ys: &[f64]) -> String {
    let (lo, hi) = range(xs, ys);
    let plot = SIZE - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v - lo) / (hi - lo) * plot;
    let sy = |v: f64| SIZE - MARGIN - (v - lo) / (hi - lo) * plot;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    s.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    let _ = writeln!(
        s,
        r#"<text x="400" y="40" text-anchor="middle" font-family="sans-serif" font-size="20">{}</text>"#,
        escape(title)
    );
    let (x0, x1, y0, y1) = (MARGIN, SIZE - MARGIN, SIZE - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        r#"<rect x="{x0}" y="{y1}" width="{plot}" height="{plot}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let v = lo + (hi - lo) * k as f64 / 4.0;
        let (px, py) = (sx(v), sy(v));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 6.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">{v:.3}</text>"#,
            y0 + 22.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#,
            x0 - 6.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{v:.3}</text>"#,
            x0 - 10.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="400" y="{:.0}" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        SIZE - 25.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="25" y="400" text-anchor="middle" font-family="sans-serif" font-size="16" transform="rotate(-90 25 400)">{}</text>"#,
        escape(y_label)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="black" stroke-width="1.5"/>"#
    );
    s.push_str("<g fill=\"steelblue\" fill-opacity=\"0.6\">\n");
    for (&x, &y) in xs.iter().zip(ys) {
        if x.is_finite() && y.is_finite() {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#,
                sx(x),
                sy(y)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
