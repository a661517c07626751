//! Static SVG plots of fidelity curves and point spectra.

use std::fmt::Write;

use crate::propagate::FidelityCurve;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

/// What to draw.
#[derive(Debug, Clone, Copy)]
pub enum Plot<'a> {
    /// Fidelity against time; the marker sits on the largest sampled value and
    /// a dashed line marks `predicted` if given.
    Curve { curve: &'a FidelityCurve, predicted: Option<f64> },
    /// Eigenvalues as dots on the real line, with the band `[-2, 2]` shaded.
    Spectrum { eigenvalues: &'a [f64] },
}

pub fn render_svg(plot: Plot<'_>) -> String {
    match plot {
        Plot::Curve { curve, predicted } => render_curve(curve, predicted),
        Plot::Spectrum { eigenvalues } => render_spectrum(eigenvalues),
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Axis { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<title>{title}</title>"#);
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
}

fn axes(out: &mut String, x_label: &str, x: &Axis, y_label: &str) {
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r##"<path d="M{x0} {MARGIN} L{x0} {y0} L{} {y0}" stroke="#333" fill="none"/>"##,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" font-size="11">{:.4}</text>"#, y0 + 16.0, x.lo);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{:.4}</text>"#,
        WIDTH - MARGIN,
        y0 + 16.0,
        x.hi
    );
    if !y_label.is_empty() {
        let _ = writeln!(out, r#"<text x="12" y="{}" font-size="12">{y_label}</text>"#, MARGIN - 12.0);
    }
}

fn render_curve(curve: &FidelityCurve, predicted: Option<f64>) -> String {
    let mut out = String::new();
    open(&mut out, "fidelity");
    let t_lo = curve.times.first().copied().unwrap_or(0.0);
    let t_hi = curve.times.last().copied().unwrap_or(1.0);
    let x = Axis::new(t_lo, t_hi, MARGIN, WIDTH - MARGIN);
    let y = Axis::new(0.0, 1.0, HEIGHT - MARGIN, MARGIN);
    axes(&mut out, "t", &x, "F");

    let points: Vec<String> = curve
        .times
        .iter()
        .zip(&curve.values)
        .map(|(&t, &f)| format!("{:.3},{:.3}", x.map(t), y.map(f)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>"##,
        points.join(" ")
    );
    if let Some(tp) = predicted {
        let px = x.map(tp);
        let _ = writeln!(
            out,
            r##"<line class="predicted" data-t="{tp}" x1="{px:.3}" y1="{MARGIN}" x2="{px:.3}" y2="{}" stroke="#999" stroke-dasharray="4 3"/>"##,
            HEIGHT - MARGIN
        );
    }
    let best = curve
        .values
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |acc, (i, &v)| match acc {
            Some((_, b)) if b >= v => acc,
            _ => Some((i, v)),
        });
    if let Some((i, f)) = best {
        let t = curve.times[i];
        let _ = writeln!(
            out,
            r##"<circle class="peak" data-t="{t}" data-f="{f}" cx="{:.3}" cy="{:.3}" r="4" fill="#c0392b"/>"##,
            x.map(t),
            y.map(f)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn render_spectrum(eigenvalues: &[f64]) -> String {
    let mut out = String::new();
    open(&mut out, "spectrum");
    let lo = eigenvalues.iter().copied().fold(-2.0, f64::min);
    let hi = eigenvalues.iter().copied().fold(2.0, f64::max);
    let pad = 0.05 * (hi - lo);
    let x = Axis::new(lo - pad, hi + pad, MARGIN, WIDTH - MARGIN);
    axes(&mut out, "lambda", &x, "");
    let mid = HEIGHT / 2.0;
    let (b0, b1) = (x.map(-2.0), x.map(2.0));
    let _ = writeln!(
        out,
        r##"<rect class="band" x="{b0:.3}" y="{}" width="{:.3}" height="80" fill="#d6e4f0"/>"##,
        mid - 40.0,
        b1 - b0
    );
    for &l in eigenvalues {
        let _ = writeln!(
            out,
            r##"<circle class="eigenvalue" data-lambda="{l}" cx="{:.3}" cy="{mid}" r="4" fill="#1f5fa8"/>"##,
            x.map(l)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(times: Vec<f64>, values: Vec<f64>) -> FidelityCurve {
        let leakage = vec![0.0; times.len()];
        FidelityCurve { times, values, leakage, tail_len: 0 }
    }

    #[test]
    fn two_point_curve_has_one_polyline() {
        let svg = render_svg(Plot::Curve { curve: &curve(vec![0.0, 1.0], vec![0.1, 0.9]), predicted: Some(0.8) });
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(r#"class="peak" data-t="1""#));
        assert!(svg.contains(r#"class="predicted" data-t="0.8""#));
    }

    #[test]
    fn empty_spectrum_draws_only_the_band() {
        let svg = render_svg(Plot::Spectrum { eigenvalues: &[] });
        assert_eq!(svg.matches(r#"class="band""#).count(), 1);
        assert_eq!(svg.matches(r#"class="eigenvalue""#).count(), 0);
    }

    #[test]
    fn spectrum_dots_outside_band() {
        let svg = render_svg(Plot::Spectrum { eigenvalues: &[-3.0, 10.0] });
        assert_eq!(svg.matches(r#"class="eigenvalue""#).count(), 2);
    }
}
