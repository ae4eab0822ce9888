//! Minimal SVG scatter plots of root loci with rays overlaid.

use std::fmt::Write;

use num_complex::Complex64;

const SIZE: f64 = 600.0;
const PAD: f64 = 20.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Clone, Debug, Default)]
pub struct Scatter {
    series: Vec<(String, Vec<Complex64>)>,
    rays: Vec<f64>,
}

impl Scatter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn series(mut self, label: &str, points: Vec<Complex64>) -> Self {
        self.series.push((label.into(), points));
        self
    }

    /// Ray from the origin at angle `theta`.
    pub fn ray(mut self, theta: f64) -> Self {
        self.rays.push(theta);
        self
    }

    /// Square plot centered at the origin, scaled to the largest modulus.
    pub fn render(&self) -> String {
        let r = self.series.iter().flat_map(|(_, p)| p.iter().map(|z| z.norm())).fold(1.0, f64::max) * 1.05;
        let k = (SIZE / 2.0 - PAD) / r;
        let px = |z: Complex64| (SIZE / 2.0 + k * z.re, SIZE / 2.0 - k * z.im);
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let (cx, cy) = px(Complex64::new(0.0, 0.0));
        for &t in &self.rays {
            let (x, y) = px(Complex64::from_polar(r, t));
            let _ = writeln!(
                s,
                r##"<line x1="{cx:.2}" y1="{cy:.2}" x2="{x:.2}" y2="{y:.2}" stroke="#999" stroke-dasharray="4 3"/>"##
            );
        }
        for (i, (label, pts)) in self.series.iter().enumerate() {
            let c = COLORS[i % COLORS.len()];
            let _ = writeln!(s, r#"<g fill="{c}"><title>{label}</title>"#);
            for z in pts {
                let (x, y) = px(*z);
                let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5"/>"#);
            }
            let _ = writeln!(s, "</g>");
            let _ = writeln!(s, r#"<text x="{PAD}" y="{:.0}" fill="{c}" font-size="12">{label}</text>"#, PAD + 14.0 * (i + 1) as f64);
        }
        s.push_str("</svg>\n");
        s
    }
}
