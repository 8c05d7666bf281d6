//! Static SVG line plot of a probability density with shaded well regions.

use std::fmt::Write;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub lo: f64,
    pub hi: f64,
    pub central: bool,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityPlot {
    pub title: String,
    pub xs: Vec<f64>,
    pub rho: Vec<f64>,
    pub regions: Vec<Region>,
}

/// Round tick spacing giving roughly `target` intervals over `span`.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.0 {
        2.0
    } else if norm < 7.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo, 6.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl DensityPlot {
    /// Horizontal range: where ρ exceeds 1e-6 of its peak, widened to show
    /// every well, padded by 10%.
    fn x_range(&self) -> (f64, f64) {
        let peak = self.rho.iter().fold(0.0f64, |m, r| m.max(*r));
        let mut it = self
            .xs
            .iter()
            .zip(&self.rho)
            .filter(|(_, r)| **r > 1e-6 * peak)
            .map(|(x, _)| *x);
        let (first, last) = match it.next() {
            Some(f) => (f, it.last().unwrap_or(f)),
            None => (self.xs[0], self.xs[self.xs.len() - 1]),
        };
        // Keep every well on the plot, even those the state does not occupy.
        let edges = self.regions.iter().flat_map(|r| [r.lo, r.hi]).filter(|e| e.is_finite());
        let widest = self
            .regions
            .iter()
            .map(|r| r.hi - r.lo)
            .filter(|w| w.is_finite())
            .fold(0.0f64, f64::max);
        let edge_reach = edges.fold(0.0f64, |m, e| m.max(e.abs())) + 0.5 * widest;
        let reach = first.abs().max(last.abs()).max(edge_reach) * 1.1;
        let (lo, hi) = (self.xs[0].max(-reach), self.xs[self.xs.len() - 1].min(reach));
        if hi > lo { (lo, hi) } else { (self.xs[0], self.xs[self.xs.len() - 1]) }
    }

    pub fn render(&self) -> String {
        let (x0, x1) = self.x_range();
        let peak = self.rho.iter().fold(0.0f64, |m, r| m.max(*r)).max(f64::MIN_POSITIVE);
        let y1 = peak * 1.15;
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + ph - y / y1 * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        for r in &self.regions {
            let lo = r.lo.max(x0);
            let hi = r.hi.min(x1);
            if hi <= lo {
                continue;
            }
            let fill = if r.central { "#dbe8f6" } else { "#f6e3d3" };
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{TOP:.2}" width="{:.2}" height="{ph:.2}" fill="{fill}" fill-opacity="0.7"/>"#,
                sx(lo),
                sx(hi) - sx(lo)
            );
            let _ = writeln!(
                s,
                r##"<text x="{:.2}" y="{:.2}" text-anchor="middle" fill="#333">w = {:.4}</text>"##,
                0.5 * (sx(lo) + sx(hi)),
                TOP + 16.0,
                r.weight
            );
            if r.hi < x1 {
                let _ = writeln!(
                    s,
                    r##"<line x1="{0:.2}" y1="{TOP:.2}" x2="{0:.2}" y2="{1:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
                    sx(r.hi),
                    TOP + ph
                );
            }
        }

        // Axes and ticks.
        let _ = writeln!(
            s,
            r#"<path d="M{LEFT:.2},{TOP:.2} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
            TOP + ph,
            LEFT + pw
        );
        for t in ticks(x0, x1) {
            let x = sx(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{0:.2}" x2="{x:.2}" y2="{1:.2}" stroke="black"/><text x="{x:.2}" y="{2:.2}" text-anchor="middle">{3}</text>"#,
                TOP + ph,
                TOP + ph + 5.0,
                TOP + ph + 19.0,
                label(t)
            );
        }
        for t in ticks(0.0, y1) {
            let y = sy(t);
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="black"/><text x="{1:.2}" y="{2:.2}" text-anchor="end">{3}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                y + 4.0,
                label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 10.0
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">ρ(x)</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0
        );

        let mut d = String::new();
        for (x, r) in self.xs.iter().zip(&self.rho).filter(|(x, _)| **x >= x0 && **x <= x1) {
            let _ = write!(d, "{}{:.2},{:.2}", if d.is_empty() { "M" } else { " L" }, sx(*x), sy(*r));
        }
        let _ = writeln!(s, r##"<path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##);
        s.push_str("</svg>\n");
        s
    }
}
