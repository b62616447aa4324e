//! Column tables and their CSV / SVG renderings.

use std::fmt::Write as _;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// trimmed, exponent form outside `[1e-4, 1e12)`. Infinities print as
/// `inf` / `-inf`.
pub fn fmt_g12(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Integer(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Number(x) => fmt_g12(*x),
            Cell::Integer(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Number(x) => Some(*x),
            Cell::Integer(i) => Some(*i as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Number(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Number)
    }
}

/// Header comments, a header row and data rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            ..Self::default()
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            writeln!(out, "# {c}").unwrap();
        }
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    /// Line plot of every numeric column against the first one. Divergent
    /// points break the line; the y range is cut at the 90th percentile of
    /// finite values so divergences do not flatten the curves.
    pub fn to_svg(&self, title: &str) -> String {
        const W: f64 = 720.0;
        const H: f64 = 480.0;
        const M: f64 = 60.0;
        const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

        let xs: Vec<Option<f64>> = self.rows.iter().map(|r| r[0].as_f64()).collect();
        let series: Vec<(String, Vec<Option<f64>>)> = (1..self.header.len())
            .map(|j| {
                let ys = self.rows.iter().map(|r| r[j].as_f64()).collect();
                (self.header[j].clone(), ys)
            })
            .collect();

        let finite_x: Vec<f64> = xs.iter().flatten().copied().filter(|v| v.is_finite()).collect();
        let mut finite_y: Vec<f64> = series
            .iter()
            .flat_map(|(_, ys)| ys.iter().flatten().copied())
            .filter(|v| v.is_finite())
            .collect();
        finite_y.sort_by(f64::total_cmp);
        let (x0, x1) = bounds(&finite_x);
        let y1 = finite_y
            .get((finite_y.len() as f64 * 0.9) as usize)
            .or(finite_y.last())
            .copied()
            .unwrap_or(1.0)
            * 1.2;
        let y0 = finite_y.first().copied().unwrap_or(0.0).min(0.0);
        let y1 = if y1 > y0 { y1 } else { y0 + 1.0 };

        let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
        let sy = |y: f64| H - M - (y.min(y1) - y0) / (y1 - y0) * (H - 2.0 * M);

        let mut svg = String::new();
        writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#).unwrap();
        writeln!(svg, r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#).unwrap();
        writeln!(
            svg,
            r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - 2.0 * M,
            H - 2.0 * M
        )
        .unwrap();
        writeln!(svg, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#, W / 2.0, escape(title)).unwrap();
        for (label, x, anchor) in [(fmt_g12(x0), M, "start"), (fmt_g12(x1), W - M, "end")] {
            writeln!(svg, r#"<text x="{x}" y="{}" text-anchor="{anchor}" font-size="12">{label}</text>"#, H - M + 18.0).unwrap();
        }
        for (label, y) in [(fmt_g12(y0), H - M), (fmt_g12(y1), M)] {
            writeln!(svg, r#"<text x="{}" y="{y}" text-anchor="end" font-size="12">{label}</text>"#, M - 6.0).unwrap();
        }
        writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, H - 15.0, escape(&self.header[0])).unwrap();

        for (k, (name, ys)) in series.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            for segment in segments(&xs, ys) {
                let pts: Vec<String> = segment
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                    .collect();
                writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" ")).unwrap();
            }
            let ly = M + 16.0 + 16.0 * k as f64;
            writeln!(
                svg,
                r#"<text x="{}" y="{ly}" text-anchor="end" font-size="12" fill="{color}">{}</text>"#,
                W - M - 8.0,
                escape(name)
            )
            .unwrap();
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi > lo {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn segments(xs: &[Option<f64>], ys: &[Option<f64>]) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (x, y) in xs.iter().zip(ys) {
        match (x, y) {
            (Some(x), Some(y)) if x.is_finite() && y.is_finite() => current.push((*x, *y)),
            _ => {
                if current.len() > 1 {
                    out.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
            }
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
