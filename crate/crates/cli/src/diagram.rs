use std::fmt::Write as _;

use nrgit::envelope::{table1, EnvParams};
use nrgit::polytope::{int, Rational};
use nrgit::Result;

const WIDTH: i64 = 800;
const HEIGHT: i64 = 480;
const MARGIN: i64 = 60;
const FAMILY_COLOURS: [&str; 3] = ["#1b6ca8", "#c0392b", "#27ae60"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x0: Rational,
    y1: Rational,
    sx: Rational,
    sy: Rational,
}

impl Frame {
    fn px(&self, x: &Rational) -> i64 {
        to_i64(&(int(MARGIN) + (x - &self.x0) * &self.sx))
    }

    fn py(&self, y: &Rational) -> i64 {
        to_i64(&(int(MARGIN) + (&self.y1 - y) * &self.sy))
    }
}

fn to_i64(q: &Rational) -> i64 {
    i64::try_from(&q.round().to_integer()).unwrap_or(0)
}

/// Standalone SVG of the three weight families, evaluated at `n_display`.
/// The numbers drawn are for display only.
pub fn render(params: &EnvParams, n_display: &Rational) -> Result<String> {
    let rows = table1(params);
    let mut points = Vec::with_capacity(rows.len());
    for row in &rows {
        let w = row.weight.eval_at(n_display)?;
        points.push((row, w.x.const_term().clone(), w.y.const_term().clone()));
    }
    let xs = points.iter().map(|p| p.1.clone()).chain([int(0)]);
    let ys = points.iter().map(|p| p.2.clone()).chain([int(0)]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let span = |lo: &Rational, hi: &Rational| if hi > lo { hi - lo } else { int(1) };
    let frame =
        Frame { sx: int(WIDTH - 2 * MARGIN) / span(&x0, &x1), sy: int(HEIGHT - 2 * MARGIN) / span(&y0, &y1), x0, y1 };
    let (ox, oy) = (frame.px(&int(0)), frame.py(&int(0)));

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let lin = params.lin();
    let _ = writeln!(
        svg,
        "<title>Weights of the fixed points, n={} m={} r={} N={}</title>",
        params.n(),
        lin.m(),
        lin.r(),
        n_display
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(svg, r##"<g stroke="#888" stroke-width="1">"##);
    let _ = writeln!(svg, r#"<line x1="{}" y1="{oy}" x2="{}" y2="{oy}"/>"#, MARGIN / 2, WIDTH - MARGIN / 2);
    let _ = writeln!(svg, r#"<line x1="{ox}" y1="{}" x2="{ox}" y2="{}"/>"#, MARGIN / 2, HEIGHT - MARGIN / 2);
    let _ = writeln!(svg, "</g>");
    let _ =
        writeln!(svg, r#"<text x="{}" y="{}" font-size="14" text-anchor="end">T1</text>"#, WIDTH - MARGIN / 2, oy - 8);
    let _ = writeln!(svg, r#"<text x="{}" y="{}" font-size="14">T2</text>"#, ox + 8, MARGIN / 2 + 4);
    for family in 0..3 {
        let colour = FAMILY_COLOURS[family];
        let _ = writeln!(svg, r#"<g class="family-{family}" fill="{colour}">"#);
        let members: Vec<_> = points.iter().filter(|p| p.0.family == family).collect();
        if let Some(first) = members.first() {
            let e = ["[1:0:0]", "[0:1:0]", "[0:0:1]"][family];
            let label_y = frame.py(&first.2) + if family == 2 { 22 } else { -12 };
            let label_x = frame.px(&first.1);
            let _ = writeln!(svg, r#"<text x="{label_x}" y="{label_y}" font-size="13">{e}</text>"#);
        }
        for (row, x, y) in members {
            let _ = writeln!(
                svg,
                r#"<circle cx="{}" cy="{}" r="4"><title>{} {}</title></circle>"#,
                frame.px(x),
                frame.py(y),
                escape(&row.label),
                escape(&row.weight.to_string())
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
