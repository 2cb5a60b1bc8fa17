//! CSV and SVG emitters for the discrete-vs-continuous entropy chart:
//! scatter points (Z, ln Z, S_J) against the line S = a + b ln Z.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 25.0;
const MARGIN_TOP: f64 = 25.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// `discrete`: (Z, ln Z, S_J) scatter points. `line`: sampled (ln Z, S).
pub fn render_csv(discrete: &[(u32, f64, f64)], line: &[(f64, f64)]) -> String {
    let mut out = String::new();
    out.push_str("# series `discrete`: (Z, ln Z, S_J) per record; series `continuous`: sampled S = a + b ln Z (Z blank)\n");
    out.push_str("series,Z,ln_Z,S\n");
    for &(z, ln_z, s) in discrete {
        let _ = writeln!(out, "discrete,{z},{ln_z:.6},{s:.6}");
    }
    for &(ln_z, s) in line {
        let _ = writeln!(out, "continuous,,{ln_z:.6},{s:.6}");
    }
    out
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, value: f64) -> f64 {
        let plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        MARGIN_LEFT + (value - self.x_min) / (self.x_max - self.x_min) * plot_width
    }

    fn y(&self, value: f64) -> f64 {
        let plot_height = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        MARGIN_TOP + (self.y_max - value) / (self.y_max - self.y_min) * plot_height
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    let span = max - min;
    if span <= 0.0 {
        (min - 0.5, max + 0.5)
    } else {
        (min - 0.05 * span, max + 0.05 * span)
    }
}

/// Self-contained SVG 1.1 scatter-plus-line chart with axes labeled
/// `ln Z` and `S`.
pub fn render_svg(discrete: &[(u32, f64, f64)], line: &[(f64, f64)]) -> String {
    let (x_min, x_max) = padded_range(discrete.iter().map(|d| d.1).chain(line.iter().map(|p| p.0)));
    let (y_min, y_max) = padded_range(discrete.iter().map(|d| d.2).chain(line.iter().map(|p| p.1)));
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "<!-- fixed 800x600 viewport; margins: left {MARGIN_LEFT}, right {MARGIN_RIGHT}, top {MARGIN_TOP}, bottom {MARGIN_BOTTOM} -->"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\" stroke-width=\"1\"/>"
    );

    // ticks and grid labels
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let x_value = frame.x_min + t * (frame.x_max - frame.x_min);
        let x_px = frame.x(x_value);
        let _ = writeln!(
            out,
            "<line x1=\"{x_px:.2}\" y1=\"{y0}\" x2=\"{x_px:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            y0 + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{x_px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{x_value:.2}</text>",
            y0 + 20.0
        );
        let y_value = frame.y_min + t * (frame.y_max - frame.y_min);
        let y_px = frame.y(y_value);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{y_px:.2}\" x2=\"{x0}\" y2=\"{y_px:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
            x0 - 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{y_value:.2}</text>",
            x0 - 9.0,
            y_px + 4.0
        );
    }

    // axis labels
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">ln Z</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">S</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    // continuous line
    let points: Vec<String> = line
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", frame.x(x), frame.y(y)))
        .collect();
    let _ = writeln!(
        out,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#c44e52\" stroke-width=\"2\"/>",
        points.join(" ")
    );

    // discrete scatter
    for &(_, ln_z, s) in discrete {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#1f6fb4\"/>",
            frame.x(ln_z),
            frame.y(s)
        );
    }

    // legend
    let lx = x0 + 15.0;
    let ly = y1 + 15.0;
    let _ = writeln!(
        out,
        "<circle cx=\"{lx}\" cy=\"{ly}\" r=\"4\" fill=\"#1f6fb4\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\">S_J (discrete)</text>",
        lx + 10.0,
        ly + 4.0
    );
    let _ = writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#c44e52\" stroke-width=\"2\"/>",
        lx - 6.0,
        ly + 18.0,
        lx + 6.0,
        ly + 18.0
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\">S = a + b ln Z (continuous)</text>",
        lx + 10.0,
        ly + 22.0
    );

    out.push_str("</svg>\n");
    out
}
