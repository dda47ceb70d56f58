//! Minimal SVG rendering of a swept solution family.
//!
//! Two stacked panels over θ ∈ [0, 2π): |s(e^{iθ})| on top and arg p(e^{iθ})
//! below. Boundary royal nodes of the data are drawn as dashed vertical lines.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use royal_gamma::pipeline::SolveOutcome;
use royal_gamma::unimodular;

const WIDTH: f64 = 800.0;
const PANEL_H: f64 = 260.0;
const MARGIN: f64 = 40.0;
const SAMPLES: usize = 400;
const MAX_CURVES: usize = 16;

fn x_of(theta: f64) -> f64 {
    MARGIN + theta / TAU * (WIDTH - 2.0 * MARGIN)
}

/// Maps `v` in `[lo, hi]` into panel `row` (0 or 1).
fn y_of(v: f64, lo: f64, hi: f64, row: usize) -> f64 {
    let top = MARGIN + row as f64 * (PANEL_H + MARGIN);
    let frac = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
    top + (1.0 - frac.clamp(0.0, 1.0)) * PANEL_H
}

fn colour(i: usize, n: usize) -> String {
    let hue = if n <= 1 { 0.0 } else { 300.0 * i as f64 / (n - 1) as f64 };
    format!("hsl({hue:.0},70%,45%)")
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str) {
    out.push_str("<polyline fill=\"none\" stroke-width=\"1\" stroke=\"");
    out.push_str(stroke);
    out.push_str("\" points=\"");
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    out.push_str("\"/>\n");
}

pub fn sweep_svg(outcome: &SolveOutcome) -> String {
    let total = outcome.candidates.len();
    let step = total.div_ceil(MAX_CURVES).max(1);
    let picked: Vec<_> = outcome.candidates.iter().step_by(step).collect();
    let thetas: Vec<f64> = (0..SAMPLES).map(|i| TAU * i as f64 / SAMPLES as f64).collect();

    let height = 2.0 * PANEL_H + 3.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">"
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for row in 0..2 {
        let top = MARGIN + row as f64 * (PANEL_H + MARGIN);
        let _ = writeln!(
            svg,
            "<rect x=\"{MARGIN}\" y=\"{top}\" width=\"{}\" height=\"{PANEL_H}\" fill=\"none\" stroke=\"black\"/>",
            WIDTH - 2.0 * MARGIN
        );
    }
    let _ = writeln!(svg, "<text x=\"{MARGIN}\" y=\"{}\" font-size=\"12\">|s(e^iθ)|, 0 to 2</text>", MARGIN - 8.0);
    let _ = writeln!(
        svg,
        "<text x=\"{MARGIN}\" y=\"{}\" font-size=\"12\">arg p(e^iθ), −π to π</text>",
        2.0 * MARGIN + PANEL_H - 8.0
    );

    for (i, c) in picked.iter().enumerate() {
        let stroke = colour(i, picked.len());
        let mut top = Vec::with_capacity(SAMPLES);
        let mut bottom = Vec::with_capacity(SAMPLES);
        for &th in &thetas {
            let v = c.h.eval(unimodular(th));
            let x = x_of(th);
            if v.s.norm().is_finite() {
                top.push((x, y_of(v.s.norm(), 0.0, 2.0, 0)));
            }
            if v.p.norm().is_finite() {
                bottom.push((x, y_of(v.p.arg(), -PI, PI, 1)));
            }
        }
        polyline(&mut svg, &top, &stroke);
        polyline(&mut svg, &bottom, &stroke);
    }

    let data = &outcome.data;
    for j in 0..data.k() {
        let th = data.sigma()[j].arg().rem_euclid(TAU);
        let x = x_of(th);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{MARGIN}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-dasharray=\"4 3\"/>",
            2.0 * PANEL_H + 2.0 * MARGIN
        );
    }
    svg.push_str("</svg>\n");
    svg
}
