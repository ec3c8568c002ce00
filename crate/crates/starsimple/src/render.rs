//! Meander-style SVG rendering: `e'` as a horizontal red segment, `e` as a
//! black chain of stacked semicircular arcs with vertical end stubs, markers
//! as filled dots.
//!
//! Only wrap-free drawings render this way: every arc of `e` must stay
//! between its two crossings, which holds exactly when the signs alternate
//! along `e` (each piece leaves on the side the previous crossing entered).
//! All constructions are wrap-free; drawings that wrap around an endpoint
//! of `e'` are rejected.

use thiserror::Error;

use crate::drawing::TwoEdgeDrawing;
use crate::map::CURVE_EP;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("drawing wraps around an endpoint of e' and has no stacked-arc rendering")]
    WrapNotRenderable,
}

const UNIT: i64 = 40;
const STUB: i64 = 24;
const MARGIN: i64 = 40;
const DOT: i64 = 4;

/// Renders a wrap-free drawing as a deterministic SVG document.
pub fn render_svg(d: &TwoEdgeDrawing) -> Result<String, RenderError> {
    let n = d.n() as i64;
    let order = d.order_e();
    let signs = d.signs();

    // Wrap-free = alternating signs along e.
    for w in order.windows(2) {
        if signs[w[0] as usize - 1] == signs[w[1] as usize - 1] {
            return Err(RenderError::WrapNotRenderable);
        }
    }

    let x_of = |id: u32| id as i64 * UNIT;

    // Arcs between consecutive crossings along e, to size the canvas.
    let mut max_up: i64 = STUB;
    let mut max_down: i64 = STUB;
    let mut arcs = Vec::new();
    for w in order.windows(2) {
        let (xa, xb) = (x_of(w[0]), x_of(w[1]));
        // After a downward crossing (+1) the piece runs below.
        let below = signs[w[0] as usize - 1] > 0;
        let r = (xb - xa).abs() / 2;
        if below {
            max_down = max_down.max(r);
        } else {
            max_up = max_up.max(r);
        }
        arcs.push((xa, xb, !below));
    }

    let base = MARGIN + max_up;
    let width = (n + 1) * UNIT + 2 * MARGIN;
    let height = base + max_down + MARGIN;
    let left = MARGIN;

    let mut svg = String::new();
    svg.push_str(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    svg.push('\n');
    svg.push_str(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    ));
    svg.push('\n');

    let mut dots: Vec<(i64, i64)> = Vec::new();

    // e': horizontal red segment with endpoint dots.
    svg.push_str(&format!(
        r##"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="#c00000" stroke-width="2"/>"##,
        left,
        left + (n + 1) * UNIT
    ));
    svg.push('\n');
    dots.push((left, base));
    dots.push((left + (n + 1) * UNIT, base));

    if n == 0 {
        // Two disjoint strokes: e as a vertical stroke beside e'.
        let x = left + UNIT / 2;
        svg.push_str(&format!(
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black" stroke-width="2"/>"#,
            base - STUB - UNIT,
            base - STUB
        ));
        svg.push('\n');
        dots.push((x, base - STUB - UNIT));
        dots.push((x, base - STUB));
    } else {
        let first = order[0];
        let last = order[order.len() - 1];
        // The start stub comes from above when the first crossing is
        // downward (+1).
        let start_above = signs[first as usize - 1] > 0;
        let end_below = signs[last as usize - 1] > 0;
        let start_y = if start_above {
            base - STUB
        } else {
            base + STUB
        };
        let end_y = if end_below { base + STUB } else { base - STUB };
        let mut path = format!(
            "M {} {} L {} {}",
            left + x_of(first),
            start_y,
            left + x_of(first),
            base
        );
        for (xa, xb, upper) in &arcs {
            let r = (xb - xa).abs() / 2;
            let rightward = xb > xa;
            // Screen-clockwise (sweep 1) bulges up when moving right.
            let sweep = match (upper, rightward) {
                (true, true) | (false, false) => 1,
                _ => 0,
            };
            path.push_str(&format!(" A {r} {r} 0 0 {sweep} {} {base}", left + xb));
        }
        path.push_str(&format!(" L {} {}", left + x_of(last), end_y));
        svg.push_str(&format!(
            r#"<path d="{path}" fill="none" stroke="black" stroke-width="2"/>"#
        ));
        svg.push('\n');
        dots.push((left + x_of(first), start_y));
        dots.push((left + x_of(last), end_y));
    }

    // Markers: each point face gets a dot beside its leftmost e' piece, on
    // the face's side of that piece.
    let map = d.map();
    for f in d.points() {
        let face = map.face(*f).expect("point face exists");
        let mut best: Option<(usize, bool)> = None; // (e' edge position, below?)
        for &dart in &face.darts {
            let edge = map.edge_of(dart);
            if map.edge_curve(edge) != CURVE_EP {
                continue;
            }
            let pos = map
                .curve(CURVE_EP)
                .edges
                .iter()
                .position(|&e| e == edge)
                .expect("edge belongs to e'");
            // Face cycles keep the face on the right of each dart: the
            // forward dart of an e' piece has the below side on its right.
            let below = dart == map.edge_darts(edge)[0];
            if best.is_none_or(|(p, _)| pos < p) {
                best = Some((pos, below));
            }
        }
        if let Some((pos, below)) = best {
            let x = left + pos as i64 * UNIT + UNIT / 2;
            let y = if below { base + 14 } else { base - 14 };
            dots.push((x, y));
        }
    }

    for (x, y) in dots {
        svg.push_str(&format!(
            r#"<circle cx="{x}" cy="{y}" r="{DOT}" fill="black"/>"#
        ));
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
