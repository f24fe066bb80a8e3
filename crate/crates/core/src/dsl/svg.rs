use std::fmt::Write;

use crate::front::{FrontDiagram, MorseEvent};
use crate::surgery::ContactSurgeryDiagram;

use super::print::coefficient_string;

const DX: i64 = 40;
const DY: i64 = 30;
const MARGIN: i64 = 30;

/// Schematic rendering of a front: strands run left to right as smooth
/// tracks, cusps are marked, and crossings show the descending strand on
/// top (the same convention the invariants use). Output is byte-identical
/// for identical input. Returns `None` for abstract diagrams.
pub fn render_svg(diagram: &ContactSurgeryDiagram) -> Option<String> {
    let front = diagram.link().as_front()?;
    let labels: Vec<String> = (0..diagram.component_count())
        .map(|i| coefficient_string(diagram.coefficient(i)))
        .collect();
    Some(render_front(front, &labels))
}

/// Renders a bare front (no coefficient labels).
pub fn render_front_svg(front: &FrontDiagram) -> String {
    render_front(front, &[])
}

fn render_front(front: &FrontDiagram, labels: &[String]) -> String {
    let events = front.events();
    let m = events.len() as i64;

    // Stack snapshots between events; entries are strand ids.
    let mut states: Vec<Vec<usize>> = vec![Vec::new()];
    let mut next_id = 0usize;
    for ev in events {
        let mut s = states.last().unwrap().clone();
        match *ev {
            MorseEvent::LeftCusp(slot) => {
                s.insert(slot - 1, next_id);
                s.insert(slot, next_id + 1);
                next_id += 2;
            }
            MorseEvent::RightCusp(slot) => {
                s.remove(slot - 1);
                s.remove(slot - 1);
            }
            MorseEvent::Crossing(slot) => s.swap(slot - 1, slot),
        }
        states.push(s);
    }

    // Event index of each component's first left cusp, for label placement.
    let first_cusps = front.component_first_cusps();

    let max_live = states.iter().map(Vec::len).max().unwrap_or(0) as i64;
    let width = 2 * MARGIN + DX * m.max(1);
    let height = 2 * MARGIN + DY * (max_live + 1);
    let x = |col: i64| MARGIN + DX * col;
    let y = |slot: i64| MARGIN + DY * slot;

    let mut body = String::new();
    let mut cusp_markers = String::new();
    let mut crossing_markers = String::new();
    let mut overdraw = String::new();
    let mut label_texts = String::new();

    let track = |out: &mut String, x1: i64, y1: i64, x2: i64, y2: i64| {
        if y1 == y2 {
            let _ = write!(out, r#"<path d="M{x1} {y1} L{x2} {y2}"/>"#);
        } else {
            let xm = (x1 + x2) / 2;
            let _ = write!(
                out,
                r#"<path d="M{x1} {y1} C{xm} {y1} {xm} {y2} {x2} {y2}"/>"#
            );
        }
        out.push('\n');
    };
    // Strands untouched by the event flow smoothly between their slots.
    let continue_strands =
        |out: &mut String, before: &[usize], after: &[usize], col: i64, skip: &[usize]| {
            for (pos, id) in after.iter().enumerate() {
                if skip.contains(&pos) {
                    continue;
                }
                let old = before.iter().position(|o| o == id).unwrap();
                track(out, x(col), y(old as i64 + 1), x(col + 1), y(pos as i64 + 1));
            }
        };

    for (t, ev) in events.iter().enumerate() {
        let col = t as i64;
        let before = &states[t];
        let after = &states[t + 1];
        let xm = x(col) + DX / 2;
        match *ev {
            MorseEvent::LeftCusp(slot) => {
                let yu = y(slot as i64);
                let yl = y(slot as i64 + 1);
                let ymid = (yu + yl) / 2;
                let x2 = x(col + 1);
                for yb in [yu, yl] {
                    let _ = write!(
                        body,
                        r#"<path d="M{xm} {ymid} C{x3} {yb} {x4} {yb} {x2} {yb}"/>"#,
                        x3 = xm + DX / 8,
                        x4 = xm + DX / 4,
                    );
                    body.push('\n');
                }
                let _ = write!(
                    cusp_markers,
                    r#"<circle class="cusp" cx="{xm}" cy="{ymid}" r="2"/>"#
                );
                cusp_markers.push('\n');
                if let Some(comp) = first_cusps.iter().position(|&(ev_idx, _)| ev_idx == t) {
                    if let Some(text) = labels.get(comp) {
                        if !text.is_empty() {
                            let _ = write!(
                                label_texts,
                                r#"<text x="{lx}" y="{ly}">{text}</text>"#,
                                lx = xm - 12,
                                ly = ymid - 10,
                            );
                            label_texts.push('\n');
                        }
                    }
                }
                continue_strands(&mut body, before, after, col, &[slot - 1, slot]);
            }
            MorseEvent::RightCusp(slot) => {
                let yu = y(slot as i64);
                let yl = y(slot as i64 + 1);
                let ymid = (yu + yl) / 2;
                let x1 = x(col);
                for yb in [yu, yl] {
                    let _ = write!(
                        body,
                        r#"<path d="M{x1} {yb} C{x3} {yb} {x4} {yb} {xm} {ymid}"/>"#,
                        x3 = xm - DX / 4,
                        x4 = xm - DX / 8,
                    );
                    body.push('\n');
                }
                let _ = write!(
                    cusp_markers,
                    r#"<circle class="cusp" cx="{xm}" cy="{ymid}" r="2"/>"#
                );
                cusp_markers.push('\n');
                continue_strands(&mut body, before, after, col, &[]);
            }
            MorseEvent::Crossing(slot) => {
                let yu = y(slot as i64);
                let yl = y(slot as i64 + 1);
                let ymid = (yu + yl) / 2;
                continue_strands(&mut body, before, after, col, &[]);
                // White gap under the crossing, then the descending (over)
                // strand redrawn on top.
                let _ = write!(
                    overdraw,
                    r##"<circle cx="{xm}" cy="{ymid}" r="5" fill="#ffffff" stroke="none"/>"##
                );
                overdraw.push('\n');
                let x1 = x(col);
                let x2 = x(col + 1);
                let _ = write!(
                    overdraw,
                    r#"<path d="M{x1} {yu} C{xm} {yu} {xm} {yl} {x2} {yl}"/>"#
                );
                overdraw.push('\n');
                let _ = write!(
                    crossing_markers,
                    r#"<circle class="crossing" cx="{xm}" cy="{ymid}" r="1"/>"#
                );
                crossing_markers.push('\n');
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    let _ = writeln!(out, r##"<g fill="none" stroke="#000000" stroke-width="2">"##);
    out.push_str(&body);
    out.push_str(&overdraw);
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g fill="#000000" stroke="none">"##);
    out.push_str(&cusp_markers);
    out.push_str(&crossing_markers);
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g font-family="monospace" font-size="13" fill="#000000">"##
    );
    out.push_str(&label_texts);
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
