//! SVG and TikZ output for diagrams. Coordinates are printed as decimals
//! with six places; steep edges carry the class/style `steep`.

use std::fmt::Write;

use num_traits::Signed;
use slimrect_core::diagram::{classify_edges, DiagramError};
use slimrect_core::{Diagram, LeveledLattice, Q};

use crate::format::edge_class_name;

const PLACES: u32 = 6;

/// `q` rounded half away from zero to six decimal places.
pub fn decimal(q: Q) -> String {
    let scale = 10i128.pow(PLACES);
    let (n, d) = (*q.numer() as i128, *q.denom() as i128);
    let scaled = (n.abs() * scale * 2 + d) / (2 * d);
    let sign = if n < 0 && scaled != 0 { "-" } else { "" };
    format!("{sign}{}.{:06}", scaled / scale, scaled % scale)
}

struct Frame {
    min_x: Q,
    max_y: Q,
    width: Q,
    height: Q,
}

fn frame(d: &Diagram) -> Frame {
    let xs = d.coords.iter().map(|p| p.x);
    let ys = d.coords.iter().map(|p| p.y);
    let (min_x, max_x) = (xs.clone().min().unwrap_or_default(), xs.max().unwrap_or_default());
    let (min_y, max_y) = (ys.clone().min().unwrap_or_default(), ys.max().unwrap_or_default());
    Frame { min_x, max_y, width: max_x - min_x, height: max_y - min_y }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_svg(l: &LeveledLattice, d: &Diagram) -> Result<String, DiagramError> {
    let classes = classify_edges(d)?;
    let f = frame(d);
    let unit = Q::from_integer(40);
    let margin = Q::from_integer(30);
    let px = |x: Q| decimal((x - f.min_x) * unit + margin);
    let py = |y: Q| decimal((f.max_y - y) * unit + margin);
    let two = Q::from_integer(2);
    let (w, h) = (decimal(f.width * unit + margin * two), decimal(f.height * unit + margin * two));

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(
        out,
        "<style>.edge{{stroke:#222;stroke-width:1.5}} .edge.steep{{stroke:#c0392b;stroke-width:3}} \
         .node circle{{fill:#fff;stroke:#222;stroke-width:1.5}} .node text{{font:12px sans-serif}}</style>"
    )
    .unwrap();
    for e in &classes {
        let (a, b) = (d.coords[e.edge.0], d.coords[e.edge.1]);
        writeln!(
            out,
            r#"<line class="edge {}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            edge_class_name(e.class),
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        )
        .unwrap();
    }
    let offset = Q::new(8, 40);
    for x in l.elements() {
        let p = d.coords[x];
        let name = xml_escape(l.label(x));
        writeln!(
            out,
            r#"<g class="node" id="{name}"><circle cx="{}" cy="{}" r="5"/><text x="{}" y="{}">{name}</text></g>"#,
            px(p.x),
            py(p.y),
            px(p.x + offset),
            py(p.y - offset)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn tikz_escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '_' | '&' | '%' | '$' | '#' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(c),
        }
    }
    out
}

pub fn render_tikz(l: &LeveledLattice, d: &Diagram) -> Result<String, DiagramError> {
    let classes = classify_edges(d)?;
    let scale = Q::new(1, 2);
    let at = |x: Q, y: Q| format!("({},{})", decimal(x * scale), decimal(y * scale));
    let mut out = String::new();
    out.push_str(
        "\\begin{tikzpicture}[node/.style={circle,draw,fill=white,inner sep=1.6pt},\n  \
         edge/.style={thin},\n  steep/.style={very thick,red!70!black}]\n",
    );
    for e in &classes {
        let (a, b) = (d.coords[e.edge.0], d.coords[e.edge.1]);
        let style = if e.class == slimrect_core::SlopeClass::Steep { "edge,steep" } else { "edge" };
        writeln!(out, "  \\draw[{style}] {} -- {};", at(a.x, a.y), at(b.x, b.y)).unwrap();
    }
    for x in l.elements() {
        let p = d.coords[x];
        let side = if p.x.is_negative() { "left" } else { "right" };
        writeln!(out, "  \\node[node,label={side}:{{\\small {}}}] (n{x}) at {} {{}};", tikz_escape(l.label(x)), at(p.x, p.y)).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}
