//! Grid drawings of a universe: Graphviz DOT (pinned `neato` positions) and a
//! plain SVG built from the same layout.
//!
//! Nodes sit at their first two coordinates. A label is drawn only on
//! vertices touched by an edge or carrying a significant label; significant
//! vertices are drawn in red.

use std::fmt::Write;

use crate::lattice::Universe;

const SCALE: u32 = 32;
const MARGIN: u32 = 24;

struct Node {
    x: u32,
    y: u32,
    name: String,
    label: Option<u32>,
    significant: bool,
}

struct Layout {
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
}

fn layout(universe: &Universe, labels: Option<&[u32]>) -> Layout {
    let mut touched = vec![false; universe.len()];
    let edges = universe.edge_indices();
    for &(s, t) in &edges {
        touched[s] = true;
        touched[t] = true;
    }
    let nodes = universe
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let c = v.coords();
            let label = labels.map(|l| l[i]);
            let significant = label.is_some_and(|l| l < v.min_coord());
            Node {
                x: c.first().copied().unwrap_or(0),
                y: c.get(1).copied().unwrap_or(0),
                name: v.to_string(),
                label: label.filter(|_| touched[i] || significant),
                significant,
            }
        })
        .collect();
    Layout { nodes, edges }
}

/// DOT text; `labels`, if given, is indexed like `universe.vertices()`.
pub fn render_dot(universe: &Universe, labels: Option<&[u32]>) -> String {
    let mut out = String::from("digraph universe {\n");
    if universe.is_empty() {
        out.push_str("}\n");
        return out;
    }
    let layout = layout(universe, labels);
    out.push_str("  graph [layout=neato];\n");
    out.push_str("  node [shape=point, width=0.08];\n");
    for (i, n) in layout.nodes.iter().enumerate() {
        write!(
            out,
            "  v{i} [pos=\"{},{}!\", tooltip=\"{}\"",
            n.x, n.y, n.name
        )
        .unwrap();
        if let Some(l) = n.label {
            write!(out, ", shape=circle, width=0.3, label=\"{l}\"").unwrap();
        }
        if n.significant {
            out.push_str(", color=red, fontcolor=red, penwidth=2");
        }
        out.push_str("];\n");
    }
    for (s, t) in &layout.edges {
        writeln!(out, "  v{s} -> v{t};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// A standalone SVG of the DOT layout, with `y` growing upwards.
pub fn render_svg(universe: &Universe, labels: Option<&[u32]>) -> String {
    let layout = layout(universe, labels);
    let max_x = layout.nodes.iter().map(|n| n.x).max().unwrap_or(0);
    let max_y = layout.nodes.iter().map(|n| n.y).max().unwrap_or(0);
    let width = max_x * SCALE + 2 * MARGIN;
    let height = max_y * SCALE + 2 * MARGIN;
    let px = |n: &Node| (MARGIN + n.x * SCALE, MARGIN + (max_y - n.y) * SCALE);

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    out.push_str(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"19\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );
    for &(s, t) in &layout.edges {
        let (x1, y1) = px(&layout.nodes[s]);
        let (x2, y2) = px(&layout.nodes[t]);
        writeln!(
            out,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\" marker-end=\"url(#arrow)\"/>"
        )
        .unwrap();
    }
    for n in &layout.nodes {
        let (cx, cy) = px(n);
        let color = if n.significant { "red" } else { "black" };
        match n.label {
            Some(l) => {
                writeln!(
                    out,
                    "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"9\" fill=\"white\" stroke=\"{color}\"><title>{}</title></circle>",
                    n.name
                )
                .unwrap();
                writeln!(
                    out,
                    "  <text x=\"{cx}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\" fill=\"{color}\">{l}</text>",
                    cy + 4
                )
                .unwrap();
            }
            None => writeln!(
                out,
                "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"2\" fill=\"{color}\"><title>{}</title></circle>",
                n.name
            )
            .unwrap(),
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_fragment;
    use crate::labeling::Variant;
    use crate::terminal::label_all_terminal;

    #[test]
    fn fragment_dot() {
        let u = sample_fragment();
        let t = label_all_terminal(&u, Variant::Plain);
        let dot = render_dot(&u, Some(t.labels()));
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert_eq!(dot, render_dot(&u, Some(t.labels())));
        let i = u.index_of(&[5, 9].into()).unwrap();
        let line = dot
            .lines()
            .find(|l| l.starts_with(&format!("  v{i} ")))
            .unwrap();
        assert!(line.contains("pos=\"5,9!\""));
        assert!(line.contains("label=\"3\""));
        assert!(line.contains("color=red"));
        // an isolated point keeps its trivial label hidden
        let j = u.index_of(&[7, 7].into()).unwrap();
        let line = dot
            .lines()
            .find(|l| l.starts_with(&format!("  v{j} ")))
            .unwrap();
        assert!(!line.contains("label="));
    }

    #[test]
    fn empty_universe() {
        let u = Universe::new(2, [], []).unwrap();
        assert_eq!(render_dot(&u, None), "digraph universe {\n}\n");
        assert!(render_svg(&u, None).ends_with("</svg>\n"));
    }

    #[test]
    fn svg_has_one_line_per_edge() {
        let u = sample_fragment();
        let svg = render_svg(&u, None);
        assert_eq!(svg.matches("<line ").count(), 5);
        assert_eq!(svg.matches("<circle ").count(), u.len());
    }
}
