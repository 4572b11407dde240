//! Text, LaTeX, CSV, JSON and SVG output for matrices and tangles.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::cosetdiag::CosetDiagram;
use crate::laurent::{Coeff, SqMatrix};
use crate::tangles::{Strand, Tangle};

/// A monomial `q^i` becomes `i`, zero becomes `·`; anything else is
/// written out in full.
fn short_entry<C: Coeff>(p: &crate::laurent::Laurent<C>, dot: &str) -> String {
    if p.is_empty() {
        return dot.to_string();
    }
    match p.as_q_pow() {
        Some(e) => e.to_string(),
        None => p.to_string(),
    }
}

pub fn matrix_latex<C: Coeff>(name: &str, labels: &[String], m: &SqMatrix<C>) -> String {
    let n = m.dim();
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{array}}{{r|{}}}", "c".repeat(n));
    let head: Vec<String> = labels.iter().map(|l| latex_label(l)).collect();
    let _ = writeln!(out, "{name} & {} \\\\ \\hline", head.join(" & "));
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| short_entry(m.get(i, j), "\\cdot")).collect();
        let _ = writeln!(out, "{} & {} \\\\", latex_label(&labels[i]), row.join(" & "));
    }
    out.push_str("\\end{array}\n");
    out
}

fn latex_label(l: &str) -> String {
    if l == "∅" {
        return "\\varnothing".into();
    }
    let mut out = String::new();
    let mut rest = l;
    while let Some(pos) = rest.find('s') {
        out.push_str(&rest[..pos]);
        rest = &rest[pos + 1..];
        let end = rest.find('s').unwrap_or(rest.len());
        let _ = write!(out, "s_{{{}}}", &rest[..end]);
        rest = &rest[end..];
    }
    out.push_str(rest);
    out.replace("∧", "\\wedge ")
        .replace("∨", "\\vee ")
        .replace("∘", "\\circ ")
}

pub fn matrix_ascii<C: Coeff>(name: &str, labels: &[String], m: &SqMatrix<C>) -> String {
    let n = m.dim();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| short_entry(m.get(i, j), ".")).collect())
        .collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let lw = labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        .max(name.chars().count());
    let mut out = format!("{name:>lw$} |\n");
    for (i, row) in cells.iter().enumerate() {
        let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{:>lw$} | {}", labels[i], body.join(" "));
    }
    out
}

pub fn matrix_csv<C: Coeff>(labels: &[String], m: &SqMatrix<C>) -> String {
    let n = m.dim();
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    let mut out = String::from("\"\"");
    for l in labels {
        out.push(',');
        out.push_str(&quote(l));
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&quote(&labels[i]));
        for j in 0..n {
            out.push(',');
            let p = m.get(i, j);
            if !p.is_empty() {
                out.push_str(&quote(&p.to_string()));
            }
        }
        out.push('\n');
    }
    out
}

pub fn matrix_json<C: Coeff>(m: &SqMatrix<C>) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| m.get(i, j).to_json()).collect()))
            .collect(),
    )
}

/// Two label rows with the strands drawn between them. Northern arcs hang
/// from the top row, southern arcs rise from the bottom row, propagating
/// strands jog sideways in rows of their own. Beads are `*`.
pub fn tangle_ascii(t: &Tangle, top: Option<&CosetDiagram>, bottom: Option<&CosetDiagram>) -> String {
    let n = t.n();
    let width = 4 * n;
    let col = |p: usize| 4 * (p % n) + 1;
    let strands = t.strands();
    let north: Vec<&Strand> = strands.iter().filter(|s| s.b < n).collect();
    let south: Vec<&Strand> = strands.iter().filter(|s| s.a >= n).collect();
    let props: Vec<&Strand> = strands.iter().filter(|s| s.a < n && s.b >= n).collect();
    let depth = |s: &Strand, family: &[&Strand]| {
        fn go(s: &Strand, family: &[&Strand]) -> usize {
            1 + family
                .iter()
                .filter(|t| t.a > s.a && t.b < s.b)
                .map(|t| go(t, family))
                .max()
                .unwrap_or(0)
        }
        go(s, family)
    };
    let hn = north.iter().map(|s| depth(s, &north)).max().unwrap_or(0);
    let hs = south.iter().map(|s| depth(s, &south)).max().unwrap_or(0);
    let jogs: Vec<&&Strand> = props.iter().filter(|s| s.a % n != s.b % n || s.beads > 0).collect();
    let rows = hn + jogs.len().max(1) + hs;
    let mut grid = vec![vec![' '; width]; rows];
    let vline = |grid: &mut Vec<Vec<char>>, x: usize, from: usize, to: usize| {
        for row in grid.iter_mut().take(to).skip(from) {
            row[x] = '│';
        }
    };
    let hline = |grid: &mut Vec<Vec<char>>, y: usize, x0: usize, x1: usize, l: char, r: char, bead: bool| {
        for x in x0 + 1..x1 {
            grid[y][x] = '─';
        }
        grid[y][x0] = l;
        grid[y][x1] = r;
        if bead {
            grid[y][(x0 + x1) / 2] = '*';
        }
    };
    for s in &north {
        let (x0, x1, d) = (col(s.a), col(s.b), depth(s, &north));
        vline(&mut grid, x0, 0, d - 1);
        vline(&mut grid, x1, 0, d - 1);
        hline(&mut grid, d - 1, x0, x1, '╰', '╯', s.beads > 0);
    }
    for s in &south {
        let (x0, x1, d) = (col(s.a), col(s.b), depth(s, &south));
        let y = rows - d;
        vline(&mut grid, x0, y + 1, rows);
        vline(&mut grid, x1, y + 1, rows);
        hline(&mut grid, y, x0, x1, '╭', '╮', s.beads > 0);
    }
    let mut jog_row = hn;
    for s in &props {
        let (xt, xb) = (col(s.a), col(s.b));
        let jogging = jogs.iter().any(|j| j.a == s.a);
        if !jogging {
            vline(&mut grid, xt, 0, rows);
            continue;
        }
        let y = jog_row;
        jog_row += 1;
        vline(&mut grid, xt, 0, y);
        vline(&mut grid, xb, y + 1, rows);
        if xt == xb {
            grid[y][xt] = '*';
        } else if xt < xb {
            hline(&mut grid, y, xt, xb, '╰', '╮', s.beads > 0);
        } else {
            hline(&mut grid, y, xb, xt, '╭', '╯', s.beads > 0);
        }
    }
    let labels = |d: Option<&CosetDiagram>, fallback: &dyn Fn(usize) -> String| {
        let mut row = vec![' '; width];
        for p in 0..n {
            let text: Vec<char> = match d {
                Some(d) => vec![d.symbols[p].pretty()],
                None => fallback(p).chars().collect(),
            };
            for (k, c) in text.into_iter().enumerate() {
                if col(p) + k < width {
                    row[col(p) + k] = c;
                }
            }
        }
        row
    };
    let mut out = String::new();
    let mut push = |row: &[char]| {
        let line: String = row.iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push(&labels(top, &|p| (p + 1).to_string()));
    for row in &grid {
        push(row);
    }
    push(&labels(bottom, &|p| format!("{}'", p + 1)));
    out
}

/// SVG picture: arcs and strands as cubic curves, beads as filled dots.
pub fn tangle_svg(t: &Tangle, top: Option<&CosetDiagram>, bottom: Option<&CosetDiagram>) -> String {
    let n = t.n();
    let step = 40.0;
    let (y_top, y_bot) = (30.0, 150.0);
    let width = step * n as f64 + step;
    let x = |p: usize| step * ((p % n) as f64 + 1.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="180" viewBox="0 0 {width} 180">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{y_top}" width="{}" height="{}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##,
        step / 2.0,
        step * n as f64,
        y_bot - y_top
    );
    for s in t.strands() {
        let (xa, xb) = (x(s.a), x(s.b));
        let (ya, yb) = (if s.a < n { y_top } else { y_bot }, if s.b < n { y_top } else { y_bot });
        let reach = 0.4 * (xa - xb).abs().max(step) + 10.0;
        let (c1, c2) = match (s.a < n, s.b < n) {
            (true, true) => (ya + reach, yb + reach),
            (false, false) => (ya - reach, yb - reach),
            _ => (ya + 50.0, yb - 50.0),
        };
        let _ = writeln!(
            out,
            r#"<path d="M {xa} {ya} C {xa} {c1}, {xb} {c2}, {xb} {yb}" fill="none" stroke="black" stroke-width="2"/>"#
        );
        if s.beads > 0 {
            let mx = (xa + 3.0 * xa + 3.0 * xb + xb) / 8.0;
            let my = (ya + 3.0 * c1 + 3.0 * c2 + yb) / 8.0;
            let _ = writeln!(out, r#"<circle cx="{mx}" cy="{my}" r="5" fill="black"/>"#);
        }
    }
    for (d, y) in [(top, y_top - 10.0), (bottom, y_bot + 22.0)] {
        if let Some(d) = d {
            for (p, s) in d.symbols.iter().enumerate() {
                let _ = writeln!(
                    out,
                    r#"<text x="{}" y="{y}" font-size="16" text-anchor="middle">{}</text>"#,
                    x(p),
                    s.pretty()
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn tangle_json(t: &Tangle, top: Option<&CosetDiagram>, bottom: Option<&CosetDiagram>) -> Value {
    let mut v = t.to_json();
    if let Some(d) = top {
        v["top"] = json!(d.to_string());
    }
    if let Some(d) = bottom {
        v["bottom"] = json!(d.to_string());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Node;
    use crate::tangles::{generator_tangle, TangleKind};

    #[test]
    fn latex_dots() {
        let m = SqMatrix::<i64>::from_exponent_grid("0 .\n1 0").unwrap();
        let s = matrix_latex("\\Delta", &["s1".into(), "∅".into()], &m);
        assert!(s.contains("s_{1} & 0 & \\cdot \\\\"));
        assert!(s.contains("\\varnothing & 1 & 0 \\\\"));
    }

    #[test]
    fn ascii_generator() {
        let e = generator_tangle(Node::Prime, TangleKind::C, 3).unwrap();
        let pic = tangle_ascii(&e, None, None);
        let lines: Vec<&str> = pic.lines().collect();
        assert_eq!(lines.first(), Some(&" 1   2   3"));
        assert_eq!(lines.last(), Some(&" 1'  2'  3'"));
        assert_eq!(pic.matches('*').count(), 2);
    }

    #[test]
    fn svg_has_beads() {
        let e = generator_tangle(Node::DoublePrime, TangleKind::D, 4).unwrap();
        let s = tangle_svg(&e, None, None);
        assert_eq!(s.matches("<circle").count(), 2);
        assert_eq!(s.matches("<path").count(), 4);
    }
}
