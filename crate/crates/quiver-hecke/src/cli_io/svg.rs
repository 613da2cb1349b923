//! SVG 1.1 drawings of KLR diagrams and alcove walks. Output is deterministic.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::Geometry;
use crate::klr::{Kernel, KlrElement, Monomial};
use crate::paths::Path;
use crate::perm;

const GAP: f64 = 36.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 200.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    )
}

/// One monomial drawn at horizontal offset `x0`; returns its width.
fn monomial_body(out: &mut String, m: &Monomial, x0: f64) -> f64 {
    let n = m.n();
    let top = m.top();
    let xs = |k: usize| x0 + GAP * (k as f64 + 1.0);
    let mid = (TOP + BOTTOM) / 2.0;
    for b in 0..n {
        let t = m.perm[b] as usize;
        let (xb, xt) = (xs(b), xs(t));
        let _ = writeln!(
            out,
            "  <path class=\"strand\" d=\"M {xb:.1} {BOTTOM:.1} C {xb:.1} {mid:.1} {xt:.1} {mid:.1} {xt:.1} {TOP:.1}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>"
        );
        let _ = writeln!(
            out,
            "  <text class=\"residue\" x=\"{xb:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            BOTTOM + 16.0,
            m.bottom[b]
        );
    }
    for t in 0..n {
        let _ = writeln!(
            out,
            "  <text class=\"residue\" x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            xs(t),
            TOP - 8.0,
            top[t]
        );
        for k in 0..m.dots[t] {
            let _ = writeln!(
                out,
                "  <circle class=\"dot\" cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"black\"/>",
                xs(t),
                TOP + 14.0 + 10.0 * k as f64
            );
        }
    }
    GAP * (n as f64 + 1.0)
}

pub fn render_monomial(m: &Monomial) -> String {
    let mut body = String::new();
    let w = monomial_body(&mut body, m, 0.0);
    format!("{}{body}</svg>\n", header(w, BOTTOM + 30.0))
}

/// All terms side by side, each preceded by its coefficient.
pub fn render_element(x: &KlrElement) -> String {
    let mut body = String::new();
    let mut x0 = 0.0;
    for (i, (m, c)) in x.terms.iter().enumerate() {
        let sign = if *c < 0 { "−" } else if i > 0 { "+" } else { "" };
        let label = if c.abs() == 1 { sign.to_string() } else { format!("{sign}{}", c.abs()) };
        if !label.is_empty() {
            let _ = writeln!(
                body,
                "  <text class=\"coeff\" x=\"{:.1}\" y=\"{:.1}\" font-size=\"16\">{label}</text>",
                x0 + 4.0,
                (TOP + BOTTOM) / 2.0
            );
            x0 += 24.0;
        }
        x0 += monomial_body(&mut body, m, x0);
    }
    format!("{}{body}</svg>\n", header(x0.max(GAP), BOTTOM + 30.0))
}

/// `y_1 ψ^2_4 e_(0,1,2,3) ⊠ y_1 ψ^2_5 e_(0,1,2,3,4) ⊠ y_1 ψ^4_2 e_(0,1,2,3)` for `e = 5`.
pub fn sample_element() -> Result<KlrElement> {
    let k = Kernel::new(5);
    let piece = |word: Vec<usize>, bottom: Vec<u8>| -> Result<KlrElement> {
        let x = k.word_from_bottom(&word, &bottom)?;
        k.y_times(1, &x)
    };
    let up = |p: usize, q: usize| (p..q).collect::<Vec<_>>();
    let a = piece(up(2, 4), vec![0, 1, 2, 3])?;
    let b = piece(up(2, 5), vec![0, 1, 2, 3, 4])?;
    let c = piece(perm::w_word(4, 2), vec![0, 1, 2, 3])?;
    Ok(a.boxtimes(&b).boxtimes(&c))
}

fn project(g: &Geometry, x: &[i64], step: usize) -> (f64, f64) {
    let y: Vec<f64> = g.shifted(x).iter().map(|&v| v as f64).collect();
    match g.h {
        0 | 1 => (y.first().copied().unwrap_or(0.0), step as f64),
        2 => (y[0] - y[1], step as f64 * 0.5),
        h => {
            let (mut u, mut v) = (0.0, 0.0);
            for (a, ya) in y.iter().enumerate() {
                let t = 2.0 * PI * a as f64 / h as f64;
                u += ya * t.cos();
                v += ya * t.sin();
            }
            (u, -v)
        }
    }
}

/// The walk of `path` through the alcove geometry, with the walls it meets (for `h ≤ 3`).
pub fn render_path(g: &Geometry, path: &Path) -> String {
    let pts = path.points(g);
    let proj: Vec<(f64, f64)> = pts.iter().enumerate().map(|(k, x)| project(g, x, k)).collect();
    let e = g.e as f64;
    let (mut lo_u, mut hi_u, mut lo_v, mut hi_v) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(u, v) in &proj {
        lo_u = lo_u.min(u);
        hi_u = hi_u.max(u);
        lo_v = lo_v.min(v);
        hi_v = hi_v.max(v);
    }
    let pad = e.max(1.0);
    let (lo_u, hi_u, lo_v, hi_v) = (lo_u - pad, hi_u + pad, lo_v - pad, hi_v + pad);
    let size = 480.0;
    let scale = size / (hi_u - lo_u).max(hi_v - lo_v);
    let map = |(u, v): (f64, f64)| ((u - lo_u) * scale + 10.0, (v - lo_v) * scale + 10.0);
    let (w, h) = ((hi_u - lo_u) * scale + 20.0, (hi_v - lo_v) * scale + 20.0);
    let mut out = header(w, h);
    let _ = writeln!(out, "  <clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"{w:.0}\" height=\"{h:.0}\"/></clipPath>");
    let _ = writeln!(out, "  <g clip-path=\"url(#view)\">");
    let walls = |out: &mut String, a: (f64, f64), b: (f64, f64)| {
        let (p, q) = (map(a), map(b));
        let _ = writeln!(
            out,
            "    <line class=\"wall\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\" stroke-width=\"0.8\"/>",
            p.0, p.1, q.0, q.1
        );
    };
    match g.h {
        2 => {
            let (a, b) = ((lo_u / e).floor() as i64, (hi_u / e).ceil() as i64);
            for r in a..=b {
                let u = r as f64 * e;
                walls(&mut out, (u, lo_v), (u, hi_v));
            }
        }
        3 => {
            let reach = (hi_u - lo_u).max(hi_v - lo_v) * 2.0;
            for root in g.positive_roots() {
                let c = 3 - root.a - root.b;
                let vals: Vec<i64> = pts.iter().map(|x| root.pair(&g.shifted(x))).collect();
                let (mn, mx) = (*vals.iter().min().unwrap_or(&0), *vals.iter().max().unwrap_or(&0));
                let (ra, rb) = ((mn as f64 / e).floor() as i64 - 1, (mx as f64 / e).ceil() as i64 + 1);
                for r in ra..=rb {
                    // y with y_a − y_b = re, moved along ε_a + ε_b − 2ε_c.
                    let base = |t: f64| {
                        let mut y = [0.0f64; 3];
                        y[root.a] = r as f64 * e / 2.0 + t;
                        y[root.b] = -(r as f64) * e / 2.0 + t;
                        y[c] = -2.0 * t;
                        let (mut u, mut v) = (0.0, 0.0);
                        for (k, yk) in y.iter().enumerate() {
                            let th = 2.0 * PI * k as f64 / 3.0;
                            u += yk * th.cos();
                            v += yk * th.sin();
                        }
                        (u, -v)
                    };
                    walls(&mut out, base(-reach), base(reach));
                }
            }
        }
        _ => {}
    }
    let line: Vec<String> = proj
        .iter()
        .map(|&p| {
            let (x, y) = map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        "    <polyline class=\"walk\" points=\"{}\" fill=\"none\" stroke=\"#c0007a\" stroke-width=\"2\"/>",
        line.join(" ")
    );
    for (k, &p) in proj.iter().enumerate() {
        let (x, y) = map(p);
        let r = if k == 0 || k + 1 == proj.len() { 4.0 } else { 2.0 };
        let _ = writeln!(out, "    <circle class=\"point\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r}\" fill=\"#c0007a\"/>");
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::AlgebraParams;
    use crate::paths::flat_path;

    #[test]
    fn sample_counts() {
        let x = sample_element().unwrap();
        assert_eq!(x.n, 13);
        let s = render_element(&x);
        assert_eq!(s.matches("class=\"strand\"").count(), 13);
        assert_eq!(s.matches("class=\"dot\"").count(), 3);
        assert_eq!(s, render_element(&sample_element().unwrap()));
    }

    #[test]
    fn walk_renders() {
        let g = Geometry::new(&AlgebraParams::new(5, vec![0], vec![3], 9).unwrap()).unwrap();
        let s = render_path(&g, &flat_path(&g, 2).unwrap());
        assert!(s.contains("class=\"walk\"") && s.contains("class=\"wall\""));
        assert_eq!(s.matches("class=\"point\"").count(), 10);
    }
}
