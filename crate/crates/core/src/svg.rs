//! SVG 1.1 drawings of dissections with each side length written inside
//! its square.

use std::fmt::Write;

use crate::dissection::Dissection;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Pixels per unit length.
    pub scale: f64,
    pub stroke: f64,
    /// Fixed label size; `None` scales labels with their square.
    pub font_size: Option<f64>,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: 4.0, stroke: 1.0, font_size: None, margin: 2.0 }
    }
}

/// Trims trailing zeros so output is stable and compact.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

pub fn render_svg(d: &Dissection, opts: &SvgOptions) -> String {
    let k = opts.scale;
    let m = opts.margin;
    let (w, h) = (d.width() as f64 * k, d.height() as f64 * k);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(w + 2.0 * m),
        num(h + 2.0 * m),
        num(w + 2.0 * m),
        num(h + 2.0 * m)
    );
    let _ = writeln!(out, "<title>{}x{} order {}</title>", d.width(), d.height(), d.order());
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"black\" stroke-width=\"{}\" transform=\"translate({} {})\">",
        num(opts.stroke),
        num(m),
        num(m)
    );
    let _ = writeln!(out, "<rect class=\"outline\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/>", num(w), num(h));
    for e in d.elements() {
        let _ = writeln!(
            out,
            "<rect class=\"element\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
            num(e.x as f64 * k),
            num(e.y as f64 * k),
            num(e.size as f64 * k),
            num(e.size as f64 * k)
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        "<g fill=\"black\" stroke=\"none\" font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\" transform=\"translate({} {})\">",
        num(m),
        num(m)
    );
    for e in d.elements() {
        let side = e.size as f64 * k;
        let digits = e.size.to_string().len() as f64;
        let font = opts.font_size.unwrap_or_else(|| (side * 0.5).min(side * 0.9 / (0.6 * digits)));
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
            num(e.x as f64 * k + side / 2.0),
            num(e.y as f64 * k + side / 2.0),
            num(font),
            e.size
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissection::Element;

    #[test]
    fn two_unit_squares() {
        let d = Dissection::new(2, 1, vec![Element::new(0, 0, 1), Element::new(1, 0, 1)]);
        let s = render_svg(&d, &SvgOptions { scale: 10.0, margin: 0.0, ..Default::default() });
        assert_eq!(s.matches("<rect").count(), 3);
        assert!(s.contains("<rect class=\"element\" x=\"10\" y=\"0\" width=\"10\" height=\"10\"/>"));
        assert!(s.contains("<text x=\"5\" y=\"5\" font-size=\"5\">1</text>"));
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(2.5), "2.5");
        assert_eq!(num(1.0 / 3.0), "0.333");
    }
}
