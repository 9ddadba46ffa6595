//! Plot files for sweep summaries: a gnuplot data table and a small
//! standalone SVG.

use std::io::Write;

use crate::error::Result;
use crate::harness::sweep::PointSummary;

/// Columns `sweep_value mean_overlap stderr tau`; the `tau = 1` position
/// is recorded in a comment line for the plot script.
pub fn write_gnuplot_dat<W: Write>(summary: &[PointSummary], tau_one: Option<f64>, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    writeln!(out, "# sweep_value mean_overlap stderr tau")?;
    match tau_one {
        Some(x) => writeln!(out, "# tau_one {x:?}")?,
        None => writeln!(out, "# tau_one none")?,
    }
    for s in summary {
        writeln!(out, "{:?} {:?} {:?} {:?}", s.sweep_value, s.mean_overlap, s.stderr, s.tau)?;
    }
    out.flush()?;
    Ok(())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// Mean overlap with error bars against the sweep value; `Q` axis fixed
/// to `[0, 1/2]`, dashed vertical line at `tau = 1`.
pub fn write_svg<W: Write>(summary: &[PointSummary], tau_one: Option<f64>, x_label: &str, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    let xs = summary.iter().map(|s| s.sweep_value).chain(tau_one);
    let (mut x_min, mut x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if !x_min.is_finite() {
        (x_min, x_max) = (0.0, 1.0);
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    let px = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let py = |q: f64| HEIGHT - MARGIN - q.clamp(0.0, 0.5) / 0.5 * (HEIGHT - 2.0 * MARGIN);

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    writeln!(out, r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" stroke="black" fill="none"/>"#)?;
    for q in [0.0, 0.1, 0.2, 0.3, 0.4, 0.5] {
        let y = py(q);
        writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{q:.1}</text>"#, x0 - 6.0, y + 4.0)?;
    }
    for i in 0..=4 {
        let x = x_min + (x_max - x_min) * i as f64 / 4.0;
        writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{x:.3}</text>"#, px(x), y0 + 16.0)?;
    }
    writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{x_label}</text>"#, WIDTH / 2.0, HEIGHT - 8.0)?;
    writeln!(out, r#"<text x="14" y="{:.1}" font-size="12" text-anchor="middle">Q</text>"#, HEIGHT / 2.0)?;
    if let Some(t) = tau_one {
        writeln!(
            out,
            r#"<line x1="{0:.1}" y1="{y1}" x2="{0:.1}" y2="{y0}" stroke="gray" stroke-dasharray="6,4"/>"#,
            px(t)
        )?;
    }
    let pts: Vec<&PointSummary> = summary.iter().filter(|s| s.mean_overlap.is_finite()).collect();
    if !pts.is_empty() {
        let path: Vec<String> =
            pts.iter().map(|s| format!("{:.1},{:.1}", px(s.sweep_value), py(s.mean_overlap))).collect();
        writeln!(out, r#"<polyline points="{}" stroke="steelblue" fill="none"/>"#, path.join(" "))?;
    }
    for s in pts {
        let (x, y) = (px(s.sweep_value), py(s.mean_overlap));
        let err = if s.stderr.is_finite() { s.stderr } else { 0.0 };
        writeln!(
            out,
            r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="steelblue"/>"#,
            py(s.mean_overlap - err),
            py(s.mean_overlap + err)
        )?;
        writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="steelblue"/>"#)?;
    }
    writeln!(out, "</svg>")?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(x: f64, q: f64) -> PointSummary {
        PointSummary { sweep_value: x, tau: 4.0 * x * x, mean_overlap: q, stderr: 0.01, trials: 5, failures: 0 }
    }

    #[test]
    fn dat_layout() {
        let mut buf = Vec::new();
        write_gnuplot_dat(&[point(0.1, 0.0), point(0.5, 0.4)], Some(0.25), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "# tau_one 0.25");
        assert_eq!(lines[3], "0.5 0.4 0.01 1.0");
    }

    #[test]
    fn svg_is_well_formed() {
        let mut buf = Vec::new();
        write_svg(&[point(0.1, 0.0), point(0.5, f64::NAN)], Some(0.3), "epsilon", &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<circle").count(), 1);
        assert!(text.contains("stroke-dasharray"));
        let mut empty = Vec::new();
        write_svg(&[], None, "a", &mut empty).unwrap();
    }
}
