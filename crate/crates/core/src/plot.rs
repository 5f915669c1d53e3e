//! Standalone SVG rendering of evaluation-count curves: mean
//! evaluations-to-target versus instance size per algorithm (and ratio), with
//! one-standard-deviation error bars on a logarithmic vertical axis. Output
//! bytes depend only on the input rows.

use crate::experiment::{summarize, ResultRow};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 60.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Curve {
    label: String,
    /// (n, mean, stddev)
    points: Vec<(usize, f64, f64)>,
}

fn collect_curves(rows: &[ResultRow]) -> Vec<Curve> {
    let summary = summarize(rows);
    let mut labels: Vec<String> = summary
        .iter()
        .map(|s| match &s.alpha {
            Some(a) => format!("{} (alpha={a})", s.algorithm),
            None => s.algorithm.clone(),
        })
        .collect();
    labels.sort();
    labels.dedup();
    labels
        .into_iter()
        .map(|label| {
            let mut points: Vec<(usize, f64, f64)> = summary
                .iter()
                .filter(|s| {
                    let key = match &s.alpha {
                        Some(a) => format!("{} (alpha={a})", s.algorithm),
                        None => s.algorithm.clone(),
                    };
                    key == label && s.mean_fe.is_some()
                })
                .map(|s| (s.n, s.mean_fe.unwrap(), s.stddev_fe.unwrap_or(0.0)))
                .collect();
            points.sort_by_key(|p| p.0);
            Curve { label, points }
        })
        .collect()
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the rows as a standalone SVG document. Empty input produces an
/// empty-axes plot.
pub fn render_svg(rows: &[ResultRow], title: &str) -> String {
    let curves = collect_curves(rows);
    let xs: Vec<usize> = {
        let mut v: Vec<usize> = curves
            .iter()
            .flat_map(|c| c.points.iter().map(|p| p.0))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (x_min, x_max) = match (xs.first(), xs.last()) {
        (Some(&a), Some(&b)) if a != b => (a as f64, b as f64),
        (Some(&a), _) => (a as f64 - 1.0, a as f64 + 1.0),
        _ => (0.0, 1.0),
    };
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for c in &curves {
        for &(_, mean, std) in &c.points {
            y_lo = y_lo.min((mean - std).max(1.0));
            y_hi = y_hi.max(mean + std);
        }
    }
    if !y_lo.is_finite() || !y_hi.is_finite() {
        y_lo = 1.0;
        y_hi = 10.0;
    }
    let log_lo = y_lo.log10().floor();
    let log_hi = (y_hi.log10().ceil()).max(log_lo + 1.0);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let x_of = |n: f64| MARGIN_L + (n - x_min) / (x_max - x_min) * plot_w;
    let y_of = |v: f64| {
        let clamped = v.max(1.0).log10();
        MARGIN_T + (log_hi - clamped) / (log_hi - log_lo) * plot_h
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0
    ));

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(MARGIN_L),
        fmt(MARGIN_T),
        fmt(MARGIN_L),
        fmt(HEIGHT - MARGIN_B)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(MARGIN_L),
        fmt(HEIGHT - MARGIN_B),
        fmt(WIDTH - MARGIN_R),
        fmt(HEIGHT - MARGIN_B)
    ));

    // Decade grid lines and labels on the log axis.
    let mut decade = log_lo as i64;
    while decade <= log_hi as i64 {
        let y = y_of(10f64.powi(decade as i32));
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n",
            fmt(MARGIN_L),
            fmt(y),
            fmt(WIDTH - MARGIN_R),
            fmt(y)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">1e{decade}</text>\n",
            fmt(MARGIN_L - 8.0),
            fmt(y + 4.0)
        ));
        decade += 1;
    }
    for &n in &xs {
        let x = x_of(n as f64);
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{n}</text>\n",
            fmt(x),
            fmt(HEIGHT - MARGIN_B + 18.0)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">problem size n</text>\n",
        fmt(MARGIN_L + plot_w / 2.0),
        fmt(HEIGHT - 16.0)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">evaluations to target</text>\n",
        fmt(MARGIN_T + plot_h / 2.0),
        fmt(MARGIN_T + plot_h / 2.0)
    ));

    for (ci, curve) in curves.iter().enumerate() {
        let color = PALETTE[ci % PALETTE.len()];
        if !curve.points.is_empty() {
            let path: Vec<String> = curve
                .points
                .iter()
                .map(|&(n, mean, _)| format!("{},{}", fmt(x_of(n as f64)), fmt(y_of(mean))))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                path.join(" ")
            ));
        }
        for &(n, mean, std) in &curve.points {
            let x = x_of(n as f64);
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\"/>\n",
                fmt(x),
                fmt(y_of(mean + std)),
                fmt(x),
                fmt(y_of((mean - std).max(1.0)))
            ));
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\n",
                fmt(x),
                fmt(y_of(mean))
            ));
        }
        // Legend entry.
        let ly = MARGIN_T + 16.0 * ci as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            fmt(WIDTH - MARGIN_R - 180.0),
            fmt(ly),
            fmt(WIDTH - MARGIN_R - 150.0),
            fmt(ly)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            fmt(WIDTH - MARGIN_R - 144.0),
            fmt(ly + 4.0),
            curve.label
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::ALGO_PAYOFF;

    #[test]
    fn empty_rows_render() {
        let svg = render_svg(&[], "empty");
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn deterministic_bytes_and_curves() {
        let rows: Vec<ResultRow> = (0..6)
            .map(|i| ResultRow {
                run_id: i,
                seed: i,
                problem: "mpjcg".into(),
                n: 10 + 10 * (i as usize % 3),
                k_or_wmax: 3,
                algorithm: if i % 2 == 0 {
                    "alg-a".into()
                } else {
                    ALGO_PAYOFF.into()
                },
                alpha: None,
                fe_to_target: Some(100 * (i + 1)),
                success: true,
                iterations: 5,
                wall_ms: 0,
            })
            .collect();
        let a = render_svg(&rows, "curves");
        let b = render_svg(&rows, "curves");
        assert_eq!(a, b);
        assert_eq!(a.matches("<polyline").count(), 2, "one curve per algorithm");
    }
}
