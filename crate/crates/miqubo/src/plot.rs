//! Minimal dependency-free SVG charts: a bar chart for MI rankings and a
//! line chart with ±std bands for R² sweeps. Output is deterministic
//! (fixed float formatting), so charts are diffable in tests.

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 88.0;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// One line-chart series: means per x, with an optional ±band.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub band: Option<Vec<f64>>,
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Vertical bar chart, bars in the given order.
pub fn bar_chart(title: &str, labels: &[String], values: &[f64]) -> String {
    let mut svg = header(title);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let vmax = values.iter().cloned().fold(0.0f64, f64::max).max(1e-12);
    let n = values.len().max(1);
    let slot = plot_w / n as f64;
    let bar_w = (slot * 0.8).min(48.0);

    // y axis with 5 ticks
    for tick in 0..=5 {
        let frac = tick as f64 / 5.0;
        let y = MARGIN_TOP + plot_h * (1.0 - frac);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
            fmt(MARGIN_LEFT),
            fmt(y),
            fmt(WIDTH - MARGIN_RIGHT),
            fmt(y)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            fmt(MARGIN_LEFT - 6.0),
            fmt(y + 4.0),
            fmt(vmax * frac)
        ));
    }

    for (i, (label, &v)) in labels.iter().zip(values).enumerate() {
        let h = plot_h * (v.max(0.0) / vmax);
        let x = MARGIN_LEFT + slot * i as f64 + (slot - bar_w) / 2.0;
        let y = MARGIN_TOP + plot_h - h;
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
            fmt(x),
            fmt(y),
            fmt(bar_w),
            fmt(h),
            PALETTE[0]
        ));
        let lx = x + bar_w / 2.0;
        let ly = MARGIN_TOP + plot_h + 12.0;
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" transform=\"rotate(-45 {} {})\">{}</text>\n",
            fmt(lx),
            fmt(ly),
            fmt(lx),
            fmt(ly),
            escape(label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Line chart with optional ±band per series and a legend.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let mut svg = header(title);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in series {
        for (i, (&x, &y)) in s.xs.iter().zip(&s.ys).enumerate() {
            let b = s.band.as_ref().map_or(0.0, |b| b[i]);
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y - b);
            ymax = ymax.max(y + b);
        }
    }
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax - xmin).abs() < 1e-12 {
        xmax = xmin + 1.0;
    }
    let pad = ((ymax - ymin) * 0.08).max(1e-6);
    ymin -= pad;
    ymax += pad;

    let sx = |x: f64| MARGIN_LEFT + plot_w * (x - xmin) / (xmax - xmin);
    let sy = |y: f64| MARGIN_TOP + plot_h * (1.0 - (y - ymin) / (ymax - ymin));

    for tick in 0..=5 {
        let frac = tick as f64 / 5.0;
        let y = ymin + (ymax - ymin) * frac;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
            fmt(MARGIN_LEFT),
            fmt(sy(y)),
            fmt(WIDTH - MARGIN_RIGHT),
            fmt(sy(y))
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            fmt(MARGIN_LEFT - 6.0),
            fmt(sy(y) + 4.0),
            fmt(y)
        ));
        let x = xmin + (xmax - xmin) * frac;
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            fmt(sx(x)),
            fmt(MARGIN_TOP + plot_h + 18.0),
            fmt(x)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        fmt(MARGIN_LEFT + plot_w / 2.0),
        fmt(HEIGHT - 40.0),
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        fmt(MARGIN_TOP + plot_h / 2.0),
        fmt(MARGIN_TOP + plot_h / 2.0),
        escape(y_label)
    ));

    for (idx, s) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        if let Some(band) = &s.band {
            let mut points = Vec::new();
            for ((&x, &y), &b) in s.xs.iter().zip(&s.ys).zip(band) {
                points.push(format!("{},{}", fmt(sx(x)), fmt(sy(y + b))));
            }
            for ((&x, &y), &b) in s.xs.iter().zip(&s.ys).zip(band).rev() {
                points.push(format!("{},{}", fmt(sx(x)), fmt(sy(y - b))));
            }
            svg.push_str(&format!(
                "<polygon points=\"{}\" fill=\"{}\" opacity=\"0.15\"/>\n",
                points.join(" "),
                color
            ));
        }
        let line: Vec<String> = s
            .xs
            .iter()
            .zip(&s.ys)
            .map(|(&x, &y)| format!("{},{}", fmt(sx(x)), fmt(sy(y))))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            line.join(" "),
            color
        ));
        for (&x, &y) in s.xs.iter().zip(&s.ys) {
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n",
                fmt(sx(x)),
                fmt(sy(y)),
                color
            ));
        }
        let ly = MARGIN_TOP + 16.0 * idx as f64;
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
            fmt(WIDTH - MARGIN_RIGHT - 120.0),
            fmt(ly),
            color
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(WIDTH - MARGIN_RIGHT - 102.0),
            fmt(ly + 10.0),
            escape(&s.label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_chart_is_valid_and_deterministic() {
        let labels = vec!["alpha".to_string(), "beta".to_string()];
        let a = bar_chart("title", &labels, &[0.8, 0.3]);
        let b = bar_chart("title", &labels, &[0.8, 0.3]);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains("alpha"));
    }

    #[test]
    fn line_chart_renders_bands() {
        let s = Series {
            label: "MI".into(),
            xs: vec![1.0, 2.0, 3.0],
            ys: vec![0.5, 0.6, 0.7],
            band: Some(vec![0.1, 0.05, 0.02]),
        };
        let svg = line_chart("sweep", "k", "r2", &[s]);
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("<polyline"));
    }

    #[test]
    fn escapes_markup() {
        let svg = bar_chart("a<b&c", &["x<y".to_string()], &[1.0]);
        assert!(svg.contains("a&lt;b&amp;c"));
        assert!(!svg.contains("x<y"));
    }
}
