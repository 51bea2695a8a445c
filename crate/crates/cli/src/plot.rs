use std::collections::BTreeMap;
use std::fmt::Write;

use daqc_core::noise::ExperimentRecord;

use crate::args::XAxis;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

fn x_of(r: &ExperimentRecord, axis: XAxis) -> f64 {
    match axis {
        XAxis::Beta => r.beta,
        XAxis::ErrorScale => r.error_scale,
        XAxis::NQubits => r.n_qubits as f64,
    }
}

/// Series keyed by label, each a sorted list of (x, mean fidelity).
/// Against `n_qubits` there is one series per protocol, averaging rows
/// with equal n; otherwise one per (protocol, n).
fn series(records: &[ExperimentRecord], axis: XAxis) -> BTreeMap<String, Vec<(f64, f64)>> {
    let mut acc: BTreeMap<(String, u64), (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let label = match axis {
            XAxis::NQubits => r.protocol.to_string(),
            _ => format!("{} n={}", r.protocol, r.n_qubits),
        };
        let x = x_of(r, axis);
        let e = acc.entry((label, x.to_bits())).or_insert((x, 0.0, 0));
        e.1 += r.mean_fidelity;
        e.2 += 1;
    }
    let mut out: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for ((label, _), (x, sum, k)) in acc {
        out.entry(label).or_default().push((x, sum / k as f64));
    }
    for pts in out.values_mut() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn render(records: &[ExperimentRecord], axis: XAxis) -> Result<String, String> {
    if records.is_empty() {
        return Err("no data rows to plot".into());
    }
    let data = series(records, axis);
    let (x0, x1) = span(records.iter().map(|r| x_of(r, axis)));
    let (y0, y1) = span(records.iter().map(|r| r.mean_fidelity));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let xlabel = match axis {
        XAxis::Beta => "beta",
        XAxis::ErrorScale => "error scale",
        XAxis::NQubits => "qubits",
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{m}" x2="{m}" y2="{b}"/></g>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{fx:.3}</text>"#,
            sx(fx),
            HEIGHT - MARGIN + 18.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{fy:.3}</text>"#,
            MARGIN - 6.0,
            sy(fy) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xlabel}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" transform="rotate(-90 16 {:.1})" text-anchor="middle">mean fidelity</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (i, (label, pts)) in data.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{label}</title></polyline>"#,
            coords.join(" ")
        );
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{label}</text>"#,
            WIDTH - MARGIN - 110.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use daqc_core::noise::Protocol;

    fn rec(p: Protocol, n: usize, beta: f64, f: f64) -> ExperimentRecord {
        ExperimentRecord {
            protocol: p,
            n_qubits: n,
            beta,
            shots: 1,
            seed: 0,
            mean_fidelity: f,
            std_fidelity: 0.0,
            delta_t: 0.002,
            error_scale: 1.0,
        }
    }

    #[test]
    fn one_polyline_per_series() {
        let recs = vec![
            rec(Protocol::Dqc, 3, 0.0, 0.5),
            rec(Protocol::Dqc, 3, 1.0, 0.6),
            rec(Protocol::Bdaqc, 3, 0.0, 0.9),
            rec(Protocol::Bdaqc, 3, 1.0, 0.95),
        ];
        let svg = render(&recs, XAxis::Beta).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("0.500"));
        assert!(svg.contains("0.950"));
    }

    #[test]
    fn qubit_axis_groups_by_protocol() {
        let recs = vec![
            rec(Protocol::Dqc, 3, 0.0, 0.8),
            rec(Protocol::Dqc, 3, 1.0, 0.6),
            rec(Protocol::Dqc, 5, 0.0, 0.5),
        ];
        let data = series(&recs, XAxis::NQubits);
        assert_eq!(data["DQC"], vec![(3.0, 0.7), (5.0, 0.5)]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(render(&[], XAxis::Beta).is_err());
    }
}
