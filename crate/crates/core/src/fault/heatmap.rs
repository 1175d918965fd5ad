use std::fmt::Write as _;
use std::path::Path;

use super::campaign::SensitivityProfile;
use crate::error::{Error, Result};
use crate::render::{sensitivity_color, sensitivity_width, svg_footer, svg_header};
use crate::sim::Circuit;

pub fn write_heatmap_csv<W: std::io::Write>(profile: &SensitivityProfile, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["qubit", "timestep", "mean_relative_pst", "n_records", "min_relative_pst"])?;
    for c in &profile.cells {
        w.write_record([
            c.qubit.to_string(),
            c.timestep.to_string(),
            c.mean_relative_pst.to_string(),
            c.n_records.to_string(),
            c.min_relative_pst.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One horizontal line per qubit running from its first to its last
/// operation. Each stretch after a faultable gate is colored green→red and
/// drawn thin→thick as the gate's mean relative PST goes 1→0; stretches after
/// unfaultable gates are dashed grey. Single-qubit gates are ticks and
/// two-qubit gates are arrows from the first qubit to the second.
pub fn render_heatmap_svg(profile: &SensitivityProfile, circuit: &Circuit) -> Result<String> {
    profile.check_circuit(circuit)?;
    let mut steps: Vec<u64> = circuit.ops().iter().map(|o| o.timestep).collect();
    steps.dedup();
    let column = |t: u64| steps.binary_search(&t).expect("timestep present") as f64;

    let dx = (900.0 / steps.len().max(1) as f64).clamp(2.0, 40.0);
    let dy = 40.0;
    let left = 60.0;
    let top = 40.0;
    let width = left + dx * (steps.len() as f64 + 1.0) + 20.0;
    let height = top + dy * circuit.num_qubits() as f64 + 10.0;
    let x = |t: u64| left + dx * column(t);
    let y = |q: usize| top + dy * q as f64;

    let mut svg = svg_header(width, height);
    svg.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/></marker></defs>\n",
    );

    for q in 0..circuit.num_qubits() {
        let ops: Vec<usize> = (0..circuit.len())
            .filter(|&i| circuit.ops()[i].qubits.contains(&q))
            .collect();
        let _ = writeln!(
            svg,
            "<text x=\"10\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\">q{q}</text>",
            y(q) + 4.0
        );
        for (k, &i) in ops.iter().enumerate() {
            let t = circuit.ops()[i].timestep;
            let x1 = x(t);
            let x2 = match ops.get(k + 1) {
                Some(&next) => x(circuit.ops()[next].timestep),
                None => x1 + dx / 2.0,
            };
            let style = match profile.cell(q, t) {
                Some(cell) => format!(
                    "stroke=\"{}\" stroke-width=\"{:.2}\"",
                    sensitivity_color(cell.mean_relative_pst),
                    sensitivity_width(cell.mean_relative_pst)
                ),
                None => format!(
                    "stroke=\"#999999\" stroke-width=\"{:.2}\" stroke-dasharray=\"3,2\"",
                    sensitivity_width(1.0)
                ),
            };
            let _ = writeln!(
                svg,
                "<line class=\"segment\" data-qubit=\"{q}\" data-t=\"{t}\" x1=\"{x1:.2}\" y1=\"{yq:.2}\" x2=\"{x2:.2}\" y2=\"{yq:.2}\" {style}/>",
                yq = y(q)
            );
        }
    }

    for op in circuit.ops() {
        let xt = x(op.timestep);
        match op.qubits.as_slice() {
            [q] => {
                let _ = writeln!(
                    svg,
                    "<line class=\"tick\" data-t=\"{}\" x1=\"{xt:.2}\" y1=\"{:.2}\" x2=\"{xt:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"1\"/>",
                    op.timestep,
                    y(*q) - 6.0,
                    y(*q) + 6.0
                );
            }
            [a, b] => {
                let (ya, yb) = (y(*a), y(*b));
                let shrink = if yb > ya { -4.0 } else { 4.0 };
                let _ = writeln!(
                    svg,
                    "<line class=\"arrow\" data-t=\"{}\" x1=\"{xt:.2}\" y1=\"{ya:.2}\" x2=\"{xt:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>",
                    op.timestep,
                    yb + shrink
                );
            }
            _ => unreachable!("gates act on one or two qubits"),
        }
    }
    svg.push_str(&svg_footer());
    Ok(svg)
}

/// Writes the heatmap CSV and SVG.
pub fn export_heatmap(
    profile: &SensitivityProfile,
    circuit: &Circuit,
    csv_path: &Path,
    svg_path: &Path,
) -> Result<()> {
    if profile.cells.is_empty() {
        return Err(Error::InvalidArgument("profile has no cells to render".into()));
    }
    let svg = render_heatmap_svg(profile, circuit)?;
    let mut csv_bytes = Vec::new();
    write_heatmap_csv(profile, &mut csv_bytes)?;
    std::fs::write(csv_path, csv_bytes)?;
    std::fs::write(svg_path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::{run_campaign, InjectionMode};
    use crate::sim::{GateKind, GateOp};

    fn harmless_profile() -> (SensitivityProfile, Circuit) {
        // Errors on an unmeasured qubit never change the output.
        let c = Circuit::new(
            2,
            vec![
                GateOp::new(GateKind::H, &[1], 0),
                GateOp::new(GateKind::T, &[1], 1),
                GateOp::new(GateKind::X, &[0], 2),
            ],
            vec![0],
        )
        .unwrap();
        let mut p = run_campaign(&c, "1", InjectionMode::Mirrored).unwrap();
        // Drop the measured-qubit gate's cell so only harmless cells remain.
        p.cells.retain(|cell| cell.qubit == 1);
        (p, c)
    }

    #[test]
    fn all_insensitive_renders_thin_green() {
        let (p, c) = harmless_profile();
        assert!(p.cells.iter().all(|c| c.mean_relative_pst == 1.0));
        let svg = render_heatmap_svg(&p, &c).unwrap();
        let widths: std::collections::BTreeSet<&str> = svg
            .lines()
            .filter(|l| l.contains("class=\"segment\"") && l.contains("data-qubit=\"1\""))
            .map(|l| l.split("stroke-width=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        assert_eq!(widths.len(), 1);
        assert!(svg.contains(&sensitivity_color(1.0)));
    }

    #[test]
    fn csv_has_one_row_per_cell() {
        let (p, _) = harmless_profile();
        let mut buf = Vec::new();
        write_heatmap_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "qubit,timestep,mean_relative_pst,n_records,min_relative_pst"
        );
        assert_eq!(lines.count(), p.cells.len());
    }

    #[test]
    fn export_reports_io_errors() {
        let (p, c) = harmless_profile();
        let bad = Path::new("/nonexistent-dir/heatmap.csv");
        assert!(matches!(
            export_heatmap(&p, &c, bad, bad),
            Err(Error::Io(_))
        ));
        let mut empty = p.clone();
        empty.cells.clear();
        assert!(export_heatmap(&empty, &c, bad, bad).is_err());
    }
}
