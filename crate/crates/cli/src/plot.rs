//! Per-vertex values as CSV for external plotting.

use std::path::Path;

/// One CSV row per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotRow {
    pub vertex: usize,
    /// Point coordinates; empty for abstract graphs.
    pub coords: Vec<f64>,
    pub value: f64,
    pub stderr: Option<f64>,
    /// Exact rational as `p/q`.
    pub exact: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlotData {
    /// Number of coordinate columns.
    pub dim: usize,
    pub rows: Vec<PlotRow>,
}

fn coordinate_names(dim: usize) -> Vec<String> {
    match dim {
        0 => vec![],
        1..=3 => ["x", "y", "z"][..dim]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        _ => (0..dim).map(|i| format!("x{i}")).collect(),
    }
}

pub fn render_plot_data(data: &PlotData) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["vertex".to_string()];
    header.extend(coordinate_names(data.dim));
    header.extend(["value", "stderr", "exact"].map(String::from));
    w.write_record(&header).expect("in-memory write");
    for row in &data.rows {
        let mut rec = vec![row.vertex.to_string()];
        rec.extend(row.coords.iter().map(f64::to_string));
        rec.push(row.value.to_string());
        rec.push(row.stderr.map(|s| s.to_string()).unwrap_or_default());
        rec.push(row.exact.clone().unwrap_or_default());
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn emit_plot_data(data: &PlotData, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render_plot_data(data))
}
