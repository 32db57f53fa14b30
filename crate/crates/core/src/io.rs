//! File formats: graphs (edge-list text and JSON), orientations, colorings,
//! finite measures and point-cloud CSV.

use std::io::{BufRead, Write};
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometric::{PointCloud, Shape};
use crate::graph::Graph;
use crate::orientation::{Coloring, Orientation};
use crate::poly::rational_string;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct OrientationJson {
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    support: Vec<WeightedColoring>,
}

#[derive(Serialize, Deserialize)]
struct WeightedColoring {
    values: Vec<f64>,
    /// Exact rational as a string, e.g. `"1/3"`.
    weight: String,
}

/// Parses either graph format; JSON is recognised by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let g: GraphJson = serde_json::from_str(text)?;
    Graph::new(g.n, g.edges.into_iter().map(|[u, v]| (u, v)))
}

/// `n m` on the first line, then `m` lines `u v`.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, what: &str| Error::Parse(format!("line {}: {what}", line + 1));
    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(bad(line, "expected two non-negative integers")),
        }
    };
    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let (n, m) = pair(line, header)?;
    let edges = lines.map(|(i, l)| pair(i, l)).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(n, edges)
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson {
        n: g.n(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
    })
    .expect("graph serializes")
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_orientation(g: &Graph, text: &str) -> Result<Orientation> {
    let o: OrientationJson = serde_json::from_str(text)?;
    let arcs: Vec<(usize, usize)> = o.edges.into_iter().map(|[u, v]| (u, v)).collect();
    Orientation::from_arcs(g, &arcs)
}

pub fn orientation_to_json(o: &Orientation) -> String {
    serde_json::to_string(&OrientationJson {
        edges: o.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
    })
    .expect("orientation serializes")
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let c: ColoringJson = serde_json::from_str(text)?;
    Coloring::new(c.values)
}

pub fn coloring_to_json(c: &Coloring) -> String {
    serde_json::to_string(&ColoringJson {
        values: c.values().to_vec(),
    })
    .expect("coloring serializes")
}

pub fn parse_measure(text: &str) -> Result<Vec<(Coloring, BigRational)>> {
    let m: MeasureJson = serde_json::from_str(text)?;
    m.support
        .into_iter()
        .map(|w| {
            let weight = BigRational::from_str(w.weight.trim())
                .map_err(|_| Error::Parse(format!("bad rational weight `{}`", w.weight)))?;
            Ok((Coloring::new(w.values)?, weight))
        })
        .collect()
}

pub fn measure_to_json(support: &[(Coloring, BigRational)]) -> String {
    serde_json::to_string(&MeasureJson {
        support: support
            .iter()
            .map(|(c, w)| WeightedColoring {
                values: c.values().to_vec(),
                weight: rational_string(w),
            })
            .collect(),
    })
    .expect("measure serializes")
}

/// Reads a point cloud: a `# dim=d` header, then one comma-separated point
/// per row.
pub fn read_point_cloud(reader: impl BufRead) -> Result<PointCloud> {
    let mut reader = reader;
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let dim: usize = header
        .trim()
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|h| h.strip_prefix("dim="))
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| {
            Error::Parse(format!(
                "expected `# dim=d` header, got `{}`",
                header.trim()
            ))
        })?;
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut coords = Vec::new();
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != dim {
            return Err(Error::Parse(format!(
                "row {}: {} values, expected {dim}",
                row + 1,
                record.len()
            )));
        }
        for field in &record {
            coords.push(
                field
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: bad number `{field}`", row + 1)))?,
            );
        }
    }
    PointCloud::new(dim, coords, Shape::File)
}

pub fn write_point_cloud(pc: &PointCloud, mut out: impl Write) -> Result<()> {
    writeln!(out, "# dim={}", pc.dim())?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for p in pc.points() {
        w.write_record(p.iter().map(|x| x.to_string()))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn text_format() {
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, registry::cycle(4));
        assert_eq!(parse_graph(&graph_to_text(&g)).unwrap(), g);
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("3 1\n0 x\n").is_err());
        assert!(parse_graph("2 1\n0 0\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn json_format() {
        let g = parse_graph(r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(g, registry::complete(3));
        assert_eq!(graph_to_json(&g), r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
        assert!(parse_graph(r#"{"n": 3, "edges": [[0,5]]}"#).is_err());
        assert!(parse_graph(r#"{"n": 3, "edges": "#).is_err());
    }

    #[test]
    fn orientation_and_coloring() {
        let g = registry::complete(3);
        let o = parse_orientation(&g, r#"{"edges": [[0,1],[1,2],[2,0]]}"#).unwrap();
        assert!(!o.is_irrotational());
        assert_eq!(parse_orientation(&g, &orientation_to_json(&o)).unwrap(), o);
        let c = parse_coloring(r#"{"values": [0.5, -1, 2]}"#).unwrap();
        assert_eq!(c.values(), &[0.5, -1.0, 2.0]);
        assert_eq!(parse_coloring(&coloring_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn measures() {
        let m = parse_measure(r#"{"support": [{"values": [0,1], "weight": "1/3"}, {"values": [1,0], "weight": "2/3"}]}"#)
            .unwrap();
        assert_eq!(m[0].1, BigRational::new(1.into(), 3.into()));
        assert_eq!(parse_measure(&measure_to_json(&m)).unwrap(), m);
        assert!(parse_measure(r#"{"support": [{"values": [0], "weight": "a/b"}]}"#).is_err());
    }

    #[test]
    fn point_cloud_csv() {
        let pc = crate::geometric::sample_torus(5, 4, 2.0, 0.5).unwrap();
        let mut buf = Vec::new();
        write_point_cloud(&pc, &mut buf).unwrap();
        assert!(buf.starts_with(b"# dim=3\n"));
        let back = read_point_cloud(buf.as_slice()).unwrap();
        assert_eq!(back.len(), pc.len());
        for (a, b) in back.points().zip(pc.points()) {
            assert_eq!(a, b);
        }
        assert!(read_point_cloud("1,2\n".as_bytes()).is_err());
        assert!(read_point_cloud("# dim=2\n1,2,3\n".as_bytes()).is_err());
        assert!(read_point_cloud("# dim=2\n1,zz\n".as_bytes()).is_err());
    }
}
