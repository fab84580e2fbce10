//! Graph exports: DOT, GraphML, and edge CSV. Vertex labels are preserved,
//! edge weights carry multiplicities, and an optional partition adds a
//! `community` vertex attribute.

use std::io::{self, Read, Write};

use crate::graph::{MultiGraph, Partition};

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn write_dot(
    g: &MultiGraph,
    name: &str,
    partition: Option<&Partition>,
    w: &mut impl Write,
) -> io::Result<()> {
    writeln!(w, "graph \"{}\" {{", dot_escape(name))?;
    for v in g.vertices() {
        let label = dot_escape(g.label(v));
        match partition {
            Some(p) => writeln!(
                w,
                "  \"{label}\" [label=\"{label}\", community={}];",
                p.community_of(v)
            )?,
            None => writeln!(w, "  \"{label}\" [label=\"{label}\"];")?,
        }
    }
    for (u, v, m) in g.edges() {
        writeln!(
            w,
            "  \"{}\" -- \"{}\" [weight={m}];",
            dot_escape(g.label(u)),
            dot_escape(g.label(v))
        )?;
    }
    writeln!(w, "}}")
}

pub fn write_graphml(
    g: &MultiGraph,
    name: &str,
    partition: Option<&Partition>,
    w: &mut impl Write,
) -> io::Result<()> {
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    writeln!(
        w,
        r#"  <key id="label" for="node" attr.name="label" attr.type="string"/>"#
    )?;
    if partition.is_some() {
        writeln!(
            w,
            r#"  <key id="community" for="node" attr.name="community" attr.type="int"/>"#
        )?;
    }
    writeln!(
        w,
        r#"  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>"#
    )?;
    writeln!(
        w,
        r#"  <graph id="{}" edgedefault="undirected">"#,
        xml_escape(name)
    )?;
    for v in g.vertices() {
        writeln!(w, r#"    <node id="n{v}">"#)?;
        writeln!(
            w,
            r#"      <data key="label">{}</data>"#,
            xml_escape(g.label(v))
        )?;
        if let Some(p) = partition {
            writeln!(
                w,
                r#"      <data key="community">{}</data>"#,
                p.community_of(v)
            )?;
        }
        writeln!(w, r#"    </node>"#)?;
    }
    for (idx, (u, v, m)) in g.edges().enumerate() {
        writeln!(w, r#"    <edge id="e{idx}" source="n{u}" target="n{v}">"#)?;
        writeln!(w, r#"      <data key="weight">{m}</data>"#)?;
        writeln!(w, r#"    </edge>"#)?;
    }
    writeln!(w, r#"  </graph>"#)?;
    writeln!(w, r#"</graphml>"#)
}

/// `source,target,weight` rows, one per distinct edge. Vertices are those
/// incident to at least one edge, so re-ingesting reproduces any
/// interaction-derived graph exactly.
pub fn write_edge_csv(g: &MultiGraph, w: &mut impl Write) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["source", "target", "weight"])?;
    for (u, v, m) in g.edges() {
        writer.write_record([g.label(u), g.label(v), &m.to_string()])?;
    }
    writer.flush()
}

/// Inverse of [`write_edge_csv`].
pub fn read_edge_csv(r: impl Read) -> Result<MultiGraph, crate::Error> {
    let mut reader = csv::Reader::from_reader(r);
    let mut g = MultiGraph::new();
    for record in reader.records() {
        let record = record.map_err(|e| crate::Error::Data(format!("edge csv: {e}")))?;
        if record.len() != 3 {
            return Err(crate::Error::Data(format!(
                "edge csv: expected 3 fields, got {}",
                record.len()
            )));
        }
        let weight: u32 = record[2]
            .parse()
            .map_err(|_| crate::Error::Data(format!("edge csv: bad weight {:?}", &record[2])))?;
        g.add_interactions(&record[0], &record[1], weight)
            .map_err(crate::Error::Graph)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MultiGraph {
        let mut g = MultiGraph::new();
        g.add_interactions("Ross", "Rachel", 3).unwrap();
        g.add_interaction("Monica", "Ross").unwrap();
        g
    }

    #[test]
    fn dot_contains_weights_and_labels() {
        let g = sample();
        let mut out = Vec::new();
        write_dot(&g, "test", None, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("\"Ross\" -- \"Rachel\" [weight=3];"));
        assert!(text.contains("\"Monica\" [label=\"Monica\"];"));
    }

    #[test]
    fn dot_partition_adds_community() {
        let g = sample();
        let p = Partition::from_labels(&[0u32, 0, 1]);
        let mut out = Vec::new();
        write_dot(&g, "test", Some(&p), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("community=1"));
    }

    #[test]
    fn graphml_well_formed_enough() {
        let g = sample();
        let p = Partition::from_labels(&[0u32, 1, 0]);
        let mut out = Vec::new();
        write_graphml(&g, "s1e1", Some(&p), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.matches("<node").count(), 3);
        assert_eq!(text.matches("<edge").count(), 2);
        assert!(text.contains(r#"<data key="weight">3</data>"#));
        assert!(text.contains(r#"<data key="community">1</data>"#));
    }

    #[test]
    fn xml_and_dot_escaping() {
        let mut g = MultiGraph::new();
        g.add_interaction("A \"quoted\"", "B & <co>").unwrap();
        let mut out = Vec::new();
        write_dot(&g, "x", None, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().contains(r#"\"quoted\""#));
        let mut out = Vec::new();
        write_graphml(&g, "x", None, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("B &amp; &lt;co&gt;"));
    }

    #[test]
    fn edge_csv_roundtrip_identity() {
        let g = sample();
        let mut out = Vec::new();
        write_edge_csv(&g, &mut out).unwrap();
        let back = read_edge_csv(&out[..]).unwrap();
        assert_eq!(back.order(), g.order());
        assert_eq!(back.edge_total(), g.edge_total());
        for (u, v, m) in g.edges() {
            assert_eq!(back.multiplicity_by_name(g.label(u), g.label(v)), m);
        }
    }

    #[test]
    fn edge_csv_quotes_awkward_names() {
        let mut g = MultiGraph::new();
        g.add_interaction("Dr. Green, MD", "Ross").unwrap();
        let mut out = Vec::new();
        write_edge_csv(&g, &mut out).unwrap();
        let back = read_edge_csv(&out[..]).unwrap();
        assert_eq!(back.multiplicity_by_name("Dr. Green, MD", "Ross"), 1);
    }
}
