use std::collections::HashMap;

use crate::rdf::{write_ntriples_term, Graph, Term};

/// One triple per line, lines sorted. Blank nodes are relabelled `b0, b1, ...`
/// in order of first appearance over the triples sorted by their original
/// serialization.
pub fn serialize_ntriples(g: &Graph) -> String {
    let mut triples: Vec<_> = g.iter().collect();
    triples.sort_by_cached_key(|t| t.to_owned().to_ntriples());

    let mut labels: HashMap<&str, String> = HashMap::new();
    let mut lines: Vec<String> = Vec::with_capacity(triples.len());
    for t in &triples {
        let mut line = String::new();
        for (i, term) in [t.subject, t.predicate, t.object].into_iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            match term {
                Term::Blank(l) => {
                    let next = labels.len();
                    let label = labels.entry(l.as_str()).or_insert_with(|| format!("b{next}"));
                    line.push_str("_:");
                    line.push_str(label);
                }
                other => write_ntriples_term(&mut line, other),
            }
        }
        line.push_str(" .");
        lines.push(line);
    }
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}
