//! SPARQL results JSON and the plain-text table used by `query --table`.

use oak_core::rdf::vocab::xsd;
use oak_core::rdf::Term;
use oak_core::sparql::BindingSet;
use serde_json::{json, Map, Value};

pub const SPARQL_RESULTS_JSON: &str = "application/sparql-results+json";

pub fn term_to_json(term: &Term) -> Value {
    match term {
        Term::Iri(iri) => json!({ "type": "uri", "value": iri.as_str() }),
        Term::BlankNode(b) => json!({ "type": "bnode", "value": b.label() }),
        Term::Literal(l) => {
            let mut v = json!({ "type": "literal", "value": l.lexical() });
            if let Some(lang) = l.language() {
                v["xml:lang"] = json!(lang);
            } else if let Some(dt) = l.datatype().filter(|d| d.as_str() != xsd::STRING) {
                v["datatype"] = json!(dt.as_str());
            }
            v
        }
    }
}

pub fn results_to_json(results: &BindingSet) -> Value {
    let vars: Vec<&str> = results.vars().iter().map(|v| v.name()).collect();
    let bindings: Vec<Value> = results
        .rows()
        .iter()
        .map(|row| {
            let mut b = Map::new();
            for (var, term) in vars.iter().zip(row) {
                b.insert((*var).to_string(), term_to_json(term));
            }
            Value::Object(b)
        })
        .collect();
    json!({ "head": { "vars": vars }, "results": { "bindings": bindings } })
}

/// Left-aligned columns of N-Triples terms under `?var` headers.
pub fn render_table(results: &BindingSet) -> String {
    let header: Vec<String> = results.vars().iter().map(|v| v.to_string()).collect();
    let cells: Vec<Vec<String>> = results.rows().iter().map(|r| r.iter().map(Term::to_string).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = line(&header);
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    out.push('\n');
    for row in &cells {
        out.push_str(&line(row));
        out.push('\n');
    }
    out.push_str(&format!("({} row{})\n", cells.len(), if cells.len() == 1 { "" } else { "s" }));
    out
}
