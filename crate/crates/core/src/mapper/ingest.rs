use std::path::Path;

use serde_json::Value;

use super::apply::apply_template_report;
use super::template::MappingTemplate;
use crate::rdf::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TemplateStats {
    pub name: String,
    pub documents: usize,
    /// Triples this template added to the batch graph.
    pub triples: usize,
    pub failed_bindings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftError {
    pub doc_id: String,
    /// `None` when the document itself could not be read.
    pub template: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct IngestionResult {
    pub graph: Graph,
    pub stats: Vec<TemplateStats>,
    pub errors: Vec<SoftError>,
    pub unreadable: usize,
}

impl IngestionResult {
    pub fn triples_emitted(&self) -> usize {
        self.stats.iter().map(|s| s.triples).sum()
    }
}

/// Applies every template to every document, in order, and merges the
/// results with blank nodes kept apart.
pub fn ingest_batch(templates: &[(String, MappingTemplate)], docs: &[(String, Value)]) -> IngestionResult {
    let mut result = IngestionResult {
        stats: templates.iter().map(|(name, _)| TemplateStats { name: name.clone(), ..Default::default() }).collect(),
        ..Default::default()
    };
    for (doc_id, doc) in docs {
        add_document(&mut result, templates, doc_id, doc);
    }
    result
}

/// Like [`ingest_batch`] over raw texts; a document that cannot be read or
/// is not JSON is recorded and skipped.
pub fn ingest_texts(templates: &[(String, MappingTemplate)], docs: &[(String, Result<String, String>)]) -> IngestionResult {
    let mut result = ingest_batch(templates, &[]);
    for (doc_id, text) in docs {
        let parsed = text
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|t| serde_json::from_str::<Value>(t).map_err(|e| format!("invalid JSON: {e}")));
        match parsed {
            Ok(doc) => add_document(&mut result, templates, doc_id, &doc),
            Err(message) => {
                result.unreadable += 1;
                result.errors.push(SoftError { doc_id: doc_id.clone(), template: None, message });
            }
        }
    }
    result
}

/// Reads a manifest of `path<TAB>doc_id` lines and the documents it lists.
/// Paths are relative to the manifest; a missing id defaults to the file
/// stem. Blank lines and `#` comments are skipped. A document that cannot be
/// read is returned as `Err` with the reason.
pub fn read_manifest(manifest: &Path) -> std::io::Result<Vec<(String, Result<String, String>)>> {
    let text = std::fs::read_to_string(manifest)?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let mut docs = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (file, id) = match line.split_once('\t') {
            Some((f, id)) => (f.trim(), id.trim().to_owned()),
            None => (line, Path::new(line).file_stem().map_or_else(|| line.to_owned(), |s| s.to_string_lossy().into_owned())),
        };
        let path = dir.join(file);
        docs.push((id, std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))));
    }
    Ok(docs)
}

fn add_document(result: &mut IngestionResult, templates: &[(String, MappingTemplate)], doc_id: &str, doc: &Value) {
    for ((name, t), stats) in templates.iter().zip(&mut result.stats) {
        let app = apply_template_report(t, doc, doc_id);
        let before = result.graph.len();
        result.graph.merge(&app.graph);
        stats.documents += 1;
        stats.triples += result.graph.len() - before;
        stats.failed_bindings += app.failed_bindings;
        result.errors.extend(app.soft_errors.into_iter().map(|message| SoftError {
            doc_id: doc_id.to_owned(),
            template: Some(name.clone()),
            message,
        }));
    }
}
