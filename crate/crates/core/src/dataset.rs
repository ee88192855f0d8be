//! JSONL records, batch conversion, corpus statistics and validation of
//! unified strings.
//!
//! Input is one JSON object per line:
//!
//! ```json
//! {"id": "t1", "form": "table", "payload": {"title": "...", "sub_title": "...",
//!   "rows": [[{"value": "2014", "col_headers": ["Year"]}]], "highlights": [[0, 0]]}}
//! {"id": "k1", "form": "kg", "payload": {"triples": [["head", "relation", "tail"]]}}
//! {"id": "m1", "form": "mr", "payload": {"text": "name[Zizzi], eatType[pub]"}, "meta": {"split": "dev"}}
//! ```
//!
//! `meta` is optional and copied to every output record untouched.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ir::{make_virtual_table, Cell, Orientation, Scheme, VirtualTable};
use crate::kg::{
    connected_components, kg_to_tables, parse_triples, triples_to_virtual_table, TripleSet,
};
use crate::legacy::{
    linearize_e2e_concat, linearize_logicnlg, linearize_totto_variant, linearize_unifiedskg_kg,
};
use crate::mr::{mr_to_virtual_table, parse_mr, MrList};
use crate::text::is_single_spaced;
use crate::unified::{
    ambiguity_warnings, linearize_columns, linearize_highlighted, linearize_rows, parse_unified,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Table,
    Kg,
    Mr,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Table, Form::Kg, Form::Mr];

    pub fn as_str(self) -> &'static str {
        match self {
            Form::Table => "table",
            Form::Kg => "kg",
            Form::Mr => "mr",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellPayload {
    pub value: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub col_headers: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub row_headers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablePayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_title: Option<String>,
    pub rows: Vec<Vec<CellPayload>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub highlights: Vec<(usize, usize)>,
}

impl TablePayload {
    pub fn to_virtual_table(&self) -> Result<VirtualTable> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| Cell::from_parts(&c.value, &c.col_headers, &c.row_headers))
                    .collect()
            })
            .collect();
        make_virtual_table(
            self.title.as_deref(),
            self.sub_title.as_deref(),
            rows,
            &self.highlights,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KgPayload {
    /// Arity is checked when the triples are parsed, not here.
    pub triples: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MrPayload {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Table(TablePayload),
    Kg(KgPayload),
    Mr(MrPayload),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub id: String,
    pub payload: Payload,
    pub meta: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    form: Form,
    payload: Value,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    meta: Map<String, Value>,
}

impl Record {
    pub fn form(&self) -> Form {
        match self.payload {
            Payload::Table(_) => Form::Table,
            Payload::Kg(_) => Form::Kg,
            Payload::Mr(_) => Form::Mr,
        }
    }

    /// Parses one JSONL line. `line` is 1-based and only used in errors.
    pub fn from_json_line(text: &str, line: usize) -> Result<Record> {
        let value: Value =
            serde_json::from_str(text).map_err(|source| Error::Json { line, source })?;
        let raw: RawRecord = serde_json::from_value(value).map_err(|e| Error::Schema {
            line,
            field: "record".into(),
            message: e.to_string(),
        })?;
        let schema = |e: serde_json::Error| Error::Schema {
            line,
            field: "payload".into(),
            message: format!("{} payload: {e}", raw.form),
        };
        let payload = match raw.form {
            Form::Table => Payload::Table(serde_json::from_value(raw.payload).map_err(schema)?),
            Form::Kg => Payload::Kg(serde_json::from_value(raw.payload).map_err(schema)?),
            Form::Mr => Payload::Mr(serde_json::from_value(raw.payload).map_err(schema)?),
        };
        Ok(Record {
            id: raw.id,
            payload,
            meta: raw.meta,
        })
    }

    pub fn to_json_line(&self) -> String {
        let payload = match &self.payload {
            Payload::Table(p) => serde_json::to_value(p),
            Payload::Kg(p) => serde_json::to_value(p),
            Payload::Mr(p) => serde_json::to_value(p),
        }
        .expect("payloads always serialize");
        let raw = RawRecord {
            id: self.id.clone(),
            form: self.form(),
            payload,
            meta: self.meta.clone(),
        };
        serde_json::to_string(&raw).expect("records always serialize")
    }
}

/// Streams records from JSONL, one line at a time. Blank lines are skipped;
/// malformed lines yield an error item and the stream continues.
pub struct RecordReader<R> {
    reader: R,
    buf: String,
    line: usize,
    seen_ids: HashSet<String>,
    done: bool,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(reader: R) -> Self {
        RecordReader {
            reader,
            buf: String::new(),
            line: 0,
            seen_ids: HashSet::new(),
            done: false,
        }
    }

    /// 1-based number of the line most recently read.
    pub fn line(&self) -> usize {
        self.line
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = Result<Record>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line += 1;
                    if self.buf.trim().is_empty() {
                        continue;
                    }
                    let rec = Record::from_json_line(&self.buf, self.line).and_then(|r| {
                        if self.seen_ids.insert(r.id.clone()) {
                            Ok(r)
                        } else {
                            Err(Error::DuplicateId {
                                line: self.line,
                                id: r.id,
                            })
                        }
                    });
                    return Some(rec);
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(e.into()));
                }
            }
        }
        None
    }
}

/// Opens a JSONL file for streaming.
pub fn read_records(path: impl AsRef<Path>) -> Result<RecordReader<BufReader<File>>> {
    Ok(RecordReader::new(BufReader::new(File::open(path)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub id: String,
    pub scheme: Scheme,
    pub orientation: Orientation,
    pub text: String,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub meta: Map<String, Value>,
}

/// The orientation a scheme uses when none is requested, or `None` when the
/// caller has to choose.
pub fn default_orientation(scheme: Scheme) -> Option<Orientation> {
    match scheme {
        Scheme::Unified => None,
        Scheme::Totto => Some(Orientation::Highlighted),
        Scheme::LogicNlg => Some(Orientation::Row),
        Scheme::UnifiedSkg | Scheme::E2eConcat => Some(Orientation::NotApplicable),
    }
}

/// Whether the scheme can produce output in this orientation at all.
pub fn is_valid_pair(scheme: Scheme, orientation: Orientation) -> bool {
    match scheme {
        Scheme::Unified => matches!(
            orientation,
            Orientation::Highlighted | Orientation::Row | Orientation::Column
        ),
        other => default_orientation(other) == Some(orientation),
    }
}

/// Every (scheme, orientation) pair [`is_valid_pair`] accepts.
pub fn valid_pairs() -> Vec<(Scheme, Orientation)> {
    vec![
        (Scheme::Unified, Orientation::Highlighted),
        (Scheme::Unified, Orientation::Row),
        (Scheme::Unified, Orientation::Column),
        (Scheme::Totto, Orientation::Highlighted),
        (Scheme::UnifiedSkg, Orientation::NotApplicable),
        (Scheme::LogicNlg, Orientation::Row),
        (Scheme::E2eConcat, Orientation::NotApplicable),
    ]
}

/// Whether records of `form` can be converted with this pair.
pub fn is_compatible(form: Form, scheme: Scheme, orientation: Orientation) -> bool {
    if !is_valid_pair(scheme, orientation) {
        return false;
    }
    match (scheme, orientation) {
        (Scheme::Unified, Orientation::Row | Orientation::Column) => true,
        (Scheme::Unified | Scheme::Totto | Scheme::LogicNlg, _) => form == Form::Table,
        (Scheme::UnifiedSkg, _) => form == Form::Kg,
        (Scheme::E2eConcat, _) => form == Form::Mr,
    }
}

enum Source {
    Tables(Vec<VirtualTable>),
    Triples(TripleSet),
    Mr(MrList),
}

fn load(record: &Record, scheme: Scheme) -> Result<Source> {
    Ok(match &record.payload {
        Payload::Table(p) => Source::Tables(vec![p.to_virtual_table()?]),
        Payload::Kg(p) => {
            let ts = parse_triples(&p.triples)?;
            if scheme == Scheme::UnifiedSkg {
                Source::Triples(ts)
            } else {
                Source::Tables(kg_to_tables(&ts))
            }
        }
        Payload::Mr(p) => {
            let mrs = parse_mr(&p.text)?;
            if scheme == Scheme::E2eConcat {
                Source::Mr(mrs)
            } else {
                Source::Tables(vec![mr_to_virtual_table(&mrs)])
            }
        }
    })
}

fn linearize_table(t: &VirtualTable, scheme: Scheme, orientation: Orientation) -> Result<String> {
    let out = match (scheme, orientation) {
        (Scheme::Unified, Orientation::Highlighted) => linearize_highlighted(t)?,
        (Scheme::Unified, Orientation::Row) => linearize_rows(t),
        (Scheme::Unified, Orientation::Column) => linearize_columns(t)?,
        (Scheme::Totto, _) => linearize_totto_variant(t)?,
        (Scheme::LogicNlg, _) => linearize_logicnlg(t)?,
        _ => unreachable!("compatibility is checked before linearizing"),
    };
    Ok(out.into_text())
}

/// Checks that a unified string parses back to the table it came from.
pub fn verify_round_trip(
    source: &VirtualTable,
    orientation: Orientation,
    text: &str,
) -> Result<()> {
    let (parsed, parsed_orientation) = parse_unified(text)?;
    let fail = |detail: &str| {
        Err(Error::RoundTrip {
            detail: detail.into(),
        })
    };
    if parsed_orientation != orientation {
        return fail(&format!(
            "parsed as {parsed_orientation}, emitted as {orientation}"
        ));
    }
    if parsed.title != source.title || parsed.sub_title != source.sub_title {
        return fail("titles differ");
    }
    let same = match orientation {
        Orientation::Highlighted => parsed.rows[0].iter().eq(source.highlighted_cells()),
        _ => parsed.rows == source.rows,
    };
    if same {
        Ok(())
    } else {
        fail("cells differ")
    }
}

/// A converted record plus the table it was rendered from, when any.
struct Converted {
    output: OutputRecord,
    source: Option<VirtualTable>,
}

fn convert_inner(
    record: &Record,
    scheme: Scheme,
    orientation: Orientation,
) -> Result<Vec<Converted>> {
    if !is_compatible(record.form(), scheme, orientation) {
        return Err(Error::IncompatibleScheme {
            scheme: scheme.to_string(),
            orientation: orientation.to_string(),
            form: record.form().to_string(),
        });
    }
    let output = |id: String, text: String, warnings: Vec<String>| OutputRecord {
        id,
        scheme,
        orientation,
        text,
        warnings,
        meta: record.meta.clone(),
    };
    let converted = match load(record, scheme)? {
        Source::Triples(ts) => vec![Converted {
            output: output(
                record.id.clone(),
                linearize_unifiedskg_kg(&ts).into_text(),
                Vec::new(),
            ),
            source: None,
        }],
        Source::Mr(mrs) => vec![Converted {
            output: output(
                record.id.clone(),
                linearize_e2e_concat(&mrs).into_text(),
                Vec::new(),
            ),
            source: None,
        }],
        Source::Tables(tables) => {
            let split = record.form() == Form::Kg;
            let mut out = Vec::with_capacity(tables.len());
            for (k, table) in tables.into_iter().enumerate() {
                let id = if split {
                    format!("{}#{k}", record.id)
                } else {
                    record.id.clone()
                };
                let text = linearize_table(&table, scheme, orientation)?;
                let warnings = ambiguity_warnings(&table);
                out.push(Converted {
                    output: output(id, text, warnings),
                    source: Some(table),
                });
            }
            out
        }
    };
    Ok(converted)
}

/// Converts one record. KG records under the unified scheme produce one
/// output per connected component, with ids suffixed `#0`, `#1`, ...;
/// everything else produces exactly one output. Errors carry the record id.
pub fn convert(
    record: &Record,
    scheme: Scheme,
    orientation: Orientation,
) -> Result<Vec<OutputRecord>> {
    convert_inner(record, scheme, orientation)
        .map(|v| v.into_iter().map(|c| c.output).collect())
        .map_err(|e| e.in_record(&record.id))
}

#[derive(Debug, Clone, Copy)]
pub struct ConvertOptions {
    pub scheme: Scheme,
    pub orientation: Orientation,
    /// Stop at the first error instead of collecting them.
    pub strict: bool,
    /// Parse every unified output back and compare it with its source.
    pub validate: bool,
    /// Records converted in parallel per batch.
    pub batch_size: usize,
}

impl ConvertOptions {
    pub fn new(scheme: Scheme, orientation: Orientation) -> Self {
        ConvertOptions {
            scheme,
            orientation,
            strict: false,
            validate: false,
            batch_size: 256,
        }
    }
}

#[derive(Debug, Default)]
pub struct ConvertReport {
    pub records: usize,
    pub outputs: usize,
    /// Records whose form the scheme does not apply to.
    pub skipped: usize,
    pub errors: Vec<Error>,
}

fn convert_checked(record: &Record, opts: &ConvertOptions) -> Result<Vec<OutputRecord>> {
    let converted = convert_inner(record, opts.scheme, opts.orientation)
        .map_err(|e| e.in_record(&record.id))?;
    let mut outputs = Vec::with_capacity(converted.len());
    for c in converted {
        if !is_single_spaced(&c.output.text) {
            return Err(Error::RoundTrip {
                detail: "output breaks the single-space rule".into(),
            }
            .in_record(&c.output.id));
        }
        if opts.validate && opts.scheme == Scheme::Unified {
            if let Some(source) = &c.source {
                verify_round_trip(source, opts.orientation, &c.output.text)
                    .map_err(|e| e.in_record(&c.output.id))?;
            }
        }
        outputs.push(c.output);
    }
    Ok(outputs)
}

/// Converts a JSONL stream into a JSONL stream of [`OutputRecord`]s.
///
/// Records are converted in parallel within a batch and written in input
/// order. Records the scheme does not apply to are counted as skipped.
/// Without `strict` every error is collected in the report; with it the
/// first error is returned after the outputs preceding it were written.
pub fn convert_stream<R: BufRead, W: Write>(
    input: R,
    mut output: W,
    opts: &ConvertOptions,
) -> Result<ConvertReport> {
    let mut report = ConvertReport::default();
    let mut reader = RecordReader::new(input);
    let batch_size = opts.batch_size.max(1);
    loop {
        let batch: Vec<Result<Record>> = reader.by_ref().take(batch_size).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<Result<Vec<OutputRecord>>> = batch
            .par_iter()
            .map(|rec| match rec {
                Ok(r) => convert_checked(r, opts),
                Err(_) => Ok(Vec::new()),
            })
            .collect();
        for (rec, result) in batch.into_iter().zip(results) {
            let rec = match rec {
                Ok(r) => r,
                Err(e) if opts.strict => return Err(e),
                Err(e) => {
                    report.errors.push(e);
                    continue;
                }
            };
            report.records += 1;
            match result {
                Ok(outputs) => {
                    for o in &outputs {
                        serde_json::to_writer(&mut output, o).map_err(std::io::Error::from)?;
                        output.write_all(b"\n")?;
                    }
                    report.outputs += outputs.len();
                }
                Err(e) if matches!(e.root(), Error::IncompatibleScheme { .. }) => {
                    log::debug!("skipping {}: {e}", rec.id);
                    report.skipped += 1;
                }
                Err(e) if opts.strict => return Err(e),
                Err(e) => report.errors.push(e),
            }
        }
    }
    output.flush()?;
    Ok(report)
}

/// Minimum, maximum, mean and full histogram of a count.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Distribution {
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub mean: f64,
    pub histogram: BTreeMap<usize, usize>,
}

impl Distribution {
    fn add(&mut self, v: usize) {
        let n = self.histogram.values().sum::<usize>() as f64;
        self.min = Some(self.min.map_or(v, |m| m.min(v)));
        self.max = Some(self.max.map_or(v, |m| m.max(v)));
        self.mean += (v as f64 - self.mean) / (n + 1.0);
        *self.histogram.entry(v).or_default() += 1;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Stats {
    pub records: usize,
    pub errors: usize,
    pub forms: BTreeMap<Form, usize>,
    /// Virtual-table cells per record (all components together for KG).
    pub cells: Distribution,
    /// Number of KG records with a given component count.
    pub kg_components: BTreeMap<usize, usize>,
    pub kg_component_total: usize,
}

fn record_counts(record: &Record) -> Result<(usize, Option<usize>)> {
    Ok(match &record.payload {
        Payload::Table(p) => (p.to_virtual_table()?.cell_count(), None),
        Payload::Kg(p) => {
            let comps = connected_components(&parse_triples(&p.triples)?);
            let cells = comps
                .iter()
                .map(|c| triples_to_virtual_table(c).cell_count())
                .sum();
            (cells, Some(comps.len()))
        }
        Payload::Mr(p) => (parse_mr(&p.text)?.len(), None),
    })
}

/// Corpus counts over a record stream. Lines that fail to read or convert
/// are counted in `errors` and returned alongside.
pub fn stats_stream<R: BufRead>(input: R) -> (Stats, Vec<Error>) {
    let mut stats = Stats::default();
    for form in Form::ALL {
        stats.forms.insert(form, 0);
    }
    let mut errors = Vec::new();
    for rec in RecordReader::new(input) {
        let counts = rec.and_then(|r| {
            record_counts(&r)
                .map(|c| (r.form(), c))
                .map_err(|e| e.in_record(&r.id))
        });
        match counts {
            Ok((form, (cells, components))) => {
                stats.records += 1;
                *stats.forms.entry(form).or_default() += 1;
                stats.cells.add(cells);
                if let Some(k) = components {
                    *stats.kg_components.entry(k).or_default() += 1;
                    stats.kg_component_total += k;
                }
            }
            Err(e) => {
                stats.errors += 1;
                errors.push(e);
            }
        }
    }
    (stats, errors)
}

pub fn stats(path: impl AsRef<Path>) -> Result<(Stats, Vec<Error>)> {
    let file = BufReader::new(File::open(path)?);
    Ok(stats_stream(file))
}

#[derive(Debug, Default)]
pub struct ValidateReport {
    pub checked: usize,
    /// Lines whose `scheme` field names a non-unified scheme.
    pub skipped: usize,
    pub failures: Vec<(usize, Error)>,
}

/// Parses the unified string in field `column` of every JSONL line.
pub fn validate_stream<R: BufRead>(input: R, column: &str) -> Result<ValidateReport> {
    let mut report = ValidateReport::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = match serde_json::from_str(&line) {
            Ok(v) => v,
            Err(source) => {
                report.failures.push((
                    lineno,
                    Error::Json {
                        line: lineno,
                        source,
                    },
                ));
                continue;
            }
        };
        if value
            .get("scheme")
            .and_then(Value::as_str)
            .is_some_and(|s| s != Scheme::Unified.as_str())
        {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let Some(text) = value.get(column).and_then(Value::as_str) else {
            report.failures.push((
                lineno,
                Error::Schema {
                    line: lineno,
                    field: column.to_string(),
                    message: "missing or not a string".into(),
                },
            ));
            continue;
        };
        let outcome = parse_unified(text).and_then(|_| {
            if is_single_spaced(text) {
                Ok(())
            } else {
                Err(Error::RoundTrip {
                    detail: "text breaks the single-space rule".into(),
                })
            }
        });
        if let Err(e) = outcome {
            report.failures.push((lineno, e));
        }
    }
    Ok(report)
}
