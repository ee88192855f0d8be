//! The virtual-table intermediate representation.
//!
//! Every adapter produces a [`VirtualTable`] and every serializer consumes
//! one. Tables built through [`make_virtual_table`] are canonical: cell text
//! is whitespace-normalized, empty headers are dropped and the highlight list
//! is sorted and duplicate-free. The fields are public so callers can inspect
//! them freely; [`validate`] reports any invariant a hand-edited table breaks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{is_normalized, normalize_ws};

/// One table cell: a value plus its column and row header names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub value: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub col_headers: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub row_headers: Vec<String>,
}

impl Cell {
    /// A headerless cell.
    pub fn new(value: impl AsRef<str>) -> Self {
        Cell {
            value: normalize_ws(value.as_ref()),
            col_headers: Vec::new(),
            row_headers: Vec::new(),
        }
    }

    pub fn with_col_header(mut self, header: impl AsRef<str>) -> Self {
        push_header(&mut self.col_headers, header.as_ref());
        self
    }

    pub fn with_row_header(mut self, header: impl AsRef<str>) -> Self {
        push_header(&mut self.row_headers, header.as_ref());
        self
    }

    /// Builds a cell from raw parts, applying ingestion normalization.
    pub fn from_parts<S: AsRef<str>>(value: &str, col_headers: &[S], row_headers: &[S]) -> Self {
        let mut cell = Cell::new(value);
        for h in col_headers {
            push_header(&mut cell.col_headers, h.as_ref());
        }
        for h in row_headers {
            push_header(&mut cell.row_headers, h.as_ref());
        }
        cell
    }

    fn canonicalized(&self) -> Cell {
        Cell::from_parts(&self.value, &self.col_headers, &self.row_headers)
    }
}

fn push_header(headers: &mut Vec<String>, raw: &str) {
    let h = normalize_ws(raw);
    if !h.is_empty() {
        headers.push(h);
    }
}

/// Title, sub-title, a (possibly ragged) grid of cells and the highlighted
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VirtualTable {
    pub title: Option<String>,
    pub sub_title: Option<String>,
    pub rows: Vec<Vec<Cell>>,
    pub highlights: Vec<(usize, usize)>,
}

impl VirtualTable {
    /// Replaces the title and sub-title, normalizing them the same way
    /// [`make_virtual_table`] does.
    pub fn with_titles(mut self, title: Option<&str>, sub_title: Option<&str>) -> Self {
        self.title = normalize_title(title);
        self.sub_title = normalize_title(sub_title);
        self
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<&Cell> {
        self.rows.get(row).and_then(|r| r.get(col))
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Highlighted cells in canonical (top-to-bottom, left-to-right) order.
    /// Out-of-bounds coordinates are skipped.
    pub fn highlighted_cells(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.highlights.iter().filter_map(|&(r, c)| self.cell(r, c))
    }

    /// Structural equality ignoring highlights: titles, grid shape, values
    /// and headers.
    pub fn same_content(&self, other: &VirtualTable) -> bool {
        self.title == other.title && self.sub_title == other.sub_title && self.rows == other.rows
    }

    /// Width of every row if the grid is rectangular.
    pub fn width(&self) -> Option<usize> {
        let first = self.rows.first()?.len();
        self.rows.iter().all(|r| r.len() == first).then_some(first)
    }
}

fn normalize_title(raw: Option<&str>) -> Option<String> {
    raw.map(normalize_ws).filter(|t| !t.is_empty())
}

/// Builds a canonical [`VirtualTable`].
///
/// Cell values, headers and titles are whitespace-normalized; an empty
/// title becomes `None`. Highlights are sorted and deduplicated after every
/// coordinate has been bound-checked.
pub fn make_virtual_table(
    title: Option<&str>,
    sub_title: Option<&str>,
    rows: Vec<Vec<Cell>>,
    highlights: &[(usize, usize)],
) -> Result<VirtualTable> {
    if rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    if let Some(row) = rows.iter().position(Vec::is_empty) {
        return Err(Error::EmptyRow { row });
    }
    for &(row, col) in highlights {
        if row >= rows.len() || col >= rows[row].len() {
            return Err(Error::HighlightOutOfBounds { row, col });
        }
    }
    let mut highlights = highlights.to_vec();
    highlights.sort_unstable();
    highlights.dedup();

    let rows = rows
        .iter()
        .map(|r| r.iter().map(Cell::canonicalized).collect())
        .collect();

    Ok(VirtualTable {
        title: normalize_title(title),
        sub_title: normalize_title(sub_title),
        rows,
        highlights,
    })
}

/// Which invariant a [`Violation`] breaks, with its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    EmptyTable,
    EmptyRow {
        row: usize,
    },
    HighlightOutOfBounds {
        row: usize,
        col: usize,
    },
    /// Highlight at `index` is not strictly greater than its predecessor.
    HighlightsNotCanonical {
        index: usize,
    },
    /// Cell value contains a newline or is not whitespace-normalized.
    IllegalCellValue {
        row: usize,
        col: usize,
    },
    /// A header is empty or not whitespace-normalized.
    IllegalHeader {
        row: usize,
        col: usize,
    },
    /// Title or sub-title is empty or not whitespace-normalized.
    IllegalTitle {
        field: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self.kind {
            ViolationKind::EmptyTable => "EmptyTable",
            ViolationKind::EmptyRow { .. } => "EmptyRow",
            ViolationKind::HighlightOutOfBounds { .. } => "HighlightOutOfBounds",
            ViolationKind::HighlightsNotCanonical { .. } => "HighlightsNotCanonical",
            ViolationKind::IllegalCellValue { .. } => "IllegalCellValue",
            ViolationKind::IllegalHeader { .. } => "IllegalHeader",
            ViolationKind::IllegalTitle { .. } => "IllegalTitle",
        }
    }
}

impl From<ViolationKind> for Violation {
    fn from(kind: ViolationKind) -> Self {
        Violation { kind }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::EmptyTable => write!(f, "EmptyTable"),
            ViolationKind::EmptyRow { row } => write!(f, "EmptyRow at row {row}"),
            ViolationKind::HighlightOutOfBounds { row, col } => {
                write!(f, "HighlightOutOfBounds at ({row},{col})")
            }
            ViolationKind::HighlightsNotCanonical { index } => {
                write!(f, "HighlightsNotCanonical at highlight #{index}")
            }
            ViolationKind::IllegalCellValue { row, col } => {
                write!(f, "IllegalCellValue at ({row},{col})")
            }
            ViolationKind::IllegalHeader { row, col } => {
                write!(f, "IllegalHeader at ({row},{col})")
            }
            ViolationKind::IllegalTitle { field } => write!(f, "IllegalTitle in {field}"),
        }
    }
}

/// Lists every invariant the table breaks; empty when it is canonical.
pub fn validate(table: &VirtualTable) -> Vec<Violation> {
    let mut out: Vec<Violation> = Vec::new();

    for (field, value) in [("title", &table.title), ("sub_title", &table.sub_title)] {
        if let Some(t) = value {
            if t.is_empty() || !is_normalized(t) {
                out.push(ViolationKind::IllegalTitle { field }.into());
            }
        }
    }

    if table.rows.is_empty() {
        out.push(ViolationKind::EmptyTable.into());
    }
    for (r, row) in table.rows.iter().enumerate() {
        if row.is_empty() {
            out.push(ViolationKind::EmptyRow { row: r }.into());
        }
        for (c, cell) in row.iter().enumerate() {
            if !is_normalized(&cell.value) {
                out.push(ViolationKind::IllegalCellValue { row: r, col: c }.into());
            }
            let bad_header = cell
                .col_headers
                .iter()
                .chain(&cell.row_headers)
                .any(|h| h.is_empty() || !is_normalized(h));
            if bad_header {
                out.push(ViolationKind::IllegalHeader { row: r, col: c }.into());
            }
        }
    }

    for (i, &(row, col)) in table.highlights.iter().enumerate() {
        if table.cell(row, col).is_none() {
            out.push(ViolationKind::HighlightOutOfBounds { row, col }.into());
        }
        if i > 0 && table.highlights[i - 1] >= (row, col) {
            out.push(ViolationKind::HighlightsNotCanonical { index: i }.into());
        }
    }
    out
}

/// Which serializer produced a [`LinearizedText`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Unified,
    Totto,
    #[serde(rename = "unifiedskg")]
    UnifiedSkg,
    #[serde(rename = "logicnlg")]
    LogicNlg,
    E2eConcat,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Unified => "unified",
            Scheme::Totto => "totto",
            Scheme::UnifiedSkg => "unifiedskg",
            Scheme::LogicNlg => "logicnlg",
            Scheme::E2eConcat => "e2e_concat",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Highlighted,
    Row,
    Column,
    NotApplicable,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Highlighted => "highlighted",
            Orientation::Row => "row",
            Orientation::Column => "column",
            Orientation::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A serialized token string with the scheme and orientation that made it.
///
/// Only the serializers in this crate construct these, and they always emit
/// single-space separated text without leading or trailing whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearizedText {
    text: String,
    scheme: Scheme,
    orientation: Orientation,
}

impl LinearizedText {
    pub(crate) fn new(text: String, scheme: Scheme, orientation: Orientation) -> Self {
        debug_assert!(crate::text::is_single_spaced(&text), "{text:?}");
        LinearizedText {
            text,
            scheme,
            orientation,
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn into_text(self) -> String {
        self.text
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

impl fmt::Display for LinearizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
