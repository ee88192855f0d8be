//! The unified tagged linearization and its parser.
//!
//! Output is a flat sequence of tokens separated by one ASCII space. A cell
//! renders as `<cell> value <col_header> h </col_header> <row_header> r
//! </row_header> </cell>`, with header units in stored order and omitted for
//! headerless cells. Titles come first, then `<table> ... </table>`.
//!
//! Only whitespace-delimited tokens that exactly spell a tag are treated as
//! tags. Values that contain such tokens are emitted verbatim and reported by
//! [`ambiguity_warnings`].

use crate::error::{Error, Result};
use crate::ir::{Cell, LinearizedText, Orientation, Scheme, VirtualTable};
use crate::text::TokenWriter;

/// The eight basic units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitTag {
    Table,
    Column,
    Row,
    Cell,
    ColHeader,
    RowHeader,
    Title,
    SubTitle,
}

impl UnitTag {
    pub const ALL: [UnitTag; 8] = [
        UnitTag::Table,
        UnitTag::Column,
        UnitTag::Row,
        UnitTag::Cell,
        UnitTag::ColHeader,
        UnitTag::RowHeader,
        UnitTag::Title,
        UnitTag::SubTitle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnitTag::Table => "table",
            UnitTag::Column => "column",
            UnitTag::Row => "row",
            UnitTag::Cell => "cell",
            UnitTag::ColHeader => "col_header",
            UnitTag::RowHeader => "row_header",
            UnitTag::Title => "title",
            UnitTag::SubTitle => "sub_title",
        }
    }

    pub fn open(self) -> &'static str {
        match self {
            UnitTag::Table => "<table>",
            UnitTag::Column => "<column>",
            UnitTag::Row => "<row>",
            UnitTag::Cell => "<cell>",
            UnitTag::ColHeader => "<col_header>",
            UnitTag::RowHeader => "<row_header>",
            UnitTag::Title => "<title>",
            UnitTag::SubTitle => "<sub_title>",
        }
    }

    pub fn close(self) -> &'static str {
        match self {
            UnitTag::Table => "</table>",
            UnitTag::Column => "</column>",
            UnitTag::Row => "</row>",
            UnitTag::Cell => "</cell>",
            UnitTag::ColHeader => "</col_header>",
            UnitTag::RowHeader => "</row_header>",
            UnitTag::Title => "</title>",
            UnitTag::SubTitle => "</sub_title>",
        }
    }
}

/// Spellings of the title and sub-title units. The ToTTo variant differs
/// from the unified format only here.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TitleTags {
    pub title: (&'static str, &'static str),
    pub sub_title: (&'static str, &'static str),
}

pub(crate) const UNIFIED_TITLES: TitleTags = TitleTags {
    title: ("<title>", "</title>"),
    sub_title: ("<sub_title>", "</sub_title>"),
};

pub(crate) const TOTTO_TITLES: TitleTags = TitleTags {
    title: ("<page_title>", "</page_title>"),
    sub_title: ("<section_title>", "</section_title>"),
};

fn is_tag(tok: &str) -> bool {
    UnitTag::ALL
        .iter()
        .any(|t| t.open() == tok || t.close() == tok)
}

fn is_any_known_tag(tok: &str) -> bool {
    is_tag(tok)
        || [TOTTO_TITLES.title, TOTTO_TITLES.sub_title]
            .iter()
            .any(|(o, c)| *o == tok || *c == tok)
}

fn emit_titles(w: &mut TokenWriter, t: &VirtualTable, tags: TitleTags) {
    for (text, (open, close)) in [(&t.title, tags.title), (&t.sub_title, tags.sub_title)] {
        if let Some(text) = text {
            w.token(open);
            w.words(text);
            w.token(close);
        }
    }
}

fn emit_headers(w: &mut TokenWriter, tag: UnitTag, headers: &[String]) {
    for h in headers {
        w.token(tag.open());
        w.words(h);
        w.token(tag.close());
    }
}

fn emit_cell(w: &mut TokenWriter, cell: &Cell, with_col_headers: bool) {
    w.token(UnitTag::Cell.open());
    w.words(&cell.value);
    if with_col_headers {
        emit_headers(w, UnitTag::ColHeader, &cell.col_headers);
    }
    emit_headers(w, UnitTag::RowHeader, &cell.row_headers);
    w.token(UnitTag::Cell.close());
}

pub(crate) fn highlighted_with(t: &VirtualTable, tags: TitleTags) -> Result<String> {
    if t.highlights.is_empty() {
        return Err(Error::NoHighlights);
    }
    let mut w = TokenWriter::new();
    emit_titles(&mut w, t, tags);
    w.token(UnitTag::Table.open());
    for &(r, c) in &t.highlights {
        let cell = t
            .cell(r, c)
            .ok_or(Error::HighlightOutOfBounds { row: r, col: c })?;
        emit_cell(&mut w, cell, true);
    }
    w.token(UnitTag::Table.close());
    Ok(w.finish())
}

/// Emits only the highlighted cells, top-to-bottom and left-to-right.
pub fn linearize_highlighted(t: &VirtualTable) -> Result<LinearizedText> {
    let text = highlighted_with(t, UNIFIED_TITLES)?;
    Ok(LinearizedText::new(
        text,
        Scheme::Unified,
        Orientation::Highlighted,
    ))
}

/// Emits the whole table row by row; highlights are ignored.
pub fn linearize_rows(t: &VirtualTable) -> LinearizedText {
    let mut w = TokenWriter::new();
    emit_titles(&mut w, t, UNIFIED_TITLES);
    w.token(UnitTag::Table.open());
    for row in &t.rows {
        w.token(UnitTag::Row.open());
        for cell in row {
            emit_cell(&mut w, cell, true);
        }
        w.token(UnitTag::Row.close());
    }
    w.token(UnitTag::Table.close());
    LinearizedText::new(w.finish(), Scheme::Unified, Orientation::Row)
}

/// Emits the table column by column, each column's header units once at the
/// start of the column.
///
/// The grid must be rectangular, and all cells of a column must carry the
/// same column headers. Row headers stay inside their cells.
pub fn linearize_columns(t: &VirtualTable) -> Result<LinearizedText> {
    let width = t.rows.first().map_or(0, Vec::len);
    if let Some((row, r)) = t.rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(Error::NotRectangular {
            row,
            expected: width,
            found: r.len(),
        });
    }
    for col in 0..width {
        let headers = &t.rows[0][col].col_headers;
        if let Some(row) = (1..t.rows.len()).find(|&r| &t.rows[r][col].col_headers != headers) {
            return Err(Error::InconsistentColumnHeaders { row, col });
        }
    }

    let mut w = TokenWriter::new();
    emit_titles(&mut w, t, UNIFIED_TITLES);
    w.token(UnitTag::Table.open());
    for col in 0..width {
        w.token(UnitTag::Column.open());
        emit_headers(&mut w, UnitTag::ColHeader, &t.rows[0][col].col_headers);
        for row in &t.rows {
            emit_cell(&mut w, &row[col], false);
        }
        w.token(UnitTag::Column.close());
    }
    w.token(UnitTag::Table.close());
    Ok(LinearizedText::new(
        w.finish(),
        Scheme::Unified,
        Orientation::Column,
    ))
}

/// Warnings for titles, values and headers containing a token that spells a
/// tag. Such text is emitted verbatim but will not parse back faithfully.
pub fn ambiguity_warnings(t: &VirtualTable) -> Vec<String> {
    let has_tag = |s: &str| {
        s.split_whitespace()
            .find(|w| is_any_known_tag(w))
            .map(str::to_string)
    };
    let mut out = Vec::new();
    for (field, text) in [("title", &t.title), ("sub_title", &t.sub_title)] {
        if let Some(tok) = text.as_deref().and_then(has_tag) {
            out.push(format!(
                "AmbiguousValue in {field}: contains tag token {tok}"
            ));
        }
    }
    for (r, row) in t.rows.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let found = std::iter::once(&cell.value)
                .chain(&cell.col_headers)
                .chain(&cell.row_headers)
                .find_map(|s| has_tag(s));
            if let Some(tok) = found {
                out.push(format!(
                    "AmbiguousValue at ({r},{c}): contains tag token {tok}"
                ));
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).copied()
    }

    /// Error for the current token when it does not fit. `open` is the unit
    /// being parsed, reported when input ends inside it.
    fn unexpected(&self, open: &'static str) -> Error {
        match self.peek() {
            None => Error::UnbalancedTag {
                offset: self.pos,
                tag: open.to_string(),
            },
            Some(tok) if tok.starts_with("</") && is_tag(tok) => Error::UnbalancedTag {
                offset: self.pos,
                tag: tok.to_string(),
            },
            Some(tok) => Error::UnexpectedToken {
                offset: self.pos,
                token: tok.to_string(),
            },
        }
    }

    fn unexpected_token(&self) -> Error {
        Error::UnexpectedToken {
            offset: self.pos,
            token: self.peek().unwrap_or_default().to_string(),
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Plain words up to the next tag token.
    fn words(&mut self) -> String {
        let mut out = Vec::new();
        while let Some(tok) = self.peek().filter(|t| !is_tag(t)) {
            out.push(tok);
            self.pos += 1;
        }
        out.join(" ")
    }

    /// `<x> words </x>` after the opening tag was consumed; words non-empty.
    fn text_unit(&mut self, tag: UnitTag) -> Result<String> {
        let text = self.words();
        if text.is_empty() && self.peek() == Some(tag.close()) {
            return Err(self.unexpected_token());
        }
        if !self.eat(tag.close()) {
            return Err(self.unexpected(tag.open()));
        }
        Ok(text)
    }

    fn headers(&mut self, tag: UnitTag) -> Result<Vec<String>> {
        let mut out = Vec::new();
        while self.eat(tag.open()) {
            out.push(self.text_unit(tag)?);
        }
        Ok(out)
    }

    fn cell(&mut self, in_column: bool) -> Result<Cell> {
        let value = self.words();
        let col_headers = if in_column {
            Vec::new()
        } else {
            self.headers(UnitTag::ColHeader)?
        };
        let row_headers = self.headers(UnitTag::RowHeader)?;
        if !self.eat(UnitTag::Cell.close()) {
            return Err(self.unexpected(UnitTag::Cell.open()));
        }
        Ok(Cell {
            value,
            col_headers,
            row_headers,
        })
    }

    /// One or more `<cell>` units followed by `close`.
    fn cells_until(&mut self, unit: UnitTag, in_column: bool) -> Result<Vec<Cell>> {
        let mut cells = Vec::new();
        loop {
            if self.eat(UnitTag::Cell.open()) {
                cells.push(self.cell(in_column)?);
            } else if !cells.is_empty() && self.eat(unit.close()) {
                return Ok(cells);
            } else if self.peek() == Some(unit.close()) {
                return Err(self.unexpected_token());
            } else {
                return Err(self.unexpected(unit.open()));
            }
        }
    }

    fn table_body(&mut self) -> Result<(Vec<Vec<Cell>>, Orientation)> {
        match self.peek() {
            Some(t) if t == UnitTag::Row.open() => {
                let mut rows = Vec::new();
                while self.eat(UnitTag::Row.open()) {
                    rows.push(self.cells_until(UnitTag::Row, false)?);
                }
                Ok((rows, Orientation::Row))
            }
            Some(t) if t == UnitTag::Column.open() => {
                let mut columns: Vec<Vec<Cell>> = Vec::new();
                while self.eat(UnitTag::Column.open()) {
                    let headers = self.headers(UnitTag::ColHeader)?;
                    let mut cells = self.cells_until(UnitTag::Column, true)?;
                    if let Some(first) = columns.first() {
                        if first.len() != cells.len() {
                            return Err(Error::UnexpectedToken {
                                offset: self.pos - 1,
                                token: UnitTag::Column.close().to_string(),
                            });
                        }
                    }
                    for c in &mut cells {
                        c.col_headers = headers.clone();
                    }
                    columns.push(cells);
                }
                let height = columns[0].len();
                let mut rows: Vec<Vec<Cell>> = vec![Vec::with_capacity(columns.len()); height];
                for column in columns {
                    for (row, cell) in rows.iter_mut().zip(column) {
                        row.push(cell);
                    }
                }
                Ok((rows, Orientation::Column))
            }
            Some(t) if t == UnitTag::Cell.open() => {
                let mut cells = Vec::new();
                while self.eat(UnitTag::Cell.open()) {
                    cells.push(self.cell(false)?);
                }
                Ok((vec![cells], Orientation::Highlighted))
            }
            Some(t) if t == UnitTag::Table.close() => Err(self.unexpected_token()),
            _ => Err(self.unexpected(UnitTag::Table.open())),
        }
    }

    fn document(&mut self) -> Result<(VirtualTable, Orientation)> {
        let title = if self.eat(UnitTag::Title.open()) {
            Some(self.text_unit(UnitTag::Title)?)
        } else {
            None
        };
        let sub_title = if self.eat(UnitTag::SubTitle.open()) {
            Some(self.text_unit(UnitTag::SubTitle)?)
        } else {
            None
        };
        if !self.eat(UnitTag::Table.open()) {
            return Err(self.unexpected_token());
        }
        let (rows, orientation) = self.table_body()?;
        if !self.eat(UnitTag::Table.close()) {
            return Err(self.unexpected(UnitTag::Table.open()));
        }
        if self.peek().is_some() {
            return Err(self.unexpected_token());
        }
        let highlights = match orientation {
            Orientation::Highlighted => (0..rows[0].len()).map(|c| (0, c)).collect(),
            _ => Vec::new(),
        };
        let table = VirtualTable {
            title,
            sub_title,
            rows,
            highlights,
        };
        Ok((table, orientation))
    }
}

/// Parses a unified string back into a table and its orientation.
///
/// A highlighted document becomes a single row holding the highlighted
/// cells, all marked as highlighted. Error offsets count whitespace separated
/// tokens from zero.
pub fn parse_unified(text: &str) -> Result<(VirtualTable, Orientation)> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let mut p = Parser { toks, pos: 0 };
    p.document()
}
