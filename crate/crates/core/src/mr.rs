//! Meaning representations of the form `attr[value], attr[value], ...`.
//!
//! Grammar: `pair (',' pair)*` where `pair = attr '[' value ']'`, `attr`
//! excludes `[` and `,`, and `value` excludes `]`. There is no nesting or
//! escaping. Whitespace around and inside each part is normalized.

use crate::error::{Error, Result};
use crate::ir::{make_virtual_table, Cell, VirtualTable};
use crate::text::normalize_ws;

/// Non-empty ordered list of attribute-value pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MrList {
    pairs: Vec<(String, String)>,
}

impl MrList {
    /// Builds a list from already split pairs, normalizing whitespace.
    ///
    /// Attributes may not contain `[` or `,` and values may not contain `]`,
    /// so that the rendered form parses back to the same list.
    pub fn new<A: AsRef<str>, V: AsRef<str>>(
        pairs: impl IntoIterator<Item = (A, V)>,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (attr, value) in pairs {
            let attr = normalize_ws(attr.as_ref());
            let value = normalize_ws(value.as_ref());
            if attr.is_empty() || value.is_empty() {
                return Err(syntax(0, "empty attribute or value"));
            }
            if attr.contains(['[', ',']) || value.contains(']') {
                return Err(syntax(
                    0,
                    "attribute or value contains a reserved bracket or comma",
                ));
            }
            out.push((attr, value));
        }
        if out.is_empty() {
            return Err(syntax(0, "no attribute-value pairs"));
        }
        Ok(MrList { pairs: out })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `attr[value]` pairs joined by `", "`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(a, v)| format!("{a}[{v}]"))
            .collect();
        parts.join(", ")
    }
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::MrSyntax {
        offset,
        message: message.to_string(),
    }
}

/// Parses an MR string. Errors carry the byte offset of the problem.
pub fn parse_mr(text: &str) -> Result<MrList> {
    let bytes = text.as_bytes();
    let mut pairs = Vec::new();
    let mut pos = 0;

    loop {
        // attribute runs up to '['; ',' or end-of-input first is an error
        let attr_start = pos;
        let open = loop {
            match bytes.get(pos) {
                Some(b'[') => break pos,
                Some(b',') => return Err(syntax(pos, "expected '[' after attribute")),
                Some(_) => pos += 1,
                None if text[attr_start..].trim().is_empty() => {
                    return Err(syntax(pos, "expected attribute"));
                }
                None => return Err(syntax(pos, "expected '[' after attribute")),
            }
        };
        let attr = normalize_ws(&text[attr_start..open]);
        if attr.is_empty() {
            return Err(syntax(open, "empty attribute"));
        }

        let close = match text[open + 1..].find(']') {
            Some(i) => open + 1 + i,
            None => return Err(syntax(open, "unclosed '['")),
        };
        let value = normalize_ws(&text[open + 1..close]);
        if value.is_empty() {
            return Err(syntax(open + 1, "empty value"));
        }
        pairs.push((attr, value));

        pos = close + 1;
        while bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
            pos += 1;
        }
        match bytes.get(pos) {
            None => break,
            Some(b',') => pos += 1,
            Some(_) => return Err(syntax(pos, "expected ',' or end of input")),
        }
    }
    Ok(MrList { pairs })
}

/// Single-row table: one cell per pair, the value under its attribute.
pub fn mr_to_virtual_table(mrs: &MrList) -> VirtualTable {
    let row = mrs
        .pairs
        .iter()
        .map(|(a, v)| Cell::new(v).with_col_header(a))
        .collect();
    make_virtual_table(None, None, vec![row], &[]).expect("an MR list is never empty")
}
