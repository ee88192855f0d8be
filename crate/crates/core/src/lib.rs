//! Converts tables with highlighted cells, knowledge-graph triple sets and
//! textual meaning representations into one virtual-table representation,
//! and serializes it as deterministic token strings.
//!
//! Every input form goes through an adapter that produces a [`VirtualTable`]:
//!
//! * [`kg`] splits a triple set into connected components and turns each one
//!   into a single-row table (tail as value, relation as column header).
//! * [`mr`] parses `attribute[value], ...` strings into a single-row table.
//!
//! The [`unified`] module renders tables with the tagged units (`<table>`,
//! `<row>`, `<column>`, `<cell>`, `<col_header>`, `<row_header>`, `<title>`,
//! `<sub_title>`) and parses them back. [`legacy`] holds the four dataset
//! specific formats used for comparison, and [`dataset`] is the JSONL batch
//! layer behind the `unitable` binary.

pub mod dataset;
pub mod error;
pub mod ir;
pub mod kg;
pub mod legacy;
pub mod mr;
pub mod text;
pub mod unified;

pub use error::{Error, Result};
pub use ir::{
    make_virtual_table, validate, Cell, LinearizedText, Orientation, Scheme, Violation,
    ViolationKind, VirtualTable,
};
pub use kg::{
    connected_components, kg_to_tables, parse_triples, triples_to_virtual_table, Triple, TripleSet,
};
pub use legacy::{
    linearize_e2e_concat, linearize_logicnlg, linearize_logicnlg_with, linearize_totto_variant,
    linearize_unifiedskg_kg, LegacyScheme, LogicNlgConfig,
};
pub use mr::{mr_to_virtual_table, parse_mr, MrList};
pub use unified::{
    linearize_columns, linearize_highlighted, linearize_rows, parse_unified, UnitTag,
};
