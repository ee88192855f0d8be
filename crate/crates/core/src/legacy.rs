//! Dataset-specific linearizations used as baselines: the ToTTo highlighted
//! format, the UnifiedSKG triple format, the LogicNLG sentence template and
//! plain E2E MR concatenation.

use crate::error::{Error, Result};
use crate::ir::{LinearizedText, Orientation, Scheme, VirtualTable};
use crate::kg::TripleSet;
use crate::mr::MrList;
use crate::text::normalize_ws;
use crate::unified::{highlighted_with, TOTTO_TITLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegacyScheme {
    TottoVariant,
    UnifiedSkgKg,
    LogicNlgTemplate,
    E2eConcat,
}

impl LegacyScheme {
    pub fn scheme(self) -> Scheme {
        match self {
            LegacyScheme::TottoVariant => Scheme::Totto,
            LegacyScheme::UnifiedSkgKg => Scheme::UnifiedSkg,
            LegacyScheme::LogicNlgTemplate => Scheme::LogicNlg,
            LegacyScheme::E2eConcat => Scheme::E2eConcat,
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            LegacyScheme::TottoVariant => Orientation::Highlighted,
            LegacyScheme::LogicNlgTemplate => Orientation::Row,
            LegacyScheme::UnifiedSkgKg | LegacyScheme::E2eConcat => Orientation::NotApplicable,
        }
    }
}

/// Highlighted cells with `<page_title>` and `<section_title>` in place of
/// the title units.
pub fn linearize_totto_variant(t: &VirtualTable) -> Result<LinearizedText> {
    let text = highlighted_with(t, TOTTO_TITLES)?;
    Ok(LinearizedText::new(
        text,
        Scheme::Totto,
        Orientation::Highlighted,
    ))
}

fn relation_words(relation: &str) -> String {
    normalize_ws(&relation.to_lowercase().replace('_', " "))
}

/// `head : relation : tail` per triple, joined by ` | `. Relations are
/// lowercased with underscores turned into spaces.
pub fn linearize_unifiedskg_kg(ts: &TripleSet) -> LinearizedText {
    let parts: Vec<String> = ts
        .triples()
        .iter()
        .map(|t| format!("{} : {} : {}", t.head, relation_words(&t.relation), t.tail))
        .collect();
    LinearizedText::new(
        parts.join(" | "),
        Scheme::UnifiedSkg,
        Orientation::NotApplicable,
    )
}

/// Separators for the LogicNLG template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicNlgConfig {
    /// Placed between `the {header} is {value}` clauses of one row.
    pub clause_joiner: String,
    /// Appended after the last clause of each row.
    pub row_terminator: String,
}

impl Default for LogicNlgConfig {
    fn default() -> Self {
        LogicNlgConfig {
            clause_joiner: " , ".into(),
            row_terminator: " .".into(),
        }
    }
}

/// `Given the table title of {title}, {sub_title}. In row 1 , the {header}
/// is {value} , ... .` with the default separators.
pub fn linearize_logicnlg(t: &VirtualTable) -> Result<LinearizedText> {
    linearize_logicnlg_with(t, &LogicNlgConfig::default())
}

/// LogicNLG template with custom separators. Every cell needs exactly one
/// column header. The title sentence is left out when the table has neither
/// a title nor a sub-title.
pub fn linearize_logicnlg_with(
    t: &VirtualTable,
    config: &LogicNlgConfig,
) -> Result<LinearizedText> {
    let mut sentences = Vec::with_capacity(t.rows.len() + 1);
    let titles: Vec<&str> = [&t.title, &t.sub_title]
        .into_iter()
        .flatten()
        .map(String::as_str)
        .collect();
    if !titles.is_empty() {
        sentences.push(format!("Given the table title of {}.", titles.join(", ")));
    }
    for (r, row) in t.rows.iter().enumerate() {
        let mut clauses = Vec::with_capacity(row.len());
        for (c, cell) in row.iter().enumerate() {
            match cell.col_headers.as_slice() {
                [header] => clauses.push(format!("the {header} is {}", cell.value)),
                [] => return Err(Error::MissingHeader { row: r, col: c }),
                _ => return Err(Error::MultipleHeaders { row: r, col: c }),
            }
        }
        sentences.push(format!(
            "In row {} , {}{}",
            r + 1,
            clauses.join(&config.clause_joiner),
            config.row_terminator
        ));
    }
    let text = normalize_ws(&sentences.join(" "));
    Ok(LinearizedText::new(
        text,
        Scheme::LogicNlg,
        Orientation::Row,
    ))
}

/// `attr[value]` pairs joined by `", "`.
pub fn linearize_e2e_concat(mrs: &MrList) -> LinearizedText {
    LinearizedText::new(mrs.render(), Scheme::E2eConcat, Orientation::NotApplicable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::tests::alma;
    use crate::ir::{make_virtual_table, Cell};
    use crate::kg::parse_triples;
    use crate::mr::parse_mr;
    use crate::unified::linearize_highlighted;

    #[test]
    fn totto_swaps_title_tags() {
        let t = alma();
        let unified = linearize_highlighted(&t).unwrap().into_text();
        let totto = linearize_totto_variant(&t).unwrap();
        let expected = unified
            .replace("<title>", "<page_title>")
            .replace("</title>", "</page_title>")
            .replace("<sub_title>", "<section_title>")
            .replace("</sub_title>", "</section_title>");
        assert_eq!(totto.text(), expected);
        assert_eq!(totto.scheme(), Scheme::Totto);
        assert!(totto.text().starts_with("<page_title> Alma Jodorowsky </page_title> <section_title> Filmography </section_title> <table>"));
    }

    #[test]
    fn totto_without_titles_matches_unified() {
        let mut t = alma();
        t.title = None;
        t.sub_title = None;
        assert_eq!(
            linearize_totto_variant(&t).unwrap().text(),
            linearize_highlighted(&t).unwrap().text()
        );
        t.highlights.clear();
        assert!(matches!(
            linearize_totto_variant(&t),
            Err(Error::NoHighlights)
        ));
    }

    #[test]
    fn unifiedskg_wasmund() {
        let ts = parse_triples([
            ["William Wasmund", "FIELD_GOALS", "0"],
            ["William Wasmund", "EXTRA_POINTS", "0"],
        ])
        .unwrap();
        assert_eq!(
            linearize_unifiedskg_kg(&ts).text(),
            "William Wasmund : field goals : 0 | William Wasmund : extra points : 0"
        );
        let one = parse_triples([["A", "R_X", "B"]]).unwrap();
        assert_eq!(linearize_unifiedskg_kg(&one).text(), "A : r x : B");
        let doubled = parse_triples([["A", "R__X_", "B"]]).unwrap();
        assert_eq!(linearize_unifiedskg_kg(&doubled).text(), "A : r x : B");
    }

    #[test]
    fn unifiedskg_dart_case_study() {
        let ts = parse_triples([
            ["Uruguay", "leader name", "Ral Fernando Sendic Rodrguez"],
            ["Alfredo Zitarrosa", "death place", "Montevideo"],
            ["Montevideo", "country", "Uruguay"],
            ["Montevideo", "leader name", "Daniel Martnez (politician)"],
            ["Uruguay", "language", "Spanish language"],
        ])
        .unwrap();
        assert_eq!(
            linearize_unifiedskg_kg(&ts).text(),
            "Uruguay : leader name : Ral Fernando Sendic Rodrguez | Alfredo Zitarrosa : death place : Montevideo | Montevideo : country : Uruguay | Montevideo : leader name : Daniel Martnez (politician) | Uruguay : language : Spanish language"
        );
    }

    #[test]
    fn logicnlg_alma() {
        let out = linearize_logicnlg(&alma()).unwrap();
        assert_eq!(
            out.text(),
            "Given the table title of Alma Jodorowsky, Filmography. \
             In row 1 , the Year is 2014 , the Title is La Vie devant elles [fr] , the Role is Solana . \
             In row 2 , the Year is 2016 , the Title is Kids in Love , the Role is Evelyn . \
             In row 3 , the Year is 2017 , the Title is The Starry Sky Above Me , the Role is Justyna ."
        );
        assert_eq!(out.orientation(), Orientation::Row);
    }

    #[test]
    fn logicnlg_minimal_and_errors() {
        let t = make_virtual_table(
            Some("T"),
            None,
            vec![vec![Cell::new("v").with_col_header("h")]],
            &[],
        )
        .unwrap();
        assert_eq!(
            linearize_logicnlg(&t).unwrap().text(),
            "Given the table title of T. In row 1 , the h is v ."
        );

        let untitled = make_virtual_table(
            None,
            None,
            vec![vec![Cell::new("v").with_col_header("h")]],
            &[],
        )
        .unwrap();
        assert_eq!(
            linearize_logicnlg(&untitled).unwrap().text(),
            "In row 1 , the h is v ."
        );

        let bare = make_virtual_table(None, None, vec![vec![Cell::new("v")]], &[]).unwrap();
        assert!(matches!(
            linearize_logicnlg(&bare),
            Err(Error::MissingHeader { row: 0, col: 0 })
        ));

        let two = make_virtual_table(
            None,
            None,
            vec![vec![Cell::new("v")
                .with_col_header("a")
                .with_col_header("b")]],
            &[],
        )
        .unwrap();
        assert!(matches!(
            linearize_logicnlg(&two),
            Err(Error::MultipleHeaders { row: 0, col: 0 })
        ));
    }

    #[test]
    fn logicnlg_custom_separators() {
        let cfg = LogicNlgConfig {
            clause_joiner: "; ".into(),
            row_terminator: ".".into(),
        };
        let t = make_virtual_table(
            None,
            None,
            vec![vec![
                Cell::new("1").with_col_header("a"),
                Cell::new("2").with_col_header("b"),
            ]],
            &[],
        )
        .unwrap();
        assert_eq!(
            linearize_logicnlg_with(&t, &cfg).unwrap().text(),
            "In row 1 , the a is 1; the b is 2."
        );
    }

    #[test]
    fn e2e_concat() {
        let cocum = "name[Cocum], eatType[coffee shop], food[Italian], priceRange[cheap], familyFriendly[yes]";
        assert_eq!(
            linearize_e2e_concat(&parse_mr(cocum).unwrap()).text(),
            cocum
        );
        assert_eq!(
            linearize_e2e_concat(&parse_mr("name[Zizzi]").unwrap()).text(),
            "name[Zizzi]"
        );
        assert_eq!(
            linearize_e2e_concat(&parse_mr(" name[ Zizzi ] ,near[x]").unwrap()).text(),
            "name[Zizzi], near[x]"
        );
    }
}
