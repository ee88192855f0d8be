//! Test-only oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use unitable::{make_virtual_table, Cell, VirtualTable};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const WORDS: &[&str] = &[
    "2014",
    "2016",
    "0",
    "Kids",
    "in",
    "Love",
    "La",
    "Vie",
    "[fr]",
    "São",
    "Paulo",
    "Évelyn",
    "x-y",
    "a&b",
    "(politician)",
    "Drum",
    "and",
    "bass",
    "42.5",
    "FIELD_GOALS",
    "é",
    "東京",
    "it's",
    "N/A",
    "--",
    "#1",
];

pub fn phrase(rng: &mut TestRng, min: usize, max: usize) -> String {
    let n = rng.gen_range(min..=max);
    (0..n)
        .map(|_| *WORDS.choose(rng).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Phrase with random extra whitespace, which ingestion must normalize.
pub fn messy_phrase(rng: &mut TestRng, min: usize, max: usize) -> String {
    let seps = [" ", "  ", "\t", " \n "];
    let n = rng.gen_range(min..=max);
    let mut s = String::new();
    if rng.gen_bool(0.2) {
        s.push(' ');
    }
    for i in 0..n {
        if i > 0 {
            s.push_str(seps.choose(rng).unwrap());
        }
        s.push_str(WORDS.choose(rng).unwrap());
    }
    if rng.gen_bool(0.2) {
        s.push('\t');
    }
    s
}

fn headers(rng: &mut TestRng, max: usize) -> Vec<String> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| messy_phrase(rng, 1, 3)).collect()
}

fn titles(rng: &mut TestRng) -> (Option<String>, Option<String>) {
    let t = rng.gen_bool(0.6).then(|| messy_phrase(rng, 1, 4));
    let s = rng.gen_bool(0.5).then(|| messy_phrase(rng, 1, 3));
    (t, s)
}

fn highlights(rng: &mut TestRng, rows: &[Vec<Cell>], non_empty: bool) -> Vec<(usize, usize)> {
    let coords: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| (0..row.len()).map(move |c| (r, c)))
        .collect();
    let lo = usize::from(non_empty);
    let n = rng.gen_range(lo..=coords.len().min(6).max(lo));
    (0..n).map(|_| *coords.choose(rng).unwrap()).collect()
}

/// Possibly ragged table with arbitrary headers; cell values may be empty.
pub fn random_table(rng: &mut TestRng, non_empty_highlights: bool) -> VirtualTable {
    let n_rows = rng.gen_range(1..=5);
    let rows: Vec<Vec<Cell>> = (0..n_rows)
        .map(|_| {
            let width = rng.gen_range(1..=5);
            (0..width)
                .map(|_| {
                    let value = messy_phrase(rng, 0, 4);
                    Cell::from_parts(&value, &headers(rng, 2), &headers(rng, 1))
                })
                .collect()
        })
        .collect();
    let hl = highlights(rng, &rows, non_empty_highlights);
    let (t, s) = titles(rng);
    make_virtual_table(t.as_deref(), s.as_deref(), rows, &hl).unwrap()
}

/// Rectangular table whose columns each share one header list.
pub fn random_column_table(rng: &mut TestRng) -> VirtualTable {
    let n_rows = rng.gen_range(1..=5);
    let width = rng.gen_range(1..=5);
    let col_headers: Vec<Vec<String>> = (0..width).map(|_| headers(rng, 2)).collect();
    let rows: Vec<Vec<Cell>> = (0..n_rows)
        .map(|_| {
            col_headers
                .iter()
                .map(|h| Cell::from_parts(&messy_phrase(rng, 0, 4), h, &headers(rng, 1)))
                .collect()
        })
        .collect();
    let hl = highlights(rng, &rows, false);
    let (t, s) = titles(rng);
    make_virtual_table(t.as_deref(), s.as_deref(), rows, &hl).unwrap()
}

/// Table in which every cell has exactly one column header.
pub fn random_single_header_table(rng: &mut TestRng) -> VirtualTable {
    let n_rows = rng.gen_range(1..=5);
    let rows: Vec<Vec<Cell>> = (0..n_rows)
        .map(|_| {
            let width = rng.gen_range(1..=5);
            (0..width)
                .map(|_| Cell::new(messy_phrase(rng, 1, 4)).with_col_header(phrase(rng, 1, 2)))
                .collect()
        })
        .collect();
    let hl = highlights(rng, &rows, true);
    let (t, s) = titles(rng);
    make_virtual_table(t.as_deref(), s.as_deref(), rows, &hl).unwrap()
}

/// Up to `max_triples` triples over at most `max_labels` node labels.
pub fn random_triples(
    rng: &mut TestRng,
    max_triples: usize,
    max_labels: usize,
) -> Vec<[String; 3]> {
    let n_labels = rng.gen_range(1..=max_labels);
    let labels: Vec<String> = (0..n_labels).map(|i| format!("Node {i}")).collect();
    let relations = [
        "FIELD_GOALS",
        "birth place",
        "leaderName",
        "r",
        "stylistic origin",
    ];
    // skewed towards small sets so that disconnected graphs are common
    let cap = rng.gen_range(1..=max_triples);
    let n = rng.gen_range(1..=cap);
    (0..n)
        .map(|_| {
            [
                labels.choose(rng).unwrap().clone(),
                relations.choose(rng).unwrap().to_string(),
                labels.choose(rng).unwrap().clone(),
            ]
        })
        .collect()
}

/// Connected components by exhaustive DFS over a node adjacency built from
/// scratch. Returns triple indices per component, components ordered by
/// their smallest triple index.
pub fn dfs_components(triples: &[[String; 3]]) -> Vec<Vec<usize>> {
    let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
    for [h, _, t] in triples {
        adj.entry(h).or_default().push(t);
        adj.entry(t).or_default().push(h);
    }
    let mut comp_of: HashMap<&str, usize> = HashMap::new();
    let mut next = 0;
    for [h, _, _] in triples {
        if comp_of.contains_key(h.as_str()) {
            continue;
        }
        let mut stack = vec![h.as_str()];
        while let Some(n) = stack.pop() {
            if comp_of.contains_key(n) {
                continue;
            }
            comp_of.insert(n, next);
            stack.extend(adj[n].iter().copied().filter(|m| !comp_of.contains_key(m)));
        }
        next += 1;
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, [h, _, _]) in triples.iter().enumerate() {
        groups.entry(comp_of[h.as_str()]).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Nodes that never occur as a tail.
pub fn never_tail_count(triples: &[[String; 3]]) -> usize {
    let tails: HashSet<&str> = triples.iter().map(|t| t[2].as_str()).collect();
    let nodes: HashSet<&str> = triples
        .iter()
        .flat_map(|t| [t[0].as_str(), t[2].as_str()])
        .collect();
    nodes.iter().filter(|n| !tails.contains(*n)).count()
}

/// True when every tag token (`<name>` / `</name>`) is matched and properly
/// nested.
pub fn tags_balanced(text: &str) -> bool {
    let mut stack: Vec<&str> = Vec::new();
    for tok in text.split(' ') {
        let Some(inner) = tok.strip_prefix('<').and_then(|t| t.strip_suffix('>')) else {
            continue;
        };
        if let Some(name) = inner.strip_prefix('/') {
            if stack.pop() != Some(name) {
                return false;
            }
        } else if !inner.is_empty() && inner.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
            stack.push(inner);
        }
    }
    stack.is_empty()
}

pub fn single_spaced(text: &str) -> bool {
    !text.starts_with(' ')
        && !text.ends_with(' ')
        && !text.contains("  ")
        && !text.contains(['\n', '\t'])
}

/// Canonical MR pair list (no reserved characters, normalized spacing).
pub fn random_mr_pairs(rng: &mut TestRng) -> Vec<(String, String)> {
    let attrs = [
        "name",
        "eatType",
        "food",
        "priceRange",
        "familyFriendly",
        "near",
        "area",
        "customer rating",
    ];
    let n = rng.gen_range(1..=8);
    (0..n)
        .map(|_| {
            let a = attrs.choose(rng).unwrap().to_string();
            let v = phrase(rng, 1, 4).replace(['[', ']'], "");
            let v = if v.trim().is_empty() {
                "x".to_string()
            } else {
                v.split_whitespace().collect::<Vec<_>>().join(" ")
            };
            (a, v)
        })
        .collect()
}

pub fn alma() -> VirtualTable {
    let data = [
        ["2014", "La Vie devant elles [fr]", "Solana"],
        ["2016", "Kids in Love", "Evelyn"],
        ["2017", "The Starry Sky Above Me", "Justyna"],
    ];
    let headers = ["Year", "Title", "Role"];
    let rows = data
        .iter()
        .map(|row| {
            row.iter()
                .zip(headers)
                .map(|(v, h)| Cell::new(v).with_col_header(h))
                .collect()
        })
        .collect();
    make_virtual_table(
        Some("Alma Jodorowsky"),
        Some("Filmography"),
        rows,
        &[(1, 0), (1, 1), (1, 2)],
    )
    .unwrap()
}
