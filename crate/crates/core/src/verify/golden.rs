//! Reference component tables, checked cell by cell against the builtin
//! trees. Header `Ψ1` is the combined base output of a block; every other
//! header names a component by its scheme label. `-` is the empty string.

use std::fmt;

use crate::alphabet::SymbolString;
use crate::error::Result;
use crate::extractors::{builtin, Scheme};

const TABLES: &[(&str, &str)] = &[
    (
        "peres2",
        "x  Ψ1 u v
         00 -  0 0
         01 0  1 -
         10 1  1 -
         11 -  0 1",
    ),
    (
        "peres3face",
        "x  Ψ1 u v w
         00 -  0 0 -
         01 0  1 - 1
         02 0  1 - 2
         10 1  1 - 1
         11 -  0 1 -
         12 0  1 - 0
         20 1  1 - 2
         21 1  1 - 0
         22 -  0 2 -",
    ),
    (
        "peres4face",
        "x  Ψ1 u v w1 w2
         00 -  0 0 -  -
         01 0  1 - 0  -
         02 0  1 - 1  -
         03 0  1 - 2  -
         10 1  1 - 0  -
         11 -  0 1 -  -
         12 0  1 - 3  -
         13 0  2 - -  0
         20 1  1 - 1  -
         21 1  1 - 3  -
         22 -  0 2 -  -
         23 0  2 - -  1
         30 1  1 - 2  -
         31 1  2 - -  0
         32 1  2 - -  1
         33 -  0 3 -  -",
    ),
    (
        "peres4face_alt",
        "x  Ψ1 u v w1 w2
         00 -  0 0 -  -
         01 0  1 - 0  -
         02 0  1 - 1  -
         03 0  1 - 2  -
         10 1  1 - 0  -
         11 -  0 1 -  -
         12 0  1 - 3  -
         13 0  1 - -  0
         20 1  1 - 1  -
         21 1  1 - 3  -
         22 -  0 2 -  -
         23 0  1 - -  1
         30 1  1 - 2  -
         31 1  1 - -  0
         32 1  1 - -  1
         33 -  0 3 -  -",
    ),
    (
        "peres3bit",
        "x   u v v1 v2 Ψ1 w
         000 0 0 0  -  -  -
         001 1 - -  -  0  0
         010 1 - -  -  1  0
         011 1 - -  -  0  1
         100 0 1 -  0  -  -
         101 1 - -  -  1  1
         110 0 1 -  1  -  -
         111 0 0 1  -  -  -",
    ),
    (
        "dijkstra3",
        "x   Ψ1 u v w
         000 -  0 0 -
         001 0  1 - 0
         010 1  1 - 0
         011 0  1 - 1
         100 2  1 - 0
         101 2  1 - 1
         110 1  1 - 1
         111 -  0 1 -",
    ),
];

/// Comparison of one reference table with the corresponding builtin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTable {
    pub scheme: String,
    pub cells: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenReport {
    pub tables: Vec<GoldenTable>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.tables.iter().all(|t| t.mismatches.is_empty())
    }

    pub fn cells(&self) -> usize {
        self.tables.iter().map(|t| t.cells).sum()
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tables {
            if t.mismatches.is_empty() {
                writeln!(f, "TABLE {} OK {} cells", t.scheme, t.cells)?;
            } else {
                writeln!(f, "TABLE {} FAIL {}", t.scheme, t.mismatches.join("; "))?;
            }
        }
        Ok(())
    }
}

fn cell(digits: &[u8]) -> String {
    if digits.is_empty() {
        "-".to_string()
    } else {
        crate::alphabet::digits_to_string(digits)
    }
}

fn compare(scheme: &Scheme, text: &str) -> Result<GoldenTable> {
    let tree = scheme.tree();
    let mut lines = text.lines().map(str::split_whitespace);
    let header: Vec<&str> = lines.next().expect("table has a header").skip(1).collect();
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for row in lines {
        let row: Vec<&str> = row.collect();
        let x = SymbolString::parse(row[0], tree.source_alphabet())?;
        let block = tree.block_index(x.symbols());
        for (&column, &expected) in header.iter().zip(&row[1..]) {
            let actual = if column == "Ψ1" {
                cell(scheme.base_digits(block))
            } else {
                let k = scheme
                    .labels()
                    .iter()
                    .position(|l| l == column)
                    .expect("golden headers name existing components");
                match tree.table(k).get(block) {
                    Some(d) => cell(&[d]),
                    None => "-".to_string(),
                }
            };
            cells += 1;
            if actual != expected {
                mismatches.push(format!(
                    "{column}({}) = {actual}, table says {expected}",
                    row[0]
                ));
            }
        }
    }
    Ok(GoldenTable {
        scheme: scheme.name().to_string(),
        cells,
        mismatches,
    })
}

/// Checks every embedded reference table.
pub fn golden_tables() -> Result<GoldenReport> {
    let tables = TABLES
        .iter()
        .map(|(name, text)| compare(&builtin(name)?, text))
        .collect::<Result<_>>()?;
    Ok(GoldenReport { tables })
}
