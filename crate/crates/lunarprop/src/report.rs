//! CSV report tables.
//!
//! Dialect: comma separated, one header row, LF line endings, UTF-8.
//! Numbers carry 6 significant digits. Column orders:
//!
//! | table      | columns |
//! |------------|---------|
//! | yearly     | scenario, year, node, l_p, r_opt, rate, phi, x, omega, xi, chi, g, gamma, psi0, psi, lunar_cost, terrestrial_cost |
//! | advantage  | node, then one column per scenario (first year with psi < 1, `NONE` if never) |
//! | elasticity | parameter, then one column per G/x regime |
//! | phi        | study, computed, published, mismatch |

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::catalog::PhiRow;
use crate::costmodel::{ElasticityParam, YearlyCostRecord};
use crate::transport::Node;

/// Round to 6 significant digits and print without trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    rounded.to_string()
}

pub fn fmt_year(y: Option<u32>) -> String {
    y.map_or_else(|| "NONE".to_string(), |y| y.to_string())
}

/// One CSV file: a name (without extension), a header and string rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        header: impl IntoIterator<Item = S>,
    ) -> Self {
        Self {
            name: name.into(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_to<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Tables produced by one command, written in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportSet {
    pub tables: Vec<Table>,
}

impl ReportSet {
    pub fn get(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn extend(&mut self, other: ReportSet) {
        self.tables.extend(other.tables);
    }

    /// Write every table as `<dir>/<name>.csv`, creating `dir` if needed.
    pub fn write_dir(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.tables
            .iter()
            .map(|t| {
                let path = dir.join(format!("{}.csv", t.name));
                let f = io::BufWriter::new(std::fs::File::create(&path)?);
                t.write_to(f)?;
                Ok(path)
            })
            .collect()
    }
}

pub const YEARLY_COLUMNS: [&str; 17] = [
    "scenario",
    "year",
    "node",
    "l_p",
    "r_opt",
    "rate",
    "phi",
    "x",
    "omega",
    "xi",
    "chi",
    "g",
    "gamma",
    "psi0",
    "psi",
    "lunar_cost",
    "terrestrial_cost",
];

/// One row per (scenario, year, node), in the order given.
pub fn yearly_table(name: &str, runs: &[(String, Vec<YearlyCostRecord>)]) -> Table {
    let mut t = Table::new(name, YEARLY_COLUMNS);
    for (label, records) in runs {
        for r in records {
            let st = &r.state;
            for (node, psi) in &st.psi {
                t.push(vec![
                    label.clone(),
                    r.year.to_string(),
                    node.to_string(),
                    fmt_num(r.l_p),
                    fmt_num(r.r_opt),
                    fmt_num(r.rate),
                    fmt_num(st.phi),
                    fmt_num(st.x),
                    fmt_num(st.omega),
                    fmt_num(st.xi),
                    fmt_num(st.chi),
                    fmt_num(st.g),
                    fmt_num(st.gamma[node]),
                    fmt_num(st.psi0),
                    fmt_num(*psi),
                    fmt_num(r.lunar_cost[node]),
                    fmt_num(r.terrestrial_cost[node]),
                ]);
            }
        }
    }
    t
}

/// Nodes down the side, scenarios across the top.
pub fn advantage_table(name: &str, cols: &[(String, BTreeMap<Node, Option<u32>>)]) -> Table {
    let mut t = Table::new(
        name,
        std::iter::once("node".to_string()).chain(cols.iter().map(|(l, _)| l.clone())),
    );
    let nodes: Vec<Node> = Node::SALE
        .into_iter()
        .filter(|n| cols.iter().any(|(_, m)| m.contains_key(n)))
        .collect();
    for n in nodes {
        let mut row = vec![n.to_string()];
        row.extend(
            cols.iter()
                .map(|(_, m)| fmt_year(m.get(&n).copied().flatten())),
        );
        t.push(row);
    }
    t
}

/// Parameters down the side, G/x regimes across the top.
pub fn elasticity_table(name: &str, regimes: &[(f64, Vec<(ElasticityParam, f64)>)]) -> Table {
    let mut t = Table::new(
        name,
        std::iter::once("parameter".to_string())
            .chain(regimes.iter().map(|(r, _)| format!("G/x={}", fmt_num(*r)))),
    );
    for (i, p) in ElasticityParam::ALL.iter().enumerate() {
        let mut row = vec![p.as_str().to_string()];
        row.extend(regimes.iter().map(|(_, e)| fmt_num(e[i].1)));
        t.push(row);
    }
    t
}

pub fn phi_table(name: &str, rows: &[PhiRow]) -> Table {
    let mut t = Table::new(name, ["study", "computed", "published", "mismatch"]);
    for r in rows {
        t.push(vec![
            r.study.clone(),
            r.computed.map(fmt_num).unwrap_or_default(),
            fmt_num(r.published),
            r.mismatch.to_string(),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(1234.5678), "1234.57");
        assert_eq!(fmt_num(0.000123456789), "0.000123457");
        assert_eq!(fmt_num(436e6), "436000000");
        assert_eq!(fmt_num(-2.0), "-2");
        assert_eq!(fmt_num(0.0), "0");
    }

    #[test]
    fn csv_dialect() {
        let mut t = Table::new("t", ["a", "b"]);
        t.push(vec!["x,y".into(), "1".into()]);
        assert_eq!(t.to_csv(), "a,b\n\"x,y\",1\n");
    }
}
