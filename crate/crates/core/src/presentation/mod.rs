//! Finite presentations, Coxeter matrices and power-commutator data, plus the
//! constructors for every group family the crate works with.

#![allow(clippy::needless_range_loop)]

mod families;
mod instance;
mod parse;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::Word;

pub use families::{artin_presentation, coxeter_presentation, pc_presentation};
pub use instance::{
    build_artin_instance, build_klein_instance, build_prop2_instance, build_thm1_instance,
    double_coxeter_matrix, EmbeddingInstance, Family, InstanceParams, RewriteRules,
};
pub use parse::{parse_presentation, parse_word};

/// `⟨ generators | relators ⟩`. Relators are stored freely and cyclically
/// reduced; empty ones are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !is_valid_name(n) {
                return Err(Error::InvalidParameter(format!("invalid generator name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        let size = names.len();
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_gen() {
                if g >= size {
                    return Err(Error::AlphabetMismatch { gen: g, size });
                }
            }
            let r = r.cyclic_reduce();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation { names, relators: rels })
    }

    /// Generators named `prefix1 .. prefixN`.
    pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Multiset of relator normal forms, sorted.
    pub fn relator_nf_multiset(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.relators.iter().map(Word::relator_nf).filter(|w| !w.is_empty()).collect();
        v.sort();
        v
    }

    /// Set of relator normal forms, sorted and deduplicated.
    pub fn relator_nf_set(&self) -> Vec<Word> {
        let mut v = self.relator_nf_multiset();
        v.dedup();
        v
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.names)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display_with(&self.names).to_string()
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", r.display_with(&self.names))?;
        }
        f.write_str(" >")
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

pub(crate) fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A positive integer or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Infinite
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(ExtNat::Infinite);
        }
        match t.parse::<u64>() {
            Ok(v) if v >= 1 => Ok(ExtNat::Finite(v)),
            _ => Err(Error::InvalidParameter(format!("expected a positive integer or `inf`, got `{t}`"))),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Parses a comma-separated list such as `2,inf,4`.
pub fn parse_ext_list(text: &str) -> Result<Vec<ExtNat>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(str::parse).collect()
}

/// Parses the matrix file format: one row per line, comma separated, `inf`
/// for ∞. Diagonal entries are ignored and may hold anything.
pub fn parse_ext_matrix(text: &str) -> Result<Vec<Vec<ExtNat>>> {
    let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, line) in rows.iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != n {
            return Err(Error::InvalidMatrix(format!("row {} has {} entries, expected {n}", i + 1, cells.len())));
        }
        let mut row = Vec::with_capacity(n);
        for (j, c) in cells.iter().enumerate() {
            row.push(if i == j { ExtNat::Finite(1) } else { c.parse()? });
        }
        out.push(row);
    }
    Ok(out)
}

/// Symmetric Coxeter matrix with unit diagonal and off-diagonal labels ≥ 2 or ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    labels: Vec<Vec<ExtNat>>,
}

impl CoxeterMatrix {
    pub fn from_rows(rows: Vec<Vec<ExtNat>>) -> Result<Self> {
        let n = rows.len();
        let mut labels = rows;
        for i in 0..n {
            if labels[i].len() != n {
                return Err(Error::InvalidMatrix(format!("row {} has wrong length", i + 1)));
            }
            labels[i][i] = ExtNat::Finite(1);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if labels[i][j] != labels[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({},{}) and ({},{}) differ", i + 1, j + 1, j + 1, i + 1)));
                }
                if labels[i][j] == ExtNat::Finite(1) {
                    return Err(Error::InvalidMatrix(format!("off-diagonal label 1 at ({},{})", i + 1, j + 1)));
                }
            }
        }
        Ok(CoxeterMatrix { labels })
    }

    /// Builds the matrix from its strict upper triangle.
    pub fn from_fn<F: Fn(usize, usize) -> ExtNat>(n: usize, label: F) -> Result<Self> {
        let mut rows = vec![vec![ExtNat::Finite(1); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let m = label(i, j);
                rows[i][j] = m;
                rows[j][i] = m;
            }
        }
        Self::from_rows(rows)
    }

    /// Rank-n matrix with a single label for every pair.
    pub fn uniform(n: usize, m: ExtNat) -> Result<Self> {
        Self::from_fn(n, |_, _| m)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_rows(parse_ext_matrix(text)?)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> ExtNat {
        self.labels[i][j]
    }

    pub fn rows(&self) -> &[Vec<ExtNat>] {
        &self.labels
    }

    /// All finite off-diagonal labels are even.
    pub fn is_even(&self) -> bool {
        self.off_diagonal().all(|(_, _, m)| m.finite().is_none_or(|v| v % 2 == 0))
    }

    pub fn is_right_angled(&self) -> bool {
        self.off_diagonal().all(|(_, _, m)| matches!(m, ExtNat::Finite(2) | ExtNat::Infinite))
    }

    /// `(i, j, m_ij)` for `i < j`.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, ExtNat)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j, self.labels[i][j])))
    }
}

/// Data of a finite-order power commutator group: commutator powers `n_ij`
/// and generator orders `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcSpec {
    powers: Vec<Vec<ExtNat>>,
    orders: Vec<ExtNat>,
}

impl PcSpec {
    pub fn new(powers: Vec<Vec<ExtNat>>, orders: Vec<ExtNat>) -> Result<Self> {
        let n = orders.len();
        if powers.len() != n || powers.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("commutator power matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if powers[i][j] != powers[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({},{}) and ({},{}) differ", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(PcSpec { powers, orders })
    }

    pub fn from_fn<F: Fn(usize, usize) -> ExtNat>(orders: Vec<ExtNat>, power: F) -> Result<Self> {
        let n = orders.len();
        let mut rows = vec![vec![ExtNat::Finite(1); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                rows[i][j] = power(i, j);
                rows[j][i] = rows[i][j];
            }
        }
        Self::new(rows, orders)
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn power(&self, i: usize, j: usize) -> ExtNat {
        self.powers[i][j]
    }

    pub fn order(&self, i: usize) -> ExtNat {
        self.orders[i]
    }

    pub fn orders(&self) -> &[ExtNat] {
        &self.orders
    }
}
