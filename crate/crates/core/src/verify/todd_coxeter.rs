//! HLT coset enumeration with union-find coincidence processing.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

pub const DEFAULT_MAX_COSETS: usize = 50_000;

const UNDEF: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    BudgetExceeded,
}

/// Result of an enumeration. When complete, cosets are numbered `0..len`
/// with coset 0 the subgroup, and every entry is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    status: TableStatus,
    /// `action[c][2g]` is `c·g`, `action[c][2g+1]` is `c·g^-1`.
    action: Vec<Vec<usize>>,
    rank: usize,
    defined: usize,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Index of the subgroup, when the enumeration finished.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.action.len())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Total number of cosets defined during the run.
    pub fn cosets_defined(&self) -> usize {
        self.defined
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.action[coset][col(l)]
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }
}

#[inline]
fn col(l: Letter) -> usize {
    2 * l.index() + l.inverse as usize
}

struct Enumerator {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    ncols: usize,
    budget: usize,
    overflow: bool,
}

impl Enumerator {
    fn new(rank: usize, budget: usize) -> Self {
        let ncols = 2 * rank;
        Enumerator { table: vec![vec![UNDEF; ncols]], parent: vec![0], queue: Vec::new(), ncols, budget, overflow: false }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn find(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        if self.table.len() >= self.budget {
            self.overflow = true;
            return None;
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.table[dead][x];
                if d == UNDEF {
                    continue;
                }
                if self.table[d][x ^ 1] == dead {
                    self.table[d][x ^ 1] = UNDEF;
                }
                let mu = self.find(dead);
                let nu = self.find(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][x ^ 1] != UNDEF {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    /// Scans `w` at coset `c`, defining cosets until the scan completes.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != UNDEF {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != UNDEF {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return;
            }
            if self.define(f, w[i as usize]).is_none() {
                return;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`. Stops with [`TableStatus::BudgetExceeded`] once `budget`
/// cosets have been defined.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], budget: usize) -> Result<CosetTable> {
    let rank = p.rank();
    for w in subgroup {
        if let Some(g) = w.max_gen().filter(|&g| g >= rank) {
            return Err(Error::AlphabetMismatch { gen: g, size: rank });
        }
    }
    let cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&l| col(l)).collect() };
    let relators: Vec<Vec<usize>> = p.relators().iter().map(cols).collect();
    let mut e = Enumerator::new(rank, budget.max(1));

    for w in subgroup {
        let c = e.find(0);
        e.scan_and_fill(c, &cols(w));
        if e.overflow {
            return Ok(exceeded(rank, &e));
        }
    }
    let mut c = 0;
    while c < e.table.len() {
        for r in &relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r);
            if e.overflow {
                return Ok(exceeded(rank, &e));
            }
        }
        if e.live(c) {
            for x in 0..e.ncols {
                if e.table[c][x] == UNDEF && e.define(c, x).is_none() {
                    return Ok(exceeded(rank, &e));
                }
            }
        }
        c += 1;
    }
    Ok(compact(rank, e))
}

fn exceeded(rank: usize, e: &Enumerator) -> CosetTable {
    CosetTable { status: TableStatus::BudgetExceeded, action: Vec::new(), rank, defined: e.table.len() }
}

fn compact(rank: usize, mut e: Enumerator) -> CosetTable {
    let defined = e.table.len();
    let mut renumber = vec![UNDEF; defined];
    let mut live = Vec::new();
    for (c, slot) in renumber.iter_mut().enumerate() {
        if e.live(c) {
            *slot = live.len();
            live.push(c);
        }
    }
    let action = live
        .iter()
        .map(|&c| {
            (0..e.ncols)
                .map(|x| {
                    let d = e.table[c][x];
                    renumber[e.find(d)]
                })
                .collect()
        })
        .collect();
    CosetTable { status: TableStatus::Complete, action, rank, defined }
}

/// Order of the group, or `None` if the budget ran out.
pub fn group_order(p: &Presentation, budget: usize) -> Option<usize> {
    todd_coxeter(p, &[], budget).ok().and_then(|t| t.index())
}

/// Permutation of the cosets for each generator, from a complete table.
pub fn regular_rep(table: &CosetTable) -> Result<Vec<Vec<usize>>> {
    if !table.is_complete() {
        return Err(Error::IncompleteTable);
    }
    Ok((0..table.rank).map(|g| table.action.iter().map(|row| row[2 * g]).collect()).collect())
}

/// True iff `w` acts as the identity under the permutation representation.
pub fn word_holds(rep: &[Vec<usize>], w: &Word) -> Result<bool> {
    if let Some(g) = w.max_gen().filter(|&g| g >= rep.len()) {
        return Err(Error::AlphabetMismatch { gen: g, size: rep.len() });
    }
    let points = rep.first().map_or(1, Vec::len);
    Ok((0..points).all(|pt| apply_word(rep, w, pt) == pt))
}

/// Image of a point under the word, letters acting left to right.
pub fn apply_word(rep: &[Vec<usize>], w: &Word, point: usize) -> usize {
    w.letters().iter().fold(point, |pt, l| {
        let perm = &rep[l.index()];
        if l.inverse {
            perm.iter().position(|&q| q == pt).expect("permutation")
        } else {
            perm[pt]
        }
    })
}
