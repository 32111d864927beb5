//! Recognizing one presentation as a relabeling of another.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::tietze::involutions;
use crate::word::{GenId, Letter, Word};

pub const MAX_MATCH_RANK: usize = 8;

/// Image of each generator of the source: target index and whether the
/// generator goes to the inverse.
pub type Bijection = Vec<(usize, bool)>;

/// Searches generator bijections (with optional inversion of each generator)
/// under which the relator normal-form multisets of `p` and `q` coincide.
/// Candidates are visited in lexicographic order, non-inverted first.
pub fn match_presentations(p: &Presentation, q: &Presentation) -> Result<Option<Bijection>> {
    match_impl(p, q, None)
}

/// Like [`match_presentations`], but letters of generators with a square
/// relator in `q` are compared up to sign.
pub fn match_presentations_mod_involutions(p: &Presentation, q: &Presentation) -> Result<Option<Bijection>> {
    match_impl(p, q, Some(involutions(q)))
}

/// Least rotation of `w` or its inverse after making involution letters
/// positive.
fn folded_nf(w: &Word, inv: &[bool]) -> Word {
    let fold = |x: &Word| -> Vec<Letter> {
        x.letters().iter().map(|l| if inv[l.index()] { Letter { inverse: false, ..*l } } else { *l }).collect()
    };
    let c = w.cyclic_reduce();
    let mut best: Option<Vec<Letter>> = None;
    for base in [fold(&c), fold(&c.invert())] {
        for k in 0..base.len().max(1) {
            let mut r = base.clone();
            let len = r.len();
            r.rotate_left(k.min(len));
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default().into_iter().collect()
}

fn match_impl(p: &Presentation, q: &Presentation, inv: Option<Vec<bool>>) -> Result<Option<Bijection>> {
    let n = p.rank();
    if n > MAX_MATCH_RANK || q.rank() > MAX_MATCH_RANK {
        return Err(Error::RankTooLarge(n.max(q.rank())));
    }
    if n != q.rank() {
        return Ok(None);
    }
    // modulo involutions, relators equal up to sign are one relator
    let (p_rels, q_rels) = match &inv {
        None => (p.relators().to_vec(), q.relators().to_vec()),
        Some(q_inv) => (distinct_folded(p, &involutions(p)), distinct_folded(q, q_inv)),
    };
    if p_rels.len() != q_rels.len() {
        return Ok(None);
    }
    let canon = Canon(inv);
    let mut lens_p: Vec<usize> = p_rels.iter().map(|r| r.cyclic_reduce().len()).collect();
    let mut lens_q: Vec<usize> = q_rels.iter().map(|r| r.cyclic_reduce().len()).collect();
    lens_p.sort_unstable();
    lens_q.sort_unstable();
    if lens_p != lens_q {
        return Ok(None);
    }

    let sig_p: Vec<_> = (0..n).map(|g| signature(&p_rels, g)).collect();
    let sig_q: Vec<_> = (0..n).map(|g| signature(&q_rels, g)).collect();
    let mut counts: HashMap<Word, usize> = HashMap::new();
    for w in q_rels.iter().map(|r| canon.nf(r)).filter(|w| !w.is_empty()) {
        *counts.entry(w).or_default() += 1;
    }
    let mut search =
        Search { p_rels: &p_rels, canon, sig_p: &sig_p, sig_q: &sig_q, counts, assignment: vec![None; n], used: vec![false; n] };
    Ok(search.run(0).then(|| search.assignment.iter().map(|a| a.expect("complete")).collect()))
}

fn distinct_folded(p: &Presentation, inv: &[bool]) -> Vec<Word> {
    let mut v: Vec<Word> = p.relators().iter().map(|r| folded_nf(r, inv)).filter(|w| !w.is_empty()).collect();
    v.sort();
    v.dedup();
    v
}

/// Per-generator relabeling invariant: sorted `(relator length, occurrences,
/// |exponent sum|)` over relators containing the generator.
fn signature(rels: &[Word], g: usize) -> Vec<(usize, usize, i64)> {
    let mut s: Vec<_> = rels
        .iter()
        .map(Word::cyclic_reduce)
        .filter(|r| r.occurrences(g) > 0)
        .map(|r| (r.len(), r.occurrences(g), r.exponent_sum(g).abs()))
        .collect();
    s.sort_unstable();
    s
}

/// Applies a bijection to a word.
pub fn relabel(w: &Word, map: &[(usize, bool)]) -> Word {
    w.letters()
        .iter()
        .map(|l| {
            let (img, flip) = map[l.index()];
            Letter { gen: GenId(img), inverse: l.inverse ^ flip }
        })
        .collect()
}

/// Relator normal form, optionally modulo involution signs.
struct Canon(Option<Vec<bool>>);

impl Canon {
    fn nf(&self, w: &Word) -> Word {
        match &self.0 {
            None => w.relator_nf(),
            Some(inv) => folded_nf(w, inv),
        }
    }
}

struct Search<'a> {
    p_rels: &'a [Word],
    canon: Canon,
    sig_p: &'a [Vec<(usize, usize, i64)>],
    sig_q: &'a [Vec<(usize, usize, i64)>],
    counts: HashMap<Word, usize>,
    assignment: Vec<Option<(usize, bool)>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, g: usize) -> bool {
        if g == self.assignment.len() {
            return self.full_check();
        }
        for h in 0..self.used.len() {
            if self.used[h] || self.sig_p[g] != self.sig_q[h] {
                continue;
            }
            for flip in [false, true] {
                self.assignment[g] = Some((h, flip));
                self.used[h] = true;
                if self.partial_ok(g) && self.run(g + 1) {
                    return true;
                }
                self.used[h] = false;
                self.assignment[g] = None;
            }
        }
        false
    }

    /// Relators whose generators are all assigned and include `g` must map
    /// into the target multiset.
    fn partial_ok(&self, g: usize) -> bool {
        let map: Vec<(usize, bool)> = self.assignment.iter().map(|a| a.unwrap_or((usize::MAX, false))).collect();
        let mut need: HashMap<Word, usize> = HashMap::new();
        for r in self.p_rels {
            let max = r.max_gen().unwrap_or(0);
            if max > g || r.occurrences(g) == 0 {
                continue;
            }
            let img = self.canon.nf(&relabel(r, &map));
            let c = need.entry(img).or_default();
            *c += 1;
        }
        need.iter().all(|(w, &c)| self.counts.get(w).copied().unwrap_or(0) >= c)
    }

    fn full_check(&self) -> bool {
        let map: Vec<(usize, bool)> = self.assignment.iter().map(|a| a.expect("complete")).collect();
        let mut have: HashMap<Word, usize> = HashMap::new();
        for r in self.p_rels {
            *have.entry(self.canon.nf(&relabel(r, &map))).or_default() += 1;
        }
        have == self.counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{coxeter_presentation, parse_presentation, CoxeterMatrix, ExtNat};

    #[test]
    fn identity_and_mismatch() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        assert_eq!(match_presentations(&p, &p).unwrap(), Some(vec![(0, false), (1, false)]));
        let a2 = parse_presentation("< a | a^2 >").unwrap();
        let a3 = parse_presentation("< a | a^3 >").unwrap();
        assert_eq!(match_presentations(&a2, &a3).unwrap(), None);
        let big = Presentation::new(Presentation::indexed_names("x", 9), vec![]).unwrap();
        assert_eq!(match_presentations(&big, &big), Err(Error::RankTooLarge(9)));
    }

    #[test]
    fn finds_swap_with_inversion() {
        let p = parse_presentation("< a, b | a^3, b^2, a b a b^-1 >").unwrap();
        let q = parse_presentation("< x, y | y^-3, x^2, y^-1 x y^-1 x^-1 >").unwrap();
        let m = match_presentations(&p, &q).unwrap().unwrap();
        assert_eq!(m[0].0, 1);
        assert_eq!(m[1].0, 0);
    }

    #[test]
    fn involution_signs() {
        let p = parse_presentation("< x, y | x^2, y^2, x y^-1 x y >").unwrap();
        let q = parse_presentation("< a, b | a^2, b^2, (a b)^2 >").unwrap();
        assert_eq!(match_presentations(&p, &q).unwrap(), None);
        assert!(match_presentations_mod_involutions(&p, &q).unwrap().is_some());
    }

    #[test]
    fn coxeter_relabeling() {
        let a3t = coxeter_presentation(&CoxeterMatrix::from_fn(4, |i, j| ExtNat::Finite(if j - i == 2 { 2 } else { 3 })).unwrap());
        // same 4-cycle with vertices listed as 1,3,2,4
        let perm = coxeter_presentation(&CoxeterMatrix::from_fn(4, |i, j| ExtNat::Finite(if (i, j) == (0, 3) || (i, j) == (1, 2) { 2 } else { 3 })).unwrap());
        assert!(match_presentations(&a3t, &perm).unwrap().is_some());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn relabelings_match(seed in prop::sample::subsequence((0..4usize).collect::<Vec<_>>(), 4).prop_shuffle(), flips in prop::collection::vec(any::<bool>(), 4)) {
                let p = parse_presentation("< a, b, c, d | a^2, b^3, (a c)^2, a b c d, d^4 b^-1 >").unwrap();
                let map: Vec<(usize, bool)> = seed.iter().copied().zip(flips).collect();
                let rels = p.relators().iter().map(|r| relabel(r, &map)).collect();
                let q = Presentation::new(Presentation::indexed_names("x", 4), rels).unwrap();
                let found = match_presentations(&p, &q).unwrap().unwrap();
                let back: Vec<Word> = p.relators().iter().map(|r| relabel(r, &found).relator_nf()).collect();
                let mut back = back;
                back.sort();
                prop_assert_eq!(back, q.relator_nf_multiset());
            }
        }
    }
}
