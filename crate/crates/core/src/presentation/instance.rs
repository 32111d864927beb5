//! The four doubling constructions: an ambient group on `R ∪ S`, a map onto
//! `Z_2^n`, and the kernel presentation it is expected to produce.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::families::{alternating, artin_named, pc_named};
use super::{CoxeterMatrix, ExtNat, PcSpec, Presentation};
use crate::error::{Error, Result};
use crate::schreier::HomZ2n;
use crate::word::{Letter, Word};

/// Involution and commutation relations used to evaluate Schreier words
/// inside the ambient group rather than in the free group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRules {
    involutions: Vec<bool>,
    commuting: BTreeSet<(usize, usize)>,
    order: Vec<usize>,
}

impl RewriteRules {
    /// Letter order defaults to generator index order.
    pub fn new(rank: usize, involutions: &[usize], commuting: &[(usize, usize)]) -> Result<Self> {
        let mut inv = vec![false; rank];
        for &g in involutions {
            *inv.get_mut(g).ok_or(Error::AlphabetMismatch { gen: g, size: rank })? = true;
        }
        let mut pairs = BTreeSet::new();
        for &(a, b) in commuting {
            if a == b {
                return Err(Error::InvalidParameter(format!("commuting pair ({a},{b}) repeats a generator")));
            }
            if a.max(b) >= rank {
                return Err(Error::AlphabetMismatch { gen: a.max(b), size: rank });
            }
            pairs.insert((a.min(b), a.max(b)));
        }
        Ok(RewriteRules { involutions: inv, commuting: pairs, order: (0..rank).collect() })
    }

    /// Replaces the letter order; `order[g]` is the rank of generator `g`.
    pub fn with_order(mut self, order: Vec<usize>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..self.involutions.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter("letter order must be a permutation of the generators".into()));
        }
        self.order = order;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.involutions.len()
    }

    pub fn is_involution(&self, g: usize) -> bool {
        self.involutions.get(g).copied().unwrap_or(false)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        a == b || self.commuting.contains(&(a.min(b), a.max(b)))
    }

    pub fn commuting_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.commuting.iter().copied()
    }

    /// Sort key of a letter under the rule set's letter order.
    pub fn letter_key(&self, l: Letter) -> (usize, bool) {
        (self.order.get(l.index()).copied().unwrap_or(l.index()), l.inverse)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Thm1,
    Prop2,
    Klein,
    Artin,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Thm1 => "thm1",
            Family::Prop2 => "prop2",
            Family::Klein => "klein",
            Family::Artin => "artin",
        })
    }
}

/// Parameters an instance was built from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceParams {
    pub m: Option<CoxeterMatrix>,
    pub p: Option<Vec<ExtNat>>,
}

impl Serialize for InstanceParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        if let Some(m) = &self.m {
            map.serialize_entry("m", m.rows())?;
        }
        if let Some(p) = &self.p {
            map.serialize_entry("p", p)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingInstance {
    pub family: Family,
    pub ambient: Presentation,
    pub hom: HomZ2n,
    /// Generators the coset representatives are spelled in (the copy `R`).
    pub transversal_gens: Vec<usize>,
    pub rules: RewriteRules,
    pub expected_kernel: Presentation,
    /// Ambient words defining each generator of `expected_kernel`.
    pub expected_words: Vec<Word>,
    pub params: InstanceParams,
}

impl EmbeddingInstance {
    /// Dimension of the target `Z_2^n`.
    pub fn rank(&self) -> usize {
        self.hom.dim()
    }
}

fn check_orders(p: &[ExtNat], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::InvalidParameter(format!("expected {n} generator orders, got {}", p.len())));
    }
    for (i, pi) in p.iter().enumerate() {
        if let ExtNat::Finite(v) = pi {
            if *v < 2 {
                return Err(Error::InvalidParameter(format!("p_{} = {v}; orders must be at least 2 or inf", i + 1)));
            }
        }
    }
    Ok(())
}

/// The Coxeter matrix of the doubled group on `r_1..r_n, s_1..s_n`:
/// `m(r_i,r_j) = 2`, `m(r_i,s_j) = 2` for `i != j`, `m(r_i,s_i) = p_i`,
/// `m(s_i,s_j)` from `m`.
pub fn double_coxeter_matrix(m: &CoxeterMatrix, p: &[ExtNat]) -> Result<CoxeterMatrix> {
    let n = m.rank();
    check_orders(p, n)?;
    CoxeterMatrix::from_fn(2 * n, |a, b| {
        let (ia, sa) = (a % n, a >= n);
        let (ib, sb) = (b % n, b >= n);
        match (sa, sb) {
            (true, true) => m.get(ia, ib),
            (false, false) => ExtNat::Finite(2),
            _ if ia == ib => p[ia],
            _ => ExtNat::Finite(2),
        }
    })
}

/// Ambient relators shared by the Coxeter doubles: generators `r_i = i`,
/// `s_i = n + i`.
fn double_ambient(m: &CoxeterMatrix, p: &[ExtNat]) -> Presentation {
    let n = m.rank();
    let (r, s) = (|i: usize| i, |i: usize| n + i);
    let sq = |x: usize, y: usize| Word::from_syllables(&[(x, 1), (y, 1)]).power(2).expect("non-negative");
    let mut rels = Vec::new();
    rels.extend((0..n).map(|i| Word::from_syllables(&[(r(i), 2)])));
    rels.extend((0..n).map(|i| Word::from_syllables(&[(s(i), 2)])));
    for i in 0..n {
        for j in (i + 1)..n {
            rels.push(sq(r(i), r(j)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                rels.push(sq(r(i), s(j)));
            }
        }
    }
    for (i, j, label) in m.off_diagonal() {
        if let Some(k) = label.finite() {
            rels.push(Word::from_syllables(&[(s(i), 1), (s(j), 1)]).power(k as i64).expect("non-negative"));
        }
    }
    for (i, pi) in p.iter().enumerate() {
        if let Some(k) = pi.finite() {
            rels.push(Word::from_syllables(&[(s(i), 1), (r(i), 1)]).power(k as i64).expect("non-negative"));
        }
    }
    let mut names = Presentation::indexed_names("r", n);
    names.extend(Presentation::indexed_names("s", n));
    Presentation::new(names, rels).expect("generated names are valid")
}

/// Every letter an involution; `r_i` commutes with `r_j` and with `s_j` for
/// `i != j`.
fn double_rules(n: usize) -> RewriteRules {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                pairs.push((i, j));
            }
            if i != j {
                pairs.push((i, n + j));
            }
        }
    }
    RewriteRules::new(2 * n, &(0..2 * n).collect::<Vec<_>>(), &pairs).expect("indices in range")
}

fn unit_hom(n: usize, s_image: impl Fn(usize) -> u64) -> HomZ2n {
    let images = (0..n).map(|i| 1u64 << i).chain((0..n).map(s_image)).collect();
    HomZ2n::new(n, images).expect("images fit in n bits")
}

/// Even Coxeter group doubled by a second copy of its generators; the kernel of
/// `r_i, s_i -> e_i` is the power commutator group with `n_ij = m_ij / 2`.
pub fn build_thm1_instance(m: &CoxeterMatrix, p: &[ExtNat]) -> Result<EmbeddingInstance> {
    let n = m.rank();
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    if let Some((i, j, l)) = m.off_diagonal().find(|(_, _, l)| l.finite().is_some_and(|v| v % 2 == 1)) {
        return Err(Error::InvalidParameter(format!("m_{}{} = {l} is odd; an even Coxeter matrix is required", i + 1, j + 1)));
    }
    check_orders(p, n)?;
    let halves = PcSpec::from_fn(p.to_vec(), |i, j| match m.get(i, j) {
        ExtNat::Finite(v) => ExtNat::Finite(v / 2),
        ExtNat::Infinite => ExtNat::Infinite,
    })?;
    Ok(EmbeddingInstance {
        family: Family::Thm1,
        ambient: double_ambient(m, p),
        hom: unit_hom(n, |i| 1 << i),
        transversal_gens: (0..n).collect(),
        rules: double_rules(n),
        expected_kernel: pc_named(&halves, "a"),
        expected_words: (0..n).map(|i| Word::from_syllables(&[(n + i, 1), (i, 1)])).collect(),
        params: InstanceParams { m: Some(m.clone()), p: Some(p.to_vec()) },
    })
}

/// Any Coxeter group doubled with even `p_i`; the kernel of `r_i -> e_i`,
/// `s_i -> 0` is a Coxeter group on `s_i` and `t_i = r_i s_i r_i`.
pub fn build_prop2_instance(m: &CoxeterMatrix, p: &[ExtNat]) -> Result<EmbeddingInstance> {
    let n = m.rank();
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    check_orders(p, n)?;
    if let Some((i, v)) = p.iter().enumerate().find_map(|(i, x)| x.finite().filter(|v| v % 2 == 1).map(|v| (i, v))) {
        return Err(Error::InvalidParameter(format!("p_{} = {v} is odd; even orders are required", i + 1)));
    }

    // kernel generators: s_i = i, t_i = n + i
    let (s, t) = (|i: usize| i, |i: usize| n + i);
    let pair = |x: usize, y: usize, k: u64| Word::from_syllables(&[(x, 1), (y, 1)]).power(k as i64).expect("non-negative");
    let mut rels = Vec::new();
    rels.extend((0..n).map(|i| Word::from_syllables(&[(s(i), 2)])));
    rels.extend((0..n).map(|i| Word::from_syllables(&[(t(i), 2)])));
    for (i, pi) in p.iter().enumerate() {
        if let Some(k) = pi.finite() {
            rels.push(pair(s(i), t(i), k / 2));
        }
    }
    for (i, j, label) in m.off_diagonal() {
        if let Some(k) = label.finite() {
            rels.push(pair(s(i), s(j), k));
            rels.push(pair(s(i), t(j), k));
            rels.push(pair(s(j), t(i), k));
            rels.push(pair(t(i), t(j), k));
        }
    }
    let mut names = Presentation::indexed_names("s", n);
    names.extend(Presentation::indexed_names("t", n));
    let expected_kernel = Presentation::new(names, rels)?;

    let mut expected_words: Vec<Word> = (0..n).map(|i| Word::gen(n + i)).collect();
    expected_words.extend((0..n).map(|i| Word::from_syllables(&[(i, 1), (n + i, 1), (i, 1)])));

    Ok(EmbeddingInstance {
        family: Family::Prop2,
        ambient: double_ambient(m, p),
        hom: unit_hom(n, |_| 0),
        transversal_gens: (0..n).collect(),
        rules: double_rules(n),
        expected_kernel,
        expected_words,
        params: InstanceParams { m: Some(m.clone()), p: Some(p.to_vec()) },
    })
}

/// `D_∞ × D_∞` mapped onto `Z_2^2` by `s_1 -> e_1 + e_2`, `s_2 -> e_2`,
/// `r_i -> e_i`; the kernel is the Klein bottle group.
pub fn build_klein_instance() -> EmbeddingInstance {
    // r1, s1 | r2, s2
    let (r1, s1, r2, s2) = (0, 1, 2, 3);
    let sq = |x: usize, y: usize| Word::from_syllables(&[(x, 1), (y, 1)]).power(2).expect("non-negative");
    let mut rels: Vec<Word> = (0..4).map(|g| Word::from_syllables(&[(g, 2)])).collect();
    let cross = [(r1, r2), (r1, s2), (s1, r2), (s1, s2)];
    rels.extend(cross.iter().map(|&(x, y)| sq(x, y)));
    let names = ["r1", "s1", "r2", "s2"].iter().map(|s| s.to_string()).collect();
    let ambient = Presentation::new(names, rels).expect("valid");

    let hom = HomZ2n::new(2, vec![0b01, 0b11, 0b10, 0b10]).expect("images fit");
    let rules = RewriteRules::new(4, &[r1, s1, r2, s2], &cross).expect("indices in range");
    let expected_kernel = Presentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::from_syllables(&[(0, -1), (1, 1), (0, 1), (1, 1)])],
    )
    .expect("valid");

    EmbeddingInstance {
        family: Family::Klein,
        ambient,
        hom,
        transversal_gens: vec![r1, r2],
        rules,
        expected_kernel,
        expected_words: vec![
            Word::from_syllables(&[(s1, 1), (r1, 1), (r2, 1)]),
            Word::from_syllables(&[(s2, 1), (r2, 1)]),
        ],
        params: InstanceParams::default(),
    }
}

/// Generalized Coxeter group whose kernel under `r_i, s_i -> e_i` is the
/// Artin group of `m`.
pub fn build_artin_instance(m: &CoxeterMatrix) -> Result<EmbeddingInstance> {
    let n = m.rank();
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    let (r, s) = (|i: usize| i, |i: usize| n + i);
    let mut rels = Vec::new();
    rels.extend((0..n).map(|i| Word::from_syllables(&[(r(i), 2)])));
    rels.extend((0..n).map(|i| Word::from_syllables(&[(s(i), 2)])));
    for i in 0..n {
        for j in (i + 1)..n {
            rels.push(Word::commutator(&Word::gen(r(i)), &Word::gen(r(j))));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                rels.push(Word::commutator(&Word::gen(r(i)), &Word::gen(s(j))));
            }
        }
    }
    // w(i,j) = s_i r_i s_j r_j ... with 2 m_ij letters
    let syllable_word = |i: usize, j: usize, k: usize| -> Word {
        alternating(i, j, k)
            .letters()
            .iter()
            .flat_map(|l| [Letter::pos(s(l.index())), Letter::pos(r(l.index()))])
            .collect()
    };
    for (i, j, label) in m.off_diagonal() {
        if let Some(k) = label.finite() {
            let k = k as usize;
            rels.push(syllable_word(i, j, k).concat(&syllable_word(j, i, k).invert()));
        }
    }
    let mut names = Presentation::indexed_names("r", n);
    names.extend(Presentation::indexed_names("s", n));
    Ok(EmbeddingInstance {
        family: Family::Artin,
        ambient: Presentation::new(names, rels)?,
        hom: unit_hom(n, |i| 1 << i),
        transversal_gens: (0..n).collect(),
        rules: double_rules(n),
        expected_kernel: artin_named(m, "a"),
        expected_words: (0..n).map(|i| Word::from_syllables(&[(n + i, 1), (i, 1)])).collect(),
        params: InstanceParams { m: Some(m.clone()), p: None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{coxeter_presentation, parse_presentation};

    fn fin(v: u64) -> ExtNat {
        ExtNat::Finite(v)
    }

    #[test]
    fn thm1_fixture_shape() {
        let m = CoxeterMatrix::uniform(2, fin(4)).unwrap();
        let inst = build_thm1_instance(&m, &[fin(2), fin(2)]).unwrap();
        assert_eq!(inst.ambient.relators().len(), 10);
        assert_eq!(
            inst.expected_kernel,
            parse_presentation("< a1,a2 | (a1 a2 a1^-1 a2^-1)^2, a1^2, a2^2 >").unwrap()
        );
        assert_eq!(inst.ambient.display_word(&inst.expected_words[1]), "s2 r2");
        assert!(inst.hom.check(&inst.ambient).unwrap());
    }

    #[test]
    fn thm1_rank_one() {
        let m = CoxeterMatrix::from_rows(vec![vec![fin(1)]]).unwrap();
        let inst = build_thm1_instance(&m, &[fin(3)]).unwrap();
        assert_eq!(inst.ambient, parse_presentation("< r1,s1 | r1^2, s1^2, (s1 r1)^3 >").unwrap());
        assert_eq!(inst.expected_kernel, parse_presentation("< a1 | a1^3 >").unwrap());
    }

    #[test]
    fn thm1_rejects_odd_labels_and_small_orders() {
        let odd = CoxeterMatrix::uniform(2, fin(3)).unwrap();
        assert!(build_thm1_instance(&odd, &[fin(2), fin(2)]).is_err());
        let even = CoxeterMatrix::uniform(2, fin(2)).unwrap();
        assert!(build_thm1_instance(&even, &[fin(1), fin(2)]).is_err());
        assert!(build_thm1_instance(&even, &[fin(2)]).is_err());
    }

    #[test]
    fn thm1_ambient_is_the_doubled_coxeter_group() {
        let m = CoxeterMatrix::from_fn(3, |i, j| [fin(4), ExtNat::Infinite, fin(2)][i + j - 1]).unwrap();
        let p = [fin(3), ExtNat::Infinite, fin(2)];
        let inst = build_thm1_instance(&m, &p).unwrap();
        let doubled = coxeter_presentation(&double_coxeter_matrix(&m, &p).unwrap());
        assert_eq!(inst.ambient.relator_nf_set(), doubled.relator_nf_set());
    }

    #[test]
    fn prop2_shapes() {
        let m = CoxeterMatrix::from_rows(vec![vec![fin(1)]]).unwrap();
        let inst = build_prop2_instance(&m, &[fin(4)]).unwrap();
        assert_eq!(inst.ambient, parse_presentation("< r1,s1 | r1^2, s1^2, (s1 r1)^4 >").unwrap());
        assert_eq!(inst.expected_kernel, parse_presentation("< s1,t1 | s1^2, t1^2, (s1 t1)^2 >").unwrap());
        assert_eq!(inst.ambient.display_word(&inst.expected_words[1]), "r1 s1 r1");
        let m3 = CoxeterMatrix::uniform(2, fin(3)).unwrap();
        assert!(build_prop2_instance(&m3, &[fin(3), fin(4)]).is_err());
        assert!(build_prop2_instance(&m3, &[fin(4), ExtNat::Infinite]).is_ok());
    }

    #[test]
    fn klein_shape() {
        let inst = build_klein_instance();
        assert_eq!(inst.expected_kernel.to_string(), "< a, b | a^-1 b a b >");
        assert_eq!(inst.ambient.relators().len(), 8);
        assert!(inst.hom.check(&inst.ambient).unwrap());
        assert_eq!(inst.hom.image_rank(), 2);
    }

    #[test]
    fn artin_shapes() {
        let m3 = CoxeterMatrix::uniform(2, fin(3)).unwrap();
        let inst = build_artin_instance(&m3).unwrap();
        let last = inst.ambient.relators().last().unwrap();
        assert_eq!(inst.ambient.display_word(last), "s1 r1 s2 r2 s1 r1 r2^-1 s2^-1 r1^-1 s1^-1 r2^-1 s2^-1");
        assert!(inst.hom.check(&inst.ambient).unwrap());
        let m4 = CoxeterMatrix::uniform(2, fin(4)).unwrap();
        let inst = build_artin_instance(&m4).unwrap();
        assert_eq!(
            inst.expected_kernel,
            parse_presentation("< a1,a2 | a1 a2 a1 a2 (a2 a1 a2 a1)^-1 >").unwrap()
        );
    }
}
