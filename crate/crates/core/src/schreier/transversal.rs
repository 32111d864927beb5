use std::collections::{HashMap, VecDeque};

use super::HomZ2n;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Schreier transversal for the kernel of a map onto (a subspace of) `Z_2^n`,
/// found by breadth-first search over a generator subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    /// `(coset vector, representative)` in discovery order; index 0 is the
    /// kernel itself with the empty representative.
    reps: Vec<(u64, Word)>,
    index: HashMap<u64, usize>,
    subset: Vec<usize>,
}

impl Transversal {
    /// Generators in `subset` are applied in presentation order; the first
    /// discovery of a vector fixes its representative.
    pub fn build(p: &Presentation, h: &HomZ2n, subset: &[usize]) -> Result<Self> {
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&g) = subset.iter().find(|&&g| g >= p.rank()) {
            return Err(Error::AlphabetMismatch { gen: g, size: p.rank() });
        }
        for &g in &subset {
            h.image(g)?;
        }
        if h.subset_rank(&subset) != h.image_rank() {
            return Err(Error::InsufficientSubset);
        }

        let mut reps = vec![(0u64, Word::empty())];
        let mut index = HashMap::from([(0u64, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let (v, w) = reps[k].clone();
            for &g in &subset {
                let u = v ^ h.image(g)?;
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(u) {
                    e.insert(reps.len());
                    queue.push_back(reps.len());
                    reps.push((u, w.concat(&Word::gen(g))));
                }
            }
        }
        Ok(Transversal { reps, index, subset })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Representatives in discovery order.
    pub fn representatives(&self) -> impl Iterator<Item = &Word> {
        self.reps.iter().map(|(_, w)| w)
    }

    pub fn vector(&self, k: usize) -> u64 {
        self.reps[k].0
    }

    pub fn rep(&self, k: usize) -> &Word {
        &self.reps[k].1
    }

    pub fn index_of(&self, v: u64) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn rep_of(&self, v: u64) -> Option<&Word> {
        self.index_of(v).map(|k| &self.reps[k].1)
    }

    /// Index of `t` if it is one of the representatives.
    pub fn position(&self, h: &HomZ2n, t: &Word) -> Result<usize> {
        let k = self.index_of(h.word_image(t)?).ok_or(Error::NotRepresentative)?;
        if self.reps[k].1 == *t {
            Ok(k)
        } else {
            Err(Error::NotRepresentative)
        }
    }

    /// `γ(t, x) = t x (rep of t x)^-1`, freely reduced.
    pub fn schreier_word(&self, h: &HomZ2n, t: &Word, x: usize) -> Result<Word> {
        let k = self.position(h, t)?;
        self.schreier_word_at(h, k, x)
    }

    pub(crate) fn schreier_word_at(&self, h: &HomZ2n, k: usize, x: usize) -> Result<Word> {
        let (v, t) = &self.reps[k];
        let target = v ^ h.image(x)?;
        let bar = self.rep_of(target).ok_or(Error::InsufficientSubset)?;
        Ok(Word::free_reduce(
            t.letters().iter().copied().chain([Letter::pos(x)]).chain(bar.invert().letters().iter().copied()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_klein_instance, build_thm1_instance, CoxeterMatrix, ExtNat};

    fn names(p: &Presentation, t: &Transversal) -> Vec<String> {
        t.representatives().map(|w| p.display_word(w)).collect()
    }

    fn thm1_fixture() -> crate::presentation::EmbeddingInstance {
        let m = CoxeterMatrix::uniform(2, ExtNat::Finite(4)).unwrap();
        build_thm1_instance(&m, &[ExtNat::Finite(2); 2]).unwrap()
    }

    #[test]
    fn thm1_transversal() {
        let inst = thm1_fixture();
        let t = Transversal::build(&inst.ambient, &inst.hom, &inst.transversal_gens).unwrap();
        assert_eq!(names(&inst.ambient, &t), ["1", "r1", "r2", "r1 r2"]);
    }

    #[test]
    fn klein_transversals() {
        let inst = build_klein_instance();
        let t = Transversal::build(&inst.ambient, &inst.hom, &inst.transversal_gens).unwrap();
        assert_eq!(names(&inst.ambient, &t), ["1", "r1", "r2", "r1 r2"]);
        let all = Transversal::build(&inst.ambient, &inst.hom, &[0, 1, 2, 3]).unwrap();
        assert_eq!(names(&inst.ambient, &all), ["1", "r1", "s1", "r2"]);
    }

    #[test]
    fn insufficient_subset() {
        let inst = build_klein_instance();
        // s2 alone only reaches e2
        assert_eq!(Transversal::build(&inst.ambient, &inst.hom, &[3]), Err(Error::InsufficientSubset));
    }

    #[test]
    fn schreier_words() {
        let inst = thm1_fixture();
        let p = &inst.ambient;
        let t = Transversal::build(p, &inst.hom, &inst.transversal_gens).unwrap();
        let s1 = p.gen_index("s1").unwrap();
        let g = t.schreier_word(&inst.hom, &Word::empty(), s1).unwrap();
        assert_eq!(p.display_word(&g), "s1 r1^-1");
        // r2 is the last letter missing from "r1": r1 r2 is itself a representative
        let r1 = p.word("r1").unwrap();
        assert!(t.schreier_word(&inst.hom, &r1, p.gen_index("r2").unwrap()).unwrap().is_empty());
        assert_eq!(t.schreier_word(&inst.hom, &p.word("s1").unwrap(), s1), Err(Error::NotRepresentative));

        let k = build_klein_instance();
        let kt = Transversal::build(&k.ambient, &k.hom, &k.transversal_gens).unwrap();
        let g = kt.schreier_word(&k.hom, &Word::empty(), 1).unwrap();
        assert_eq!(k.ambient.display_word(&g), "s1 r2^-1 r1^-1");
    }
}
