//! Words in a free group: signed generator letters, free and cyclic
//! reduction, and a canonical form for relators up to rotation, inversion and
//! conjugation.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator inside one presentation's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub usize);

/// A generator or its formal inverse.
///
/// The derived ordering is the relator letter order: generator index
/// ascending, then the positive letter before the negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen: GenId(gen), inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen: GenId(gen), inverse: true }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.gen.0
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    #[inline]
    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(g: usize) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    /// Reduces an arbitrary letter sequence. Stack based, so nested
    /// cancellations like `a b b^-1 a^-1` vanish in one pass.
    pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    /// Builds a word from `(generator, exponent)` syllables.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        Word::free_reduce(syllables.iter().flat_map(|&(g, e)| {
            let l = if e < 0 { Letter::neg(g) } else { Letter::pos(g) };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn power(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(Error::NegativePower(k));
        }
        let mut out = Word::empty();
        for _ in 0..k {
            out = out.concat(self);
        }
        Ok(out)
    }

    /// `[x, y] = x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        Word::free_reduce(
            x.letters
                .iter()
                .chain(y.letters.iter())
                .copied()
                .chain(x.invert().letters)
                .chain(y.invert().letters),
        )
    }

    pub fn cyclic_reduce(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word { letters: l[i..j].to_vec() }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() > 1 => !a.cancels(*b),
            _ => true,
        }
    }

    /// Canonical representative of the conjugacy class of the cyclic word
    /// and its inverse: the least rotation of either orientation.
    pub fn relator_nf(&self) -> Self {
        let core = self.cyclic_reduce();
        if core.is_empty() {
            return core;
        }
        let inv = core.invert();
        let mut best: Option<&[Letter]> = None;
        let mut best_start = (0usize, false);
        let n = core.len();
        let doubled_fwd: Vec<Letter> = core.letters.iter().chain(core.letters.iter()).copied().collect();
        let doubled_inv: Vec<Letter> = inv.letters.iter().chain(inv.letters.iter()).copied().collect();
        for (flip, doubled) in [(false, &doubled_fwd), (true, &doubled_inv)] {
            for start in 0..n {
                let cand = &doubled[start..start + n];
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                    best_start = (start, flip);
                }
            }
        }
        let doubled = if best_start.1 { &doubled_inv } else { &doubled_fwd };
        Word { letters: doubled[best_start.0..best_start.0 + n].to_vec() }
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.index() == g).map(|l| l.sign() as i64).sum()
    }

    /// Number of letters on generator `g`, either sign.
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.index() == g).count()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index()).max()
    }

    /// Replaces every letter by a word; the image of an inverse letter is the
    /// inverted image.
    pub fn substitute<F: Fn(usize) -> Word>(&self, image: F) -> Word {
        let mut out = Vec::new();
        for l in &self.letters {
            let w = image(l.index());
            if l.inverse {
                out.extend(w.invert().letters);
            } else {
                out.extend(w.letters);
            }
        }
        Word::free_reduce(out)
    }

    /// Renders the word with generator names, collapsing runs into powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::free_reduce(iter)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (l, run) in syllables(&self.word.letters) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self.names.get(l.index()).map(String::as_str).unwrap_or("?");
            let e = run as i64 * l.sign() as i64;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

fn syllables(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((prev, n)) if *prev == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // a=0, b=1, c=2
    fn w(s: &[(usize, i64)]) -> Word {
        Word::from_syllables(s)
    }

    fn raw(s: &[(usize, bool)]) -> Vec<Letter> {
        s.iter().map(|&(g, inv)| Letter { gen: GenId(g), inverse: inv }).collect()
    }

    #[test]
    fn free_reduce_examples() {
        assert!(Word::free_reduce(raw(&[(0, false), (0, true)])).is_empty());
        // s1 r1 r1^-1 s2 with s1=0, r1=1, s2=2
        let r = Word::free_reduce(raw(&[(0, false), (1, false), (1, true), (2, false)]));
        assert_eq!(r, w(&[(0, 1), (2, 1)]));
        let r = Word::free_reduce(raw(&[(0, false), (1, false), (1, true), (0, true), (2, false)]));
        assert_eq!(r, w(&[(2, 1)]));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::empty().invert().is_empty());
        assert_eq!(w(&[(0, 1), (1, -1)]).invert(), w(&[(1, 1), (0, -1)]));
        assert_eq!(w(&[(0, 1), (1, 1), (2, 1)]).invert(), w(&[(2, -1), (1, -1), (0, -1)]));
    }

    #[test]
    fn concat_and_power() {
        assert_eq!(w(&[(0, 1), (1, 1)]).concat(&w(&[(1, -1), (2, 1)])), w(&[(0, 1), (2, 1)]));
        let x = w(&[(0, 1), (1, -1), (2, 2)]);
        assert!(x.concat(&x.invert()).is_empty());
        assert_eq!(w(&[(0, 1)]).concat(&w(&[(0, 1)])).len(), 2);
        assert_eq!(w(&[(0, 1), (1, 1)]).power(2).unwrap(), w(&[(0, 1), (1, 1), (0, 1), (1, 1)]));
        assert!(Word::empty().power(5).unwrap().is_empty());
        let r = Word::free_reduce(raw(&[(0, false), (0, true), (1, false)]));
        assert_eq!(r.power(3).unwrap(), w(&[(1, 3)]));
        assert!(matches!(r.power(-1), Err(Error::NegativePower(-1))));
    }

    #[test]
    fn commutator_convention() {
        let (a, b) = (Word::gen(0), Word::gen(1));
        assert_eq!(Word::commutator(&a, &b), w(&[(0, 1), (1, 1), (0, -1), (1, -1)]));
        assert!(Word::commutator(&a, &a).is_empty());
        assert_eq!(Word::commutator(&a, &b.invert()), w(&[(0, 1), (1, -1), (0, -1), (1, 1)]));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w(&[(1, -1), (0, 1), (1, 1)]).cyclic_reduce(), w(&[(0, 1)]));
        assert_eq!(w(&[(0, 1), (1, 1), (0, -1)]).cyclic_reduce(), w(&[(1, 1)]));
        assert_eq!(w(&[(0, 1), (1, 1)]).cyclic_reduce(), w(&[(0, 1), (1, 1)]));
    }

    /// Brute force: every rotation of both orientations, least one wins.
    fn nf_oracle(word: &Word) -> Vec<Letter> {
        let mut core = word.letters().to_vec();
        while core.len() > 1 && core[0].cancels(*core.last().unwrap()) {
            core.remove(0);
            core.pop();
        }
        let inv: Vec<Letter> = core.iter().rev().map(|l| l.inv()).collect();
        let mut all = Vec::new();
        for base in [&core, &inv] {
            for k in 0..base.len().max(1) {
                let mut r = base.clone();
                let len = r.len();
                r.rotate_left(k.min(len));
                all.push(r);
            }
        }
        all.into_iter().min().unwrap()
    }

    #[test]
    fn relator_nf_examples() {
        // Klein bottle relator a b^-1 a^-1 b^-1 against a^-1 b a b
        let k1 = w(&[(0, 1), (1, -1), (0, -1), (1, -1)]);
        let k2 = w(&[(0, -1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(nf_oracle(&k1), nf_oracle(&k2));
        assert_eq!(k1.relator_nf(), k2.relator_nf());
        assert_eq!(k1.relator_nf().letters(), nf_oracle(&k1).as_slice());
        // frozen by the oracle: a b a^-1 b
        assert_eq!(k1.relator_nf(), w(&[(0, 1), (1, 1), (0, -1), (1, 1)]));

        let (a, b) = (Word::gen(0), Word::gen(1));
        let c1 = Word::commutator(&a, &b.invert()).power(2).unwrap();
        let c2 = Word::commutator(&a, &b).power(2).unwrap();
        assert_eq!(nf_oracle(&c1), nf_oracle(&c2));
        assert_eq!(c1.relator_nf(), c2.relator_nf());

        let abc = w(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(abc.relator_nf(), abc);
        assert!(w(&[(0, 1), (0, -1)]).relator_nf().is_empty());
    }

    #[test]
    fn display_collapses_runs() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let x = w(&[(0, 2), (1, -1), (0, 1)]);
        assert_eq!(x.display_with(&names).to_string(), "a^2 b^-1 a");
        assert_eq!(Word::empty().display_with(&names).to_string(), "1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn letters(alpha: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
            prop::collection::vec((0..alpha, any::<bool>()), 0..=max_len)
                .prop_map(|v| v.into_iter().map(|(g, inverse)| Letter { gen: GenId(g), inverse }).collect())
        }

        proptest! {
            #[test]
            fn reduced_has_no_cancelling_pair(l in letters(4, 20)) {
                let r = Word::free_reduce(l);
                for pair in r.letters().windows(2) {
                    prop_assert!(!pair[0].cancels(pair[1]));
                }
            }

            #[test]
            fn nf_invariant_under_conjugation_and_inversion(
                l in letters(4, 12), u in letters(4, 12), k in 0usize..12
            ) {
                let w = Word::free_reduce(l);
                let u = Word::free_reduce(u);
                let nf = w.relator_nf();
                prop_assert_eq!(u.concat(&w).concat(&u.invert()).relator_nf(), nf.clone());
                prop_assert_eq!(w.invert().relator_nf(), nf.clone());
                let c = w.cyclic_reduce();
                if !c.is_empty() {
                    let mut rot = c.letters().to_vec();
                    let len = rot.len();
                    rot.rotate_left(k % len);
                    prop_assert_eq!(Word::free_reduce(rot).relator_nf(), nf.clone());
                }
                let oracle = nf_oracle(&w);
                prop_assert_eq!(nf.letters(), oracle.as_slice());
            }

            #[test]
            fn power_is_additive(l in letters(4, 10), j in 0i64..=5, k in 0i64..=5) {
                let w = Word::free_reduce(l);
                prop_assert_eq!(w.power(j + k).unwrap(), w.power(j).unwrap().concat(&w.power(k).unwrap()));
            }
        }
    }
}
