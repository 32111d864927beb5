//! Normal forms modulo involution and commutation rules.
//!
//! The rules present a graph product of cyclic groups (order 2 for involution
//! letters, infinite otherwise). A word is reduced there iff no letter can be
//! cancelled against a later one across letters that all commute with it;
//! reduced words of the same element differ only by commuting swaps, so the
//! lexicographically least arrangement is canonical.

use crate::presentation::RewriteRules;
use crate::word::{Letter, Word};

pub fn normalize_with_rules(rules: &RewriteRules, w: &Word) -> Word {
    let mut letters: Vec<Letter> = w
        .letters()
        .iter()
        .map(|&l| if rules.is_involution(l.index()) { Letter::pos(l.index()) } else { l })
        .collect();
    cancel_across_commuting(rules, &mut letters);
    Word::free_reduce(lex_least_arrangement(rules, letters))
}

fn cancels(rules: &RewriteRules, a: Letter, b: Letter) -> bool {
    a.gen == b.gen && (rules.is_involution(a.index()) || a.inverse != b.inverse)
}

fn cancel_across_commuting(rules: &RewriteRules, letters: &mut Vec<Letter>) {
    'restart: loop {
        for i in 0..letters.len() {
            let x = letters[i];
            for j in (i + 1)..letters.len() {
                let y = letters[j];
                if cancels(rules, x, y) {
                    letters.remove(j);
                    letters.remove(i);
                    continue 'restart;
                }
                if !rules.commute(x.index(), y.index()) {
                    break;
                }
            }
        }
        return;
    }
}

fn lex_least_arrangement(rules: &RewriteRules, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // letters that commute with everything before them can move to the front
        let mut best = 0;
        for k in 1..rest.len() {
            if !rest[..k].iter().all(|p| rules.commute(p.index(), rest[k].index())) {
                continue;
            }
            if rules.letter_key(rest[k]) < rules.letter_key(rest[best]) {
                best = k;
            }
        }
        out.push(rest.remove(best));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_thm1_instance, CoxeterMatrix, ExtNat, Presentation};

    fn thm1_rules() -> (Presentation, RewriteRules) {
        let m = CoxeterMatrix::uniform(2, ExtNat::Finite(4)).unwrap();
        let inst = build_thm1_instance(&m, &[ExtNat::Finite(2); 2]).unwrap();
        (inst.ambient, inst.rules)
    }

    #[test]
    fn rule_examples() {
        let (p, rules) = thm1_rules();
        let n = |s: &str| p.display_word(&normalize_with_rules(&rules, &p.word(s).unwrap()));
        assert_eq!(n("r1 r2 r1^-1"), "r2");
        assert_eq!(n("r1 r2 s1 r2^-1"), "r1 s1");
        assert_eq!(n(""), "1");
        assert_eq!(n("s1 r1^-1"), "s1 r1");
        assert_eq!(n("r2 s1 r2 r1"), "s1 r1");
        // r2 commutes with s1 and r1 but r1 blocks s1 from moving
        assert_eq!(n("s1 r2 r1"), "r2 s1 r1");
        assert_eq!(n("r2 s1 r1"), "r2 s1 r1");
    }

    #[test]
    fn non_involution_letters_cancel_across_commuting() {
        let rules = RewriteRules::new(3, &[], &[(0, 1)]).unwrap();
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let p = Presentation::new(names, vec![]).unwrap();
        let n = |s: &str| p.display_word(&normalize_with_rules(&rules, &p.word(s).unwrap()));
        assert_eq!(n("a b a^-1"), "b");
        assert_eq!(n("a c a^-1"), "a c a^-1");
        assert_eq!(n("b a a"), "a^2 b");
        assert_eq!(n("b^-1 a b"), "a");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word(alpha: usize) -> impl Strategy<Value = Word> {
            prop::collection::vec((0..alpha, any::<bool>()), 0..=24).prop_map(|v| {
                Word::free_reduce(v.into_iter().map(|(g, i)| if i { Letter::neg(g) } else { Letter::pos(g) }))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn idempotent_and_non_increasing(w in word(6)) {
                let (_, rules) = thm1_rules();
                let rules = RewriteRules::new(6, &[0, 1, 2, 3], &rules.commuting_pairs().collect::<Vec<_>>()).unwrap();
                let once = normalize_with_rules(&rules, &w);
                prop_assert!(once.len() <= w.len());
                prop_assert_eq!(normalize_with_rules(&rules, &once), once.clone());
                // invariant under a commuting swap
                let l = w.letters();
                if let Some(k) = (0..l.len().saturating_sub(1)).find(|&k| rules.commute(l[k].index(), l[k + 1].index())) {
                    let mut swapped = l.to_vec();
                    swapped.swap(k, k + 1);
                    prop_assert_eq!(normalize_with_rules(&rules, &Word::free_reduce(swapped)), once);
                }
            }
        }
    }
}
