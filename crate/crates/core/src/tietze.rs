//! Tietze simplification: relator normalization and single-occurrence
//! generator elimination.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{GenId, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifyConfig {
    pub max_passes: usize,
    /// No elimination may produce a relator longer than this.
    pub max_relator_length: usize,
    pub eliminate: bool,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        SimplifyConfig { max_passes: 10_000, max_relator_length: 1_000, eliminate: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    /// Relators rewritten to their normal forms.
    Reduce { changed: usize },
    DropEmpty { removed: usize },
    Dedupe { removed: usize },
    /// `symbol` solved from `via` and replaced by `substitution`.
    Eliminate { symbol: String, via: String, substitution: String },
    /// Pass limit hit before reaching a fixpoint.
    PassLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplifyTrace {
    pub steps: Vec<TraceStep>,
    /// Surviving generators with their words over the input alphabet.
    pub generators: Vec<(String, Word)>,
}

/// Relator normal forms, empty ones dropped, duplicates removed, sorted by
/// length then lexicographically.
pub fn normalize_relators(p: &Presentation) -> Presentation {
    normalize_traced(p).0
}

/// Generators `x` for which `x^2` is a relator.
pub fn involutions(p: &Presentation) -> Vec<bool> {
    let mut inv = vec![false; p.rank()];
    for r in p.relators() {
        let l = r.letters();
        if l.len() == 2 && l[0] == l[1] {
            inv[l[0].index()] = true;
        }
    }
    inv
}

fn normalize_traced(p: &Presentation) -> (Presentation, Vec<TraceStep>) {
    let mut steps = Vec::new();
    let nfs: Vec<Word> = p.relators().iter().map(Word::relator_nf).collect();
    let changed = nfs.iter().zip(p.relators()).filter(|(a, b)| a != b).count();
    if changed > 0 {
        steps.push(TraceStep::Reduce { changed });
    }
    let before = nfs.len();
    let nonempty: Vec<Word> = nfs.into_iter().filter(|w| !w.is_empty()).collect();
    if nonempty.len() < before {
        steps.push(TraceStep::DropEmpty { removed: before - nonempty.len() });
    }
    let before = nonempty.len();
    let mut set: Vec<Word> = nonempty.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    if set.len() < before {
        steps.push(TraceStep::Dedupe { removed: before - set.len() });
    }
    set.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if steps.is_empty() && set.as_slice() != p.relators() {
        // only the order changed
        steps.push(TraceStep::Reduce { changed: 0 });
    }
    let q = Presentation::new(p.generators().to_vec(), set).expect("same alphabet");
    (q, steps)
}

/// Solves relator `via` for generator `g` (which must occur exactly once),
/// substitutes the solution everywhere and removes both. Returns the new
/// presentation and the word that replaced `g`, over the old alphabet.
pub fn eliminate_generator(p: &Presentation, g: usize, via: usize) -> Result<(Presentation, Word)> {
    let r = p.relators().get(via).ok_or_else(|| Error::InvalidParameter(format!("no relator {via}")))?;
    let count = r.occurrences(g);
    if count != 1 {
        return Err(Error::NotEliminable { gen: g, count });
    }
    let letters = r.letters();
    let pos = letters.iter().position(|l| l.index() == g).expect("occurs once");
    let rest: Word = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
    // g^e · rest = 1
    let solution = if letters[pos].inverse { rest } else { rest.invert() };

    let relators = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != via)
        .map(|(_, w)| {
            let substituted = w.substitute(|x| if x == g { solution.clone() } else { Word::gen(x) });
            drop_generator(&substituted, g)
        })
        .collect();
    let mut names = p.generators().to_vec();
    names.remove(g);
    Ok((Presentation::new(names, relators)?, solution))
}

fn drop_generator(w: &Word, g: usize) -> Word {
    w.letters()
        .iter()
        .map(|l| {
            debug_assert_ne!(l.index(), g);
            let idx = if l.index() > g { l.index() - 1 } else { l.index() };
            Letter { gen: GenId(idx), inverse: l.inverse }
        })
        .collect()
}

/// Alternates normalization with greedy elimination: the shortest relator
/// with an eligible generator wins, and within it the generator whose removal
/// grows the total relator length least. Eliminations that would exceed the
/// relator length bound are skipped.
pub fn simplify(p: &Presentation, cfg: &SimplifyConfig) -> (Presentation, SimplifyTrace) {
    let mut trace = SimplifyTrace::default();
    // words of the current generators over the input alphabet
    let mut words: Vec<Word> = (0..p.rank()).map(Word::gen).collect();
    let (mut cur, steps) = normalize_traced(p);
    trace.steps.extend(steps);

    let mut passes = 0;
    while let Some((g, via, next, solution)) = cfg.eliminate.then(|| best_elimination(&cur, cfg)).flatten() {
        if passes == cfg.max_passes {
            trace.steps.push(TraceStep::PassLimit);
            break;
        }
        passes += 1;
        trace.steps.push(TraceStep::Eliminate {
            symbol: cur.generators()[g].clone(),
            via: cur.display_word(&cur.relators()[via]),
            substitution: cur.display_word(&solution),
        });
        words.remove(g);
        let (normalized, steps) = normalize_traced(&next);
        trace.steps.extend(steps);
        cur = normalized;
    }
    trace.generators = cur.generators().iter().cloned().zip(words).collect();
    (cur, trace)
}

fn best_elimination(p: &Presentation, cfg: &SimplifyConfig) -> Option<(usize, usize, Presentation, Word)> {
    let total = p.total_length() as i64;
    let mut order: Vec<usize> = (0..p.relators().len()).collect();
    order.sort_by_key(|&i| p.relators()[i].len());
    for via in order {
        let r = &p.relators()[via];
        let mut best: Option<(i64, usize, Presentation, Word)> = None;
        for g in 0..p.rank() {
            if r.occurrences(g) != 1 {
                continue;
            }
            let Ok((q, sol)) = eliminate_generator(p, g, via) else { continue };
            if q.relators().iter().any(|w| w.len() > cfg.max_relator_length) {
                continue;
            }
            let growth = q.total_length() as i64 - total;
            if best.as_ref().is_none_or(|(b, ..)| growth < *b) {
                best = Some((growth, g, q, sol));
            }
        }
        if let Some((_, g, q, sol)) = best {
            return Some((g, via, q, sol));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn normalize_examples() {
        let p = parse_presentation("< a, b | b a b a^-1, a^-1 b a b >").unwrap();
        assert_eq!(normalize_relators(&p).relators().len(), 1);
        let p = parse_presentation("< a, b | [a, b^-1]^2, [a,b]^2 >").unwrap();
        assert_eq!(normalize_relators(&p).relators().len(), 1);
        let p = Presentation::new(vec!["a".into()], vec![Word::from_syllables(&[(0, 1)]).concat(&Word::from_syllables(&[(0, -1)]))]).unwrap();
        assert!(normalize_relators(&p).relators().is_empty());
    }

    #[test]
    fn eliminate_examples() {
        let p = parse_presentation("< a, b | b a^-1 >").unwrap();
        let (q, sol) = eliminate_generator(&p, 1, 0).unwrap();
        assert_eq!(q.to_string(), "< a | >");
        assert_eq!(p.display_word(&sol), "a");

        let p = parse_presentation("< s, t | s t, s^2 >").unwrap();
        let (q, sol) = eliminate_generator(&p, 1, 0).unwrap();
        assert_eq!(q, parse_presentation("< s | s^2 >").unwrap());
        assert_eq!(p.display_word(&sol), "s^-1");

        let p = parse_presentation("< a, b | a^2 b^2 >").unwrap();
        assert_eq!(eliminate_generator(&p, 0, 0), Err(Error::NotEliminable { gen: 0, count: 2 }));
    }

    #[test]
    fn fixpoint_has_empty_trace() {
        let p = normalize_relators(&parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap());
        let (q, trace) = simplify(&p, &SimplifyConfig::default());
        assert_eq!(q, p);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.generators.len(), 2);
    }

    #[test]
    fn length_bound_blocks_elimination() {
        let p = parse_presentation("< a, b | b a^5, (a b)^3 b^4 >").unwrap();
        let cfg = SimplifyConfig { max_relator_length: 10, ..Default::default() };
        let (q, _) = simplify(&p, &cfg);
        assert_eq!(q.rank(), 2);
        let (q, trace) = simplify(&p, &SimplifyConfig::default());
        assert_eq!(q.rank(), 1);
        assert!(matches!(trace.steps.iter().find(|s| matches!(s, TraceStep::Eliminate { .. })),
            Some(TraceStep::Eliminate { symbol, .. }) if symbol == "b"));
    }

    #[test]
    fn deterministic() {
        let p = parse_presentation("< a, b, c | a b c, c^2 a, [a,b] >").unwrap();
        let cfg = SimplifyConfig::default();
        assert_eq!(simplify(&p, &cfg), simplify(&p, &cfg));
    }
}
