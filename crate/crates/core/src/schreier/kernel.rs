//! Kernel presentations by Reidemeister–Schreier rewriting.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{normalize_with_rules, HomZ2n, Transversal};
use crate::error::{Error, Result};
use crate::presentation::{EmbeddingInstance, Presentation};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMode {
    Raw,
    Evaluated,
}

/// A generator of the kernel and the pair `(t, x)` that first produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGen {
    pub name: String,
    pub origin_t: Word,
    pub origin_x: usize,
    /// Ambient word the symbol stands for.
    pub defining_word: Word,
}

/// Value of `γ(t, x)` for every representative index and ambient generator:
/// a kernel letter, or `None` when trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    entries: Vec<Vec<Option<Letter>>>,
}

impl SymbolTable {
    pub fn lookup(&self, t: usize, x: usize) -> Option<Letter> {
        self.entries[t][x]
    }
}

/// `τ(t r t^-1)` for one representative and ambient relator, before empty
/// rewrites are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewrittenRelator {
    pub t: usize,
    pub relator: usize,
    pub word: Word,
}

#[derive(Debug, Clone)]
pub struct KernelPresentation {
    pub presentation: Presentation,
    pub generators: Vec<SchreierGen>,
    pub mode: KernelMode,
    pub transversal: Transversal,
    pub symbols: SymbolTable,
    pub rewrites: Vec<RewrittenRelator>,
}

impl KernelPresentation {
    /// Ambient words of the kernel generators, in generator order.
    pub fn defining_words(&self) -> Vec<Word> {
        self.generators.iter().map(|g| g.defining_word.clone()).collect()
    }

    /// Replaces each kernel letter of `w` by its defining word.
    pub fn expand(&self, w: &Word) -> Word {
        w.substitute(|g| self.generators[g].defining_word.clone())
    }
}

/// Reidemeister rewrite of a kernel word. A positive letter `x` read at coset
/// `u` contributes `γ(ū, x)`; an inverse letter contributes
/// `γ(\overline{u x^-1}, x)^-1`.
pub fn reidemeister_rewrite(t: &Transversal, h: &HomZ2n, table: &SymbolTable, w: &Word) -> Result<Word> {
    if h.word_image(w)? != 0 {
        return Err(Error::NotInKernel);
    }
    rewrite_from(t, h, table, 0, w)
}

fn rewrite_from(t: &Transversal, h: &HomZ2n, table: &SymbolTable, start: u64, w: &Word) -> Result<Word> {
    let mut coset = start;
    let mut out = Vec::new();
    for l in w.letters() {
        let x = l.index();
        let next = coset ^ h.image(x)?;
        let at = if l.inverse { next } else { coset };
        let k = t.index_of(at).ok_or(Error::InsufficientSubset)?;
        if let Some(sym) = table.lookup(k, x) {
            out.push(if l.inverse { sym.inv() } else { sym });
        }
        coset = next;
    }
    Ok(Word::free_reduce(out))
}

fn prepare(p: &Presentation, h: &HomZ2n, subset: &[usize]) -> Result<Transversal> {
    if let Some(i) = h.first_violation(p)? {
        return Err(Error::InvalidHom(i));
    }
    Transversal::build(p, h, subset)
}

fn rewrite_all(p: &Presentation, h: &HomZ2n, t: &Transversal, table: &SymbolTable) -> Result<Vec<RewrittenRelator>> {
    let mut out = Vec::with_capacity(t.len() * p.relators().len());
    for k in 0..t.len() {
        let rep = t.rep(k);
        for (ri, r) in p.relators().iter().enumerate() {
            let conj = rep.concat(r).concat(&rep.invert());
            out.push(RewrittenRelator { t: k, relator: ri, word: reidemeister_rewrite(t, h, table, &conj)? });
        }
    }
    Ok(out)
}

fn origin_name(p: &Presentation, t: &Word, x: usize, taken: &mut HashSet<String>) -> String {
    let tn: String = if t.is_empty() {
        "e".into()
    } else {
        t.letters().iter().map(|l| p.generators()[l.index()].as_str()).collect()
    };
    let base = format!("y_{tn}_{}", p.generators()[x]);
    let mut name = base.clone();
    let mut k = 2;
    while taken.contains(&name) {
        name = format!("{base}_{k}");
        k += 1;
    }
    taken.insert(name.clone());
    name
}

/// Free-group faithful kernel: one symbol per pair `(t, x)` whose Schreier
/// word does not freely reduce to the identity.
pub fn raw_kernel_presentation(p: &Presentation, h: &HomZ2n, subset: &[usize]) -> Result<KernelPresentation> {
    let t = prepare(p, h, subset)?;
    let mut generators = Vec::new();
    let mut entries = vec![vec![None; p.rank()]; t.len()];
    let mut taken = HashSet::new();
    for (k, row) in entries.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let w = t.schreier_word_at(h, k, x)?;
            if w.is_empty() {
                continue;
            }
            *slot = Some(Letter::pos(generators.len()));
            generators.push(SchreierGen {
                name: origin_name(p, t.rep(k), x, &mut taken),
                origin_t: t.rep(k).clone(),
                origin_x: x,
                defining_word: w,
            });
        }
    }
    let symbols = SymbolTable { entries };
    let rewrites = rewrite_all(p, h, &t, &symbols)?;
    let names = generators.iter().map(|g| g.name.clone()).collect();
    let presentation = Presentation::new(names, rewrites.iter().map(|r| r.word.clone()).collect())?;
    Ok(KernelPresentation { presentation, generators, mode: KernelMode::Raw, transversal: t, symbols, rewrites })
}

/// Kernel with Schreier words evaluated in the ambient group through the
/// instance's rewrite rules. Symbols whose defining word matches an expected
/// kernel generator (or its inverse) take that generator's name and come
/// first, in expected order.
pub fn evaluated_kernel_presentation(inst: &EmbeddingInstance) -> Result<KernelPresentation> {
    let p = &inst.ambient;
    let h = &inst.hom;
    let t = prepare(p, h, &inst.transversal_gens)?;
    let rules = &inst.rules;
    let norm = |w: &Word| normalize_with_rules(rules, w);
    let expected: Vec<(Word, Word)> =
        inst.expected_words.iter().map(|w| (norm(w), norm(&w.invert()))).collect();

    // symbols in creation order, each with the expected generator it matches
    let mut created: Vec<(SchreierGen, Option<usize>)> = Vec::new();
    let mut dict: HashMap<Word, usize> = HashMap::new();
    let mut raw_entries = vec![vec![None; p.rank()]; t.len()];
    let mut taken: HashSet<String> = inst.expected_kernel.generators().iter().cloned().collect();

    for (k, row) in raw_entries.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let w = norm(&t.schreier_word_at(h, k, x)?);
            if w.is_empty() {
                continue;
            }
            if let Some(&s) = dict.get(&w) {
                *slot = Some(Letter::pos(s));
                continue;
            }
            let winv = norm(&w.invert());
            if let Some(&s) = dict.get(&winv) {
                *slot = Some(Letter::neg(s));
                continue;
            }
            let origin_t = t.rep(k).clone();
            let matched = expected.iter().position(|(e, _)| *e == w).map(|j| (j, false)).or_else(|| {
                expected.iter().position(|(_, einv)| *einv == w).map(|j| (j, true))
            });
            let id = created.len();
            match matched {
                Some((j, inverse)) if !created.iter().any(|(_, m)| *m == Some(j)) => {
                    let defining_word = expected[j].0.clone();
                    dict.insert(defining_word.clone(), id);
                    created.push((
                        SchreierGen {
                            name: inst.expected_kernel.generators()[j].clone(),
                            origin_t,
                            origin_x: x,
                            defining_word,
                        },
                        Some(j),
                    ));
                    *slot = Some(if inverse { Letter::neg(id) } else { Letter::pos(id) });
                }
                _ => {
                    dict.insert(w.clone(), id);
                    let name = origin_name(p, &origin_t, x, &mut taken);
                    created.push((SchreierGen { name, origin_t, origin_x: x, defining_word: w }, None));
                    *slot = Some(Letter::pos(id));
                }
            }
        }
    }

    // expected matches first, in expected order; the rest by creation
    let mut order: Vec<usize> = (0..created.len()).collect();
    order.sort_by_key(|&i| (created[i].1.is_none(), created[i].1.unwrap_or(0), i));
    let mut new_index = vec![0; created.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_index[old] = pos;
    }
    let entries = raw_entries
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| e.map(|l: Letter| Letter { gen: crate::word::GenId(new_index[l.index()]), inverse: l.inverse }))
                .collect()
        })
        .collect();
    let generators: Vec<SchreierGen> = order.iter().map(|&i| created[i].0.clone()).collect();
    let symbols = SymbolTable { entries };

    let rewrites = rewrite_all(p, h, &t, &symbols)?;
    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for r in &rewrites {
        let c = r.word.cyclic_reduce();
        if !c.is_empty() && seen.insert(c.relator_nf()) {
            relators.push(c);
        }
    }
    let names = generators.iter().map(|g| g.name.clone()).collect();
    let presentation = Presentation::new(names, relators)?;
    Ok(KernelPresentation { presentation, generators, mode: KernelMode::Evaluated, transversal: t, symbols, rewrites })
}

/// Raw kernel of an instance's ambient group over its transversal generators.
pub fn raw_kernel_of(inst: &EmbeddingInstance) -> Result<KernelPresentation> {
    raw_kernel_presentation(&inst.ambient, &inst.hom, &inst.transversal_gens)
}
