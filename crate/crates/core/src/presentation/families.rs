use super::{CoxeterMatrix, PcSpec, Presentation};
use crate::word::{Letter, Word};

/// `⟨ s_1..s_n | s_i^2, (s_i s_j)^{m_ij} ⟩`, omitting ∞ labels.
pub fn coxeter_presentation(m: &CoxeterMatrix) -> Presentation {
    coxeter_named(m, "s")
}

pub(crate) fn coxeter_named(m: &CoxeterMatrix, prefix: &str) -> Presentation {
    let n = m.rank();
    let mut rels: Vec<Word> = (0..n).map(|i| Word::from_syllables(&[(i, 2)])).collect();
    for (i, j, label) in m.off_diagonal() {
        if let Some(k) = label.finite() {
            rels.push(Word::from_syllables(&[(i, 1), (j, 1)]).power(k as i64).expect("non-negative"));
        }
    }
    Presentation::new(Presentation::indexed_names(prefix, n), rels).expect("generated names are valid")
}

/// `⟨ g_1..g_n | [g_i,g_j]^{n_ij}, g_i^{p_i} ⟩`, omitting ∞ entries.
pub fn pc_presentation(spec: &PcSpec) -> Presentation {
    pc_named(spec, "g")
}

pub(crate) fn pc_named(spec: &PcSpec, prefix: &str) -> Presentation {
    let n = spec.rank();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(k) = spec.power(i, j).finite() {
                let c = Word::commutator(&Word::gen(i), &Word::gen(j));
                rels.push(c.power(k as i64).expect("non-negative"));
            }
        }
    }
    for i in 0..n {
        if let Some(p) = spec.order(i).finite() {
            rels.push(Word::from_syllables(&[(i, p as i64)]));
        }
    }
    Presentation::new(Presentation::indexed_names(prefix, n), rels).expect("generated names are valid")
}

/// `x y x y ...` with `len` letters.
pub(crate) fn alternating(x: usize, y: usize, len: usize) -> Word {
    Word::free_reduce((0..len).map(|k| Letter::pos(if k % 2 == 0 { x } else { y })))
}

/// Braid relators `(a_i a_j a_i ...)(a_j a_i a_j ...)^-1` with `m_ij` letters
/// per side.
pub fn artin_presentation(m: &CoxeterMatrix) -> Presentation {
    artin_named(m, "a")
}

pub(crate) fn artin_named(m: &CoxeterMatrix, prefix: &str) -> Presentation {
    let rels = m
        .off_diagonal()
        .filter_map(|(i, j, label)| {
            let k = label.finite()? as usize;
            Some(alternating(i, j, k).concat(&alternating(j, i, k).invert()))
        })
        .collect();
    Presentation::new(Presentation::indexed_names(prefix, m.rank()), rels).expect("generated names are valid")
}
