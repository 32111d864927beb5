//! Reidemeister–Schreier rewriting for kernels of maps onto `Z_2^n`.

mod hom;
mod kernel;
mod normalize;
mod transversal;

pub use hom::HomZ2n;
pub use kernel::{
    evaluated_kernel_presentation, raw_kernel_of, raw_kernel_presentation, reidemeister_rewrite, KernelMode,
    KernelPresentation, RewrittenRelator, SchreierGen, SymbolTable,
};
pub use normalize::normalize_with_rules;
pub use transversal::Transversal;

use crate::error::Result;
use crate::presentation::Presentation;
use crate::word::Word;

/// True iff every relator of `p` lies in the kernel of `h`.
pub fn check_hom(p: &Presentation, h: &HomZ2n) -> Result<bool> {
    h.check(p)
}

pub fn image_rank(h: &HomZ2n) -> usize {
    h.image_rank()
}

pub fn transversal(p: &Presentation, h: &HomZ2n, subset: &[usize]) -> Result<Transversal> {
    Transversal::build(p, h, subset)
}

pub fn schreier_word(t: &Transversal, h: &HomZ2n, rep: &Word, x: usize) -> Result<Word> {
    t.schreier_word(h, rep, x)
}
