use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

/// A map from generators to vectors of `Z_2^n`, packed as bit masks
/// (bit `i` is coordinate `e_{i+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomZ2n {
    dim: usize,
    images: Vec<u64>,
}

impl HomZ2n {
    pub fn new(dim: usize, images: Vec<u64>) -> Result<Self> {
        if dim == 0 || dim > 64 {
            return Err(Error::InvalidParameter(format!("target dimension {dim} outside 1..=64")));
        }
        if dim < 64 {
            if let Some(v) = images.iter().find(|&&v| v >> dim != 0) {
                return Err(Error::InvalidParameter(format!("image {v:#b} does not fit in {dim} bits")));
            }
        }
        Ok(HomZ2n { dim, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn image(&self, g: usize) -> Result<u64> {
        self.images.get(g).copied().ok_or(Error::MissingImage(g))
    }

    /// Signs are irrelevant mod 2.
    pub fn word_image(&self, w: &Word) -> Result<u64> {
        w.letters().iter().try_fold(0u64, |acc, l| Ok(acc ^ self.image(l.index())?))
    }

    /// True iff every relator of `p` maps to zero.
    pub fn check(&self, p: &Presentation) -> Result<bool> {
        Ok(self.first_violation(p)?.is_none())
    }

    /// Index of the first relator with nonzero image.
    pub fn first_violation(&self, p: &Presentation) -> Result<Option<usize>> {
        if p.rank() > self.images.len() {
            return Err(Error::MissingImage(self.images.len()));
        }
        for (i, r) in p.relators().iter().enumerate() {
            if self.word_image(r)? != 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Rank over GF(2) of all images; equals `dim` iff the map is onto.
    pub fn image_rank(&self) -> usize {
        gf2_rank(self.images.iter().copied())
    }

    pub fn subset_rank(&self, subset: &[usize]) -> usize {
        gf2_rank(subset.iter().filter_map(|&g| self.images.get(g).copied()))
    }
}

pub(crate) fn gf2_rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    // basis[b] holds a vector whose highest set bit is b
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let b = 63 - v.leading_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = v;
                rank += 1;
                break;
            }
            v ^= basis[b];
        }
    }
    rank
}
