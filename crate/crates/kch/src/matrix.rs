//! Square matrices over the noncommutative algebra. Products are formed
//! exactly as written: entries never commute past each other.

use crate::ncpoly::{Alphabet, NcPoly, PolyRepr};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMatrix {
    alphabet: Alphabet,
    size: usize,
    entries: Vec<NcPoly>,
}

impl NcMatrix {
    pub fn from_rows(alphabet: Alphabet, rows: Vec<Vec<NcPoly>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Internal("matrix rows must be square".into()));
            }
            for e in row {
                if e.alphabet() != alphabet {
                    return Err(Error::AlphabetMismatch {
                        left: alphabet.to_string(),
                        right: e.alphabet().to_string(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(NcMatrix {
            alphabet,
            size,
            entries,
        })
    }

    pub fn zero(alphabet: Alphabet, size: usize) -> Self {
        NcMatrix {
            alphabet,
            size,
            entries: vec![NcPoly::zero(alphabet); size * size],
        }
    }

    pub fn identity(alphabet: Alphabet, size: usize) -> Self {
        let mut m = Self::zero(alphabet, size);
        for i in 0..size {
            *m.entry_mut(i, i) = NcPoly::one(alphabet);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Entry at 0-based row/column.
    pub fn entry(&self, row: usize, col: usize) -> &NcPoly {
        &self.entries[row * self.size + col]
    }

    pub(crate) fn entry_mut(&mut self, row: usize, col: usize) -> &mut NcPoly {
        &mut self.entries[row * self.size + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: NcPoly) -> Result<()> {
        if value.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: value.alphabet().to_string(),
            });
        }
        *self.entry_mut(row, col) = value;
        Ok(())
    }

    pub fn mul(&self, other: &NcMatrix) -> Result<NcMatrix> {
        if self.size != other.size {
            return Err(Error::Internal("matrix size mismatch".into()));
        }
        let mut out = NcMatrix::zero(self.alphabet, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                let mut acc = NcPoly::zero(self.alphabet);
                for k in 0..self.size {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &NcMatrix) -> Result<NcMatrix> {
        if self.size != other.size {
            return Err(Error::Internal("matrix size mismatch".into()));
        }
        let mut out = NcMatrix::zero(self.alphabet, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                *out.entry_mut(i, j) = self.entry(i, j).add(other.entry(i, j))?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> NcMatrix {
        self.map(|p| p.neg())
    }

    pub fn map(&self, f: impl Fn(&NcPoly) -> NcPoly) -> NcMatrix {
        let entries: Vec<NcPoly> = self.entries.iter().map(f).collect();
        NcMatrix {
            alphabet: entries
                .first()
                .map(|p| p.alphabet())
                .unwrap_or(self.alphabet),
            size: self.size,
            entries,
        }
    }

    pub fn try_map(&self, f: impl Fn(&NcPoly) -> Result<NcPoly>) -> Result<NcMatrix> {
        let entries: Vec<NcPoly> = self
            .entries
            .iter()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Ok(NcMatrix {
            alphabet: entries
                .first()
                .map(|p| p.alphabet())
                .unwrap_or(self.alphabet),
            size: self.size,
            entries,
        })
    }

    pub fn is_identity(&self) -> bool {
        let one = NcPoly::one(self.alphabet);
        let zero = NcPoly::zero(self.alphabet);
        (0..self.size).all(|i| {
            (0..self.size).all(|j| self.entry(i, j) == if i == j { &one } else { &zero })
        })
    }

    pub fn to_repr(&self) -> Vec<Vec<PolyRepr>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).to_repr()).collect())
            .collect()
    }
}
