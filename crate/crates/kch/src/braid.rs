//! Braid words, the closure permutation, link components, and the extra
//! non-interacting strand used to read off the chord matrices.

use std::collections::BTreeSet;
use std::fmt;

use crate::Error;

/// A word in the Artin generators of the braid group on `n` strands.
/// Letter `k > 0` encodes the k-th generator, `k < 0` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: u32, letters: Vec<i32>) -> Result<Self, Error> {
        if n < 1 {
            return Err(Error::InvalidStrandCount);
        }
        for (idx, &k) in letters.iter().enumerate() {
            if k == 0 {
                return Err(Error::ZeroLetter { position: idx + 1 });
            }
            if k.unsigned_abs() >= n {
                return Err(Error::GeneratorOutOfRange {
                    position: idx + 1,
                    letter: k as i64,
                    strands: n,
                });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn strands(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters reversed and negated; the concatenation with `self` reduces
    /// freely to the empty word.
    pub fn inverse_word(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&k| -k).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, Error> {
        if self.n != other.n {
            return Err(Error::Internal(format!(
                "cannot concatenate words on {} and {} strands",
                self.n, other.n
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            n: self.n,
            letters,
        })
    }

    /// Iteratively cancel adjacent inverse pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if stack.last() == Some(&-k) {
                stack.pop();
            } else {
                stack.push(k);
            }
        }
        BraidWord {
            n: self.n,
            letters: stack,
        }
    }

    /// The word on `n + 1` strands in which a new strand occupies the lowest
    /// position and never interacts: every letter index shifts up by one.
    pub fn stabilize_zero(&self) -> BraidWord {
        BraidWord {
            n: self.n + 1,
            letters: self
                .letters
                .iter()
                .map(|&k| if k > 0 { k + 1 } else { k - 1 })
                .collect(),
        }
    }

    /// The permutation induced on strand positions, as the 1-based array
    /// `perm[j-1]` = exit position of the strand entering at slot `j`.
    /// Letters apply in operator order (rightmost letter first); only the
    /// cycle structure is consumed downstream, so the direction convention
    /// is observationally irrelevant.
    pub fn closure_permutation(&self) -> Vec<u32> {
        let n = self.n as usize;
        let mut perm: Vec<u32> = (1..=self.n).collect();
        for &letter in self.letters.iter().rev() {
            let k = letter.unsigned_abs() as usize;
            for slot in perm.iter_mut() {
                if *slot == k as u32 {
                    *slot = k as u32 + 1;
                } else if *slot == k as u32 + 1 {
                    *slot = k as u32;
                }
            }
        }
        debug_assert_eq!(
            {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                sorted
            },
            (1..=n as u32).collect::<Vec<_>>()
        );
        perm
    }

    /// Components of the closure: cycles of the closure permutation,
    /// numbered 1..r by increasing minimal strand index.
    pub fn components(&self) -> ComponentMap {
        let n = self.n as usize;
        let perm = self.closure_permutation();
        let mut alpha = vec![0u32; n];
        let mut leading = BTreeSet::new();
        let mut r = 0u32;
        for start in 1..=n as u32 {
            if alpha[start as usize - 1] != 0 {
                continue;
            }
            r += 1;
            leading.insert(start);
            let mut cur = start;
            loop {
                alpha[cur as usize - 1] = r;
                cur = perm[cur as usize - 1];
                if cur == start {
                    break;
                }
            }
        }
        ComponentMap { alpha, r, leading }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Strand-to-component data of a braid closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    alpha: Vec<u32>,
    r: u32,
    leading: BTreeSet<u32>,
}

impl ComponentMap {
    /// Component index (1-based) of the given strand.
    pub fn alpha(&self, strand: u32) -> u32 {
        self.alpha[strand as usize - 1]
    }

    pub fn alpha_vec(&self) -> &[u32] {
        &self.alpha
    }

    pub fn component_count(&self) -> u32 {
        self.r
    }

    pub fn strands(&self) -> u32 {
        self.alpha.len() as u32
    }

    /// The minimal strand of each component.
    pub fn leading(&self) -> &BTreeSet<u32> {
        &self.leading
    }

    pub fn is_leading(&self, strand: u32) -> bool {
        self.leading.contains(&strand)
    }
}

/// Parse the braid-word DSL: whitespace- or comma-separated signed decimal
/// integers. `n` bounds the generator indices.
pub fn parse_braid(text: &str, n: u32) -> Result<BraidWord, Error> {
    if n < 1 {
        return Err(Error::InvalidStrandCount);
    }
    let mut letters = Vec::new();
    let tokens = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty());
    for (idx, token) in tokens.enumerate() {
        let position = idx + 1;
        let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
            position,
            token: token.to_string(),
        })?;
        if value == 0 {
            return Err(Error::ZeroLetter { position });
        }
        if value.unsigned_abs() >= n as u64 {
            return Err(Error::GeneratorOutOfRange {
                position,
                letter: value,
                strands: n,
            });
        }
        letters.push(value as i32);
    }
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_direct() {
        let b = parse_braid("1 1 1", 2).unwrap();
        assert_eq!(b.letters(), &[1, 1, 1]);
        let b = parse_braid("1,-2,1,-2", 3).unwrap();
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
        assert!(parse_braid("", 1).unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_braid("2", 2),
            Err(Error::GeneratorOutOfRange { position: 1, .. })
        ));
        assert!(matches!(
            parse_braid("1 0", 3),
            Err(Error::ZeroLetter { position: 2 })
        ));
        assert!(matches!(
            parse_braid("1 x", 3),
            Err(Error::InvalidToken { position: 2, .. })
        ));
    }

    #[test]
    fn permutation_examples() {
        let b = parse_braid("1 1 1", 2).unwrap();
        assert_eq!(b.closure_permutation(), vec![2, 1]);

        let b = parse_braid("", 2).unwrap();
        assert_eq!(b.closure_permutation(), vec![1, 2]);

        // (sigma_1 sigma_2)^2 induces a 3-cycle
        let b = parse_braid("1 2 1 2", 3).unwrap();
        let perm = b.closure_permutation();
        let mut cur = 1u32;
        let mut seen = vec![1u32];
        for _ in 0..2 {
            cur = perm[cur as usize - 1];
            seen.push(cur);
        }
        seen.sort_unstable();
        assert_eq!(seen, vec![1, 2, 3]);
        assert_eq!(perm[perm[perm[0] as usize - 1] as usize - 1], 1);
    }

    #[test]
    fn component_examples() {
        let trefoil = parse_braid("1 1 1", 2).unwrap().components();
        assert_eq!(trefoil.component_count(), 1);
        assert_eq!(trefoil.alpha_vec(), &[1, 1]);
        assert_eq!(trefoil.leading().iter().copied().collect::<Vec<_>>(), vec![1]);

        let unlink = parse_braid("", 2).unwrap().components();
        assert_eq!(unlink.component_count(), 2);
        assert_eq!(unlink.alpha_vec(), &[1, 2]);
        assert_eq!(unlink.leading().iter().copied().collect::<Vec<_>>(), vec![1, 2]);

        let b = parse_braid("1 2 1 2", 3).unwrap().components();
        assert_eq!(b.component_count(), 1);
        assert_eq!(b.alpha_vec(), &[1, 1, 1]);
        assert_eq!(b.leading().iter().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn inverse_word_examples() {
        let b = parse_braid("1 -2", 3).unwrap();
        assert_eq!(b.inverse_word().letters(), &[2, -1]);
        assert!(parse_braid("", 3).unwrap().inverse_word().is_empty());
        assert_eq!(
            parse_braid("1 1 1", 2).unwrap().inverse_word().letters(),
            &[-1, -1, -1]
        );
        let b = parse_braid("1 -2 2 1", 3).unwrap();
        assert!(b.concat(&b.inverse_word()).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn stabilize_examples() {
        let b = parse_braid("1", 2).unwrap().stabilize_zero();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.letters(), &[2]);

        let b = parse_braid("", 2).unwrap().stabilize_zero();
        assert_eq!(b.strands(), 3);
        assert!(b.is_empty());

        let b = parse_braid("1 -2", 3).unwrap().stabilize_zero();
        assert_eq!(b.strands(), 4);
        assert_eq!(b.letters(), &[2, -3]);
    }

    #[test]
    fn stabilize_preserves_cycles_and_adds_fixed_point() {
        let b = parse_braid("1 2 1 2", 3).unwrap();
        let s = b.stabilize_zero();
        let perm = s.closure_permutation();
        assert_eq!(perm[0], 1);
        let cm = s.components();
        assert_eq!(cm.component_count(), b.components().component_count() + 1);
        assert_eq!(cm.alpha(1), 1);
    }

    #[test]
    fn free_reduction() {
        let b = parse_braid("1 -1 2 -2 1", 3).unwrap();
        assert_eq!(b.free_reduce().letters(), &[1]);
        let b = parse_braid("1 2 -2 -1", 3).unwrap();
        assert!(b.free_reduce().is_empty());
    }
}
