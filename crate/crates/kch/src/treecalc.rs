//! Independent combinatorial oracle for the twist action: decorated slice
//! chords, the twist maps on up-decorated chords, the normal-reversal
//! (dagger) parity rule, and the signed identification with algebra
//! generators. Nothing here is used on the hot path; the point of the
//! module is to cross-validate the generator tables in `phimap` from a
//! second route.

use std::collections::BTreeMap;
use std::fmt;

use crate::ncpoly::{Alphabet, ChordLetter, CoeffSymbol, HomMonomial, MonomialBody, NcMonomial, NcPoly};
use crate::{Error, Result};

/// Direction of the decorating normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    Up,
    Down,
}

impl Arrow {
    pub fn flipped(self) -> Arrow {
        match self {
            Arrow::Up => Arrow::Down,
            Arrow::Down => Arrow::Up,
        }
    }
}

/// Which side of a twist slice a decorated chord lives on: b-side chords
/// feed the twist maps, a-side chords appear in their outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    BSide,
    ASide,
}

/// A decorated special chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedChord {
    pub side: Side,
    pub i: u32,
    pub j: u32,
    pub arrow: Arrow,
}

impl DecoratedChord {
    pub fn b_side(i: u32, j: u32, arrow: Arrow) -> Self {
        DecoratedChord {
            side: Side::BSide,
            i,
            j,
            arrow,
        }
    }

    pub fn a_side(i: u32, j: u32, arrow: Arrow) -> Self {
        DecoratedChord {
            side: Side::ASide,
            i,
            j,
            arrow,
        }
    }

    pub fn dagger(self) -> Self {
        DecoratedChord {
            arrow: self.arrow.flipped(),
            ..self
        }
    }
}

impl fmt::Display for DecoratedChord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::BSide => 'b',
            Side::ASide => 'a',
        };
        let arrow = match self.arrow {
            Arrow::Up => '^',
            Arrow::Down => 'v',
        };
        write!(f, "{side}{arrow}({},{})", self.i, self.j)
    }
}

/// Laurent exponents of the two slice homology symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SliceCoeff {
    pub mu_a: i64,
    pub mu_b: i64,
}

impl SliceCoeff {
    fn mul(self, other: SliceCoeff) -> SliceCoeff {
        SliceCoeff {
            mu_a: self.mu_a + other.mu_a,
            mu_b: self.mu_b + other.mu_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct DecBody {
    head: SliceCoeff,
    tail: Vec<(DecoratedChord, SliceCoeff)>,
}

impl DecBody {
    fn concat(&self, other: &DecBody) -> DecBody {
        if self.tail.is_empty() {
            return DecBody {
                head: self.head.mul(other.head),
                tail: other.tail.clone(),
            };
        }
        let mut tail = self.tail.clone();
        let last = tail.last_mut().expect("nonempty");
        last.1 = last.1.mul(other.head);
        tail.extend(other.tail.iter().cloned());
        DecBody {
            head: self.head,
            tail,
        }
    }
}

/// Canonical integer combination of words in a-side decorated chords with
/// slice coefficients interleaved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecoratedPoly {
    terms: BTreeMap<DecBody, i64>,
}

impl DecoratedPoly {
    pub fn zero() -> Self {
        DecoratedPoly::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(DecBody::default(), 1);
        DecoratedPoly { terms }
    }

    pub fn chord(c: DecoratedChord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            DecBody {
                head: SliceCoeff::default(),
                tail: vec![(c, SliceCoeff::default())],
            },
            1,
        );
        DecoratedPoly { terms }
    }

    pub fn mu_a(exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            DecBody {
                head: SliceCoeff { mu_a: exp, mu_b: 0 },
                tail: Vec::new(),
            },
            1,
        );
        DecoratedPoly { terms }
    }

    pub fn mu_b(exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            DecBody {
                head: SliceCoeff { mu_a: 0, mu_b: exp },
                tail: Vec::new(),
            },
            1,
        );
        DecoratedPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DecoratedPoly) -> DecoratedPoly {
        let mut terms = self.terms.clone();
        for (body, coeff) in &other.terms {
            let entry = terms.entry(body.clone()).or_insert(0);
            *entry += coeff;
        }
        terms.retain(|_, c| *c != 0);
        DecoratedPoly { terms }
    }

    pub fn neg(&self) -> DecoratedPoly {
        DecoratedPoly {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &DecoratedPoly) -> DecoratedPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DecoratedPoly) -> DecoratedPoly {
        let mut terms: BTreeMap<DecBody, i64> = BTreeMap::new();
        for (bx, cx) in &self.terms {
            for (by, cy) in &other.terms {
                let entry = terms.entry(bx.concat(by)).or_insert(0);
                *entry += cx * cy;
            }
        }
        terms.retain(|_, c| *c != 0);
        DecoratedPoly { terms }
    }

    /// Flip every decorating normal; an involution.
    pub fn dagger(&self) -> DecoratedPoly {
        DecoratedPoly {
            terms: self
                .terms
                .iter()
                .map(|(body, c)| {
                    let tail = body
                        .tail
                        .iter()
                        .map(|(chord, slot)| (chord.dagger(), *slot))
                        .collect();
                    (
                        DecBody {
                            head: body.head,
                            tail,
                        },
                        *c,
                    )
                })
                .collect(),
        }
    }

    /// Split into the summands with an odd / even number of chord variables.
    pub fn parity_split(&self) -> (DecoratedPoly, DecoratedPoly) {
        let mut odd = DecoratedPoly::zero();
        let mut even = DecoratedPoly::zero();
        for (body, c) in &self.terms {
            let single = DecoratedPoly {
                terms: BTreeMap::from([(body.clone(), *c)]),
            };
            if body.tail.len() % 2 == 1 {
                odd = odd.add(&single);
            } else {
                even = even.add(&single);
            }
        }
        (odd, even)
    }

    pub fn max_chord_count(&self) -> usize {
        self.terms.keys().map(|b| b.tail.len()).max().unwrap_or(0)
    }
}

fn check_b_up(b: DecoratedChord, k: u32, n: u32) -> Result<()> {
    if b.side != Side::BSide || b.arrow != Arrow::Up {
        return Err(Error::Internal(format!(
            "twist map input must be an up-decorated b-side chord, got {b}"
        )));
    }
    if b.i == b.j || b.i < 1 || b.i > n || b.j < 1 || b.j > n || k < 1 || k >= n {
        return Err(Error::Internal(format!(
            "chord {b} or twist index {k} out of range for {n} strands"
        )));
    }
    Ok(())
}

fn up(i: u32, j: u32) -> DecoratedPoly {
    DecoratedPoly::chord(DecoratedChord::a_side(i, j, Arrow::Up))
}

/// The twist map on an up-decorated b-side chord, for the positive
/// (`sign = +1`) or negative (`sign = -1`) twist on strands `k`, `k+1`.
pub fn eta(sign: i8, k: u32, n: u32, b: DecoratedChord) -> Result<DecoratedPoly> {
    check_b_up(b, k, n)?;
    let (i, j) = (b.i, b.j);
    let twist = |x: u32| x == k || x == k + 1;
    let image = if sign > 0 {
        if !twist(i) && !twist(j) {
            up(i, j)
        } else if (i, j) == (k, k + 1) {
            up(k + 1, k)
        } else if (i, j) == (k + 1, k) {
            DecoratedPoly::mu_a(1)
                .mul(&up(k, k + 1))
                .mul(&DecoratedPoly::mu_b(-1))
        } else if j == k + 1 {
            up(i, k)
        } else if i == k + 1 {
            up(k, j)
        } else if j == k && i < k {
            up(i, k + 1).add(&up(i, k).mul(&up(k, k + 1)))
        } else if j == k && i > k + 1 {
            up(i, k + 1).add(
                &up(i, k)
                    .mul(&DecoratedPoly::mu_a(1))
                    .mul(&up(k, k + 1))
                    .mul(&DecoratedPoly::mu_b(-1)),
            )
        } else {
            // i == k, j outside the twist
            up(k + 1, j).sub(&up(k + 1, k).mul(&up(k, j)))
        }
    } else if !twist(i) && !twist(j) {
        up(i, j)
    } else if (i, j) == (k, k + 1) {
        DecoratedPoly::mu_b(-1)
            .mul(&up(k + 1, k))
            .mul(&DecoratedPoly::mu_a(1))
    } else if (i, j) == (k + 1, k) {
        up(k, k + 1)
    } else if j == k {
        up(i, k + 1)
    } else if i == k {
        up(k + 1, j)
    } else if j == k + 1 && i < k {
        up(i, k).sub(
            &up(i, k + 1)
                .mul(&DecoratedPoly::mu_b(-1))
                .mul(&up(k + 1, k))
                .mul(&DecoratedPoly::mu_a(1)),
        )
    } else if j == k + 1 && i > k + 1 {
        up(i, k).sub(&up(i, k + 1).mul(&up(k + 1, k)))
    } else {
        // i == k + 1, j outside the twist
        up(k, j).add(&up(k, k + 1).mul(&up(k + 1, j)))
    };
    Ok(image)
}

/// The twist map on a down-decorated chord, computed from the up-decorated
/// image by the normal-reversal rule: dagger the odd-variable summands with
/// sign `+`, the even-variable summands with sign `-`.
pub fn eta_down(sign: i8, k: u32, n: u32, b: DecoratedChord) -> Result<DecoratedPoly> {
    if b.side != Side::BSide || b.arrow != Arrow::Down {
        return Err(Error::Internal(format!(
            "expected a down-decorated b-side chord, got {b}"
        )));
    }
    let image_up = eta(sign, k, n, b.dagger())?;
    let (odd, even) = image_up.parity_split();
    Ok(odd.dagger().sub(&even.dagger()))
}

/// Twist map on either decoration.
pub fn eta_any(sign: i8, k: u32, n: u32, b: DecoratedChord) -> Result<DecoratedPoly> {
    match b.arrow {
        Arrow::Up => eta(sign, k, n, b),
        Arrow::Down => eta_down(sign, k, n, b),
    }
}

/// The identification sign of a decorated chord with its signed algebra
/// generator: up-decorations of lower-triangular chords and down-decorations
/// of upper-triangular chords carry `+`.
pub fn identification_sign(i: u32, j: u32, arrow: Arrow) -> i64 {
    let base = if i > j { 1 } else { -1 };
    match arrow {
        Arrow::Up => base,
        Arrow::Down => -base,
    }
}

/// Substitute every decorated chord by its signed generator and the two
/// slice symbols by the strand symbols of the twisted strands `k`, `k+1`.
pub fn identify(x: &DecoratedPoly, k: u32, n: u32) -> Result<NcPoly> {
    let al = Alphabet::tilde(n);
    let slot_to_hom = |s: SliceCoeff| -> HomMonomial {
        HomMonomial::symbol(CoeffSymbol::MuTilde(k), s.mu_a)
            .mul(&HomMonomial::symbol(CoeffSymbol::MuTilde(k + 1), s.mu_b))
    };
    let mut monomials = Vec::new();
    for (body, coeff) in &x.terms {
        let mut sign: i64 = 1;
        let tail = body
            .tail
            .iter()
            .map(|(chord, slot)| {
                sign *= identification_sign(chord.i, chord.j, chord.arrow);
                (ChordLetter::a(chord.i, chord.j), slot_to_hom(*slot))
            })
            .collect::<Vec<_>>();
        let nc_body = MonomialBody::from_parts(slot_to_hom(body.head), tail);
        monomials.push(NcMonomial::new(coeff * sign, nc_body));
    }
    NcPoly::from_monomials(al, monomials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phimap::phi_letter;

    fn b_up(i: u32, j: u32) -> DecoratedChord {
        DecoratedChord::b_side(i, j, Arrow::Up)
    }

    fn b_down(i: u32, j: u32) -> DecoratedChord {
        DecoratedChord::b_side(i, j, Arrow::Down)
    }

    fn a_up(i: u32, j: u32) -> DecoratedPoly {
        up(i, j)
    }

    fn a_down(i: u32, j: u32) -> DecoratedPoly {
        DecoratedPoly::chord(DecoratedChord::a_side(i, j, Arrow::Down))
    }

    #[test]
    fn positive_twist_table_examples() {
        // k = 2 on 4 strands so all index classes are populated
        assert_eq!(eta(1, 2, 4, b_up(2, 3)).unwrap(), a_up(3, 2));
        let expected = a_up(1, 3).add(&a_up(1, 2).mul(&a_up(2, 3)));
        assert_eq!(eta(1, 2, 4, b_up(1, 2)).unwrap(), expected);
        assert_eq!(eta(1, 2, 4, b_up(1, 4)).unwrap(), a_up(1, 4));
    }

    #[test]
    fn dagger_properties() {
        let x = a_up(1, 2)
            .mul(&a_down(2, 1))
            .add(&DecoratedPoly::mu_a(1).mul(&a_up(2, 1)));
        assert_eq!(x.dagger().dagger(), x);
        let single = a_up(1, 2).mul(&a_down(2, 1));
        assert_eq!(single.dagger(), a_down(1, 2).mul(&a_up(2, 1)));
    }

    #[test]
    fn down_decoration_parity_rule() {
        // one-variable image keeps its sign
        assert_eq!(eta_down(1, 2, 4, b_down(2, 3)).unwrap(), a_down(3, 2));
        // linear term odd (+), quadratic term even (-)
        let expected = a_down(1, 3).sub(&a_down(1, 2).mul(&a_down(2, 3)));
        assert_eq!(eta_down(1, 2, 4, b_down(1, 2)).unwrap(), expected);
        // chords untouched by the twist stay fixed
        assert_eq!(eta_down(1, 2, 4, b_down(1, 4)).unwrap(), a_down(1, 4));
    }

    #[test]
    fn images_are_at_most_quadratic() {
        for n in 2..=4u32 {
            for k in 1..n {
                for sign in [1i8, -1] {
                    for i in 1..=n {
                        for j in 1..=n {
                            if i == j {
                                continue;
                            }
                            for b in [b_up(i, j), b_down(i, j)] {
                                let image = eta_any(sign, k, n, b).unwrap();
                                assert!(image.max_chord_count() <= 2);
                                let quadratic = image
                                    .terms
                                    .keys()
                                    .filter(|body| body.tail.len() == 2)
                                    .count();
                                assert!(quadratic <= 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identification_examples() {
        let al = Alphabet::tilde(2);
        assert_eq!(
            identify(&a_up(2, 1), 1, 2).unwrap(),
            NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap()
        );
        assert_eq!(
            identify(&a_up(1, 2), 1, 2).unwrap(),
            NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap().neg()
        );
        let x = DecoratedPoly::mu_a(1)
            .mul(&a_up(1, 2))
            .mul(&DecoratedPoly::mu_b(-1));
        let expected = NcPoly::symbol(al, CoeffSymbol::MuTilde(1), 1)
            .unwrap()
            .mul(&NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap())
            .unwrap()
            .mul(&NcPoly::symbol(al, CoeffSymbol::MuTilde(2), -1).unwrap())
            .unwrap()
            .neg();
        assert_eq!(identify(&x, 1, 2).unwrap(), expected);
    }

    #[test]
    fn oracle_matches_twist_morphisms_small() {
        // n <= 3 here; the full n <= 4 sweep runs in the acceptance suite
        for n in 2..=3u32 {
            for k in 1..n {
                for sign in [1i8, -1] {
                    let letter = if sign > 0 { k as i32 } else { -(k as i32) };
                    let action = phi_letter(letter, n).unwrap();
                    for i in 1..=n {
                        for j in 1..=n {
                            if i == j {
                                continue;
                            }
                            let expected = action
                                .chord_image(ChordLetter::a(i, j))
                                .unwrap()
                                .clone();
                            let s_up = identification_sign(i, j, Arrow::Up);
                            let via_up = identify(&eta_any(sign, k, n, b_up(i, j)).unwrap(), k, n)
                                .unwrap()
                                .scale(&s_up.into());
                            assert_eq!(via_up, expected, "up n={n} k={k} sign={sign} a_{i}_{j}");
                            let s_down = identification_sign(i, j, Arrow::Down);
                            let via_down =
                                identify(&eta_any(sign, k, n, b_down(i, j)).unwrap(), k, n)
                                    .unwrap()
                                    .scale(&s_down.into());
                            assert_eq!(
                                via_down, expected,
                                "down n={n} k={k} sign={sign} a_{i}_{j}"
                            );
                        }
                    }
                }
            }
        }
    }
}
