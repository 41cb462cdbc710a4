//! The braid-group action on the free tilde algebra: explicit generator
//! actions for positive and negative letters, word composition, extraction
//! of the boundary matrices from the stabilized braid, exact matrix
//! inversion through the inverse word, and specialization onto the final
//! coefficient ring.
//!
//! No simplification beyond canonical form is attempted anywhere, so
//! pathological words can grow exponentially; exactness is never traded for
//! size.

use std::collections::{BTreeMap, HashMap};

use crate::braid::{BraidWord, ComponentMap};
use crate::matrix::NcMatrix;
use crate::ncpoly::{
    identity_symbol_images, Alphabet, ChordFamily, ChordLetter, CoeffSymbol, HomMonomial,
    MonomialBody, NcMonomial, NcPoly,
};
use crate::{Error, Result};

/// The action of a single signed braid generator on the tilde algebra:
/// total chord images for every `a_ij` and the strand-symbol swap.
#[derive(Debug, Clone)]
pub struct GeneratorAction {
    strands: u32,
    chord_images: BTreeMap<ChordLetter, NcPoly>,
    symbol_images: BTreeMap<CoeffSymbol, HomMonomial>,
}

impl GeneratorAction {
    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn chord_image(&self, c: ChordLetter) -> Option<&NcPoly> {
        self.chord_images.get(&c)
    }

    pub fn symbol_image(&self, s: CoeffSymbol) -> Option<&HomMonomial> {
        self.symbol_images.get(&s)
    }

    /// Apply the action to an arbitrary tilde-regime element.
    pub fn apply(&self, x: &NcPoly) -> Result<NcPoly> {
        let alphabet = Alphabet::tilde(self.strands);
        if x.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch {
                left: alphabet.to_string(),
                right: x.alphabet().to_string(),
            });
        }
        x.substitute(alphabet, &self.chord_images, &self.symbol_images)
    }
}

fn mu_tilde(al: Alphabet, k: u32, exp: i64) -> NcPoly {
    NcPoly::symbol(al, CoeffSymbol::MuTilde(k), exp).expect("in-range strand symbol")
}

fn achord(al: Alphabet, i: u32, j: u32) -> NcPoly {
    NcPoly::chord(al, ChordLetter::a(i, j)).expect("in-range chord")
}

/// The action of the signed letter `letter` (`k > 0` for the k-th generator,
/// `k < 0` for its inverse) on the tilde algebra over `n` strands.
pub fn phi_letter(letter: i32, n: u32) -> Result<GeneratorAction> {
    let k = letter.unsigned_abs();
    if k == 0 || k >= n {
        return Err(Error::GeneratorOutOfRange {
            position: 1,
            letter: letter as i64,
            strands: n,
        });
    }
    let al = Alphabet::tilde(n);
    let positive = letter > 0;

    let mut chord_images = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let source = ChordLetter::a(i, j);
            let twist = |x: u32| x == k || x == k + 1;
            let image = if positive {
                if !twist(i) && !twist(j) {
                    achord(al, i, j)
                } else if (i, j) == (k, k + 1) {
                    achord(al, k + 1, k).neg()
                } else if (i, j) == (k + 1, k) {
                    mu_tilde(al, k, 1)
                        .mul(&achord(al, k, k + 1))?
                        .mul(&mu_tilde(al, k + 1, -1))?
                        .neg()
                } else if j == k + 1 {
                    achord(al, i, k)
                } else if i == k + 1 {
                    achord(al, k, j)
                } else if j == k && i < k {
                    achord(al, i, k + 1).sub(&achord(al, i, k).mul(&achord(al, k, k + 1))?)?
                } else if j == k && i > k + 1 {
                    achord(al, i, k + 1).sub(
                        &achord(al, i, k)
                            .mul(&mu_tilde(al, k, 1))?
                            .mul(&achord(al, k, k + 1))?
                            .mul(&mu_tilde(al, k + 1, -1))?,
                    )?
                } else {
                    // i == k, j outside the twist
                    achord(al, k + 1, j).sub(&achord(al, k + 1, k).mul(&achord(al, k, j))?)?
                }
            } else if !twist(i) && !twist(j) {
                achord(al, i, j)
            } else if (i, j) == (k, k + 1) {
                mu_tilde(al, k + 1, -1)
                    .mul(&achord(al, k + 1, k))?
                    .mul(&mu_tilde(al, k, 1))?
                    .neg()
            } else if (i, j) == (k + 1, k) {
                achord(al, k, k + 1).neg()
            } else if j == k {
                achord(al, i, k + 1)
            } else if i == k {
                achord(al, k + 1, j)
            } else if j == k + 1 && i < k {
                achord(al, i, k).sub(
                    &achord(al, i, k + 1)
                        .mul(&mu_tilde(al, k + 1, -1))?
                        .mul(&achord(al, k + 1, k))?
                        .mul(&mu_tilde(al, k, 1))?,
                )?
            } else if j == k + 1 && i > k + 1 {
                achord(al, i, k).sub(&achord(al, i, k + 1).mul(&achord(al, k + 1, k))?)?
            } else {
                // i == k + 1, j outside the twist
                achord(al, k, j).sub(&achord(al, k, k + 1).mul(&achord(al, k + 1, j))?)?
            };
            chord_images.insert(source, image);
        }
    }

    let mut symbol_images = identity_symbol_images(al);
    symbol_images.insert(
        CoeffSymbol::MuTilde(k),
        HomMonomial::symbol(CoeffSymbol::MuTilde(k + 1), 1),
    );
    symbol_images.insert(
        CoeffSymbol::MuTilde(k + 1),
        HomMonomial::symbol(CoeffSymbol::MuTilde(k), 1),
    );

    Ok(GeneratorAction {
        strands: n,
        chord_images,
        symbol_images,
    })
}

/// Apply the whole word, rightmost letter first. Letter actions are built
/// once per distinct letter; repeated letters dominate real words.
pub fn phi_apply(word: &BraidWord, x: &NcPoly) -> Result<NcPoly> {
    let n = word.strands();
    let alphabet = Alphabet::tilde(n);
    if x.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch {
            left: alphabet.to_string(),
            right: x.alphabet().to_string(),
        });
    }
    let mut cache: HashMap<i32, GeneratorAction> = HashMap::new();
    let mut acc = x.clone();
    for &letter in word.letters().iter().rev() {
        let action = match cache.entry(letter) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => v.insert(phi_letter(letter, n)?),
        };
        acc = action.apply(&acc)?;
    }
    Ok(acc)
}

fn unshift_monomial(m: &NcMonomial, target: Alphabet) -> Result<NcMonomial> {
    let shift_hom = |h: &HomMonomial| -> Result<HomMonomial> {
        let mut out = HomMonomial::one();
        for (s, e) in h.exponents() {
            let CoeffSymbol::MuTilde(k) = s else {
                return Err(Error::Internal(format!(
                    "unexpected symbol {s} in tilde-regime monomial"
                )));
            };
            out = out.mul(&HomMonomial::symbol(CoeffSymbol::MuTilde(k - 1), e));
        }
        Ok(out)
    };
    let head = shift_hom(m.body.head())?;
    let tail = m
        .body
        .tail()
        .iter()
        .map(|(c, h)| Ok((ChordLetter::a(c.i - 1, c.j - 1), shift_hom(h)?)))
        .collect::<Result<Vec<_>>>()?;
    let body = MonomialBody::from_parts(head, tail);
    for c in body.chord_letters() {
        target.check_chord(c)?;
    }
    Ok(NcMonomial::new(m.coeff.clone(), body))
}

fn touches_strand_one(body: &MonomialBody) -> bool {
    let hom_touches = |h: &HomMonomial| h.exponent_of(CoeffSymbol::MuTilde(1)) != 0;
    if hom_touches(body.head()) {
        return true;
    }
    body.tail()
        .iter()
        .any(|(c, h)| c.i == 1 || c.j == 1 || hom_touches(h))
}

/// Extract the left and right boundary matrices of `word` from the
/// stabilized braid: row `i` of the left matrix collects, for each monomial
/// of the image of the chord into the extra strand, the prefix left of its
/// trailing boundary letter; columns of the right matrix dually collect the
/// suffix right of the leading boundary letter. Entries are re-expressed
/// over the un-stabilized alphabet.
pub fn extract_phi(word: &BraidWord) -> Result<(NcMatrix, NcMatrix)> {
    let n = word.strands();
    let size = n as usize;
    let stabilized = word.stabilize_zero();
    let al_hat = Alphabet::tilde(n + 1);
    let al = Alphabet::tilde(n);
    let mut phi_l = NcMatrix::zero(al, size);
    let mut phi_r = NcMatrix::zero(al, size);

    let mut left_cells: BTreeMap<(usize, usize), Vec<NcMonomial>> = BTreeMap::new();
    for i in 1..=n {
        let image = phi_apply(&stabilized, &achord(al_hat, i + 1, 1))?;
        for monomial in image.monomials() {
            let tail = monomial.body.tail();
            let Some(((last_chord, last_hom), prefix)) = tail.split_last() else {
                return Err(Error::Internal(format!(
                    "phi extraction: monomial of the image of a_{}_0 has no chord letters",
                    i
                )));
            };
            if last_chord.family != ChordFamily::A || last_chord.j != 1 || !last_hom.is_one() {
                return Err(Error::Internal(format!(
                    "phi extraction: monomial {} does not end with a boundary letter",
                    NcPoly::monomial(al_hat, monomial.clone())?
                )));
            }
            let j = last_chord.i - 1;
            let prefix_body = MonomialBody::from_parts(monomial.body.head().clone(), prefix.to_vec());
            if touches_strand_one(&prefix_body) {
                return Err(Error::Internal(format!(
                    "phi extraction: stabilized strand appears inside the coefficient of {}",
                    NcPoly::monomial(al_hat, monomial.clone())?
                )));
            }
            let entry = unshift_monomial(&NcMonomial::new(monomial.coeff.clone(), prefix_body), al)?;
            left_cells
                .entry((i as usize - 1, j as usize - 1))
                .or_default()
                .push(entry);
        }
    }
    for ((row, col), monomials) in left_cells {
        phi_l.set_entry(row, col, NcPoly::from_monomials(al, monomials)?)?;
    }

    let mut right_cells: BTreeMap<(usize, usize), Vec<NcMonomial>> = BTreeMap::new();
    for j in 1..=n {
        let image = phi_apply(&stabilized, &achord(al_hat, 1, j + 1))?;
        for monomial in image.monomials() {
            let tail = monomial.body.tail();
            let Some(((first_chord, first_hom), rest)) = tail.split_first() else {
                return Err(Error::Internal(format!(
                    "phi extraction: monomial of the image of a_0_{} has no chord letters",
                    j
                )));
            };
            if first_chord.family != ChordFamily::A
                || first_chord.i != 1
                || !monomial.body.head().is_one()
            {
                return Err(Error::Internal(format!(
                    "phi extraction: monomial {} does not begin with a boundary letter",
                    NcPoly::monomial(al_hat, monomial.clone())?
                )));
            }
            let i = first_chord.j - 1;
            let suffix_body = MonomialBody::from_parts(first_hom.clone(), rest.to_vec());
            if touches_strand_one(&suffix_body) {
                return Err(Error::Internal(format!(
                    "phi extraction: stabilized strand appears inside the coefficient of {}",
                    NcPoly::monomial(al_hat, monomial.clone())?
                )));
            }
            let entry = unshift_monomial(&NcMonomial::new(monomial.coeff.clone(), suffix_body), al)?;
            right_cells
                .entry((i as usize - 1, j as usize - 1))
                .or_default()
                .push(entry);
        }
    }
    for ((row, col), monomials) in right_cells {
        phi_r.set_entry(row, col, NcPoly::from_monomials(al, monomials)?)?;
    }

    Ok((phi_l, phi_r))
}

/// The four boundary matrices of a braid word over the tilde algebra, with
/// inverses computed through the inverse word and verified symbolically on
/// both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMatrices {
    phi_l: NcMatrix,
    phi_r: NcMatrix,
    phi_l_inv: NcMatrix,
    phi_r_inv: NcMatrix,
}

impl PhiMatrices {
    pub fn for_braid(word: &BraidWord) -> Result<Self> {
        let (phi_l, phi_r) = extract_phi(word)?;
        let (phi_l_inv, phi_r_inv) = invert_phi(word, &phi_l, &phi_r)?;
        Ok(PhiMatrices {
            phi_l,
            phi_r,
            phi_l_inv,
            phi_r_inv,
        })
    }

    pub fn phi_l(&self) -> &NcMatrix {
        &self.phi_l
    }

    pub fn phi_r(&self) -> &NcMatrix {
        &self.phi_r
    }

    pub fn phi_l_inv(&self) -> &NcMatrix {
        &self.phi_l_inv
    }

    pub fn phi_r_inv(&self) -> &NcMatrix {
        &self.phi_r_inv
    }

    /// Replace strand symbols by their component symbols in every entry.
    pub fn specialize(&self, cm: &ComponentMap) -> Result<PhiMatrices> {
        Ok(PhiMatrices {
            phi_l: self.phi_l.try_map(|p| specialize(p, cm))?,
            phi_r: self.phi_r.try_map(|p| specialize(p, cm))?,
            phi_l_inv: self.phi_l_inv.try_map(|p| specialize(p, cm))?,
            phi_r_inv: self.phi_r_inv.try_map(|p| specialize(p, cm))?,
        })
    }
}

/// Invert both boundary matrices by extracting the matrices of the inverse
/// word and pushing them through the word's own action; the products with
/// the originals are verified to be the identity on both sides.
pub fn invert_phi(
    word: &BraidWord,
    phi_l: &NcMatrix,
    phi_r: &NcMatrix,
) -> Result<(NcMatrix, NcMatrix)> {
    let inverse = word.inverse_word();
    let (inv_l_raw, inv_r_raw) = extract_phi(&inverse)?;
    let phi_l_inv = inv_l_raw.try_map(|p| phi_apply(word, p))?;
    let phi_r_inv = inv_r_raw.try_map(|p| phi_apply(word, p))?;
    for (m, m_inv, name) in [(phi_l, &phi_l_inv, "left"), (phi_r, &phi_r_inv, "right")] {
        if !m.mul(m_inv)?.is_identity() || !m_inv.mul(m)?.is_identity() {
            return Err(Error::Internal(format!(
                "{name} boundary matrix inverse failed symbolic verification"
            )));
        }
    }
    Ok((phi_l_inv, phi_r_inv))
}

/// One-way bridge from the tilde regime to the final coefficient ring:
/// every strand symbol becomes the meridian symbol of its component.
pub fn specialize(x: &NcPoly, cm: &ComponentMap) -> Result<NcPoly> {
    let n = cm.strands();
    let source = Alphabet::tilde(n);
    if x.alphabet() != source {
        return Err(Error::AlphabetMismatch {
            left: source.to_string(),
            right: x.alphabet().to_string(),
        });
    }
    let target = Alphabet::final_ring(n, cm.component_count());
    let symbols: BTreeMap<CoeffSymbol, HomMonomial> = (1..=n)
        .map(|j| {
            (
                CoeffSymbol::MuTilde(j),
                HomMonomial::symbol(CoeffSymbol::Mu(cm.alpha(j)), 1),
            )
        })
        .collect();
    x.map_symbols(target, &symbols)
}

/// The chord images of the word's action on the degree-0 part of the final
/// algebra: each chord maps through the tilde action followed by
/// specialization. Build once and reuse across many applications.
pub fn final_chord_images(
    word: &BraidWord,
    cm: &ComponentMap,
) -> Result<BTreeMap<ChordLetter, NcPoly>> {
    let n = word.strands();
    let tilde = Alphabet::tilde(n);
    let mut chord_images = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let image = specialize(&phi_apply(word, &achord(tilde, i, j))?, cm)?;
                chord_images.insert(ChordLetter::a(i, j), image);
            }
        }
    }
    Ok(chord_images)
}

/// The action of the word on the degree-0 part of the final algebra:
/// chords map through the tilde action followed by specialization, and the
/// homology symbols are fixed.
pub fn phi_apply_final(word: &BraidWord, cm: &ComponentMap, x: &NcPoly) -> Result<NcPoly> {
    let target = Alphabet::final_ring(word.strands(), cm.component_count());
    if x.alphabet() != target {
        return Err(Error::AlphabetMismatch {
            left: target.to_string(),
            right: x.alphabet().to_string(),
        });
    }
    let chord_images = final_chord_images(word, cm)?;
    let symbols = identity_symbol_images(target);
    x.substitute(target, &chord_images, &symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn al(n: u32) -> Alphabet {
        Alphabet::tilde(n)
    }

    #[test]
    fn positive_letter_table_examples() {
        let action = phi_letter(1, 2).unwrap();
        assert_eq!(
            action.chord_image(ChordLetter::a(1, 2)).unwrap(),
            &achord(al(2), 2, 1).neg()
        );
        let expected = mu_tilde(al(2), 1, 1)
            .mul(&achord(al(2), 1, 2))
            .unwrap()
            .mul(&mu_tilde(al(2), 2, -1))
            .unwrap()
            .neg();
        assert_eq!(action.chord_image(ChordLetter::a(2, 1)).unwrap(), &expected);

        let action5 = phi_letter(1, 5).unwrap();
        assert_eq!(
            action5.chord_image(ChordLetter::a(3, 4)).unwrap(),
            &achord(al(5), 3, 4)
        );
        assert_eq!(
            action5.symbol_image(CoeffSymbol::MuTilde(1)).unwrap(),
            &HomMonomial::symbol(CoeffSymbol::MuTilde(2), 1)
        );
        assert_eq!(
            action5.symbol_image(CoeffSymbol::MuTilde(2)).unwrap(),
            &HomMonomial::symbol(CoeffSymbol::MuTilde(1), 1)
        );
        assert_eq!(
            action5.symbol_image(CoeffSymbol::MuTilde(4)).unwrap(),
            &HomMonomial::symbol(CoeffSymbol::MuTilde(4), 1)
        );
    }

    #[test]
    fn inverse_pair_is_identity_on_generators() {
        for n in 2..=4u32 {
            for k in 1..n as i32 {
                for word in [[k, -k], [-k, k]] {
                    let b = BraidWord::new(n, word.to_vec()).unwrap();
                    for i in 1..=n {
                        for j in 1..=n {
                            if i == j {
                                continue;
                            }
                            let g = achord(al(n), i, j);
                            assert_eq!(phi_apply(&b, &g).unwrap(), g, "n={n} k={k} a_{i}_{j}");
                        }
                    }
                    for s in 1..=n {
                        let g = mu_tilde(al(n), s, 1);
                        assert_eq!(phi_apply(&b, &g).unwrap(), g);
                    }
                }
            }
        }
    }

    #[test]
    fn squared_twist_example() {
        let b = parse_braid("1 1", 2).unwrap();
        let image = phi_apply(&b, &achord(al(2), 1, 2)).unwrap();
        let expected = mu_tilde(al(2), 1, 1)
            .mul(&achord(al(2), 1, 2))
            .unwrap()
            .mul(&mu_tilde(al(2), 2, -1))
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn empty_word_is_identity() {
        let b = parse_braid("", 3).unwrap();
        let x = achord(al(3), 1, 3)
            .mul(&mu_tilde(al(3), 2, -2))
            .unwrap();
        assert_eq!(phi_apply(&b, &x).unwrap(), x);
    }

    #[test]
    fn braid_relations_small() {
        let n = 3u32;
        let lhs = BraidWord::new(n, vec![1, 2, 1]).unwrap();
        let rhs = BraidWord::new(n, vec![2, 1, 2]).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let g = achord(al(n), i, j);
                assert_eq!(phi_apply(&lhs, &g).unwrap(), phi_apply(&rhs, &g).unwrap());
            }
        }
        for s in 1..=n {
            let g = mu_tilde(al(n), s, 1);
            assert_eq!(phi_apply(&lhs, &g).unwrap(), phi_apply(&rhs, &g).unwrap());
        }
    }

    #[test]
    fn homomorphism_on_products() {
        let b = parse_braid("1 -2 1", 3).unwrap();
        let x = achord(al(3), 1, 2).mul(&mu_tilde(al(3), 3, 1)).unwrap();
        let y = achord(al(3), 3, 1);
        let lhs = phi_apply(&b, &x.mul(&y).unwrap()).unwrap();
        let rhs = phi_apply(&b, &x)
            .unwrap()
            .mul(&phi_apply(&b, &y).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extract_trivial_braid() {
        let b = parse_braid("", 3).unwrap();
        let (phi_l, phi_r) = extract_phi(&b).unwrap();
        assert!(phi_l.is_identity());
        assert!(phi_r.is_identity());
    }

    #[test]
    fn extract_single_positive_twist() {
        let b = parse_braid("1", 2).unwrap();
        let (phi_l, phi_r) = extract_phi(&b).unwrap();
        let a = al(2);
        let expected_l = NcMatrix::from_rows(
            a,
            vec![
                vec![achord(a, 2, 1).neg(), NcPoly::one(a)],
                vec![NcPoly::one(a), NcPoly::zero(a)],
            ],
        )
        .unwrap();
        let expected_r = NcMatrix::from_rows(
            a,
            vec![
                vec![achord(a, 1, 2).neg(), NcPoly::one(a)],
                vec![NcPoly::one(a), NcPoly::zero(a)],
            ],
        )
        .unwrap();
        assert_eq!(phi_l, expected_l);
        assert_eq!(phi_r, expected_r);
    }

    #[test]
    fn extract_cancelling_word_is_identity() {
        let b = parse_braid("-1 1", 2).unwrap();
        let (phi_l, phi_r) = extract_phi(&b).unwrap();
        assert!(phi_l.is_identity());
        assert!(phi_r.is_identity());
    }

    #[test]
    fn inverses_verify_for_small_words() {
        for (text, n) in [("", 2), ("1", 2), ("1 1 1", 2), ("1 -2", 3)] {
            let b = parse_braid(text, n).unwrap();
            PhiMatrices::for_braid(&b).unwrap();
        }
    }

    #[test]
    fn specialize_examples() {
        let knot = parse_braid("1 1 1", 2).unwrap().components();
        let x = mu_tilde(al(2), 1, 1)
            .mul(&achord(al(2), 1, 2))
            .unwrap()
            .mul(&mu_tilde(al(2), 2, -1))
            .unwrap();
        let spec = specialize(&x, &knot).unwrap();
        let fin = Alphabet::final_ring(2, 1);
        let expected = NcPoly::symbol(fin, CoeffSymbol::Mu(1), 1)
            .unwrap()
            .mul(&NcPoly::chord(fin, ChordLetter::a(1, 2)).unwrap())
            .unwrap()
            .mul(&NcPoly::symbol(fin, CoeffSymbol::Mu(1), -1).unwrap())
            .unwrap();
        // the meridian does not commute past the chord, so nothing collapses
        assert_eq!(spec, expected);
        assert_eq!(spec.term_count(), 1);
        assert!(!spec
            .terms()
            .next()
            .unwrap()
            .0
            .head()
            .is_one());

        let unlink = parse_braid("", 2).unwrap().components();
        let x = mu_tilde(al(2), 1, 1).mul(&mu_tilde(al(2), 2, 1)).unwrap();
        let spec = specialize(&x, &unlink).unwrap();
        let fin = Alphabet::final_ring(2, 2);
        let expected = NcPoly::symbol(fin, CoeffSymbol::Mu(1), 1)
            .unwrap()
            .mul(&NcPoly::symbol(fin, CoeffSymbol::Mu(2), 1).unwrap())
            .unwrap();
        assert_eq!(spec, expected);

        let chords_only = achord(al(2), 1, 2).mul(&achord(al(2), 2, 1)).unwrap();
        let spec = specialize(&chords_only, &knot).unwrap();
        let fin = Alphabet::final_ring(2, 1);
        let expected = NcPoly::chord(fin, ChordLetter::a(1, 2))
            .unwrap()
            .mul(&NcPoly::chord(fin, ChordLetter::a(2, 1)).unwrap())
            .unwrap();
        assert_eq!(spec, expected);
    }

    #[test]
    fn grade_is_preserved() {
        let b = parse_braid("1 1 -2 1", 3).unwrap();
        let x = achord(al(3), 2, 3).mul(&achord(al(3), 1, 3)).unwrap();
        let image = phi_apply(&b, &x).unwrap();
        assert!(image.is_homogeneous_of(0));
    }
}
