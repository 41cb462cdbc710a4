//! Exact arithmetic in the unital noncommutative graded algebra generated by
//! an invertible commutative coefficient ring (homology symbols) together
//! with noncommuting chord letters.
//!
//! Elements are kept in canonical form at all times: a polynomial is a map
//! from monomial bodies to nonzero integer coefficients, a body is an
//! alternating sequence `h0 g1 h1 g2 ... gm hm` of homology monomials and
//! chord letters with adjacent homology slots merged, and the term order is
//! fixed (see `MonomialBody::cmp`) so equal values always serialize to
//! identical bytes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Which commutative coefficient ring an algebra instance is over.
///
/// The tilde ring carries one invertible symbol per strand; the final ring
/// carries a longitude/meridian pair per link component. The two regimes
/// never mix inside a single polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoeffRegime {
    /// Symbols `mt1 ..= mt<n>` (one per strand); only `A`-family chords exist.
    Tilde,
    /// Symbols `l1 ..= l<r>` and `m1 ..= m<r>` (one pair per component).
    Final { components: u32 },
}

/// Alphabet declaration carried by every polynomial: strand count plus
/// coefficient regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    strands: u32,
    regime: CoeffRegime,
}

impl Alphabet {
    pub fn tilde(strands: u32) -> Self {
        Alphabet {
            strands,
            regime: CoeffRegime::Tilde,
        }
    }

    pub fn final_ring(strands: u32, components: u32) -> Self {
        Alphabet {
            strands,
            regime: CoeffRegime::Final { components },
        }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn regime(&self) -> CoeffRegime {
        self.regime
    }

    pub fn is_tilde(&self) -> bool {
        matches!(self.regime, CoeffRegime::Tilde)
    }

    /// All coefficient symbols this alphabet admits.
    pub fn symbols(&self) -> Vec<CoeffSymbol> {
        match self.regime {
            CoeffRegime::Tilde => (1..=self.strands).map(CoeffSymbol::MuTilde).collect(),
            CoeffRegime::Final { components } => (1..=components)
                .flat_map(|k| [CoeffSymbol::Lambda(k), CoeffSymbol::Mu(k)])
                .collect(),
        }
    }

    pub fn check_symbol(&self, s: CoeffSymbol) -> Result<(), Error> {
        let ok = match (self.regime, s) {
            (CoeffRegime::Tilde, CoeffSymbol::MuTilde(k)) => k >= 1 && k <= self.strands,
            (CoeffRegime::Final { components }, CoeffSymbol::Lambda(k))
            | (CoeffRegime::Final { components }, CoeffSymbol::Mu(k)) => k >= 1 && k <= components,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: s.to_string(),
                alphabet: self.to_string(),
            })
        }
    }

    pub fn check_chord(&self, c: ChordLetter) -> Result<(), Error> {
        let n = self.strands;
        let in_range = c.i >= 1 && c.i <= n && c.j >= 1 && c.j <= n;
        let distinct_ok = match c.family {
            ChordFamily::A | ChordFamily::B => c.i != c.j,
            ChordFamily::C | ChordFamily::E => true,
        };
        // The tilde algebra is generated by homology symbols and a's alone.
        let family_ok = !self.is_tilde() || c.family == ChordFamily::A;
        if in_range && distinct_ok && family_ok {
            Ok(())
        } else {
            Err(Error::ChordOutOfRange {
                chord: c.to_string(),
                alphabet: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.regime {
            CoeffRegime::Tilde => write!(f, "tilde(n={})", self.strands),
            CoeffRegime::Final { components } => {
                write!(f, "final(n={},r={})", self.strands, components)
            }
        }
    }
}

/// One invertible homology symbol. Ordered `Lambda < Mu < MuTilde`, then by
/// index; serialized as `l<k>`, `m<k>`, `mt<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoeffSymbol {
    Lambda(u32),
    Mu(u32),
    MuTilde(u32),
}

impl CoeffSymbol {
    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn parse_name(s: &str) -> Option<CoeffSymbol> {
        if let Some(k) = s.strip_prefix("mt") {
            return k.parse().ok().map(CoeffSymbol::MuTilde);
        }
        if let Some(k) = s.strip_prefix('l') {
            return k.parse().ok().map(CoeffSymbol::Lambda);
        }
        if let Some(k) = s.strip_prefix('m') {
            return k.parse().ok().map(CoeffSymbol::Mu);
        }
        None
    }
}

impl fmt::Display for CoeffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSymbol::Lambda(k) => write!(f, "l{k}"),
            CoeffSymbol::Mu(k) => write!(f, "m{k}"),
            CoeffSymbol::MuTilde(k) => write!(f, "mt{k}"),
        }
    }
}

/// A Laurent monomial in the commutative homology symbols: a sparse map
/// symbol -> nonzero exponent. The empty map is the group-ring unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomMonomial {
    exponents: BTreeMap<CoeffSymbol, i64>,
}

impl HomMonomial {
    pub fn one() -> Self {
        HomMonomial::default()
    }

    pub fn symbol(s: CoeffSymbol, exp: i64) -> Self {
        let mut m = HomMonomial::one();
        if exp != 0 {
            m.exponents.insert(s, exp);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Multiplication is exponent addition.
    pub fn mul(&self, other: &HomMonomial) -> HomMonomial {
        let mut exponents = self.exponents.clone();
        for (&s, &e) in &other.exponents {
            let entry = exponents.entry(s).or_insert(0);
            *entry += e;
            if *entry == 0 {
                exponents.remove(&s);
            }
        }
        HomMonomial { exponents }
    }

    pub fn pow(&self, e: i64) -> HomMonomial {
        if e == 0 {
            return HomMonomial::one();
        }
        HomMonomial {
            exponents: self
                .exponents
                .iter()
                .map(|(&s, &x)| (s, x * e))
                .collect(),
        }
    }

    pub fn inverse(&self) -> HomMonomial {
        self.pow(-1)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (CoeffSymbol, i64)> + '_ {
        self.exponents.iter().map(|(&s, &e)| (s, e))
    }

    pub fn exponent_of(&self, s: CoeffSymbol) -> i64 {
        self.exponents.get(&s).copied().unwrap_or(0)
    }
}

/// Chord families in canonical order; degrees 0, 1, 1, 2 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChordFamily {
    A,
    B,
    C,
    E,
}

impl ChordFamily {
    pub fn degree(&self) -> i64 {
        match self {
            ChordFamily::A => 0,
            ChordFamily::B | ChordFamily::C => 1,
            ChordFamily::E => 2,
        }
    }

    pub fn letter(&self) -> char {
        match self {
            ChordFamily::A => 'a',
            ChordFamily::B => 'b',
            ChordFamily::C => 'c',
            ChordFamily::E => 'e',
        }
    }

    pub fn from_letter(c: char) -> Option<ChordFamily> {
        match c {
            'a' => Some(ChordFamily::A),
            'b' => Some(ChordFamily::B),
            'c' => Some(ChordFamily::C),
            'e' => Some(ChordFamily::E),
            _ => None,
        }
    }
}

/// One noncommuting chord generator, e.g. `a_1_2`. Strand indices are
/// 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordLetter {
    pub family: ChordFamily,
    pub i: u32,
    pub j: u32,
}

impl ChordLetter {
    pub fn new(family: ChordFamily, i: u32, j: u32) -> Self {
        ChordLetter { family, i, j }
    }

    pub fn a(i: u32, j: u32) -> Self {
        Self::new(ChordFamily::A, i, j)
    }

    pub fn b(i: u32, j: u32) -> Self {
        Self::new(ChordFamily::B, i, j)
    }

    pub fn c(i: u32, j: u32) -> Self {
        Self::new(ChordFamily::C, i, j)
    }

    pub fn e(i: u32, j: u32) -> Self {
        Self::new(ChordFamily::E, i, j)
    }

    pub fn degree(&self) -> i64 {
        self.family.degree()
    }

    /// The generator name used in documents, e.g. `a_1_2`.
    pub fn name(&self) -> String {
        format!("{}_{}_{}", self.family.letter(), self.i, self.j)
    }
}

impl fmt::Display for ChordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A coefficient-free monomial `h0 g1 h1 g2 ... gm hm`: a head homology slot
/// followed by (chord, homology slot) pairs. Adjacent homology factors are
/// merged by construction, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonomialBody {
    head: HomMonomial,
    tail: Vec<(ChordLetter, HomMonomial)>,
}

impl MonomialBody {
    pub fn unit() -> Self {
        MonomialBody::default()
    }

    pub fn from_hom(h: HomMonomial) -> Self {
        MonomialBody {
            head: h,
            tail: Vec::new(),
        }
    }

    pub fn from_chord(c: ChordLetter) -> Self {
        MonomialBody {
            head: HomMonomial::one(),
            tail: vec![(c, HomMonomial::one())],
        }
    }

    /// Assemble a body from its head slot and (chord, slot) pairs. The
    /// alternating shape is canonical by construction.
    pub fn from_parts(head: HomMonomial, tail: Vec<(ChordLetter, HomMonomial)>) -> Self {
        MonomialBody { head, tail }
    }

    pub fn head(&self) -> &HomMonomial {
        &self.head
    }

    pub fn tail(&self) -> &[(ChordLetter, HomMonomial)] {
        &self.tail
    }

    pub fn is_unit(&self) -> bool {
        self.head.is_one() && self.tail.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.tail.len()
    }

    pub fn chord_letters(&self) -> impl Iterator<Item = ChordLetter> + '_ {
        self.tail.iter().map(|(c, _)| *c)
    }

    pub fn chord_degree(&self) -> i64 {
        self.tail.iter().map(|(c, _)| c.degree()).sum()
    }

    /// Concatenation with the boundary homology slots merged.
    pub fn concat(&self, other: &MonomialBody) -> MonomialBody {
        if self.tail.is_empty() {
            return MonomialBody {
                head: self.head.mul(&other.head),
                tail: other.tail.clone(),
            };
        }
        let mut tail = self.tail.clone();
        let last = tail.last_mut().expect("nonempty tail");
        last.1 = last.1.mul(&other.head);
        tail.extend(other.tail.iter().cloned());
        MonomialBody {
            head: self.head.clone(),
            tail,
        }
    }

    /// Split off everything strictly before the chord at `pos` and everything
    /// strictly after it. Used by the Leibniz extension.
    fn split_around(&self, pos: usize) -> (MonomialBody, ChordLetter, MonomialBody) {
        let left = MonomialBody {
            head: self.head.clone(),
            tail: self.tail[..pos].to_vec(),
        };
        let (chord, after) = (self.tail[pos].0, self.tail[pos].1.clone());
        let right = MonomialBody {
            head: after,
            tail: self.tail[pos + 1..].to_vec(),
        };
        (left, chord, right)
    }
}

impl Ord for MonomialBody {
    /// Term order: chord degree, then chord count, then the chord-letter
    /// sequence lexicographically, then the interleaved homology slots
    /// lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.chord_degree()
            .cmp(&other.chord_degree())
            .then_with(|| self.tail.len().cmp(&other.tail.len()))
            .then_with(|| {
                self.chord_letters()
                    .collect::<Vec<_>>()
                    .cmp(&other.chord_letters().collect::<Vec<_>>())
            })
            .then_with(|| self.head.cmp(&other.head))
            .then_with(|| {
                let lhs: Vec<_> = self.tail.iter().map(|(_, h)| h).collect();
                let rhs: Vec<_> = other.tail.iter().map(|(_, h)| h).collect();
                lhs.cmp(&rhs)
            })
    }
}

impl PartialOrd for MonomialBody {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial with its integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMonomial {
    pub coeff: BigInt,
    pub body: MonomialBody,
}

impl NcMonomial {
    pub fn new(coeff: impl Into<BigInt>, body: MonomialBody) -> Self {
        NcMonomial {
            coeff: coeff.into(),
            body,
        }
    }
}

/// Product of two monomials: bodies concatenate (merging the boundary
/// homology slots), coefficients multiply.
pub fn mono_mul(x: &NcMonomial, y: &NcMonomial) -> NcMonomial {
    NcMonomial {
        coeff: &x.coeff * &y.coeff,
        body: x.body.concat(&y.body),
    }
}

/// Grading outcome of a polynomial. The zero polynomial is homogeneous of
/// every degree and reports `Any`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    Any,
    Homogeneous(i64),
    Mixed,
}

/// Canonical-form element of the noncommutative algebra over its declared
/// alphabet. Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    alphabet: Alphabet,
    terms: BTreeMap<MonomialBody, BigInt>,
}

impl NcPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::integer(alphabet, 1)
    }

    pub fn integer(alphabet: Alphabet, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(MonomialBody::unit(), c);
        }
        NcPoly { alphabet, terms }
    }

    pub fn chord(alphabet: Alphabet, c: ChordLetter) -> Result<Self, Error> {
        alphabet.check_chord(c)?;
        let mut terms = BTreeMap::new();
        terms.insert(MonomialBody::from_chord(c), BigInt::one());
        Ok(NcPoly { alphabet, terms })
    }

    pub fn hom(alphabet: Alphabet, h: HomMonomial) -> Result<Self, Error> {
        for (s, _) in h.exponents() {
            alphabet.check_symbol(s)?;
        }
        let mut terms = BTreeMap::new();
        terms.insert(MonomialBody::from_hom(h), BigInt::one());
        Ok(NcPoly { alphabet, terms })
    }

    pub fn symbol(alphabet: Alphabet, s: CoeffSymbol, exp: i64) -> Result<Self, Error> {
        Self::hom(alphabet, HomMonomial::symbol(s, exp))
    }

    pub fn monomial(alphabet: Alphabet, m: NcMonomial) -> Result<Self, Error> {
        Self::from_monomials(alphabet, [m])
    }

    pub fn from_monomials(
        alphabet: Alphabet,
        monomials: impl IntoIterator<Item = NcMonomial>,
    ) -> Result<Self, Error> {
        let mut terms: BTreeMap<MonomialBody, BigInt> = BTreeMap::new();
        for m in monomials {
            for c in m.body.chord_letters() {
                alphabet.check_chord(c)?;
            }
            for h in std::iter::once(m.body.head()).chain(m.body.tail().iter().map(|(_, h)| h)) {
                for (s, _) in h.exponents() {
                    alphabet.check_symbol(s)?;
                }
            }
            let entry = terms.entry(m.body).or_insert_with(BigInt::zero);
            *entry += m.coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(NcPoly { alphabet, terms })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MonomialBody, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = NcMonomial> + '_ {
        self.terms.iter().map(|(b, c)| NcMonomial {
            coeff: c.clone(),
            body: b.clone(),
        })
    }

    fn check_same_alphabet(&self, other: &NcPoly) -> Result<(), Error> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.check_same_alphabet(other)?;
        let mut terms = self.terms.clone();
        for (body, coeff) in &other.terms {
            let entry = terms.entry(body.clone()).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(NcPoly {
            alphabet: self.alphabet,
            terms,
        })
    }

    /// Sum many polynomials without the repeated-clone cost of folding
    /// `add`.
    pub fn sum(alphabet: Alphabet, parts: impl IntoIterator<Item = NcPoly>) -> Result<NcPoly, Error> {
        let mut terms: BTreeMap<MonomialBody, BigInt> = BTreeMap::new();
        for part in parts {
            if part.alphabet != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: part.alphabet.to_string(),
                });
            }
            for (body, coeff) in part.terms {
                let entry = terms.entry(body).or_insert_with(BigInt::zero);
                *entry += coeff;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(NcPoly { alphabet, terms })
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.alphabet);
        }
        NcPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .map(|(b, x)| (b.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.check_same_alphabet(other)?;
        let mut terms: BTreeMap<MonomialBody, BigInt> = BTreeMap::new();
        for (bx, cx) in &self.terms {
            for (by, cy) in &other.terms {
                let body = bx.concat(by);
                let entry = terms.entry(body).or_insert_with(BigInt::zero);
                *entry += cx * cy;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(NcPoly {
            alphabet: self.alphabet,
            terms,
        })
    }

    /// Common chord degree, if any. Zero is homogeneous of every degree.
    pub fn grade(&self) -> Grade {
        let mut degrees = self.terms.keys().map(|b| b.chord_degree());
        match degrees.next() {
            None => Grade::Any,
            Some(d) => {
                if degrees.all(|x| x == d) {
                    Grade::Homogeneous(d)
                } else {
                    Grade::Mixed
                }
            }
        }
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        match self.grade() {
            Grade::Any => true,
            Grade::Homogeneous(g) => g == d,
            Grade::Mixed => false,
        }
    }

    /// Ring-homomorphism extension of letterwise images: every chord letter
    /// is replaced by `chord_images[letter]` and every homology symbol by
    /// `symbol_images[symbol]` (raised to the stored exponent), multiplying
    /// in order. Every letter occurring in `self` must have an image.
    pub fn substitute(
        &self,
        target: Alphabet,
        chord_images: &BTreeMap<ChordLetter, NcPoly>,
        symbol_images: &BTreeMap<CoeffSymbol, HomMonomial>,
    ) -> Result<NcPoly, Error> {
        let hom_image = |h: &HomMonomial| -> Result<HomMonomial, Error> {
            let mut out = HomMonomial::one();
            for (s, e) in h.exponents() {
                let img = symbol_images
                    .get(&s)
                    .ok_or_else(|| Error::MissingImage(s.to_string()))?;
                out = out.mul(&img.pow(e));
            }
            Ok(out)
        };
        let mut parts = Vec::with_capacity(self.terms.len());
        for (body, coeff) in &self.terms {
            let mut term = NcPoly::hom(target, hom_image(body.head())?)?;
            for (chord, h) in body.tail() {
                let img = chord_images
                    .get(chord)
                    .ok_or_else(|| Error::MissingImage(chord.to_string()))?;
                term = term.mul(img)?;
                term = term.mul(&NcPoly::hom(target, hom_image(h)?)?)?;
            }
            parts.push(term.scale(coeff));
        }
        NcPoly::sum(target, parts)
    }

    /// Specialization that only renames homology symbols, leaving chords
    /// untouched. Convenience wrapper over `substitute`.
    pub fn map_symbols(
        &self,
        target: Alphabet,
        symbol_images: &BTreeMap<CoeffSymbol, HomMonomial>,
    ) -> Result<NcPoly, Error> {
        let chord_images = self
            .terms
            .keys()
            .flat_map(|b| b.chord_letters())
            .map(|c| Ok((c, NcPoly::chord(target, c)?)))
            .collect::<Result<BTreeMap<_, _>, Error>>()?;
        self.substitute(target, &chord_images, symbol_images)
    }

    /// Collect every homology factor of each monomial into a single leading
    /// slot, preserving the chord order. This is the homology-commutative
    /// quotient map; it is idempotent.
    pub fn homology_commutative_quotient(&self) -> NcPoly {
        let mut terms: BTreeMap<MonomialBody, BigInt> = BTreeMap::new();
        for (body, coeff) in &self.terms {
            let mut head = body.head().clone();
            for (_, h) in body.tail() {
                head = head.mul(h);
            }
            let tail = body
                .tail()
                .iter()
                .map(|(c, _)| (*c, HomMonomial::one()))
                .collect();
            let quotient_body = MonomialBody { head, tail };
            let entry = terms.entry(quotient_body).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        NcPoly {
            alphabet: self.alphabet,
            terms,
        }
    }
}

/// Signed-Leibniz extension of a differential given on chord letters.
///
/// Homology symbols differentiate to zero; the sign on the term that
/// differentiates the chord at position `k` is `(-1)^(degree of the prefix)`.
/// Each image must be homogeneous of degree one less than its letter.
pub fn leibniz_extend(
    d_gen: &BTreeMap<ChordLetter, NcPoly>,
    p: &NcPoly,
) -> Result<NcPoly, Error> {
    let alphabet = p.alphabet();
    let mut parts = Vec::new();
    for (body, coeff) in p.terms() {
        let mut prefix_degree: i64 = 0;
        for pos in 0..body.chord_count() {
            let (left, chord, right) = body.split_around(pos);
            let image = d_gen
                .get(&chord)
                .ok_or_else(|| Error::MissingImage(chord.to_string()))?;
            if !image.is_homogeneous_of(chord.degree() - 1) {
                return Err(Error::InhomogeneousImage(chord.to_string()));
            }
            let sign = if prefix_degree % 2 == 0 { 1 } else { -1 };
            let left_poly = NcPoly::monomial(
                alphabet,
                NcMonomial::new(coeff * BigInt::from(sign), left),
            )?;
            let right_poly = NcPoly::monomial(alphabet, NcMonomial::new(1, right))?;
            parts.push(left_poly.mul(image)?.mul(&right_poly)?);
            prefix_degree += chord.degree();
        }
    }
    NcPoly::sum(alphabet, parts)
}

/// Identity symbol images for every symbol of `alphabet` (targeting the same
/// alphabet). Useful when only chords are substituted.
pub fn identity_symbol_images(alphabet: Alphabet) -> BTreeMap<CoeffSymbol, HomMonomial> {
    alphabet
        .symbols()
        .into_iter()
        .map(|s| (s, HomMonomial::symbol(s, 1)))
        .collect()
}

/// Identity images for every `A`-family chord of `alphabet`.
pub fn identity_a_chord_images(alphabet: Alphabet) -> BTreeMap<ChordLetter, NcPoly> {
    let n = alphabet.strands();
    let mut map = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let c = ChordLetter::a(i, j);
                map.insert(c, NcPoly::chord(alphabet, c).expect("valid chord"));
            }
        }
    }
    map
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn write_body(f: &mut String, body: &MonomialBody, latex: bool) {
    let mut first = true;
    let mut push_factor = |s: String, f: &mut String| {
        if !first {
            f.push_str(if latex { " " } else { "*" });
        }
        first = false;
        f.push_str(&s);
    };
    let hom_str = |h: &HomMonomial| -> Vec<String> {
        h.exponents()
            .map(|(s, e)| {
                if latex {
                    let base = match s {
                        CoeffSymbol::Lambda(k) => format!("\\lambda_{{{k}}}"),
                        CoeffSymbol::Mu(k) => format!("\\mu_{{{k}}}"),
                        CoeffSymbol::MuTilde(k) => format!("\\tilde{{\\mu}}_{{{k}}}"),
                    };
                    if e == 1 {
                        base
                    } else {
                        format!("{base}^{{{e}}}")
                    }
                } else if e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect()
    };
    for part in hom_str(body.head()) {
        push_factor(part, f);
    }
    for (chord, h) in body.tail() {
        let c = if latex {
            format!("{}_{{{},{}}}", chord.family.letter(), chord.i, chord.j)
        } else {
            chord.name()
        };
        push_factor(c, f);
        for part in hom_str(h) {
            push_factor(part, f);
        }
    }
}

fn render(p: &NcPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (body, coeff)) in p.terms().enumerate() {
        let neg = coeff.is_negative();
        let abs = coeff.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body.is_unit() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push_str(if latex { " " } else { "*" });
            }
            write_body(&mut out, body, latex);
        }
    }
    out
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self, false))
    }
}

impl NcPoly {
    /// Convenience LaTeX rendering. No round-trip guarantee.
    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

// ---------------------------------------------------------------------------
// Serialization: the document form of a polynomial is a list of term
// records {coef, factors}, each factor either {"hom": {...}} or
// {"chord": "a", "i": 1, "j": 2}, in the canonical term order.
// ---------------------------------------------------------------------------

/// One serialized factor of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorRepr {
    Hom(BTreeMap<String, i64>),
    Chord { chord: char, i: u32, j: u32 },
}

impl Serialize for FactorRepr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FactorRepr::Hom(map) => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("hom", map)?;
                m.end()
            }
            FactorRepr::Chord { chord, i, j } => {
                let mut m = serializer.serialize_map(Some(3))?;
                m.serialize_entry("chord", &chord.to_string())?;
                m.serialize_entry("i", i)?;
                m.serialize_entry("j", j)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for FactorRepr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct FactorVisitor;

        impl<'de> Visitor<'de> for FactorVisitor {
            type Value = FactorRepr;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a factor object with key \"hom\" or keys \"chord\",\"i\",\"j\"")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> Result<FactorRepr, M::Error> {
                let mut hom: Option<BTreeMap<String, i64>> = None;
                let mut chord: Option<String> = None;
                let mut i: Option<u32> = None;
                let mut j: Option<u32> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "hom" => hom = Some(map.next_value()?),
                        "chord" => chord = Some(map.next_value()?),
                        "i" => i = Some(map.next_value()?),
                        "j" => j = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["hom", "chord", "i", "j"])),
                    }
                }
                match (hom, chord) {
                    (Some(h), None) => Ok(FactorRepr::Hom(h)),
                    (None, Some(c)) => {
                        let mut chars = c.chars();
                        let (Some(letter), None) = (chars.next(), chars.next()) else {
                            return Err(de::Error::custom("chord family must be one letter"));
                        };
                        Ok(FactorRepr::Chord {
                            chord: letter,
                            i: i.ok_or_else(|| de::Error::missing_field("i"))?,
                            j: j.ok_or_else(|| de::Error::missing_field("j"))?,
                        })
                    }
                    _ => Err(de::Error::custom("factor must be exactly one of hom/chord")),
                }
            }
        }

        deserializer.deserialize_map(FactorVisitor)
    }
}

/// One serialized term: an integer coefficient and its factor list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermRepr {
    pub coef: serde_json::Number,
    pub factors: Vec<FactorRepr>,
}

/// Serialized polynomial: term records in canonical order.
pub type PolyRepr = Vec<TermRepr>;

impl NcPoly {
    pub fn to_repr(&self) -> PolyRepr {
        let hom_repr = |h: &HomMonomial| -> FactorRepr {
            FactorRepr::Hom(h.exponents().map(|(s, e)| (s.name(), e)).collect())
        };
        self.terms()
            .map(|(body, coeff)| {
                let mut factors = Vec::new();
                if !body.head().is_one() {
                    factors.push(hom_repr(body.head()));
                }
                for (chord, h) in body.tail() {
                    factors.push(FactorRepr::Chord {
                        chord: chord.family.letter(),
                        i: chord.i,
                        j: chord.j,
                    });
                    if !h.is_one() {
                        factors.push(hom_repr(h));
                    }
                }
                TermRepr {
                    coef: serde_json::from_str(&coeff.to_string())
                        .expect("integer is a valid JSON number"),
                    factors,
                }
            })
            .collect()
    }

    /// Rebuild a polynomial from its document form, validating every letter
    /// against `alphabet`. Accepts non-canonical input (it re-canonicalizes).
    pub fn from_repr(alphabet: Alphabet, repr: &PolyRepr) -> Result<NcPoly, Error> {
        let mut monomials = Vec::new();
        for term in repr {
            let digits = term.coef.to_string();
            let coeff: BigInt = digits
                .parse()
                .map_err(|_| Error::Document(format!("coefficient {digits} is not an integer")))?;
            let mut body = MonomialBody::unit();
            for factor in &term.factors {
                match factor {
                    FactorRepr::Hom(map) => {
                        let mut h = HomMonomial::one();
                        for (name, &e) in map {
                            let s = CoeffSymbol::parse_name(name).ok_or_else(|| {
                                Error::Document(format!("unknown symbol name {name}"))
                            })?;
                            alphabet.check_symbol(s)?;
                            h = h.mul(&HomMonomial::symbol(s, e));
                        }
                        body = body.concat(&MonomialBody::from_hom(h));
                    }
                    FactorRepr::Chord { chord, i, j } => {
                        let family = ChordFamily::from_letter(*chord).ok_or_else(|| {
                            Error::Document(format!("unknown chord family {chord}"))
                        })?;
                        let letter = ChordLetter::new(family, *i, *j);
                        alphabet.check_chord(letter)?;
                        body = body.concat(&MonomialBody::from_chord(letter));
                    }
                }
            }
            monomials.push(NcMonomial::new(coeff, body));
        }
        NcPoly::from_monomials(alphabet, monomials)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tilde2() -> Alphabet {
        Alphabet::tilde(2)
    }

    fn final22() -> Alphabet {
        Alphabet::final_ring(2, 2)
    }

    fn mt(k: u32, e: i64) -> HomMonomial {
        HomMonomial::symbol(CoeffSymbol::MuTilde(k), e)
    }

    #[test]
    fn inverse_pair_cancels() {
        let al = tilde2();
        let x = NcPoly::hom(al, mt(1, 1)).unwrap();
        let y = NcPoly::hom(al, mt(1, -1)).unwrap();
        assert_eq!(x.mul(&y).unwrap(), NcPoly::one(al));
    }

    #[test]
    fn adjacent_homology_slots_merge() {
        let al = tilde2();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let a21 = NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap();
        let m1 = NcPoly::hom(al, mt(1, 1)).unwrap();
        let left = a12.mul(&m1).unwrap();
        let right = m1.mul(&a21).unwrap();
        let product = left.mul(&right).unwrap();
        // a12 mt1^2 a21
        let expected_body = MonomialBody::from_chord(ChordLetter::a(1, 2))
            .concat(&MonomialBody::from_hom(mt(1, 2)))
            .concat(&MonomialBody::from_chord(ChordLetter::a(2, 1)));
        let expected = NcPoly::monomial(al, NcMonomial::new(1, expected_body)).unwrap();
        assert_eq!(product, expected);
    }

    #[test]
    fn unit_law() {
        let al = final22();
        let b12 = NcPoly::chord(al, ChordLetter::b(1, 2)).unwrap();
        assert_eq!(NcPoly::one(al).mul(&b12).unwrap(), b12);
        assert_eq!(b12.mul(&NcPoly::one(al)).unwrap(), b12);
    }

    #[test]
    fn additive_inverse() {
        let al = tilde2();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        assert!(a12.add(&a12.neg()).unwrap().is_zero());
    }

    #[test]
    fn distributivity_example() {
        let al = tilde2();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let a21 = NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap();
        let m1 = NcPoly::hom(al, mt(1, 1)).unwrap();
        let lhs = a12.add(&a21).unwrap().mul(&m1).unwrap();
        let rhs = a12.mul(&m1).unwrap().add(&a21.mul(&m1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homology_does_not_commute_past_chords() {
        let al = tilde2();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let m1 = NcPoly::hom(al, mt(1, 1)).unwrap();
        assert_ne!(m1.mul(&a12).unwrap(), a12.mul(&m1).unwrap());
    }

    #[test]
    fn alphabet_mixing_is_rejected() {
        let x = NcPoly::chord(tilde2(), ChordLetter::a(1, 2)).unwrap();
        let y = NcPoly::chord(final22(), ChordLetter::a(1, 2)).unwrap();
        assert!(matches!(x.mul(&y), Err(Error::AlphabetMismatch { .. })));
        assert!(matches!(x.add(&y), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn tilde_regime_rejects_long_chords() {
        assert!(NcPoly::chord(tilde2(), ChordLetter::b(1, 2)).is_err());
        assert!(NcPoly::chord(tilde2(), ChordLetter::c(1, 1)).is_err());
    }

    #[test]
    fn grade_examples() {
        let al = final22();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let a21 = NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap();
        let m1 = NcPoly::symbol(al, CoeffSymbol::Mu(1), 1).unwrap();
        let deg0 = a12.mul(&a21).unwrap().mul(&m1).unwrap();
        assert_eq!(deg0.grade(), Grade::Homogeneous(0));

        let b12 = NcPoly::chord(al, ChordLetter::b(1, 2)).unwrap();
        let c11 = NcPoly::chord(al, ChordLetter::c(1, 1)).unwrap();
        assert_eq!(b12.add(&c11).unwrap().grade(), Grade::Homogeneous(1));

        let e11 = NcPoly::chord(al, ChordLetter::e(1, 1)).unwrap();
        assert_eq!(b12.add(&e11).unwrap().grade(), Grade::Mixed);

        assert_eq!(NcPoly::zero(al).grade(), Grade::Any);
    }

    #[test]
    fn substitute_single_letter_and_order() {
        let al = tilde2();
        let a12 = ChordLetter::a(1, 2);
        let a21 = ChordLetter::a(2, 1);
        let p = NcPoly::chord(al, a12).unwrap();
        let mut chords = identity_a_chord_images(al);
        chords.insert(a12, NcPoly::chord(al, a21).unwrap().neg());
        let symbols = identity_symbol_images(al);
        let image = p.substitute(al, &chords, &symbols).unwrap();
        assert_eq!(image, NcPoly::chord(al, a21).unwrap().neg());

        // order preservation under the homomorphism property
        let al3 = Alphabet::tilde(3);
        let product = NcPoly::chord(al3, ChordLetter::a(1, 2))
            .unwrap()
            .mul(&NcPoly::chord(al3, ChordLetter::a(2, 1)).unwrap())
            .unwrap();
        let mut chords3 = identity_a_chord_images(al3);
        chords3.insert(
            ChordLetter::a(1, 2),
            NcPoly::chord(al3, ChordLetter::a(1, 3)).unwrap(),
        );
        chords3.insert(
            ChordLetter::a(2, 1),
            NcPoly::chord(al3, ChordLetter::a(3, 1)).unwrap(),
        );
        let symbols3 = identity_symbol_images(al3);
        let image = product.substitute(al3, &chords3, &symbols3).unwrap();
        let expected = NcPoly::chord(al3, ChordLetter::a(1, 3))
            .unwrap()
            .mul(&NcPoly::chord(al3, ChordLetter::a(3, 1)).unwrap())
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn substitute_symbol_swap() {
        let al = tilde2();
        let p = NcPoly::hom(al, mt(1, 1))
            .unwrap()
            .mul(&NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap())
            .unwrap();
        let chords = identity_a_chord_images(al);
        let mut symbols = BTreeMap::new();
        symbols.insert(CoeffSymbol::MuTilde(1), mt(2, 1));
        symbols.insert(CoeffSymbol::MuTilde(2), mt(1, 1));
        let image = p.substitute(al, &chords, &symbols).unwrap();
        let expected = NcPoly::hom(al, mt(2, 1))
            .unwrap()
            .mul(&NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap())
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn substitute_missing_image_names_letter() {
        let al = tilde2();
        let p = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let err = p
            .substitute(al, &BTreeMap::new(), &identity_symbol_images(al))
            .unwrap_err();
        match err {
            Error::MissingImage(name) => assert_eq!(name, "a_1_2"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn leibniz_signs() {
        let al = final22();
        let a12 = ChordLetter::a(1, 2);
        let b12 = ChordLetter::b(1, 2);
        let b21 = ChordLetter::b(2, 1);
        let da = NcPoly::zero(al);
        let db12 = NcPoly::chord(al, a12).unwrap();
        let db21 = NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap();
        let mut d = BTreeMap::new();
        d.insert(a12, da);
        d.insert(ChordLetter::a(2, 1), NcPoly::zero(al));
        d.insert(b12, db12.clone());
        d.insert(b21, db21.clone());

        // d(b12 a12) = (d b12) a12
        let p = NcPoly::chord(al, b12)
            .unwrap()
            .mul(&NcPoly::chord(al, a12).unwrap())
            .unwrap();
        let expected = db12.mul(&NcPoly::chord(al, a12).unwrap()).unwrap();
        assert_eq!(leibniz_extend(&d, &p).unwrap(), expected);

        // d(a12 b12) = a12 (d b12), degree-0 prefix keeps the + sign
        let p = NcPoly::chord(al, a12)
            .unwrap()
            .mul(&NcPoly::chord(al, b12).unwrap())
            .unwrap();
        let expected = NcPoly::chord(al, a12).unwrap().mul(&db12).unwrap();
        assert_eq!(leibniz_extend(&d, &p).unwrap(), expected);

        // d(b12 b21) = (d b12) b21 - b12 (d b21)
        let p = NcPoly::chord(al, b12)
            .unwrap()
            .mul(&NcPoly::chord(al, b21).unwrap())
            .unwrap();
        let expected = db12
            .mul(&NcPoly::chord(al, b21).unwrap())
            .unwrap()
            .sub(&NcPoly::chord(al, b12).unwrap().mul(&db21).unwrap())
            .unwrap();
        assert_eq!(leibniz_extend(&d, &p).unwrap(), expected);
    }

    #[test]
    fn leibniz_rejects_inhomogeneous_image() {
        let al = final22();
        let b12 = ChordLetter::b(1, 2);
        let bad = NcPoly::one(al)
            .add(&NcPoly::chord(al, ChordLetter::b(2, 1)).unwrap())
            .unwrap();
        let mut d = BTreeMap::new();
        d.insert(b12, bad);
        let p = NcPoly::chord(al, b12).unwrap();
        assert!(matches!(
            leibniz_extend(&d, &p),
            Err(Error::InhomogeneousImage(_))
        ));
    }

    #[test]
    fn commutative_quotient_examples() {
        let al = final22();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let a21 = NcPoly::chord(al, ChordLetter::a(2, 1)).unwrap();
        let m1 = NcPoly::symbol(al, CoeffSymbol::Mu(1), 1).unwrap();
        let m1_inv = NcPoly::symbol(al, CoeffSymbol::Mu(1), -1).unwrap();
        let m2 = NcPoly::symbol(al, CoeffSymbol::Mu(2), 1).unwrap();

        let p = m1.mul(&a12).unwrap().mul(&m1_inv).unwrap();
        assert_eq!(p.homology_commutative_quotient(), a12);

        let p = a12.mul(&m2).unwrap().mul(&a21).unwrap();
        let expected = m2.mul(&a12).unwrap().mul(&a21).unwrap();
        assert_eq!(p.homology_commutative_quotient(), expected);

        let chord_free = m1.mul(&m2).unwrap();
        assert_eq!(chord_free.homology_commutative_quotient(), chord_free);
    }

    #[test]
    fn repr_round_trip_and_byte_exactness() {
        let al = final22();
        let p = NcPoly::symbol(al, CoeffSymbol::Lambda(1), -1)
            .unwrap()
            .mul(&NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap())
            .unwrap()
            .mul(&NcPoly::symbol(al, CoeffSymbol::Lambda(2), 1).unwrap())
            .unwrap()
            .neg()
            .add(&NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap())
            .unwrap();
        let repr = p.to_repr();
        let back = NcPoly::from_repr(al, &repr).unwrap();
        assert_eq!(back, p);

        let bytes_a = serde_json::to_string(&repr).unwrap();
        let bytes_b = serde_json::to_string(&back.to_repr()).unwrap();
        assert_eq!(bytes_a, bytes_b);
    }

    #[test]
    fn display_renders_signs() {
        let al = final22();
        let p = NcPoly::chord(al, ChordLetter::a(1, 2))
            .unwrap()
            .sub(&NcPoly::symbol(al, CoeffSymbol::Mu(1), 2).unwrap())
            .unwrap();
        assert_eq!(p.to_string(), "-m1^2 + a_1_2");
    }
}
