//! Assembly of the full noncommutative DGA of a braid closure: the chord
//! matrices, the differential read off from the four matrix equations, its
//! Leibniz extension, and the internal verification report.

use std::collections::BTreeMap;

use crate::braid::{BraidWord, ComponentMap};
use crate::matrix::NcMatrix;
use crate::ncpoly::{
    leibniz_extend, Alphabet, ChordFamily, ChordLetter, CoeffSymbol, Grade, NcPoly,
};
use crate::phimap::{final_chord_images, PhiMatrices};
use crate::{Error, Result};

/// All generators of the algebra with their degrees, in canonical order
/// (family, then row, then column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    strands: u32,
    generators: Vec<ChordLetter>,
}

impl GeneratorTable {
    pub fn new(strands: u32) -> Self {
        let n = strands;
        let mut generators = Vec::new();
        for family in [ChordFamily::A, ChordFamily::B, ChordFamily::C, ChordFamily::E] {
            for i in 1..=n {
                for j in 1..=n {
                    let diagonal_allowed =
                        matches!(family, ChordFamily::C | ChordFamily::E);
                    if i != j || diagonal_allowed {
                        generators.push(ChordLetter::new(family, i, j));
                    }
                }
            }
        }
        GeneratorTable { strands, generators }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn generators(&self) -> &[ChordLetter] {
        &self.generators
    }

    /// 2n(n-1) short generators (a's and b's).
    pub fn short_count(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| matches!(g.family, ChordFamily::A | ChordFamily::B))
            .count()
    }

    /// 2n^2 long generators (c's and e's).
    pub fn long_count(&self) -> usize {
        self.generators.len() - self.short_count()
    }
}

/// The generator matrices of the algebra together with the diagonal
/// homology matrix and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaMatrices {
    pub a: NcMatrix,
    pub b: NcMatrix,
    pub c: NcMatrix,
    pub e: NcMatrix,
    pub lam: NcMatrix,
    pub lam_inv: NcMatrix,
}

fn mu_of(al: Alphabet, cm: &ComponentMap, strand: u32, exp: i64) -> Result<NcPoly> {
    NcPoly::symbol(al, CoeffSymbol::Mu(cm.alpha(strand)), exp)
}

impl DgaMatrices {
    pub fn build(cm: &ComponentMap) -> Result<Self> {
        let n = cm.strands();
        let size = n as usize;
        let al = Alphabet::final_ring(n, cm.component_count());
        let mut a = NcMatrix::zero(al, size);
        let mut b = NcMatrix::zero(al, size);
        let mut c = NcMatrix::zero(al, size);
        let mut e = NcMatrix::zero(al, size);
        let mut lam = NcMatrix::zero(al, size);
        let mut lam_inv = NcMatrix::zero(al, size);
        for i in 1..=n {
            for j in 1..=n {
                let (row, col) = (i as usize - 1, j as usize - 1);
                if i == j {
                    let one_plus_mu = NcPoly::one(al).add(&mu_of(al, cm, i, 1)?)?;
                    a.set_entry(row, col, one_plus_mu)?;
                    // b diagonal stays zero
                    let (l, l_inv) = if cm.is_leading(i) {
                        (
                            NcPoly::symbol(al, CoeffSymbol::Lambda(cm.alpha(i)), 1)?,
                            NcPoly::symbol(al, CoeffSymbol::Lambda(cm.alpha(i)), -1)?,
                        )
                    } else {
                        (NcPoly::one(al), NcPoly::one(al))
                    };
                    lam.set_entry(row, col, l)?;
                    lam_inv.set_entry(row, col, l_inv)?;
                } else {
                    let a_chord = NcPoly::chord(al, ChordLetter::a(i, j))?;
                    let b_chord = NcPoly::chord(al, ChordLetter::b(i, j))?;
                    if i < j {
                        a.set_entry(row, col, a_chord)?;
                        b.set_entry(row, col, b_chord)?;
                    } else {
                        let mu = mu_of(al, cm, j, 1)?;
                        a.set_entry(row, col, a_chord.mul(&mu)?)?;
                        b.set_entry(row, col, b_chord.mul(&mu)?)?;
                    }
                }
                c.set_entry(row, col, NcPoly::chord(al, ChordLetter::c(i, j))?)?;
                e.set_entry(row, col, NcPoly::chord(al, ChordLetter::e(i, j))?)?;
            }
        }
        Ok(DgaMatrices {
            a,
            b,
            c,
            e,
            lam,
            lam_inv,
        })
    }
}

/// The assembled DGA: generator table, differential of every generator, and
/// the matrices it was read from. Immutable and freely shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaPresentation {
    word: BraidWord,
    components: ComponentMap,
    alphabet: Alphabet,
    generators: GeneratorTable,
    differential: BTreeMap<ChordLetter, NcPoly>,
    matrices: DgaMatrices,
    phi: PhiMatrices,
    phi_tilde: PhiMatrices,
}

impl DgaPresentation {
    /// Build the presentation for the closure of `word`: extract and invert
    /// the boundary matrices, specialize them, form the four matrix products
    /// exactly as written, and read each generator's differential off the
    /// corresponding entry.
    ///
    /// The word is freely reduced first, so words differing by cancelling
    /// pairs build identical presentations.
    pub fn build(raw_word: &BraidWord) -> Result<Self> {
        let word = raw_word.free_reduce();
        let word = &word;
        let cm = word.components();
        let n = word.strands();
        let al = Alphabet::final_ring(n, cm.component_count());
        let phi_tilde = PhiMatrices::for_braid(word)?;
        let phi = phi_tilde.specialize(&cm)?;
        let matrices = DgaMatrices::build(&cm)?;

        let d_b = matrices
            .lam_inv
            .mul(&matrices.a)?
            .mul(&matrices.lam)?
            .neg()
            .add(&phi.phi_l().mul(&matrices.a)?.mul(phi.phi_r())?)?;
        let d_c = matrices
            .a
            .mul(&matrices.lam)?
            .add(&matrices.a.mul(phi.phi_r())?)?;
        let d_e = matrices
            .b
            .mul(phi.phi_r_inv())?
            .add(&matrices.b.mul(&matrices.lam_inv)?)?
            .add(&phi.phi_l().mul(&matrices.c)?.mul(&matrices.lam_inv)?.neg())?
            .add(&matrices.lam_inv.mul(&matrices.c)?.mul(phi.phi_r_inv())?)?;

        let generators = GeneratorTable::new(n);
        let mut differential = BTreeMap::new();
        for &g in generators.generators() {
            let (row, col) = (g.i as usize - 1, g.j as usize - 1);
            let image = match g.family {
                ChordFamily::A => NcPoly::zero(al),
                ChordFamily::B => {
                    // The matrix entry is b_ij (i<j) or b_ij mu (i>j); strip
                    // the meridian back off below the diagonal.
                    let entry = d_b.entry(row, col).clone();
                    if g.i > g.j {
                        entry.mul(&mu_of(al, &cm, g.j, -1)?)?
                    } else {
                        entry
                    }
                }
                ChordFamily::C => d_c.entry(row, col).clone(),
                ChordFamily::E => d_e.entry(row, col).clone(),
            };
            if !image.is_homogeneous_of(g.degree() - 1) {
                return Err(Error::Internal(format!(
                    "differential of {g} is not homogeneous of degree {}",
                    g.degree() - 1
                )));
            }
            differential.insert(g, image);
        }

        let pres = DgaPresentation {
            word: word.clone(),
            components: cm,
            alphabet: al,
            generators,
            differential,
            matrices,
            phi,
            phi_tilde,
        };
        debug_assert!(
            pres.verify()?.all_pass(),
            "freshly built presentation failed verification"
        );
        Ok(pres)
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn components(&self) -> &ComponentMap {
        &self.components
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn differential_of(&self, g: ChordLetter) -> Option<&NcPoly> {
        self.differential.get(&g)
    }

    pub fn differential(&self) -> &BTreeMap<ChordLetter, NcPoly> {
        &self.differential
    }

    pub fn matrices(&self) -> &DgaMatrices {
        &self.matrices
    }

    /// The specialized boundary matrices (final coefficient ring).
    pub fn phi(&self) -> &PhiMatrices {
        &self.phi
    }

    /// The boundary matrices over the tilde algebra, before specialization.
    pub fn phi_tilde(&self) -> &PhiMatrices {
        &self.phi_tilde
    }

    /// Leibniz extension of the differential table to an arbitrary element.
    pub fn d(&self, p: &NcPoly) -> Result<NcPoly> {
        if p.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: p.alphabet().to_string(),
            });
        }
        leibniz_extend(&self.differential, p)
    }

    /// Run every internal identity check and collect a report. Failures are
    /// report entries, never errors.
    pub fn verify(&self) -> Result<VerifyReport> {
        let mut checks = Vec::new();

        // (i) the differential squares to zero on every generator
        let mut failures = Vec::new();
        for &g in self.generators.generators() {
            let dd = self.d(self.differential_of(g).expect("total table"))?;
            if !dd.is_zero() {
                failures.push(format!("d(d({})) = {}", g.name(), dd));
            }
        }
        checks.push(CheckOutcome::new("d_squared_zero", failures));

        // (ii) the matrix action identity: the word's action on the chord
        // matrix equals the sandwich by the boundary matrices
        let mut failures = Vec::new();
        let sandwich = self
            .phi
            .phi_l()
            .mul(&self.matrices.a)?
            .mul(self.phi.phi_r())?;
        let n = self.generators.strands() as usize;
        let chord_images = final_chord_images(&self.word, &self.components)?;
        let symbol_images = crate::ncpoly::identity_symbol_images(self.alphabet);
        for i in 0..n {
            for j in 0..n {
                let lhs = self.matrices.a.entry(i, j).substitute(
                    self.alphabet,
                    &chord_images,
                    &symbol_images,
                )?;
                if &lhs != sandwich.entry(i, j) {
                    failures.push(format!(
                        "entry ({},{}): action gives {}, sandwich gives {}",
                        i + 1,
                        j + 1,
                        lhs,
                        sandwich.entry(i, j)
                    ));
                }
            }
        }
        checks.push(CheckOutcome::new("phi_matrix_identity", failures));

        // (iii) diagonal consistency: sandwich diagonal is 1 + mu, and the
        // differential matrix for the b's vanishes on the diagonal
        let mut failures = Vec::new();
        for i in 1..=self.generators.strands() {
            let idx = i as usize - 1;
            let expected = NcPoly::one(self.alphabet)
                .add(&mu_of(self.alphabet, &self.components, i, 1)?)?;
            if sandwich.entry(idx, idx) != &expected {
                failures.push(format!(
                    "sandwich diagonal ({i},{i}) = {}, expected {}",
                    sandwich.entry(idx, idx),
                    expected
                ));
            }
        }
        let d_b_diag = self
            .matrices
            .lam_inv
            .mul(&self.matrices.a)?
            .mul(&self.matrices.lam)?
            .neg()
            .add(&sandwich)?;
        for i in 0..n {
            if !d_b_diag.entry(i, i).is_zero() {
                failures.push(format!(
                    "differential matrix diagonal ({},{}) = {}",
                    i + 1,
                    i + 1,
                    d_b_diag.entry(i, i)
                ));
            }
        }
        checks.push(CheckOutcome::new("diagonal_identity", failures));

        // (iv) grading: every differential image drops degree by exactly one
        let mut failures = Vec::new();
        for &g in self.generators.generators() {
            let image = self.differential_of(g).expect("total table");
            match image.grade() {
                Grade::Any => {}
                Grade::Homogeneous(d) if d == g.degree() - 1 => {}
                other => failures.push(format!(
                    "d({}) has grade {:?}, expected {}",
                    g.name(),
                    other,
                    g.degree() - 1
                )),
            }
        }
        checks.push(CheckOutcome::new("grading", failures));

        Ok(VerifyReport { checks })
    }

    /// The degree-0 presentation data: the differentials of all degree-1
    /// generators, optionally through the homology-commutative quotient.
    pub fn hc0_relations(&self, commutative: bool) -> Vec<(ChordLetter, NcPoly)> {
        self.generators
            .generators()
            .iter()
            .filter(|g| matches!(g.family, ChordFamily::B | ChordFamily::C))
            .map(|&g| {
                let rel = self.differential_of(g).expect("total table").clone();
                let rel = if commutative {
                    rel.homology_commutative_quotient()
                } else {
                    rel
                };
                (g, rel)
            })
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn corrupt_differential_for_test(&mut self, g: ChordLetter) {
        let entry = self.differential.get_mut(&g).expect("generator exists");
        *entry = entry.neg();
    }
}

/// One verification check with its counterexample entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        CheckOutcome { name, failures }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn poly(al: Alphabet, s: &str) -> NcPoly {
        // tiny builder for expected values in tests: terms separated by '+',
        // factors by '*', a leading '-' negates a term
        let mut acc = NcPoly::zero(al);
        for raw_term in s.split('+') {
            let raw_term = raw_term.trim();
            let (negate, raw_term) = match raw_term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, raw_term),
            };
            let mut term = NcPoly::one(al);
            if raw_term != "1" {
                for factor in raw_term.split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<i64>().unwrap()),
                        None => (factor, 1),
                    };
                    let piece = if let Some(sym) = CoeffSymbol::parse_name(name) {
                        NcPoly::symbol(al, sym, exp).unwrap()
                    } else {
                        let mut parts = name.split('_');
                        let fam = ChordFamily::from_letter(
                            parts.next().unwrap().chars().next().unwrap(),
                        )
                        .unwrap();
                        let i: u32 = parts.next().unwrap().parse().unwrap();
                        let j: u32 = parts.next().unwrap().parse().unwrap();
                        assert_eq!(exp, 1, "chords are not invertible");
                        NcPoly::chord(al, ChordLetter::new(fam, i, j)).unwrap()
                    };
                    term = term.mul(&piece).unwrap();
                }
            }
            if negate {
                term = term.neg();
            }
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    #[test]
    fn generator_counts() {
        let t = GeneratorTable::new(3);
        assert_eq!(t.short_count(), 2 * 3 * 2);
        assert_eq!(t.long_count(), 2 * 9);
    }

    #[test]
    fn unknot_differentials() {
        let b = parse_braid("", 1).unwrap();
        let pres = DgaPresentation::build(&b).unwrap();
        let al = pres.alphabet();
        assert_eq!(
            pres.differential_of(ChordLetter::c(1, 1)).unwrap(),
            &poly(al, "l1 + m1*l1 + 1 + m1")
        );
        assert_eq!(
            pres.differential_of(ChordLetter::e(1, 1)).unwrap(),
            &poly(al, "-c_1_1*l1^-1 + l1^-1*c_1_1")
        );
    }

    #[test]
    fn two_component_unlink_differentials() {
        let b = parse_braid("", 2).unwrap();
        let pres = DgaPresentation::build(&b).unwrap();
        let al = pres.alphabet();
        assert_eq!(
            pres.differential_of(ChordLetter::b(1, 2)).unwrap(),
            &poly(al, "-l1^-1*a_1_2*l2 + a_1_2")
        );
    }

    #[test]
    fn differential_of_a_vanishes() {
        for (text, n) in [("1 1 1", 2), ("1 -2 1 -2", 3)] {
            let pres = DgaPresentation::build(&parse_braid(text, n).unwrap()).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        assert!(pres
                            .differential_of(ChordLetter::a(i, j))
                            .unwrap()
                            .is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn d_examples() {
        let pres = DgaPresentation::build(&parse_braid("", 2).unwrap()).unwrap();
        let al = pres.alphabet();
        let a12 = NcPoly::chord(al, ChordLetter::a(1, 2)).unwrap();
        let b12 = NcPoly::chord(al, ChordLetter::b(1, 2)).unwrap();
        // degree-0 prefix: d(a b) = a db
        let expected = a12
            .mul(pres.differential_of(ChordLetter::b(1, 2)).unwrap())
            .unwrap();
        assert_eq!(pres.d(&a12.mul(&b12).unwrap()).unwrap(), expected);
        assert!(pres.d(&NcPoly::one(al)).unwrap().is_zero());
        let hom = poly(al, "m1*l1^-1");
        assert!(pres.d(&hom).unwrap().is_zero());
    }

    #[test]
    fn verify_passes_on_fixtures() {
        for (text, n) in [("", 1), ("1 1 1", 2), ("1 2 1 2", 3)] {
            let pres = DgaPresentation::build(&parse_braid(text, n).unwrap()).unwrap();
            let report = pres.verify().unwrap();
            assert!(report.all_pass(), "{text}: {:?}", report);
        }
    }

    #[test]
    fn corrupted_table_fails_d_squared() {
        let mut pres = DgaPresentation::build(&parse_braid("1 1 1", 2).unwrap()).unwrap();
        pres.corrupt_differential_for_test(ChordLetter::b(1, 2));
        let report = pres.verify().unwrap();
        let dd = report
            .checks
            .iter()
            .find(|c| c.name == "d_squared_zero")
            .unwrap();
        assert!(!dd.pass());
        assert!(dd.failures.iter().any(|f| f.contains("e_")));
    }

    #[test]
    fn build_invariant_under_free_insertion() {
        let plain = parse_braid("1 1 1", 2).unwrap();
        let padded = parse_braid("1 1 -1 1 1", 2).unwrap();
        assert_eq!(
            DgaPresentation::build(&plain).unwrap(),
            DgaPresentation::build(&padded).unwrap()
        );
    }

    #[test]
    fn relation_degrees_and_counts() {
        let pres = DgaPresentation::build(&parse_braid("1 1", 2).unwrap()).unwrap();
        let relations = pres.hc0_relations(false);
        assert_eq!(relations.len(), 2 * 4 - 2);
        for (_, rel) in &relations {
            assert!(rel.is_homogeneous_of(0));
        }
        for i in 1..=2u32 {
            for j in 1..=2u32 {
                assert!(pres
                    .differential_of(ChordLetter::e(i, j))
                    .unwrap()
                    .is_homogeneous_of(1));
            }
        }
    }

    #[test]
    fn hc0_unknot_relation() {
        let pres = DgaPresentation::build(&parse_braid("", 1).unwrap()).unwrap();
        let al = pres.alphabet();
        let relations = pres.hc0_relations(true);
        assert_eq!(relations.len(), 1);
        assert_eq!(relations[0].1, poly(al, "l1 + m1*l1 + 1 + m1"));
    }
}
