//! Document types for the CLI-facing JSON interfaces. Field order and key
//! order are deterministic so equal inputs always emit identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::augment::AugmentationCensus;
use crate::braid::BraidWord;
use crate::dga::{DgaPresentation, VerifyReport};
use crate::ncpoly::{Alphabet, NcPoly, PolyRepr};
use crate::phimap::{phi_apply, PhiMatrices};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComponentsDoc {
    pub r: u32,
    pub alpha: Vec<u32>,
    pub leading: Vec<u32>,
}

impl ComponentsDoc {
    fn from_map(cm: &crate::braid::ComponentMap) -> Self {
        ComponentsDoc {
            r: cm.component_count(),
            alpha: cm.alpha_vec().to_vec(),
            leading: cm.leading().iter().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PhiMatricesDoc {
    #[serde(rename = "phiL")]
    pub phi_l: Vec<Vec<PolyRepr>>,
    #[serde(rename = "phiR")]
    pub phi_r: Vec<Vec<PolyRepr>>,
    #[serde(rename = "phiL_inv")]
    pub phi_l_inv: Vec<Vec<PolyRepr>>,
    #[serde(rename = "phiR_inv")]
    pub phi_r_inv: Vec<Vec<PolyRepr>>,
}

impl PhiMatricesDoc {
    fn from_matrices(phi: &PhiMatrices) -> Self {
        PhiMatricesDoc {
            phi_l: phi.phi_l().to_repr(),
            phi_r: phi.phi_r().to_repr(),
            phi_l_inv: phi.phi_l_inv().to_repr(),
            phi_r_inv: phi.phi_r_inv().to_repr(),
        }
    }
}

/// The serialized presentation: braid data, components, generator table,
/// the differential of every generator, and the specialized boundary
/// matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DgaDocument {
    pub braid: String,
    pub n: u32,
    pub components: ComponentsDoc,
    pub generators: Vec<GeneratorDoc>,
    pub differential: BTreeMap<String, PolyRepr>,
    pub matrices: PhiMatricesDoc,
}

impl DgaDocument {
    pub fn from_presentation(pres: &DgaPresentation, commutative: bool) -> Self {
        let quotient = |p: &NcPoly| {
            if commutative {
                p.homology_commutative_quotient()
            } else {
                p.clone()
            }
        };
        DgaDocument {
            braid: pres.word().to_string(),
            n: pres.word().strands(),
            components: ComponentsDoc::from_map(pres.components()),
            generators: pres
                .generators()
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name(),
                    degree: g.degree(),
                })
                .collect(),
            differential: pres
                .differential()
                .iter()
                .map(|(g, p)| (g.name(), quotient(p).to_repr()))
                .collect(),
            matrices: PhiMatricesDoc::from_matrices(pres.phi()),
        }
    }

    /// Semantic validation of a parsed document: the braid must parse, the
    /// component data must match it, and every polynomial must be welformed
    /// over the declared alphabet.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 1024 {
            return Err(Error::Document(format!(
                "strand count {} out of supported range",
                self.n
            )));
        }
        let word = crate::braid::parse_braid(&self.braid, self.n)?;
        let cm = word.components();
        if ComponentsDoc::from_map(&cm) != self.components {
            return Err(Error::Document("component data does not match braid".into()));
        }
        let al = Alphabet::final_ring(self.n, cm.component_count());
        for repr in self.differential.values() {
            NcPoly::from_repr(al, repr)?;
        }
        for matrix in [
            &self.matrices.phi_l,
            &self.matrices.phi_r,
            &self.matrices.phi_l_inv,
            &self.matrices.phi_r_inv,
        ] {
            if matrix.len() != self.n as usize {
                return Err(Error::Document("matrix size does not match braid".into()));
            }
            for row in matrix {
                if row.len() != self.n as usize {
                    return Err(Error::Document("matrix is not square".into()));
                }
                for repr in row {
                    NcPoly::from_repr(al, repr)?;
                }
            }
        }
        Ok(())
    }
}

/// Image table of the word's action on every tilde-algebra generator, plus
/// the boundary matrices over the tilde algebra.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PhiDocument {
    pub braid: String,
    pub n: u32,
    pub images: BTreeMap<String, PolyRepr>,
    pub matrices: PhiMatricesDoc,
}

impl PhiDocument {
    pub fn build(word: &BraidWord) -> Result<Self> {
        let n = word.strands();
        let al = Alphabet::tilde(n);
        let mut images = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let g = crate::ncpoly::ChordLetter::a(i, j);
                let image = phi_apply(word, &NcPoly::chord(al, g)?)?;
                images.insert(g.name(), image.to_repr());
            }
        }
        for s in 1..=n {
            let sym = crate::ncpoly::CoeffSymbol::MuTilde(s);
            let image = phi_apply(word, &NcPoly::symbol(al, sym, 1)?)?;
            images.insert(sym.name(), image.to_repr());
        }
        Ok(PhiDocument {
            braid: word.to_string(),
            n,
            images,
            matrices: PhiMatricesDoc::from_matrices(&PhiMatrices::for_braid(word)?),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyDocument {
    pub braid: String,
    pub n: u32,
    pub pass: bool,
    pub checks: Vec<CheckDoc>,
}

impl VerifyDocument {
    pub fn from_report(word: &BraidWord, report: &VerifyReport) -> Self {
        VerifyDocument {
            braid: word.to_string(),
            n: word.strands(),
            pass: report.all_pass(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckDoc {
                    name: c.name.to_string(),
                    pass: c.pass(),
                    failures: c.failures.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundaryCountDoc {
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusDoc {
    pub q: u64,
    pub total: u64,
    pub by_boundary: Vec<BoundaryCountDoc>,
}

impl CensusDoc {
    pub fn from_census(census: &AugmentationCensus) -> Self {
        CensusDoc {
            q: census.q,
            total: census.total,
            by_boundary: census
                .by_boundary
                .iter()
                .map(|((lambda, mu), &count)| BoundaryCountDoc {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    count,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AugDocument {
    pub braid: String,
    pub n: u32,
    pub components: ComponentsDoc,
    pub censuses: Vec<CensusDoc>,
}

impl AugDocument {
    pub fn build(pres: &DgaPresentation, censuses: &[AugmentationCensus]) -> Self {
        AugDocument {
            braid: pres.word().to_string(),
            n: pres.word().strands(),
            components: ComponentsDoc::from_map(pres.components()),
            censuses: censuses.iter().map(CensusDoc::from_census).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationDoc {
    pub generator: String,
    pub poly: PolyRepr,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Hc0Document {
    pub braid: String,
    pub n: u32,
    pub components: ComponentsDoc,
    pub relations: Vec<RelationDoc>,
}

impl Hc0Document {
    pub fn build(pres: &DgaPresentation, commutative: bool) -> Self {
        Hc0Document {
            braid: pres.word().to_string(),
            n: pres.word().strands(),
            components: ComponentsDoc::from_map(pres.components()),
            relations: pres
                .hc0_relations(commutative)
                .into_iter()
                .map(|(g, p)| RelationDoc {
                    generator: g.name(),
                    poly: p.to_repr(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    #[test]
    fn dga_document_round_trips_and_validates() {
        let word = parse_braid("1 1 1", 2).unwrap();
        let pres = DgaPresentation::build(&word).unwrap();
        let doc = DgaDocument::from_presentation(&pres, false);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: DgaDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
        parsed.validate().unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), json);
    }

    #[test]
    fn validation_rejects_mismatched_components() {
        let word = parse_braid("", 2).unwrap();
        let pres = DgaPresentation::build(&word).unwrap();
        let mut doc = DgaDocument::from_presentation(&pres, false);
        doc.components.r = 1;
        assert!(doc.validate().is_err());
    }

    #[test]
    fn phi_document_builds() {
        let word = parse_braid("1", 2).unwrap();
        let doc = PhiDocument::build(&word).unwrap();
        assert_eq!(doc.images.len(), 2 + 2);
        assert!(doc.images.contains_key("a_1_2"));
        assert!(doc.images.contains_key("mt2"));
    }
}
