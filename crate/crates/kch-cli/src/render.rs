//! Plain-text and LaTeX renderings of the documents. JSON is the contract
//! format; these are conveniences with no round-trip guarantee.

use std::fmt::Write as _;

use kch::augment::AugmentationCensus;
use kch::braid::BraidWord;
use kch::dga::DgaPresentation;
use kch::matrix::NcMatrix;
use kch::ncpoly::{Alphabet, ChordLetter, CoeffSymbol, NcPoly};
use kch::phimap::{phi_apply, PhiMatrices};
use kch::Result;

fn header(out: &mut String, word: &BraidWord, r: Option<u32>) {
    let _ = writeln!(out, "braid: {}", word);
    let _ = writeln!(out, "n: {}", word.strands());
    if let Some(r) = r {
        let _ = writeln!(out, "components: {r}");
    }
}

fn matrix_lines(out: &mut String, name: &str, m: &NcMatrix, latex: bool) {
    for i in 0..m.size() {
        for j in 0..m.size() {
            if latex {
                let _ = writeln!(
                    out,
                    "({name})_{{{},{}}} &= {} \\\\",
                    i + 1,
                    j + 1,
                    m.entry(i, j).to_latex()
                );
            } else {
                let _ = writeln!(out, "{name}[{}][{}] = {}", i + 1, j + 1, m.entry(i, j));
            }
        }
    }
}

fn phi_matrix_blocks(out: &mut String, phi: &PhiMatrices, latex: bool) {
    let names: [(&str, &NcMatrix); 4] = if latex {
        [
            ("\\Phi^L", phi.phi_l()),
            ("\\Phi^R", phi.phi_r()),
            ("(\\Phi^L)^{-1}", phi.phi_l_inv()),
            ("(\\Phi^R)^{-1}", phi.phi_r_inv()),
        ]
    } else {
        [
            ("phiL", phi.phi_l()),
            ("phiR", phi.phi_r()),
            ("phiL_inv", phi.phi_l_inv()),
            ("phiR_inv", phi.phi_r_inv()),
        ]
    };
    for (name, m) in names {
        matrix_lines(out, name, m, latex);
    }
}

pub fn dga_text(pres: &DgaPresentation, commutative: bool) -> String {
    let mut out = String::new();
    header(
        &mut out,
        pres.word(),
        Some(pres.components().component_count()),
    );
    out.push_str("differential:\n");
    for &g in pres.generators().generators() {
        let image = pres.differential_of(g).expect("total table");
        let image = if commutative {
            image.homology_commutative_quotient()
        } else {
            image.clone()
        };
        let _ = writeln!(out, "d {} = {}", g.name(), image);
    }
    phi_matrix_blocks(&mut out, pres.phi(), false);
    out
}

pub fn dga_latex(pres: &DgaPresentation, commutative: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% braid: {} (n={})", pres.word(), pres.word().strands());
    out.push_str("\\begin{align*}\n");
    for &g in pres.generators().generators() {
        let image = pres.differential_of(g).expect("total table");
        let image = if commutative {
            image.homology_commutative_quotient()
        } else {
            image.clone()
        };
        let _ = writeln!(
            out,
            "\\partial {}_{{{},{}}} &= {} \\\\",
            g.family.letter(),
            g.i,
            g.j,
            image.to_latex()
        );
    }
    phi_matrix_blocks(&mut out, pres.phi(), true);
    out.push_str("\\end{align*}\n");
    out
}

fn phi_images(word: &BraidWord) -> Result<Vec<(String, NcPoly)>> {
    let n = word.strands();
    let al = Alphabet::tilde(n);
    let mut images = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let g = ChordLetter::a(i, j);
                images.push((g.name(), phi_apply(word, &NcPoly::chord(al, g)?)?));
            }
        }
    }
    for s in 1..=n {
        let sym = CoeffSymbol::MuTilde(s);
        images.push((sym.name(), phi_apply(word, &NcPoly::symbol(al, sym, 1)?)?));
    }
    Ok(images)
}

pub fn phi_text(word: &BraidWord, phi: &PhiMatrices) -> Result<String> {
    let mut out = String::new();
    header(&mut out, word, None);
    for (name, image) in phi_images(word)? {
        let _ = writeln!(out, "phi({name}) = {image}");
    }
    phi_matrix_blocks(&mut out, phi, false);
    Ok(out)
}

pub fn phi_latex(word: &BraidWord, phi: &PhiMatrices) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "% braid: {} (n={})", word, word.strands());
    out.push_str("\\begin{align*}\n");
    for (name, image) in phi_images(word)? {
        let _ = writeln!(out, "\\phi({name}) &= {} \\\\", image.to_latex());
    }
    phi_matrix_blocks(&mut out, phi, true);
    out.push_str("\\end{align*}\n");
    Ok(out)
}

pub fn verify_text(word: &BraidWord, report: &kch::VerifyReport) -> String {
    let mut out = String::new();
    header(&mut out, word, None);
    for check in &report.checks {
        let _ = writeln!(
            out,
            "check {}: {}",
            check.name,
            if check.pass() { "PASS" } else { "FAIL" }
        );
        for failure in &check.failures {
            let _ = writeln!(out, "  counterexample: {failure}");
        }
    }
    let _ = writeln!(
        out,
        "overall: {}",
        if report.all_pass() { "PASS" } else { "FAIL" }
    );
    out
}

pub fn aug_text(pres: &DgaPresentation, censuses: &[AugmentationCensus]) -> String {
    let mut out = String::new();
    header(
        &mut out,
        pres.word(),
        Some(pres.components().component_count()),
    );
    for census in censuses {
        let _ = writeln!(out, "q={} total={}", census.q, census.total);
        for ((lambda, mu), count) in &census.by_boundary {
            let _ = writeln!(out, "  lambda={lambda:?} mu={mu:?} count={count}");
        }
    }
    out
}

pub fn hc0_text(pres: &DgaPresentation, commutative: bool) -> String {
    let mut out = String::new();
    header(
        &mut out,
        pres.word(),
        Some(pres.components().component_count()),
    );
    for (g, rel) in pres.hc0_relations(commutative) {
        let _ = writeln!(out, "{} : {}", g.name(), rel);
    }
    out
}

pub fn hc0_latex(pres: &DgaPresentation, commutative: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% braid: {} (n={})", pres.word(), pres.word().strands());
    out.push_str("\\begin{align*}\n");
    for (g, rel) in pres.hc0_relations(commutative) {
        let _ = writeln!(
            out,
            "\\partial {}_{{{},{}}} &= {} \\\\",
            g.family.letter(),
            g.i,
            g.j,
            rel.to_latex()
        );
    }
    out.push_str("\\end{align*}\n");
    out
}
