//! Brute-force enumeration of augmentations over small prime fields.
//!
//! An augmentation sends the invertible homology symbols to units, the
//! degree-0 chords to arbitrary field elements, and every generator of
//! nonzero degree to 0; it must annihilate the differential of every
//! generator. Because the target field is commutative, evaluation factors
//! through the homology-commutative quotient automatically.
//!
//! The search is exhaustive, partitioned by boundary tuples (the values of
//! the homology symbols) and pruned per partial chord assignment. Totals
//! are invariant under stable tame isomorphism, which is what the Markov
//! tests downstream exercise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::dga::DgaPresentation;
use crate::ncpoly::{ChordFamily, CoeffSymbol, NcPoly};
use crate::{Error, Result};

/// One prime-field augmentation: unit values for the homology symbols of
/// each component plus a value for every degree-0 chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub q: u64,
    pub lam_vals: Vec<u64>,
    pub mu_vals: Vec<u64>,
    pub a_vals: BTreeMap<(u32, u32), u64>,
}

impl Augmentation {
    /// Check the defining property on every generator, including the
    /// degree-2 ones.
    pub fn satisfies(&self, pres: &DgaPresentation) -> Result<bool> {
        for &g in pres.generators().generators() {
            let image = pres.differential_of(g).expect("total table");
            if evaluate(image, self.q, self)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

fn unit_pow(value: u64, exp: i64, q: u64) -> u64 {
    // units have order dividing q - 1
    let reduced = exp.rem_euclid(q as i64 - 1) as u64;
    mod_pow(value, reduced, q)
}

fn coeff_mod(c: &BigInt, q: u64) -> u64 {
    let m = c % BigInt::from(q);
    let m = if m < BigInt::from(0) { m + BigInt::from(q) } else { m };
    m.to_u64().expect("reduced residue fits")
}

/// Commutative evaluation of a polynomial under an assignment: homology
/// symbols take their unit values, degree-0 chords their assigned values,
/// all other chords 0.
pub fn evaluate(p: &NcPoly, q: u64, asg: &Augmentation) -> Result<u64> {
    let mut total = 0u64;
    'terms: for (body, coeff) in p.terms() {
        let mut value = coeff_mod(coeff, q);
        let hom_value = |h: &crate::ncpoly::HomMonomial| -> Result<u64> {
            let mut acc = 1u64;
            for (s, e) in h.exponents() {
                let unit = match s {
                    CoeffSymbol::Lambda(k) => asg.lam_vals[k as usize - 1],
                    CoeffSymbol::Mu(k) => asg.mu_vals[k as usize - 1],
                    CoeffSymbol::MuTilde(_) => {
                        return Err(Error::Internal(
                            "cannot evaluate tilde-regime symbols in a field".into(),
                        ))
                    }
                };
                acc = acc * unit_pow(unit, e, q) % q;
            }
            Ok(acc)
        };
        value = value * hom_value(body.head())? % q;
        for (chord, h) in body.tail() {
            let chord_value = match chord.family {
                ChordFamily::A => *asg.a_vals.get(&(chord.i, chord.j)).ok_or_else(|| {
                    Error::Internal(format!("assignment missing a value for {chord}"))
                })?,
                _ => 0,
            };
            if chord_value == 0 {
                continue 'terms;
            }
            value = value * chord_value % q;
            value = value * hom_value(h)? % q;
        }
        total = (total + value) % q;
    }
    Ok(total)
}

/// Exhaustive augmentation count, reported per boundary tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationCensus {
    pub q: u64,
    pub total: u64,
    pub by_boundary: BTreeMap<BoundaryTuple, u64>,
}

/// Values of the homology symbols: one longitude and one meridian unit per
/// component.
pub type BoundaryTuple = (Vec<u64>, Vec<u64>);

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// A degree-0 relation compiled for fast repeated evaluation: per term, the
// coefficient, the homology exponents (indexed lambda 0..r, mu r..2r), and
// the chord variables with multiplicity.
struct CompiledTerm {
    coeff: u64,
    sym_exps: Vec<(usize, i64)>,
    avars: Vec<usize>,
}

struct CompiledRelation {
    terms: Vec<CompiledTerm>,
    // depth in the chord-variable order at which the relation is decidable;
    // None when it only involves boundary symbols
    check_depth: Option<usize>,
}

fn compile_relation(
    p: &NcPoly,
    q: u64,
    r: usize,
    avar_index: &BTreeMap<(u32, u32), usize>,
) -> CompiledRelation {
    let mut terms = Vec::new();
    let mut max_avar: Option<usize> = None;
    for (body, coeff) in p.terms() {
        let mut sym_map: BTreeMap<usize, i64> = BTreeMap::new();
        let mut avars = Vec::new();
        let fold_hom = |h: &crate::ncpoly::HomMonomial, sym_map: &mut BTreeMap<usize, i64>| {
            for (s, e) in h.exponents() {
                let idx = match s {
                    CoeffSymbol::Lambda(k) => k as usize - 1,
                    CoeffSymbol::Mu(k) => r + k as usize - 1,
                    CoeffSymbol::MuTilde(_) => unreachable!("final regime only"),
                };
                *sym_map.entry(idx).or_insert(0) += e;
            }
        };
        fold_hom(body.head(), &mut sym_map);
        for (chord, h) in body.tail() {
            debug_assert_eq!(chord.family, ChordFamily::A, "degree-0 relation");
            let idx = avar_index[&(chord.i, chord.j)];
            avars.push(idx);
            max_avar = Some(max_avar.map_or(idx, |m: usize| m.max(idx)));
            fold_hom(h, &mut sym_map);
        }
        terms.push(CompiledTerm {
            coeff: coeff_mod(coeff, q),
            sym_exps: sym_map.into_iter().filter(|&(_, e)| e != 0).collect(),
            avars,
        });
    }
    CompiledRelation {
        terms,
        check_depth: max_avar,
    }
}

// A relation with the boundary symbols already evaluated.
struct BoundRelation {
    terms: Vec<(u64, Vec<usize>)>,
}

impl BoundRelation {
    fn eval(&self, vals: &[u64], q: u64) -> u64 {
        let mut total = 0u64;
        for (scalar, avars) in &self.terms {
            let mut v = *scalar;
            for &idx in avars {
                v = v * vals[idx] % q;
                if v == 0 {
                    break;
                }
            }
            total = (total + v) % q;
        }
        total
    }
}

fn boundary_tuples(q: u64, r: usize) -> Vec<BoundaryTuple> {
    let units: Vec<u64> = (1..q).collect();
    let mut tuples = Vec::new();
    let mut counter = vec![0usize; 2 * r];
    loop {
        let lam: Vec<u64> = counter[..r].iter().map(|&i| units[i]).collect();
        let mu: Vec<u64> = counter[r..].iter().map(|&i| units[i]).collect();
        tuples.push((lam, mu));
        // increment the mixed-radix counter, last coordinate fastest
        let mut pos = 2 * r;
        loop {
            if pos == 0 {
                return tuples;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < units.len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

fn dfs_count(
    depth: usize,
    m: usize,
    vals: &mut Vec<u64>,
    scheduled: &[Vec<BoundRelation>],
    q: u64,
    on_leaf: &mut dyn FnMut(&[u64]) -> Result<()>,
) -> Result<u64> {
    if depth == m {
        on_leaf(vals)?;
        return Ok(1);
    }
    let mut count = 0u64;
    for v in 0..q {
        vals.push(v);
        let ok = scheduled[depth].iter().all(|rel| rel.eval(vals, q) == 0);
        if ok {
            count += dfs_count(depth + 1, m, vals, scheduled, q, on_leaf)?;
        }
        vals.pop();
    }
    Ok(count)
}

/// Search-space size `(q-1)^(2r) * q^(n(n-1))`.
pub fn search_space(q: u64, r: u32, n: u32) -> u128 {
    let mut size: u128 = 1;
    for _ in 0..2 * r {
        size = size.saturating_mul((q - 1) as u128);
    }
    for _ in 0..n * (n - 1) {
        size = size.saturating_mul(q as u128);
    }
    size
}

/// Exhaustively count the augmentations of the presentation into the field
/// with `q` elements. Refuses outright if the search space exceeds `budget`.
pub fn census(pres: &DgaPresentation, q: u64, budget: u64) -> Result<AugmentationCensus> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let n = pres.generators().strands();
    let r = pres.components().component_count();
    let required = search_space(q, r, n);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget,
        });
    }

    let avar_letters: Vec<(u32, u32)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let avar_index: BTreeMap<(u32, u32), usize> = avar_letters
        .iter()
        .enumerate()
        .map(|(idx, &ij)| (ij, idx))
        .collect();

    let relations: Vec<CompiledRelation> = pres
        .generators()
        .generators()
        .iter()
        .filter(|g| matches!(g.family, ChordFamily::B | ChordFamily::C))
        .map(|&g| {
            compile_relation(
                pres.differential_of(g).expect("total table"),
                q,
                r as usize,
                &avar_index,
            )
        })
        .collect();

    let tuples = boundary_tuples(q, r as usize);
    let m = avar_letters.len();

    let per_tuple: Vec<(BoundaryTuple, u64)> = tuples
        .into_par_iter()
        .map(|(lam, mu)| -> Result<(BoundaryTuple, u64)> {
            // bind the boundary symbols into every relation
            let mut scheduled: Vec<Vec<BoundRelation>> = (0..=m).map(|_| Vec::new()).collect();
            let mut boundary_consistent = true;
            for rel in &relations {
                let bound = BoundRelation {
                    terms: rel
                        .terms
                        .iter()
                        .filter_map(|t| {
                            let mut scalar = t.coeff;
                            for &(idx, e) in &t.sym_exps {
                                let unit = if idx < r as usize {
                                    lam[idx]
                                } else {
                                    mu[idx - r as usize]
                                };
                                scalar = scalar * unit_pow(unit, e, q) % q;
                            }
                            (scalar != 0).then_some((scalar, t.avars.clone()))
                        })
                        .collect(),
                };
                match rel.check_depth {
                    None => {
                        if bound.eval(&[], q) != 0 {
                            boundary_consistent = false;
                            break;
                        }
                    }
                    Some(d) => scheduled[d + 1].push(bound),
                }
            }
            if !boundary_consistent {
                return Ok(((lam, mu), 0));
            }
            // scheduled[d] is checked right after chord variable d-1 gets its
            // value; shift so index 0 is the pre-assignment stage (empty).
            let scheduled: Vec<Vec<BoundRelation>> = scheduled.into_iter().skip(1).collect();
            let mut vals: Vec<u64> = Vec::with_capacity(m);
            let mut on_leaf = |vals: &[u64]| -> Result<()> {
                let aug = Augmentation {
                    q,
                    lam_vals: lam.clone(),
                    mu_vals: mu.clone(),
                    a_vals: avar_letters
                        .iter()
                        .zip(vals)
                        .map(|(&ij, &v)| (ij, v))
                        .collect(),
                };
                if !aug.satisfies(pres)? {
                    return Err(Error::Internal(
                        "census leaf violates the full differential; degree-2 check failed".into(),
                    ));
                }
                Ok(())
            };
            let count = dfs_count(0, m, &mut vals, &scheduled, q, &mut on_leaf)?;
            Ok(((lam, mu), count))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut by_boundary = BTreeMap::new();
    let mut total = 0u64;
    for (tuple, count) in per_tuple {
        total += count;
        if count > 0 {
            by_boundary.insert(tuple, count);
        }
    }
    Ok(AugmentationCensus {
        q,
        total,
        by_boundary,
    })
}
