//! Decision procedures for graded isomorphism and equivalence of flag
//! endomorphism algebras, with verifiable witnesses.

mod equiv;
mod witness;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{invariants, realize, GradedAlgebra, InvariantMismatch};
use crate::cocycle::Corrector;
use crate::division::iso_division;
use crate::error::{Error, Result};
use crate::flag::FlagPresentation;
use crate::group::{coset_rep, GroupElem};

pub use equiv::{equiv_check, equiv_elementary, verify_equivalence, EquivWitness, NonEquivalence};
pub use witness::{
    build_witness, check_relation, compose, compose_data, compose_maps, identity_data, induced_map, inverse_data,
    invert, verify_map, verify_witness, IsoWitness, MonomialMap, WitnessData, WitnessReport,
};

/// Why two presentations are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoCertificate {
    ShapeMismatch {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// Only for pairs, where no shift is allowed.
    DivisionNotIsomorphic,
    /// Only for pairs: the multisets of left cosets differ.
    CosetMismatch,
    /// Every shift `g ∈ G` was tried. `division_compatible` counts the
    /// shifts for which the division parts matched; the coset comparison
    /// failed for all of them.
    SearchExhausted {
        shifts_searched: usize,
        division_compatible: usize,
        blocks: usize,
        invariant_mismatch: Option<InvariantMismatch>,
    },
}

impl fmt::Display for NonIsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsoCertificate::ShapeMismatch { left, right } => {
                write!(f, "block shapes differ: {left:?} vs {right:?}")
            }
            NonIsoCertificate::DivisionNotIsomorphic => write!(f, "division parts are not isomorphic"),
            NonIsoCertificate::CosetMismatch => write!(f, "multisets of left cosets differ"),
            NonIsoCertificate::SearchExhausted {
                shifts_searched,
                division_compatible,
                blocks,
                invariant_mismatch,
            } => {
                write!(
                    f,
                    "criterion exhausted: {shifts_searched} shifts searched, {division_compatible} with \
                     isomorphic division parts, coset matching failed across {blocks} blocks"
                )?;
                if let Some(m) = invariant_mismatch {
                    write!(f, "; separating invariant: {m}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic(Box<IsoWitness>),
    NotIsomorphic(NonIsoCertificate),
    Equivalent(Box<EquivWitness>),
    NotEquivalent(NonEquivalence),
    Inconclusive(String),
}

impl Verdict {
    /// The stable token printed on the first line of CLI output.
    pub fn token(&self) -> &'static str {
        match self {
            Verdict::Isomorphic(_) => "ISOMORPHIC",
            Verdict::NotIsomorphic(_) => "NOT_ISOMORPHIC",
            Verdict::Equivalent(_) => "EQUIVALENT",
            Verdict::NotEquivalent(_) => "NOT_EQUIVALENT",
            Verdict::Inconclusive(_) => "INCONCLUSIVE",
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Verdict::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            Verdict::Isomorphic(w) => Some(w),
            _ => None,
        }
    }
}

fn same_group(p: &FlagPresentation, p2: &FlagPresentation) -> Result<()> {
    if p.group() != p2.group() {
        return Err(Error::GroupMismatch(
            "presentations are graded by different groups".into(),
        ));
    }
    Ok(())
}

/// Match positions block by block: sort both sides by (coset
/// representative, index) and pair them up. Returns `σ` and `h` with
/// `g'_i·g⁻¹ = g_{σ(i)}·h_{σ(i)}`.
fn match_cosets(p: &FlagPresentation, p2: &FlagPresentation, g: GroupElem) -> Option<(Vec<usize>, Vec<GroupElem>)> {
    let group = p.group();
    let support = p.division().support();
    let g_inv = group.inv(g);
    let n = p.n();
    let (t, t2) = (p.tuple(), p2.tuple());
    let mut sigma = vec![0; n];
    let mut h = vec![group.identity(); n];
    for k in 0..p.shape().len() {
        let range = p.shape().block_range(k);
        let mut left: Vec<(GroupElem, usize)> = range.clone().map(|i| (coset_rep(group, t[i], support), i)).collect();
        let mut right: Vec<(GroupElem, usize)> = range
            .map(|i| (coset_rep(group, group.mul(t2[i], g_inv), support), i))
            .collect();
        left.sort();
        right.sort();
        for (&(c, i), &(c2, i2)) in left.iter().zip(&right) {
            if c != c2 {
                return None;
            }
            sigma[i2] = i;
            h[i] = group.mul(group.inv(t[i]), group.mul(t2[i2], g_inv));
        }
    }
    Some((sigma, h))
}

fn attach(
    p: &FlagPresentation,
    p2: &FlagPresentation,
    g: GroupElem,
    mu_target: Corrector,
    sigma: Vec<usize>,
    h: Vec<GroupElem>,
) -> Result<IsoWitness> {
    let group = p.group();
    // iso_division gives μ on g⁻¹Hg; the witness keys it by H.
    let support = p.division().support();
    let values = support
        .members()
        .iter()
        .map(|&c| mu_target.value(group.conj(c, g)))
        .collect();
    let mu = Corrector::new(support.clone(), mu_target.order(), values);
    let data = WitnessData {
        shift: g,
        sigma,
        h,
        mu,
        scale: vec![0; p.n()],
    };
    let (a, a2) = (realize(p), realize(p2));
    let w = build_witness(p, p2, &a, &a2, data)?;
    let report = verify_witness(&a, &a2, &w);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "emitted witness failed verification: {report}"
        )));
    }
    Ok(w)
}

/// Isomorphism of pairs `(D, V)` and `(D', V')`: no shift, one block.
pub fn iso_pairs(p: &FlagPresentation, p2: &FlagPresentation) -> Result<Verdict> {
    same_group(p, p2)?;
    if p.n() != p2.n() {
        return Ok(Verdict::NotIsomorphic(NonIsoCertificate::ShapeMismatch {
            left: vec![p.n()],
            right: vec![p2.n()],
        }));
    }
    let single = |x: &FlagPresentation| FlagPresentation::new(x.division().clone(), vec![x.n()], x.tuple().to_vec());
    let (q, q2) = (single(p)?, single(p2)?);
    let e = p.group().identity();
    let Some(mu) = iso_division(q.division(), q2.division()) else {
        return Ok(Verdict::NotIsomorphic(NonIsoCertificate::DivisionNotIsomorphic));
    };
    let Some((sigma, h)) = match_cosets(&q, &q2, e) else {
        return Ok(Verdict::NotIsomorphic(NonIsoCertificate::CosetMismatch));
    };
    Ok(Verdict::Isomorphic(Box::new(attach(&q, &q2, e, mu, sigma, h)?)))
}

/// Decide `𝒜(D,m,g) ≅ 𝒜(D',m',g')` as `G`-graded algebras.
///
/// Shifts are searched in parallel; the smallest successful shift index
/// is reported.
pub fn iso_algebras(p: &FlagPresentation, p2: &FlagPresentation) -> Result<Verdict> {
    same_group(p, p2)?;
    if p.shape() != p2.shape() {
        return Ok(Verdict::NotIsomorphic(NonIsoCertificate::ShapeMismatch {
            left: p.shape().blocks().to_vec(),
            right: p2.shape().blocks().to_vec(),
        }));
    }
    let group = p.group();
    let found = (0..group.order()).into_par_iter().find_map_first(|gi| {
        let g = GroupElem(gi);
        let mu = iso_division(&p.division().shift_conjugate(g), p2.division())?;
        let (sigma, h) = match_cosets(p, p2, g)?;
        Some((g, mu, sigma, h))
    });
    if let Some((g, mu, sigma, h)) = found {
        return Ok(Verdict::Isomorphic(Box::new(attach(p, p2, g, mu, sigma, h)?)));
    }
    let division_compatible = group
        .elements()
        .filter(|&g| iso_division(&p.division().shift_conjugate(g), p2.division()).is_some())
        .count();
    let invariant_mismatch = invariants(&realize(p)).compare(&invariants(&realize(p2)), group);
    Ok(Verdict::NotIsomorphic(NonIsoCertificate::SearchExhausted {
        shifts_searched: group.order(),
        division_compatible,
        blocks: p.flag_len(),
        invariant_mismatch,
    }))
}

/// Realize both presentations and check a witness against them.
pub fn check_witness(p: &FlagPresentation, p2: &FlagPresentation, w: &IsoWitness) -> WitnessReport {
    let (a, a2): (GradedAlgebra, GradedAlgebra) = (realize(p), realize(p2));
    verify_witness(&a, &a2, w)
}
