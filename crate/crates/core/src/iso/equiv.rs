//! Graded equivalence: algebra isomorphisms carrying homogeneous
//! components onto homogeneous components, possibly across groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{realize, BasisElem, GradedAlgebra};
use crate::division::equiv_division;
use crate::error::{Error, Result};
use crate::flag::FlagPresentation;
use crate::group::{coset_rep, GroupElem};

use super::witness::invert_perm;
use super::Verdict;

/// Backtracking nodes allowed in [`equiv_elementary`].
pub const EQUIV_NODE_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    /// `λ(g_i) = g'_{σ⁻¹(i)}` on the distinct tuple values of the source.
    pub lambda: Vec<(GroupElem, GroupElem)>,
    /// Zero-based, indexed by target positions, block-preserving.
    pub sigma: Vec<usize>,
    /// Induced bijection `supp A → supp A'` of degrees.
    pub components: Vec<(GroupElem, GroupElem)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonEquivalence {
    ShapeMismatch {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    DivisionNotEquivalent,
    /// Per coset class, the number of positions in each block; the two
    /// sides give different multisets of these count vectors.
    CosetClassMismatch {
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    },
    /// Sorted nonzero component dimensions differ.
    ComponentProfileMismatch {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    NoCompatibleRelabeling {
        nodes_searched: u128,
    },
}

impl fmt::Display for NonEquivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonEquivalence::ShapeMismatch { left, right } => write!(f, "block shapes differ: {left:?} vs {right:?}"),
            NonEquivalence::DivisionNotEquivalent => write!(f, "division parts are not equivalent"),
            NonEquivalence::CosetClassMismatch { left, right } => {
                write!(f, "coset classes per block differ: {left:?} vs {right:?}")
            }
            NonEquivalence::ComponentProfileMismatch { left, right } => {
                write!(f, "homogeneous component dimensions differ: {left:?} vs {right:?}")
            }
            NonEquivalence::NoCompatibleRelabeling { nodes_searched } => {
                write!(
                    f,
                    "no block permutation relabels degrees consistently ({nodes_searched} nodes searched)"
                )
            }
        }
    }
}

/// For every coset class `g·supp D` met by the tuple, the number of
/// positions in each block lying in it; sorted.
fn coset_class_profile(p: &FlagPresentation) -> Vec<Vec<usize>> {
    let group = p.group();
    let support = p.division().support();
    let mut classes: BTreeMap<GroupElem, Vec<usize>> = BTreeMap::new();
    for k in 0..p.flag_len() {
        for i in p.shape().block_range(k) {
            let counts = classes
                .entry(coset_rep(group, p.tuple()[i], support))
                .or_insert_with(|| vec![0; p.flag_len()]);
            counts[k] += 1;
        }
    }
    let mut profile: Vec<Vec<usize>> = classes.into_values().collect();
    profile.sort();
    profile
}

/// Necessary conditions for graded equivalence. Never answers
/// `Equivalent`: when every condition holds the verdict is
/// `Inconclusive`.
pub fn equiv_check(p: &FlagPresentation, p2: &FlagPresentation) -> Result<Verdict> {
    if p.shape() != p2.shape() {
        return Ok(Verdict::NotEquivalent(NonEquivalence::ShapeMismatch {
            left: p.shape().blocks().to_vec(),
            right: p2.shape().blocks().to_vec(),
        }));
    }
    if equiv_division(p.division(), p2.division())?.is_none() {
        return Ok(Verdict::NotEquivalent(NonEquivalence::DivisionNotEquivalent));
    }
    let (left, right) = (coset_class_profile(p), coset_class_profile(p2));
    if left != right {
        return Ok(Verdict::NotEquivalent(NonEquivalence::CosetClassMismatch {
            left,
            right,
        }));
    }
    Ok(Verdict::Inconclusive(
        "shapes agree, division parts are equivalent and a coset relabeling exists; these conditions are \
         necessary but not sufficient"
            .into(),
    ))
}

fn component_profile(a: &GradedAlgebra) -> Vec<usize> {
    let mut counts = vec![0; a.group().order()];
    for &d in a.degrees() {
        counts[d.0] += 1;
    }
    let mut profile: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    profile.sort();
    profile
}

struct Search<'a> {
    p: &'a FlagPresentation,
    p2: &'a FlagPresentation,
    pi: Vec<Option<usize>>,
    used: Vec<bool>,
    forward: HashMap<GroupElem, GroupElem>,
    backward: HashMap<GroupElem, GroupElem>,
    nodes: u128,
}

impl Search<'_> {
    fn degree(p: &FlagPresentation, i: usize, j: usize) -> GroupElem {
        let g = p.group();
        g.mul(p.tuple()[i], g.inv(p.tuple()[j]))
    }

    /// Record the degree correspondences forced by assigning position `i`;
    /// returns the newly inserted keys, or `None` on a conflict (after
    /// undoing its own insertions).
    fn extend(&mut self, i: usize) -> Option<Vec<GroupElem>> {
        let shape = self.p.shape();
        let mut added = Vec::new();
        for j in 0..self.p.n() {
            let Some(pj) = self.pi[j] else { continue };
            let pi_i = self.pi[i].unwrap();
            for (r, c, pr, pc) in [(i, j, pi_i, pj), (j, i, pj, pi_i)] {
                if shape.block_of(r) > shape.block_of(c) {
                    continue;
                }
                let u = Self::degree(self.p, r, c);
                let v = Self::degree(self.p2, pr, pc);
                match (self.forward.get(&u), self.backward.get(&v)) {
                    (Some(&x), _) if x != v => return self.undo(added),
                    (_, Some(&y)) if y != u => return self.undo(added),
                    (Some(_), _) => {}
                    (None, _) => {
                        self.forward.insert(u, v);
                        self.backward.insert(v, u);
                        added.push(u);
                    }
                }
            }
        }
        Some(added)
    }

    fn undo(&mut self, added: Vec<GroupElem>) -> Option<Vec<GroupElem>> {
        for u in added {
            let v = self.forward.remove(&u).unwrap();
            self.backward.remove(&v);
        }
        None
    }

    fn run(&mut self, i: usize) -> Result<bool> {
        if i == self.p.n() {
            return Ok(true);
        }
        let block = self.p.shape().block_range(self.p.shape().block_of(i));
        for cand in block {
            if self.used[cand] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > EQUIV_NODE_BUDGET {
                return Err(Error::BudgetExceeded {
                    needed: self.nodes,
                    budget: EQUIV_NODE_BUDGET,
                });
            }
            self.pi[i] = Some(cand);
            self.used[cand] = true;
            if let Some(added) = self.extend(i) {
                if self.run(i + 1)? {
                    return Ok(true);
                }
                self.undo(added);
            }
            self.pi[i] = None;
            self.used[cand] = false;
        }
        Ok(false)
    }
}

/// Full equivalence decision for elementary gradings (trivial division
/// parts). Searches block-preserving relabelings `π` of positions such
/// that, over positions `(i,j)` with `e_ij` in the algebra,
/// `g_ig_j⁻¹ = g_kg_l⁻¹ ⇔ g'_{π i}g'_{π j}⁻¹ = g'_{π k}g'_{π l}⁻¹`.
pub fn equiv_elementary(p: &FlagPresentation, p2: &FlagPresentation) -> Result<Verdict> {
    if !p.division().is_trivial() || !p2.division().is_trivial() {
        return Err(Error::Unsupported(
            "equivalence is decided only for trivial division parts".into(),
        ));
    }
    if p.shape() != p2.shape() {
        return Ok(Verdict::NotEquivalent(NonEquivalence::ShapeMismatch {
            left: p.shape().blocks().to_vec(),
            right: p2.shape().blocks().to_vec(),
        }));
    }
    let (a, a2) = (realize(p), realize(p2));
    let (left, right) = (component_profile(&a), component_profile(&a2));
    if left != right {
        return Ok(Verdict::NotEquivalent(NonEquivalence::ComponentProfileMismatch {
            left,
            right,
        }));
    }
    let n = p.n();
    let mut search = Search {
        p,
        p2,
        pi: vec![None; n],
        used: vec![false; n],
        forward: HashMap::new(),
        backward: HashMap::new(),
        nodes: 0,
    };
    if !search.run(0)? {
        return Ok(Verdict::NotEquivalent(NonEquivalence::NoCompatibleRelabeling {
            nodes_searched: search.nodes,
        }));
    }
    let pi: Vec<usize> = search.pi.iter().map(|x| x.unwrap()).collect();
    let mut lambda: Vec<(GroupElem, GroupElem)> = (0..n).map(|i| (p.tuple()[i], p2.tuple()[pi[i]])).collect();
    lambda.sort();
    lambda.dedup();
    let mut components: Vec<(GroupElem, GroupElem)> = search.forward.into_iter().collect();
    components.sort();
    let w = EquivWitness {
        lambda,
        sigma: invert_perm(&pi),
        components,
    };
    verify_equivalence(&a, &a2, &w)
        .map_err(|e| Error::Internal(format!("emitted equivalence failed verification: {e}")))?;
    Ok(Verdict::Equivalent(Box::new(w)))
}

/// Check that `e_ij·x_c ↦ e_{π i, π j}·x_c` is an algebra isomorphism
/// carrying each homogeneous component of `A` onto one of `A'`.
pub fn verify_equivalence(a: &GradedAlgebra, a2: &GradedAlgebra, w: &EquivWitness) -> std::result::Result<(), String> {
    if a.dim() != a2.dim() || w.sigma.len() != a.shape().n() || a.shape() != a2.shape() {
        return Err("dimensions or shapes differ".into());
    }
    let pi = invert_perm(&w.sigma);
    let mut images = Vec::with_capacity(a.dim());
    for b in a.basis() {
        let target = BasisElem {
            row: pi[b.row],
            col: pi[b.col],
            h: b.h,
        };
        let t = a2
            .index_of(&target)
            .ok_or_else(|| format!("image of {} is not a basis element", b))?;
        images.push(t);
    }
    let mut hit = vec![false; a2.dim()];
    if !images.iter().all(|&t| !std::mem::replace(&mut hit[t], true)) {
        return Err("map is not a bijection of bases".into());
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let ok = match (a.product(x, y), a2.product(images[x], images[y])) {
                (None, None) => true,
                (Some((z, s)), Some((t, s2))) => images[z] == t && s.same_value(s2),
                _ => false,
            };
            if !ok {
                return Err(format!("product of {} and {} is not preserved", a.label(x), a.label(y)));
            }
        }
    }
    let mut degree_map: HashMap<GroupElem, GroupElem> = HashMap::new();
    for (x, &t) in images.iter().enumerate() {
        let (u, v) = (a.degree(x), a2.degree(t));
        if *degree_map.entry(u).or_insert(v) != v {
            return Err(format!("component of degree {} is split", a.group().name(u)));
        }
    }
    let mut dims = HashMap::new();
    for &d in a.degrees() {
        *dims.entry(d).or_insert(0usize) += 1;
    }
    let mut dims2 = HashMap::new();
    for &d in a2.degrees() {
        *dims2.entry(d).or_insert(0usize) += 1;
    }
    for (u, v) in &degree_map {
        if dims[u] != dims2[v] {
            return Err(format!("component of degree {} is not mapped onto", a.group().name(*u)));
        }
    }
    Ok(())
}
