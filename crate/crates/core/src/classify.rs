//! Classification tables: all degree tuples for a fixed group, block shape
//! and division part, grouped into isomorphism classes.
//!
//! Two tuples give isomorphic algebras iff `g'_i = g_{σ(i)}h_{σ(i)}g`
//! with `σ` block-preserving, `h_i ∈ H = supp D` and `g` in the
//! stabilizer `{g : ^{[g⁻¹]}D^{[g]} ≅ D}`. For a fixed shift the
//! lexicographically smallest tuple in the orbit takes, per position, the
//! smallest element of `g_iHg` and sorts each block.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::division::{iso_division, DivisionAlgebra};
use crate::error::{Error, Result};
use crate::flag::{BlockShape, FlagPresentation};
use crate::group::{Group, GroupElem};
use crate::iso::iso_algebras;

/// Default cap on `|G|^n`.
pub const DEFAULT_TUPLE_BUDGET: u128 = 1 << 20;
/// Default cap on the number of pairwise isomorphism calls in cross-checks.
pub const DEFAULT_PAIR_BUDGET: u128 = 2_000;

/// Precomputed data for canonical forms under a fixed `(G, m, D)`.
#[derive(Clone, Debug)]
pub struct Canonicalizer {
    group: Arc<Group>,
    shape: BlockShape,
    /// Shifts `g` with `^{[g⁻¹]}D^{[g]} ≅ D`.
    stabilizer: Vec<GroupElem>,
    /// `coset_min[g][x]` = smallest element of `x·H·g`.
    coset_min: Vec<Vec<GroupElem>>,
}

impl Canonicalizer {
    pub fn new(division: &DivisionAlgebra, shape: BlockShape) -> Canonicalizer {
        let group = division.group().clone();
        let stabilizer: Vec<GroupElem> = group
            .elements()
            .filter(|&g| iso_division(&division.shift_conjugate(g), division).is_some())
            .collect();
        let support = division.support();
        let coset_min = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .map(|x| {
                        support
                            .members()
                            .iter()
                            .map(|&h| group.mul(group.mul(x, h), g))
                            .min()
                            .expect("support is nonempty")
                    })
                    .collect()
            })
            .collect();
        Canonicalizer {
            group,
            shape,
            stabilizer,
            coset_min,
        }
    }

    pub fn stabilizer(&self) -> &[GroupElem] {
        &self.stabilizer
    }

    /// Lexicographically smallest tuple in the isomorphism class of `tuple`.
    pub fn canonical(&self, tuple: &[GroupElem]) -> Vec<GroupElem> {
        let mut best: Option<Vec<GroupElem>> = None;
        let mut candidate = vec![self.group.identity(); tuple.len()];
        for &g in &self.stabilizer {
            let mins = &self.coset_min[g.0];
            for k in 0..self.shape.len() {
                let range = self.shape.block_range(k);
                for i in range.clone() {
                    candidate[i] = mins[tuple[i].0];
                }
                candidate[range].sort();
            }
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate.clone());
            }
        }
        best.expect("the identity is always in the stabilizer")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub representative: Vec<GroupElem>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub group: String,
    pub blocks: Vec<usize>,
    pub division: String,
    pub classes: Vec<ClassEntry>,
    pub tuples: usize,
}

impl ClassTable {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// What the pairwise cross-checks covered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheck {
    /// Pairs of distinct representatives confirmed non-isomorphic.
    pub representative_pairs: usize,
    /// Tuples confirmed isomorphic to their representative.
    pub members_checked: usize,
    /// Class count from union-find over all pairwise calls, when run.
    pub union_find_count: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub tuples: u128,
    pub pairs: u128,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            tuples: DEFAULT_TUPLE_BUDGET,
            pairs: DEFAULT_PAIR_BUDGET,
        }
    }
}

fn tuple_from_index(mut idx: usize, order: usize, n: usize) -> Vec<GroupElem> {
    let mut t = vec![GroupElem(0); n];
    for slot in t.iter_mut().rev() {
        *slot = GroupElem(idx % order);
        idx /= order;
    }
    t
}

/// Number of tuples `|G|^n`, saturating.
pub fn tuple_count(order: usize, n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(order as u128))
}

/// Enumerate every degree tuple and bucket it by canonical form.
///
/// Output is sorted by representative and independent of thread count.
pub fn enumerate(division: &DivisionAlgebra, blocks: Vec<usize>, budget: u128) -> Result<ClassTable> {
    let shape = BlockShape::new(blocks)?;
    let group = division.group().clone();
    let n = shape.n();
    let needed = tuple_count(group.order(), n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let canon = Canonicalizer::new(division, shape.clone());
    let total = needed as usize;
    let buckets: BTreeMap<Vec<GroupElem>, usize> = (0..total)
        .into_par_iter()
        .map(|idx| canon.canonical(&tuple_from_index(idx, group.order(), n)))
        .fold(BTreeMap::new, |mut acc, c| {
            *acc.entry(c).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let classes = buckets
        .into_iter()
        .map(|(representative, orbit_size)| ClassEntry {
            representative,
            orbit_size,
        })
        .collect();
    Ok(ClassTable {
        group: describe_group(&group),
        blocks: shape.blocks().to_vec(),
        division: describe_division(division),
        classes,
        tuples: total,
    })
}

/// Cross-check a table against [`iso_algebras`] within `pair_budget`
/// calls per check. Errors with [`Error::Internal`] on any disagreement.
pub fn cross_check(division: &DivisionAlgebra, table: &ClassTable, pair_budget: u128) -> Result<CrossCheck> {
    let group = division.group();
    let present = |t: &[GroupElem]| FlagPresentation::new(division.clone(), table.blocks.clone(), t.to_vec());
    let reps: Vec<FlagPresentation> = table
        .classes
        .iter()
        .map(|c| present(&c.representative))
        .collect::<Result<_>>()?;
    let mut report = CrossCheck::default();

    let rep_pairs = (reps.len() * reps.len().saturating_sub(1) / 2) as u128;
    if rep_pairs <= pair_budget {
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if iso_algebras(&reps[i], &reps[j])?.is_isomorphic() {
                    return Err(Error::Internal(format!("representatives {i} and {j} are isomorphic")));
                }
                report.representative_pairs += 1;
            }
        }
    }

    let n: usize = table.blocks.iter().sum();
    if (table.tuples as u128) <= pair_budget {
        let canon = Canonicalizer::new(division, BlockShape::new(table.blocks.clone())?);
        let index: BTreeMap<&[GroupElem], usize> = table
            .classes
            .iter()
            .enumerate()
            .map(|(k, c)| (c.representative.as_slice(), k))
            .collect();
        for idx in 0..table.tuples {
            let t = tuple_from_index(idx, group.order(), n);
            let k = index[canon.canonical(&t).as_slice()];
            if !iso_algebras(&present(&t)?, &reps[k])?.is_isomorphic() {
                return Err(Error::Internal(format!(
                    "tuple {idx} is not isomorphic to its representative"
                )));
            }
            report.members_checked += 1;
        }
    }

    let all_pairs = (table.tuples as u128) * (table.tuples as u128).saturating_sub(1) / 2;
    if all_pairs <= pair_budget {
        let presentations: Vec<FlagPresentation> = (0..table.tuples)
            .map(|idx| present(&tuple_from_index(idx, group.order(), n)))
            .collect::<Result<_>>()?;
        let count = union_find_count(&presentations)?;
        if count != table.count() {
            return Err(Error::Internal(format!(
                "canonical forms give {} classes, pairwise isomorphism gives {count}",
                table.count()
            )));
        }
        report.union_find_count = Some(count);
    }
    Ok(report)
}

/// Number of isomorphism classes among `items`, by pairwise
/// [`iso_algebras`] calls and union-find.
pub fn union_find_count(items: &[FlagPresentation]) -> Result<usize> {
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj && iso_algebras(&items[i], &items[j])?.is_isomorphic() {
                parent[rj] = ri;
            }
        }
    }
    Ok((0..items.len()).filter(|&x| find(&mut parent, x) == x).count())
}

pub fn describe_group(group: &Group) -> String {
    match group.abelian_factors() {
        Some(f) if !f.is_empty() => f.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x"),
        _ => format!("table of order {}", group.order()),
    }
}

pub fn describe_division(d: &DivisionAlgebra) -> String {
    if d.is_trivial() {
        return "trivial".into();
    }
    let names: Vec<&str> = d.support().members().iter().map(|&h| d.group().name(h)).collect();
    format!(
        "twisted on {{{}}} with roots of order {}",
        names.join(", "),
        d.root_order()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_abelian;

    fn trivial(n: usize) -> DivisionAlgebra {
        DivisionAlgebra::trivial(Arc::new(Group::cyclic(n).unwrap()))
    }

    fn reps(t: &ClassTable) -> Vec<Vec<usize>> {
        t.classes
            .iter()
            .map(|c| c.representative.iter().map(|x| x.0).collect())
            .collect()
    }

    #[test]
    fn z2_two_blocks() {
        let d = trivial(2);
        let t = enumerate(&d, vec![1, 1], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(t.count(), 2);
        assert_eq!(reps(&t), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(t.classes.iter().map(|c| c.orbit_size).sum::<usize>(), 4);
        let check = cross_check(&d, &t, DEFAULT_PAIR_BUDGET).unwrap();
        assert_eq!(check.union_find_count, Some(2));
    }

    #[test]
    fn z3_and_full_block() {
        let t = enumerate(&trivial(3), vec![1, 1], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(t.count(), 3);
        assert!(t.classes.iter().all(|c| c.orbit_size == 3));
        let t = enumerate(&trivial(2), vec![2], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(t.count(), 2);
        assert_eq!(reps(&t), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn pauli_single_class() {
        let k = Arc::new(build_abelian(&[2, 2]).unwrap());
        let d = DivisionAlgebra::pauli(2, k, GroupElem(2), GroupElem(1)).unwrap();
        let t = enumerate(&d, vec![1], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(t.count(), 1);
        assert_eq!(t.classes[0].orbit_size, 4);
        assert_eq!(
            cross_check(&d, &t, DEFAULT_PAIR_BUDGET).unwrap().union_find_count,
            Some(1)
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate(&trivial(3), vec![1, 1, 1], 26),
            Err(Error::BudgetExceeded { needed: 27, budget: 26 })
        ));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let d = trivial(4);
        let canon = Canonicalizer::new(&d, BlockShape::new(vec![2, 1]).unwrap());
        for idx in 0..64 {
            let t = tuple_from_index(idx, 4, 3);
            let c = canon.canonical(&t);
            assert_eq!(canon.canonical(&c), c);
            assert!(c <= t);
        }
    }
}
