//! Presentations `(D, m, g)` of graded flags `V_0 ⊂ V_1 ⊂ ⋯ ⊂ V_s`,
//! where `V_k` is spanned over `D` by the first `m_1+⋯+m_k` vectors and
//! the `i`-th vector has degree `g_i`.

use std::ops::Range;
use std::sync::Arc;

use crate::division::DivisionAlgebra;
use crate::error::{Error, Result};
use crate::group::{coset_rep, Group, GroupElem};

/// Block sizes `(m_1, …, m_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockShape {
    blocks: Vec<usize>,
}

impl BlockShape {
    pub fn new(blocks: Vec<usize>) -> Result<BlockShape> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("block shape needs at least one block".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidInput("block sizes must be positive".into()));
        }
        Ok(BlockShape { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Number of blocks `s` (the flag length).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total size `n = m_1+⋯+m_s`.
    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// `n_k = m_1+⋯+m_k` for `k = 1..=s`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }

    /// Zero-based block containing zero-based index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut end = 0;
        for (k, &m) in self.blocks.iter().enumerate() {
            end += m;
            if i < end {
                return k;
            }
        }
        panic!("index {i} outside a shape of size {end}")
    }

    /// Zero-based indices of block `k`.
    pub fn block_range(&self, k: usize) -> Range<usize> {
        let start: usize = self.blocks[..k].iter().sum();
        start..start + self.blocks[k]
    }

    /// `Σ_{k≤l} m_k m_l`, the number of admissible matrix positions.
    pub fn upper_positions(&self) -> usize {
        let m = &self.blocks;
        (0..m.len())
            .map(|k| (k..m.len()).map(|l| m[k] * m[l]).sum::<usize>())
            .sum()
    }
}

/// A validated triple `(D, m, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPresentation {
    division: DivisionAlgebra,
    shape: BlockShape,
    tuple: Vec<GroupElem>,
}

impl FlagPresentation {
    pub fn new(division: DivisionAlgebra, blocks: Vec<usize>, tuple: Vec<GroupElem>) -> Result<FlagPresentation> {
        let shape = BlockShape::new(blocks)?;
        if tuple.len() != shape.n() {
            return Err(Error::LengthMismatch {
                expected: shape.n(),
                got: tuple.len(),
            });
        }
        let order = division.group().order();
        if let Some(x) = tuple.iter().find(|x| x.0 >= order) {
            return Err(Error::UnknownElement(format!(
                "index {} in a group of order {order}",
                x.0
            )));
        }
        Ok(FlagPresentation { division, shape, tuple })
    }

    pub fn division(&self) -> &DivisionAlgebra {
        &self.division
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn tuple(&self) -> &[GroupElem] {
        &self.tuple
    }

    pub fn group(&self) -> &Arc<Group> {
        self.division.group()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// Flag length `s`.
    pub fn flag_len(&self) -> usize {
        self.shape.len()
    }

    /// `dim_D V_k` for `k = 1..=s`.
    pub fn subspace_dims(&self) -> Vec<usize> {
        self.shape.partial_sums()
    }

    /// `ℱ(D,m,g)^{[g]} = ℱ(D',m,(g_1g,…,g_ng))` with `D' = ^{[g⁻¹]}D^{[g]}`.
    pub fn shift(&self, g: GroupElem) -> FlagPresentation {
        let group = self.group();
        FlagPresentation {
            division: self.division.shift_conjugate(g),
            shape: self.shape.clone(),
            tuple: self.tuple.iter().map(|&x| group.mul(x, g)).collect(),
        }
    }

    /// Per block, the sorted canonical representatives of the left cosets
    /// `g_i·supp D`.
    pub fn coset_signature(&self) -> Vec<Vec<GroupElem>> {
        let group = self.group();
        let support = self.division.support();
        (0..self.shape.len())
            .map(|k| {
                let mut reps: Vec<GroupElem> = self
                    .shape
                    .block_range(k)
                    .map(|i| coset_rep(group, self.tuple[i], support))
                    .collect();
                reps.sort();
                reps
            })
            .collect()
    }

    pub fn with_tuple(&self, tuple: Vec<GroupElem>) -> Result<FlagPresentation> {
        FlagPresentation::new(self.division.clone(), self.shape.blocks.clone(), tuple)
    }

    pub fn tuple_names(&self) -> Vec<String> {
        self.tuple.iter().map(|&x| self.group().name(x).to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Cocycle;
    use crate::group::{build_abelian, subgroup_closure};

    fn z2() -> Arc<Group> {
        Arc::new(Group::cyclic(2).unwrap())
    }

    #[test]
    fn make_presentation_cases() {
        let g = z2();
        let d = DivisionAlgebra::trivial(g.clone());
        let (e, a) = (GroupElem(0), GroupElem(1));
        let p = FlagPresentation::new(d.clone(), vec![1, 1], vec![e, a]).unwrap();
        assert_eq!((p.n(), p.flag_len()), (2, 2));
        assert_eq!(p.subspace_dims(), vec![1, 2]);
        let full = FlagPresentation::new(d.clone(), vec![2], vec![e, a]).unwrap();
        assert_eq!(full.flag_len(), 1);
        assert!(matches!(
            FlagPresentation::new(d.clone(), vec![1, 1], vec![e]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
        assert!(FlagPresentation::new(d.clone(), vec![1], vec![GroupElem(7)]).is_err());
        assert!(FlagPresentation::new(d, vec![0, 1], vec![e]).is_err());
    }

    #[test]
    fn shifting() {
        let g = z2();
        let d = DivisionAlgebra::trivial(g.clone());
        let (e, a) = (GroupElem(0), GroupElem(1));
        let p = FlagPresentation::new(d, vec![1, 1], vec![e, a]).unwrap();
        assert_eq!(p.shift(e), p);
        assert_eq!(p.shift(a).tuple(), &[a, e]);
        assert_eq!(p.shift(a).shift(a), p);
    }

    #[test]
    fn signatures() {
        let g = z2();
        let (e, a) = (GroupElem(0), GroupElem(1));
        let p = FlagPresentation::new(DivisionAlgebra::trivial(g.clone()), vec![1, 1], vec![e, a]).unwrap();
        assert_eq!(p.coset_signature(), vec![vec![e], vec![a]]);

        let k = Arc::new(build_abelian(&[2, 2]).unwrap());
        let d = DivisionAlgebra::pauli(2, k.clone(), GroupElem(2), GroupElem(1)).unwrap();
        let p = FlagPresentation::new(d, vec![2], vec![GroupElem(1), GroupElem(3)]).unwrap();
        assert_eq!(p.coset_signature(), vec![vec![GroupElem(0), GroupElem(0)]]);

        // support {e, a=b²} in Z_4 = ⟨b⟩, g = (e, a, b)
        let z4 = Arc::new(Group::cyclic(4).unwrap());
        let (b, a) = (GroupElem(1), GroupElem(2));
        let h = subgroup_closure(&z4, &[a]);
        let d = DivisionAlgebra::twisted(Cocycle::trivial(z4.clone(), h));
        let p = FlagPresentation::new(d, vec![3], vec![GroupElem(0), a, b]).unwrap();
        assert_eq!(p.coset_signature(), vec![vec![GroupElem(0), GroupElem(0), b]]);
    }

    #[test]
    fn shape_helpers() {
        let s = BlockShape::new(vec![2, 1, 3]).unwrap();
        assert_eq!(s.n(), 6);
        assert_eq!(s.block_of(2), 1);
        assert_eq!(s.block_range(2), 3..6);
        assert_eq!(s.upper_positions(), 4 + 2 + 6 + 1 + 3 + 9);
    }
}
