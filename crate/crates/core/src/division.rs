//! Graded division algebras as twisted group algebras `K^σ[H]`.
//!
//! One basis vector `x_h` per support element, multiplication
//! `x_a x_b = σ(a,b)·x_{ab}`. Over an algebraically closed field every
//! graded division algebra with one-dimensional identity component has
//! this shape.

use std::sync::Arc;

use crate::cocycle::{cohomologous_mod, transport, validate_cocycle, Cocycle, Corrector};
use crate::error::{Error, Result};
use crate::group::{find_isomorphisms, subgroup_closure, Group, GroupElem, Subgroup, ISOMORPHISM_SEARCH_CAP};
use crate::roots::{lcm, RootScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionAlgebra {
    cocycle: Cocycle,
}

/// Degree relabeling `α: H → H'` plus corrector, witnessing that two
/// division algebras are equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionEquivalence {
    /// `(h, α(h))` for every member of the source support.
    pub alpha: Vec<(GroupElem, GroupElem)>,
    /// Corrector on the target support: `x_h ↦ μ(α(h))·x'_{α(h)}`.
    pub corrector: Corrector,
}

impl DivisionAlgebra {
    /// The base field itself, support `{e}`.
    pub fn trivial(group: Arc<Group>) -> DivisionAlgebra {
        let support = Subgroup::trivial(&group);
        DivisionAlgebra {
            cocycle: Cocycle::trivial(group, support),
        }
    }

    pub fn twisted(cocycle: Cocycle) -> DivisionAlgebra {
        DivisionAlgebra { cocycle }
    }

    /// The clock-and-shift grading on `M_t`, embedded through
    /// `(i, j) ↦ uⁱvʲ`, with `σ(uⁱ¹vʲ¹, uⁱ²vʲ²) = ζ_t^{j₁i₂}`.
    pub fn pauli(t: usize, group: Arc<Group>, u: GroupElem, v: GroupElem) -> Result<DivisionAlgebra> {
        if t < 2 {
            return Err(Error::InvalidEmbedding(format!(
                "Pauli degree must be at least 2, got {t}"
            )));
        }
        if u.0 >= group.order() || v.0 >= group.order() {
            return Err(Error::InvalidEmbedding("generator image outside the group".into()));
        }
        if !group.order().is_multiple_of(t * t) {
            return Err(Error::InvalidEmbedding(format!(
                "group of order {} has no subgroup Z_{t}×Z_{t}",
                group.order()
            )));
        }
        for (label, x) in [("u", u), ("v", v)] {
            if group.elem_order(x) != t {
                return Err(Error::InvalidEmbedding(format!(
                    "image {label} = {} has order {}, expected {t}",
                    group.name(x),
                    group.elem_order(x)
                )));
            }
        }
        if group.mul(u, v) != group.mul(v, u) {
            return Err(Error::InvalidEmbedding("generator images do not commute".into()));
        }
        let mut coords: Vec<Option<(usize, usize)>> = vec![None; group.order()];
        for i in 0..t {
            for j in 0..t {
                let x = group.mul(group.pow(u, i), group.pow(v, j));
                if coords[x.0].is_some() {
                    return Err(Error::InvalidEmbedding("(i,j) ↦ uⁱvʲ is not injective".into()));
                }
                coords[x.0] = Some((i, j));
            }
        }
        let support = subgroup_closure(&group, &[u, v]);
        debug_assert_eq!(support.order(), t * t);
        let values = support
            .members()
            .iter()
            .map(|&a| {
                let (_, j1) = coords[a.0].unwrap();
                support
                    .members()
                    .iter()
                    .map(|&b| {
                        let (i2, _) = coords[b.0].unwrap();
                        ((j1 * i2) % t) as u64
                    })
                    .collect()
            })
            .collect();
        let cocycle = validate_cocycle(group, support, t as u64, values)?;
        Ok(DivisionAlgebra { cocycle })
    }

    pub fn group(&self) -> &Arc<Group> {
        self.cocycle.group()
    }

    pub fn support(&self) -> &Subgroup {
        self.cocycle.support()
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn root_order(&self) -> u64 {
        self.cocycle.order()
    }

    pub fn dim(&self) -> usize {
        self.support().order()
    }

    /// Dimension of the homogeneous component of degree `g`.
    pub fn component_dim(&self, g: GroupElem) -> usize {
        usize::from(self.support().contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.support().order() == 1
    }

    /// `x_a · x_b = sigma(a, b) · x_{ab}`.
    pub fn sigma(&self, a: GroupElem, b: GroupElem) -> RootScalar {
        RootScalar::new(self.cocycle.value(a, b), self.cocycle.order())
    }

    /// Scalar `c` with `x_a⁻¹ = c·x_{a⁻¹}`.
    pub fn inverse_scalar(&self, a: GroupElem) -> RootScalar {
        self.sigma(a, self.group().inv(a)).inv()
    }

    /// `^{[g⁻¹]}D^{[g]}`: support `g⁻¹Hg`, cocycle transported along
    /// `h ↦ g⁻¹hg`.
    pub fn shift_conjugate(&self, g: GroupElem) -> DivisionAlgebra {
        let group = self.group().clone();
        let images: Vec<GroupElem> = self.support().members().iter().map(|&h| group.conj(h, g)).collect();
        let cocycle = transport(&self.cocycle, group, &images).expect("conjugation is an automorphism");
        DivisionAlgebra { cocycle }
    }

    /// Root order large enough for any corrector between `self` and
    /// `other`: if `σ/τ` takes values in `μ_L` and `σ/τ = δμ`, then `μ^L`
    /// is a character of `H`, so `μ` takes values in `μ_{L·exp(H)}`.
    fn corrector_modulus(&self, other: &DivisionAlgebra) -> u64 {
        let (h, _) = self.support().as_group(self.group());
        lcm(self.root_order(), other.root_order()) * h.exponent()
    }
}

/// Degree-preserving graded isomorphism `D → D'`, as a corrector `μ` with
/// `x_h ↦ μ(h)·x'_h`. `None` if the supports differ or the cocycles are
/// not cohomologous.
pub fn iso_division(d: &DivisionAlgebra, d2: &DivisionAlgebra) -> Option<Corrector> {
    if d.group() != d2.group() || d.support() != d2.support() {
        return None;
    }
    let modulus = d.corrector_modulus(d2);
    cohomologous_mod(d.cocycle(), d2.cocycle(), modulus).expect("supports checked above")
}

/// Graded equivalence `D → D'`: some isomorphism `α` of the supports
/// transports `σ` to a cocycle cohomologous to `σ'`. The ambient groups
/// may differ.
pub fn equiv_division(d: &DivisionAlgebra, d2: &DivisionAlgebra) -> Result<Option<DivisionEquivalence>> {
    for x in [d, d2] {
        if x.dim() > ISOMORPHISM_SEARCH_CAP {
            return Err(Error::SizeCap {
                what: "division support for equivalence search",
                size: x.dim(),
                cap: ISOMORPHISM_SEARCH_CAP,
            });
        }
    }
    if d.dim() != d2.dim() {
        return Ok(None);
    }
    let (h1, emb1) = d.support().as_group(d.group());
    let (h2, emb2) = d2.support().as_group(d2.group());
    let modulus = d.corrector_modulus(d2);
    for iso in find_isomorphisms(&h1, &h2, None)? {
        let images: Vec<GroupElem> = iso.iter().map(|x| emb2[x.0]).collect();
        let moved = transport(d.cocycle(), d2.group().clone(), &images)?;
        if let Some(corrector) = cohomologous_mod(&moved, d2.cocycle(), modulus)? {
            let alpha = emb1.iter().copied().zip(images).collect();
            return Ok(Some(DivisionEquivalence { alpha, corrector }));
        }
    }
    Ok(None)
}
