//! Isomorphism witnesses: the data `(g, σ, h, μ)` of a flag isomorphism,
//! the monomial algebra map it induces, and exact verification of that map.

use std::fmt;

use crate::algebra::{BasisElem, GradedAlgebra};
use crate::cocycle::{satisfies_relation, Corrector};
use crate::error::{Error, Result};
use crate::flag::FlagPresentation;
use crate::group::GroupElem;
use crate::roots::{lcm, lift};

/// A linear map sending basis element `k` to `ζ^{exp}·basis'[target]`,
/// `ζ` a primitive `root_order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub images: Vec<(usize, u64)>,
    pub root_order: u64,
}

/// Data of an isomorphism `𝒜(D,m,g) → 𝒜(D',m,g')`.
///
/// `g'_i = g_{σ(i)}·h_{σ(i)}·g` for every index `i` of the target, and
/// `x_c ↦ μ(c)·x'_{g⁻¹cg}` is an isomorphism `D → D'` after the shift.
/// On the module side `v_j ↦ ζ^{scale_j}·v'_{σ⁻¹(j)}·x'_{g⁻¹h_j⁻¹g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub shift: GroupElem,
    /// Zero-based, indexed by target positions.
    pub sigma: Vec<usize>,
    /// Indexed by source positions.
    pub h: Vec<GroupElem>,
    /// Keyed by the source support; its order is the witness root order.
    pub mu: Corrector,
    /// Exponents modulo `mu.order()`.
    pub scale: Vec<u64>,
    pub map: MonomialMap,
}

impl IsoWitness {
    pub fn root_order(&self) -> u64 {
        self.mu.order()
    }

    /// `σ⁻¹`, sending source positions to target positions.
    pub fn pi(&self) -> Vec<usize> {
        invert_perm(&self.sigma)
    }

    /// The defining data without the map.
    pub fn data(&self) -> WitnessData {
        WitnessData {
            shift: self.shift,
            sigma: self.sigma.clone(),
            h: self.h.clone(),
            mu: self.mu.clone(),
            scale: self.scale.clone(),
        }
    }
}

/// Raw witness data, before the induced map is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessData {
    pub shift: GroupElem,
    pub sigma: Vec<usize>,
    pub h: Vec<GroupElem>,
    pub mu: Corrector,
    pub scale: Vec<u64>,
}

impl WitnessData {
    /// Bring `μ` and the scales to a common root order that also covers
    /// both cocycles.
    fn normalized(mut self, p: &FlagPresentation, p2: &FlagPresentation) -> WitnessData {
        let order = lcm(
            lcm(self.mu.order(), p.division().root_order()),
            p2.division().root_order(),
        );
        let from = self.mu.order();
        self.scale = self.scale.iter().map(|&s| lift(s % from, from, order)).collect();
        self.mu = self.mu.lifted(order);
        self
    }
}

pub(crate) fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
}

/// Check every hypothesis on witness data: lengths, `σ` block-preserving,
/// `h_i ∈ supp D`, the degree relation, and `μ`.
pub fn check_relation(p: &FlagPresentation, p2: &FlagPresentation, data: &WitnessData) -> Result<()> {
    let group = p.group();
    if group != p2.group() {
        return Err(Error::GroupMismatch(
            "presentations are graded by different groups".into(),
        ));
    }
    let n = p.n();
    if p.shape() != p2.shape() {
        return Err(Error::InvalidWitness("block shapes differ".into()));
    }
    if data.sigma.len() != n || data.h.len() != n || data.scale.len() != n {
        return Err(Error::InvalidWitness(format!("witness vectors must have length {n}")));
    }
    if !is_permutation(&data.sigma) {
        return Err(Error::InvalidWitness("sigma is not a permutation".into()));
    }
    let shape = p.shape();
    if let Some(i) = (0..n).find(|&i| shape.block_of(i) != shape.block_of(data.sigma[i])) {
        return Err(Error::InvalidWitness(format!(
            "sigma moves position {} out of its block",
            i + 1
        )));
    }
    if data.shift.0 >= group.order() {
        return Err(Error::InvalidWitness("shift outside the group".into()));
    }
    let support = p.division().support();
    if let Some(i) = (0..n).find(|&i| !support.contains(data.h[i])) {
        return Err(Error::InvalidWitness(format!("h_{} is not in the support of D", i + 1)));
    }
    let (g, g2) = (p.tuple(), p2.tuple());
    for (i, &target) in g2.iter().enumerate() {
        let s = data.sigma[i];
        let rhs = group.mul(group.mul(g[s], data.h[s]), data.shift);
        if target != rhs {
            return Err(Error::InvalidWitness(format!(
                "relation fails at position {}: {} != {}",
                i + 1,
                group.name(g2[i]),
                group.name(rhs)
            )));
        }
    }
    if data.mu.support() != support {
        return Err(Error::InvalidWitness("mu is not defined on the support of D".into()));
    }
    let shifted = p.division().shift_conjugate(data.shift);
    if shifted.support() != p2.division().support() {
        return Err(Error::InvalidWitness(
            "shifted support differs from the target support".into(),
        ));
    }
    let moved = mu_on_target(p, data.shift, &data.mu);
    if !satisfies_relation(shifted.cocycle(), p2.division().cocycle(), &moved) {
        return Err(Error::InvalidWitness(
            "mu is not an isomorphism of the division parts".into(),
        ));
    }
    Ok(())
}

/// Rekey `μ` from `supp D` to `g⁻¹(supp D)g`.
fn mu_on_target(p: &FlagPresentation, g: GroupElem, mu: &Corrector) -> Corrector {
    let group = p.group();
    let support = p.division().support();
    let target = support.conjugate(group, g);
    let values = target
        .members()
        .iter()
        .map(|&y| mu.value(group.conj(y, group.inv(g))))
        .collect();
    Corrector::new(target, mu.order(), values)
}

/// Validate the data and attach the induced monomial map.
pub fn build_witness(
    p: &FlagPresentation,
    p2: &FlagPresentation,
    a: &GradedAlgebra,
    a2: &GradedAlgebra,
    data: WitnessData,
) -> Result<IsoWitness> {
    check_relation(p, p2, &data)?;
    let data = data.normalized(p, p2);
    let map = induced_map(p, p2, a, a2, &data)?;
    Ok(assemble(data, map))
}

fn assemble(data: WitnessData, map: MonomialMap) -> IsoWitness {
    IsoWitness {
        shift: data.shift,
        sigma: data.sigma,
        h: data.h,
        mu: data.mu,
        scale: data.scale,
        map,
    }
}

/// The monomial map induced by witness data, without checking the
/// hypotheses. Fails only when an image falls outside the target basis.
pub fn induced_map(
    p: &FlagPresentation,
    p2: &FlagPresentation,
    a: &GradedAlgebra,
    a2: &GradedAlgebra,
    data: &WitnessData,
) -> Result<MonomialMap> {
    let group = p.group();
    let n = p.n();
    if data.sigma.len() != n || data.h.len() != n || data.scale.len() != n || !is_permutation(&data.sigma) {
        return Err(Error::InvalidWitness("malformed witness vectors".into()));
    }
    let order = lcm(
        lcm(data.mu.order(), p.division().root_order()),
        p2.division().root_order(),
    );
    let mu = data.mu.lifted(order);
    let scale: Vec<u64> = data
        .scale
        .iter()
        .map(|&s| lift(s % data.mu.order(), data.mu.order(), order))
        .collect();
    let d2 = p2.division();
    let sigma2 = |x: GroupElem, y: GroupElem| lift(d2.sigma(x, y).exp(), d2.root_order(), order);
    let g = data.shift;
    let pi = invert_perm(&data.sigma);
    let k: Vec<GroupElem> = data.h.iter().map(|&h| group.conj(group.inv(h), g)).collect();

    let mut images = Vec::with_capacity(a.dim());
    for basis in a.basis() {
        let (i, j, c) = (basis.row, basis.col, basis.h);
        let cg = group.conj(c, g);
        let b = group.mul(group.mul(k[i], cg), group.inv(k[j]));
        let target = BasisElem {
            row: pi[i],
            col: pi[j],
            h: b,
        };
        let Some(t) = a2.index_of(&target) else {
            return Err(Error::InvalidWitness(format!(
                "image of {} is not a basis element",
                a.label(images.len())
            )));
        };
        let exp = (mu.value(c) + sigma2(k[i], cg) + 2 * order - sigma2(b, k[j]) + scale[i] + order - scale[j]) % order;
        images.push((t, exp));
    }
    Ok(MonomialMap {
        images,
        root_order: order,
    })
}

/// Outcome of checking a monomial map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessReport {
    pub bijective: bool,
    pub degree_failures: usize,
    pub product_failures: usize,
    pub pairs_checked: usize,
    /// Up to a handful of human-readable failure descriptions.
    pub examples: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.degree_failures == 0 && self.product_failures == 0
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bijective: {}, degree failures: {}, product failures: {} ({} pairs checked)",
            self.bijective, self.degree_failures, self.product_failures, self.pairs_checked
        )
    }
}

const MAX_EXAMPLES: usize = 8;

/// Check that `map` is a degree-preserving algebra isomorphism `A → A'`.
pub fn verify_map(a: &GradedAlgebra, a2: &GradedAlgebra, map: &MonomialMap) -> WitnessReport {
    let mut report = WitnessReport::default();
    let note = |report: &mut WitnessReport, msg: String| {
        if report.examples.len() < MAX_EXAMPLES {
            report.examples.push(msg);
        }
    };
    if a.group() != a2.group() {
        note(&mut report, "algebras are graded by different groups".into());
        return report;
    }
    if map.images.len() != a.dim() || a.dim() != a2.dim() || map.root_order == 0 {
        note(
            &mut report,
            format!("map covers {} of {} basis elements", map.images.len(), a.dim()),
        );
        return report;
    }
    let mut hit = vec![false; a2.dim()];
    report.bijective = map
        .images
        .iter()
        .all(|&(t, _)| t < hit.len() && !std::mem::replace(&mut hit[t], true));
    if !report.bijective {
        note(&mut report, "map is not a bijection of bases".into());
        return report;
    }
    let group = a.group();
    for (x, &(t, _)) in map.images.iter().enumerate() {
        if a.degree(x) != a2.degree(t) {
            report.degree_failures += 1;
            let msg = format!(
                "degree of {} is {}, image {} has degree {}",
                a.label(x),
                group.name(a.degree(x)),
                a2.label(t),
                group.name(a2.degree(t))
            );
            note(&mut report, msg);
        }
    }
    let order = lcm(lcm(map.root_order, a.root_order()), a2.root_order());
    let up = |e: u64, from: u64| lift(e % from, from, order);
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            report.pairs_checked += 1;
            let (tx, ex) = map.images[x];
            let (ty, ey) = map.images[y];
            let image_product = a2.product(tx, ty);
            let ok = match (a.product(x, y), image_product) {
                (None, None) => true,
                (Some((z, s)), Some((t, s2))) => {
                    let (tz, ez) = map.images[z];
                    let left = up(ex, map.root_order) + up(ey, map.root_order) + up(s2.exp(), s2.order());
                    let right = up(s.exp(), s.order()) + up(ez, map.root_order);
                    tz == t && left % order == right % order
                }
                _ => false,
            };
            if !ok {
                report.product_failures += 1;
                note(
                    &mut report,
                    format!("product of {} and {} is not preserved", a.label(x), a.label(y)),
                );
            }
        }
    }
    report
}

pub fn verify_witness(a: &GradedAlgebra, a2: &GradedAlgebra, w: &IsoWitness) -> WitnessReport {
    verify_map(a, a2, &w.map)
}

/// `id`-data for `P → P`.
pub fn identity_data(p: &FlagPresentation) -> WitnessData {
    let e = p.group().identity();
    WitnessData {
        shift: e,
        sigma: (0..p.n()).collect(),
        h: vec![e; p.n()],
        mu: Corrector::identity(p.division().support()),
        scale: vec![0; p.n()],
    }
}

/// Data of the inverse isomorphism `P' → P`.
pub fn inverse_data(p: &FlagPresentation, p2: &FlagPresentation, w: &IsoWitness) -> WitnessData {
    let group = p.group();
    let order = lcm(
        w.root_order(),
        lcm(p.division().root_order(), p2.division().root_order()),
    );
    let mu = w.mu.lifted(order);
    let scale: Vec<u64> = w.scale.iter().map(|&s| lift(s, w.root_order(), order)).collect();
    let d = p.division();
    let sigma = |x: GroupElem, y: GroupElem| lift(d.sigma(x, y).exp(), d.root_order(), order);
    let g = w.shift;
    let g_inv = group.inv(g);
    let pi = w.pi();
    let n = p.n();

    let mut h2 = vec![group.identity(); n];
    let mut scale2 = vec![0; n];
    for j in 0..n {
        let hj = w.h[j];
        let hj_inv = group.inv(hj);
        h2[pi[j]] = group.conj(hj_inv, g);
        scale2[pi[j]] = (2 * order - scale[j] + mu.value(hj_inv) - sigma(hj, hj_inv)) % order;
    }
    let target_support = p2.division().support();
    let mu2 = target_support
        .members()
        .iter()
        .map(|&y| (order - mu.value(group.conj(y, g_inv))) % order)
        .collect();
    WitnessData {
        shift: g_inv,
        sigma: pi,
        h: h2,
        mu: Corrector::new(target_support.clone(), order, mu2),
        scale: scale2,
    }
}

/// Data of the composite `P → P' → P''`.
pub fn compose_data(p: &FlagPresentation, p3: &FlagPresentation, w1: &IsoWitness, w2: &IsoWitness) -> WitnessData {
    let group = p.group();
    let order = lcm(
        lcm(w1.root_order(), w2.root_order()),
        lcm(p.division().root_order(), p3.division().root_order()),
    );
    let (mu1, mu2) = (w1.mu.lifted(order), w2.mu.lifted(order));
    let up = |s: u64, from: u64| lift(s, from, order);
    let d3 = p3.division();
    let sigma3 = |x: GroupElem, y: GroupElem| lift(d3.sigma(x, y).exp(), d3.root_order(), order);
    let (g1, g2) = (w1.shift, w2.shift);
    let g = group.mul(g1, g2);
    let (pi1, pi2) = (w1.pi(), w2.pi());
    let k = |w: &IsoWitness, j: usize| group.conj(group.inv(w.h[j]), w.shift);
    let n = p.n();

    let mut pi = vec![0; n];
    let mut h = vec![group.identity(); n];
    let mut scale = vec![0; n];
    for j in 0..n {
        let mid = pi1[j];
        pi[j] = pi2[mid];
        let k1 = k(w1, j);
        let k2 = k(w2, mid);
        let k1g2 = group.conj(k1, g2);
        let kj = group.mul(k2, k1g2);
        h[j] = group.conj(group.inv(kj), group.inv(g));
        scale[j] =
            (up(w1.scale[j], w1.root_order()) + up(w2.scale[mid], w2.root_order()) + mu2.value(k1) + sigma3(k2, k1g2))
                % order;
    }
    let support = p.division().support();
    let mu = support
        .members()
        .iter()
        .map(|&c| (mu1.value(c) + mu2.value(group.conj(c, g1))) % order)
        .collect();
    WitnessData {
        shift: g,
        sigma: invert_perm(&pi),
        h,
        mu: Corrector::new(support.clone(), order, mu),
        scale,
    }
}

/// Inverse witness `P' → P`, checked and with its map attached.
pub fn invert(
    p: &FlagPresentation,
    p2: &FlagPresentation,
    a: &GradedAlgebra,
    a2: &GradedAlgebra,
    w: &IsoWitness,
) -> Result<IsoWitness> {
    build_witness(p2, p, a2, a, inverse_data(p, p2, w))
}

/// Composite witness `P → P''`, checked and with its map attached.
pub fn compose(
    p: &FlagPresentation,
    p3: &FlagPresentation,
    a: &GradedAlgebra,
    a3: &GradedAlgebra,
    w1: &IsoWitness,
    w2: &IsoWitness,
) -> Result<IsoWitness> {
    build_witness(p, p3, a, a3, compose_data(p, p3, w1, w2))
}

/// `m2 ∘ m1` as monomial maps.
pub fn compose_maps(m1: &MonomialMap, m2: &MonomialMap) -> MonomialMap {
    let order = lcm(m1.root_order, m2.root_order);
    let images = m1
        .images
        .iter()
        .map(|&(t, e)| {
            let (t2, e2) = m2.images[t];
            (
                t2,
                (lift(e, m1.root_order, order) + lift(e2, m2.root_order, order)) % order,
            )
        })
        .collect();
    MonomialMap {
        images,
        root_order: order,
    }
}

impl MonomialMap {
    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &(t, e))| t == k && e % self.root_order == 0)
    }

    /// Equality as linear maps (scalars compared as roots of unity).
    pub fn same_map(&self, other: &MonomialMap) -> bool {
        let order = lcm(self.root_order, other.root_order);
        self.images.len() == other.images.len()
            && self.images.iter().zip(&other.images).all(|(&(t, e), &(t2, e2))| {
                t == t2 && lift(e, self.root_order, order) == lift(e2, other.root_order, order)
            })
    }
}
