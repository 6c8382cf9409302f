//! Normalized 2-cocycles with values in `μ_m` and the coboundary
//! equivalence problem between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElem, Subgroup};
use crate::modlin::solve_mod;
use crate::roots::{lcm, lift};

/// A normalized 2-cocycle `σ: H × H → μ_m` on a subgroup `H` of an
/// ambient group. Values are exponents mod `m`, indexed by the positions
/// of `H`'s members in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    group: Arc<Group>,
    support: Subgroup,
    order: u64,
    values: Vec<u64>,
}

/// Scalars `μ(h)` attached to the members of a support subgroup. As a
/// division-algebra map it sends `x_h ↦ μ(h)·x'_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corrector {
    support: Subgroup,
    order: u64,
    values: Vec<u64>,
}

impl Corrector {
    pub fn new(support: Subgroup, order: u64, values: Vec<u64>) -> Corrector {
        assert_eq!(support.order(), values.len());
        let values = values.into_iter().map(|v| v % order).collect();
        Corrector { support, order, values }
    }

    pub fn identity(support: &Subgroup) -> Corrector {
        Corrector {
            support: support.clone(),
            order: 1,
            values: vec![0; support.order()],
        }
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Exponent of `μ(h)` mod [`Self::order`].
    pub fn value(&self, h: GroupElem) -> u64 {
        self.values[self.support.position(h).expect("element outside corrector support")]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn lifted(&self, to: u64) -> Corrector {
        Corrector {
            support: self.support.clone(),
            order: to,
            values: self.values.iter().map(|&v| lift(v, self.order, to)).collect(),
        }
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> Corrector {
        Corrector {
            support: self.support.clone(),
            order: self.order,
            values: self.values.iter().map(|&v| (self.order - v) % self.order).collect(),
        }
    }

    /// Pointwise product; supports must agree.
    pub fn product(&self, other: &Corrector) -> Corrector {
        assert_eq!(self.support, other.support);
        let order = lcm(self.order, other.order);
        let a = self.lifted(order);
        let b = other.lifted(order);
        Corrector {
            support: self.support.clone(),
            order,
            values: a.values.iter().zip(&b.values).map(|(x, y)| (x + y) % order).collect(),
        }
    }
}

impl Cocycle {
    /// The cocycle that is identically 1.
    pub fn trivial(group: Arc<Group>, support: Subgroup) -> Cocycle {
        let n = support.order();
        Cocycle {
            group,
            support,
            order: 1,
            values: vec![0; n * n],
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent of `σ(a, b)`; both arguments must lie in the support.
    pub fn value(&self, a: GroupElem, b: GroupElem) -> u64 {
        let i = self.support.position(a).expect("left argument outside support");
        let j = self.support.position(b).expect("right argument outside support");
        self.values[i * self.support.order() + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.values
            .chunks(self.support.order().max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Same values read in `μ_to`.
    pub fn lifted(&self, to: u64) -> Cocycle {
        Cocycle {
            group: self.group.clone(),
            support: self.support.clone(),
            order: to,
            values: self.values.iter().map(|&v| lift(v, self.order, to)).collect(),
        }
    }

    /// `σ·δμ` with `δμ(a,b) = μ(a)μ(b)μ(ab)⁻¹`. The result is again a
    /// normalized cocycle whenever `μ(e) = 1`.
    pub fn times_coboundary(&self, mu: &Corrector) -> Cocycle {
        assert_eq!(&self.support, mu.support());
        let order = lcm(self.order, mu.order());
        let base = self.lifted(order);
        let mu = mu.lifted(order);
        let members = self.support.members();
        let n = members.len();
        let mut values = vec![0; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let ab = self.group.mul(a, b);
                values[i * n + j] = (base.values[i * n + j] + mu.value(a) + mu.value(b) + order - mu.value(ab)) % order;
            }
        }
        Cocycle {
            group: self.group.clone(),
            support: self.support.clone(),
            order,
            values,
        }
    }

    /// Replace the stored order by the smallest one that still holds all
    /// values.
    pub fn reduced(&self) -> Cocycle {
        let factor = self.values.iter().fold(self.order, |g, &v| crate::roots::gcd(g, v));
        Cocycle {
            group: self.group.clone(),
            support: self.support.clone(),
            order: self.order / factor,
            values: self.values.iter().map(|&v| v / factor).collect(),
        }
    }
}

/// First triple `(a, b, c)` where the cocycle identity
/// `σ(a,b)σ(ab,c) = σ(b,c)σ(a,bc)` fails, if any.
fn first_cocycle_failure(
    group: &Group,
    support: &Subgroup,
    order: u64,
    values: &[u64],
) -> Option<(GroupElem, GroupElem, GroupElem)> {
    let n = support.order();
    let at = |a: GroupElem, b: GroupElem| values[support.position(a).unwrap() * n + support.position(b).unwrap()];
    for &a in support.members() {
        for &b in support.members() {
            let ab = group.mul(a, b);
            for &c in support.members() {
                let bc = group.mul(b, c);
                if (at(a, b) + at(ab, c)) % order != (at(b, c) + at(a, bc)) % order {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Validate a table of exponents as a normalized 2-cocycle on `support`.
pub fn validate_cocycle(group: Arc<Group>, support: Subgroup, order: u64, values: Vec<Vec<u64>>) -> Result<Cocycle> {
    if order == 0 {
        return Err(Error::InvalidCocycle("root order must be positive".into()));
    }
    let n = support.order();
    if values.len() != n || values.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidCocycle(format!("value table must be {n}×{n}")));
    }
    if let Some(v) = values.iter().flatten().find(|&&v| v >= order) {
        return Err(Error::InvalidCocycle(format!("exponent {v} not reduced mod {order}")));
    }
    let flat: Vec<u64> = values.into_iter().flatten().collect();
    let e = group.identity();
    let e_pos = support.position(e).expect("subgroups contain the identity");
    for (k, &h) in support.members().iter().enumerate() {
        if flat[e_pos * n + k] != 0 || flat[k * n + e_pos] != 0 {
            return Err(Error::InvalidCocycle(format!(
                "not normalized at {}: σ(e,h) and σ(h,e) must be 1",
                group.name(h)
            )));
        }
    }
    if let Some((a, b, c)) = first_cocycle_failure(&group, &support, order, &flat) {
        return Err(Error::InvalidCocycle(format!(
            "cocycle identity fails at ({}, {}, {})",
            group.name(a),
            group.name(b),
            group.name(c)
        )));
    }
    Ok(Cocycle {
        group,
        support,
        order,
        values: flat,
    })
}

fn check_same_support(sigma: &Cocycle, tau: &Cocycle) -> Result<()> {
    if sigma.group != tau.group {
        return Err(Error::SupportMismatch("cocycles live in different groups".into()));
    }
    if sigma.support != tau.support {
        return Err(Error::SupportMismatch("cocycles have different supports".into()));
    }
    Ok(())
}

/// Decide whether `σ` and `τ` differ by the coboundary of a `μ_m`-valued
/// corrector, `m = lcm(m_σ, m_τ)`.
///
/// The returned `μ` satisfies `σ(a,b)·μ(ab) = μ(a)·μ(b)·τ(a,b)` for all
/// pairs, i.e. `x_a ↦ μ(a)·x'_a` is an isomorphism `K^σ[H] → K^τ[H]`.
pub fn cohomologous(sigma: &Cocycle, tau: &Cocycle) -> Result<Option<Corrector>> {
    cohomologous_mod(sigma, tau, lcm(sigma.order, tau.order))
}

/// [`cohomologous`] with correctors drawn from `μ_modulus`, where
/// `modulus` is a common multiple of both cocycle orders.
pub fn cohomologous_mod(sigma: &Cocycle, tau: &Cocycle, modulus: u64) -> Result<Option<Corrector>> {
    check_same_support(sigma, tau)?;
    if !modulus.is_multiple_of(sigma.order) || !modulus.is_multiple_of(tau.order) {
        return Err(Error::InvalidInput(format!(
            "modulus {modulus} is not a multiple of the cocycle orders {} and {}",
            sigma.order, tau.order
        )));
    }
    let group = &sigma.group;
    let support = &sigma.support;
    let e = group.identity();
    // Unknowns: u(h) for h ≠ e; u(e) = 0 is forced by normalization.
    let unknowns: Vec<GroupElem> = support.members().iter().copied().filter(|&h| h != e).collect();
    let column = |h: GroupElem| unknowns.iter().position(|&x| x == h);
    let s = sigma.lifted(modulus);
    let t = tau.lifted(modulus);

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &a in &unknowns {
        for &b in &unknowns {
            let mut row = vec![0i64; unknowns.len()];
            row[column(a).unwrap()] += 1;
            row[column(b).unwrap()] += 1;
            if let Some(c) = column(group.mul(a, b)) {
                row[c] -= 1;
            }
            rows.push(row);
            rhs.push(s.value(a, b) as i64 - t.value(a, b) as i64);
        }
    }
    let Some(solution) = solve_mod(&rows, &rhs, modulus) else {
        return Ok(None);
    };
    let values = support
        .members()
        .iter()
        .map(|&h| column(h).map_or(0, |c| solution[c]))
        .collect();
    let mu = Corrector::new(support.clone(), modulus, values);
    debug_assert!(satisfies_relation(sigma, tau, &mu));
    Ok(Some(mu))
}

/// Check `σ(a,b)·μ(ab) = μ(a)·μ(b)·τ(a,b)` on every pair.
pub fn satisfies_relation(sigma: &Cocycle, tau: &Cocycle, mu: &Corrector) -> bool {
    if sigma.support != tau.support || &sigma.support != mu.support() {
        return false;
    }
    let m = lcm(lcm(sigma.order, tau.order), mu.order());
    let (s, t, u) = (sigma.lifted(m), tau.lifted(m), mu.lifted(m));
    let g = &sigma.group;
    sigma.support.members().iter().all(|&a| {
        sigma
            .support
            .members()
            .iter()
            .all(|&b| (s.value(a, b) + u.value(g.mul(a, b))) % m == (u.value(a) + u.value(b) + t.value(a, b)) % m)
    })
}

/// Transport `σ` along an isomorphism `α` from its support onto a
/// subgroup of `target`: `σ'(α(a), α(b)) = σ(a, b)`.
///
/// `images[k]` is the image of the `k`-th support member.
pub fn transport(sigma: &Cocycle, target: Arc<Group>, images: &[GroupElem]) -> Result<Cocycle> {
    let members = sigma.support.members();
    if images.len() != members.len() {
        return Err(Error::InvalidInput("transport map must cover the support".into()));
    }
    if images.iter().any(|x| x.0 >= target.order()) {
        return Err(Error::InvalidInput("transport image outside the target group".into()));
    }
    let image_support = Subgroup::from_members(&target, images)
        .map_err(|e| Error::InvalidInput(format!("transport map is not onto a subgroup: {e}")))?;
    let src = &sigma.group;
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            let ab = sigma.support.position(src.mul(a, b)).unwrap();
            if images[ab] != target.mul(images[i], images[j]) {
                return Err(Error::InvalidInput("transport map is not a homomorphism".into()));
            }
        }
    }
    let n = members.len();
    let mut values = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let pi = image_support.position(images[i]).unwrap();
            let pj = image_support.position(images[j]).unwrap();
            values[pi * n + pj] = sigma.values[i * n + j];
        }
    }
    Ok(Cocycle {
        group: target,
        support: image_support,
        order: sigma.order,
        values,
    })
}
