//! Random and exhaustive generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use flagiso::cocycle::{validate_cocycle, Cocycle, Corrector};
use flagiso::division::DivisionAlgebra;
use flagiso::flag::FlagPresentation;
use flagiso::group::{all_subgroups, build_abelian, find_isomorphisms, validate_table, Group, GroupElem, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn abelian(factors: &[usize]) -> Arc<Group> {
    Arc::new(build_abelian(factors).unwrap())
}

/// Dihedral group of order 8, `r^i s^j` at index `2i + j`.
pub fn dihedral8() -> Group {
    let idx = |i: usize, j: usize| 2 * (i % 4) + j;
    let mut table = vec![vec![0; 8]; 8];
    for i1 in 0..4 {
        for j1 in 0..2 {
            for i2 in 0..4 {
                for j2 in 0..2 {
                    // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
                    let i = if j1 == 0 { i1 + i2 } else { i1 + 4 - i2 };
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                }
            }
        }
    }
    let names = (0..8)
        .map(|k| match (k / 2, k % 2) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r{i}"),
            (0, 1) => "s".to_string(),
            (i, _) => format!("r{i}s"),
        })
        .collect();
    validate_table(names, table).unwrap()
}

/// Every group of order at most 8 used by the randomized suites.
pub fn small_groups() -> Vec<Arc<Group>> {
    let mut groups: Vec<Arc<Group>> = [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![2, 4],
        vec![8],
        vec![2, 2, 2],
        vec![7],
    ]
    .iter()
    .map(|f| abelian(f))
    .collect();
    groups.push(Arc::new(Group::symmetric(3).unwrap()));
    groups.push(Arc::new(dihedral8()));
    groups
}

const ABELIAN_TYPES: &[&[usize]] = &[&[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[2, 4], &[8], &[2, 2, 2]];

/// An isomorphism `A → H` from a product of cyclic groups onto the
/// subgroup `H`, if `H` is abelian: `(A, images of A's elements in the ambient group)`.
pub fn abelian_model(group: &Group, h: &Subgroup) -> Option<(Group, Vec<GroupElem>)> {
    let (hg, emb) = h.as_group(group);
    if !hg.is_abelian() {
        return None;
    }
    if hg.order() == 1 {
        return Some((Group::cyclic(1).ok()?, vec![group.identity()]));
    }
    for f in ABELIAN_TYPES
        .iter()
        .filter(|f| f.iter().product::<usize>() == hg.order())
    {
        let a = build_abelian(f).unwrap();
        if let Some(iso) = find_isomorphisms(&a, &hg, Some(1)).unwrap().into_iter().next() {
            let images = iso.iter().map(|x| emb[x.0]).collect();
            return Some((a, images));
        }
    }
    None
}

/// A random bicharacter on `H` (when abelian) times a random coboundary.
pub fn random_cocycle(group: &Arc<Group>, h: &Subgroup, rng: &mut impl Rng) -> Cocycle {
    let n = h.order();
    let mut base = Cocycle::trivial(group.clone(), h.clone());
    if let Some((a, images)) = abelian_model(group, h) {
        if a.order() > 1 {
            let factors = a.abelian_factors().unwrap().to_vec();
            let m = factors.iter().fold(1u64, |acc, &f| flagiso::roots::lcm(acc, f as u64));
            let k = factors.len();
            let c: Vec<Vec<u64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..m)).collect()).collect();
            let coords: Vec<Vec<usize>> = a.elements().map(|x| a.abelian_coords(x).unwrap()).collect();
            let mut values = vec![vec![0u64; n]; n];
            for (x, cx) in coords.iter().enumerate() {
                for (y, cy) in coords.iter().enumerate() {
                    let mut e = 0u64;
                    for p in 0..k {
                        for q in 0..k {
                            let g = flagiso::roots::gcd(factors[p] as u64, factors[q] as u64);
                            e += c[p][q] * (m / g) * (cx[p] as u64) * (cy[q] as u64);
                        }
                    }
                    let (i, j) = (h.position(images[x]).unwrap(), h.position(images[y]).unwrap());
                    values[i][j] = e % m;
                }
            }
            base = validate_cocycle(group.clone(), h.clone(), m, values).unwrap();
        }
    }
    let order = base.order().max(1) * [1, 2][rng.gen_range(0..2)];
    base.times_coboundary(&random_corrector(group, h, order, rng))
}

pub fn random_corrector(group: &Group, h: &Subgroup, order: u64, rng: &mut impl Rng) -> Corrector {
    let values = h
        .members()
        .iter()
        .map(|&x| {
            if x == group.identity() {
                0
            } else {
                rng.gen_range(0..order)
            }
        })
        .collect();
    Corrector::new(h.clone(), order, values)
}

/// Commuting pairs of distinct involutions, i.e. embeddings of `Z_2 × Z_2`.
pub fn klein_pairs(group: &Group) -> Vec<(GroupElem, GroupElem)> {
    let inv: Vec<GroupElem> = group.elements().filter(|&x| group.elem_order(x) == 2).collect();
    let mut out = Vec::new();
    for &u in &inv {
        for &v in &inv {
            if u < v && group.mul(u, v) == group.mul(v, u) {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn random_division(group: &Arc<Group>, rng: &mut impl Rng) -> DivisionAlgebra {
    match rng.gen_range(0..3) {
        0 => DivisionAlgebra::trivial(group.clone()),
        1 => {
            let pairs = klein_pairs(group);
            if let Some(&(u, v)) = pairs.choose(rng) {
                DivisionAlgebra::pauli(2, group.clone(), u, v).unwrap()
            } else {
                DivisionAlgebra::trivial(group.clone())
            }
        }
        _ => {
            let subs = all_subgroups(group).unwrap();
            let h = subs.choose(rng).unwrap().clone();
            DivisionAlgebra::twisted(random_cocycle(group, &h, rng))
        }
    }
}

pub fn random_blocks(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let m = rng.gen_range(1..=left);
        blocks.push(m);
        left -= m;
    }
    blocks
}

pub fn random_tuple(group: &Group, n: usize, rng: &mut impl Rng) -> Vec<GroupElem> {
    (0..n).map(|_| GroupElem(rng.gen_range(0..group.order()))).collect()
}

/// A random presentation over a random group of order at most 8 with
/// `n ≤ max_n`.
pub fn random_presentation(rng: &mut impl Rng, max_n: usize) -> FlagPresentation {
    let groups = small_groups();
    let group = groups.choose(rng).unwrap().clone();
    random_presentation_over(&group, rng, max_n)
}

pub fn random_presentation_over(group: &Arc<Group>, rng: &mut impl Rng, max_n: usize) -> FlagPresentation {
    let d = random_division(group, rng);
    let n = rng.gen_range(1..=max_n);
    let blocks = random_blocks(n, rng);
    FlagPresentation::new(d, blocks, random_tuple(group, n, rng)).unwrap()
}

/// Random block-preserving permutation `π` of positions.
pub fn random_block_perm(p: &FlagPresentation, rng: &mut impl Rng) -> Vec<usize> {
    let mut pi: Vec<usize> = (0..p.n()).collect();
    for k in 0..p.flag_len() {
        pi[p.shape().block_range(k)].shuffle(rng);
    }
    pi
}

/// A random transformation of `p`: shift `g`, block permutation, coset
/// correctors and a coboundary on the division part. The result is
/// isomorphic to `p` by construction.
pub fn random_transform(p: &FlagPresentation, rng: &mut impl Rng) -> FlagPresentation {
    let group = p.group().clone();
    let g = GroupElem(rng.gen_range(0..group.order()));
    let shifted = p.division().shift_conjugate(g);
    let order = shifted.root_order().max(1) * [1, 2][rng.gen_range(0..2)];
    let mu = random_corrector(&group, shifted.support(), order, rng);
    let d = DivisionAlgebra::twisted(shifted.cocycle().times_coboundary(&mu));
    let support = p.division().support().members();
    let pi = random_block_perm(p, rng);
    let mut tuple = vec![group.identity(); p.n()];
    for j in 0..p.n() {
        let h = *support.choose(rng).unwrap();
        tuple[pi[j]] = group.mul(group.mul(p.tuple()[j], h), g);
    }
    FlagPresentation::new(d, p.shape().blocks().to_vec(), tuple).unwrap()
}

/// All elementary presentations over `group` with the given blocks.
pub fn all_elementary(group: &Arc<Group>, blocks: &[usize]) -> Vec<FlagPresentation> {
    let n: usize = blocks.iter().sum();
    let total = group.order().pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut t = vec![GroupElem(0); n];
            for slot in t.iter_mut().rev() {
                *slot = GroupElem(idx % group.order());
                idx /= group.order();
            }
            FlagPresentation::new(DivisionAlgebra::trivial(group.clone()), blocks.to_vec(), t).unwrap()
        })
        .collect()
}

/// The elementary families used by the exhaustive suites.
pub fn elementary_family() -> Vec<FlagPresentation> {
    let mut out = Vec::new();
    for f in [&[2][..], &[3], &[4], &[2, 2]] {
        let g = abelian(f);
        for blocks in [&[1, 1][..], &[2]] {
            out.extend(all_elementary(&g, blocks));
        }
    }
    out
}

/// Orbits by breadth-first closure under single moves: right shift by a
/// stabilizing `g`, right multiplication of one position by `h ∈ H`, and
/// swapping two positions in one block. Independent of canonical forms.
pub fn brute_force_orbits(d: &DivisionAlgebra, blocks: &[usize]) -> Vec<BTreeSet<Vec<usize>>> {
    let group = d.group();
    let n: usize = blocks.iter().sum();
    let stab: Vec<GroupElem> = group
        .elements()
        .filter(|&g| flagiso::division::iso_division(&d.shift_conjugate(g), d).is_some())
        .collect();
    let mut block_of = Vec::new();
    for (k, &m) in blocks.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(k, m));
    }
    let total = group.order().pow(n as u32);
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * group.order() + x);
    let mut seen = vec![false; total];
    let mut orbits = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let mut t = vec![0; n];
        let mut idx = start;
        for slot in t.iter_mut().rev() {
            *slot = idx % group.order();
            idx /= group.order();
        }
        let mut orbit = BTreeSet::new();
        let mut queue = VecDeque::from([t]);
        seen[start] = true;
        while let Some(t) = queue.pop_front() {
            let mut next = Vec::new();
            for &g in &stab {
                next.push(t.iter().map(|&x| group.mul(GroupElem(x), g).0).collect::<Vec<_>>());
            }
            for i in 0..n {
                for &h in d.support().members() {
                    let mut u = t.clone();
                    u[i] = group.mul(GroupElem(t[i]), h).0;
                    next.push(u);
                }
                for j in i + 1..n {
                    if block_of[i] == block_of[j] {
                        let mut u = t.clone();
                        u.swap(i, j);
                        next.push(u);
                    }
                }
            }
            for u in next {
                let code = encode(&u);
                if !seen[code] {
                    seen[code] = true;
                    queue.push_back(u);
                }
            }
            orbit.insert(t);
        }
        orbits.push(orbit);
    }
    orbits
}

/// All normalized `μ_m`-valued 2-cocycles on the whole of `group`.
pub fn all_cocycles(group: &Arc<Group>, m: u64) -> Vec<Cocycle> {
    let n = group.order();
    let h = Subgroup::whole(group);
    let e = h.position(group.identity()).unwrap();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != e && j != e)
        .collect();
    let count = m.pow(free.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..count {
        let mut values = vec![vec![0; n]; n];
        for &(i, j) in &free {
            values[i][j] = code % m;
            code /= m;
        }
        if let Ok(c) = validate_cocycle(group.clone(), h.clone(), m, values) {
            out.push(c);
        }
    }
    out
}

/// Every normalized corrector `H → μ_m`.
pub fn all_correctors(group: &Group, h: &Subgroup, m: u64) -> Vec<Corrector> {
    let n = h.order();
    let e = h.position(group.identity()).unwrap();
    let count = m.pow(n as u32 - 1);
    (0..count)
        .map(|mut code| {
            let values = (0..n)
                .map(|i| {
                    if i == e {
                        0
                    } else {
                        let v = code % m;
                        code /= m;
                        v
                    }
                })
                .collect();
            Corrector::new(h.clone(), m, values)
        })
        .collect()
}

/// `σ(a,b)μ(ab) = μ(a)μ(b)τ(a,b)` checked directly from the definition.
pub fn relation_holds(sigma: &Cocycle, tau: &Cocycle, mu: &Corrector) -> bool {
    let group = sigma.group();
    let m = flagiso::roots::lcm(flagiso::roots::lcm(sigma.order(), tau.order()), mu.order());
    let up = |v: u64, from: u64| v * (m / from);
    sigma.support().members().iter().all(|&a| {
        sigma.support().members().iter().all(|&b| {
            let ab = group.mul(a, b);
            (up(sigma.value(a, b), sigma.order()) + up(mu.value(ab), mu.order())) % m
                == (up(mu.value(a), mu.order()) + up(mu.value(b), mu.order()) + up(tau.value(a, b), tau.order())) % m
        })
    })
}
