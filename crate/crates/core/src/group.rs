//! Finite groups given by explicit Cayley tables.
//!
//! Every degree computation in the crate reduces to table lookups here.
//! Elements are plain indices into the owning table; index order is the
//! canonical order used for coset representatives and canonical forms.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest group for which [`all_subgroups`] will run.
pub const SUBGROUP_ENUMERATION_CAP: usize = 24;
/// Largest group order accepted by [`find_isomorphisms`].
pub const ISOMORPHISM_SEARCH_CAP: usize = 16;

/// An element of a finite group, identified by its row in the Cayley table.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(pub usize);

impl GroupElem {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite group stored as a validated Cayley table.
#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
    name_index: HashMap<String, usize>,
    factors: Option<Vec<usize>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.identity == other.identity
            && self.table == other.table
            && self.names == other.names
    }
}

impl Eq for Group {}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem(self.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order).map(GroupElem)
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem(self.table[a.0 * self.order + b.0])
    }

    #[inline]
    pub fn inv(&self, a: GroupElem) -> GroupElem {
        GroupElem(self.inverses[a.0])
    }

    /// `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: GroupElem, g: GroupElem) -> GroupElem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: GroupElem, k: usize) -> GroupElem {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn elem_order(&self, a: GroupElem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        self.elements()
            .map(|g| self.elem_order(g) as u64)
            .fold(1, crate::roots::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: GroupElem) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolve an element by display name (case-sensitive).
    pub fn by_name(&self, name: &str) -> Result<GroupElem> {
        self.name_index
            .get(name)
            .map(|&i| GroupElem(i))
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn elem(&self, index: usize) -> Result<GroupElem> {
        if index < self.order {
            Ok(GroupElem(index))
        } else {
            Err(Error::InvalidInput(format!(
                "element index {index} out of range for group of order {}",
                self.order
            )))
        }
    }

    /// Cyclic factor orders when the group came from [`build_abelian`].
    pub fn abelian_factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    /// Coordinates of `a` in the product of cyclic factors, for groups
    /// built by [`build_abelian`].
    pub fn abelian_coords(&self, a: GroupElem) -> Option<Vec<usize>> {
        let factors = self.factors.as_ref()?;
        let mut rest = a.0;
        let mut coords = vec![0; factors.len()];
        for (k, &f) in factors.iter().enumerate().rev() {
            coords[k] = rest % f;
            rest /= f;
        }
        Some(coords)
    }

    /// The table as rows of element indices.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        build_abelian(&[n])
    }

    /// Symmetric group on `n ≤ 5` points, composition `(ab)(x) = a(b(x))`.
    /// Elements are listed in lexicographic order of their images, so the
    /// identity comes first; names use cycle notation.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidInput(format!(
                "symmetric group degree must be in 1..=5, got {n}"
            )));
        }
        let perms = permutations(n);
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index[&ab]
                    })
                    .collect()
            })
            .collect();
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        validate_table(names, table)
    }

    fn from_parts(names: Vec<String>, table: Vec<usize>, identity: usize, factors: Option<Vec<usize>>) -> Group {
        let order = names.len();
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == identity)
                .expect("Latin rows contain the identity");
        }
        let name_index = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        Group {
            order,
            table,
            identity,
            inverses,
            names,
            name_index,
            factors,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.factors {
            Some(fs) => {
                let parts: Vec<String> = fs.iter().map(|n| format!("Z_{n}")).collect();
                write!(f, "{}", parts.join("×"))
            }
            None => write!(f, "group of order {}", self.order),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Direct product of cyclic groups `Z_{f1} × ⋯ × Z_{fk}` with
/// componentwise addition. Indices are mixed-radix with the first factor
/// most significant; names look like `(1,0)`.
pub fn build_abelian(factors: &[usize]) -> Result<Group> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("abelian group needs at least one factor".into()));
    }
    if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
        return Err(Error::InvalidInput(format!(
            "cyclic factor must be at least 2, got {bad}"
        )));
    }
    let order: usize = factors.iter().product();
    let decode = |mut i: usize| {
        let mut c = vec![0; factors.len()];
        for k in (0..factors.len()).rev() {
            c[k] = i % factors[k];
            i /= factors[k];
        }
        c
    };
    let encode = |c: &[usize]| c.iter().zip(factors).fold(0, |acc, (&x, &f)| acc * f + x);
    let coords: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &coords {
        for b in &coords {
            let sum: Vec<usize> = a.iter().zip(b).zip(factors).map(|((x, y), f)| (x + y) % f).collect();
            table.push(encode(&sum));
        }
    }
    let names = coords
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Group::from_parts(names, table, 0, Some(factors.to_vec())))
}

/// Validate a Cayley table and build the group. Empty `names` get
/// default names `g0, g1, …`.
pub fn validate_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Group> {
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty Cayley table".into()));
    }
    if let Some((r, row)) = table.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::InvalidInput(format!(
            "table row {r} has {} entries, expected {n}",
            row.len()
        )));
    }
    let names = if names.is_empty() {
        (0..n).map(|i| format!("g{i}")).collect()
    } else {
        names
    };
    if names.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: names.len(),
        });
    }
    let distinct: BTreeSet<&String> = names.iter().collect();
    if distinct.len() != n {
        return Err(Error::InvalidInput("element names must be distinct".into()));
    }
    for (r, row) in table.iter().enumerate() {
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!("entry {x} in row {r} is out of range")));
        }
    }
    for (r, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &x in row {
            if seen[x] {
                return Err(Error::NotLatin(format!("row {r} repeats entry {x}")));
            }
            seen[x] = true;
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in &table {
            let x = row[c];
            if seen[x] {
                return Err(Error::NotLatin(format!("column {c} repeats entry {x}")));
            }
            seen[x] = true;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(Error::NoIdentity)?;
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(Error::NotAssociative {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        c: names[c].clone(),
                    });
                }
            }
        }
    }
    let flat = table.into_iter().flatten().collect();
    Ok(Group::from_parts(names, flat, identity, None))
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<GroupElem>,
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup {
            members: vec![group.identity()],
        }
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup {
            members: group.elements().collect(),
        }
    }

    /// Check closure and build a subgroup from an explicit member list.
    pub fn from_members(group: &Group, members: &[GroupElem]) -> Result<Subgroup> {
        let set: BTreeSet<GroupElem> = members.iter().copied().collect();
        if set.len() != members.len() {
            return Err(Error::InvalidInput("subgroup members repeat".into()));
        }
        if let Some(x) = set.iter().find(|x| x.0 >= group.order()) {
            return Err(Error::InvalidInput(format!("element index {} out of range", x.0)));
        }
        if !set.contains(&group.identity()) {
            return Err(Error::InvalidInput("subgroup must contain the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::InvalidInput(format!(
                        "not closed: {} * {} = {} is missing",
                        group.name(a),
                        group.name(b),
                        group.name(group.mul(a, b))
                    )));
                }
            }
        }
        Ok(Subgroup {
            members: set.into_iter().collect(),
        })
    }

    pub fn members(&self) -> &[GroupElem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: GroupElem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Position of `a` in the sorted member list.
    pub fn position(&self, a: GroupElem) -> Option<usize> {
        self.members.binary_search(&a).ok()
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, group: &Group, g: GroupElem) -> Subgroup {
        let mut members: Vec<GroupElem> = self.members.iter().map(|&h| group.conj(h, g)).collect();
        members.sort();
        Subgroup { members }
    }

    /// The subgroup as a standalone group, together with the embedding
    /// (entry `k` is the ambient element for index `k`).
    pub fn as_group(&self, group: &Group) -> (Group, Vec<GroupElem>) {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                table.push(self.position(group.mul(a, b)).expect("closed"));
            }
        }
        let names = self.members.iter().map(|&h| group.name(h).to_string()).collect();
        let identity = self.position(group.identity()).expect("contains identity");
        (Group::from_parts(names, table, identity, None), self.members.clone())
    }
}

/// Smallest subgroup containing `seed`.
pub fn subgroup_closure(group: &Group, seed: &[GroupElem]) -> Subgroup {
    let mut inside = vec![false; group.order()];
    inside[group.identity().0] = true;
    let mut queue: VecDeque<GroupElem> = VecDeque::from([group.identity()]);
    let gens: Vec<GroupElem> = seed.to_vec();
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = group.mul(x, s);
            if !inside[y.0] {
                inside[y.0] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup {
        members: group.elements().filter(|g| inside[g.0]).collect(),
    }
}

/// The left coset `gH`, sorted.
pub fn left_coset(group: &Group, g: GroupElem, h: &Subgroup) -> Vec<GroupElem> {
    let mut coset: Vec<GroupElem> = h.members().iter().map(|&x| group.mul(g, x)).collect();
    coset.sort();
    coset
}

/// Canonical representative of `gH`: its smallest element index.
pub fn coset_rep(group: &Group, g: GroupElem, h: &Subgroup) -> GroupElem {
    h.members()
        .iter()
        .map(|&x| group.mul(g, x))
        .min()
        .expect("subgroups are nonempty")
}

/// Every subgroup of `group`, sorted by order and then members.
pub fn all_subgroups(group: &Group) -> Result<Vec<Subgroup>> {
    if group.order() > SUBGROUP_ENUMERATION_CAP {
        return Err(Error::SizeCap {
            what: "subgroup enumeration",
            size: group.order(),
            cap: SUBGROUP_ENUMERATION_CAP,
        });
    }
    let cyclic: BTreeSet<Subgroup> = group.elements().map(|g| subgroup_closure(group, &[g])).collect();
    let mut found: BTreeSet<Subgroup> = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            let mut seed = s.members.clone();
            seed.extend_from_slice(&c.members);
            let joined = subgroup_closure(group, &seed);
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// True when `images[a]` defines a homomorphism `source → target`.
pub fn is_homomorphism(source: &Group, target: &Group, images: &[GroupElem]) -> bool {
    images.len() == source.order()
        && source.elements().all(|a| {
            source
                .elements()
                .all(|b| images[source.mul(a, b).0] == target.mul(images[a.0], images[b.0]))
        })
}

/// Group isomorphisms `h1 → h2` by generator-image backtracking.
///
/// Each result lists the image of every element of `h1` in index order.
/// At most `limit` isomorphisms are returned when a limit is given.
pub fn find_isomorphisms(h1: &Group, h2: &Group, limit: Option<usize>) -> Result<Vec<Vec<GroupElem>>> {
    for g in [h1, h2] {
        if g.order() > ISOMORPHISM_SEARCH_CAP {
            return Err(Error::SizeCap {
                what: "isomorphism search",
                size: g.order(),
                cap: ISOMORPHISM_SEARCH_CAP,
            });
        }
    }
    if h1.order() != h2.order() {
        return Ok(Vec::new());
    }
    let mut orders1: Vec<usize> = h1.elements().map(|g| h1.elem_order(g)).collect();
    let mut orders2: Vec<usize> = h2.elements().map(|g| h2.elem_order(g)).collect();
    orders1.sort();
    orders2.sort();
    if orders1 != orders2 {
        return Ok(Vec::new());
    }

    // Greedy generating set and a spanning tree of words over it.
    let mut gens = Vec::new();
    let mut span = subgroup_closure(h1, &[]);
    for g in h1.elements() {
        if !span.contains(g) {
            gens.push(g);
            span = subgroup_closure(h1, &gens);
        }
    }
    let mut parent: Vec<Option<(GroupElem, usize)>> = vec![None; h1.order()];
    let mut bfs = vec![h1.identity()];
    let mut reached = vec![false; h1.order()];
    reached[h1.identity().0] = true;
    let mut i = 0;
    while i < bfs.len() {
        let x = bfs[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = h1.mul(x, s);
            if !reached[y.0] {
                reached[y.0] = true;
                parent[y.0] = Some((x, k));
                bfs.push(y);
            }
        }
        i += 1;
    }

    let mut results = Vec::new();
    let mut choice = vec![GroupElem(0); gens.len()];
    search_gen_images(h1, h2, &gens, &parent, &bfs, 0, &mut choice, &mut results, limit);
    Ok(results)
}

#[allow(clippy::too_many_arguments)]
fn search_gen_images(
    h1: &Group,
    h2: &Group,
    gens: &[GroupElem],
    parent: &[Option<(GroupElem, usize)>],
    bfs: &[GroupElem],
    depth: usize,
    choice: &mut Vec<GroupElem>,
    results: &mut Vec<Vec<GroupElem>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| results.len() >= l) {
        return;
    }
    if depth == gens.len() {
        let mut images = vec![h2.identity(); h1.order()];
        for &x in &bfs[1..] {
            let (y, k) = parent[x.0].expect("non-identity elements have parents");
            images[x.0] = h2.mul(images[y.0], choice[k]);
        }
        let distinct: BTreeSet<GroupElem> = images.iter().copied().collect();
        if distinct.len() == h1.order() && is_homomorphism(h1, h2, &images) {
            results.push(images);
        }
        return;
    }
    let want = h1.elem_order(gens[depth]);
    for cand in h2.elements() {
        if h2.elem_order(cand) == want && !choice[..depth].contains(&cand) {
            choice[depth] = cand;
            search_gen_images(h1, h2, gens, parent, bfs, depth + 1, choice, results, limit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::symmetric(3).unwrap()
    }

    #[test]
    fn z2_table() {
        let g = build_abelian(&[2]).unwrap();
        assert_eq!(g.table_rows(), vec![vec![0, 1], vec![1, 0]]);
        let a = GroupElem(1);
        assert_eq!(g.mul(a, a), g.identity());
    }

    #[test]
    fn rejects_small_factors() {
        assert!(build_abelian(&[1]).is_err());
        assert!(build_abelian(&[]).is_err());
        assert!(build_abelian(&[2, 0]).is_err());
    }

    #[test]
    fn klein_is_exponent_two() {
        let g = build_abelian(&[2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        for x in g.elements() {
            assert_eq!(g.mul(x, x), g.identity());
        }
    }

    #[test]
    fn z2_times_z3_is_cyclic() {
        let g = build_abelian(&[2, 3]).unwrap();
        let x = g.by_name("(1,1)").unwrap();
        // repeated multiplication until identity
        let mut acc = x;
        let mut k = 1;
        while acc != g.identity() {
            acc = g.mul(acc, x);
            k += 1;
        }
        assert_eq!(k, 6);
        assert_eq!(g.elem_order(x), 6);
    }

    #[test]
    fn validate_table_cases() {
        let t = validate_table(vec![], vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = validate_table(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.by_name("a").unwrap(), GroupElem(1));
        assert!(matches!(
            validate_table(vec![], vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NotLatin(_))
        ));
    }

    #[test]
    fn validate_table_no_identity() {
        // Latin square without a neutral element: x*y = x - y mod 3.
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + 3 - y) % 3).collect()).collect();
        assert!(matches!(validate_table(vec![], t), Err(Error::NoIdentity)));
    }

    #[test]
    fn validate_table_not_associative() {
        // Latin square with identity 0 that is not a group (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_table(vec![], t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn abelian_conjugation_trivial() {
        let g = build_abelian(&[2, 4]).unwrap();
        for a in g.elements() {
            for x in g.elements() {
                assert_eq!(g.conj(a, x), a);
            }
        }
    }

    #[test]
    fn s3_conjugation() {
        let g = s3();
        let t12 = g.by_name("(12)").unwrap();
        let t13 = g.by_name("(13)").unwrap();
        assert_eq!(g.name(g.conj(t12, t13)), "(23)");
        assert!(!g.is_abelian());
    }

    #[test]
    fn closure_and_cosets() {
        let g = build_abelian(&[2, 2]).unwrap();
        assert_eq!(subgroup_closure(&g, &[]).members(), &[g.identity()]);
        let a = g.by_name("(1,0)").unwrap();
        assert_eq!(left_coset(&g, a, &Subgroup::trivial(&g)), vec![a]);
        assert_eq!(all_subgroups(&g).unwrap().len(), 5);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&s3()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&Group::cyclic(12).unwrap()).unwrap().len(), 6);
        assert!(matches!(
            all_subgroups(&Group::cyclic(25).unwrap()),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn cosets_partition() {
        let g = s3();
        for h in all_subgroups(&g).unwrap() {
            let reps: BTreeSet<GroupElem> = g.elements().map(|x| coset_rep(&g, x, &h)).collect();
            assert_eq!(reps.len() * h.order(), g.order());
            for &r in &reps {
                assert_eq!(left_coset(&g, r, &h).len(), h.order());
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let z4 = Group::cyclic(4).unwrap();
        let v4 = build_abelian(&[2, 2]).unwrap();
        assert!(find_isomorphisms(&z4, &v4, None).unwrap().is_empty());
        let autos = find_isomorphisms(&v4, &v4, None).unwrap();
        assert_eq!(autos.len(), 6);
        for f in &autos {
            assert!(is_homomorphism(&v4, &v4, f));
        }
        let triv = validate_table(vec![], vec![vec![0]]).unwrap();
        assert_eq!(find_isomorphisms(&triv, &triv, None).unwrap().len(), 1);
        assert_eq!(find_isomorphisms(&s3(), &s3(), None).unwrap().len(), 6);
        assert_eq!(find_isomorphisms(&v4, &v4, Some(2)).unwrap().len(), 2);
        let z32 = Group::cyclic(32).unwrap();
        assert!(matches!(
            find_isomorphisms(&z32, &z32, None),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn subgroup_as_group() {
        let g = s3();
        let t = g.by_name("(123)").unwrap();
        let h = subgroup_closure(&g, &[t]);
        let (hg, emb) = h.as_group(&g);
        assert_eq!(hg.order(), 3);
        assert_eq!(emb.len(), 3);
        let z3 = Group::cyclic(3).unwrap();
        assert_eq!(find_isomorphisms(&hg, &z3, None).unwrap().len(), 2);
    }
}
