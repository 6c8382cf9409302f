//! Exact linear systems over `Z/M`.
//!
//! The coefficient matrix is diagonalized with unimodular row and column
//! operations (Smith-style elimination with gcd pivoting, entries kept
//! reduced mod `M`). A diagonal system `d·y ≡ c (mod M)` is solvable iff
//! `gcd(d, M)` divides `c`.

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`. When `a` divides `b`
/// the pivot is kept as is: `(a, 1, 0)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        return (a, 1, 0);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn reduce(x: i128, m: i128) -> i128 {
    x.rem_euclid(m)
}

/// Solve `A·x ≡ b (mod modulus)`. Returns one solution with entries in
/// `[0, modulus)`, or `None` when the system is inconsistent.
#[allow(clippy::needless_range_loop)]
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], modulus: u64) -> Option<Vec<u64>> {
    assert!(modulus > 0, "modulus must be positive");
    let rows = a.len();
    assert_eq!(rows, b.len(), "one right-hand side per equation");
    let cols = a.first().map_or(0, Vec::len);
    let m = modulus as i128;
    if modulus == 1 {
        return Some(vec![0; cols]);
    }

    let mut mat: Vec<Vec<i128>> = a
        .iter()
        .map(|row| {
            assert_eq!(row.len(), cols, "ragged coefficient matrix");
            row.iter().map(|&x| reduce(x as i128, m)).collect()
        })
        .collect();
    let mut rhs: Vec<i128> = b.iter().map(|&x| reduce(x as i128, m)).collect();
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut rank = 0;
    while rank < rows.min(cols) {
        let t = rank;
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| mat[i][j] != 0)
            .min_by_key(|&(i, j)| mat[i][j]);
        let Some((pi, pj)) = pivot else { break };
        mat.swap(t, pi);
        rhs.swap(t, pi);
        if pj != t {
            for row in mat.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
        }

        loop {
            for i in t + 1..rows {
                let lower = mat[i][t];
                if lower == 0 {
                    continue;
                }
                let top = mat[t][t];
                let (g, s, x) = ext_gcd(top, lower);
                let (u, v) = (-lower / g, top / g);
                for j in t..cols {
                    let (p, r) = (mat[t][j], mat[i][j]);
                    mat[t][j] = reduce(s * p + x * r, m);
                    mat[i][j] = reduce(u * p + v * r, m);
                }
                let (p, r) = (rhs[t], rhs[i]);
                rhs[t] = reduce(s * p + x * r, m);
                rhs[i] = reduce(u * p + v * r, m);
            }
            for j in t + 1..cols {
                let right = mat[t][j];
                if right == 0 {
                    continue;
                }
                let left = mat[t][t];
                let (g, s, x) = ext_gcd(left, right);
                let (u, v) = (-right / g, left / g);
                for row in mat.iter_mut().skip(t) {
                    let (p, r) = (row[t], row[j]);
                    row[t] = reduce(s * p + x * r, m);
                    row[j] = reduce(u * p + v * r, m);
                }
                for row in q.iter_mut() {
                    let (p, r) = (row[t], row[j]);
                    row[t] = reduce(s * p + x * r, m);
                    row[j] = reduce(u * p + v * r, m);
                }
            }
            let clear_below = (t + 1..rows).all(|i| mat[i][t] == 0);
            let clear_right = (t + 1..cols).all(|j| mat[t][j] == 0);
            if clear_below && clear_right {
                break;
            }
        }
        rank += 1;
    }

    if rhs[rank..].iter().any(|&c| c != 0) {
        return None;
    }
    let mut y = vec![0i128; cols];
    for t in 0..rank {
        let d = mat[t][t];
        let (g, _, _) = ext_gcd(d, m);
        let g = g.abs();
        if rhs[t] % g != 0 {
            return None;
        }
        let reduced_m = m / g;
        let (_, inv, _) = ext_gcd(d / g, reduced_m);
        y[t] = reduce((rhs[t] / g) * inv, reduced_m);
    }
    let x = (0..cols)
        .map(|i| {
            let v: i128 = (0..cols).map(|j| q[i][j] * y[j]).sum();
            reduce(v, m) as u64
        })
        .collect();
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual_ok(a: &[Vec<i64>], b: &[i64], m: u64, x: &[u64]) -> bool {
        a.iter().zip(b).all(|(row, &rhs)| {
            let lhs: i128 = row.iter().zip(x).map(|(&c, &v)| c as i128 * v as i128).sum();
            (lhs - rhs as i128).rem_euclid(m as i128) == 0
        })
    }

    fn brute(a: &[Vec<i64>], b: &[i64], m: u64) -> bool {
        let cols = a.first().map_or(0, Vec::len);
        let total = (m as usize).pow(cols as u32);
        (0..total).any(|mut k| {
            let x: Vec<u64> = (0..cols)
                .map(|_| {
                    let d = (k % m as usize) as u64;
                    k /= m as usize;
                    d
                })
                .collect();
            residual_ok(a, b, m, &x)
        })
    }

    #[test]
    fn non_unit_pivot_interaction() {
        // 2x + y ≡ 1, y ≡ 1 (mod 4): y must be odd.
        let a = vec![vec![2, 1], vec![0, 1]];
        let x = solve_mod(&a, &[1, 1], 4).unwrap();
        assert!(residual_ok(&a, &[1, 1], 4, &x));
        assert!(solve_mod(&[vec![2, 0]], &[1], 4).is_none());
        assert!(solve_mod(&[vec![0, 0]], &[3], 6).is_none());
    }

    #[test]
    fn agrees_with_brute_force_small() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for m in [2u64, 3, 4, 6, 8, 9, 12] {
            for _ in 0..60 {
                let rows = (next() % 4 + 1) as usize;
                let cols = (next() % 3 + 1) as usize;
                let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next() % 7 - 3).collect()).collect();
                let b: Vec<i64> = (0..rows).map(|_| next() % 13 - 6).collect();
                let got = solve_mod(&a, &b, m);
                assert_eq!(got.is_some(), brute(&a, &b, m), "a={a:?} b={b:?} m={m}");
                if let Some(x) = got {
                    assert!(residual_ok(&a, &b, m, &x));
                }
            }
        }
    }
}
