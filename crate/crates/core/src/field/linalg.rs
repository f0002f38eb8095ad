//! Dense linear algebra over F_p for exponent vectors.

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank over Z/p of the given integer vectors.
pub fn rank_mod_p(vectors: &[Vec<i64>], p: u32) -> usize {
    let p = p as u64;
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| reduce(x, p)).collect())
        .collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let sub = f * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ_i e_i · columns[i] ≡ target (mod p)` for `e ∈ (Z/p)^s`, where the
/// columns are assumed linearly independent mod p. Returns `None` if the
/// target is outside their span.
pub fn solve_mod_p(columns: &[Vec<i64>], target: &[i64], p: u32) -> Option<Vec<u32>> {
    let pp = p as u64;
    let s = columns.len();
    let m = target.len();
    // Augmented m x (s+1) system.
    let mut a: Vec<Vec<u64>> = (0..m)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| reduce(c[r], pp)).collect();
            row.push(reduce(target[r], pp));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let Some(piv) = (row..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = inv_mod(a[row][col], pp);
        for x in a[row].iter_mut() {
            *x = *x * inv % pp;
        }
        for r in 0..m {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..=s {
                    let sub = f * a[row][c] % pp;
                    a[r][c] = (a[r][c] + pp - sub) % pp;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[s] != 0) {
        return None;
    }
    let mut e = vec![0u32; s];
    for (r, &col) in pivots.iter().enumerate() {
        e[col] = a[r][s] as u32;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![0, 1]], 2), 2);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![1, 2]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![0, 1]], 2), 2);
        assert_eq!(rank_mod_p(&[vec![3, 6]], 3), 0);
        assert_eq!(rank_mod_p(&[], 3), 0);
    }

    #[test]
    fn solve_examples() {
        let cols = vec![vec![1, 1], vec![0, 1]];
        assert_eq!(solve_mod_p(&cols, &[1, 0], 2), Some(vec![1, 1]));
        assert_eq!(solve_mod_p(&[vec![1, 0]], &[0, 1], 3), None);
        assert_eq!(solve_mod_p(&[vec![2, 0]], &[1, 0], 3), Some(vec![2]));
    }
}
