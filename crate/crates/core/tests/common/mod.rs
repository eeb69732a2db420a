//! Brute-force oracles, written independently of the library algorithms.

#![allow(dead_code)]

/// Affine rank of a list of cube points (as coordinate bit masks), by
/// fraction-free elimination on the difference vectors.
pub fn affine_rank(points: &[u32], n: usize) -> usize {
    let Some((&base, rest)) = points.split_first() else { return 0 };
    let mut rows: Vec<Vec<i128>> = rest
        .iter()
        .map(|&p| (0..n).map(|i| ((p >> i & 1) as i128) - ((base >> i & 1) as i128)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                for c in 0..n {
                    rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                }
                let g = rows[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn members(mask: u64, n: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|&p| mask >> p & 1 == 1).collect()
}

/// `mask` is a nonempty proper subset equal to the cube points of its affine hull.
pub fn is_pattern_oracle(mask: u64, n: usize) -> bool {
    let full = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    if mask == 0 || mask == full {
        return false;
    }
    let pts = members(mask, n);
    let r = affine_rank(&pts, n);
    let mut with = pts.clone();
    with.push(0);
    (0..1u32 << n).filter(|&q| mask >> q & 1 == 0).all(|q| {
        *with.last_mut().unwrap() = q;
        affine_rank(&with, n) > r
    })
}

/// All intersection patterns of `{0,1}^n` (`n <= 4`), sorted.
pub fn patterns_oracle(n: usize) -> Vec<u64> {
    assert!(n <= 4);
    let np = 1u64 << n;
    (1..(1u64 << np) - 1).filter(|&m| is_pattern_oracle(m, n)).collect()
}

/// Minimum number of sets from `patterns` whose union is exactly `target`.
pub fn brute_min_cover(target: u64, patterns: &[u64]) -> usize {
    if target == 0 {
        return 0;
    }
    let inside: Vec<u64> = patterns.iter().copied().filter(|&p| p & !target == 0).collect();
    let maximal: Vec<u64> = inside.iter().copied().filter(|&p| !inside.iter().any(|&q| q != p && p & !q == 0)).collect();
    // Some pattern of any cover contains the lowest uncovered point.
    fn search(left: u64, k: usize, pats: &[u64]) -> bool {
        if left == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let low = left.trailing_zeros();
        pats.iter().any(|&p| p >> low & 1 == 1 && search(left & !p, k - 1, pats))
    }
    (1..).find(|&k| search(target, k, &maximal)).unwrap()
}

/// Smallest vertex set meeting every `d`-dimensional axis-aligned subcube, by
/// trying all subsets in order of size (`n <= 4`).
pub fn g_bruteforce(n: usize, d: usize) -> usize {
    let np = 1u32 << n;
    let mut cubes = Vec::new();
    for free in 0u32..np {
        if free.count_ones() as usize != d {
            continue;
        }
        for base in (0..np).filter(|b| b & free == 0) {
            cubes.push((0..np).filter(|&p| p & !free == base).fold(0u64, |m, p| m | 1 << p));
        }
    }
    (0..=np as usize)
        .find(|&k| {
            (0u64..1 << np).any(|s| s.count_ones() as usize == k && cubes.iter().all(|c| c & s != 0))
        })
        .unwrap()
}
