//! Prime-field arithmetic for the oracle's rank computations: deterministic
//! Miller-Rabin, a prime `p = 1 (mod d)` so the cyclotomic generator embeds,
//! and dense Gaussian elimination mod `p`.

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p > 2^30` with `p = 1 (mod d)`. Keeping `p < 2^31` lets
/// the elimination inner loop stay in u64 products.
pub fn prime_one_mod(d: u64) -> u64 {
    let start = (1u64 << 30) / d + 1;
    let mut k = start;
    loop {
        let p = k * d + 1;
        if p % 2 == 1 && is_prime(p) {
            return p;
        }
        k += 1;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact multiplicative order `d` in `F_p` (requires `d | p-1`).
pub fn root_of_unity(p: u64, d: u64) -> u64 {
    assert_eq!((p - 1) % d, 0);
    if d == 1 {
        return 1;
    }
    let factors = prime_factors(d);
    let mut g = 2u64;
    loop {
        let w = pow_mod(g, (p - 1) / d, p);
        if w != 1 && factors.iter().all(|&f| pow_mod(w, d / f, p) != 1) {
            return w;
        }
        g += 1;
    }
}

/// Rank of a dense matrix mod `p`, in place. Rows are `width`-long slices of
/// `data`. Requires `p < 2^31`.
pub fn dense_rank_mod(data: &mut [u64], rows: usize, width: usize, p: u64) -> usize {
    let mut rank = 0usize;
    for col in 0..width {
        // find pivot
        let mut pivot = None;
        for r in rank..rows {
            if data[r * width + col] % p != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        if pr != rank {
            for k in col..width {
                data.swap(pr * width + k, rank * width + k);
            }
        }
        let inv = inv_mod(data[rank * width + col], p);
        for r in (rank + 1)..rows {
            let f = data[r * width + col] % p;
            if f == 0 {
                continue;
            }
            let scale = p - mul_mod(f, inv, p);
            if scale == p {
                continue;
            }
            let (lo, hi) = data.split_at_mut(r * width);
            let prow = &lo[rank * width..rank * width + width];
            let vrow = &mut hi[..width];
            for k in col..width {
                vrow[k] = (vrow[k] + scale * prow[k]) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(2147483647));
        assert!(!is_prime(2147483647u64 * 3));
        let p = prime_one_mod(3);
        assert!(is_prime(p));
        assert_eq!((p - 1) % 3, 0);
        let w = root_of_unity(p, 3);
        assert_ne!(w, 1);
        assert_eq!(pow_mod(w, 3, p), 1);
    }

    #[test]
    fn dense_rank_small() {
        let p = 1_000_000_007u64; // fits the < 2^31 requirement? no: 1e9 < 2^31 yes
        let mut m = vec![
            1, 2, 3, //
            2, 4, 6, //
            0, 1, 1,
        ];
        assert_eq!(dense_rank_mod(&mut m, 3, 3, p), 2);
        let mut id = vec![1, 0, 0, 1];
        assert_eq!(dense_rank_mod(&mut id, 2, 2, p), 2);
        let mut z = vec![0; 6];
        assert_eq!(dense_rank_mod(&mut z, 2, 3, p), 0);
    }
}
