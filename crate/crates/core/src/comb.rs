//! Lexicographic k-combination enumeration (shared by the brute-force oracle
//! and the disjunctness verifier).

/// Calls `f` with every size-`k` subset of `0..n` in lexicographic order.
/// Returning `false` from `f` stops the enumeration early.
pub(crate) fn for_each_combination<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// C(n, k) as u128, saturating.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
