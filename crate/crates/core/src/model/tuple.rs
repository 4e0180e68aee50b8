//! Base-`n` tuple codes.
//!
//! A tuple `(t_0, …, t_{k-1})` over a domain of size `n` is stored as the
//! integer `t_0·n^{k-1} + … + t_{k-1}`, so code order is lexicographic order.

#[inline]
pub fn encode(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(n: usize, k: usize, code: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    decode_into(n, code, &mut out);
    out
}

#[inline]
pub fn decode_into(n: usize, mut code: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
}

/// Image code of every tuple of arity `k` under the pointwise map `f`.
pub fn pointwise_table(n: usize, k: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    let count = n.pow(k as u32);
    let mut buf = vec![0; k];
    (0..count)
        .map(|c| {
            decode_into(n, c, &mut buf);
            buf.iter().fold(0, |acc, &x| acc * n + f(x))
        })
        .collect()
}

/// All tuples of arity `k` in lexicographic order.
pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = n.pow(k as u32);
    (0..count).map(move |c| decode(n, k, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_is_lexicographic() {
        let codes: Vec<usize> = all_tuples(3, 2).map(|t| encode(3, &t)).collect();
        assert_eq!(codes, (0..9).collect::<Vec<_>>());
        assert_eq!(decode(3, 2, 5), vec![1, 2]);
        assert_eq!(encode(4, &[]), 0);
    }
}
