//! Macaulay binomial expansions, pseudopowers and M-sequences.

use crate::vectors::binomial;

/// The `i`-th Macaulay representation `a = C(a_i, i) + C(a_{i-1}, i-1) + .. + C(a_j, j)`
/// with `a_i > a_{i-1} > .. > a_j ≥ j ≥ 1`, returned as `(a_k, k)` pairs from `k = i` down.
pub fn macaulay_expansion(mut a: u64, i: u32) -> Vec<(u64, u32)> {
    assert!(i >= 1, "the Macaulay expansion index must be positive");
    let mut out = Vec::new();
    let mut k = i;
    while a > 0 && k >= 1 {
        let mut top = k as u64;
        while binomial(top as i64 + 1, k as i64) as u64 <= a {
            top += 1;
        }
        a -= binomial(top as i64, k as i64) as u64;
        out.push((top, k));
        k -= 1;
    }
    out
}

/// `a^{<i>}`: shift every term `C(a_k, k)` of the expansion to `C(a_k + 1, k + 1)`.
pub fn macaulay_pseudopower(a: u64, i: u32) -> u64 {
    macaulay_expansion(a, i)
        .into_iter()
        .map(|(top, k)| binomial(top as i64 + 1, k as i64 + 1) as u64)
        .sum()
}

/// `(1, m_1, m_2, ..)` with `m_{i+1} ≤ m_i^{<i>}` for every `i ≥ 1`.
pub fn is_m_sequence(seq: &[i64]) -> bool {
    if seq.first() != Some(&1) || seq.iter().any(|&x| x < 0) {
        return false;
    }
    seq.windows(2)
        .enumerate()
        .skip(1)
        .all(|(i, w)| w[1] as u64 <= macaulay_pseudopower(w[0] as u64, i as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quoted_pseudopowers() {
        assert_eq!(macaulay_pseudopower(1, 2), 1);
        assert_eq!(macaulay_pseudopower(2, 2), 2);
        assert_eq!(macaulay_pseudopower(3, 2), 4);
        assert_eq!(macaulay_pseudopower(0, 2), 0);
    }

    #[test]
    fn expansions() {
        assert_eq!(macaulay_expansion(3, 2), vec![(3, 2)]);
        assert_eq!(macaulay_expansion(2, 2), vec![(2, 2), (1, 1)]);
        assert_eq!(macaulay_expansion(5, 2), vec![(3, 2), (2, 1)]);
        assert_eq!(macaulay_expansion(5, 1), vec![(5, 1)]);
    }

    #[test]
    fn first_pseudopower_is_triangular() {
        for a in 0..20u64 {
            assert_eq!(macaulay_pseudopower(a, 1), a * (a + 1) / 2);
        }
    }

    #[test]
    fn m_sequences() {
        assert!(is_m_sequence(&[1, 3, 6, 10]));
        assert!(is_m_sequence(&[1, 2, 2, 2]));
        assert!(!is_m_sequence(&[1, 2, 4]));
        assert!(!is_m_sequence(&[1, 1, 2]));
        assert!(!is_m_sequence(&[2, 1]));
        assert!(is_m_sequence(&[1]));
    }

    proptest! {
        #[test]
        fn expansion_sums_back(a in 0u64..5000, i in 1u32..6) {
            let exp = macaulay_expansion(a, i);
            let total: u64 = exp.iter().map(|&(t, k)| binomial(t as i64, k as i64) as u64).sum();
            prop_assert_eq!(total, a);
            for w in exp.windows(2) {
                prop_assert!(w[0].0 > w[1].0);
            }
            for &(t, k) in &exp {
                prop_assert!(t >= k as u64);
            }
        }

        #[test]
        fn pseudopower_is_monotone(a in 0u64..2000, i in 1u32..5) {
            prop_assert!(macaulay_pseudopower(a, i) <= macaulay_pseudopower(a + 1, i));
        }
    }
}
