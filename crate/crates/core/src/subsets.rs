//! Helpers for subfamilies encoded as `u64` masks over member indices.
//!
//! The canonical order on subfamilies is lexicographic on their ascending
//! index lists, a proper prefix sorting first. Depth-first enumeration that
//! extends the current list with larger indices visits subfamilies in
//! exactly this order.

use crate::family::SetFamily;

/// Lexicographic comparison of ascending index lists.
pub fn lex_less(a: u64, b: u64) -> bool {
    let x = a ^ b;
    if x == 0 {
        return false;
    }
    let low = x & x.wrapping_neg();
    let from_low = !(low - 1);
    if a & low != 0 {
        b & from_low != 0
    } else {
        a & from_low == 0
    }
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices strictly above `j` (within `n`).
pub fn above(j: usize, n: usize) -> u64 {
    full_mask(n) & !full_mask(j + 1)
}

/// Conflict neighbourhoods over a family of at most 64 members.
#[derive(Clone, Debug)]
pub struct MaskGraph {
    pub n: usize,
    pub nb: Vec<u64>,
}

impl MaskGraph {
    pub fn new(f: &SetFamily, t: usize) -> Self {
        assert!(f.len() <= 64, "mask graphs hold at most 64 members");
        let m = f.members();
        let n = m.len();
        let mut nb = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if m[i].intersection_len(&m[j]) < t {
                    nb[i] |= 1 << j;
                    nb[j] |= 1 << i;
                }
            }
        }
        MaskGraph { n, nb }
    }

    /// Members of `s` with no conflict inside `s`: the mask of `s^{t,+}`.
    #[inline]
    pub fn plus(&self, s: u64) -> u64 {
        let mut out = 0;
        let mut w = s;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            if self.nb[i] & s == 0 {
                out |= 1 << i;
            }
        }
        out
    }

    /// Members of `r` with no conflict against `s`.
    #[inline]
    pub fn free(&self, s: u64, r: u64) -> u64 {
        let mut out = 0;
        let mut w = r;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            if self.nb[i] & s == 0 {
                out |= 1 << i;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(m: u64) -> Vec<usize> {
        (0..64).filter(|i| m >> i & 1 == 1).collect()
    }

    #[test]
    fn lex_less_matches_vec_order() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(lex_less(a, b), list(a) < list(b), "{a} {b}");
            }
        }
    }

    #[test]
    fn masks() {
        assert_eq!(full_mask(3), 0b111);
        assert_eq!(above(1, 4), 0b1100);
        assert_eq!(above(3, 4), 0);
        assert_eq!(full_mask(64), u64::MAX);
    }
}
