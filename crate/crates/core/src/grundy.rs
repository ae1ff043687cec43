//! Nimbers, mex and nim-sum.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitXor, BitXorAssign};

/// Grundy value of an impartial game position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nimber(pub u64);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<u64> for Nimber {
    fn from(v: u64) -> Self {
        Nimber(v)
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.0)
    }
}

impl BitXor for Nimber {
    type Output = Nimber;

    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl core::iter::Sum for Nimber {
    fn sum<I: Iterator<Item = Nimber>>(iter: I) -> Nimber {
        iter.fold(Nimber::ZERO, |acc, n| acc ^ n)
    }
}

/// Set of nimbers seen among the children of a position.
///
/// Values below 128 live in an inline bitmask; anything larger spills into a
/// growable word vector so the set is unbounded.
#[derive(Clone, Debug, Default)]
pub struct NimberSet {
    low: u128,
    high: Vec<u64>,
}

impl NimberSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: Nimber) {
        let v = n.0;
        if v < 128 {
            self.low |= 1u128 << v;
        } else {
            let rel = v - 128;
            let word = (rel / 64) as usize;
            if word >= self.high.len() {
                self.high.resize(word + 1, 0);
            }
            self.high[word] |= 1u64 << (rel % 64);
        }
    }

    pub fn contains(&self, n: Nimber) -> bool {
        let v = n.0;
        if v < 128 {
            self.low & (1u128 << v) != 0
        } else {
            let rel = v - 128;
            self.high
                .get((rel / 64) as usize)
                .is_some_and(|w| w & (1u64 << (rel % 64)) != 0)
        }
    }

    /// Least nimber not in the set.
    pub fn mex(&self) -> Nimber {
        if self.low != u128::MAX {
            return Nimber(self.low.trailing_ones() as u64);
        }
        for (idx, word) in self.high.iter().enumerate() {
            if *word != u64::MAX {
                return Nimber(128 + idx as u64 * 64 + word.trailing_ones() as u64);
            }
        }
        Nimber(128 + self.high.len() as u64 * 64)
    }
}

impl FromIterator<Nimber> for NimberSet {
    fn from_iter<I: IntoIterator<Item = Nimber>>(iter: I) -> Self {
        let mut set = NimberSet::new();
        for n in iter {
            set.insert(n);
        }
        set
    }
}

impl Extend<Nimber> for NimberSet {
    fn extend<I: IntoIterator<Item = Nimber>>(&mut self, iter: I) {
        for n in iter {
            self.insert(n);
        }
    }
}

/// Minimum excludant of a collection of nimbers. Duplicates are fine.
pub fn mex<I: IntoIterator<Item = Nimber>>(values: I) -> Nimber {
    values.into_iter().collect::<NimberSet>().mex()
}

pub fn nim_sum(a: Nimber, b: Nimber) -> Nimber {
    a ^ b
}

/// Nimber of a disjunctive sum; the empty sum is `*0`.
pub fn sum_nimber<I: IntoIterator<Item = Nimber>>(components: I) -> Nimber {
    components.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn n(v: u64) -> Nimber {
        Nimber(v)
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), n(0));
        assert_eq!(mex([n(0), n(1), n(2)]), n(3));
        assert_eq!(mex([n(1), n(2)]), n(0));
        assert_eq!(mex([n(0), n(0), n(1), n(0)]), n(2));
    }

    #[test]
    fn mex_across_word_boundaries() {
        assert_eq!(mex((0..128).map(n)), n(128));
        assert_eq!(mex((0..200).map(n)), n(200));
        assert_eq!(mex((0..192).map(n)), n(192));
        assert_eq!(mex((0..500).filter(|v| *v != 321).map(n)), n(321));
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum(n(1), n(1)), n(0));
        assert_eq!(nim_sum(n(2), n(3)), n(1));
        for p in 0..50 {
            assert_eq!(nim_sum(n(1), n(2 * p)), n(2 * p + 1));
        }
    }

    #[test]
    fn sum_nimber_examples() {
        assert_eq!(sum_nimber([]), n(0));
        assert_eq!(sum_nimber([n(1), n(1)]), n(0));
        assert_eq!(sum_nimber([n(2), n(0)]), n(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn mex_is_least_excluded(values in proptest::collection::vec(0u64..300, 0..80)) {
            let m = mex(values.iter().copied().map(n)).0;
            let set: BTreeSet<u64> = values.iter().copied().collect();
            prop_assert!(!set.contains(&m));
            for below in 0..m {
                prop_assert!(set.contains(&below));
            }
            let mut grown: Vec<u64> = values.clone();
            grown.push(m);
            prop_assert!(mex(grown.into_iter().map(n)).0 > m);
        }

        #[test]
        fn nim_sum_algebra(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (n(a), n(b), n(c));
            prop_assert_eq!(nim_sum(nim_sum(a, b), c), nim_sum(a, nim_sum(b, c)));
            prop_assert_eq!(nim_sum(a, b), nim_sum(b, a));
            prop_assert_eq!(nim_sum(a, Nimber::ZERO), a);
            prop_assert_eq!(nim_sum(a, a), Nimber::ZERO);
        }
    }
}
