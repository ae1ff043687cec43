//! Unconstrained Brussels sprout playouts on the sphere.
//!
//! Without a girth bound, legality of a join only depends on whether the two
//! tips face the same region, so spots are forgotten and a position is kept
//! as regions of boundary components, each component a cyclic run of open
//! tips. Tips are interchangeable, so a component is fully described by how
//! many tips it carries.
//!
//! A curve between two tips of the same component cuts the region in two;
//! between tips of different components of one region it splices them into
//! one boundary. Either way the crossbar adds one tip on each side.

use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlayoutError {
    #[error("region {0} does not exist")]
    NoSuchRegion(usize),
    #[error("region {region} has no boundary component {component}")]
    NoSuchComponent { region: usize, component: usize },
    #[error("boundary component has {tips} tips, no tip {tip}")]
    NoSuchTip { tip: usize, tips: u32 },
    #[error("a curve needs two distinct tips")]
    SameTip,
    #[error("merging needs two distinct boundary components")]
    SameComponent,
    #[error("assignment mask {mask:#x} names components beyond the {others} to distribute")]
    BadAssignment { mask: u64, others: usize },
    #[error("the position still has legal moves")]
    NotTerminal,
}

/// One face of the drawing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Region {
    /// Open-tip count of each boundary component.
    pub components: Vec<u32>,
}

impl Region {
    pub fn tips(&self) -> u32 {
        self.components.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereState {
    pub regions: Vec<Region>,
    spots: usize,
    moves: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlayoutMove {
    /// Join tips `first < second` of one component. Bit `k` of
    /// `to_second` sends the `k`-th other component of the region (in order,
    /// skipping the cut one) to the daughter bounded by the arc
    /// `second -> first`; clear bits keep it with the arc `first -> second`.
    Split { region: usize, component: usize, first: usize, second: usize, to_second: u64 },
    /// Join tip `first_tip` of component `first` to tip `second_tip` of
    /// component `second` in the same region.
    Merge { region: usize, first: usize, first_tip: usize, second: usize, second_tip: usize },
}

/// One region holding every spot, spot `i` a boundary component of `tips[i]`
/// tips.
pub fn initial_sphere_state(tips: &[u32]) -> SphereState {
    SphereState {
        regions: alloc::vec![Region { components: tips.to_vec() }],
        spots: tips.len(),
        moves: 0,
    }
}

impl SphereState {
    pub fn total_tips(&self) -> u32 {
        self.regions.iter().map(Region::tips).sum()
    }

    pub fn moves_played(&self) -> u32 {
        self.moves
    }

    pub fn spots(&self) -> usize {
        self.spots
    }

    pub fn vertex_count(&self) -> u64 {
        self.spots as u64 + u64::from(self.moves)
    }

    pub fn edge_count(&self) -> u64 {
        2 * u64::from(self.moves)
    }

    pub fn is_terminal(&self) -> bool {
        self.regions.iter().all(|r| r.tips() <= 1)
    }

    /// Every legal move, enumerating each split with every assignment of the
    /// region's other components.
    pub fn legal_moves(&self) -> Vec<PlayoutMove> {
        let mut out = Vec::new();
        self.for_each_tip_choice(|m| {
            if let PlayoutMove::Split { region, .. } = m {
                let others = self.regions[region].components.len() - 1;
                for mask in 0..(1u64 << others) {
                    let mut m = m.clone();
                    if let PlayoutMove::Split { to_second, .. } = &mut m {
                        *to_second = mask;
                    }
                    out.push(m);
                }
            } else {
                out.push(m);
            }
        });
        out
    }

    /// Moves up to the choice of split assignment (all with mask 0).
    pub fn tip_choices(&self) -> Vec<PlayoutMove> {
        let mut out = Vec::new();
        self.for_each_tip_choice(|m| out.push(m));
        out
    }

    fn for_each_tip_choice<F: FnMut(PlayoutMove)>(&self, mut f: F) {
        for (region, r) in self.regions.iter().enumerate() {
            if r.tips() < 2 {
                continue;
            }
            for (component, &k) in r.components.iter().enumerate() {
                let k = k as usize;
                for first in 0..k {
                    for second in first + 1..k {
                        f(PlayoutMove::Split { region, component, first, second, to_second: 0 });
                    }
                }
            }
            for (first, &k1) in r.components.iter().enumerate() {
                for (second, &k2) in r.components.iter().enumerate().skip(first + 1) {
                    for first_tip in 0..k1 as usize {
                        for second_tip in 0..k2 as usize {
                            f(PlayoutMove::Merge { region, first, first_tip, second, second_tip });
                        }
                    }
                }
            }
        }
    }

    fn component(&self, region: usize, component: usize) -> Result<u32, PlayoutError> {
        let r = self.regions.get(region).ok_or(PlayoutError::NoSuchRegion(region))?;
        r.components
            .get(component)
            .copied()
            .ok_or(PlayoutError::NoSuchComponent { region, component })
    }

    pub fn apply(&self, m: &PlayoutMove) -> Result<SphereState, PlayoutError> {
        let mut next = self.clone();
        match *m {
            PlayoutMove::Split { region, component, first, second, to_second } => {
                let k = self.component(region, component)?;
                for tip in [first, second] {
                    if tip >= k as usize {
                        return Err(PlayoutError::NoSuchTip { tip, tips: k });
                    }
                }
                if first >= second {
                    return Err(PlayoutError::SameTip);
                }
                let others: Vec<u32> = self.regions[region]
                    .components
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != component)
                    .map(|(_, &t)| t)
                    .collect();
                if others.len() < 64 && to_second >> others.len() != 0 {
                    return Err(PlayoutError::BadAssignment { mask: to_second, others: others.len() });
                }
                let inner = (second - first - 1) as u32;
                let outer = k - inner - 2;
                let mut a = Region { components: alloc::vec![inner + 1] };
                let mut b = Region { components: alloc::vec![outer + 1] };
                for (idx, t) in others.into_iter().enumerate() {
                    if to_second >> idx & 1 == 1 {
                        b.components.push(t);
                    } else {
                        a.components.push(t);
                    }
                }
                next.regions[region] = a;
                next.regions.push(b);
            }
            PlayoutMove::Merge { region, first, first_tip, second, second_tip } => {
                let k1 = self.component(region, first)?;
                let k2 = self.component(region, second)?;
                if first == second {
                    return Err(PlayoutError::SameComponent);
                }
                if first_tip >= k1 as usize {
                    return Err(PlayoutError::NoSuchTip { tip: first_tip, tips: k1 });
                }
                if second_tip >= k2 as usize {
                    return Err(PlayoutError::NoSuchTip { tip: second_tip, tips: k2 });
                }
                let comps = &mut next.regions[region].components;
                let (lo, hi) = (first.min(second), first.max(second));
                comps[lo] = (k1 - 1) + (k2 - 1) + 2;
                comps.remove(hi);
            }
        }
        next.moves += 1;
        Ok(next)
    }
}

/// Plays uniformly random tip choices, with a uniform assignment for each
/// split, until no move is left. Returns the number of moves made.
pub fn random_playout<R: Rng + ?Sized>(tips: &[u32], rng: &mut R) -> (u32, SphereState) {
    let mut state = initial_sphere_state(tips);
    loop {
        let choices = state.tip_choices();
        if choices.is_empty() {
            return (state.moves, state);
        }
        let mut m = choices[rng.random_range(0..choices.len())].clone();
        if let PlayoutMove::Split { region, to_second, .. } = &mut m {
            let others = state.regions[*region].components.len() - 1;
            *to_second = if others == 0 { 0 } else { rng.random::<u64>() >> (64 - others.min(63)) };
        }
        state = state.apply(&m).expect("sampled moves are legal");
    }
}

/// Checks a finished sphere drawing: one open tip per face and
/// `V - E + F = 2`.
pub fn euler_check(state: &SphereState, tips: &[u32], move_count: u32) -> Result<bool, PlayoutError> {
    if !state.is_terminal() {
        return Err(PlayoutError::NotTerminal);
    }
    let total: u64 = tips.iter().map(|&t| u64::from(t)).sum();
    let faces = state.regions.len() as i64;
    let v = tips.len() as i64 + i64::from(move_count);
    let e = 2 * i64::from(move_count);
    Ok(faces as u64 == total && v - e + faces == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn initial_states() {
        let s = initial_sphere_state(&[4, 4]);
        assert_eq!(s.regions, vec![Region { components: vec![4, 4] }]);
        assert!(!s.is_terminal());
        let empty = initial_sphere_state(&[]);
        assert!(empty.is_terminal());
        assert_eq!(empty.total_tips(), 0);
        let single = initial_sphere_state(&[1]);
        assert!(single.is_terminal());
        assert!(single.legal_moves().is_empty());
    }

    #[test]
    fn move_enumeration() {
        let s = initial_sphere_state(&[4, 4]);
        let moves = s.legal_moves();
        let splits = moves.iter().filter(|m| matches!(m, PlayoutMove::Split { .. })).count();
        let merges = moves.len() - splits;
        // 6 tip pairs per cross, 2 assignments of the other cross each
        assert_eq!(splits, 2 * 6 * 2);
        assert_eq!(merges, 16);

        let two = SphereState { regions: vec![Region { components: vec![2] }], spots: 1, moves: 0 };
        let moves = two.legal_moves();
        assert_eq!(moves.len(), 1);
        assert!(matches!(moves[0], PlayoutMove::Split { .. }));

        let done = SphereState {
            regions: vec![Region { components: vec![1] }, Region { components: vec![1] }],
            spots: 1,
            moves: 1,
        };
        assert!(done.legal_moves().is_empty());
    }

    #[test]
    fn apply_examples() {
        let s = initial_sphere_state(&[4, 4]);
        let merged = s
            .apply(&PlayoutMove::Merge { region: 0, first: 0, first_tip: 1, second: 1, second_tip: 3 })
            .unwrap();
        assert_eq!(merged.regions, vec![Region { components: vec![8] }]);

        let split = merged
            .apply(&PlayoutMove::Split { region: 0, component: 0, first: 0, second: 4, to_second: 0 })
            .unwrap();
        assert_eq!(
            split.regions,
            vec![Region { components: vec![4] }, Region { components: vec![4] }]
        );

        let last = SphereState { regions: vec![Region { components: vec![2] }], spots: 1, moves: 0 };
        let end = last
            .apply(&PlayoutMove::Split { region: 0, component: 0, first: 0, second: 1, to_second: 0 })
            .unwrap();
        assert_eq!(end.regions, vec![Region { components: vec![1] }, Region { components: vec![1] }]);
        assert!(end.is_terminal());
    }

    #[test]
    fn split_distributes_other_components() {
        let s = initial_sphere_state(&[3, 5, 7]);
        let next = s
            .apply(&PlayoutMove::Split { region: 0, component: 0, first: 0, second: 2, to_second: 0b10 })
            .unwrap();
        assert_eq!(next.regions[0].components, vec![2, 5]);
        assert_eq!(next.regions[1].components, vec![1, 7]);
        assert_eq!(next.total_tips(), 15);
    }

    #[test]
    fn apply_errors() {
        let s = initial_sphere_state(&[3, 2]);
        let bad = |m| s.apply(&m).unwrap_err();
        assert_eq!(
            bad(PlayoutMove::Split { region: 1, component: 0, first: 0, second: 1, to_second: 0 }),
            PlayoutError::NoSuchRegion(1)
        );
        assert_eq!(
            bad(PlayoutMove::Split { region: 0, component: 0, first: 1, second: 1, to_second: 0 }),
            PlayoutError::SameTip
        );
        assert_eq!(
            bad(PlayoutMove::Split { region: 0, component: 1, first: 0, second: 2, to_second: 0 }),
            PlayoutError::NoSuchTip { tip: 2, tips: 2 }
        );
        assert_eq!(
            bad(PlayoutMove::Split { region: 0, component: 0, first: 0, second: 1, to_second: 2 }),
            PlayoutError::BadAssignment { mask: 2, others: 1 }
        );
        assert_eq!(
            bad(PlayoutMove::Merge { region: 0, first: 1, first_tip: 0, second: 1, second_tip: 1 }),
            PlayoutError::SameComponent
        );
        assert_eq!(euler_check(&s, &[3, 2], 0), Err(PlayoutError::NotTerminal));
    }

    #[test]
    fn euler_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (count, end) = random_playout(&[4, 4], &mut rng);
        assert_eq!(count, 8);
        assert_eq!(end.regions.len(), 8);
        assert_eq!(euler_check(&end, &[4, 4], count), Ok(true));
        let (count, end) = random_playout(&[4], &mut rng);
        assert_eq!(count, 3);
        assert_eq!(end.regions.len(), 4);
        assert_eq!(euler_check(&end, &[4], count), Ok(true));
        assert_eq!(euler_check(&end, &[4], count + 1), Ok(false));
    }

    #[test]
    fn exhaustive_small_games_have_constant_length() {
        // walk every legal move sequence of tiny games
        fn walk(s: &SphereState, lengths: &mut std::collections::BTreeSet<u32>, tips: &[u32]) {
            let moves = s.legal_moves();
            if moves.is_empty() {
                assert_eq!(euler_check(s, tips, s.moves_played()), Ok(true));
                lengths.insert(s.moves_played());
                return;
            }
            for m in moves {
                let next = s.apply(&m).unwrap();
                assert_eq!(next.total_tips(), s.total_tips());
                assert!(next.regions.iter().all(|r| r.tips() >= 1));
                walk(&next, lengths, tips);
            }
        }
        for tips in [vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![3, 2]] {
            let mut lengths = std::collections::BTreeSet::new();
            walk(&initial_sphere_state(&tips), &mut lengths, &tips);
            let expected = (tips.len() as i64 - 2 + tips.iter().sum::<u32>() as i64) as u32;
            assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![expected], "{tips:?}");
        }
    }
}
