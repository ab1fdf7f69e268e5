//! Exhaustive and randomized enumeration of frame homomorphisms.
//!
//! A frame homomorphism out of a downset frame is determined by its
//! values on the join irreducibles: monotone families (a_p) over the
//! base with ⋁ a_p = 1 and a_p ∧ a_q ≤ ⋁{ a_r | r ≤ p, r ≤ q }. The
//! search assigns the family along a linear extension, pruning on
//! monotonicity and the meet condition, so the blow-up of filtering all
//! |M|^|L| tables never happens.

use crate::error::Result;
use crate::frame::FrameRef;
use crate::maps::FrameHom;
use crate::poset::Poset;
use rand::seq::SliceRandom;
use rand::Rng;

struct Search<'a> {
    source: &'a FrameRef,
    target: &'a FrameRef,
    /// base point ids of the source in linear-extension order
    order: Vec<usize>,
    /// strict predecessors of each base point (positions into `order`)
    preds: Vec<Vec<usize>>,
    /// pairs (position, meet-closure positions) for the meet condition
    pair_lower: Vec<Vec<Vec<usize>>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a FrameRef, target: &'a FrameRef) -> Search<'a> {
        let base = source.base();
        let order = base.linear_extension();
        let k = order.len();
        let pos_of: Vec<usize> = {
            let mut v = vec![0; k];
            for (pos, &p) in order.iter().enumerate() {
                v[p] = pos;
            }
            v
        };
        let mut preds = vec![Vec::new(); k];
        for (pos, &p) in order.iter().enumerate() {
            for q in base.down_set(p).iter_ones() {
                if q != p {
                    preds[pos].push(pos_of[q]);
                }
            }
        }
        let mut pair_lower = vec![vec![Vec::new(); k]; k];
        for (pos_p, &p) in order.iter().enumerate() {
            for (pos_q, &q) in order.iter().enumerate().take(pos_p) {
                let both = base.down_set(p).inter(base.down_set(q));
                pair_lower[pos_p][pos_q] = both.iter_ones().map(|r| pos_of[r]).collect();
            }
        }
        Search {
            source,
            target,
            order,
            preds,
            pair_lower,
        }
    }

    /// Checks the candidate value `c` for position `k` against the family
    /// assigned so far.
    fn admissible(&self, family: &[u32], k: usize, c: u32) -> bool {
        let t = self.target;
        for &pq in &self.preds[k] {
            if !t.leq(family[pq], c) {
                return false;
            }
        }
        for q in 0..k {
            let m = t.meet(c, family[q]);
            let lower = t.join_of(self.pair_lower[k][q].iter().map(|&r| family[r]));
            if !t.leq(m, lower) {
                return false;
            }
        }
        true
    }

    fn family_to_hom(&self, family: &[u32]) -> Result<FrameHom> {
        let t = self.target;
        let mut value_of_point = vec![0u32; self.order.len()];
        for (pos, &p) in self.order.iter().enumerate() {
            value_of_point[p] = family[pos];
        }
        let table: Vec<u32> = self
            .source
            .elems()
            .iter()
            .map(|e| t.join_of(e.iter_ones().map(|p| value_of_point[p])))
            .collect();
        FrameHom::new(self.source.clone(), self.target.clone(), table)
    }
}

/// Calls `visit` with every admissible generator family over `base`
/// into `target`, presented in base-point indexing. Each family is the
/// restriction of exactly one frame homomorphism out of the downset
/// frame of `base`, so this enumerates homs without materializing their
/// tables. Enumeration order is deterministic.
pub fn for_each_hom_family(
    base: &Poset,
    target: &FrameRef,
    mut visit: impl FnMut(&[u32]),
) -> Result<()> {
    let order = base.linear_extension();
    let k = order.len();
    if k == 0 {
        if target.n() == 1 {
            visit(&[]);
        }
        return Ok(());
    }
    let pos_of: Vec<usize> = {
        let mut v = vec![0; k];
        for (pos, &p) in order.iter().enumerate() {
            v[p] = pos;
        }
        v
    };
    let mut preds = vec![Vec::new(); k];
    for (pos, &p) in order.iter().enumerate() {
        for q in base.down_set(p).iter_ones() {
            if q != p {
                preds[pos].push(pos_of[q]);
            }
        }
    }
    let mut pair_lower = vec![vec![Vec::new(); k]; k];
    for (pos_p, &p) in order.iter().enumerate() {
        for (pos_q, &q) in order.iter().enumerate().take(pos_p) {
            let both = base.down_set(p).inter(base.down_set(q));
            pair_lower[pos_p][pos_q] = both.iter_ones().map(|r| pos_of[r]).collect();
        }
    }
    let tn = target.n() as u32;
    let admissible = |family: &[u32], pos: usize, c: u32| -> bool {
        for &pq in &preds[pos] {
            if !target.leq(family[pq], c) {
                return false;
            }
        }
        for q in 0..pos {
            let m = target.meet(c, family[q]);
            let lower = target.join_of(pair_lower[pos][q].iter().map(|&r| family[r]));
            if !target.leq(m, lower) {
                return false;
            }
        }
        true
    };
    let mut family = vec![0u32; k];
    let mut by_point = vec![0u32; k];
    let mut stack: Vec<u32> = Vec::new();
    // iterative DFS over positions
    let mut pos = 0usize;
    let mut cand = 0u32;
    loop {
        if cand == tn {
            // backtrack
            if pos == 0 {
                break;
            }
            pos -= 1;
            cand = stack.pop().unwrap() + 1;
            continue;
        }
        if admissible(&family, pos, cand) {
            family[pos] = cand;
            if pos + 1 == k {
                if target.join_of(family.iter().copied()) == target.top() {
                    for (p, &v) in order.iter().zip(family.iter()) {
                        by_point[*p] = v;
                    }
                    visit(&by_point);
                }
                cand += 1;
            } else {
                stack.push(cand);
                pos += 1;
                cand = 0;
            }
        } else {
            cand += 1;
        }
    }
    Ok(())
}

/// Calls `visit` with each frame homomorphism `source → target`.
/// Enumeration order is deterministic.
pub fn for_each_frame_hom(
    source: &FrameRef,
    target: &FrameRef,
    mut visit: impl FnMut(&FrameHom),
) -> Result<()> {
    let mut failure = None;
    for_each_hom_family(source.base(), target, |by_point| {
        if failure.is_some() {
            return;
        }
        let table: Vec<u32> = source
            .elems()
            .iter()
            .map(|e| target.join_of(e.iter_ones().map(|p| by_point[p])))
            .collect();
        match FrameHom::new(source.clone(), target.clone(), table) {
            Ok(h) => visit(&h),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// All frame homomorphisms `source → target`, optionally stopping after
/// `limit`.
pub fn frame_homs(
    source: &FrameRef,
    target: &FrameRef,
    limit: Option<usize>,
) -> Result<Vec<FrameHom>> {
    let mut out = Vec::new();
    for_each_frame_hom(source, target, |h| {
        if limit.map(|l| out.len() < l).unwrap_or(true) {
            out.push(h.clone());
        }
    })?;
    if let Some(l) = limit {
        out.truncate(l);
    }
    Ok(out)
}

/// A uniformly seeded (not uniformly distributed) random frame hom:
/// randomized depth-first search taking the first completion.
pub fn random_frame_hom(
    source: &FrameRef,
    target: &FrameRef,
    rng: &mut impl Rng,
) -> Result<Option<FrameHom>> {
    let s = Search::new(source, target);
    let k = s.order.len();
    if k == 0 {
        return Ok(if target.n() == 1 {
            Some(FrameHom::new(source.clone(), target.clone(), vec![0])?)
        } else {
            None
        });
    }
    let tn = s.target.n() as u32;
    let mut family = vec![0u32; k];
    fn go(
        s: &Search,
        family: &mut Vec<u32>,
        k: usize,
        tn: u32,
        rng: &mut impl Rng,
    ) -> Option<()> {
        if k == family.len() {
            let total = s.target.join_of(family.iter().copied());
            return (total == s.target.top()).then_some(());
        }
        let mut cands: Vec<u32> = (0..tn).filter(|&c| s.admissible(family, k, c)).collect();
        cands.shuffle(rng);
        for c in cands {
            family[k] = c;
            if go(s, family, k + 1, tn, rng).is_some() {
                return Some(());
            }
        }
        None
    }
    if go(&s, &mut family, 0, tn, rng).is_some() {
        Ok(Some(s.family_to_hom(&family)?))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::frame::{boolean_frame, chain_frame, Frame};
    use rand::SeedableRng;

    fn caps() -> Caps {
        Caps::default()
    }

    /// Brute-force oracle: filter all |target|^|source| tables through the
    /// literal pairwise homomorphism laws.
    fn brute_count(source: &FrameRef, target: &FrameRef) -> usize {
        let sn = source.n();
        let tn = target.n();
        let mut count = 0usize;
        let mut table = vec![0u32; sn];
        loop {
            let cand = FrameHom::new(source.clone(), target.clone(), table.clone());
            if let Ok(h) = cand {
                if h.validate_pairwise().is_ok() {
                    count += 1;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == sn {
                    return count;
                }
                table[i] += 1;
                if (table[i] as usize) < tn {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn counts_match_brute_force() {
        let c2 = chain_frame(2, &caps()).unwrap();
        let c3 = chain_frame(3, &caps()).unwrap();
        let b2 = boolean_frame(2, &caps()).unwrap();
        for (s, t) in [
            (&c2, &c3),
            (&c3, &c2),
            (&c3, &c3),
            (&b2, &b2),
            (&b2, &c3),
            (&c3, &b2),
        ] {
            let fast = frame_homs(s, t, None).unwrap().len();
            let brute = brute_count(s, t);
            assert_eq!(fast, brute, "{s:?} -> {t:?}");
        }
    }

    #[test]
    fn known_hom_counts() {
        let c2 = chain_frame(2, &caps()).unwrap();
        let c3 = chain_frame(3, &caps()).unwrap();
        let b2 = boolean_frame(2, &caps()).unwrap();
        assert_eq!(frame_homs(&c2, &c3, None).unwrap().len(), 1);
        assert_eq!(frame_homs(&c3, &c3, None).unwrap().len(), 3);
        // Homs between Boolean frames are the functions on atoms.
        assert_eq!(frame_homs(&b2, &b2, None).unwrap().len(), 4);
    }

    #[test]
    fn one_element_frame_edge_cases() {
        let one = Frame::from_leq(1, |_, _| true, &caps()).unwrap();
        let c2 = chain_frame(2, &caps()).unwrap();
        assert_eq!(frame_homs(&one, &one, None).unwrap().len(), 1);
        // No hom from the degenerate frame to C2 (bot = top must go to
        // both bounds), and exactly one the other way.
        assert_eq!(frame_homs(&one, &c2, None).unwrap().len(), 0);
        assert_eq!(frame_homs(&c2, &one, None).unwrap().len(), 1);
    }

    #[test]
    fn random_hom_is_valid_and_deterministic() {
        let c3 = chain_frame(3, &caps()).unwrap();
        let b2 = boolean_frame(2, &caps()).unwrap();
        let mut rng1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = random_frame_hom(&c3, &b2, &mut rng1).unwrap().unwrap();
        let b = random_frame_hom(&c3, &b2, &mut rng2).unwrap().unwrap();
        assert_eq!(a.table(), b.table());
        a.validate_pairwise().unwrap();
    }
}
