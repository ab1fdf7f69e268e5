//! Finite posets: the dual skeletons of finite distributive lattices.
//!
//! Elements are dense integer indices `0..n`. The order is stored as bit
//! rows in both directions, so downward closure tests and principal
//! downsets are single bitset operations.

use crate::bits::Bits;
use crate::config::Caps;
use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `up[i]` = { j | i ≤ j }, including i itself.
    up: Vec<Bits>,
    /// `down[i]` = { j | j ≤ i }, including i itself.
    down: Vec<Bits>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers())
    }
}

impl Poset {
    /// Builds a poset from an explicit relation, validating reflexivity,
    /// antisymmetry, and transitivity.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut up = vec![Bits::empty(n); n];
        let mut down = vec![Bits::empty(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        let p = Poset { n, up, down };
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset from a cover (or any acyclic) relation by taking the
    /// reflexive-transitive closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!(
                    "cover ({a},{b}) out of range for n={n}"
                )));
            }
        }
        // Warshall closure over the cover edges.
        let mut leq = vec![Bits::empty(n); n];
        for i in 0..n {
            leq[i].insert(i);
        }
        for &(a, b) in covers {
            leq[a].insert(b);
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i].get(k) {
                    let row = leq[k].clone();
                    leq[i].union_in_place(&row);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i].get(j) && leq[j].get(i) {
                    return Err(Error::InvalidPoset(format!(
                        "cover relation has a cycle through {i} and {j}"
                    )));
                }
            }
        }
        Poset::from_leq(n, |i, j| leq[i].get(j))
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_leq(n, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn chain(n: usize) -> Poset {
        Poset::from_leq(n, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn empty() -> Poset {
        Poset::antichain(0)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.up[i].get(i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "antisymmetry fails on ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in self.up[i].iter_ones() {
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::InvalidPoset(format!(
                        "transitivity fails above ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    #[inline]
    pub fn down_set(&self, i: usize) -> &Bits {
        &self.down[i]
    }

    #[inline]
    pub fn up_set(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    /// True if `s` is downward closed.
    pub fn is_downset(&self, s: &Bits) -> bool {
        s.iter_ones().all(|i| self.down[i].is_subset(s))
    }

    pub fn is_upset(&self, s: &Bits) -> bool {
        s.iter_ones().all(|i| self.up[i].is_subset(s))
    }

    /// The cover relation: `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.leq(i, j) {
                    let between = self.up[i].inter(&self.down[j]);
                    if between.count() == 2 {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    }

    /// Elements ordered by a linear extension (every element appears after
    /// everything below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));
        order
    }

    /// All downsets, in canonical order (cardinality, then bit pattern).
    ///
    /// The enumeration walks a linear extension, doubling only where the
    /// new element's strict predecessors are already present; the cap
    /// bounds the result size, not the carrier.
    pub fn downsets(&self, cap: usize) -> Result<Vec<Bits>> {
        let order = self.linear_extension();
        let mut sets: Vec<Bits> = vec![Bits::empty(self.n)];
        for &e in &order {
            let mut pred = self.down[e].clone();
            pred.remove(e);
            let mut extra = Vec::new();
            for d in &sets {
                if pred.is_subset(d) {
                    let mut nd = d.clone();
                    nd.insert(e);
                    extra.push(nd);
                }
            }
            if sets.len() + extra.len() > cap {
                return Err(Error::SizeOverflow {
                    what: "downset enumeration",
                    count: sets.len() + extra.len(),
                    cap,
                });
            }
            sets.extend(extra);
        }
        sets.sort_by(|a, b| a.canonical_cmp(b));
        Ok(sets)
    }

    /// Number of downsets, without the cap error.
    pub fn downset_count(&self, cap: usize) -> Option<usize> {
        self.downsets(cap).ok().map(|d| d.len())
    }

    /// Componentwise order on pairs; the pair `(i, j)` has index `i * |Q| + j`.
    pub fn product(&self, other: &Poset) -> Result<Poset> {
        const CARRIER_CAP: usize = 1 << 20;
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= CARRIER_CAP)
            .ok_or(Error::SizeOverflow {
                what: "poset product",
                count: self.n.saturating_mul(other.n),
                cap: CARRIER_CAP,
            })?;
        let qn = other.n;
        Poset::from_leq(n, |a, b| {
            let (i1, j1) = (a / qn, a % qn);
            let (i2, j2) = (b / qn, b % qn);
            self.leq(i1, i2) && other.leq(j1, j2)
        })
    }

    /// Disjoint union; elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let n = self.n + other.n;
        let sn = self.n;
        Poset::from_leq(n, |a, b| {
            if a < sn && b < sn {
                self.leq(a, b)
            } else if a >= sn && b >= sn {
                other.leq(a - sn, b - sn)
            } else {
                false
            }
        })
        .expect("disjoint union of posets is a poset")
    }

    /// Invariant-refined color classes used to prune isomorphism search.
    fn colors(&self) -> Vec<u64> {
        let mut color: Vec<u64> = (0..self.n)
            .map(|i| (self.down[i].count() as u64) << 32 | self.up[i].count() as u64)
            .collect();
        for _ in 0..2 {
            let mut next = Vec::with_capacity(self.n);
            for i in 0..self.n {
                let mut below: Vec<u64> = self.down[i].iter_ones().map(|j| color[j]).collect();
                below.sort_unstable();
                let mut above: Vec<u64> = self.up[i].iter_ones().map(|j| color[j]).collect();
                above.sort_unstable();
                let mut h = std::collections::hash_map::DefaultHasher::new();
                use std::hash::{Hash, Hasher};
                color[i].hash(&mut h);
                below.hash(&mut h);
                above.hash(&mut h);
                next.push(h.finish());
            }
            color = next;
        }
        color
    }

    /// Finds an order isomorphism `self → other`, i.e. a bijection `π`
    /// with `i ≤ j ⟺ π(i) ≤ π(j)`, by backtracking over color classes.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let ca = self.colors();
        let cb = other.colors();
        let mut sa = ca.clone();
        let mut sb = cb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        // Assign in linear extension order so partial order checks only
        // look downward.
        let order = self.linear_extension();
        fn go(
            p: &Poset,
            q: &Poset,
            order: &[usize],
            k: usize,
            ca: &[u64],
            cb: &[u64],
            mapping: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let i = order[k];
            for t in 0..q.len() {
                if used[t] || ca[i] != cb[t] {
                    continue;
                }
                let ok = order[..k].iter().all(|&j| {
                    p.leq(j, i) == q.leq(mapping[j], t) && p.leq(i, j) == q.leq(t, mapping[j])
                });
                if ok {
                    mapping[i] = t;
                    used[t] = true;
                    if go(p, q, order, k + 1, ca, cb, mapping, used) {
                        return true;
                    }
                    used[t] = false;
                    mapping[i] = usize::MAX;
                }
            }
            false
        }
        if go(self, other, &order, 0, &ca, &cb, &mut mapping, &mut used) {
            Some(mapping)
        } else {
            None
        }
    }

    /// Canonical key: the minimal adjacency encoding over all
    /// color-respecting relabelings. Two posets are isomorphic iff their
    /// keys are equal (the exhaustive permutation check keeps this exact
    /// at the small sizes the enumerator handles).
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.n;
        if n == 0 {
            return vec![0];
        }
        let colors = self.colors();
        // Group element ids by color, ordering groups by sorted color value.
        let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
        let mut sorted: Vec<(u64, usize)> = colors.iter().cloned().zip(0..n).collect();
        sorted.sort_unstable();
        for (c, i) in sorted {
            match classes.last_mut() {
                Some((lc, v)) if *lc == c => v.push(i),
                _ => classes.push((c, vec![i])),
            }
        }
        let mut best: Option<Vec<u8>> = None;
        let mut perm = Vec::with_capacity(n);
        fn encode(p: &Poset, perm: &[usize]) -> Vec<u8> {
            let n = perm.len();
            let mut bits = vec![0u8; n * n];
            for (a, &i) in perm.iter().enumerate() {
                for (b, &j) in perm.iter().enumerate() {
                    if p.leq(i, j) {
                        bits[a * n + b] = 1;
                    }
                }
            }
            bits
        }
        fn go(
            p: &Poset,
            classes: &[(u64, Vec<usize>)],
            k: usize,
            perm: &mut Vec<usize>,
            best: &mut Option<Vec<u8>>,
        ) {
            if k == classes.len() {
                let enc = encode(p, perm);
                if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
                    *best = Some(enc);
                }
                return;
            }
            let members = &classes[k].1;
            permute(p, classes, k, members, &mut Vec::new(), perm, best);
        }
        fn permute(
            p: &Poset,
            classes: &[(u64, Vec<usize>)],
            k: usize,
            members: &[usize],
            chosen: &mut Vec<usize>,
            perm: &mut Vec<usize>,
            best: &mut Option<Vec<u8>>,
        ) {
            if chosen.len() == members.len() {
                let len_before = perm.len();
                perm.extend_from_slice(chosen);
                go(p, classes, k + 1, perm, best);
                perm.truncate(len_before);
                return;
            }
            for &m in members {
                if !chosen.contains(&m) {
                    chosen.push(m);
                    permute(p, classes, k, members, chosen, perm, best);
                    chosen.pop();
                }
            }
        }
        go(self, &classes, 0, &mut perm, &mut best);
        let mut key = vec![n as u8];
        key.extend(best.expect("at least one permutation"));
        key
    }
}

/// Enumerates all posets with at most `max_n` elements, one representative
/// per isomorphism class, optionally keeping only posets whose downset
/// count stays within `downset_bound`.
///
/// Works by single-element extension: each poset on `k+1` elements arises
/// from one on `k` elements by inserting a new element with a prescribed
/// strict down-set `D` (a downset) and strict up-set `U` (an upset),
/// where `D × U` must already be in the order. The downset bound prunes
/// soundly because adding elements never decreases the downset count.
pub fn enumerate_posets(max_n: usize, downset_bound: Option<usize>) -> Vec<Poset> {
    let caps = Caps::default();
    let within = |p: &Poset| match downset_bound {
        None => true,
        Some(b) => p.downset_count(b + 1).map(|c| c <= b).unwrap_or(false),
    };
    let mut out = Vec::new();
    let empty = Poset::empty();
    if within(&empty) {
        out.push(empty.clone());
    }
    let mut frontier = vec![empty];
    for _k in 1..=max_n {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut next = Vec::new();
        for p in &frontier {
            let n = p.len();
            let downsets = p.downsets(caps.downset_cap).expect("small poset");
            let upsets: Vec<Bits> = downsets.iter().map(|d| d.complement()).collect();
            for d in &downsets {
                for u in &upsets {
                    if !d.is_disjoint(u) {
                        continue;
                    }
                    // every element of d must lie below every element of u
                    let ok = d
                        .iter_ones()
                        .all(|a| u.iter_ones().all(|b| p.leq(a, b)));
                    if !ok {
                        continue;
                    }
                    let q = Poset::from_leq(n + 1, |i, j| {
                        if i == j {
                            true
                        } else if i < n && j < n {
                            p.leq(i, j)
                        } else if i == n {
                            j < n && u.get(j)
                        } else {
                            d.get(i)
                        }
                    })
                    .expect("extension is a poset");
                    if !within(&q) {
                        continue;
                    }
                    if seen.insert(q.canonical_key()) {
                        next.push(q);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out
}
