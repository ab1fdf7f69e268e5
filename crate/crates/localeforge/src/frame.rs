//! Finite frames.
//!
//! A finite frame is exactly a finite distributive lattice, and every
//! finite distributive lattice is the downset lattice of its poset of
//! join-irreducible elements. `Frame` stores that normal form: each
//! element is a bit vector over the base poset, meets are intersections,
//! joins are unions, and Heyting implication is computed pointwise on the
//! base. Small frames additionally carry precomputed meet/join/implication
//! tables so the exhaustive property sweeps run on table lookups.
//!
//! Frames built from an explicit order keep the caller's element
//! numbering; distributivity is validated eagerly and non-distributive
//! inputs are rejected rather than represented.

use crate::bits::Bits;
use crate::config::Caps;
use crate::error::{Error, Result, Verdict};
use crate::poset::{enumerate_posets, Poset};
use std::collections::HashMap;
use std::sync::Arc;

struct Tables {
    n: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
    imp: Vec<u32>,
    /// leq_rows[i] = { j | i ≤ j } as a bit row over element indices.
    leq_rows: Vec<Bits>,
}

pub struct Frame {
    /// The poset of join irreducibles (the Birkhoff dual).
    base: Poset,
    /// elems[i] is the downset of `base` representing element i.
    elems: Vec<Bits>,
    index: HashMap<Bits, u32>,
    bot: u32,
    top: u32,
    tables: Option<Tables>,
}

pub type FrameRef = Arc<Frame>;

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.elems == other.elems
    }
}
impl Eq for Frame {}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Frame(n={}, base={:?})", self.elems.len(), self.base)
    }
}

impl Frame {
    /// The frame of all downsets of `base`, in canonical element order
    /// (cardinality first, then bit pattern), so `bot = 0` and
    /// `top = n − 1`.
    pub fn downsets_of(base: &Poset, caps: &Caps) -> Result<FrameRef> {
        let elems = base.downsets(caps.downset_cap)?;
        Frame::from_parts(base.clone(), elems, caps)
    }

    /// Builds a frame from an explicit order relation, keeping the given
    /// element numbering. Validates the bounded-lattice laws and
    /// distributivity, then computes the Birkhoff normal form.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool, caps: &Caps) -> Result<FrameRef> {
        if n == 0 {
            return Err(Error::InvalidFrame("a frame needs at least one element".into()));
        }
        if n > caps.table_cap {
            return Err(Error::SizeOverflow {
                what: "explicit frame construction",
                count: n,
                cap: caps.table_cap,
            });
        }
        let order = Poset::from_leq(n, &leq).map_err(|e| Error::InvalidFrame(e.to_string()))?;
        // Meets and joins as maxima/minima of bound sets.
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let lower = order.down_set(i).inter(order.down_set(j));
                let m = lower
                    .iter_ones()
                    .find(|&m| lower.is_subset(order.down_set(m)));
                let upper = order.up_set(i).inter(order.up_set(j));
                let u = upper
                    .iter_ones()
                    .find(|&u| upper.is_subset(order.up_set(u)));
                match (m, u) {
                    (Some(m), Some(u)) => {
                        meet[i * n + j] = m as u32;
                        join[i * n + j] = u as u32;
                    }
                    _ => {
                        return Err(Error::InvalidFrame(format!(
                            "elements {i} and {j} lack a meet or join"
                        )))
                    }
                }
            }
        }
        let bot = (0..n)
            .find(|&b| (0..n).all(|j| order.leq(b, j)))
            .ok_or_else(|| Error::InvalidFrame("no bottom element".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|j| order.leq(j, t)))
            .ok_or_else(|| Error::InvalidFrame("no top element".into()))?;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let lhs = meet[u * n + join[v * n + w] as usize];
                    let rhs = join[(meet[u * n + v] as usize) * n + meet[u * n + w] as usize];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(format!(
                            "u={u}, v={v}, w={w}: u∧(v∨w)={lhs} but (u∧v)∨(u∧w)={rhs}"
                        )));
                    }
                }
            }
        }
        // Join irreducibles: exactly one lower cover.
        let mut ji = Vec::new();
        for x in 0..n {
            let strictly_below: Vec<usize> = (0..n).filter(|&y| y != x && order.leq(y, x)).collect();
            let covers = strictly_below
                .iter()
                .filter(|&&y| {
                    !strictly_below
                        .iter()
                        .any(|&z| z != y && order.leq(y, z))
                })
                .count();
            if covers == 1 {
                ji.push(x);
            }
        }
        let k = ji.len();
        let base = Poset::from_leq(k, |a, b| order.leq(ji[a], ji[b]))
            .map_err(|e| Error::InvalidFrame(e.to_string()))?;
        let elems: Vec<Bits> = (0..n)
            .map(|i| {
                let mut b = Bits::empty(k);
                for (a, &p) in ji.iter().enumerate() {
                    if order.leq(p, i) {
                        b.insert(a);
                    }
                }
                b
            })
            .collect();
        let mut distinct = elems.clone();
        distinct.sort_by(|a, b| a.canonical_cmp(b));
        distinct.dedup();
        if distinct.len() != n {
            return Err(Error::NotDistributive(
                "join-irreducible representation is not faithful".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if order.leq(i, j) != elems[i].is_subset(&elems[j]) {
                    return Err(Error::NotDistributive(format!(
                        "order of {i},{j} not reflected by join irreducibles"
                    )));
                }
            }
        }
        let frame = Frame::from_parts(base, elems, caps)?;
        debug_assert_eq!(frame.bot as usize, bot);
        debug_assert_eq!(frame.top as usize, top);
        Ok(frame)
    }

    fn from_parts(base: Poset, elems: Vec<Bits>, caps: &Caps) -> Result<FrameRef> {
        let n = elems.len();
        if n == 0 {
            return Err(Error::InvalidFrame("frame has no elements".into()));
        }
        if n > caps.downset_cap {
            return Err(Error::SizeOverflow {
                what: "frame carrier",
                count: n,
                cap: caps.downset_cap,
            });
        }
        let mut index = HashMap::with_capacity(n);
        let mut bot = None;
        let mut top = None;
        let full = Bits::full(base.len());
        for (i, e) in elems.iter().enumerate() {
            if !base.is_downset(e) {
                return Err(Error::InvalidFrame(format!(
                    "element {i} is not a downset of the base"
                )));
            }
            if index.insert(e.clone(), i as u32).is_some() {
                return Err(Error::InvalidFrame(format!("duplicate element {i}")));
            }
            if e.is_empty() {
                bot = Some(i as u32);
            }
            if *e == full {
                top = Some(i as u32);
            }
        }
        let bot = bot.ok_or_else(|| Error::InvalidFrame("missing bottom".into()))?;
        let top = top.ok_or_else(|| Error::InvalidFrame("missing top".into()))?;
        let mut frame = Frame {
            base,
            elems,
            index,
            bot,
            top,
            tables: None,
        };
        // Meet/join closure: intersections and unions of downsets must be
        // present for the carrier to be a sublattice of the full downset
        // lattice (it always is when built from `downsets_of`).
        if frame.elems.len() <= caps.table_cap {
            frame.build_tables()?;
        } else {
            for i in 0..frame.elems.len().min(64) {
                for j in 0..frame.elems.len().min(64) {
                    let m = frame.elems[i].inter(&frame.elems[j]);
                    if !frame.index.contains_key(&m) {
                        return Err(Error::InvalidFrame(format!(
                            "carrier not closed under meets at ({i},{j})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(frame))
    }

    fn build_tables(&mut self) -> Result<()> {
        let n = self.elems.len();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        let mut imp = vec![0u32; n * n];
        let mut leq_rows = vec![Bits::empty(n); n];
        for i in 0..n {
            for j in 0..n {
                let m = self.elems[i].inter(&self.elems[j]);
                let u = self.elems[i].union(&self.elems[j]);
                let mi = *self.index.get(&m).ok_or_else(|| {
                    Error::InvalidFrame(format!("carrier not closed under meets at ({i},{j})"))
                })?;
                let ui = *self.index.get(&u).ok_or_else(|| {
                    Error::InvalidFrame(format!("carrier not closed under joins at ({i},{j})"))
                })?;
                meet[i * n + j] = mi;
                join[i * n + j] = ui;
                if self.elems[i].is_subset(&self.elems[j]) {
                    leq_rows[i].insert(j);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let b = self.imp_bits(&self.elems[i], &self.elems[j]);
                imp[i * n + j] = *self
                    .index
                    .get(&b)
                    .ok_or_else(|| Error::InvalidFrame("implication left the carrier".into()))?;
            }
        }
        self.tables = Some(Tables {
            n,
            meet,
            join,
            imp,
            leq_rows,
        });
        Ok(())
    }

    /// u → v on raw downsets: the points whose principal downset meets u
    /// inside v. This is the largest downset w with w ∩ u ⊆ v.
    fn imp_bits(&self, u: &Bits, v: &Bits) -> Bits {
        let mut out = Bits::empty(self.base.len());
        for p in 0..self.base.len() {
            if self.base.down_set(p).inter(u).is_subset(v) {
                out.insert(p);
            }
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn bot(&self) -> u32 {
        self.bot
    }

    #[inline]
    pub fn top(&self) -> u32 {
        self.top
    }

    #[inline]
    pub fn base(&self) -> &Poset {
        &self.base
    }

    #[inline]
    pub fn elem(&self, i: u32) -> &Bits {
        &self.elems[i as usize]
    }

    pub fn elems(&self) -> &[Bits] {
        &self.elems
    }

    pub fn index_of(&self, bits: &Bits) -> Option<u32> {
        self.index.get(bits).copied()
    }

    #[inline]
    pub fn leq(&self, i: u32, j: u32) -> bool {
        match &self.tables {
            Some(t) => t.leq_rows[i as usize].get(j as usize),
            None => self.elems[i as usize].is_subset(&self.elems[j as usize]),
        }
    }

    #[inline]
    pub fn meet(&self, i: u32, j: u32) -> u32 {
        match &self.tables {
            Some(t) => t.meet[i as usize * t.n + j as usize],
            None => self.index[&self.elems[i as usize].inter(&self.elems[j as usize])],
        }
    }

    #[inline]
    pub fn join(&self, i: u32, j: u32) -> u32 {
        match &self.tables {
            Some(t) => t.join[i as usize * t.n + j as usize],
            None => self.index[&self.elems[i as usize].union(&self.elems[j as usize])],
        }
    }

    /// Heyting implication: the largest w with i ∧ w ≤ j.
    #[inline]
    pub fn imp(&self, i: u32, j: u32) -> u32 {
        match &self.tables {
            Some(t) => t.imp[i as usize * t.n + j as usize],
            None => self.index[&self.imp_bits(&self.elems[i as usize], &self.elems[j as usize])],
        }
    }

    /// Pseudocomplement ¬i = i → 0.
    #[inline]
    pub fn neg(&self, i: u32) -> u32 {
        self.imp(i, self.bot)
    }

    pub fn join_of(&self, items: impl IntoIterator<Item = u32>) -> u32 {
        let mut acc = self.elems[self.bot as usize].clone();
        for i in items {
            acc.union_in_place(&self.elems[i as usize]);
        }
        self.index[&acc]
    }

    pub fn meet_of(&self, items: impl IntoIterator<Item = u32>) -> u32 {
        let mut acc = self.elems[self.top as usize].clone();
        for i in items {
            acc.inter_in_place(&self.elems[i as usize]);
        }
        self.index[&acc]
    }

    /// Element indices sorted by a linear extension of the frame order.
    pub fn linear_extension(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.n() as u32).collect();
        order.sort_by_key(|&i| (self.elems[i as usize].count(), i));
        order
    }

    /// Upper covers of an element: add one minimal point outside it.
    pub fn upper_covers(&self, i: u32) -> Vec<u32> {
        let e = &self.elems[i as usize];
        let mut out = Vec::new();
        for p in 0..self.base.len() {
            if e.get(p) {
                continue;
            }
            let mut strict_down = self.base.down_set(p).clone();
            strict_down.remove(p);
            if strict_down.is_subset(e) {
                let mut up = e.clone();
                up.insert(p);
                out.push(self.index[&up]);
            }
        }
        out.sort_unstable();
        out
    }

    /// Lower covers: remove one maximal point.
    pub fn lower_covers(&self, i: u32) -> Vec<u32> {
        let e = &self.elems[i as usize];
        let mut out = Vec::new();
        for p in e.iter_ones() {
            let mut strict_up = self.base.up_set(p).clone();
            strict_up.remove(p);
            if strict_up.is_disjoint(e) {
                let mut down = e.clone();
                down.remove(p);
                out.push(self.index[&down]);
            }
        }
        out.sort_unstable();
        out
    }

    /// The poset of join-irreducible elements (those with exactly one
    /// lower cover) with the induced order, plus their element indices.
    /// Satisfies `downsets_of(join_irreducibles(L)) ≅ L`.
    pub fn join_irreducibles(&self) -> (Poset, Vec<u32>) {
        let ji: Vec<u32> = (0..self.n() as u32)
            .filter(|&x| self.lower_covers(x).len() == 1)
            .collect();
        let poset = Poset::from_leq(ji.len(), |a, b| self.leq(ji[a], ji[b]))
            .expect("induced order is a poset");
        (poset, ji)
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<u32> {
        (0..self.n() as u32)
            .filter(|&x| self.upper_covers(x).len() == 1)
            .collect()
    }

    /// Finds a complement of `i` if one exists: the first j in index
    /// order with i ∧ j = 0 and i ∨ j = 1.
    pub fn complement_of(&self, i: u32) -> Option<u32> {
        (0..self.n() as u32)
            .find(|&j| self.meet(i, j) == self.bot && self.join(i, j) == self.top)
    }

    /// A lattice isomorphism to `other`, found by searching for an
    /// isomorphism of the join-irreducible posets and transporting
    /// downsets across it.
    pub fn isomorphism_to(&self, other: &Frame) -> Option<Vec<u32>> {
        if self.n() != other.n() {
            return None;
        }
        let pi = self.base.isomorphism_to(&other.base)?;
        let mut map = Vec::with_capacity(self.n());
        for e in &self.elems {
            let mut img = Bits::empty(other.base.len());
            for p in e.iter_ones() {
                img.insert(pi[p]);
            }
            map.push(other.index_of(&img)?);
        }
        Some(map)
    }

    // ----- locale properties -----

    /// Open-nucleus table u → (−) as a raw element mapping.
    pub fn open_table(&self, u: u32) -> Vec<u32> {
        (0..self.n() as u32).map(|x| self.imp(u, x)).collect()
    }

    /// Closed-nucleus table v ∨ (−) as a raw element mapping.
    pub fn closed_table(&self, v: u32) -> Vec<u32> {
        (0..self.n() as u32).map(|x| self.join(v, x)).collect()
    }

    /// Compactness: every directed set with join = top contains top.
    ///
    /// Checked literally by enumerating directed subsets while `2^n` is
    /// within the cap; beyond that a finite directed set always contains
    /// its own join, so the answer is `true` by the finite-maximum
    /// argument and the verdict records which method ran.
    pub fn check_compact(&self, caps: &Caps) -> (Verdict, CompactMethod) {
        let n = self.n();
        if n <= 62 && (1usize << n) <= caps.compact_literal_cap {
            for mask in 1u64..(1u64 << n) {
                let members: Vec<u32> = (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect();
                let join = self.join_of(members.iter().copied());
                if join != self.top || members.contains(&self.top) {
                    continue;
                }
                let directed = members.iter().all(|&x| {
                    members
                        .iter()
                        .all(|&y| members.iter().any(|&z| self.leq(x, z) && self.leq(y, z)))
                });
                if directed {
                    return (
                        Verdict::fail(format!("directed set {members:?} joins to top without containing it")),
                        CompactMethod::Literal,
                    );
                }
            }
            (Verdict::pass(), CompactMethod::Literal)
        } else {
            (Verdict::pass(), CompactMethod::FiniteMaximum)
        }
    }

    /// v is well inside u when ¬v ∨ u = 1.
    pub fn well_inside(&self, v: u32, u: u32) -> bool {
        self.join(self.neg(v), u) == self.top
    }

    /// Regularity: every u is the join of the elements well inside it.
    pub fn check_regular(&self) -> Verdict {
        for u in 0..self.n() as u32 {
            let join = self.join_of((0..self.n() as u32).filter(|&v| self.well_inside(v, u)));
            if join != u {
                return Verdict::fail(format!(
                    "element {u}: join of well-inside elements is {join}"
                ));
            }
        }
        Verdict::pass()
    }

    /// Normality: a ∨ b = 1 forces disjoint u, v with a ∨ u = 1 = b ∨ v.
    pub fn check_normal(&self) -> Verdict {
        let n = self.n() as u32;
        for a in 0..n {
            for b in 0..n {
                if self.join(a, b) != self.top {
                    continue;
                }
                // Pseudocomplements witness normality in the common case.
                let (na, nb) = (self.neg(a), self.neg(b));
                if self.join(a, na) == self.top
                    && self.join(b, nb) == self.top
                    && self.meet(na, nb) == self.bot
                {
                    continue;
                }
                let found = (0..n).any(|u| {
                    self.join(a, u) == self.top
                        && (0..n).any(|v| {
                            self.join(b, v) == self.top && self.meet(u, v) == self.bot
                        })
                });
                if !found {
                    return Verdict::fail(format!("no disjoint neighbourhoods for a={a}, b={b}"));
                }
            }
        }
        Verdict::pass()
    }

    /// Subfitness, in both standard forms.
    ///
    /// Nucleus form: every open nucleus is the pointwise meet of the
    /// closed nuclei above it. Classical form: u ≰ v gives some a with
    /// u ∨ a = 1 ≠ v ∨ a. The two are equivalent here, so a disagreement
    /// signals a table corruption rather than a property failure.
    pub fn check_subfit(&self) -> Result<Verdict> {
        let n = self.n() as u32;
        let mut nucleus_form = Verdict::pass();
        'outer: for u in 0..n {
            let o = self.open_table(u);
            let mut meet: Vec<u32> = vec![self.top; n as usize];
            for v in 0..n {
                let c = self.closed_table(v);
                if (0..n as usize).all(|x| self.leq(o[x], c[x])) {
                    for x in 0..n as usize {
                        meet[x] = self.meet(meet[x], c[x]);
                    }
                }
            }
            if meet != o {
                let x = (0..n as usize).find(|&x| meet[x] != o[x]).unwrap();
                nucleus_form = Verdict::fail(format!(
                    "open nucleus of {u} differs from the meet of closed nuclei above it at {x}"
                ));
                break 'outer;
            }
        }
        let mut classical_form = Verdict::pass();
        'outer2: for u in 0..n {
            for v in 0..n {
                if self.leq(u, v) {
                    continue;
                }
                let witness = (0..n)
                    .any(|a| self.join(u, a) == self.top && self.join(v, a) != self.top);
                if !witness {
                    classical_form =
                        Verdict::fail(format!("u={u} ≰ v={v} admits no separating element"));
                    break 'outer2;
                }
            }
        }
        if nucleus_form.holds != classical_form.holds {
            return Err(Error::SubfitFormsDisagree(format!(
                "nucleus form: {nucleus_form}; classical form: {classical_form}"
            )));
        }
        Ok(nucleus_form)
    }

    /// Boolean means the center embedding is onto, i.e. every element is
    /// complemented.
    pub fn is_boolean(&self) -> bool {
        (0..self.n() as u32).all(|i| self.complement_of(i).is_some())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactMethod {
    Literal,
    FiniteMaximum,
}

/// Convenience builders for the standard examples.
pub fn chain_frame(n_elems: usize, caps: &Caps) -> Result<FrameRef> {
    if n_elems == 0 {
        return Err(Error::InvalidFrame("a chain frame needs at least one element".into()));
    }
    Frame::downsets_of(&Poset::chain(n_elems - 1), caps)
}

pub fn boolean_frame(atoms: usize, caps: &Caps) -> Result<FrameRef> {
    Frame::downsets_of(&Poset::antichain(atoms), caps)
}

/// All finite distributive lattices with at most `max_elems` elements,
/// one per isomorphism class, via their Birkhoff duals.
pub fn enumerate_distributive_lattices(max_elems: usize, caps: &Caps) -> Vec<FrameRef> {
    if max_elems == 0 {
        return Vec::new();
    }
    enumerate_posets(max_elems.saturating_sub(1), Some(max_elems))
        .into_iter()
        .map(|p| Frame::downsets_of(&p, caps).expect("bounded enumeration"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn c2() -> FrameRef {
        chain_frame(2, &caps()).unwrap()
    }
    fn c3() -> FrameRef {
        chain_frame(3, &caps()).unwrap()
    }
    fn b2() -> FrameRef {
        boolean_frame(2, &caps()).unwrap()
    }

    #[test]
    fn chain_structure() {
        let f = c3();
        assert_eq!(f.n(), 3);
        assert_eq!(f.bot(), 0);
        assert_eq!(f.top(), 2);
        assert_eq!(f.meet(1, 2), 1);
        assert_eq!(f.join(1, 2), 2);
        // Heyting on the chain: m → 0 = 0, m → m = 1.
        assert_eq!(f.imp(1, 0), 0);
        assert_eq!(f.imp(1, 1), 2);
        assert_eq!(f.neg(1), 0);
    }

    #[test]
    fn downsets_of_point_is_c2_and_antichain2_is_square() {
        let f = Frame::downsets_of(&Poset::antichain(1), &caps()).unwrap();
        assert_eq!(f.n(), 2);
        let g = b2();
        assert_eq!(g.n(), 4);
        assert!(g.is_boolean());
        assert!(!c3().is_boolean());
    }

    #[test]
    fn from_leq_rejects_non_distributive() {
        // Diamond M3: bottom, three incomparable atoms, top.
        let leq = |i: usize, j: usize| i == j || i == 0 || j == 4;
        match Frame::from_leq(5, leq, &caps()) {
            Err(Error::NotDistributive(_)) => {}
            other => panic!("expected NotDistributive, got {other:?}"),
        }
        // Pentagon N5: 0 < a < c < 1 and 0 < b < 1.
        let n5 = |i: usize, j: usize| {
            i == j
                || i == 0
                || j == 4
                || (i, j) == (1, 3)
        };
        match Frame::from_leq(5, n5, &caps()) {
            Err(Error::NotDistributive(_)) => {}
            other => panic!("expected NotDistributive, got {other:?}"),
        }
    }

    #[test]
    fn from_leq_keeps_user_numbering() {
        // C3 with indices reversed: 0 = top, 2 = bottom.
        let f = Frame::from_leq(3, |i, j| i >= j, &caps()).unwrap();
        assert_eq!(f.bot(), 2);
        assert_eq!(f.top(), 0);
        assert_eq!(f.join(1, 2), 1);
    }

    #[test]
    fn birkhoff_round_trip_small() {
        for lat in enumerate_distributive_lattices(8, &caps()) {
            let (ji, _) = lat.join_irreducibles();
            let back = Frame::downsets_of(&ji, &caps()).unwrap();
            assert!(
                lat.isomorphism_to(&back).is_some(),
                "round trip failed for {lat:?}"
            );
        }
    }

    #[test]
    fn join_irreducibles_of_standard_frames() {
        let (p, _) = c2().join_irreducibles();
        assert_eq!(p.len(), 1);
        let (p, _) = b2().join_irreducibles();
        assert!(p.isomorphism_to(&Poset::antichain(2)).is_some());
        let (p, _) = c3().join_irreducibles();
        assert!(p.isomorphism_to(&Poset::chain(2)).is_some());
    }

    #[test]
    fn residuation_and_pseudocomplement() {
        for f in enumerate_distributive_lattices(7, &caps()) {
            let n = f.n() as u32;
            for u in 0..n {
                for v in 0..n {
                    let i = f.imp(u, v);
                    // u ∧ (u → v) ≤ v and w ≤ u → v exactly when u ∧ w ≤ v.
                    assert!(f.leq(f.meet(u, i), v));
                    for w in 0..n {
                        assert_eq!(f.leq(f.meet(u, w), v), f.leq(w, i));
                    }
                }
                let nu = f.neg(u);
                for w in 0..n {
                    assert_eq!(f.meet(u, w) == f.bot(), f.leq(w, nu));
                }
            }
        }
    }

    #[test]
    fn distributive_lattice_counts_up_to_8() {
        let lats = enumerate_distributive_lattices(8, &caps());
        let mut by_size = [0usize; 9];
        for l in &lats {
            by_size[l.n()] += 1;
        }
        assert_eq!(by_size[1..], [1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn compactness_is_automatic_for_finite_frames() {
        for f in [c2(), c3(), boolean_frame(3, &caps()).unwrap()] {
            let (v, m) = f.check_compact(&caps());
            assert!(v.holds);
            assert_eq!(m, CompactMethod::Literal);
        }
    }

    #[test]
    fn regular_normal_subfit_examples() {
        assert!(b2().check_regular().holds);
        assert!(b2().check_normal().holds);
        assert!(b2().check_subfit().unwrap().holds);

        assert!(c2().check_regular().holds);
        assert!(c2().check_normal().holds);
        assert!(c2().check_subfit().unwrap().holds);

        let f = c3();
        assert!(!f.check_regular().holds);
        assert!(!f.check_subfit().unwrap().holds);
        // Chains are normal: a ∨ b = 1 forces a = 1 or b = 1, and then
        // (0, 1) or (1, 0) separate. Regularity still fails because
        // subfitness does.
        assert!(f.check_normal().holds);
    }

    #[test]
    fn covers_and_irreducibles_on_square() {
        let f = b2();
        assert_eq!(f.upper_covers(f.bot()).len(), 2);
        assert_eq!(f.lower_covers(f.top()).len(), 2);
        assert_eq!(f.meet_irreducibles().len(), 2);
    }

    #[test]
    fn frame_isomorphism_respects_structure() {
        let f = Frame::from_leq(3, |i, j| i >= j, &caps()).unwrap();
        let g = c3();
        let iso = f.isomorphism_to(&g).unwrap();
        for i in 0..3u32 {
            for j in 0..3u32 {
                assert_eq!(
                    f.leq(i, j),
                    g.leq(iso[i as usize], iso[j as usize])
                );
            }
        }
        assert!(c3().isomorphism_to(&b2()).is_none());
    }
}
