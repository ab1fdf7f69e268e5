//! Binary frame coproducts and the closed-diagonal Hausdorff check.
//!
//! The coproduct of two finite frames is the downset lattice of the
//! product of their join-irreducible posets. The injections send a to
//! { (p, q) | p ≤ a } and symmetrically; every carrier element is a join
//! of the generators a ⊕ b = u₁(a) ∧ u₂(b), and ⊕ distributes over
//! joins in each slot. The mediating map of a cocone is computed on
//! generators and certified unique by exhaustive hom enumeration when
//! the codomain is small.

use crate::bits::Bits;
use crate::config::Caps;
use crate::error::{Error, Result, Verdict};
use crate::frame::{Frame, FrameRef};
use crate::homsearch::for_each_hom_family;
use crate::maps::{FrameHom, LocalicMap};
use std::collections::HashMap;

/// The result of enumerating all frame homomorphisms out of a coproduct
/// carrier into a fixed codomain, bucketed by the cocone they restrict
/// to along the injections.
pub struct MediatorCensus {
    keys: HashMap<(Vec<u32>, Vec<u32>), usize>,
    pub total: usize,
}

impl MediatorCensus {
    pub fn cocones(&self) -> usize {
        self.keys.len()
    }

    pub fn collision_free(&self) -> bool {
        self.keys.values().all(|&v| v == 1)
    }

    pub fn count_for(&self, h1: &FrameHom, h2: &FrameHom) -> usize {
        self.keys
            .get(&(h1.table().to_vec(), h2.table().to_vec()))
            .copied()
            .unwrap_or(0)
    }
}

pub struct FrameCoproduct {
    pub left: FrameRef,
    pub right: FrameRef,
    pub carrier: FrameRef,
    pub inj1: FrameHom,
    pub inj2: FrameHom,
    /// Join irreducibles of the factors, aligned with the base of the
    /// carrier: base point (p, q) has index p · |right base| + q.
    left_ji: Vec<u32>,
    right_ji: Vec<u32>,
}

/// carrier base point index for the pair (p, q).
#[inline]
fn pair_index(right_base: usize, p: usize, q: usize) -> usize {
    p * right_base + q
}

pub fn coproduct(left: &FrameRef, right: &FrameRef, caps: &Caps) -> Result<FrameCoproduct> {
    let (lbase, left_ji) = left.join_irreducibles();
    let (rbase, right_ji) = right.join_irreducibles();
    let product = lbase.product(&rbase)?;
    let carrier = Frame::downsets_of(&product, caps)?;
    let rb = rbase.len();
    // Base points of the product are positions into the irreducible
    // lists, so cylinders are computed through the order relation rather
    // than the factors' internal bit layout.
    let inj1_table: Vec<u32> = (0..left.n() as u32)
        .map(|a| {
            let mut bits = Bits::empty(product.len());
            for (p, &j) in left_ji.iter().enumerate() {
                if left.leq(j, a) {
                    for q in 0..rb {
                        bits.insert(pair_index(rb, p, q));
                    }
                }
            }
            carrier.index_of(&bits).expect("cylinder is a downset")
        })
        .collect();
    let inj2_table: Vec<u32> = (0..right.n() as u32)
        .map(|b| {
            let mut bits = Bits::empty(product.len());
            for (q, &j) in right_ji.iter().enumerate() {
                if right.leq(j, b) {
                    for p in 0..lbase.len() {
                        bits.insert(pair_index(rb, p, q));
                    }
                }
            }
            carrier.index_of(&bits).expect("cylinder is a downset")
        })
        .collect();
    let inj1 = FrameHom::new(left.clone(), carrier.clone(), inj1_table)?;
    let inj2 = FrameHom::new(right.clone(), carrier.clone(), inj2_table)?;
    Ok(FrameCoproduct {
        left: left.clone(),
        right: right.clone(),
        carrier,
        inj1,
        inj2,
        left_ji,
        right_ji,
    })
}

impl FrameCoproduct {
    /// The generator a ⊕ b = u₁(a) ∧ u₂(b).
    pub fn generator(&self, a: u32, b: u32) -> u32 {
        self.carrier
            .meet(self.inj1.apply(a), self.inj2.apply(b))
    }

    fn right_base_len(&self) -> usize {
        self.right_ji.len()
    }

    /// The factor elements named by a carrier base point.
    fn pair_elements(&self, point: usize) -> (u32, u32) {
        let rb = self.right_base_len();
        (self.left_ji[point / rb], self.right_ji[point % rb])
    }

    /// Every carrier element is the join of the generators named by its
    /// base points, and ⊕ distributes over joins in each coordinate.
    pub fn check_generators(&self) -> Verdict {
        for (i, e) in self.carrier.elems().iter().enumerate() {
            let join = self.carrier.join_of(e.iter_ones().map(|pt| {
                let (a, b) = self.pair_elements(pt);
                self.generator(a, b)
            }));
            if join != i as u32 {
                return Verdict::fail(format!(
                    "carrier element {i} is not the join of its generators"
                ));
            }
        }
        // ⊕ distributes over binary joins in each slot (checked on the
        // left; the right is symmetric through the same carrier algebra).
        let ln = self.left.n() as u32;
        let rn = self.right.n() as u32;
        for a1 in 0..ln {
            for a2 in 0..ln {
                let a = self.left.join(a1, a2);
                for b in 0..rn {
                    let lhs = self.generator(a, b);
                    let rhs = self
                        .carrier
                        .join(self.generator(a1, b), self.generator(a2, b));
                    if lhs != rhs {
                        return Verdict::fail(format!(
                            "⊕ fails to distribute at ({a1}∨{a2}) ⊕ {b}"
                        ));
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// The mediating frame homomorphism of a cocone (h₁, h₂), defined on
    /// generators by a ⊕ b ↦ h₁(a) ∧ h₂(b) and extended by joins.
    pub fn mediator(&self, h1: &FrameHom, h2: &FrameHom) -> Result<FrameHom> {
        if h1.source() != &self.left || h2.source() != &self.right {
            return Err(Error::InvalidMap("cocone legs have wrong sources".into()));
        }
        if h1.target() != h2.target() {
            return Err(Error::InvalidMap("cocone legs disagree on codomain".into()));
        }
        let n = h1.target();
        let rb = self.right_base_len();
        let point_value: Vec<u32> = (0..self.left_ji.len() * rb)
            .map(|pt| {
                let (a, b) = self.pair_elements(pt);
                n.meet(h1.apply(a), h2.apply(b))
            })
            .collect();
        let table: Vec<u32> = self
            .carrier
            .elems()
            .iter()
            .map(|e| n.join_of(e.iter_ones().map(|pt| point_value[pt])))
            .collect();
        let hom = FrameHom::new(self.carrier.clone(), n.clone(), table).map_err(|e| {
            Error::NoMediator(format!("generator extension is not a frame hom: {e}"))
        })?;
        for a in 0..self.left.n() as u32 {
            if hom.apply(self.inj1.apply(a)) != h1.apply(a) {
                return Err(Error::NoMediator(format!(
                    "mediator does not commute with the left injection at {a}"
                )));
            }
        }
        for b in 0..self.right.n() as u32 {
            if hom.apply(self.inj2.apply(b)) != h2.apply(b) {
                return Err(Error::NoMediator(format!(
                    "mediator does not commute with the right injection at {b}"
                )));
            }
        }
        Ok(hom)
    }

    /// Exhaustive census of the frame homomorphisms carrier → N, keyed by
    /// their restrictions along the two injections. Enumeration works at
    /// the level of generator families, so the census of a large carrier
    /// into a small codomain stays cheap.
    pub fn mediator_census(&self, n: &FrameRef) -> Result<MediatorCensus> {
        let rb = self.right_base_len();
        // cylinder base points of each factor element
        let left_cyl: Vec<Vec<usize>> = (0..self.left.n() as u32)
            .map(|a| {
                let mut v = Vec::new();
                for (p, &j) in self.left_ji.iter().enumerate() {
                    if self.left.leq(j, a) {
                        for q in 0..rb {
                            v.push(pair_index(rb, p, q));
                        }
                    }
                }
                v
            })
            .collect();
        let right_cyl: Vec<Vec<usize>> = (0..self.right.n() as u32)
            .map(|b| {
                let mut v = Vec::new();
                for (q, &j) in self.right_ji.iter().enumerate() {
                    if self.right.leq(j, b) {
                        for p in 0..self.left_ji.len() {
                            v.push(pair_index(rb, p, q));
                        }
                    }
                }
                v
            })
            .collect();
        let mut keys: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
        let mut total = 0usize;
        for_each_hom_family(self.carrier.base(), n, |fam| {
            let k1: Vec<u32> = left_cyl
                .iter()
                .map(|cyl| n.join_of(cyl.iter().map(|&pt| fam[pt])))
                .collect();
            let k2: Vec<u32> = right_cyl
                .iter()
                .map(|cyl| n.join_of(cyl.iter().map(|&pt| fam[pt])))
                .collect();
            *keys.entry((k1, k2)).or_insert(0) += 1;
            total += 1;
        })?;
        Ok(MediatorCensus { keys, total })
    }

    /// Uniqueness check for one cocone against a precomputed census.
    pub fn verify_universal_property_with(
        &self,
        census: &MediatorCensus,
        h1: &FrameHom,
        h2: &FrameHom,
    ) -> Result<FrameHom> {
        let mediator = self.mediator(h1, h2)?;
        match census
            .keys
            .get(&(h1.table().to_vec(), h2.table().to_vec()))
            .copied()
            .unwrap_or(0)
        {
            0 => Err(Error::NoMediator(
                "exhaustive enumeration found no commuting homomorphism".into(),
            )),
            1 => Ok(mediator),
            k => Err(Error::MultipleMediators(format!(
                "exhaustive enumeration found {k} commuting homomorphisms"
            ))),
        }
    }

    /// Mediator plus a uniqueness certificate: when the codomain is small
    /// enough, every frame hom out of the carrier is enumerated and
    /// exactly one may satisfy the cocone equations; above the cap,
    /// uniqueness holds by generator determination since every carrier
    /// element is a join of generators.
    pub fn verify_universal_property(
        &self,
        h1: &FrameHom,
        h2: &FrameHom,
        caps: &Caps,
    ) -> Result<FrameHom> {
        let n = h1.target();
        if n.n() <= caps.hom_exhaustive_cap {
            let census = self.mediator_census(n)?;
            self.verify_universal_property_with(&census, h1, h2)
        } else {
            self.mediator(h1, h2)
        }
    }

    /// The codiagonal ∇ : L + L → L, i.e. the mediator of two identity
    /// legs; on generators ∇(a ⊕ b) = a ∧ b.
    pub fn codiagonal(&self) -> Result<FrameHom> {
        if self.left != self.right {
            return Err(Error::InvalidMap("codiagonal needs equal factors".into()));
        }
        self.mediator(
            &FrameHom::identity(self.left.clone()),
            &FrameHom::identity(self.right.clone()),
        )
    }
}

/// Hausdorff check by the closedness of the diagonal.
///
/// Forms the diagonal's nucleus j = δ_* ∘ δ* on the carrier of L + L
/// (where δ* is the codiagonal) and tests literally whether j is the
/// closed nucleus at j(0). The carrier is never materialized: its
/// elements are the downsets of the product of the join-irreducible
/// poset with itself, enumerated by a depth-first walk that carries
/// ∇(w) along, and the adjoint is evaluated structurally as
/// δ_*(x) = { (p, q) | p̂ ∧ q̂ ≤ x }.
pub fn check_hausdorff(frame: &FrameRef, caps: &Caps) -> Result<Verdict> {
    let (base, ji) = frame.join_irreducibles();
    let product = base.product(&base)?;
    let points = product.len();
    if points > 64 {
        return Err(Error::SizeOverflow {
            what: "diagonal check base",
            count: points,
            cap: 64,
        });
    }
    let rb = base.len();
    let point_meet: Vec<u32> = (0..points)
        .map(|pt| frame.meet(ji[pt / rb], ji[pt % rb]))
        .collect();
    // j(w) depends on w only through ∇(w), so tabulate it per frame
    // element once.
    let delta_star_of: Vec<u64> = (0..frame.n() as u32)
        .map(|x| {
            let mut mask = 0u64;
            for (pt, &m) in point_meet.iter().enumerate() {
                if frame.leq(m, x) {
                    mask |= 1 << pt;
                }
            }
            mask
        })
        .collect();
    let j_bot = delta_star_of[frame.bot() as usize];
    // strict predecessors of each point, in a linear extension
    let order = product.linear_extension();
    let pred_mask: Vec<u64> = order
        .iter()
        .map(|&pt| {
            let mut m = 0u64;
            for q in product.down_set(pt).iter_ones() {
                if q != pt {
                    m |= 1 << q;
                }
            }
            m
        })
        .collect();
    let budget = caps.downset_cap.saturating_mul(64).max(caps.downset_cap);
    struct Walk<'a> {
        frame: &'a FrameRef,
        order: &'a [usize],
        pred_mask: &'a [u64],
        point_meet: &'a [u32],
        delta_star_of: &'a [u64],
        j_bot: u64,
        visited: usize,
        budget: usize,
    }
    impl Walk<'_> {
        fn go(&mut self, k: usize, w: u64, nabla: u32) -> Result<Option<String>> {
            if k == self.order.len() {
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::SizeOverflow {
                        what: "diagonal check enumeration",
                        count: self.visited,
                        cap: self.budget,
                    });
                }
                let j_w = self.delta_star_of[nabla as usize];
                if j_w != self.j_bot | w {
                    return Ok(Some(format!(
                        "diagonal nucleus differs from the closed nucleus at the downset {w:#b}"
                    )));
                }
                return Ok(None);
            }
            if let Some(witness) = self.go(k + 1, w, nabla)? {
                return Ok(Some(witness));
            }
            if self.pred_mask[k] & !w == 0 {
                let pt = self.order[k];
                let grown = self.frame.join(nabla, self.point_meet[pt]);
                if let Some(witness) = self.go(k + 1, w | 1 << pt, grown)? {
                    return Ok(Some(witness));
                }
            }
            Ok(None)
        }
    }
    let mut walk = Walk {
        frame,
        order: &order,
        pred_mask: &pred_mask,
        point_meet: &point_meet,
        delta_star_of: &delta_star_of,
        j_bot,
        visited: 0,
        budget,
    };
    match walk.go(0, 0, frame.bot())? {
        Some(witness) => Ok(Verdict::fail(witness)),
        None => Ok(Verdict::pass()),
    }
}

/// Constructs the diagonal as an honest localic map (with validated
/// adjoint); intended for cross-checks on small carriers.
pub fn diagonal_map(frame: &FrameRef, caps: &Caps) -> Result<LocalicMap> {
    let cp = coproduct(frame, frame, caps)?;
    LocalicMap::from_hom(cp.codiagonal()?)
}
