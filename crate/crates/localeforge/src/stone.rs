//! Boolean centers, ideal completion, and Stone frame recognition.
//!
//! The center of a frame is its Boolean algebra of complemented
//! elements. On a finite frame every ideal is principal, so the ideal
//! frame is isomorphic to the frame itself via x ↦ ↓x; the map
//! φ(u) = { c complemented | c ≤ u } into the ideals of the center is an
//! order isomorphism exactly for the frames of Boolean algebras, which
//! is what recognizes Stone frames (and filtral objects) here.

use crate::bits::Bits;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::frame::{Frame, FrameRef};
use crate::maps::FrameHom;

/// A finite Boolean algebra presented by its atom count; elements are
/// subsets of atoms encoded as masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolAlg {
    pub atoms: usize,
}

impl BoolAlg {
    pub fn size(&self) -> usize {
        1 << self.atoms
    }

    pub fn complement(&self, x: u64) -> u64 {
        !x & ((1u64 << self.atoms) - 1)
    }
}

/// The Boolean center of `frame`: the sublattice of complemented
/// elements, as a `BoolAlg` together with the inclusion table indexed by
/// atom masks.
pub fn boolean_center(frame: &FrameRef) -> (BoolAlg, Vec<u32>) {
    let complemented: Vec<u32> = (0..frame.n() as u32)
        .filter(|&i| frame.complement_of(i).is_some())
        .collect();
    // Atoms of the center: minimal non-bottom complemented elements.
    let atoms: Vec<u32> = complemented
        .iter()
        .copied()
        .filter(|&c| {
            c != frame.bot()
                && complemented
                    .iter()
                    .all(|&d| d == frame.bot() || d == c || !frame.leq(d, c))
        })
        .collect();
    let ba = BoolAlg { atoms: atoms.len() };
    let embedding: Vec<u32> = (0..ba.size() as u64)
        .map(|mask| {
            frame.join_of(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &a)| a),
            )
        })
        .collect();
    if cfg!(debug_assertions) {
        let mut c = complemented.clone();
        c.sort_unstable();
        let mut e = embedding.clone();
        e.sort_unstable();
        e.dedup();
        assert_eq!(c, e, "center embedding must hit exactly the complemented elements");
    }
    (ba, embedding)
}

/// True when the center embedding is onto, i.e. the frame is a Boolean
/// lattice.
pub fn center_is_onto(frame: &FrameRef) -> bool {
    let (ba, _) = boolean_center(frame);
    ba.size() == frame.n()
}

/// An ideal: a downward-closed subset closed under finite joins
/// (including the empty join, so bottom is always a member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub members: Bits,
}

/// All ideals of the frame, canonically ordered. Exhaustive subset
/// filtering up to 16 elements; larger frames enumerate the principal
/// ideals, which is all of them (a finite join-closed downset contains
/// the join of all its members).
pub fn ideals(frame: &FrameRef) -> Vec<Ideal> {
    let n = frame.n();
    let mut out: Vec<Bits> = Vec::new();
    if n <= 16 {
        for mask in 0u32..(1u32 << n) {
            let mut b = Bits::empty(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    b.insert(i);
                }
            }
            if !b.get(frame.bot() as usize) {
                continue;
            }
            let downclosed = b
                .iter_ones()
                .all(|i| (0..n).all(|j| !frame.leq(j as u32, i as u32) || b.get(j)));
            if !downclosed {
                continue;
            }
            let joinclosed = b
                .iter_ones()
                .all(|i| b.iter_ones().all(|j| b.get(frame.join(i as u32, j as u32) as usize)));
            if joinclosed {
                out.push(b);
            }
        }
    } else {
        for x in 0..n as u32 {
            let mut b = Bits::empty(n);
            for j in 0..n as u32 {
                if frame.leq(j, x) {
                    b.insert(j as usize);
                }
            }
            out.push(b);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.into_iter().map(|members| Ideal { members }).collect()
}

/// The frame of ideals ordered by inclusion, with the unit x ↦ ↓x. On a
/// finite frame the unit is an isomorphism since every ideal is
/// principal.
pub fn ideal_frame(frame: &FrameRef, caps: &Caps) -> Result<(FrameRef, Vec<u32>)> {
    let ids = ideals(frame);
    let m = ids.len();
    let lattice = Frame::from_leq(m, |a, b| ids[a].members.is_subset(&ids[b].members), caps)?;
    let unit: Vec<u32> = (0..frame.n() as u32)
        .map(|x| {
            let principal: Vec<usize> = (0..frame.n() as u32)
                .filter(|&j| frame.leq(j, x))
                .map(|j| j as usize)
                .collect();
            let bits = Bits::from_indices(frame.n(), &principal);
            ids.iter()
                .position(|i| i.members == bits)
                .expect("principal downsets are ideals") as u32
        })
        .collect();
    Ok((lattice, unit))
}

/// The frame homomorphism Idl(h) : Idl(L) → Idl(M) induced by a lattice
/// homomorphism h, sending an ideal I to the downward closure of h[I].
/// Returns the map together with both ideal frames.
pub fn ideal_map(
    source: &FrameRef,
    target: &FrameRef,
    h: &[u32],
    caps: &Caps,
) -> Result<(FrameHom, Vec<u32>, Vec<u32>)> {
    validate_lattice_hom(source, target, h)?;
    let src_ids = ideals(source);
    let dst_ids = ideals(target);
    let (src_frame, src_unit) = ideal_frame(source, caps)?;
    let (dst_frame, dst_unit) = ideal_frame(target, caps)?;
    let table: Vec<u32> = src_ids
        .iter()
        .map(|i| {
            let mut img = Bits::empty(target.n());
            for x in i.members.iter_ones() {
                let hx = h[x];
                for j in 0..target.n() as u32 {
                    if target.leq(j, hx) {
                        img.insert(j as usize);
                    }
                }
            }
            dst_ids
                .iter()
                .position(|d| d.members == img)
                .expect("downward closure of a lattice-hom image is an ideal")
                as u32
        })
        .collect();
    let hom = FrameHom::new(src_frame, dst_frame, table)?;
    Ok((hom, src_unit, dst_unit))
}

/// A bounded lattice homomorphism preserves meets, joins, and both
/// bounds; on finite carriers this is the same as a frame homomorphism.
pub fn validate_lattice_hom(source: &FrameRef, target: &FrameRef, h: &[u32]) -> Result<()> {
    if h.len() != source.n() {
        return Err(Error::NotLatticeHom(format!(
            "table length {} for a lattice of size {}",
            h.len(),
            source.n()
        )));
    }
    for i in 0..source.n() as u32 {
        for j in 0..=i {
            if h[source.meet(i, j) as usize] != target.meet(h[i as usize], h[j as usize]) {
                return Err(Error::NotLatticeHom(format!("meet fails at ({i},{j})")));
            }
            if h[source.join(i, j) as usize] != target.join(h[i as usize], h[j as usize]) {
                return Err(Error::NotLatticeHom(format!("join fails at ({i},{j})")));
            }
        }
    }
    if h[source.bot() as usize] != target.bot() || h[source.top() as usize] != target.top() {
        return Err(Error::NotLatticeHom("bounds not preserved".into()));
    }
    Ok(())
}

/// The outcome of computing φ : L → Idl(B(L)).
#[derive(Debug, Clone)]
pub struct Phi {
    /// For each element of L, the index of the ideal { c ∈ B(L) | c ≤ u }
    /// in the ideal frame of the center.
    pub table: Vec<u32>,
    /// The ideal frame of the Boolean center.
    pub ideal_frame: FrameRef,
    pub is_iso: bool,
}

/// Computes φ(u) = { c complemented | c ≤ u } and reports whether it is
/// an order isomorphism onto ideals of the center; `is_iso` is what it
/// means for the frame to be a Stone frame.
pub fn phi(frame: &FrameRef, caps: &Caps) -> Result<Phi> {
    let (ba, embedding) = boolean_center(frame);
    // The center as its own frame, elements ordered by atom mask.
    let center = Frame::from_leq(ba.size(), |a, b| {
        frame.leq(embedding[a], embedding[b])
    }, caps)?;
    let (idl, _unit) = ideal_frame(&center, caps)?;
    let ids = ideals(&center);
    let table: Vec<u32> = (0..frame.n() as u32)
        .map(|u| {
            let mut below = Bits::empty(center.n());
            for (c, &img) in embedding.iter().enumerate() {
                if frame.leq(img, u) {
                    below.insert(c);
                }
            }
            ids.iter()
                .position(|i| i.members == below)
                .expect("φ lands in ideals of the center") as u32
        })
        .collect();
    let mut distinct = table.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let bijective = distinct.len() == frame.n() && distinct.len() == idl.n();
    let is_iso = bijective
        && (0..frame.n() as u32).all(|u| {
            (0..frame.n() as u32)
                .all(|v| frame.leq(u, v) == idl.leq(table[u as usize], table[v as usize]))
        });
    Ok(Phi {
        is_iso,
        table,
        ideal_frame: idl,
    })
}

/// Stone frames are those where φ is an order isomorphism.
pub fn is_stone(frame: &FrameRef, caps: &Caps) -> Result<bool> {
    Ok(phi(frame, caps)?.is_iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{boolean_frame, chain_frame, enumerate_distributive_lattices};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn center_of_standard_frames() {
        let (ba, emb) = boolean_center(&chain_frame(2, &caps()).unwrap());
        assert_eq!(ba.atoms, 1);
        assert_eq!(emb, vec![0, 1]);

        // C3: only the bounds are complemented.
        let (ba, emb) = boolean_center(&chain_frame(3, &caps()).unwrap());
        assert_eq!(ba.atoms, 1);
        assert_eq!(emb, vec![0, 2]);

        let (ba, _) = boolean_center(&boolean_frame(2, &caps()).unwrap());
        assert_eq!(ba.size(), 4);
        assert!(center_is_onto(&boolean_frame(2, &caps()).unwrap()));
        assert!(!center_is_onto(&chain_frame(3, &caps()).unwrap()));
    }

    #[test]
    fn center_embedding_is_a_lattice_hom() {
        for f in enumerate_distributive_lattices(7, &caps()) {
            let (ba, emb) = boolean_center(&f);
            let center = Frame::from_leq(ba.size(), |a, b| f.leq(emb[a], emb[b]), &caps()).unwrap();
            validate_lattice_hom(&center, &f, &emb).unwrap();
        }
    }

    #[test]
    fn all_ideals_are_principal_on_finite_frames() {
        for f in enumerate_distributive_lattices(7, &caps()) {
            let ids = ideals(&f);
            assert_eq!(ids.len(), f.n());
            for i in &ids {
                let max = f.join_of(i.members.iter_ones().map(|x| x as u32));
                assert!(i.members.get(max as usize), "non-principal ideal found");
            }
        }
    }

    #[test]
    fn ideal_frame_is_isomorphic_via_unit() {
        for f in [
            chain_frame(2, &caps()).unwrap(),
            chain_frame(3, &caps()).unwrap(),
            boolean_frame(2, &caps()).unwrap(),
        ] {
            let (idl, unit) = ideal_frame(&f, &caps()).unwrap();
            assert_eq!(idl.n(), f.n());
            // unit is a bijective order embedding
            let mut u = unit.clone();
            u.sort_unstable();
            u.dedup();
            assert_eq!(u.len(), f.n());
            for i in 0..f.n() as u32 {
                for j in 0..f.n() as u32 {
                    assert_eq!(
                        f.leq(i, j),
                        idl.leq(unit[i as usize], unit[j as usize])
                    );
                }
            }
        }
    }

    #[test]
    fn ideal_map_identity_and_naturality() {
        let c3 = chain_frame(3, &caps()).unwrap();
        let id: Vec<u32> = (0..3).collect();
        let (hom, src_unit, dst_unit) = ideal_map(&c3, &c3, &id, &caps()).unwrap();
        assert_eq!(hom.table(), &[0, 1, 2]);
        // Naturality with the units: Idl(h) ∘ unit = unit ∘ h.
        for x in 0..3u32 {
            assert_eq!(hom.apply(src_unit[x as usize]), dst_unit[id[x as usize] as usize]);
        }
    }

    #[test]
    fn ideal_map_of_embedding() {
        let c2 = chain_frame(2, &caps()).unwrap();
        let c3 = chain_frame(3, &caps()).unwrap();
        let h = vec![0u32, 2];
        let (hom, src_unit, dst_unit) = ideal_map(&c2, &c3, &h, &caps()).unwrap();
        for x in 0..2u32 {
            assert_eq!(
                hom.apply(src_unit[x as usize]),
                dst_unit[h[x as usize] as usize]
            );
        }
    }

    #[test]
    fn ideal_map_respects_composition() {
        use crate::homsearch::frame_homs;
        let c2 = chain_frame(2, &caps()).unwrap();
        let c3 = chain_frame(3, &caps()).unwrap();
        let b2 = boolean_frame(2, &caps()).unwrap();
        for h in frame_homs(&c2, &c3, None).unwrap() {
            for g in frame_homs(&c3, &b2, None).unwrap() {
                let composite: Vec<u32> = h.table().iter().map(|&v| g.apply(v)).collect();
                let (m_hg, _, _) = ideal_map(&c2, &b2, &composite, &caps()).unwrap();
                let (m_h, _, _) = ideal_map(&c2, &c3, h.table(), &caps()).unwrap();
                let (m_g, _, _) = ideal_map(&c3, &b2, g.table(), &caps()).unwrap();
                let chained = m_h.then(&m_g).unwrap();
                assert_eq!(m_hg.table(), chained.table());
            }
        }
    }

    #[test]
    fn phi_detects_stone_frames() {
        assert!(phi(&chain_frame(2, &caps()).unwrap(), &caps()).unwrap().is_iso);
        assert!(phi(&boolean_frame(2, &caps()).unwrap(), &caps()).unwrap().is_iso);
        let p = phi(&chain_frame(3, &caps()).unwrap(), &caps()).unwrap();
        assert!(!p.is_iso);
        // φ identifies m with 0: both only dominate the complemented 0.
        assert_eq!(p.table[0], p.table[1]);
    }

    #[test]
    fn stone_iff_boolean_at_small_sizes() {
        for f in enumerate_distributive_lattices(8, &caps()) {
            assert_eq!(
                is_stone(&f, &caps()).unwrap(),
                center_is_onto(&f),
                "mismatch on {f:?}"
            );
        }
    }
}
