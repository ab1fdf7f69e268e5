//! Seeded random generators for the randomized sweeps.

use crate::config::Caps;
use crate::error::Result;
use crate::frame::{boolean_frame, Frame, FrameRef};
use crate::homsearch;
use crate::maps::{FrameHom, LocalicMap};
use crate::poset::Poset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on up to `max_n` elements: a random acyclic relation,
/// transitively closed.
pub fn random_poset(r: &mut impl Rng, max_n: usize) -> Poset {
    let n = r.gen_range(0..=max_n);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.gen_bool(0.4) {
                covers.push((i, j));
            }
        }
    }
    Poset::from_covers(n, &covers).expect("upper-triangular covers are acyclic")
}

/// A random downset frame with at most `max_elems` elements.
pub fn random_frame(r: &mut impl Rng, max_elems: usize, caps: &Caps) -> Result<FrameRef> {
    loop {
        let base = random_poset(r, 4);
        if let Some(count) = base.downset_count(max_elems) {
            if count <= max_elems {
                return Frame::downsets_of(&base, caps);
            }
        }
    }
}

/// A random frame homomorphism between random frames of bounded size.
pub fn random_hom(
    r: &mut impl Rng,
    max_elems: usize,
    caps: &Caps,
) -> Result<FrameHom> {
    loop {
        let source = random_frame(r, max_elems, caps)?;
        let target = random_frame(r, max_elems, caps)?;
        if let Some(h) = homsearch::random_frame_hom(&source, &target, r)? {
            return Ok(h);
        }
    }
}

/// A random closed localic surjection out of a Boolean frame with
/// `atoms` atoms: partition the atoms into blocks and include the
/// subframe of block unions. These are exactly the frame inclusions
/// arising from quotient maps of the corresponding finite sets, hence
/// closed; callers still verify that.
pub fn random_boolean_quotient(
    r: &mut impl Rng,
    atoms: usize,
    caps: &Caps,
) -> Result<LocalicMap> {
    let big = boolean_frame(atoms, caps)?;
    let blocks = if atoms == 0 {
        0
    } else {
        r.gen_range(1..=atoms)
    };
    let mut assignment = vec![0usize; atoms];
    for (i, slot) in assignment.iter_mut().enumerate() {
        *slot = if i < blocks { i } else { r.gen_range(0..blocks) };
    }
    let small = boolean_frame(blocks, caps)?;
    // hom: a subset of blocks goes to the union of its blocks
    let table: Vec<u32> = small
        .elems()
        .iter()
        .map(|bs| {
            let mut bits = crate::bits::Bits::empty(atoms);
            for (atom, &b) in assignment.iter().enumerate() {
                if bs.get(b) {
                    bits.insert(atom);
                }
            }
            big.index_of(&bits).expect("union of blocks is a subset")
        })
        .collect();
    let hom = FrameHom::new(small, big, table)?;
    LocalicMap::from_hom(hom)
}

/// A random subframe inclusion into a Boolean frame, generated by a few
/// random elements and closed under meets and joins. Unlike
/// `random_boolean_quotient` the target subframe need not be Boolean, so
/// the resulting localic surjection need not be closed.
pub fn random_subframe_inclusion(
    r: &mut impl Rng,
    atoms: usize,
    caps: &Caps,
) -> Result<LocalicMap> {
    let big = boolean_frame(atoms, caps)?;
    let mut members: Vec<u32> = vec![big.bot(), big.top()];
    for _ in 0..r.gen_range(0..=3) {
        members.push(r.gen_range(0..big.n() as u32));
    }
    loop {
        let mut grew = false;
        let snapshot = members.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                for c in [big.meet(a, b), big.join(a, b)] {
                    if !members.contains(&c) {
                        members.push(c);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    members.sort_unstable();
    members.dedup();
    let sub = Frame::from_leq(members.len(), |a, b| big.leq(members[a], members[b]), caps)?;
    let table: Vec<u32> = members.clone();
    let hom = FrameHom::new(sub, big.clone(), table)?;
    LocalicMap::from_hom(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;

    #[test]
    fn random_homs_are_valid() {
        let caps = Caps::default();
        let mut r = rng(11);
        for _ in 0..50 {
            let h = random_hom(&mut r, 16, &caps).unwrap();
            h.validate_pairwise().unwrap();
            LocalicMap::from_hom(h).unwrap();
        }
    }

    #[test]
    fn boolean_quotients_are_closed_surjections() {
        let caps = Caps::default();
        let mut r = rng(5);
        for _ in 0..30 {
            let f = random_boolean_quotient(&mut r, 5, &caps).unwrap();
            assert!(f.is_closed().holds);
            assert!(f.is_surjection().unwrap().holds);
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let caps = Caps::default();
        let a = random_hom(&mut rng(99), 12, &caps).unwrap();
        let b = random_hom(&mut rng(99), 12, &caps).unwrap();
        assert_eq!(a.table(), b.table());
    }
}
