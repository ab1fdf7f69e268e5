//! Frame homomorphisms and localic maps.
//!
//! A localic map f : X → Y is carried by a frame homomorphism
//! f* : OY → OX together with its right adjoint f_* : OX → OY. Every
//! `LocalicMap` caches the adjoint at construction and re-validates the
//! adjunction, so maps violating it are unrepresentable. Predicates
//! report the first counterexample pair in index order.

use crate::config::Caps;
use crate::error::{Error, Result, Verdict};
use crate::frame::FrameRef;
use crate::nucleus::Nucleus;

/// Pairwise adjunction validation is quadratic; beyond this many
/// (element, element) pairs the structural validation (unit, counit,
/// monotonicity on covers) is used instead, which pins the adjoint at
/// every single entry.
const LITERAL_VALIDATION_CAP: usize = 1 << 22;

#[derive(Clone)]
pub struct FrameHom {
    source: FrameRef,
    target: FrameRef,
    table: Vec<u32>,
}

impl PartialEq for FrameHom {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.source == other.source && self.target == other.target
    }
}
impl Eq for FrameHom {}

impl std::fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FrameHom{:?}", self.table)
    }
}

impl FrameHom {
    /// Validates and wraps a homomorphism table.
    ///
    /// Validation is generator-based and complete: the table must agree
    /// with the join-extension of its values on join irreducibles, send
    /// bot to bot and top to top, and preserve meets of irreducible
    /// pairs; distributivity then forces preservation of all finite
    /// meets and joins.
    pub fn new(source: FrameRef, target: FrameRef, table: Vec<u32>) -> Result<FrameHom> {
        let h = FrameHom {
            source,
            target,
            table,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.table.len() != s.n() {
            return Err(Error::NotFrameHom(format!(
                "table length {} for a source of size {}",
                self.table.len(),
                s.n()
            )));
        }
        if let Some(&v) = self.table.iter().find(|&&v| v as usize >= t.n()) {
            return Err(Error::NotFrameHom(format!("value {v} out of range")));
        }
        if self.table[s.bot() as usize] != t.bot() {
            return Err(Error::NotFrameHom("bottom is not preserved".into()));
        }
        if self.table[s.top() as usize] != t.top() {
            return Err(Error::NotFrameHom("top is not preserved".into()));
        }
        let (_, ji) = s.join_irreducibles();
        // Every element is the join of the irreducibles below it.
        for i in 0..s.n() as u32 {
            let expected = t.join_of(
                ji.iter()
                    .filter(|&&j| s.leq(j, i))
                    .map(|&j| self.table[j as usize]),
            );
            if self.table[i as usize] != expected {
                return Err(Error::NotFrameHom(format!(
                    "joins not preserved at element {i}"
                )));
            }
        }
        // Meets on irreducible pairs.
        for a in 0..ji.len() {
            for b in 0..=a {
                let lhs = t.meet(self.table[ji[a] as usize], self.table[ji[b] as usize]);
                let meet_ab = s.meet(ji[a], ji[b]);
                if lhs != self.table[meet_ab as usize] {
                    return Err(Error::NotFrameHom(format!(
                        "meets not preserved on irreducibles {} and {}",
                        ji[a], ji[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Literal lattice-homomorphism check over all pairs; used by tests
    /// to cross-validate the generator-based validation.
    pub fn validate_pairwise(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for i in 0..s.n() as u32 {
            for j in 0..s.n() as u32 {
                if self.table[s.meet(i, j) as usize]
                    != t.meet(self.table[i as usize], self.table[j as usize])
                {
                    return Err(Error::NotFrameHom(format!("meet fails at ({i},{j})")));
                }
                if self.table[s.join(i, j) as usize]
                    != t.join(self.table[i as usize], self.table[j as usize])
                {
                    return Err(Error::NotFrameHom(format!("join fails at ({i},{j})")));
                }
            }
        }
        if self.table[s.bot() as usize] != t.bot() || self.table[s.top() as usize] != t.top() {
            return Err(Error::NotFrameHom("bounds not preserved".into()));
        }
        Ok(())
    }

    pub fn identity(frame: FrameRef) -> FrameHom {
        let table = (0..frame.n() as u32).collect();
        FrameHom {
            source: frame.clone(),
            target: frame,
            table,
        }
    }

    /// g ∘ self (self first, then g).
    pub fn then(&self, g: &FrameHom) -> Result<FrameHom> {
        if self.target != g.source {
            return Err(Error::InvalidMap(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(FrameHom {
            source: self.source.clone(),
            target: g.target.clone(),
            table: self
                .table
                .iter()
                .map(|&v| g.table[v as usize])
                .collect(),
        })
    }

    pub fn source(&self) -> &FrameRef {
        &self.source
    }

    pub fn target(&self) -> &FrameRef {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.table.len());
        self.table.iter().all(|&v| seen.insert(v))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.table.len());
        for &v in &self.table {
            seen.insert(v);
        }
        seen.len() == self.target.n()
    }

    #[doc(hidden)]
    pub fn corrupt_entry(&mut self, x: u32, value: u32) {
        self.table[x as usize] = value;
    }
}

/// A localic map X → Y: the frame homomorphism f* : OY → OX (`forward`)
/// plus the computed right adjoint f_* : OX → OY (`direct`).
#[derive(Clone, PartialEq, Eq)]
pub struct LocalicMap {
    forward: FrameHom,
    direct: Vec<u32>,
}

impl std::fmt::Debug for LocalicMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LocalicMap(f*={:?}, f_*={:?})",
            self.forward.table, self.direct
        )
    }
}

impl LocalicMap {
    /// Computes the right adjoint f_*(x) = ⋁{ y | f*(y) ≤ x } and
    /// validates the adjunction and both triangle identities.
    pub fn from_hom(forward: FrameHom) -> Result<LocalicMap> {
        let ox = forward.target.clone(); // domain frame OX of the localic map
        let oy = forward.source.clone();
        let direct = if ox.n() * oy.n() <= LITERAL_VALIDATION_CAP {
            (0..ox.n() as u32)
                .map(|x| {
                    oy.join_of(
                        (0..oy.n() as u32).filter(|&y| ox.leq(forward.apply(y), x)),
                    )
                })
                .collect()
        } else {
            // Meet-irreducible decomposition: right adjoints preserve all
            // meets, and every element is the meet of the meet
            // irreducibles above it.
            let mis = ox.meet_irreducibles();
            let mi_val: Vec<u32> = mis
                .iter()
                .map(|&m| {
                    oy.join_of(
                        (0..oy.n() as u32).filter(|&y| ox.leq(forward.apply(y), m)),
                    )
                })
                .collect();
            (0..ox.n() as u32)
                .map(|x| {
                    oy.meet_of(
                        mis.iter()
                            .zip(&mi_val)
                            .filter(|(&m, _)| ox.leq(x, m))
                            .map(|(_, &v)| v),
                    )
                })
                .collect()
        };
        let map = LocalicMap { forward, direct };
        map.validate()?;
        Ok(map)
    }

    /// Frame of the domain locale X (i.e. the target of f*).
    pub fn domain_frame(&self) -> &FrameRef {
        self.forward.target()
    }

    /// Frame of the codomain locale Y (i.e. the source of f*).
    pub fn codomain_frame(&self) -> &FrameRef {
        self.forward.source()
    }

    pub fn forward(&self) -> &FrameHom {
        &self.forward
    }

    pub fn direct_table(&self) -> &[u32] {
        &self.direct
    }

    #[inline]
    pub fn inverse_image(&self, y: u32) -> u32 {
        self.forward.apply(y)
    }

    #[inline]
    pub fn direct_image(&self, x: u32) -> u32 {
        self.direct[x as usize]
    }

    /// Adjunction and triangle identities. Quadratic pair check when the
    /// frames are small; otherwise unit + counit + monotonicity of f_*
    /// on the cover relation, which together force the adjoint value at
    /// every point.
    pub fn validate(&self) -> Result<()> {
        let ox = self.domain_frame();
        let oy = self.codomain_frame();
        if self.direct.len() != ox.n() {
            return Err(Error::InvalidAdjoint(format!(
                "adjoint table length {} for a frame of size {}",
                self.direct.len(),
                ox.n()
            )));
        }
        if ox.n() * oy.n() <= LITERAL_VALIDATION_CAP {
            for x in 0..ox.n() as u32 {
                for y in 0..oy.n() as u32 {
                    let lhs = ox.leq(self.forward.apply(y), x);
                    let rhs = oy.leq(y, self.direct[x as usize]);
                    if lhs != rhs {
                        return Err(Error::InvalidAdjoint(format!(
                            "adjunction fails at (x={x}, y={y})"
                        )));
                    }
                }
            }
        } else {
            for y in 0..oy.n() as u32 {
                if !oy.leq(y, self.direct[self.forward.apply(y) as usize]) {
                    return Err(Error::InvalidAdjoint(format!("unit fails at y={y}")));
                }
            }
            for x in 0..ox.n() as u32 {
                if !ox.leq(self.forward.apply(self.direct[x as usize]), x) {
                    return Err(Error::InvalidAdjoint(format!("counit fails at x={x}")));
                }
                for up in ox.upper_covers(x) {
                    if !oy.leq(self.direct[x as usize], self.direct[up as usize]) {
                        return Err(Error::InvalidAdjoint(format!(
                            "direct image not monotone between {x} and {up}"
                        )));
                    }
                }
            }
        }
        // Triangle identities.
        for y in 0..oy.n() as u32 {
            let fy = self.forward.apply(y);
            if self.forward.apply(self.direct[fy as usize]) != fy {
                return Err(Error::InvalidAdjoint(format!(
                    "triangle f*·f_*·f* fails at y={y}"
                )));
            }
        }
        for x in 0..ox.n() as u32 {
            let gx = self.direct[x as usize];
            if self.direct[self.forward.apply(gx) as usize] != gx {
                return Err(Error::InvalidAdjoint(format!(
                    "triangle f_*·f*·f_* fails at x={x}"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(frame: FrameRef) -> LocalicMap {
        let forward = FrameHom::identity(frame);
        let direct = (0..forward.source.n() as u32).collect();
        LocalicMap { forward, direct }
    }

    /// g ∘ self as localic maps (forward homs compose the other way).
    pub fn then(&self, g: &LocalicMap) -> Result<LocalicMap> {
        let forward = g.forward.then(&self.forward)?;
        Ok(LocalicMap {
            forward,
            direct: self
                .direct
                .iter()
                .map(|&x| g.direct[x as usize])
                .collect(),
        })
    }

    /// Injections are the maps with f* surjective, equivalently f_*
    /// injective; both characterizations are checked and must agree.
    pub fn is_injection(&self) -> Result<Verdict> {
        let by_forward = self.forward.is_surjective();
        let mut seen = std::collections::HashSet::new();
        let by_direct = self.direct.iter().all(|&v| seen.insert(v));
        if by_forward != by_direct {
            return Err(Error::CharacterizationMismatch(format!(
                "f* surjective = {by_forward} but f_* injective = {by_direct}"
            )));
        }
        Ok(Verdict::from_bool(
            by_forward,
            "inverse image is not surjective",
        ))
    }

    /// Surjections are the maps with f* injective, equivalently f_*
    /// surjective.
    pub fn is_surjection(&self) -> Result<Verdict> {
        let by_forward = self.forward.is_injective();
        let mut seen = std::collections::HashSet::new();
        for &v in &self.direct {
            seen.insert(v);
        }
        let by_direct = seen.len() == self.codomain_frame().n();
        if by_forward != by_direct {
            return Err(Error::CharacterizationMismatch(format!(
                "f* injective = {by_forward} but f_* surjective = {by_direct}"
            )));
        }
        Ok(Verdict::from_bool(
            by_forward,
            "inverse image is not injective",
        ))
    }

    /// Density: f_*(0) = 0.
    pub fn is_dense(&self) -> Verdict {
        let ox = self.domain_frame();
        let oy = self.codomain_frame();
        let v = self.direct[ox.bot() as usize];
        Verdict::from_bool(v == oy.bot(), format!("f_*(0) = {v}"))
    }

    /// The dual Frobenius law f_*(u ∨ f*(v)) = f_*(u) ∨ v over all pairs.
    pub fn is_closed(&self) -> Verdict {
        let ox = self.domain_frame();
        let oy = self.codomain_frame();
        for u in 0..ox.n() as u32 {
            for v in 0..oy.n() as u32 {
                let lhs = self.direct[ox.join(u, self.forward.apply(v)) as usize];
                let rhs = oy.join(self.direct[u as usize], v);
                if lhs != rhs {
                    return Verdict::fail(format!("dual Frobenius fails at (u={u}, v={v})"));
                }
            }
        }
        Verdict::pass()
    }

    /// Properness: closed, and f_* preserves directed joins (literal
    /// enumeration under the compactness cap, otherwise by the
    /// finite-maximum argument).
    pub fn is_proper(&self, caps: &Caps) -> Verdict {
        let closed = self.is_closed();
        if !closed.holds {
            return closed;
        }
        let ox = self.domain_frame();
        let oy = self.codomain_frame();
        let n = ox.n();
        if n <= 62 && (1usize << n) <= caps.compact_literal_cap {
            for mask in 1u64..(1u64 << n) {
                let members: Vec<u32> = (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect();
                let directed = members.iter().all(|&x| {
                    members
                        .iter()
                        .all(|&y| members.iter().any(|&z| ox.leq(x, z) && ox.leq(y, z)))
                });
                if !directed {
                    continue;
                }
                let lhs = self.direct[ox.join_of(members.iter().copied()) as usize];
                let rhs = oy.join_of(members.iter().map(|&x| self.direct[x as usize]));
                if lhs != rhs {
                    return Verdict::fail(format!(
                        "directed join not preserved on {members:?}"
                    ));
                }
            }
        }
        Verdict::pass()
    }

    /// f₊ j = f_* · j · f*, a nucleus on the codomain frame.
    pub fn nucleus_image(&self, j: &Nucleus) -> Result<Nucleus> {
        let oy = self.codomain_frame();
        let table = (0..oy.n() as u32)
            .map(|y| self.direct[j.apply(self.forward.apply(y)) as usize])
            .collect();
        Nucleus::new(oy.clone(), table)
    }

    /// f⁻ j: the join-closure extension determined on generators, sending
    /// o_u ∧ c_v to o_{f*u} ∧ c_{f*v}. Quadratic in the codomain frame;
    /// meant for small carriers.
    pub fn nucleus_preimage(&self, j: &Nucleus) -> Result<Nucleus> {
        let ox = self.domain_frame();
        let oy = self.codomain_frame();
        let mut acc = Nucleus::identity(ox.clone());
        for u in 0..oy.n() as u32 {
            let o = Nucleus::open(oy.clone(), u);
            for v in 0..oy.n() as u32 {
                let g = o.meet(&Nucleus::closed(oy.clone(), v))?;
                if g.leq(j) {
                    let img = Nucleus::open(ox.clone(), self.forward.apply(u))
                        .meet(&Nucleus::closed(ox.clone(), self.forward.apply(v)))?;
                    acc = acc.join(&img)?;
                }
            }
        }
        Ok(acc)
    }

    #[doc(hidden)]
    pub fn corrupt_direct_entry(&mut self, x: u32, value: u32) {
        self.direct[x as usize] = value;
    }

    #[doc(hidden)]
    pub fn corrupt_forward_entry(&mut self, y: u32, value: u32) {
        self.forward.corrupt_entry(y, value);
    }
}

/// The closed sublocale of `frame` at `v`, as a localic injection: the
/// sublocale frame is the interval [v, 1] and the inverse image is
/// x ↦ v ∨ x.
pub fn closed_sublocale_inclusion(frame: &FrameRef, v: u32, caps: &Caps) -> Result<LocalicMap> {
    let members: Vec<u32> = (0..frame.n() as u32).filter(|&x| frame.leq(v, x)).collect();
    let sub = crate::frame::Frame::from_leq(members.len(), |a, b| frame.leq(members[a], members[b]), caps)?;
    let pos = |x: u32| members.iter().position(|&m| m == x).unwrap() as u32;
    let forward = FrameHom::new(
        frame.clone(),
        sub.clone(),
        (0..frame.n() as u32).map(|x| pos(frame.join(v, x))).collect(),
    )?;
    LocalicMap::from_hom(forward)
}
