//! The subobject functor from finite sets into compact Hausdorff locales.
//!
//! An object X goes to the frame of its subobject lattice with the
//! reversed order: concretely the powerset of X with joins given by
//! intersection: and a map f goes to the localic map whose inverse
//! image is preimage and whose direct image is the image operator. At
//! finite scale the compact Hausdorff locales are exactly the finite
//! Boolean frames, and every check needed for this functor to be a
//! pretopos embedding (functoriality, faithfulness, preservation of
//! equalizers, products, coproducts and regular epis, bijectivity on
//! subobjects) is run exhaustively by `verify_embedding`.
//!
//! Encoding: the frame element for a subobject S is the downset given by
//! the complement of S over the antichain base, so the frame order is
//! reverse inclusion of subobjects, frame joins intersect subobjects,
//! and the frame bottom is the full subobject.

use crate::bits::Bits;
use crate::config::Caps;
use crate::coproduct::{coproduct, FrameCoproduct};
use crate::error::{Error, Result, Verdict};
use crate::finset::{
    all_maps, all_subobjects, coproduct as finset_coproduct, equalizer, image_factorization,
    pair_index, product, terminal_map, FinMap, FinObj, Subobject,
};
use crate::frame::{boolean_frame, chain_frame, Frame, FrameRef};
use crate::maps::{closed_sublocale_inclusion, FrameHom, LocalicMap};
use crate::nucleus::Nucleus;
use crate::poset::Poset;
use crate::report::{CheckResult, Report};
use crate::stone;

/// The image of an object: the finite set together with the frame of its
/// reversed subobject lattice.
#[derive(Debug, Clone)]
pub struct FObj {
    pub set: FinObj,
    pub frame: FrameRef,
}

impl FObj {
    pub fn new(set: FinObj, caps: &Caps) -> Result<FObj> {
        let frame = Frame::downsets_of(&Poset::antichain(set.0), caps)?;
        Ok(FObj { set, frame })
    }

    /// Frame element of a subobject: the downset of its complement.
    pub fn elem_of_sub(&self, s: &Subobject) -> u32 {
        debug_assert_eq!(s.parent, self.set.0);
        let comp = s.complement();
        let mut bits = Bits::empty(self.set.0);
        for i in 0..self.set.0 {
            if comp.contains(i) {
                bits.insert(i);
            }
        }
        self.frame.index_of(&bits).expect("powerset is complete")
    }

    pub fn sub_of_elem(&self, e: u32) -> Subobject {
        let bits = self.frame.elem(e);
        let mut mask = 0u64;
        for i in bits.iter_ones() {
            mask |= 1 << i;
        }
        Subobject {
            parent: self.set.0,
            mask,
        }
        .complement()
    }
}

/// The image of a morphism: a localic map whose inverse image is the
/// preimage operator and whose computed right adjoint must coincide with
/// the image operator.
#[derive(Debug, Clone)]
pub struct FMor {
    pub map: FinMap,
    pub src: FObj,
    pub dst: FObj,
    pub loc: LocalicMap,
}

pub fn f_obj(x: FinObj, caps: &Caps) -> Result<FObj> {
    FObj::new(x, caps)
}

pub fn f_mor_between(src: &FObj, dst: &FObj, f: &FinMap) -> Result<FMor> {
    if f.src != src.set || f.dst != dst.set {
        return Err(Error::InvalidMap("map endpoints do not match".into()));
    }
    let forward_table: Vec<u32> = (0..dst.frame.n() as u32)
        .map(|e| src.elem_of_sub(&f.preimage_of(&dst.sub_of_elem(e))))
        .collect();
    let forward = FrameHom::new(dst.frame.clone(), src.frame.clone(), forward_table)?;
    let loc = LocalicMap::from_hom(forward)?;
    let fm = FMor {
        map: f.clone(),
        src: src.clone(),
        dst: dst.clone(),
        loc,
    };
    let direct = direct_image_agrees(&fm);
    if !direct.holds {
        return Err(Error::InvalidAdjoint(
            direct.witness.unwrap_or_else(|| "image mismatch".into()),
        ));
    }
    Ok(fm)
}

pub fn f_mor(f: &FinMap, caps: &Caps) -> Result<FMor> {
    let src = FObj::new(f.src, caps)?;
    let dst = FObj::new(f.dst, caps)?;
    f_mor_between(&src, &dst, f)
}

/// The computed right adjoint of the preimage homomorphism must be the
/// image operator on subobjects.
pub fn direct_image_agrees(fm: &FMor) -> Verdict {
    for s in all_subobjects(fm.src.set) {
        let via_adjoint = fm.loc.direct_image(fm.src.elem_of_sub(&s));
        let via_image = fm.dst.elem_of_sub(&fm.map.image_of(&s));
        if via_adjoint != via_image {
            return Verdict::fail(format!(
                "adjoint and image operator disagree on subobject {:#b}",
                s.mask
            ));
        }
    }
    Verdict::pass()
}

/// Object-level requirements: the frame is compact, regular, Hausdorff,
/// Boolean, and a Stone frame (every finite set is filtral).
pub fn check_f_obj(x: &FObj, caps: &Caps) -> Result<Verdict> {
    let (compact, _) = x.frame.check_compact(caps);
    if !compact.holds {
        return Ok(compact);
    }
    let regular = x.frame.check_regular();
    if !regular.holds {
        return Ok(regular);
    }
    let hausdorff = crate::coproduct::check_hausdorff(&x.frame, caps)?;
    if !hausdorff.holds {
        return Ok(hausdorff);
    }
    if !stone::center_is_onto(&x.frame) {
        return Ok(Verdict::fail("subobject frame is not Boolean"));
    }
    if !stone::is_stone(&x.frame, caps)? {
        return Ok(Verdict::fail("subobject frame is not a Stone frame"));
    }
    Ok(Verdict::pass())
}

/// Morphism-level requirements: validated adjoint pair, closedness, and
/// preservation of monos and regular epis.
pub fn check_f_mor(fm: &FMor) -> Result<Verdict> {
    fm.loc.validate().map_err(|e| Error::InvalidAdjoint(format!(
        "map {:?}: {e}",
        fm.map.table
    )))?;
    let direct = direct_image_agrees(fm);
    if !direct.holds {
        return Ok(direct);
    }
    let closed = fm.loc.is_closed();
    if !closed.holds {
        return Ok(Verdict::fail(format!(
            "image of map {:?} is not closed: {}",
            fm.map.table,
            closed.witness.unwrap_or_default()
        )));
    }
    if fm.map.is_injective() && !fm.loc.is_injection()?.holds {
        return Ok(Verdict::fail(format!(
            "mono {:?} not sent to a localic injection",
            fm.map.table
        )));
    }
    if fm.map.is_surjective() && !fm.loc.is_surjection()?.holds {
        return Ok(Verdict::fail(format!(
            "regular epi {:?} not sent to a localic surjection",
            fm.map.table
        )));
    }
    Ok(Verdict::pass())
}

/// The subobject comparison of an object: subobjects correspond to
/// closed nuclei on the reversed subobject frame, order-reversingly at
/// the nucleus level, and evaluating a closed nucleus at bottom recovers
/// the subobject.
pub fn check_subobject_comparison(x: &FObj) -> Result<Verdict> {
    let frame = &x.frame;
    let mut seen = std::collections::HashSet::new();
    for s in all_subobjects(x.set) {
        let e = x.elem_of_sub(&s);
        let nucleus = Nucleus::closed(frame.clone(), e);
        nucleus.validate()?;
        if nucleus.apply(frame.bot()) != e {
            return Ok(Verdict::fail(format!(
                "closed nucleus at {:#b} does not evaluate to it at bottom",
                s.mask
            )));
        }
        if !seen.insert(nucleus.table().to_vec()) {
            return Ok(Verdict::fail("two subobjects share a closed nucleus"));
        }
    }
    if seen.len() != frame.n() {
        return Ok(Verdict::fail("closed nuclei not exhausted by subobjects"));
    }
    // Order both ways: S₁ ≤ S₂ in Sub(X) iff the nucleus of S₁ dominates
    // that of S₂ pointwise.
    for s1 in all_subobjects(x.set) {
        for s2 in all_subobjects(x.set) {
            let n1 = Nucleus::closed(frame.clone(), x.elem_of_sub(&s1));
            let n2 = Nucleus::closed(frame.clone(), x.elem_of_sub(&s2));
            let sub_leq = s1.mask & !s2.mask == 0;
            let nuc_geq = n2.leq(&n1);
            if sub_leq != nuc_geq {
                return Ok(Verdict::fail(format!(
                    "order mismatch between {:#b} and {:#b}",
                    s1.mask, s2.mask
                )));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Equalizer preservation for one parallel pair.
///
/// The equalizer E ↪ X is computed in finite sets; its image must be an
/// equalizer in locales. Sublocales of the Boolean frame of X are all
/// closed, and any equalizing map factors through its localic image, so
/// quantifying over the closed sublocales is a complete test: each one
/// that equalizes must factor uniquely through the image of E, which is
/// exactly well-definedness along the surjection F(i)*.
pub fn check_preserves_equalizers(f: &FinMap, g: &FinMap, caps: &Caps) -> Result<Verdict> {
    if f.src != g.src || f.dst != g.dst {
        return Err(Error::InvalidMap("equalizer needs a parallel pair".into()));
    }
    let src = FObj::new(f.src, caps)?;
    let dst = FObj::new(f.dst, caps)?;
    let ff = f_mor_between(&src, &dst, f)?;
    let fg = f_mor_between(&src, &dst, g)?;
    let (e_obj, incl) = equalizer(f, g)?;
    let fe = FObj::new(e_obj, caps)?;
    let fi = f_mor_between(&fe, &src, &incl)?;
    if fi.loc.then(&ff.loc)? != fi.loc.then(&fg.loc)? {
        return Ok(Verdict::fail("image of the equalizer does not equalize"));
    }
    if !fi.loc.forward().is_surjective() {
        return Ok(Verdict::fail("equalizer image is not a sublocale inclusion"));
    }
    let fx = &src.frame;
    for v in 0..fx.n() as u32 {
        let m_v = closed_sublocale_inclusion(fx, v, caps)?;
        // Composites with f and g out of the sublocale.
        let with_f = ff.loc.forward().then(m_v.forward())?;
        let with_g = fg.loc.forward().then(m_v.forward())?;
        if with_f != with_g {
            continue;
        }
        // The unique mediator exists iff m_v* factors through F(i)*.
        for x1 in 0..fx.n() as u32 {
            for x2 in 0..fx.n() as u32 {
                if fi.loc.forward().apply(x1) == fi.loc.forward().apply(x2)
                    && m_v.forward().apply(x1) != m_v.forward().apply(x2)
                {
                    return Ok(Verdict::fail(format!(
                        "equalizing sublocale at {v} does not factor through the equalizer"
                    )));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Exhaustive mediator search for the same property, feasible only at
/// tiny sizes; used to cross-validate the factorization argument.
pub fn equalizer_mediator_search(f: &FinMap, g: &FinMap, caps: &Caps) -> Result<Verdict> {
    let src = FObj::new(f.src, caps)?;
    let dst = FObj::new(f.dst, caps)?;
    let ff = f_mor_between(&src, &dst, f)?;
    let fg = f_mor_between(&src, &dst, g)?;
    let (e_obj, incl) = equalizer(f, g)?;
    let fe = FObj::new(e_obj, caps)?;
    let fi = f_mor_between(&fe, &src, &incl)?;
    let fx = &src.frame;
    for v in 0..fx.n() as u32 {
        let m_v = closed_sublocale_inclusion(fx, v, caps)?;
        let with_f = ff.loc.forward().then(m_v.forward())?;
        let with_g = fg.loc.forward().then(m_v.forward())?;
        if with_f != with_g {
            continue;
        }
        let target = m_v.forward().target().clone();
        let mut mediators = 0usize;
        crate::homsearch::for_each_frame_hom(&fe.frame, &target, |k| {
            // k : O(F(E)) → O(T); the composite with F(i)* must be m_v*.
            let commutes = (0..fx.n() as u32)
                .all(|x| k.apply(fi.loc.forward().apply(x)) == m_v.forward().apply(x));
            if commutes {
                mediators += 1;
            }
        })?;
        if mediators != 1 {
            return Ok(Verdict::fail(format!(
                "sublocale at {v} admits {mediators} mediators"
            )));
        }
    }
    Ok(Verdict::pass())
}

/// The canonical comparison map F(X × Y) → F(X) × F(Y), constructed as
/// the mediating homomorphism out of the frame coproduct, plus the
/// verdicts that it is an isomorphism of locales and dense.
pub struct ProductComparison {
    pub comparison: LocalicMap,
    pub coproduct: FrameCoproduct,
    pub iso: Verdict,
    pub density: Verdict,
}

pub fn product_comparison(x: FinObj, y: FinObj, caps: &Caps) -> Result<ProductComparison> {
    let fx = FObj::new(x, caps)?;
    let fy = FObj::new(y, caps)?;
    let (xy, p1, p2) = product(x, y);
    let fxy = FObj::new(xy, caps)?;
    let fp1 = f_mor_between(&fxy, &fx, &p1)?;
    let fp2 = f_mor_between(&fxy, &fy, &p2)?;
    let cp = coproduct(&fx.frame, &fy.frame, caps)?;
    let p_star = cp.mediator(fp1.loc.forward(), fp2.loc.forward())?;
    let comparison = LocalicMap::from_hom(p_star)?;
    let injection = comparison.is_injection()?;
    let surjection = comparison.is_surjection()?;
    let iso = if injection.holds && surjection.holds {
        Verdict::pass()
    } else {
        Verdict::fail(format!(
            "comparison not iso: injection {injection}, surjection {surjection}"
        ))
    };
    let density = Verdict::from_bool(
        comparison.direct_image(fxy.frame.bot()) == cp.carrier.bot(),
        "comparison map is not dense",
    );
    Ok(ProductComparison {
        comparison,
        coproduct: cp,
        iso,
        density,
    })
}

/// Compatible filtrality: the canonical Boolean algebra homomorphism
/// from the coproduct of the subobject centers into the subobjects of
/// the product, defined on atom pairs by rectangles, must be injective.
pub fn check_compatible_filtrality(s1: FinObj, s2: FinObj) -> Verdict {
    let n1 = s1.0;
    let n2 = s2.0;
    let parent = n1 * n2;
    if parent > 63 {
        return Verdict::fail("product too large for the sweep encoding");
    }
    // Atom (a, b) of B(Sub S1) + B(Sub S2) maps to the rectangle {a}×{b}.
    let rectangle = |a: usize, b: usize| -> u64 { 1u64 << pair_index(n2, a, b) };
    // Injectivity of a Boolean algebra hom is "no atom dies".
    for a in 0..n1 {
        for b in 0..n2 {
            if rectangle(a, b) == 0 {
                return Verdict::fail(format!("atom ({a},{b}) maps to bottom"));
            }
        }
    }
    // Hom laws on atoms: distinct atoms land on disjoint elements and the
    // join of all atom images is the top.
    let mut total = 0u64;
    for a in 0..n1 {
        for b in 0..n2 {
            let r = rectangle(a, b);
            if total & r != 0 {
                return Verdict::fail(format!("atom images overlap at ({a},{b})"));
            }
            total |= r;
        }
    }
    if total != crate::finset::full_mask(parent) {
        return Verdict::fail("atom images do not cover the product");
    }
    // The generators restrict to the preimages of the projections.
    let (_p, p1, p2) = product(s1, s2);
    for m1 in all_subobjects(s1) {
        let mut lhs = 0u64;
        for a in 0..n1 {
            if m1.contains(a) {
                for b in 0..n2 {
                    lhs |= rectangle(a, b);
                }
            }
        }
        if lhs != p1.preimage_of(&m1).mask {
            return Verdict::fail(format!(
                "left cylinder of {:#b} is not the projection preimage",
                m1.mask
            ));
        }
    }
    for m2 in all_subobjects(s2) {
        let mut lhs = 0u64;
        for b in 0..n2 {
            if m2.contains(b) {
                for a in 0..n1 {
                    lhs |= rectangle(a, b);
                }
            }
        }
        if lhs != p2.preimage_of(&m2).mask {
            return Verdict::fail(format!(
                "right cylinder of {:#b} is not the projection preimage",
                m2.mask
            ));
        }
    }
    Verdict::pass()
}

/// The frame product O(F(X)) × O(F(Y)), as downsets of the disjoint
/// union of the antichain bases, with both projections.
fn frame_product(fx: &FObj, fy: &FObj, caps: &Caps) -> Result<(FrameRef, Vec<u32>, Vec<u32>)> {
    let union = fx.frame.base().disjoint_union(fy.frame.base());
    let prod = Frame::downsets_of(&union, caps)?;
    let nx = fx.frame.base().len();
    let proj1: Vec<u32> = prod
        .elems()
        .iter()
        .map(|e| {
            let mut bits = Bits::empty(nx);
            for i in e.iter_ones().filter(|&i| i < nx) {
                bits.insert(i);
            }
            fx.frame.index_of(&bits).expect("restriction is a downset")
        })
        .collect();
    let ny = fy.frame.base().len();
    let proj2: Vec<u32> = prod
        .elems()
        .iter()
        .map(|e| {
            let mut bits = Bits::empty(ny);
            for i in e.iter_ones().filter(|&i| i >= nx) {
                bits.insert(i - nx);
            }
            fy.frame.index_of(&bits).expect("restriction is a downset")
        })
        .collect();
    Ok((prod, proj1, proj2))
}

/// The map ζ : Sub(X+Y)^op → Sub(X)^op × Sub(Y)^op restricting a
/// subobject along the coproduct injections, as a frame homomorphism
/// table into the product frame.
pub struct Zeta {
    pub source: FObj,
    pub product_frame: FrameRef,
    pub table: Vec<u32>,
    x: FinObj,
    y: FinObj,
}

pub fn zeta(x: FinObj, y: FinObj, caps: &Caps) -> Result<Zeta> {
    let (s, i1, i2) = finset_coproduct(x, y);
    let source = FObj::new(s, caps)?;
    let fx = FObj::new(x, caps)?;
    let fy = FObj::new(y, caps)?;
    let (product_frame, proj1, proj2) = frame_product(&fx, &fy, caps)?;
    let table: Vec<u32> = (0..source.frame.n() as u32)
        .map(|e| {
            let m = source.sub_of_elem(e);
            let m1 = i1.preimage_of(&m);
            let m2 = i2.preimage_of(&m);
            let e1 = fx.elem_of_sub(&m1);
            let e2 = fy.elem_of_sub(&m2);
            // find the product element with those two components
            (0..product_frame.n() as u32)
                .find(|&p| proj1[p as usize] == e1 && proj2[p as usize] == e2)
                .expect("product frame is a full product")
        })
        .collect();
    Ok(Zeta {
        source,
        product_frame,
        table,
        x,
        y,
    })
}

/// ζ must be a frame isomorphism, and the surjectivity argument is
/// replayed: every pair of subobjects arises as the restrictions of the
/// image of their coproduct map.
pub fn verify_zeta(z: &Zeta) -> Result<Verdict> {
    let hom = FrameHom::new(
        z.source.frame.clone(),
        z.product_frame.clone(),
        z.table.clone(),
    );
    let hom = match hom {
        Ok(h) => h,
        Err(e) => return Ok(Verdict::fail(format!("ζ is not a frame homomorphism: {e}"))),
    };
    if !hom.is_injective() || !hom.is_surjective() {
        return Ok(Verdict::fail("ζ is not bijective"));
    }
    for a in 0..z.source.frame.n() as u32 {
        for b in 0..z.source.frame.n() as u32 {
            if z.source.frame.leq(a, b)
                != z.product_frame.leq(z.table[a as usize], z.table[b as usize])
            {
                return Ok(Verdict::fail(format!("ζ order mismatch at ({a},{b})")));
            }
        }
    }
    // Round trip: (m1, m2) ↦ image of m1 + m2 ↦ restrictions.
    let (s, i1, i2) = finset_coproduct(z.x, z.y);
    for m1 in all_subobjects(z.x) {
        for m2 in all_subobjects(z.y) {
            // the coproduct of the two inclusions, as a map into X + Y
            let mut table = Vec::new();
            for a in 0..z.x.0 {
                if m1.contains(a) {
                    table.push(i1.apply(a));
                }
            }
            for b in 0..z.y.0 {
                if m2.contains(b) {
                    table.push(i2.apply(b));
                }
            }
            let m_sum = FinMap::new(FinObj(table.len()), s, table)?;
            let (_repi, mono) = image_factorization(&m_sum);
            let image_sub = Subobject {
                parent: s.0,
                mask: mono.table.iter().fold(0u64, |m, &v| m | 1 << v),
            };
            if i1.preimage_of(&image_sub) != m1 || i2.preimage_of(&image_sub) != m2 {
                return Ok(Verdict::fail(format!(
                    "round trip failed at ({:#b}, {:#b})",
                    m1.mask, m2.mask
                )));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Non-triviality: the unique map F(1) → ℧ is an injection and a
/// surjection, because Sub(1)^op is the two-element frame of truth
/// values of the classical host.
pub fn check_nontrivial_and_terminal(caps: &Caps) -> Result<Verdict> {
    let f1 = FObj::new(FinObj(1), caps)?;
    let omega = chain_frame(2, caps)?;
    if f1.frame.isomorphism_to(&omega).is_none() {
        return Ok(Verdict::fail("Sub(1)^op is not the frame of truth values"));
    }
    // t* : Ω → Sub(1)^op is the unique frame homomorphism.
    let homs = crate::homsearch::frame_homs(&omega, &f1.frame, None)?;
    if homs.len() != 1 {
        return Ok(Verdict::fail(format!(
            "expected a unique frame hom from Ω, found {}",
            homs.len()
        )));
    }
    let t = LocalicMap::from_hom(homs.into_iter().next().unwrap())?;
    if !t.is_injection()?.holds || !t.is_surjection()?.holds {
        return Ok(Verdict::fail("F(1) → ℧ is not both injection and surjection"));
    }
    Ok(Verdict::pass())
}

/// The copower comparison: α : P(S) → Sub(∐_S 1)^op sends P to the
/// subobject of its complement. On finite sets the copower of the
/// terminal object over S is S itself and the ideal completion of P(S)
/// collapses, so α is its own frame-homomorphic extension.
pub struct CopowerAlpha {
    pub powerset: FrameRef,
    pub target: FObj,
    pub alpha: Vec<u32>,
    pub laws: Verdict,
    pub density: Verdict,
}

pub fn copower_alpha(s: FinObj, caps: &Caps) -> Result<CopowerAlpha> {
    let target = FObj::new(s, caps)?;
    let powerset = boolean_frame(s.0, caps)?;
    // α(P) = i_{P^c}: the subobject complementary to P, reversed.
    let alpha: Vec<u32> = (0..powerset.n() as u32)
        .map(|p| {
            let bits = powerset.elem(p);
            let mut mask = 0u64;
            for i in bits.iter_ones() {
                mask |= 1 << i;
            }
            let p_sub = Subobject {
                parent: s.0,
                mask,
            };
            target.elem_of_sub(&p_sub.complement())
        })
        .collect();
    let laws = copower_laws(s, &target, &powerset, &alpha);
    let density = if laws.holds {
        let hom = FrameHom::new(powerset.clone(), target.frame.clone(), alpha.clone())?;
        if !hom.is_injective() {
            Verdict::fail("α* is not injective")
        } else {
            let loc = LocalicMap::from_hom(hom)?;
            // α_*(0): the set of P with α(P) below the frame bottom must
            // be exactly {∅}, matching its stepwise reformulations.
            let bot = target.frame.bot();
            let direct: Vec<u64> = (0..powerset.n() as u32)
                .filter(|&p| target.frame.leq(alpha[p as usize], bot))
                .map(|p| powerset.elem(p).iter_ones().fold(0u64, |m, i| m | 1 << i))
                .collect();
            let by_points: Vec<u64> = (0..powerset.n() as u32)
                .filter(|&p| {
                    let mask = powerset.elem(p).iter_ones().fold(0u64, |m, i| m | 1 << i);
                    let pc = Subobject { parent: s.0, mask }.complement();
                    (0..s.0).all(|x| pc.contains(x))
                })
                .map(|p| powerset.elem(p).iter_ones().fold(0u64, |m, i| m | 1 << i))
                .collect();
            if direct != vec![0u64] || by_points != vec![0u64] {
                Verdict::fail(format!(
                    "α_*(0) is {direct:?} / {by_points:?}, expected just the empty set"
                ))
            } else if loc.direct_image(bot) != powerset.bot() {
                Verdict::fail("adjoint of α* at bottom is not the least ideal")
            } else {
                Verdict::pass()
            }
        }
    } else {
        Verdict::fail("laws failed before density")
    };
    Ok(CopowerAlpha {
        powerset,
        target,
        alpha,
        laws,
        density,
    })
}

fn copower_laws(s: FinObj, target: &FObj, powerset: &FrameRef, alpha: &[u32]) -> Verdict {
    // α is a bounded lattice homomorphism.
    if let Err(e) = stone::validate_lattice_hom(powerset, &target.frame, alpha) {
        return Verdict::fail(format!("α is not a lattice homomorphism: {e}"));
    }
    // the defining equation: α(P) is the subobject of the complement
    for p in 0..powerset.n() as u32 {
        let mask = powerset.elem(p).iter_ones().fold(0u64, |m, i| m | 1 << i);
        let expected = target.elem_of_sub(
            &Subobject {
                parent: s.0,
                mask,
            }
            .complement(),
        );
        if alpha[p as usize] != expected {
            return Verdict::fail(format!(
                "α({mask:#b}) is not the subobject of its complement"
            ));
        }
    }
    // i_P is the join of the singletons it contains, in the plain order:
    // masks are unions of their points, and the top subobject is the join
    // of all singletons.
    for p_sub in all_subobjects(s) {
        let mut rebuilt = 0u64;
        for x in 0..s.0 {
            if p_sub.contains(x) {
                rebuilt |= 1 << x;
            }
        }
        if rebuilt != p_sub.mask {
            return Verdict::fail("subobject is not the join of its points");
        }
        // complementation: i_P and i_{P^c} are complements in the frame
        let e = target.elem_of_sub(&p_sub);
        let ec = target.elem_of_sub(&p_sub.complement());
        if target.frame.meet(e, ec) != target.frame.bot()
            || target.frame.join(e, ec) != target.frame.top()
        {
            return Verdict::fail(format!(
                "subobject {:#b} is not complemented by its complement",
                p_sub.mask
            ));
        }
        // membership recovery: P = { x | i_x ≤ i_P }
        for x in 0..s.0 {
            let singleton = Subobject {
                parent: s.0,
                mask: 1 << x,
            };
            let below = singleton.mask & !p_sub.mask == 0;
            if below != p_sub.contains(x) {
                return Verdict::fail("membership is not recovered from the order");
            }
        }
    }
    Verdict::pass()
}

/// Rectangle behaviour of binary products when the terminal object is an
/// atom, plus the Beck–Chevalley identity, all in the plain subobject
/// order.
pub fn check_rectangles(x1: FinObj, x2: FinObj) -> Result<Verdict> {
    if x1.0 == 0 || x2.0 == 0 {
        return Err(Error::InvalidInput("rectangles need nonempty factors".into()));
    }
    let (_p, p1, p2) = product(x1, x2);
    // (a) dual form: every subobject U of X1 is empty or has
    // π₂[π₁⁻¹(U)] equal to the whole of X2.
    for u in all_subobjects(x1) {
        let img = p2.image_of(&p1.preimage_of(&u));
        if u.mask != 0 && img.mask != crate::finset::full_mask(x2.0) {
            return Ok(Verdict::fail(format!(
                "nonempty {:#b} projects to a proper subobject",
                u.mask
            )));
        }
        if u.mask == 0 && img.mask != 0 {
            return Ok(Verdict::fail("empty subobject has nonempty projection"));
        }
    }
    // (b) in the reversed order: the reversed meet of the two preimages is
    // the reversed bottom iff one side is already reversed bottom. In
    // plain terms: the preimages union to everything iff one factor is
    // full.
    for t1 in all_subobjects(x1) {
        for t2 in all_subobjects(x2) {
            let lhs = p1.preimage_of(&t1).mask | p2.preimage_of(&t2).mask
                == crate::finset::full_mask(x1.0 * x2.0);
            let rhs = t1.mask == crate::finset::full_mask(x1.0)
                || t2.mask == crate::finset::full_mask(x2.0);
            if lhs != rhs {
                return Ok(Verdict::fail(format!(
                    "rectangle law fails at ({:#b}, {:#b})",
                    t1.mask, t2.mask
                )));
            }
        }
    }
    // Beck–Chevalley: π₂[π₁⁻¹(−)] = !₂⁻¹ !₁[−].
    let t1 = terminal_map(x1);
    let t2 = terminal_map(x2);
    for u in all_subobjects(x1) {
        let lhs = p2.image_of(&p1.preimage_of(&u));
        let rhs = t2.preimage_of(&t1.image_of(&u));
        if lhs != rhs {
            return Ok(Verdict::fail(format!(
                "Beck–Chevalley fails at {:#b}",
                u.mask
            )));
        }
    }
    Ok(Verdict::pass())
}

/// Runs every functor-level check over all objects and morphisms up to
/// `max_size` and assembles a deterministic report, one line per check
/// with the first counterexample found.
pub fn verify_embedding(max_size: usize, caps: &Caps) -> Result<Report> {
    let mut report = Report::new(format!(
        "subobject functor verification up to size {max_size}"
    ));
    let sizes: Vec<usize> = (0..=max_size).collect();
    let objs: Vec<FObj> = sizes
        .iter()
        .map(|&n| FObj::new(FinObj(n), caps))
        .collect::<Result<_>>()?;

    // Objects land in compact Hausdorff (Boolean, Stone) locales.
    for x in &objs {
        let v = check_f_obj(x, caps)?;
        report.merge("objects/compact-hausdorff-stone", format!("|X| = {}", x.set.0), &v);
    }
    report.merge(
        "pretopos/terminal-atom",
        "Sub(1)",
        &crate::finset::terminal_is_atom(),
    );

    // Morphism-level checks, functoriality of identities.
    for x in &objs {
        let id = f_mor_between(x, x, &FinMap::identity(x.set))?;
        let is_id = id.loc == LocalicMap::identity(x.frame.clone());
        report.merge(
            "functor/identity",
            format!("|X| = {}", x.set.0),
            &Verdict::from_bool(is_id, "identity not sent to identity"),
        );
    }
    for x in &objs {
        for y in &objs {
            let mut tables = std::collections::HashMap::new();
            for f in all_maps(x.set, y.set) {
                let fm = f_mor_between(x, y, &f)?;
                let v = check_f_mor(&fm)?;
                report.merge(
                    "morphisms/closed-mono-repi",
                    format!("{:?} : {} → {}", f.table, x.set.0, y.set.0),
                    &v,
                );
                // faithfulness: distinct maps must give distinct images
                if let Some(prev) = tables.insert(fm.loc.forward().table().to_vec(), f.clone()) {
                    report.merge(
                        "functor/faithful",
                        format!("{} → {}", x.set.0, y.set.0),
                        &Verdict::fail(format!(
                            "maps {:?} and {:?} have the same image",
                            prev.table, f.table
                        )),
                    );
                }
            }
            report.merge(
                "functor/faithful",
                format!("{} → {}", x.set.0, y.set.0),
                &Verdict::pass(),
            );
            report.merge(
                "pretopos/enough-subobjects",
                format!("{} → {}", x.set.0, y.set.0),
                &crate::finset::check_enough_subobjects(x.set, y.set),
            );
        }
    }

    // Composition.
    for x in &objs {
        for y in &objs {
            for z in &objs {
                for f in all_maps(x.set, y.set) {
                    let ff = f_mor_between(x, y, &f)?;
                    for g in all_maps(y.set, z.set) {
                        let fg = f_mor_between(y, z, &g)?;
                        let composite = f.then(&g)?;
                        let f_composite = f_mor_between(x, z, &composite)?;
                        let chained = ff.loc.then(&fg.loc)?;
                        if chained != f_composite.loc {
                            report.merge(
                                "functor/composition",
                                format!("{:?} ; {:?}", f.table, g.table),
                                &Verdict::fail("F(g ∘ f) ≠ F(g) ∘ F(f)"),
                            );
                        }
                    }
                }
            }
        }
    }
    report.merge("functor/composition", "all composable pairs", &Verdict::pass());

    // Subobject comparison.
    for x in &objs {
        let v = check_subobject_comparison(x)?;
        report.merge(
            "subobjects/order-isomorphism",
            format!("|X| = {}", x.set.0),
            &v,
        );
    }

    // Equalizers.
    for x in &objs {
        for y in &objs {
            let maps = all_maps(x.set, y.set);
            for (i, f) in maps.iter().enumerate() {
                for g in maps.iter().skip(i) {
                    let v = check_preserves_equalizers(f, g, caps)?;
                    report.merge(
                        "limits/equalizers",
                        format!("{:?} vs {:?}", f.table, g.table),
                        &v,
                    );
                }
            }
        }
    }

    // Binary products.
    for x in &objs {
        for y in &objs {
            let pc = product_comparison(x.set, y.set, caps)?;
            report.merge(
                "limits/product-comparison-iso",
                format!("{} × {}", x.set.0, y.set.0),
                &pc.iso,
            );
            report.merge(
                "limits/product-comparison-dense",
                format!("{} × {}", x.set.0, y.set.0),
                &pc.density,
            );
        }
    }

    // Compatible filtrality.
    for x in &objs {
        for y in &objs {
            report.merge(
                "filtrality/compatible",
                format!("{} × {}", x.set.0, y.set.0),
                &check_compatible_filtrality(x.set, y.set),
            );
        }
    }

    // Coproducts via ζ.
    for x in &objs {
        for y in &objs {
            let z = zeta(x.set, y.set, caps)?;
            let v = verify_zeta(&z)?;
            report.merge(
                "coproducts/zeta-isomorphism",
                format!("{} + {}", x.set.0, y.set.0),
                &v,
            );
        }
    }

    // Terminal object and non-triviality.
    report.merge(
        "terminal/nontrivial",
        "F(1) → ℧",
        &check_nontrivial_and_terminal(caps)?,
    );

    // Rectangles and Beck–Chevalley.
    for x in &objs {
        for y in &objs {
            if x.set.0 == 0 || y.set.0 == 0 {
                continue;
            }
            report.merge(
                "products/rectangles",
                format!("{} × {}", x.set.0, y.set.0),
                &check_rectangles(x.set, y.set)?,
            );
        }
    }

    // Copower comparison.
    for x in &objs {
        let ca = copower_alpha(x.set, caps)?;
        report.merge(
            "copower/alpha-laws",
            format!("|S| = {}", x.set.0),
            &ca.laws,
        );
        report.merge(
            "copower/alpha-density",
            format!("|S| = {}", x.set.0),
            &ca.density,
        );
    }

    Ok(report)
}

/// Re-runs the copower laws against a possibly corrupted table.
#[doc(hidden)]
pub fn copower_laws_for_test(
    s: FinObj,
    target: &FObj,
    powerset: &FrameRef,
    alpha: &[u32],
) -> Verdict {
    copower_laws(s, target, powerset, alpha)
}

/// Fault-injection entry: validates a possibly corrupted morphism image
/// the same way `verify_embedding` does, reporting the failing check.
pub fn validate_fmor_report(fm: &FMor) -> CheckResult {
    match check_f_mor(fm) {
        Ok(v) => CheckResult::from_verdict(
            "morphisms/closed-mono-repi",
            format!("{:?}", fm.map.table),
            &v,
        ),
        Err(e) => CheckResult::error(
            "morphisms/adjoint-contract",
            format!("{:?}", fm.map.table),
            e,
        ),
    }
}
