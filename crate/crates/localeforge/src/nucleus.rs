//! Nuclei on finite frames.
//!
//! A nucleus is an inflationary, idempotent self-map preserving finite
//! meets; on a finite frame the nuclei form a finite frame under the
//! pointwise order, with bottom the identity and top the constant-top
//! map. Open and closed nuclei generate everything: each nucleus is a
//! join of maps o_u ∧ c_v, which `generate_nx` closes up and
//! `all_nuclei` verifies by brute force on small carriers.

use crate::config::Caps;
use crate::error::{Error, Result, Verdict};
use crate::frame::{Frame, FrameRef};
use std::sync::Arc;

#[derive(Clone)]
pub struct Nucleus {
    frame: FrameRef,
    table: Vec<u32>,
}

impl PartialEq for Nucleus {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.frame == other.frame
    }
}
impl Eq for Nucleus {}

impl std::fmt::Debug for Nucleus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Nucleus{:?}", self.table)
    }
}

impl Nucleus {
    pub fn new(frame: FrameRef, table: Vec<u32>) -> Result<Nucleus> {
        let n = Nucleus { frame, table };
        n.validate()?;
        Ok(n)
    }

    /// Checks the three nucleus laws, reporting the first violation in
    /// index order.
    pub fn validate(&self) -> Result<()> {
        let f = &self.frame;
        let n = f.n() as u32;
        if self.table.len() != n as usize {
            return Err(Error::InvalidNucleus(format!(
                "table length {} for a frame of size {n}",
                self.table.len()
            )));
        }
        for x in 0..n {
            let jx = self.table[x as usize];
            if jx >= n {
                return Err(Error::InvalidNucleus(format!("table value {jx} out of range")));
            }
            if !f.leq(x, jx) {
                return Err(Error::InvalidNucleus(format!("not inflationary at {x}")));
            }
            if self.table[jx as usize] != jx {
                return Err(Error::InvalidNucleus(format!("not idempotent at {x}")));
            }
        }
        if self.table[f.top() as usize] != f.top() {
            return Err(Error::InvalidNucleus("top is not fixed".into()));
        }
        for x in 0..n {
            for y in 0..x + 1 {
                let lhs = self.table[f.meet(x, y) as usize];
                let rhs = f.meet(self.table[x as usize], self.table[y as usize]);
                if lhs != rhs {
                    return Err(Error::InvalidNucleus(format!(
                        "meet not preserved at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// o_u = u → (−).
    pub fn open(frame: FrameRef, u: u32) -> Nucleus {
        let table = frame.open_table(u);
        Nucleus { frame, table }
    }

    /// c_v = v ∨ (−).
    pub fn closed(frame: FrameRef, v: u32) -> Nucleus {
        let table = frame.closed_table(v);
        Nucleus { frame, table }
    }

    pub fn identity(frame: FrameRef) -> Nucleus {
        let table = (0..frame.n() as u32).collect();
        Nucleus { frame, table }
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Pointwise order on nuclei.
    pub fn leq(&self, other: &Nucleus) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.frame.leq(a, b))
    }

    fn same_frame(&self, other: &Nucleus) -> Result<()> {
        if !Arc::ptr_eq(&self.frame, &other.frame) && self.frame != other.frame {
            return Err(Error::InvalidNucleus(
                "nuclei live on different frames".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise meet; validated because meets of nuclei are again nuclei.
    pub fn meet(&self, other: &Nucleus) -> Result<Nucleus> {
        self.same_frame(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| self.frame.meet(a, b))
            .collect();
        Nucleus::new(self.frame.clone(), table)
    }

    /// Join in the nucleus lattice: iterate x ↦ j(k(x)) to its stationary
    /// table. The iteration is monotone and the frame is finite, so it
    /// terminates; the result is the least nucleus above both.
    pub fn join(&self, other: &Nucleus) -> Result<Nucleus> {
        self.same_frame(other)?;
        let n = self.frame.n();
        let mut table: Vec<u32> = (0..n as u32).collect();
        loop {
            let next: Vec<u32> = (0..n)
                .map(|x| self.table[other.table[table[x] as usize] as usize])
                .collect();
            if next == table {
                break;
            }
            table = next;
        }
        Nucleus::new(self.frame.clone(), table)
    }

    /// Corrupts one table entry. Test hook for the fault-detection
    /// harness; the result will generally fail `validate`.
    #[doc(hidden)]
    pub fn corrupt_entry(&mut self, x: u32, value: u32) {
        self.table[x as usize] = value;
    }
}

/// Every nucleus on `frame`, by pruned brute force over inflationary
/// monotone self-maps. The search assigns values along a linear
/// extension, forcing monotonicity and meet preservation as it goes, and
/// filters the survivors through full validation.
pub fn all_nuclei(frame: &FrameRef, caps: &Caps) -> Result<Vec<Nucleus>> {
    let n = frame.n();
    if n > caps.nuclei_cap {
        return Err(Error::CapExceeded(format!(
            "all_nuclei is limited to frames with at most {} elements, got {n}",
            caps.nuclei_cap
        )));
    }
    let order = frame.linear_extension();
    let mut table = vec![u32::MAX; n];
    let mut out = Vec::new();
    fn go(
        frame: &FrameRef,
        order: &[u32],
        k: usize,
        table: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == order.len() {
            out.push(table.clone());
            return;
        }
        let x = order[k];
        // lower bound: x itself joined with j(y) for assigned y ≤ x
        let mut lb = x;
        for &y in &order[..k] {
            if frame.leq(y, x) {
                lb = frame.join(lb, table[y as usize]);
            }
        }
        'candidates: for c in 0..frame.n() as u32 {
            if !frame.leq(lb, c) {
                continue;
            }
            // meet preservation against all assigned values
            for &y in &order[..k] {
                let m = frame.meet(x, y);
                if frame.meet(c, table[y as usize]) != table[m as usize] {
                    continue 'candidates;
                }
            }
            table[x as usize] = c;
            go(frame, order, k + 1, table, out);
            table[x as usize] = u32::MAX;
        }
    }
    let mut raw = Vec::new();
    go(frame, &order, 0, &mut table, &mut raw);
    for t in raw {
        if let Ok(nuc) = Nucleus::new(frame.clone(), t) {
            out.push(nuc);
        }
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

/// Closes { o_u ∧ c_v | u, v } under binary joins and returns the
/// resulting lattice of nuclei as a frame under the pointwise order,
/// together with the nuclei in frame-index order.
pub fn generate_nx(frame: &FrameRef, caps: &Caps) -> Result<(FrameRef, Vec<Nucleus>)> {
    let n = frame.n() as u32;
    let mut tables: Vec<Vec<u32>> = Vec::new();
    let push = |t: Vec<u32>, tables: &mut Vec<Vec<u32>>| {
        if !tables.contains(&t) {
            tables.push(t);
        }
    };
    for u in 0..n {
        let o = Nucleus::open(frame.clone(), u);
        for v in 0..n {
            let c = Nucleus::closed(frame.clone(), v);
            let g = o.meet(&c)?;
            push(g.table, &mut tables);
        }
    }
    // Join closure by worklist.
    let mut i = 0;
    while i < tables.len() {
        for j in 0..=i {
            let a = Nucleus {
                frame: frame.clone(),
                table: tables[i].clone(),
            };
            let b = Nucleus {
                frame: frame.clone(),
                table: tables[j].clone(),
            };
            let joined = a.join(&b)?;
            if !tables.contains(&joined.table) {
                tables.push(joined.table);
            }
            if tables.len() > caps.downset_cap {
                return Err(Error::SizeOverflow {
                    what: "nucleus lattice closure",
                    count: tables.len(),
                    cap: caps.downset_cap,
                });
            }
        }
        i += 1;
    }
    tables.sort();
    let m = tables.len();
    let leq = |a: usize, b: usize| {
        tables[a]
            .iter()
            .zip(&tables[b])
            .all(|(&x, &y)| frame.leq(x, y))
    };
    let nx = Frame::from_leq(m, leq, caps)?;
    let nuclei = tables
        .into_iter()
        .map(|t| Nucleus::new(frame.clone(), t))
        .collect::<Result<Vec<_>>>()?;
    Ok((nx, nuclei))
}

/// Decomposition witness: the generator pairs (u, v) with o_u ∧ c_v ≤ j,
/// whose join recovers j.
pub fn oc_decomposition(j: &Nucleus) -> Result<(Vec<(u32, u32)>, Verdict)> {
    let frame = j.frame();
    let n = frame.n() as u32;
    let mut pairs = Vec::new();
    let mut acc = Nucleus::identity(frame.clone());
    for u in 0..n {
        let o = Nucleus::open(frame.clone(), u);
        for v in 0..n {
            let g = o.meet(&Nucleus::closed(frame.clone(), v))?;
            if g.leq(j) {
                pairs.push((u, v));
                acc = acc.join(&g)?;
            }
        }
    }
    let verdict = Verdict::from_bool(
        acc == *j,
        format!("join of {} generators stopped below the nucleus", pairs.len()),
    );
    Ok((pairs, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{boolean_frame, chain_frame};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn open_closed_examples_on_c3() {
        let f = chain_frame(3, &caps()).unwrap();
        let om = Nucleus::open(f.clone(), 1);
        assert_eq!(om.table(), &[0, 2, 2]);
        om.validate().unwrap();
        let cm = Nucleus::closed(f.clone(), 1);
        assert_eq!(cm.table(), &[1, 1, 2]);
        cm.validate().unwrap();
        // o_top is the identity, o_bot and c_top are constant top, c_bot is
        // the identity.
        assert_eq!(Nucleus::open(f.clone(), 2).table(), &[0, 1, 2]);
        assert_eq!(Nucleus::open(f.clone(), 0).table(), &[2, 2, 2]);
        assert_eq!(Nucleus::closed(f.clone(), 0).table(), &[0, 1, 2]);
        assert_eq!(Nucleus::closed(f.clone(), 2).table(), &[2, 2, 2]);
    }

    #[test]
    fn closed_nucleus_at_bottom_recovers_its_element() {
        for f in [chain_frame(4, &caps()).unwrap(), boolean_frame(2, &caps()).unwrap()] {
            for v in 0..f.n() as u32 {
                assert_eq!(Nucleus::closed(f.clone(), v).apply(f.bot()), v);
            }
        }
    }

    #[test]
    fn join_and_meet_with_identity() {
        let f = chain_frame(3, &caps()).unwrap();
        let id = Nucleus::identity(f.clone());
        let om = Nucleus::open(f.clone(), 1);
        assert_eq!(om.join(&id).unwrap(), om);
        assert_eq!(om.meet(&id).unwrap(), id);
    }

    #[test]
    fn join_of_open_and_closed_on_c3_is_constant_top() {
        let f = chain_frame(3, &caps()).unwrap();
        let om = Nucleus::open(f.clone(), 1);
        let cm = Nucleus::closed(f.clone(), 1);
        let j = om.join(&cm).unwrap();
        assert_eq!(j.table(), &[2, 2, 2]);
        let m = om.meet(&cm).unwrap();
        m.validate().unwrap();
        assert_eq!(m.table(), &[0, 1, 2]);
    }

    #[test]
    fn brute_force_counts() {
        // Independent cross-check of the pruned search on C2: of the four
        // self-maps, exactly the identity and constant-top are nuclei.
        let f = chain_frame(2, &caps()).unwrap();
        let mut brute = Vec::new();
        for t0 in 0..2u32 {
            for t1 in 0..2u32 {
                if Nucleus::new(f.clone(), vec![t0, t1]).is_ok() {
                    brute.push(vec![t0, t1]);
                }
            }
        }
        assert_eq!(brute, vec![vec![0, 1], vec![1, 1]]);
        let found = all_nuclei(&f, &caps()).unwrap();
        assert_eq!(
            found.iter().map(|n| n.table().to_vec()).collect::<Vec<_>>(),
            brute
        );
    }

    #[test]
    fn c3_has_exactly_four_nuclei() {
        let f = chain_frame(3, &caps()).unwrap();
        // Brute force over all 27 self-maps, independent of the search.
        let mut brute = Vec::new();
        for t0 in 0..3u32 {
            for t1 in 0..3u32 {
                for t2 in 0..3u32 {
                    if Nucleus::new(f.clone(), vec![t0, t1, t2]).is_ok() {
                        brute.push(vec![t0, t1, t2]);
                    }
                }
            }
        }
        assert_eq!(brute.len(), 4);
        let expected: Vec<Vec<u32>> = vec![
            Nucleus::identity(f.clone()).table().to_vec(),
            Nucleus::closed(f.clone(), 1).table().to_vec(),
            Nucleus::open(f.clone(), 1).table().to_vec(),
            Nucleus::closed(f.clone(), 2).table().to_vec(),
        ];
        for e in &expected {
            assert!(brute.contains(e));
        }
        let found = all_nuclei(&f, &caps()).unwrap();
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn generate_nx_matches_brute_force_on_small_frames() {
        for f in [
            chain_frame(2, &caps()).unwrap(),
            chain_frame(3, &caps()).unwrap(),
            boolean_frame(2, &caps()).unwrap(),
        ] {
            let brute = all_nuclei(&f, &caps()).unwrap();
            let (nx, gen) = generate_nx(&f, &caps()).unwrap();
            assert_eq!(nx.n(), brute.len());
            assert_eq!(gen.len(), brute.len());
            for (a, b) in gen.iter().zip(&brute) {
                assert_eq!(a.table(), b.table());
            }
        }
    }

    #[test]
    fn oc_decomposition_recovers_each_nucleus() {
        let f = chain_frame(3, &caps()).unwrap();
        for j in all_nuclei(&f, &caps()).unwrap() {
            let (pairs, verdict) = oc_decomposition(&j).unwrap();
            assert!(verdict.holds);
            assert!(!pairs.is_empty());
        }
    }

    #[test]
    fn brute_force_cap_is_enforced() {
        let f = boolean_frame(3, &caps()).unwrap();
        match all_nuclei(&f, &caps()) {
            Err(crate::error::Error::CapExceeded(_)) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_nucleus_fails_validation() {
        let f = chain_frame(3, &caps()).unwrap();
        let mut j = Nucleus::closed(f.clone(), 1);
        // break inflationarity at the top
        j.corrupt_entry(2, 0);
        assert!(j.validate().is_err());
        let mut k = Nucleus::open(f.clone(), 1);
        // break idempotence at the bottom
        k.corrupt_entry(0, 1);
        assert!(k.validate().is_err());
    }
}
