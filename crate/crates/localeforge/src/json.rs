//! JSON interchange formats and DOT export.
//!
//! Posets travel as `{"n": int, "cover": [[i, j], ...]}` with the order
//! recovered as the reflexive-transitive closure. Frames travel either
//! as `{"poset": <poset>}`, meaning the downset lattice of that poset,
//! or as `{"n": int, "leq": [[...]]}` with an explicit, validated order.
//! Maps travel as `{"source": <frame>, "target": <frame>, "table": [..]}`
//! giving the inverse-image homomorphism of a localic map.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::frame::{Frame, FrameRef};
use crate::maps::{FrameHom, LocalicMap};
use crate::nucleus::Nucleus;
use crate::poset::Poset;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub cover: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LeqMatrix {
    Bool(Vec<Vec<bool>>),
    Int(Vec<Vec<u8>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameJson {
    Downsets { poset: PosetJson },
    Explicit { n: usize, leq: LeqMatrix },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub source: FrameJson,
    pub target: FrameJson,
    pub table: Vec<u32>,
}

pub fn poset_from_json(p: &PosetJson) -> Result<Poset> {
    Poset::from_covers(p.n, &p.cover)
}

pub fn poset_to_json(p: &Poset) -> PosetJson {
    PosetJson {
        n: p.len(),
        cover: p.covers(),
    }
}

pub fn frame_from_json(f: &FrameJson, caps: &Caps) -> Result<FrameRef> {
    match f {
        FrameJson::Downsets { poset } => Frame::downsets_of(&poset_from_json(poset)?, caps),
        FrameJson::Explicit { n, leq } => {
            let at = |i: usize, j: usize| -> Result<bool> {
                let row_len_err = || {
                    Error::InvalidFrame(format!("leq matrix is not {n}×{n}"))
                };
                match leq {
                    LeqMatrix::Bool(m) => m
                        .get(i)
                        .and_then(|r| r.get(j))
                        .copied()
                        .ok_or_else(row_len_err),
                    LeqMatrix::Int(m) => m
                        .get(i)
                        .and_then(|r| r.get(j))
                        .map(|&v| v != 0)
                        .ok_or_else(row_len_err),
                }
            };
            for i in 0..*n {
                for j in 0..*n {
                    at(i, j)?;
                }
            }
            Frame::from_leq(*n, |i, j| at(i, j).unwrap(), caps)
        }
    }
}

/// Canonical emission: every frame is written as the downset lattice of
/// its join-irreducible poset, so emitted JSON re-parses to an
/// isomorphic frame.
pub fn frame_to_json(f: &FrameRef) -> FrameJson {
    let (base, _) = f.join_irreducibles();
    FrameJson::Downsets {
        poset: poset_to_json(&base),
    }
}

pub fn localic_map_from_json(m: &MapJson, caps: &Caps) -> Result<LocalicMap> {
    let source = frame_from_json(&m.source, caps)?;
    let target = frame_from_json(&m.target, caps)?;
    let hom = FrameHom::new(source, target, m.table.clone())?;
    LocalicMap::from_hom(hom)
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let p: PosetJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("poset JSON: {e}")))?;
    poset_from_json(&p)
}

pub fn parse_frame(text: &str, caps: &Caps) -> Result<FrameRef> {
    let f: FrameJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("frame JSON: {e}")))?;
    frame_from_json(&f, caps)
}

pub fn parse_map(text: &str, caps: &Caps) -> Result<LocalicMap> {
    let m: MapJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("map JSON: {e}")))?;
    localic_map_from_json(&m, caps)
}

/// Hasse diagram of a poset in DOT format, edges pointing upward.
pub fn poset_dot(p: &Poset, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n  rankdir=BT;\n"));
    for i in 0..p.len() {
        out.push_str(&format!("  {i} [shape=circle];\n"));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  {a} -> {b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a frame's element order.
pub fn frame_dot(f: &FrameRef, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n  rankdir=BT;\n"));
    for i in 0..f.n() as u32 {
        let label = if i == f.bot() {
            "0".to_string()
        } else if i == f.top() {
            "1".to_string()
        } else {
            format!("{i}")
        };
        out.push_str(&format!("  {i} [shape=circle, label=\"{label}\"];\n"));
    }
    for i in 0..f.n() as u32 {
        for j in f.upper_covers(i) {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a nucleus lattice, labelling each node with its
/// table.
pub fn nucleus_lattice_dot(nx: &FrameRef, nuclei: &[Nucleus], name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n  rankdir=BT;\n"));
    for (i, nuc) in nuclei.iter().enumerate() {
        let label: Vec<String> = nuc.table().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "  {i} [shape=box, label=\"[{}]\"];\n",
            label.join(",")
        ));
    }
    for i in 0..nx.n() as u32 {
        for j in nx.upper_covers(i) {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
    }
    out.push_str("}\n");
    out
}
