//! Typed chamber systems of finite quotients.
//!
//! Chambers are numbered `0..n`. For each generator index `i ∈ {0..d}` the
//! chambers are partitioned into panels of type `i`; two chambers are
//! `i`-adjacent when they are distinct and share an `i`-panel. The panel of
//! type `i` is the face opposite the vertex of type `i`, so a vertex of type
//! `t` corresponds to a residue of all panel types other than `t`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::coset::CosetTable;
use super::graph::FiniteGraph;
use super::triangle::{letter, TrianglePresentation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberSystem {
    d: usize,
    q: u64,
    chambers: usize,
    /// `panels[i][c]`: id of the type-`i` panel containing chamber `c`.
    panels: Vec<Vec<usize>>,
}

impl ChamberSystem {
    /// Validates panel ids, thickness `q + 1` and connectivity.
    pub fn new(d: usize, q: u64, panels: Vec<Vec<usize>>) -> Result<Self> {
        if d == 0 || q < 2 {
            return Err(Error::InvalidParameter("need d >= 1 and q >= 2".into()));
        }
        if panels.len() != d + 1 {
            return Err(Error::DimensionMismatch { expected: d + 1, found: panels.len() });
        }
        let chambers = panels[0].len();
        if let Some(p) = panels.iter().find(|p| p.len() != chambers) {
            return Err(Error::DimensionMismatch { expected: chambers, found: p.len() });
        }
        let cs = Self { d, q, chambers, panels };
        for kind in 0..=d {
            for (panel, members) in cs.panel_members(kind).iter().enumerate() {
                if members.len() != q as usize + 1 {
                    return Err(Error::Thickness { kind, panel, size: members.len(), expected: q as usize + 1 });
                }
            }
        }
        if let Some(c) = cs.unreachable_chamber() {
            return Err(Error::Disconnected(c));
        }
        Ok(cs)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers
    }

    pub fn panel_of(&self, kind: usize, c: usize) -> usize {
        self.panels[kind][c]
    }

    pub fn panels(&self) -> &[Vec<usize>] {
        &self.panels
    }

    pub fn panel_count(&self, kind: usize) -> usize {
        self.panels[kind].iter().max().map_or(0, |m| m + 1)
    }

    /// Chambers of each type-`kind` panel, in increasing order. Panel ids
    /// that never occur give empty entries.
    pub fn panel_members(&self, kind: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.panel_count(kind)];
        for (c, &p) in self.panels[kind].iter().enumerate() {
            out[p].push(c);
        }
        out
    }

    /// All `i`-adjacency lists: `adjacency()[i][c]` are the chambers other
    /// than `c` in its type-`i` panel.
    pub fn adjacency(&self) -> Vec<Vec<Vec<usize>>> {
        (0..=self.d)
            .map(|kind| {
                let members = self.panel_members(kind);
                (0..self.chambers)
                    .map(|c| members[self.panels[kind][c]].iter().copied().filter(|&x| x != c).collect())
                    .collect()
            })
            .collect()
    }

    fn unreachable_chamber(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.chambers];
        if self.chambers == 0 {
            return None;
        }
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for list in &adj {
                for &x in &list[c] {
                    if !seen[x] {
                        seen[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    /// Residue labels for the panel types in `kinds`: chambers joined by
    /// panels of those types get the same label. Labels are numbered by
    /// first occurrence.
    pub fn residues(&self, kinds: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.chambers).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut k = x;
            while p[k] != r {
                let n = p[k];
                p[k] = r;
                k = n;
            }
            r
        }
        for &kind in kinds {
            for members in self.panel_members(kind) {
                for w in members.windows(2) {
                    let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut label = BTreeMap::new();
        (0..self.chambers)
            .map(|c| {
                let r = find(&mut parent, c);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Vertex of type `t` of every chamber (residue of the other panel types).
    pub fn vertex_labels(&self, t: usize) -> Vec<usize> {
        let kinds: Vec<usize> = (0..=self.d).filter(|&k| k != t).collect();
        self.residues(&kinds)
    }

    pub fn vertex_count(&self, t: usize) -> usize {
        self.vertex_labels(t).iter().max().map_or(0, |m| m + 1)
    }

    /// Single chamber with loops in every panel; only meaningful as a
    /// degenerate input to operator assembly, so thickness is not checked.
    pub fn degenerate(d: usize, q: u64) -> Self {
        Self { d, q, chambers: 1, panels: vec![vec![0]; d + 1] }
    }
}

/// Serialized form: `{d, q, chambers, panels}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberSystemDocument {
    pub d: usize,
    pub q: u64,
    pub chambers: usize,
    pub panels: Vec<Vec<usize>>,
}

impl From<&ChamberSystem> for ChamberSystemDocument {
    fn from(cs: &ChamberSystem) -> Self {
        Self { d: cs.d, q: cs.q, chambers: cs.chambers, panels: cs.panels.clone() }
    }
}

impl TryFrom<ChamberSystemDocument> for ChamberSystem {
    type Error = Error;
    fn try_from(doc: ChamberSystemDocument) -> Result<Self> {
        let cs = ChamberSystem::new(doc.d, doc.q, doc.panels)?;
        if cs.chambers != doc.chambers {
            return Err(Error::DimensionMismatch { expected: doc.chambers, found: cs.chambers });
        }
        Ok(cs)
    }
}

/// Chamber system of a bipartite `(q+1)`-regular graph: chambers are edges
/// and the type-`i` panel of an edge is its endpoint of colour `1 − i`.
pub fn chamber_system_of_graph(g: &FiniteGraph) -> Result<ChamberSystem> {
    let colour = g.bipartition().ok_or(Error::NotBipartite)?;
    let mut panels = vec![vec![0usize; g.edge_count()]; 2];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (white, black) = if colour[u] == 0 { (u, v) } else { (v, u) };
        panels[1][e] = white;
        panels[0][e] = black;
    }
    // renumber each panel type densely in order of first occurrence
    for p in panels.iter_mut() {
        let mut map = BTreeMap::new();
        for x in p.iter_mut() {
            let next = map.len();
            *x = *map.entry(*x).or_insert(next);
        }
    }
    ChamberSystem::new(1, g.q(), panels)
}

/// Vertex types of the cosets in a complete table (coset `0` has type `0`).
/// Fails unless every generator raises the type by one, i.e. unless the
/// subgroup is type preserving.
pub fn coset_types(pres: &TrianglePresentation, table: &CosetTable) -> Result<Vec<usize>> {
    let n = table.index();
    let mut ty = vec![usize::MAX; n];
    ty[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..pres.generators() {
            let e = table.act(c, letter(x, false));
            let want = (ty[c] + 1) % 3;
            if ty[e] == usize::MAX {
                ty[e] = want;
                queue.push_back(e);
            } else if ty[e] != want {
                return Err(Error::MissingTypes("subgroup is not type preserving".into()));
            }
        }
    }
    Ok(ty)
}

/// A chamber of the `d = 2` quotient: its type-0 vertex (a coset) and the
/// triple `(x, y, z)` with vertices `c`, `c·a_x`, `c·a_x·a_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalFlag {
    pub coset: usize,
    pub triple: usize,
}

/// Chamber system of `H\X` from a complete coset table of a type-preserving
/// subgroup `H`. Returns the chambers' labels alongside.
pub fn chamber_system_of_presentation(
    pres: &TrianglePresentation,
    table: &CosetTable,
) -> Result<(ChamberSystem, Vec<LocalFlag>)> {
    if !table.is_complete() {
        return Err(Error::IncompleteTable);
    }
    let types = coset_types(pres, table)?;
    let triples = pres.triples();
    let mut flags = Vec::new();
    let mut id = BTreeMap::new();
    for c in (0..table.index()).filter(|&c| types[c] == 0) {
        for t in 0..triples.len() {
            id.insert((c, t), flags.len());
            flags.push(LocalFlag { coset: c, triple: t });
        }
    }
    let mut keyed: Vec<BTreeMap<(usize, usize), usize>> = vec![BTreeMap::new(); 3];
    let mut panels = vec![vec![0usize; flags.len()]; 3];
    for (ch, f) in flags.iter().enumerate() {
        let [x, y, z] = triples[f.triple];
        // type 2: edge {c, c·a_x}; type 1: edge {c, c·a_z⁻¹}; type 0: edge {c·a_x, c·a_x·a_y}
        let keys = [(table.act(f.coset, letter(x, false)), y), (f.coset, z), (f.coset, x)];
        for (kind, key) in keys.into_iter().enumerate() {
            let next = keyed[kind].len();
            panels[kind][ch] = *keyed[kind].entry(key).or_insert(next);
        }
    }
    let cs = ChamberSystem::new(2, pres.q(), panels)?;
    Ok((cs, flags))
}
