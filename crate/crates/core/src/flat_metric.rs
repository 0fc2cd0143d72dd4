//! The triangular Finsler metric F^Δ: pointwise evaluation and combinatorial
//! translation lengths on the equilateral 1/3-translation structure of Γ_pqr.
//!
//! Chambers of the triangle tiling correspond to group elements: chamber g is
//! adjacent to g·s across its side of type s. Even chambers are grey, odd ones
//! white. Each chamber has three corners, typed by the pair of mirrors meeting
//! there; a corner is identified exactly by the vector ρ₁(g)·n_X fixed by the
//! two reflections of type X (ρ₁ the representation at t = 1).

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgInt, Ring};
use crate::error::{Error, Result};
use crate::triangle_group::{ElementId, Gen, Presentation, SymbolicRep, Word, WordProblem};

/// max over the cube roots α of μ₀ of 2·Re(α·v); 0 on the zero locus.
pub fn finsler_delta_eval(mu: Complex64, v: Complex64) -> f64 {
    if mu == Complex64::new(0.0, 0.0) {
        return 0.0;
    }
    let base = mu.powf(1.0 / 3.0);
    (0..3)
        .map(|k| {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
            2.0 * (base * zeta * v).re
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Corner type: the two mirrors meeting at the corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Corner {
    AB,
    BC,
    CA,
}

impl Corner {
    pub const ALL: [Corner; 3] = [Corner::AB, Corner::BC, Corner::CA];

    fn index(self) -> usize {
        self as usize
    }

    fn mirrors(self) -> (Gen, Gen) {
        match self {
            Corner::AB => (Gen::A, Gen::B),
            Corner::BC => (Gen::B, Gen::C),
            Corner::CA => (Gen::C, Gen::A),
        }
    }

    /// The two corners joined by the side of type `s`.
    fn of_side(s: Gen) -> (Corner, Corner) {
        match s {
            Gen::A => (Corner::CA, Corner::AB),
            Gen::B => (Corner::AB, Corner::BC),
            Gen::C => (Corner::BC, Corner::CA),
        }
    }
}

/// Counterclockwise corner order of grey chambers. White chambers are mirror
/// images, so the same cyclic order runs clockwise around them.
const GREY_CCW: [Corner; 3] = [Corner::AB, Corner::BC, Corner::CA];

fn is_ccw(order: &[Corner; 3], from: Corner, to: Corner) -> bool {
    (0..3).any(|k| order[k] == from && order[(k + 1) % 3] == to)
}

/// Weight of traversing the side from `from` to `to`, as seen from one chamber:
/// 2 counterclockwise around grey, 1 clockwise; the reverse for white.
fn side_weight(grey: bool, from: Corner, to: Corner) -> u32 {
    let ccw = if grey {
        is_ccw(&GREY_CCW, from, to)
    } else {
        let reversed = [GREY_CCW[0], GREY_CCW[2], GREY_CCW[1]];
        is_ccw(&reversed, from, to)
    };
    match (grey, ccw) {
        (true, true) | (false, false) => 2,
        _ => 1,
    }
}

/// A chamber of the patch.
#[derive(Clone, Debug)]
pub struct Triangle {
    id: ElementId,
    /// A word reaching this chamber from the base chamber.
    pub word: Word,
    pub grey: bool,
    /// Vertex indices of the corners, indexed by [`Corner`].
    pub corners: [usize; 3],
    /// Spine position this chamber descends from.
    pub anchor: usize,
    /// Combinatorial distance from the spine.
    pub layer: usize,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    key: [AlgInt; 3],
    pub kind: Corner,
}

/// A directed side with its F^Δ length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: u32,
}

/// A developed patch of the tiling around the path of a word.
#[derive(Clone, Debug)]
pub struct TilingPatch {
    pres: Presentation,
    wp: WordProblem,
    word: Word,
    action: ElementId,
    /// Fixed vectors n_X of the two mirrors at each corner type, at t = 1.
    normals: [[AlgInt; 3]; 3],
    triangles: Vec<Triangle>,
    tri_index: HashMap<ElementId, usize>,
    vertices: Vec<Vertex>,
    vertex_index: HashMap<[AlgInt; 3], usize>,
    /// Undirected sides keyed by (min, max) vertex pair; value is the weight of
    /// min → max, proposed by every chamber containing the side.
    sides: HashMap<(usize, usize), u32>,
    spine_len: usize,
    thickness: usize,
    frontier: Vec<usize>,
}

fn cross(u: &[AlgInt; 3], v: &[AlgInt; 3]) -> [AlgInt; 3] {
    [
        u[1].mul_ref(&v[2]).sub_ref(&u[2].mul_ref(&v[1])),
        u[2].mul_ref(&v[0]).sub_ref(&u[0].mul_ref(&v[2])),
        u[0].mul_ref(&v[1]).sub_ref(&u[1].mul_ref(&v[0])),
    ]
}

impl TilingPatch {
    /// The spine: chambers along three concatenated copies of `w`'s letter path.
    fn spine(pres: &Presentation, w: &Word) -> Result<Self> {
        let wp = WordProblem::new(*pres);
        let gram = wp.gram().clone();
        let row = |g: Gen| -> [AlgInt; 3] { std::array::from_fn(|j| gram.get(g.index(), j).clone()) };
        let normals = Corner::ALL.map(|x| {
            let (s, u) = x.mirrors();
            cross(&row(s), &row(u))
        });
        let mut patch = TilingPatch {
            pres: *pres,
            action: wp.id(w),
            wp,
            word: w.clone(),
            normals,
            triangles: Vec::new(),
            tri_index: HashMap::new(),
            vertices: Vec::new(),
            vertex_index: HashMap::new(),
            sides: HashMap::new(),
            spine_len: 3 * w.len() + 1,
            thickness: 0,
            frontier: Vec::new(),
        };
        let path = w.repeat(3);
        let mut id = patch.wp.identity();
        let mut word = Word::empty();
        patch.add_triangle(id.clone(), word.clone(), 0, 0)?;
        for (k, &g) in path.gens().iter().enumerate() {
            id = patch.wp.mul_gen(&id, g);
            word = word.concat(&Word::from_gens(vec![g]));
            patch.add_triangle(id.clone(), word.clone(), k + 1, 0)?;
        }
        patch.frontier = (0..patch.triangles.len()).collect();
        Ok(patch)
    }

    fn vertex(&mut self, key: [AlgInt; 3], kind: Corner) -> usize {
        if let Some(&v) = self.vertex_index.get(&key) {
            return v;
        }
        let v = self.vertices.len();
        self.vertex_index.insert(key.clone(), v);
        self.vertices.push(Vertex { key, kind });
        v
    }

    fn add_triangle(&mut self, id: ElementId, word: Word, anchor: usize, layer: usize) -> Result<Option<usize>> {
        if self.tri_index.contains_key(&id) {
            return Ok(None);
        }
        let m = id.matrix().clone();
        let corners = Corner::ALL.map(|x| {
            let key = m.mul_vec(&self.normals[x.index()]);
            self.vertex(key, x)
        });
        let grey = word.is_even();
        for s in Gen::ALL {
            let (x, y) = Corner::of_side(s);
            let (u, v) = (corners[x.index()], corners[y.index()]);
            let (lo, hi, from, to) = if u < v { (u, v, x, y) } else { (v, u, y, x) };
            let w = side_weight(grey, from, to);
            match self.sides.get(&(lo, hi)) {
                Some(&old) if old != w => return Err(Error::WeightInconsistency(lo)),
                Some(_) => {}
                None => {
                    self.sides.insert((lo, hi), w);
                }
            }
        }
        let t = self.triangles.len();
        self.tri_index.insert(id.clone(), t);
        self.triangles.push(Triangle {
            id,
            word,
            grey,
            corners,
            anchor,
            layer,
        });
        Ok(Some(t))
    }

    /// Adds one layer of edge-adjacent chambers around the current patch.
    fn thicken(&mut self) -> Result<()> {
        let frontier = std::mem::take(&mut self.frontier);
        let mut next = Vec::new();
        for t in frontier {
            for s in Gen::ALL {
                let tri = &self.triangles[t];
                let id = self.wp.mul_gen(&tri.id, s);
                let word = tri.word.concat(&Word::from_gens(vec![s])).reduce();
                let (anchor, layer) = (tri.anchor, tri.layer + 1);
                if let Some(n) = self.add_triangle(id, word, anchor, layer)? {
                    next.push(n);
                }
            }
        }
        self.frontier = next;
        self.thickness += 1;
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn thickness(&self) -> usize {
        self.thickness
    }

    pub fn spine_len(&self) -> usize {
        self.spine_len
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Index of the chamber of the group element represented by `w`, if present.
    pub fn triangle_of(&self, w: &Word) -> Option<usize> {
        self.tri_index.get(&self.wp.id(w)).copied()
    }

    /// Neighbor of chamber `t` across its side of type `s`, if present.
    pub fn neighbor(&self, t: usize, s: Gen) -> Option<usize> {
        let id = self.wp.mul_gen(&self.triangles[t].id, s);
        self.tri_index.get(&id).copied()
    }

    /// Image of a vertex under the word's element, if it lies in the patch.
    pub fn act(&self, v: usize) -> Option<usize> {
        let key = self.wp.act(&self.action, &self.vertices[v].key);
        self.vertex_index.get(&key).copied()
    }

    /// Weight of the directed side u → v, if it is a side of the patch.
    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        if u < v {
            self.sides.get(&(u, v)).copied()
        } else {
            self.sides.get(&(v, u)).map(|w| 3 - w)
        }
    }

    pub fn directed_edges(&self) -> Vec<DirectedEdge> {
        let mut out: Vec<DirectedEdge> = self
            .sides
            .iter()
            .flat_map(|(&(lo, hi), &w)| {
                [
                    DirectedEdge { from: lo, to: hi, weight: w },
                    DirectedEdge { from: hi, to: lo, weight: 3 - w },
                ]
            })
            .collect();
        out.sort_by_key(|e| (e.from, e.to));
        out
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in self.directed_edges() {
            adj[e.from].push((e.to, e.weight));
        }
        adj
    }

    /// Serializable view for debugging and plotting.
    pub fn dump(&self) -> PatchDump {
        let mut edges: Vec<[usize; 2]> = self.sides.keys().map(|&(a, b)| [a, b]).collect();
        edges.sort();
        PatchDump {
            presentation: self.pres.to_string(),
            word: self.word.to_string(),
            thickness: self.thickness,
            triangles: self
                .triangles
                .iter()
                .enumerate()
                .map(|(i, t)| TriangleDump {
                    index: i,
                    word: t.word.to_string(),
                    color: if t.grey { "grey" } else { "white" },
                    corners: t.corners,
                    anchor: t.anchor,
                    layer: t.layer,
                })
                .collect(),
            vertex_kinds: self.vertices.iter().map(|v| v.kind).collect(),
            edges,
            directed: self.directed_edges(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleDump {
    pub index: usize,
    pub word: String,
    pub color: &'static str,
    pub corners: [usize; 3],
    pub anchor: usize,
    pub layer: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatchDump {
    pub presentation: String,
    pub word: String,
    pub thickness: usize,
    pub triangles: Vec<TriangleDump>,
    pub vertex_kinds: Vec<Corner>,
    pub edges: Vec<[usize; 2]>,
    pub directed: Vec<DirectedEdge>,
}

/// Spine of three copies of `w` thickened by `thickness` layers of adjacent chambers.
pub fn build_tube(pres: &Presentation, w: &Word, thickness: usize) -> Result<TilingPatch> {
    if w.is_empty() || !w.is_reduced() {
        return Err(Error::InvalidParameter(format!(
            "tube needs a nonempty reduced word, got `{w}`"
        )));
    }
    let mut patch = TilingPatch::spine(pres, w)?;
    for _ in 0..thickness {
        patch.thicken()?;
    }
    Ok(patch)
}

/// Checks that both chambers along every interior side propose the same weights.
/// Weights are assigned during construction; this re-derives them from scratch.
pub fn edge_weights(patch: &TilingPatch) -> Result<Vec<DirectedEdge>> {
    for t in &patch.triangles {
        for s in Gen::ALL {
            let (x, y) = Corner::of_side(s);
            let (u, v) = (t.corners[x.index()], t.corners[y.index()]);
            if patch.weight(u, v) != Some(side_weight(t.grey, x, y)) {
                return Err(Error::WeightInconsistency(u.min(v)));
            }
        }
    }
    Ok(patch.directed_edges())
}

/// min over candidate vertices x of the directed distance d(x, w·x).
fn displacement(patch: &TilingPatch) -> Option<u64> {
    let n = patch.word.len();
    let lo = n;
    let hi = 2 * n;
    let mut candidates: Vec<usize> = patch
        .triangles
        .iter()
        .filter(|t| t.anchor >= lo && t.anchor <= hi)
        .flat_map(|t| t.corners)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let adj = patch.adjacency();
    let mut best: Option<u64> = None;
    let mut dist = vec![u64::MAX; patch.vertices.len()];
    let mut touched = Vec::new();
    for x in candidates {
        let Some(target) = patch.act(x) else { continue };
        if target == x {
            return Some(0);
        }
        let bound = best.unwrap_or(u64::MAX);
        for &v in &touched {
            dist[v] = u64::MAX;
        }
        touched.clear();
        let mut heap = BinaryHeap::new();
        dist[x] = 0;
        touched.push(x);
        heap.push(Reverse((0u64, x)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d >= bound {
                break;
            }
            if d > dist[u] {
                continue;
            }
            if u == target {
                best = Some(d);
                break;
            }
            for &(v, w) in &adj[u] {
                let nd = d + w as u64;
                if nd < dist[v] {
                    if dist[v] == u64::MAX {
                        touched.push(v);
                    }
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
    }
    best
}

/// min over vertices x near the middle of the tube of d(x, w·x) at a fixed
/// thickness; `None` when no candidate has its image inside the patch.
pub fn displacement_at(pres: &Presentation, w: &Word, thickness: usize) -> Result<Option<u64>> {
    let w = WordProblem::new(*pres).cyclic_geodesic(w);
    if w.is_empty() {
        return Ok(Some(0));
    }
    Ok(displacement(&build_tube(pres, &w, thickness)?))
}

/// Limits for [`translation_length_with`].
#[derive(Clone, Copy, Debug)]
pub struct TubeLimits {
    pub initial_thickness: usize,
    pub max_doublings: u32,
    /// Patches larger than this count as non-stabilized.
    pub max_triangles: usize,
}

impl Default for TubeLimits {
    fn default() -> Self {
        TubeLimits {
            initial_thickness: 1,
            max_doublings: 12,
            max_triangles: 2_000_000,
        }
    }
}

/// F^Δ translation length of `w` on the reflection-locus graph.
pub fn translation_length(pres: &Presentation, w: &Word) -> Result<u64> {
    translation_length_with(pres, w, TubeLimits::default())
}

pub fn translation_length_with(pres: &Presentation, w: &Word, limits: TubeLimits) -> Result<u64> {
    let w = WordProblem::new(*pres).cyclic_geodesic(w);
    if w.is_empty() {
        return Ok(0);
    }
    let mut patch = build_tube(pres, &w, 0)?;
    let mut thickness = limits.initial_thickness.max(1);
    let mut previous: Option<u64> = None;
    for doubling in 0..=limits.max_doublings {
        while patch.thickness < thickness {
            patch.thicken()?;
            if patch.triangles.len() > limits.max_triangles {
                return Err(Error::NotStabilized {
                    word: w.to_string(),
                    doublings: doubling,
                });
            }
        }
        let current = displacement(&patch);
        if current == Some(0) {
            return Ok(0);
        }
        if current.is_some() && current == previous {
            return Ok(current.expect("checked"));
        }
        previous = current;
        thickness *= 2;
    }
    Err(Error::NotStabilized {
        word: w.to_string(),
        doublings: limits.max_doublings,
    })
}

/// Comparison of trace degrees against translation lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLengthReport {
    pub d1: i32,
    pub d2: i32,
    pub length: u64,
    pub inverse_length: u64,
    pub consistent: bool,
}

/// A trace that vanishes identically (finite-order elements whose eigenvalues
/// are the cube roots of unity) counts as degree 0.
pub fn check_degree_length(rep: &SymbolicRep, w: &Word) -> Result<DegreeLengthReport> {
    let pres = rep.presentation();
    let degree = |w: &Word| match rep.evaluate(w).trace().top_degree() {
        Err(Error::UndefinedDegree) => Ok(0),
        other => other,
    };
    let (d1, d2) = (degree(w)?, degree(&w.reversed())?);
    let length = translation_length(pres, w)?;
    let inverse_length = translation_length(pres, &w.reversed())?;
    let consistent = length as i64 == 3 * d1 as i64 && inverse_length as i64 == 3 * d2 as i64;
    Ok(DegreeLengthReport {
        d1,
        d2,
        length,
        inverse_length,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p444() -> Presentation {
        Presentation::new(4, 4, 4).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pointwise_examples() {
        assert!((finsler_delta_eval(c(1.0, 0.0), c(1.0, 0.0)) - 2.0).abs() < 1e-12);
        assert!((finsler_delta_eval(c(1.0, 0.0), c(-1.0, 0.0)) - 1.0).abs() < 1e-12);
        assert_eq!(finsler_delta_eval(c(0.0, 0.0), c(3.0, -1.0)), 0.0);
        assert!((finsler_delta_eval(c(1.0, 0.0), c(0.0, 1.0)) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn side_weights_sum_to_three() {
        for grey in [true, false] {
            for x in Corner::ALL {
                for y in Corner::ALL {
                    if x != y {
                        assert_eq!(side_weight(grey, x, y) + side_weight(grey, y, x), 3);
                    }
                }
            }
        }
        let around: u32 = (0..3).map(|k| side_weight(true, GREY_CCW[k], GREY_CCW[(k + 1) % 3])).sum();
        assert_eq!(around, 6);
        let back: u32 = (0..3).map(|k| side_weight(true, GREY_CCW[(k + 1) % 3], GREY_CCW[k])).sum();
        assert_eq!(back, 3);
    }

    #[test]
    fn tube_around_elliptic_vertex() {
        let patch = build_tube(&p444(), &w("ab"), 1).unwrap();
        for k in 0..8 {
            let around = w("ab").repeat(4).gens()[..k].to_vec();
            assert!(patch.triangle_of(&Word::from_gens(around)).is_some(), "k = {k}");
        }
        let spine = build_tube(&p444(), &w("abc"), 0).unwrap();
        assert_eq!(spine.spine_len(), 10);
        assert_eq!(spine.triangles().len(), 10);
    }

    #[test]
    fn colors_alternate_and_weights_agree() {
        let patch = build_tube(&p444(), &w("abcb"), 3).unwrap();
        for (i, t) in patch.triangles().iter().enumerate() {
            for s in Gen::ALL {
                if let Some(j) = patch.neighbor(i, s) {
                    assert_ne!(t.grey, patch.triangles()[j].grey);
                }
            }
        }
        let edges = edge_weights(&patch).unwrap();
        assert!(edges.iter().all(|e| e.weight == 1 || e.weight == 2));
    }

    #[test]
    fn elliptic_length_is_zero() {
        assert_eq!(translation_length(&p444(), &w("ab")).unwrap(), 0);
        assert_eq!(translation_length(&p444(), &Word::empty()).unwrap(), 0);
        assert_eq!(translation_length(&p444(), &w("abba")).unwrap(), 0);
    }
}
