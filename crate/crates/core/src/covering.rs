//! The fibered graph `Z_IJK = { (π, ρ) ∈ Y_I × Y_J : πρ ∈ Y_K }` and its
//! projection `Π(π, ρ) = πρ` onto `Y_K`.
//!
//! `Z` is built by filtering the full product `Y_I × Y_J`; that `Π` is a
//! covering map is checked by [`verify_covering`], never assumed.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::recoil::{RecoilAtlas, RecoilClass};
use crate::system::{CoxeterSystem, ElemId};
use crate::union_find::UnionFind;

const NO_VERTEX: u32 = u32::MAX;

/// Which factor an edge of `Z` moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `π` moves to `π·s` (drawn red).
    Left,
    /// `ρ` moves to `ρ·s` (drawn blue).
    Right,
}

impl Side {
    pub fn color(self) -> &'static str {
        match self {
            Side::Left => "red",
            Side::Right => "blue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZVertex {
    pub left: ElemId,
    pub right: ElemId,
    /// `Π(π, ρ) = πρ`.
    pub image: ElemId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZEdge {
    pub to: usize,
    pub side: Side,
    /// The generator moving the factor named by `side`.
    pub generator: usize,
    /// The generator `s` of the edge `σ -- σs` of `Y_K` this edge lies over.
    pub base_generator: usize,
}

/// Result of lifting one edge of `Y_K` through a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lift {
    pub left: ElemId,
    pub right: ElemId,
    pub side: Side,
    pub generator: usize,
}

/// Per-component covering degrees, weakly decreasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MultiplicityPartition(pub Vec<usize>);

impl MultiplicityPartition {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct CoveringInstance<'a> {
    atlas: &'a RecoilAtlas<'a>,
    pub left_set: GeneratorSet,
    pub right_set: GeneratorSet,
    pub target: GeneratorSet,
    pub vertices: Vec<ZVertex>,
    pub adjacency: Vec<Vec<ZEdge>>,
    /// `fibers[k]` holds the vertices over the `k`-th member of `Y_K`.
    pub fibers: Vec<Vec<usize>>,
    /// Component label of every vertex.
    pub components: Vec<usize>,
    pub component_count: usize,
    /// Degree of each component, counted over the first member of `Y_K`.
    pub degrees: Vec<usize>,
    /// Edges of the induced product graph on `Z` that do not lie over an
    /// edge of `Y_K` and are therefore not edges of `Z`.
    pub dropped_edges: usize,
    lookup: Vec<u32>,
}

/// The edge-lifting dichotomy: given `σ = πρ` and a generator `s` with
/// `R(σs) = R(σ)`, exactly one of `(π, ρs)` with `R(ρs) = R(ρ)` and
/// `(π·ρsρ⁻¹, ρ)` with `ρsρ⁻¹ ∈ S` and `R(π·ρsρ⁻¹) = R(π)` factors `σs`.
pub fn unique_lift_edge(
    sys: &CoxeterSystem,
    left: ElemId,
    right: ElemId,
    s: usize,
) -> Result<Lift> {
    let product = sys.multiply(left, right);
    let moved = sys.right_mul(product, s);
    if sys.recoil_set(moved) != sys.recoil_set(product) {
        return Err(Error::NotAClassEdge {
            generator: s,
            class: sys.recoil_set(product).subscript(),
        });
    }

    let right_moved = sys.right_mul(right, s);
    let right_case = (sys.recoil_set(right_moved) == sys.recoil_set(right)).then_some(Lift {
        left,
        right: right_moved,
        side: Side::Right,
        generator: s,
    });

    let left_case = sys.as_generator(sys.conjugate(right, s)).and_then(|t| {
        let left_moved = sys.right_mul(left, t);
        (sys.recoil_set(left_moved) == sys.recoil_set(left)).then_some(Lift {
            left: left_moved,
            right,
            side: Side::Left,
            generator: t,
        })
    });

    match (right_case, left_case) {
        (Some(lift), None) | (None, Some(lift)) => Ok(lift),
        (Some(_), Some(_)) => Err(Error::LiftNotUnique(format!(
            "both factorizations of ({}, {})·s{} are valid",
            sys.display(left),
            sys.display(right),
            s + 1
        ))),
        (None, None) => Err(Error::LiftNotUnique(format!(
            "no factorization of ({}, {})·s{} is valid",
            sys.display(left),
            sys.display(right),
            s + 1
        ))),
    }
}

impl<'a> CoveringInstance<'a> {
    pub fn build(
        atlas: &'a RecoilAtlas<'a>,
        left_set: GeneratorSet,
        right_set: GeneratorSet,
        target: GeneratorSet,
    ) -> Self {
        let sys = atlas.system();
        let (yi, yj, yk) = (
            atlas.class(left_set),
            atlas.class(right_set),
            atlas.class(target),
        );
        let width = yj.len();

        let mut lookup = vec![NO_VERTEX; yi.len() * width];
        let mut vertices = Vec::new();
        let mut fibers = vec![Vec::new(); yk.len()];
        for (a, &pi) in yi.members.iter().enumerate() {
            for (b, &rho) in yj.members.iter().enumerate() {
                let image = sys.multiply(pi, rho);
                if let Some(k) = yk.position(image) {
                    lookup[a * width + b] = vertices.len() as u32;
                    fibers[k].push(vertices.len());
                    vertices.push(ZVertex {
                        left: pi,
                        right: rho,
                        image,
                    });
                }
            }
        }

        // Product-graph edges between vertices of Z are kept only when they
        // lie over an edge of Y_K. Right moves always do; a left move
        // π -> π·g does exactly when ρ⁻¹gρ is simple.
        let image_position: Vec<usize> = vertices
            .iter()
            .map(|v| yk.position(v.image).expect("vertices lie over Y_K"))
            .collect();
        let over_edge = |from: u32, to: u32| -> Option<usize> {
            let (k, k2) = (image_position[from as usize], image_position[to as usize]);
            yk.adjacency[k]
                .iter()
                .find(|e| e.to == k2)
                .map(|e| e.generator)
        };
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut dropped_edges = 0;
        for (a, left_edges) in yi.adjacency.iter().enumerate() {
            for b in 0..width {
                let from = lookup[a * width + b];
                if from == NO_VERTEX {
                    continue;
                }
                let moves = left_edges
                    .iter()
                    .map(|e| (lookup[e.to * width + b], Side::Left, e.generator))
                    .chain(
                        yj.adjacency[b]
                            .iter()
                            .map(|e| (lookup[a * width + e.to], Side::Right, e.generator)),
                    );
                for (to, side, generator) in moves {
                    if to == NO_VERTEX {
                        continue;
                    }
                    match over_edge(from, to) {
                        Some(base_generator) => adjacency[from as usize].push(ZEdge {
                            to: to as usize,
                            side,
                            generator,
                            base_generator,
                        }),
                        None => dropped_edges += 1,
                    }
                }
            }
        }
        let dropped_edges = dropped_edges / 2;

        let mut uf = UnionFind::new(vertices.len());
        for (v, edges) in adjacency.iter().enumerate() {
            for e in edges {
                uf.union(v, e.to);
            }
        }
        let (components, component_count) = uf.labels();
        let mut degrees = vec![0; component_count];
        if let Some(base) = fibers.first() {
            for &v in base {
                degrees[components[v]] += 1;
            }
        }

        CoveringInstance {
            atlas,
            left_set,
            right_set,
            target,
            vertices,
            adjacency,
            fibers,
            components,
            component_count,
            degrees,
            dropped_edges,
            lookup,
        }
    }

    pub fn atlas(&self) -> &'a RecoilAtlas<'a> {
        self.atlas
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.atlas.system()
    }

    pub fn target_class(&self) -> &'a RecoilClass {
        self.atlas.class(self.target)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The vertex `(π, ρ)`, if it lies in `Z`.
    pub fn vertex_of(&self, left: ElemId, right: ElemId) -> Option<usize> {
        let yi = self.atlas.class(self.left_set);
        let yj = self.atlas.class(self.right_set);
        let (a, b) = (yi.position(left)?, yj.position(right)?);
        let v = self.lookup[a * yj.len() + b];
        (v != NO_VERTEX).then_some(v as usize)
    }

    /// Vertices over `σ`; empty when `σ ∉ Y_K`.
    pub fn fiber(&self, image: ElemId) -> &[usize] {
        match self.target_class().position(image) {
            Some(k) => &self.fibers[k],
            None => &[],
        }
    }

    /// The common fiber size `a_IJK`, after checking that every fiber has
    /// the same size and that every component meets every fiber equally.
    pub fn check_fiber_constancy(&self) -> Result<usize> {
        let yk = self.target_class();
        let sys = self.system();
        let Some(base) = self.fibers.first() else {
            return Ok(0);
        };
        let expected = base.len();
        let mut per_component = vec![0usize; self.component_count];
        for (k, fiber) in self.fibers.iter().enumerate() {
            let witness = || sys.display(yk.members[k]).to_string();
            if fiber.len() != expected {
                return Err(Error::FiberInconstant {
                    target: self.target.subscript(),
                    expected,
                    found: fiber.len(),
                    witness: witness(),
                });
            }
            per_component.iter_mut().for_each(|c| *c = 0);
            for &v in fiber {
                per_component[self.components[v]] += 1;
            }
            if let Some(c) =
                (0..self.component_count).find(|&c| per_component[c] != self.degrees[c])
            {
                return Err(Error::FiberInconstant {
                    target: self.target.subscript(),
                    expected: self.degrees[c],
                    found: per_component[c],
                    witness: format!("{} in component {c}", witness()),
                });
            }
        }
        Ok(expected)
    }

    /// `λ^{IJK}`: per-component degrees, sorted decreasingly.
    pub fn multiplicity_partition(&self) -> MultiplicityPartition {
        let mut parts = self.degrees.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        MultiplicityPartition(parts)
    }

    /// Vertices of component `c`, in vertex order.
    pub fn component_vertices(&self, c: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.components[v] == c)
            .collect()
    }

    /// Whether `Π` restricted to component `c` is a graph isomorphism onto
    /// `Y_K`.
    pub fn component_isomorphic_to_target(&self, c: usize) -> bool {
        let yk = self.target_class();
        let members = self.component_vertices(c);
        if members.len() != yk.len() {
            return false;
        }
        let mut hit = vec![false; yk.len()];
        for &v in &members {
            match yk.position(self.vertices[v].image) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => return false,
            }
        }
        let mut edges = 0;
        for &v in &members {
            let from = yk.position(self.vertices[v].image).expect("checked above");
            for e in &self.adjacency[v] {
                let to = yk.position(self.vertices[e.to].image).expect("same class");
                if !yk.adjacency[from].iter().any(|ce| ce.to == to) {
                    return false;
                }
                edges += 1;
            }
        }
        edges / 2 == yk.edge_count()
    }

    /// The unique neighbor of `v` lying over `σ·s`, computed from the lifting
    /// dichotomy rather than from the stored adjacency.
    pub fn lift_step(&self, v: usize, s: usize) -> Result<(usize, Lift)> {
        let vertex = self.vertices[v];
        let lift = unique_lift_edge(self.system(), vertex.left, vertex.right, s)?;
        let next = self.vertex_of(lift.left, lift.right).ok_or_else(|| {
            Error::LiftNotUnique(format!("lift of vertex {v} along s{} leaves Z", s + 1))
        })?;
        Ok((next, lift))
    }

    /// JSON-ready summary of the instance.
    pub fn summary(&self) -> CoverSummary {
        let partition = self.multiplicity_partition();
        CoverSummary {
            left: self.left_set,
            right: self.right_set,
            target: self.target,
            a: partition.total(),
            lambda: partition.0,
            components: self.component_count,
            vertices: self.vertices.len(),
        }
    }

    /// Graphviz rendering with vertices labeled `(π|ρ)`, right moves blue and
    /// left moves red.
    pub fn to_dot(&self) -> String {
        let sys = self.system();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph \"Z_{}/{}/{}\" {{",
            self.left_set.subscript(),
            self.right_set.subscript(),
            self.target.subscript()
        );
        for (v, vertex) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  z{v} [label=\"({}|{})\", tooltip=\"{}\"];",
                sys.display(vertex.left),
                sys.display(vertex.right),
                sys.display(vertex.image)
            );
        }
        for (v, edges) in self.adjacency.iter().enumerate() {
            for e in edges.iter().filter(|e| v < e.to) {
                let _ = writeln!(
                    out,
                    "  z{v} -- z{} [color={}, label=\"{}\"];",
                    e.to,
                    e.side.color(),
                    e.generator + 1
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// JSON form of an instance:
/// `{"I":[..],"J":[..],"K":[..],"a":int,"lambda":[..],"components":int,"vertices":int}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSummary {
    #[serde(rename = "I")]
    pub left: GeneratorSet,
    #[serde(rename = "J")]
    pub right: GeneratorSet,
    #[serde(rename = "K")]
    pub target: GeneratorSet,
    pub a: usize,
    pub lambda: Vec<usize>,
    pub components: usize,
    pub vertices: usize,
}

/// Builds `Z_IJK` together with the recoil classes it needs.
pub fn build_fibered_graph<'a>(
    atlas: &'a RecoilAtlas<'a>,
    left_set: GeneratorSet,
    right_set: GeneratorSet,
    target: GeneratorSet,
) -> CoveringInstance<'a> {
    CoveringInstance::build(atlas, left_set, right_set, target)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoveringStatus {
    Covering,
    /// `Z` is empty, so surjectivity fails vacuously; `a_IJK = 0`.
    EmptyInstance,
    Violated,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    pub status: CoveringStatus,
    pub surjective: bool,
    pub edges_preserved: bool,
    pub unique_lifting: bool,
    /// Induced product-graph edges left out of `Z` because they do not lie
    /// over an edge of `Y_K`.
    pub dropped_edges: usize,
    /// Human-readable witnesses of failed axioms, first few only.
    pub violations: Vec<String>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.status != CoveringStatus::Violated
    }
}

const MAX_WITNESSES: usize = 8;

/// Checks the three covering axioms for `Π : Z_IJK → Y_K`: surjectivity, edge
/// preservation, and unique lifting of every edge at every point of a fiber.
/// Each lift found in `Z` is also compared against [`unique_lift_edge`].
pub fn verify_covering(instance: &CoveringInstance<'_>) -> CoveringReport {
    let sys = instance.system();
    let yk = instance.target_class();
    if instance.is_empty() {
        return CoveringReport {
            status: CoveringStatus::EmptyInstance,
            surjective: false,
            edges_preserved: true,
            unique_lifting: true,
            dropped_edges: 0,
            violations: vec![format!(
                "Z_{}/{}/{} is empty; Π is not surjective",
                instance.left_set.subscript(),
                instance.right_set.subscript(),
                instance.target.subscript()
            )],
        };
    }

    let mut violations = Vec::new();
    let mut note = |text: String| {
        if violations.len() < MAX_WITNESSES {
            violations.push(text);
        }
    };

    let mut surjective = true;
    for (k, fiber) in instance.fibers.iter().enumerate() {
        if fiber.is_empty() {
            surjective = false;
            note(format!("nothing lies over {}", sys.display(yk.members[k])));
        }
    }

    let mut edges_preserved = true;
    for (v, edges) in instance.adjacency.iter().enumerate() {
        let from = instance.vertices[v].image;
        for e in edges {
            let to = instance.vertices[e.to].image;
            if sys.right_mul(from, e.base_generator) != to {
                edges_preserved = false;
                note(format!(
                    "edge z{v} -- z{} maps to {} -- {}, not an edge",
                    e.to,
                    sys.display(from),
                    sys.display(to)
                ));
            }
        }
    }

    // Rebuild the induced product graph on Z from scratch: an edge of it
    // must be stored exactly when it lies over an edge of Y_K.
    for (v, vertex) in instance.vertices.iter().enumerate() {
        for g in 0..sys.rank() {
            let moves = [
                (sys.right_mul(vertex.left, g), vertex.right, Side::Left),
                (vertex.left, sys.right_mul(vertex.right, g), Side::Right),
            ];
            for (left, right, side) in moves {
                let Some(w) = instance.vertex_of(left, right) else {
                    continue;
                };
                let stored = instance.adjacency[v]
                    .iter()
                    .any(|e| e.to == w && e.side == side && e.generator == g);
                let image = instance.vertices[w].image;
                let over_edge = (0..sys.rank()).any(|s| sys.right_mul(vertex.image, s) == image);
                if stored != over_edge {
                    edges_preserved = false;
                    note(format!(
                        "product edge z{v} -- z{w} over {} -- {} is {}",
                        sys.display(vertex.image),
                        sys.display(image),
                        if stored {
                            "stored but not over an edge"
                        } else {
                            "missing"
                        }
                    ));
                }
            }
        }
    }

    let mut unique_lifting = true;
    for (k, fiber) in instance.fibers.iter().enumerate() {
        for class_edge in &yk.adjacency[k] {
            let z = yk.members[class_edge.to];
            for &u in fiber {
                let over: Vec<usize> = instance.adjacency[u]
                    .iter()
                    .filter(|e| instance.vertices[e.to].image == z)
                    .map(|e| e.to)
                    .collect();
                if over.len() != 1 {
                    unique_lifting = false;
                    note(format!(
                        "z{u} has {} neighbors over {}",
                        over.len(),
                        sys.display(z)
                    ));
                    continue;
                }
                match instance.lift_step(u, class_edge.generator) {
                    Ok((next, _)) if next == over[0] => {}
                    Ok((next, _)) => {
                        unique_lifting = false;
                        note(format!(
                            "z{u}: stored neighbor z{} but the dichotomy gives z{next}",
                            over[0]
                        ));
                    }
                    Err(err) => {
                        unique_lifting = false;
                        note(format!("z{u}: {err}"));
                    }
                }
            }
        }
    }

    let ok = surjective && edges_preserved && unique_lifting;
    CoveringReport {
        status: if ok {
            CoveringStatus::Covering
        } else {
            CoveringStatus::Violated
        },
        surjective,
        edges_preserved,
        unique_lifting,
        dropped_edges: instance.dropped_edges,
        violations,
    }
}

/// A finite simple graph, for [`cycle_rank`].
pub trait UndirectedGraph {
    fn vertex_count(&self) -> usize;
    /// Each undirected edge once.
    fn edge_list(&self) -> Vec<(usize, usize)>;
}

impl UndirectedGraph for RecoilClass {
    fn vertex_count(&self) -> usize {
        self.len()
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().map(|(i, j, _)| (i, j)).collect()
    }
}

impl UndirectedGraph for CoveringInstance<'_> {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(v, edges)| {
                edges
                    .iter()
                    .filter(move |e| v < e.to)
                    .map(move |e| (v, e.to))
            })
            .collect()
    }
}

/// `|E| − |V| + (number of components)`; the rank of the fundamental group
/// for a connected graph.
pub fn cycle_rank<G: UndirectedGraph + ?Sized>(graph: &G) -> usize {
    let n = graph.vertex_count();
    let edges = graph.edge_list();
    let mut uf = UnionFind::new(n);
    for &(a, b) in &edges {
        uf.union(a, b);
    }
    let (_, components) = uf.labels();
    edges.len() + components - n
}
