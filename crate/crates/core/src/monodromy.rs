//! Relation loops in a recoil class and the permutations they induce on the
//! fibers of a covering `Z_IJK → Y_K`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::covering::{cycle_rank, CoveringInstance};
use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::recoil::RecoilClass;
use crate::system::{CoxeterSystem, ElemId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    /// `s s = e`: an edge walked there and back.
    Square,
    /// `(st)² = e` for commuting generators.
    Commuting,
    /// `(st)³ = e`, a hexagon.
    Braid,
    /// `(st)^m = e` with `m ≥ 4`, a `2m`-gon.
    Polygon,
}

impl LoopKind {
    fn for_order(m: u32) -> Self {
        match m {
            2 => LoopKind::Commuting,
            3 => LoopKind::Braid,
            _ => LoopKind::Polygon,
        }
    }
}

impl fmt::Display for LoopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopKind::Square => "square",
            LoopKind::Commuting => "commuting",
            LoopKind::Braid => "braid",
            LoopKind::Polygon => "polygon",
        })
    }
}

/// A closed walk in a class graph, as a generator word read from `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub base: ElemId,
    pub word: Vec<usize>,
    pub kind: LoopKind,
}

impl Loop {
    /// Checks that `word` walks inside `class` from `base` and back.
    pub fn new(
        sys: &CoxeterSystem,
        class: &RecoilClass,
        base: ElemId,
        word: Vec<usize>,
        kind: LoopKind,
    ) -> Result<Self> {
        let mut at = base;
        for &s in &word {
            if s >= sys.rank() {
                return Err(Error::GeneratorOutOfRange {
                    index: s,
                    rank: sys.rank(),
                });
            }
            if !class.contains(at) || !class.contains(sys.right_mul(at, s)) {
                return Err(Error::NotAClassEdge {
                    generator: s,
                    class: class.subset.subscript(),
                });
            }
            at = sys.right_mul(at, s);
        }
        if at != base {
            return Err(Error::InvalidSpec(format!(
                "word {:?} from {} ends at {}",
                word,
                sys.display(base),
                sys.display(at)
            )));
        }
        Ok(Loop { base, word, kind })
    }

    /// The same loop walked backwards.
    pub fn reversed(&self) -> Loop {
        Loop {
            base: self.base,
            word: self.word.iter().rev().copied().collect(),
            kind: self.kind,
        }
    }

    /// Vertices visited, starting and ending at `base`.
    pub fn vertices(&self, sys: &CoxeterSystem) -> Vec<ElemId> {
        let mut out = vec![self.base];
        let mut at = self.base;
        for &s in &self.word {
            at = sys.right_mul(at, s);
            out.push(at);
        }
        out
    }
}

/// The relation loops lying inside a class: every edge walked there and
/// back, and every `2m(s,t)`-cycle `w⟨s,t⟩` whose vertices all belong to the
/// class. Each cycle is listed once, based at its smallest vertex and walked
/// `s, t, s, …` with `s < t`.
pub fn relation_loops(sys: &CoxeterSystem, class: &RecoilClass) -> Vec<Loop> {
    let mut loops: Vec<Loop> = class
        .edges()
        .map(|(i, _, s)| Loop {
            base: class.members[i],
            word: vec![s, s],
            kind: LoopKind::Square,
        })
        .collect();
    let rank = sys.rank();
    for s in 0..rank {
        for t in s + 1..rank {
            let Some(m) = sys.spec().order(s, t) else {
                continue;
            };
            let word: Vec<usize> = (0..2 * m as usize)
                .map(|k| if k % 2 == 0 { s } else { t })
                .collect();
            let mut covered = HashSet::new();
            for &w in &class.members {
                if covered.contains(&w) {
                    continue;
                }
                let mut at = w;
                let mut inside = true;
                for &g in &word {
                    covered.insert(at);
                    inside &= class.contains(at);
                    at = sys.right_mul(at, g);
                }
                if inside {
                    loops.push(Loop {
                        base: w,
                        word: word.clone(),
                        kind: LoopKind::for_order(m),
                    });
                }
            }
        }
    }
    loops
}

/// Type-A shortcut: the hexagon through `σ` for `s_i, s_{i+1}` stays inside the
/// recoil class iff the three values `σᵢ, σᵢ₊₁, σᵢ₊₂` pairwise differ by at
/// least 2. `None` for word realizations.
pub fn positional_braid_loop(sys: &CoxeterSystem, w: ElemId, i: usize) -> Option<bool> {
    let perm = sys.one_line(w)?;
    let (a, b, c) = (perm[i], perm[i + 1], perm[i + 2]);
    Some(a.abs_diff(b) >= 2 && b.abs_diff(c) >= 2 && a.abs_diff(c) >= 2)
}

/// Unique lift of the walk `word` from the vertex `start` of `Z`, as the list
/// of visited vertices (starting with `start`).
pub fn lift_path(
    instance: &CoveringInstance<'_>,
    start: usize,
    word: &[usize],
) -> Result<Vec<usize>> {
    let sys = instance.system();
    let mut path = Vec::with_capacity(word.len() + 1);
    path.push(start);
    let mut at = start;
    for &s in word {
        let (next, _) = instance.lift_step(at, s)?;
        debug_assert_eq!(
            instance.vertices[next].image,
            sys.right_mul(instance.vertices[at].image, s)
        );
        path.push(next);
        at = next;
    }
    Ok(path)
}

/// Order of a permutation given as an image list.
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// How a loop permutes the fiber over its base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAction {
    pub lp: Loop,
    /// Vertices of `Z` over the base, in vertex order.
    pub fiber: Vec<usize>,
    /// `permutation[i] = j` when the lift starting at `fiber[i]` ends at `fiber[j]`.
    pub permutation: Vec<usize>,
    pub order: usize,
}

impl FiberAction {
    pub fn is_identity(&self) -> bool {
        self.order == 1
    }
}

pub fn loop_action(instance: &CoveringInstance<'_>, lp: &Loop) -> Result<FiberAction> {
    let fiber = instance.fiber(lp.base).to_vec();
    let mut permutation = Vec::with_capacity(fiber.len());
    for &start in &fiber {
        let path = lift_path(instance, start, &lp.word)?;
        let end = *path.last().expect("path contains its start");
        let j = fiber.iter().position(|&v| v == end).ok_or_else(|| {
            Error::LiftNotUnique(format!(
                "lift of a loop from z{start} ends off the base fiber"
            ))
        })?;
        permutation.push(j);
    }
    let order = permutation_order(&permutation);
    Ok(FiberAction {
        lp: lp.clone(),
        fiber,
        permutation,
        order,
    })
}

/// JSON form: `{"I":..,"J":..,"K":..,"braid_loops":n,"orders":{"1":n1,"2":n2},"no_braid_loops":bool}`,
/// plus the polygon-loop orders when the class has any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    #[serde(rename = "I")]
    pub left: GeneratorSet,
    #[serde(rename = "J")]
    pub right: GeneratorSet,
    #[serde(rename = "K")]
    pub target: GeneratorSet,
    /// Number of hexagonal loops inside `Y_K`.
    pub braid_loops: usize,
    /// Multiset of braid-loop action orders, keyed by order.
    pub orders: BTreeMap<String, usize>,
    pub no_braid_loops: bool,
    #[serde(skip_serializing_if = "is_zero")]
    pub polygon_loops: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub polygon_orders: BTreeMap<String, usize>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

/// Lifts every relation loop of `Y_K` through `Z_IJK`.
///
/// Square and commuting loops must act trivially and braid loops with order
/// 1 or 2. Longer polygon loops are measured but not bounded. When `Y_K` has
/// no braid or polygon loop, `Z` must split into `a_IJK` copies of `Y_K`.
pub fn monodromy_report(instance: &CoveringInstance<'_>) -> Result<MonodromyReport> {
    let sys = instance.system();
    let yk = instance.target_class();
    let loops = relation_loops(sys, yk);
    let braid_loops = loops.iter().filter(|l| l.kind == LoopKind::Braid).count();
    let polygon_loops = loops.iter().filter(|l| l.kind == LoopKind::Polygon).count();
    let mut report = MonodromyReport {
        left: instance.left_set,
        right: instance.right_set,
        target: instance.target,
        braid_loops,
        orders: BTreeMap::new(),
        no_braid_loops: braid_loops == 0,
        polygon_loops,
        polygon_orders: BTreeMap::new(),
    };
    if instance.is_empty() {
        return Ok(report);
    }

    for lp in &loops {
        let action = loop_action(instance, lp)?;
        let base = || sys.display(lp.base).to_string();
        match lp.kind {
            LoopKind::Square | LoopKind::Commuting if !action.is_identity() => {
                return Err(Error::NontrivialAction {
                    kind: lp.kind.to_string(),
                    base: base(),
                    order: action.order,
                });
            }
            LoopKind::Square | LoopKind::Commuting => {}
            LoopKind::Braid => {
                if action.order > 2 {
                    return Err(Error::OrderViolation {
                        base: base(),
                        order: action.order,
                    });
                }
                *report.orders.entry(action.order.to_string()).or_insert(0) += 1;
            }
            LoopKind::Polygon => {
                *report
                    .polygon_orders
                    .entry(action.order.to_string())
                    .or_insert(0) += 1;
            }
        }
    }

    if braid_loops == 0 && polygon_loops == 0 {
        let violation = |detail: String| Error::CorollaryViolation {
            target: instance.target.subscript(),
            detail,
        };
        let partition = instance.multiplicity_partition();
        if partition.parts().iter().any(|&p| p != 1) {
            return Err(violation(format!("lambda = {:?}", partition.parts())));
        }
        if let Some(c) =
            (0..instance.component_count).find(|&c| !instance.component_isomorphic_to_target(c))
        {
            return Err(violation(format!("component {c} is not a copy of Y_K")));
        }
    }
    Ok(report)
}

/// Rank of the fundamental group of a connected class graph.
pub fn fundamental_group_rank(class: &RecoilClass) -> usize {
    cycle_rank(class)
}
