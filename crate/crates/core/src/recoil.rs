//! Recoil classes `Y_I = { w : R(w) = I }` with the graph structure induced
//! from the right Cayley graph.

use crate::generators::GeneratorSet;
use crate::system::{CoxeterSystem, ElemId};

/// An edge of a class graph, stored from the point of view of one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassEdge {
    /// Position of the other endpoint in [`RecoilClass::members`].
    pub to: usize,
    pub generator: usize,
}

#[derive(Debug, Clone)]
pub struct RecoilClass {
    pub subset: GeneratorSet,
    /// Members in increasing element order.
    pub members: Vec<ElemId>,
    /// `adjacency[i]` lists the class edges at `members[i]`, by generator.
    pub adjacency: Vec<Vec<ClassEdge>>,
    /// Weak-order minimum `α_I`.
    pub alpha: ElemId,
    /// Weak-order maximum `β_I`.
    pub beta: ElemId,
}

impl RecoilClass {
    /// Builds `Y_I` by scanning the whole group.
    pub fn build(sys: &CoxeterSystem, subset: GeneratorSet) -> Self {
        let members: Vec<ElemId> = sys.ids().filter(|&w| sys.recoil_set(w) == subset).collect();
        Self::from_members(sys, subset, members)
    }

    fn from_members(sys: &CoxeterSystem, subset: GeneratorSet, members: Vec<ElemId>) -> Self {
        let adjacency = members
            .iter()
            .map(|&w| {
                (0..sys.rank())
                    .filter_map(|s| {
                        let ws = sys.right_mul(w, s);
                        members
                            .binary_search(&ws)
                            .ok()
                            .map(|to| ClassEdge { to, generator: s })
                    })
                    .collect()
            })
            .collect();
        let (alpha, beta) = scan_extremes(sys, &members);
        RecoilClass {
            subset,
            members,
            adjacency,
            alpha,
            beta,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, w: ElemId) -> Option<usize> {
        self.members.binary_search(&w).ok()
    }

    pub fn contains(&self, w: ElemId) -> bool {
        self.position(w).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges `(i, j, s)` with `i < j`, as member positions.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, edges)| {
            edges
                .iter()
                .filter(move |e| i < e.to)
                .map(move |e| (i, e.to, e.generator))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.members.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.members.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for e in &self.adjacency[i] {
                if !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Graphviz rendering: vertices in one-line notation (or reduced words),
    /// edges labeled with the 1-based generator index.
    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        let mut out = format!("graph \"Y_{}\" {{\n", self.subset.subscript());
        for (i, &w) in self.members.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", sys.display(w)));
        }
        for (i, j, s) in self.edges() {
            out.push_str(&format!("  v{i} -- v{j} [label=\"{}\"];\n", s + 1));
        }
        out.push_str("}\n");
        out
    }
}

/// Weak-order minimum and maximum of a class, found by scanning. A class is
/// a weak-order interval, so its minimum is its unique shortest member and its
/// maximum its unique longest one.
fn scan_extremes(sys: &CoxeterSystem, members: &[ElemId]) -> (ElemId, ElemId) {
    let alpha = members
        .iter()
        .copied()
        .min_by_key(|&w| (sys.length(w), w))
        .unwrap_or(ElemId::IDENTITY);
    let beta = members
        .iter()
        .copied()
        .max_by_key(|&w| (sys.length(w), std::cmp::Reverse(w)))
        .unwrap_or(ElemId::IDENTITY);
    (alpha, beta)
}

/// `(α_I, β_I)` of a class.
pub fn class_extremes(sys: &CoxeterSystem, subset: GeneratorSet) -> (ElemId, ElemId) {
    let class = RecoilClass::build(sys, subset);
    (class.alpha, class.beta)
}

/// `α_I` in `S_n` from its descending runs: the generators in `I` glue
/// adjacent positions into blocks, and each block `[k, l]` is filled with
/// `l, l−1, …, k`.
pub fn symmetric_alpha(n: usize, subset: GeneratorSet) -> Vec<u8> {
    let mut perm = Vec::with_capacity(n);
    let mut start = 1usize;
    for position in 1..=n {
        // Position `position` ends a block unless s_position is in I.
        if position == n || !subset.contains(position - 1) {
            perm.extend((start..=position).rev().map(|v| v as u8));
            start = position + 1;
        }
    }
    perm
}

/// `β_I = α_{Iᶜ}·w₀`: the one-line form of `α_{Iᶜ}` read backwards.
pub fn symmetric_beta(n: usize, subset: GeneratorSet) -> Vec<u8> {
    let mut perm = symmetric_alpha(n, subset.complement(n.saturating_sub(1)));
    perm.reverse();
    perm
}

/// Whether the Cayley edge `w -- w·s` stays in one recoil class, decided by
/// comparing recoil sets.
pub fn same_class_edge(sys: &CoxeterSystem, w: ElemId, s: usize) -> bool {
    sys.recoil_set(w) == sys.recoil_set(sys.right_mul(w, s))
}

/// The same criterion decided by conjugation: `R(w) = R(ws)` iff `wsw⁻¹ ∉ S`.
pub fn same_class_edge_by_conjugation(sys: &CoxeterSystem, w: ElemId, s: usize) -> bool {
    sys.as_generator(sys.conjugate(w, s)).is_none()
}

/// The same criterion read off the one-line form: `|σᵢ − σᵢ₊₁| ≥ 2`.
/// `None` for word realizations.
pub fn same_class_edge_positional(sys: &CoxeterSystem, w: ElemId, s: usize) -> Option<bool> {
    let perm = sys.one_line(w)?;
    Some(perm[s].abs_diff(perm[s + 1]) >= 2)
}

/// All recoil classes of a system, indexed by subset.
#[derive(Debug, Clone)]
pub struct RecoilAtlas<'s> {
    sys: &'s CoxeterSystem,
    classes: Vec<RecoilClass>,
}

impl<'s> RecoilAtlas<'s> {
    pub fn new(sys: &'s CoxeterSystem) -> Self {
        let rank = sys.rank();
        let mut buckets: Vec<Vec<ElemId>> = vec![Vec::new(); 1 << rank];
        for w in sys.ids() {
            buckets[sys.recoil_set(w).bits() as usize].push(w);
        }
        let classes = buckets
            .into_iter()
            .enumerate()
            .map(|(bits, members)| {
                RecoilClass::from_members(sys, GeneratorSet::from_bits(bits as u32), members)
            })
            .collect();
        RecoilAtlas { sys, classes }
    }

    pub fn system(&self) -> &'s CoxeterSystem {
        self.sys
    }

    pub fn class(&self, subset: GeneratorSet) -> &RecoilClass {
        &self.classes[subset.bits() as usize]
    }

    pub fn class_of(&self, w: ElemId) -> &RecoilClass {
        self.class(self.sys.recoil_set(w))
    }

    /// Classes in bitmask order of their subsets.
    pub fn classes(&self) -> &[RecoilClass] {
        &self.classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::CoxeterSpec;

    fn s4() -> CoxeterSystem {
        CoxeterSystem::build(CoxeterSpec::symmetric(4)).unwrap()
    }

    fn rendered(sys: &CoxeterSystem, class: &RecoilClass) -> Vec<String> {
        let mut v: Vec<String> = class
            .members
            .iter()
            .map(|&w| sys.display(w).to_string())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn class_three_in_s4_is_a_path() {
        let sys = s4();
        let class = RecoilClass::build(&sys, GeneratorSet::from_indices([2]));
        assert_eq!(rendered(&sys, &class), vec!["1243", "1423", "4123"]);
        assert_eq!(class.edge_count(), 2);
        assert_eq!(sys.display(class.alpha).to_string(), "1243");
        assert_eq!(sys.display(class.beta).to_string(), "4123");
    }

    #[test]
    fn class_two_in_s4() {
        let sys = s4();
        let class = RecoilClass::build(&sys, GeneratorSet::from_indices([1]));
        assert_eq!(
            rendered(&sys, &class),
            vec!["1324", "1342", "3124", "3142", "3412"]
        );
        assert_eq!(class.edge_count(), 5);
        assert!(class.is_connected());
    }

    #[test]
    fn empty_class_is_identity() {
        let sys = s4();
        let class = RecoilClass::build(&sys, GeneratorSet::EMPTY);
        assert_eq!(class.members, vec![sys.identity()]);
        assert_eq!(
            class_extremes(&sys, GeneratorSet::EMPTY),
            (sys.identity(), sys.identity())
        );
        let full = RecoilClass::build(&sys, GeneratorSet::full(3));
        assert_eq!(full.members, vec![sys.longest()]);
    }

    #[test]
    fn extremes_of_the_twelve_point_example() {
        let subset = GeneratorSet::from_one_based(&[1, 4, 5, 6, 9, 10], 11).unwrap();
        assert_eq!(
            symmetric_alpha(12, subset),
            vec![2, 1, 3, 7, 6, 5, 4, 8, 11, 10, 9, 12]
        );
        assert_eq!(
            symmetric_beta(12, subset),
            vec![11, 12, 10, 7, 8, 9, 6, 5, 2, 3, 4, 1]
        );
    }

    #[test]
    fn formula_extremes_agree_with_scan() {
        for n in 1..=5 {
            let sys = CoxeterSystem::build(CoxeterSpec::symmetric(n)).unwrap();
            let atlas = RecoilAtlas::new(&sys);
            for class in atlas.classes() {
                let alpha = sys.perm(&symmetric_alpha(n, class.subset)).unwrap();
                let beta = sys.perm(&symmetric_beta(n, class.subset)).unwrap();
                assert_eq!(
                    (alpha, beta),
                    (class.alpha, class.beta),
                    "I = {}",
                    class.subset
                );
            }
        }
    }

    #[test]
    fn same_class_edge_examples() {
        let sys = s4();
        let w = sys.parse_element("2143").unwrap();
        assert!(same_class_edge(&sys, w, 1));
        assert_eq!(same_class_edge_positional(&sys, w, 1), Some(true));
        for s in 0..3 {
            assert!(!same_class_edge(&sys, sys.identity(), s));
        }
        let w = sys.parse_element("1243").unwrap();
        assert!(same_class_edge(&sys, w, 1));
        assert!(same_class_edge_by_conjugation(&sys, w, 1));
    }

    #[test]
    fn dot_export_lists_edges() {
        let sys = s4();
        let class = RecoilClass::build(&sys, GeneratorSet::from_indices([2]));
        let dot = class.to_dot(&sys);
        assert!(dot.starts_with("graph \"Y_3\""));
        assert!(dot.contains("label=\"1423\""));
        assert_eq!(dot.matches(" -- ").count(), 2);
    }
}
