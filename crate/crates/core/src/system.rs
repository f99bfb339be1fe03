//! Finite Coxeter systems `(W, S)`: enumeration, Cayley tables, length,
//! recoil and descent sets, weak order, and the exchange property.
//!
//! Elements are numbered breadth-first by length from the identity, ties
//! broken by the lexicographic order of their canonical form (the one-line
//! notation for `S_n`, the lexicographically least reduced word otherwise),
//! so indices are deterministic.
//!
//! Products compose on the left: `(u∘v)(k) = u(v(k))`. Right multiplication
//! by `s_i` therefore swaps positions `i` and `i+1` of the one-line form.

use std::collections::HashMap;
use std::fmt;

use crate::braid::BraidRules;
use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::spec::{CoxeterKind, CoxeterSpec};

/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

const UNSET: u32 = u32::MAX;

/// Index of an element in its [`CoxeterSystem`]. The identity is `ElemId(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Realization-dependent payload of an element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Form {
    /// One-line notation `σ₁…σₙ`, values `1..=n`.
    OneLine(Vec<u8>),
    /// Lexicographically least reduced word, 0-based generator indices.
    Word(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub form: Form,
    pub length: usize,
}

#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    spec: CoxeterSpec,
    rank: usize,
    elements: Vec<Element>,
    /// `right[w * rank + s]` is `w·s`.
    right: Vec<u32>,
    /// `left[w * rank + s]` is `s·w`.
    left: Vec<u32>,
    /// A predecessor `(p, s)` with `w = p·s` and `ℓ(p) = ℓ(w) − 1`.
    parent: Vec<(u32, u8)>,
    inverse: Vec<u32>,
    recoils: Vec<GeneratorSet>,
    descents: Vec<GeneratorSet>,
    index: HashMap<Vec<u8>, u32>,
    longest: ElemId,
    table: Option<Vec<u32>>,
}

/// How the breadth-first enumeration grows canonical forms.
trait Realization {
    fn identity(&self) -> Vec<u8>;
    /// A key for `w·s`, known to be longer than `w`.
    fn ascend(&self, key: &[u8], s: usize) -> Vec<u8>;
    /// Canonical form of the element named by `raw`, plus every other key
    /// that names the same element.
    fn expand(&self, raw: Vec<u8>) -> (Vec<u8>, Vec<Vec<u8>>);
    fn form(&self, key: Vec<u8>) -> Form;
}

struct Permutations(usize);

impl Realization for Permutations {
    fn identity(&self) -> Vec<u8> {
        (1..=self.0 as u8).collect()
    }

    fn ascend(&self, key: &[u8], s: usize) -> Vec<u8> {
        let mut next = key.to_vec();
        next.swap(s, s + 1);
        next
    }

    fn expand(&self, raw: Vec<u8>) -> (Vec<u8>, Vec<Vec<u8>>) {
        (raw, Vec::new())
    }

    fn form(&self, key: Vec<u8>) -> Form {
        Form::OneLine(key)
    }
}

struct Words(BraidRules);

impl Realization for Words {
    fn identity(&self) -> Vec<u8> {
        Vec::new()
    }

    fn ascend(&self, key: &[u8], s: usize) -> Vec<u8> {
        let mut next = key.to_vec();
        next.push(s as u8);
        next
    }

    fn expand(&self, raw: Vec<u8>) -> (Vec<u8>, Vec<Vec<u8>>) {
        let aliases: Vec<Vec<u8>> = self.0.closure(&raw).into_iter().collect();
        let canonical = aliases.iter().min().cloned().unwrap_or(raw);
        (canonical, aliases)
    }

    fn form(&self, key: Vec<u8>) -> Form {
        Form::Word(key)
    }
}

impl CoxeterSystem {
    pub fn build(spec: CoxeterSpec) -> Result<Self> {
        spec.validate()?;
        match &spec.kind {
            CoxeterKind::Symmetric(n) => {
                let realization = Permutations(*n);
                Self::enumerate(spec.clone(), &realization)
            }
            CoxeterKind::Dihedral(_) | CoxeterKind::Matrix { .. } => {
                let realization = Words(BraidRules::new(&spec.coxeter_matrix()));
                Self::enumerate(spec.clone(), &realization)
            }
        }
    }

    fn enumerate(spec: CoxeterSpec, realization: &impl Realization) -> Result<Self> {
        let rank = spec.rank();
        let cap = spec.element_cap;

        let mut keys: Vec<Vec<u8>> = vec![realization.identity()];
        let mut lengths = vec![0usize];
        let mut right = vec![UNSET; rank];
        let mut parent = vec![(UNSET, 0u8)];
        let mut layer = 0..1usize;
        let mut length = 0;

        loop {
            let mut next_index: HashMap<Vec<u8>, usize> = HashMap::new();
            let mut next_keys: Vec<Vec<u8>> = Vec::new();
            let mut pending: Vec<(usize, usize, usize)> = Vec::new();

            for w in layer.clone() {
                for s in 0..rank {
                    // A link set by the previous layer marks a descent; every
                    // other generator goes up.
                    if right[w * rank + s] != UNSET {
                        continue;
                    }
                    let raw = realization.ascend(&keys[w], s);
                    let slot = match next_index.get(&raw) {
                        Some(&slot) => slot,
                        None => {
                            let slot = next_keys.len();
                            let (canonical, aliases) = realization.expand(raw.clone());
                            next_index.insert(raw, slot);
                            for alias in aliases {
                                next_index.insert(alias, slot);
                            }
                            next_index.insert(canonical.clone(), slot);
                            next_keys.push(canonical);
                            slot
                        }
                    };
                    pending.push((w, s, slot));
                }
            }

            if next_keys.is_empty() {
                break;
            }
            if keys.len() + next_keys.len() > cap {
                return Err(Error::CapExceeded { cap });
            }

            length += 1;
            let base = keys.len();
            let mut order: Vec<usize> = (0..next_keys.len()).collect();
            order.sort_by(|&a, &b| next_keys[a].cmp(&next_keys[b]));
            let mut final_index = vec![0usize; next_keys.len()];
            for (rank_in_layer, &slot) in order.iter().enumerate() {
                final_index[slot] = base + rank_in_layer;
            }
            let mut next_keys: Vec<Option<Vec<u8>>> = next_keys.into_iter().map(Some).collect();
            for &slot in &order {
                keys.push(next_keys[slot].take().expect("each slot taken once"));
                lengths.push(length);
                parent.push((UNSET, 0));
            }
            right.resize(keys.len() * rank, UNSET);
            for (w, s, slot) in pending {
                let v = final_index[slot];
                right[w * rank + s] = v as u32;
                right[v * rank + s] = w as u32;
                if parent[v].0 == UNSET {
                    parent[v] = (w as u32, s as u8);
                }
            }
            layer = base..keys.len();
        }

        let order = keys.len();
        if layer.len() != 1 {
            return Err(Error::InvalidSpec(format!(
                "{} elements of maximal length; not a finite Coxeter group",
                layer.len()
            )));
        }
        let longest = ElemId(layer.start as u32);

        let mut left = vec![UNSET; order * rank];
        let mut inverse = vec![0u32; order];
        left[..rank].copy_from_slice(&right[..rank]);
        for v in 1..order {
            let (p, g) = parent[v];
            let (p, g) = (p as usize, g as usize);
            for s in 0..rank {
                let sp = left[p * rank + s] as usize;
                left[v * rank + s] = right[sp * rank + g];
            }
            let inv_p = inverse[p] as usize;
            inverse[v] = left[inv_p * rank + g];
        }

        let recoils: Vec<GeneratorSet> = (0..order)
            .map(|w| {
                GeneratorSet::from_indices(
                    (0..rank).filter(|&s| lengths[left[w * rank + s] as usize] < lengths[w]),
                )
            })
            .collect();
        let descents: Vec<GeneratorSet> = (0..order)
            .map(|w| {
                GeneratorSet::from_indices(
                    (0..rank).filter(|&s| lengths[right[w * rank + s] as usize] < lengths[w]),
                )
            })
            .collect();

        let index: HashMap<Vec<u8>, u32> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        let elements: Vec<Element> = keys
            .into_iter()
            .zip(&lengths)
            .map(|(key, &length)| Element {
                form: realization.form(key),
                length,
            })
            .collect();

        let table = (order <= TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; order * order];
            for u in 0..order {
                let row = &mut table[u * order..(u + 1) * order];
                row[0] = u as u32;
                for v in 1..order {
                    let (p, g) = parent[v];
                    row[v] = right[row[p as usize] as usize * rank + g as usize];
                }
            }
            table
        });

        Ok(CoxeterSystem {
            spec,
            rank,
            elements,
            right,
            left,
            parent,
            inverse,
            recoils,
            descents,
            index,
            longest,
            table,
        })
    }

    pub fn spec(&self) -> &CoxeterSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|W|`.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + Clone {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn identity(&self) -> ElemId {
        ElemId::IDENTITY
    }

    /// The longest element `w₀`.
    pub fn longest(&self) -> ElemId {
        self.longest
    }

    pub fn element(&self, w: ElemId) -> &Element {
        &self.elements[w.index()]
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.spec.kind, CoxeterKind::Symmetric(_))
    }

    /// One-line notation when the group is realized by permutations.
    pub fn one_line(&self, w: ElemId) -> Option<&[u8]> {
        match &self.element(w).form {
            Form::OneLine(p) => Some(p),
            Form::Word(_) => None,
        }
    }

    /// Looks up a permutation given in one-line notation.
    pub fn perm(&self, one_line: &[u8]) -> Option<ElemId> {
        if !self.is_symmetric() {
            return None;
        }
        self.index.get(one_line).map(|&i| ElemId(i))
    }

    /// The simple reflection `s` as an element.
    pub fn generator(&self, s: usize) -> ElemId {
        self.right_mul(ElemId::IDENTITY, s)
    }

    /// `Some(s)` when `w` is the simple reflection `s`.
    pub fn as_generator(&self, w: ElemId) -> Option<usize> {
        (self.length(w) == 1).then(|| self.parent[w.index()].1 as usize)
    }

    /// `w·s`.
    pub fn right_mul(&self, w: ElemId, s: usize) -> ElemId {
        ElemId(self.right[w.index() * self.rank + s])
    }

    /// `s·w`.
    pub fn left_mul(&self, s: usize, w: ElemId) -> ElemId {
        ElemId(self.left[w.index() * self.rank + s])
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.elements[w.index()].length
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        ElemId(self.inverse[w.index()])
    }

    /// `u∘v`.
    pub fn multiply(&self, u: ElemId, v: ElemId) -> ElemId {
        match &self.table {
            Some(table) => ElemId(table[u.index() * self.order() + v.index()]),
            None => self.walk(u, self.reduced_word(v)),
        }
    }

    /// Applies the generators of `word` on the right of `start`, one at a time.
    pub fn walk<I: IntoIterator<Item = usize>>(&self, start: ElemId, word: I) -> ElemId {
        word.into_iter().fold(start, |w, s| self.right_mul(w, s))
    }

    /// The element named by an arbitrary (not necessarily reduced) word.
    pub fn evaluate(&self, word: &[usize]) -> ElemId {
        self.walk(ElemId::IDENTITY, word.iter().copied())
    }

    /// A reduced word for `w`: the canonical word for word realizations,
    /// otherwise the one recorded by the enumeration.
    pub fn reduced_word(&self, w: ElemId) -> Vec<usize> {
        if let Form::Word(word) = &self.element(w).form {
            return word.iter().map(|&g| g as usize).collect();
        }
        let mut word = Vec::with_capacity(self.length(w));
        let mut current = w.index();
        while current != 0 {
            let (p, g) = self.parent[current];
            word.push(g as usize);
            current = p as usize;
        }
        word.reverse();
        word
    }

    /// `R(w) = { s : ℓ(s·w) = ℓ(w) − 1 }`.
    pub fn recoil_set(&self, w: ElemId) -> GeneratorSet {
        self.recoils[w.index()]
    }

    /// `D(w) = { s : ℓ(w·s) = ℓ(w) − 1 } = R(w⁻¹)`.
    pub fn descent_set(&self, w: ElemId) -> GeneratorSet {
        self.descents[w.index()]
    }

    /// Recoils read off the one-line form: `i` is a recoil when `i+1` appears
    /// before `i`. `None` for word realizations.
    pub fn positional_recoil_set(&self, w: ElemId) -> Option<GeneratorSet> {
        let perm = self.one_line(w)?;
        let mut position = vec![0usize; perm.len() + 1];
        for (pos, &value) in perm.iter().enumerate() {
            position[value as usize] = pos;
        }
        Some(GeneratorSet::from_indices(
            (1..perm.len())
                .filter(|&i| position[i + 1] < position[i])
                .map(|i| i - 1),
        ))
    }

    /// Descents read off the one-line form: `σᵢ > σᵢ₊₁`.
    pub fn positional_descent_set(&self, w: ElemId) -> Option<GeneratorSet> {
        let perm = self.one_line(w)?;
        Some(GeneratorSet::from_indices(
            perm.windows(2)
                .enumerate()
                .filter(|(_, pair)| pair[0] > pair[1])
                .map(|(i, _)| i),
        ))
    }

    /// Right weak order: `u ≤ w` iff `ℓ(u) + ℓ(u⁻¹w) = ℓ(w)`.
    pub fn weak_leq(&self, u: ElemId, w: ElemId) -> bool {
        let between = self.multiply(self.inverse(u), w);
        self.length(u) + self.length(between) == self.length(w)
    }

    /// `w s w⁻¹`, the conjugate of `s` by `w`.
    pub fn conjugate(&self, w: ElemId, s: usize) -> ElemId {
        self.multiply(self.right_mul(w, s), self.inverse(w))
    }

    /// Exchange property: given a reduced word for `w` and a left descent `s`
    /// of `w`, deletes one letter so the result is a reduced word for `s·w`.
    /// The smallest valid deletion position is used.
    pub fn apply_exchange(&self, word: &[usize], s: usize) -> Result<Vec<usize>> {
        if s >= self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: s + 1,
                rank: self.rank,
            });
        }
        if let Some(&bad) = word.iter().find(|&&g| g >= self.rank) {
            return Err(Error::GeneratorOutOfRange {
                index: bad + 1,
                rank: self.rank,
            });
        }
        let w = self.evaluate(word);
        if self.length(w) != word.len() {
            return Err(Error::NotReduced {
                word: word.to_vec(),
            });
        }
        let target = self.left_mul(s, w);
        if self.length(target) > self.length(w) {
            return Err(Error::NotADescent { generator: s });
        }
        (0..word.len())
            .map(|i| [&word[..i], &word[i + 1..]].concat())
            .find(|candidate| self.evaluate(candidate) == target)
            .ok_or_else(|| Error::NotReduced {
                word: word.to_vec(),
            })
    }

    /// Parses an element: one-line notation (`2134` or `2,1,3,4`) for `S_n`;
    /// `e`, a dihedral string such as `stst`, a comma list of 1-based
    /// generators, or `s1s2s1` otherwise.
    pub fn parse_element(&self, text: &str) -> Result<ElemId> {
        let text = text.trim();
        let bad = || Error::Parse(format!("cannot read element {text:?}"));
        if let CoxeterKind::Symmetric(n) = self.spec.kind {
            let values: Vec<u8> = if text.contains([',', ' ']) {
                text.split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u8>().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            } else {
                text.chars()
                    .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                    .collect::<Result<_>>()?
            };
            if values.len() != n {
                return Err(bad());
            }
            return self.perm(&values).ok_or_else(bad);
        }
        if text == "e" || text.is_empty() {
            return Ok(ElemId::IDENTITY);
        }
        let word: Vec<usize> =
            if self.spec.is_dihedral() && text.chars().all(|c| c == 's' || c == 't') {
                text.chars().map(|c| if c == 's' { 0 } else { 1 }).collect()
            } else if text.contains(',') {
                text.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .map(|g| g.checked_sub(1).ok_or_else(bad))
                    .collect::<Result<_>>()?
            } else {
                text.split('s')
                    .skip(1)
                    .map(|t| {
                        t.trim_matches('.')
                            .parse::<usize>()
                            .ok()
                            .and_then(|g| g.checked_sub(1))
                            .ok_or_else(bad)
                    })
                    .collect::<Result<_>>()?
            };
        if word.iter().any(|&g| g >= self.rank) {
            return Err(bad());
        }
        Ok(self.evaluate(&word))
    }

    pub fn display(&self, w: ElemId) -> DisplayElement<'_> {
        DisplayElement {
            system: self,
            id: w,
        }
    }
}

/// Renders an element the way it is written by hand: one-line notation for
/// permutations, `e` or a reduced word otherwise.
pub struct DisplayElement<'a> {
    system: &'a CoxeterSystem,
    id: ElemId,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let element = self.system.element(self.id);
        match &element.form {
            Form::OneLine(perm) => {
                let sep = if perm.len() > 9 { " " } else { "" };
                let parts: Vec<String> = perm.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(sep))
            }
            Form::Word(word) if word.is_empty() => write!(f, "e"),
            Form::Word(word) if self.system.spec.is_dihedral() => {
                for &g in word {
                    write!(f, "{}", if g == 0 { 's' } else { 't' })?;
                }
                Ok(())
            }
            Form::Word(word) => {
                let sep = if self.system.rank > 9 { "." } else { "" };
                let parts: Vec<String> = word.iter().map(|g| format!("s{}", g + 1)).collect();
                write!(f, "{}", parts.join(sep))
            }
        }
    }
}

impl fmt::Debug for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
