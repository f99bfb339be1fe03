//! The descent algebra in the bases `Y_I` (sum of the recoil class) and
//! `X_I = Σ_{J⊆I} Y_J`.
//!
//! Products `Y_I Y_J = Σ_K a_IJK Y_K` are computed as covering degrees of the
//! fibered graphs `Z_IJK`, and cross-checked against a direct expansion in the
//! group algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::covering::CoveringInstance;
use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::recoil::RecoilAtlas;
use crate::system::{CoxeterSystem, ElemId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    Y,
    X,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Y => "Y",
            Basis::X => "X",
        })
    }
}

/// A sparse integer combination of basis elements indexed by subsets of `S`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub basis: Basis,
    pub rank: usize,
    pub coeffs: BTreeMap<GeneratorSet, i64>,
}

impl AlgebraElement {
    pub fn zero(basis: Basis, rank: usize) -> Self {
        AlgebraElement {
            basis,
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, rank: usize, subset: GeneratorSet) -> Self {
        Self::from_terms(basis, rank, [(subset, 1)])
    }

    pub fn from_terms<T>(basis: Basis, rank: usize, terms: T) -> Self
    where
        T: IntoIterator<Item = (GeneratorSet, i64)>,
    {
        let mut elem = Self::zero(basis, rank);
        for (subset, c) in terms {
            elem.add_term(subset, c);
        }
        elem
    }

    pub fn add_term(&mut self, subset: GeneratorSet, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(subset).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&subset);
        }
    }

    pub fn coefficient(&self, subset: GeneratorSet) -> i64 {
        self.coeffs.get(&subset).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GeneratorSet, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// The same element written in basis `Y`.
    pub fn to_y(&self) -> AlgebraElement {
        match self.basis {
            Basis::Y => self.clone(),
            Basis::X => y_from_x(self),
        }
    }

    /// The same element written in basis `X`.
    pub fn to_x(&self) -> AlgebraElement {
        match self.basis {
            Basis::X => self.clone(),
            Basis::Y => x_from_y(self),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (subset, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}_{}", self.basis, subset.subscript())?;
        }
        Ok(())
    }
}

/// All subsets of `set`, from `set` itself down to `∅`.
fn subsets_of(set: GeneratorSet) -> impl Iterator<Item = GeneratorSet> {
    let full = set.bits();
    let mut next = Some(full);
    std::iter::from_fn(move || {
        let current = next?;
        next = (current != 0).then(|| (current - 1) & full);
        Some(GeneratorSet::from_bits(current))
    })
}

/// Rewrites an `X`-basis element in basis `Y`: since `X_I = Σ_{J⊆I} Y_J`,
/// the `Y_J` coefficient is `Σ_{I⊇J} x_I`.
pub fn y_from_x(elem: &AlgebraElement) -> AlgebraElement {
    assert_eq!(elem.basis, Basis::X, "y_from_x expects an X-basis element");
    let mut out = AlgebraElement::zero(Basis::Y, elem.rank);
    for (i, x) in elem.terms() {
        for j in subsets_of(i) {
            out.add_term(j, x);
        }
    }
    out
}

/// Rewrites a `Y`-basis element in basis `X` by Möbius inversion:
/// `Y_J = Σ_{I⊆J} (−1)^{|J|−|I|} X_I`.
pub fn x_from_y(elem: &AlgebraElement) -> AlgebraElement {
    assert_eq!(elem.basis, Basis::Y, "x_from_y expects a Y-basis element");
    let mut out = AlgebraElement::zero(Basis::X, elem.rank);
    for (j, y) in elem.terms() {
        for i in subsets_of(j) {
            let sign = if (j.len() - i.len()) % 2 == 0 { 1 } else { -1 };
            out.add_term(i, sign * y);
        }
    }
    out
}

/// Recoil sets `K` for which `Z_IJK` is nonempty, in increasing order.
fn reachable_targets(
    atlas: &RecoilAtlas<'_>,
    left: GeneratorSet,
    right: GeneratorSet,
) -> BTreeSet<GeneratorSet> {
    let sys = atlas.system();
    let (yi, yj) = (atlas.class(left), atlas.class(right));
    let mut seen = vec![false; 1usize << sys.rank()];
    for &pi in &yi.members {
        for &rho in &yj.members {
            seen[sys.recoil_set(sys.multiply(pi, rho)).bits() as usize] = true;
        }
    }
    seen.iter()
        .enumerate()
        .filter(|(_, &hit)| hit)
        .map(|(bits, _)| GeneratorSet::from_bits(bits as u32))
        .collect()
}

/// `a_IJK`, the common fiber size of `Z_IJK → Y_K`.
pub fn structure_constant(
    atlas: &RecoilAtlas<'_>,
    left: GeneratorSet,
    right: GeneratorSet,
    target: GeneratorSet,
) -> Result<usize> {
    CoveringInstance::build(atlas, left, right, target).check_fiber_constancy()
}

/// One nonzero term of a product, with its refinement into components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(rename = "I")]
    pub left: GeneratorSet,
    #[serde(rename = "J")]
    pub right: GeneratorSet,
    #[serde(rename = "K")]
    pub target: GeneratorSet,
    pub a: usize,
    pub lambda: Vec<usize>,
    pub components: usize,
}

/// Nonzero rows of `Y_I Y_J`, ordered by `K`.
pub fn product_rows(
    atlas: &RecoilAtlas<'_>,
    left: GeneratorSet,
    right: GeneratorSet,
) -> Result<Vec<TableRow>> {
    reachable_targets(atlas, left, right)
        .into_iter()
        .map(|target| {
            let instance = CoveringInstance::build(atlas, left, right, target);
            let a = instance.check_fiber_constancy()?;
            Ok(TableRow {
                left,
                right,
                target,
                a,
                lambda: instance.multiplicity_partition().0,
                components: instance.component_count,
            })
        })
        .collect()
}

/// `Y_I Y_J = Σ_K a_IJK Y_K` with every coefficient a covering degree.
pub fn product_expand(
    atlas: &RecoilAtlas<'_>,
    left: GeneratorSet,
    right: GeneratorSet,
) -> Result<AlgebraElement> {
    let rows = product_rows(atlas, left, right)?;
    Ok(AlgebraElement::from_terms(
        Basis::Y,
        atlas.system().rank(),
        rows.iter().map(|r| (r.target, r.a as i64)),
    ))
}

/// Product of two arbitrary elements, computed through the `Y` basis and
/// returned in the basis of `lhs`.
pub fn multiply(
    atlas: &RecoilAtlas<'_>,
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
) -> Result<AlgebraElement> {
    let (a, b) = (lhs.to_y(), rhs.to_y());
    let mut out = AlgebraElement::zero(Basis::Y, atlas.system().rank());
    for (i, ci) in a.terms() {
        for (j, cj) in b.terms() {
            for (k, ck) in product_expand(atlas, i, j)?.terms() {
                out.add_term(k, ci * cj * ck);
            }
        }
    }
    Ok(match lhs.basis {
        Basis::Y => out,
        Basis::X => x_from_y(&out),
    })
}

/// Multiplies out `Y_I Y_J` in the group algebra, one product `πρ` at a time,
/// and reads off the coefficient of each class after checking that the count
/// is constant on it.
///
/// Permutation groups compose one-line forms directly and classify by
/// positional recoils; other groups evaluate the concatenated reduced words.
pub fn convolution_oracle(
    sys: &CoxeterSystem,
    left: GeneratorSet,
    right: GeneratorSet,
) -> Result<AlgebraElement> {
    let recoils = |w: ElemId| {
        sys.positional_recoil_set(w)
            .unwrap_or_else(|| sys.recoil_set(w))
    };
    let class =
        |set: GeneratorSet| -> Vec<ElemId> { sys.ids().filter(|&w| recoils(w) == set).collect() };
    let (yi, yj) = (class(left), class(right));

    let mut counts: HashMap<ElemId, usize> = HashMap::new();
    if sys.is_symmetric() {
        for &pi in &yi {
            let u = sys.one_line(pi).expect("permutation realization");
            for &rho in &yj {
                let v = sys.one_line(rho).expect("permutation realization");
                let composed: Vec<u8> = v.iter().map(|&k| u[k as usize - 1]).collect();
                let w = sys.perm(&composed).expect("closed under composition");
                *counts.entry(w).or_insert(0) += 1;
            }
        }
    } else {
        let words_j: Vec<Vec<usize>> = yj.iter().map(|&rho| sys.reduced_word(rho)).collect();
        for &pi in &yi {
            let word_i = sys.reduced_word(pi);
            for word_j in &words_j {
                let w = sys.evaluate(&[word_i.as_slice(), word_j.as_slice()].concat());
                *counts.entry(w).or_insert(0) += 1;
            }
        }
    }

    let mut per_class: BTreeMap<GeneratorSet, (usize, ElemId)> = BTreeMap::new();
    for w in sys.ids() {
        let count = counts.get(&w).copied().unwrap_or(0);
        let set = recoils(w);
        match per_class.get(&set) {
            None => {
                per_class.insert(set, (count, w));
            }
            Some(&(expected, _)) if expected != count => {
                return Err(Error::ClassInconstant {
                    class: set.subscript(),
                    expected,
                    found: count,
                    witness: sys.display(w).to_string(),
                });
            }
            Some(_) => {}
        }
    }
    Ok(AlgebraElement::from_terms(
        Basis::Y,
        sys.rank(),
        per_class.into_iter().map(|(k, (c, _))| (k, c as i64)),
    ))
}

/// The structure constants of a group, one row per nonzero `a_IJK`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureTable {
    pub group: String,
    pub rank: usize,
    /// Rows with `a = 0` are left out.
    pub zero_rows_omitted: bool,
    pub rows: Vec<TableRow>,
}

impl StructureTable {
    /// Expands `Y_I Y_J` for the given pairs, checking every row against
    /// [`convolution_oracle`]. Pairs are evaluated in parallel; rows come out
    /// sorted by `(I, J, K)`.
    pub fn build(atlas: &RecoilAtlas<'_>, pairs: &[(GeneratorSet, GeneratorSet)]) -> Result<Self> {
        let sys = atlas.system();
        let chunks: Vec<Vec<TableRow>> = pairs
            .par_iter()
            .map(|&(left, right)| {
                let rows = product_rows(atlas, left, right)?;
                let oracle = convolution_oracle(sys, left, right)?;
                let covering = AlgebraElement::from_terms(
                    Basis::Y,
                    sys.rank(),
                    rows.iter().map(|r| (r.target, r.a as i64)),
                );
                if let Some(target) = oracle
                    .coeffs
                    .keys()
                    .chain(covering.coeffs.keys())
                    .find(|&&k| oracle.coefficient(k) != covering.coefficient(k))
                {
                    return Err(Error::OracleMismatch {
                        left: left.subscript(),
                        right: right.subscript(),
                        target: target.subscript(),
                        covering: covering.coefficient(*target) as usize,
                        oracle: oracle.coefficient(*target) as usize,
                    });
                }
                Ok(rows)
            })
            .collect::<Result<_>>()?;
        let mut rows: Vec<TableRow> = chunks.into_iter().flatten().collect();
        rows.sort_by_key(|r| (r.left, r.right, r.target));
        rows.dedup();
        Ok(StructureTable {
            group: sys.spec().name(),
            rank: sys.rank(),
            zero_rows_omitted: true,
            rows,
        })
    }

    /// Rows of the product `Y_I Y_J`.
    pub fn product(
        &self,
        left: GeneratorSet,
        right: GeneratorSet,
    ) -> impl Iterator<Item = &TableRow> {
        self.rows
            .iter()
            .filter(move |r| r.left == left && r.right == right)
    }

    /// Text rendering, one product per line, e.g. `Y_1·Y_3 = Y_∅ + Y_1 + Y_{1,3}`,
    /// followed by the component refinement of each term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut start = 0;
        while start < self.rows.len() {
            let (left, right) = (self.rows[start].left, self.rows[start].right);
            let end = start
                + self.rows[start..]
                    .iter()
                    .take_while(|r| r.left == left && r.right == right)
                    .count();
            let rows = &self.rows[start..end];
            let sum = AlgebraElement::from_terms(
                Basis::Y,
                self.rank,
                rows.iter().map(|r| (r.target, r.a as i64)),
            );
            out.push_str(&format!(
                "Y_{}·Y_{} = {}\n",
                left.subscript(),
                right.subscript(),
                sum
            ));
            for r in rows {
                let parts: Vec<String> = r.lambda.iter().map(ToString::to_string).collect();
                out.push_str(&format!(
                    "  Y_{}: a = {}, lambda = ({}), components = {}\n",
                    r.target.subscript(),
                    r.a,
                    parts.join(","),
                    r.components
                ));
            }
            start = end;
        }
        out
    }
}

/// Every pair `(I, J)` of subsets of a rank-`rank` generating set.
pub fn all_pairs(rank: usize) -> Vec<(GeneratorSet, GeneratorSet)> {
    GeneratorSet::all(rank)
        .flat_map(|i| GeneratorSet::all(rank).map(move |j| (i, j)))
        .collect()
}

/// The complete table: all `4^rank` products.
pub fn full_table(atlas: &RecoilAtlas<'_>) -> Result<StructureTable> {
    StructureTable::build(atlas, &all_pairs(atlas.system().rank()))
}

/// `Σ_K a_IJK |Y_K| = |Y_I| |Y_J|`.
pub fn counting_identity_holds(
    atlas: &RecoilAtlas<'_>,
    left: GeneratorSet,
    right: GeneratorSet,
    product: &AlgebraElement,
) -> bool {
    let lhs: i64 = product
        .terms()
        .map(|(k, a)| a * atlas.class(k).len() as i64)
        .sum();
    lhs == (atlas.class(left).len() * atlas.class(right).len()) as i64
}
