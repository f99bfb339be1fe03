//! Exhaustive invariant checks over one group, as run by `recoil-cover verify`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    all_pairs, convolution_oracle, counting_identity_holds, product_expand, x_from_y, y_from_x,
};
use crate::covering::{verify_covering, CoveringInstance, CoveringStatus};
use crate::generators::GeneratorSet;
use crate::monodromy::{monodromy_report, positional_braid_loop, relation_loops, LoopKind};
use crate::recoil::{
    same_class_edge, same_class_edge_by_conjugation, same_class_edge_positional, symmetric_alpha,
    symmetric_beta, RecoilAtlas,
};
use crate::spec::CoxeterKind;
use crate::system::{CoxeterSystem, ElemId};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            passed: 0,
            total: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(witness());
        }
    }

    fn absorb(&mut self, outcome: Outcome) {
        self.total += outcome.total;
        self.passed += outcome.passed;
        if self.first_failure.is_none() {
            self.first_failure = outcome.failure;
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Partial tally produced by a parallel worker.
#[derive(Default)]
struct Outcome {
    passed: usize,
    total: usize,
    failure: Option<String>,
}

impl Outcome {
    fn single(ok: bool, witness: impl FnOnce() -> String) -> Self {
        Outcome {
            passed: usize::from(ok),
            total: 1,
            failure: (!ok).then(witness),
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.passed += other.passed;
        self.total += other.total;
        self.failure = self.failure.or(other.failure);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub group: String,
    pub order: usize,
    pub checks: Vec<CheckResult>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.as_deref().map(|w| (c.name, w)))
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} elements)", self.group, self.order)?;
        for c in &self.checks {
            let mark = if c.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {:<22} {}/{}", c.name, c.passed, c.total)?;
            if let Some(w) = &c.first_failure {
                writeln!(f, "       first failure: {w}")?;
            }
        }
        Ok(())
    }
}

fn system_checks(sys: &CoxeterSystem) -> CheckResult {
    let mut check = CheckResult::new("cayley");
    for w in sys.ids() {
        for s in 0..sys.rank() {
            let ws = sys.right_mul(w, s);
            let sw = sys.left_mul(s, w);
            let ok = sys.right_mul(ws, s) == w
                && sys.left_mul(s, sw) == w
                && sys.length(w).abs_diff(sys.length(ws)) == 1
                && sys.length(w).abs_diff(sys.length(sw)) == 1
                && sw == sys.multiply(sys.generator(s), w);
            check.record(ok, || format!("{} with s{}", sys.display(w), s + 1));
        }
        let inverse = sys.inverse(w);
        let ok = sys.multiply(w, inverse) == sys.identity()
            && sys.recoil_set(w) == sys.descent_set(inverse)
            && sys.evaluate(&sys.reduced_word(w)) == w
            && sys.reduced_word(w).len() == sys.length(w);
        check.record(ok, || format!("inverse or word of {}", sys.display(w)));
        if let (Some(r), Some(d)) = (sys.positional_recoil_set(w), sys.positional_descent_set(w)) {
            check.record(r == sys.recoil_set(w) && d == sys.descent_set(w), || {
                format!("positional recoils of {}", sys.display(w))
            });
        }
    }
    check
}

fn class_checks(atlas: &RecoilAtlas<'_>) -> [CheckResult; 4] {
    let sys = atlas.system();
    let mut partition = CheckResult::new("partition");
    let mut interval = CheckResult::new("interval");
    let mut connectivity = CheckResult::new("connectivity");
    let mut criterion = CheckResult::new("edge criterion");

    let total: usize = atlas.classes().iter().map(|c| c.len()).sum();
    partition.record(total == sys.order(), || {
        format!("class sizes add up to {total}")
    });
    for class in atlas.classes() {
        let name = || format!("Y_{}", class.subset.subscript());
        partition.record(
            !class.is_empty()
                && class
                    .members
                    .iter()
                    .all(|&w| sys.recoil_set(w) == class.subset),
            name,
        );
        let ok = sys.ids().all(|w| {
            let between = sys.weak_leq(class.alpha, w) && sys.weak_leq(w, class.beta);
            between == class.contains(w)
        });
        interval.record(ok, name);
        if let CoxeterKind::Symmetric(n) = sys.spec().kind {
            let ok = sys.perm(&symmetric_alpha(n, class.subset)) == Some(class.alpha)
                && sys.perm(&symmetric_beta(n, class.subset)) == Some(class.beta);
            interval.record(ok, || format!("extremes of {}", name()));
        }
        connectivity.record(class.is_connected(), name);
    }
    for w in sys.ids() {
        for s in 0..sys.rank() {
            let by_sets = same_class_edge(sys, w, s);
            let ok = by_sets == same_class_edge_by_conjugation(sys, w, s)
                && same_class_edge_positional(sys, w, s).is_none_or(|p| p == by_sets);
            criterion.record(ok, || format!("{} with s{}", sys.display(w), s + 1));
        }
    }
    [partition, interval, connectivity, criterion]
}

fn triples(rank: usize) -> Vec<(GeneratorSet, GeneratorSet, GeneratorSet)> {
    all_pairs(rank)
        .into_iter()
        .flat_map(|(i, j)| GeneratorSet::all(rank).map(move |k| (i, j, k)))
        .collect()
}

/// Covering axioms, fiber constancy, and monodromy for every instance.
fn instance_checks(atlas: &RecoilAtlas<'_>) -> [CheckResult; 2] {
    let sys = atlas.system();
    let (covering, monodromy) = triples(sys.rank())
        .par_iter()
        .map(|&(i, j, k)| {
            let z = CoveringInstance::build(atlas, i, j, k);
            let name = || format!("Z_{}/{}/{}", i.subscript(), j.subscript(), k.subscript());
            let report = verify_covering(&z);
            let fibers = z.check_fiber_constancy();
            let cover_ok = report.status != CoveringStatus::Violated && fibers.is_ok();
            let cover = Outcome::single(cover_ok, || {
                let why = report
                    .violations
                    .first()
                    .cloned()
                    .or_else(|| fibers.err().map(|e| e.to_string()))
                    .unwrap_or_default();
                format!("{}: {why}", name())
            });
            let mono = match monodromy_report(&z) {
                Ok(_) => Outcome::single(true, String::new),
                Err(e) => Outcome::single(false, || format!("{}: {e}", name())),
            };
            (cover, mono)
        })
        .reduce(
            || (Outcome::default(), Outcome::default()),
            |(a, b), (c, d)| (a.merge(c), b.merge(d)),
        );
    let mut c = CheckResult::new("covering");
    c.absorb(covering);
    let mut m = CheckResult::new("monodromy");
    m.absorb(monodromy);
    [c, m]
}

fn loop_checks(atlas: &RecoilAtlas<'_>) -> CheckResult {
    let sys = atlas.system();
    let mut check = CheckResult::new("braid fast path");
    if !sys.is_symmetric() {
        return check;
    }
    for class in atlas.classes() {
        let braid_bases: Vec<(usize, ElemId)> = relation_loops(sys, class)
            .into_iter()
            .filter(|l| l.kind == LoopKind::Braid)
            .flat_map(|l| {
                let s = l.word[0];
                l.vertices(sys).into_iter().map(move |w| (s, w))
            })
            .collect();
        for &w in &class.members {
            for i in 0..sys.rank().saturating_sub(1) {
                let fast = positional_braid_loop(sys, w, i).unwrap_or(false);
                check.record(fast == braid_bases.contains(&(i, w)), || {
                    format!("{} at s{}", sys.display(w), i + 1)
                });
            }
        }
    }
    check
}

/// Oracle equivalence, counting identity, and the basis-change round trip for
/// every product `Y_I Y_J`.
fn product_checks(atlas: &RecoilAtlas<'_>) -> [CheckResult; 3] {
    let sys = atlas.system();
    let (oracle, counting, mobius) = all_pairs(sys.rank())
        .par_iter()
        .map(|&(i, j)| {
            let name = || format!("Y_{}·Y_{}", i.subscript(), j.subscript());
            match (product_expand(atlas, i, j), convolution_oracle(sys, i, j)) {
                (Ok(product), Ok(expected)) => {
                    let round_trip = y_from_x(&x_from_y(&product)) == product;
                    (
                        Outcome::single(product == expected, || {
                            format!("{}: {product} vs {expected}", name())
                        }),
                        Outcome::single(counting_identity_holds(atlas, i, j, &product), name),
                        Outcome::single(round_trip, name),
                    )
                }
                (Err(e), _) | (_, Err(e)) => (
                    Outcome::single(false, || format!("{}: {e}", name())),
                    Outcome::single(false, || format!("{}: {e}", name())),
                    Outcome::default(),
                ),
            }
        })
        .reduce(
            || (Outcome::default(), Outcome::default(), Outcome::default()),
            |(a, b, c), (d, e, f)| (a.merge(d), b.merge(e), c.merge(f)),
        );
    let mut o = CheckResult::new("oracle equivalence");
    o.absorb(oracle);
    let mut c = CheckResult::new("counting identity");
    c.absorb(counting);
    let mut m = CheckResult::new("basis round trip");
    m.absorb(mobius);
    [o, c, m]
}

/// Runs every check on one group.
pub fn run_sweep(sys: &CoxeterSystem) -> SweepReport {
    let atlas = RecoilAtlas::new(sys);
    let mut checks = vec![system_checks(sys)];
    checks.extend(class_checks(&atlas));
    checks.extend(product_checks(&atlas));
    checks.extend(instance_checks(&atlas));
    checks.push(loop_checks(&atlas));
    SweepReport {
        group: sys.spec().name(),
        order: sys.order(),
        checks,
    }
}
