use std::collections::BTreeSet;

use recoil_cover::monodromy::{
    lift_path, loop_action, monodromy_report, positional_braid_loop, relation_loops, Loop, LoopKind,
};
use recoil_cover::{
    CoveringInstance, CoxeterSpec, CoxeterSystem, ElemId, GeneratorSet, RecoilAtlas,
};

fn set(indices: &[usize], rank: usize) -> GeneratorSet {
    GeneratorSet::from_one_based(indices, rank).unwrap()
}

fn s5() -> CoxeterSystem {
    CoxeterSystem::build(CoxeterSpec::symmetric(5)).unwrap()
}

/// The hexagon 24153 − 24135 − 24315 − 24351 − 24531 − 24513 − 24153.
fn hexagon(sys: &CoxeterSystem, class: &recoil_cover::RecoilClass) -> Loop {
    let base = sys.parse_element("24153").unwrap();
    Loop::new(sys, class, base, vec![3, 2, 3, 2, 3, 2], LoopKind::Braid).unwrap()
}

#[test]
fn displayed_braid_loop_swaps_the_fiber() {
    let sys = s5();
    let atlas = RecoilAtlas::new(&sys);
    let z = CoveringInstance::build(&atlas, set(&[2, 3], 4), set(&[3, 4], 4), set(&[1, 3], 4));
    let lp = hexagon(&sys, z.target_class());
    let walked: Vec<String> = lp
        .vertices(&sys)
        .iter()
        .map(|&w| sys.display(w).to_string())
        .collect();
    assert_eq!(
        walked,
        ["24153", "24135", "24315", "24351", "24531", "24513", "24153"]
    );

    let action = loop_action(&z, &lp).unwrap();
    assert_eq!(action.fiber.len(), 2);
    assert_eq!(action.permutation, vec![1, 0]);
    assert_eq!(action.order, 2);
    let path = lift_path(&z, action.fiber[0], &lp.word).unwrap();
    assert_eq!(*path.last().unwrap(), action.fiber[1]);
    for (step, &v) in path.iter().enumerate() {
        assert_eq!(z.vertices[v].image, lp.vertices(&sys)[step]);
    }

    // The enumerated hexagon on the same vertices runs the other way round.
    let listed = relation_loops(&sys, z.target_class());
    let vertex_set = |l: &Loop| l.vertices(&sys).into_iter().collect::<BTreeSet<ElemId>>();
    let same: Vec<&Loop> = listed
        .iter()
        .filter(|l| l.kind == LoopKind::Braid && vertex_set(l) == vertex_set(&lp))
        .collect();
    assert_eq!(same.len(), 1);
    assert_eq!(loop_action(&z, same[0]).unwrap().order, 2);

    let report = monodromy_report(&z).unwrap();
    assert!(report.orders.get("2").copied().unwrap_or(0) >= 1);
    assert!(!report.no_braid_loops);
    assert_eq!(z.component_count, 1);
}

#[test]
fn every_s5_instance_has_braid_orders_at_most_two() {
    let sys = s5();
    let atlas = RecoilAtlas::new(&sys);
    let mut nontrivial = 0;
    for i in GeneratorSet::all(4) {
        for j in GeneratorSet::all(4) {
            for k in GeneratorSet::all(4) {
                let z = CoveringInstance::build(&atlas, i, j, k);
                let report = monodromy_report(&z).unwrap();
                assert!(report.orders.keys().all(|o| o == "1" || o == "2"));
                nontrivial += report.orders.get("2").copied().unwrap_or(0);
            }
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn braid_loops_twice_and_reversed() {
    let sys = s5();
    let atlas = RecoilAtlas::new(&sys);
    for i in GeneratorSet::all(4) {
        for j in GeneratorSet::all(4) {
            for k in GeneratorSet::all(4) {
                let z = CoveringInstance::build(&atlas, i, j, k);
                if z.is_empty() {
                    continue;
                }
                for lp in relation_loops(&sys, z.target_class()) {
                    let once = loop_action(&z, &lp).unwrap();
                    let twice = Loop {
                        word: [lp.word.as_slice(), lp.word.as_slice()].concat(),
                        ..lp.clone()
                    };
                    assert_eq!(loop_action(&z, &twice).unwrap().order, 1);
                    let back = loop_action(&z, &lp.reversed()).unwrap();
                    for (a, &b) in once.permutation.iter().enumerate() {
                        assert_eq!(back.permutation[b], a);
                    }
                }
            }
        }
    }
}

/// Shortest walk inside the class from `from` to `to`.
fn class_path(
    sys: &CoxeterSystem,
    class: &recoil_cover::RecoilClass,
    from: ElemId,
    to: ElemId,
) -> Vec<usize> {
    let start = class.position(from).unwrap();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; class.len()];
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = vec![false; class.len()];
    seen[start] = true;
    while let Some(i) = queue.pop_front() {
        for e in &class.adjacency[i] {
            if !seen[e.to] {
                seen[e.to] = true;
                prev[e.to] = Some((i, e.generator));
                queue.push_back(e.to);
            }
        }
    }
    let mut word = Vec::new();
    let mut at = class.position(to).unwrap();
    while let Some((p, s)) = prev[at] {
        word.push(s);
        at = p;
    }
    word.reverse();
    assert_eq!(sys.walk(from, word.iter().copied()), to);
    word
}

#[test]
fn moving_the_base_point_conjugates_the_action() {
    let sys = s5();
    let atlas = RecoilAtlas::new(&sys);
    let z = CoveringInstance::build(&atlas, set(&[2, 3], 4), set(&[3, 4], 4), set(&[1, 3], 4));
    let yk = z.target_class();
    let lp = hexagon(&sys, yk);
    let action = loop_action(&z, &lp).unwrap();
    for &other in &yk.members {
        let mu = class_path(&sys, yk, lp.base, other);
        let mu_back: Vec<usize> = mu.iter().rev().copied().collect();
        let moved = Loop::new(
            &sys,
            yk,
            other,
            [mu_back.as_slice(), &lp.word, &mu].concat(),
            LoopKind::Braid,
        )
        .unwrap();
        let moved_action = loop_action(&z, &moved).unwrap();
        // f: fiber over the old base -> fiber over the new one, along μ.
        let f: Vec<usize> = action
            .fiber
            .iter()
            .map(|&v| {
                let end = *lift_path(&z, v, &mu).unwrap().last().unwrap();
                moved_action.fiber.iter().position(|&u| u == end).unwrap()
            })
            .collect();
        for a in 0..f.len() {
            assert_eq!(moved_action.permutation[f[a]], f[action.permutation[a]]);
        }
    }
}

#[test]
fn positional_braid_test_matches_the_class_scan() {
    for n in 3..=6 {
        let sys = CoxeterSystem::build(CoxeterSpec::symmetric(n)).unwrap();
        let atlas = RecoilAtlas::new(&sys);
        for class in atlas.classes() {
            let listed: BTreeSet<(usize, ElemId)> = relation_loops(&sys, class)
                .into_iter()
                .filter(|l| l.kind == LoopKind::Braid)
                .flat_map(|l| {
                    let s = l.word[0];
                    l.vertices(&sys).into_iter().map(move |w| (s, w))
                })
                .collect();
            for &w in &class.members {
                for i in 0..n - 2 {
                    assert_eq!(
                        positional_braid_loop(&sys, w, i).unwrap(),
                        listed.contains(&(i, w))
                    );
                }
            }
        }
    }
}

#[test]
fn b3_polygon_orders_are_reported() {
    let spec = CoxeterSpec::matrix(vec![vec![1, 4, 2], vec![4, 1, 3], vec![2, 3, 1]]);
    let sys = CoxeterSystem::build(spec).unwrap();
    let atlas = RecoilAtlas::new(&sys);
    for i in GeneratorSet::all(3) {
        for j in GeneratorSet::all(3) {
            for k in GeneratorSet::all(3) {
                let z = CoveringInstance::build(&atlas, i, j, k);
                let report = monodromy_report(&z).unwrap();
                let counted: usize = report.polygon_orders.values().sum();
                assert!(z.is_empty() || counted == report.polygon_loops);
            }
        }
    }
}
