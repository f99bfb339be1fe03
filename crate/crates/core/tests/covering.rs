use recoil_cover::{
    build_fibered_graph, unique_lift_edge, verify_covering, CoveringStatus, CoxeterSpec,
    CoxeterSystem, ElemId, GeneratorSet, RecoilAtlas, Side,
};

fn triples(rank: usize) -> impl Iterator<Item = (GeneratorSet, GeneratorSet, GeneratorSet)> {
    GeneratorSet::all(rank).flat_map(move |i| {
        GeneratorSet::all(rank).flat_map(move |j| GeneratorSet::all(rank).map(move |k| (i, j, k)))
    })
}

#[test]
fn every_s5_instance_is_a_covering() {
    let sys = CoxeterSystem::build(CoxeterSpec::symmetric(5)).unwrap();
    let atlas = RecoilAtlas::new(&sys);
    let mut nonempty = 0;
    for (i, j, k) in triples(sys.rank()) {
        let z = build_fibered_graph(&atlas, i, j, k);
        let report = verify_covering(&z);
        assert!(report.passed(), "{i} {j} {k}: {:?}", report.violations);
        if !z.is_empty() {
            nonempty += 1;
            assert_eq!(report.status, CoveringStatus::Covering);
            let a = z.check_fiber_constancy().unwrap();
            assert_eq!(z.multiplicity_partition().total(), a);
        }
    }
    assert!(nonempty > 0);
}

/// All factorizations `(π', ρ')` of `σs` adjacent to `(π, ρ)` in the product
/// graph `Y_I × Y_J`, found by trying every generator on either factor.
fn brute_force_lifts(
    sys: &CoxeterSystem,
    left: ElemId,
    right: ElemId,
    s: usize,
) -> Vec<(ElemId, ElemId, Side)> {
    let target = sys.right_mul(sys.multiply(left, right), s);
    let mut found = Vec::new();
    for g in 0..sys.rank() {
        let pi = sys.right_mul(left, g);
        if sys.recoil_set(pi) == sys.recoil_set(left) && sys.multiply(pi, right) == target {
            found.push((pi, right, Side::Left));
        }
        let rho = sys.right_mul(right, g);
        if sys.recoil_set(rho) == sys.recoil_set(right) && sys.multiply(left, rho) == target {
            found.push((left, rho, Side::Right));
        }
    }
    found
}

fn check_unique_lift_exhaustively(sys: &CoxeterSystem) {
    for pi in sys.ids() {
        for rho in sys.ids() {
            let sigma = sys.multiply(pi, rho);
            for s in 0..sys.rank() {
                let stays = sys.recoil_set(sys.right_mul(sigma, s)) == sys.recoil_set(sigma);
                let lifted = unique_lift_edge(sys, pi, rho, s);
                if !stays {
                    assert!(lifted.is_err());
                    continue;
                }
                let lift = lifted.unwrap();
                let brute = brute_force_lifts(sys, pi, rho, s);
                assert_eq!(brute, vec![(lift.left, lift.right, lift.side)]);
            }
        }
    }
}

#[test]
fn unique_lift_matches_brute_force_in_s4() {
    check_unique_lift_exhaustively(&CoxeterSystem::build(CoxeterSpec::symmetric(4)).unwrap());
}

#[test]
fn unique_lift_matches_brute_force_in_b3_and_dihedral() {
    let b3 = CoxeterSpec::matrix(vec![vec![1, 4, 2], vec![4, 1, 3], vec![2, 3, 1]]);
    check_unique_lift_exhaustively(&CoxeterSystem::build(b3).unwrap());
    for m in 2..=8 {
        check_unique_lift_exhaustively(&CoxeterSystem::build(CoxeterSpec::dihedral(m)).unwrap());
    }
}

#[test]
fn s5_figure_instance() {
    let sys = CoxeterSystem::build(CoxeterSpec::symmetric(5)).unwrap();
    let atlas = RecoilAtlas::new(&sys);
    let set = |v: &[usize]| GeneratorSet::from_one_based(v, 4).unwrap();
    let z = build_fibered_graph(&atlas, set(&[2, 3]), set(&[3, 4]), set(&[1, 3]));
    assert_eq!(atlas.class(set(&[1, 3])).len(), 16);
    assert_eq!(z.vertices.len(), 32);
    assert_eq!(z.check_fiber_constancy().unwrap(), 2);
    assert_eq!(z.component_count, 1);
    assert_eq!(z.multiplicity_partition().parts(), &[2]);
}
