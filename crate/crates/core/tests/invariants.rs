use proptest::prelude::*;

use monocover::bounds::certify_lower_bound;
use monocover::clique::two_edge_cover;
use monocover::covers::{is_monotone_path, paths_to_matchings};
use monocover::pointgen::{gen_tripartite, gen_uniform, Provenance};
use monocover::sweep::{sweep_cover, SweepConfig};
use monocover::zigzag::zigzag_ham_path;
use monocover::{check_coverage, Cover, Edge, PathPiece, PointSet};

fn small_set() -> impl Strategy<Value = PointSet> {
    (3usize..14, any::<u64>()).prop_map(|(n, seed)| gen_uniform(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn covers_verify_and_survive_json(ps in small_set()) {
        let full = SweepConfig { phase2: true, ..Default::default() };
        for cover in [two_edge_cover(&ps).unwrap(), sweep_cover(&ps, &full).unwrap().0] {
            let rep = check_coverage(&ps, &cover);
            prop_assert!(rep.pass, "{:?} {:?}", rep.uncovered, rep.failures);
            let back = Cover::from_json(&cover.to_json()).unwrap();
            prop_assert_eq!(back.to_json(), cover.to_json());
        }
    }

    #[test]
    fn dropping_a_piece_uncovers_its_private_edges(ps in small_set(), pick in any::<prop::sample::Index>()) {
        let cover = two_edge_cover(&ps).unwrap();
        let i = pick.index(cover.len());
        let mut rest = cover.clone();
        let gone = rest.pieces.remove(i);
        let still: Vec<Edge> = rest.pieces.iter().flat_map(|p| p.edges()).collect();
        let private = gone.edges().iter().filter(|e| !still.contains(e)).count();
        prop_assert_eq!(check_coverage(&ps, &rest).uncovered.len(), private);
    }

    #[test]
    fn matching_split_keeps_coverage(ps in small_set()) {
        let split = paths_to_matchings(&two_edge_cover(&ps).unwrap());
        prop_assert!(check_coverage(&ps, &split).pass);
    }

    #[test]
    fn zigzag_path_contains_its_edge(ps in small_set(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (a, b) = (a.index(ps.len()), b.index(ps.len()));
        prop_assume!(a != b);
        let p = zigzag_ham_path(&ps, a, b).unwrap();
        prop_assert_eq!(p.vertices.len(), ps.len());
        prop_assert!(p.edges().any(|e| e == Edge::new(a, b)));
    }

    #[test]
    fn monotonicity_ignores_translation(ps in small_set(), dx in -1000i64..1000, dy in -1000i64..1000) {
        let moved: Vec<(i64, i64)> = ps.points.iter().map(|p| (p.x + dx, p.y + dy)).collect();
        let qs = PointSet::from_coords(&moved, Provenance::new("moved", 0)).unwrap();
        let path = PathPiece::new((0..ps.len()).collect());
        prop_assert_eq!(
            is_monotone_path(&ps, &path).unwrap().is_some(),
            is_monotone_path(&qs, &path).unwrap().is_some()
        );
    }
}

#[test]
fn certificate_is_reproducible() {
    let (ps, labels) = gen_tripartite(3, 4, 100.0).unwrap();
    let a = certify_lower_bound(&ps, &labels).unwrap();
    let b = certify_lower_bound(&ps, &labels).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.max_e0, 5);
}
