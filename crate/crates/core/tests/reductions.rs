use proptest::prelude::*;
use sfvs_core::reductions::{
    cut_size, maxcut_certificate, maxcut_edges_direct, maxcut_gadget, mcc_certificate, mcc_gadget, MccInstance,
};
use sfvs_core::{build_instance, validate_model, verify_sfvs, Instance, ReductionError};

fn base_from_mask(n: usize, mask: u32) -> Instance {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    build_instance(n, &edges, vec![1; n], vec![false; n]).unwrap()
}

#[test]
fn maxcut_s_triangles_have_listed_shapes() {
    for n in 1..=3usize {
        for mask in 0..1u32 << (n * (n - 1) / 2) {
            let g = maxcut_gadget(&base_from_mask(n, mask));
            let h = &g.instance;
            for a in 0..h.n() {
                for &b in h.neighbors(a).iter().filter(|&&b| b > a) {
                    for &c in h.neighbors(b).iter().filter(|&&c| c > b && h.has_edge(a, c)) {
                        if h.in_s(a) || h.in_s(b) || h.in_s(c) {
                            assert!(
                                g.layout.triangle_form(a, b, c).is_some(),
                                "n={n} mask={mask}: {:?}",
                                [g.layout.role(a), g.layout.role(b), g.layout.role(c)]
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn larger_cuts_give_smaller_certificates() {
    let g = maxcut_gadget(&base_from_mask(4, 0b101101));
    let mut best = vec![usize::MAX; 7];
    for mask in 0..16u32 {
        let a: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
        let k = cut_size(&g, &a);
        best[k] = best[k].min(maxcut_certificate(&g, &a).unwrap().len());
    }
    let seen: Vec<usize> = best.into_iter().filter(|&b| b != usize::MAX).collect();
    assert!(seen.len() >= 3);
    assert!(seen.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn maxcut_rejects_foreign_vertices() {
    let g = maxcut_gadget(&base_from_mask(2, 1));
    assert_eq!(maxcut_certificate(&g, &[5]), Err(ReductionError::VertexOutOfRange(5)));
}

#[test]
fn mcc_rejects_bad_cliques() {
    let mcc = MccInstance::new(3, 2, &[(0, 0, 1, 0), (0, 0, 2, 1), (1, 0, 2, 0)]).unwrap();
    let g = mcc_gadget(&mcc);
    assert!(matches!(mcc_certificate(&g, &[0, 2, 5]), Err(ReductionError::NotAClique(_))));
    assert!(matches!(mcc_certificate(&g, &[0, 1, 4]), Err(ReductionError::NotMulticolored { .. })));
    assert!(matches!(mcc_certificate(&g, &[0, 2]), Err(ReductionError::NotMulticolored { .. })));
    assert!(!g.equivalence_asserted);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn maxcut_gadget_is_a_path_model(n in 1usize..=4, mask in any::<u32>(), side in any::<u32>()) {
        let base = base_from_mask(n, mask);
        let g = maxcut_gadget(&base);
        prop_assert!(validate_model(&g.model, &g.instance).is_empty());
        let mut direct = maxcut_edges_direct(&g);
        direct.sort_unstable();
        prop_assert_eq!(direct, g.instance.edges().collect::<Vec<_>>());
        let a: Vec<usize> = (0..n).filter(|&v| side >> v & 1 == 1).collect();
        let u = maxcut_certificate(&g, &a).unwrap();
        prop_assert!(verify_sfvs(&g.instance, &u).0);
        prop_assert_eq!(u.len(), 4 * n * n + n + 2 * base.m() - cut_size(&g, &a));
    }

    #[test]
    fn mcc_gadget_facts(k in 2usize..=4, p in 1usize..=3, density in 0.3f64..1.0, seed in any::<u64>()) {
        let mcc = MccInstance::random(k, p, density, seed).unwrap();
        let g = mcc_gadget(&mcc);
        prop_assert!(validate_model(&g.model, &g.instance).is_empty());
        prop_assert!(g.model.host_leaf_count() <= k * (k + 3) / 2);
        let h = &g.instance;
        for i in 0..k {
            let s_i = g.s_class(i);
            for a in 0..p {
                let expected = g.s_class_at(i, a);
                for e in g.r_class_at(i, a) {
                    let seen: Vec<usize> = s_i.iter().copied().filter(|&s| h.has_edge(e, s)).collect();
                    prop_assert_eq!(&seen, &expected);
                }
            }
            for j in i + 1..k {
                prop_assert_eq!(h.neighbors(g.s_edge_vertex(i, j)).to_vec(), g.r_pair(i, j));
            }
        }
        if let Some(choice) = mcc.find_multicolored_clique() {
            let clique: Vec<usize> = choice.iter().enumerate().map(|(i, &a)| i * p + a).collect();
            let u = mcc_certificate(&g, &clique).unwrap();
            let (feasible, weight) = verify_sfvs(h, &u);
            prop_assert!(feasible);
            prop_assert_eq!(weight, g.target_weight());
            prop_assert!(u.iter().all(|x| !g.s_e().contains(x)));
        }
    }
}
