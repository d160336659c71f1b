mod common;

use modsemi::catalog;
use modsemi::io::{hasse_dot, ppip_dot, PosetJson, PpipJson};
use modsemi::ppip::{birkhoff_roundtrip, induced_ppip};

#[test]
fn catalog_semilattices_induce_the_expected_ppips() {
    for k in 3..=5 {
        let p = induced_ppip(&catalog::m_k(k)).unwrap().ppip;
        assert_eq!(p.len(), k);
        assert_eq!(p.collinear_count(), k * (k - 1) * (k - 2) / 6);
        assert!(p.inconsistent_pairs().is_empty());

        let p = induced_ppip(&catalog::s_k(k)).unwrap().ppip;
        assert_eq!(p.len(), k);
        assert_eq!(p.inconsistent_pairs().len(), k * (k - 1) / 2);
        assert_eq!(p.collinear_count(), 0);

        let p = induced_ppip(&catalog::boolean(k)).unwrap().ppip;
        assert_eq!(p.len(), k);
        assert!(p.inconsistent_pairs().is_empty());
        assert_eq!(p.collinear_count(), 0);

        let p = induced_ppip(&catalog::chain_of(k)).unwrap().ppip;
        assert_eq!(p.len(), k - 1);
    }
    assert!(induced_ppip(&catalog::n5()).is_err());
}

#[test]
fn medians_have_no_lines() {
    let mut rng = common::rng(51);
    for _ in 0..60 {
        let l = common::random_median(&mut rng, 40);
        assert!(l.is_median());
        let report = birkhoff_roundtrip(&l).unwrap();
        assert_eq!(report.ppip.collinear_count(), 0);
        assert_eq!(report.subspaces.len(), l.len());
    }
}

#[test]
fn maximal_chains_step_by_covers() {
    let mut rng = common::rng(52);
    for _ in 0..80 {
        let (label, l) = common::random_modular(&mut rng, 20);
        let report = birkhoff_roundtrip(&l).unwrap();
        let fam = &report.subspaces;
        let chain = report.ppip.maximal_chain().unwrap();
        let pos: Vec<usize> = chain
            .iter()
            .map(|s| fam.position(s).expect("consistent subspace"))
            .collect();
        assert_eq!(pos[0], fam.lattice.bottom(), "{label}");
        for w in pos.windows(2) {
            assert!(fam.lattice.poset().covered_by(w[0], w[1]), "{label}");
        }
        let last = *pos.last().unwrap();
        assert!(fam.lattice.poset().upper_covers(last).is_empty(), "{label}");
    }
}

#[test]
fn json_roundtrips() {
    let mut rng = common::rng(53);
    for _ in 0..40 {
        let (_, l) = common::random_modular(&mut rng, 20);
        let json = PosetJson::from_poset(l.poset());
        let back: PosetJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
        assert_eq!(back, json);
        assert_eq!(back.to_semilattice().unwrap().poset(), l.poset());

        let p = induced_ppip(&l).unwrap().ppip;
        let json = PpipJson::from_ppip(&p);
        let back: PpipJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
        assert_eq!(back, json);
        let again = back.to_ppip().unwrap();
        assert_eq!(PpipJson::from_ppip(&again), json);
    }
}

#[test]
fn dot_output_mentions_every_element() {
    let l = catalog::m3();
    let dot = hasse_dot(l.poset(), "m3");
    assert!(
        dot.starts_with("digraph \"m3\" {") || dot.starts_with("digraph m3 {"),
        "{dot}"
    );
    for name in l.names() {
        assert!(dot.contains(&format!("\"{name}\"")), "{dot}");
    }
    let p = induced_ppip(&catalog::s_k(3)).unwrap().ppip;
    let dot = ppip_dot(&p, "s3");
    assert_eq!(dot.matches("dashed").count(), 3, "{dot}");
}
