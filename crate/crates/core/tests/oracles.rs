mod common;

use common::{arf_invariant, brute_force_class, gp};
use rvq::components::{canonical_rep, identify_component, ComponentCatalog};
use rvq::induction::{cache_path, enumerate_class_with, load_class, save_class, ClassMode};

#[test]
fn class_enumeration_matches_brute_force() {
    for seed in ["1 2 / 2 1", "1 2 3 4 / 4 3 2 1", "tau_sym(5)", "tau_zorich(3)", "sigma_hyp(2,1)", "1 A A 2 / 2 1 B B"] {
        let g = if seed.contains('/') { gp(seed) } else { canonical_rep(seed).unwrap() };
        let brute = brute_force_class(&g);
        let c = enumerate_class_with(&g, ClassMode::Labeled, 1_000_000).unwrap();
        assert_eq!(c.len(), brute.len(), "{seed}");
        assert!(c.vertices().all(|v| brute.contains(&v.to_string())));
        assert!(c.is_strongly_connected(), "{seed}");
        let reduced = enumerate_class_with(&g, ClassMode::Reduced, 1_000_000).unwrap();
        let mut keys: Vec<Vec<u8>> = brute.iter().map(|s| gp(s).reduced_key()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(reduced.len(), keys.len(), "{seed}");
    }
}

#[test]
fn tau4_class_has_seven_vertices() {
    let c = enumerate_class_with(&gp("1 2 3 4 / 4 3 2 1"), ClassMode::Labeled, 100).unwrap();
    assert_eq!(c.len(), 7);
}

#[test]
fn spin_parity_is_constant_on_classes() {
    for (label, arf) in [("tau_zorich(3)", 1), ("tau_sym(6)", 0), ("tau_zorich(4)", 1), ("sigma_zorich(4)", 0)] {
        let c = enumerate_class_with(&canonical_rep(label).unwrap(), ClassMode::Reduced, 1_000_000).unwrap();
        assert!(c.vertices().all(|v| arf_invariant(&v) == arf), "{label}");
    }
}

#[test]
fn odd_and_even_classes_are_disjoint() {
    let odd = enumerate_class_with(&canonical_rep("tau_zorich(4)").unwrap(), ClassMode::Reduced, 1_000_000).unwrap();
    let even = enumerate_class_with(&canonical_rep("sigma_zorich(4)").unwrap(), ClassMode::Reduced, 1_000_000).unwrap();
    assert!(odd.vertices().all(|v| !even.contains(&v)));
    let id = identify_component(&canonical_rep("sigma_zorich(4)").unwrap()).unwrap().unwrap();
    assert_eq!(id.label, "H(6)^even");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = canonical_rep("tau_zorich(3)").unwrap();
    let c = enumerate_class_with(&g, ClassMode::Reduced, 1000).unwrap();
    let path = cache_path(dir.path(), &g, ClassMode::Reduced);
    save_class(&c, &path).unwrap();
    let back = load_class(&path).unwrap();
    assert_eq!(back.len(), c.len());
    assert_eq!(back.arrow_count(), c.arrow_count());
    assert!(back.is_complete());
    assert!(c.vertices().all(|v| back.contains(&v)));
    let catalog = ComponentCatalog::new(Some(dir.path().to_path_buf()), 1_000_000);
    let tau = gp("1 2 3 4 5 6 / 6 4 2 5 3 1");
    assert_eq!(catalog.identify(&tau).unwrap().unwrap().label, "H(4)^odd");
}
