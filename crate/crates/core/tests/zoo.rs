use fcat_core::kan_classifiers::phi_bar_objects;
use fcat_core::riggedness::{default_budget, is_rigged, is_tightly_rigged};
use fcat_core::two_cat::WKind;
use fcat_core::weights::zoo;

#[test]
fn zoo_weights_are_tightly_rigged_and_rigged() {
    for k in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
        for (name, w) in zoo(k) {
            let t = std::time::Instant::now();
            let bar = phi_bar_objects(&w);
            assert!(bar.bijective, "{name}: φ̄ not bijective");
            let tr = is_tightly_rigged(&w).unwrap();
            assert_eq!(tr.p_rigged_certified, Some(true), "{name}");
            let v = is_rigged(&w, k, &default_budget(&w)).unwrap();
            assert!(v.is_rigged(), "{name} for {k:?}: {v:?}");
            eprintln!("{name} {k:?} {:?}", t.elapsed());
        }
    }
}
