use dga_core::suite;
use dga_core::theorems::{lemma_c_check, theorem_a_report, theorem_b_les_report};
use dga_core::hochschild::bar_augmentation_check;
use dga_core::{CutoffPolicy, FieldSpec, Status, Window};

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn bar_augmentation_on_pairs() {
    for (name, r, s) in suite::bar_pairs(Q).unwrap() {
        let t = std::time::Instant::now();
        let c = bar_augmentation_check(&r, &s, Window::new(-4, 2), CutoffPolicy::default()).unwrap();
        assert!(c.quasi_iso, "{name}");
        assert!(matches!(c.status, Status::Stabilized(_) | Status::Exact), "{name}: {:?}", c.status);
        eprintln!("{name}: {:?}", t.elapsed());
    }
}

#[test]
fn fiber_sequences_are_exact() {
    for m in suite::theorem_b_maps(Q).unwrap() {
        let t = std::time::Instant::now();
        let rep = theorem_b_les_report(&m.phi, 3, m.generators.as_ref(), CutoffPolicy::default()).unwrap();
        assert_eq!(rep.les.not_exact(), 0, "{}: {:?}", m.name, rep.les);
        assert!(rep.pi.iter().all(|g| g.routes_agree()), "{}: {:?}", m.name, rep.pi);
        eprintln!("{}: {:?} exact {}", m.name, t.elapsed(), rep.les.exact());
    }
}

#[test]
fn unit_groups_of_ordinary_algebras() {
    for (name, r) in suite::ordinary_algebras().unwrap() {
        let rep = theorem_a_report(&r, CutoffPolicy::default()).unwrap();
        assert_eq!(rep.kernel, 1, "{name}");
        assert_eq!(rep.rr1_order, Some(1), "{name}");
        assert!(rep.edge_is_ring_map, "{name}");
    }
}

#[test]
fn square_zero_dimensions() {
    for deg in [2, 3] {
        let r = suite::free_one(Q, deg);
        for (mname, m) in suite::lemma_c_coefficients(&r).unwrap() {
            for n in 2..=4 {
                let t = std::time::Instant::now();
                let rep = lemma_c_check(&r, &m, n, CutoffPolicy::default()).unwrap();
                assert!(rep.holds, "|x|={deg} M={mname} n={n}: {rep:?}");
                eprintln!("{deg} {mname} {n}: {:?}", t.elapsed());
            }
        }
    }
}
