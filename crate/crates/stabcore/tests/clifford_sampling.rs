use iesb_core::{Label, Role, SeedPath};
use stabcore::random_clifford2;
use stabcore::tableau::{ColumnOps, StabTableau};

#[test]
fn images_of_x0_are_uniform() {
    let samples = 1_000_000u64;
    let root = SeedPath::root(1);
    let mut counts = [0u64; 16];
    for k in 0..samples {
        counts[random_clifford2(root.child(k)).images[0].pauli() as usize] += 1;
    }
    assert_eq!(counts[0], 0);
    let expect = samples as f64 / 15.0;
    let sigma = (samples as f64 * (1.0 / 15.0) * (14.0 / 15.0)).sqrt();
    let mut chi2 = 0.0;
    for &c in &counts[1..] {
        assert!((c as f64 - expect).abs() < 3.0 * sigma + 1.0, "count {c} vs {expect}");
        chi2 += (c as f64 - expect).powi(2) / expect;
    }
    // 99.9% quantile of chi-square with 14 degrees of freedom
    assert!(chi2 < 36.12, "chi2 = {chi2}");
}

fn scrambled(n: usize) -> StabTableau {
    let mut t = StabTableau::new();
    for k in 0..n {
        t.push_zero(Label::aux(Role::E, k));
    }
    let root = SeedPath::root(5);
    for k in 0..3 * n as u64 {
        let a = (k as usize * 7) % n;
        let b = (a + 1 + k as usize % (n - 1)) % n;
        t.apply_clifford2(a, b, random_clifford2(root.child(k)));
    }
    t
}

#[test]
fn element_then_inverse_is_identity() {
    let base = scrambled(6);
    let root = SeedPath::root(9);
    for k in 0..200 {
        let g = random_clifford2(root.child(k));
        let mut t = base.clone();
        t.apply_clifford2(1, 4, g);
        for e in g.inverse_word() {
            let w = iesb_core::Clifford2 { images: g.images, word: vec![e] };
            t.apply_clifford2(1, 4, &w);
        }
        assert_eq!(t.dump_hex(), base.dump_hex());
    }
}

#[test]
fn sampled_gates_keep_invariants() {
    let mut t = scrambled(10);
    let root = SeedPath::root(17);
    for k in 0..300u64 {
        let a = (k % 10) as usize;
        t.apply_clifford2(a, (a + 3) % 10, random_clifford2(root.child(k)));
        if k % 50 == 0 {
            t.check_invariants().unwrap();
        }
    }
    t.check_invariants().unwrap();
    assert_eq!(t.entropy_region(&(0..10).collect::<Vec<_>>()), 0);
}
