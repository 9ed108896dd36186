use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistcert::cover::certificate::check_level_conjugation;
use twistcert::cover::lift::expected_components;
use twistcert::cover::{
    build_certificate, build_cover, homology_basis, lift_curve, spreading_bound, BaseCurve,
    CertificateMode, CoverCertificate,
};
use twistcert::ledger::IntersectionLedger;
use twistcert::penner::ribbon::{verify_filling, Family, RibbonConfig};
use twistcert::penner::thurston::{thurston_oracle, MultitwistWord};
use twistcert::penner::{stretch_factor, transition_matrix, PennerConfig, StretchCertificate};
use twistcert::symplectic::{
    intersection_pairing, is_level_trivial, is_symplectic, is_torelli, standard_classes,
    symplectic_inverse, transvection_matrix, word_action, ClassTable,
};
use twistcert::verdict::{apply_rules, Decision, MappingClassProfile, VerdictOptions};
use twistcert::{Decimal15, H1Vector, IntMatrix, SymplecticSpace, TwistWord};

fn space_and_vec(max_genus: usize, bound: i64) -> impl Strategy<Value = (SymplecticSpace, H1Vector)> {
    (1..=max_genus).prop_flat_map(move |g| {
        proptest::collection::vec(-bound..=bound, 2 * g)
            .prop_map(move |v| (SymplecticSpace::new(g).unwrap(), H1Vector::new(v)))
    })
}

fn vec_pair(max_genus: usize) -> impl Strategy<Value = (SymplecticSpace, H1Vector, H1Vector)> {
    (1..=max_genus).prop_flat_map(|g| {
        (
            proptest::collection::vec(-20i64..=20, 2 * g),
            proptest::collection::vec(-20i64..=20, 2 * g),
        )
            .prop_map(move |(x, y)| (SymplecticSpace::new(g).unwrap(), H1Vector::new(x), H1Vector::new(y)))
    })
}

/// Words in the standard curves with exponents in `-2..=2 \ {0}`.
fn word_in(genus: usize, max_len: usize) -> impl Strategy<Value = TwistWord> {
    let names: Vec<String> = (1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    proptest::collection::vec((0..names.len(), prop_oneof![Just(-1i64), Just(1), Just(2), Just(-2)]), 0..=max_len)
        .prop_map(move |ls| TwistWord::from_pairs(ls.into_iter().map(|(k, e)| (names[k].clone(), e))).unwrap())
}

fn genus_and_word(max_genus: usize, max_len: usize) -> impl Strategy<Value = (SymplecticSpace, TwistWord)> {
    (1..=max_genus).prop_flat_map(move |g| word_in(g, max_len).prop_map(move |w| (SymplecticSpace::new(g).unwrap(), w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_is_skew((space, x, y) in vec_pair(5)) {
        let xy = intersection_pairing(&x, &y, &space).unwrap();
        let yx = intersection_pairing(&y, &x, &space).unwrap();
        prop_assert_eq!(xy, -yx);
        prop_assert_eq!(intersection_pairing(&x, &x, &space).unwrap(), 0);
    }

    #[test]
    fn transvection_matches_formula((space, c) in space_and_vec(5, 3), n in -5i64..=5) {
        let m = transvection_matrix(&c, n, &space).unwrap();
        for k in 0..space.dimension() {
            let e = space.basis_vector(k);
            let expected = e.checked_add(&c.checked_scale(n * intersection_pairing(&c, &e, &space).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(m.column(k), expected.coords().to_vec());
        }
        prop_assert!(is_symplectic(&m, &space));
    }

    #[test]
    fn power_additivity((space, c) in space_and_vec(4, 2), n in 0u32..=5) {
        let one = transvection_matrix(&c, 1, &space).unwrap();
        prop_assert_eq!(transvection_matrix(&c, n as i64, &space).unwrap(), one.checked_pow(n).unwrap());
    }

    #[test]
    fn words_act_symplectically((space, w) in genus_and_word(5, 12)) {
        let m = word_action(&w, &standard_classes(&space), &space).unwrap();
        prop_assert!(is_symplectic(&m, &space));
        let inv = word_action(&w.inverse(), &standard_classes(&space), &space).unwrap();
        prop_assert!(m.checked_mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn conjugation_covariance((space, w) in genus_and_word(3, 6), h in 0usize..1000) {
        // h is a word in the standard curves; its conjugate of w twists along M_h [c].
        let classes = standard_classes(&space);
        let mut rng = ChaCha8Rng::seed_from_u64(h as u64);
        let hw = {
            use rand::Rng;
            let names: Vec<&String> = classes.keys().collect();
            let len = rng.gen_range(0..6);
            TwistWord::from_pairs((0..len).map(|_| (names[rng.gen_range(0..names.len())].clone(), if rng.gen_bool(0.5) { 1 } else { -1 }))).unwrap()
        };
        let mh = word_action(&hw, &classes, &space).unwrap();
        let mut moved = ClassTable::new();
        for (k, v) in &classes {
            moved.insert(format!("h{k}"), H1Vector::new(mh.checked_mul_vec(v.coords()).unwrap()));
        }
        let conj_word = w.map_curves(|c| format!("h{c}"));
        let lhs = word_action(&conj_word, &moved, &space).unwrap();
        let rhs = mh
            .checked_mul(&word_action(&w, &classes, &space).unwrap())
            .unwrap()
            .checked_mul(&symplectic_inverse(&mh, &space).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn level_ladder((space, w) in genus_and_word(3, 8), m in 2i64..30) {
        let mat = word_action(&w, &standard_classes(&space), &space).unwrap();
        if is_torelli(&mat) {
            prop_assert!(is_level_trivial(&mat, m).unwrap());
        }
        // I + m (M - I) is always level-m trivial
        let mut scaled = IntMatrix::identity(mat.rows());
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                scaled[(i, j)] += m * (mat[(i, j)] - scaled[(i, j)]);
            }
        }
        prop_assert!(is_level_trivial(&scaled, m).unwrap());
    }

    #[test]
    fn twist_image_rules(
        cx in 1u64..6, cy in 0u64..6, xy in 0u64..6, n in prop_oneof![-3i64..=-1, 1i64..=3],
        cls in proptest::collection::vec(-2i64..=2, 12),
    ) {
        let space = SymplecticSpace::new(2).unwrap();
        let mut l = IntersectionLedger::new(space);
        let [c, x, y] = [&cls[0..4], &cls[4..8], &cls[8..12]].map(|v| H1Vector::new(v.to_vec()));
        l.register_curve("c", c.clone()).unwrap();
        l.register_curve("x", x.clone()).unwrap();
        l.register_curve("y", y).unwrap();
        l.set_geometric("c", "x", cx).unwrap();
        l.set_geometric("c", "y", cy).unwrap();
        l.set_geometric("x", "y", xy).unwrap();
        let img = l.derive_twist_image("c", n, "x").unwrap();
        let mirror = l.derive_twist_image("c", -n, "x").unwrap();
        let au = n.unsigned_abs();
        prop_assert_eq!(l.require(&img, "x").unwrap(), au * cx * cx);
        prop_assert_eq!(l.require(&mirror, "x").unwrap(), l.require(&img, "x").unwrap());
        let expected_y = if cy == 0 { xy } else { au * cx * cy };
        prop_assert_eq!(l.require(&img, "y").unwrap(), expected_y);
        let t = transvection_matrix(&c, n, &space).unwrap();
        let expected = t.checked_mul_vec(x.coords()).unwrap();
        prop_assert_eq!(l.class_of(&img).unwrap().coords(), expected.as_slice());
        for curve in l.curves() {
            prop_assert_eq!(curve.separating(), curve.h1_class.as_ref().map(H1Vector::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn face_lengths_sum_to_four_per_vertex(crossings in 1usize..12, seed in any::<u64>()) {
        let r = RibbonConfig::random(crossings, &mut ChaCha8Rng::seed_from_u64(seed));
        r.validate().unwrap();
        let graph = r.fat_graph().unwrap();
        let total: usize = graph.faces().iter().map(Vec::len).sum();
        prop_assert_eq!(total, 4 * graph.num_vertices());
        let rep = verify_filling(&r, 1).unwrap();
        prop_assert_eq!(rep.vertices as i64 - rep.edges as i64 + rep.faces as i64, rep.euler_characteristic);
    }

    #[test]
    fn ribbon_text_round_trips(crossings in 1usize..10, seed in any::<u64>()) {
        let r = RibbonConfig::random(crossings, &mut ChaCha8Rng::seed_from_u64(seed));
        let back = RibbonConfig::parse(&r.to_text(), "round-trip").unwrap();
        prop_assert_eq!(back.to_text(), r.to_text());
    }

    #[test]
    fn transition_agrees_with_trace_oracle(
        n in 1i64..=5,
        letters in proptest::collection::vec((any::<bool>(), 1i64..=2), 1..=7),
        k in 0usize..8,
    ) {
        let mut ls: Vec<(Family, i64)> = letters.into_iter().map(|(c, e)| if c { (Family::C, e) } else { (Family::D, -e) }).collect();
        // both families must appear for the product to be pseudo-Anosov
        ls.push(if ls.iter().all(|l| l.0 == Family::C) { (Family::D, -1) } else { (Family::C, 1) });
        let word = MultitwistWord::new(ls).unwrap();
        let nm = IntMatrix::from_rows(&[vec![n]]).unwrap();
        let config = PennerConfig::new(vec!["c".into()], vec!["d".into()], nm.clone(), 1).unwrap();
        let tw = word.expand(&config);
        let lambda = stretch_factor(&tw, &transition_matrix(&tw, &config).unwrap()).unwrap().lambda();
        let oracle = thurston_oracle(&word, &nm).unwrap();
        prop_assert!((lambda - oracle).abs() <= 1e-6 * oracle, "{} vs {}", lambda, oracle);
        let rotated = thurston_oracle(&word.rotate(k), &nm).unwrap();
        prop_assert!((rotated - oracle).abs() <= 1e-9 * oracle);
        prop_assert!((thurston_oracle(&word, &nm.transpose()).unwrap() - oracle).abs() <= 1e-9 * oracle);
    }

    #[test]
    fn preimage_components_follow_gcd(
        n in 2i64..=12,
        path in proptest::collection::vec((0usize..4, any::<bool>()), 1..10),
    ) {
        let cover = build_cover(n).unwrap();
        let h = homology_basis(&cover).unwrap();
        let curve = BaseCurve::new("random", path).unwrap();
        let lift = lift_curve(&curve, &cover, &h).unwrap();
        prop_assert_eq!(lift.components.len() as i64, expected_components(n, lift.winding));
    }

    #[test]
    fn spreading_bounds_are_ordered(n in 577i64..200_000) {
        let b = spreading_bound(n, 576).unwrap();
        prop_assert!(b.bound_exact.value() <= b.bound_degree_form.value() + 1e-12);
        prop_assert!(576 * b.m_max < n && 576 * (b.m_max + 1) >= n);
        let next = spreading_bound(n + 1, 576).unwrap();
        prop_assert!(next.bound_exact.value() <= b.bound_exact.value());
        prop_assert!(next.bound_degree_form.value() < b.bound_degree_form.value());
    }

    #[test]
    fn level_conjugation_holds(n in 2i64..40, genus in 1usize..=5, seed in any::<u64>()) {
        prop_assert!(check_level_conjugation(n, genus, 4, seed).unwrap());
    }

    #[test]
    fn decimals_round_trip(x in proptest::num::f64::NORMAL) {
        let d = Decimal15::new(x);
        let text = serde_json::to_string(&d).unwrap();
        let back: Decimal15 = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, d);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn certificates_round_trip(n in 577i64..20_000) {
        let cert = build_certificate(n, CertificateMode::Arithmetic).unwrap();
        let text = cert.to_json().unwrap();
        prop_assert_eq!(&CoverCertificate::from_json(&text).unwrap(), &cert);
        prop_assert_eq!(build_certificate(n, CertificateMode::Arithmetic).unwrap().to_json().unwrap(), text);
    }

    #[test]
    fn smaller_stretch_never_weakens_the_verdict(genus in 3i64..10, a in 1.0001f64..3.0, b in 1.0001f64..3.0) {
        let decide = |l: f64| {
            let mut p = MappingClassProfile::closed(genus);
            p.pa_certificate = Some(StretchCertificate::asserted("f", l).unwrap());
            apply_rules(&p, VerdictOptions::default()).unwrap().decision
        };
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if decide(hi) == Decision::NormalGenerator {
            prop_assert_eq!(decide(lo), Decision::NormalGenerator);
        }
    }
}
