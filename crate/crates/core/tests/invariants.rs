mod common;

use common::*;
use moddata::constructors::{
    classical_gauss_sum, cocycle_omega, radford_datum, semion_datum, trivial_datum, verify_3cocycle,
};
use moddata::extension::{
    extension_family, factor_check, homogeneous_matrices, make_extension, FactorMode,
    DEFAULT_MAX_GROUP_ORDER,
};
use moddata::galois::{
    all_actions, fusion_symbol, index_action, integral_invariants, is_galois_datum,
    odd_sign_analysis,
};
use moddata::{arith, jacobi_symbol, sqrt_integer, CycloNum, Matrix, ModularDatum};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn distributive_across_fields((x, y) in cyclo_pair(), w in cyclo()) {
        prop_assert_eq!(&(&x + &y) * &w, &(&x * &w) + &(&y * &w));
    }

    #[test]
    fn inverse_is_two_sided(x in cyclo()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert!((&inv * &x).is_one());
    }

    #[test]
    fn galois_composes((x, q, r) in cyclo_with_units()) {
        let m = x.conductor() as i64;
        let lhs = x.galois_apply(r).unwrap().galois_apply(q).unwrap();
        prop_assert_eq!(lhs, x.galois_apply((q * r).rem_euclid(m)).unwrap());
    }

    #[test]
    fn lifting_preserves_equality((x, y) in cyclo_pair(), k in 1u32..=5) {
        let big = x.conductor() * k;
        let (lx, ly) = (x.lift_conductor(big).unwrap(), y.lift_conductor(big).unwrap());
        prop_assert_eq!(x == y, lx == ly);
        prop_assert_eq!(&lx, &x);
    }

    /// Arbitrary small data never make the axiom checker panic.
    #[test]
    fn validation_is_total(
        m in 1usize..=3,
        entries in prop::collection::vec((-2i64..=2, 0u32..4, 0i64..12), 9),
        twists in prop::collection::vec(0i64..12, 3),
        swap in any::<bool>(),
    ) {
        let cell = |k: usize| {
            let (a, kind, e) = entries[k];
            match kind {
                0 => int(a),
                1 => z(12, e),
                2 => &int(a) * &z(4, e),
                _ => frac(a, 2),
            }
        };
        let s: Vec<Vec<CycloNum>> = (0..m)
            .map(|i| (0..m).map(|j| cell(i.min(j) * 3 + i.max(j))).collect())
            .collect();
        let t = (0..m).map(|i| z(12, twists[i])).collect();
        let mut star: Vec<usize> = (0..m).collect();
        if swap && m == 3 {
            star.swap(1, 2);
        }
        let labels = (0..m).map(|i| i.to_string()).collect();
        if let Ok(d) = ModularDatum::new(labels, 0, star, s, t) {
            let report = d.validate_axioms();
            prop_assert_eq!(report.checks.len(), 5);
        }
    }
}

#[test]
fn square_roots_of_integers() {
    for n in 1..=30u64 {
        let r = sqrt_integer(n);
        assert_eq!(&r * &r, int(n as i64), "n = {}", n);
    }
}

#[test]
fn root_of_unity_orders() {
    for m in 1..=24u32 {
        for k in 0..m {
            let want = m as u64 / arith::gcd(m as u64, k as u64);
            assert_eq!(z(m, k as i64).root_of_unity_order(), Some(want), "z{}^{}", m, k);
        }
    }
}

#[test]
fn jacobi_matches_euler_criterion() {
    for p in (3..=50u64).filter(|&p| arith::factorize(p).len() == 1 && arith::factorize(p)[0].1 == 1) {
        for q in -60..60 {
            assert_eq!(jacobi_symbol(q, p).unwrap(), euler_legendre(q, p), "({}|{})", q, p);
        }
    }
}

#[test]
fn s_squared_and_gauss_product() {
    for (name, d) in examples() {
        let rep = d.derive_report().unwrap();
        let s2 = d.s_matrix().mul(d.s_matrix()).unwrap();
        let c = d.c_matrix();
        assert_eq!(s2, c.scale(&rep.n), "{}", name);
        assert!(c.mul(&c).unwrap().is_identity(), "{}", name);
        assert!(d.s_matrix().inverse().is_ok(), "{}", name);
        let no = d.dim(d.unit());
        assert_eq!(&rep.g * &rep.g_rec, &rep.n * &(no * no), "{}", name);
    }
}

#[test]
fn products_with_trivial_and_exponents() {
    let t = trivial_datum();
    for (name, d) in examples() {
        let p = d.kronecker_product(&t).unwrap();
        assert_eq!(p.size(), d.size());
        for i in 0..d.size() {
            assert_eq!(p.t(i), d.t(i), "{}", name);
            for j in 0..d.size() {
                assert_eq!(p.s(i, j), d.s(i, j), "{}", name);
            }
        }
    }
    let pairs = [
        (semion_datum(), radford_datum(3, 1).unwrap()),
        (radford_datum(3, 1).unwrap(), radford_datum(5, 1).unwrap()),
        (semion_datum(), semion_datum()),
    ];
    for (a, b) in pairs {
        let (na, nb) = (a.derive_report().unwrap().exponent, b.derive_report().unwrap().exponent);
        let p = a.kronecker_product(&b).unwrap();
        assert_eq!(p.derive_report().unwrap().exponent, arith::lcm(na, nb));
    }
}

#[test]
fn evaluation_columns_distinct_and_s_from_fusion() {
    for (name, d) in examples() {
        let table = d.checked().unwrap().fusion().clone();
        let m = d.size();
        let col = |k: usize| -> Vec<CycloNum> {
            (0..m).map(|i| d.s(i, k).div(d.dim(i)).unwrap()).collect()
        };
        for a in 0..m {
            for b in a + 1..m {
                assert_ne!(col(a), col(b), "{}: columns {} and {}", name, a, b);
            }
        }
        let o = d.unit();
        for i in 0..m {
            for j in 0..m {
                let mut acc = int(0);
                for k in 0..m {
                    let nk = table.get(i, k, j) as i64;
                    if nk != 0 {
                        acc = acc + &(&int(nk) * d.dim(k)) * d.t(k);
                    }
                }
                let lhs = &(d.t(o).div(&(d.t(i) * d.t(j))).unwrap()) * &acc;
                assert_eq!(&lhs, d.s(i, j), "{}: s[{},{}]", name, i, j);
            }
        }
    }
}

#[test]
fn galois_actions_compose_and_commute_with_c() {
    for (name, d) in examples() {
        let n_o = integral_invariants(&d).unwrap().normalized_exponent;
        let actions = all_actions(&d).unwrap();
        let c = d.c_matrix();
        for a in &actions {
            let p = a.matrix();
            assert_eq!(p.mul(&c).unwrap(), c.mul(&p).unwrap(), "{}", name);
            for b in &actions {
                let ab = index_action(&d, (a.q * b.q % n_o.max(1)) as i64).unwrap();
                assert_eq!(a.compose(b), ab.perm, "{}: q = {}, q' = {}", name, a.q, b.q);
            }
        }
    }
}

#[test]
fn galois_squares_fix_gauss_sum() {
    for (name, d) in examples() {
        if !is_galois_datum(&d).unwrap() {
            continue;
        }
        let big_n = integral_invariants(&d).unwrap().exponent;
        let g = d.gauss_sum();
        for q in arith::units(big_n) {
            let q2 = (q * q % big_n) as i64;
            assert_eq!(g.galois_apply_mod(q2, big_n).unwrap(), g, "{}: q = {}", name, q);
        }
    }
}

#[test]
fn fusion_symbol_cocycle_closes() {
    for (name, d) in examples() {
        let big_n = integral_invariants(&d).unwrap().exponent;
        assert!(fusion_symbol(&d, 1).unwrap().is_one(), "{}", name);
        for q in arith::units(big_n) {
            let qi = arith::mod_inverse(q as i64, big_n).unwrap() as i64;
            let f = fusion_symbol(&d, q as i64).unwrap();
            let back = fusion_symbol(&d, qi).unwrap().galois_apply_mod(q as i64, big_n).unwrap();
            assert!((&f * &back).is_one(), "{}: q = {}", name, q);
        }
    }
}

#[test]
fn odd_sign_agrees_with_fusion_symbol() {
    let mut data: Vec<(String, ModularDatum)> = examples()
        .into_iter()
        .map(|(n, d)| (n.to_string(), d))
        .collect();
    for n in [9u64, 11, 13, 15] {
        data.push((format!("radford-{}", n), radford_datum(n, 1).unwrap()));
    }
    let mut seen = 0;
    for (name, d) in data {
        if integral_invariants(&d).unwrap().exponent % 2 == 0 {
            continue;
        }
        let (v, report) = odd_sign_analysis(&d).unwrap();
        assert!(report.all_passed(), "{}: {}", name, report);
        let to = d.t(d.unit());
        let f = fusion_symbol(&d, -1).unwrap();
        assert!((&(&int(v as i64) * &(to * to)) * &f).is_one(), "{}", name);
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn extension_relations_and_projective_implication() {
    for (name, d) in examples() {
        if d.size() > 5 {
            continue;
        }
        let n_o = integral_invariants(&d).unwrap().normalized_exponent;
        let projective = factor_check(d.s_matrix(), &d.t_matrix(), n_o, FactorMode::Projective, DEFAULT_MAX_GROUP_ORDER)
            .unwrap()
            .projective_factors;
        for e in extension_family(&d).unwrap() {
            let (s, t) = homogeneous_matrices(&e).unwrap();
            let s2 = s.mul(&s).unwrap();
            assert!(s2.mul(&s2).unwrap().is_identity(), "{}", name);
            assert_eq!(t.mul(&s).unwrap().pow(3).unwrap(), s2, "{}", name);
            let lin = factor_check(&s, &t, n_o, FactorMode::Linear, DEFAULT_MAX_GROUP_ORDER).unwrap();
            assert!(!lin.linear_factors || lin.projective_factors);
            if lin.linear_factors {
                assert!(projective, "{}", name);
            }
        }
    }
}

#[test]
fn kernel_monotonicity_on_semion() {
    let d = semion_datum();
    for e in extension_family(&d).unwrap() {
        let (s, t) = homogeneous_matrices(&e).unwrap();
        let at8 = factor_check(&s, &t, 8, FactorMode::Linear, DEFAULT_MAX_GROUP_ORDER).unwrap();
        let at24 = factor_check(&s, &t, 24, FactorMode::Linear, DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert!(!at8.linear_factors || at24.linear_factors);
        assert!(at24.linear_factors);
    }
}

#[test]
fn rescaled_extensions_have_equal_homogeneous_matrices() {
    let base = radford_datum(3, 1).unwrap();
    let mu = &int(3) * &z(4, 1);
    let zeta = z(5, 2);
    let scaled = rescaled(&base, &mu, &zeta);
    for e in extension_family(&base).unwrap() {
        let f = make_extension(&scaled, &mu * e.rank(), e.ell().clone()).unwrap();
        let (a, b) = homogeneous_matrices(&e).unwrap();
        let (c, d) = homogeneous_matrices(&f).unwrap();
        assert_eq!(a, c);
        assert_eq!(b, d);
    }
}

#[test]
fn radford_family_properties() {
    for n in (3..=15u64).step_by(2) {
        let d = radford_datum(n, 1).unwrap();
        assert!(is_galois_datum(&d).unwrap(), "n = {}", n);
        let (v, _) = odd_sign_analysis(&d).unwrap();
        assert_eq!(v, if n % 4 == 1 { 1 } else { -1 }, "n = {}", n);
    }
    for n in [3u64, 5, 7] {
        let d = radford_datum(n, 1).unwrap();
        let r = factor_check(d.s_matrix(), &d.t_matrix(), n, FactorMode::Projective, DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert!(r.projective_factors, "n = {}", n);
    }
}

#[test]
fn gauss_times_conjugate_table() {
    for n in 1..=16u64 {
        let g = gauss_oracle(n);
        assert_eq!(g, classical_gauss_sum(n, 1).unwrap());
        let conj = g.galois_apply(-1).unwrap();
        let want = match n % 4 {
            0 => 2 * n as i64,
            2 => 0,
            _ => n as i64,
        };
        assert_eq!(&g * &conj, int(want), "n = {}", n);
    }
}

#[test]
fn semion_is_galois_and_projective_at_four() {
    let d = semion_datum();
    assert!(is_galois_datum(&d).unwrap());
    let r = factor_check(d.s_matrix(), &d.t_matrix(), 4, FactorMode::Projective, 1000).unwrap();
    assert!(r.projective_factors);
}

#[test]
fn cocycles_of_cyclic_groups() {
    for n in 1..=6usize {
        for e in 0..n as i64 {
            assert_eq!(verify_3cocycle(&cocycle_omega(n, e)), Ok(()), "n = {}, e = {}", n, e);
        }
    }
}

#[test]
fn permutation_matrices_invert_by_transpose() {
    let d = radford_datum(7, 1).unwrap();
    for a in all_actions(&d).unwrap() {
        let p = a.matrix();
        assert!(p.mul(&p.transpose()).unwrap().is_identity());
        assert_eq!(p.inverse().unwrap(), p.transpose());
    }
    assert!(Matrix::identity(3).is_identity());
}
