use ikl::hecke::*;
use ikl::intertwiner::{psi_i_matrix, solve_upsilon};
use ikl::qgroup::{FockSpace, UAction};
use ikl::weights::{BSeq, RankProfile};
use ikl::Operator;

fn space(k: u32, b: &str) -> FockSpace {
    FockSpace::new(RankProfile::new(k).unwrap(), BSeq::parse(b).unwrap())
}

#[test]
fn group_orders() {
    let fact = |m: usize| (1..=m).product::<usize>();
    for m in 1..=4 {
        assert_eq!(SignedPermGroup::new(CoxType::B, m).len(), (1 << m) * fact(m));
        assert_eq!(SignedPermGroup::new(CoxType::D, m).len(), (1 << (m - 1)) * fact(m));
    }
    // longest element of B_3 has length 9
    let b3 = SignedPermGroup::new(CoxType::B, 3);
    assert_eq!(b3.length.iter().max(), Some(&9));
}

#[test]
fn algebra_relations() {
    for m in 1..=4 {
        assert!(HeckeAlgebra::type_b(m, Laurent2::p(1)).check_relations().is_empty());
        assert!(HeckeAlgebra::type_b(m, Laurent2::one()).check_relations().is_empty());
        assert!(HeckeAlgebra::type_d(m).check_relations().is_empty());
    }
    // the length-4 braid relation really is needed in type B
    let b2 = HeckeAlgebra::type_b(2, Laurent2::p(1));
    let h010 = b2.mul(&b2.mul(&b2.gen(0), &b2.gen(1)), &b2.gen(0));
    let h101 = b2.mul(&b2.mul(&b2.gen(1), &b2.gen(0)), &b2.gen(1));
    assert_ne!(h010, h101);
}

#[test]
fn rho_sends_h0_to_conjugate() {
    let d = HeckeAlgebra::type_d(3);
    let b1 = HeckeAlgebra::type_b(3, Laurent2::one());
    let img = rho_embed(&d, &b1, &d.gen(0));
    let expect = b1.mul(&b1.mul(&b1.gen(0), &b1.gen(1)), &b1.gen(0));
    assert_eq!(img, expect);
    // rho respects the braid relation between H_0 and H_2 in D_3
    let lhs = rho_embed(&d, &b1, &d.mul(&d.mul(&d.gen(0), &d.gen(2)), &d.gen(0)));
    let rhs = rho_embed(&d, &b1, &d.mul(&d.mul(&d.gen(2), &d.gen(0)), &d.gen(2)));
    assert_eq!(lhs, rhs);
}

#[test]
fn matrix_relations_per_flavor() {
    for k in 1..=2 {
        for b in ["0", "00", "000", "0000"] {
            for fl in [Flavor::B1, Flavor::D] {
                let bad = check_matrix_relations(&space(k, b), fl).unwrap();
                assert!(bad.is_empty(), "k={} b={} {:?} {:?}", k, b, fl, bad);
            }
        }
    }
    for b in ["1", "11", "111", "1111"] {
        let bad = check_matrix_relations(&space(2, b), Flavor::C).unwrap();
        assert!(bad.is_empty(), "b={} {:?}", b, bad);
    }
}

#[test]
fn type_d_generator_is_conjugated_h1() {
    for b in ["00", "000"] {
        let s = space(2, b);
        let b1 = gen_matrices(&s, Flavor::B1).unwrap();
        let d = gen_matrices(&s, Flavor::D).unwrap();
        assert_eq!(d[0], &(&b1[0] * &b1[1]) * &b1[0]);
    }
}

#[test]
fn flavor_domains() {
    assert!(gen_matrices(&space(2, "11"), Flavor::D).is_err());
    assert!(gen_matrices(&space(2, "00"), Flavor::C).is_err());
    assert!(gen_matrices(&space(3, "11"), Flavor::C).is_err());
    assert!(gen_matrices(&space(2, "01"), Flavor::B1).is_err());
    assert!(gen_matrices(&space(2, "0"), Flavor::D).unwrap().is_empty());
}

fn check_bar(s: &FockSpace, fl: Flavor) {
    let (r, dist) = perm_bar(s, fl).unwrap();
    let n = s.dim();
    assert_eq!(&r * &r.bar(), Operator::identity(n));
    let gens = gen_matrices(s, fl).unwrap();
    for (i, g) in gens.iter().enumerate() {
        // bar(x H) = bar(x) bar(H) with bar(H) = H^-1
        assert_eq!(&r * &g.bar(), &gen_inverse(g, fl, i) * &r, "{:?} H{}", fl, i);
    }
    for (i, d) in dist.iter().enumerate() {
        if fl.is_antidominant(s.word(i)) {
            assert_eq!(*d, 0);
            assert_eq!(r.col(i).len(), 1);
        }
    }
}

#[test]
fn permutation_bar_properties() {
    for k in 1..=2 {
        for b in ["0", "00", "000"] {
            check_bar(&space(k, b), Flavor::B1);
            check_bar(&space(k, b), Flavor::D);
        }
    }
    for b in ["1", "11", "111"] {
        check_bar(&space(2, b), Flavor::C);
    }
}

#[test]
fn permutation_bar_equals_coideal_bar() {
    for k in 1..=3 {
        for b in ["0", "00", "000"] {
            let s = space(k, b);
            let psi_i = psi_i_matrix(&solve_upsilon(&UAction::new(s.clone())).unwrap());
            assert_eq!(perm_bar(&s, Flavor::D).unwrap().0, psi_i, "k={} b={}", k, b);
            assert_eq!(perm_bar(&s, Flavor::B1).unwrap().0, psi_i, "k={} b={}", k, b);
        }
    }
    for k in [2, 4] {
        for b in ["1", "11"] {
            let s = space(k, b);
            let psi_i = psi_i_matrix(&solve_upsilon(&UAction::new(s.clone())).unwrap());
            assert_eq!(perm_bar(&s, Flavor::C).unwrap().0, psi_i, "k={} b={}", k, b);
        }
    }
}

#[test]
fn laurent2_specializes() {
    let x = &Laurent2::p(1) + &Laurent2::q(-1);
    assert_eq!(
        x.specialize(1),
        ikl::LaurentPoly::q_pow(1) + ikl::LaurentPoly::q_pow(-1)
    );
    assert_eq!(
        x.bar().specialize(0),
        ikl::LaurentPoly::one() + ikl::LaurentPoly::q_pow(1)
    );
}
