use ikl::exactalg::q_minus_qinv;
use ikl::qgroup::{
    check_relations, check_theta_intertwines, kron, psi_matrix, theta_matrix, w0_word, FockSpace, UAction,
};
use ikl::weights::{BSeq, RankProfile};
use ikl::{LaurentPoly, Operator};

fn space(k: u32, b: &str) -> FockSpace {
    FockSpace::new(RankProfile::new(k).unwrap(), BSeq::parse(b).unwrap())
}

#[test]
fn sl_relations_on_two_slots() {
    for k in 1..=3 {
        for b in ["00", "01", "10", "11"] {
            let u = UAction::new(space(k, b));
            for r in check_relations(&u) {
                assert!(r.passed(), "k={} b={} {:?}", k, b, r);
            }
        }
    }
}

#[test]
fn psi_is_compatible_involution() {
    for (k, b) in [
        (1, "000"),
        (2, "00"),
        (2, "01"),
        (2, "10"),
        (2, "011"),
        (2, "101"),
        (3, "01"),
        (1, "110"),
    ] {
        let u = UAction::new(space(k, b));
        let psi = psi_matrix(&u.space);
        assert_eq!(&psi * &psi.bar(), u.identity(), "psi^2 k={} b={}", k, b);
        for i in u.space.profile().index_set() {
            assert_eq!(&psi * &u.e[&i].bar(), &u.e[&i] * &psi, "E k={} b={}", k, b);
            assert_eq!(&psi * &u.f[&i].bar(), &u.f[&i] * &psi, "F k={} b={}", k, b);
            assert_eq!(&psi * &u.k[&i].bar(), &u.kinv[&i] * &psi, "K k={} b={}", k, b);
        }
    }
}

#[test]
fn theta_intertwines_coproducts() {
    for (k, b, j) in [(1, "00", 1), (2, "01", 1), (2, "001", 2), (2, "011", 1), (3, "10", 1)] {
        let bad = check_theta_intertwines(&space(k, b), j);
        assert!(bad.is_empty(), "k={} b={} j={} {:?}", k, b, j, bad);
    }
}

#[test]
fn theta_is_unitriangular_and_involutive() {
    let s = space(2, "00");
    let th = theta_matrix(&s, 1);
    assert_eq!(&th * &th.bar(), Operator::identity(s.dim()));
    for j in 0..s.dim() {
        assert!(th.get(j, j).is_one());
    }
    // rank-one piece on V (x) V for each simple root
    let u1 = UAction::new(space(2, "0"));
    for i in [-1, 1] {
        let piece = kron(&u1.e[&i], &u1.f[&i]).scale(&q_minus_qinv());
        for (r, c, v) in piece.entries() {
            assert_eq!(&th.get(r, c), v);
        }
    }
}

#[test]
fn braid_inverse_and_relations() {
    for (k, b) in [(2, "00"), (2, "01"), (3, "0"), (3, "01")] {
        let u = UAction::new(space(k, b));
        let idx = u.space.profile().index_set();
        for &i in &idx {
            assert_eq!(&u.braid(i) * &u.braid_inverse(i), u.identity());
        }
        for w in idx.windows(2) {
            let (i, j) = (w[0], w[1]);
            assert_eq!(u.braid_word(&[i, j, i]), u.braid_word(&[j, i, j]), "k={} b={}", k, b);
        }
    }
}

#[test]
fn longest_braid_on_natural_module() {
    for k in 1..=4u32 {
        let u = UAction::new(space(k, "0"));
        let t = u.braid_word(&w0_word(u.space.profile()));
        // v_a -> (-q)^(s - a) v_{-a}, with s the top letter
        for a in u.space.profile().letters() {
            let src = u.space.index_of(&[a]).unwrap();
            let dst = u.space.index_of(&[-a]).unwrap();
            let e = (k as i32 - a) / 2;
            let expect = LaurentPoly::signed_q_pow(e % 2 == 1, e);
            assert_eq!(t.get(dst, src), expect, "k={} a={}", k, a);
            assert_eq!(t.col(src).len(), 1);
        }
    }
}

#[test]
fn longest_braid_is_word_independent() {
    // two reduced words of w0 for sl_4
    let u = UAction::new(space(3, "01"));
    let w1 = w0_word(u.space.profile());
    let w2 = vec![-2, 0, 2, -2, 0, -2];
    assert_eq!(u.braid_word(&w1), u.braid_word(&w2));
}
