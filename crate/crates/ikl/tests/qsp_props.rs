use ikl::exactalg::qfactorial;
use ikl::qgroup::{FockSpace, UAction};
use ikl::qsp::{check_coideal, check_irelations, IAction, IGen};
use ikl::weights::{BSeq, RankProfile};
use ikl::Operator;

fn space(k: u32, b: &str) -> FockSpace {
    FockSpace::new(RankProfile::new(k).unwrap(), BSeq::parse(b).unwrap())
}

#[test]
fn coideal_relations_on_small_shapes() {
    for k in 1..=4 {
        for b in ["0", "1", "00", "01", "10", "11", "001"] {
            let ia = IAction::new(space(k, b));
            let reps = check_irelations(&ia);
            assert!(!reps.is_empty());
            for r in reps {
                assert!(r.passed(), "k={} b={} {:?}", k, b, r);
            }
        }
    }
}

#[test]
fn serre_relations_detect_a_broken_generator() {
    // e_i without its lowering part is the plain E_i, which is not in the coideal
    let mut ia = IAction::new(space(2, "00"));
    let plain = ia.u.e[&1].clone();
    ia.e.insert(1, plain);
    let failed: Vec<String> = check_irelations(&ia)
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| r.relation)
        .collect();
    assert!(failed.iter().any(|r| r.starts_with("serre1")), "{:?}", failed);
    assert!(failed.iter().any(|r| r.starts_with("serre2")), "{:?}", failed);
}

#[test]
fn divided_powers_match_powers_over_factorials() {
    for (k, b) in [(2, "00"), (2, "01"), (3, "00"), (3, "10"), (4, "00")] {
        let ia = IAction::new(space(k, b));
        for i in ia.space().profile().iota_index_set() {
            for g in [IGen::E(i), IGen::F(i)] {
                let x = ia.gen(g).clone();
                for a in 0..=3u32 {
                    let lhs = ia.divided(g, a).scale(&qfactorial(a));
                    let rhs = if a == 0 { Operator::identity(ia.dim()) } else { x.pow(a) };
                    assert_eq!(lhs, rhs, "k={} b={} {:?} a={}", k, b, g, a);
                }
            }
        }
    }
}

#[test]
fn generators_are_coideal() {
    for k in 1..=3 {
        for (x, y) in [("0", "0"), ("0", "1"), ("1", "0"), ("01", "1")] {
            let bad = check_coideal(&space(k, x), &space(k, y));
            assert!(bad.is_empty(), "k={} {} {} {:?}", k, x, y, bad);
        }
    }
}

#[test]
fn t_only_in_odd_family() {
    assert!(IAction::new(space(2, "0")).t.is_none());
    assert!(IAction::new(space(3, "0")).t.is_some());
    let u = UAction::new(space(1, "0"));
    let ia = IAction::from_u(u);
    assert!(ia.generators().iter().any(|(g, _)| *g == IGen::T));
}
