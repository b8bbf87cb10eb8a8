//! Closed forms for `GL_2(F_q)` against brute-force character tables.

use glq_core::gl2::{self, Gl2Kind, Gl2Rep, Subcase, W1Status};
use glq_core::oracle::Oracle;

#[test]
fn full_cross_check_small_q() {
    for q in [3u64, 5, 7] {
        let report = Oracle::new(q).unwrap().verify(true).unwrap();
        assert!(report.ok(), "q={q}: {:#?}", report.mismatches);
        assert_eq!(report.self_dual.len() as u64, q + 3);
        assert!(report.self_dual.iter().all(|c| c.frobenius_schur == 1));
    }
}

#[test]
fn cross_check_q9() {
    let report = Oracle::new(9).unwrap().verify(false).unwrap();
    assert!(report.ok(), "{:#?}", report.mismatches);
}

#[test]
fn steinberg_is_one_at_diag_minus_one_one() {
    for q in [3u64, 5, 7] {
        let o = Oracle::new(q).unwrap();
        let st = Gl2Rep::steinberg(q, 0).unwrap();
        assert_eq!(o.involution_values(&o.character(&st).unwrap()).unwrap(), (1, q as i64));
    }
}

#[test]
fn determinants() {
    // Frozen from the monomial and eigenvalue computations: the pair {1, mu}
    // has trivial determinant, inverse pairs have det = mu o det, and every
    // self-dual cuspidal has det = mu o det.
    for q in [3u64, 5, 7, 9] {
        let o = Oracle::new(q).unwrap();
        let mu = (q - 1) / 2;
        for rep in gl2::enumerate_self_dual_reps(q).unwrap() {
            let nu = o.det_exponent_monomial(&rep).unwrap();
            assert_eq!(nu, o.det_exponent_eigen(&o.character(&rep).unwrap()).unwrap(), "{rep}");
            let expected = match rep.subcase().unwrap() {
                Subcase::PsTrivialQuadratic | Subcase::SteinbergQuadratic => 0,
                Subcase::OneDim => match rep.kind() {
                    Gl2Kind::OneDim { psi } => psi,
                    _ => unreachable!(),
                },
                _ => mu,
            };
            assert_eq!(nu, expected, "q={q} {rep}");
            let d = o.decide(&rep).unwrap();
            assert_ne!(d.w1, W1Status::Unknown);
            assert_eq!(d.w1 == W1Status::Trivial, expected == 0);
        }
    }
}

#[test]
fn general_determinant_formula() {
    for q in [3u64, 5, 7] {
        let o = Oracle::new(q).unwrap();
        for rep in gl2::enumerate_all_reps(q).unwrap() {
            if let Some(nu) = rep.det_exponent() {
                assert_eq!(o.det_exponent_monomial(&rep).unwrap(), nu, "{rep}");
            }
        }
    }
}

#[test]
fn rejects_wrong_field() {
    let o = Oracle::new(5).unwrap();
    assert!(o.character(&Gl2Rep::one_dim(7, 0).unwrap()).is_err());
    assert!(Oracle::new(11).is_err());
}
