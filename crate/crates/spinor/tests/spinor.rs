mod common;

use std::sync::Arc;

use coeff_ring::{qi, TrigScalar};
use common::*;
use courant::{CourantData, GForm, IsoData, Section};
use exterior::{fiber, FiberKind, Form, Sig};
use qla::{linalg, QuadraticLieAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinor::{dirac, pushforward_sign, spin_lift, spinor_action, DiracOperator, Spinor, SpinorEntry, SpinorError};

fn examples() -> Vec<CourantData> {
    vec![
        trivial().build().unwrap(),
        exact_flux(2).build().unwrap(),
        heisenberg(1).build().unwrap(),
        affine_so3().build().unwrap(),
    ]
}

fn so3() -> CourantData {
    affine_so3().build().unwrap()
}

/// `Σ_a ⟨·,·⟩` integrated over the base torus.
fn integral(top: &Form) -> coeff_ring::Q {
    top.top_coefficient().harmonic_part().unwrap()
}

#[test]
fn gamma_of_a_covector_wedges() {
    let data = so3();
    let sig = data.sig();
    let g = data.algebra();
    for a in 0..8 {
        let s = Spinor::basis(sig, g, 0, a, TrigScalar::one(3));
        let u = Section::form(Form::gen(sig, 0), 6);
        assert_eq!(s.gamma(&u), Spinor::basis(sig, g, 0b1, a, TrigScalar::one(3)));
    }
}

#[test]
fn clifford_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for data in examples() {
        let sig = data.sig();
        let g = data.algebra();
        for _ in 0..10 {
            let u = random_section(&mut rng, sig, g.dim());
            let s = random_spinor(&mut rng, sig, g, 3);
            assert_eq!(s.gamma(&u).gamma(&u), s.mul_scalar(&data.pair(&u, &u)));
        }
    }
}

#[test]
fn algebra_action_is_graded_on_every_basis_spinor() {
    let data = so3();
    let sig = data.sig();
    let g = data.algebra();
    let md = g.spinors().unwrap();
    for k in 0..6 {
        let mut r = vec![TrigScalar::zero(3); 6];
        r[k] = TrigScalar::one(3);
        let u = Section::algebra(sig, r);
        for a in 0..8 {
            for mask in [0b0u64, 0b1, 0b11, 0b1011] {
                let s = Spinor::basis(sig, g, mask, a, TrigScalar::one(3));
                let mut expect = Spinor::zero(sig, g);
                for (b, row) in md.gamma_basis(k).iter().enumerate() {
                    let c = &row[a];
                    let c = if mask.count_ones() % 2 == 1 { -c.clone() } else { c.clone() };
                    expect = expect.add(&Spinor::basis(sig, g, mask, b, TrigScalar::constant(3, c)));
                }
                assert_eq!(s.gamma(&u), expect);
            }
        }
    }
}

#[test]
fn dirac_of_abelian_data_is_twisted_de_rham() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 1..=3 {
        let data = exact_flux(n).build().unwrap();
        let sig = data.sig();
        for p in 0..=3 {
            let w = random_form(&mut rng, sig, p, 2);
            let s = Spinor::from_form(&w, data.algebra(), 0);
            let expect = w.d().sub(&data.h().wedge(&w));
            assert_eq!(dirac(&data, &s), Spinor::from_form(&expect, data.algebra(), 0));
        }
    }
    let data = trivial().build().unwrap();
    let vac = Spinor::basis(data.sig(), data.algebra(), 0, 0, TrigScalar::one(2));
    assert!(dirac(&data, &vac).is_zero());
}

#[test]
fn dirac_square_is_a_function() {
    for data in examples() {
        let op = DiracOperator::new(&data);
        let mut common: Option<TrigScalar> = None;
        for b in Spinor::spanning_set(data.sig(), data.algebra()) {
            let (a, w) = b.comps().iter().enumerate().find(|(_, w)| !w.is_zero()).unwrap();
            let mask = *w.terms().keys().next().unwrap();
            let sq = op.apply(&op.apply(&b));
            let f = sq.comp(a).coefficient(mask);
            assert_eq!(sq, b.mul_scalar(&f));
            match &common {
                None => common = Some(f),
                Some(c) => assert_eq!(c, &f),
            }
        }
    }
}

#[test]
fn dirac_generates_the_dorfman_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for data in examples() {
        let op = DiracOperator::new(&data);
        let sig = data.sig();
        let g = data.algebra();
        for _ in 0..8 {
            let u = random_section(&mut rng, sig, g.dim());
            let v = random_section(&mut rng, sig, g.dim());
            let s = random_spinor(&mut rng, sig, g, 3);
            let inner = |t: &Spinor| op.apply(&t.gamma(&u)).add(&op.apply(t).gamma(&u));
            let lhs = inner(&s.gamma(&v)).sub(&inner(&s).gamma(&v));
            assert_eq!(lhs, s.gamma(&data.dorfman(&u, &v)));
        }
    }
}

#[test]
fn spin_lift_intertwines_clifford_action_on_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for data in examples() {
        let sig = data.sig();
        let g = data.algebra();
        for _ in 0..3 {
            let iso = random_iso(&mut rng, &data);
            let lift = spin_lift(g, &iso).unwrap();
            let s = random_spinor(&mut rng, sig, g, 4);
            for k in 0..Section::frame_len(sig, g.dim()) {
                let u = Section::frame(sig, g.dim(), k);
                assert_eq!(lift.apply(&s.gamma(&u)), lift.apply(&s).gamma(&iso.apply(g, &u)));
            }
        }
    }
}

#[test]
fn spin_lift_intertwines_dirac_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for data in examples() {
        let sig = data.sig();
        let g = data.algebra();
        for _ in 0..3 {
            let iso = random_iso(&mut rng, &data);
            let moved = iso.transport(&data).unwrap();
            let lift = spin_lift(g, &iso).unwrap();
            let (d1, d2) = (DiracOperator::new(&data), DiracOperator::new(&moved));
            for _ in 0..3 {
                let s = random_spinor(&mut rng, sig, g, 3);
                assert_eq!(lift.apply(&d1.apply(&s)), d2.apply(&lift.apply(&s)));
            }
        }
    }
}

#[test]
fn spin_lift_preserves_the_pairing_up_to_one_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for data in examples() {
        let sig = data.sig();
        let g = data.algebra();
        let iso = random_iso(&mut rng, &data);
        let lift = spin_lift(g, &iso).unwrap();
        let mut eps = None;
        for _ in 0..10 {
            let s = random_spinor(&mut rng, sig, g, 3);
            let t = random_spinor(&mut rng, sig, g, 3);
            let before = s.pairing(&t);
            let after = lift.apply(&s).pairing(&lift.apply(&t));
            if before.is_zero() {
                assert!(after.is_zero());
                continue;
            }
            let e = if after == before { 1 } else { -1 };
            assert_eq!(after, if e > 0 { before.clone() } else { before.neg() });
            assert_eq!(*eps.get_or_insert(e), e);
        }
    }
}

#[test]
fn elementary_spin_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data = so3();
    let sig = data.sig();
    let g = data.algebra();
    let s = random_spinor(&mut rng, sig, g, 5);

    let id = spin_lift(g, &IsoData::identity(sig, 6)).unwrap();
    assert_eq!(id.apply(&s), s);

    let beta = random_form(&mut rng, sig, 2, 3);
    let b = IsoData::new(g, beta.clone(), linalg::identity(6), GForm::zero(sig, 6)).unwrap();
    let exp = Form::one(sig).sub(&beta).add(&beta.wedge(&beta).scale(&coeff_ring::q(1, 2)));
    assert_eq!(spin_lift(g, &b).unwrap().apply(&s), s.wedge_left(&exp));

    // One term α ⊗ φ: the lift is 1 + x + ½x² with x = −α·φ.
    let alpha = random_form(&mut rng, sig, 1, 2);
    let mut phi_v = vec![TrigScalar::zero(3); 6];
    phi_v[1] = TrigScalar::one(3);
    phi_v[4] = TrigScalar::constant(3, qi(3));
    let phi = GForm::tensor(&alpha, &phi_v);
    let iso = IsoData::new(g, Form::zero(sig), linalg::identity(6), phi).unwrap();
    let x = |t: &Spinor| t.gamma(&Section::algebra(sig, phi_v.clone())).gamma(&Section::form(alpha.clone(), 6)).neg();
    let expect = s.add(&x(&s)).add(&x(&x(&s)).scale(&coeff_ring::q(1, 2)));
    assert_eq!(spin_lift(g, &iso).unwrap().apply(&s), expect);
}

#[test]
fn rotations_have_no_supported_lift() {
    let data = so3();
    let g = data.algebra();
    let mut k = linalg::zeros(6, 6);
    for h in [0, 3] {
        k[h][h + 1] = qi(-1);
        k[h + 1][h] = qi(1);
        k[h + 2][h + 2] = qi(1);
    }
    let iso = IsoData::new(g, Form::zero(data.sig()), k, GForm::zero(data.sig(), 6)).unwrap();
    assert_eq!(spin_lift(g, &iso).unwrap_err(), SpinorError::UnsupportedK);
}

fn symmetric_sign(rank_half: usize) -> i32 {
    if rank_half % 4 <= 1 {
        1
    } else {
        -1
    }
}

#[test]
fn pairing_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut datas = examples();
    datas.push(so3().embed(&n_model(so3().sig())).unwrap());
    for data in datas {
        let sig = data.sig();
        let g = data.algebra();
        let half = sig.num_gens() + g.half_dim();
        let eps = symmetric_sign(half);
        for _ in 0..10 {
            let s = random_spinor(&mut rng, sig, g, 3);
            let t = random_spinor(&mut rng, sig, g, 3);
            let st = s.pairing(&t);
            let ts = t.pairing(&s);
            assert_eq!(ts, if eps > 0 { st.clone() } else { st.neg() });
            let u = random_section(&mut rng, sig, g.dim());
            assert_eq!(s.gamma(&u).pairing(&t.gamma(&u)), st.mul_scalar(&data.pair(&u, &u)));
        }
    }
    // With ω = 1 and an even number of generators the pairing is vol ⊗ ⟨s, s̃⟩.
    let data = so3();
    let (sig, g) = (data.sig(), data.algebra());
    let p = g.spinors().unwrap().pairing();
    for a in 0..8 {
        for b in 0..8 {
            let s = Spinor::basis(sig, g, 0, a, TrigScalar::one(3));
            let t = Spinor::basis(sig, g, sig.full_mask(), b, TrigScalar::one(3));
            assert_eq!(s.pairing(&t), Form::monomial(sig, sig.full_mask(), TrigScalar::constant(3, p[a][b].clone())));
        }
    }
}

#[test]
fn symmetrized_covariant_exterior_part_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for data in examples() {
        let op = DiracOperator::new(&data);
        let sig = data.sig();
        let g = data.algebra();
        let m = sig.num_gens();
        let p = g.spinors().unwrap().pairing().clone();
        for _ in 0..12 {
            let deg = rng.gen_range(0..m);
            let a = rng.gen_range(0..p.len());
            let b = rng.gen_range(0..p.len());
            let s = random_homogeneous(&mut rng, sig, g, deg, a);
            let t = random_homogeneous(&mut rng, sig, g, m - 1 - deg, b);
            let lhs = op.covariant_exterior(&s).pairing(&t).add(&s.pairing(&op.covariant_exterior(&t)));
            let fa = (a.count_ones() % 2) as usize;
            let e = fa * (m - 1 + 1) + deg;
            let core = s.comp(a).transpose().wedge(t.comp(b)).part(m - 1).scale(&p[a][b]).d();
            assert_eq!(lhs, if e % 2 == 0 { core } else { core.neg() });
        }
    }
}

#[test]
fn torus_action_on_spinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for data in examples() {
        let sig = data.sig();
        let g = data.algebra();
        let op = DiracOperator::new(&data);
        for _ in 0..4 {
            let s = random_spinor(&mut rng, sig, g, 4);
            for a in 0..sig.num_fibers() {
                assert!(spinor_action(&data, a, &s).is_zero());
                let lhs = op.apply(&spinor_action(&data, a, &s));
                let rhs = spinor_action(&data, a, &op.apply(&s));
                assert_eq!(lhs, rhs);
            }
        }
    }
    // The action term alone is the Fock lift of ad_{r_1}, cancelled by the vertical connection.
    let data = so3();
    let g = data.algebra();
    let md = g.spinors().unwrap();
    for k in 0..6 {
        let e = g.basis_vector(k);
        let l = md.lift(g, &g.ad(&e)).unwrap();
        for j in 0..6 {
            let comm = linalg::commutator(&l, md.gamma_basis(j));
            assert_eq!(comm, md.gamma(&g.bracket(&e, &g.basis_vector(j))));
        }
        let vac_image = linalg::mul_vec(&l, &md.pairing()[0].iter().map(|_| qi(0)).enumerate().map(|(i, _)| if i == 0 { qi(1) } else { qi(0) }).collect::<Vec<_>>());
        let bivector = g.bivector_of_derivation(&g.ad(&e)).unwrap();
        let by_clifford = linalg::scale(&md.multivector(&bivector), &coeff_ring::q(-1, 2));
        assert_eq!(vac_image, by_clifford.iter().map(|row| row[0].clone()).collect::<Vec<_>>());
    }
}

/// The complex with an extra `θ̃` circle of curvature `2 dx₁∧dx₃`.
fn n_model(sig: &Sig) -> Sig {
    let f = TrigScalar::constant(sig.base_dim(), qi(2));
    sig.extended(vec![fiber("tth1", FiberKind::ThetaTilde, &[(0b101, f)])]).unwrap()
}

#[test]
fn pullback_and_pushforward_commute_with_dirac() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let data = so3();
    let nsig = n_model(data.sig());
    let up = data.embed(&nsig).unwrap();
    let (d, dn) = (DiracOperator::new(&data), DiracOperator::new(&up));
    let g = data.algebra();
    for _ in 0..6 {
        let s = random_spinor(&mut rng, data.sig(), g, 3);
        assert_eq!(d.apply(&s).embed(&nsig).unwrap(), dn.apply(&s.embed(&nsig).unwrap()));
        assert!(s.embed(&nsig).unwrap().pushforward(FiberKind::ThetaTilde).is_zero());
        let t = random_spinor(&mut rng, &nsig, g, 4);
        let pushed = t.pushforward(FiberKind::ThetaTilde);
        assert_eq!(dn.apply(&t).pushforward(FiberKind::ThetaTilde), d.apply(&pushed));
        let u = random_section(&mut rng, data.sig(), 6);
        let u_form = Section { x: exterior::VectorField::zero(data.sig()), ..u };
        let lhs = t.gamma(&u_form.embed(&nsig).unwrap()).pushforward(FiberKind::ThetaTilde);
        assert_eq!(lhs, pushed.gamma(&u_form));
    }
}

#[test]
fn pushforward_calculus() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let data = so3();
    let sig = data.sig().clone();
    let nsig = n_model(&sig);
    let g = data.algebra();
    for _ in 0..100 {
        let p = rng.gen_range(0..=nsig.num_gens());
        let w = random_form(&mut rng, &nsig, p, 2);
        let kind = FiberKind::ThetaTilde;
        assert_eq!(w.d().fiber_integrate(kind), w.fiber_integrate(kind).d());
        let q = rng.gen_range(0..=sig.num_gens());
        let alpha = random_form(&mut rng, &sig, q, 2);
        let pulled = alpha.embed(&nsig).unwrap();
        assert_eq!(pulled.wedge(&w).fiber_integrate(kind), alpha.wedge(&w.fiber_integrate(kind)));
        let s1 = random_spinor(&mut rng, &nsig, g, 3);
        let s2 = random_spinor(&mut rng, &sig, g, 3);
        let down = s1.pushforward(kind).pairing(&s2);
        let up = s1.pairing(&s2.embed(&nsig).unwrap());
        assert_eq!(integral(&down), integral(&up));
    }
    assert_eq!(pushforward_sign(1, 3, 0), -1);
    assert_eq!(pushforward_sign(1, 3, 1), 1);
    assert_eq!(pushforward_sign(2, 3, 0), -1);
    assert_eq!(pushforward_sign(2, 4, 1), -1);
    let w = Form::monomial(&nsig, 0b10000, TrigScalar::one(3));
    let s = Spinor::from_form(&w, &Arc::new(QuadraticLieAlgebra::zero()), 0);
    let e = s.pushforward(FiberKind::ThetaTilde);
    let n = sig.num_gens();
    let expect = if pushforward_sign(1, n, 0) > 0 { Form::one(&sig) } else { Form::one(&sig).neg() };
    assert_eq!(e.comp(0), &expect);
}

#[test]
fn entries_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let data = so3();
    let s = random_spinor(&mut rng, data.sig(), data.algebra(), 6);
    let json = serde_json::to_string(&s.to_entries()).unwrap();
    let entries: Vec<SpinorEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(Spinor::from_entries(data.sig(), data.algebra(), &entries).unwrap(), s);
    let bad = vec![SpinorEntry {
        gens: vec!["dx1".into(), "dx1".into()],
        fock: vec![],
        coeff: TrigScalar::one(3),
    }];
    assert!(Spinor::from_entries(data.sig(), data.algebra(), &bad).is_err());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dirac_is_odd(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = so3();
            let s = random_spinor(&mut rng, data.sig(), data.algebra(), 3).parity_part(0);
            prop_assert!(dirac(&data, &s).parity_part(0).is_zero());
        }

        #[test]
        fn gamma_is_odd_and_linear(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = so3();
            let (sig, g) = (data.sig(), data.algebra());
            let s = random_spinor(&mut rng, sig, g, 3).parity_part(1);
            let u = random_section(&mut rng, sig, 6);
            let v = random_section(&mut rng, sig, 6);
            prop_assert!(s.gamma(&u).parity_part(1).is_zero());
            prop_assert_eq!(s.gamma(&u.add(&v)), s.gamma(&u).add(&s.gamma(&v)));
        }
    }
}
