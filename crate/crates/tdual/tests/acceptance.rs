//! The ten acceptance criteria, each checked exactly and reported on one line.
//!
//! Run with `cargo test -p tdual --test acceptance -- --nocapture` to see the report.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use coeff_ring::{qi, TauPoly, TrigScalar, Q};
use common::{package, random_form, random_gform, random_iso, random_section, random_spinor, EXAMPLES};
use courant::examples::{affine_so3, exact_flux, trivial};
use courant::{
    ad_preimage, bracket_wedge, slot_of, BaseData, DecompRecord, EndForm, GForm, Section,
    EQUATION_SLOTS,
};
use exterior::{fiber, wedge_sign, FiberKind, Form, Sig, Signature};
use num_traits::{One, Zero};
use qla::{linalg, QuadraticLieAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinor::{pushforward_sign, spin_lift, DiracOperator, Spinor};
use tdual::{dualize, verify_duality, Duality};

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("{what} took {spent:.2?}, limit {limit:.0?}"))
}

fn compatibility_suite() -> Outcome {
    let start = Instant::now();
    let bases = [exact_flux(1), exact_flux(2), exact_flux(3), trivial(), affine_so3()];
    for base in &bases {
        let data = base.build().map_err(|e| e.to_string())?;
        let mut rep = data.check_compatibility();
        rep.extend(data.check_action_compat());
        ensure(rep.all_zero(), || format!("nonzero residuals: {}", rep.nonzero().join(", ")))?;
    }
    within(start, Duration::from_secs(10), "the compatibility suite")
}

fn exact_case() -> Outcome {
    for n in 1..=3 {
        let pkg = dualize(&exact_flux(n), None).map_err(|e| e.to_string())?;
        let sig = pkg.dual.sig();
        let twist = Signature::curvature_form(sig, sig.fiber_gen(0));
        ensure(twist == Form::monomial(sig, 0b11, TrigScalar::constant(2, qi(n))), || {
            format!("n = {n}: dual curvature {twist}")
        })?;
        ensure(pkg.dual.h().is_zero(), || format!("n = {n}: dual flux {}", pkg.dual.h()))?;
        let rep = verify_duality(&pkg).map_err(|e| e.to_string())?;
        ensure(rep.all_zero(), || format!("n = {n}: {}", rep.residuals))?;
        ensure(rep.determinant == TrigScalar::one(2), || format!("n = {n}: determinant {}", rep.determinant))?;
    }
    Ok(())
}

fn dirac_intertwining() -> Outcome {
    for name in EXAMPLES {
        let start = Instant::now();
        let d = Duality::new(package(name)).map_err(|e| e.to_string())?;
        let pkg = d.package();
        let (sig, g) = (pkg.source.sig(), pkg.source.algebra());
        let spanning = Spinor::spanning_set(sig, g);
        let lower = 1usize << (sig.num_fibers() + g.half_dim());
        ensure(spanning.len() >= lower, || format!("{name}: spanning set too small"))?;
        let applied: Vec<Spinor> = spanning.iter().map(|s| d.source_dirac().apply(s)).collect();
        let images = d.tau_all(&spanning);
        let images_of_applied = d.tau_all(&applied);
        for (t, td) in images.into_iter().zip(images_of_applied) {
            let (t, td) = (t.map_err(|e| e.to_string())?, td.map_err(|e| e.to_string())?);
            ensure(d.dual_dirac().apply(&t) == td, || format!("{name}: đ̃τ ≠ τđ"))?;
        }
        within(start, Duration::from_secs(60), name)?;
    }
    Ok(())
}

fn rho_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for name in EXAMPLES {
        let d = Duality::new(package(name)).map_err(|e| e.to_string())?;
        let (src, dual) = (&d.package().source, &d.package().dual);
        let n = src.algebra().dim();
        for _ in 0..100 {
            let u = random_section(&mut rng, src.sig(), n);
            let v = random_section(&mut rng, src.sig(), n);
            let ru = d.rho(&u).map_err(|e| e.to_string())?;
            let rv = d.rho(&v).map_err(|e| e.to_string())?;
            ensure(dual.pair(&ru, &rv) == src.pair(&u, &v), || format!("{name}: pairing"))?;
            let bracket = d.rho(&src.dorfman(&u, &v)).map_err(|e| e.to_string())?;
            ensure(bracket == dual.dorfman(&ru, &rv), || format!("{name}: bracket"))?;
        }
    }
    Ok(())
}

fn spin_lift_compatibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for name in EXAMPLES {
        let pkg = package(name);
        let g = pkg.source.algebra().clone();
        let upstairs = pkg.source.embed(&pkg.correspondence).map_err(|e| e.to_string())?;
        let mut isos = vec![pkg.f.clone()];
        isos.push(random_iso(&mut rng, &upstairs));
        for iso in &isos {
            let lift = spin_lift(&g, iso).map_err(|e| e.to_string())?;
            let sig = &pkg.correspondence;
            for _ in 0..2 {
                let s = random_spinor(&mut rng, sig, &g, 4);
                let lifted = lift.apply(&s);
                for k in 0..Section::frame_len(sig, g.dim()) {
                    let u = Section::frame(sig, g.dim(), k);
                    let lhs = lift.apply(&s.gamma(&u));
                    ensure(lhs == lifted.gamma(&iso.apply(&g, &u)), || format!("{name}: frame section {k}"))?;
                }
            }
        }
    }
    Ok(())
}

fn dirac_generates_bracket() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    for name in EXAMPLES {
        let pkg = package(name);
        for data in [&pkg.source, &pkg.dual] {
            let op = DiracOperator::new(data);
            let (sig, g) = (data.sig(), data.algebra());
            for _ in 0..50 {
                let u = random_section(&mut rng, sig, g.dim());
                let v = random_section(&mut rng, sig, g.dim());
                let s = random_spinor(&mut rng, sig, g, 3);
                let inner = |t: &Spinor| op.apply(&t.gamma(&u)).add(&op.apply(t).gamma(&u));
                let lhs = inner(&s.gamma(&v)).sub(&inner(&s).gamma(&v));
                ensure(lhs == s.gamma(&data.dorfman(&u, &v)), || format!("{name}: bracket on {}", sig.num_gens()))?;
            }
        }
    }
    Ok(())
}

/// `+1` when the pairing on a module of rank `n` is symmetric, `−1` when skew.
fn expected_symmetry(n: usize) -> i32 {
    if n % 4 <= 1 {
        1
    } else {
        -1
    }
}

fn pairing_normalization() -> Outcome {
    let algebras = [
        QuadraticLieAlgebra::hyperbolic(1),
        QuadraticLieAlgebra::hyperbolic(2),
        QuadraticLieAlgebra::hyperbolic(3),
        QuadraticLieAlgebra::so3_ltimes_dual(),
    ];
    for g in algebras {
        let md = g.spinors().map_err(|e| e.to_string())?;
        let h = md.half_dim();
        let p = md.pairing();
        let det = linalg::det(p);
        let expected = if h == 1 { -Q::one() } else { Q::one() };
        ensure(det == expected, || format!("half dimension {h}: determinant {det}"))?;
        let eps = expected_symmetry(h);
        for a in 0..md.size() {
            for b in 0..md.size() {
                let sym = if eps > 0 { p[b][a].clone() } else { -p[b][a].clone() };
                ensure(p[a][b] == sym, || format!("half dimension {h}: symmetry at ({a}, {b})"))?;
                let same = md.parity(a) == md.parity(b);
                // Even rank: the two parity parts are orthogonal. Odd rank: each is isotropic.
                let must_vanish = if h % 2 == 0 { !same } else { same };
                ensure(!must_vanish || p[a][b].is_zero(), || format!("half dimension {h}: parity at ({a}, {b})"))?;
            }
        }
    }
    // On forms tensored with the Fock module the rank is the number of generators plus h.
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    for name in EXAMPLES {
        let pkg = package(name);
        for data in [pkg.source.clone(), pkg.source.embed(&pkg.correspondence).map_err(|e| e.to_string())?] {
            let (sig, g) = (data.sig(), data.algebra());
            let eps = expected_symmetry(sig.num_gens() + g.half_dim());
            for _ in 0..5 {
                let s = random_spinor(&mut rng, sig, g, 3);
                let t = random_spinor(&mut rng, sig, g, 3);
                let (st, ts) = (s.pairing(&t), t.pairing(&s));
                ensure(ts == if eps > 0 { st.clone() } else { st.neg() }, || format!("{name}: spinor pairing symmetry"))?;
            }
        }
    }
    Ok(())
}

fn integral(top: &Form) -> Result<Q, String> {
    top.top_coefficient().harmonic_part().map_err(|e| e.to_string())
}

/// The integral over a total space oriented by the remaining generators followed by the fibers of `kind`.
fn fibered_integral(top: &Form, kind: FiberKind) -> Result<Q, String> {
    let sig = top.sig();
    let fibers = sig.gens_of_kind(kind).iter().fold(0u64, |m, &g| m | 1 << g);
    let value = integral(top)?;
    Ok(if wedge_sign(sig.full_mask() & !fibers, fibers) > 0 { value } else { -value })
}

fn pushforward_calculus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(80);
    let pkg = package("affine-so3");
    let (sig, nsig) = (pkg.source.sig().clone(), pkg.correspondence.clone());
    let g = pkg.source.algebra();
    let kind = FiberKind::Theta;
    let target = nsig.without_kind(kind);
    for _ in 0..100 {
        let p = rng.gen_range(0..=nsig.num_gens());
        let w = random_form(&mut rng, &nsig, p, 2);
        ensure(w.d().fiber_integrate(kind) == w.fiber_integrate(kind).d(), || "Stokes".into())?;
        let q = rng.gen_range(0..=target.num_gens());
        let alpha = random_form(&mut rng, &target, q, 2);
        let pulled = alpha.embed(&nsig).map_err(|e| e.to_string())?;
        let projection = pulled.wedge(&w).fiber_integrate(kind);
        ensure(projection == alpha.wedge(&w.fiber_integrate(kind)), || "projection formula".into())?;
        let s1 = random_spinor(&mut rng, &nsig, g, 3);
        let s2 = random_spinor(&mut rng, &target, g, 3);
        let down = s1.pushforward(kind).pairing(&s2);
        let up = s1.pairing(&s2.embed(&nsig).map_err(|e| e.to_string())?);
        ensure(integral(&down)? == fibered_integral(&up, kind)?, || "adjointness".into())?;
    }
    // The sign on θ₁ ⊗ s for the vacuum and for an odd Fock vector.
    let n = target.num_gens();
    for a in [0usize, 1] {
        let one = TrigScalar::one(sig.base_dim());
        let s = Spinor::basis(&nsig, g, 1 << pkg.theta(0), a, one.clone());
        let pushed = s.pushforward(kind);
        let sign = pushforward_sign(1, n, g.spinors().unwrap().parity(a));
        let expected = (n + g.spinors().unwrap().parity(a) as usize) % 2 == 0;
        ensure((sign > 0) == expected, || format!("sign for Fock index {a}"))?;
        let unit = Form::constant(&target, Q::one());
        let want = Spinor::from_form(&if sign > 0 { unit.clone() } else { unit.neg() }, g, a);
        ensure(pushed == want, || format!("pushforward of θ₁ ⊗ s_{a}"))?;
    }
    Ok(())
}

fn second_relation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let base = affine_so3().build().map_err(|e| e.to_string())?;
    let g = base.algebra().clone();
    for _ in 0..50 {
        let data1 = random_iso(&mut rng, &base).transport(&base).map_err(|e| e.to_string())?;
        let sig = data1.sig();
        let k = common::random_so3_automorphism(&mut rng, &g, true);
        let kinv = linalg::inverse(&k).unwrap();
        let phi = random_gform(&mut rng, sig, g.dim(), 1, 3);
        let omega2 = data1
            .connection()
            .mul_const_left(&k)
            .mul_const_right(&kinv)
            .sub(&EndForm::ad(&g, &phi));
        let curv = omega2.d().add(&omega2.wedge(&omega2));
        let r2 = ad_preimage(&g, &curv).map_err(|e| e.to_string())?;
        let d2phi = phi.d().add(&omega2.apply(&phi));
        let residual = data1
            .r()
            .apply_const(&k)
            .sub(&r2)
            .sub(&d2phi)
            .sub(&bracket_wedge(&g, &phi, &phi).scale(&Q::new(1.into(), 2.into())));
        ensure(residual.is_zero(), || format!("residual {residual}"))?;
    }
    Ok(())
}

fn cos1(dim: usize) -> TrigScalar {
    let mut k = vec![0; dim];
    k[0] = 1;
    TrigScalar::cos(&k, TauPoly::one())
}

fn flat_sig(base_dim: usize, fibers: usize) -> Sig {
    let gens = (1..=fibers).map(|i| fiber(&format!("th{i}"), FiberKind::Theta, &[])).collect();
    Signature::new(base_dim, gens).unwrap()
}

fn rational_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&c| qi(c)).collect()
}

/// A zero record on a flat bundle over `T⁴` whose single perturbed field should
/// violate exactly the named equation.
fn corrupted(slot: &str) -> DecompRecord {
    let hyp = |h: usize| Arc::new(QuadraticLieAlgebra::hyperbolic(h));
    let fibers = match slot {
        "h1-derivative" | "r0-covariance" | "r0-commutator" => 2,
        "h0-derivative" | "r0-cyclic" => 3,
        "r0-quartic" => 4,
        _ => 1,
    };
    let sig = flat_sig(4, fibers);
    let g = match slot {
        "h3-closure" | "h2-derivative" | "h1-derivative" | "h0-derivative" => Arc::new(QuadraticLieAlgebra::zero()),
        "r0-commutator" => hyp(2),
        _ => hyp(1),
    };
    let c = cos1(4);
    let dx = |i: usize| Form::gen(&sig, i);
    let e = rational_vec(&[1, 0]);
    let f = rational_vec(&[0, 1]);
    let flip = vec![rational_vec(&[1, 0]), rational_vec(&[0, -1])];
    let mut rec = DecompRecord::zero(&sig, g);
    match slot {
        "h3-closure" => rec.h3 = dx(1).wedge(&dx(2)).wedge(&dx(3)).mul_scalar(&c),
        "h2-derivative" => rec.h2[0] = dx(1).wedge(&dx(2)).mul_scalar(&c),
        "h1-derivative" => rec.set_h1(0, 1, dx(1).mul_scalar(&c)),
        "h0-derivative" => rec.set_h0(0, 1, 2, Form::scalar(&sig, c)),
        "r0-quartic" => {
            rec.set_r0(0, 1, GForm::constant(&sig, &e));
            rec.set_r0(2, 3, GForm::constant(&sig, &f));
        }
        "r2-bianchi" => rec.r2 = GForm::tensor_const(&dx(1).wedge(&dx(2)).mul_scalar(&c), &e),
        "r1-bianchi" => rec.r1[0] = GForm::tensor_const(&dx(1).mul_scalar(&c), &e),
        "r0-covariance" => rec.set_r0(0, 1, GForm::tensor_const(&Form::scalar(&sig, c), &e)),
        "r0-cyclic" => {
            rec.actions[2] = EndForm::constant(&sig, &flip);
            rec.set_r0(0, 1, GForm::constant(&sig, &e));
        }
        "curvature-split" => rec.omega_b = EndForm::tensor(&dx(1).mul_scalar(&c), &flip),
        "r0-commutator" => {
            // Skew matrices G⁻¹S with S antisymmetric that do not commute.
            let skew = |i: usize, j: usize| {
                let mut s = linalg::zeros(4, 4);
                s[i][j] = Q::one();
                s[j][i] = -Q::one();
                linalg::mul(rec.g.gram_inverse(), &s)
            };
            rec.actions[0] = EndForm::constant(&sig, &skew(0, 1));
            rec.actions[1] = EndForm::constant(&sig, &skew(0, 2));
        }
        "action-covariance" => rec.actions[0] = EndForm::tensor(&Form::scalar(&sig, c), &flip),
        other => panic!("unknown slot {other}"),
    }
    rec
}

fn decomposition_suite() -> Outcome {
    let mut bases: Vec<BaseData> = EXAMPLES.iter().map(|n| common::base(n)).collect();
    bases.push(three_fiber_so3());
    let mut seen = Vec::new();
    for base in &bases {
        let data = base.build().map_err(|e| e.to_string())?;
        let rep = DecompRecord::from_data(&data).check_equations();
        ensure(rep.all_zero(), || format!("built data: {}", rep.nonzero().join(", ")))?;
        seen.extend(rep.residuals.iter().map(|r| slot_of(&r.name).to_string()));
    }
    for slot in EQUATION_SLOTS {
        ensure(seen.iter().any(|s| s == slot), || format!("slot {slot} never evaluated"))?;
        let rep = corrupted(slot).check_equations();
        let bad = rep.nonzero();
        ensure(!bad.is_empty(), || format!("corrupting {slot} went unnoticed"))?;
        ensure(bad.iter().all(|n| slot_of(n) == slot), || format!("corrupting {slot} flagged {}", bad.join(", ")))?;
    }
    Ok(())
}

/// Three flat circles over `T³` with constant sections, so that every equation appears.
fn three_fiber_so3() -> BaseData {
    let sig = Signature::new(3, (1..=3).map(|i| fiber(&format!("th{i}"), FiberKind::Theta, &[])).collect()).unwrap();
    let g = Arc::new(QuadraticLieAlgebra::so3_ltimes_dual());
    let mk = |v: [i64; 6]| v.iter().map(|&c| TrigScalar::constant(3, qi(c))).collect::<Vec<_>>();
    BaseData {
        omega_b: EndForm::zero(&sig, 6),
        r: vec![mk([1, 0, 0, 0, 1, 0]), mk([0, 1, 0, 0, 0, 2]), mk([0, 0, 1, 1, 0, 0])],
        h3: Form::zero(&sig),
        h2: vec![Form::zero(&sig); 3],
        c: None,
        g,
        sig,
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("compatibility of built examples", compatibility_suite),
        ("exact-case duality", exact_case),
        ("Dirac intertwining on a spanning set", dirac_intertwining),
        ("ρ preserves pairing and bracket", rho_structure),
        ("spin lift intertwines Clifford actions", spin_lift_compatibility),
        ("Dirac operator generates the bracket", dirac_generates_bracket),
        ("pairing normalization", pairing_normalization),
        ("pushforward calculus", pushforward_calculus),
        ("curvature relation of isomorphisms", second_relation),
        ("decomposition equations and corruptions", decomposition_suite),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let spent = start.elapsed();
        match &outcome {
            Ok(()) => println!("criterion {}: {name} ... PASS ({spent:.2?})", i + 1),
            Err(why) => {
                println!("criterion {}: {name} ... FAIL ({spent:.2?}): {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
