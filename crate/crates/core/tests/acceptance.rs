//! Acceptance suite: the contractual guarantees of the engine, one test
//! per criterion. Every check is exact — rational arithmetic with zero
//! tolerance — and every randomized check is seeded and reproducible.
//! Each criterion prints a single PASS/FAIL line.

use weilpois::cochain::{
    d_squared_probe, prolong_multivector, BaseComplex, Cochain, Complex, MixedComplex,
    SignConvention, WeilComplex,
};
use weilpois::homology::{apoly_over_real_to_poly, betti, center_basis, h1_report, Truncation};
use weilpois::poisson::PoissonStructure;
use weilpois::poly::{
    prolong_function, prolong_map, prolong_vector_field, APoly, Poly, RatRing, VectorField,
    WeilRing,
};
use weilpois::rat::rint;
use weilpois::verify::{
    check_rng, hamiltonian_cochain, ideal_power_dims, random_apoly, random_element, random_point,
    random_poly, random_multivector, run_suite, VerifyOpts,
};
use weilpois::weil::{AlgebraRef, WeilAlgebra, WeilElement};

const SEED: u64 = 2026;
const CAP: usize = 100_000;
const STD: SignConvention = SignConvention::Standard;

/// Runs a criterion body and prints exactly one PASS/FAIL line.
fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("PASS {name}"),
        Err(e) => {
            println!("FAIL {name}");
            std::panic::resume_unwind(e);
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn test_algebras() -> Vec<AlgebraRef> {
    vec![
        WeilAlgebra::jet(1, 1),
        WeilAlgebra::jet(1, 2),
        WeilAlgebra::jet(2, 2),
    ]
}

fn test_structures() -> Vec<PoissonStructure> {
    vec![PoissonStructure::symplectic(2).unwrap(), PoissonStructure::so3()]
}

#[test]
fn weil_algebras_satisfy_the_defining_axioms() {
    criterion(
        "Weil algebra axioms: jet dimensions, exact nilpotency height, multiplicative augmentation",
        || {
            let mut rng = check_rng(SEED, "acceptance weil axioms");
            for r in 1..=3usize {
                for k in 1..=3usize {
                    let a = WeilAlgebra::try_jet(r, k).unwrap();
                    assert_eq!(a.dim(), binom(r + k, k), "dim of jet({r},{k})");
                    assert_eq!(a.height(), k, "height of jet({r},{k})");
                    // Powers of the maximal ideal: m^k != 0 and m^{k+1} = 0.
                    let dims = ideal_power_dims(&a);
                    assert_eq!(dims.len(), k + 1, "power sequence of jet({r},{k})");
                    assert!(dims[k - 1] > 0, "m^{k} vanished early on jet({r},{k})");
                    assert_eq!(dims[k], 0, "m^{} nonzero on jet({r},{k})", k + 1);
                    // The augmentation is a unital ring map.
                    assert_eq!(WeilElement::one(&a).aug(), rint(1));
                    for _ in 0..200 {
                        let x = random_element(&mut rng, &a);
                        let y = random_element(&mut rng, &a);
                        assert_eq!(
                            x.try_mul(&y).unwrap().aug(),
                            x.aug() * y.aug(),
                            "aug not multiplicative on jet({r},{k})"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn prolongation_is_a_ring_homomorphism_and_functorial() {
    criterion(
        "prolongation of functions is a ring homomorphism and map prolongation is functorial",
        || {
            let mut rng = check_rng(SEED, "acceptance prolong hom");
            let algebras = test_algebras();
            for i in 0..200 {
                let a = &algebras[i % algebras.len()];
                let f = random_poly(&mut rng, 2, 3);
                let g = random_poly(&mut rng, 2, 3);
                let lhs = prolong_function(&f.try_mul(&g).unwrap(), a);
                let rhs = prolong_function(&f, a)
                    .try_mul(&prolong_function(&g, a))
                    .unwrap();
                assert_eq!(lhs, rhs, "(f*g)^A != f^A*g^A on {}", a.name());
                assert_eq!(
                    prolong_function(&(&f + &g), a),
                    prolong_function(&f, a).try_add(&prolong_function(&g, a)).unwrap()
                );
            }
            for i in 0..100 {
                let a = &algebras[i % algebras.len()];
                let g: Vec<Poly> = (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
                let h: Vec<Poly> = (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
                let gh: Vec<Poly> = g.iter().map(|c| c.compose(&h).unwrap()).collect();
                let xi = random_point(&mut rng, a, 2);
                let lhs = prolong_map(&gh, &xi).unwrap();
                let rhs = prolong_map(&g, &prolong_map(&h, &xi).unwrap()).unwrap();
                assert_eq!(lhs.coords(), rhs.coords(), "(g.h)^A != g^A.h^A on {}", a.name());
            }
        },
    );
}

#[test]
fn tilde_extension_is_a_compatible_derivation() {
    criterion(
        "tilde extension of vector fields is A-linear, Leibniz, and agrees on prolonged data",
        || {
            let mut rng = check_rng(SEED, "acceptance tilde extension");
            for a in test_algebras() {
                for _ in 0..200 {
                    let comps: Vec<APoly> =
                        (0..2).map(|_| random_apoly(&mut rng, &a, 2, 2)).collect();
                    let x = weilpois::poly::AVectorField::new(&a, comps).unwrap();
                    let phi = random_apoly(&mut rng, &a, 2, 2);
                    let psi = random_apoly(&mut rng, &a, 2, 2);
                    let elem = random_element(&mut rng, &a);
                    // Leibniz rule.
                    assert_eq!(
                        x.tilde_apply(&phi.try_mul(&psi).unwrap()).unwrap(),
                        x.tilde_apply(&phi)
                            .unwrap()
                            .try_mul(&psi)
                            .unwrap()
                            .try_add(&phi.try_mul(&x.tilde_apply(&psi).unwrap()).unwrap())
                            .unwrap(),
                        "Leibniz fails on {}",
                        a.name()
                    );
                    // A-linearity.
                    assert_eq!(
                        x.tilde_apply(&phi.scale_elem(&elem)).unwrap(),
                        x.tilde_apply(&phi).unwrap().scale_elem(&elem),
                        "A-linearity fails on {}",
                        a.name()
                    );
                    // Agreement on prolonged data: theta^A~(f^A) = (theta f)^A.
                    let f = random_poly(&mut rng, 2, 3);
                    let theta = VectorField::new(
                        (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect(),
                    )
                    .unwrap();
                    assert_eq!(
                        prolong_vector_field(&theta, &a)
                            .tilde_apply(&prolong_function(&f, &a))
                            .unwrap(),
                        prolong_function(&theta.apply(&f).unwrap(), &a),
                        "prolonged action mismatch on {}",
                        a.name()
                    );
                }
            }
        },
    );
}

#[test]
fn hamiltonian_lifts_obey_the_tau_laws() {
    criterion(
        "tau laws: additivity, A-linearity, Leibniz in the argument, and tau of a prolonged \
         function is the prolonged Hamiltonian field",
        || {
            let mut rng = check_rng(SEED, "acceptance tau laws");
            let a = WeilAlgebra::jet(1, 2);
            for pi in test_structures() {
                let nv = pi.nvars();
                for _ in 0..100 {
                    let phi = random_apoly(&mut rng, &a, nv, 2);
                    let psi = random_apoly(&mut rng, &a, nv, 2);
                    let elem = random_element(&mut rng, &a);
                    let t_phi = pi.tau(&phi).unwrap();
                    let t_psi = pi.tau(&psi).unwrap();
                    // tau_{phi+psi} = tau_phi + tau_psi.
                    let t_sum = pi.tau(&phi.try_add(&psi).unwrap()).unwrap();
                    for (i, c) in t_sum.components().iter().enumerate() {
                        assert_eq!(
                            *c,
                            t_phi.components()[i]
                                .try_add(&t_psi.components()[i])
                                .unwrap(),
                            "tau not additive over {}",
                            pi.describe()
                        );
                    }
                    // tau_{a phi} = a tau_phi.
                    let t_scaled = pi.tau(&phi.scale_elem(&elem)).unwrap();
                    for (i, c) in t_scaled.components().iter().enumerate() {
                        assert_eq!(*c, t_phi.components()[i].scale_elem(&elem));
                    }
                    // tau_{phi psi} = phi tau_psi + psi tau_phi.
                    let t_prod = pi.tau(&phi.try_mul(&psi).unwrap()).unwrap();
                    for (i, c) in t_prod.components().iter().enumerate() {
                        let expected = phi
                            .try_mul(&t_psi.components()[i])
                            .unwrap()
                            .try_add(&psi.try_mul(&t_phi.components()[i]).unwrap())
                            .unwrap();
                        assert_eq!(*c, expected, "tau Leibniz fails over {}", pi.describe());
                    }
                    // tau of a prolonged function is the prolonged ad field.
                    let f = random_poly(&mut rng, nv, 2);
                    let via_tau = pi.tau(&prolong_function(&f, &a)).unwrap();
                    let via_ad = pi.prolong_ad_tilde(&f, &a).unwrap();
                    assert_eq!(
                        via_tau.components(),
                        via_ad.components(),
                        "tau(f^A) != [ad f]^A over {}",
                        pi.describe()
                    );
                }
            }
        },
    );
}

#[test]
fn bracket_of_prolongations_is_the_prolonged_bracket() {
    criterion(
        "lifted bracket: {f^A,g^A}_A = ({f,g})^A over both structures and three algebras, \
         and the lifted bracket satisfies the Jacobi identity",
        || {
            let mut rng = check_rng(SEED, "acceptance bracket prolongation");
            for pi in test_structures() {
                let nv = pi.nvars();
                for a in test_algebras() {
                    for _ in 0..200 {
                        let f = random_poly(&mut rng, nv, 3);
                        let g = random_poly(&mut rng, nv, 3);
                        let lhs = pi
                            .bracket_a(&prolong_function(&f, &a), &prolong_function(&g, &a))
                            .unwrap();
                        let rhs = prolong_function(&pi.bracket(&f, &g).unwrap(), &a);
                        assert_eq!(
                            lhs,
                            rhs,
                            "{{f^A,g^A}}_A != ({{f,g}})^A over {} on {}",
                            pi.describe(),
                            a.name()
                        );
                    }
                    for _ in 0..50 {
                        let phi = random_apoly(&mut rng, &a, nv, 2);
                        let psi = random_apoly(&mut rng, &a, nv, 2);
                        let chi = random_apoly(&mut rng, &a, nv, 2);
                        let cyc = pi
                            .bracket_a(&pi.bracket_a(&phi, &psi).unwrap(), &chi)
                            .unwrap()
                            .try_add(
                                &pi.bracket_a(&pi.bracket_a(&psi, &chi).unwrap(), &phi)
                                    .unwrap(),
                            )
                            .unwrap()
                            .try_add(
                                &pi.bracket_a(&pi.bracket_a(&chi, &phi).unwrap(), &psi)
                                    .unwrap(),
                            )
                            .unwrap();
                        assert!(
                            cyc.is_zero(),
                            "Jacobi fails for the lifted bracket over {} on {}",
                            pi.describe(),
                            a.name()
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn prolongation_intertwines_the_differentials() {
    criterion(
        "chain map: prolonging a cochain then differentiating equals differentiating then \
         prolonging, for p in {0,1,2} and coefficients of degree at most 3",
        || {
            let mut rng = check_rng(SEED, "acceptance chain map");
            for pi in test_structures() {
                for a in [WeilAlgebra::jet(1, 1), WeilAlgebra::jet(1, 2)] {
                    let base = BaseComplex::new(pi.clone());
                    let mixed = MixedComplex::new(pi.clone(), &a);
                    for p in 0..=2usize {
                        for _ in 0..50 {
                            let eta = random_multivector(&base, &mut rng, p, 3);
                            let lhs =
                                prolong_multivector(&eta.coboundary(&base, STD).unwrap(), &a);
                            let rhs = prolong_multivector(&eta, &a)
                                .coboundary(&mixed, STD)
                                .unwrap();
                            assert!(
                                lhs.try_sub(&mixed, &rhs).unwrap().is_zero(),
                                "chain map fails at p = {p} over {} on {}",
                                pi.describe(),
                                a.name()
                            );
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn closedness_transfers_across_prolongation() {
    criterion(
        "closed cochains prolong to closed cochains; non-closed cochains stay non-closed \
         with a symbolic witness",
        || {
            let mut rng = check_rng(SEED, "acceptance closedness transfer");
            let a = WeilAlgebra::jet(1, 2);
            for pi in test_structures() {
                let base = BaseComplex::new(pi.clone());
                let mixed = MixedComplex::new(pi.clone(), &a);
                let nv = pi.nvars();
                // Hamiltonian cochains are closed before and after lifting.
                for _ in 0..20 {
                    let h = random_poly(&mut rng, nv, 3);
                    let omega = hamiltonian_cochain(&base, &h).unwrap();
                    assert!(omega.coboundary(&base, STD).unwrap().is_zero());
                    assert!(prolong_multivector(&omega, &a)
                        .coboundary(&mixed, STD)
                        .unwrap()
                        .is_zero());
                }
                // Non-closed cochains: the coboundary stays symbolically
                // nonzero, and the witness component transfers.
                let mut produced = 0;
                let mut attempts = 0;
                while produced < 20 {
                    attempts += 1;
                    assert!(attempts < 500, "could not generate non-closed cochains");
                    let p = attempts % 2;
                    let eta = random_multivector(&base, &mut rng, p, 2);
                    let deta = eta.coboundary(&base, STD).unwrap();
                    if deta.is_zero() {
                        continue;
                    }
                    let lifted_d = prolong_multivector(&eta, &a)
                        .coboundary(&mixed, STD)
                        .unwrap();
                    assert!(!lifted_d.is_zero(), "non-closed cochain lifted to closed");
                    let (tuple, _) = deta.entries().next().unwrap();
                    assert!(
                        lifted_d.coeff(tuple).is_some(),
                        "witness component lost under prolongation"
                    );
                    produced += 1;
                }
            }
        },
    );
}

#[test]
fn cohomologous_cochains_lift_cohomologously() {
    criterion(
        "lifting respects cohomology classes: (eta + d nu)^A - eta^A = d~(nu^A), both \
         orientations, for 50 random pairs per structure",
        || {
            let mut rng = check_rng(SEED, "acceptance cohomologous lifting");
            let a = WeilAlgebra::jet(1, 2);
            for pi in test_structures() {
                let base = BaseComplex::new(pi.clone());
                let mixed = MixedComplex::new(pi.clone(), &a);
                for _ in 0..50 {
                    let eta = random_multivector(&base, &mut rng, 1, 2);
                    let nu = random_multivector(&base, &mut rng, 0, 2);
                    let shifted = eta
                        .try_add(&base, &nu.coboundary(&base, STD).unwrap())
                        .unwrap();
                    let fwd = prolong_multivector(&shifted, &a)
                        .try_sub(&mixed, &prolong_multivector(&eta, &a))
                        .unwrap();
                    let dnua = prolong_multivector(&nu, &a).coboundary(&mixed, STD).unwrap();
                    assert!(
                        fwd.try_sub(&mixed, &dnua).unwrap().is_zero(),
                        "(eta + d nu)^A - eta^A != d~(nu^A) over {}",
                        pi.describe()
                    );
                    let rev = prolong_multivector(&eta, &a)
                        .try_sub(&mixed, &prolong_multivector(&shifted, &a))
                        .unwrap();
                    let dneg = prolong_multivector(&nu.neg(&base), &a)
                        .coboundary(&mixed, STD)
                        .unwrap();
                    assert!(
                        rev.try_sub(&mixed, &dneg).unwrap().is_zero(),
                        "reversed orientation fails over {}",
                        pi.describe()
                    );
                }
            }
        },
    );
}

#[test]
fn differentials_are_nilpotent_and_the_guard_detects_miswiring() {
    criterion(
        "d^2 = 0 symbolically on all multivector cochains (p <= 2, degree <= 3) across all \
         three complexes, on randomized callable probes, and the flipped-sign variant fails",
        || {
            let mut rng = check_rng(SEED, "acceptance nilpotency");
            // Symbolic sweep over every basis cochain.
            for pi in test_structures() {
                let base = BaseComplex::new(pi.clone());
                sweep(&base);
                for a in test_algebras() {
                    sweep(&MixedComplex::new(pi.clone(), &a));
                    sweep(&WeilComplex::new(pi.clone(), &a));
                }
            }
            // 100 randomized callable probes.
            let a = WeilAlgebra::jet(1, 1);
            for pi in test_structures() {
                let base = BaseComplex::new(pi.clone());
                let nv = pi.nvars();
                for _ in 0..20 {
                    let w = random_poly(&mut rng, nv, 2);
                    let cochain = Cochain::<BaseComplex>::callable_with_skew_flag(
                        1,
                        false,
                        move |_, args| args[0].try_mul(&w),
                    );
                    let probe: Vec<Poly> =
                        (0..3).map(|_| random_poly(&mut rng, nv, 2)).collect();
                    assert!(d_squared_probe(&base, &cochain, STD, &probe).unwrap().is_zero());
                }
                let mixed = MixedComplex::new(pi.clone(), &a);
                for p in 0..=1usize {
                    for _ in 0..10 {
                        let omega = Cochain::multi(random_multivector(&mixed, &mut rng, p, 2));
                        let probe: Vec<Poly> =
                            (0..p + 2).map(|_| random_poly(&mut rng, nv, 2)).collect();
                        assert!(d_squared_probe(&mixed, &omega, STD, &probe)
                            .unwrap()
                            .is_zero());
                    }
                }
            }
            let weil = WeilComplex::new(PoissonStructure::symplectic(2).unwrap(), &a);
            for _ in 0..20 {
                let cochain =
                    Cochain::<WeilComplex>::callable_with_skew_flag(1, false, |cx, args| {
                        cx.val_add(&args[0].try_mul(&args[0])?, &args[0])
                    });
                let probe: Vec<APoly> = (0..3).map(|_| random_apoly(&mut rng, &a, 2, 1)).collect();
                assert!(d_squared_probe(&weil, &cochain, STD, &probe).unwrap().is_zero());
            }
            // The miswired sign convention must fail the differential suite.
            let miswired = run_suite(
                "complexes",
                &VerifyOpts {
                    seed: 1,
                    miswire_sign: true,
                },
            )
            .unwrap();
            assert!(
                !miswired.passed,
                "flipped-sign variant unexpectedly passed the differential checks"
            );
            assert!(miswired
                .checks
                .iter()
                .any(|c| !c.passed && c.witness.is_some()));
        },
    );
}

fn sweep<C: weilpois::homology::Expand>(cx: &C) {
    for p in 0..=2usize {
        let basis = weilpois::homology::enumerate_basis(cx, p, 0, 3, CAP).unwrap();
        for b in basis {
            let mv = weilpois::homology::basis_multivector(cx, &b).unwrap();
            let dd = mv
                .coboundary(cx, STD)
                .unwrap()
                .coboundary(cx, STD)
                .unwrap();
            assert!(
                dd.is_zero(),
                "d^2 != 0 on the {} complex at p = {p}",
                cx.kind()
            );
        }
    }
}

#[test]
fn degree_zero_cohomology_is_the_center() {
    criterion(
        "H^0 is the center: A-constants for the lifted symplectic plane, and the Casimir \
         algebra {1, x^2+y^2+z^2} for the rotation structure",
        || {
            // Symplectic plane with dual-number coefficients, degree 3:
            // the center is the A-constants, an R-basis {1, e1}.
            let pi = PoissonStructure::symplectic(2).unwrap();
            let a = WeilAlgebra::jet(1, 1);
            let basis = center_basis(&pi, &a, 3, CAP).unwrap();
            let ring = WeilRing(a.clone());
            assert_eq!(
                basis,
                vec![
                    APoly::constant(ring.clone(), 2, WeilElement::one(&a)),
                    APoly::constant(ring, 2, WeilElement::basis(&a, 1)),
                ],
                "center of the lifted symplectic plane"
            );
            // Rotation structure over the reals, degree 2: {1, x^2+y^2+z^2}.
            let so3 = PoissonStructure::so3();
            let trivial = WeilAlgebra::real();
            let found: Vec<Poly> = center_basis(&so3, &trivial, 2, CAP)
                .unwrap()
                .iter()
                .map(apoly_over_real_to_poly)
                .collect();
            let x = Poly::var(RatRing, 3, 0);
            let y = Poly::var(RatRing, 3, 1);
            let z = Poly::var(RatRing, 3, 2);
            let casimir = &(&(&x * &x) + &(&y * &y)) + &(&z * &z);
            assert_eq!(
                found,
                vec![Poly::one(RatRing, 3), casimir],
                "center of the rotation structure"
            );
        },
    );
}

#[test]
fn first_cohomology_of_the_symplectic_plane_vanishes() {
    criterion(
        "H^1 = 0 for the symplectic plane at degrees 1..4 on all three complexes, with full \
         table (1, 0, 0)",
        || {
            let pi = PoissonStructure::symplectic(2).unwrap();
            let a = WeilAlgebra::jet(1, 1);
            for d in 1..=4usize {
                assert_eq!(
                    h1_report(&BaseComplex::new(pi.clone()), d, STD, CAP)
                        .unwrap()
                        .dimension,
                    0,
                    "base H^1 at degree {d}"
                );
                assert_eq!(
                    h1_report(&MixedComplex::new(pi.clone(), &a), d, STD, CAP)
                        .unwrap()
                        .dimension,
                    0,
                    "mixed H^1 at degree {d}"
                );
                assert_eq!(
                    h1_report(&WeilComplex::new(pi.clone(), &a), d, STD, CAP)
                        .unwrap()
                        .dimension,
                    0,
                    "weil H^1 at degree {d}"
                );
            }
            let table = betti(&BaseComplex::new(pi), Truncation::new(2, 4), STD).unwrap();
            let hs: Vec<usize> = table.table.iter().map(|r| r.h.unwrap()).collect();
            assert_eq!(hs, vec![1, 0, 0], "full symplectic base table");
        },
    );
}

#[test]
fn weil_complex_dimensions_scale_by_the_algebra_dimension() {
    criterion(
        "restriction of scalars: weil-complex kernel and rank dimensions are dim(A) times \
         the base numbers for the constant symplectic structure, degrees up to 3",
        || {
            let pi = PoissonStructure::symplectic(2).unwrap();
            for a in [WeilAlgebra::jet(1, 1), WeilAlgebra::jet(2, 2)] {
                for d in 1..=3usize {
                    let base =
                        betti(&BaseComplex::new(pi.clone()), Truncation::new(2, d), STD).unwrap();
                    let weil = betti(
                        &WeilComplex::new(pi.clone(), &a),
                        Truncation::new(2, d),
                        STD,
                    )
                    .unwrap();
                    for (b, w) in base.table.iter().zip(&weil.table) {
                        assert_eq!(w.dim, a.dim() * b.dim, "dim at p={}, D={d}", b.p);
                        assert_eq!(w.rank, a.dim() * b.rank, "rank at p={}, D={d}", b.p);
                        assert_eq!(w.ker, a.dim() * b.ker, "ker at p={}, D={d}", b.p);
                        assert_eq!(
                            w.h.unwrap(),
                            a.dim() * b.h.unwrap(),
                            "H at p={}, D={d}",
                            b.p
                        );
                    }
                }
            }
        },
    );
}

