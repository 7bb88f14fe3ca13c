mod common;

use common::{build, nonzero_scalar, operator, scalar, terms, TermSpec};
use proptest::prelude::*;
use soliton_core::curve::{curve_data, derivative_identity_check, genus, CurveData};
use soliton_core::diffring::{
    integrate_exact, parse, substitute, DiffPoly, Ring, RingRef, SubstMap,
};
use soliton_core::format::json;
use soliton_core::gaussian::GaussianRational;
use soliton_core::numeric::{eval, Env, JetProvider, KdvSoliton, NlsProvider, NlsSolution};
use soliton_core::spectral::{
    conditions, conditions_alternative, decompose, derive_soliton, ConstantsPolicy, LambdaPoly,
};

fn uv() -> RingRef {
    Ring::jets(&["u", "v"])
}

fn poly() -> impl Strategy<Value = Vec<TermSpec>> {
    terms(2, 3, 4, 0)
}

fn lambda_poly(ring: &RingRef, coeffs: &[Vec<TermSpec>]) -> LambdaPoly {
    LambdaPoly::from_ascending(ring, coeffs.iter().map(|t| build(ring, t)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivation_law(a in poly(), b in poly()) {
        let r = uv();
        let (p, q) = (build(&r, &a), build(&r, &b));
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_linear(a in poly(), b in poly(), x in scalar(), y in scalar()) {
        let r = uv();
        let (p, q) = (build(&r, &a), build(&r, &b));
        let lhs = (&p.scale(&x) + &q.scale(&y)).derivative();
        let rhs = &p.derivative().scale(&x) + &q.derivative().scale(&y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integrate_inverts_derivative(a in poly()) {
        let r = uv();
        let p = build(&r, &a);
        let dp = p.derivative();
        let ip = integrate_exact(&dp).unwrap();
        prop_assert_eq!(ip.derivative(), dp);
        prop_assert!((&ip - &p).is_scalar());
    }

    #[test]
    fn bracket_identity(a in poly(), b in poly()) {
        let r = uv();
        let (psi, phi) = (build(&r, &a), build(&r, &b));
        let br = psi.bracket(&phi);
        prop_assert_eq!(&br, &(&(&psi.derivative() * &phi) + &(&psi * &phi.derivative()).scale(&GaussianRational::from_int(2))));
        // φ⟨ψ,φ⟩ = D(ψφ²)
        prop_assert_eq!(&phi * &br, (&psi * &(&phi * &phi)).derivative());
    }

    #[test]
    fn substitution_commutes_with_derivative(a in poly(), su in terms(1, 2, 3, 0), sv in terms(1, 2, 3, 0)) {
        let r = uv();
        let target = Ring::jets(&["w"]);
        let p = build(&r, &a);
        let mut map = SubstMap::new();
        map.insert("u".into(), build(&target, &su));
        map.insert("v".into(), build(&target, &sv));
        let lhs = substitute(&p.derivative(), &map, &target).unwrap();
        let rhs = substitute(&p, &map, &target).unwrap().derivative();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_ignores_construction_order(a in poly(), b in poly(), c in poly()) {
        let r = uv();
        let (p, q, s) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(build(&r, &rev), p);
    }

    #[test]
    fn text_and_json_round_trip(a in poly(), cs in prop::collection::vec(poly(), 1..4)) {
        let r = uv();
        let p = build(&r, &a);
        prop_assert_eq!(parse(&r, &p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(json::diffpoly_from(&r, &json::diffpoly(&p)).unwrap(), p);
        let l = lambda_poly(&r, &cs);
        prop_assert_eq!(LambdaPoly::parse(&r, &l.to_string()).unwrap(), l.clone());
        prop_assert_eq!(json::lambda_poly_from(&r, &json::lambda_poly(&l)).unwrap(), l);
    }

    #[test]
    fn master_identity_on_random_pairs(op in operator(1..=3), cs in prop::collection::vec(terms(2, 1, 2, 0), 1..=4)) {
        let r = uv();
        let op = op.build(&r);
        let phi = lambda_poly(&r, &cs);
        let (ok, w) = derivative_identity_check(&op, &phi).unwrap();
        prop_assert!(ok, "witness {}", w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn condition_forms_agree(op in operator(1..=3), n in 0usize..=3, a0 in nonzero_scalar()) {
        let r = uv();
        let op = op.build(&r);
        let der = derive_soliton(&op, n, a0, &ConstantsPolicy::Zero).unwrap();
        prop_assert_eq!(conditions(&der, &op).unwrap(), conditions_alternative(&der, &op).unwrap());
        let (ok, _) = derivative_identity_check(&op, &der.phi()).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn curve_structure(op in operator(1..=2), n in 0usize..=4, a0 in nonzero_scalar()) {
        let r = uv();
        let op = op.build(&r);
        let der = derive_soliton(&op, n, a0, &ConstantsPolicy::Zero).unwrap();
        let data = curve_data(&op, &der).unwrap();
        let d = op.d();
        prop_assert_eq!(data.degree, 2 * n + d);
        prop_assert_eq!(&data.leading, &CurveData::expected_leading(&op, &der));
        for k in n + d..2 * n + d {
            prop_assert!(data.h.coeff(k).is_zero());
        }
        prop_assert_eq!(data.genus, genus(n, d));
    }

    #[test]
    fn general_solution_decomposes(
        op in operator(1..=2),
        n in 1usize..=3,
        a0 in nonzero_scalar(),
        cs in prop::collection::vec(scalar(), 3),
    ) {
        let r = uv();
        let op = op.build(&r);
        let consts = cs[..n].to_vec();
        let der = derive_soliton(&op, n, a0.clone(), &ConstantsPolicy::Explicit(consts.clone())).unwrap();
        let normalized = derive_soliton(&op, n, a0.clone(), &ConstantsPolicy::Zero).unwrap();
        let k = decompose(&der, &normalized).unwrap();
        prop_assert_eq!(&k[0], &GaussianRational::from_int(1));
        let inv = a0.inv().unwrap();
        for j in 1..=n {
            prop_assert_eq!(&k[j], &(&consts[j - 1] * &inv));
        }
    }
}

/// Centered difference of `p` against `D p`, within the leading truncation
/// term h²/6·|D³p| plus roundoff.
fn fd_agrees(p: &DiffPoly, provider: &dyn JetProvider, x: f64) -> Result<(), String> {
    let h = 1e-4;
    let at = |q: &DiffPoly, x: f64| eval(q, &Env::at(provider, x)).unwrap();
    let fd = (at(p, x + h) - at(p, x - h)) / (2.0 * h);
    let exact = at(&p.derivative(), x);
    let third = at(&p.nth_derivative(3), x).norm();
    let tol = h * h * third / 3.0 + 1e-10 * (1.0 + at(p, x).norm() + exact.norm());
    if (fd - exact).norm() <= tol {
        Ok(())
    } else {
        Err(format!("{fd} vs {exact} (tol {tol:e})"))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbolic_derivative_matches_finite_differences(
        a in terms(1, 3, 3, 0),
        b in terms(2, 3, 3, 0),
        x in -3.0f64..3.0,
    ) {
        let kdv = Ring::jets(&["q"]);
        let p = build(&kdv, &a);
        let kdv_ok = fd_agrees(&p, &KdvSoliton::new(1.0).unwrap(), x);
        prop_assert!(kdv_ok.is_ok(), "{:?}", kdv_ok);

        let nls = Ring::jets(&["q", "qbar"]);
        let p = build(&nls, &b);
        let bright = NlsProvider::new(NlsSolution::Bright { omega: 0.5 }, 1).unwrap();
        let bright_ok = fd_agrees(&p, &bright, x);
        prop_assert!(bright_ok.is_ok(), "{:?}", bright_ok);
    }
}

#[test]
fn providers_are_self_consistent() {
    let h = 1e-4;
    let providers: Vec<Box<dyn JetProvider>> = vec![
        Box::new(KdvSoliton::new(0.5).unwrap()),
        Box::new(KdvSoliton::new(2.0).unwrap()),
        Box::new(NlsProvider::new(NlsSolution::PlaneWave { c: 1.0, k: 0.7 }, -1).unwrap()),
        Box::new(NlsProvider::new(NlsSolution::Bright { omega: 0.5 }, 1).unwrap()),
    ];
    for p in &providers {
        for x in [-1.3, 0.0, 0.4, 2.2] {
            let (lo, mid, hi) = (p.base_jets(x - h), p.base_jets(x), p.base_jets(x + h));
            for (name, jets) in &mid {
                for k in 0..6 {
                    let fd = (hi[name][k] - lo[name][k]) / (2.0 * h);
                    let err = (fd - jets[k + 1]).norm();
                    assert!(
                        err <= 1e-5 * (1.0 + jets[k + 1].norm()),
                        "{} {name} k={k} x={x}: {err}",
                        p.name()
                    );
                }
            }
        }
    }
}
