//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Runs without the libtest harness so the lines are always shown.

mod common;

use std::time::{Duration, Instant};

use common::{nonzero_scalar, operator, scalar, OpSpec};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use soliton_core::curve::{
    curve_data, derivative_identity_check, genus, hamiltonian, kdv_integral_form, CurveData,
};
use soliton_core::diffring::{parse, DiffPoly, Ring, RingRef, VarSpec};
use soliton_core::gaussian::GaussianRational;
use soliton_core::models::{KdvModel, NlsModel};
use soliton_core::numeric::{
    abel_sum_check, constancy_check, curve_membership, curve_points, AbelOptions, Grid,
    JetProvider, KdvSoliton, NlsProvider, NlsSolution, VerifyReport,
};
use soliton_core::spectral::{
    conditions, conditions_alternative, decompose, derive_soliton, ConstantsPolicy, LambdaPoly,
};

type Outcome = Result<(), String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seeded(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config::default(),
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn sample<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

fn uv() -> RingRef {
    Ring::jets(&["u", "v"])
}

fn kdv_densities() -> Outcome {
    let m = KdvModel::new();
    let f = m.densities(2).map_err(|e| e.to_string())?;
    let printed = ["q", "q'' + 3 q^2", "q[4] + 10 q q'' + 5 q'^2 + 10 q^3"];
    for (k, text) in printed.iter().enumerate() {
        let want = parse(&m.ring, text).unwrap();
        check(f[k] == want, || {
            format!("F_{k} = {} differs from {want}", f[k])
        })?;
    }
    Ok(())
}

fn kdv_solitons_and_curves() -> Outcome {
    let m = KdvModel::new();
    let r = &m.ring;
    let lp = |s: &str| LambdaPoly::parse(r, s).unwrap();
    let phis = [
        "1/2",
        "2 lambda + q",
        "8 lambda^2 + 4 q lambda + q'' + 3 q^2",
        "32 lambda^3 + 16 q lambda^2 + 4 (q'' + 3 q^2) lambda + q[4] + 10 q q'' + 5 q'^2 + 10 q^3",
    ];
    let mut errors = Vec::new();
    for (n, text) in phis.iter().enumerate() {
        let got = m.derive(n).map_err(|e| e.to_string())?.phi();
        if got != lp(text) {
            errors.push(format!("phi_{n} = {got}"));
        }
    }
    let h = |n: usize| hamiltonian(&m.operator, &m.derive(n).unwrap().phi()).unwrap();
    if h(0) != lp("-1/2 (lambda - q)") {
        errors.push(format!("H_0 = {}", h(0)));
    }
    let h1 = "-8 lambda^3 + 2 lambda (q'' + 3 q^2) + (q (q'' + 3 q^2) - (1/2 q'^2 + q^3))";
    if h(1) != lp(h1) {
        errors.push(format!("H_1 = {}", h(1)));
    }
    // H_2 = -128λ⁵ + 8λ²F_2 + 4λK_2 + L_2 as displayed
    let f2 = parse(r, "q[4] + 10 q q'' + 5 q'^2 + 10 q^3").unwrap();
    let k2 = parse(
        r,
        "q q[4] - q' q[3] + 10 q^2 q[2] + 1/2 q[2]^2 + 10 q q'^2 + 25/2 q^4",
    )
    .unwrap();
    let l2 = parse(
        r,
        "q[4] (q[2] + 3 q^2) - q[3] (1/2 q[3] + 6 q q') + q[2] (8 q[2] q + 6 q'^2 + 30 q^3) + 18 q^5",
    )
    .unwrap();
    let h2 = h(2);
    let eighth = GaussianRational::from_frac(1, 8);
    let quarter = GaussianRational::from_frac(1, 4);
    if h2.coeff(5) != DiffPoly::int(r, -128) {
        errors.push(format!("H_2 leading {}", h2.coeff(5)));
    }
    if h2.coeff(2).scale(&eighth) != f2 {
        errors.push(format!("F_2 constituent {}", h2.coeff(2).scale(&eighth)));
    }
    let k2_got = h2.coeff(1).scale(&quarter);
    if k2_got != k2 {
        errors.push(format!(
            "K_2 constituent differs: computed - printed = {}",
            &k2_got - &k2
        ));
    }
    if h2.coeff(0) != l2 {
        errors.push(format!("L_2 constituent {}", h2.coeff(0)));
    }
    check(errors.is_empty(), || errors.join("; "))
}

fn nls_solitons() -> Outcome {
    let m = NlsModel::new(1).map_err(|e| e.to_string())?;
    let printed = [
        "2 lambda + E",
        "2 lambda^2 + E lambda + (3/4 E^2 + F)",
        "2 lambda^3 + E lambda^2 + (3/4 E^2 + F) lambda + (5/8 E^3 + 3/2 F E - 1/4 E'')",
        "2 lambda^4 + E lambda^3 + (3/4 E^2 + F) lambda^2 + (5/8 E^3 + 3/2 F E - 1/4 E'') lambda \
         + (35/64 E^4 + 15/8 E^2 F + 3/4 F^2 - 5/16 E'^2 - 5/8 E E'' - 1/4 F'')",
    ];
    for (i, text) in printed.iter().enumerate() {
        let n = i + 1;
        let got = m.soliton_table(n).map_err(|e| e.to_string())?.phi();
        let want = LambdaPoly::parse(&m.ef_ring, text).unwrap();
        check(got == want, || format!("phi_{n} = {got}"))?;
    }
    Ok(())
}

fn e_calculus() -> Outcome {
    let m = NlsModel::new(1).map_err(|e| e.to_string())?;
    let ids = m.e_calculus_check().map_err(|e| e.to_string())?;
    check(ids.len() == 3, || format!("{} identities", ids.len()))?;
    for id in &ids {
        check(id.holds(), || {
            format!("{}: {} != {}", id.name, id.lhs, id.rhs)
        })?;
    }
    Ok(())
}

fn nls_reductions() -> Outcome {
    for sigma in [1i8, -1] {
        let m = NlsModel::new(sigma).map_err(|e| e.to_string())?;
        let s = if sigma == 1 { "" } else { "-" };
        let o = if sigma == 1 { "-" } else { "+" };
        let printed = [
            (
                1,
                "stationary-NLS",
                format!("{s}q qbar q + 1/2 q'' - omega q"),
            ),
            (1, "phase-flux", format!("qbar q' - qbar' q {o} 1/2 Omega")),
            (
                2,
                "mKdV",
                format!(
                    "q''' {} 6 q qbar q' - omega2 q",
                    if sigma == 1 { "+" } else { "-" }
                ),
            ),
            (
                2,
                "third-density",
                format!(
                    "q' qbar' {} q^2 qbar^2 - 1/3 (q qbar)'' {} 1/3 Omega2",
                    if sigma == 1 { "-" } else { "+" },
                    if sigma == 1 { "-" } else { "+" }
                ),
            ),
        ];
        for (n, name, text) in &printed {
            let rcs = m.reduce_conditions(*n).map_err(|e| e.to_string())?;
            let rc = rcs
                .iter()
                .find(|rc| rc.name == *name)
                .ok_or_else(|| format!("no reduction named {name}"))?;
            let want = m.q_parse(text).unwrap();
            check(rc.expression == want, || {
                format!("sigma={sigma} {name}: {}", rc.expression)
            })?;
            check(rc.invariant_holds().unwrap_or(false), || {
                format!("sigma={sigma} {name} not conserved")
            })?;
        }
    }
    Ok(())
}

fn master_identity() -> Outcome {
    let mut runner = seeded(6);
    let strat = (operator(1..=3), 0usize..=3, nonzero_scalar());
    let mut pairs = 0;
    for _ in 0..120 {
        let (spec, n, a0) = sample(&mut runner, &strat);
        let r = uv();
        let op = spec.build(&r);
        let der = derive_soliton(&op, n, a0, &ConstantsPolicy::Zero).map_err(|e| e.to_string())?;
        let (ok, w) = derivative_identity_check(&op, &der.phi()).map_err(|e| e.to_string())?;
        check(ok, || {
            format!("identity fails for {} (n={n}): {w}", op.poly())
        })?;
        let (a, b) = (
            conditions(&der, &op).unwrap(),
            conditions_alternative(&der, &op).unwrap(),
        );
        check(a == b, || {
            format!("condition forms differ for {} (n={n})", op.poly())
        })?;
        pairs += 1;
    }
    check(pairs >= 100, || format!("only {pairs} pairs"))
}

fn structure_of(
    op: &soliton_core::spectral::OperatorSpec,
    n: usize,
    a0: GaussianRational,
) -> Outcome {
    let der = derive_soliton(op, n, a0, &ConstantsPolicy::Zero).map_err(|e| e.to_string())?;
    let data = curve_data(op, &der).map_err(|e| format!("{} (n={n}): {e}", op.poly()))?;
    let d = op.d();
    check(data.degree == 2 * n + d, || {
        format!("degree {}", data.degree)
    })?;
    check(
        data.leading == CurveData::expected_leading(op, &der),
        || format!("leading {}", data.leading),
    )?;
    check(
        (n + d..2 * n + d).all(|k| data.h.coeff(k).is_zero()),
        || "gap".into(),
    )?;
    check(data.genus == genus(n, d), || {
        format!("genus {}", data.genus)
    })
}

fn structural_claims() -> Outcome {
    let kdv = KdvModel::new();
    let nls = NlsModel::new(1).map_err(|e| e.to_string())?;
    for n in 0..=4 {
        structure_of(&kdv.operator, n, KdvModel::a0(n))?;
        structure_of(&nls.operator, n, GaussianRational::from_int(2))?;
    }
    let mut runner = seeded(7);
    let strat = (operator(1..=2), 0usize..=4, nonzero_scalar());
    for _ in 0..40 {
        let (spec, n, a0): (OpSpec, usize, GaussianRational) = sample(&mut runner, &strat);
        structure_of(&spec.build(&uv()), n, a0)?;
    }
    Ok(())
}

fn kdv_integral_form_agrees() -> Outcome {
    let m = KdvModel::new();
    for n in 0..=3 {
        let der = m.derive(n).map_err(|e| e.to_string())?;
        let closed = hamiltonian(&m.operator, &der.phi()).unwrap();
        let integral = kdv_integral_form(&der).map_err(|e| e.to_string())?;
        check(closed == integral, || {
            format!("n={n}: {}", integral.checked_sub(&closed).unwrap())
        })?;
    }
    Ok(())
}

fn failed(reports: &[(String, VerifyReport)]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.pass)
        .map(|(ctx, r)| {
            format!(
                "{ctx} {} deviation {:.3e} > {:.0e}",
                r.check, r.max_abs_deviation, r.tolerance
            )
        })
        .collect();
    check(bad.is_empty(), || bad.join("; "))
}

/// Jet part of a reduced density: the quantity whose constancy is claimed.
fn density(m: &NlsModel, n: usize, name: &str) -> DiffPoly {
    let rc = m
        .reduce_conditions(n)
        .unwrap()
        .into_iter()
        .find(|rc| rc.name == name)
        .unwrap();
    let sym = DiffPoly::var(&m.q_ring, &rc.constant_symbol).unwrap();
    let c = rc.expression.coefficient_of(sym.jets()[0], 1);
    &rc.expression - &(&c * &sym)
}

fn numeric_suite() -> Outcome {
    let mut reports = Vec::new();
    let ring = Ring::new(vec![VarSpec::constant("kappa"), VarSpec::jet("q")]).unwrap();
    let op = KdvModel::new().operator.embed(&ring).unwrap();
    let psi = LambdaPoly::parse(&ring, "2 lambda + q - 2 kappa^2").unwrap();
    let h = hamiltonian(&op, &psi).unwrap();
    let law = parse(&ring, "q'' + 3 q^2 - 4 kappa^2 q").unwrap();
    for kappa in [0.5, 1.0, 2.0] {
        let ctx = format!("kdv kappa={kappa}:");
        let p = KdvSoliton::new(kappa).unwrap();
        let grid = Grid::symmetric(kappa, 1001);
        let mut add = |r: VerifyReport| reports.push((ctx.clone(), r));
        add(constancy_check("F1 - 4 kappa^2 F0", &law, &p, &grid, 1e-10).unwrap());
        for (k, c) in h.ascending().iter().enumerate() {
            add(constancy_check(&format!("H lambda^{k}"), c, &p, &grid, 1e-9).unwrap());
        }
        let pts = curve_points(&psi, &p, &grid, 0.0).unwrap();
        add(curve_membership(&pts, &h, &p, &grid, 1e-8).unwrap());
        add(abel_sum_check(&psi, &p, &grid, &AbelOptions::default()).unwrap());
    }
    let grid = Grid::symmetric(1.0, 1001);
    let cases = [
        (NlsSolution::PlaneWave { c: 1.0, k: 0.7 }, 1i8),
        (NlsSolution::PlaneWave { c: 1.0, k: 0.7 }, -1),
        (NlsSolution::Bright { omega: 0.5 }, 1),
    ];
    for (sol, sigma) in cases {
        let m = NlsModel::new(sigma).unwrap();
        let p = NlsProvider::new(sol, sigma).unwrap();
        let ctx = format!("nls {} sigma={sigma}:", p.name());
        let mut exprs = Vec::new();
        if matches!(sol, NlsSolution::PlaneWave { .. }) {
            exprs.push(("E", m.to_q(&parse(&m.ef_ring, "E").unwrap()).unwrap()));
            exprs.push(("F", m.to_q(&parse(&m.ef_ring, "F").unwrap()).unwrap()));
        }
        exprs.push(("phase-flux density", density(&m, 1, "phase-flux")));
        exprs.push(("third density", density(&m, 2, "third-density")));
        for (name, e) in &exprs {
            reports.push((
                ctx.clone(),
                constancy_check(name, e, &p, &grid, 1e-8).unwrap(),
            ));
        }
    }
    failed(&reports)
}

fn decomposition() -> Outcome {
    let mut runner = seeded(10);
    let strat = (
        operator(1..=2),
        1usize..=3,
        nonzero_scalar(),
        proptest::collection::vec(scalar(), 3),
    );
    for _ in 0..40 {
        let (spec, n, a0, cs) = sample(&mut runner, &strat);
        let op = spec.build(&uv());
        let consts = cs[..n].to_vec();
        let der = derive_soliton(
            &op,
            n,
            a0.clone(),
            &ConstantsPolicy::Explicit(consts.clone()),
        )
        .unwrap();
        let norm = derive_soliton(&op, n, a0.clone(), &ConstantsPolicy::Zero).unwrap();
        let k = decompose(&der, &norm).map_err(|e| format!("{} (n={n}): {e}", op.poly()))?;
        let inv = a0.inv().unwrap();
        let want: Vec<GaussianRational> = std::iter::once(GaussianRational::from_int(1))
            .chain(consts.iter().map(|c| c * &inv))
            .collect();
        check(k == want, || format!("K = {k:?}, expected {want:?}"))?;
    }
    Ok(())
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            title: "KdV densities F_0..F_2",
            limit: secs(1),
            run: kdv_densities,
        },
        Criterion {
            id: 2,
            title: "KdV phi_0..phi_3 and H_0..H_2",
            limit: secs(5),
            run: kdv_solitons_and_curves,
        },
        Criterion {
            id: 3,
            title: "NLS phi_1..phi_4",
            limit: secs(5),
            run: nls_solitons,
        },
        Criterion {
            id: 4,
            title: "E-calculus identities",
            limit: None,
            run: e_calculus,
        },
        Criterion {
            id: 5,
            title: "NLS n=1,2 reductions",
            limit: None,
            run: nls_reductions,
        },
        Criterion {
            id: 6,
            title: "master identity and condition forms, 120 random pairs",
            limit: None,
            run: master_identity,
        },
        Criterion {
            id: 7,
            title: "curve degree, leading term, gap, genus (d<=2, n<=4)",
            limit: None,
            run: structural_claims,
        },
        Criterion {
            id: 8,
            title: "KdV integral form of H_n (n<=3)",
            limit: None,
            run: kdv_integral_form_agrees,
        },
        Criterion {
            id: 9,
            title: "numeric constancy, curve and Abel suite",
            limit: secs(30),
            run: numeric_suite,
        },
        Criterion {
            id: 10,
            title: "decomposition into normalized solitons",
            limit: None,
            run: decomposition,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {} ({took:.2?})", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL  {} ({took:.2?}): {why}",
                    c.id, c.title
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
