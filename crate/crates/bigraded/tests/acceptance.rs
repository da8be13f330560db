//! The acceptance gate: one test per headline claim, each a literal
//! symbolic equality (zero residual, no tolerances). The tests restate the
//! expected expressions by hand rather than trusting any intermediate
//! helper, so a regression in the kernel cannot hide behind a shared
//! constructor.

use bigraded::algebra::{Gen, GradedExpr};
use bigraded::berezin::{is_integrable, z2_berezinian};
use bigraded::calculus::partial_dir;
use bigraded::coeff::{App, CoeffExpr, Dir, Func, Sym};
use bigraded::coeff::Weighted;
use bigraded::grading::Degree;
use bigraded::models::{
    el_equation, noether_current, quasi_residual, susy_params, CompField, EomSystem, ExoticModel,
    Metric, Potential, SigmaModel,
};
use bigraded::render;
use bigraded::report::{Check, Status, SuiteReport};
use bigraded::suites::{default_config, run_suite, run_suites, Config};
use bigraded::superspace::{boost, bracket_audit, supertranslation, M2, STParams};
use bigraded::{rat, rint};

type Ctx = std::sync::Arc<bigraded::algebra::Context>;

fn se(ctx: &Ctx, s: &Sym) -> GradedExpr {
    GradedExpr::sym(ctx, s.clone())
}

fn ge(ctx: &Ctx, g: &Gen) -> GradedExpr {
    GradedExpr::gen(ctx, g.clone())
}

fn ds(s: &Sym, dm: u16, dp: u16) -> Sym {
    let mut out = s.clone();
    for _ in 0..dm {
        out = out.jet_raised(Dir::M);
    }
    for _ in 0..dp {
        out = out.jet_raised(Dir::P);
    }
    out
}

fn dg(g: &Gen, dm: u16, dp: u16) -> Gen {
    let mut out = g.clone();
    for _ in 0..dm {
        out = out.jet_raised(Dir::M);
    }
    for _ in 0..dp {
        out = out.jet_raised(Dir::P);
    }
    out
}

fn sin_half(x: &Sym) -> CoeffExpr {
    CoeffExpr::app(App::new(
        Func::sin(),
        vec![CoeffExpr::sym(x.clone()).scale(&rat(1, 2))],
    ))
}

fn cos_half(x: &Sym) -> CoeffExpr {
    CoeffExpr::app(App::new(
        Func::cos(),
        vec![CoeffExpr::sym(x.clone()).scale(&rat(1, 2))],
    ))
}

fn quick_config() -> Config {
    let mut cfg = default_config();
    cfg.kernel.trials = 30;
    cfg
}

fn check<'r>(report: &'r SuiteReport, id: &str) -> &'r Check {
    report
        .checks
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("check '{id}' missing from suite '{}'", report.suite))
}

fn assert_pass(report: &SuiteReport, id: &str) {
    let c = check(report, id);
    assert_eq!(
        c.status,
        Status::Pass,
        "check '{id}': {}",
        c.witness.as_deref().unwrap_or("no witness")
    );
}

/// The trial count a randomized check reports in its witness line.
fn trial_count(report: &SuiteReport, id: &str) -> usize {
    let c = check(report, id);
    assert_eq!(c.status, Status::Pass, "check '{id}' did not pass");
    let w = c.witness.as_deref().unwrap_or_default();
    w.split_whitespace()
        .next()
        .and_then(|n| n.parse().ok())
        .unwrap_or_else(|| panic!("check '{id}' has no trial count in witness '{w}'"))
}

#[test]
fn c01_bracket_table() {
    let m2 = M2::new(1);
    let table = bracket_audit(&m2);
    assert_eq!(table.len(), 49);
    for e in &table {
        assert!(e.ok, "[{}, {}] != {}", e.left, e.right, e.expected);
    }
    let expected_nonzero = [
        ("Q_m", "Q_m", "P_m"),
        ("Q_p", "Q_p", "P_p"),
        ("Q_m", "Q_p", "Z"),
        ("Q_p", "Q_m", "-Z"),
        ("D_m", "D_m", "-P_m"),
        ("D_p", "D_p", "-P_p"),
        ("D_m", "D_p", "-Z"),
        ("D_p", "D_m", "Z"),
    ];
    for e in &table {
        let want = expected_nonzero
            .iter()
            .find(|(l, r, _)| *l == e.left && *r == e.right)
            .map(|(_, _, w)| *w)
            .unwrap_or("0");
        assert_eq!(e.expected, want, "[{}, {}]", e.left, e.right);
    }
    // Every D-against-Q bracket is among the zeros just verified.
    for d in ["D_m", "D_p"] {
        for q in ["Q_m", "Q_p"] {
            assert!(table
                .iter()
                .any(|e| e.left == d && e.right == q && e.expected == "0" && e.ok));
        }
    }
}

#[test]
fn c02_symmetry_berezinians_are_one() {
    let m2 = M2::new(1);
    let ctx = &m2.ctx;
    let st = supertranslation(&m2, &STParams::new(""));
    let ber_s = z2_berezinian(&st.jacobian(ctx, &m2.coords())).expect("invertible");
    assert!(ber_s.is_one_expr(), "Ber(J_S) = {}", render::to_latex(&ber_s));

    let b = boost(&m2, &Sym::param_invertible("b"));
    let ber_l = z2_berezinian(&b.jacobian(ctx, &m2.coords())).expect("invertible");
    assert!(ber_l.is_one_expr(), "Ber(J_L) = {}", render::to_latex(&ber_l));
}

#[test]
fn c03_covariant_derivative_expansions() {
    let report = run_suite("superspace", &quick_config()).expect("suite exists");
    // D₋Φ matches its documented display term for term through O(z).
    assert_pass(&report, "covariant-minus-display");
    assert_pass(&report, "covariant-minus-golden");
    assert_pass(&report, "covariant-plus-golden");
    // The D₊Φ display disagrees in two component signs; the run must emit a
    // finding carrying both expressions, never a silent patch or a failure.
    let c = check(&report, "covariant-plus-display");
    assert_eq!(c.status, Status::Finding);
    let w = c.witness.as_deref().expect("finding carries a witness");
    assert!(w.contains("computed") && w.contains("documented"), "{w}");
}

#[test]
fn c04_linear_sigma_action_equations_and_superspace_el() {
    let sm = SigmaModel::new(1, Metric::Identity, Potential::None).expect("valid");
    let ctx = &sm.m2.ctx;
    let f = &sm.fields[0];

    // Component action.
    let l = sm.component_lagrangian().expect("integrable");
    let want = &(&(&se(ctx, &ds(&f.x, 1, 0)) * &se(ctx, &ds(&f.x, 0, 1))).scale(&rat(1, 4))
        + &(&ge(ctx, &f.psi_p) * &ge(ctx, &dg(&f.psi_p, 0, 1))).scale(&rat(1, 2)))
        + &(&(&ge(ctx, &f.psi_m) * &ge(ctx, &dg(&f.psi_m, 1, 0))).scale(&rat(1, 2))
            - &(&ge(ctx, &f.f) * &ge(ctx, &f.f)));
    assert_eq!(l, want);

    // Equations of motion: ∂₋∂₊X = 0, ∂₊ψ₊ = 0, ∂₋ψ₋ = 0, F = 0, each up
    // to the invertible rational factor the variation produces.
    let pairs = [
        (
            CompField::Even(f.x.clone()),
            se(ctx, &ds(&f.x, 1, 1)).scale(&rat(-1, 2)),
        ),
        (
            CompField::Graded(f.psi_p.clone()),
            ge(ctx, &dg(&f.psi_p, 0, 1)),
        ),
        (
            CompField::Graded(f.psi_m.clone()),
            ge(ctx, &dg(&f.psi_m, 1, 0)),
        ),
        (CompField::Graded(f.f.clone()), ge(ctx, &f.f).scale(&rint(-2))),
    ];
    for (fld, want) in pairs {
        assert_eq!(el_equation(&l, &fld), want, "equation for {}", fld.label());
    }

    // Superspace stationarity: 2F − θ₋∂₋ψ₋ − θ₊∂₊ψ₊ + ½θ₋θ₊∂₊∂₋X, slot by
    // slot through the θ-sector.
    let el = sm.superspace_el().pop().expect("one multiplet");
    assert_eq!(el.slot((0, 0, 0)), ge(ctx, &f.f).scale(&rint(2)));
    assert_eq!(el.slot((0, 1, 0)), ge(ctx, &dg(&f.psi_m, 1, 0)).scale(&rint(-1)));
    assert_eq!(el.slot((0, 0, 1)), ge(ctx, &dg(&f.psi_p, 0, 1)).scale(&rint(-1)));
    assert_eq!(el.slot((0, 1, 1)), se(ctx, &ds(&f.x, 1, 1)).scale(&rat(1, 2)));
}

#[test]
fn c05_nonlinear_metric_taylor_and_closure() {
    let sm = SigmaModel::new(2, Metric::FieldDependent, Potential::None).expect("valid");
    let ctx = &sm.m2.ctx;
    let tm = sm.m2.gen(&sm.m2.th_m);
    let tp = sm.m2.gen(&sm.m2.th_p);
    let z = sm.m2.gen(&sm.m2.z);
    let tmtp = &tm * &tp;
    let n = sm.n as usize;

    // Substituting Φ^a for X^a in an opaque metric entry must produce the
    // displayed two-order Taylor series: g + Σ_c ∂_c g·(θ₋ψ₊ᶜ + θ₊ψ₋ᶜ +
    // θ₋θ₊Fᶜ + zθ₋θ₊Yᶜ) + Σ_{c,d} ∂_d∂_c g·θ₋θ₊ψ₊ᶜψ₋ᵈ.
    let bottoms: Vec<CoeffExpr> = sm
        .fields
        .iter()
        .map(|f| CoeffExpr::sym(f.x.clone()))
        .collect();
    let g = App::new(Func::opaque("g12"), bottoms.clone());
    let got = sm
        .superfield_substitution()
        .pullback(&GradedExpr::scalar(ctx, CoeffExpr::app(g.clone())));

    let deriv = |orders: Vec<usize>| {
        let mut d = vec![0u32; n];
        for c in orders {
            d[c] += 1;
        }
        CoeffExpr::app(App {
            func: g.func.clone(),
            deriv: d,
            args: bottoms.clone(),
        })
    };
    let mut expected = GradedExpr::scalar(ctx, CoeffExpr::app(g.clone()));
    for c in 0..n {
        let fc = &sm.fields[c];
        let shift = &(&(&tm * &ge(ctx, &fc.psi_p)) + &(&tp * &ge(ctx, &fc.psi_m)))
            + &(&(&tmtp * &ge(ctx, &fc.f)) + &(&(&z * &tmtp) * &se(ctx, &fc.y)));
        expected = &expected + &shift.scale_coeff(&deriv(vec![c]));
        for d in 0..n {
            let fd = &sm.fields[d];
            expected = &expected
                + &(&tmtp * &(&ge(ctx, &fc.psi_p) * &ge(ctx, &fd.psi_m)))
                    .scale_coeff(&deriv(vec![c, d]));
        }
    }
    assert_eq!(got, expected);

    // Closure: the z-constrained density has no bare-z obstruction, so the
    // Berezin integral of the full nonlinear model is defined.
    assert!(is_integrable(&sm.superspace_lagrangian()));
    assert!(sm.component_lagrangian().is_ok());
}

#[test]
fn c06_sine_gordon_elimination_action_and_equations() {
    let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).expect("valid");
    let m2 = &sm.m2;
    let ctx = &m2.ctx;
    let f = &sm.fields[0];
    let alpha = m2.alpha_expr();
    let sin = sin_half(&f.x);
    let cos = cos_half(&f.x);

    // 2F = −α sin(X/2).
    let (subst, le) = sm.eliminate().expect("F enters linearly");
    assert_eq!(
        subst.image_of_gen(ctx, &f.f),
        alpha.scale_coeff(&sin).scale(&rat(-1, 2))
    );

    // Component action before elimination.
    let l = sm.component_lagrangian().expect("integrable");
    let kinetic = &(&(&se(ctx, &ds(&f.x, 1, 0)) * &se(ctx, &ds(&f.x, 0, 1))).scale(&rat(1, 4))
        + &(&ge(ctx, &f.psi_p) * &ge(ctx, &dg(&f.psi_p, 0, 1))).scale(&rat(1, 2)))
        + &(&(&ge(ctx, &f.psi_m) * &ge(ctx, &dg(&f.psi_m, 1, 0))).scale(&rat(1, 2))
            - &(&ge(ctx, &f.f) * &ge(ctx, &f.f)));
    let want = &(&kinetic - &(&alpha * &ge(ctx, &f.f)).scale_coeff(&sin))
        - &(&(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p))).scale_coeff(&cos))
            .scale(&rat(1, 2));
    assert_eq!(l, want);

    // Equations of motion after elimination, in double-angle form:
    // ∂₋∂₊X − ¼ sin X − ½α sin(X/2) ψ₋ψ₊ = 0 and the two ψ equations.
    let ex = el_equation(&le, &CompField::Even(f.x.clone()))
        .double_angle()
        .scale(&rint(-2));
    let sin_x = CoeffExpr::app(App::new(Func::sin(), vec![CoeffExpr::sym(f.x.clone())]));
    let want_x = &(&se(ctx, &ds(&f.x, 1, 1))
        - &GradedExpr::scalar(ctx, sin_x).scale(&rat(1, 4)))
        - &(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p)))
            .scale_coeff(&sin)
            .scale(&rat(1, 2));
    assert_eq!(ex, want_x);

    let e_pp = el_equation(&le, &CompField::Graded(f.psi_p.clone()));
    let want_pp = &ge(ctx, &dg(&f.psi_p, 0, 1))
        + &(&alpha * &ge(ctx, &f.psi_m)).scale_coeff(&cos).scale(&rat(1, 2));
    assert_eq!(e_pp, want_pp);

    let e_pm = el_equation(&le, &CompField::Graded(f.psi_m.clone()));
    let want_pm = &ge(ctx, &dg(&f.psi_m, 1, 0))
        + &(&alpha * &ge(ctx, &f.psi_p)).scale_coeff(&cos).scale(&rat(1, 2));
    assert_eq!(e_pm, want_pm);

    // ψ = 0 reduction: ∂₋∂₊X = ¼ sin X.
    let strip = bigraded::calculus::Morphism::new("psi-zero")
        .map_gen(f.psi_p.clone(), GradedExpr::zero(ctx))
        .map_gen(f.psi_m.clone(), GradedExpr::zero(ctx));
    let classical = strip
        .pullback(&el_equation(&le, &CompField::Even(f.x.clone())))
        .double_angle()
        .scale(&rint(-2));
    let sin_x = CoeffExpr::app(App::new(Func::sin(), vec![CoeffExpr::sym(f.x.clone())]));
    assert_eq!(
        classical,
        &se(ctx, &ds(&f.x, 1, 1)) - &GradedExpr::scalar(ctx, sin_x).scale(&rat(1, 4))
    );
}

#[test]
fn c07_quasi_invariance_witnesses() {
    // Sine-Gordon: exact off shell.
    let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).expect("valid");
    let f = &sm.fields[0];
    let (m, le) = sm.eliminate().expect("F eliminates");
    let var = sm
        .susy_variation()
        .map_images(&m)
        .without(&CompField::Graded(f.f.clone()));
    let (v_m, v_p) = sm.sine_gordon_witness().expect("witness exists");
    let residual = quasi_residual(&var.apply(&le), &v_m, &v_p);
    assert!(residual.is_zero(), "{}", render::to_latex(&residual));

    // The five intermediate variation groups match the recorded displays.
    let report = run_suite("models", &quick_config()).expect("suite exists");
    assert_pass(&report, "sg-variation-pieces-cover");
    assert_pass(&report, "sg-variation-pieces-match");
    assert_pass(&report, "sg-witness");

    // Exotic: the minimal witness leaves a residual that vanishes modulo
    // the stationarity equations.
    let ex = ExoticModel::new(false, vec![]).expect("valid");
    let (mx, lex) = ex.eliminate().expect("G eliminates");
    let varx = ex
        .susy_variation()
        .map_images(&mx)
        .without(&CompField::Even(ex.field.g.clone()));
    let (w_m, w_p) = ex.witness_onshell();
    let residual = quasi_residual(&varx.apply(&lex), &w_m, &w_p);
    let sys = EomSystem::derive(&lex, &ex.dynamical_fields()).expect("orientable");
    assert!(sys.reduce(&residual).expect("terminates").is_zero());
}

#[test]
fn c08_noether_currents_weights_conservation_factorization() {
    let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).expect("valid");
    let ctx = &sm.m2.ctx;
    let f = &sm.fields[0];
    let alpha = sm.m2.alpha_expr();
    let sin = sin_half(&f.x);
    let (m, le) = sm.eliminate().expect("F eliminates");
    let var = sm
        .susy_variation()
        .map_images(&m)
        .without(&CompField::Graded(f.f.clone()));
    let (v_m, v_p) = sm.sine_gordon_witness().expect("witness exists");
    let (em, ep) = susy_params();

    // The four sine-Gordon currents, against their displays.
    let j_mm = noether_current(&le, &var, &em, Dir::M, &v_m);
    let j_mp = noether_current(&le, &var, &em, Dir::P, &v_p);
    let j_pm = noether_current(&le, &var, &ep, Dir::M, &v_m);
    let j_pp = noether_current(&le, &var, &ep, Dir::P, &v_p);
    assert_eq!(j_mm, (&alpha * &ge(ctx, &f.psi_m)).scale_coeff(&sin).scale(&rat(1, 2)));
    assert_eq!(j_mp, (&se(ctx, &ds(&f.x, 1, 0)) * &ge(ctx, &f.psi_p)).scale(&rat(1, 2)));
    assert_eq!(j_pm, (&se(ctx, &ds(&f.x, 0, 1)) * &ge(ctx, &f.psi_m)).scale(&rat(1, 2)));
    assert_eq!(j_pp, (&alpha * &ge(ctx, &f.psi_p)).scale_coeff(&sin).scale(&rat(1, 2)));

    // Degree and boost-weight table (weights stored doubled: ±1 ↔ ±½,
    // ±3 ↔ ±³⁄₂).
    for (j, deg, w2) in [
        (&j_mm, Degree::SECOND, -1),
        (&j_mp, Degree::SECOND, 3),
        (&j_pm, Degree::FIRST, -3),
        (&j_pp, Degree::FIRST, 1),
    ] {
        assert!(j.degree().matches(deg));
        assert_eq!(j.weight2(), Weighted::Homo(w2));
    }

    // On-shell conservation.
    let sys = EomSystem::derive(&le, &sm.dynamical_fields()).expect("orientable");
    let div_m = &partial_dir(&j_mm, Dir::M, None) + &partial_dir(&j_mp, Dir::P, None);
    let div_p = &partial_dir(&j_pm, Dir::M, None) + &partial_dir(&j_pp, Dir::P, None);
    assert!(sys.reduce(&div_m).expect("terminates").is_zero());
    assert!(sys.reduce(&div_p).expect("terminates").is_zero());

    // Pre-reduction factorization into equation multiples, exactly.
    let e_x = &sys.eom("X").expect("present").display;
    let e_pp = &sys.eom("psi_p").expect("present").display;
    let e_pm = &sys.eom("psi_m").expect("present").display;
    let third_m = (&alpha * e_pm).scale_coeff(&sin).scale(&rat(1, 2));
    let third_p = (&alpha * e_pp).scale_coeff(&sin).scale(&rat(1, 2));
    let factored_m = &(&(e_pp * &se(ctx, &ds(&f.x, 1, 0))).scale(&rat(1, 2))
        + &(e_x * &ge(ctx, &f.psi_p)).scale(&rat(1, 2)))
        + &third_m;
    let factored_p = &(&(e_pm * &se(ctx, &ds(&f.x, 0, 1))).scale(&rat(1, 2))
        + &(e_x * &ge(ctx, &f.psi_m)).scale(&rat(1, 2)))
        + &third_p;
    assert_eq!(div_m, factored_m);
    assert_eq!(div_p, factored_p);

    // The two exotic currents against their displays; diagonals vanish.
    let ex = ExoticModel::new(false, vec![]).expect("valid");
    let ctx = &ex.m2.ctx;
    let (mx, lex) = ex.eliminate().expect("G eliminates");
    let varx = ex
        .susy_variation()
        .map_images(&mx)
        .without(&CompField::Even(ex.field.g.clone()));
    let (w_m, w_p) = ex.witness_onshell();
    let jx_mm = noether_current(&lex, &varx, &em, Dir::M, &w_m);
    let jx_mp = noether_current(&lex, &varx, &em, Dir::P, &w_p);
    let jx_pm = noether_current(&lex, &varx, &ep, Dir::M, &w_m);
    let jx_pp = noether_current(&lex, &varx, &ep, Dir::P, &w_p);
    assert!(jx_mm.is_zero() && jx_pp.is_zero());
    assert_eq!(
        jx_mp,
        (&ge(ctx, &dg(&ex.field.y, 1, 0)) * &ge(ctx, &ex.field.chi_p)).scale(&rat(1, 2))
    );
    assert_eq!(
        jx_pm,
        (&ge(ctx, &dg(&ex.field.y, 0, 1)) * &ge(ctx, &ex.field.chi_m)).scale(&rat(1, 2))
    );
    assert_eq!(jx_mp.weight2(), Weighted::Homo(3));
    assert_eq!(jx_pm.weight2(), Weighted::Homo(-3));
    let sysx = EomSystem::derive(&lex, &ex.dynamical_fields()).expect("orientable");
    for (a, b) in [(&jx_mm, &jx_mp), (&jx_pm, &jx_pp)] {
        let div = &partial_dir(a, Dir::M, None) + &partial_dir(b, Dir::P, None);
        assert!(sysx.reduce(&div).expect("terminates").is_zero());
    }
}

#[test]
fn c09_exotic_free_action_and_equations() {
    let ex = ExoticModel::new(false, vec![]).expect("valid");
    let ctx = &ex.m2.ctx;
    let fd = &ex.field;

    let l = ex.component_lagrangian().expect("integrable");
    let explicit = &(&(&se(ctx, &fd.g) * &se(ctx, &fd.g))
        - &(&ge(ctx, &dg(&fd.y, 1, 0)) * &ge(ctx, &dg(&fd.y, 0, 1))).scale(&rat(1, 4)))
        + &(&(&ge(ctx, &fd.chi_m) * &ge(ctx, &dg(&fd.chi_m, 1, 0))).scale(&rat(1, 2))
            + &(&ge(ctx, &fd.chi_p) * &ge(ctx, &dg(&fd.chi_p, 0, 1))).scale(&rat(1, 2)));
    assert_eq!(l, explicit);

    // Equations of motion: ∂₋∂₊Y = 0, ∂₊χ₊ = 0, ∂₋χ₋ = 0, G = 0.
    let pairs = [
        (
            CompField::Graded(fd.y.clone()),
            ge(ctx, &dg(&fd.y, 1, 1)).scale(&rat(1, 2)),
        ),
        (
            CompField::Graded(fd.chi_p.clone()),
            ge(ctx, &dg(&fd.chi_p, 0, 1)),
        ),
        (
            CompField::Graded(fd.chi_m.clone()),
            ge(ctx, &dg(&fd.chi_m, 1, 0)),
        ),
        (CompField::Even(fd.g.clone()), se(ctx, &fd.g).scale(&rint(2))),
    ];
    for (fld, want) in pairs {
        assert_eq!(el_equation(&l, &fld), want, "equation for {}", fld.label());
    }
}

#[test]
fn c10_coordinate_change_suite_at_full_trials() {
    // Default configuration: 500 base trials → 50 per randomized check
    // here, all on the order-3 truncated frame.
    let report = run_suite("appendix-b", &default_config()).expect("suite exists");
    assert!(report.ok());
    for id in [
        "transport-integrability",
        "berezinian-z-free",
        "integral-invariance",
    ] {
        assert!(trial_count(&report, id) >= 50, "check '{id}' ran too few trials");
    }
    assert_pass(&report, "bare-z-control");

    // The frame really truncates z at order 3.
    let frame = bigraded::coordchange::BFrame::new();
    let z = frame.gen(&frame.z);
    assert!(!z.pow(3).is_zero());
    assert!(z.pow(4).is_zero());
}

#[test]
fn c11_kernel_property_suite_at_full_trials() {
    let cfg = default_config();
    let algebra = run_suite("algebra", &cfg).expect("suite exists");
    assert!(algebra.ok());
    assert!(trial_count(&algebra, "product-oracle") >= 500);
    assert!(trial_count(&algebra, "jacobi-identity") >= 100);

    let berezin = run_suite("berezin", &cfg).expect("suite exists");
    assert!(trial_count(&berezin, "ber-multiplicativity") >= 50);
    assert_pass(&berezin, "ber-liouville");
}

#[test]
fn c12_reports_are_deterministic() {
    let cfg = quick_config();
    let a = run_suites("all", &cfg).expect("valid");
    let b = run_suites("all", &cfg).expect("valid");
    assert!(a.ok());
    assert_eq!(a.canonical_json(), b.canonical_json());

    // And through the binary: identical seed and configuration produce
    // byte-identical JSON files.
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let out1 = dir.join("det1.json");
    let out2 = dir.join("det2.json");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_bigraded"))
            .args(["run", "--suite", "algebra", "--trials", "20", "--json"])
            .arg(out)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("binary runs");
        assert!(status.success());
    }
    let b1 = std::fs::read(&out1).expect("report written");
    let b2 = std::fs::read(&out2).expect("report written");
    assert!(!b1.is_empty());
    assert_eq!(b1, b2);
}

#[test]
fn cli_surface() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_bigraded");
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));

    // run: text report on stdout, exit 0 when green.
    let out = Command::new(bin)
        .args(["run", "--suite", "superspace", "--trials", "10"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).expect("utf8");
    assert!(text.contains("suite superspace"), "{text}");
    assert!(text.contains("OK"), "{text}");

    // run: unknown suite is a usage error, exit 2.
    let out = Command::new(bin)
        .args(["run", "--suite", "nope"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));

    // expand: the serialized density parses back; --latex renders.
    let out = Command::new(bin)
        .args(["expand", "sine-gordon", "eliminated"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).expect("utf8");
    let expr = render::parse(&text).expect("expand output parses");
    let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).expect("valid");
    assert_eq!(expr, sm.eliminate().expect("eliminates").1);

    let out = Command::new(bin)
        .args(["expand", "exotic", "component", "--latex"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).expect("utf8").contains("\\chi_+"));

    // render: text → latex round trip through a file, and a located parse
    // error for malformed input.
    let good = dir.join("roundtrip.expr");
    std::fs::write(&good, render::serialize(&sm.component_lagrangian().expect("ok"))).expect("write");
    let out = Command::new(bin)
        .args(["render"])
        .arg(&good)
        .args(["--format", "latex"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).expect("utf8").contains("\\psi_-"));

    // Corrupt the first term of an otherwise valid file: the error must
    // name the offending position.
    let bad = dir.join("broken.expr");
    let text = render::serialize(&sm.component_lagrangian().expect("ok"));
    std::fs::write(&bad, text.replacen("(term", "(trem", 1)).expect("write");
    let out = Command::new(bin)
        .args(["render"])
        .arg(&bad)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf8");
    assert!(err.contains("line 2"), "{err}");
}
