//! The free multiplet, end to end.
//!
//! One z-constrained scalar superfield with the identity target metric and
//! no potential. The pipeline: superspace density D₋ΦD₊Φ → Berezin integral
//! → component density → Euler–Lagrange equations → algebraic elimination of
//! the auxiliary F → the superspace stationarity condition, whose θ-slots
//! reproduce the component equations.
//!
//! Run with `cargo run --example linear_sigma`.

use bigraded::calculus::partial_dir;
use bigraded::coeff::Dir;
use bigraded::models::{el_equation, CompField, EomSystem, Metric, Potential, SigmaModel};
use bigraded::render::to_latex;
use bigraded::{rat, rint};

fn main() {
    let sm = SigmaModel::new(1, Metric::Identity, Potential::None).expect("valid model");
    let m2 = &sm.m2;
    let ctx = &m2.ctx;
    let sf = &sm.fields[0];

    // Stage 1: the superspace density.
    let ls = sm.superspace_lagrangian();
    println!("superspace density:\n  l = {}", to_latex(&ls));

    // Stage 2: Berezin integration projects on the zθ₋θ₊ coefficient.
    let l = sm.component_lagrangian().expect("density is integrable");
    println!("\ncomponent density:\n  L = {}", to_latex(&l));

    // The same density, written by hand from the component fields.
    let x_m = m2.sym(&sf.x.jet_raised(Dir::M));
    let x_p = m2.sym(&sf.x.jet_raised(Dir::P));
    let psi_p = m2.gen(&sf.psi_p);
    let psi_m = m2.gen(&sf.psi_m);
    let f = m2.gen(&sf.f);
    let by_hand = &(&(&x_m * &x_p).scale(&rat(1, 4))
        + &(&psi_p * &m2.gen(&sf.psi_p.jet_raised(Dir::P))).scale(&rat(1, 2)))
        + &(&(&psi_m * &m2.gen(&sf.psi_m.jet_raised(Dir::M))).scale(&rat(1, 2)) - &(&f * &f));
    assert_eq!(l, by_hand);
    println!("  = ¼∂₋X∂₊X + ½ψ₊∂₊ψ₊ + ½ψ₋∂₋ψ₋ − F²  (exactly)");

    // Stage 3: stationarity in each component field.
    println!("\nEuler–Lagrange equations (0 = …):");
    let mut fields = sm.dynamical_fields();
    fields.extend(sm.auxiliary_fields());
    for fld in &fields {
        let e = el_equation(&l, fld);
        println!("  δ{:<5}: {}", fld.label(), to_latex(&e));
    }
    // F enters only algebraically: its equation is −2F = 0.
    let ef = el_equation(&l, &CompField::Graded(sf.f.clone()));
    assert_eq!(ef, f.scale(&rint(-2)));

    // Stage 4: eliminate F by its own equation.
    let (subst, le) = sm.eliminate().expect("the free F-equation is linear");
    let f_image = subst.image_of_gen(ctx, &sf.f);
    println!("\neliminating F ↦ {}:", to_latex(&f_image));
    println!("  L| = {}", to_latex(&le));
    assert!(f_image.is_zero());
    assert_eq!(le, &l + &(&f * &f));

    // Stage 5: the superspace stationarity condition. Its coordinate slots
    // are exactly the component equations (up to overall sign), so varying
    // before or after expanding into components is the same computation.
    let el = sm.superspace_el().pop().expect("one multiplet");
    println!("\nsuperspace stationarity:\n  0 = {}", to_latex(&el));
    let pair = [
        ((0, 0, 0), CompField::Graded(sf.f.clone())),
        ((0, 1, 0), CompField::Graded(sf.psi_m.clone())),
        ((0, 0, 1), CompField::Graded(sf.psi_p.clone())),
        ((0, 1, 1), CompField::Even(sf.x.clone())),
    ];
    for (slot, fld) in pair {
        assert_eq!(el.slot(slot), el_equation(&l, &fld).scale(&rint(-1)));
    }
    println!("  each θ-slot is the matching component equation, sign-flipped.");

    // On-shell reduction in action: the divergence of any derivative of X
    // rewrites to zero modulo the equations.
    let sys = EomSystem::derive(&le, &sm.dynamical_fields()).expect("orientable");
    let probe = partial_dir(&m2.sym(&sf.x.jet_raised(Dir::M)), Dir::P, None);
    let reduced = sys.reduce(&probe).expect("terminates");
    assert!(reduced.is_zero());
    println!("\non-shell: ∂₊∂₋X reduces to 0 under the oriented equations.");
}
