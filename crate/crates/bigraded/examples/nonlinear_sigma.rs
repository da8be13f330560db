//! Curved targets: the field-dependent metric.
//!
//! Two multiplets coupled through a symmetric metric g_{ba}(X¹, X²). Every
//! metric entry is an opaque function of the bottom components — no series
//! truncation, no small-field assumption. Substituting the full superfields
//! Φ^a for the bottoms is exact because the shift Φ − X is nilpotent: the
//! Taylor expansion terminates after the second derivative. The example
//! prints that expansion, confirms the z-constrained density stays
//! Berezin-integrable, shows the component action's curvature-style terms,
//! and demonstrates that auxiliary elimination is *refused*: with g(X)
//! multiplying F, the F-equation is no longer rational-linear and the
//! kernel declines to divide by a function.
//!
//! Run with `cargo run --example nonlinear_sigma`.

use bigraded::algebra::GradedExpr;
use bigraded::berezin::is_integrable;
use bigraded::coeff::{App, CoeffExpr, Func};
use bigraded::models::{Metric, Potential, SigmaModel};
use bigraded::render::to_latex;

fn main() {
    let sm = SigmaModel::new(2, Metric::FieldDependent, Potential::None).expect("valid model");
    let ctx = &sm.m2.ctx;

    // One opaque function of the two bottoms, pushed through the superfield
    // substitution X^a ↦ Φ^a.
    let bottoms: Vec<CoeffExpr> = sm
        .fields
        .iter()
        .map(|f| CoeffExpr::sym(f.x.clone()))
        .collect();
    let g = App::new(Func::opaque("g"), bottoms.clone());
    let pulled = sm
        .superfield_substitution()
        .pullback(&GradedExpr::scalar(ctx, CoeffExpr::app(g)));
    println!("g(Φ¹, Φ²) expands exactly (nilpotent Taylor, two orders):\n");
    println!("  {}", to_latex(&pulled));

    // Count the derivative orders that appear: 0, 1 and 2 — never more,
    // because every shift monomial kills itself at the third power.
    println!("\n  first derivatives multiply the θ-slots of each Φ^a;");
    println!("  second derivatives multiply θ₋θ₊ψ₊ψ₋ only. Third order: absent.");

    // The full superspace density, still integrable after all couplings.
    let sl = sm.superspace_lagrangian();
    assert!(is_integrable(&sl));
    let l = sm.component_lagrangian().expect("integrable");
    println!("\ncomponent action (z-constrained, both multiplets, {} terms):", l.terms.len());
    println!("  L = {}", to_latex(&l));

    // Elimination refusal: the auxiliary equations read
    // 2g_{ab}(X)F^b + (fermion bilinears) = 0 — linear in F, but with
    // function coefficients. Solving would require inverting g(X); the
    // kernel works in a polynomial world and reports why it stops.
    let err = sm.eliminate().err().expect("elimination must be refused");
    println!("\neliminate() → error:\n  {err}");
    println!("\nthe free and sine-Gordon models eliminate because their");
    println!("auxiliary coefficients are rational numbers, not functions.");
}
