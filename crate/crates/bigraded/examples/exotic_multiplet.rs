//! The degree-(1,1) multiplet.
//!
//! Where the scalar superfield has an even bottom component, the exotic
//! superfield Ψ starts at degree (1,1): Ψ = Y + θ₋χ₊ + θ₊χ₋ + θ₋θ₊G. Its
//! free density D₋ΨD₊Ψ integrates to a component action whose kinetic signs
//! are flipped relative to the scalar case and whose auxiliary G enters
//! with +G². The example walks the free model, shows why only *odd* powers
//! of Ψ can appear in an interaction (degree bookkeeping in ℤ₂×ℤ₂, not a
//! convention), builds the cubic coupling, verifies exact off-shell
//! quasi-invariance with the G-augmented boundary witness, and closes with
//! the obstruction that stops the scalar multiplet from doing any of this:
//! a quadratic scalar potential leaves a bare-z term that no Berezin
//! integral accepts.
//!
//! Run with `cargo run --example exotic_multiplet`.

use bigraded::berezin::{integrability_obstruction, is_integrable};
use bigraded::coeff::Sym;
use bigraded::models::{
    el_equation, quadratic_potential_counterexample, quasi_residual, ExoticModel,
};
use bigraded::render::to_latex;

fn main() {
    let ex = ExoticModel::new(false, vec![]).expect("free model is valid");

    let l = ex.component_lagrangian().expect("integrable");
    println!("free exotic action density:\n  L = {}", to_latex(&l));
    println!("  (kinetic signs flipped against the scalar multiplet; +G², not −F²)");

    println!("\nEuler–Lagrange equations (0 = …):");
    let mut fields = ex.dynamical_fields();
    fields.extend(ex.auxiliary_fields());
    for fld in &fields {
        println!("  δ{:<5}: {}", fld.label(), to_latex(&el_equation(&l, fld)));
    }

    let (subst, le) = ex.eliminate().expect("G enters linearly");
    assert!(subst
        .image_of_sym(&ex.m2.ctx, &ex.field.g)
        .is_zero());
    println!("\nG eliminates to 0 in the free model; L| = {}", to_latex(&le));

    // Degree bookkeeping: a density must carry degree (1,1). Ψ^p has degree
    // (p·1 mod 2, p·1 mod 2), so even powers are degree (0,0) and cannot
    // enter. The constructor refuses them.
    let err = ExoticModel::new(false, vec![(2, Sym::param("a2"))])
        .err()
        .expect("even power must be rejected");
    println!("\ncoupling Ψ²: rejected — {err}");

    // Odd powers are fine: the cubic coupling deforms the action and the
    // superspace stationarity condition picks up the interaction
    // derivative a₃Ψ²/2!.
    let cubic = ExoticModel::new(false, vec![(3, Sym::param("a3"))]).expect("odd power accepted");
    let lc = cubic.component_lagrangian().expect("integrable");
    println!("\ncubic model:\n  L = {}", to_latex(&lc));
    println!("  superspace stationarity: 0 = {}", to_latex(&cubic.superspace_el()));

    // Exact quasi-invariance, off shell, for the *full* action (auxiliary
    // still present): the minimal boundary witness leaves a residual
    // proportional to the G-equation, and augmenting it with −½εGχ absorbs
    // that residual identically.
    let dl = ex.susy_variation().apply(&l);
    let (w_m, w_p) = ex.witness_exact();
    let residual = quasi_residual(&dl, &w_m, &w_p);
    assert!(residual.is_zero());
    println!("\nδL = ∂₋V⁻ + ∂₊V⁺ identically (no equations used), with");
    println!("  V⁻ = {}", to_latex(&w_m));
    println!("  V⁺ = {}", to_latex(&w_p));

    // Why the scalar multiplet cannot play this game: ½Φ² has a z-linear
    // term with no θ₋θ₊ partner, and the Berezin integral is defined only
    // on densities whose z-sector sits entirely in the top slot.
    let (density, obstruction) = quadratic_potential_counterexample(&ex.m2);
    assert!(!is_integrable(&density));
    assert_eq!(integrability_obstruction(&density), obstruction);
    println!("\nscalar counterexample ½Φ²:");
    println!("  bare-z obstruction = {}", to_latex(&obstruction));
    println!("  → no Berezin integral; the exotic multiplet exists because");
    println!("    its own powers never strand a bare-z term.");
}
