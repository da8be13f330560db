//! Anatomy of a scalar superfield.
//!
//! A degree-(0,0) superfield on the graded superspace expands over the
//! nilpotent coordinate monomials 1, θ₋, θ₊, θ₋θ₊, z, zθ₋, zθ₊, zθ₋θ₊ (at
//! z-truncation order 1). This example prints the component field in every
//! slot, shows which slots the z-constraint D_zΦ = ∂θ₊∂θ₋Φ removes, applies
//! the covariant derivatives D∓ and reads off their component content, and
//! tabulates the supersymmetry variation of each component.
//!
//! Run with `cargo run --example scalar_superfield`.

use bigraded::models::susy_params;
use bigraded::render::to_latex;
use bigraded::superspace::{components, M2, ScalarField};

fn slot_name(p: (u32, u32, u32)) -> String {
    let mut s = String::new();
    if p.0 > 0 {
        s.push('z');
        if p.0 > 1 {
            s.push_str(&format!("^{}", p.0));
        }
    }
    if p.1 > 0 {
        s.push_str("θ₋");
    }
    if p.2 > 0 {
        s.push_str("θ₊");
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn main() {
    let m2 = M2::new(1);

    // Unconstrained: eight independent slots.
    let free = ScalarField::new(None, false);
    let phi_free = free.expand(&m2);
    println!("Unconstrained scalar superfield (8 slots):");
    for (p, c) in components(&phi_free) {
        println!("  {:>6} : {}", slot_name(p), to_latex(&c));
    }
    assert_eq!(components(&phi_free).len(), 8);

    // Constrained: the z-sector collapses onto a single top component Y.
    let sf = ScalarField::new(None, true);
    let phi = sf.expand(&m2);
    println!("\nz-constrained scalar superfield (5 slots):");
    for (p, c) in components(&phi) {
        println!("  {:>6} : {}", slot_name(p), to_latex(&c));
    }
    let profiles = phi.profiles();
    assert_eq!(profiles.len(), 5);
    assert!(!profiles.contains(&(1, 0, 0)), "bare z slot removed");
    assert!(!profiles.contains(&(1, 1, 0)), "zθ₋ slot removed");
    assert!(!profiles.contains(&(1, 0, 1)), "zθ₊ slot removed");
    assert!(profiles.contains(&(1, 1, 1)), "top slot zθ₋θ₊ survives");

    // Covariant derivatives, component by component. D₋ carries degree
    // (0,1) and D₊ degree (1,0); both mix the multiplet while commuting
    // with the supercharges.
    for (name, d) in [("D₋Φ", m2.d_m()), ("D₊Φ", m2.d_p())] {
        let dphi = d.apply(&phi);
        println!("\n{name} components:");
        for (p, c) in components(&dphi) {
            println!("  {:>6} : {}", slot_name(p), to_latex(&c));
        }
    }

    // Supersymmetry acts by ε₋Q₋ + ε₊Q₊; reading the θ-slots of δΦ gives
    // the component transformation law.
    let (em, ep) = susy_params();
    let dphi = m2.susy(&em, &ep).apply(&phi);
    println!("\nδΦ under ε₋Q₋ + ε₊Q₊:");
    for (label, p) in [("δX ", (0, 0, 0)), ("δψ₊", (0, 1, 0)), ("δψ₋", (0, 0, 1)), ("δF ", (0, 1, 1)), ("δY ", (1, 1, 1))] {
        println!("  {label} = {}", to_latex(&dphi.slot(p)));
    }

    // The supercharges carry z-terms (that is how [Q₋, Q₊] closes on Z), so
    // δΦ also populates the bare-z slots — but those slots are not
    // independent variations: every symbol appearing there is the top
    // component Y or one of its derivatives.
    println!("\nz-sector slots of δΦ (forced by the top component, not independent):");
    for p in [(1, 0, 0), (1, 1, 0), (1, 0, 1)] {
        let c = dphi.slot(p);
        if c.is_zero() {
            continue;
        }
        println!("  {:>6} : {}", slot_name(p), to_latex(&c));
        let y_jets = [sf.y.clone(), sf.y.jet_raised(bigraded::coeff::Dir::M), sf.y.jet_raised(bigraded::coeff::Dir::P)];
        assert!(c.collect_syms().iter().all(|s| y_jets.contains(s)));
    }
}
