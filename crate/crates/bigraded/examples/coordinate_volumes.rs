//! Coordinate changes and the graded volume element.
//!
//! The general coordinate change on the (2|1,1,1)-dimensional frame (even
//! t, s; graded z, θ, η with z truncated at order 3) is drawn from a
//! template: invertible-led images for every coordinate plus optional
//! higher z-sector slots. Three facts are verified for each draw:
//!
//! 1. **Transport**: pulling a z-free-integrable section back through the
//!    change keeps it integrable — the bare-z slot stays empty.
//! 2. **Berezinian**: the super-Jacobian's Berezinian carries no bare-z
//!    term either, so it is itself an admissible density factor.
//! 3. **Invariance**: ∫ dz dθ dη σ′ computed in the primed frame equals the
//!    same integral computed after pulling σ′ and the volume element back —
//!    the change of variables is the Berezinian, exactly.
//!
//! A deterministic seed makes the run reproducible; change it to explore
//! other corners of the template.
//!
//! Run with `cargo run --example coordinate_volumes`.

use bigraded::berezin::z2_berezinian;
use bigraded::coordchange::{
    berezinian_no_z_term, identity_change, integrability_transport,
    integral_coordinate_independence, jacobian_matrix, random_section, template_change, BFrame,
};
use bigraded::render::to_latex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let frame = BFrame::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // The identity change is the degenerate corner: Berezinian 1 and every
    // check trivially green.
    let id = identity_change(&frame);
    let jac = jacobian_matrix(&frame, &id);
    let ber = z2_berezinian(&jac).expect("identity Jacobian invertible");
    assert!(ber.is_one_expr());
    println!("identity change: Ber(J) = {}", to_latex(&ber));

    // Twenty template draws, three checks each.
    for trial in 0..20u32 {
        let change = template_change(&frame, &mut rng);
        let sigma = random_section(&frame, &mut rng);

        integrability_transport(&change, &sigma)
            .unwrap_or_else(|e| panic!("trial {trial}: transport failed: {e}"));
        berezinian_no_z_term(&frame, &change)
            .unwrap_or_else(|e| panic!("trial {trial}: Berezinian obstruction: {e}"));
        integral_coordinate_independence(&frame, &change, &sigma)
            .unwrap_or_else(|e| panic!("trial {trial}: integral not invariant: {e}"));
    }
    println!("20 random template draws: transport ✓  Berezinian z-free ✓  integral invariant ✓");

    // A peek inside one draw: the super-Jacobian and its Berezinian.
    let change = template_change(&frame, &mut rng);
    let jac = jacobian_matrix(&frame, &change);
    println!(
        "\none concrete draw: {}×{} super-Jacobian, Berezinian",
        jac.nrows(),
        jac.ncols()
    );
    let ber = z2_berezinian(&jac).expect("template Jacobians are invertible");
    println!("  bottom slot: {}", to_latex(&ber.slot((0, 0, 0))));
    println!(
        "  ({} terms in total across the z-sector slots)",
        ber.terms.len()
    );

    // The bare-z coefficient of that Berezinian is what check 2 inspects
    // — the template is engineered so that it cancels for every draw, and
    // the cancellation is a theorem, not a coincidence of this seed.
    let bare_z = ber.slot((1, 0, 0));
    assert!(bare_z.is_zero());
    println!("  bare-z slot: 0");
}
