//! The sign rule, coordinate by coordinate.
//!
//! Builds the three graded coordinates (z of degree (1,1), θ₋ of degree
//! (0,1), θ₊ of degree (1,0)) together with the central unit α, prints the
//! full 4×4 commutation-sign table, and demonstrates the two relations that
//! make the algebra interesting: θ² = 0 for both θ's while z merely
//! truncates at a chosen order, and α² = 1.
//!
//! Run with `cargo run --example graded_products`.

use bigraded::algebra::GradedExpr;
use bigraded::grading::{koszul_sign, Degree};
use bigraded::render::to_latex;
use bigraded::superspace::M2;

fn main() {
    // Degree (1,1) truncated at order 3: z, z², z³ survive, z⁴ = 0.
    let m2 = M2::new(3);
    let z = m2.gen(&m2.z);
    let th_m = m2.gen(&m2.th_m);
    let th_p = m2.gen(&m2.th_p);
    let alpha = m2.alpha_expr();

    println!("Commutation signs (−1)^⟨deg a, deg b⟩:\n");
    println!("  {:>8} {:>6} {:>6} {:>6} {:>6}", "", "(0,0)", "(1,1)", "(0,1)", "(1,0)");
    for a in Degree::all() {
        let row: Vec<String> = Degree::all()
            .iter()
            .map(|b| format!("{:>6}", if koszul_sign(a, *b) > 0 { "+" } else { "−" }))
            .collect();
        let (a1, a2) = a.parts();
        println!("  ({a1},{a2})   {}", row.join(" "));
    }

    // The two θ's commute with each other (⟨(0,1),(1,0)⟩ = 0·1 + 1·0 = 0)
    // yet each squares to zero, and both anticommute with z.
    assert_eq!(&th_m * &th_p, &th_p * &th_m);
    assert!((&th_m * &th_m).is_zero());
    assert!((&th_p * &th_p).is_zero());
    assert_eq!(&z * &th_m, (&th_m * &z).scale(&bigraded::rint(-1)));

    println!("\nθ₋θ₊ = θ₊θ₋ = {}", to_latex(&(&th_m * &th_p)));
    println!("θ₋² = θ₊² = 0, zθ₋ = −θ₋z, zθ₊ = −θ₊z");

    // z is even in the total-parity sense only against itself: z·z = z²
    // survives up to the truncation order.
    for k in 1..=4u32 {
        let p = z.pow(k);
        println!("z^{k} = {}", if p.is_zero() { "0".into() } else { to_latex(&p) });
    }
    assert!(!z.pow(3).is_zero());
    assert!(z.pow(4).is_zero());

    // α is a unit of degree (1,1): it carries the same sign behaviour as z
    // but is invertible, with α² rewritten to 1 on sight.
    let alpha_sq = &alpha * &alpha;
    assert!(alpha_sq.is_one_expr());
    println!("α² = {}", to_latex(&alpha_sq));
    assert_eq!(&alpha * &th_m, (&th_m * &alpha).scale(&bigraded::rint(-1)));
    println!("αθ₋ = −θ₋α (α is central only up to the sign rule)");

    // A mixed product, fully normalized: the kernel orders every monomial
    // canonically and tracks the sign each transposition produces.
    let w = &(&(&th_p * &z) * &alpha) * &th_m;
    println!("\nθ₊ · z · α · θ₋  normalizes to  {}", to_latex(&w));
    let v = &(&(&th_m * &alpha) * &z) * &th_p;
    println!("θ₋ · α · z · θ₊  normalizes to  {}", to_latex(&v));
    assert_eq!(w, v);
    println!("— the accumulated swap signs of the two orderings cancel exactly.");
    let u = &(&(&z * &alpha) * &th_p) * &th_m;
    println!("z · α · θ₊ · θ₋  normalizes to  {}", to_latex(&u));
    assert_eq!(u, w);

    // Sanity: the degree of a product is the sum of degrees mod 2.
    let d = (&z * &th_m).degree();
    assert!(d.matches(Degree::FIRST)); // (1,1)+(0,1) = (1,0)
    println!("\ndeg(zθ₋) = (1,0) — degrees add componentwise mod 2.");

    let _ = GradedExpr::one(&m2.ctx); // the unit exists and is degree (0,0)
}
