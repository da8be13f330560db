//! The ℤ₂×ℤ₂-Berezinian.
//!
//! For a degree-zero graded matrix in block form (even-even A, odd columns
//! B/C, odd-odd D) the Berezinian is det(A − BD⁻¹C)·det(D)⁻¹. This example
//! computes it for hand-built matrices, checks multiplicativity and the
//! infinitesimal (Liouville) form Ber(1 + M) = 1 + str(M), and verifies that
//! the super-Jacobians of the two symmetry families of the superspace —
//! supertranslations and boosts — both have Berezinian exactly 1, which is
//! what makes the Berezin integral invariant under them.
//!
//! Run with `cargo run --example berezinian`.

use bigraded::algebra::{Gen, GradedExpr};
use bigraded::berezin::{z2_berezinian, z2_trace, GradedMatrix};
use bigraded::coeff::{CoeffExpr, Sym};
use bigraded::grading::Degree;
use bigraded::render::to_latex;
use bigraded::superspace::{boost, supertranslation, M2, STParams};

fn main() {
    let m2 = M2::new(1);
    let ctx = &m2.ctx;

    // A 2×2 with one even and one odd row. Off-diagonal entries must be
    // odd of degree (0,1); independent fermion jets keep their products
    // alive where θ's would square to zero.
    let sym = |n: &str| GradedExpr::scalar(ctx, CoeffExpr::sym(Sym::param_invertible(n)));
    let odd = |n: &str| GradedExpr::gen(ctx, Gen::jet(n, None, 0, 0, Degree::SECOND, 0));
    let degrees = vec![Degree::ZERO, Degree::SECOND];

    let m = GradedMatrix::new(
        ctx,
        degrees.clone(),
        degrees.clone(),
        vec![
            vec![sym("a"), odd("u")],
            vec![odd("v"), sym("d")],
        ],
    );
    m.check_degree_zero().expect("blocks match the row/col degrees");
    let ber_m = z2_berezinian(&m).expect("odd-odd block is invertible");
    println!("M = [[a, u], [v, d]] with odd u, v:");
    println!("  Ber(M) = {}", to_latex(&ber_m));

    // Multiplicativity: Ber(MN) = Ber(M)·Ber(N).
    let n = GradedMatrix::new(
        ctx,
        degrees.clone(),
        degrees.clone(),
        vec![
            vec![sym("p"), odd("s")],
            vec![odd("t"), sym("q")],
        ],
    );
    let ber_n = z2_berezinian(&n).expect("invertible");
    let ber_mn = z2_berezinian(&m.mul(&n)).expect("invertible");
    assert_eq!(ber_mn, &ber_m * &ber_n);
    println!("  Ber(MN) = Ber(M)Ber(N) ✓");

    // Liouville form: for square-zero M, Ber(1 + M) = 1 + str(M), where the
    // supertrace weights odd-parity rows with −1. Sharing one θ factor
    // across all entries forces M² = 0.
    let th = m2.gen(&m2.th_m);
    let sq = GradedMatrix::new(
        ctx,
        degrees.clone(),
        degrees.clone(),
        vec![
            vec![&th * &odd("u"), th.scale(&bigraded::rint(2))],
            vec![(&th * &sym("a")).scale(&bigraded::rint(3)), &th * &odd("v")],
        ],
    );
    assert!(sq.mul(&sq).entries.iter().flatten().all(|e| e.is_zero()));
    let one = GradedMatrix::identity(ctx, &degrees);
    let lhs = z2_berezinian(&one.add(&sq)).expect("unipotent");
    let rhs = &GradedExpr::one(ctx) + &z2_trace(&sq);
    assert_eq!(lhs, rhs);
    println!("\nsquare-zero M: Ber(1 + M) = 1 + str(M) = {}", to_latex(&lhs));

    // The superspace symmetries. A supertranslation shifts every coordinate
    // by odd parameters; a boost scales the light-cone coordinates and the
    // θ's by compensating powers. Both leave the graded volume element
    // invariant: Berezinian 1, exactly.
    let st = supertranslation(&m2, &STParams::new(""));
    let jac = st.jacobian(ctx, &m2.coords());
    let ber = z2_berezinian(&jac).expect("super-Jacobian is invertible");
    assert!(ber.is_one_expr());
    println!("\nsupertranslation: Ber(J) = {}", to_latex(&ber));

    let b = boost(&m2, &Sym::param_invertible("b"));
    let jac_b = b.jacobian(ctx, &m2.coords());
    let ber_b = z2_berezinian(&jac_b).expect("invertible");
    assert!(ber_b.is_one_expr());
    println!("boost:            Ber(J) = {}", to_latex(&ber_b));
    println!("\nboth symmetry families preserve the Berezin volume element.");
}
