//! The graded supersymmetry algebra, checked extensionally.
//!
//! Seven vector fields act on the superspace: the translations P₋, P₊, the
//! central z-translation Z, the supercharges Q₋, Q₊, and the covariant
//! derivatives D₋, D₊. This example recomputes all 49 graded brackets
//! [A, B] = AB − (−1)^⟨deg A, deg B⟩BA by applying both sides to every
//! coordinate and to a generic probe function, and compares against the
//! structure relations:
//!
//! ```text
//!     [Q₋, Q₋] = P₋      [Q₊, Q₊] = P₊      [Q₋, Q₊] = Z
//!     [D₋, D₋] = −P₋     [D₊, D₊] = −P₊     [D₋, D₊] = −Z
//!     [D, Q] = 0 for every pairing — D is covariant.
//! ```
//!
//! Q₋ and D₋ carry degree (0,1); Q₊ and D₊ carry (1,0). Both are odd against
//! themselves, so their self-brackets are anticommutators 2Q₋² etc., and the
//! mixed Q₋Q₊ bracket is a commutator: the sign in [A,B] is read off the
//! degrees, not off a global parity.
//!
//! Run with `cargo run --example susy_algebra`.

use bigraded::superspace::{bracket_audit, M2};

fn main() {
    let m2 = M2::new(1);
    let table = bracket_audit(&m2);
    assert_eq!(table.len(), 49);

    println!("49 graded brackets of (P₋, P₊, Z, Q₋, Q₊, D₋, D₊):\n");
    let names = ["P₋", "P₊", "Z ", "Q₋", "Q₊", "D₋", "D₊"];
    println!("         {}", names.map(|n| format!("{n:>5}")).join(" "));
    for i in 0..7 {
        let row: Vec<String> = (0..7)
            .map(|j| {
                let e = &table[i * 7 + j];
                assert!(e.ok, "[{}, {}] disagrees with the expected {}", e.left, e.right, e.expected);
                format!("{:>5}", e.expected)
            })
            .collect();
        println!("  [{}, ·] {}", names[i], row.join(" "));
    }

    println!("\nall 49 brackets agree with the structure relations.");

    // The interesting corners, spelled out.
    for (l, r, want) in [
        ("Q_m", "Q_m", "P_m"),
        ("Q_p", "Q_p", "P_p"),
        ("Q_m", "Q_p", "Z"),
        ("D_m", "D_m", "-P_m"),
        ("D_p", "D_p", "-P_p"),
        ("D_m", "D_p", "-Z"),
        ("D_m", "Q_m", "0"),
        ("D_m", "Q_p", "0"),
        ("D_p", "Q_m", "0"),
        ("D_p", "Q_p", "0"),
    ] {
        let e = table
            .iter()
            .find(|e| e.left == l && e.right == r)
            .expect("pair present in the audit");
        assert_eq!(e.expected, want);
        assert!(e.ok);
    }
    println!("covariant derivatives bracket to minus the translations and");
    println!("commute with both supercharges — acting by D preserves the");
    println!("space of supersymmetric constraints.");
}
