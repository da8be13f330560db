//! Brute-force reference multiplier for randomized cross-checks.
//!
//! This module re-implements graded multiplication from scratch, on purpose
//! sharing no normalization code with [`crate::algebra`]: a product term is
//! flattened into a list of single generator copies (powers expanded), the
//! list is bubble-sorted with one Koszul sign applied per adjacent swap, and
//! only then are powers re-collected, nilpotent squares killed, square
//! relations applied and the z-truncation enforced. The verification suites
//! multiply random homogeneous expressions with both implementations and
//! require identical results; a sign error in either canonicalizer cannot
//! hide from the other.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::{Ctx, Gen, GradedExpr, Mono};
use crate::coeff::CoeffExpr;
use crate::grading::koszul_sign;
use crate::{rint, Rat};

/// Product of two graded expressions computed the slow, obvious way.
/// Returns the canonical-form term map (monomial → coefficient).
pub fn naive_product(a: &GradedExpr, b: &GradedExpr) -> BTreeMap<Mono, CoeffExpr> {
    let ctx: &Ctx = &a.ctx;
    let mut acc: BTreeMap<Mono, CoeffExpr> = BTreeMap::new();
    for ta in &a.terms {
        for tb in &b.terms {
            // Flatten generator powers into single copies, left factors first.
            let mut flat: Vec<Gen> = Vec::new();
            for (g, p) in ta.mono.iter().chain(tb.mono.iter()) {
                for _ in 0..*p {
                    flat.push(g.clone());
                }
            }
            // Bubble sort; every adjacent transposition of distinct
            // generators contributes its Koszul sign. Equal generators are
            // never swapped (the sort is stable on equals), so the sign of
            // the identity permutation on them never enters.
            let mut sign = 1i64;
            loop {
                let mut swapped = false;
                for i in 1..flat.len() {
                    if flat[i - 1] > flat[i] {
                        sign *= koszul_sign(flat[i - 1].degree, flat[i].degree) as i64;
                        flat.swap(i - 1, i);
                        swapped = true;
                    }
                }
                if !swapped {
                    break;
                }
            }
            // Re-collect powers.
            let mut mono: Mono = Vec::new();
            for g in flat {
                match mono.last_mut() {
                    Some((h, p)) if *h == g => *p += 1,
                    _ => mono.push((g, 1)),
                }
            }
            // Nilpotency, declared square relations, z-truncation.
            let mut mult: Rat = rint(sign);
            let mut kept: Mono = Vec::new();
            let mut dead = false;
            for (g, mut p) in mono {
                if koszul_sign(g.degree, g.degree) == -1 && p >= 2 {
                    dead = true;
                    break;
                }
                if let Some(r) = ctx.relations.get(&g) {
                    while p >= 2 {
                        mult *= r;
                        p -= 2;
                    }
                }
                if g.is_truncated_coord() && p > ctx.z_order {
                    dead = true;
                    break;
                }
                if p > 0 {
                    kept.push((g, p));
                }
            }
            if dead || mult.is_zero() {
                continue;
            }
            let coef = (&ta.coef * &tb.coef).scale(&mult);
            if coef.is_zero() {
                continue;
            }
            let entry = acc.entry(kept).or_default();
            *entry = &*entry + &coef;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Compare the kernel's canonical product against the reference multiplier.
/// Returns a description of the first difference, if any.
pub fn check_product(a: &GradedExpr, b: &GradedExpr) -> Result<(), String> {
    let fast = a * b;
    let slow = naive_product(a, b);
    let mut fast_map: BTreeMap<Mono, CoeffExpr> = BTreeMap::new();
    for t in &fast.terms {
        fast_map.insert(t.mono.clone(), t.coef.clone());
    }
    if fast_map == slow {
        return Ok(());
    }
    for (mono, coef) in &slow {
        match fast_map.get(mono) {
            None => {
                return Err(format!(
                    "reference has term {:?} -> {} missing from canonical product",
                    mono.iter().map(|(g, p)| (g.display(), *p)).collect::<Vec<_>>(),
                    coef
                ))
            }
            Some(c) if c != coef => {
                return Err(format!(
                    "coefficient mismatch on {:?}: canonical {} vs reference {}",
                    mono.iter().map(|(g, p)| (g.display(), *p)).collect::<Vec<_>>(),
                    c,
                    coef
                ))
            }
            _ => {}
        }
    }
    for mono in fast_map.keys() {
        if !slow.contains_key(mono) {
            return Err(format!(
                "canonical product has extra term {:?}",
                mono.iter().map(|(g, p)| (g.display(), *p)).collect::<Vec<_>>()
            ));
        }
    }
    Err("products differ".into())
}

/// One is the multiplicative identity in both implementations.
pub fn check_unit(a: &GradedExpr) -> Result<(), String> {
    let one = GradedExpr::one(&a.ctx);
    if !(&(&one * a) - a).is_zero() {
        return Err("1·a ≠ a".into());
    }
    if !(&(a * &one) - a).is_zero() {
        return Err("a·1 ≠ a".into());
    }
    if !naive_product(&one, a)
        .iter()
        .all(|(m, c)| a.terms.iter().any(|t| &t.mono == m && &t.coef == c))
    {
        return Err("reference multiplier disagrees on the unit law".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Context;
    use crate::grading::Degree;
    use crate::rat;

    #[test]
    fn agrees_on_handpicked_sign_traps() {
        let alpha = Gen::param("alpha", Degree::BOTH, 0);
        let ctx = Context::new(2, &["z", "th_m", "th_p"]).with_relation(alpha.clone(), rint(1));
        let z = GradedExpr::gen(&ctx, Gen::graded_coord(0, Degree::BOTH, 0));
        let tm = GradedExpr::gen(&ctx, Gen::graded_coord(1, Degree::SECOND, -1));
        let tp = GradedExpr::gen(&ctx, Gen::graded_coord(2, Degree::FIRST, 1));
        let al = GradedExpr::gen(&ctx, alpha);
        let psi = GradedExpr::gen(&ctx, Gen::jet("psi_p", None, 0, 0, Degree::SECOND, 1));

        // θ₊·(zθ₋α) : two anticommuting sweeps and one commuting one.
        let lhs = &tp * &(&(&z * &tm) * &al);
        check_product(&tp, &(&(&z * &tm) * &al)).unwrap();
        assert!(!lhs.is_zero());

        // (θ₋ψ₊)·(θ₋ψ₊) : dies by θ₋², both ways.
        let e = &tm * &psi;
        check_product(&e, &e).unwrap();
        assert!((&e * &e).is_zero());

        // α²·z² at truncation 2 : relation fires, z survives.
        let f = &(&al * &z) * &(&al * &z);
        check_product(&(&al * &z), &(&al * &z)).unwrap();
        assert_eq!(f, z.pow(2));

        // Sum with rational coefficients.
        let g = &e.scale(&rat(3, 2)) + &(&z * &al);
        check_product(&g, &g).unwrap();
        check_unit(&g).unwrap();
    }
}
