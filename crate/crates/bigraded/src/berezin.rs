//! Berezin integration and the ℤ₂×ℤ₂-Berezinian.
//!
//! **Integration.** For a section F = σ + θ₋σ₋ + θ₊σ₊ + θ₋θ₊σ₊₋ + z(…) the
//! graded integral over the odd directions and the truncated z direction
//! extracts the θ₋θ₊-coefficient at z⁰ (the rule ∫D[z] zᵏ = 0 for k > 0 in
//! action). The integral is well defined only when the section carries no
//! bare z·σ_z(x) term — a z¹ monomial with no odd coordinate attached —
//! because such a term is not reproduced covariantly under coordinate
//! changes; [`is_integrable`] tests exactly that and [`berezin_integral`]
//! refuses otherwise. The extraction itself is a sign-free prefix strip
//! because canonical monomials lead with z, θ₋, θ₊.
//!
//! **Berezinian.** For a degree-zero graded matrix (entry (i,j) homogeneous
//! of degree row_i + col_j) the block split by *parity* — even labels (0,0),
//! (1,1) against odd labels (0,1), (1,0) — has all four blocks landing in
//! the commutative even subalgebra after pairing, and
//!
//! ```text
//!     Ber(X) = det(A − B D⁻¹ C) · det(D)⁻¹
//! ```
//!
//! with A the even×even and D the odd×odd block. Determinants are ordinary
//! cofactor expansions (the relevant entries commute); the inverse of an
//! even element u = u₀ + ν (scalar u₀, nilpotent graded ν) is the finite
//! geometric series u₀⁻¹·Σ(−u₀⁻¹ν)ᵏ.
//!
//! The companion graded trace weighs even-labelled rows with +1 and
//! odd-labelled rows with −1; this is the convention under which
//! Ber(1 + M) = 1 + tr(M) holds exactly for nilpotent M (pinned by a test
//! below that also shows the opposite convention failing).



use crate::algebra::{coord_profile, Ctx, GradedExpr};
use crate::grading::Degree;
use crate::{rint, Rat};

/// True when the section has no bare z¹ term without odd coordinates.
pub fn is_integrable(e: &GradedExpr) -> bool {
    integrability_obstruction(e).is_zero()
}

/// The z¹θ⁰η⁰ content (with the z stripped): the coefficient whose presence
/// blocks Berezin integration.
pub fn integrability_obstruction(e: &GradedExpr) -> GradedExpr {
    e.slot((1, 0, 0))
}

/// The graded integral: θ₋θ₊-coefficient at z⁰. The result of integrating a
/// degree-d section is the stripped coefficient, which carries degree
/// d + (1,1) relative to it — degree bookkeeping the caller keeps.
pub fn berezin_integral(e: &GradedExpr) -> Result<GradedExpr, String> {
    let obstruction = integrability_obstruction(e);
    if !obstruction.is_zero() {
        return Err(format!(
            "section is not integrable: bare z-term with coefficient {}",
            obstruction
        ));
    }
    Ok(e.slot((0, 1, 1)))
}

/// The formal integral over the truncated even coordinate alone: every
/// positive power of z integrates to zero, and the z-free part passes
/// through unchanged (θ-content included). Under a change of coordinates
/// the formal interval rescales; a caller comparing integrals across a
/// substitution accounts for that by multiplying the transformed integrand
/// with the inverse of the linear z-coefficient of the substitution before
/// integrating.
pub fn formal_z_integral(e: &GradedExpr) -> GradedExpr {
    GradedExpr::from_terms(
        &e.ctx,
        e.terms
            .iter()
            .filter(|t| coord_profile(&t.mono).0 == 0)
            .cloned()
            .collect(),
    )
}

/// Invert an element of the even subalgebra: scalar part must invert in the
/// coefficient ring, the graded remainder must be nilpotent.
pub fn invert_even(u: &GradedExpr) -> Result<GradedExpr, String> {
    let u0 = u.scalar_part();
    let nu = u.graded_part();
    if !u.degree().matches(Degree::ZERO) {
        // (1,1)-degree parts are even in the sign sense but a (1,1) element
        // has no scalar part to lead the series; degree-zero is what the
        // Berezinian needs and what we support.
        return Err(format!("invert_even needs a degree-(0,0) element, got {}", u));
    }
    let u0_inv = u0.recip().map_err(|e| format!("scalar part not invertible: {}", e))?;
    let t = nu.scale_coeff(&u0_inv).scale(&rint(-1));
    let mut acc = GradedExpr::one(&u.ctx);
    let mut p = GradedExpr::one(&u.ctx);
    for k in 0..64 {
        p = &p * &t;
        if p.is_zero() {
            let inv = acc.scale_coeff(&u0_inv);
            debug_assert!((&(u * &inv) - &GradedExpr::one(&u.ctx)).is_zero());
            return Ok(inv);
        }
        acc = &acc + &p;
        if k == 63 {
            return Err("graded remainder is not nilpotent".into());
        }
    }
    unreachable!()
}

/// A matrix over the graded algebra with degree labels on rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub ctx: Ctx,
    pub row_degrees: Vec<Degree>,
    pub col_degrees: Vec<Degree>,
    pub entries: Vec<Vec<GradedExpr>>,
}

impl GradedMatrix {
    pub fn new(
        ctx: &Ctx,
        row_degrees: Vec<Degree>,
        col_degrees: Vec<Degree>,
        entries: Vec<Vec<GradedExpr>>,
    ) -> GradedMatrix {
        assert_eq!(entries.len(), row_degrees.len());
        for row in &entries {
            assert_eq!(row.len(), col_degrees.len());
        }
        GradedMatrix {
            ctx: ctx.clone(),
            row_degrees,
            col_degrees,
            entries,
        }
    }

    pub fn identity(ctx: &Ctx, degrees: &[Degree]) -> GradedMatrix {
        let n = degrees.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { GradedExpr::one(ctx) } else { GradedExpr::zero(ctx) })
                    .collect()
            })
            .collect();
        GradedMatrix::new(ctx, degrees.to_vec(), degrees.to_vec(), entries)
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    /// Verify every entry is homogeneous of degree row + col (zero entries
    /// match anything). This is what "degree-zero matrix" means.
    pub fn check_degree_zero(&self) -> Result<(), String> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let want = self.row_degrees[i].plus(self.col_degrees[j]);
                if !e.degree().matches(want) {
                    return Err(format!(
                        "entry ({},{}) should have degree {} but is {} (degree {:?})",
                        i, j, want, e, e.degree()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let entries = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| {
                        let mut acc = GradedExpr::zero(&self.ctx);
                        for k in 0..self.ncols() {
                            acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GradedMatrix::new(
            &self.ctx,
            self.row_degrees.clone(),
            other.col_degrees.clone(),
            entries,
        )
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols(), other.ncols());
        let entries = (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| &self.entries[i][j] + &other.entries[i][j])
                    .collect()
            })
            .collect();
        GradedMatrix::new(
            &self.ctx,
            self.row_degrees.clone(),
            self.col_degrees.clone(),
            entries,
        )
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<GradedExpr>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }
}

/// Determinant by cofactor expansion. Valid for matrices whose entries lie
/// in the commutative even subalgebra (which is what the Berezinian blocks
/// provide); no entry reordering signs arise.
pub fn det(ctx: &Ctx, m: &[Vec<GradedExpr>]) -> GradedExpr {
    let n = m.len();
    if n == 0 {
        return GradedExpr::one(ctx);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = GradedExpr::zero(ctx);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<GradedExpr>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let cofactor = &m[0][j] * &det(ctx, &minor);
        acc = if j % 2 == 0 { &acc + &cofactor } else { &acc - &cofactor };
    }
    acc
}

/// Inverse of a square matrix with commuting even entries, via the
/// adjugate and [`invert_even`] of the determinant.
pub fn invert_matrix(ctx: &Ctx, m: &[Vec<GradedExpr>]) -> Result<Vec<Vec<GradedExpr>>, String> {
    let n = m.len();
    let d = det(ctx, m);
    let d_inv = invert_even(&d).map_err(|e| format!("matrix determinant: {}", e))?;
    let mut out = vec![vec![GradedExpr::zero(ctx); n]; n];
    for i in 0..n {
        for j in 0..n {
            // Cofactor C_{ji} (note the transpose in the adjugate).
            let minor: Vec<Vec<GradedExpr>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { rint(1) } else { rint(-1) };
            out[i][j] = (&det(ctx, &minor) * &d_inv).scale(&sign);
        }
    }
    Ok(out)
}

/// Row/column indices split into even and odd parity classes.
fn parity_split(degrees: &[Degree]) -> (Vec<usize>, Vec<usize>) {
    let mut even = vec![];
    let mut odd = vec![];
    for (i, d) in degrees.iter().enumerate() {
        if d.is_even() {
            even.push(i);
        } else {
            odd.push(i);
        }
    }
    (even, odd)
}

/// The ℤ₂×ℤ₂-Berezinian of a degree-zero graded matrix.
pub fn z2_berezinian(m: &GradedMatrix) -> Result<GradedExpr, String> {
    m.check_degree_zero()?;
    let (er, or) = parity_split(&m.row_degrees);
    let (ec, oc) = parity_split(&m.col_degrees);
    if er.len() != ec.len() || or.len() != oc.len() {
        return Err("matrix is not square within parity blocks".into());
    }
    let ctx = &m.ctx;
    let a = m.submatrix(&er, &ec);
    if or.is_empty() {
        return Ok(det(ctx, &a));
    }
    let b = m.submatrix(&er, &oc);
    let c = m.submatrix(&or, &ec);
    let d = m.submatrix(&or, &oc);
    let d_inv = invert_matrix(ctx, &d).map_err(|e| format!("odd-odd block: {}", e))?;
    // Schur complement A − B·D⁻¹·C.
    let ne = er.len();
    let no = or.len();
    let mut schur = a;
    for i in 0..ne {
        for j in 0..ne {
            let mut corr = GradedExpr::zero(ctx);
            for k in 0..no {
                for l in 0..no {
                    corr = &corr + &(&b[i][k] * &(&d_inv[k][l] * &c[l][j]));
                }
            }
            schur[i][j] = &schur[i][j] - &corr;
        }
    }
    let det_d = det(ctx, &d);
    let det_d_inv = invert_even(&det_d).map_err(|e| format!("det of odd-odd block: {}", e))?;
    Ok(&det(ctx, &schur) * &det_d_inv)
}

/// Graded trace: +entries on even-labelled diagonal slots, − on odd ones.
/// This is the sign convention fixed by Ber(1+M) = 1 + tr(M).
pub fn z2_trace(m: &GradedMatrix) -> GradedExpr {
    let mut acc = GradedExpr::zero(&m.ctx);
    for i in 0..m.nrows() {
        let s: Rat = if m.row_degrees[i].is_even() { rint(1) } else { rint(-1) };
        acc = &acc + &m.entries[i][i].scale(&s);
    }
    acc
}

/// Trace with the sign on the odd block flipped to + (the plain unsigned
/// sum) — kept only so tests can demonstrate that this convention breaks
/// Ber(1+M) = 1 + tr(M).
pub fn z2_trace_flipped(m: &GradedMatrix) -> GradedExpr {
    let mut acc = GradedExpr::zero(&m.ctx);
    for i in 0..m.nrows() {
        acc = &acc + &m.entries[i][i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Context, Gen, GradedExpr};
    use crate::coeff::Sym;
    use crate::grading::Degree;
    use crate::rat;

    fn ctx() -> Ctx {
        Context::new(1, &["z", "th_m", "th_p"])
    }
    fn z(c: &Ctx) -> GradedExpr {
        GradedExpr::gen(c, Gen::graded_coord(0, Degree::BOTH, 0))
    }
    fn tm(c: &Ctx) -> GradedExpr {
        GradedExpr::gen(c, Gen::graded_coord(1, Degree::SECOND, -1))
    }
    fn tp(c: &Ctx) -> GradedExpr {
        GradedExpr::gen(c, Gen::graded_coord(2, Degree::FIRST, 1))
    }

    #[test]
    fn integral_extracts_theta_pair_at_z_zero() {
        let c = ctx();
        let f = GradedExpr::gen(&c, Gen::jet("F", None, 0, 0, Degree::BOTH, 0));
        let x = GradedExpr::sym(&c, Sym::jet("X", None, 0, 0, 0));
        let section = &(&x + &(&(&tm(&c) * &tp(&c)) * &f)) + &(&z(&c) * &(&tm(&c) * &tp(&c)));
        assert!(is_integrable(&section));
        assert_eq!(berezin_integral(&section).unwrap(), f);
    }

    #[test]
    fn z_integral_kills_positive_powers_only() {
        let c3 = Context::new(3, &["z", "th_m", "th_p"]);
        let one = GradedExpr::one(&c3);
        assert_eq!(formal_z_integral(&one), one);
        assert!(formal_z_integral(&z(&c3).pow(2)).is_zero());
        let x = GradedExpr::sym(&c3, Sym::jet("X", None, 0, 0, 0));
        let mixed = &(&x + &(&z(&c3) * &x)) + &(&tm(&c3) * &(&z(&c3).pow(3) + &GradedExpr::one(&c3)));
        assert_eq!(formal_z_integral(&mixed), &x + &tm(&c3));
    }

    #[test]
    fn bare_z_term_blocks_integration() {
        let c = ctx();
        let sigma_z = GradedExpr::sym(&c, Sym::jet("S", None, 0, 0, 0));
        let bad = &z(&c) * &sigma_z;
        assert!(!is_integrable(&bad));
        assert!(berezin_integral(&bad).is_err());
        assert_eq!(integrability_obstruction(&bad), sigma_z);
        // zθ terms are fine: the θ-extraction removes them first.
        let ok = &(&z(&c) * &tm(&c)) * &sigma_z;
        assert!(is_integrable(&ok));
        assert!(berezin_integral(&ok).unwrap().is_zero());
    }

    #[test]
    fn invert_even_finite_series() {
        let c = ctx();
        // u = 2 + zθ₋θ₊: nilpotent correction.
        let u = &GradedExpr::int(&c, 2) + &(&z(&c) * &(&tm(&c) * &tp(&c)));
        let inv = invert_even(&u).unwrap();
        assert!((&(&u * &inv) - &GradedExpr::one(&c)).is_zero());
        // Scalar part zero refuses.
        assert!(invert_even(&(&tm(&c) * &tp(&c))).is_err());
    }

    #[test]
    fn berezinian_of_identity_and_diagonal() {
        let c = ctx();
        let labels = vec![Degree::ZERO, Degree::ZERO, Degree::BOTH, Degree::SECOND, Degree::FIRST];
        let id = GradedMatrix::identity(&c, &labels);
        assert!(z2_berezinian(&id).unwrap().is_one_expr());
        // diag(b⁻², b², 1, b⁻¹, b) has Berezinian b⁻²·b²·1·(b⁻¹·b)⁻¹ = 1.
        let b = Sym::param_invertible("b");
        let pow = |k: i64| GradedExpr::scalar(&c, crate::coeff::CoeffExpr::sym(b.clone()).pow(k));
        let entries: Vec<Vec<GradedExpr>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if i != j {
                            GradedExpr::zero(&c)
                        } else {
                            match i {
                                0 => pow(-2),
                                1 => pow(2),
                                2 => GradedExpr::one(&c),
                                3 => pow(-1),
                                _ => pow(1),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        let m = GradedMatrix::new(&c, labels.clone(), labels, entries);
        assert!(z2_berezinian(&m).unwrap().is_one_expr());
        assert_eq!(z2_trace(&GradedMatrix::identity(&c, &m.row_degrees)), GradedExpr::int(&c, 1));
    }

    #[test]
    fn berezinian_linearization_fixes_trace_convention() {
        // M nilpotent (every entry ∝ z at truncation 1, so M² = 0):
        // Ber(1+M) = 1 + tr(M) exactly — with + on even rows, − on odd rows.
        let c = ctx();
        let labels = vec![Degree::ZERO, Degree::ZERO, Degree::BOTH, Degree::SECOND, Degree::FIRST];
        let ztt = &z(&c) * &(&tm(&c) * &tp(&c)); // degree (0,0), squares to 0
        let zexpr = z(&c); // degree (1,1)
        let mut entries = vec![vec![GradedExpr::zero(&c); 5]; 5];
        // Diagonal entries must be degree (0,0): use z·θ₋·θ₊ multiples.
        for (i, r) in [(0usize, rat(2, 1)), (1, rat(-3, 1)), (2, rat(5, 2)), (3, rat(7, 3)), (4, rat(-1, 2))] {
            entries[i][i] = ztt.scale(&r);
        }
        // Off-diagonal entries of matching degree, also z-multiples:
        // (0,2) needs (0,0)+(1,1) = (1,1) and (3,4) needs (0,1)+(1,0) = (1,1),
        // so bare z works for both.
        entries[0][2] = zexpr.scale(&rat(4, 1));
        entries[3][4] = zexpr.scale(&rat(1, 3));
        let m = GradedMatrix::new(&c, labels.clone(), labels.clone(), entries);
        let one_plus = GradedMatrix::identity(&c, &labels).add(&m);
        let ber = z2_berezinian(&one_plus).unwrap();
        let expected = &GradedExpr::one(&c) + &z2_trace(&m);
        assert_eq!(ber, expected);
        // The flipped convention does not satisfy the linearization.
        let wrong = &GradedExpr::one(&c) + &z2_trace_flipped(&m);
        assert_ne!(ber, wrong);
    }

    #[test]
    fn berezinian_block_formula_against_hand_computation() {
        // X = [[a, 0, 0, 0, 0], …] with a 2×2-mixing odd block:
        // A = diag(a₁,a₂,a₃), D = [[d₁, θ₋θ₊·c],[0, d₂]] (upper triangular):
        // Ber = a₁a₂a₃ / (d₁d₂).
        let c = ctx();
        let labels = vec![Degree::ZERO, Degree::ZERO, Degree::BOTH, Degree::SECOND, Degree::FIRST];
        let inv_sym = |n: &str| GradedExpr::scalar(&c, crate::coeff::CoeffExpr::sym(Sym::param_invertible(n)));
        let mut entries = vec![vec![GradedExpr::zero(&c); 5]; 5];
        entries[0][0] = inv_sym("a1");
        entries[1][1] = inv_sym("a2");
        entries[2][2] = inv_sym("a3");
        entries[3][3] = inv_sym("d1");
        entries[4][4] = inv_sym("d2");
        entries[3][4] = (&tm(&c) * &tp(&c)).scale(&rat(1, 1)); // degree (1,1) as required
        let m = GradedMatrix::new(&c, labels.clone(), labels, entries);
        let ber = z2_berezinian(&m).unwrap();
        let want = &(&(&inv_sym("a1") * &inv_sym("a2")) * &inv_sym("a3"))
            * &invert_even(&(&inv_sym("d1") * &inv_sym("d2"))).unwrap();
        assert_eq!(ber, want);
    }
}
