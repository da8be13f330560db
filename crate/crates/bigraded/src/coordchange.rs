//! General coordinate changes on the (2|1,1,1)-dimensional domain and the
//! three facts that make its Berezin integral well-defined: integrability of
//! a section survives a change of coordinates, the Berezinian of the Jacobian
//! never acquires a bare-z term, and the integral itself is coordinate
//! independent once the formal z-interval is rescaled.
//!
//! A change of coordinates here is the general degree-preserving template
//! truncated at z³,
//!
//! ```text
//!     t′ = φᵗ + zθη φᵗ₁₁₁ + z² φᵗ₀₀₂ + z³θη φᵗ₁₁₃
//!     s′ = φˢ + zθη φˢ₁₁₁ + z² φˢ₀₀₂ + z³θη φˢ₁₁₃
//!     z′ = z φᶻ₀₀₁ + θη φᶻ₁₁₀ + z²θη φᶻ₁₁₂ + z³ φᶻ₀₀₃
//!     θ′ = θ φᶿ₀₁₀ + zη φᶿ₁₀₁ + z²θ φᶿ₀₁₂ + z³η φᶿ₁₀₃
//!     η′ = η φᵑ₁₀₀ + zθ φᵑ₀₁₁ + z²η φᵑ₁₀₂ + z³θ φᵑ₀₁₃
//! ```
//!
//! with every φ an opaque function of (t, s) and the three leading odd-sector
//! coefficients φᶻ₀₀₁, φᶿ₀₁₀, φᵑ₁₀₀ declared invertible. Subscripts count
//! formal-coordinate powers in the order η, θ, z. The randomized generators
//! draw the optional slots of the template (and of test sections)
//! independently, so a trial run exercises the whole lattice of shapes.

use rand::Rng;

use crate::algebra::{Context, Ctx, Gen, GradedExpr};
use crate::berezin::{
    berezin_integral, integrability_obstruction, is_integrable, z2_berezinian, GradedMatrix,
};
use crate::calculus::{partial_gen, partial_sym, CoordSpec, Morphism, Target};
use crate::coeff::{App, CoeffExpr, Dir, Func, Sym};
use crate::grading::Degree;
use crate::rat;

/// The coordinate frame: two even coordinates t, s; the truncated coordinate
/// z of degree (1,1); θ of degree (0,1); η of degree (1,0) — plus a second
/// pair of even symbols t′, s′ that changes of coordinates substitute for.
/// Everything lives at z-truncation 3, deep enough that the template's
/// cubic slots act.
#[derive(Clone, Debug)]
pub struct BFrame {
    pub ctx: Ctx,
    pub t: Sym,
    pub s: Sym,
    pub tp: Sym,
    pub sp: Sym,
    pub z: Gen,
    pub th: Gen,
    pub et: Gen,
}

impl BFrame {
    pub fn new() -> BFrame {
        BFrame {
            ctx: Context::new(3, &["z", "th", "et"]),
            t: Sym::coord("t", 0),
            s: Sym::coord("s", 0),
            tp: Sym::coord("t_pr", 0),
            sp: Sym::coord("s_pr", 0),
            z: Gen::graded_coord(0, Degree::BOTH, 0),
            th: Gen::graded_coord(1, Degree::SECOND, 0),
            et: Gen::graded_coord(2, Degree::FIRST, 0),
        }
    }

    pub fn gen(&self, g: &Gen) -> GradedExpr {
        GradedExpr::gen(&self.ctx, g.clone())
    }

    pub fn sym(&self, s: &Sym) -> GradedExpr {
        GradedExpr::sym(&self.ctx, s.clone())
    }

    /// The unprimed coordinates as derivative targets, in the row/column
    /// order (t, s, z, θ, η) used for Jacobian matrices.
    pub fn coords(&self) -> Vec<CoordSpec> {
        vec![
            CoordSpec::even("t", Dir::M, self.t.clone()),
            CoordSpec::even("s", Dir::P, self.s.clone()),
            CoordSpec::graded("z", self.z.clone()),
            CoordSpec::graded("th", self.th.clone()),
            CoordSpec::graded("et", self.et.clone()),
        ]
    }

    /// An opaque coefficient function of (t, s).
    fn func(&self, name: &str, invertible: bool) -> CoeffExpr {
        let f = if invertible {
            Func::opaque_invertible(name)
        } else {
            Func::opaque(name)
        };
        CoeffExpr::app(App::new(
            f,
            vec![CoeffExpr::sym(self.t.clone()), CoeffExpr::sym(self.s.clone())],
        ))
    }
}

impl Default for BFrame {
    fn default() -> Self {
        BFrame::new()
    }
}

/// A coordinate change drawn from the template, together with the pieces of
/// it that the integral-independence identity consumes: the even Jacobian
/// determinant, the linear z-coefficient (whose inverse rescales the formal
/// z-interval), and the even part of the substitution on its own.
#[derive(Clone, Debug)]
pub struct TemplateChange {
    pub phi: Morphism,
    /// ∂ₜφᵗ ∂ₛφˢ − ∂ₛφᵗ ∂ₜφˢ.
    pub det2: GradedExpr,
    /// φᶻ₀₀₁(t, s).
    pub z_lead: CoeffExpr,
    /// t′ ↦ φᵗ(t, s), s′ ↦ φˢ(t, s) only.
    pub even_part: Morphism,
}

/// Draw a coordinate change: the four invertible-led coordinate images keep
/// their leading slots, and each optional template slot appears with
/// probability one half.
pub fn template_change(frame: &BFrame, rng: &mut impl Rng) -> TemplateChange {
    let ctx = &frame.ctx;
    let z = frame.gen(&frame.z);
    let th = frame.gen(&frame.th);
    let et = frame.gen(&frame.et);
    let thet = &th * &et;
    let mut keep = |optional: GradedExpr| {
        if rng.gen_bool(0.5) {
            optional
        } else {
            GradedExpr::zero(ctx)
        }
    };

    let phi_t = frame.func("phi_t", false);
    let phi_s = frame.func("phi_s", false);
    let t_img = &(&GradedExpr::scalar(ctx, phi_t.clone())
        + &keep((&(&z * &thet)).scale_coeff(&frame.func("phi_t_111", false))))
        + &(&keep(z.pow(2).scale_coeff(&frame.func("phi_t_002", false)))
            + &keep((&(&z.pow(3) * &thet)).scale_coeff(&frame.func("phi_t_113", false))));
    let s_img = &(&GradedExpr::scalar(ctx, phi_s.clone())
        + &keep((&(&z * &thet)).scale_coeff(&frame.func("phi_s_111", false))))
        + &(&keep(z.pow(2).scale_coeff(&frame.func("phi_s_002", false)))
            + &keep((&(&z.pow(3) * &thet)).scale_coeff(&frame.func("phi_s_113", false))));
    let z_lead = frame.func("phi_z_001", true);
    let z_img = &(&z.scale_coeff(&z_lead)
        + &keep(thet.scale_coeff(&frame.func("phi_z_110", false))))
        + &(&keep((&(&z.pow(2) * &thet)).scale_coeff(&frame.func("phi_z_112", false)))
            + &keep(z.pow(3).scale_coeff(&frame.func("phi_z_003", false))));
    let th_img = &(&th.scale_coeff(&frame.func("phi_th_010", true))
        + &keep((&(&z * &et)).scale_coeff(&frame.func("phi_th_101", false))))
        + &(&keep((&(&z.pow(2) * &th)).scale_coeff(&frame.func("phi_th_012", false)))
            + &keep((&(&z.pow(3) * &et)).scale_coeff(&frame.func("phi_th_103", false))));
    let et_img = &(&et.scale_coeff(&frame.func("phi_et_100", true))
        + &keep((&(&z * &th)).scale_coeff(&frame.func("phi_et_011", false))))
        + &(&keep((&(&z.pow(2) * &et)).scale_coeff(&frame.func("phi_et_102", false)))
            + &keep((&(&z.pow(3) * &th)).scale_coeff(&frame.func("phi_et_013", false))));

    let phi = Morphism::new("coordinate_change")
        .map_sym(frame.tp.clone(), t_img)
        .map_sym(frame.sp.clone(), s_img)
        .map_gen(frame.z.clone(), z_img)
        .map_gen(frame.th.clone(), th_img)
        .map_gen(frame.et.clone(), et_img);
    let even_part = Morphism::new("even_part")
        .map_sym(frame.tp.clone(), GradedExpr::scalar(ctx, phi_t.clone()))
        .map_sym(frame.sp.clone(), GradedExpr::scalar(ctx, phi_s.clone()));
    let d = |f: &CoeffExpr, i: usize| match f.terms[0].factors[0].0 {
        crate::coeff::Atom::App(ref a) => a.head_derivative(i),
        _ => unreachable!("coefficient functions are applications"),
    };
    let det2 = GradedExpr::scalar(
        ctx,
        &(&d(&phi_t, 0) * &d(&phi_s, 1)) - &(&d(&phi_t, 1) * &d(&phi_s, 0)),
    );
    TemplateChange {
        phi,
        det2,
        z_lead,
        even_part,
    }
}

/// The identity substitution in template form.
pub fn identity_change(frame: &BFrame) -> TemplateChange {
    let ctx = &frame.ctx;
    TemplateChange {
        phi: Morphism::new("identity")
            .map_sym(frame.tp.clone(), frame.sym(&frame.t))
            .map_sym(frame.sp.clone(), frame.sym(&frame.s))
            .map_gen(frame.z.clone(), frame.gen(&frame.z))
            .map_gen(frame.th.clone(), frame.gen(&frame.th))
            .map_gen(frame.et.clone(), frame.gen(&frame.et)),
        det2: GradedExpr::one(ctx),
        z_lead: CoeffExpr::one(),
        even_part: Morphism::new("identity_even")
            .map_sym(frame.tp.clone(), frame.sym(&frame.t))
            .map_sym(frame.sp.clone(), frame.sym(&frame.s)),
    }
}

/// Draw a section in the primed frame: each monomial slot z′^κ θ′^α η′^β
/// with κ ≤ 3 except the excluded bare-z slot (κ, α, β) = (1, 0, 0), with an
/// opaque coefficient function of (t′, s′) and a random small rational
/// weight. Primed coordinates are represented by the frame's own graded
/// coordinates (their images under a change are what a pullback substitutes).
pub fn random_section(frame: &BFrame, rng: &mut impl Rng) -> GradedExpr {
    let ctx = &frame.ctx;
    let mut acc = GradedExpr::zero(ctx);
    for kappa in 0u32..=3 {
        for alpha in 0u32..=1 {
            for beta in 0u32..=1 {
                if (kappa, alpha, beta) == (1, 0, 0) {
                    continue;
                }
                if !rng.gen_bool(0.5) {
                    continue;
                }
                let name = format!("sig_{}{}{}", beta, alpha, kappa);
                let coef = CoeffExpr::app(App::new(
                    Func::opaque(&name),
                    vec![CoeffExpr::sym(frame.tp.clone()), CoeffExpr::sym(frame.sp.clone())],
                ));
                let mono = &(&frame.gen(&frame.z).pow(kappa) * &frame.gen(&frame.th).pow(alpha))
                    * &frame.gen(&frame.et).pow(beta);
                let weight = rat(rng.gen_range(1..=4), rng.gen_range(1..=3))
                    * rat(if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
                acc = &acc + &mono.scale_coeff(&coef).scale(&weight);
            }
        }
    }
    acc
}

/// Left-derivative Jacobian of the change: rows are the primed coordinate
/// images, columns the unprimed coordinates, in the order (t, s, z, θ, η).
pub fn jacobian_matrix(frame: &BFrame, change: &TemplateChange) -> GradedMatrix {
    let ctx = &frame.ctx;
    let primed = [
        change.phi.image_of_sym(ctx, &frame.tp),
        change.phi.image_of_sym(ctx, &frame.sp),
        change.phi.image_of_gen(ctx, &frame.z),
        change.phi.image_of_gen(ctx, &frame.th),
        change.phi.image_of_gen(ctx, &frame.et),
    ];
    let cols = frame.coords();
    let degrees: Vec<Degree> = cols.iter().map(|c| c.degree()).collect();
    let entries: Vec<Vec<GradedExpr>> = primed
        .iter()
        .map(|img| {
            cols.iter()
                .map(|c| match &c.target {
                    Target::Gen(g) => partial_gen(img, g),
                    Target::Dir(_, s) => partial_sym(img, s),
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(ctx, degrees.clone(), degrees, entries)
}

/// A section with no bare-z monomial keeps that property under the change of
/// coordinates.
pub fn integrability_transport(
    change: &TemplateChange,
    sigma_primed: &GradedExpr,
) -> Result<(), String> {
    if !is_integrable(sigma_primed) {
        return Err(format!(
            "input section already carries a bare-z term: {}",
            integrability_obstruction(sigma_primed)
        ));
    }
    let pulled = change.phi.pullback(sigma_primed);
    if is_integrable(&pulled) {
        Ok(())
    } else {
        Err(format!(
            "pullback acquired a bare-z term: {}",
            integrability_obstruction(&pulled)
        ))
    }
}

/// The Berezinian of the Jacobian has no bare-z term, so the coordinate
/// volume cannot spoil integrability.
pub fn berezinian_no_z_term(frame: &BFrame, change: &TemplateChange) -> Result<(), String> {
    let ber = z2_berezinian(&jacobian_matrix(frame, change))?;
    let bad = ber.slot((1, 0, 0));
    if bad.is_zero() {
        Ok(())
    } else {
        Err(format!("Berezinian carries a bare-z term: {}", bad))
    }
}

/// The integral computed in the unprimed frame from the transformed section —
/// Berezinian factor, pullback, and the formal z-interval rescaled by
/// (φᶻ₀₀₁)⁻¹ — equals the primed-frame integrand transported by the even
/// change of variables with its Jacobian factor:
///
/// ```text
///     (φᶻ₀₀₁)⁻¹ · ∫ᶿ[Ber(J) · φ*σ′]  =  det₂ · σ′₁₁₀(φᵗ, φˢ).
/// ```
pub fn integral_coordinate_independence(
    frame: &BFrame,
    change: &TemplateChange,
    sigma_primed: &GradedExpr,
) -> Result<(), String> {
    let ber = z2_berezinian(&jacobian_matrix(frame, change))?;
    let pulled = change.phi.pullback(sigma_primed);
    let unprimed = berezin_integral(&(&ber * &pulled))?;
    let rescaled = unprimed.scale_coeff(&change.z_lead.recip()?);
    let primed_integrand = berezin_integral(sigma_primed)?;
    let transported = &change.det2 * &change.even_part.pullback(&primed_integrand);
    let residual = &rescaled - &transported;
    if residual.is_zero() {
        Ok(())
    } else {
        Err(format!(
            "transformed integral disagrees with the transported integrand by {}",
            residual
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_change_is_transparent() {
        let frame = BFrame::new();
        let change = identity_change(&frame);
        let j = jacobian_matrix(&frame, &change);
        assert_eq!(
            z2_berezinian(&j).unwrap(),
            GradedExpr::one(&frame.ctx)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sigma = random_section(&frame, &mut rng);
        assert!(integrability_transport(&change, &sigma).is_ok());
        assert!(berezinian_no_z_term(&frame, &change).is_ok());
        assert!(integral_coordinate_independence(&frame, &change, &sigma).is_ok());
    }

    #[test]
    fn bare_z_monomial_is_the_unique_danger() {
        let frame = BFrame::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let change = template_change(&frame, &mut rng);
        // The primed bare-z monomial itself transports onto z φᶻ₀₀₁ + ⋯,
        // which the obstruction extractor flags.
        let z_section = frame.gen(&frame.z);
        let pulled = change.phi.pullback(&z_section);
        assert!(!is_integrable(&pulled));
        assert_eq!(
            integrability_obstruction(&pulled),
            GradedExpr::scalar(&frame.ctx, frame.func("phi_z_001", true))
        );
    }

    #[test]
    fn interval_rescale_cancels_the_z_coefficient() {
        let frame = BFrame::new();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let change = template_change(&frame, &mut rng);
        // ∂z′/∂z integrates to φᶻ₀₀₁ alone; the rescaled interval divides
        // it away.
        let dz = partial_gen(
            &change.phi.image_of_gen(&frame.ctx, &frame.z),
            &frame.z,
        );
        let integrated = crate::berezin::formal_z_integral(&dz);
        assert_eq!(
            integrated,
            GradedExpr::scalar(&frame.ctx, change.z_lead.clone())
        );
        assert_eq!(
            integrated.scale_coeff(&change.z_lead.recip().unwrap()),
            GradedExpr::one(&frame.ctx)
        );
    }

    #[test]
    fn displayed_simplified_jacobian_has_no_bare_z() {
        // The hand-reduced 5×5 matrix from the bare-z analysis: even block
        // with 2zφ₀₀₂ entries, odd block with −zφ off-diagonals.
        let frame = BFrame::new();
        let ctx = &frame.ctx;
        let zero = GradedExpr::zero(ctx);
        let z = frame.gen(&frame.z);
        let f = |n: &str, inv: bool| GradedExpr::scalar(ctx, frame.func(n, inv));
        let dts = |n: &str, i: usize| {
            let app = match frame.func(n, false).terms[0].factors[0].0 {
                crate::coeff::Atom::App(ref a) => a.head_derivative(i),
                _ => unreachable!(),
            };
            GradedExpr::scalar(ctx, app)
        };
        let entries = vec![
            vec![dts("phi_t", 0), dts("phi_t", 1), (&z * &f("phi_t_002", false)).scale(&rint(2)), zero.clone(), zero.clone()],
            vec![dts("phi_s", 0), dts("phi_s", 1), (&z * &f("phi_s_002", false)).scale(&rint(2)), zero.clone(), zero.clone()],
            vec![&z * &dts("phi_z_001", 0), &z * &dts("phi_z_001", 1), f("phi_z_001", true), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), f("phi_th_010", true), (&z * &f("phi_th_101", false)).scale(&rint(-1))],
            vec![zero.clone(), zero.clone(), zero.clone(), (&z * &f("phi_et_011", false)).scale(&rint(-1)), f("phi_et_100", true)],
        ];
        let degrees = vec![
            Degree::ZERO,
            Degree::ZERO,
            Degree::BOTH,
            Degree::SECOND,
            Degree::FIRST,
        ];
        let m = GradedMatrix::new(ctx, degrees.clone(), degrees, entries);
        let ber = z2_berezinian(&m).unwrap();
        assert!(ber.slot((1, 0, 0)).is_zero());
        // The odd-odd block's determinant inverse likewise has no linear-z
        // term (its correction starts at z²).
        let det_d = &(&f("phi_th_010", true) * &f("phi_et_100", true))
            - &(&(&z * &f("phi_th_101", false)) * &(&z * &f("phi_et_011", false)));
        let inv = crate::berezin::invert_even(&det_d).unwrap();
        assert!(inv.slot((1, 0, 0)).is_zero());
        assert!((&det_d * &inv).is_one_expr());
    }

    #[test]
    fn randomized_template_trials() {
        let frame = BFrame::new();
        for seed in 0u64..3 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let change = template_change(&frame, &mut rng);
            let sigma = random_section(&frame, &mut rng);
            integrability_transport(&change, &sigma).unwrap();
            berezinian_no_z_term(&frame, &change).unwrap();
            integral_coordinate_independence(&frame, &change, &sigma).unwrap();
        }
    }
}
