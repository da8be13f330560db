//! The (1,1)-dimensional ℤ₂×ℤ₂ superspace: coordinates, supercharges,
//! covariant derivatives, superfields, supertranslations and boosts.
//!
//! The space carries light-cone coordinates x⁻, x⁺ of degree (0,0), one
//! degree-(1,1) coordinate z, and the two odd coordinates θ₋ of degree
//! (0,1) and θ₊ of degree (1,0). θ₋ and θ₊ each square to zero yet
//! **commute** with each other — the hallmark of the ℤ₂×ℤ₂ sign rule —
//! while z anticommutes with both and is only constrained by the
//! truncation order of the context.
//!
//! Supercharges and covariant derivatives:
//!
//! ```text
//!     Q₋ = ∂θ₋ + ½θ₋∂₋ − ½θ₊∂_z        D₋ = ∂θ₋ − ½θ₋∂₋ + ½θ₊∂_z
//!     Q₊ = ∂θ₊ + ½θ₊∂₊ + ½θ₋∂_z        D₊ = ∂θ₊ − ½θ₊∂₊ − ½θ₋∂_z
//! ```
//!
//! The nonzero graded brackets are [Q∓,Q∓] = P∓, [Q₋,Q₊] = Z (an honest
//! commutator: the two odd degrees pair trivially), and the D's obey the
//! same table with opposite signs while commuting with both Q's. The
//! [`bracket_audit`] function recomputes the full 7×7 table extensionally
//! and compares it against this expectation entry by entry.

use crate::algebra::{Context, Ctx, Gen, GradedExpr};
use crate::calculus::{graded_commutator, CoordSpec, Derivation, Morphism, Target};
use crate::coeff::{App, CoeffExpr, Dir, Func, Sym};
use crate::grading::Degree;
use crate::{rat, rint};

/// The superspace: shared context plus handles for every coordinate.
#[derive(Clone, Debug)]
pub struct M2 {
    pub ctx: Ctx,
    /// Degree-(1,1) coordinate, truncated at the context's z-order.
    pub z: Gen,
    /// Odd coordinate of degree (0,1), weight −½.
    pub th_m: Gen,
    /// Odd coordinate of degree (1,0), weight +½.
    pub th_p: Gen,
    /// Light-cone coordinate of weight −1.
    pub xm: Sym,
    /// Light-cone coordinate of weight +1.
    pub xp: Sym,
    /// Degree-(1,1) constant with α² = 1 (used by potential couplings).
    pub alpha: Gen,
}

impl M2 {
    pub fn new(z_order: u32) -> M2 {
        let alpha = Gen::param("alpha", Degree::BOTH, 0);
        let ctx = Context::new(z_order, &["z", "th_m", "th_p"]).with_relation(alpha.clone(), rint(1));
        M2 {
            ctx,
            z: Gen::graded_coord(0, Degree::BOTH, 0),
            th_m: Gen::graded_coord(1, Degree::SECOND, -1),
            th_p: Gen::graded_coord(2, Degree::FIRST, 1),
            xm: Sym::coord("xm", -2),
            xp: Sym::coord("xp", 2),
            alpha,
        }
    }

    /// Coordinates in canonical order [x⁻, x⁺, z, θ₋, θ₊]: even first, so
    /// Jacobians built on this list are already in Berezinian block form.
    pub fn coords(&self) -> Vec<CoordSpec> {
        vec![
            CoordSpec::even("xm", Dir::M, self.xm.clone()),
            CoordSpec::even("xp", Dir::P, self.xp.clone()),
            CoordSpec::graded("z", self.z.clone()),
            CoordSpec::graded("th_m", self.th_m.clone()),
            CoordSpec::graded("th_p", self.th_p.clone()),
        ]
    }

    pub fn gen(&self, g: &Gen) -> GradedExpr {
        GradedExpr::gen(&self.ctx, g.clone())
    }

    pub fn sym(&self, s: &Sym) -> GradedExpr {
        GradedExpr::sym(&self.ctx, s.clone())
    }

    pub fn alpha_expr(&self) -> GradedExpr {
        self.gen(&self.alpha)
    }

    /// P₋ = ∂₋.
    pub fn p_m(&self) -> Derivation {
        Derivation::new(
            "P_m",
            Degree::ZERO,
            vec![(GradedExpr::one(&self.ctx), Target::Dir(Dir::M, self.xm.clone()))],
        )
    }

    /// P₊ = ∂₊.
    pub fn p_p(&self) -> Derivation {
        Derivation::new(
            "P_p",
            Degree::ZERO,
            vec![(GradedExpr::one(&self.ctx), Target::Dir(Dir::P, self.xp.clone()))],
        )
    }

    /// Z = ∂_z, the degree-(1,1) central operator.
    pub fn z_op(&self) -> Derivation {
        Derivation::new(
            "Z",
            Degree::BOTH,
            vec![(GradedExpr::one(&self.ctx), Target::Gen(self.z.clone()))],
        )
    }

    /// Q₋ = ∂θ₋ + ½θ₋∂₋ − ½θ₊∂_z, degree (0,1).
    pub fn q_m(&self) -> Derivation {
        Derivation::new(
            "Q_m",
            Degree::SECOND,
            vec![
                (GradedExpr::one(&self.ctx), Target::Gen(self.th_m.clone())),
                (
                    self.gen(&self.th_m).scale(&rat(1, 2)),
                    Target::Dir(Dir::M, self.xm.clone()),
                ),
                (
                    self.gen(&self.th_p).scale(&rat(-1, 2)),
                    Target::Gen(self.z.clone()),
                ),
            ],
        )
    }

    /// Q₊ = ∂θ₊ + ½θ₊∂₊ + ½θ₋∂_z, degree (1,0).
    pub fn q_p(&self) -> Derivation {
        Derivation::new(
            "Q_p",
            Degree::FIRST,
            vec![
                (GradedExpr::one(&self.ctx), Target::Gen(self.th_p.clone())),
                (
                    self.gen(&self.th_p).scale(&rat(1, 2)),
                    Target::Dir(Dir::P, self.xp.clone()),
                ),
                (
                    self.gen(&self.th_m).scale(&rat(1, 2)),
                    Target::Gen(self.z.clone()),
                ),
            ],
        )
    }

    /// D₋ = ∂θ₋ − ½θ₋∂₋ + ½θ₊∂_z, degree (0,1); commutes with both Q's.
    pub fn d_m(&self) -> Derivation {
        Derivation::new(
            "D_m",
            Degree::SECOND,
            vec![
                (GradedExpr::one(&self.ctx), Target::Gen(self.th_m.clone())),
                (
                    self.gen(&self.th_m).scale(&rat(-1, 2)),
                    Target::Dir(Dir::M, self.xm.clone()),
                ),
                (
                    self.gen(&self.th_p).scale(&rat(1, 2)),
                    Target::Gen(self.z.clone()),
                ),
            ],
        )
    }

    /// D₊ = ∂θ₊ − ½θ₊∂₊ − ½θ₋∂_z, degree (1,0).
    pub fn d_p(&self) -> Derivation {
        Derivation::new(
            "D_p",
            Degree::FIRST,
            vec![
                (GradedExpr::one(&self.ctx), Target::Gen(self.th_p.clone())),
                (
                    self.gen(&self.th_p).scale(&rat(-1, 2)),
                    Target::Dir(Dir::P, self.xp.clone()),
                ),
                (
                    self.gen(&self.th_m).scale(&rat(-1, 2)),
                    Target::Gen(self.z.clone()),
                ),
            ],
        )
    }

    /// The even variation δ = ε₋Q₋ + ε₊Q₊ for odd parameters ε∓.
    pub fn susy(&self, eps_m: &Gen, eps_p: &Gen) -> Derivation {
        let mut terms = Vec::new();
        for (c, t) in self.q_m().terms {
            terms.push((&self.gen(eps_m) * &c, t));
        }
        for (c, t) in self.q_p().terms {
            terms.push((&self.gen(eps_p) * &c, t));
        }
        Derivation::new("delta", Degree::ZERO, terms)
    }

    /// Generic Leibniz probe z·θ₋·θ₊·f(x⁻,x⁺) for extensional operator
    /// comparisons: it exercises every coordinate and the chain rule.
    pub fn probe(&self) -> GradedExpr {
        let f = CoeffExpr::app(App::new(
            Func::opaque("f"),
            vec![CoeffExpr::sym(self.xm.clone()), CoeffExpr::sym(self.xp.clone())],
        ));
        (&(&self.gen(&self.z) * &self.gen(&self.th_m)) * &self.gen(&self.th_p)).scale_coeff(&f)
    }
}

/// One entry of the operator bracket audit.
#[derive(Clone, Debug)]
pub struct BracketCheck {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub ok: bool,
}

/// Recompute all 49 graded brackets of [P₋, P₊, Z, Q₋, Q₊, D₋, D₊]
/// extensionally and compare against the structure relations.
pub fn bracket_audit(m2: &M2) -> Vec<BracketCheck> {
    let ops = [
        m2.p_m(),
        m2.p_p(),
        m2.z_op(),
        m2.q_m(),
        m2.q_p(),
        m2.d_m(),
        m2.d_p(),
    ];
    // (coefficient, basis index into ops) per nonzero expected bracket;
    // indices: 0 = P₋, 1 = P₊, 2 = Z.
    let mut expected: [[Option<(i64, usize)>; 7]; 7] = Default::default();
    expected[3][3] = Some((1, 0)); // [Q₋,Q₋] = P₋
    expected[4][4] = Some((1, 1)); // [Q₊,Q₊] = P₊
    expected[3][4] = Some((1, 2)); // [Q₋,Q₊] = Z   (a commutator)
    expected[4][3] = Some((-1, 2));
    expected[5][5] = Some((-1, 0)); // [D₋,D₋] = −P₋
    expected[6][6] = Some((-1, 1)); // [D₊,D₊] = −P₊
    expected[5][6] = Some((-1, 2)); // [D₋,D₊] = −Z
    expected[6][5] = Some((1, 2));

    let coords = m2.coords();
    let probe = m2.probe();
    let mut out = Vec::with_capacity(49);
    for i in 0..7 {
        for j in 0..7 {
            let c = graded_commutator(&ops[i], &ops[j], &coords, &m2.ctx);
            let (want, label) = match expected[i][j] {
                None => (
                    Derivation::new("0", c.degree, vec![]),
                    "0".to_string(),
                ),
                Some((k, b)) => {
                    let base = &ops[b];
                    let terms = base
                        .terms
                        .iter()
                        .map(|(cf, t)| (cf.scale(&rint(k)), t.clone()))
                        .collect();
                    let label = match k {
                        1 => base.name.clone(),
                        -1 => format!("-{}", base.name),
                        _ => format!("{}*{}", k, base.name),
                    };
                    (Derivation::new(&label, base.degree, terms), label)
                }
            };
            out.push(BracketCheck {
                left: ops[i].name.clone(),
                right: ops[j].name.clone(),
                expected: label,
                ok: c.agrees_with(&want, &coords, &m2.ctx, &probe),
            });
        }
    }
    out
}

/// A degree-(0,0) superfield and its component fields.
///
/// Unconstrained expansion (components of even parity live in the scalar
/// coefficient ring, the rest are graded generators):
///
/// ```text
///     Φ = X + θ₋ψ₊ + θ₊ψ₋ + θ₋θ₊F + zG + zθ₋χ₊ + zθ₊χ₋ + zθ₋θ₊Y
/// ```
///
/// The z-constrained superfield keeps only X, ψ∓, F and the top slot Y.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub idx: Option<u8>,
    pub z_constrained: bool,
    /// Bottom component, weight 0.
    pub x: Sym,
    /// θ₋ component, degree (0,1), weight +½.
    pub psi_p: Gen,
    /// θ₊ component, degree (1,0), weight −½.
    pub psi_m: Gen,
    /// θ₋θ₊ auxiliary, degree (1,1), weight 0.
    pub f: Gen,
    /// z component, degree (1,1) (unconstrained fields only).
    pub g: Option<Gen>,
    /// zθ₋ component, degree (1,0), weight +½ (unconstrained only).
    pub chi_p: Option<Gen>,
    /// zθ₊ component, degree (0,1), weight −½ (unconstrained only).
    pub chi_m: Option<Gen>,
    /// zθ₋θ₊ top component, even scalar of weight 0.
    pub y: Sym,
}

impl ScalarField {
    pub fn new(idx: Option<u8>, z_constrained: bool) -> ScalarField {
        ScalarField {
            idx,
            z_constrained,
            x: Sym::jet("X", idx, 0, 0, 0),
            psi_p: Gen::jet("psi_p", idx, 0, 0, Degree::SECOND, 1),
            psi_m: Gen::jet("psi_m", idx, 0, 0, Degree::FIRST, -1),
            f: Gen::jet("F", idx, 0, 0, Degree::BOTH, 0),
            g: (!z_constrained).then(|| Gen::jet("G", idx, 0, 0, Degree::BOTH, 0)),
            chi_p: (!z_constrained).then(|| Gen::jet("chi_p", idx, 0, 0, Degree::FIRST, 1)),
            chi_m: (!z_constrained).then(|| Gen::jet("chi_m", idx, 0, 0, Degree::SECOND, -1)),
            y: Sym::jet("Y", idx, 0, 0, 0),
        }
    }

    pub fn expand(&self, m2: &M2) -> GradedExpr {
        let z = m2.gen(&m2.z);
        let tm = m2.gen(&m2.th_m);
        let tp = m2.gen(&m2.th_p);
        let tmtp = &tm * &tp;
        let mut e = &(&m2.sym(&self.x) + &(&tm * &m2.gen(&self.psi_p)))
            + &(&(&tp * &m2.gen(&self.psi_m)) + &(&tmtp * &m2.gen(&self.f)));
        if let (Some(g), Some(cp), Some(cm)) = (&self.g, &self.chi_p, &self.chi_m) {
            e = &e + &(&z * &m2.gen(g));
            e = &e + &(&(&z * &tm) * &m2.gen(cp));
            e = &e + &(&(&z * &tp) * &m2.gen(cm));
        }
        &e + &(&(&z * &tmtp) * &m2.sym(&self.y))
    }
}

/// A degree-(1,1) superfield:
///
/// ```text
///     Ψ = Y + θ₋χ₊ + θ₊χ₋ + θ₋θ₊G + zθ₋θ₊R
/// ```
///
/// with Y, R of degree (1,1), χ₊ of degree (1,0), χ₋ of degree (0,1), and
/// even scalar G.
#[derive(Clone, Debug)]
pub struct ExoticField {
    pub y: Gen,
    pub chi_p: Gen,
    pub chi_m: Gen,
    pub g: Sym,
    pub r: Option<Gen>,
}

impl ExoticField {
    pub fn new(with_top: bool) -> ExoticField {
        ExoticField {
            y: Gen::jet("Y", None, 0, 0, Degree::BOTH, 0),
            chi_p: Gen::jet("chi_p", None, 0, 0, Degree::FIRST, 1),
            chi_m: Gen::jet("chi_m", None, 0, 0, Degree::SECOND, -1),
            g: Sym::jet("G", None, 0, 0, 0),
            r: with_top.then(|| Gen::jet("R", None, 0, 0, Degree::BOTH, 0)),
        }
    }

    pub fn expand(&self, m2: &M2) -> GradedExpr {
        let tm = m2.gen(&m2.th_m);
        let tp = m2.gen(&m2.th_p);
        let tmtp = &tm * &tp;
        let mut e = &(&m2.gen(&self.y) + &(&tm * &m2.gen(&self.chi_p)))
            + &(&(&tp * &m2.gen(&self.chi_m)) + &(&tmtp * &m2.sym(&self.g)));
        if let Some(r) = &self.r {
            e = &e + &(&(&m2.gen(&m2.z) * &tmtp) * &m2.gen(r));
        }
        e
    }
}

/// All coordinate-slot components of an expression, keyed by
/// (z, θ₋, θ₊) powers; each value has the coordinate prefix stripped.
pub fn components(e: &GradedExpr) -> Vec<((u32, u32, u32), GradedExpr)> {
    e.profiles()
        .into_iter()
        .map(|p| (p, e.slot(p)))
        .collect()
}

/// Parameter pack for a finite supertranslation. `suffix` distinguishes
/// independent transformations when composing.
#[derive(Clone, Debug)]
pub struct STParams {
    pub lam_m: Sym,
    pub lam_p: Sym,
    pub mu: Gen,
    pub eps_m: Gen,
    pub eps_p: Gen,
}

impl STParams {
    pub fn new(suffix: &str) -> STParams {
        STParams {
            lam_m: Sym::param_weighted(&format!("lam_m{suffix}"), -2),
            lam_p: Sym::param_weighted(&format!("lam_p{suffix}"), 2),
            mu: Gen::param(&format!("mu{suffix}"), Degree::BOTH, 0),
            eps_m: Gen::param(&format!("eps_m{suffix}"), Degree::SECOND, -1),
            eps_p: Gen::param(&format!("eps_p{suffix}"), Degree::FIRST, 1),
        }
    }
}

/// The finite supertranslation
///
/// ```text
///     x⁻ ↦ x⁻ + λ⁻ + ½ε₋θ₋        z ↦ z + μ + ½(ε₊θ₋ − ε₋θ₊)
///     x⁺ ↦ x⁺ + λ⁺ + ½ε₊θ₊        θ∓ ↦ θ∓ + ε∓
/// ```
pub fn supertranslation(m2: &M2, p: &STParams) -> Morphism {
    let half = rat(1, 2);
    Morphism::new("supertranslation")
        .map_sym(
            m2.xm.clone(),
            &(&m2.sym(&m2.xm) + &m2.sym(&p.lam_m))
                + &(&m2.gen(&p.eps_m) * &m2.gen(&m2.th_m)).scale(&half),
        )
        .map_sym(
            m2.xp.clone(),
            &(&m2.sym(&m2.xp) + &m2.sym(&p.lam_p))
                + &(&m2.gen(&p.eps_p) * &m2.gen(&m2.th_p)).scale(&half),
        )
        .map_gen(
            m2.z.clone(),
            &(&m2.gen(&m2.z) + &m2.gen(&p.mu))
                + &(&(&m2.gen(&p.eps_p) * &m2.gen(&m2.th_m)).scale(&half)
                    - &(&m2.gen(&p.eps_m) * &m2.gen(&m2.th_p)).scale(&half)),
        )
        .map_gen(m2.th_m.clone(), &m2.gen(&m2.th_m) + &m2.gen(&p.eps_m))
        .map_gen(m2.th_p.clone(), &m2.gen(&m2.th_p) + &m2.gen(&p.eps_p))
}

/// The boost x⁻ ↦ b⁻²x⁻, x⁺ ↦ b²x⁺, θ₋ ↦ b⁻¹θ₋, θ₊ ↦ bθ₊ for an
/// invertible scale b; z is inert.
pub fn boost(m2: &M2, b: &Sym) -> Morphism {
    let bp = |k: i64| CoeffExpr::sym(b.clone()).pow(k);
    Morphism::new("boost")
        .map_sym(m2.xm.clone(), m2.sym(&m2.xm).scale_coeff(&bp(-2)))
        .map_sym(m2.xp.clone(), m2.sym(&m2.xp).scale_coeff(&bp(2)))
        .map_gen(m2.th_m.clone(), m2.gen(&m2.th_m).scale_coeff(&bp(-1)))
        .map_gen(m2.th_p.clone(), m2.gen(&m2.th_p).scale_coeff(&bp(1)))
}
