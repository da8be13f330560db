//! ℤ₂×ℤ₂-graded commutative polynomial expressions.
//!
//! A [`GradedExpr`] is a sum of terms, each a coefficient from the
//! commutative ring of [`crate::coeff`] times a sorted monomial in graded
//! generators. Reordering generator factors picks up the Koszul sign
//! (−1)^{⟨deg a, deg b⟩}; generators whose degree pairs to 1 with itself
//! ((0,1) and (1,0)) square to zero automatically, while (1,1) generators
//! are even in the sign sense and may carry arbitrary powers, subject to
//! two context rules:
//!
//! * the distinguished degree-(1,1) coordinate z is truncated at a fixed
//!   order k (modelling formal power series cut at O(z^{k+1})), and
//! * declared square relations such as α² = 1 rewrite even powers to
//!   rationals.
//!
//! The canonical generator order is: graded coordinates (z, then the (0,1)
//! coordinate, then the (1,0) coordinate) < parameters (alphabetical) <
//! field jets (by field name, target index, then derivative multi-index).
//! This makes the θ₋θ₊-prefix of a term literally its Berezin slot, so
//! component read-off is a sign-free prefix strip.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::coeff::{CoeffExpr, Dir, Sym, Weighted};
use crate::grading::{koszul_sign, Degree};
use crate::{rint, Rat};

/// Which ordering bucket a generator belongs to. Declaration order of the
/// variants is the canonical bucket order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenBucket {
    /// Graded coordinate with a fixed rank: 0 is the truncated z coordinate,
    /// 1 and 2 are the (0,1) and (1,0) odd coordinates.
    GradedCoord(u8),
    /// Transformation parameters and constant graded units, alphabetical.
    Param(String),
    /// Derivative jets of graded component fields.
    Jet {
        field: String,
        idx: Option<u8>,
        dm: u16,
        dp: u16,
    },
}

/// A graded generator. Self-describing: two generators are the same exactly
/// when all their data agree, so no global registry is needed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub bucket: GenBucket,
    pub degree: Degree,
    pub weight2: i32,
}

impl Gen {
    pub fn graded_coord(rank: u8, degree: Degree, weight2: i32) -> Gen {
        Gen {
            bucket: GenBucket::GradedCoord(rank),
            degree,
            weight2,
        }
    }

    pub fn param(name: &str, degree: Degree, weight2: i32) -> Gen {
        Gen {
            bucket: GenBucket::Param(name.into()),
            degree,
            weight2,
        }
    }

    /// The (dm, dp) jet of a graded component field.
    pub fn jet(field: &str, idx: Option<u8>, dm: u16, dp: u16, degree: Degree, base_weight2: i32) -> Gen {
        Gen {
            bucket: GenBucket::Jet { field: field.into(), idx, dm, dp },
            degree,
            weight2: base_weight2 + 2 * dm as i32 - 2 * dp as i32,
        }
    }

    pub fn jet_raised(&self, dir: Dir) -> Gen {
        match &self.bucket {
            GenBucket::Jet { field, idx, dm, dp } => {
                let (dm2, dp2) = match dir {
                    Dir::M => (dm + 1, *dp),
                    Dir::P => (*dm, dp + 1),
                };
                let base = self.weight2 - 2 * *dm as i32 + 2 * *dp as i32;
                Gen::jet(field, *idx, dm2, dp2, self.degree, base)
            }
            _ => panic!("jet_raised on non-jet generator {}", self.display()),
        }
    }

    pub fn is_jet(&self) -> bool {
        matches!(self.bucket, GenBucket::Jet { .. })
    }

    /// Whether this is the truncated degree-(1,1) coordinate.
    pub fn is_truncated_coord(&self) -> bool {
        self.bucket == GenBucket::GradedCoord(0)
    }

    pub fn display(&self) -> String {
        match &self.bucket {
            GenBucket::GradedCoord(r) => format!("coord#{}", r),
            GenBucket::Param(n) => n.clone(),
            GenBucket::Jet { field, idx, dm, dp } => {
                let base = match idx {
                    Some(i) => format!("{}{}", field, i),
                    None => field.clone(),
                };
                if *dm > 0 || *dp > 0 {
                    format!("{}_({},{})", base, dm, dp)
                } else {
                    base
                }
            }
        }
    }
}

/// Shared algebra context: z-truncation order and square relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub z_order: u32,
    /// g² ↦ r for non-nilpotent generators (e.g. a degree-(1,1) unit with
    /// square 1). Applied as g^{2k+s} ↦ r^k g^s during normalization.
    pub relations: BTreeMap<Gen, Rat>,
    /// Display names for the graded coordinates, by rank.
    pub coord_names: Vec<String>,
}

impl Context {
    pub fn new(z_order: u32, coord_names: &[&str]) -> Ctx {
        Arc::new(Context {
            z_order,
            relations: BTreeMap::new(),
            coord_names: coord_names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn with_relation(self: &Arc<Self>, g: Gen, square: Rat) -> Ctx {
        let mut c = (**self).clone();
        c.relations.insert(g, square);
        Arc::new(c)
    }

    pub fn with_z_order(self: &Arc<Self>, k: u32) -> Ctx {
        let mut c = (**self).clone();
        c.z_order = k;
        Arc::new(c)
    }

    pub fn coord_name(&self, rank: u8) -> &str {
        self.coord_names
            .get(rank as usize)
            .map(|s| s.as_str())
            .unwrap_or("coord")
    }
}

pub type Ctx = Arc<Context>;

/// Sorted monomial in graded generators.
pub type Mono = Vec<(Gen, u32)>;

/// Normalize a concatenated factor list: sort with Koszul signs, merge
/// powers, kill nilpotent squares, apply square relations and z-truncation.
/// Returns `None` when the monomial vanishes.
pub fn normalize_mono(ctx: &Context, raw: &[(Gen, u32)]) -> Option<(Rat, Mono)> {
    let mut sign = 1i64;
    let mut sorted: Mono = Vec::with_capacity(raw.len());
    for (g, p) in raw {
        if *p == 0 {
            continue;
        }
        let mut pos = sorted.len();
        while pos > 0 && sorted[pos - 1].0 > *g {
            let (h, q) = &sorted[pos - 1];
            if koszul_sign(g.degree, h.degree) == -1 && (p * q) % 2 == 1 {
                sign = -sign;
            }
            pos -= 1;
        }
        if pos > 0 && sorted[pos - 1].0 == *g {
            sorted[pos - 1].1 += p;
        } else {
            sorted.insert(pos, (g.clone(), *p));
        }
    }
    let mut mult = rint(sign);
    let mut out: Mono = Vec::with_capacity(sorted.len());
    for (g, mut p) in sorted {
        if g.degree.self_anticommutes() && p >= 2 {
            return None;
        }
        if let Some(r) = ctx.relations.get(&g) {
            let k = p / 2;
            if k > 0 {
                mult *= r.pow(k as i32);
                p %= 2;
            }
        }
        if g.is_truncated_coord() && p > ctx.z_order {
            return None;
        }
        if p > 0 {
            out.push((g, p));
        }
    }
    if mult.is_zero() {
        return None;
    }
    Some((mult, out))
}

/// Degree of a monomial (powers count mod 2).
pub fn mono_degree(mono: &[(Gen, u32)]) -> Degree {
    let mut d = Degree::ZERO;
    for (g, p) in mono {
        if p % 2 == 1 {
            d = d.plus(g.degree);
        }
    }
    d
}

/// One graded term: commutative coefficient times generator monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTerm {
    pub coef: CoeffExpr,
    pub mono: Mono,
}

/// A canonical ℤ₂×ℤ₂-graded expression bound to its algebra context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedExpr {
    pub ctx: Ctx,
    pub terms: Vec<GTerm>,
}

impl GradedExpr {
    pub fn zero(ctx: &Ctx) -> GradedExpr {
        GradedExpr {
            ctx: ctx.clone(),
            terms: vec![],
        }
    }

    pub fn one(ctx: &Ctx) -> GradedExpr {
        GradedExpr::scalar(ctx, CoeffExpr::one())
    }

    pub fn rat_const(ctx: &Ctx, r: Rat) -> GradedExpr {
        GradedExpr::scalar(ctx, CoeffExpr::constant(r))
    }

    pub fn int(ctx: &Ctx, n: i64) -> GradedExpr {
        GradedExpr::scalar(ctx, CoeffExpr::int(n))
    }

    pub fn scalar(ctx: &Ctx, c: CoeffExpr) -> GradedExpr {
        if c.is_zero() {
            return GradedExpr::zero(ctx);
        }
        GradedExpr {
            ctx: ctx.clone(),
            terms: vec![GTerm { coef: c, mono: vec![] }],
        }
    }

    pub fn sym(ctx: &Ctx, s: Sym) -> GradedExpr {
        GradedExpr::scalar(ctx, CoeffExpr::sym(s))
    }

    pub fn gen(ctx: &Ctx, g: Gen) -> GradedExpr {
        GradedExpr::from_terms(
            ctx,
            vec![GTerm {
                coef: CoeffExpr::one(),
                mono: vec![(g, 1)],
            }],
        )
    }

    /// Normalize a raw term list: canonicalize each monomial, sort, merge.
    pub fn from_terms(ctx: &Ctx, raw: Vec<GTerm>) -> GradedExpr {
        let mut cooked: Vec<GTerm> = Vec::with_capacity(raw.len());
        for t in raw {
            if t.coef.is_zero() {
                continue;
            }
            match normalize_mono(ctx, &t.mono) {
                None => {}
                Some((mult, mono)) => {
                    let coef = if mult.is_one() {
                        t.coef
                    } else {
                        t.coef.scale(&mult)
                    };
                    cooked.push(GTerm { coef, mono });
                }
            }
        }
        cooked.sort_by(|a, b| a.mono.cmp(&b.mono));
        let mut out: Vec<GTerm> = Vec::with_capacity(cooked.len());
        for t in cooked {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coef = &last.coef + &t.coef;
                    if last.coef.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        GradedExpr { ctx: ctx.clone(), terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the expression is exactly the multiplicative unit.
    pub fn is_one_expr(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_empty() && self.terms[0].coef.is_one()
    }

    /// The purely scalar (empty-monomial) part.
    pub fn scalar_part(&self) -> CoeffExpr {
        self.terms
            .iter()
            .find(|t| t.mono.is_empty())
            .map(|t| t.coef.clone())
            .unwrap_or_default()
    }

    /// Everything with a nonempty generator monomial.
    pub fn graded_part(&self) -> GradedExpr {
        GradedExpr {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|t| !t.mono.is_empty()).cloned().collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> GradedExpr {
        if r.is_zero() {
            return GradedExpr::zero(&self.ctx);
        }
        GradedExpr {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| GTerm {
                    coef: t.coef.scale(r),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiply every term's coefficient by a commutative scalar (degree
    /// (0,0), so no signs arise).
    pub fn scale_coeff(&self, c: &CoeffExpr) -> GradedExpr {
        if c.is_zero() {
            return GradedExpr::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| GTerm {
                coef: &t.coef * c,
                mono: t.mono.clone(),
            })
            .filter(|t| !t.coef.is_zero())
            .collect();
        GradedExpr { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> GradedExpr {
        let mut acc = GradedExpr::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// ℤ₂×ℤ₂ degree if homogeneous.
    pub fn degree(&self) -> DegreeCheck {
        if self.terms.is_empty() {
            return DegreeCheck::Zero;
        }
        let d = mono_degree(&self.terms[0].mono);
        if self.terms.iter().all(|t| mono_degree(&t.mono) == d) {
            DegreeCheck::Homo(d)
        } else {
            DegreeCheck::Mixed
        }
    }

    /// Twice the boost weight if homogeneous (coefficients included).
    pub fn weight2(&self) -> Weighted {
        if self.terms.is_empty() {
            return Weighted::Zero;
        }
        let mut found: Option<i32> = None;
        for t in &self.terms {
            let cw = match t.coef.weight2() {
                Weighted::Zero => return Weighted::Zero, // unreachable: coefs are nonzero
                Weighted::Homo(w) => w,
                Weighted::Mixed => return Weighted::Mixed,
            };
            let w = cw + t.mono.iter().map(|(g, p)| g.weight2 * *p as i32).sum::<i32>();
            match found {
                None => found = Some(w),
                Some(prev) if prev == w => {}
                Some(_) => return Weighted::Mixed,
            }
        }
        Weighted::Homo(found.unwrap())
    }

    /// Keep only terms with z-power ≤ k.
    pub fn truncate_z(&self, k: u32) -> GradedExpr {
        GradedExpr {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| coord_profile(&t.mono).0 <= k)
                .cloned()
                .collect(),
        }
    }

    /// Terms whose graded-coordinate content (z-power, rank-1 power, rank-2
    /// power) equals `profile` exactly, with the coordinates stripped.
    /// Because coordinates sort first in every monomial, the strip removes a
    /// prefix and is sign-free.
    pub fn slot(&self, profile: (u32, u32, u32)) -> GradedExpr {
        let terms = self
            .terms
            .iter()
            .filter(|t| coord_profile(&t.mono) == profile)
            .map(|t| GTerm {
                coef: t.coef.clone(),
                mono: t
                    .mono
                    .iter()
                    .filter(|(g, _)| !matches!(g.bucket, GenBucket::GradedCoord(_)))
                    .cloned()
                    .collect(),
            })
            .collect();
        GradedExpr { ctx: self.ctx.clone(), terms }
    }

    /// All distinct coordinate profiles occurring in the expression.
    pub fn profiles(&self) -> Vec<(u32, u32, u32)> {
        let mut v: Vec<(u32, u32, u32)> = self.terms.iter().map(|t| coord_profile(&t.mono)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_gen(&self, g: &Gen) -> bool {
        self.terms
            .iter()
            .any(|t| t.mono.iter().any(|(h, _)| h == g))
    }

    /// Every scalar symbol occurring in any coefficient (function arguments
    /// included).
    pub fn collect_syms(&self) -> std::collections::BTreeSet<Sym> {
        let mut out = std::collections::BTreeSet::new();
        for t in &self.terms {
            t.coef.collect_syms(&mut out);
        }
        out
    }

    /// Every graded generator occurring in any monomial.
    pub fn collect_gens(&self) -> std::collections::BTreeSet<Gen> {
        let mut out = std::collections::BTreeSet::new();
        for t in &self.terms {
            for (g, _) in &t.mono {
                out.insert(g.clone());
            }
        }
        out
    }

    pub fn contains_sym(&self, s: &Sym) -> bool {
        self.terms.iter().any(|t| t.coef.contains_sym(s))
    }

    /// Apply a map to every coefficient (used for commutative rewrites such
    /// as the double-angle normalization).
    pub fn map_coeffs(&self, f: &dyn Fn(&CoeffExpr) -> CoeffExpr) -> GradedExpr {
        GradedExpr::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .map(|t| GTerm {
                    coef: f(&t.coef),
                    mono: t.mono.clone(),
                })
                .collect(),
        )
    }

    pub fn double_angle(&self) -> GradedExpr {
        self.map_coeffs(&|c| c.double_angle())
    }

    /// `self == r·other` for some nonzero rational r (equations compared up
    /// to overall normalization). Returns the ratio when it exists.
    pub fn rational_multiple_of(&self, other: &GradedExpr) -> Option<Rat> {
        if self.is_zero() && other.is_zero() {
            return Some(rint(1));
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (a, b) = (&self.terms[0], &other.terms[0]);
        if a.mono != b.mono {
            return None;
        }
        // Candidate ratio from the leading coefficients, which must be
        // rational multiples of each other term-by-term.
        let (ca, cb) = (&a.coef.terms[0], &b.coef.terms[0]);
        if ca.factors != cb.factors {
            return None;
        }
        let r = &ca.coef / &cb.coef;
        if (self - &other.scale(&r)).is_zero() {
            Some(r)
        } else {
            None
        }
    }
}

/// Powers of the graded coordinates (rank 0, 1, 2) in a monomial.
pub fn coord_profile(mono: &[(Gen, u32)]) -> (u32, u32, u32) {
    let mut prof = (0u32, 0u32, 0u32);
    for (g, p) in mono {
        if let GenBucket::GradedCoord(r) = g.bucket {
            match r {
                0 => prof.0 += p,
                1 => prof.1 += p,
                2 => prof.2 += p,
                _ => {}
            }
        }
    }
    prof
}

/// Homogeneity classification by degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeCheck {
    Zero,
    Homo(Degree),
    Mixed,
}

impl DegreeCheck {
    /// True when the expression could consistently carry degree `d`
    /// (zero matches every degree).
    pub fn matches(&self, d: Degree) -> bool {
        match self {
            DegreeCheck::Zero => true,
            DegreeCheck::Homo(h) => *h == d,
            DegreeCheck::Mixed => false,
        }
    }
}

fn compatible(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl std::ops::Add for &GradedExpr {
    type Output = GradedExpr;
    fn add(self, rhs: &GradedExpr) -> GradedExpr {
        debug_assert!(compatible(&self.ctx, &rhs.ctx), "mixed algebra contexts");
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        GradedExpr::from_terms(&self.ctx, terms)
    }
}

impl std::ops::Sub for &GradedExpr {
    type Output = GradedExpr;
    fn sub(self, rhs: &GradedExpr) -> GradedExpr {
        self + &rhs.scale(&rint(-1))
    }
}

impl std::ops::Neg for &GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        self.scale(&rint(-1))
    }
}

impl std::ops::Mul for &GradedExpr {
    type Output = GradedExpr;
    fn mul(self, rhs: &GradedExpr) -> GradedExpr {
        debug_assert!(compatible(&self.ctx, &rhs.ctx), "mixed algebra contexts");
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                // Coefficients have degree (0,0): they commute past any
                // monomial without signs, so the product factorizes.
                let mut mono = a.mono.clone();
                mono.extend(b.mono.iter().cloned());
                raw.push(GTerm {
                    coef: &a.coef * &b.coef,
                    mono,
                });
            }
        }
        GradedExpr::from_terms(&self.ctx, raw)
    }
}

impl fmt::Display for GradedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coef = format!("{}", t.coef);
            let needs_parens = t.coef.terms.len() > 1;
            let mut parts: Vec<String> = Vec::new();
            if t.mono.is_empty() {
                parts.push(if needs_parens { format!("({})", coef) } else { coef });
            } else if coef == "-1" {
                write!(f, "-")?;
            } else if coef != "1" {
                parts.push(if needs_parens { format!("({})", coef) } else { coef });
            }
            for (g, p) in &t.mono {
                let name = match &g.bucket {
                    GenBucket::GradedCoord(r) => self.ctx.coord_name(*r).to_string(),
                    _ => g.display(),
                };
                if *p == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{}^{}", name, p));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Degree;
    use crate::rat;

    fn ctx() -> Ctx {
        Context::new(1, &["z", "th_m", "th_p"])
    }

    fn z() -> Gen {
        Gen::graded_coord(0, Degree::BOTH, 0)
    }
    fn th_m() -> Gen {
        Gen::graded_coord(1, Degree::SECOND, -1)
    }
    fn th_p() -> Gen {
        Gen::graded_coord(2, Degree::FIRST, 1)
    }

    #[test]
    fn thetas_commute_with_each_other_but_square_to_zero() {
        // The hallmark of the ℤ₂×ℤ₂ sign rule: the two odd coordinates
        // carry degrees (0,1) and (1,0) whose pairing is 0, so they
        // *commute* — yet each pairs to 1 with itself and is nilpotent.
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        assert_eq!(&tm * &tp, &tp * &tm);
        assert!((&tm * &tm).is_zero());
        assert!((&tp * &tp).is_zero());
    }

    #[test]
    fn z_commutes_with_itself_but_anticommutes_with_thetas() {
        let c = Context::new(3, &["z", "th_m", "th_p"]);
        let zz = GradedExpr::gen(&c, z());
        let tm = GradedExpr::gen(&c, th_m());
        assert_eq!(&zz * &zz, zz.pow(2));
        assert!(!zz.pow(2).is_zero());
        assert_eq!(&zz * &tm, -&(&tm * &zz));
        // Canonical order puts z before θ₋ regardless of input order.
        assert_eq!(format!("{}", &tm * &zz), "-z*th_m");
    }

    #[test]
    fn z_truncation() {
        let c = ctx(); // order 1
        let zz = GradedExpr::gen(&c, z());
        assert!(zz.pow(2).is_zero());
        assert!(!zz.is_zero());
        let c3 = c.with_z_order(3);
        let z3 = GradedExpr::gen(&c3, z());
        assert!(!z3.pow(3).is_zero());
        assert!(z3.pow(4).is_zero());
    }

    #[test]
    fn square_relation_rewrites_even_powers() {
        let alpha = Gen::param("alpha", Degree::BOTH, 0);
        let c = ctx().with_relation(alpha.clone(), rint(1));
        let a = GradedExpr::gen(&c, alpha.clone());
        assert!((&(&a * &a) - &GradedExpr::one(&c)).is_zero());
        assert_eq!(a.pow(3), a);
        assert_eq!(a.pow(4), GradedExpr::one(&c));
        // A relation with a non-unit square.
        let beta = Gen::param("beta", Degree::BOTH, 0);
        let c2 = c.with_relation(beta.clone(), rat(1, 4));
        let b = GradedExpr::gen(&c2, beta);
        assert_eq!(b.pow(2), GradedExpr::rat_const(&c2, rat(1, 4)));
    }

    #[test]
    fn koszul_sign_between_parameter_and_coordinate() {
        // ε₋ (degree (0,1)) anticommutes with θ₋ and commutes with θ₊.
        let c = ctx();
        let eps_m = GradedExpr::gen(&c, Gen::param("eps_m", Degree::SECOND, -1));
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        assert_eq!(&eps_m * &tm, -&(&tm * &eps_m));
        assert_eq!(&eps_m * &tp, &tp * &eps_m);
        // Canonical form puts the coordinate first.
        assert_eq!(format!("{}", &eps_m * &tm), "-th_m*eps_m");
    }

    #[test]
    fn mixed_product_associativity_spot_check() {
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        let psi = GradedExpr::gen(&c, Gen::jet("psi_p", None, 0, 0, Degree::SECOND, 1));
        let ab_c = &(&tm * &tp) * &psi;
        let a_bc = &tm * &(&tp * &psi);
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn slot_extraction_is_a_prefix_strip() {
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        let f = GradedExpr::gen(&c, Gen::jet("F", None, 0, 0, Degree::BOTH, 0));
        let x = GradedExpr::sym(&c, Sym::jet("X", None, 0, 0, 0));
        let e = &x + &(&(&tm * &tp) * &f);
        assert_eq!(e.slot((0, 1, 1)), f);
        assert_eq!(e.slot((0, 0, 0)), x);
        assert!(e.slot((1, 0, 0)).is_zero());
        assert_eq!(e.profiles(), vec![(0, 0, 0), (0, 1, 1)]);
    }

    #[test]
    fn degrees_and_weights() {
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        let prod = &tm * &tp;
        assert_eq!(prod.degree(), DegreeCheck::Homo(Degree::BOTH));
        assert_eq!(prod.weight2(), Weighted::Homo(0));
        let mixed = &tm + &(&tm * &tp);
        assert_eq!(mixed.degree(), DegreeCheck::Mixed);
    }

    #[test]
    fn rational_multiple_detection() {
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let x = GradedExpr::sym(&c, Sym::jet("X", None, 1, 0, 0));
        let e = &tm.scale_coeff(&x.scalar_part()) + &tm.scale(&rat(1, 2));
        let half = e.scale(&rat(-1, 2));
        assert_eq!(half.rational_multiple_of(&e), Some(rat(-1, 2)));
        assert_eq!(e.rational_multiple_of(&half), Some(rat(-2, 1)));
        assert_eq!(e.rational_multiple_of(&tm), None);
    }
}
