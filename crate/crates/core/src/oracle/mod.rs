//! Brute-force elimination of the offset equation, used to cross-check the
//! degree formulae on small curves.
//!
//! The offset of `f` is eliminated from
//! `f = 0`, `b = (x1-y1)^2 + (x2-y2)^2 - d^2 = 0` and the normal condition
//! `n = -f2 (x1-y1) + f1 (x2-y2) = 0` by iterated resultants in `y1` then
//! `y2`, repeated in the opposite order and in sheared coordinates. The gcd
//! of these eliminants drops the factors produced by a single projection.
//! Its squarefree pieces form a coprime base, and a base element is kept
//! only if it vanishes at numerically computed offset points.

pub mod sampling;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ExitCategory;
use crate::formulas::ImplicitCurve;
use crate::poly::{
    content_pp, exact_div, gcd, resultant_with, sets, squarefree_defect, squarefree_part, Poly, PolyError, ResultantMethod,
    VarId, VarSet,
};

use sampling::{eval_abs_scale, eval_complex, offset_samples, OffsetSample};

/// Largest curve degree accepted with a symbolic distance.
pub const MAX_DEGREE_SYMBOLIC: u32 = 2;
/// Largest curve degree accepted with a specialized distance.
pub const MAX_DEGREE_SPECIALIZED: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("curve has unresolved parameters: {0}")]
    Parameters(String),
    #[error("distance must be a positive rational, got {0}")]
    BadDistance(String),
    #[error("numeric sampling failed: {0}")]
    SampleFailure(String),
    #[error("elimination degenerated: {0}")]
    Degenerate(String),
    #[error("oracle invariant violated: {0}")]
    Invariant(String),
}

impl OracleError {
    pub fn category(&self) -> ExitCategory {
        match self {
            OracleError::CostGuard(_) => ExitCategory::CostGuard,
            OracleError::Parameters(_) | OracleError::BadDistance(_) => ExitCategory::Validation,
            OracleError::Degenerate(_) => ExitCategory::Degeneracy,
            OracleError::SampleFailure(_) | OracleError::Invariant(_) => ExitCategory::Internal,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DistanceMode {
    Symbolic,
    Specialized(BigRational),
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub seed: u64,
    /// Number of offset points used by the membership test.
    pub samples: usize,
    /// Relative tolerance of the vanishing test.
    pub tolerance: f64,
    /// Extra distances tried in specialized mode when degrees disagree.
    pub max_retries: usize,
    /// Method for the second elimination step; `None` picks the
    /// remainder sequence with a symbolic distance and interpolation
    /// otherwise.
    pub resultant: Option<ResultantMethod>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            seed: 0x5eed,
            samples: 24,
            tolerance: 1e-6,
            max_retries: 5,
            resultant: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OracleDegrees {
    pub delta1: u32,
    pub delta2: u32,
    /// Only known when the distance stays symbolic.
    pub delta_d: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscardReason {
    /// Involves neither `x1` nor `x2`.
    NoOffsetVariable,
    /// Unchanged when the distance changes.
    DistanceIndependent,
    /// Nonzero at every offset sample.
    FailedSampleTest,
}

impl std::fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiscardReason::NoOffsetVariable => "involves neither x1 nor x2",
            DiscardReason::DistanceIndependent => "does not depend on the distance",
            DiscardReason::FailedSampleTest => "does not vanish at any offset sample",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EliminationResult {
    /// Product of the kept base elements; primitive in `{x1, x2, d}`,
    /// positive leading coefficient.
    pub g_candidate: Poly,
    pub kept: Vec<Poly>,
    pub discarded: Vec<(Poly, DiscardReason)>,
    pub mode: DistanceMode,
    pub samples_used: usize,
}

impl EliminationResult {
    pub fn degrees(&self) -> OracleDegrees {
        let g = &self.g_candidate;
        OracleDegrees {
            delta1: g.degree(VarId::X1).max(0) as u32,
            delta2: g.degree(VarId::X2).max(0) as u32,
            delta_d: match self.mode {
                DistanceMode::Symbolic => Some(g.degree(VarId::D).max(0) as u32),
                DistanceMode::Specialized(_) => None,
            },
        }
    }
}

/// One distance tried by [`specialized_oracle`].
#[derive(Clone, Debug)]
pub struct Attempt {
    pub d0: BigRational,
    pub degrees: OracleDegrees,
}

#[derive(Clone, Debug)]
pub struct SpecializedOutcome {
    pub result: EliminationResult,
    pub attempts: Vec<Attempt>,
}

fn check_input(c: &ImplicitCurve, mode: &DistanceMode) -> Result<(), OracleError> {
    let params: Vec<VarId> = c.f().vars().iter().filter(|v| v.index() >= VarId::FIXED).collect();
    if !params.is_empty() {
        return Err(OracleError::Parameters(format!(
            "{} parameter(s); substitute numeric values first",
            params.len()
        )));
    }
    let (limit, what) = match mode {
        DistanceMode::Symbolic => (MAX_DEGREE_SYMBOLIC, "symbolic-d"),
        DistanceMode::Specialized(d0) => {
            if !d0.is_positive() {
                return Err(OracleError::BadDistance(d0.to_string()));
            }
            (MAX_DEGREE_SPECIALIZED, "specialized-d")
        }
    };
    if c.degree() > limit {
        return Err(OracleError::CostGuard(format!(
            "{what} elimination is limited to curves of degree <= {limit}, got {}",
            c.degree()
        )));
    }
    Ok(())
}

/// `b` and `n` of the offset system, with `d` either symbolic or replaced by
/// `p/q` (then `b` is scaled by `q^2`).
fn offset_system(c: &ImplicitCurve, mode: &DistanceMode) -> (Poly, Poly) {
    let (y1, y2) = (Poly::var(VarId::Y1), Poly::var(VarId::Y2));
    let (x1, x2) = (Poly::var(VarId::X1), Poly::var(VarId::X2));
    let u = &x1 - &y1;
    let v = &x2 - &y2;
    let dist2 = &u.square() + &v.square();
    let b = match mode {
        DistanceMode::Symbolic => &dist2 - &Poly::var(VarId::D).square(),
        DistanceMode::Specialized(d0) => {
            let q2 = d0.denom() * d0.denom();
            let p2 = d0.numer() * d0.numer();
            &dist2.scale(&q2) - &Poly::constant(p2)
        }
    };
    let n = &(c.f1() * &v) - &(c.f2() * &u);
    (b, n)
}

fn eliminate_in_order(
    f: &Poly,
    b: &Poly,
    n: &Poly,
    first: VarId,
    second: VarId,
    method: ResultantMethod,
) -> Result<Poly, PolyError> {
    let r1 = resultant_with(f, b, first, ResultantMethod::Subresultant)?;
    let r2 = resultant_with(f, n, first, ResultantMethod::Subresultant)?;
    resultant_with(&r1, &r2, second, method)
}

/// Elimination orders with shears: `(v, s)` eliminates `v` first after
/// replacing the other coordinate `w` by `w + s*v`, which tilts the lines
/// along which the first resultant pairs up roots. The first two entries
/// are the plain orders.
const SHEARS: [(VarId, i64); 8] = [
    (VarId::Y1, 0),
    (VarId::Y2, 0),
    (VarId::Y1, 1),
    (VarId::Y2, 1),
    (VarId::Y1, -2),
    (VarId::Y2, 3),
    (VarId::Y1, 5),
    (VarId::Y2, -7),
];

fn shear(p: &Poly, first: VarId, s: i64) -> Poly {
    if s == 0 {
        return p.clone();
    }
    let other = if first == VarId::Y1 { VarId::Y2 } else { VarId::Y1 };
    let image = &Poly::var(other) + &(&Poly::from_i64(s) * &Poly::var(first));
    p.substitute(&[(other, crate::poly::Binding::Poly(image))])
}

fn single_eliminant(f: &Poly, b: &Poly, n: &Poly, method: ResultantMethod) -> Result<Poly, OracleError> {
    match eliminate_in_order(f, b, n, VarId::Y1, VarId::Y2, method) {
        Ok(r) if !r.is_zero() => Ok(content_pp(&r, sets::x12()).1),
        Ok(_) => Err(OracleError::Degenerate("eliminant vanishes identically".into())),
        Err(e) => Err(OracleError::Degenerate(e.to_string())),
    }
}

/// Gcd of the eliminants over several coordinate systems. Spurious factors
/// of a single resultant chain depend on the coordinates, the offset does
/// not. Stops once a sheared system leaves the gcd unchanged.
fn common_eliminant(f: &Poly, b: &Poly, n: &Poly, method: ResultantMethod) -> Result<Poly, OracleError> {
    let mut acc: Option<Poly> = None;
    let mut stable = 0;
    for (i, (first, s)) in SHEARS.into_iter().enumerate() {
        let second = if first == VarId::Y1 { VarId::Y2 } else { VarId::Y1 };
        let (fs, bs, ns) = (shear(f, first, s), shear(b, first, s), shear(n, first, s));
        let r = match eliminate_in_order(&fs, &bs, &ns, first, second, method) {
            Ok(r) if !r.is_zero() => content_pp(&r, sets::x12()).1,
            Ok(_) | Err(PolyError::DegenerateResultant) => continue,
            Err(e) => return Err(OracleError::Degenerate(e.to_string())),
        };
        let next = match &acc {
            None => r,
            Some(a) if exact_div(&r, a).is_ok() => a.clone(),
            Some(a) => gcd(a, &r),
        };
        if i >= 2 && acc.as_ref().is_some_and(|a| a.degree_in(sets::x12()) == next.degree_in(sets::x12())) {
            stable += 1;
        } else {
            stable = 0;
        }
        acc = Some(next);
        if stable >= 1 {
            break;
        }
    }
    acc.ok_or_else(|| OracleError::Degenerate("no coordinate system gave a nonzero eliminant".into()))
}

/// Pieces `(q, m)` with `p ~ prod q^m`, each `q` squarefree.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let mut g = p.normalize();
    let mut radicals = Vec::new();
    while !g.is_constant() {
        let next = squarefree_defect(&g);
        radicals.push(exact_div(&g, &next).expect("defect divides"));
        g = next;
    }
    for (i, r) in radicals.iter().enumerate() {
        let piece = match radicals.get(i + 1) {
            Some(next) => exact_div(r, next).expect("radicals are nested"),
            None => r.clone(),
        };
        if !piece.is_constant() {
            out.push((piece, i as u32 + 1));
        }
    }
    out
}

/// Refines squarefree polynomials into pairwise coprime ones with the same
/// radical of the product.
pub fn coprime_base(inputs: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut base: Vec<Poly> = Vec::new();
    for p in inputs {
        let mut a = p.normalize();
        let mut i = 0;
        while i < base.len() && !a.is_constant() {
            let g = gcd(&a, &base[i]);
            if g.is_constant() {
                i += 1;
                continue;
            }
            let rest = exact_div(&base[i], &g).expect("gcd divides");
            a = exact_div(&a, &g).expect("gcd divides");
            base[i] = g;
            if !rest.is_constant() {
                base.push(rest.normalize());
            }
            i += 1;
        }
        if !a.is_constant() {
            base.push(a);
        }
    }
    base
}

fn vanishes_somewhere(h: &Poly, samples: &[OffsetSample], tol: f64) -> bool {
    samples.iter().any(|s| {
        let pt = [(VarId::X1, s.x1), (VarId::X2, s.x2), (VarId::D, s.d)];
        let val = eval_complex(h, &pt).norm();
        let scale = eval_abs_scale(h, &pt);
        scale.is_finite() && val <= tol * scale
    })
}

/// Eliminates the offset of `c` and keeps the factors confirmed numerically.
pub fn eliminate(c: &ImplicitCurve, mode: DistanceMode, opts: &OracleOptions) -> Result<EliminationResult, OracleError> {
    check_input(c, &mode)?;
    let (b, n) = offset_system(c, &mode);
    let f = c.f();
    let method = opts.resultant.unwrap_or(match mode {
        DistanceMode::Symbolic => ResultantMethod::Subresultant,
        DistanceMode::Specialized(_) => ResultantMethod::Interpolation,
    });
    let g_elim = common_eliminant(f, &b, &n, method)?;
    let (_, pp) = content_pp(&g_elim, sets::x12());
    let mut pieces: Vec<Poly> = squarefree_decomposition(&pp).into_iter().map(|(q, _)| q).collect();
    // factors that do not move with the distance cannot be offset components
    let distance_free = match &mode {
        DistanceMode::Symbolic => content_pp(&pp, VarSet::of(&[VarId::D])).0,
        DistanceMode::Specialized(d0) => {
            let aux = DistanceMode::Specialized(auxiliary_distance(d0));
            let (b_aux, n_aux) = offset_system(c, &aux);
            let other = single_eliminant(f, &b_aux, &n_aux, method)?;
            gcd(&pp, &other)
        }
    };
    if !distance_free.is_constant() {
        pieces.push(squarefree_part(&distance_free));
    }
    let base = coprime_base(pieces);

    let distance = match &mode {
        DistanceMode::Symbolic => None,
        DistanceMode::Specialized(d0) => Some(d0.to_f64().unwrap_or(f64::NAN)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = offset_samples(f, distance, opts.samples, &mut rng, 40 * opts.samples.max(1));
    if samples.len() < opts.samples {
        return Err(OracleError::SampleFailure(format!(
            "only {} of {} offset points could be computed",
            samples.len(),
            opts.samples
        )));
    }
    let xd = VarSet::of(&[VarId::X1, VarId::X2]);
    let (mut kept, mut discarded) = (Vec::new(), Vec::new());
    for h in base {
        let reason = if h.degree_in(xd) <= 0 {
            Some(DiscardReason::NoOffsetVariable)
        } else if !distance_free.is_constant() && !gcd(&h, &distance_free).is_constant() {
            Some(DiscardReason::DistanceIndependent)
        } else if !vanishes_somewhere(&h, &samples, opts.tolerance) {
            Some(DiscardReason::FailedSampleTest)
        } else {
            None
        };
        match reason {
            Some(r) => discarded.push((h, r)),
            None => kept.push(h),
        }
    }
    if kept.is_empty() {
        return Err(OracleError::SampleFailure("no eliminant factor vanishes on the offset samples".into()));
    }
    let g = kept.iter().fold(Poly::one(), |acc, h| &acc * h).normalize();
    let g = content_pp(&g, VarSet::of(&[VarId::X1, VarId::X2, VarId::D])).1;
    if matches!(mode, DistanceMode::Symbolic) && has_odd_power(&g, VarId::D) {
        return Err(OracleError::Invariant("odd power of d in the symbolic offset".into()));
    }
    Ok(EliminationResult {
        g_candidate: g,
        kept,
        discarded,
        mode,
        samples_used: samples.len(),
    })
}

pub fn has_odd_power(p: &Poly, v: VarId) -> bool {
    p.terms().iter().any(|(m, _)| m.exp(v) % 2 == 1)
}

fn auxiliary_distance(d0: &BigRational) -> BigRational {
    d0 * BigRational::new(BigInt::from(7), BigInt::from(5)) + BigRational::new(BigInt::from(1), BigInt::from(11))
}

fn draw_distance(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.gen_range(2..=9);
    let num: i64 = rng.gen_range(1..=4 * den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Specialized-distance elimination with confirmation.
///
/// The first distance is `d0` when given, otherwise drawn from the seeded
/// sequence. Further distances are drawn until two attempts agree on the
/// degrees (at most `max_retries` extra draws); the accepted result is the
/// earliest attempt carrying the largest degrees seen, since an unlucky
/// distance can only lower them.
pub fn specialized_oracle(
    c: &ImplicitCurve,
    d0: Option<BigRational>,
    opts: &OracleOptions,
) -> Result<SpecializedOutcome, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xd15_7a9c3);
    let mut attempts = Vec::new();
    let mut best: Option<EliminationResult> = None;
    let first = d0.unwrap_or_else(|| draw_distance(&mut rng));
    let mut next = Some(first);
    for _ in 0..=opts.max_retries + 1 {
        let d = match next.take() {
            Some(d) => d,
            None => draw_distance(&mut rng),
        };
        if attempts.iter().any(|a: &Attempt| a.d0 == d) {
            continue;
        }
        let res = eliminate(c, DistanceMode::Specialized(d.clone()), opts)?;
        let degs = res.degrees();
        let agrees = attempts.iter().any(|a: &Attempt| a.degrees == degs);
        attempts.push(Attempt { d0: d, degrees: degs });
        let better = match &best {
            None => true,
            Some(b) => {
                let bd = b.degrees();
                (degs.delta1, degs.delta2) > (bd.delta1, bd.delta2)
            }
        };
        if better {
            best = Some(res);
        }
        if agrees && best.as_ref().is_some_and(|b| b.degrees() == degs) {
            break;
        }
    }
    Ok(SpecializedOutcome {
        result: best.expect("at least one attempt"),
        attempts,
    })
}

/// `g` with `d` replaced by `d0` (denominators cleared).
pub fn specialize_distance(g: &Poly, d0: &BigRational) -> Poly {
    g.substitute(&[(VarId::D, crate::poly::Binding::Rational(d0.clone()))])
}

/// True when specializing the symbolic offset keeps both partial degrees.
pub fn specialization_coherent(symbolic: &EliminationResult, d0: &BigRational) -> bool {
    let g = specialize_distance(&symbolic.g_candidate, d0);
    !g.is_zero()
        && g.degree(VarId::X1) == symbolic.g_candidate.degree(VarId::X1)
        && g.degree(VarId::X2) == symbolic.g_candidate.degree(VarId::X2)
}

/// `p / q` when `q` divides `p` up to a rational scalar.
pub fn rational_ratio(p: &Poly, q: &Poly) -> Option<BigRational> {
    if p.is_zero() || q.is_zero() || p.len() != q.len() {
        return None;
    }
    let mut ratio: Option<BigRational> = None;
    for ((mp, cp), (mq, cq)) in p.terms().iter().zip(q.terms()) {
        if mp != mq || cq.is_zero() {
            return None;
        }
        let r = BigRational::new(cp.clone(), cq.clone());
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return None,
        }
    }
    ratio.filter(|r| !r.is_zero())
}
