//! Exact angle algebra.
//!
//! Angles are rational multiples of pi wherever they are derivable, so the
//! strict inequalities driving the case analysis never depend on floating
//! point comparisons.  Vertex angle-sum systems are solved exactly over the
//! rationals; rank-deficient systems yield affine parametric families in at
//! most two free parameters.

use std::fmt;

use num::rational::Rational64;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = Rational64;

/// Comparison tolerance (radians) for numeric angle values.
pub const ANGLE_TOL: f64 = 1e-12;

/// An exact angle `(p/q)·π`, kept in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPi(pub Rational);

impl RationalPi {
    pub fn new(p: i64, q: i64) -> Self {
        RationalPi(Rational::new(p, q))
    }

    pub fn to_radians(self) -> f64 {
        (*self.0.numer() as f64 / *self.0.denom() as f64) * std::f64::consts::PI
    }
}

impl fmt::Display for RationalPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &1 {
            write!(f, "{} pi", self.0.numer())
        } else {
            write!(f, "{}/{} pi", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for RationalPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for RationalPi {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let body = s
            .trim()
            .strip_suffix("pi")
            .ok_or_else(|| format!("missing 'pi' suffix in {s:?}"))?
            .trim();
        let (p, q) = match body.split_once('/') {
            Some((p, q)) => (
                p.trim().parse::<i64>().map_err(|e| e.to_string())?,
                q.trim().parse::<i64>().map_err(|e| e.to_string())?,
            ),
            None => (body.parse::<i64>().map_err(|e| e.to_string())?, 1),
        };
        if q == 0 {
            return Err("zero denominator".into());
        }
        Ok(RationalPi::new(p, q))
    }
}

impl Serialize for RationalPi {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalPi {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An affine expression `(c0 + Σ ci·ti)·π` in the shared free parameters of an
/// assignment.  Zero parameters makes it a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePi {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl AffinePi {
    pub fn constant(c: Rational) -> Self {
        AffinePi { constant: c, coeffs: Vec::new() }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, params: &[f64]) -> f64 {
        let mut v = rat_f64(self.constant);
        for (c, t) in self.coeffs.iter().zip(params) {
            v += rat_f64(*c) * t;
        }
        v * std::f64::consts::PI
    }

    /// Exact evaluation at rational parameter values.
    pub fn eval_exact(&self, params: &[Rational]) -> Rational {
        let mut v = self.constant;
        for (c, t) in self.coeffs.iter().zip(params) {
            v += *c * *t;
        }
        v
    }
}

pub fn rat_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One angle of an assignment: exact affine-in-parameters or a bare numeric
/// value in radians.
#[derive(Clone, PartialEq, Debug)]
pub enum AngleExpr {
    Exact(AffinePi),
    Numeric(f64),
}

impl AngleExpr {
    pub fn exact_const(p: i64, q: i64) -> Self {
        AngleExpr::Exact(AffinePi::constant(Rational::new(p, q)))
    }

    pub fn as_exact_const(&self) -> Option<RationalPi> {
        match self {
            AngleExpr::Exact(a) if a.is_constant() => Some(RationalPi(a.constant)),
            _ => None,
        }
    }

    pub fn radians(&self) -> Option<f64> {
        match self {
            AngleExpr::Exact(a) if a.is_constant() => {
                Some(rat_f64(a.constant) * std::f64::consts::PI)
            }
            AngleExpr::Numeric(v) => Some(*v),
            AngleExpr::Exact(_) => None,
        }
    }
}

/// Values of `(α, β, γ)`, possibly parametric in up to two free parameters
/// (units of π).
#[derive(Clone, PartialEq, Debug)]
pub struct AngleAssignment {
    pub alpha: AngleExpr,
    pub beta: AngleExpr,
    pub gamma: AngleExpr,
    pub num_params: usize,
}

impl AngleAssignment {
    pub fn numeric(alpha: f64, beta: f64, gamma: f64) -> Self {
        AngleAssignment {
            alpha: AngleExpr::Numeric(alpha),
            beta: AngleExpr::Numeric(beta),
            gamma: AngleExpr::Numeric(gamma),
            num_params: 0,
        }
    }

    pub fn exact(alpha: RationalPi, beta: RationalPi, gamma: RationalPi) -> Self {
        AngleAssignment {
            alpha: AngleExpr::Exact(AffinePi::constant(alpha.0)),
            beta: AngleExpr::Exact(AffinePi::constant(beta.0)),
            gamma: AngleExpr::Exact(AffinePi::constant(gamma.0)),
            num_params: 0,
        }
    }

    pub fn is_fully_determined(&self) -> bool {
        self.num_params == 0
    }

    pub fn angle(&self, which: Angle) -> &AngleExpr {
        match which {
            Angle::Alpha => &self.alpha,
            Angle::Beta => &self.beta,
            Angle::Gamma => &self.gamma,
        }
    }

    /// Numeric `(α, β, γ)` in radians; `None` while parameters are free.
    pub fn radians(&self) -> Option<(f64, f64, f64)> {
        Some((self.alpha.radians()?, self.beta.radians()?, self.gamma.radians()?))
    }

    /// Pin the free parameters (units of π) and return a numeric assignment.
    pub fn instantiate(&self, params: &[f64]) -> AngleAssignment {
        assert_eq!(params.len(), self.num_params, "wrong number of parameters");
        let pin = |e: &AngleExpr| match e {
            AngleExpr::Exact(a) => AngleExpr::Numeric(a.eval(params)),
            AngleExpr::Numeric(v) => AngleExpr::Numeric(*v),
        };
        AngleAssignment {
            alpha: pin(&self.alpha),
            beta: pin(&self.beta),
            gamma: pin(&self.gamma),
            num_params: 0,
        }
    }

    /// Pin parameters exactly, keeping the result exact.
    pub fn instantiate_exact(&self, params: &[Rational]) -> AngleAssignment {
        assert_eq!(params.len(), self.num_params, "wrong number of parameters");
        let pin = |e: &AngleExpr| match e {
            AngleExpr::Exact(a) => AngleExpr::Exact(AffinePi::constant(a.eval_exact(params))),
            AngleExpr::Numeric(v) => AngleExpr::Numeric(*v),
        };
        AngleAssignment {
            alpha: pin(&self.alpha),
            beta: pin(&self.beta),
            gamma: pin(&self.gamma),
            num_params: 0,
        }
    }
}

/// The three corner angles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Angle {
    Alpha,
    Beta,
    Gamma,
}

impl Angle {
    pub fn letter(self) -> char {
        match self {
            Angle::Alpha => 'a',
            Angle::Beta => 'b',
            Angle::Gamma => 'g',
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Angle::Alpha => 'α',
            Angle::Beta => 'β',
            Angle::Gamma => 'γ',
        }
    }
}

/// Counts `(a, b, c)` of `α, β, γ` meeting at a vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexType {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

#[derive(thiserror::Error, Debug, PartialEq, Eq)]
pub enum VertexTypeError {
    #[error("vertex degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("odd y-degree: b + c = {0} must be even")]
    OddParity(u32),
}

impl VertexType {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, VertexTypeError> {
        let v = VertexType { a, b, c };
        if v.degree() < 3 {
            return Err(VertexTypeError::DegreeTooSmall(v.degree()));
        }
        if (b + c) % 2 != 0 {
            return Err(VertexTypeError::OddParity(b + c));
        }
        Ok(v)
    }

    /// Unchecked construction, for intermediate counting only.
    pub fn raw(a: u32, b: u32, c: u32) -> Self {
        VertexType { a, b, c }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn count(&self, angle: Angle) -> u32 {
        match angle {
            Angle::Alpha => self.a,
            Angle::Beta => self.b,
            Angle::Gamma => self.c,
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sup = |f: &mut fmt::Formatter<'_>, n: u32| -> fmt::Result {
            match n {
                2 => write!(f, "²"),
                3 => write!(f, "³"),
                4 => write!(f, "⁴"),
                5 => write!(f, "⁵"),
                6 => write!(f, "⁶"),
                7 => write!(f, "⁷"),
                8 => write!(f, "⁸"),
                9 => write!(f, "⁹"),
                n => write!(f, "^{n}"),
            }
        };
        for (angle, n) in [('α', self.a), ('β', self.b), ('γ', self.c)] {
            if n >= 1 {
                write!(f, "{angle}")?;
                if n >= 2 {
                    sup(f, n)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(thiserror::Error, Debug, PartialEq)]
pub enum AngleError {
    #[error("unresolved parameters")]
    UnresolvedParameters,
}

/// Residual `a·α + b·β + c·γ − 2π` in radians.
pub fn vertex_residual(v: VertexType, a: &AngleAssignment) -> Result<f64, AngleError> {
    // Exact path: the residual of an exact solution is exactly zero.
    if let (Some(ea), Some(eb), Some(ec)) =
        (a.alpha.as_exact_const(), a.beta.as_exact_const(), a.gamma.as_exact_const())
    {
        let sum = Rational::from(v.a as i64) * ea.0
            + Rational::from(v.b as i64) * eb.0
            + Rational::from(v.c as i64) * ec.0
            - Rational::from(2);
        return Ok(rat_f64(sum) * std::f64::consts::PI);
    }
    let (al, be, ga) = a.radians().ok_or(AngleError::UnresolvedParameters)?;
    Ok(v.a as f64 * al + v.b as f64 * be + v.c as f64 * ga - 2.0 * std::f64::consts::PI)
}

/// Result of solving the vertex angle-sum system of a set of types.
#[derive(Clone, PartialEq, Debug)]
pub enum AngleSolution {
    Inconsistent,
    Solved(AngleAssignment),
}

impl AngleSolution {
    pub fn assignment(&self) -> Option<&AngleAssignment> {
        match self {
            AngleSolution::Solved(a) => Some(a),
            AngleSolution::Inconsistent => None,
        }
    }
}

/// Solve `a·α + b·β + c·γ = 2π` simultaneously for all given types, exactly
/// over rationals of π.  Rank-deficient systems come back parametric with the
/// free unknowns (in α, β, γ order) as parameters.
pub fn solve_angles<I>(types: I) -> AngleSolution
where
    I: IntoIterator<Item = VertexType>,
{
    // Rows [a, b, c | 2] in units of π; canonical row order for determinism.
    let mut rows: Vec<[Rational; 4]> = types
        .into_iter()
        .map(|v| {
            [
                Rational::from(v.a as i64),
                Rational::from(v.b as i64),
                Rational::from(v.c as i64),
                Rational::from(2),
            ]
        })
        .collect();
    rows.sort();
    rows.dedup();
    assert!(!rows.is_empty(), "solve_angles requires at least one type");

    // Gauss-Jordan elimination.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                for k in 0..4 {
                    let sub = factor * rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero rhs.
    for row in &rows[r..] {
        if row[..3].iter().all(|x| x.is_zero()) && !row[3].is_zero() {
            return AngleSolution::Inconsistent;
        }
    }

    let free_cols: Vec<usize> = (0..3).filter(|c| !pivot_cols.contains(c)).collect();
    let mut exprs: Vec<AffinePi> = Vec::with_capacity(3);
    for col in 0..3 {
        if let Some(t) = free_cols.iter().position(|&fc| fc == col) {
            let mut coeffs = vec![Rational::zero(); free_cols.len()];
            coeffs[t] = Rational::one();
            exprs.push(AffinePi { constant: Rational::zero(), coeffs });
        } else {
            let pr = pivot_cols.iter().position(|&pc| pc == col).unwrap();
            let coeffs = free_cols.iter().map(|&fc| -rows[pr][fc]).collect();
            exprs.push(AffinePi { constant: rows[pr][3], coeffs });
        }
    }
    let mut it = exprs.into_iter();
    AngleSolution::Solved(AngleAssignment {
        alpha: AngleExpr::Exact(it.next().unwrap()),
        beta: AngleExpr::Exact(it.next().unwrap()),
        gamma: AngleExpr::Exact(it.next().unwrap()),
        num_params: free_cols.len(),
    })
}

/// Outcome of the feasibility predicate.
#[derive(Clone, PartialEq, Debug)]
pub enum Feasibility {
    Infeasible,
    /// Fully determined assignment satisfying every strict inequality.
    Feasible,
    /// One-parameter family: the open parameter interval (units of π).
    Interval { lo: Rational, hi: Rational },
    /// Two-parameter family with a nonempty open feasible region.
    Region,
}

impl Feasibility {
    pub fn is_nonempty(&self) -> bool {
        !matches!(self, Feasibility::Infeasible)
    }
}

/// Standing strict inequalities on `(α, β, γ)` for gonality `m`:
/// `α ∈ ((1−2/m)π, π)`, `β ∈ (π/2, βmax)`, `γ ∈ (0, π)`, `β > γ`, `β + γ > π`,
/// where `βmax` is `π` under `assume_convex` and `3π/2` otherwise.
fn standing_constraints(m: u32, assume_convex: bool) -> Vec<(Rational, [Rational; 3])> {
    let one = Rational::one();
    let beta_max =
        if assume_convex { Rational::one() } else { Rational::new(3, 2) };
    // Each entry: constant + cα·α + cβ·β + cγ·γ > 0, units of π.
    vec![
        // α > (1 − 2/m)π
        (Rational::new(2, m as i64) - one, [one, Rational::zero(), Rational::zero()]),
        // α < π
        (one, [-one, Rational::zero(), Rational::zero()]),
        // β > π/2
        (-Rational::new(1, 2), [Rational::zero(), one, Rational::zero()]),
        // β < βmax
        (beta_max, [Rational::zero(), -one, Rational::zero()]),
        // γ > 0
        (Rational::zero(), [Rational::zero(), Rational::zero(), one]),
        // γ < π
        (one, [Rational::zero(), Rational::zero(), -one]),
        // β > γ
        (Rational::zero(), [Rational::zero(), one, -one]),
        // β + γ > π
        (-one, [Rational::zero(), one, one]),
    ]
}

/// Check the standing inequalities for an assignment, or compute the feasible
/// parameter interval/region for a parametric one.
pub fn feasible(a: &AngleAssignment, m: u32) -> Feasibility {
    feasible_with(a, m, true)
}

pub fn feasible_with(a: &AngleAssignment, m: u32, assume_convex: bool) -> Feasibility {
    assert!(m >= 3);
    let cons = standing_constraints(m, assume_convex);

    // Numeric path.
    if matches!(a.alpha, AngleExpr::Numeric(_))
        || matches!(a.beta, AngleExpr::Numeric(_))
        || matches!(a.gamma, AngleExpr::Numeric(_))
    {
        let Some((al, be, ga)) = a.radians() else {
            return Feasibility::Infeasible;
        };
        let pi = std::f64::consts::PI;
        let ok = cons.iter().all(|(c0, cs)| {
            rat_f64(*c0) * pi
                + rat_f64(cs[0]) * al
                + rat_f64(cs[1]) * be
                + rat_f64(cs[2]) * ga
                > ANGLE_TOL
        });
        return if ok { Feasibility::Feasible } else { Feasibility::Infeasible };
    }

    // Exact path: substitute the affine expressions into each constraint to
    // get strict affine constraints over the free parameters.
    let subbed = substitute_constraints(a, cons.iter().map(|(c0, cs)| (*c0, *cs, true)));
    feasibility_of(&subbed, a.num_params)
}

/// Substitute an exact assignment's affine angle expressions into affine
/// constraints on `(α, β, γ)` (units of π, with strictness flags), yielding
/// constraints over the free parameters.
pub fn substitute_constraints<I>(a: &AngleAssignment, cons: I) -> Vec<fm::Constraint>
where
    I: IntoIterator<Item = (Rational, [Rational; 3], bool)>,
{
    let exprs = [&a.alpha, &a.beta, &a.gamma].map(|e| match e {
        AngleExpr::Exact(x) => x.clone(),
        AngleExpr::Numeric(_) => panic!("substitute_constraints requires an exact assignment"),
    });
    let k = a.num_params;
    cons.into_iter()
        .map(|(c0, cs, strict)| {
            let mut constant = c0;
            let mut coeffs = vec![Rational::zero(); k];
            for (ci, e) in cs.iter().zip(&exprs) {
                constant += *ci * e.constant;
                for (out, ec) in coeffs.iter_mut().zip(&e.coeffs) {
                    *out += *ci * *ec;
                }
            }
            fm::Constraint { constant, coeffs, strict }
        })
        .collect()
}

/// Classify feasibility of a constraint system over `k ≤ 2` free parameters.
pub fn feasibility_of(cons: &[fm::Constraint], k: usize) -> Feasibility {
    match k {
        0 => {
            if fm::feasible(cons, 0) {
                Feasibility::Feasible
            } else {
                Feasibility::Infeasible
            }
        }
        1 => match fm::interval_1d(cons) {
            Some((lo, hi)) => Feasibility::Interval { lo, hi },
            None => Feasibility::Infeasible,
        },
        2 => {
            if fm::feasible(cons, 2) {
                Feasibility::Region
            } else {
                Feasibility::Infeasible
            }
        }
        _ => unreachable!("at most two free parameters"),
    }
}

/// The standing strict constraints plus the derived global bound
/// `α + β + γ ≤ 2π` (forced in any tiling by the αβ⋯/αγ⋯ vertex and parity),
/// as `(constant, coeffs, strict)` rows for substitution.
pub fn admissibility_constraints(
    m: u32,
    assume_convex: bool,
) -> Vec<(Rational, [Rational; 3], bool)> {
    let one = Rational::one();
    let mut rows: Vec<(Rational, [Rational; 3], bool)> = standing_constraints(m, assume_convex)
        .into_iter()
        .map(|(c, k)| (c, k, true))
        .collect();
    rows.push((Rational::from(2), [-one, -one, -one], false));
    rows
}

/// Alternative row systems whose union defines admissibility of a shared
/// angle assignment: the open standing region, plus the flat-quadrilateral
/// slice `β + γ = π`, `α + β = π`.
///
/// `β + γ > π` is the quadrilateral's positive-area condition.  The single
/// degenerate exception the classification keeps is the combination whose
/// quadrilaterals flatten with the polygon corner fitting flush against them
/// (`α + β = π`, hence `γ = α`); every other zero-area combination merely
/// decorates a monohedral polygon tiling and is excluded.
pub fn combination_constraint_systems(
    m: u32,
    assume_convex: bool,
) -> [Vec<(Rational, [Rational; 3], bool)>; 2] {
    let one = Rational::one();
    let zero = Rational::zero();
    let strict: Vec<(Rational, [Rational; 3], bool)> = standing_constraints(m, assume_convex)
        .into_iter()
        .map(|(c, k)| (c, k, true))
        .collect();
    let area = [zero, one, one];
    let mut slice: Vec<(Rational, [Rational; 3], bool)> = strict
        .iter()
        .filter(|(c, k, _)| !(*c == -one && *k == area))
        .cloned()
        .collect();
    // β + γ = π and α + β = π as pairs of opposed non-strict rows.
    for eq in [[zero, one, one], [one, one, zero]] {
        slice.push((-one, eq, false));
        slice.push((one, eq.map(|r| -r), false));
    }
    [strict, slice]
}

/// Feasibility of small systems of affine inequalities over rationals, by
/// Fourier-Motzkin elimination.  Constraints may be strict (`> 0`) or
/// non-strict (`≥ 0`).
pub mod fm {
    use super::Rational;
    use num::{Signed, Zero};

    /// `constant + Σ coeffs[i]·t_i > 0` (strict) or `≥ 0`.
    #[derive(Clone, Debug)]
    pub struct Constraint {
        pub constant: Rational,
        pub coeffs: Vec<Rational>,
        pub strict: bool,
    }

    impl Constraint {
        pub fn strict(constant: Rational, coeffs: Vec<Rational>) -> Self {
            Constraint { constant, coeffs, strict: true }
        }

        pub fn nonstrict(constant: Rational, coeffs: Vec<Rational>) -> Self {
            Constraint { constant, coeffs, strict: false }
        }

        fn holds_const(&self) -> bool {
            if self.strict {
                self.constant.is_positive()
            } else {
                !self.constant.is_negative()
            }
        }
    }

    /// Feasible interval for a single variable; `None` if empty.  Unbounded
    /// sides are clamped at ±10 (units of π), far outside any angle's range.
    /// The returned bounds ignore openness (callers here only ever consume
    /// intervals of positive length).
    pub fn interval_1d(cons: &[Constraint]) -> Option<(Rational, Rational)> {
        let mut lo = (Rational::from(-10), false); // (bound, open)
        let mut hi = (Rational::from(10), false);
        for c in cons {
            let a = c.coeffs.first().copied().unwrap_or_else(Rational::zero);
            if a.is_zero() {
                if !c.holds_const() {
                    return None;
                }
            } else if a.is_positive() {
                let b = -c.constant / a;
                if b > lo.0 || (b == lo.0 && c.strict) {
                    lo = (b, c.strict);
                }
            } else {
                let b = -c.constant / a;
                if b < hi.0 || (b == hi.0 && c.strict) {
                    hi = (b, c.strict);
                }
            }
        }
        if lo.0 < hi.0 || (lo.0 == hi.0 && !lo.1 && !hi.1) {
            Some((lo.0, hi.0))
        } else {
            None
        }
    }

    /// Whether the affine system over `k` variables has a solution.
    pub fn feasible(cons: &[Constraint], k: usize) -> bool {
        if k == 0 {
            return cons.iter().all(|c| c.holds_const());
        }
        if k == 1 {
            return interval_1d(cons).is_some();
        }
        // Eliminate variable k-1.
        let var = k - 1;
        let mut lower: Vec<Constraint> = Vec::new(); // coeff > 0: t above bound
        let mut upper: Vec<Constraint> = Vec::new(); // coeff < 0: t below bound
        let mut rest: Vec<Constraint> = Vec::new();
        for c in cons {
            let a = c.coeffs.get(var).copied().unwrap_or_else(Rational::zero);
            let mut c = c.clone();
            c.coeffs.resize(k, Rational::zero());
            if a.is_zero() {
                c.coeffs.truncate(var);
                rest.push(c);
            } else {
                // Normalize coefficient of t to ±1.
                let inv = a.abs().recip();
                c.constant *= inv;
                for x in c.coeffs.iter_mut() {
                    *x *= inv;
                }
                c.coeffs.truncate(var);
                if a.is_positive() {
                    lower.push(c);
                } else {
                    upper.push(c);
                }
            }
        }
        // Pair each lower with each upper; the combination is strict if
        // either side was.
        for l in &lower {
            for u in &upper {
                let mut c = Constraint {
                    constant: l.constant + u.constant,
                    coeffs: vec![Rational::zero(); var],
                    strict: l.strict || u.strict,
                };
                for i in 0..var {
                    c.coeffs[i] = l.coeffs[i] + u.coeffs[i];
                }
                rest.push(c);
            }
        }
        feasible(&rest, var)
    }
}
