//! Vertex types and anglewise vertex combinations (AVCs).
//!
//! A vertex type survives if it has even y-degree, a nonempty feasible angle
//! region under the prototile inequalities together with the derived bound
//! `α + β + γ ≤ 2π`, and at least one consistent angle arrangement whose
//! corner adjacencies are realizable across edges.  The last filter is the
//! mechanized form of the "β|β is not a vertex, hence γ|γ is not a vertex"
//! deductions: a corner pair meeting along an edge forces the partner pair at
//! the other end of the same edge (x-edges pair α with α and β with γ,
//! y-edges pair β with γ), so pairs whose partners are unrealizable are
//! pruned to a fixpoint.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::Rational64;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::angles::{
    self, admissibility_constraints, feasibility_of, fm, solve_angles,
    substitute_constraints, AffinePi, Angle, AngleAssignment, AngleExpr, AngleSolution,
    Rational, VertexType,
};
use crate::arrangements::{enumerate_arrangements_opt, EdgeLabel, VertexArrangement};

/// Default cap on vertex degree; the deepest vertex in the classification has
/// degree 8.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

/// Default cap on total tile count; the largest catalog tiling has 18 tiles.
pub const DEFAULT_MAX_TILES: u32 = 100;

/// Knobs shared by type/AVC enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub max_degree: u32,
    pub max_tiles: u32,
    pub allow_mirrored: bool,
    pub assume_convex: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_degree: DEFAULT_MAX_DEGREE,
            max_tiles: DEFAULT_MAX_TILES,
            allow_mirrored: true,
            assume_convex: true,
        }
    }
}

/// A set of vertex types with a common feasible angle assignment.
#[derive(Clone, Debug)]
pub struct Avc {
    pub m: u32,
    pub members: BTreeSet<VertexType>,
    pub solution: AngleAssignment,
}

impl Avc {
    /// Arrangements (up to rotation) of every member, the search's move table.
    pub fn member_arrangements(
        &self,
        allow_mirrored: bool,
    ) -> BTreeMap<VertexType, Vec<VertexArrangement>> {
        self.members
            .iter()
            .map(|&v| {
                let arrs = enumerate_arrangements_opt(v, false, allow_mirrored)
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                (v, arrs)
            })
            .collect()
    }
}

/// Whether a single vertex type has a nonempty open feasible angle region.
fn type_angle_feasible(v: VertexType, m: u32, assume_convex: bool) -> bool {
    let AngleSolution::Solved(sol) = solve_angles([v]) else {
        return false;
    };
    let cons = substitute_constraints(&sol, admissibility_constraints(m, assume_convex));
    feasibility_of(&cons, sol.num_params).is_nonempty()
}

/// AVC-level feasibility: the standing region with the quad area bound
/// `β + γ ≥ π` taken non-strictly, since one catalog combination's unique
/// solution lies exactly on that boundary.
fn combination_feasible(sol: &AngleAssignment, m: u32, assume_convex: bool) -> bool {
    angles::combination_constraint_systems(m, assume_convex)
        .into_iter()
        .any(|rows| {
            let cons = substitute_constraints(sol, rows);
            feasibility_of(&cons, sol.num_params).is_nonempty()
        })
}

/// An unordered corner pair meeting across an edge of the given label.
type CornerPair = (EdgeLabel, Angle, Angle);

fn pair(label: EdgeLabel, a: Angle, b: Angle) -> CornerPair {
    (label, a.min(b), b.max(a))
}

/// The pair forced at the other end of the same edge.
fn partner(p: CornerPair) -> CornerPair {
    let flip = |a: Angle| match a {
        Angle::Alpha => Angle::Alpha,
        Angle::Beta => Angle::Gamma,
        Angle::Gamma => Angle::Beta,
    };
    pair(p.0, flip(p.1), flip(p.2))
}

fn arrangement_pairs(arr: &VertexArrangement) -> Vec<CornerPair> {
    let n = arr.len();
    (0..n)
        .map(|i| {
            pair(
                arr.seps()[i],
                arr.tokens()[i].angle,
                arr.tokens()[(i + 1) % n].angle,
            )
        })
        .collect()
}

/// All admissible vertex types for gonality `m` up to `max_degree`.
pub fn enumerate_vertex_types(m: u32, max_degree: u32) -> Vec<VertexType> {
    enumerate_vertex_types_opt(m, &EnumOptions { max_degree, ..Default::default() })
}

pub fn enumerate_vertex_types_opt(m: u32, opts: &EnumOptions) -> Vec<VertexType> {
    assert!(m >= 3 && opts.max_degree >= 3);
    admissible_universe(m, opts)
        .into_keys()
        .filter(|v| v.degree() <= opts.max_degree)
        .collect()
}

/// The admissible types with their surviving arrangements, computed at the
/// full degree horizon and memoized.
///
/// The edge-transfer pruning reasons about which corner pairs can occur
/// anywhere in a tiling, so it must run over the full type universe; a
/// truncated universe would discard partner pairs that only occur at higher
/// degrees.
pub(crate) fn admissible_universe(
    m: u32,
    opts: &EnumOptions,
) -> BTreeMap<VertexType, Vec<VertexArrangement>> {
    type Key = (u32, u32, bool, bool);
    type Cache = BTreeMap<Key, BTreeMap<VertexType, Vec<VertexArrangement>>>;
    static CACHE: std::sync::OnceLock<std::sync::Mutex<Cache>> = std::sync::OnceLock::new();

    let universe_cap = opts.max_degree.max(DEFAULT_MAX_DEGREE);
    let key = (m, universe_cap, opts.allow_mirrored, opts.assume_convex);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let computed = compute_admissible_universe(m, universe_cap, opts);
    cache.lock().unwrap().insert(key, computed.clone());
    computed
}

fn compute_admissible_universe(
    m: u32,
    universe_cap: u32,
    opts: &EnumOptions,
) -> BTreeMap<VertexType, Vec<VertexArrangement>> {
    let mut arrangements: BTreeMap<VertexType, Vec<VertexArrangement>> = BTreeMap::new();
    for deg in 3..=universe_cap {
        for a in 0..=deg {
            for b in 0..=(deg - a) {
                let c = deg - a - b;
                if (b + c) % 2 != 0 {
                    continue;
                }
                let v = VertexType::raw(a, b, c);
                if !type_angle_feasible(v, m, opts.assume_convex) {
                    continue;
                }
                let arrs: Vec<_> = enumerate_arrangements_opt(v, false, opts.allow_mirrored)
                    .expect("parity checked")
                    .into_iter()
                    .collect();
                if arrs.is_empty() {
                    continue;
                }
                arrangements.insert(v, arrs);
            }
        }
    }

    // Edge-transfer fixpoint over realizable corner pairs.
    loop {
        let mut pairs: BTreeSet<CornerPair> = BTreeSet::new();
        for arrs in arrangements.values() {
            for arr in arrs {
                pairs.extend(arrangement_pairs(arr));
            }
        }
        // Close the pair set under the partner relation.
        loop {
            let keep: BTreeSet<CornerPair> =
                pairs.iter().copied().filter(|&p| pairs.contains(&partner(p))).collect();
            if keep.len() == pairs.len() {
                break;
            }
            pairs = keep;
        }
        let before = arrangements.len();
        arrangements.retain(|_, arrs| {
            arrs.retain(|arr| arrangement_pairs(arr).iter().all(|p| pairs.contains(p)));
            !arrs.is_empty()
        });
        if arrangements.len() == before {
            break;
        }
    }
    arrangements
}

/// Remainder slices of the admissible type list, keyed by which repeated
/// corner pair a type contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderSlices {
    /// Types containing β² (b ≥ 2).
    pub beta2: Vec<VertexType>,
    /// Types containing γ² (c ≥ 2).
    pub gamma2: Vec<VertexType>,
    /// Types containing βγ (b ≥ 1 and c ≥ 1).
    pub betagamma: Vec<VertexType>,
}

pub fn classify_remainders(m: u32) -> RemainderSlices {
    classify_remainders_opt(m, &EnumOptions::default())
}

pub fn classify_remainders_opt(m: u32, opts: &EnumOptions) -> RemainderSlices {
    let types = enumerate_vertex_types_opt(m, opts);
    RemainderSlices {
        beta2: types.iter().copied().filter(|v| v.b >= 2).collect(),
        gamma2: types.iter().copied().filter(|v| v.c >= 2).collect(),
        betagamma: types.iter().copied().filter(|v| v.b >= 1 && v.c >= 1).collect(),
    }
}

/// Whether a type's angle-sum equation holds identically on the solution
/// space of an assignment.
fn identically_satisfied(v: VertexType, sol: &AngleAssignment) -> bool {
    let exprs = [&sol.alpha, &sol.beta, &sol.gamma].map(|e| match e {
        AngleExpr::Exact(x) => x.clone(),
        AngleExpr::Numeric(_) => unreachable!("solve_angles yields exact expressions"),
    });
    let counts = [v.a as i64, v.b as i64, v.c as i64];
    let mut residual = AffinePi {
        constant: -Rational::from(2),
        coeffs: vec![Rational::zero(); sol.num_params],
    };
    for (n, e) in counts.iter().zip(&exprs) {
        let n = Rational64::from(*n);
        residual.constant += n * e.constant;
        for (out, c) in residual.coeffs.iter_mut().zip(&e.coeffs) {
            *out += n * *c;
        }
    }
    residual.constant.is_zero() && residual.coeffs.iter().all(|c| c.is_zero())
}

/// Enumerate the ⊆-maximal AVCs for gonality `m`.
pub fn enumerate_avcs(m: u32, max_degree: u32) -> Vec<Avc> {
    enumerate_avcs_opt(m, &EnumOptions { max_degree, ..Default::default() })
}

pub fn enumerate_avcs_opt(m: u32, opts: &EnumOptions) -> Vec<Avc> {
    let types = enumerate_vertex_types_opt(m, opts);
    let n = types.len();
    let mut candidates: BTreeSet<BTreeSet<VertexType>> = BTreeSet::new();

    // Every maximal AVC's solution space is spanned by at most three of its
    // members, so generating subsets of size ≤ 3 and closing them reaches
    // every candidate member set.
    let mut consider = |gen: &[VertexType]| {
        let AngleSolution::Solved(sol) = solve_angles(gen.iter().copied()) else {
            return;
        };
        if !combination_feasible(&sol, m, opts.assume_convex) {
            return;
        }
        let closure: BTreeSet<VertexType> = types
            .iter()
            .copied()
            .filter(|&v| identically_satisfied(v, &sol))
            .collect();
        if !closure.is_empty() {
            candidates.insert(closure);
        }
    };
    for i in 0..n {
        consider(&[types[i]]);
        for j in (i + 1)..n {
            consider(&[types[i], types[j]]);
            for k in (j + 1)..n {
                consider(&[types[i], types[j], types[k]]);
            }
        }
    }

    let mut avcs: Vec<Avc> = Vec::new();
    'cand: for members in candidates {
        let AngleSolution::Solved(solution) = solve_angles(members.iter().copied()) else {
            continue;
        };
        if !combination_feasible(&solution, m, opts.assume_convex) {
            continue;
        }
        // Lemma: both αβ⋯ and αγ⋯ are vertices.
        if !members.iter().any(|v| v.a >= 1 && v.b >= 1)
            || !members.iter().any(|v| v.a >= 1 && v.c >= 1)
        {
            continue;
        }
        // Degree lemma: a degree 3, 4 or 5 vertex exists; without triangle
        // tiles (m ≥ 4) a degree 3 vertex exists.
        if !members.iter().any(|v| v.degree() <= 5) {
            continue;
        }
        if m >= 4 && !members.iter().any(|v| v.degree() == 3) {
            continue;
        }
        let avc = Avc { m, members, solution };
        if census(&avc, opts.max_tiles).is_empty() {
            continue 'cand;
        }
        avcs.push(avc);
    }

    // Keep only ⊆-maximal member sets.
    let keep: Vec<bool> = avcs
        .iter()
        .map(|a| {
            !avcs
                .iter()
                .any(|b| a.members.len() < b.members.len() && a.members.is_subset(&b.members))
        })
        .collect();
    avcs.into_iter()
        .zip(keep)
        .filter_map(|(a, k)| k.then_some(a))
        .collect()
}

/// Integer bookkeeping of a complete tiling: vertex-type multiplicities and
/// tile counts tied together by double counting and the Euler formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub multiplicities: BTreeMap<VertexType, u32>,
    pub f_p: u32,
    pub f_q: u32,
}

impl Census {
    pub fn vertices(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    pub fn edges(&self, m: u32) -> u32 {
        (m * self.f_p + 4 * self.f_q) / 2
    }

    pub fn faces(&self) -> u32 {
        self.f_p + self.f_q
    }

    pub fn tile_count(&self) -> u32 {
        self.faces()
    }

    /// Double-counting and Euler checks for gonality `m`.
    pub fn consistent(&self, m: u32) -> bool {
        let sum = |f: fn(&VertexType) -> u32| -> u32 {
            self.multiplicities.iter().map(|(v, n)| f(v) * n).sum()
        };
        let two_e = m * self.f_p + 4 * self.f_q;
        two_e % 2 == 0
            && sum(|v| v.a) == m * self.f_p
            && sum(|v| v.b) == 2 * self.f_q
            && sum(|v| v.c) == 2 * self.f_q
            && self.vertices() as i64 - (two_e / 2) as i64 + self.faces() as i64 == 2
    }
}

/// All census solutions for an AVC with `f_P + f_Q ≤ max_tiles`.
///
/// Both prototiles must appear (the tiling is dihedral), every multiplicity
/// is a nonnegative integer, and for exact assignments the Gauss-Bonnet area
/// identity is checked as well.
pub fn census(avc: &Avc, max_tiles: u32) -> Vec<Census> {
    assert!(max_tiles >= 2);
    let m = avc.m;
    let members: Vec<VertexType> = avc.members.iter().copied().collect();
    let mut out = Vec::new();
    for f_q in 1..max_tiles {
        for f_p in 1..=(max_tiles - f_q) {
            let two_e = m * f_p + 4 * f_q;
            if two_e % 2 != 0 {
                continue;
            }
            let f = f_p + f_q;
            let v_total = 2 + (two_e / 2) as i64 - f as i64;
            if v_total < 3 {
                continue;
            }
            let targets = [m * f_p, 2 * f_q, 2 * f_q];
            let mut counts = vec![0u32; members.len()];
            fill(
                &members,
                0,
                targets,
                v_total as u32,
                &mut counts,
                &mut |counts: &[u32]| {
                    let census = Census {
                        multiplicities: members
                            .iter()
                            .copied()
                            .zip(counts.iter().copied())
                            .filter(|(_, n)| *n > 0)
                            .collect(),
                        f_p,
                        f_q,
                    };
                    debug_assert!(census.consistent(m));
                    if gauss_bonnet_ok(avc, &census) {
                        out.push(census);
                    }
                },
            );
        }
    }
    out
}

fn fill(
    members: &[VertexType],
    idx: usize,
    remaining: [u32; 3],
    count_left: u32,
    counts: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if idx == members.len() {
        if remaining == [0, 0, 0] && count_left == 0 {
            emit(counts);
        }
        return;
    }
    // Budget pruning against what the remaining members can still absorb.
    let suffix = &members[idx..];
    let total: u32 = remaining.iter().sum();
    let min_deg = suffix.iter().map(|v| v.degree()).min().unwrap();
    let max_deg = suffix.iter().map(|v| v.degree()).max().unwrap();
    if total < count_left * min_deg || total > count_left * max_deg {
        return;
    }
    for (i, letter) in [Angle::Alpha, Angle::Beta, Angle::Gamma].into_iter().enumerate() {
        let max_per = suffix.iter().map(|v| v.count(letter)).max().unwrap();
        if remaining[i] > count_left * max_per {
            return;
        }
    }
    let v = members[idx];
    let mut cap = count_left;
    for (have, need) in [(v.a, remaining[0]), (v.b, remaining[1]), (v.c, remaining[2])] {
        if have > 0 {
            cap = cap.min(need / have);
        }
    }
    if idx + 1 == members.len() {
        // Last member: the multiplicity is forced by the vertex count.
        counts[idx] = count_left;
        if count_left <= cap
            && remaining == [count_left * v.a, count_left * v.b, count_left * v.c]
        {
            emit(counts);
        }
        counts[idx] = 0;
        return;
    }
    for n in 0..=cap {
        counts[idx] = n;
        fill(
            members,
            idx + 1,
            [
                remaining[0] - n * v.a,
                remaining[1] - n * v.b,
                remaining[2] - n * v.c,
            ],
            count_left - n,
            counts,
            emit,
        );
    }
    counts[idx] = 0;
}

/// Exact Gauss-Bonnet area filter: `f_P·(mα − (m−2)π) + f_Q·(2β + 2γ − 2π) =
/// 4π`.  With exact vertex equations this is equivalent to the Euler check,
/// so it acts as a redundant consistency assertion; for parametric solutions
/// the identity is verified to hold identically or the numeric value is used.
fn gauss_bonnet_ok(avc: &Avc, census: &Census) -> bool {
    let m = avc.m as i64;
    let fp = Rational::from(census.f_p as i64);
    let fq = Rational::from(census.f_q as i64);
    let exprs = [&avc.solution.alpha, &avc.solution.beta, &avc.solution.gamma];
    if exprs.iter().all(|e| matches!(e, AngleExpr::Exact(_))) {
        let get = |e: &AngleExpr| match e {
            AngleExpr::Exact(x) => x.clone(),
            AngleExpr::Numeric(_) => unreachable!(),
        };
        let (al, be, ga) = (get(exprs[0]), get(exprs[1]), get(exprs[2]));
        let k = avc.solution.num_params;
        let mut total = AffinePi {
            constant: -Rational::from(4),
            coeffs: vec![Rational::zero(); k],
        };
        // f_P·(m·α − (m−2)) + f_Q·(2β + 2γ − 2) − 4, units of π.
        total.constant += fp * (Rational::from(m) * al.constant - Rational::from(m - 2));
        total.constant += fq
            * (Rational::from(2) * be.constant + Rational::from(2) * ga.constant
                - Rational::from(2));
        for i in 0..k {
            total.coeffs[i] += fp * Rational::from(m) * al.coeffs[i];
            total.coeffs[i] += fq * Rational::from(2) * (be.coeffs[i] + ga.coeffs[i]);
        }
        if total.coeffs.iter().all(|c| c.is_zero()) {
            return total.constant.is_zero();
        }
        // Area varies over the family: accept if 4π is attained on the
        // closure of the feasible parameter region.
        let cons_pos = fm::Constraint::nonstrict(total.constant, total.coeffs.clone());
        let cons_neg = fm::Constraint::nonstrict(
            -total.constant,
            total.coeffs.iter().map(|c| -*c).collect(),
        );
        let mut sys =
            substitute_constraints(&avc.solution, admissibility_constraints(avc.m as u32, true));
        // Relax to the closure.
        for c in sys.iter_mut() {
            c.strict = false;
        }
        sys.push(cons_pos);
        sys.push(cons_neg);
        fm::feasible(&sys, k)
    } else {
        let Some((al, be, ga)) = avc.solution.radians() else {
            return true;
        };
        let pi = std::f64::consts::PI;
        let area = census.f_p as f64 * (m as f64 * al - (m as f64 - 2.0) * pi)
            + census.f_q as f64 * (2.0 * be + 2.0 * ga - 2.0 * pi);
        (area - 4.0 * pi).abs() < 1e-9
    }
}

/// Convenience: the census multiplicity view of `sum n_v · b_v = sum n_v ·
/// c_v` (Counting Lemma restated globally).
pub fn counting_lemma_holds(census: &Census) -> bool {
    let b: u32 = census.multiplicities.iter().map(|(v, n)| v.b * n).sum();
    let c: u32 = census.multiplicities.iter().map(|(v, n)| v.c * n).sum();
    b == c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vt(a: u32, b: u32, c: u32) -> VertexType {
        VertexType::raw(a, b, c)
    }

    fn types(m: u32, max_degree: u32) -> Vec<VertexType> {
        enumerate_vertex_types(m, max_degree)
    }

    #[test]
    fn degree3_slice_m7() {
        let t = types(7, 3);
        assert_eq!(t, vec![vt(1, 1, 1), vt(1, 2, 0)]);
    }

    #[test]
    fn degree3_slice_m4_m5() {
        for m in [4, 5] {
            let t = types(m, 3);
            assert_eq!(t, vec![vt(1, 1, 1), vt(1, 2, 0), vt(3, 0, 0)], "m={m}");
        }
    }

    #[test]
    fn degree345_slice_m3_is_eq8() {
        let t: BTreeSet<_> = types(3, 5).into_iter().collect();
        let expected: BTreeSet<_> = [
            vt(3, 0, 0),
            vt(1, 2, 0),
            vt(1, 1, 1),
            vt(4, 0, 0),
            vt(2, 2, 0),
            vt(2, 0, 2),
            vt(2, 1, 1),
            vt(5, 0, 0),
            vt(3, 0, 2),
            vt(1, 1, 3),
        ]
        .into();
        assert_eq!(t, expected);
    }

    #[test]
    fn odd_parity_never_appears() {
        assert!(!types(3, 8).contains(&vt(1, 1, 0)));
        assert!(!types(3, 8).iter().any(|v| (v.b + v.c) % 2 != 0));
    }

    #[test]
    fn no_pure_alpha_beyond_m6() {
        for m in [7, 8, 9] {
            assert!(!types(m, 12).iter().any(|v| v.b == 0 && v.c == 0), "m={m}");
        }
    }

    #[test]
    fn superset_in_degree() {
        for m in [3, 4, 7] {
            let small: BTreeSet<_> = types(m, 5).into_iter().collect();
            let big: BTreeSet<_> = types(m, 6).into_iter().collect();
            assert!(small.is_subset(&big), "m={m}");
        }
    }

    #[test]
    fn remainder_slices_frozen() {
        // m=3 β²-slice.
        let r3 = classify_remainders(3);
        assert_eq!(r3.beta2, vec![vt(1, 2, 0), vt(2, 2, 0)]);
        // m ≥ 4 β²-slice.
        for m in [4, 5, 6, 7] {
            let r = classify_remainders(m);
            assert_eq!(r.beta2, vec![vt(1, 2, 0)], "m={m}");
        }
        // m=3 βγ-slice.
        let expected_bg: BTreeSet<_> =
            [vt(1, 1, 1), vt(2, 1, 1), vt(1, 1, 3), vt(2, 1, 3), vt(2, 1, 5)].into();
        let got_bg: BTreeSet<_> = r3.betagamma.iter().copied().collect();
        assert_eq!(got_bg, expected_bg);
        // m ≥ 4 βγ-slice.
        for m in [4, 5, 6, 7] {
            let r = classify_remainders(m);
            let got: BTreeSet<_> = r.betagamma.iter().copied().collect();
            let expected: BTreeSet<_> = [vt(1, 1, 1), vt(1, 1, 3)].into();
            assert_eq!(got, expected, "m={m}");
        }
        // Every γ²-type is α^{a≥2}γ^c or α^aβγ^c.
        for m in [3, 4, 5, 6, 7] {
            for v in classify_remainders(m).gamma2 {
                assert!(v.b <= 1, "{v} at m={m}");
                assert!(v.b == 1 || v.a >= 2, "{v} at m={m}");
            }
        }
    }

    #[test]
    fn avcs_m3_include_prop43() {
        let avcs = enumerate_avcs(3, DEFAULT_MAX_DEGREE);
        let target: BTreeSet<_> = [vt(2, 2, 0), vt(5, 0, 0), vt(3, 0, 2)].into();
        let found = avcs
            .iter()
            .find(|a| a.members == target)
            .expect("AVC {α²β², α⁵, α³γ²} missing");
        let (al, be, ga) = found.solution.radians().unwrap();
        let pi = std::f64::consts::PI;
        assert!((al - 0.4 * pi).abs() < 1e-12);
        assert!((be - 0.6 * pi).abs() < 1e-12);
        assert!((ga - 0.4 * pi).abs() < 1e-12);
    }

    #[test]
    fn avcs_m7_contains_prism_family() {
        let avcs = enumerate_avcs(7, DEFAULT_MAX_DEGREE);
        assert!(
            avcs.iter().any(|a| a.members.contains(&vt(1, 1, 1))),
            "no AVC containing αβγ for m=7: {avcs:?}"
        );
    }

    #[test]
    fn avc_members_have_zero_residual() {
        for m in [3, 4, 5] {
            for avc in enumerate_avcs(m, 8) {
                if !avc.solution.is_fully_determined() {
                    continue;
                }
                for &v in &avc.members {
                    assert_eq!(angles::vertex_residual(v, &avc.solution).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn census_prism_avc() {
        for m in [3, 4, 5, 6, 7, 8] {
            let avc = Avc {
                m,
                members: [vt(1, 1, 1)].into(),
                solution: match solve_angles([vt(1, 1, 1)]) {
                    AngleSolution::Solved(s) => s,
                    _ => unreachable!(),
                },
            };
            let sols = census(&avc, DEFAULT_MAX_TILES);
            // The prism census is the unique solution: f_P = 2, f_Q = m.
            assert_eq!(sols.len(), 1, "m={m}");
            let s = &sols[0];
            assert_eq!((s.f_p, s.f_q), (2, m));
            assert_eq!(s.multiplicities[&vt(1, 1, 1)], 2 * m);
            assert!(counting_lemma_holds(s));
        }
    }

    #[test]
    fn census_prop41_avc() {
        let members: BTreeSet<_> = [vt(2, 1, 1), vt(5, 0, 0)].into();
        let avc = Avc {
            m: 3,
            solution: match solve_angles(members.iter().copied()) {
                AngleSolution::Solved(s) => s,
                _ => unreachable!(),
            },
            members,
        };
        let sols = census(&avc, DEFAULT_MAX_TILES);
        assert!(sols.iter().any(|s| {
            s.f_p == 10
                && s.f_q == 5
                && s.multiplicities.get(&vt(2, 1, 1)) == Some(&10)
                && s.multiplicities.get(&vt(5, 0, 0)) == Some(&2)
        }));
        for s in &sols {
            assert!(counting_lemma_holds(s));
            assert!(s.consistent(3));
        }
    }

    #[test]
    fn census_ab2_alone_is_empty() {
        let members: BTreeSet<_> = [vt(1, 2, 0)].into();
        let avc = Avc {
            m: 3,
            solution: match solve_angles(members.iter().copied()) {
                AngleSolution::Solved(s) => s,
                _ => unreachable!(),
            },
            members,
        };
        // Σc = 0 can never equal 2·f_Q with f_Q ≥ 1.
        assert!(census(&avc, DEFAULT_MAX_TILES).is_empty());
    }

    #[test]
    fn avc_members_are_admissible_types() {
        let admissible: BTreeSet<_> = types(3, DEFAULT_MAX_DEGREE).into_iter().collect();
        for avc in enumerate_avcs(3, DEFAULT_MAX_DEGREE) {
            for v in &avc.members {
                assert!(admissible.contains(v), "non-admissible member {v}");
            }
        }
    }
}
