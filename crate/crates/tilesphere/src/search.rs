//! Exhaustive AVC-driven search.
//!
//! The search grows a disk of tiles move by move.  A move answers one
//! question: what lies across a chosen frontier dart?  Either a new tile
//! (three possibilities at most: the m-gon, the plain quad or the mirrored
//! quad, each with a canonical attachment) or an already-placed frontier dart
//! (a join, whose special case is zipping a saturated vertex shut).  A move
//! survives only if every vertex walk it touches still reads as a contiguous
//! arc of some member arrangement of the active AVC.  Darts with a unique
//! surviving move are propagated for free; branching picks the dart with the
//! fewest moves.  The move set is exhaustive for each dart, so the search is
//! a complete case analysis within the degree and tile caps.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::angles::{Angle, VertexType};
use crate::arrangements::{
    enumerate_arrangements_opt, forbidden_patterns, CornerToken, EdgeLabel, Pattern,
    VertexArrangement,
};
use crate::avc::{self, Avc, Census, EnumOptions};
use crate::tiling::{
    CanonicalCode, CompleteTiling, DartId, Fan, PartialTiling, Tile, TileKind,
};

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_degree: u32,
    pub max_tiles: u32,
    pub allow_mirrored_quads: bool,
    pub parallel_branches: bool,
    /// Reject moves whose vertex word contains a short pattern occurring in
    /// no member arrangement, before the full arc-fit check.  Redundant with
    /// arc fitting (it never changes the result set), but cheap.
    pub forbidden_pattern_pruning: bool,
    /// Per-seed node budget; exceeding it marks the result incomplete
    /// instead of silently truncating.
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_degree: avc::DEFAULT_MAX_DEGREE,
            max_tiles: avc::DEFAULT_MAX_TILES,
            allow_mirrored_quads: true,
            parallel_branches: true,
            forbidden_pattern_pruning: true,
            node_budget: 50_000_000,
        }
    }
}

impl SearchOptions {
    fn enum_options(&self) -> EnumOptions {
        EnumOptions {
            max_degree: self.max_degree,
            max_tiles: self.max_tiles,
            allow_mirrored: self.allow_mirrored_quads,
            assume_convex: true,
        }
    }
}

/// Exhaustion statistics for one AVC.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExhaustionStats {
    pub nodes: u64,
    pub prunes: u64,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub m: u32,
    pub tilings: BTreeMap<CanonicalCode, CompleteTiling>,
    /// Per-AVC stats, keyed by the member list.
    pub stats: Vec<(Vec<VertexType>, ExhaustionStats)>,
    /// False iff some branch hit the node budget.
    pub complete: bool,
}

/// Precomputed per-AVC matching tables.
pub struct AvcContext {
    pub avc: Avc,
    /// Every consistent arrangement (all rotations canonicalized, reflections
    /// as distinct entries) of every member.
    arrangements: Vec<VertexArrangement>,
    /// Census solutions within the tile cap; empty means no tiling can close.
    census_solutions: Vec<Census>,
    /// Short words occurring in no member arrangement, as a pre-filter.
    forbidden: Vec<Pattern>,
    use_forbidden: bool,
    allow_mirrored: bool,
    max_tiles: u32,
}

impl AvcContext {
    pub fn new(avc: Avc, opts: &SearchOptions) -> AvcContext {
        let mut arrangements = Vec::new();
        for &v in &avc.members {
            arrangements.extend(
                enumerate_arrangements_opt(v, false, opts.allow_mirrored_quads)
                    .unwrap_or_default(),
            );
        }
        let census_solutions: Vec<Census> = avc::census(&avc, opts.max_tiles)
            .into_iter()
            .filter(|c| c.f_p >= 1 && c.f_q >= 1)
            .collect();
        let forbidden = forbidden_patterns(&avc.members).into_iter().collect();
        AvcContext {
            avc,
            arrangements,
            census_solutions,
            forbidden,
            use_forbidden: opts.forbidden_pattern_pruning,
            allow_mirrored: opts.allow_mirrored_quads,
            max_tiles: opts.max_tiles,
        }
    }

    /// Does a fan word contain a forbidden short pattern?  Linear scan over
    /// the open word in both reading directions.
    fn hits_forbidden(&self, tokens: &[CornerToken], seps: &[EdgeLabel]) -> bool {
        let contains = |angles: &[Angle], labels: &[EdgeLabel], pat: &Pattern| {
            let k = pat.angles.len();
            if k > angles.len() {
                return false;
            }
            (0..=angles.len() - k).any(|s| {
                (0..k).all(|j| angles[s + j] == pat.angles[j])
                    && (0..k - 1).all(|j| labels[s + j] == pat.seps[j])
            })
        };
        let fwd: Vec<Angle> = tokens.iter().map(|t| t.angle).collect();
        let rev: Vec<Angle> = fwd.iter().rev().copied().collect();
        let rseps: Vec<EdgeLabel> = seps.iter().rev().copied().collect();
        self.forbidden
            .iter()
            .any(|p| contains(&fwd, seps, p) || contains(&rev, &rseps, p))
    }

    /// Does this closed-vertex arrangement belong to the AVC?
    fn closed_ok(&self, arr: &VertexArrangement) -> bool {
        self.arrangements.contains(arr)
    }

    /// Does the open fan word (with its two boundary separators) occur as a
    /// contiguous arc of some member arrangement?
    fn arc_ok(&self, tokens: &[CornerToken], seps: &[EdgeLabel], ends: (EdgeLabel, EdgeLabel)) -> bool {
        let k = tokens.len();
        self.arrangements.iter().any(|arr| {
            let n = arr.len();
            if k > n {
                return false;
            }
            (0..n).any(|s| {
                (0..k).all(|i| arr.tokens()[(s + i) % n] == tokens[i])
                    && (0..k.saturating_sub(1)).all(|i| arr.seps()[(s + i) % n] == seps[i])
                    && arr.seps()[(s + n - 1) % n] == ends.0
                    && arr.seps()[(s + k - 1) % n] == ends.1
            })
        })
    }

    /// Can tile counts still extend to a census solution?
    fn counts_ok(&self, f_p: u32, f_q: u32) -> bool {
        f_p + f_q <= self.max_tiles
            && self
                .census_solutions
                .iter()
                .any(|c| f_p <= c.f_p && f_q <= c.f_q)
    }
}

/// One candidate answer for "what lies across this dart".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Attach { kind: TileKind, attachment: usize },
    Join { other: DartId },
}

/// Apply a move across dart `on`.
fn apply(t: &PartialTiling, on: DartId, mv: Move) -> Option<PartialTiling> {
    match mv {
        Move::Attach { kind, attachment } => t.glue(on, &Tile { kind }, attachment).ok(),
        Move::Join { other } => t.join(on, other).ok(),
    }
}

/// Check every vertex walk touched by gluing across `on`.
fn move_consistent(after: &PartialTiling, on: DartId, ctx: &AvcContext) -> bool {
    let twin = after.twin(on).expect("move was applied across this dart");
    let corners = [
        on,                       // tail of `on`
        after.next_in_face(on),   // head of `on`
        twin,
        after.next_in_face(twin),
    ];
    let mut checked: Vec<usize> = Vec::new();
    for c in corners {
        if checked.contains(&c) {
            continue;
        }
        let fan = after.fan_at(c);
        checked.extend(&fan.corners);
        if !fan_fits(after, &fan, ctx) {
            return false;
        }
    }
    true
}

/// Does a fan still read as (an arc of) a member arrangement?
pub fn fan_fits(t: &PartialTiling, fan: &Fan, ctx: &AvcContext) -> bool {
    if fan.closed {
        match t.vertex_arrangement(fan) {
            Some(arr) => ctx.closed_ok(&arr),
            None => false,
        }
    } else {
        let (tokens, seps) = t.fan_word(fan);
        if ctx.use_forbidden && ctx.hits_forbidden(&tokens, &seps) {
            return false;
        }
        let ends = (t.label(fan.in_dart.unwrap()), t.label(fan.out_dart.unwrap()));
        ctx.arc_ok(&tokens, &seps, ends)
    }
}

/// All surviving moves across a frontier dart.
pub fn moves_for(t: &PartialTiling, on: DartId, ctx: &AvcContext) -> Vec<Move> {
    let mut out = Vec::new();
    let label = t.label(on);
    let (f_p, f_q) = t.tile_counts();
    // New tiles: on an x dart the m-gon appends α, the plain quad β, the
    // mirrored quad γ; on a y dart the plain quad appends γ, the mirrored β.
    let mut attach = |kind: TileKind, attachment: usize| {
        out.push(Move::Attach { kind, attachment });
    };
    match label {
        EdgeLabel::X => {
            if ctx.counts_ok(f_p + 1, f_q) {
                attach(TileKind::RegularGon(t.m()), 0);
            }
            if ctx.counts_ok(f_p, f_q + 1) {
                attach(TileKind::Quad { mirrored: false }, 0);
                if ctx.allow_mirrored {
                    attach(TileKind::Quad { mirrored: true }, 1);
                }
            }
        }
        EdgeLabel::Y => {
            if ctx.counts_ok(f_p, f_q + 1) {
                attach(TileKind::Quad { mirrored: false }, 1);
                if ctx.allow_mirrored {
                    attach(TileKind::Quad { mirrored: true }, 0);
                }
            }
        }
    }
    // Joins with other frontier darts.
    for e in t.frontier() {
        if e != on && t.label(e) == label {
            out.push(Move::Join { other: e });
        }
    }
    out.retain(|&mv| {
        apply(t, on, mv).is_some_and(|after| move_consistent(&after, on, ctx))
    });
    out
}

pub enum Propagation {
    /// Fixpoint reached; remaining frontier darts all branch.
    Stuck(PartialTiling),
    Contradiction,
    Done(CompleteTiling),
}

/// Apply forced moves (unique survivor across some dart) to a fixpoint.
pub fn propagate_forced(t: &PartialTiling, ctx: &AvcContext) -> Propagation {
    let mut cur = t.clone();
    loop {
        let frontier = cur.frontier();
        if frontier.is_empty() {
            // A dihedral tiling uses both prototiles; gluings that close the
            // sphere with one prototile alone are monohedral and rejected.
            let (f_p, f_q) = cur.tile_counts();
            if f_p == 0 || f_q == 0 {
                return Propagation::Contradiction;
            }
            let complete = CompleteTiling::try_from_map(cur).expect("no frontier");
            return if complete.census().consistent(complete.m()) {
                Propagation::Done(complete)
            } else {
                Propagation::Contradiction
            };
        }
        let mut progressed = false;
        for on in frontier {
            if cur.twin(on).is_some() {
                continue; // glued by an earlier forced move this pass
            }
            let moves = moves_for(&cur, on, ctx);
            match moves.len() {
                0 => return Propagation::Contradiction,
                1 => {
                    cur = apply(&cur, on, moves[0]).expect("candidate was validated");
                    progressed = true;
                }
                _ => {}
            }
        }
        if !progressed {
            return Propagation::Stuck(cur);
        }
    }
}

/// Build the starting patch realizing a member arrangement around one vertex.
pub fn seed_arrangement(m: u32, arr: &VertexArrangement) -> Option<PartialTiling> {
    let tile_for = |tok: CornerToken| match tok.angle {
        Angle::Alpha => (Tile::regular_gon(m), 0usize),
        // Corner index of β/γ within the quad boundary.
        Angle::Beta => (Tile::quad(tok.mirrored), 1),
        Angle::Gamma => (Tile::quad(tok.mirrored), 0),
    };
    let tokens = arr.tokens();
    let (tile0, c0) = tile_for(tokens[0]);
    let mut t = PartialTiling::seeded(m, &tile0);
    let base_corner = c0; // corner id of token 0 in face 0
    let mut out_dart = base_corner; // corner c's outgoing dart is dart c
    for &tok in &tokens[1..] {
        let (tile, c) = tile_for(tok);
        let len = tile.boundary().len();
        // The new corner's incoming dart must land on `out_dart`.
        let attachment = (c + len - 1) % len;
        let before = t.dart_count();
        t = t.glue(out_dart, &tile, attachment).ok()?;
        out_dart = before + c;
    }
    let in_dart = t.prev_in_face(base_corner);
    t.zip(out_dart, in_dart).ok()
}

struct SeedSearch<'a> {
    ctx: &'a AvcContext,
    budget: u64,
    nodes: AtomicU64,
    prunes: AtomicU64,
    exhausted: std::sync::atomic::AtomicBool,
}

impl SeedSearch<'_> {
    fn run(&self, t: &PartialTiling, found: &mut Vec<CompleteTiling>) {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        match propagate_forced(t, self.ctx) {
            Propagation::Contradiction => {
                self.prunes.fetch_add(1, Ordering::Relaxed);
            }
            Propagation::Done(complete) => found.push(complete),
            Propagation::Stuck(cur) => {
                // Branch on the dart with the fewest surviving moves.
                let mut best: Option<(DartId, Vec<Move>)> = None;
                for on in cur.frontier() {
                    let moves = moves_for(&cur, on, self.ctx);
                    let better =
                        best.as_ref().is_none_or(|(_, b)| moves.len() < b.len());
                    if better {
                        best = Some((on, moves));
                    }
                }
                let (on, moves) = best.expect("stuck implies nonempty frontier");
                for mv in moves {
                    let next = apply(&cur, on, mv).expect("candidate was validated");
                    self.run(&next, found);
                }
            }
        }
    }
}

/// The classification for gonality `m`: run every AVC from every seed.
pub fn classify(m: u32, opts: &SearchOptions) -> ClassificationResult {
    assert!(m >= 3);
    assert!(opts.max_tiles >= m + 2);
    let avcs = avc::enumerate_avcs_opt(m, &opts.enum_options());
    let mut result = ClassificationResult {
        m,
        tilings: BTreeMap::new(),
        stats: Vec::new(),
        complete: true,
    };
    for avc in avcs {
        let ctx = AvcContext::new(avc, opts);
        if ctx.census_solutions.is_empty() {
            continue;
        }
        // One seed per arrangement orbit of each member.
        let seeds: Vec<PartialTiling> = ctx
            .avc
            .members
            .iter()
            .flat_map(|&v| {
                enumerate_arrangements_opt(v, true, opts.allow_mirrored_quads)
                    .unwrap_or_default()
            })
            .filter_map(|arr| seed_arrangement(m, &arr))
            .collect();
        let search = SeedSearch {
            ctx: &ctx,
            budget: opts.node_budget,
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            exhausted: std::sync::atomic::AtomicBool::new(false),
        };
        let run_seed = |seed: &PartialTiling| {
            let mut found = Vec::new();
            search.run(seed, &mut found);
            found
        };
        let found: Vec<CompleteTiling> = if opts.parallel_branches {
            seeds.par_iter().map(run_seed).reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
        } else {
            seeds.iter().flat_map(run_seed).collect()
        };
        for tiling in found {
            debug_assert!(tiling.validate(&ctx.avc).is_empty());
            result.tilings.entry(tiling.canonical_code()).or_insert(tiling);
        }
        if search.exhausted.load(Ordering::Relaxed) {
            result.complete = false;
        }
        result.stats.push((
            ctx.avc.members.iter().copied().collect(),
            ExhaustionStats {
                nodes: search.nodes.load(Ordering::Relaxed),
                prunes: search.prunes.load(Ordering::Relaxed),
            },
        ));
    }
    result
}

/// True iff no tiling of gonality `m` realizes the given vertex type.
pub fn verify_nonexistence(m: u32, must_not_contain: VertexType) -> bool {
    let result = classify(m, &SearchOptions::default());
    assert!(result.complete, "search hit its node budget");
    !result
        .tilings
        .values()
        .any(|t| t.realized_vertex_types().contains(&must_not_contain))
}
