//! The tiling data structure: an oriented labeled combinatorial map on the
//! sphere.
//!
//! Faces are tiles; each face is a cyclic sequence of darts (half-edges)
//! traversed counterclockwise seen from outside the sphere.  Corner `i` of a
//! face precedes dart `i`, so corners and darts share one global id space.
//! Vertices are implicit: walking `next_at_vertex` from a corner crosses the
//! corner's outgoing dart to the neighboring face and so on around the
//! vertex.  A vertex whose walk closes into a cycle is a finished vertex; an
//! open walk is a *fan* bounded by two unglued darts.
//!
//! Growth happens through two moves: [`PartialTiling::glue`] attaches a new
//! tile along one frontier dart, and [`PartialTiling::zip`] identifies the
//! two boundary darts of a saturated fan, closing its vertex.  Any spherical
//! tiling is reachable by glue moves plus zip cascades.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{Angle, VertexType};
use crate::arrangements::{CornerToken, EdgeLabel, VertexArrangement};
use crate::avc::{Avc, Census};

pub type DartId = usize;
pub type FaceId = usize;
/// Corners share the dart id space: corner `d` precedes dart `d` in its face.
pub type CornerId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    RegularGon(u32),
    Quad { mirrored: bool },
}

impl TileKind {
    pub fn side_count(self) -> usize {
        match self {
            TileKind::RegularGon(m) => m as usize,
            TileKind::Quad { .. } => 4,
        }
    }

    /// Cyclic boundary: corner angle, then the edge label following it.
    pub fn boundary(self) -> Vec<(Angle, EdgeLabel)> {
        match self {
            TileKind::RegularGon(m) => vec![(Angle::Alpha, EdgeLabel::X); m as usize],
            TileKind::Quad { mirrored: false } => vec![
                (Angle::Gamma, EdgeLabel::X),
                (Angle::Beta, EdgeLabel::Y),
                (Angle::Gamma, EdgeLabel::X),
                (Angle::Beta, EdgeLabel::Y),
            ],
            TileKind::Quad { mirrored: true } => vec![
                (Angle::Gamma, EdgeLabel::Y),
                (Angle::Beta, EdgeLabel::X),
                (Angle::Gamma, EdgeLabel::Y),
                (Angle::Beta, EdgeLabel::X),
            ],
        }
    }

    pub fn is_quad(self) -> bool {
        matches!(self, TileKind::Quad { .. })
    }

    fn mirrored(self) -> bool {
        matches!(self, TileKind::Quad { mirrored: true })
    }
}

/// A prototile ready to be glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub kind: TileKind,
}

impl Tile {
    pub fn regular_gon(m: u32) -> Tile {
        assert!(m >= 3);
        Tile { kind: TileKind::RegularGon(m) }
    }

    pub fn quad(mirrored: bool) -> Tile {
        Tile { kind: TileKind::Quad { mirrored } }
    }

    pub fn boundary(&self) -> Vec<(Angle, EdgeLabel)> {
        self.kind.boundary()
    }
}

#[derive(Clone, Debug)]
struct Face {
    kind: TileKind,
    base: DartId,
    len: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("dart {0} is not on the frontier")]
    NotFrontier(DartId),
    #[error("edge labels differ: {0:?} vs {1:?}")]
    LabelMismatch(EdgeLabel, EdgeLabel),
    #[error("attachment index {0} out of range for the tile")]
    BadAttachment(usize),
    #[error("darts {0} and {1} do not bound a common fan")]
    NotSameFan(DartId, DartId),
    #[error("tiling is not complete")]
    Incomplete,
    #[error("malformed adjacency table: {0}")]
    BadAdjacency(String),
}

/// The walk around one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    /// Corners in rotation order around the vertex.
    pub corners: Vec<CornerId>,
    pub closed: bool,
    /// Unglued dart pointing into the vertex, preceding `corners[0]`.
    pub in_dart: Option<DartId>,
    /// Unglued dart pointing out of the vertex, following the last corner.
    pub out_dart: Option<DartId>,
}

#[derive(Clone, Debug)]
pub struct PartialTiling {
    m: u32,
    faces: Vec<Face>,
    twin: Vec<Option<DartId>>,
    label: Vec<EdgeLabel>,
    corner_angle: Vec<Angle>,
    corner_mirrored: Vec<bool>,
}

impl PartialTiling {
    /// A single seed tile on the sphere.
    pub fn seeded(m: u32, tile: &Tile) -> PartialTiling {
        let mut t = PartialTiling {
            m,
            faces: Vec::new(),
            twin: Vec::new(),
            label: Vec::new(),
            corner_angle: Vec::new(),
            corner_mirrored: Vec::new(),
        };
        t.push_face(tile.kind);
        t
    }

    fn push_face(&mut self, kind: TileKind) -> FaceId {
        let base = self.twin.len();
        let boundary = kind.boundary();
        self.faces.push(Face { kind, base, len: boundary.len() });
        for (angle, label) in boundary {
            self.twin.push(None);
            self.label.push(label);
            self.corner_angle.push(angle);
            self.corner_mirrored.push(kind.is_quad() && kind.mirrored());
        }
        self.faces.len() - 1
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn face_kind(&self, f: FaceId) -> TileKind {
        self.faces[f].kind
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        // Faces are appended in base order; binary search by base.
        match self.faces.binary_search_by(|face| face.base.cmp(&d)) {
            Ok(f) => f,
            Err(f) => f - 1,
        }
    }

    pub fn face_darts(&self, f: FaceId) -> impl Iterator<Item = DartId> {
        let face = &self.faces[f];
        face.base..face.base + face.len
    }

    pub fn next_in_face(&self, d: DartId) -> DartId {
        let face = &self.faces[self.face_of(d)];
        face.base + (d - face.base + 1) % face.len
    }

    pub fn prev_in_face(&self, d: DartId) -> DartId {
        let face = &self.faces[self.face_of(d)];
        face.base + (d - face.base + face.len - 1) % face.len
    }

    pub fn twin(&self, d: DartId) -> Option<DartId> {
        self.twin[d]
    }

    pub fn label(&self, d: DartId) -> EdgeLabel {
        self.label[d]
    }

    pub fn corner_token(&self, c: CornerId) -> CornerToken {
        CornerToken {
            angle: self.corner_angle[c],
            mirrored: self.corner_angle[c] != Angle::Alpha && self.corner_mirrored[c],
        }
    }

    /// Unglued darts.
    pub fn frontier(&self) -> Vec<DartId> {
        (0..self.twin.len()).filter(|&d| self.twin[d].is_none()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.twin.iter().all(|t| t.is_some())
    }

    /// The next corner counterclockwise around the vertex of corner `c`
    /// (crossing `c`'s outgoing dart), if that dart is glued.
    pub fn next_at_vertex(&self, c: CornerId) -> Option<CornerId> {
        self.twin[c].map(|t| self.next_in_face(t))
    }

    /// The previous corner around the vertex (crossing `c`'s incoming dart).
    pub fn prev_at_vertex(&self, c: CornerId) -> Option<CornerId> {
        self.twin[self.prev_in_face(c)]
    }

    /// The full walk around the vertex holding corner `c`.
    pub fn fan_at(&self, c: CornerId) -> Fan {
        // Walk backwards to the start of the fan (or detect a closed cycle).
        let mut start = c;
        loop {
            match self.prev_at_vertex(start) {
                Some(p) => {
                    if p == c {
                        // Closed vertex: collect the cycle from c.
                        let mut corners = vec![c];
                        let mut cur = self.next_at_vertex(c).unwrap();
                        while cur != c {
                            corners.push(cur);
                            cur = self.next_at_vertex(cur).unwrap();
                        }
                        return Fan { corners, closed: true, in_dart: None, out_dart: None };
                    }
                    start = p;
                }
                None => break,
            }
        }
        let mut corners = vec![start];
        let mut cur = start;
        while let Some(n) = self.next_at_vertex(cur) {
            corners.push(n);
            cur = n;
        }
        Fan {
            in_dart: Some(self.prev_in_face(start)),
            out_dart: Some(cur),
            corners,
            closed: false,
        }
    }

    /// Corner tokens of a fan in rotation order, with the separators between
    /// consecutive corners (`len - 1` interior separators for open fans, full
    /// cycle including the wrap separator for closed ones).
    pub fn fan_word(&self, fan: &Fan) -> (Vec<CornerToken>, Vec<EdgeLabel>) {
        let tokens: Vec<CornerToken> =
            fan.corners.iter().map(|&c| self.corner_token(c)).collect();
        let mut seps: Vec<EdgeLabel> =
            fan.corners.iter().map(|&c| self.label[c]).collect();
        if !fan.closed {
            seps.pop();
        }
        (tokens, seps)
    }

    /// The arrangement of a closed vertex.
    pub fn vertex_arrangement(&self, fan: &Fan) -> Option<VertexArrangement> {
        if !fan.closed {
            return None;
        }
        let tokens = fan.corners.iter().map(|&c| self.corner_token(c)).collect();
        VertexArrangement::from_tokens(tokens)
    }

    /// Attach `tile` so that its boundary dart `attachment` is glued to the
    /// frontier dart `on`.  Returns the extended tiling; the input is
    /// untouched.
    pub fn glue(&self, on: DartId, tile: &Tile, attachment: usize) -> Result<PartialTiling, MapError> {
        if self.twin[on].is_some() {
            return Err(MapError::NotFrontier(on));
        }
        let boundary = tile.boundary();
        if attachment >= boundary.len() {
            return Err(MapError::BadAttachment(attachment));
        }
        let tile_label = boundary[attachment].1;
        if tile_label != self.label[on] {
            return Err(MapError::LabelMismatch(self.label[on], tile_label));
        }
        let mut out = self.clone();
        let f = out.push_face(tile.kind);
        let d = out.faces[f].base + attachment;
        out.twin[on] = Some(d);
        out.twin[d] = Some(on);
        Ok(out)
    }

    /// Identify two frontier darts as the two sides of one interior edge.
    pub fn join(&self, d: DartId, e: DartId) -> Result<PartialTiling, MapError> {
        if d == e || self.twin[d].is_some() {
            return Err(MapError::NotFrontier(d));
        }
        if self.twin[e].is_some() {
            return Err(MapError::NotFrontier(e));
        }
        if self.label[d] != self.label[e] {
            return Err(MapError::LabelMismatch(self.label[e], self.label[d]));
        }
        let mut out = self.clone();
        out.twin[d] = Some(e);
        out.twin[e] = Some(d);
        Ok(out)
    }

    /// Close a saturated fan by identifying its two boundary darts.
    /// `out_dart` leaves the vertex, `in_dart` enters it; they become one
    /// interior edge.
    pub fn zip(&self, out_dart: DartId, in_dart: DartId) -> Result<PartialTiling, MapError> {
        // They must bound the same fan: the fan whose last outgoing dart is
        // `out_dart` must start right after `in_dart`.
        if self.twin[out_dart].is_none() && self.twin[in_dart].is_none() {
            let fan = self.fan_at(out_dart);
            if fan.closed || fan.out_dart != Some(out_dart) || fan.in_dart != Some(in_dart) {
                return Err(MapError::NotSameFan(out_dart, in_dart));
            }
        }
        self.join(out_dart, in_dart)
    }

    /// Tile counts so far: `(m-gons, quadrilaterals)`.
    pub fn tile_counts(&self) -> (u32, u32) {
        let f_p = self.faces.iter().filter(|f| !f.kind.is_quad()).count() as u32;
        (f_p, self.faces.len() as u32 - f_p)
    }

    /// Group corners into vertices; each vertex is its fan's corner list.
    /// Vertex ids are dense, ordered by smallest corner id.
    pub fn vertices(&self) -> Vec<Fan> {
        let mut seen = vec![false; self.twin.len()];
        let mut out = Vec::new();
        for c in 0..self.twin.len() {
            if seen[c] {
                continue;
            }
            let fan = self.fan_at(c);
            for &k in &fan.corners {
                seen[k] = true;
            }
            out.push(fan);
        }
        out
    }

    /// Construct a complete map from a twin table.  `twins[f][i]` is the
    /// `(face, dart index)` glued to dart `i` of face `f`.
    pub fn from_adjacency(
        m: u32,
        kinds: &[TileKind],
        twins: &[Vec<(FaceId, usize)>],
    ) -> Result<CompleteTiling, MapError> {
        let mut t = PartialTiling {
            m,
            faces: Vec::new(),
            twin: Vec::new(),
            label: Vec::new(),
            corner_angle: Vec::new(),
            corner_mirrored: Vec::new(),
        };
        for &kind in kinds {
            t.push_face(kind);
        }
        if twins.len() != kinds.len() {
            return Err(MapError::BadAdjacency("twin table length".into()));
        }
        for (f, row) in twins.iter().enumerate() {
            if row.len() != t.faces[f].len {
                return Err(MapError::BadAdjacency(format!("row {f} length")));
            }
            for (i, &(g, j)) in row.iter().enumerate() {
                if g >= kinds.len() || j >= t.faces[g].len {
                    return Err(MapError::BadAdjacency(format!("entry ({f},{i})")));
                }
                let d = t.faces[f].base + i;
                let e = t.faces[g].base + j;
                if twins[g][j] != (f, i) {
                    return Err(MapError::BadAdjacency(format!(
                        "twin of ({f},{i}) is ({g},{j}) but not vice versa"
                    )));
                }
                t.twin[d] = Some(e);
            }
        }
        CompleteTiling::try_from_map(t)
    }

    #[cfg(test)]
    pub(crate) fn set_label_for_test(&mut self, d: DartId, label: EdgeLabel) {
        self.label[d] = label;
        if let Some(e) = self.twin[d] {
            self.label[e] = label;
        }
    }
}

/// A tiling of the whole sphere.
#[derive(Clone, Debug)]
pub struct CompleteTiling {
    map: PartialTiling,
}

impl CompleteTiling {
    pub fn try_from_map(map: PartialTiling) -> Result<CompleteTiling, MapError> {
        if !map.is_complete() {
            return Err(MapError::Incomplete);
        }
        Ok(CompleteTiling { map })
    }

    pub fn map(&self) -> &PartialTiling {
        &self.map
    }

    pub fn m(&self) -> u32 {
        self.map.m
    }

    pub fn face_count(&self) -> usize {
        self.map.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.map.twin.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.map.vertices().len()
    }

    /// Vertex-type multiplicities plus tile counts.
    pub fn census(&self) -> Census {
        let mut multiplicities: BTreeMap<VertexType, u32> = BTreeMap::new();
        for fan in self.map.vertices() {
            let mut counts = [0u32; 3];
            for &c in &fan.corners {
                counts[match self.map.corner_angle[c] {
                    Angle::Alpha => 0,
                    Angle::Beta => 1,
                    Angle::Gamma => 2,
                }] += 1;
            }
            *multiplicities
                .entry(VertexType::raw(counts[0], counts[1], counts[2]))
                .or_insert(0) += 1;
        }
        let f_p = self.map.faces.iter().filter(|f| !f.kind.is_quad()).count() as u32;
        let f_q = self.map.faces.len() as u32 - f_p;
        Census { multiplicities, f_p, f_q }
    }

    /// The vertex types actually occurring.
    pub fn realized_vertex_types(&self) -> std::collections::BTreeSet<VertexType> {
        self.census().multiplicities.into_keys().collect()
    }

    /// Check every structural invariant against an AVC; each violation is one
    /// report line.
    pub fn validate(&self, avc: &Avc) -> Vec<String> {
        let mut report = Vec::new();
        let map = &self.map;
        if map.m != avc.m {
            report.push(format!("gonality mismatch: tiling m={}, AVC m={}", map.m, avc.m));
        }
        // Edge-to-edge: twin involution with matching labels.
        for d in 0..map.twin.len() {
            match map.twin[d] {
                None => report.push(format!("dart {d} unglued")),
                Some(e) => {
                    if map.twin[e] != Some(d) {
                        report.push(format!("twin of {d} is {e} but not vice versa"));
                    }
                    if map.label[d] != map.label[e] {
                        report.push(format!(
                            "edge {d}-{e} glues {} to {}",
                            map.label[d].as_str(),
                            map.label[e].as_str()
                        ));
                    }
                }
            }
        }
        // Corner profiles: each corner's incident labels match its token.
        for c in 0..map.twin.len() {
            let (incoming, outgoing) = map.corner_token(c).side_profile();
            if map.label[map.prev_in_face(c)] != incoming || map.label[c] != outgoing {
                report.push(format!("corner {c} label profile mismatch"));
            }
        }
        // Vertices: parity, arrangement consistency, AVC membership.
        for fan in map.vertices() {
            if !fan.closed {
                report.push(format!("open vertex at corner {}", fan.corners[0]));
                continue;
            }
            let Some(arr) = map.vertex_arrangement(&fan) else {
                report.push(format!(
                    "corner {}: incompatible profiles around vertex",
                    fan.corners[0]
                ));
                continue;
            };
            let v = arr.vertex_type();
            if (v.b + v.c) % 2 != 0 {
                report.push(format!("vertex {v} violates parity"));
            }
            let y_count = fan.corners.iter().filter(|&&c| map.label[c] == EdgeLabel::Y).count();
            if (v.b + v.c) as usize != 2 * y_count {
                report.push(format!("vertex {v}: β+γ ≠ 2·(y-edges)"));
            }
            if !avc.members.contains(&v) {
                report.push(format!("vertex {v} not in AVC"));
            }
        }
        // Census equalities and the Euler formula.
        let census = self.census();
        if !census.consistent(map.m) {
            report.push("census equations or Euler formula violated".into());
        }
        report
    }

    /// Canonical isomorphism code: minimum over all starting darts and both
    /// orientations of a breadth-first encoding.  Equal codes iff the maps
    /// are isomorphic up to rotation and reflection (reflection flips quad
    /// chirality).
    pub fn canonical_code(&self) -> CanonicalCode {
        let mut best: Option<Vec<u8>> = None;
        for start in 0..self.map.twin.len() {
            for reflect in [false, true] {
                let code = self.encode_from(start, reflect);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        CanonicalCode(best.unwrap())
    }

    fn encode_from(&self, start: DartId, reflect: bool) -> Vec<u8> {
        let map = &self.map;
        let mut index: Vec<Option<u8>> = vec![None; map.faces.len()];
        let mut queue: Vec<DartId> = Vec::new(); // entry dart per discovered face
        let f0 = map.face_of(start);
        index[f0] = Some(0);
        queue.push(start);
        let mut out = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let entry = queue[head];
            head += 1;
            let f = map.face_of(entry);
            let face = &map.faces[f];
            out.push(match face.kind {
                TileKind::RegularGon(_) => 0,
                TileKind::Quad { mirrored } => {
                    if mirrored != reflect {
                        2
                    } else {
                        1
                    }
                }
            });
            let mut d = entry;
            for _ in 0..face.len {
                out.push(match map.label[d] {
                    EdgeLabel::X => 0,
                    EdgeLabel::Y => 1,
                });
                let t = map.twin[d].unwrap();
                let g = map.face_of(t);
                let gi = match index[g] {
                    Some(i) => i,
                    None => {
                        let i = queue.len() as u8;
                        index[g] = Some(i);
                        queue.push(t);
                        i
                    }
                };
                out.push(gi);
                d = if reflect { map.prev_in_face(d) } else { map.next_in_face(d) };
            }
        }
        out
    }

    /// External JSON form: faces with per-corner vertex ids, edges with face
    /// incidences, vertex count.
    pub fn to_json(&self) -> serde_json::Value {
        let map = &self.map;
        // Dense vertex ids by first corner appearance.
        let mut vertex_of_corner = vec![usize::MAX; map.twin.len()];
        for (vid, fan) in map.vertices().into_iter().enumerate() {
            for c in fan.corners {
                vertex_of_corner[c] = vid;
            }
        }
        let faces: Vec<serde_json::Value> = map
            .faces
            .iter()
            .enumerate()
            .map(|(i, face)| {
                let corners: Vec<serde_json::Value> = (face.base..face.base + face.len)
                    .map(|c| {
                        serde_json::json!({
                            "vertex_id": vertex_of_corner[c],
                            "angle": map.corner_angle[c].letter().to_string(),
                        })
                    })
                    .collect();
                serde_json::json!({
                    "id": i,
                    "kind": match face.kind {
                        TileKind::RegularGon(m) => format!("gon{m}"),
                        TileKind::Quad { .. } => "quad".to_string(),
                    },
                    "chirality": match face.kind {
                        TileKind::RegularGon(_) => serde_json::Value::Null,
                        TileKind::Quad { mirrored } => {
                            serde_json::Value::String(
                                if mirrored { "mirrored" } else { "plain" }.into(),
                            )
                        }
                    },
                    "corners": corners,
                })
            })
            .collect();
        let mut edges = Vec::new();
        let mut edge_id = 0;
        for d in 0..map.twin.len() {
            let e = map.twin[d].unwrap();
            if e < d {
                continue;
            }
            edges.push(serde_json::json!({
                "id": edge_id,
                "label": map.label[d].as_str(),
                "face_ids": [map.face_of(d), map.face_of(e)],
            }));
            edge_id += 1;
        }
        serde_json::json!({
            "m": map.m,
            "faces": faces,
            "edges": edges,
            "vertex_count": self.vertex_count(),
        })
    }

    /// Inverse of [`to_json`]: rebuild the map from face corner lists.  Dart
    /// i of a face runs between its corner i and corner i+1 vertices; twins
    /// are matched by oppositely-oriented vertex pairs.
    pub fn from_json(v: &serde_json::Value) -> Result<CompleteTiling, MapError> {
        let bad = |what: &str| MapError::BadAdjacency(format!("json: {what}"));
        let m = v["m"].as_u64().ok_or_else(|| bad("m"))? as u32;
        let faces = v["faces"].as_array().ok_or_else(|| bad("faces"))?;
        let mut kinds: Vec<TileKind> = Vec::new();
        let mut rings: Vec<Vec<usize>> = Vec::new();
        for face in faces {
            let kind_str = face["kind"].as_str().ok_or_else(|| bad("face kind"))?;
            let kind = if let Some(rest) = kind_str.strip_prefix("gon") {
                TileKind::RegularGon(rest.parse().map_err(|_| bad("gon arity"))?)
            } else {
                match face["chirality"].as_str() {
                    Some("plain") => TileKind::Quad { mirrored: false },
                    Some("mirrored") => TileKind::Quad { mirrored: true },
                    _ => return Err(bad("chirality")),
                }
            };
            let ring: Vec<usize> = face["corners"]
                .as_array()
                .ok_or_else(|| bad("corners"))?
                .iter()
                .map(|c| c["vertex_id"].as_u64().map(|x| x as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("vertex_id"))?;
            if ring.len() != kind.side_count() {
                return Err(bad("corner count"));
            }
            kinds.push(kind);
            rings.push(ring);
        }
        // Oriented vertex pair → pending darts awaiting their twin.
        let mut pending: BTreeMap<(usize, usize), Vec<(FaceId, usize)>> = BTreeMap::new();
        for (f, ring) in rings.iter().enumerate() {
            for i in 0..ring.len() {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                pending.entry((a, b)).or_default().push((f, i));
            }
        }
        let mut twins: Vec<Vec<(FaceId, usize)>> =
            kinds.iter().map(|k| vec![(usize::MAX, 0); k.side_count()]).collect();
        for (f, ring) in rings.iter().enumerate() {
            for i in 0..ring.len() {
                if twins[f][i].0 != usize::MAX {
                    continue;
                }
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                let (g, j) = pending
                    .get_mut(&(b, a))
                    .and_then(|v| v.pop())
                    .ok_or_else(|| bad("unmatched edge"))?;
                pending.get_mut(&(a, b)).unwrap().retain(|&p| p != (f, i));
                twins[f][i] = (g, j);
                twins[g][j] = (f, i);
            }
        }
        PartialTiling::from_adjacency(m, &kinds, &twins)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// The prism tiling: two regular m-gons at the poles joined by a band of m
/// quadrilaterals, every vertex `αβγ`.
pub fn prism(m: u32) -> CompleteTiling {
    prism_with(m, false)
}

/// Prism variant with a chosen quad chirality (the mirror image uses the
/// mirrored quads in the reversed band order).
pub fn prism_with(m: u32, mirrored: bool) -> CompleteTiling {
    let n = m as usize;
    let mut kinds = vec![TileKind::RegularGon(m)];
    kinds.extend(std::iter::repeat_n(TileKind::Quad { mirrored }, n));
    kinds.push(TileKind::RegularGon(m));
    // Faces: 0 top gon, 1..=m quads, m+1 bottom gon.
    // Plain quad boundary (γ,x)(β,y)(γ,x)(β,y): dart 0 x, 1 y, 2 x, 3 y.
    // Mirrored quad boundary (γ,y)(β,x)(γ,y)(β,x): dart 1 and 3 carry x.
    let quad = |i: usize| 1 + (i % n);
    let (top_dart, right_dart, bottom_dart, left_dart) =
        if mirrored { (1, 2, 3, 0) } else { (0, 1, 2, 3) };
    let mut twins: Vec<Vec<(FaceId, usize)>> = Vec::new();
    twins.push((0..n).map(|i| (quad(i), top_dart)).collect());
    for i in 0..n {
        let mut row = vec![(0, 0); 4];
        row[top_dart] = (0, i);
        row[right_dart] = (quad(i + n - 1), left_dart);
        row[bottom_dart] = (n + 1, (n - i) % n);
        row[left_dart] = (quad(i + 1), right_dart);
        twins.push(row);
    }
    twins.push((0..n).map(|j| (quad((n - j) % n), bottom_dart)).collect());
    PartialTiling::from_adjacency(m, &kinds, &twins).expect("prism adjacency is consistent")
}
