//! Angle-arrangement calculus.
//!
//! A vertex is a cyclic sequence of corners separated by edge labels: `|` for
//! an x-edge and `||` for a y-edge, so `|a|b||g|` is the arrangement
//! `|α|β‖γ|`.  Every corner constrains its two sides: an α sits between two
//! x-edges, a β or γ sits between one x and one y.  Which side carries the y
//! depends on the chirality of the quadrilateral copy contributing the
//! corner.

use std::collections::BTreeSet;
use std::fmt;

use crate::angles::{Angle, VertexType, VertexTypeError};

/// Edge label: the two distinct edge lengths of the prototiles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum EdgeLabel {
    X,
    Y,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::X => "|",
            EdgeLabel::Y => "||",
        }
    }
}

/// A corner at a vertex.  `mirrored` is meaningful only for β and γ and
/// records which chirality of quadrilateral contributed the corner.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CornerToken {
    pub angle: Angle,
    pub mirrored: bool,
}

impl CornerToken {
    /// `(incoming, outgoing)` edge labels in the global vertex orientation.
    pub fn side_profile(self) -> (EdgeLabel, EdgeLabel) {
        use EdgeLabel::{X, Y};
        match (self.angle, self.mirrored) {
            (Angle::Alpha, _) => (X, X),
            (Angle::Beta, false) => (X, Y),
            (Angle::Beta, true) => (Y, X),
            (Angle::Gamma, false) => (Y, X),
            (Angle::Gamma, true) => (X, Y),
        }
    }

    /// Token with the given angle whose sides are `(incoming, outgoing)`, if
    /// any chirality realizes them.
    pub fn from_sides(angle: Angle, incoming: EdgeLabel, outgoing: EdgeLabel) -> Option<Self> {
        for mirrored in [false, true] {
            let t = CornerToken { angle, mirrored };
            if t.side_profile() == (incoming, outgoing) {
                return Some(t);
            }
        }
        None
    }
}

/// A cyclic arrangement of corners with the edge label between each
/// consecutive pair.  `seps[i]` follows `tokens[i]`; stored in canonical
/// rotation so equal arrangements compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexArrangement {
    tokens: Vec<CornerToken>,
    seps: Vec<EdgeLabel>,
}

impl VertexArrangement {
    /// Build from tokens, deriving separators from the side profiles.
    /// Fails if adjacent profiles are inconsistent.
    pub fn from_tokens(tokens: Vec<CornerToken>) -> Option<Self> {
        let n = tokens.len();
        if n == 0 {
            return None;
        }
        let mut seps = Vec::with_capacity(n);
        for i in 0..n {
            let out = tokens[i].side_profile().1;
            let inc = tokens[(i + 1) % n].side_profile().0;
            if out != inc {
                return None;
            }
            seps.push(out);
        }
        Some(VertexArrangement { tokens, seps }.canonical_rotation())
    }

    fn canonical_rotation(self) -> Self {
        let n = self.tokens.len();
        let key = |r: usize| -> Vec<(Angle, EdgeLabel)> {
            (0..n)
                .map(|i| (self.tokens[(r + i) % n].angle, self.seps[(r + i) % n]))
                .collect()
        };
        let best = (0..n).min_by_key(|&r| key(r)).unwrap();
        VertexArrangement {
            tokens: (0..n).map(|i| self.tokens[(best + i) % n]).collect(),
            seps: (0..n).map(|i| self.seps[(best + i) % n]).collect(),
        }
    }

    /// Reverse the cycle and flip every chirality; this is the mirror image
    /// of the vertex.
    pub fn reflected(&self) -> Self {
        let n = self.tokens.len();
        let mut tokens = Vec::with_capacity(n);
        let mut seps = Vec::with_capacity(n);
        for j in 0..n {
            let i = (n - j) % n;
            let t = self.tokens[i];
            let mirrored = t.angle != Angle::Alpha && !t.mirrored;
            tokens.push(CornerToken { angle: t.angle, mirrored });
            // Separator after reversed token j is the one before original i.
            seps.push(self.seps[(i + n - 1) % n]);
        }
        VertexArrangement { tokens, seps }.canonical_rotation()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[CornerToken] {
        &self.tokens
    }

    pub fn seps(&self) -> &[EdgeLabel] {
        &self.seps
    }

    /// The vertex type realized by this arrangement.
    pub fn vertex_type(&self) -> VertexType {
        let mut a = 0;
        let mut b = 0;
        let mut c = 0;
        for t in &self.tokens {
            match t.angle {
                Angle::Alpha => a += 1,
                Angle::Beta => b += 1,
                Angle::Gamma => c += 1,
            }
        }
        VertexType::raw(a, b, c)
    }

    /// Cyclic word as (angle, following separator) pairs, the representation
    /// pattern matching runs over.
    pub fn word(&self) -> Vec<(Angle, EdgeLabel)> {
        self.tokens
            .iter()
            .zip(&self.seps)
            .map(|(t, s)| (t.angle, *s))
            .collect()
    }
}

impl fmt::Display for VertexArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Leading wrap separator, then corner/separator pairs; the final
        // separator shown equals the leading one.
        let n = self.tokens.len();
        write!(f, "{}", self.seps[n - 1].as_str())?;
        for (t, s) in self.tokens.iter().zip(&self.seps) {
            write!(f, "{}{}", t.angle.letter(), s.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All consistent cyclic arrangements of a vertex type, deduplicated up to
/// rotation, and additionally up to reflection when `up_to_symmetry` is set.
pub fn enumerate_arrangements(
    v: VertexType,
    up_to_symmetry: bool,
) -> Result<BTreeSet<VertexArrangement>, VertexTypeError> {
    enumerate_arrangements_opt(v, up_to_symmetry, true)
}

/// As [`enumerate_arrangements`], with mirrored quadrilateral copies
/// optionally disallowed.
pub fn enumerate_arrangements_opt(
    v: VertexType,
    up_to_symmetry: bool,
    allow_mirrored: bool,
) -> Result<BTreeSet<VertexArrangement>, VertexTypeError> {
    if (v.b + v.c) % 2 != 0 {
        return Err(VertexTypeError::OddParity(v.b + v.c));
    }
    let n = v.degree() as usize;
    let mut out = BTreeSet::new();
    if n == 0 {
        return Ok(out);
    }
    // DFS over corner choices; each token's incoming side must match the
    // previous token's outgoing side, and the cycle must close.
    let mut stack: Vec<CornerToken> = Vec::with_capacity(n);
    fn rec(
        remaining: [u32; 3],
        first_in: Option<EdgeLabel>,
        prev_out: Option<EdgeLabel>,
        stack: &mut Vec<CornerToken>,
        n: usize,
        allow_mirrored: bool,
        out: &mut BTreeSet<VertexArrangement>,
        up_to_symmetry: bool,
    ) {
        if stack.len() == n {
            if prev_out == first_in {
                if let Some(arr) = VertexArrangement::from_tokens(stack.clone()) {
                    let arr = if up_to_symmetry {
                        std::cmp::min(arr.clone(), arr.reflected())
                    } else {
                        arr
                    };
                    out.insert(arr);
                }
            }
            return;
        }
        for (idx, angle) in [Angle::Alpha, Angle::Beta, Angle::Gamma].into_iter().enumerate() {
            if remaining[idx] == 0 {
                continue;
            }
            for mirrored in [false, true] {
                if mirrored && (!allow_mirrored || angle == Angle::Alpha) {
                    continue;
                }
                let t = CornerToken { angle, mirrored };
                let (inc, outg) = t.side_profile();
                if let Some(p) = prev_out {
                    if p != inc {
                        continue;
                    }
                }
                let mut rem = remaining;
                rem[idx] -= 1;
                stack.push(t);
                rec(
                    rem,
                    first_in.or(Some(inc)),
                    Some(outg),
                    stack,
                    n,
                    allow_mirrored,
                    out,
                    up_to_symmetry,
                );
                stack.pop();
            }
        }
    }
    rec(
        [v.a, v.b, v.c],
        None,
        None,
        &mut stack,
        n,
        allow_mirrored,
        &mut out,
        up_to_symmetry,
    );
    Ok(out)
}

/// A linear (non-cyclic) corner/separator word, e.g. `g|g` or `b||g`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub angles: Vec<Angle>,
    pub seps: Vec<EdgeLabel>,
}

#[derive(thiserror::Error, Debug, PartialEq, Eq)]
pub enum PatternError {
    #[error("malformed pattern {0:?}")]
    Malformed(String),
}

impl Pattern {
    pub fn new(angles: Vec<Angle>, seps: Vec<EdgeLabel>) -> Result<Self, PatternError> {
        if angles.is_empty() || seps.len() + 1 != angles.len() {
            return Err(PatternError::Malformed(format!(
                "{} corners, {} separators",
                angles.len(),
                seps.len()
            )));
        }
        Ok(Pattern { angles, seps })
    }

    /// The same pattern read right to left.
    pub fn reversed(&self) -> Pattern {
        Pattern {
            angles: self.angles.iter().rev().copied().collect(),
            seps: self.seps.iter().rev().copied().collect(),
        }
    }
}

impl std::str::FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, PatternError> {
        let raw = s.trim();
        let mut angles = Vec::new();
        let mut seps = Vec::new();
        let mut chars = raw.chars().peekable();
        let mut expect_corner = true;
        while let Some(ch) = chars.next() {
            if expect_corner {
                let angle = match ch {
                    'a' | 'α' => Angle::Alpha,
                    'b' | 'β' => Angle::Beta,
                    'g' | 'c' | 'γ' => Angle::Gamma,
                    _ => return Err(PatternError::Malformed(raw.to_string())),
                };
                angles.push(angle);
                expect_corner = false;
            } else {
                let sep = match ch {
                    '|' => {
                        if chars.peek() == Some(&'|') {
                            chars.next();
                            EdgeLabel::Y
                        } else {
                            EdgeLabel::X
                        }
                    }
                    '‖' => EdgeLabel::Y,
                    _ => return Err(PatternError::Malformed(raw.to_string())),
                };
                seps.push(sep);
                expect_corner = true;
            }
        }
        if expect_corner {
            return Err(PatternError::Malformed(raw.to_string()));
        }
        Pattern::new(angles, seps)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.angles.iter().enumerate() {
            write!(f, "{}", a.letter())?;
            if let Some(s) = self.seps.get(i) {
                write!(f, "{}", s.as_str())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Whether the pattern occurs as a contiguous subword of the cyclic
/// arrangement, read in either direction.
pub fn match_pattern(arr: &VertexArrangement, pat: &Pattern) -> bool {
    matches_forward(arr, pat) || matches_forward(arr, &pat.reversed())
}

fn matches_forward(arr: &VertexArrangement, pat: &Pattern) -> bool {
    let n = arr.len();
    let k = pat.angles.len();
    if k > n {
        return false;
    }
    'outer: for start in 0..n {
        for j in 0..k {
            if arr.tokens()[(start + j) % n].angle != pat.angles[j] {
                continue 'outer;
            }
            if j + 1 < k && arr.seps()[(start + j) % n] != pat.seps[j] {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// All 2- and 3-corner patterns not occurring in any arrangement of any
/// member of the AVC; the search prunes against these.
pub fn forbidden_patterns(members: &BTreeSet<VertexType>) -> BTreeSet<Pattern> {
    assert!(!members.is_empty(), "forbidden_patterns requires a nonempty AVC");
    let arrangements: Vec<VertexArrangement> = members
        .iter()
        .flat_map(|&v| enumerate_arrangements(v, false).unwrap_or_default())
        .collect();
    let letters = [Angle::Alpha, Angle::Beta, Angle::Gamma];
    let labels = [EdgeLabel::X, EdgeLabel::Y];
    let mut out = BTreeSet::new();
    let mut consider = |pat: Pattern| {
        let seen = arrangements.iter().any(|a| match_pattern(a, &pat));
        if !seen {
            // Store one representative per reversal pair.
            let rep = std::cmp::min(pat.clone(), pat.reversed());
            out.insert(rep);
        }
    };
    for &a0 in &letters {
        for &s0 in &labels {
            for &a1 in &letters {
                consider(Pattern::new(vec![a0, a1], vec![s0]).unwrap());
                for &s1 in &labels {
                    for &a2 in &letters {
                        consider(Pattern::new(vec![a0, a1, a2], vec![s0, s1]).unwrap());
                    }
                }
            }
        }
    }
    out
}
