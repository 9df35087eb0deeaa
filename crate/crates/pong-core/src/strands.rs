//! Strand diagrams bouncing between two walls.
//!
//! The wall-reflection group acts on the integer line; a diagram is a set
//! of strands, one per occupied position in the window `1..=m-1`, each
//! recording where its strand lands after unfolding. Weights count how
//! often lifted strands sweep past each of the m half-integer levels
//! (stored doubled so everything stays in `i32`), and crossings are orbit
//! classes of inverting pairs of lifted strands.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Translation length of the wall-reflection group: reflecting in both
/// walls shifts by `2m - 2`.
pub fn period(m: i32) -> i32 {
    2 * m - 2
}

/// A rigid motion of the integer line: `x + c` or `c - x`.
///
/// Valid elements have `c ≡ 0 mod 2m-2` (translations) or `c ≡ 1 mod 2m-2`
/// (reflections); together these form the group generated by the
/// reflections in the two walls at 1/2 and m - 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub neg: bool,
    pub c: i32,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { neg: false, c: 0 }
    }

    pub fn translation(c: i32) -> Self {
        GroupElement { neg: false, c }
    }

    pub fn reflection(c: i32) -> Self {
        GroupElement { neg: true, c }
    }

    pub fn is_identity(self) -> bool {
        !self.neg && self.c == 0
    }

    pub fn is_reflection(self) -> bool {
        self.neg
    }

    pub fn is_valid(self, m: i32) -> bool {
        let p = period(m);
        let want = if self.neg { 1 } else { 0 };
        m >= 2 && self.c.rem_euclid(p) == want
    }

    pub fn apply(self, x: i32) -> i32 {
        if self.neg {
            self.c - x
        } else {
            x + self.c
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        GroupElement {
            neg: self.neg ^ other.neg,
            c: if self.neg {
                self.c - other.c
            } else {
                self.c + other.c
            },
        }
    }

    pub fn inverse(self) -> GroupElement {
        if self.neg {
            self
        } else {
            GroupElement {
                neg: false,
                c: -self.c,
            }
        }
    }
}

/// Folds an integer into the window: returns `(r, g)` with `1 <= r <= m-1`
/// and `g.apply(r) == n`. The group acts freely on the integers, so `g` is
/// unique.
pub fn fold(m: i32, n: i32) -> (i32, GroupElement) {
    debug_assert!(m >= 2);
    let p = period(m);
    let r = n.rem_euclid(p);
    if (1..=m - 1).contains(&r) {
        (r, GroupElement::translation(n - r))
    } else {
        let t = (1 - n).rem_euclid(p);
        debug_assert!((1..=m - 1).contains(&t));
        (t, GroupElement::reflection(n + t))
    }
}

pub fn orbit_rep(m: i32, n: i32) -> i32 {
    fold(m, n).0
}

/// Count of `x ≡ r (mod q)` in the open interval `(lo, hi)`.
fn progression_count(r: i32, q: i32, lo: i32, hi: i32) -> i32 {
    if hi - lo <= 1 {
        return 0;
    }
    (hi - 1 - r).div_euclid(q) - (lo - r).div_euclid(q)
}

/// A strand diagram: sources in `1..=m-1`, each mapped to an integer, with
/// targets in pairwise distinct orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PongData {
    m: i32,
    pairs: Vec<(i32, i32)>,
}

impl PongData {
    pub fn new(m: i32, pairs: &[(i32, i32)]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidM(m));
        }
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateSource(w[0].0));
            }
        }
        for &(s, _) in &pairs {
            if !(1..=m - 1).contains(&s) {
                return Err(Error::SourceOutOfWindow(s, m - 1));
            }
        }
        for (a, &(s, fs)) in pairs.iter().enumerate() {
            for &(t, ft) in &pairs[a + 1..] {
                if orbit_rep(m, fs) == orbit_rep(m, ft) {
                    return Err(Error::OrbitCollision(s, t));
                }
            }
        }
        Ok(PongData { m, pairs })
    }

    /// The diagram fixing every point of `state`.
    pub fn idempotent(m: i32, state: &[i32]) -> Result<Self> {
        let pairs: Vec<(i32, i32)> = state.iter().map(|&s| (s, s)).collect();
        PongData::new(m, &pairs)
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(i32, i32)] {
        &self.pairs
    }

    pub fn target(&self, s: i32) -> Option<i32> {
        self.pairs
            .iter()
            .find(|&&(src, _)| src == s)
            .map(|&(_, t)| t)
    }

    /// Sources, sorted ascending.
    pub fn source_state(&self) -> Vec<i32> {
        self.pairs.iter().map(|&(s, _)| s).collect()
    }

    /// Orbit representatives of the targets, sorted ascending.
    pub fn target_state(&self) -> Vec<i32> {
        let mut t: Vec<i32> = self
            .pairs
            .iter()
            .map(|&(_, fs)| orbit_rep(self.m, fs))
            .collect();
        t.sort_unstable();
        t
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs.iter().all(|&(s, fs)| s == fs)
    }

    pub fn max_span(&self) -> i32 {
        self.pairs
            .iter()
            .map(|&(s, fs)| (fs - s).abs())
            .max()
            .unwrap_or(0)
    }

    /// Twice the weight vector, indexed by level class `1..=m` (entry
    /// `i-1` counts lifted strands sweeping past the level `i - 1/2`).
    /// Entries for the wall classes 1 and m are always even.
    pub fn doubled_weight(&self) -> Vec<i32> {
        let p2 = 2 * period(self.m);
        let mut dw = vec![0; self.m as usize];
        for &(s, fs) in &self.pairs {
            let lo = 2 * s.min(fs);
            let hi = 2 * s.max(fs);
            for (idx, slot) in dw.iter_mut().enumerate() {
                let t2 = 2 * (idx as i32 + 1) - 1;
                // Orbit of the doubled level: two progressions, which
                // coincide exactly for the wall classes.
                *slot += progression_count(t2, p2, lo, hi)
                    + progression_count(2 - t2, p2, lo, hi);
            }
        }
        dw
    }

    pub fn doubled_total_weight(&self) -> i32 {
        self.doubled_weight().iter().sum()
    }

    /// Crossing classes, one canonical representative `(i, j)` each:
    /// `i` is a source and `j` the starting position of a lifted strand
    /// inverting with it; among the at most two such descriptions the
    /// lexicographically smaller is kept.
    pub fn crossings(&self) -> BTreeSet<(i32, i32)> {
        self.crossings_windowed(0)
    }

    /// Same as [`crossings`](Self::crossings) with the search window for
    /// lifted strands widened by `pad`; used to confirm the default
    /// window already finds everything.
    pub fn crossings_windowed(&self, pad: i32) -> BTreeSet<(i32, i32)> {
        let p = period(self.m);
        let window = self.max_span() + p + pad;
        let mut found = BTreeSet::new();
        for &(s, fs) in &self.pairs {
            let lo = s.min(fs) - window;
            let hi = s.max(fs) + window;
            for &(t, ft) in &self.pairs {
                // Lifts with start point in [lo, hi]: translations first,
                // then reflections.
                let mut gammas = Vec::new();
                let mut c = (lo - t).div_euclid(p) * p;
                while c <= hi - t {
                    if c >= lo - t {
                        gammas.push(GroupElement::translation(c));
                    }
                    c += p;
                }
                let mut c = (lo + t - 1).div_euclid(p) * p + 1;
                while c <= hi + t {
                    if c >= lo + t {
                        gammas.push(GroupElement::reflection(c));
                    }
                    c += p;
                }
                for g in gammas {
                    let j = g.apply(t);
                    if j == s {
                        // Free action: this is the strand paired with
                        // itself, not a genuine lift.
                        continue;
                    }
                    if (s - j).signum() != (fs - g.apply(ft)).signum() {
                        let a = (s, j);
                        let b = (t, g.inverse().apply(s));
                        found.insert(a.min(b));
                    }
                }
            }
        }
        found
    }

    pub fn cross(&self) -> usize {
        self.crossings().len()
    }

    /// Swap the two strands meeting at a crossing, following each past
    /// the meeting point.
    pub fn resolve(&self, c: (i32, i32)) -> Result<PongData> {
        if !self.crossings().contains(&c) {
            return Err(Error::NotACrossing(c.0, c.1));
        }
        let (i, j) = c;
        let (t, g) = fold(self.m, j);
        let fi = self.target(i).expect("crossing anchored at a source");
        let ft = self.target(t).expect("crossing partner is a source");
        let mut pairs = self.pairs.clone();
        for entry in pairs.iter_mut() {
            if entry.0 == i {
                entry.1 = g.apply(ft);
            } else if entry.0 == t {
                entry.1 = g.inverse().apply(fi);
            }
        }
        if t == i {
            // Same-orbit crossing: g is a reflection, so both update
            // rules agree.
            debug_assert!(g.is_reflection());
            debug_assert_eq!(g.apply(ft), g.inverse().apply(fi));
        }
        PongData::new(self.m, &pairs)
    }

    /// Stack `self` on top of `bottom`: each strand continues through the
    /// matching strand of `bottom`, transported by the group element that
    /// folds its endpoint into the window.
    pub fn compose(&self, bottom: &PongData) -> Result<PongData> {
        if self.m != bottom.m {
            return Err(Error::AmbientMismatch);
        }
        if self.target_state() != bottom.source_state() {
            return Err(Error::NotComposable);
        }
        let pairs: Vec<(i32, i32)> = self
            .pairs
            .iter()
            .map(|&(s, fs)| {
                let (t, g) = fold(self.m, fs);
                let ft = bottom.target(t).expect("matched states");
                (s, g.apply(ft))
            })
            .collect();
        PongData::new(self.m, &pairs)
    }
}

impl fmt::Display for PongData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} k={} (", self.m, self.pairs.len())?;
        for (n, (s, t)) in self.pairs.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", s, t)?;
        }
        write!(f, ")")
    }
}

impl FromStr for PongData {
    type Err = Error;

    /// Parses the display form, e.g. `m=4 k=2 ((1,-2),(2,1))`.
    fn from_str(s: &str) -> Result<PongData> {
        let mut p = Cursor::new(s);
        p.expect("m=")?;
        let m = p.int()?;
        p.skip_ws();
        p.expect("k=")?;
        let k = p.int()?;
        p.skip_ws();
        p.expect("(")?;
        let mut pairs = Vec::new();
        p.skip_ws();
        while !p.eat(")") {
            if !pairs.is_empty() {
                p.expect(",")?;
                p.skip_ws();
            }
            p.expect("(")?;
            let a = p.int()?;
            p.expect(",")?;
            let b = p.int()?;
            p.expect(")")?;
            pairs.push((a, b));
            p.skip_ws();
        }
        p.skip_ws();
        if !p.at_end() {
            return Err(Error::parse(format!("trailing input in {s:?}")));
        }
        if k != pairs.len() as i32 {
            return Err(Error::parse(format!(
                "k={} but {} strand pairs given",
                k,
                pairs.len()
            )));
        }
        PongData::new(m, &pairs)
    }
}

/// Minimal scanning parser shared by the text formats in this crate.
pub(crate) struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str) -> Self {
        let mut c = Cursor { s, pos: 0 };
        c.skip_ws();
        c
    }

    pub fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.s.len()
    }

    pub fn skip_ws(&mut self) {
        while self.rest().starts_with(|ch: char| ch.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(format!(
                "expected {tok:?} at {:?}",
                truncated(self.rest())
            )))
        }
    }

    pub fn int(&mut self) -> Result<i32> {
        let rest = self.rest();
        let mut len = 0;
        let bytes = rest.as_bytes();
        if len < bytes.len() && (bytes[len] == b'-' || bytes[len] == b'+') {
            len += 1;
        }
        while len < bytes.len() && bytes[len].is_ascii_digit() {
            len += 1;
        }
        let text = &rest[..len];
        let v = text
            .parse()
            .map_err(|_| Error::parse(format!("expected integer at {:?}", truncated(rest))))?;
        self.pos += len;
        Ok(v)
    }
}

fn truncated(s: &str) -> &str {
    &s[..s.len().min(24)]
}
