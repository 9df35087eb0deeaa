//! The differential graded algebra P(m,k) of k strands between m walls.
//!
//! Elements are GF(2) sums of (monomial, diagram) pairs, where monomials
//! live in F[v_1..v_m]. The differential resolves one crossing at a time,
//! multiplication stacks diagrams, and both insert the unique monomial
//! that keeps the weight vector balanced.

use crate::error::{Error, Result};
use crate::strands::{orbit_rep, PongData};
use std::collections::BTreeSet;
use std::fmt;

/// Exponent vector for v_1..v_m.
pub type Monomial = Vec<u32>;

pub fn mono_one(m: i32) -> Monomial {
    vec![0; m as usize]
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// GF(2) combination of monomial-scaled diagrams in a fixed P(m,k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt {
    m: i32,
    k: usize,
    terms: BTreeSet<(Monomial, PongData)>,
}

impl Elt {
    pub fn zero(m: i32, k: usize) -> Self {
        Elt {
            m,
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn generator(d: PongData) -> Self {
        Elt::term(mono_one(d.m()), d)
    }

    pub fn term(e: Monomial, d: PongData) -> Self {
        assert_eq!(e.len(), d.m() as usize);
        let mut t = BTreeSet::new();
        let (m, k) = (d.m(), d.k());
        t.insert((e, d));
        Elt { m, k, terms: t }
    }

    pub fn idempotent(m: i32, state: &[i32]) -> Result<Self> {
        Ok(Elt::generator(PongData::idempotent(m, state)?))
    }

    /// Sum of all idempotents: the unit of P(m,k).
    pub fn unit(m: i32, k: usize) -> Self {
        let mut out = Elt::zero(m, k);
        for x in subsets(m, k) {
            out.toggle(mono_one(m), PongData::idempotent(m, &x).expect("valid state"));
        }
        out
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, PongData)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, e: Monomial, d: PongData) {
        debug_assert_eq!(d.m(), self.m);
        debug_assert_eq!(d.k(), self.k);
        let key = (e, d);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn add(&self, other: &Elt) -> Elt {
        assert_eq!((self.m, self.k), (other.m, other.k), "ambient mismatch");
        let mut out = self.clone();
        for (e, d) in &other.terms {
            out.toggle(e.clone(), d.clone());
        }
        out
    }

    /// Multiply by the monomial v_i^pow.
    pub fn times_v(&self, i: usize, pow: u32) -> Elt {
        assert!((1..=self.m as usize).contains(&i));
        let mut mono = mono_one(self.m);
        mono[i - 1] = pow;
        self.times_monomial(&mono)
    }

    pub fn times_monomial(&self, mono: &Monomial) -> Elt {
        let mut out = Elt::zero(self.m, self.k);
        for (e, d) in &self.terms {
            out.toggle(mono_mul(e, mono), d.clone());
        }
        out
    }

    /// The differential: resolve each crossing that lowers the crossing
    /// count by exactly one, scaling by the monomial that restores the
    /// weight.
    pub fn differential(&self) -> Elt {
        let mut out = Elt::zero(self.m, self.k);
        for (e, d) in &self.terms {
            let dw = d.doubled_weight();
            let cr = d.cross();
            for c in d.crossings() {
                let r = d.resolve(c).expect("own crossing");
                if r.cross() != cr - 1 {
                    continue;
                }
                let defect = weight_defect(&dw, &r.doubled_weight());
                out.toggle(mono_mul(e, &defect), r);
            }
        }
        out
    }

    /// Stack every term of `self` on top of every term of `other`;
    /// non-chaining or crossing-losing pairs contribute zero.
    pub fn multiply(&self, other: &Elt) -> Result<Elt> {
        if self.m != other.m || self.k != other.k {
            return Err(Error::AmbientMismatch);
        }
        let mut out = Elt::zero(self.m, self.k);
        for (e1, d1) in &self.terms {
            let right = d1.target_state();
            for (e2, d2) in &other.terms {
                if right != d2.source_state() {
                    continue;
                }
                let comp = d1.compose(d2).expect("states chain");
                if comp.cross() != d1.cross() + d2.cross() {
                    continue;
                }
                let sum: Vec<i32> = d1
                    .doubled_weight()
                    .iter()
                    .zip(d2.doubled_weight())
                    .map(|(a, b)| a + b)
                    .collect();
                let defect = weight_defect(&sum, &comp.doubled_weight());
                out.toggle(mono_mul(&mono_mul(e1, e2), &defect), comp);
            }
        }
        Ok(out)
    }

    /// Doubled weight of a homogeneous element (diagram weight plus twice
    /// the monomial exponents).
    pub fn doubled_weight(&self) -> Result<Vec<i32>> {
        let mut it = self.terms.iter().map(|(e, d)| term_doubled_weight(e, d));
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for w in it {
            if w != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }

    /// Crossing degree of a homogeneous element (monomials do not count).
    pub fn cross_degree(&self) -> Result<i32> {
        let mut it = self.terms.iter().map(|(_, d)| d.cross() as i32);
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for c in it {
            if c != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }

    /// `(cross, doubled weight, Ngr)` with `Ngr = cross - 2·total weight`.
    pub fn gradings(&self) -> Result<(i32, Vec<i32>, i32)> {
        let cross = self.cross_degree()?;
        let dw = self.doubled_weight()?;
        let ngr = cross - dw.iter().sum::<i32>();
        Ok((cross, dw, ngr))
    }

    /// Common source state of all terms, when defined.
    pub fn left_state(&self) -> Result<Vec<i32>> {
        let mut it = self.terms.iter().map(|(_, d)| d.source_state());
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for s in it {
            if s != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }

    /// Common target state of all terms, when defined.
    pub fn right_state(&self) -> Result<Vec<i32>> {
        let mut it = self.terms.iter().map(|(_, d)| d.target_state());
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for s in it {
            if s != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }
}

fn term_doubled_weight(e: &Monomial, d: &PongData) -> Vec<i32> {
    d.doubled_weight()
        .iter()
        .zip(e)
        .map(|(w, exp)| w + 2 * *exp as i32)
        .collect()
}

/// Halve the (componentwise even, non-negative) drop between two doubled
/// weight vectors into a monomial.
fn weight_defect(high: &[i32], low: &[i32]) -> Monomial {
    high.iter()
        .zip(low)
        .map(|(h, l)| {
            let drop = h - l;
            debug_assert!(drop >= 0 && drop % 2 == 0, "weight defect {h} -> {l}");
            (drop / 2) as u32
        })
        .collect()
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, d)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "v{}*", i + 1)?,
                    _ => write!(f, "v{}^{}*", i + 1, exp)?,
                }
            }
            write!(f, "(")?;
            for (n, (s, t)) in d.pairs().iter().enumerate() {
                if n > 0 {
                    write!(f, ",")?;
                }
                write!(f, "({},{})", s, t)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All k-element subsets of `1..=m-1`, in lexicographic order.
pub fn subsets(m: i32, k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(next: i32, m: i32, k: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for s in next..=(m - 1 - need as i32 + 1) {
            cur.push(s);
            rec(s + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(1, m, k, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AtomicKind {
    /// Two strands trading places (or one strand bouncing off a wall when
    /// an endpoint is 0 or m).
    X,
    /// One strand moving right, from `lo` to `hi`.
    R,
    /// One strand moving left, from `hi` to `lo`.
    L,
}

/// A named generator: X_{lo,hi}, R_{lo,hi}, or L_{hi,lo}, optionally
/// restricted to one left idempotent. `occupied` asks for the variant
/// whose in-between positions must all be occupied; dropping it gives the
/// calligraphic variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicDescriptor {
    pub kind: AtomicKind,
    pub lo: i32,
    pub hi: i32,
    pub occupied: bool,
    pub left: Option<Vec<i32>>,
}

impl AtomicDescriptor {
    pub fn x(lo: i32, hi: i32) -> Self {
        AtomicDescriptor {
            kind: AtomicKind::X,
            lo,
            hi,
            occupied: true,
            left: None,
        }
    }

    pub fn r(lo: i32, hi: i32) -> Self {
        AtomicDescriptor {
            kind: AtomicKind::R,
            lo,
            hi,
            occupied: true,
            left: None,
        }
    }

    pub fn l(hi: i32, lo: i32) -> Self {
        AtomicDescriptor {
            kind: AtomicKind::L,
            lo,
            hi,
            occupied: true,
            left: None,
        }
    }

    pub fn calligraphic(mut self) -> Self {
        self.occupied = false;
        self
    }

    pub fn with_left(mut self, x: &[i32]) -> Self {
        self.left = Some(x.to_vec());
        self
    }
}

impl fmt::Display for AtomicDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.kind, self.occupied) {
            (AtomicKind::X, true) => "X",
            (AtomicKind::X, false) => "cX",
            (AtomicKind::R, true) => "R",
            (AtomicKind::R, false) => "cR",
            (AtomicKind::L, true) => "L",
            (AtomicKind::L, false) => "cL",
        };
        match self.kind {
            AtomicKind::L => write!(f, "{}[{},{}]", name, self.hi, self.lo)?,
            _ => write!(f, "{}[{},{}]", name, self.lo, self.hi)?,
        }
        if let Some(x) = &self.left {
            write!(f, "@{:?}", x)?;
        }
        Ok(())
    }
}

/// Build the atomic element described by `desc` inside P(m,k).
pub fn atomic(m: i32, k: usize, desc: &AtomicDescriptor) -> Result<Elt> {
    let (lo, hi) = (desc.lo, desc.hi);
    let (movers, required): (Vec<(i32, i32)>, Vec<i32>) = match desc.kind {
        AtomicKind::X => {
            if !(0 <= lo && lo < hi && hi <= m && (lo, hi) != (0, m)) {
                return Err(Error::Unsupported(format!(
                    "X endpoints ({lo},{hi}) out of range for m={m}"
                )));
            }
            if lo == 0 {
                // One strand bouncing off the left wall.
                let req = if desc.occupied {
                    (1..=hi).collect()
                } else {
                    vec![hi]
                };
                (vec![(hi, 1 - hi)], req)
            } else if hi == m {
                let req = if desc.occupied {
                    (lo..=m - 1).collect()
                } else {
                    vec![lo]
                };
                (vec![(lo, 2 * m - 1 - lo)], req)
            } else {
                let req = if desc.occupied {
                    (lo..=hi).collect()
                } else {
                    vec![lo, hi]
                };
                (vec![(lo, hi), (hi, lo)], req)
            }
        }
        AtomicKind::R | AtomicKind::L => {
            if !(1 <= lo && lo < hi && hi <= m - 1) {
                return Err(Error::Unsupported(format!(
                    "strand endpoints ({lo},{hi}) out of range for m={m}"
                )));
            }
            let src = if desc.kind == AtomicKind::R { lo } else { hi };
            let dst = if desc.kind == AtomicKind::R { hi } else { lo };
            let req = if desc.occupied {
                (lo + 1..hi).chain([src]).collect::<BTreeSet<i32>>().into_iter().collect()
            } else {
                vec![src]
            };
            (vec![(src, dst)], req)
        }
    };
    let mut out = Elt::zero(m, k);
    'state: for x in subsets(m, k) {
        if let Some(want) = &desc.left {
            if &x != want {
                continue;
            }
        }
        for r in &required {
            if !x.contains(r) {
                continue 'state;
            }
        }
        let mut pairs = movers.clone();
        for &s in &x {
            if movers.iter().all(|&(src, _)| src != s) {
                pairs.push((s, s));
            }
        }
        if let Ok(d) = PongData::new(m, &pairs) {
            out.toggle(mono_one(m), d);
        }
    }
    Ok(out)
}

/// v_j times the idempotents whose state meets `{j-1, j} ∩ {1..m-1}`:
/// the right-hand side of d X_{j-1,j}.
pub fn u_elt(m: i32, k: usize, j: i32) -> Result<Elt> {
    if !(1..=m).contains(&j) {
        return Err(Error::Unsupported(format!("u index {j} out of 1..={m}")));
    }
    let mut out = Elt::zero(m, k);
    for x in subsets(m, k) {
        if (j - 1 >= 1 && !x.contains(&(j - 1))) || (j <= m - 1 && !x.contains(&j)) {
            continue;
        }
        out = out.add(&Elt::idempotent(m, &x)?.times_v(j as usize, 1));
    }
    Ok(out)
}

/// The central cycle: the commutator sum of the two wall-bounce families.
/// For k=0 the commutators all vanish and the cycle degenerates to the
/// full-width monomial on the empty diagram.
pub fn omega(m: i32, k: usize) -> Result<Elt> {
    if k as i32 >= m {
        return Err(Error::InvalidK { m, k: k as i32 });
    }
    if k == 0 {
        let d = PongData::idempotent(m, &[])?;
        return Ok(Elt::term(vec![1; m as usize], d));
    }
    let mut out = Elt::zero(m, k);
    for i in 1..m {
        let a = atomic(m, k, &AtomicDescriptor::x(0, i).calligraphic())?;
        let b = atomic(m, k, &AtomicDescriptor::x(i, m).calligraphic())?;
        out = out.add(&a.multiply(&b)?);
        out = out.add(&b.multiply(&a)?);
    }
    Ok(out)
}

/// One factor of a factorization into atomics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Idempotent(Vec<i32>),
    Atomic(AtomicDescriptor),
}

impl Factor {
    pub fn to_elt(&self, m: i32, k: usize) -> Result<Elt> {
        match self {
            Factor::Idempotent(x) => Elt::idempotent(m, x),
            Factor::Atomic(desc) => atomic(m, k, desc),
        }
    }
}

/// Multiply out a factor sequence.
pub fn product(m: i32, k: usize, factors: &[Factor]) -> Result<Elt> {
    let mut acc = Elt::unit(m, k);
    for f in factors {
        acc = acc.multiply(&f.to_elt(m, k)?)?;
    }
    Ok(acc)
}

/// Factors a diagram as idempotent times plain atomics, splitting simple
/// pieces off the top until only an idempotent remains. The number of
/// atomic factors always comes out to 2·(total weight) − crossings, and
/// re-multiplying gives back exactly the input diagram (no monomial).
pub fn factor_atomic(d: &PongData) -> Vec<Factor> {
    let m = d.m();
    let mut out = vec![Factor::Idempotent(d.source_state())];
    let mut cur = d.clone();
    while !cur.is_idempotent() {
        let (piece, rest) = split_top(&cur);
        assert!(
            rest.doubled_total_weight() < cur.doubled_total_weight(),
            "split must shed weight"
        );
        let state = cur.source_state();
        expand_calligraphic(m, &state, &piece, &mut out);
        cur = rest;
    }
    out
}

/// One calligraphic piece split off the top of a diagram: which simple
/// move happens first.
#[derive(Clone, Copy, Debug)]
enum TopPiece {
    /// Strand `lo` climbs straight to `hi`.
    R { lo: i32, hi: i32 },
    /// Strand `hi` descends straight to `lo`.
    L { hi: i32, lo: i32 },
    /// Strands at `lo < hi` trade places.
    Swap { lo: i32, hi: i32 },
    /// Strand at `s` bounces off the left wall.
    BounceLeft { s: i32 },
    /// Strand at `s` bounces off the right wall.
    BounceRight { s: i32 },
}

fn split_top(d: &PongData) -> (TopPiece, PongData) {
    let m = d.m();
    let right_movers: Vec<i32> = d
        .pairs()
        .iter()
        .filter(|&&(s, t)| t > s)
        .map(|&(s, _)| s)
        .collect();
    let left_movers: Vec<i32> = d
        .pairs()
        .iter()
        .filter(|&&(s, t)| t < s)
        .map(|&(s, _)| s)
        .collect();

    // After the piece moves a strand, the remainder starts it from its
    // new position.
    let settle = |d: &PongData, at: i32, to: i32| -> PongData {
        let pairs: Vec<(i32, i32)> = d
            .pairs()
            .iter()
            .map(|&(s, t)| if s == at { (to, to) } else { (s, t) })
            .collect();
        PongData::new(m, &pairs).expect("split keeps data valid")
    };
    // A bounce returns the strand to its starting position; only the
    // remaining target changes.
    let rebase = |d: &PongData, at: i32, to: i32| -> PongData {
        let pairs: Vec<(i32, i32)> = d
            .pairs()
            .iter()
            .map(|&(s, t)| if s == at { (s, to) } else { (s, t) })
            .collect();
        PongData::new(m, &pairs).expect("split keeps data valid")
    };

    if let Some(&xi) = right_movers.iter().max() {
        let fxi = d.target(xi).unwrap();
        if let Some(&xj) = left_movers.iter().filter(|&&s| s > xi).min() {
            let fxj = d.target(xj).unwrap();
            if fxi < xj {
                // Terminates below the descending strand: a whole R piece.
                (TopPiece::R { lo: xi, hi: fxi }, settle(d, xi, fxi))
            } else if fxj > xi {
                (TopPiece::L { hi: xj, lo: fxj }, settle(d, xj, fxj))
            } else {
                // They pass each other: swap and trade continuations.
                let pairs: Vec<(i32, i32)> = d
                    .pairs()
                    .iter()
                    .map(|&(s, t)| {
                        if s == xi {
                            (s, fxj)
                        } else if s == xj {
                            (s, fxi)
                        } else {
                            (s, t)
                        }
                    })
                    .collect();
                (
                    TopPiece::Swap { lo: xi, hi: xj },
                    PongData::new(m, &pairs).expect("swap keeps data valid"),
                )
            }
        } else if fxi <= m - 1 {
            (TopPiece::R { lo: xi, hi: fxi }, settle(d, xi, fxi))
        } else {
            // Unwind one bounce off the right wall.
            (
                TopPiece::BounceRight { s: xi },
                rebase(d, xi, 2 * m - 1 - fxi),
            )
        }
    } else {
        let xi = *left_movers.iter().min().expect("non-idempotent diagram");
        let fxi = d.target(xi).unwrap();
        if fxi >= 1 {
            (TopPiece::L { hi: xi, lo: fxi }, settle(d, xi, fxi))
        } else {
            (TopPiece::BounceLeft { s: xi }, rebase(d, xi, 1 - fxi))
        }
    }
}

/// Rewrite one calligraphic top piece over the state `x` as plain atomic
/// factors, walking the moving strand through the unoccupied positions it
/// passes.
fn expand_calligraphic(m: i32, x: &[i32], piece: &TopPiece, out: &mut Vec<Factor>) {
    let gaps = |lo: i32, hi: i32| -> Vec<i32> {
        (lo + 1..hi).filter(|g| !x.contains(g)).collect()
    };
    match *piece {
        TopPiece::R { lo, hi } => {
            let mut at = lo;
            for g in gaps(lo, hi) {
                out.push(Factor::Atomic(AtomicDescriptor::r(at, g)));
                at = g;
            }
            out.push(Factor::Atomic(AtomicDescriptor::r(at, hi)));
        }
        TopPiece::L { hi, lo } => {
            let mut at = hi;
            for g in gaps(lo, hi).into_iter().rev() {
                out.push(Factor::Atomic(AtomicDescriptor::l(at, g)));
                at = g;
            }
            out.push(Factor::Atomic(AtomicDescriptor::l(at, lo)));
        }
        TopPiece::Swap { lo, hi } => {
            // cX_{lo,hi} = R_{lo,g}·cX_{g,hi}·L_{g,lo} at the first gap g.
            let mut rs = Vec::new();
            let mut ls = Vec::new();
            let mut at = lo;
            for g in gaps(lo, hi) {
                rs.push(Factor::Atomic(AtomicDescriptor::r(at, g)));
                ls.push(Factor::Atomic(AtomicDescriptor::l(g, at)));
                at = g;
            }
            out.extend(rs);
            out.push(Factor::Atomic(AtomicDescriptor::x(at, hi)));
            out.extend(ls.into_iter().rev());
        }
        TopPiece::BounceLeft { s } => {
            // cX_{0,s} = L_{s,g}·cX_{0,g}·R_{g,s} at the last gap g.
            let mut ls = Vec::new();
            let mut rs = Vec::new();
            let mut at = s;
            for g in gaps(0, s).into_iter().rev() {
                ls.push(Factor::Atomic(AtomicDescriptor::l(at, g)));
                rs.push(Factor::Atomic(AtomicDescriptor::r(g, at)));
                at = g;
            }
            out.extend(ls);
            out.push(Factor::Atomic(AtomicDescriptor::x(0, at)));
            out.extend(rs.into_iter().rev());
        }
        TopPiece::BounceRight { s } => {
            let mut rs = Vec::new();
            let mut ls = Vec::new();
            let mut at = s;
            for g in gaps(s, m) {
                rs.push(Factor::Atomic(AtomicDescriptor::r(at, g)));
                ls.push(Factor::Atomic(AtomicDescriptor::l(g, at)));
                at = g;
            }
            out.extend(rs);
            out.push(Factor::Atomic(AtomicDescriptor::x(at, m)));
            out.extend(ls.into_iter().rev());
        }
    }
}

/// All diagrams in P(m) with the given source and target states whose
/// doubled weight is bounded by `dw_bound` componentwise.
pub fn enumerate_data_bounded(
    m: i32,
    x: &[i32],
    y: &[i32],
    dw_bound: &[i32],
) -> Vec<PongData> {
    // A strand's sweep shows up in the total weight, so the total doubled
    // weight bounds every single span.
    enumerate_data_window(m, x, y, dw_bound, dw_bound.iter().sum())
}

/// Same, with an explicit bound on how far a strand may travel from its
/// source. Larger windows must not find new diagrams; tests re-run with a
/// doubled window to confirm saturation.
pub fn enumerate_data_window(
    m: i32,
    x: &[i32],
    y: &[i32],
    dw_bound: &[i32],
    budget: i32,
) -> Vec<PongData> {
    assert_eq!(dw_bound.len(), m as usize);
    if x.len() != y.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm_targets: Vec<i32> = Vec::new();
    permute(y, &mut vec![false; y.len()], &mut perm_targets, &mut |assign| {
        let mut choices: Vec<Vec<i32>> = Vec::new();
        for (&s, &rep) in x.iter().zip(assign.iter()) {
            let mut c = Vec::new();
            let p = crate::strands::period(m);
            // Lifts of rep within span `budget` of s: both progressions.
            for base in [rep, 1 - rep] {
                let mut t = base + (s - budget - base).div_euclid(p) * p;
                while t <= s + budget {
                    if (t - s).abs() <= budget && orbit_rep(m, t) == rep {
                        c.push(t);
                    }
                    t += p;
                }
            }
            c.sort_unstable();
            c.dedup();
            choices.push(c);
        }
        let mut pick = vec![0i32; x.len()];
        cartesian(&choices, &mut pick, 0, &mut |targets| {
            let pairs: Vec<(i32, i32)> = x.iter().copied().zip(targets.iter().copied()).collect();
            if let Ok(d) = PongData::new(m, &pairs) {
                let dw = d.doubled_weight();
                if dw.iter().zip(dw_bound).all(|(a, b)| a <= b) {
                    out.push(d);
                }
            }
        });
    });
    out.sort();
    out.dedup();
    out
}

/// Diagrams with exactly the given doubled weight.
pub fn enumerate_data_exact(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> Vec<PongData> {
    enumerate_data_bounded(m, x, y, dw)
        .into_iter()
        .filter(|d| d.doubled_weight() == dw)
        .collect()
}

/// All diagrams of P(m,k) with doubled weight bounded componentwise.
pub fn enumerate_all_bounded(m: i32, k: usize, dw_bound: &[i32]) -> Vec<PongData> {
    let mut out = Vec::new();
    for x in subsets(m, k) {
        for y in subsets(m, k) {
            out.extend(enumerate_data_bounded(m, &x, &y, dw_bound));
        }
    }
    out
}

fn permute(
    y: &[i32],
    used: &mut Vec<bool>,
    cur: &mut Vec<i32>,
    f: &mut impl FnMut(&[i32]),
) {
    if cur.len() == y.len() {
        f(cur);
        return;
    }
    for i in 0..y.len() {
        if !used[i] {
            used[i] = true;
            cur.push(y[i]);
            permute(y, used, cur, f);
            cur.pop();
            used[i] = false;
        }
    }
}

fn cartesian(choices: &[Vec<i32>], pick: &mut Vec<i32>, at: usize, f: &mut impl FnMut(&[i32])) {
    if at == choices.len() {
        f(pick);
        return;
    }
    for &c in &choices[at] {
        pick[at] = c;
        cartesian(choices, pick, at + 1, f);
    }
}
