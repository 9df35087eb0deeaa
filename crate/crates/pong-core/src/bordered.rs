//! The bordered strands algebras: B0(m,k) over F[U_1..U_m], its quotient
//! B = B0/J, and the subalgebra C(m,k) on states avoiding the outer walls.
//!
//! A pure element is determined by its idempotent pair and its weight
//! vector, so elements here are GF(2) sums of (x, y, doubled weight)
//! triples; the U-monomial is the weight in excess of the minimal
//! gamma_{x,y} weight. Weights are half-integers, stored doubled.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// All k-element subsets of the ground set, lexicographically.
pub fn k_subsets(ground: &[i32], k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(ground: &[i32], at: usize, k: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        if ground.len() - at < k - cur.len() {
            return;
        }
        for i in at..ground.len() {
            cur.push(ground[i]);
            rec(ground, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(ground, 0, k, &mut cur, &mut out);
    out
}

/// Idempotent states of B0(m,k): k-subsets of {0..m}.
pub fn b_states(m: i32, k: usize) -> Vec<Vec<i32>> {
    let ground: Vec<i32> = (0..=m).collect();
    k_subsets(&ground, k)
}

/// Idempotent states of C(m,k): k-subsets of {1..m-1}.
pub fn c_states(m: i32, k: usize) -> Vec<Vec<i32>> {
    let ground: Vec<i32> = (1..m).collect();
    k_subsets(&ground, k)
}

fn valid_state(m: i32, k: usize, x: &[i32]) -> Result<()> {
    if x.len() != k {
        return Err(Error::StateSize {
            want: k,
            got: x.len(),
        });
    }
    for (n, &s) in x.iter().enumerate() {
        if !(0..=m).contains(&s) {
            return Err(Error::StateEntryOutOfRange(s, m));
        }
        if n > 0 && x[n - 1] >= s {
            return Err(Error::parse("state entries must strictly increase"));
        }
    }
    Ok(())
}

pub fn is_c_state(m: i32, x: &[i32]) -> bool {
    x.iter().all(|&s| 1 <= s && s <= m - 1)
}

/// v^x with components v_i = #{x in x : x >= i}, i = 1..m.
pub fn state_weight_vector(m: i32, x: &[i32]) -> Vec<i32> {
    (1..=m)
        .map(|i| x.iter().filter(|&&s| s >= i).count() as i32)
        .collect()
}

/// Doubled weight of the generator gamma_{x,y}: |v^x - v^y|.
pub fn gamma_dweight(m: i32, x: &[i32], y: &[i32]) -> Vec<i32> {
    state_weight_vector(m, x)
        .iter()
        .zip(state_weight_vector(m, y))
        .map(|(a, b)| (a - b).abs())
        .collect()
}

/// Some strand would have to move two slots at once.
pub fn too_far(x: &[i32], y: &[i32]) -> bool {
    x.iter().zip(y).any(|(a, b)| (a - b).abs() >= 2)
}

/// A basis element U^n·gamma_{x,y}, recorded by its full doubled weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClgPure {
    pub x: Vec<i32>,
    pub y: Vec<i32>,
    pub dw: Vec<i32>,
}

impl ClgPure {
    pub fn new(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> Result<Self> {
        valid_state(m, x.len(), x)?;
        valid_state(m, y.len(), y)?;
        if x.len() != y.len() {
            return Err(Error::StateSize {
                want: x.len(),
                got: y.len(),
            });
        }
        if dw.len() != m as usize {
            return Err(Error::WeightSize {
                want: m as usize,
                got: dw.len(),
            });
        }
        let min = gamma_dweight(m, x, y);
        for (i, (&w, lo)) in dw.iter().zip(min).enumerate() {
            if w < lo || (w - lo) % 2 != 0 {
                return Err(Error::WeightNotRealizable(w, i + 1));
            }
        }
        Ok(ClgPure {
            x: x.to_vec(),
            y: y.to_vec(),
            dw: dw.to_vec(),
        })
    }

    pub fn gamma(m: i32, x: &[i32], y: &[i32]) -> Result<Self> {
        let dw = gamma_dweight(m, x, y);
        ClgPure::new(m, x, y, &dw)
    }

    /// U-monomial exponents: half the weight exceeding the minimum.
    pub fn u_exponents(&self, m: i32) -> Vec<u32> {
        gamma_dweight(m, &self.x, &self.y)
            .iter()
            .zip(&self.dw)
            .map(|(lo, w)| ((w - lo) / 2) as u32)
            .collect()
    }
}

/// Membership in the two-sided ideal J, tested on a pure element.
pub fn ideal_member(m: i32, b: &ClgPure) -> bool {
    if too_far(&b.x, &b.y) {
        return true;
    }
    let both: Vec<i32> = b.x.iter().filter(|s| b.y.contains(s)).copied().collect();
    for i in 0..=m {
        if both.contains(&i) {
            continue;
        }
        'j: for j in i + 1..=m {
            if both.contains(&j) {
                continue;
            }
            for t in i + 1..j {
                if !both.contains(&t) {
                    continue 'j;
                }
            }
            if (i + 1..=j).any(|t| b.dw[(t - 1) as usize] < 2) {
                continue;
            }
            let below_x = b.x.iter().filter(|&&s| s <= i).count();
            let below_y = b.y.iter().filter(|&&s| s <= i).count();
            if below_x == below_y {
                return true;
            }
        }
    }
    false
}

/// GF(2) sum of pure elements in B0(m,k) (or its quotients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElt {
    m: i32,
    k: usize,
    terms: BTreeSet<ClgPure>,
}

impl BElt {
    pub fn zero(m: i32, k: usize) -> Self {
        BElt {
            m,
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn pure(m: i32, k: usize, p: ClgPure) -> Self {
        assert_eq!(p.x.len(), k);
        let mut terms = BTreeSet::new();
        terms.insert(p);
        BElt { m, k, terms }
    }

    pub fn gamma(m: i32, x: &[i32], y: &[i32]) -> Result<Self> {
        Ok(BElt::pure(m, x.len(), ClgPure::gamma(m, x, y)?))
    }

    pub fn idempotent(m: i32, x: &[i32]) -> Result<Self> {
        BElt::gamma(m, x, x)
    }

    /// Sum of all B0 idempotents.
    pub fn unit_b(m: i32, k: usize) -> Self {
        let mut out = BElt::zero(m, k);
        for x in b_states(m, k) {
            out.toggle(ClgPure::gamma(m, &x, &x).expect("valid state"));
        }
        out
    }

    /// Sum of the interior idempotents: the unit of C(m,k).
    pub fn unit_c(m: i32, k: usize) -> Self {
        let mut out = BElt::zero(m, k);
        for x in c_states(m, k) {
            out.toggle(ClgPure::gamma(m, &x, &x).expect("valid state"));
        }
        out
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = &ClgPure> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, p: ClgPure) {
        if !self.terms.remove(&p) {
            self.terms.insert(p);
        }
    }

    pub fn add(&self, other: &BElt) -> BElt {
        assert_eq!((self.m, self.k), (other.m, other.k), "ambient mismatch");
        let mut out = self.clone();
        for p in &other.terms {
            out.toggle(p.clone());
        }
        out
    }

    pub fn times_u(&self, i: usize, pow: u32) -> BElt {
        assert!((1..=self.m as usize).contains(&i));
        let mut out = BElt::zero(self.m, self.k);
        for p in &self.terms {
            let mut dw = p.dw.clone();
            dw[i - 1] += 2 * pow as i32;
            out.toggle(ClgPure {
                x: p.x.clone(),
                y: p.y.clone(),
                dw,
            });
        }
        out
    }

    /// Product in B0: weights add, non-chaining pairs drop out.
    pub fn multiply_b0(&self, other: &BElt) -> Result<BElt> {
        if self.m != other.m || self.k != other.k {
            return Err(Error::AmbientMismatch);
        }
        let mut out = BElt::zero(self.m, self.k);
        for a in &self.terms {
            for b in &other.terms {
                if a.y != b.x {
                    continue;
                }
                let dw: Vec<i32> = a.dw.iter().zip(&b.dw).map(|(p, q)| p + q).collect();
                out.toggle(ClgPure {
                    x: a.x.clone(),
                    y: b.y.clone(),
                    dw,
                });
            }
        }
        Ok(out)
    }

    /// Drop the terms lying in J.
    pub fn reduce_mod_j(&self) -> BElt {
        let mut out = BElt::zero(self.m, self.k);
        for p in &self.terms {
            if !ideal_member(self.m, p) {
                out.toggle(p.clone());
            }
        }
        out
    }

    /// Corner projection onto C: keep interior-state terms not in J.
    pub fn project_c(&self) -> BElt {
        let mut out = BElt::zero(self.m, self.k);
        for p in &self.terms {
            if is_c_state(self.m, &p.x) && is_c_state(self.m, &p.y) && !ideal_member(self.m, p) {
                out.toggle(p.clone());
            }
        }
        out
    }

    /// Product in B = B0/J.
    pub fn multiply_b(&self, other: &BElt) -> Result<BElt> {
        Ok(self.multiply_b0(other)?.reduce_mod_j())
    }

    /// Product in C(m,k).
    pub fn multiply_c(&self, other: &BElt) -> Result<BElt> {
        Ok(self.multiply_b0(other)?.project_c())
    }

    /// Doubled weight of a homogeneous element.
    pub fn dweight(&self) -> Result<Vec<i32>> {
        let mut it = self.terms.iter().map(|p| p.dw.clone());
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for w in it {
            if w != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }
}

impl fmt::Display for BElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, p) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let exps = p.u_exponents(self.m);
            let mut wrote = false;
            for (i, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => {
                        write!(f, "{}U{}", if wrote { "*" } else { "" }, i + 1)?;
                        wrote = true;
                    }
                    _ => {
                        write!(f, "{}U{}^{}", if wrote { "*" } else { "" }, i + 1, e)?;
                        wrote = true;
                    }
                }
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "g{:?}{:?}", p.x, p.y)?;
        }
        Ok(())
    }
}

/// Whether a state pair differs by one particle stepping i -> i-1.
fn l_step(x: &[i32], y: &[i32], i: i32) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut diff = 0;
    for (a, b) in x.iter().zip(y) {
        if a == b {
            continue;
        }
        if *a == i && *b == i - 1 {
            diff += 1;
        } else {
            return false;
        }
    }
    diff == 1
}

/// L_i in B0(m,k): every particle step from i down to i-1.
pub fn l_elt_b(m: i32, k: usize, i: i32) -> Result<BElt> {
    if !(1..=m).contains(&i) {
        return Err(Error::Unsupported(format!("L index {i} out of 1..={m}")));
    }
    let mut out = BElt::zero(m, k);
    for x in b_states(m, k) {
        if !x.contains(&i) || x.contains(&(i - 1)) {
            continue;
        }
        let y: Vec<i32> = x.iter().map(|&s| if s == i { i - 1 } else { s }).collect();
        let mut y = y;
        y.sort_unstable();
        debug_assert!(l_step(&x, &y, i));
        out.toggle(ClgPure::gamma(m, &x, &y)?);
    }
    Ok(out)
}

/// R_i in B0(m,k): every particle step from i-1 up to i.
pub fn r_elt_b(m: i32, k: usize, i: i32) -> Result<BElt> {
    if !(1..=m).contains(&i) {
        return Err(Error::Unsupported(format!("R index {i} out of 1..={m}")));
    }
    let mut out = BElt::zero(m, k);
    for x in b_states(m, k) {
        if !x.contains(&(i - 1)) || x.contains(&i) {
            continue;
        }
        let mut y: Vec<i32> = x.iter().map(|&s| if s == i - 1 { i } else { s }).collect();
        y.sort_unstable();
        out.toggle(ClgPure::gamma(m, &x, &y)?);
    }
    Ok(out)
}

/// U_i in B0(m,k).
pub fn u_elt_b(m: i32, k: usize, i: i32) -> Result<BElt> {
    if !(1..=m).contains(&i) {
        return Err(Error::Unsupported(format!("U index {i} out of 1..={m}")));
    }
    Ok(BElt::unit_b(m, k).times_u(i as usize, 1))
}

/// L_i in C(m,k), for 2 <= i <= m-1.
pub fn l_elt_c(m: i32, k: usize, i: i32) -> Result<BElt> {
    if !(2..=m - 1).contains(&i) {
        return Err(Error::Unsupported(format!("C has L_i for 2..={}", m - 1)));
    }
    Ok(l_elt_b(m, k, i)?.project_c())
}

/// R_i in C(m,k), for 2 <= i <= m-1.
pub fn r_elt_c(m: i32, k: usize, i: i32) -> Result<BElt> {
    if !(2..=m - 1).contains(&i) {
        return Err(Error::Unsupported(format!("C has R_i for 2..={}", m - 1)));
    }
    Ok(r_elt_b(m, k, i)?.project_c())
}

/// U_i in C(m,k).
pub fn u_elt_c(m: i32, k: usize, i: i32) -> Result<BElt> {
    Ok(u_elt_b(m, k, i)?.project_c())
}

/// Sum of idempotents containing i (when yes) or avoiding i (when no).
pub fn idem_filter_c(m: i32, k: usize, i: i32, yes: bool) -> BElt {
    let mut out = BElt::zero(m, k);
    for x in c_states(m, k) {
        if x.contains(&i) == yes {
            out.toggle(ClgPure::gamma(m, &x, &x).expect("valid state"));
        }
    }
    out
}

/// GF(2) sum of t-power multiples of C(m,k) elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElt {
    m: i32,
    k: usize,
    terms: BTreeSet<(u32, ClgPure)>,
}

impl TElt {
    pub fn zero(m: i32, k: usize) -> Self {
        TElt {
            m,
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_c(e: &BElt, t_pow: u32) -> Self {
        let mut terms = BTreeSet::new();
        for p in e.terms.iter() {
            terms.insert((t_pow, p.clone()));
        }
        TElt {
            m: e.m,
            k: e.k,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(u32, ClgPure)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TElt) -> TElt {
        assert_eq!((self.m, self.k), (other.m, other.k), "ambient mismatch");
        let mut out = self.clone();
        for t in &other.terms {
            if !out.terms.remove(t) {
                out.terms.insert(t.clone());
            }
        }
        out
    }

    /// Product; t is central.
    pub fn multiply(&self, other: &TElt) -> Result<TElt> {
        if self.m != other.m || self.k != other.k {
            return Err(Error::AmbientMismatch);
        }
        let mut out = TElt::zero(self.m, self.k);
        for (p1, a) in &self.terms {
            let ea = BElt::pure(self.m, self.k, a.clone());
            for (p2, b) in &other.terms {
                let eb = BElt::pure(self.m, self.k, b.clone());
                let prod = ea.multiply_c(&eb)?;
                for p in prod.terms {
                    let key = (p1 + p2, p);
                    if !out.terms.remove(&key) {
                        out.terms.insert(key);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(gr, doubled weight)` of a homogeneous element:
    /// gr = t-power·(2m-2k-2), weight = pure weight + t-power·(1,..,1).
    pub fn gradings(&self) -> Result<(i32, Vec<i32>)> {
        let gr_t = 2 * self.m - 2 * self.k as i32 - 2;
        let mut it = self.terms.iter().map(|(p, c)| {
            let dw: Vec<i32> = c.dw.iter().map(|w| w + 2 * *p as i32).collect();
            (*p as i32 * gr_t, dw)
        });
        let first = it.next().ok_or(Error::NotHomogeneous)?;
        for g in it {
            if g != first {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(first)
    }
}
