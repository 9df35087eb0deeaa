//! A small complex computing Hochschild homology of C(m,k) with
//! coefficients in Q(m,k), viewed as a bimodule through the weight-matching
//! map on atomic generators.
//!
//! Basis elements are triples (t^s·a, b): a power of the deformation
//! variable, a surviving pure element a of C(m,k), and a diagram b of
//! Q(m,k) between the same pair of states with dw(b) = dw(a) + 2s. The
//! differential keeps s and either resolves a crossing of b or multiplies
//! both slots by one atomic generator together with its bordered image, on
//! the left or on the right. Under the bigrading the t-exponent is a
//! function of the bidegree, so each bidegree is a finite GF(2) vector
//! space and homology is computed exactly, without ever materializing the
//! full Hochschild complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bordered::{c_states, ideal_member, is_c_state, BElt, ClgPure};
use crate::dd::{atomic_instances, f_map};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Mat, SpanTracker};
use crate::pong::enumerate_data_exact;
use crate::quotient::{compatible_triple, omega_q, QElt};
use crate::strands::PongData;

/// One basis element (t^s·a, b) of the small complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SElement {
    pub s: u32,
    pub alpha: ClgPure,
    pub b: PongData,
}

impl SElement {
    /// `(n, d)`: n is 2·Totweight(b) − Cr(b), and n + d = 1 + 2s(m−k−1).
    pub fn bigrading(&self) -> (i32, i32) {
        let m = self.b.m();
        let k = self.alpha.x.len() as i32;
        let n = self.b.doubled_weight().iter().sum::<i32>() - self.b.cross() as i32;
        let d = 1 - n + 2 * self.s as i32 * (m - k - 1);
        (n, d)
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.b.m();
        let k = self.alpha.x.len();
        write!(
            f,
            "(t^{}·{}, {})",
            self.s,
            BElt::pure(m, k, self.alpha.clone()),
            self.b
        )
    }
}

/// The small Hochschild complex for C(m,k), served one bidegree at a time.
pub struct SmallModel {
    m: i32,
    k: usize,
    /// Structure-map summands (f(a), a): every atomic generator instance
    /// together with its image in the bordered algebra.
    pairs: Vec<(ClgPure, PongData)>,
}

impl SmallModel {
    /// Needs 0 < k < m−1: at the extremes the t-exponent no longer moves
    /// the bigrading and the bidegree pieces stop being finite.
    pub fn new(m: i32, k: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidM(m));
        }
        if k == 0 || k as i32 >= m - 1 {
            return Err(Error::Unsupported(format!(
                "the small model needs 0 < k < m-1, got k={k} for m={m}"
            )));
        }
        let mut pairs = Vec::new();
        for (desc, q) in atomic_instances(m, k)? {
            let img = f_map(m, k, &desc.clone().with_left(&q.source_state()))?;
            for c in img.terms() {
                pairs.push((c.clone(), q.clone()));
            }
        }
        Ok(SmallModel { m, k, pairs })
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The t-exponent forced on bidegree `(n, d)`, if any.
    pub fn s_exponent(&self, n: i32, d: i32) -> Option<u32> {
        let denom = 2 * (self.m - 1 - self.k as i32);
        let v = n + d - 1;
        (v >= 0 && v % denom == 0).then(|| (v / denom) as u32)
    }

    /// Checked constructor: both slots share their endpoint states and
    /// differ in weight by exactly 2s at every level.
    pub fn element(&self, s: u32, alpha: ClgPure, b: PongData) -> Result<SElement> {
        if b.m() != self.m || alpha.x.len() != self.k || alpha.y.len() != self.k {
            return Err(Error::AmbientMismatch);
        }
        if !is_c_state(self.m, &alpha.x) || !is_c_state(self.m, &alpha.y) {
            return Err(Error::Unsupported(
                "the C factor must run between interior states".into(),
            ));
        }
        if ideal_member(self.m, &alpha) {
            return Err(Error::Unsupported(
                "the C factor is killed by the ideal".into(),
            ));
        }
        if alpha.x != b.source_state() || alpha.y != b.target_state() {
            return Err(Error::NotComposable);
        }
        let want: Vec<i32> = alpha.dw.iter().map(|v| v + 2 * s as i32).collect();
        if b.doubled_weight() != want {
            return Err(Error::Unsupported(
                "slot weights must differ by twice the t-exponent".into(),
            ));
        }
        Ok(SElement { s, alpha, b })
    }

    /// Every basis element of bidegree `(n, d)`, sorted.
    ///
    /// A diagram with n = 2·Totweight − Cr factors into exactly n atomics,
    /// each of doubled weight at most 2 per level, so dw(b) ≤ 2n holds at
    /// every level and the window below is exhaustive.
    pub fn basis(&self, n: i32, d: i32) -> Result<Vec<SElement>> {
        self.basis_bounded(n, d, 2 * n)
    }

    /// Enumerate with a caller-chosen per-level weight cap, so tests can
    /// check that the default window already saturates.
    pub fn basis_bounded(&self, n: i32, d: i32, cap: i32) -> Result<Vec<SElement>> {
        let mut out = Vec::new();
        let Some(s) = self.s_exponent(n, d) else {
            return Ok(out);
        };
        let lo = 2 * s as i32;
        if n < 0 || lo > cap {
            return Ok(out);
        }
        let mm = self.m as usize;
        let states = c_states(self.m, self.k);
        for x in &states {
            for y in &states {
                let mut w = vec![lo; mm];
                'box_walk: loop {
                    if w.iter().sum::<i32>() >= n && compatible_triple(self.m, x, y, &w) {
                        let dwa: Vec<i32> = w.iter().map(|v| v - lo).collect();
                        if let Ok(alpha) = ClgPure::new(self.m, x, y, &dwa) {
                            if !ideal_member(self.m, &alpha) {
                                for b in enumerate_data_exact(self.m, x, y, &w) {
                                    let cr = b.cross() as i32;
                                    if w.iter().sum::<i32>() - cr == n {
                                        out.push(SElement {
                                            s,
                                            alpha: alpha.clone(),
                                            b,
                                        });
                                    }
                                }
                            }
                        }
                    }
                    let mut i = 0;
                    loop {
                        if i == mm {
                            break 'box_walk;
                        }
                        if w[i] < cap {
                            w[i] += 1;
                            break;
                        }
                        w[i] = lo;
                        i += 1;
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// The differential of one basis element, as a cancelled GF(2) sum
    /// landing in bidegree (n+1, d−1).
    pub fn differential(&self, e: &SElement) -> Result<Vec<SElement>> {
        if e.b.m() != self.m || e.alpha.x.len() != self.k {
            return Err(Error::AmbientMismatch);
        }
        let mut acc: BTreeSet<SElement> = BTreeSet::new();
        // resolve one crossing of b, keeping the weight
        for r in QElt::generator(e.b.clone()).differential().terms() {
            toggle(
                &mut acc,
                SElement {
                    s: e.s,
                    alpha: e.alpha.clone(),
                    b: r.clone(),
                },
            );
        }
        let alpha = BElt::pure(self.m, self.k, e.alpha.clone());
        let qb = QElt::generator(e.b.clone());
        for (c, q) in &self.pairs {
            let a = BElt::pure(self.m, self.k, c.clone());
            // multiply both slots by the pair on the left
            let left = first_term(&a.multiply_c(&alpha)?);
            if let Some(cp) = left {
                let prod = QElt::generator(q.clone()).multiply(&qb)?;
                for t in prod.terms() {
                    toggle(
                        &mut acc,
                        SElement {
                            s: e.s,
                            alpha: cp.clone(),
                            b: t.clone(),
                        },
                    );
                }
            }
            // and on the right
            let right = first_term(&alpha.multiply_c(&a)?);
            if let Some(cp) = right {
                let prod = qb.multiply(&QElt::generator(q.clone()))?;
                for t in prod.terms() {
                    toggle(
                        &mut acc,
                        SElement {
                            s: e.s,
                            alpha: cp.clone(),
                            b: t.clone(),
                        },
                    );
                }
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Differential of a GF(2) sum of basis elements.
    pub fn differential_sum(&self, elts: &[SElement]) -> Result<Vec<SElement>> {
        let mut acc: BTreeSet<SElement> = BTreeSet::new();
        for e in elts {
            for t in self.differential(e)? {
                toggle(&mut acc, t);
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// One bidegree with the differentials in and out of it, checked to
    /// compose to zero.
    pub fn piece(&self, n: i32, d: i32) -> Result<SPiece> {
        let below = self.basis(n - 1, d + 1)?;
        let basis = self.basis(n, d)?;
        let above = self.basis(n + 1, d - 1)?;
        let d_in = self.matrix(&below, &basis)?;
        let d_out = self.matrix(&basis, &above)?;
        if !d_out.mul(&d_in).is_zero() {
            return Err(Error::Unsupported(format!(
                "differential fails to square to zero into bidegree ({n}, {d})"
            )));
        }
        Ok(SPiece {
            n,
            d,
            basis,
            d_in,
            d_out,
        })
    }

    /// Homology at one bidegree, with representatives.
    pub fn homology(&self, n: i32, d: i32) -> Result<ShhPiece> {
        Ok(self.piece(n, d)?.homology())
    }

    /// The distinguished cycle (t, Ω): over every state, t paired with the
    /// full-period orbit diagrams at that state.
    pub fn omega_cycle(&self) -> Result<Vec<SElement>> {
        let w = omega_q(self.m, self.k)?;
        let mut out = Vec::new();
        for x in c_states(self.m, self.k) {
            let alpha = ClgPure::gamma(self.m, &x, &x)?;
            for d in w.terms() {
                if d.source_state() == x {
                    out.push(SElement {
                        s: 1,
                        alpha: alpha.clone(),
                        b: d.clone(),
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn matrix(&self, from: &[SElement], to: &[SElement]) -> Result<Mat> {
        let index: BTreeMap<&SElement, usize> =
            to.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut cols = Vec::with_capacity(from.len());
        for e in from {
            let mut col = BitVec::zeros(to.len());
            for t in self.differential(e)? {
                let Some(&i) = index.get(&t) else {
                    return Err(Error::Unsupported(format!(
                        "differential escapes the enumerated bidegree at {t}"
                    )));
                };
                col.flip(i);
            }
            cols.push(col);
        }
        Ok(Mat::from_columns(to.len(), &cols))
    }
}

fn toggle(set: &mut BTreeSet<SElement>, el: SElement) {
    if !set.remove(&el) {
        set.insert(el);
    }
}

fn first_term(e: &BElt) -> Option<ClgPure> {
    e.terms().next().cloned()
}

/// One bidegree of the small complex: its basis and the differentials
/// touching it, columns indexed by the source basis.
pub struct SPiece {
    pub n: i32,
    pub d: i32,
    pub basis: Vec<SElement>,
    pub d_in: Mat,
    pub d_out: Mat,
}

impl SPiece {
    pub fn homology(&self) -> ShhPiece {
        let dim = self.basis.len() - self.d_in.rank() - self.d_out.rank();
        let mut span = SpanTracker::new(self.basis.len());
        for c in 0..self.d_in.cols() {
            span.insert(&self.d_in.column(c));
        }
        let mut representatives = Vec::new();
        for v in self.d_out.kernel_basis() {
            if span.insert(&v) {
                representatives.push(self.elements_of(&v));
            }
        }
        debug_assert_eq!(representatives.len(), dim);
        ShhPiece {
            n: self.n,
            d: self.d,
            space_dim: self.basis.len(),
            dim,
            representatives,
        }
    }

    /// Coordinates of a GF(2) sum of basis elements.
    pub fn vector_of(&self, elts: &[SElement]) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.basis.len());
        for e in elts {
            let i = self
                .basis
                .binary_search(e)
                .map_err(|_| Error::Unsupported(format!("{e} is not a basis element here")))?;
            v.flip(i);
        }
        Ok(v)
    }

    fn elements_of(&self, v: &BitVec) -> Vec<SElement> {
        v.iter_ones().map(|i| self.basis[i].clone()).collect()
    }
}

/// Homology of one bidegree of the small complex.
#[derive(Clone, Debug)]
pub struct ShhPiece {
    pub n: i32,
    pub d: i32,
    pub space_dim: usize,
    pub dim: usize,
    pub representatives: Vec<Vec<SElement>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pong::{atomic, AtomicDescriptor, Elt};

    fn q_single(e: &Elt) -> PongData {
        let mut terms = e.terms();
        let (_, d) = terms.next().expect("nonzero");
        assert!(terms.next().is_none(), "single diagram expected");
        d.clone()
    }

    fn cal_bounce(m: i32, lo: i32, hi: i32, at: &[i32]) -> QElt {
        let e = atomic(m, 1, &AtomicDescriptor::x(lo, hi).calligraphic().with_left(at)).unwrap();
        QElt::generator(q_single(&e))
    }

    /// The two full-period orbits at state {i}: bottom wall first, then
    /// top wall first.
    fn orbit_pair(m: i32, i: i32) -> (PongData, PongData) {
        let down = cal_bounce(m, 0, i, &[i]);
        let up = cal_bounce(m, i, m, &[i]);
        let minus = down.multiply(&up).unwrap();
        let plus = up.multiply(&down).unwrap();
        let take = |q: &QElt| {
            let mut it = q.terms();
            let d = it.next().expect("nonzero").clone();
            assert!(it.next().is_none());
            d
        };
        (take(&minus), take(&plus))
    }

    #[test]
    fn rejects_the_degenerate_windows() {
        assert!(SmallModel::new(3, 0).is_err());
        assert!(SmallModel::new(3, 2).is_err());
        assert!(SmallModel::new(2, 1).is_err());
        assert!(SmallModel::new(3, 1).is_ok());
        assert!(SmallModel::new(4, 2).is_ok());
    }

    #[test]
    fn the_t_exponent_is_a_function_of_the_bidegree() {
        let s31 = SmallModel::new(3, 1).unwrap();
        assert_eq!(s31.s_exponent(4, -1), Some(1));
        assert_eq!(s31.s_exponent(2, -1), Some(0));
        assert_eq!(s31.s_exponent(3, -1), None);
        assert_eq!(s31.s_exponent(0, -1), None);
        assert_eq!(s31.s_exponent(5, -2), Some(1));
        let s41 = SmallModel::new(4, 1).unwrap();
        assert_eq!(s41.s_exponent(6, -1), Some(1));
        assert_eq!(s41.s_exponent(4, -1), None);
        assert_eq!(s41.s_exponent(2, -1), Some(0));
        for e in s41.omega_cycle().unwrap() {
            assert_eq!(e.bigrading(), (6, -1));
        }
    }

    #[test]
    fn element_checks_the_pairing_constraints() {
        let model = SmallModel::new(3, 1).unwrap();
        let (b_minus, _) = orbit_pair(3, 1);
        let i1 = ClgPure::gamma(3, &[1], &[1]).unwrap();
        assert!(model.element(1, i1.clone(), b_minus.clone()).is_ok());
        // wrong weight gap
        assert!(model.element(0, i1.clone(), b_minus.clone()).is_err());
        // states that do not match the diagram
        let i2 = ClgPure::gamma(3, &[2], &[2]).unwrap();
        assert!(model.element(1, i2, b_minus).is_err());
    }

    #[test]
    fn the_basis_at_the_top_weight_is_the_omega_ladder() {
        let model = SmallModel::new(3, 1).unwrap();
        let basis = model.basis(4, -1).unwrap();
        assert_eq!(basis.len(), 4);
        let mut want = Vec::new();
        for i in 1..3 {
            let (minus, plus) = orbit_pair(3, i);
            let idem = ClgPure::gamma(3, &[i], &[i]).unwrap();
            want.push(model.element(1, idem.clone(), minus).unwrap());
            want.push(model.element(1, idem, plus).unwrap());
        }
        want.sort();
        assert_eq!(basis, want);
        // and the distinguished cycle is exactly the full sum
        assert_eq!(model.omega_cycle().unwrap(), want);
    }

    #[test]
    fn ladder_differentials_telescope_to_the_weight_monomials() {
        let model = SmallModel::new(3, 1).unwrap();
        let (b1m, b1p) = orbit_pair(3, 1);
        let (b2m, b2p) = orbit_pair(3, 2);
        let i1 = ClgPure::gamma(3, &[1], &[1]).unwrap();
        let i2 = ClgPure::gamma(3, &[2], &[2]).unwrap();
        let om1 = model.element(1, i1.clone(), b1m.clone()).unwrap();
        let op1 = model.element(1, i1.clone(), b1p.clone()).unwrap();
        let om2 = model.element(1, i2.clone(), b2m.clone()).unwrap();
        let op2 = model.element(1, i2.clone(), b2p.clone()).unwrap();

        let q = |d: &PongData| QElt::generator(d.clone());
        let single = |e: QElt| {
            let mut it = e.terms().cloned();
            let d = it.next().expect("nonzero");
            assert!(it.next().is_none());
            d
        };
        let x01 = cal_bounce(3, 0, 1, &[1]);
        let x23 = cal_bounce(3, 2, 3, &[2]);
        let l21 = QElt::generator(q_single(
            &atomic(3, 1, &AtomicDescriptor::l(2, 1).with_left(&[2])).unwrap(),
        ));
        let r12 = QElt::generator(q_single(
            &atomic(3, 1, &AtomicDescriptor::r(1, 2).with_left(&[1])).unwrap(),
        ));

        let u1 = model
            .element(
                1,
                ClgPure::new(3, &[1], &[1], &[2, 0, 0]).unwrap(),
                single(q(&b1m).multiply(&x01).unwrap()),
            )
            .unwrap();
        let u3 = model
            .element(
                1,
                ClgPure::new(3, &[2], &[2], &[0, 0, 2]).unwrap(),
                single(x23.multiply(&q(&b2m)).unwrap()),
            )
            .unwrap();
        let l2 = model
            .element(
                1,
                ClgPure::gamma(3, &[2], &[1]).unwrap(),
                single(l21.multiply(&q(&b1m)).unwrap()),
            )
            .unwrap();
        let r2 = model
            .element(
                1,
                ClgPure::gamma(3, &[1], &[2]).unwrap(),
                single(q(&b1p).multiply(&r12).unwrap()),
            )
            .unwrap();

        assert_eq!(model.differential(&om1).unwrap(), sorted(vec![u1.clone(), l2.clone()]));
        assert_eq!(model.differential(&om2).unwrap(), sorted(vec![l2.clone(), u3.clone()]));
        assert_eq!(model.differential(&op1).unwrap(), sorted(vec![u1.clone(), r2.clone()]));
        assert_eq!(model.differential(&op2).unwrap(), sorted(vec![r2.clone(), u3.clone()]));

        // the target bidegree is spanned by exactly these four elements
        let above = model.basis(5, -2).unwrap();
        assert_eq!(above, sorted(vec![u1, u3, l2, r2]));

        // the only cycle in the ladder is the sum of all four sources
        let piece = model.piece(4, -1).unwrap();
        let kernel = piece.d_out.kernel_basis();
        assert_eq!(kernel.len(), 1);
        let full = piece
            .vector_of(&[om1.clone(), op1.clone(), om2.clone(), op2.clone()])
            .unwrap();
        assert_eq!(kernel[0], full);
        assert!(model
            .differential_sum(&[om1, op1, om2, op2])
            .unwrap()
            .is_empty());
    }

    fn sorted(mut v: Vec<SElement>) -> Vec<SElement> {
        v.sort();
        v
    }

    #[test]
    fn the_differential_shifts_the_bidegree_and_squares_to_zero() {
        for (m, k) in [(3_i32, 1_usize), (4, 2)] {
            let model = SmallModel::new(m, k).unwrap();
            let top = 2 * m - 2 * k as i32 + 2;
            for d in [-1, -2] {
                for n in 0..=top {
                    for e in model.basis(n, d).unwrap() {
                        let image = model.differential(&e).unwrap();
                        for t in &image {
                            assert_eq!(t.bigrading(), (n + 1, d - 1), "m={m} k={k} e={e}");
                        }
                        assert!(
                            model.differential_sum(&image).unwrap().is_empty(),
                            "m={m} k={k} n={n} d={d} e={e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn the_omega_cycle_needs_every_state() {
        for (m, k) in [(3_i32, 1_usize), (4, 2)] {
            let model = SmallModel::new(m, k).unwrap();
            let omega = model.omega_cycle().unwrap();
            assert!(model.differential_sum(&omega).unwrap().is_empty());
            let states = c_states(m, k);
            // every proper nonempty collection of states fails to close
            for mask in 1..(1_u32 << states.len()) - 1 {
                let part: Vec<SElement> = omega
                    .iter()
                    .filter(|e| {
                        let i = states.iter().position(|x| *x == e.alpha.x).unwrap();
                        mask & (1 << i) != 0
                    })
                    .cloned()
                    .collect();
                assert!(
                    !model.differential_sum(&part).unwrap().is_empty(),
                    "m={m} k={k} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn homology_concentrates_in_the_two_predicted_columns() {
        for (m, k) in [(3_i32, 1_usize), (4, 1), (4, 2), (5, 2)] {
            let model = SmallModel::new(m, k).unwrap();
            let period = 2 * m - 2 * k as i32;
            for n in 0..=period + 2 {
                let h = model.homology(n, -1).unwrap();
                if n != 2 && n != period {
                    assert_eq!(h.dim, 0, "m={m} k={k} n={n} d=-1");
                }
                let h = model.homology(n, -2).unwrap();
                if n != 3 && n != period + 1 {
                    assert_eq!(h.dim, 0, "m={m} k={k} n={n} d=-2");
                }
            }
            // the surviving class at the period is the omega cycle alone
            let piece = model.piece(period, -1).unwrap();
            assert_eq!(piece.homology().dim, 1);
            let omega = piece.vector_of(&model.omega_cycle().unwrap()).unwrap();
            assert!(piece.d_out.mul_vec(&omega).is_zero());
            let mut span = SpanTracker::new(piece.basis.len());
            for c in 0..piece.d_in.cols() {
                span.insert(&piece.d_in.column(c));
            }
            assert!(span.insert(&omega), "omega must not be a boundary");
        }
    }

    #[test]
    fn the_enumeration_window_saturates() {
        let model = SmallModel::new(3, 1).unwrap();
        for (n, d) in [(2, -1), (4, -1), (5, -2)] {
            let tight = model.basis_bounded(n, d, 2 * n).unwrap();
            let loose = model.basis_bounded(n, d, 2 * n + 2).unwrap();
            assert_eq!(tight, loose, "n={n} d={d}");
        }
        let model = SmallModel::new(4, 2).unwrap();
        let tight = model.basis_bounded(4, -1, 8).unwrap();
        let loose = model.basis_bounded(4, -1, 10).unwrap();
        assert_eq!(tight, loose);
    }
}
