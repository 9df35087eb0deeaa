//! Weight-piece homology: assemble the complex of one (x, y, w) piece in
//! any of the ambient algebras, reduce it, and compare against the closed
//! forms (Omega towers, the bordered algebra with a formal Omega adjoined,
//! and the small model complex on the cube).

use std::collections::BTreeMap;

use crate::bordered::{self, ClgPure};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::pong::{self, Monomial};
use crate::quotient::{self, ConeKind, ConeLabel};
use crate::strands::{fold, orbit_rep, PongData};

/// Basis sizes and homology dimensions per crossing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub basis: BTreeMap<i32, usize>,
    pub dims: BTreeMap<i32, usize>,
}

impl HomologySummary {
    pub fn from_complex<L: Ord + Clone + std::fmt::Debug>(c: &Complex<L>) -> Self {
        HomologySummary {
            basis: c.dims(),
            dims: c.homology_dims(),
        }
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Euler characteristic is invariant under taking homology. Over GF(2)
    /// the signs only depend on degree parity.
    pub fn euler_consistent(&self) -> bool {
        let chi = |m: &BTreeMap<i32, usize>| -> i64 {
            m.iter()
                .map(|(&g, &n)| if g.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
                .sum()
        };
        chi(&self.basis) == chi(&self.dims)
    }
}

/// The (x, y, w) piece of the pong algebra with its differential, graded
/// by crossing count. Basis labels are (monomial, diagram).
pub fn p_piece_complex(
    m: i32,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
) -> Result<Complex<(Monomial, PongData)>> {
    PongData::idempotent(m, x)?;
    PongData::idempotent(m, y)?;
    let items: Vec<((Monomial, PongData), i32)> =
        quotient::piece_labels(ConeKind::PPrime, m, x, y, dw)
            .into_iter()
            .map(|(e, d)| {
                let g = d.cross() as i32;
                ((e, d), g)
            })
            .collect();
    Complex::new(items, |(e, d)| {
        let dw_d = d.doubled_weight();
        let cr = d.cross();
        let mut out = Vec::new();
        for c in d.crossings() {
            let r = d.resolve(c).expect("own crossing");
            if r.cross() != cr - 1 {
                continue;
            }
            let e2: Vec<u32> = e
                .iter()
                .zip(dw_d.iter().zip(r.doubled_weight()))
                .map(|(exp, (a, b))| exp + ((a - b) / 2) as u32)
                .collect();
            out.push((e2, r));
        }
        out
    })
}

/// Re-enumerates with a doubled travel window and checks nothing new shows
/// up.
pub fn enumeration_saturated(m: i32, x: &[i32], y: &[i32], dw_bound: &[i32]) -> bool {
    let budget: i32 = dw_bound.iter().sum();
    let base = pong::enumerate_data_window(m, x, y, dw_bound, budget);
    let wide = pong::enumerate_data_window(m, x, y, dw_bound, 2 * budget + 2 * m);
    base == wide
}

/// Complement inside {1, …, m−1}.
pub fn complement_state(m: i32, x: &[i32]) -> Vec<i32> {
    (1..m).filter(|i| !x.contains(i)).collect()
}

/// Dimension of the (x, y, w) piece of the bordered algebra with a formal
/// central generator of weight (1,…,1) adjoined: one basis element per
/// power of that generator whose residual weight is a surviving pure.
pub fn c_tower_dim(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> usize {
    let mut count = 0;
    let mut s = 0i32;
    loop {
        let rest: Vec<i32> = dw.iter().map(|w| w - 2 * s).collect();
        if rest.iter().any(|&w| w < 0) {
            break;
        }
        if let Ok(p) = ClgPure::new(m, x, y, &rest) {
            if !bordered::ideal_member(m, &p) {
                count += 1;
            }
        }
        s += 1;
    }
    count
}

/// Dimension at doubled weight `dw` of the exterior algebra on X₁, …, X_m
/// (weights e₁, …, e_m) tensored with a polynomial Omega of weight
/// (1,…,1): the closed form for the homology of Q(m, m−1).
pub fn omega_tower_dim(dw: &[i32]) -> usize {
    let max = dw.iter().copied().max().unwrap_or(0);
    (0..=max / 2)
        .filter(|&c| dw.iter().all(|&w| w - 2 * c == 0 || w - 2 * c == 2))
        .count()
}

/// All doubled weight vectors with 0 ≤ dwᵢ ≤ cap.
pub fn doubled_weight_box(m: i32, cap: i32) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &out {
            for v in 0..=cap {
                let mut w2 = w.clone();
                w2.push(v);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// Direction of travel as the strand reaches its endpoint: +1 rightward,
/// -1 leftward, 0 parked. A reflected lift reverses the lift's direction.
fn arrival_direction(m: i32, s: i32, t: i32) -> i32 {
    if t == s {
        return 0;
    }
    let dir = if t > s { 1 } else { -1 };
    if fold(m, t).1.neg {
        -dir
    } else {
        dir
    }
}

/// A strand arrives rightward at the starting position of a rightward
/// departure. The departing strand may be the arriving one itself: a lift
/// raised by a full period comes back to its own source still moving right.
fn has_right_chain(m: i32, d: &PongData) -> bool {
    let pairs = d.pairs();
    pairs.iter().any(|&(s1, t1)| {
        arrival_direction(m, s1, t1) == 1 && {
            let end = orbit_rep(m, t1);
            pairs.iter().any(|&(s2, t2)| s2 == end && t2 > s2)
        }
    })
}

/// The canonical cycle of a triple whose weights lie in a band
/// [c, c+1]: the unique cycle of weight w − c·(1,…,1) in which no strand
/// arrives moving rightward at a position where a strand (possibly the
/// same one) departs rightward. For a constant integer weight both bands
/// fit; the lower one is used, so constant weights give the full bounce
/// staircase rather than the idempotent. `None` when the hypotheses fail
/// or no such diagram exists; ambiguity (two candidates) is an error,
/// since uniqueness is part of the claim.
pub fn canonical_cycle(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> Result<Option<PongData>> {
    if !quotient::compatible_triple(m, x, y, dw) || !quotient::interleaved(x, y) {
        return Ok(None);
    }
    let max = dw.iter().copied().max().unwrap_or(0);
    let min = dw.iter().copied().min().unwrap_or(0);
    let c = ((max + 1).div_euclid(2) - 1).max(0);
    if 2 * c > min {
        return Ok(None);
    }
    let reduced: Vec<i32> = dw.iter().map(|w| w - 2 * c).collect();
    let mut found: Option<PongData> = None;
    for d in pong::enumerate_data_exact(m, x, y, &reduced) {
        if has_right_chain(m, &d) {
            continue;
        }
        if !quotient::QElt::generator(d.clone()).differential().is_zero() {
            continue;
        }
        if let Some(prev) = &found {
            return Err(Error::parse(format!(
                "canonical cycle not unique at x={x:?} y={y:?} dw={dw:?}: {prev} and {d}"
            )));
        }
        found = Some(d);
    }
    Ok(found)
}

/// Index range (inclusive) of the s-th factor of the model complex,
/// 1 ≤ s ≤ k+1, with the padding conventions x₀ = y₀ = 0 and
/// x_{k+1} = y_{k+1} = m.
pub fn model_block(m: i32, x: &[i32], y: &[i32], s: usize) -> (i32, i32) {
    let k = x.len();
    let at = |z: &[i32], i: usize| -> i32 {
        if i == 0 {
            0
        } else if i == k + 1 {
            m
        } else {
            z[i - 1]
        }
    };
    let lo = at(x, s - 1).max(at(y, s - 1)) + 1;
    let hi = at(x, s).min(at(y, s));
    (lo, hi)
}

fn model_base_weight(m: i32, x: &[i32], y: &[i32]) -> Vec<i32> {
    // Each of the k strands sweeps once across the levels strictly
    // between its endpoints.
    let mut dw = vec![0i32; m as usize];
    for (&xs, &ys) in x.iter().zip(y) {
        for i in xs.min(ys) + 1..=xs.max(ys) {
            dw[(i - 1) as usize] += 1;
        }
    }
    dw
}

/// One weight piece of the cube model: basis vectors ξ ∈ {0,1}^{k+1} whose
/// weight fits under w with an even remainder, differential clearing one
/// coordinate at a time. Quasi-isomorphic to the P′ cone piece.
pub fn model_complex_piece(
    m: i32,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
) -> Result<Complex<Vec<bool>>> {
    PongData::idempotent(m, x)?;
    PongData::idempotent(m, y)?;
    if !quotient::interleaved(x, y) {
        return Err(Error::parse("model complex needs interleaved states"));
    }
    let k = x.len();
    let base = model_base_weight(m, x, y);
    let xi_weight = |xi: &[bool]| -> Vec<i32> {
        let mut w = base.clone();
        for (s, &on) in xi.iter().enumerate() {
            if on {
                let (lo, hi) = model_block(m, x, y, s + 1);
                for i in lo..=hi {
                    w[(i - 1) as usize] += 2;
                }
            }
        }
        w
    };
    let mut items = Vec::new();
    for bits in 0..(1u32 << (k + 1)) {
        let xi: Vec<bool> = (0..=k).map(|s| bits >> s & 1 == 1).collect();
        let w = xi_weight(&xi);
        let fits = w
            .iter()
            .zip(dw)
            .all(|(a, b)| a <= b && (b - a) % 2 == 0);
        if fits {
            let g = xi.iter().filter(|&&b| b).count() as i32;
            items.push((xi, g));
        }
    }
    Complex::new(items, |xi: &Vec<bool>| {
        let mut out = Vec::new();
        for s in 0..xi.len() {
            if xi[s] {
                let mut lower = xi.clone();
                lower[s] = false;
                out.push(lower);
            }
        }
        out
    })
}

/// Census at position p of strands that are parked there, launch
/// rightward from there, land there from the left, or cross it rightward.
pub fn excessive_census(d: &PongData, p: i32) -> usize {
    let m = d.m();
    d.pairs()
        .iter()
        .filter(|&&(s, t)| {
            if s == p && t >= s {
                return true;
            }
            if t != s && orbit_rep(m, t) == p {
                let dir = if t > s { 1 } else { -1 };
                let arrival = if fold(m, t).1.neg { -dir } else { dir };
                if arrival == 1 {
                    return true;
                }
            }
            let dir = (t - s).signum();
            if dir != 0 {
                for q in s.min(t) + 1..s.max(t) {
                    if orbit_rep(m, q) == p {
                        let crossing = if fold(m, q).1.neg { -dir } else { dir };
                        if crossing == 1 {
                            return true;
                        }
                    }
                }
            }
            false
        })
        .count()
}

/// At least two strands pile up against position p from the left.
pub fn is_excessive(d: &PongData, p: i32) -> bool {
    excessive_census(d, p) >= 2
}

/// Outcome of probing one Q′ cone piece against the vanishing criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrichotomyProbe {
    /// The cone piece has at least one basis element.
    pub nonzero: bool,
    /// Interleaving holds and every weight is between 0 and 1.
    pub conditions: bool,
    pub h_total: usize,
}

impl TrichotomyProbe {
    /// One-dimensional exactly when the criteria hold, on realizable
    /// pieces; empty pieces satisfy the criteria vacuously only with
    /// vanishing homology.
    pub fn consistent(&self) -> bool {
        if !self.nonzero {
            return self.h_total == 0;
        }
        self.h_total == usize::from(self.conditions)
    }
}

pub fn q_trichotomy_probe(
    m: i32,
    k: usize,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
) -> Result<TrichotomyProbe> {
    let cone = quotient::cone_piece(ConeKind::QPrime, m, k, x, y, dw, false)?;
    Ok(TrichotomyProbe {
        nonzero: !cone.is_empty(),
        conditions: quotient::interleaved(x, y) && dw.iter().all(|&w| w <= 2),
        h_total: cone.total_homology_dim(),
    })
}

/// Total homology dimension of the P′ cone at one weight.
pub fn p_cone_total_dim(m: i32, k: usize, x: &[i32], y: &[i32], dw: &[i32]) -> Result<usize> {
    let cone: Complex<ConeLabel> =
        quotient::cone_piece(ConeKind::PPrime, m, k, x, y, dw, false)?;
    Ok(cone.total_homology_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pong::{atomic, subsets, AtomicDescriptor, Elt};
    use crate::quotient::{compatible_triple, q_piece_complex, QElt};

    #[test]
    fn summaries_balance_euler_characteristic() {
        for x in subsets(3, 1) {
            for y in subsets(3, 1) {
                for dw in doubled_weight_box(3, 3) {
                    let c = p_piece_complex(3, &x, &y, &dw).unwrap();
                    let s = HomologySummary::from_complex(&c);
                    assert!(s.euler_consistent(), "x={x:?} y={y:?} dw={dw:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration_window_is_saturated() {
        for (m, k) in [(3i32, 1usize), (4, 2)] {
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    assert!(enumeration_saturated(m, &x, &y, &vec![4; m as usize]));
                }
            }
        }
    }

    #[test]
    fn pong_homology_matches_bordered_tower_in_small_cases() {
        // Complementary idempotents, all weights up to 2 per level.
        for (m, k) in [(3i32, 1usize), (3, 2), (4, 1)] {
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    let xc = complement_state(m, &x);
                    let yc = complement_state(m, &y);
                    for dw in doubled_weight_box(m, 4) {
                        let p = p_piece_complex(m, &x, &y, &dw).unwrap();
                        let lhs = p.total_homology_dim();
                        let rhs = c_tower_dim(m, &xc, &yc, &dw);
                        assert_eq!(lhs, rhs, "m={m} x={x:?} y={y:?} dw={dw:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn top_quotient_homology_is_an_omega_tower() {
        for m in [2i32, 3] {
            let x: Vec<i32> = (1..m).collect();
            for dw in doubled_weight_box(m, 4) {
                let q = q_piece_complex(m, &x, &x, &dw).unwrap();
                assert_eq!(
                    q.total_homology_dim(),
                    omega_tower_dim(&dw),
                    "m={m} dw={dw:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_cycle_small_cases() {
        // Weight zero: the idempotent.
        let z = canonical_cycle(3, &[1], &[1], &[0, 0, 0]).unwrap().unwrap();
        assert!(z.is_idempotent());

        // Integer weight (1,1,1,1) on {1,3}: the staircase of bounce
        // factors, one per gap, in increasing order.
        let z = canonical_cycle(4, &[1, 3], &[1, 3], &[2, 2, 2, 2])
            .unwrap()
            .unwrap();
        let f1 = atomic(4, 2, &AtomicDescriptor::x(0, 1).calligraphic().with_left(&[1, 3])).unwrap();
        let f2 = atomic(4, 2, &AtomicDescriptor::x(1, 3).calligraphic().with_left(&[1, 3])).unwrap();
        let f3 = atomic(4, 2, &AtomicDescriptor::x(3, 4).calligraphic().with_left(&[1, 3])).unwrap();
        let prod = f1.multiply(&f2).unwrap().multiply(&f3).unwrap();
        assert_eq!(prod.term_count(), 1);
        let (e, d) = prod.terms().next().unwrap();
        assert!(e.iter().all(|&p| p == 0));
        assert_eq!(&z, d);
        // Doubling the weight shifts the band, not the cycle.
        let z2 = canonical_cycle(4, &[1, 3], &[1, 3], &[4, 4, 4, 4])
            .unwrap()
            .unwrap();
        assert_eq!(z, z2);
    }

    #[test]
    fn canonical_cycles_are_unique_cycles() {
        for (m, k) in [(3i32, 1usize), (3, 2), (4, 2)] {
            let mut found = 0;
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    for dw in doubled_weight_box(m, 3) {
                        let z = canonical_cycle(m, &x, &y, &dw).unwrap();
                        if let Some(z) = z {
                            found += 1;
                            let dq = QElt::generator(z.clone()).differential();
                            assert!(dq.is_zero(), "not a cycle at x={x:?} y={y:?} dw={dw:?}");
                            // With matching idempotents, a strand ends
                            // left-moving when the level above its endpoint
                            // still carries weight and right-moving when the
                            // weight stops just below it.
                            if x == y {
                                let rw = z.doubled_weight();
                                for &(s, t) in z.pairs() {
                                    let i = orbit_rep(m, t);
                                    let dir = arrival_direction(m, s, t);
                                    if rw[i as usize] > 0 {
                                        assert_eq!(dir, -1, "z={z} ends at {i}");
                                    } else if rw[(i - 1) as usize] > 0 {
                                        assert_eq!(dir, 1, "z={z} ends at {i}");
                                    }
                                }
                            }
                        }
                    }
                }
            }
            assert!(found > 0, "sweep for ({m},{k}) never produced a cycle");
        }
    }

    #[test]
    fn model_complex_matches_pong_cone() {
        // The stated k=1 fixture: on m=2, x=y={1}, the two factors are
        // v₁ and v₂.
        assert_eq!(model_block(2, &[1], &[1], 1), (1, 1));
        assert_eq!(model_block(2, &[1], &[1], 2), (2, 2));
        for dw in doubled_weight_box(2, 4) {
            let model = model_complex_piece(2, &[1], &[1], &dw).unwrap();
            let cone = p_cone_total_dim(2, 1, &[1], &[1], &dw).unwrap();
            assert_eq!(model.total_homology_dim(), cone, "dw={dw:?}");
        }

        for (m, k) in [(3i32, 1usize), (3, 2), (4, 2)] {
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    if !quotient::interleaved(&x, &y) {
                        continue;
                    }
                    for dw in doubled_weight_box(m, 3) {
                        let model = model_complex_piece(m, &x, &y, &dw).unwrap();
                        let cone = p_cone_total_dim(m, k, &x, &y, &dw).unwrap();
                        assert_eq!(
                            model.total_homology_dim(),
                            cone,
                            "m={m} x={x:?} y={y:?} dw={dw:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn model_complex_rejects_non_interleaved_states() {
        assert!(model_complex_piece(4, &[1, 2], &[2, 3], &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn excessive_census_fixtures() {
        // A single parked strand is not a pile-up.
        let idem = PongData::idempotent(3, &[2]).unwrap();
        assert_eq!(excessive_census(&idem, 2), 1);
        assert!(!is_excessive(&idem, 2));

        // The bounce off the bottom wall recrosses 1 and 2 rightward on
        // its way back up, so it piles up with the launching strand at
        // both; nothing extra reaches 3.
        let d = PongData::new(4, &[(1, 3), (2, -1)]).unwrap();
        assert!(is_excessive(&d, 1));
        assert!(is_excessive(&d, 2));
        assert!(!is_excessive(&d, 3));

        // Two parked strands never pile up; a rightward crossing over a
        // parked strand does.
        let d = PongData::new(4, &[(2, 2), (3, 3)]).unwrap();
        assert_eq!(excessive_census(&d, 2), 1);
        assert!(!is_excessive(&d, 3));
        let d = PongData::new(4, &[(2, 5), (3, 3)]).unwrap();
        assert_eq!(excessive_census(&d, 2), 1);
        assert!(is_excessive(&d, 3));
    }

    #[test]
    fn all_excessive_pieces_have_no_homology() {
        // Scan small Q pieces: whenever every generator piles up at one
        // common position, the whole piece is acyclic.
        let mut instances = 0;
        for (m, k) in [(3i32, 1usize), (3, 2), (4, 1), (4, 2)] {
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    for dw in doubled_weight_box(m, 4) {
                        if !compatible_triple(m, &x, &y, &dw) {
                            continue;
                        }
                        let c = q_piece_complex(m, &x, &y, &dw).unwrap();
                        if c.is_empty() {
                            continue;
                        }
                        for p in 1..m {
                            if c.basis().iter().all(|d| is_excessive(d, p)) {
                                instances += 1;
                                assert_eq!(
                                    c.total_homology_dim(),
                                    0,
                                    "m={m} x={x:?} y={y:?} dw={dw:?} p={p}"
                                );
                            }
                        }
                    }
                }
            }
        }
        assert!(instances > 0, "the scan never exercised the vanishing criterion");
    }

    #[test]
    fn trichotomy_probe_on_small_sweep() {
        for (m, k) in [(3i32, 0usize), (3, 1), (3, 2)] {
            for x in subsets(m, k) {
                for y in subsets(m, k) {
                    for dw in doubled_weight_box(m, 4) {
                        if !compatible_triple(m, &x, &y, &dw) {
                            continue;
                        }
                        let probe = q_trichotomy_probe(m, k, &x, &y, &dw).unwrap();
                        assert!(probe.h_total <= 1);
                        assert!(probe.consistent(), "x={x:?} y={y:?} dw={dw:?} {probe:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn top_piece_contains_the_commutator_generators() {
        // Q(4,3) at weight (1,1,1,1) on the full state: all six one-bounce
        // products show up, and they are not the whole piece.
        let x = [1, 2, 3];
        let basis = pong::enumerate_data_exact(4, &x, &x, &[2, 2, 2, 2]);
        let mut six = Vec::new();
        for i in 1..4 {
            let a = atomic(4, 3, &AtomicDescriptor::x(0, i).calligraphic().with_left(&x)).unwrap();
            let b = atomic(4, 3, &AtomicDescriptor::x(i, 4).calligraphic().with_left(&x)).unwrap();
            for prod in [a.multiply(&b).unwrap(), b.multiply(&a).unwrap()] {
                assert_eq!(prod.term_count(), 1);
                let (e, d) = prod.terms().next().unwrap();
                assert!(e.iter().all(|&p| p == 0));
                assert_eq!(d.doubled_weight(), vec![2, 2, 2, 2]);
                six.push(d.clone());
            }
        }
        six.sort();
        six.dedup();
        assert_eq!(six.len(), 6);
        for d in &six {
            assert!(basis.contains(d), "{d} missing from the piece");
        }
        assert!(basis.len() > 6, "piece has only the commutator generators");
        let omega = pong::omega(4, 3).unwrap();
        let omega_terms: Vec<PongData> = omega.terms().map(|(_, d)| d.clone()).collect();
        for d in &omega_terms {
            assert!(six.contains(d));
        }
        let _ = Elt::generator(six[0].clone());
    }
}
