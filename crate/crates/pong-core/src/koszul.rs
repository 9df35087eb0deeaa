//! Dual words over the truncated bordered algebra and their comparison
//! with the quotient.
//!
//! A word is a chain of non-idempotent pure letters; the span of all words
//! is the (graded dual of the) cobar construction of C(m,k), with
//! juxtaposition as product and the letter-splitting differential. Pairing
//! every letter against the structure-map summand with the same bordered
//! factor and stacking the quotient partners gives a map to Q(m,k), and
//! `verify_koszul_duality` checks piece by piece that this map is a chain
//! map inducing an isomorphism on homology, matching word length `-n`
//! against the quotient's crossing-minus-weight grading.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bordered::{c_states, ideal_member, is_c_state, BElt, ClgPure};
use crate::complex::Complex;
use crate::dd::delta1;
use crate::error::{Error, Result};
use crate::gf2::Mat;
use crate::quotient::{q_piece_complex, QElt};
use crate::strands::PongData;

/// True for the pure elements that survive in C(m,k) and are not
/// idempotents: exactly the admissible word letters.
pub fn is_letter(m: i32, p: &ClgPure) -> bool {
    is_c_state(m, &p.x)
        && is_c_state(m, &p.y)
        && !ideal_member(m, p)
        && !(p.x == p.y && p.dw.iter().all(|&w| w == 0))
}

/// A dual basis word: a source state followed by a chain of letters. The
/// empty word at `x` stands for the dual of the idempotent at `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CobarWord {
    m: i32,
    x: Vec<i32>,
    letters: Vec<ClgPure>,
}

impl CobarWord {
    pub fn new(m: i32, x: &[i32], letters: Vec<ClgPure>) -> Result<Self> {
        if !is_c_state(m, x) {
            return Err(Error::Unsupported(format!(
                "word source {x:?} is not an interior state for m={m}"
            )));
        }
        let mut at = x.to_vec();
        for p in &letters {
            if p.x != at {
                return Err(Error::NotComposable);
            }
            if !is_letter(m, p) {
                return Err(Error::Unsupported(format!(
                    "letter {p:?} is not a non-idempotent basis element"
                )));
            }
            at = p.y.clone();
        }
        Ok(CobarWord {
            m,
            x: x.to_vec(),
            letters,
        })
    }

    pub fn idempotent(m: i32, x: &[i32]) -> Result<Self> {
        CobarWord::new(m, x, Vec::new())
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[ClgPure] {
        &self.letters
    }

    pub fn source_state(&self) -> &[i32] {
        &self.x
    }

    pub fn target_state(&self) -> &[i32] {
        self.letters.last().map_or(&self.x, |p| &p.y)
    }

    /// Componentwise sum of the letters' doubled weights.
    pub fn dweight(&self) -> Vec<i32> {
        let mut out = vec![0; self.m as usize];
        for p in &self.letters {
            for (o, w) in out.iter_mut().zip(&p.dw) {
                *o += w;
            }
        }
        out
    }

    /// Juxtaposition, defined when the states meet.
    pub fn concat(&self, other: &CobarWord) -> Result<CobarWord> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch);
        }
        if self.target_state() != other.source_state() {
            return Err(Error::NotComposable);
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        CobarWord::new(self.m, &self.x, letters)
    }
}

impl fmt::Display for CobarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "(I{:?})*", self.x);
        }
        for (n, p) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "[{}]*", BElt::pure(self.m, self.k(), p.clone()))?;
        }
        Ok(())
    }
}

/// All ways of writing `a` as a product of two letters: a middle state and
/// a split of the weight, subject to both halves being admissible.
pub fn letter_factorizations(m: i32, k: usize, a: &ClgPure) -> Vec<(ClgPure, ClgPure)> {
    let mut out = Vec::new();
    for z in c_states(m, k) {
        for dw_b in weight_box(&a.dw) {
            let dw_c: Vec<i32> = a.dw.iter().zip(&dw_b).map(|(w, b)| w - b).collect();
            let Ok(b) = ClgPure::new(m, &a.x, &z, &dw_b) else {
                continue;
            };
            let Ok(c) = ClgPure::new(m, &z, &a.y, &dw_c) else {
                continue;
            };
            if is_letter(m, &b) && is_letter(m, &c) {
                out.push((b, c));
            }
        }
    }
    out
}

/// Every vector `0 <= v <= cap` componentwise.
fn weight_box(cap: &[i32]) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for &c in cap {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |w| {
                    let mut v2 = v.clone();
                    v2.push(w);
                    v2
                })
            })
            .collect();
    }
    out
}

/// The dual of multiplication: split one letter at a time into a product
/// of two. Splittings at different positions never collide, but the GF(2)
/// cancellation is applied anyway.
pub fn cobar_differential(w: &CobarWord) -> Vec<CobarWord> {
    let k = w.k();
    let mut acc: BTreeSet<CobarWord> = BTreeSet::new();
    for (i, a) in w.letters.iter().enumerate() {
        for (b, c) in letter_factorizations(w.m, k, a) {
            let mut letters = w.letters.clone();
            letters.splice(i..=i, [b, c]);
            let refined = CobarWord::new(w.m, &w.x, letters).expect("splits stay admissible");
            if !acc.remove(&refined) {
                acc.insert(refined);
            }
        }
    }
    acc.into_iter().collect()
}

/// Quotient partners of one letter: the structure-map summands out of the
/// letter's source whose bordered factor is the letter itself.
fn letter_partners(
    cache: &mut BTreeMap<Vec<i32>, Vec<(ClgPure, PongData)>>,
    m: i32,
    a: &ClgPure,
) -> Result<Vec<PongData>> {
    if !cache.contains_key(&a.x) {
        let terms = delta1(m, &a.x)?
            .into_iter()
            .map(|t| (t.c, t.q))
            .collect();
        cache.insert(a.x.clone(), terms);
    }
    Ok(cache[&a.x]
        .iter()
        .filter(|(c, _)| c == a)
        .map(|(_, q)| q.clone())
        .collect())
}

/// The comparison map on a dual word: choose a structure-map partner for
/// every letter and stack the quotient factors, last letter at the bottom.
/// That is the only order in which the idempotents chain, since the
/// partner of a letter runs backwards along it. Words containing a letter
/// outside the structure map's image go to zero; the empty word at `x`
/// goes to the idempotent.
pub fn phi(w: &CobarWord) -> Result<QElt> {
    let (m, k) = (w.m, w.k());
    if w.letters.is_empty() {
        return QElt::idempotent(m, &w.x);
    }
    let mut cache = BTreeMap::new();
    let mut choices: Vec<Vec<PongData>> = Vec::with_capacity(w.len());
    for a in &w.letters {
        let partners = letter_partners(&mut cache, m, a)?;
        if partners.is_empty() {
            return Ok(QElt::zero(m, k));
        }
        choices.push(partners);
    }
    let mut out = QElt::zero(m, k);
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut prod = QElt::generator(choices[pick.len() - 1][pick[pick.len() - 1]].clone());
        for (i, &c) in pick.iter().enumerate().rev().skip(1) {
            prod = prod.multiply(&QElt::generator(choices[i][c].clone()))?;
        }
        out = out.add(&prod);
        // Odometer over the partner choices.
        let mut pos = 0;
        loop {
            if pos == pick.len() {
                return Ok(out);
            }
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

/// All words from `x` to `y` whose letter weights sum to exactly `dw`.
/// Terminates because every letter carries positive total weight.
fn words_between(m: i32, k: usize, x: &[i32], y: &[i32], dw: &[i32]) -> Vec<CobarWord> {
    let states = c_states(m, k);
    let mut out = Vec::new();
    let mut prefix: Vec<ClgPure> = Vec::new();
    fn rec(
        m: i32,
        states: &[Vec<i32>],
        y: &[i32],
        at: &[i32],
        remaining: &[i32],
        prefix: &mut Vec<ClgPure>,
        out: &mut Vec<Vec<ClgPure>>,
    ) {
        if at == y && remaining.iter().all(|&w| w == 0) {
            out.push(prefix.clone());
        }
        for z in states {
            for dw in weight_box(remaining) {
                let Ok(p) = ClgPure::new(m, at, z, &dw) else {
                    continue;
                };
                if !is_letter(m, &p) {
                    continue;
                }
                let left: Vec<i32> = remaining.iter().zip(&dw).map(|(r, w)| r - w).collect();
                prefix.push(p);
                rec(m, states, y, z, &left, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(m, &states, y, x, dw, &mut prefix, &mut raw);
    for letters in raw {
        out.push(CobarWord::new(m, x, letters).expect("enumerated letters chain"));
    }
    out
}

/// The (x, y, dw) piece of the word algebra as a complex graded by minus
/// the word length.
pub fn cobar_piece_complex(
    m: i32,
    k: usize,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
) -> Result<Complex<CobarWord>> {
    if dw.len() != m as usize {
        return Err(Error::WeightSize {
            want: m as usize,
            got: dw.len(),
        });
    }
    let items: Vec<(CobarWord, i32)> = words_between(m, k, x, y, dw)
        .into_iter()
        .map(|w| {
            let g = -(w.len() as i32);
            (w, g)
        })
        .collect();
    Complex::new(items, cobar_differential)
}

/// Outcome of the piece-by-piece comparison up to a weight cap.
#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub m: i32,
    pub k: usize,
    pub cap: Vec<i32>,
    /// Pieces visited, including those empty on both sides.
    pub pieces: usize,
    /// Dual words enumerated across all pieces.
    pub words: usize,
    /// Total homology dimension seen on the quotient side.
    pub homology: usize,
    pub failures: Vec<String>,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every piece (x, y, w) with w below the cap: the word complex and
/// the quotient piece in the reversed direction have the same homology
/// dimensions under length -n <-> crossings minus total weight, the
/// comparison map commutes with the differentials, and it induces an
/// isomorphism on homology.
pub fn verify_koszul_duality(m: i32, k: usize, cap: &[i32]) -> Result<KoszulReport> {
    if cap.len() != m as usize {
        return Err(Error::WeightSize {
            want: m as usize,
            got: cap.len(),
        });
    }
    let mut report = KoszulReport {
        m,
        k,
        cap: cap.to_vec(),
        pieces: 0,
        words: 0,
        homology: 0,
        failures: Vec::new(),
    };
    let states = c_states(m, k);
    for x in &states {
        for y in &states {
            for w in weight_box(cap) {
                report.pieces += 1;
                let piece = format!("m={m} k={k} x={x:?} y={y:?} w={w:?}");
                let cobar = cobar_piece_complex(m, k, x, y, &w)?;
                let quot = q_piece_complex(m, y, x, &w)?;
                report.words += cobar.len();
                if cobar.is_empty() && quot.is_empty() {
                    continue;
                }
                if !cobar.d_squared_is_zero() {
                    report.failures.push(format!("{piece}: d^2 != 0 on words"));
                    continue;
                }
                // Length -n on the word side matches crossing degree
                // sum(w) - n on the quotient side.
                let total: i32 = w.iter().sum();
                let shifted: BTreeMap<i32, usize> = cobar
                    .homology_dims()
                    .into_iter()
                    .map(|(g, d)| (total + g, d))
                    .collect();
                if shifted != quot.homology_dims() {
                    report.failures.push(format!(
                        "{piece}: homology {:?} on words vs {:?} on the quotient",
                        shifted,
                        quot.homology_dims()
                    ));
                    continue;
                }
                // Phi as a matrix from words to quotient diagrams.
                let mut cols = Vec::with_capacity(cobar.len());
                let mut ok = true;
                for word in cobar.basis() {
                    let image = phi(word)?;
                    let labels: Vec<PongData> = image.terms().cloned().collect();
                    match quot.vector_of(&labels) {
                        Ok(v) => cols.push(v),
                        Err(_) => {
                            report
                                .failures
                                .push(format!("{piece}: image of {word} leaves the piece"));
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let phi_mat = Mat::from_columns(quot.len(), &cols);
                let commute = quot
                    .d_matrix()
                    .mul(&phi_mat)
                    .add(&phi_mat.mul(cobar.d_matrix()));
                if !commute.is_zero() {
                    report
                        .failures
                        .push(format!("{piece}: comparison map is not a chain map"));
                    continue;
                }
                let con_cobar = cobar.contraction();
                let con_quot = quot.contraction();
                report.homology += con_quot.rank();
                let induced: Vec<_> = con_cobar
                    .hom
                    .iter()
                    .map(|v| con_quot.p(&phi_mat.mul_vec(v)))
                    .collect();
                let rank = Mat::from_columns(con_quot.rank(), &induced).rank();
                if rank != con_quot.rank() || con_cobar.rank() != con_quot.rank() {
                    report.failures.push(format!(
                        "{piece}: induced map has rank {rank} on homology of dimension {}",
                        con_quot.rank()
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pong::{atomic, AtomicDescriptor};
    use crate::quotient::project_to_q;

    fn pure(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> ClgPure {
        ClgPure::new(m, x, y, dw).unwrap()
    }

    fn q_atomic(m: i32, k: usize, desc: &AtomicDescriptor) -> QElt {
        project_to_q(&atomic(m, k, desc).unwrap())
    }

    #[test]
    fn splitting_a_u_square_gives_the_two_mover_orders() {
        // In C(4,2) the letter U2 at {1,3} splits only as R2*L2, and at
        // {2,3} only as L2*R2; U4 admits no split because the state it
        // would pass through sticks out of the window. So the word U2 (x) U4
        // refines to the two three-letter mover words, one per side.
        let u2 = |x: &[i32]| pure(4, x, x, &[0, 2, 0, 0]);
        let u4 = |x: &[i32]| pure(4, x, x, &[0, 0, 0, 2]);
        assert!(letter_factorizations(4, 2, &u4(&[1, 3])).is_empty());

        let w13 = CobarWord::new(4, &[1, 3], vec![u2(&[1, 3]), u4(&[1, 3])]).unwrap();
        let r2 = pure(4, &[1, 3], &[2, 3], &[0, 1, 0, 0]);
        let l2 = pure(4, &[2, 3], &[1, 3], &[0, 1, 0, 0]);
        assert_eq!(
            cobar_differential(&w13),
            vec![CobarWord::new(4, &[1, 3], vec![r2, l2, u4(&[1, 3])]).unwrap()]
        );

        let w23 = CobarWord::new(4, &[2, 3], vec![u2(&[2, 3]), u4(&[2, 3])]).unwrap();
        let l2 = pure(4, &[2, 3], &[1, 3], &[0, 1, 0, 0]);
        let r2 = pure(4, &[1, 3], &[2, 3], &[0, 1, 0, 0]);
        assert_eq!(
            cobar_differential(&w23),
            vec![CobarWord::new(4, &[2, 3], vec![l2, r2, u4(&[2, 3])]).unwrap()]
        );
    }

    #[test]
    fn differential_squares_to_zero_on_bounded_words() {
        for (m, k, cap) in [
            (2, 1, vec![4, 4]),
            (3, 1, vec![2, 2, 2]),
            (3, 2, vec![2, 2, 2]),
            (4, 1, vec![2, 2, 2, 2]),
            (4, 2, vec![2, 2, 2, 2]),
            (4, 3, vec![2, 2, 2, 2]),
        ] {
            let states = c_states(m, k);
            let mut words = 0;
            for x in &states {
                for y in &states {
                    for w in weight_box(&cap) {
                        for word in words_between(m, k, x, y, &w) {
                            words += 1;
                            let mut acc: BTreeSet<CobarWord> = BTreeSet::new();
                            for first in cobar_differential(&word) {
                                for second in cobar_differential(&first) {
                                    if !acc.remove(&second) {
                                        acc.insert(second);
                                    }
                                }
                            }
                            assert!(acc.is_empty(), "d^2 != 0 at {word}");
                        }
                    }
                }
            }
            assert!(words > 0, "empty sweep at m={m} k={k}");
        }
    }

    #[test]
    fn phi_sends_single_u_letters_to_the_bouncing_strands() {
        let w1 = CobarWord::new(2, &[1], vec![pure(2, &[1], &[1], &[2, 0])]).unwrap();
        let w2 = CobarWord::new(2, &[1], vec![pure(2, &[1], &[1], &[0, 2])]).unwrap();
        let x01 = q_atomic(2, 1, &AtomicDescriptor::x(0, 1).with_left(&[1]));
        let x12 = q_atomic(2, 1, &AtomicDescriptor::x(1, 2).with_left(&[1]));
        assert_eq!(phi(&w1).unwrap(), x01);
        assert_eq!(phi(&w2).unwrap(), x12);

        // The two-letter words land on the two double bounces, which
        // squares with U1*U2 being zero in C(2,1) (its weight is stuck in
        // the ideal) while both stacked products survive in the quotient.
        assert!(ideal_member(2, &pure(2, &[1], &[1], &[2, 2])));
        let w12 = w1.concat(&w2).unwrap();
        let w21 = w2.concat(&w1).unwrap();
        let d12 = phi(&w12).unwrap();
        let d21 = phi(&w21).unwrap();
        assert_eq!(d12.term_count(), 1);
        assert_eq!(d21.term_count(), 1);
        assert_ne!(d12, d21);
        for d in d12.terms().chain(d21.terms()) {
            assert_eq!(d.doubled_weight(), vec![2, 2]);
        }
    }

    #[test]
    fn phi_kills_letters_outside_the_structure_map_image() {
        // U1^2 is a live letter of C(2,1) but no structure-map summand
        // carries it, so its dual word maps to zero.
        let u1sq = pure(2, &[1], &[1], &[4, 0]);
        assert!(is_letter(2, &u1sq));
        let w = CobarWord::new(2, &[1], vec![u1sq]).unwrap();
        assert!(phi(&w).unwrap().is_zero());
    }

    #[test]
    fn stacking_order_is_forced_by_the_idempotents() {
        // The partner of a letter runs backwards along it, so only the
        // last-letter-first stacking chains; the forward product of the
        // same partners does not even compose.
        let l2 = pure(3, &[2], &[1], &[0, 1, 0]);
        let u1 = pure(3, &[1], &[1], &[2, 0, 0]);
        let word = CobarWord::new(3, &[2], vec![l2, u1]).unwrap();
        let image = phi(&word).unwrap();
        assert_eq!(image.term_count(), 1);
        assert_eq!(image.left_state().unwrap(), vec![1]);
        assert_eq!(image.right_state().unwrap(), vec![2]);

        let q_l2 = q_atomic(3, 1, &AtomicDescriptor::r(1, 2).with_left(&[1]));
        let q_u1 = q_atomic(3, 1, &AtomicDescriptor::x(0, 1).with_left(&[1]));
        assert_eq!(image, q_u1.multiply(&q_l2).unwrap());
        assert!(q_l2.multiply(&q_u1).unwrap().is_zero());
    }

    #[test]
    fn phi_turns_juxtaposition_into_the_stacked_product() {
        // Phi reverses direction, so juxtaposition lands on the product
        // with the later word at the bottom.
        let cases = [
            (
                CobarWord::new(3, &[1], vec![pure(3, &[1], &[1], &[2, 0, 0])]).unwrap(),
                CobarWord::new(3, &[1], vec![pure(3, &[1], &[2], &[0, 1, 0])]).unwrap(),
            ),
            (
                CobarWord::new(3, &[1], vec![pure(3, &[1], &[2], &[0, 1, 0])]).unwrap(),
                CobarWord::new(3, &[2], vec![pure(3, &[2], &[2], &[0, 0, 2])]).unwrap(),
            ),
            (
                CobarWord::idempotent(3, &[2]).unwrap(),
                CobarWord::new(3, &[2], vec![pure(3, &[2], &[1], &[0, 1, 0])]).unwrap(),
            ),
        ];
        for (v, w) in cases {
            let joined = phi(&v.concat(&w).unwrap()).unwrap();
            let stacked = phi(&w).unwrap().multiply(&phi(&v).unwrap()).unwrap();
            assert_eq!(joined, stacked, "at {v} (x) {w}");
        }
    }

    #[test]
    fn words_of_zero_weight_are_the_idempotents() {
        for (m, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
            for x in c_states(m, k) {
                for y in c_states(m, k) {
                    let words = words_between(m, k, &x, &y, &vec![0; m as usize]);
                    if x == y {
                        assert_eq!(words.len(), 1);
                        assert!(words[0].is_empty());
                        assert_eq!(
                            phi(&words[0]).unwrap(),
                            QElt::idempotent(m, &x).unwrap()
                        );
                    } else {
                        assert!(words.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn duality_holds_on_the_one_state_algebras() {
        let r = verify_koszul_duality(2, 1, &[4, 4]).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.homology > 0);

        let r = verify_koszul_duality(3, 2, &[2, 2, 2]).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn duality_holds_with_moving_states() {
        let r = verify_koszul_duality(3, 1, &[2, 2, 2]).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.words > 0);
    }
}
