//! The quotient algebra Q(m,k): pong diagrams with every central weight
//! monomial set to zero, plus the mapping cones Q' and P' that adjoin a
//! formal antiderivative for Omega.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::pong::{self, Elt, Monomial};
use crate::strands::PongData;

/// GF(2) sum of diagrams; products or resolutions that would pick up a
/// positive v-power are zero here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QElt {
    m: i32,
    k: usize,
    terms: BTreeSet<PongData>,
}

impl QElt {
    pub fn zero(m: i32, k: usize) -> Self {
        QElt {
            m,
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn generator(d: PongData) -> Self {
        let mut e = QElt::zero(d.m(), d.pairs().len());
        e.toggle(d);
        e
    }

    pub fn idempotent(m: i32, state: &[i32]) -> Result<Self> {
        Ok(QElt::generator(PongData::idempotent(m, state)?))
    }

    /// Sum of all idempotents.
    pub fn unit(m: i32, k: usize) -> Self {
        project_to_q(&Elt::unit(m, k))
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = &PongData> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, d: PongData) {
        if !self.terms.remove(&d) {
            self.terms.insert(d);
        }
    }

    pub fn add(&self, other: &QElt) -> QElt {
        let mut out = self.clone();
        for d in &other.terms {
            out.toggle(d.clone());
        }
        out
    }

    /// The lift with trivial monomials; projecting back is the identity.
    pub fn as_pong(&self) -> Elt {
        let mut out = Elt::zero(self.m, self.k);
        for d in &self.terms {
            out = out.add(&Elt::generator(d.clone()));
        }
        out
    }

    /// Resolve each crossing, keeping only the resolutions that preserve
    /// the weight vector (the v-weighted terms of the pong differential
    /// die in the quotient).
    pub fn differential(&self) -> QElt {
        let mut out = QElt::zero(self.m, self.k);
        for d in &self.terms {
            let dw = d.doubled_weight();
            let cr = d.cross();
            for c in d.crossings() {
                let r = d.resolve(c).expect("own crossing");
                if r.cross() == cr - 1 && r.doubled_weight() == dw {
                    out.toggle(r);
                }
            }
        }
        out
    }

    /// Stack, keeping only composites whose weight is exactly additive
    /// (and whose crossings are, as in the pong algebra).
    pub fn multiply(&self, other: &QElt) -> Result<QElt> {
        if self.m != other.m || self.k != other.k {
            return Err(Error::AmbientMismatch);
        }
        let mut out = QElt::zero(self.m, self.k);
        for d1 in &self.terms {
            let right = d1.target_state();
            for d2 in &other.terms {
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
                if comp.doubled_weight() == sum {
                    out.toggle(comp);
                }
            }
        }
        Ok(out)
    }

    pub fn gradings(&self) -> Result<(i32, Vec<i32>, i32)> {
        self.as_pong().gradings()
    }

    pub fn doubled_weight(&self) -> Result<Vec<i32>> {
        self.as_pong().doubled_weight()
    }

    pub fn cross_degree(&self) -> Result<i32> {
        self.as_pong().cross_degree()
    }

    pub fn left_state(&self) -> Result<Vec<i32>> {
        self.as_pong().left_state()
    }

    pub fn right_state(&self) -> Result<Vec<i32>> {
        self.as_pong().right_state()
    }
}

impl fmt::Display for QElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, d) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
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

/// Image of a pong element: the terms with trivial monomial.
pub fn project_to_q(a: &Elt) -> QElt {
    let mut out = QElt::zero(a.m(), a.k());
    for (e, d) in a.terms() {
        if e.iter().all(|&x| x == 0) {
            out.toggle(d.clone());
        }
    }
    out
}

/// Omega in the quotient. Zero when k = 0: the k = 0 convention is a
/// pure monomial, which projects away.
pub fn omega_q(m: i32, k: usize) -> Result<QElt> {
    Ok(project_to_q(&pong::omega(m, k)?))
}

/// Parity condition on a doubled weight between two idempotent states:
/// dw_i plus the number of strands of either state below level i must be
/// even for every i. Necessary for the (x,y,w) piece to be nonempty, but
/// not sufficient.
pub fn compatible_triple(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> bool {
    if dw.len() != m as usize {
        return false;
    }
    (1..=m).all(|i| {
        let below = x.iter().filter(|&&t| t < i).count() + y.iter().filter(|&&t| t < i).count();
        (dw[(i - 1) as usize] + below as i32) % 2 == 0
    })
}

/// Strict interleaving of two k-element states: consecutive pairs must
/// separate, max(x_s, y_s) < min(x_{s+1}, y_{s+1}).
pub fn interleaved(x: &[i32], y: &[i32]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    (1..x.len()).all(|s| x[s - 1].max(y[s - 1]) < x[s].min(y[s]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    /// Diagrams only; weight must be on the nose.
    QPrime,
    /// Diagrams with central monomials; weight counts both.
    PPrime,
}

/// Cone basis label: (lives in the shifted source copy, monomial part,
/// diagram). QPrime labels always carry the zero monomial.
pub type ConeLabel = (bool, Monomial, PongData);

fn monomial_box(dw: &[i32]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = vec![vec![0; dw.len()]];
    for (i, &w) in dw.iter().enumerate() {
        let mut next = Vec::new();
        for e in &out {
            for p in 0..=(w / 2) as u32 {
                let mut e2 = e.clone();
                e2[i] = p;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn piece_labels(
    kind: ConeKind,
    m: i32,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
) -> Vec<(Monomial, PongData)> {
    if dw.iter().any(|&w| w < 0) {
        return Vec::new();
    }
    match kind {
        ConeKind::QPrime => pong::enumerate_data_exact(m, x, y, dw)
            .into_iter()
            .map(|d| (vec![0; m as usize], d))
            .collect(),
        ConeKind::PPrime => {
            let mut out = Vec::new();
            for e in monomial_box(dw) {
                let rest: Vec<i32> = dw
                    .iter()
                    .zip(&e)
                    .map(|(w, exp)| w - 2 * *exp as i32)
                    .collect();
                for d in pong::enumerate_data_exact(m, x, y, &rest) {
                    out.push((e.clone(), d));
                }
            }
            out
        }
    }
}

/// One weight piece of the mapping cone over multiplication by Omega,
/// from the (x,y,w−1⃗) piece into the (x,y,w) piece. The source copy is
/// shifted up by 2k+1 in the crossing grading so the whole differential
/// has degree −1. Unrealizable weights give an empty complex.
pub fn cone_piece(
    kind: ConeKind,
    m: i32,
    k: usize,
    x: &[i32],
    y: &[i32],
    dw: &[i32],
    omega_on_right: bool,
) -> Result<Complex<ConeLabel>> {
    PongData::idempotent(m, x)?;
    PongData::idempotent(m, y)?;
    if dw.len() != m as usize {
        return Err(Error::parse("weight vector length must be m"));
    }
    let shift = 2 * k as i32 + 1;
    let mut items: Vec<(ConeLabel, i32)> = Vec::new();
    for (e, d) in piece_labels(kind, m, x, y, dw) {
        let g = d.cross() as i32;
        items.push(((false, e, d), g));
    }
    let source_dw: Vec<i32> = dw.iter().map(|w| w - 2).collect();
    for (e, d) in piece_labels(kind, m, x, y, &source_dw) {
        let g = d.cross() as i32 + shift;
        items.push(((true, e, d), g));
    }
    let omega = pong::omega(m, k)?;
    let diff = move |label: &ConeLabel| -> Vec<ConeLabel> {
        let (shifted, e, d) = label;
        let mut out = Vec::new();
        let dw_d = d.doubled_weight();
        let cr = d.cross();
        for c in d.crossings() {
            let r = d.resolve(c).expect("own crossing");
            if r.cross() != cr - 1 {
                continue;
            }
            let defect: Vec<u32> = dw_d
                .iter()
                .zip(r.doubled_weight())
                .map(|(a, b)| ((a - b) / 2) as u32)
                .collect();
            if kind == ConeKind::QPrime && defect.iter().any(|&p| p > 0) {
                continue;
            }
            let e2: Vec<u32> = e.iter().zip(&defect).map(|(a, b)| a + b).collect();
            out.push((*shifted, e2, r));
        }
        if *shifted {
            let gen = Elt::term(e.clone(), d.clone());
            let img = if omega_on_right {
                gen.multiply(&omega)
            } else {
                omega.multiply(&gen)
            }
            .expect("same ambient algebra");
            for (e2, h) in img.terms() {
                if kind == ConeKind::QPrime && e2.iter().any(|&p| p > 0) {
                    continue;
                }
                out.push((false, e2.clone(), h.clone()));
            }
        }
        out
    };
    Complex::new(items, diff)
}

/// The plain (x,y,w) piece of Q with its differential, as a complex
/// graded by crossing count.
pub fn q_piece_complex(m: i32, x: &[i32], y: &[i32], dw: &[i32]) -> Result<Complex<PongData>> {
    PongData::idempotent(m, x)?;
    PongData::idempotent(m, y)?;
    let items: Vec<(PongData, i32)> = piece_labels(ConeKind::QPrime, m, x, y, dw)
        .into_iter()
        .map(|(_, d)| {
            let g = d.cross() as i32;
            (d, g)
        })
        .collect();
    Complex::new(items, |d| {
        QElt::generator(d.clone()).differential().terms().cloned().collect()
    })
}
