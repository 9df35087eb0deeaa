//! Finite chain complexes over GF(2) with labeled basis elements.
//!
//! A complex is built from a list of (label, grading) pairs and a
//! differential callback; everything else (homology dimensions,
//! representatives, contractions onto homology) is linear algebra on the
//! resulting bit matrix. The differential must be homogeneous of degree -1.

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Mat, SpanTracker};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Complex<L: Ord + Clone> {
    basis: Vec<L>,
    grading: Vec<i32>,
    index: BTreeMap<L, usize>,
    d: Mat,
}

impl<L: Ord + Clone + std::fmt::Debug> Complex<L> {
    /// Build from generators; `diff` returns the GF(2) list of summands of
    /// the differential (repeats cancel in pairs).
    pub fn new(items: Vec<(L, i32)>, diff: impl Fn(&L) -> Vec<L>) -> Result<Self> {
        let n = items.len();
        let mut index = BTreeMap::new();
        for (j, (l, _)) in items.iter().enumerate() {
            if index.insert(l.clone(), j).is_some() {
                return Err(Error::parse(format!("duplicate basis label {l:?}")));
            }
        }
        let basis: Vec<L> = items.iter().map(|(l, _)| l.clone()).collect();
        let grading: Vec<i32> = items.iter().map(|&(_, g)| g).collect();
        let mut cols = Vec::with_capacity(n);
        for (j, l) in basis.iter().enumerate() {
            let mut col = BitVec::zeros(n);
            for t in diff(l) {
                let &i = index.get(&t).ok_or_else(|| {
                    Error::parse(format!("differential left the basis at {l:?} -> {t:?}"))
                })?;
                if grading[i] != grading[j] - 1 {
                    return Err(Error::parse(format!(
                        "differential not of degree -1 at {l:?}"
                    )));
                }
                col.flip(i);
            }
            cols.push(col);
        }
        let d = Mat::from_columns(n, &cols);
        Ok(Complex {
            basis,
            grading,
            index,
            d,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[L] {
        &self.basis
    }

    pub fn grading(&self, j: usize) -> i32 {
        self.grading[j]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn d_matrix(&self) -> &Mat {
        &self.d
    }

    pub fn vector_of(&self, labels: &[L]) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.len());
        for l in labels {
            let &i = self
                .index
                .get(l)
                .ok_or_else(|| Error::parse(format!("label {l:?} not in basis")))?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn labels_of(&self, v: &BitVec) -> Vec<L> {
        v.iter_ones().map(|i| self.basis[i].clone()).collect()
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d.mul(&self.d).is_zero()
    }

    pub fn apply_d(&self, v: &BitVec) -> BitVec {
        self.d.mul_vec(v)
    }

    pub fn is_cycle(&self, v: &BitVec) -> bool {
        self.apply_d(v).is_zero()
    }

    /// A chain with the given boundary, if one exists.
    pub fn solve_boundary(&self, target: &BitVec) -> Option<BitVec> {
        self.d.solve(target)
    }

    /// Basis sizes per grading.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.grading {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    fn degree_blocks(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (j, &g) in self.grading.iter().enumerate() {
            out.entry(g).or_default().push(j);
        }
        out
    }

    /// Homology dimensions per grading (gradings with zero dimension are
    /// omitted).
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (g, reps) in self.contraction().homology_by_grading() {
            out.insert(g, reps);
        }
        out
    }

    pub fn total_homology_dim(&self) -> usize {
        self.len() - 2 * self.d.rank()
    }

    /// Homology representatives, each a degree-pure cycle.
    pub fn homology_reps(&self) -> Vec<(i32, Vec<L>)> {
        let c = self.contraction();
        c.hom_grading
            .iter()
            .zip(&c.hom)
            .map(|(&g, v)| (g, self.labels_of(v)))
            .collect()
    }

    /// Strong deformation retract onto homology. Decomposes the complex as
    /// boundaries ⊕ representatives ⊕ a complement mapped isomorphically
    /// onto the boundaries, then reads all three maps off the change of
    /// basis.
    pub fn contraction(&self) -> Contraction {
        let n = self.len();
        // Column-reduce d, remembering a preimage for each image vector.
        let mut image: Vec<(BitVec, BitVec)> = Vec::new();
        for j in 0..n {
            let mut r = self.d.column(j);
            let mut u = BitVec::unit(n, j);
            loop {
                let Some(lead) = r.first_one() else { break };
                match image.iter().find(|(b, _)| b.first_one() == Some(lead)) {
                    Some((b, pu)) => {
                        let (b, pu) = (b.clone(), pu.clone());
                        r.xor_assign(&b);
                        u.xor_assign(&pu);
                    }
                    None => {
                        image.push((r.clone(), u.clone()));
                        break;
                    }
                }
            }
        }
        // Homology representatives: kernel vectors independent of the
        // boundaries, degree block by degree block.
        let mut span = SpanTracker::new(n);
        for (b, _) in &image {
            span.insert(b);
        }
        let mut hom = Vec::new();
        let mut hom_grading = Vec::new();
        for (g, block) in self.degree_blocks() {
            let cols: Vec<BitVec> = block.iter().map(|&j| self.d.column(j)).collect();
            let small = Mat::from_columns(n, &cols);
            for z in small.kernel_basis() {
                // Inflate the block kernel vector to the full index set.
                let mut v = BitVec::zeros(n);
                for i in z.iter_ones() {
                    v.set(block[i], true);
                }
                if span.insert(&v) {
                    hom.push(v);
                    hom_grading.push(g);
                }
            }
        }
        // Change of basis [B | H | A].
        let n_b = image.len();
        let n_h = hom.len();
        let mut cols: Vec<BitVec> = image.iter().map(|(b, _)| b.clone()).collect();
        cols.extend(hom.iter().cloned());
        cols.extend(image.iter().map(|(_, u)| u.clone()));
        debug_assert_eq!(cols.len(), n);
        let m = Mat::from_columns(n, &cols);
        let minv = m.inverse().expect("basis decomposition is invertible");
        // Rows of minv give coordinates; select the H block for p and the
        // B block for h.
        let mut p = Mat::zeros(n_h, n);
        for r in 0..n_h {
            for c in 0..n {
                p.set(r, c, minv.get(n_b + r, c));
            }
        }
        let mut b_coords = Mat::zeros(n_b, n);
        for r in 0..n_b {
            for c in 0..n {
                b_coords.set(r, c, minv.get(r, c));
            }
        }
        let preimages: Vec<BitVec> = image.iter().map(|(_, u)| u.clone()).collect();
        let h = Mat::from_columns(n, &preimages).mul(&b_coords);
        let i = Mat::from_columns(n, &hom);
        Contraction {
            n,
            hom,
            hom_grading,
            p,
            i,
            h,
        }
    }
}

/// The data of a strong deformation retract (i, p, h) of a complex onto
/// its homology: p·i = id, id + i·p = d·h + h·d, and the side conditions
/// h·i = 0, p·h = 0, h·h = 0.
#[derive(Clone, Debug)]
pub struct Contraction {
    n: usize,
    /// Degree-pure representative cycles, one per homology class.
    pub hom: Vec<BitVec>,
    pub hom_grading: Vec<i32>,
    p: Mat,
    i: Mat,
    h: Mat,
}

impl Contraction {
    pub fn rank(&self) -> usize {
        self.hom.len()
    }

    pub fn complex_len(&self) -> usize {
        self.n
    }

    /// Project a chain to homology coordinates.
    pub fn p(&self, v: &BitVec) -> BitVec {
        self.p.mul_vec(v)
    }

    /// Include homology coordinates as a representative chain.
    pub fn i(&self, c: &BitVec) -> BitVec {
        self.i.mul_vec(c)
    }

    /// The homotopy, of degree +1.
    pub fn h(&self, v: &BitVec) -> BitVec {
        self.h.mul_vec(v)
    }

    pub fn homology_by_grading(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.hom_grading {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    /// Check all five contraction identities against the differential.
    pub fn verify(&self, d: &Mat) -> bool {
        let n = self.n;
        let pi = self.p.mul(&self.i);
        if !pi.add(&Mat::identity(self.hom.len())).is_zero() {
            return false;
        }
        let dh_hd = d.mul(&self.h).add(&self.h.mul(d));
        let ip = self.i.mul(&self.p);
        if !dh_hd.add(&ip).add(&Mat::identity(n)).is_zero() {
            return false;
        }
        self.h.mul(&self.i).is_zero()
            && self.p.mul(&self.h).is_zero()
            && self.h.mul(&self.h).is_zero()
            && d.mul(&self.i).is_zero()
            && self.p.mul(d).is_zero()
    }
}
