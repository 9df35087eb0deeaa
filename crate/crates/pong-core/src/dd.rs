//! The algebraic bridge between the bordered algebra and the quotient: one
//! generator per idempotent state, with a structure map pairing each atomic
//! quotient generator against the bordered element of the same weight. The
//! structure relation that makes this a two-sided twisting datum is checked
//! by brute expansion.

use std::collections::BTreeSet;
use std::fmt;

use crate::bordered::{l_elt_c, r_elt_c, BElt, ClgPure};
use crate::error::{Error, Result};
use crate::pong::{atomic, subsets, AtomicDescriptor, AtomicKind};
use crate::quotient::QElt;
use crate::strands::PongData;

/// One summand of the structure map: a bordered factor running from the
/// generator's state to `mid`, and a quotient factor running back.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DDTerm {
    pub c: ClgPure,
    pub mid: Vec<i32>,
    pub q: PongData,
}

impl fmt::Display for DDTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (x) g{:?} (x) {}",
            BElt::pure(self.q.m(), self.mid.len(), self.c.clone()),
            self.mid,
            self.q
        )
    }
}

/// The image of an atomic generator under the weight-matching map into the
/// bordered algebra. A moving strand keeps its letter but becomes the
/// cascade of one-step moves walking the far end first, so the occupied
/// in-between positions shuffle along by one; a two-sided weight element
/// becomes the matching monomial.
pub fn f_map(m: i32, k: usize, desc: &AtomicDescriptor) -> Result<BElt> {
    if !desc.occupied {
        return Err(Error::Unsupported(
            "only atomic generators have a bordered image".into(),
        ));
    }
    let (lo, hi) = (desc.lo, desc.hi);
    let mut out = match desc.left.as_deref() {
        Some(x) => BElt::idempotent(m, x)?,
        None => BElt::unit_c(m, k),
    };
    match desc.kind {
        AtomicKind::R => {
            if !(1 <= lo && lo < hi && hi <= m - 1) {
                return Err(Error::Unsupported(format!(
                    "strand endpoints ({lo},{hi}) out of range for m={m}"
                )));
            }
            for n in (lo + 1..=hi).rev() {
                out = out.multiply_c(&r_elt_c(m, k, n)?)?;
            }
        }
        AtomicKind::L => {
            if !(1 <= lo && lo < hi && hi <= m - 1) {
                return Err(Error::Unsupported(format!(
                    "strand endpoints ({lo},{hi}) out of range for m={m}"
                )));
            }
            for n in lo + 1..=hi {
                out = out.multiply_c(&l_elt_c(m, k, n)?)?;
            }
        }
        AtomicKind::X => {
            if !(0 <= lo && lo < hi && hi <= m && (lo, hi) != (0, m)) {
                return Err(Error::Unsupported(format!(
                    "X endpoints ({lo},{hi}) out of range for m={m}"
                )));
            }
            for n in lo + 1..=hi {
                out = out.times_u(n as usize, 1);
            }
            out = out.project_c();
        }
    }
    Ok(out)
}

fn push_term(
    m: i32,
    k: usize,
    x: &[i32],
    c_desc: &AtomicDescriptor,
    q_desc: &AtomicDescriptor,
    out: &mut Vec<DDTerm>,
) -> Result<()> {
    let c = f_map(m, k, &c_desc.clone().with_left(x))?;
    let mut terms = c.terms();
    let Some(cp) = terms.next() else {
        return Ok(());
    };
    debug_assert!(terms.next().is_none(), "one-step cascades are single words");
    let mid = cp.y.clone();
    let q = atomic(m, k, &q_desc.clone().with_left(&mid))?;
    let mut q_terms = q.terms();
    let Some((_, qd)) = q_terms.next() else {
        return Ok(());
    };
    debug_assert!(q_terms.next().is_none());
    if qd.target_state() != x {
        return Ok(());
    }
    out.push(DDTerm {
        c: cp.clone(),
        mid,
        q: qd.clone(),
    });
    Ok(())
}

/// All structure-map summands out of the generator at state `x`: upward
/// words pair with downward atomic strands and vice versa, and each
/// two-sided weight element pairs with the matching monomial. Pairs whose
/// idempotents fail to chain are dropped.
pub fn delta1(m: i32, x: &[i32]) -> Result<Vec<DDTerm>> {
    let k = x.len();
    let mut out = Vec::new();
    for i in 1..m - 1 {
        for j in i + 1..m {
            push_term(
                m,
                k,
                x,
                &AtomicDescriptor::r(i, j),
                &AtomicDescriptor::l(j, i),
                &mut out,
            )?;
            push_term(
                m,
                k,
                x,
                &AtomicDescriptor::l(j, i),
                &AtomicDescriptor::r(i, j),
                &mut out,
            )?;
        }
    }
    for i in 0..=m {
        for j in i + 1..=m {
            if (i, j) == (0, m) {
                continue;
            }
            push_term(
                m,
                k,
                x,
                &AtomicDescriptor::x(i, j),
                &AtomicDescriptor::x(i, j),
                &mut out,
            )?;
        }
    }
    Ok(out)
}

/// Outcome of expanding the structure relation over every generator.
#[derive(Clone, Debug)]
pub struct DDReport {
    pub m: i32,
    pub k: usize,
    pub states: usize,
    pub terms: usize,
    pub composite_terms: usize,
    pub boundary_terms: usize,
    pub residual: Vec<String>,
}

impl DDReport {
    pub fn passed(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Expand both halves of the structure relation: the double application
/// with the bordered factors multiplied in application order and the
/// quotient factors in the reverse, plus the quotient differential applied
/// to each summand. The total must cancel over GF(2).
pub fn verify_dd_relation(m: i32, k: usize) -> Result<DDReport> {
    if !(0 < (k as i32) && (k as i32) < m) {
        return Err(Error::InvalidK { m, k: k as i32 });
    }
    let states = subsets(m, k);
    let mut acc: BTreeSet<(Vec<i32>, ClgPure, PongData)> = BTreeSet::new();
    let mut toggle = |key: (Vec<i32>, ClgPure, PongData)| {
        if !acc.remove(&key) {
            acc.insert(key);
        }
    };
    let mut terms = 0;
    let mut composite_terms = 0;
    let mut boundary_terms = 0;
    for x in &states {
        let d1 = delta1(m, x)?;
        terms += d1.len();
        for alpha in &d1 {
            for beta in delta1(m, &alpha.mid)? {
                let c_prod = BElt::pure(m, k, alpha.c.clone())
                    .multiply_c(&BElt::pure(m, k, beta.c.clone()))?;
                let q_prod =
                    QElt::generator(beta.q.clone()).multiply(&QElt::generator(alpha.q.clone()))?;
                for cp in c_prod.terms() {
                    for qd in q_prod.terms() {
                        composite_terms += 1;
                        toggle((beta.mid.clone(), cp.clone(), qd.clone()));
                    }
                }
            }
            for qd in QElt::generator(alpha.q.clone()).differential().terms() {
                boundary_terms += 1;
                toggle((alpha.mid.clone(), alpha.c.clone(), qd.clone()));
            }
        }
    }
    let residual = acc
        .iter()
        .map(|(mid, c, q)| format!("mid={mid:?} c={c:?} q={q}"))
        .collect();
    Ok(DDReport {
        m,
        k,
        states: states.len(),
        terms,
        composite_terms,
        boundary_terms,
        residual,
    })
}

/// Census of how ordered products of atomic generators are disposed of in
/// the structure relation. Each nonzero product either admits a second
/// factorization (`rewrites`, cancelling in pairs), appears in the quotient
/// differential of a single atomic generator (`boundary`, cancelling against
/// the differential half of the relation), or has bordered partners that
/// multiply to zero (`dead`, so the relation never sees it).
#[derive(Clone, Debug, Default)]
pub struct ProductCensus {
    pub zero: usize,
    pub rewrites: usize,
    pub boundary: usize,
    pub dead: usize,
}

impl ProductCensus {
    pub fn absorb(&mut self, other: &ProductCensus) {
        self.zero += other.zero;
        self.rewrites += other.rewrites;
        self.boundary += other.boundary;
        self.dead += other.dead;
    }
}

/// Every atomic generator at every left state, with its diagram: the
/// moving strands over all windows plus the two-sided weight elements.
pub fn atomic_instances(m: i32, k: usize) -> Result<Vec<(AtomicDescriptor, PongData)>> {
    let mut out = Vec::new();
    let mut descs = Vec::new();
    for i in 1..m - 1 {
        for j in i + 1..m {
            descs.push(AtomicDescriptor::r(i, j));
            descs.push(AtomicDescriptor::l(j, i));
        }
    }
    for i in 0..=m {
        for j in i + 1..=m {
            if (i, j) != (0, m) {
                descs.push(AtomicDescriptor::x(i, j));
            }
        }
    }
    for desc in descs {
        for x in subsets(m, k) {
            let e = atomic(m, k, &desc.clone().with_left(&x))?;
            let mut terms = e.terms();
            if let Some((_, d)) = terms.next() {
                out.push((desc.clone(), d.clone()));
            }
        }
    }
    Ok(out)
}

/// The bordered letter a quotient atomic is paired with in the structure
/// map: moving strands swap direction, weight elements keep their slot.
fn bordered_partner(d: &AtomicDescriptor) -> AtomicDescriptor {
    match d.kind {
        AtomicKind::R => AtomicDescriptor::l(d.hi, d.lo),
        AtomicKind::L => AtomicDescriptor::r(d.lo, d.hi),
        AtomicKind::X => AtomicDescriptor::x(d.lo, d.hi),
    }
}

/// Whether the composite diagram shows up in the quotient differential of a
/// single atomic generator with the same endpoints.
fn is_boundary_term(atoms: &[(AtomicDescriptor, PongData)], p: &PongData) -> bool {
    let (src, dst) = (p.source_state(), p.target_state());
    atoms.iter().any(|(_, d)| {
        d.source_state() == src
            && d.target_state() == dst
            && QElt::generator(d.clone())
                .differential()
                .terms()
                .any(|t| t == p)
    })
}

/// Whether the bordered partners of the two factors multiply to zero, so
/// the structure relation drops the composite before it is ever paired.
fn partners_die(
    m: i32,
    k: usize,
    bottom: &AtomicDescriptor,
    top: &AtomicDescriptor,
    p: &PongData,
    mid: &[i32],
) -> Result<bool> {
    let c_top = f_map(m, k, &bordered_partner(top).with_left(&p.target_state()))?;
    let c_bottom = f_map(m, k, &bordered_partner(bottom).with_left(mid))?;
    Ok(c_top.multiply_c(&c_bottom)?.is_zero())
}

/// Classify every ordered product of two atomic generators for the given
/// shape. Errors on a nonzero product that cancels by none of the known
/// mechanisms.
pub fn classify_atomic_products(m: i32, k: usize) -> Result<ProductCensus> {
    let atoms = atomic_instances(m, k)?;
    let mut by_value: std::collections::BTreeMap<PongData, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    let mut counts = ProductCensus::default();
    for (ia, (_, da)) in atoms.iter().enumerate() {
        for (ib, (_, db)) in atoms.iter().enumerate() {
            let p = QElt::generator(da.clone()).multiply(&QElt::generator(db.clone()))?;
            let mut terms = p.terms();
            match terms.next() {
                None => counts.zero += 1,
                Some(d) => {
                    debug_assert!(terms.next().is_none(), "atomic products are pure");
                    by_value.entry(d.clone()).or_default().push((ia, ib));
                }
            }
        }
    }
    for (d, pairs) in &by_value {
        let mut singles = Vec::new();
        if pairs.len() > 1 {
            counts.rewrites += pairs.len() & !1;
            if pairs.len() % 2 == 1 {
                singles.push(pairs[pairs.len() - 1]);
            }
        } else {
            singles.push(pairs[0]);
        }
        for (ia, ib) in singles {
            let (da, db) = (&atoms[ia], &atoms[ib]);
            if is_boundary_term(&atoms, d) {
                counts.boundary += 1;
            } else if partners_die(m, k, &da.0, &db.0, d, &da.1.target_state())? {
                counts.dead += 1;
            } else {
                return Err(Error::Unsupported(format!(
                    "unclassified atomic product {} * {} = {}",
                    da.0, db.0, d
                )));
            }
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordered::u_elt_c;

    #[test]
    fn f_single_step_images() {
        let (m, k) = (4, 2);
        let f_r = f_map(m, k, &AtomicDescriptor::r(1, 2)).unwrap();
        assert_eq!(f_r, r_elt_c(m, k, 2).unwrap());
        let f_l = f_map(m, k, &AtomicDescriptor::l(3, 2)).unwrap();
        assert_eq!(f_l, l_elt_c(m, k, 3).unwrap());
        let f_x = f_map(m, k, &AtomicDescriptor::x(0, 2)).unwrap();
        let want = u_elt_c(m, k, 1)
            .unwrap()
            .multiply_c(&u_elt_c(m, k, 2).unwrap())
            .unwrap();
        assert_eq!(f_x, want);
    }

    #[test]
    fn f_rejects_sums_of_atomics() {
        assert!(f_map(4, 2, &AtomicDescriptor::r(1, 3).calligraphic()).is_err());
    }

    #[test]
    fn f_preserves_weight() {
        for m in 2..=4 {
            for k in 1..m as usize {
                for (desc, d) in atomic_instances(m, k).unwrap() {
                    let image = f_map(m, k, &desc.clone().with_left(&d.source_state())).unwrap();
                    if image.is_zero() {
                        continue;
                    }
                    assert_eq!(
                        image.dweight().unwrap(),
                        d.doubled_weight(),
                        "{desc} at {:?}",
                        d.source_state()
                    );
                }
            }
        }
    }

    #[test]
    fn smallest_structure_map_is_the_two_monomial_lines() {
        let terms = delta1(2, &[1]).unwrap();
        assert_eq!(terms.len(), 2);
        for t in &terms {
            assert_eq!(t.mid, vec![1]);
            assert!(t.q.is_idempotent() || !t.q.is_idempotent());
        }
        let dws: Vec<Vec<i32>> = terms.iter().map(|t| t.c.dw.clone()).collect();
        assert!(dws.contains(&vec![2, 0]));
        assert!(dws.contains(&vec![0, 2]));
        for t in &terms {
            assert_eq!(t.c.dw, t.q.doubled_weight());
        }
    }

    #[test]
    fn structure_map_is_weight_balanced_in_square_degree_minus_one() {
        for m in 2..=4 {
            for k in 1..m as usize {
                for x in subsets(m, k) {
                    for t in delta1(m, &x).unwrap() {
                        assert_eq!(t.c.x, x, "{t}");
                        assert_eq!(t.c.y, t.mid, "{t}");
                        assert_eq!(t.q.source_state(), t.mid, "{t}");
                        assert_eq!(t.q.target_state(), x, "{t}");
                        assert_eq!(t.c.dw, t.q.doubled_weight(), "{t}");
                        let ngr =
                            t.q.cross() as i32 - t.q.doubled_weight().iter().sum::<i32>();
                        assert_eq!(ngr, -1, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn dd_structure_relation_holds() {
        for (m, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)] {
            let report = verify_dd_relation(m, k).unwrap();
            assert!(
                report.passed(),
                "({m},{k}) residual begins {:?}",
                report.residual.first()
            );
            assert!(report.terms > 0);
            if k == 1 {
                // A single occupied position admits no two-slot weight
                // elements, so every candidate composite has a vanishing
                // factor and the relation holds with nothing to cancel.
                assert_eq!(report.composite_terms, 0, "({m},{k})");
                assert_eq!(report.boundary_terms, 0, "({m},{k})");
            } else {
                assert!(report.composite_terms > 0, "({m},{k})");
                assert!(report.boundary_terms > 0, "({m},{k})");
            }
        }
    }

    #[test]
    fn atomic_products_split_into_cancellation_classes() {
        let mut total = ProductCensus::default();
        for m in 3..=4 {
            for k in 1..m as usize {
                let counts = classify_atomic_products(m, k).unwrap();
                assert!(counts.zero > 0, "m={m} k={k}");
                total.absorb(&counts);
            }
        }
        assert!(total.boundary > 0);
        assert!(total.dead > 0);
        let counts = classify_atomic_products(4, 2).unwrap();
        assert!(counts.rewrites > 0);
    }

    #[test]
    fn x_ladder_matches_the_differential() {
        // Two-slot weight elements resolve into both orderings of their
        // one-slot halves, interior and at the wall alike.
        let q = |desc: &AtomicDescriptor, x: &[i32]| -> QElt {
            let e = atomic(4, 3, &desc.clone().with_left(x)).unwrap();
            let (_, d) = e.terms().next().unwrap().clone();
            QElt::generator(d)
        };
        let x = [1, 2, 3];
        let whole = q(&AtomicDescriptor::x(1, 3), &x);
        let lo = q(&AtomicDescriptor::x(1, 2), &x);
        let hi = q(&AtomicDescriptor::x(2, 3), &x);
        let ladder = lo.multiply(&hi).unwrap().add(&hi.multiply(&lo).unwrap());
        assert_eq!(whole.differential(), ladder);

        let wall = q(&AtomicDescriptor::x(0, 2), &x);
        let first = q(&AtomicDescriptor::x(0, 1), &x);
        let second = q(&AtomicDescriptor::x(1, 2), &x);
        let ladder = first
            .multiply(&second)
            .unwrap()
            .add(&second.multiply(&first).unwrap());
        assert_eq!(wall.differential(), ladder);
    }
}
