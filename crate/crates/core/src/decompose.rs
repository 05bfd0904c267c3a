//! Similarity to a zero-diagonal matrix and splitting into two nilpotents.
//!
//! Every construction returns a certificate that is checked exactly before
//! it leaves this module.

use num_traits::Zero;

use crate::classify::{is_sum_of_two_nilpotents, Classification, TypeIIData};
use crate::conjugacy::{conjugator, translate_conjugate};
use crate::error::{Error, Result};
use crate::matrix::{vectors_rank, QMatrix, QVector, SimilarityWitness};
use crate::quaternion::{Algebra, Quaternion};
use crate::ratmat::RatMatrix;
use crate::rational;
use crate::search::{height_ordered, SearchConfig};
use crate::spectral::{eigenvectors_for, unispectral_diagonalizable};

/// `M = N1 + N2` with both summands nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNilpotentDecomposition {
    pub n1: QMatrix,
    pub n2: QMatrix,
    pub witness: Option<SimilarityWitness>,
    pub diag_zero_form: Option<QMatrix>,
}

impl TwoNilpotentDecomposition {
    /// The sum and nilpotency checks, plus the witness when present.
    pub fn verify(&self, m: &QMatrix) -> bool {
        if !verify_decomposition(m, &self.n1, &self.n2) {
            return false;
        }
        match (&self.witness, &self.diag_zero_form) {
            (None, None) => true,
            (Some(w), Some(d)) => {
                w.verify() && w.conjugate(m).ok().as_ref() == Some(d) && d.has_zero_diagonal()
            }
            _ => false,
        }
    }
}

/// Splitting of `[[a, delta], [1, b]]` into two square-zero matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion2x2Certificate {
    pub delta: Quaternion,
    pub q: Quaternion,
    pub g: Quaternion,
    pub s: Quaternion,
    /// `Diag(1, g)`.
    pub d: QMatrix,
    /// `[[1, q], [0, 1]]`.
    pub p: QMatrix,
    pub summands: [QMatrix; 2],
}

impl Completion2x2Certificate {
    pub fn matrix(&self) -> QMatrix {
        let alg = self.delta.algebra();
        let a = &self.s - &self.q;
        let b = -&(&self.g.inv().expect("g invertible") * &(&self.s * &self.g)) + &self.q;
        QMatrix::from_rows(alg, vec![vec![a, self.delta.clone()], vec![alg.one(), b]]).expect("2x2")
    }

    pub fn verify(&self, a: &Quaternion, b: &Quaternion) -> bool {
        let alg = a.algebra();
        let Ok(target) = QMatrix::from_rows(alg, vec![vec![a.clone(), self.delta.clone()], vec![alg.one(), b.clone()]])
        else {
            return false;
        };
        let [s1, s2] = &self.summands;
        let conj_ok = self
            .g
            .inv()
            .is_ok_and(|gi| &(&self.g * &(&self.q - b)) * &gi == self.s);
        &self.s - &self.q == *a
            && conj_ok
            && (s1 * s1).is_zero()
            && (s2 * s2).is_zero()
            && s1 + s2 == target
    }
}

/// Basis change over the rationals, `P A P^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatWitness {
    pub p: RatMatrix,
    pub p_inv: RatMatrix,
}

impl RatWitness {
    pub fn identity(n: usize) -> Self {
        Self {
            p: RatMatrix::identity(n),
            p_inv: RatMatrix::identity(n),
        }
    }

    pub fn conjugate(&self, a: &RatMatrix) -> RatMatrix {
        self.p.mul(a).mul(&self.p_inv)
    }

    pub fn verify(&self) -> bool {
        let n = self.p.rows();
        self.p.mul(&self.p_inv) == RatMatrix::identity(n) && self.p_inv.mul(&self.p) == RatMatrix::identity(n)
    }

    pub fn lift(&self, alg: &Algebra) -> SimilarityWitness {
        SimilarityWitness {
            p: QMatrix::from_rational(alg, &self.p),
            p_inv: QMatrix::from_rational(alg, &self.p_inv),
        }
    }
}

fn rat_has_zero_diagonal(a: &RatMatrix) -> bool {
    (0..a.rows()).all(|i| a[(i, i)].is_zero())
}

fn rat_unit(n: usize, i: usize) -> Vec<rational::Rational> {
    let mut v = vec![rational::Rational::zero(); n];
    v[i] = rational::int(1);
    v
}

/// Extends `vs` to a basis with standard vectors.
fn rat_complete(mut vs: Vec<Vec<rational::Rational>>, n: usize) -> Vec<Vec<rational::Rational>> {
    for i in 0..n {
        if vs.len() == n {
            break;
        }
        vs.push(rat_unit(n, i));
        if RatMatrix::from_columns(&vs).rank() < vs.len() {
            vs.pop();
        }
    }
    vs
}

/// Zero-diagonal similarity for a rational trace-zero matrix that is zero
/// or nonscalar.
pub fn field_diag_zero(a: &RatMatrix) -> Result<RatWitness> {
    if !a.is_square() {
        return Err(Error::Dimension("field_diag_zero needs a square matrix".into()));
    }
    if !a.trace().is_zero() {
        return Err(Error::Precondition("field_diag_zero needs trace 0".into()));
    }
    let n = a.rows();
    if rat_has_zero_diagonal(a) {
        return Ok(RatWitness::identity(n));
    }
    if a.is_scalar() {
        return Err(Error::Precondition("field_diag_zero needs a nonscalar matrix".into()));
    }
    let off_diag = |j: usize| (0..n).any(|i| i != j && !a[(i, j)].is_zero());
    let x = match (0..n).find(|&j| off_diag(j)) {
        Some(j) => rat_unit(n, j),
        None => {
            let (i, j) = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a[(i, i)] != a[(j, j)])
                .expect("nonscalar diagonal matrix");
            let mut v = rat_unit(n, i);
            v[j] = rational::int(1);
            v
        }
    };
    let ax = a.mul_vec(&x);
    let basis = rat_complete(vec![x, ax], n);
    let p_inv = RatMatrix::from_columns(&basis);
    let p = p_inv.inverse().expect("basis is independent");
    let step = RatWitness { p, p_inv };
    let b = step.conjugate(a);
    let tail = b.block(1, n - 1);
    let inner = field_diag_zero(&tail)?;
    let embed = |m: &RatMatrix| {
        let mut out = RatMatrix::identity(n);
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                out[(i + 1, j + 1)] = m[(i, j)].clone();
            }
        }
        out
    };
    let w = RatWitness {
        p: embed(&inner.p).mul(&step.p),
        p_inv: step.p_inv.mul(&embed(&inner.p_inv)),
    };
    if !w.verify() || !rat_has_zero_diagonal(&w.conjugate(a)) {
        return Err(Error::Discrepancy("rational zero-diagonal witness failed verification".into()));
    }
    Ok(w)
}

fn mat2(alg: &Algebra, rows: [[Quaternion; 2]; 2]) -> QMatrix {
    QMatrix::from_rows(alg, rows.into_iter().map(|r| r.to_vec()).collect()).expect("2x2")
}

/// Two square-zero summands of `[[a, delta], [1, b]]` for a suitable `delta`,
/// assuming `t(a + b) = 0`.
pub fn completion_2x2(a: &Quaternion, b: &Quaternion) -> Result<Completion2x2Certificate> {
    let alg = a.algebra();
    if alg != b.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if !(a + b).trace().is_zero() {
        return Err(Error::Precondition("completion_2x2 needs t(a + b) = 0".into()));
    }
    let neg_b = -b;
    let (q, g) = if *a == neg_b {
        (alg.zero(), alg.one())
    } else {
        let q = translate_conjugate(a, &neg_b)?;
        let g = conjugator(&(a + &q), &(&neg_b + &q))?;
        (q, g)
    };
    let s = a + &q;
    let g_inv = g.inv()?;
    let z = alg.zero();
    let one = alg.one();
    let dp = mat2(alg, [[one.clone(), q.clone()], [z.clone(), g.clone()]]);
    let dp_inv = mat2(alg, [[one.clone(), -&(&q * &g_inv)], [z.clone(), g_inv.clone()]]);
    let base = mat2(alg, [[a.clone(), z.clone()], [one.clone(), b.clone()]]);
    let c = (&(&dp * &base) * &dp_inv)[(0, 1)].clone();
    let delta = &(&s.square() - &c) * &g;
    let first = mat2(alg, [[s.clone(), s.square()], [-&one, -&s]]);
    let second = mat2(alg, [[z.clone(), z.clone()], [&g + &one, z.clone()]]);
    let summands = [&(&dp_inv * &first) * &dp, &(&dp_inv * &second) * &dp];
    let cert = Completion2x2Certificate {
        delta,
        q: q.clone(),
        g: g.clone(),
        s,
        d: QMatrix::diag(alg, &[one.clone(), g]),
        p: mat2(alg, [[one.clone(), q], [z, one]]),
        summands,
    };
    if !cert.verify(a, b) {
        return Err(Error::Discrepancy("2x2 completion failed verification".into()));
    }
    Ok(cert)
}

/// Zero-diagonal basis for a 2x2 sum of two square-zero matrices: a kernel
/// vector of the second, then a kernel vector of the first.
fn zero_diag_from_square_zero_pair(n1: &QMatrix, n2: &QMatrix) -> Result<SimilarityWitness> {
    let alg = n1.algebra();
    let x = n2
        .kernel_basis()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Discrepancy("square-zero summand is invertible".into()))?;
    let y = n1
        .kernel_basis()
        .into_iter()
        .chain((0..2).map(|i| QVector::unit(alg, 2, i)))
        .find(|y| vectors_rank(alg, &[x.clone(), y.clone()]) == 2)
        .expect("some vector completes a basis");
    SimilarityWitness::from_basis(alg, &[x, y]).ok_or_else(|| Error::Discrepancy("singular 2x2 basis".into()))
}

/// Standard vectors, then small integer combinations in height order.
fn candidate_vectors(alg: &Algebra, n: usize, cfg: &SearchConfig) -> impl Iterator<Item = QVector> {
    let (alg1, alg2) = (alg.clone(), alg.clone());
    (0..n)
        .map(move |i| QVector::unit(&alg1, n, i))
        .chain(height_ordered(4 * n, cfg.vector_height).map(move |v| {
            let coords: Vec<_> = v.into_iter().map(rational::int).collect();
            QVector::from_coords(&alg2, &coords)
        }))
        .take(cfg.vector_budget)
}

/// Extends independent `vs` to a basis with standard vectors.
fn complete_basis(alg: &Algebra, mut vs: Vec<QVector>, n: usize) -> Vec<QVector> {
    for i in 0..n {
        if vs.len() == n {
            break;
        }
        vs.push(QVector::unit(alg, n, i));
        if vectors_rank(alg, &vs) < vs.len() {
            vs.pop();
        }
    }
    vs
}

fn basis_witness(alg: &Algebra, basis: &[QVector]) -> Result<SimilarityWitness> {
    SimilarityWitness::from_basis(alg, basis).ok_or_else(|| Error::Discrepancy("chosen basis is dependent".into()))
}

fn diag_zero_2x2(m: &QMatrix, cfg: &SearchConfig) -> Result<SimilarityWitness> {
    let alg = m.algebra();
    let square = m * m;
    let cert = unispectral_diagonalizable(&square, cfg)?
        .ok_or_else(|| Error::Precondition("square is not unispectral and diagonalisable".into()))?;
    let eig = eigenvectors_for(&square, &cert.eigenvalue).solution_basis;
    let dim = eig.len();
    let combos = height_ordered(dim, cfg.vector_height).map(|v| {
        v.iter().zip(&eig).fold(QVector::zeros(alg, 2), |acc, (&k, e)| {
            acc.add(&e.scale_right(&alg.scalar(rational::int(k))))
        })
    });
    let candidates = (0..2)
        .map(|j| cert.witness.p_inv.column(j))
        .chain(eig.iter().cloned())
        .chain(combos)
        .take(cfg.vector_budget);
    for x in candidates {
        let mx = m.apply(&x)?;
        if vectors_rank(alg, &[x.clone(), mx.clone()]) == 2 {
            return basis_witness(alg, &[x, mx]);
        }
    }
    Err(Error::BudgetExhausted("no eigenvector x of M^2 with (x, Mx) independent".into()))
}

fn diag_zero_type_ii(m: &QMatrix, d: &TypeIIData) -> Result<SimilarityWitness> {
    let alg = m.algebra();
    let n = m.rows();
    let mu = d
        .image_eigenvalue
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::Precondition("type II path needs zero supertrace".into()))?;
    let a = &d.rank_one;
    let c = d.column.clone();
    let kernel = a.kernel_basis();
    let basis = if !mu.is_zero() {
        let mut b = vec![c];
        b.extend(kernel);
        b
    } else {
        let y = a
            .solve_right(&c)
            .ok_or_else(|| Error::Discrepancy("image vector has no preimage".into()))?;
        let mut b = vec![c, y];
        for k in kernel {
            if b.len() == n {
                break;
            }
            b.push(k);
            if vectors_rank(alg, &b) < b.len() {
                b.pop();
            }
        }
        b
    };
    let step = basis_witness(alg, &basis)?;
    let rational = step
        .conjugate(m)?
        .to_rational()
        .ok_or_else(|| Error::Discrepancy("type II normal form is not rational".into()))?;
    let inner = field_diag_zero(&rational)?;
    Ok(step.then(&inner.lift(alg)))
}

fn diag_zero_3x3(m: &QMatrix, cfg: &SearchConfig) -> Result<SimilarityWitness> {
    let alg = m.algebra();
    let mut found = None;
    for x in candidate_vectors(alg, 3, cfg) {
        let mx = m.apply(&x)?;
        let mmx = m.apply(&mx)?;
        if vectors_rank(alg, &[x.clone(), mx.clone(), mmx.clone()]) == 3 {
            found = Some((x, mx, mmx));
            break;
        }
    }
    let (x, mx, mmx) = found.ok_or_else(|| Error::BudgetExhausted("no cyclic vector for a 3x3 matrix".into()))?;
    let companion = basis_witness(alg, &[x.clone(), mx.clone(), mmx.clone()])?.conjugate(m)?;
    let (a, b) = (companion[(2, 2)].clone(), companion[(1, 2)].clone());
    let cert = completion_2x2(&alg.zero(), &a)?;
    let delta = &cert.delta - &b;
    let third = mmx.add(&x.scale_right(&delta));
    let step = basis_witness(alg, &[x, mx, third])?;
    let shaped = step.conjugate(m)?;
    let block = shaped.submatrix(1, 1, 2, 2);
    if block != &cert.summands[0] + &cert.summands[1] {
        return Err(Error::Discrepancy("3x3 lower block differs from the completed matrix".into()));
    }
    let inner = zero_diag_from_square_zero_pair(&cert.summands[0], &cert.summands[1])?;
    Ok(step.then(&inner.embed_lower_right(3)))
}

fn perturbation(alg: &Algebra, n: usize, coords: &[i64]) -> (SimilarityWitness, Vec<Quaternion>) {
    let qs: Vec<Quaternion> = coords
        .chunks(4)
        .map(|c| alg.from_ints([c[0], c[1], c[2], c[3]]))
        .collect();
    let mut e = QMatrix::identity(alg, n);
    let mut e_inv = QMatrix::identity(alg, n);
    for (k, q) in qs.iter().enumerate() {
        e[(0, k + 2)] = q.clone();
        e_inv[(0, k + 2)] = -q;
    }
    (SimilarityWitness { p: e_inv, p_inv: e }, qs)
}

fn diag_zero_inductive(m: &QMatrix, cfg: &SearchConfig) -> Result<SimilarityWitness> {
    let alg = m.algebra();
    let n = m.rows();
    let mut x_mx = None;
    for x in candidate_vectors(alg, n, cfg) {
        let mx = m.apply(&x)?;
        if vectors_rank(alg, &[x.clone(), mx.clone()]) == 2 {
            x_mx = Some((x, mx));
            break;
        }
    }
    let (x, mx) = x_mx.ok_or_else(|| Error::BudgetExhausted("no vector x with Mx outside xQ".into()))?;
    let basis = complete_basis(alg, vec![x, mx], n);
    let step = basis_witness(alg, &basis)?;
    let shaped = step.conjugate(m)?;
    let lists = std::iter::once(vec![0; 4 * (n - 2)]).chain(height_ordered(4 * (n - 2), 2));
    for coords in lists.take(cfg.perturbation_budget) {
        let (pert, _) = perturbation(alg, n, &coords);
        let moved = pert.conjugate(&shaped)?;
        let block = moved.submatrix(1, 1, n - 1, n - 1);
        let decision = is_sum_of_two_nilpotents(&block, cfg)?;
        if !decision.answer {
            continue;
        }
        let inner = diag_zero_decided(&block, &decision.classification, cfg)?;
        return Ok(step.then(&pert).then(&inner.embed_lower_right(n)));
    }
    Err(Error::BudgetExhausted(format!(
        "no perturbation within {} lists makes the {}x{} block decomposable",
        cfg.perturbation_budget,
        n - 1,
        n - 1
    )))
}

fn diag_zero_decided(m: &QMatrix, class: &Classification, cfg: &SearchConfig) -> Result<SimilarityWitness> {
    let alg = m.algebra();
    let n = m.rows();
    let w = if m.is_zero() || (n != 2 && m.has_zero_diagonal()) {
        SimilarityWitness::identity(alg, n)
    } else if n == 2 {
        diag_zero_2x2(m, cfg)?
    } else if let Classification::TypeII(d) = class {
        diag_zero_type_ii(m, d)?
    } else if n == 3 {
        diag_zero_3x3(m, cfg)?
    } else {
        diag_zero_inductive(m, cfg)?
    };
    if !w.verify() || !w.conjugate(m)?.has_zero_diagonal() {
        return Err(Error::Discrepancy(format!("{n}x{n} zero-diagonal witness failed verification")));
    }
    Ok(w)
}

/// Witness `P` with `P M P^-1` of zero diagonal, for decomposable `M`.
pub fn diag_zero_form(m: &QMatrix, cfg: &SearchConfig) -> Result<SimilarityWitness> {
    let decision = is_sum_of_two_nilpotents(m, cfg)?;
    if !decision.answer {
        return Err(Error::Precondition(format!(
            "matrix is not a sum of two nilpotents ({})",
            decision.reason
        )));
    }
    diag_zero_decided(m, &decision.classification, cfg)
}

pub fn decompose_two_nilpotents(m: &QMatrix, cfg: &SearchConfig) -> Result<TwoNilpotentDecomposition> {
    let w = diag_zero_form(m, cfg)?;
    let d = w.conjugate(m)?;
    let (upper, lower) = d.strict_split()?;
    let out = TwoNilpotentDecomposition {
        n1: w.pull_back(&upper)?,
        n2: w.pull_back(&lower)?,
        witness: Some(w),
        diag_zero_form: Some(d),
    };
    if !out.verify(m) {
        return Err(Error::Discrepancy("decomposition failed verification".into()));
    }
    Ok(out)
}

/// `N1 + N2 = M` with `N1`, `N2` nilpotent, exactly.
pub fn verify_decomposition(m: &QMatrix, n1: &QMatrix, n2: &QMatrix) -> bool {
    let shape = (m.rows(), m.cols());
    m.is_square()
        && (n1.rows(), n1.cols()) == shape
        && (n2.rows(), n2.cols()) == shape
        && n1.try_add(n2).ok().as_ref() == Some(m)
        && n1.is_nilpotent()
        && n2.is_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn h() -> Algebra {
        Algebra::hamilton()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn field_examples() {
        let a = RatMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let w = field_diag_zero(&a).unwrap();
        assert_eq!(w.p_inv, RatMatrix::from_ints(&[&[1, 1], &[1, -1]]));
        assert_eq!(w.conjugate(&a), RatMatrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(field_diag_zero(&RatMatrix::zeros(3, 3)).unwrap(), RatWitness::identity(3));
        let a = RatMatrix::from_ints(&[&[2, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let w = field_diag_zero(&a).unwrap();
        assert!(w.verify() && rat_has_zero_diagonal(&w.conjugate(&a)));
        let s = RatMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        assert!(field_diag_zero(&s).is_err());
    }

    #[test]
    fn completion_worked_instance() {
        let alg = h();
        let cert = completion_2x2(&alg.i(), &-alg.i()).unwrap();
        assert_eq!(cert.q, alg.zero());
        assert_eq!(cert.g, alg.one());
        assert_eq!(cert.s, alg.i());
        assert_eq!(cert.delta, alg.scalar(int(-1)));
        let m1 = 
            mat2(&alg, [[alg.i(), alg.scalar(int(-1))], [alg.scalar(int(-1)), -alg.i()]]);
        let m2 = mat2(&alg, [[alg.zero(), alg.zero()], [alg.scalar(int(2)), alg.zero()]]);
        assert_eq!(cert.summands, [m1, m2]);
    }

    #[test]
    fn completion_other_instances() {
        let alg = h();
        let cert = completion_2x2(&alg.zero(), &alg.zero()).unwrap();
        assert!(cert.verify(&alg.zero(), &alg.zero()));
        let cert = completion_2x2(&alg.zero(), &alg.i()).unwrap();
        assert!(cert.verify(&alg.zero(), &alg.i()));
        let a = alg.quaternion([frac(1, 2), int(1), int(0), int(3)]);
        let b = alg.quaternion([frac(-1, 2), int(2), int(-1), int(0)]);
        assert!(completion_2x2(&a, &b).unwrap().verify(&a, &b));
        assert!(completion_2x2(&alg.one(), &alg.zero()).is_err());
    }

    #[test]
    fn two_by_two_example() {
        let alg = h();
        let m = mat2(&alg, [[alg.zero(), alg.i()], [alg.i(), alg.zero()]]);
        let w = diag_zero_form(&m, &cfg()).unwrap();
        assert_eq!(w.p_inv, QMatrix::diag(&alg, &[alg.one(), alg.i()]));
        assert_eq!(
            w.conjugate(&m).unwrap(),
            mat2(&alg, [[alg.zero(), alg.scalar(int(-1))], [alg.one(), alg.zero()]])
        );
        let d = decompose_two_nilpotents(&m, &cfg()).unwrap();
        assert_eq!(d.n1, mat2(&alg, [[alg.zero(), alg.i()], [alg.zero(), alg.zero()]]));
        assert_eq!(d.n2, mat2(&alg, [[alg.zero(), alg.zero()], [alg.i(), alg.zero()]]));
    }

    #[test]
    fn zero_and_rejected() {
        let alg = h();
        let z = QMatrix::zeros(&alg, 3, 3);
        let d = decompose_two_nilpotents(&z, &cfg()).unwrap();
        assert!(d.n1.is_zero() && d.n2.is_zero());
        assert_eq!(d.witness.unwrap(), SimilarityWitness::identity(&alg, 3));
        let m = QMatrix::diag(&alg, &[alg.i(), alg.zero(), alg.zero()]);
        assert!(matches!(diag_zero_form(&m, &cfg()), Err(Error::Precondition(_))));
    }

    #[test]
    fn scalar_quaternion_four_by_four() {
        let alg = h();
        let m = QMatrix::scalar(&alg, 4, &alg.i());
        let d = decompose_two_nilpotents(&m, &cfg()).unwrap();
        assert!(verify_decomposition(&m, &d.n1, &d.n2));
    }

    #[test]
    fn three_by_three_generic() {
        let alg = h();
        let m = QMatrix::from_rows(
            &alg,
            vec![
                vec![alg.zero(), alg.i(), alg.zero()],
                vec![alg.zero(), alg.zero(), alg.j()],
                vec![alg.one(), alg.zero(), alg.zero()],
            ],
        )
        .unwrap();
        let d = decompose_two_nilpotents(&m, &cfg()).unwrap();
        assert!(d.verify(&m));
        let m = QMatrix::from_rows(
            &alg,
            vec![
                vec![alg.i(), alg.one(), alg.zero()],
                vec![alg.zero(), alg.j(), alg.one()],
                vec![alg.k(), alg.zero(), -&(&alg.i() + &alg.j())],
            ],
        )
        .unwrap();
        assert!(decompose_two_nilpotents(&m, &cfg()).unwrap().verify(&m));
    }

    #[test]
    fn type_ii_paths() {
        let alg = h();
        // lambda = 1, rank-one part with eigenvalue -3 on its image
        let c = QVector(vec![alg.one(), alg.i(), alg.j()]);
        let r = vec![alg.scalar(int(-3)), alg.zero(), alg.zero()];
        let m = &QMatrix::identity(&alg, 3) + &crate::matrix::outer_product(&alg, &c, &r);
        assert!(decompose_two_nilpotents(&m, &cfg()).unwrap().verify(&m));
        // nilpotent rank one
        let r = vec![alg.zero(), alg.k(), alg.zero()];
        let m = crate::matrix::outer_product(&alg, &QVector(vec![alg.one(), alg.zero(), alg.i()]), &r);
        assert!(decompose_two_nilpotents(&m, &cfg()).unwrap().verify(&m));
    }

    #[test]
    fn verify_rejects() {
        let alg = h();
        let m = mat2(&alg, [[alg.i(), alg.zero()], [alg.zero(), -alg.i()]]);
        assert!(!verify_decomposition(&m, &m, &QMatrix::zeros(&alg, 2, 2)));
        let d = decompose_two_nilpotents(&m, &cfg()).unwrap();
        assert!(verify_decomposition(&m, &d.n1, &d.n2));
        assert!(!verify_decomposition(&m, &d.n1, &d.n1));
    }
}
