//! Eigenvalues and eigenvectors over the quaternions, central quadratic
//! relations and certificates of unispectral diagonalisability.
//!
//! An eigenvector of `M` for `q` is a nonzero `X` with `M X = X q`. For a
//! fixed `q` these form a rational subspace, computed here from the 4n x 4n
//! rational matrix of `X -> M X - X q`.

use num_traits::Zero;

use crate::conjugacy::{has_pure_sqrt, sqrt_pure, sylvester_solve};
use crate::error::{Error, Result};
use crate::matrix::{QMatrix, QVector, SimilarityWitness};
use crate::quaternion::Quaternion;
use crate::ratmat::RatMatrix;
use crate::rational::{self, Rational};
use crate::search::SearchConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSolution {
    pub eigenvalue: Quaternion,
    /// Rational basis of `{X : M X = X q}` in reduced echelon form.
    pub solution_basis: Vec<QVector>,
}

/// `M^2 = t M - N I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub t: Rational,
    pub n: Rational,
}

/// `P M P^-1 = Diag(q, ..., q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalizationCertificate {
    pub eigenvalue: Quaternion,
    pub witness: SimilarityWitness,
}

impl DiagonalizationCertificate {
    pub fn verify(&self, m: &QMatrix) -> bool {
        self.witness.verify()
            && self.witness.conjugate(m).ok()
                == Some(QMatrix::scalar(m.algebra(), m.rows(), &self.eigenvalue))
    }
}

/// Rational matrix of `X -> M X - X q` on `Q^n`.
fn eigen_system(m: &QMatrix, q: &Quaternion) -> RatMatrix {
    let mut sys = m.to_real();
    let r = q.right_matrix();
    for blk in 0..m.rows() {
        for a in 0..4 {
            for b in 0..4 {
                sys[(4 * blk + a, 4 * blk + b)] -= &r[(a, b)];
            }
        }
    }
    sys
}

pub fn eigenvectors_for(m: &QMatrix, q: &Quaternion) -> EigenSolution {
    assert!(m.is_square());
    let alg = m.algebra();
    let kernel = eigen_system(m, q).kernel();
    let solution_basis = if kernel.is_empty() {
        Vec::new()
    } else {
        let (echelon, pivots) = RatMatrix::from_rows(kernel).rref();
        (0..pivots.len())
            .map(|r| {
                let row: Vec<Rational> = (0..echelon.cols()).map(|c| echelon[(r, c)].clone()).collect();
                QVector::from_coords(alg, &row)
            })
            .collect()
    };
    EigenSolution {
        eigenvalue: q.clone(),
        solution_basis,
    }
}

/// Eigenvector for `t` of the block upper-triangular `[[S, X0], [0, t]]`.
pub fn triangular_eigenvector(s: &QMatrix, x0: &QVector, t: &Quaternion) -> Result<QVector> {
    let alg = t.algebra();
    let k = s.rows();
    if k == 0 {
        return Ok(QVector(vec![alg.one()]));
    }
    if let Some(v) = eigenvectors_for(s, t).solution_basis.into_iter().next() {
        let mut y = v.0;
        y.push(alg.zero());
        return Ok(QVector(y));
    }
    let rhs: Vec<Rational> = x0.coords().iter().map(|c| -c).collect();
    let sol = eigen_system(s, t)
        .solve(&rhs)
        .ok_or_else(|| Error::Discrepancy("triangular eigenvector system is inconsistent".into()))?;
    let mut y = QVector::from_coords(alg, &sol).0;
    y.push(alg.one());
    let y = QVector(y);
    debug_assert!({
        let mut full = QMatrix::zeros(alg, k + 1, k + 1);
        for i in 0..k {
            for j in 0..k {
                full[(i, j)] = s[(i, j)].clone();
            }
            full[(i, k)] = x0[i].clone();
        }
        full[(k, k)] = t.clone();
        full.apply(&y).unwrap() == y.scale_right(t)
    });
    Ok(y)
}

/// Eigenvector of an upper-triangular `T` for its `k`-th diagonal entry,
/// padded with zeros to full length.
pub fn diagonal_entry_eigenvector(t: &QMatrix, k: usize) -> Result<QVector> {
    let s = t.submatrix(0, 0, k, k);
    let x0 = QVector((0..k).map(|i| t[(i, k)].clone()).collect());
    let mut y = triangular_eigenvector(&s, &x0, &t[(k, k)])?.0;
    y.resize(t.rows(), t.algebra().zero());
    Ok(QVector(y))
}

/// Central `(t, N)` with `M^2 - t M + N I = 0`, if any.
pub fn quadratic_relation(m: &QMatrix) -> Option<QuadraticRelation> {
    assert!(m.is_square());
    let n = m.rows();
    let sq = m * m;
    let mut rows = Vec::with_capacity(4 * n * n);
    let mut rhs = Vec::with_capacity(4 * n * n);
    for r in 0..n {
        for c in 0..n {
            for k in 0..4 {
                let id = if r == c && k == 0 { rational::int(-1) } else { Rational::zero() };
                rows.push(vec![m[(r, c)].coords()[k].clone(), id]);
                rhs.push(sq[(r, c)].coords()[k].clone());
            }
        }
    }
    let sol = RatMatrix::from_rows(rows).solve(&rhs)?;
    Some(QuadraticRelation {
        t: sol[0].clone(),
        n: sol[1].clone(),
    })
}

/// `T = [[1, c], [0, 1]]` diagonalising `[[a, b], [0, a]]`, when `b = [a, c]`.
pub fn diagonalize_2x2_jordanlike(a: &Quaternion, b: &Quaternion) -> Result<Option<SimilarityWitness>> {
    let alg = a.algebra();
    let Some(c) = sylvester_solve(a, a, b)? else {
        return Ok(None);
    };
    let t = QMatrix::from_rows(alg, vec![vec![alg.one(), c.clone()], vec![alg.zero(), alg.one()]])?;
    let t_inv = QMatrix::from_rows(alg, vec![vec![alg.one(), -&c], vec![alg.zero(), alg.one()]])?;
    let w = SimilarityWitness { p: t, p_inv: t_inv };
    let m = QMatrix::from_rows(alg, vec![vec![a.clone(), b.clone()], vec![alg.zero(), a.clone()]])?;
    if !w.verify() || w.conjugate(&m)? != QMatrix::scalar(alg, 2, a) {
        return Err(Error::Discrepancy("Jordan-like 2x2 witness failed verification".into()));
    }
    Ok(Some(w))
}

/// A member of the class of roots of `x^2 - t x + N`, preferring diagonal
/// entries of `M` before searching.
fn class_representative(
    m: &QMatrix,
    rel: &QuadraticRelation,
    cfg: &SearchConfig,
) -> Result<Option<Quaternion>> {
    let alg = m.algebra();
    if let Some(d) = m
        .diagonal()
        .into_iter()
        .find(|d| !d.is_central() && d.trace() == rel.t && d.norm() == rel.n)
    {
        return Ok(Some(d));
    }
    let half = &rel.t / rational::int(2);
    let e = &half * &half - &rel.n;
    if !has_pure_sqrt(alg, &e)? {
        return Ok(None);
    }
    Ok(sqrt_pure(alg, &e, cfg.sqrt_height)?.map(|s| &alg.scalar(half) + &s))
}

/// Certificate that `M` is similar to `Diag(q, ..., q)`, or `None` when it
/// is not.
pub fn unispectral_diagonalizable(m: &QMatrix, cfg: &SearchConfig) -> Result<Option<DiagonalizationCertificate>> {
    if !m.is_square() {
        return Err(Error::Dimension("unispectral test needs a square matrix".into()));
    }
    let alg = m.algebra();
    let n = m.rows();
    if let Some(lambda) = m.central_scalar() {
        return Ok(Some(DiagonalizationCertificate {
            eigenvalue: alg.scalar(lambda),
            witness: SimilarityWitness::identity(alg, n),
        }));
    }
    let Some(rel) = quadratic_relation(m) else {
        return Ok(None);
    };
    let disc = &rel.t * &rel.t - rational::int(4) * &rel.n;
    if rational::rational_sqrt(&disc).is_some() {
        return Ok(None);
    }
    let Some(q) = class_representative(m, &rel, cfg)? else {
        return Ok(None);
    };
    let eig = eigenvectors_for(m, &q);
    let mut basis: Vec<QVector> = Vec::with_capacity(n);
    for v in eig.solution_basis {
        if basis.len() == n {
            break;
        }
        basis.push(v);
        if crate::matrix::vectors_rank(alg, &basis) < basis.len() {
            basis.pop();
        }
    }
    if basis.len() < n {
        return Err(Error::Discrepancy(format!(
            "irreducible central quadratic with root {q} in the algebra, but only {} independent eigenvectors",
            basis.len()
        )));
    }
    let witness = SimilarityWitness::from_basis(alg, &basis)
        .ok_or_else(|| Error::Discrepancy("eigenbasis is singular".into()))?;
    let cert = DiagonalizationCertificate { eigenvalue: q, witness };
    if !cert.verify(m) {
        return Err(Error::Discrepancy("diagonalisation certificate failed verification".into()));
    }
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Algebra;

    fn h() -> Algebra {
        Algebra::hamilton()
    }

    fn q(c: [i64; 4]) -> Quaternion {
        h().from_ints(c)
    }

    fn mat(rows: Vec<Vec<Quaternion>>) -> QMatrix {
        QMatrix::from_rows(&h(), rows).unwrap()
    }

    #[test]
    fn companion_eigenvector() {
        let alg = h();
        let m = mat(vec![vec![alg.zero(), q([-1, 0, 0, 0])], vec![alg.one(), alg.zero()]]);
        let sol = eigenvectors_for(&m, &alg.i());
        let want = QVector(vec![alg.one(), -alg.i()]);
        assert_eq!(m.apply(&want).unwrap(), want.scale_right(&alg.i()));
        assert_eq!(sol.solution_basis[0], want);
        assert_eq!(sol.solution_basis.len(), 4);
    }

    #[test]
    fn diagonal_eigenspace_dimension() {
        let alg = h();
        let m = QMatrix::diag(&alg, &[alg.i(), alg.j()]);
        let sol = eigenvectors_for(&m, &alg.i());
        assert_eq!(sol.solution_basis.len(), 4);
        assert_eq!(sol.solution_basis[0], QVector::unit(&alg, 2, 0));
        for v in &sol.solution_basis {
            assert_eq!(m.apply(v).unwrap(), v.scale_right(&alg.i()));
        }
        let id = QMatrix::identity(&alg, 3);
        assert_eq!(eigenvectors_for(&id, &alg.one()).solution_basis.len(), 12);
    }

    #[test]
    fn triangular_cases() {
        let alg = h();
        let s = mat(vec![vec![alg.i()]]);
        let one = QVector(vec![alg.one()]);
        let y = triangular_eigenvector(&s, &one, &q([0, 2, 0, 0])).unwrap();
        assert_eq!(y, QVector(vec![-alg.i(), alg.one()]));
        let y = triangular_eigenvector(&s, &one, &alg.j()).unwrap();
        assert_eq!(y, QVector(vec![q([1, 0, 0, -1]), alg.zero()]));
        let z = mat(vec![vec![alg.zero()]]);
        let y = triangular_eigenvector(&z, &QVector(vec![alg.zero()]), &alg.zero()).unwrap();
        assert_eq!(y, QVector(vec![alg.one(), alg.zero()]));
    }

    #[test]
    fn quadratic_relations() {
        let alg = h();
        let rel = quadratic_relation(&QMatrix::diag(&alg, &[alg.i(), alg.i()])).unwrap();
        assert_eq!((rel.t, rel.n), (rational::int(0), rational::int(1)));
        let m = mat(vec![vec![alg.zero(), q([-1, 0, 0, 0])], vec![alg.one(), alg.zero()]]);
        let rel = quadratic_relation(&m).unwrap();
        assert_eq!((rel.t, rel.n), (rational::int(0), rational::int(1)));
        let nil = mat(vec![vec![alg.zero(), alg.one()], vec![alg.zero(), alg.zero()]]);
        let rel = quadratic_relation(&nil).unwrap();
        assert_eq!((rel.t, rel.n), (rational::int(0), rational::int(0)));
        assert!(quadratic_relation(&QMatrix::diag(&alg, &[alg.i(), alg.one()])).is_none());
    }

    #[test]
    fn jordanlike() {
        let alg = h();
        let w = diagonalize_2x2_jordanlike(&alg.i(), &alg.j()).unwrap().unwrap();
        assert_eq!(w.p[(0, 1)], alg.k().scale(&rational::frac(-1, 2)));
        assert!(diagonalize_2x2_jordanlike(&alg.i(), &alg.one()).unwrap().is_none());
        let w = diagonalize_2x2_jordanlike(&alg.j(), &alg.zero()).unwrap().unwrap();
        assert_eq!(w.p, QMatrix::identity(&alg, 2));
    }

    #[test]
    fn unispectral_examples() {
        let alg = h();
        let cfg = SearchConfig::default();
        let m = QMatrix::diag(&alg, &[alg.i(), alg.j(), alg.k()]);
        let cert = unispectral_diagonalizable(&m, &cfg).unwrap().unwrap();
        assert_eq!(cert.eigenvalue, alg.i());
        assert!(cert.verify(&m));

        let m = mat(vec![vec![alg.i(), alg.j()], vec![alg.zero(), alg.i()]]);
        let cert = unispectral_diagonalizable(&m, &cfg).unwrap().unwrap();
        assert_eq!(cert.eigenvalue, alg.i());
        assert!(cert.verify(&m));

        let m = mat(vec![vec![alg.i(), alg.one()], vec![alg.zero(), alg.i()]]);
        assert!(unispectral_diagonalizable(&m, &cfg).unwrap().is_none());

        let m = QMatrix::scalar(&alg, 3, &alg.scalar(rational::int(5)));
        let cert = unispectral_diagonalizable(&m, &cfg).unwrap().unwrap();
        assert_eq!(cert.eigenvalue, alg.scalar(rational::int(5)));

        let m = QMatrix::diag(&alg, &[alg.i(), alg.one()]);
        assert!(unispectral_diagonalizable(&m, &cfg).unwrap().is_none());
        let m = QMatrix::diag(&alg, &[alg.i(), q([0, 2, 0, 0])]);
        assert!(unispectral_diagonalizable(&m, &cfg).unwrap().is_none());
    }

    #[test]
    fn searched_representative() {
        let alg = h();
        let cfg = SearchConfig::default();
        // conjugate of Diag(i+j, i+j) with no diagonal entry in the class
        let p = mat(vec![vec![alg.one(), alg.k()], vec![alg.j(), q([2, 0, 0, 0])]]);
        let w = SimilarityWitness::from_matrix(p).unwrap();
        let d = QMatrix::scalar(&alg, 2, &q([0, 1, 1, 0]));
        let m = w.pull_back(&d).unwrap();
        let cert = unispectral_diagonalizable(&m, &cfg).unwrap().unwrap();
        assert!(cert.verify(&m));
        assert_eq!(cert.eigenvalue.norm(), rational::int(2));
    }
}
