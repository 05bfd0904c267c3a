//! Special types of quaternion matrices and the decision whether a matrix
//! is a sum of two nilpotent matrices.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::conjugacy::ConjClass;
use crate::error::{Error, Result};
use crate::matrix::{outer_product, QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::rational::{self, Rational};
use crate::search::SearchConfig;
use crate::spectral::{unispectral_diagonalizable, DiagonalizationCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    TypeI,
    TypeII,
    TypeIII,
    Generic,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Zero => "Zero",
            Verdict::TypeI => "TypeI",
            Verdict::TypeII => "TypeII",
            Verdict::TypeIII => "TypeIII",
            Verdict::Generic => "Generic",
        };
        f.write_str(s)
    }
}

/// `M = lambda I + c r` with `c r` of rank one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeIIData {
    pub lambda: Rational,
    pub rank_one: QMatrix,
    pub column: QVector,
    pub row: Vec<Quaternion>,
    /// Eigenvalue of the rank-one part on its image, `r c`.
    pub image_eigenvalue: Quaternion,
    pub supertrace: ConjClass,
}

impl TypeIIData {
    /// Supertrace is `{0}`, i.e. `r c = -n lambda`.
    pub fn supertrace_is_zero(&self) -> bool {
        self.supertrace.is_zero()
    }

    /// Rebuilds `M` and checks the rank-one factorisation.
    pub fn verify(&self, m: &QMatrix) -> bool {
        let alg = m.algebra();
        let n = m.rows();
        let lam = QMatrix::scalar(alg, n, &alg.scalar(self.lambda.clone()));
        outer_product(alg, &self.column, &self.row) == self.rank_one
            && self.rank_one.rank() == 1
            && &lam + &self.rank_one == *m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Zero,
    TypeI(Rational),
    TypeII(TypeIIData),
    TypeIII(DiagonalizationCertificate),
    Generic,
}

impl Classification {
    pub fn verdict(&self) -> Verdict {
        match self {
            Classification::Zero => Verdict::Zero,
            Classification::TypeI(_) => Verdict::TypeI,
            Classification::TypeII(_) => Verdict::TypeII,
            Classification::TypeIII(_) => Verdict::TypeIII,
            Classification::Generic => Verdict::Generic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Yes,
    TraceNonzero,
    TypeI,
    TypeIISupertraceNonzero,
    TypeIII,
    N2SpectralObstruction,
    NonzeroOneByOne,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::Yes => "Yes",
            Reason::TraceNonzero => "TraceNonzero",
            Reason::TypeI => "TypeI",
            Reason::TypeIISupertraceNonzero => "TypeIISupertraceNonzero",
            Reason::TypeIII => "TypeIII",
            Reason::N2SpectralObstruction => "N2SpectralObstruction",
            Reason::NonzeroOneByOne => "NonzeroOneByOne",
        };
        f.write_str(s)
    }
}

/// Evidence attached to a negative decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    ReducedTrace(Rational),
    Scalar(Rational),
    TypeII(TypeIIData),
    TypeIII(DiagonalizationCertificate),
    /// The square of a 2x2 matrix is not unispectral and diagonalisable.
    SquareNotUnispectral,
    /// A unispectral diagonalisable 2x2 matrix whose eigenvalue is central
    /// or not pure.
    Eigenvalue(DiagonalizationCertificate),
    Entry(Quaternion),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub reason: Reason,
    pub classification: Classification,
    pub obstruction: Option<Obstruction>,
}

impl Decision {
    fn yes(classification: Classification) -> Self {
        Self {
            answer: true,
            reason: Reason::Yes,
            classification,
            obstruction: None,
        }
    }

    fn no(reason: Reason, classification: Classification, obstruction: Obstruction) -> Self {
        Self {
            answer: false,
            reason,
            classification,
            obstruction: Some(obstruction),
        }
    }
}

pub fn detect_type_i(m: &QMatrix) -> Option<Rational> {
    m.central_scalar().filter(|l| !l.is_zero())
}

fn type_ii_for(m: &QMatrix, lambda: Rational) -> Option<TypeIIData> {
    let alg = m.algebra();
    let n = m.rows();
    let a = m - &QMatrix::scalar(alg, n, &alg.scalar(lambda.clone()));
    let (column, row) = a.rank1_factor()?;
    let image_eigenvalue = row
        .iter()
        .zip(&column.0)
        .fold(alg.zero(), |acc, (r, c)| &acc + &(r * c));
    let st = &alg.scalar(rational::int(n as i64) * &lambda) + &image_eigenvalue;
    Some(TypeIIData {
        lambda,
        rank_one: a,
        column,
        row,
        image_eigenvalue,
        supertrace: ConjClass::of(&st),
    })
}

/// Rational roots of `alpha x^2 + beta x + gamma = 0` taken coordinatewise,
/// in increasing order.
fn common_rational_roots(alpha: &Quaternion, beta: &Quaternion, gamma: &Quaternion) -> Vec<Rational> {
    let Some(k) = (0..4).find(|&k| !alpha.coords()[k].is_zero()) else {
        return Vec::new();
    };
    let (a, b, c) = (&alpha.coords()[k], &beta.coords()[k], &gamma.coords()[k]);
    let disc = b * b - rational::int(4) * a * c;
    let Some(root) = rational::rational_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = rational::int(2) * a;
    let mut roots = vec![(-b - &root) / &two_a, (-b + &root) / &two_a];
    roots.sort();
    roots.dedup();
    roots
        .into_iter()
        .filter(|x| {
            (0..4).all(|k| {
                let v = &alpha.coords()[k] * x * x + &beta.coords()[k] * x + &gamma.coords()[k];
                v.is_zero()
            })
        })
        .collect()
}

fn type_ii_candidates(m: &QMatrix) -> Vec<Rational> {
    let n = m.rows();
    let pivot = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .find(|&(s, t)| s != t && !m[(s, t)].is_zero());
    if let Some((s, t)) = pivot {
        let inv = m[(s, t)].inv().expect("nonzero pivot");
        if n >= 3 {
            let v = (0..n).find(|&v| v != s && v != t).expect("third index");
            let c_v = &m[(v, t)] * &inv;
            let lam = &m[(v, v)] - &(&c_v * &m[(s, v)]);
            return lam.as_rational().cloned().into_iter().collect();
        }
        let alpha = inv.clone();
        let beta = -&(&(&inv * &m[(s, s)]) + &(&m[(t, t)] * &inv));
        let gamma = &(&(&m[(t, t)] * &inv) * &m[(s, s)]) - &m[(t, s)];
        return common_rational_roots(&alpha, &beta, &gamma);
    }
    let d = m.diagonal();
    let mut out: Vec<Rational> = Vec::new();
    let order: Vec<usize> = (0..n).rev().collect();
    for &i in &order {
        if let Some(l) = d[i].as_rational() {
            let count = d.iter().filter(|q| q.as_rational() == Some(l)).count();
            if count == n - 1 && !out.contains(l) {
                out.push(l.clone());
            }
        }
    }
    out
}

/// `M = lambda I + A` with `lambda` rational and `rank A = 1`.
pub fn detect_type_ii(m: &QMatrix) -> Option<TypeIIData> {
    if !m.is_square() || m.rows() < 2 {
        return None;
    }
    type_ii_candidates(m)
        .into_iter()
        .find_map(|l| type_ii_for(m, l))
}

/// Nonzero 3x3 unispectral diagonalisable matrices.
pub fn detect_type_iii(m: &QMatrix, cfg: &SearchConfig) -> Result<Option<DiagonalizationCertificate>> {
    if !m.is_square() || m.rows() != 3 || m.is_zero() {
        return Ok(None);
    }
    unispectral_diagonalizable(m, cfg)
}

/// Detectors applied in the order Zero, TypeI, TypeII, TypeIII.
pub fn classify(m: &QMatrix, cfg: &SearchConfig) -> Result<Classification> {
    if !m.is_square() {
        return Err(Error::Dimension("classification needs a square matrix".into()));
    }
    if m.is_zero() {
        return Ok(Classification::Zero);
    }
    if let Some(l) = detect_type_i(m) {
        return Ok(Classification::TypeI(l));
    }
    if let Some(d) = detect_type_ii(m) {
        return Ok(Classification::TypeII(d));
    }
    if let Some(c) = detect_type_iii(m, cfg)? {
        return Ok(Classification::TypeIII(c));
    }
    Ok(Classification::Generic)
}

/// Class of `n lambda + q_a` for a type II matrix.
pub fn supertrace(m: &QMatrix) -> Option<ConjClass> {
    detect_type_ii(m).map(|d| d.supertrace)
}

pub fn is_sum_of_two_nilpotents(m: &QMatrix, cfg: &SearchConfig) -> Result<Decision> {
    let class = classify(m, cfg)?;
    let n = m.rows();
    if let Classification::Zero = class {
        return Ok(Decision::yes(class));
    }
    if n == 1 {
        let entry = m[(0, 0)].clone();
        return Ok(match &class {
            Classification::TypeI(l) => Decision::no(Reason::TypeI, class.clone(), Obstruction::Scalar(l.clone())),
            _ => Decision::no(Reason::NonzeroOneByOne, class, Obstruction::Entry(entry)),
        });
    }
    let tr = m.reduced_trace();
    if n == 2 {
        return decide_2x2(m, class, tr, cfg);
    }
    Ok(match class {
        Classification::TypeI(l) => Decision::no(Reason::TypeI, Classification::TypeI(l.clone()), Obstruction::Scalar(l)),
        Classification::TypeII(d) => {
            if d.supertrace_is_zero() {
                debug_assert!(tr.is_zero());
                Decision::yes(Classification::TypeII(d))
            } else {
                Decision::no(
                    Reason::TypeIISupertraceNonzero,
                    Classification::TypeII(d.clone()),
                    Obstruction::TypeII(d),
                )
            }
        }
        Classification::TypeIII(c) => Decision::no(
            Reason::TypeIII,
            Classification::TypeIII(c.clone()),
            Obstruction::TypeIII(c),
        ),
        Classification::Generic if tr.is_zero() => Decision::yes(Classification::Generic),
        Classification::Generic => {
            Decision::no(Reason::TraceNonzero, Classification::Generic, Obstruction::ReducedTrace(tr))
        }
        Classification::Zero => unreachable!(),
    })
}

fn decide_2x2(m: &QMatrix, class: Classification, tr: Rational, cfg: &SearchConfig) -> Result<Decision> {
    match &class {
        Classification::TypeI(l) => {
            let l = l.clone();
            return Ok(Decision::no(Reason::TypeI, class, Obstruction::Scalar(l)));
        }
        Classification::TypeII(d) if !tr.is_zero() => {
            let d = d.clone();
            return Ok(Decision::no(Reason::TypeIISupertraceNonzero, class, Obstruction::TypeII(d)));
        }
        _ if !tr.is_zero() => {
            return Ok(Decision::no(Reason::TraceNonzero, class, Obstruction::ReducedTrace(tr)));
        }
        _ => {}
    }
    let square = m * m;
    let spectral_ok = unispectral_diagonalizable(&square, cfg)?.is_some();
    let eigen_obstruction = if spectral_ok {
        unispectral_diagonalizable(m, cfg)?.filter(|c| {
            let q = &c.eigenvalue;
            q.is_central() || !q.trace().is_zero()
        })
    } else {
        None
    };
    let answer = spectral_ok && eigen_obstruction.is_none();
    if let Classification::TypeII(d) = &class {
        if d.supertrace_is_zero() != answer {
            return Err(Error::Discrepancy(format!(
                "2x2 spectral test says {answer} but supertrace is {}",
                d.supertrace
            )));
        }
    }
    if answer {
        return Ok(Decision::yes(class));
    }
    Ok(match (&class, eigen_obstruction) {
        (Classification::TypeI(l), _) => {
            let l = l.clone();
            Decision::no(Reason::TypeI, class, Obstruction::Scalar(l))
        }
        (Classification::TypeII(d), _) => {
            let d = d.clone();
            Decision::no(Reason::TypeIISupertraceNonzero, class, Obstruction::TypeII(d))
        }
        (_, Some(c)) => Decision::no(Reason::N2SpectralObstruction, class, Obstruction::Eigenvalue(c)),
        (_, None) => Decision::no(Reason::N2SpectralObstruction, class, Obstruction::SquareNotUnispectral),
    })
}

/// Independent check of the evidence carried by a negative decision.
pub fn verify_obstruction(m: &QMatrix, decision: &Decision) -> bool {
    let n = m.rows();
    match &decision.obstruction {
        None => decision.answer,
        Some(Obstruction::ReducedTrace(t)) => !t.is_zero() && m.reduced_trace() == *t,
        Some(Obstruction::Scalar(l)) => !l.is_zero() && m.central_scalar().as_ref() == Some(l),
        Some(Obstruction::TypeII(d)) => d.verify(m) && !d.supertrace_is_zero(),
        Some(Obstruction::TypeIII(c)) => n == 3 && !m.is_zero() && c.verify(m),
        Some(Obstruction::Eigenvalue(c)) => {
            c.verify(m) && (c.eigenvalue.is_central() || !c.eigenvalue.trace().is_zero())
        }
        Some(Obstruction::SquareNotUnispectral) => n == 2,
        Some(Obstruction::Entry(q)) => n == 1 && !q.is_zero() && m[(0, 0)] == *q,
    }
}

/// Sign helper used by reports: `-1`, `0` or `1` for the reduced trace.
pub fn trace_sign(m: &QMatrix) -> i8 {
    let t = m.reduced_trace();
    if t.is_zero() {
        0
    } else if t.is_positive() {
        1
    } else {
        -1
    }
}
