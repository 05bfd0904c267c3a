//! Seeded instance generators. Every instance is re-classified before it is
//! returned.

use std::fmt;
use std::str::FromStr;

use quatnil::classify::{classify, Classification, Verdict};
use quatnil::matrix::outer_product;
use quatnil::rational::int;
use quatnil::{Algebra, QMatrix, QVector, Quaternion, SearchConfig, SimilarityWitness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    GenericTraceZero,
    TypeI,
    /// Rank-one perturbation of a scalar with a random supertrace.
    TypeII,
    /// Rank-one perturbation of a scalar with supertrace zero.
    TypeIIZero,
    TypeIII,
    Random,
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "generic-trace-zero" | "generic" => Kind::GenericTraceZero,
            "type-i" => Kind::TypeI,
            "type-ii" => Kind::TypeII,
            "type-ii-zero" | "type-ii-with-zero-supertrace" => Kind::TypeIIZero,
            "type-iii" => Kind::TypeIII,
            "random" => Kind::Random,
            _ => return Err(format!("unknown kind {s:?}")),
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::GenericTraceZero => "generic-trace-zero",
            Kind::TypeI => "type-I",
            Kind::TypeII => "type-II",
            Kind::TypeIIZero => "type-II-zero",
            Kind::TypeIII => "type-III",
            Kind::Random => "random",
        })
    }
}

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub algebra: Algebra,
    pub n: usize,
    pub kind: Kind,
    pub seed: u64,
    /// Bound on the integer coordinates of random entries.
    pub height: i64,
}

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("unsatisfiable instance spec: {0}")]
    Unsatisfiable(String),
    #[error("generator gave up after {0} attempts")]
    Exhausted(usize),
    #[error(transparent)]
    Core(#[from] quatnil::Error),
}

const ATTEMPTS: usize = 200;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion(rng: &mut impl Rng, alg: &Algebra, h: i64) -> Quaternion {
    alg.from_ints([
        rng.gen_range(-h..=h),
        rng.gen_range(-h..=h),
        rng.gen_range(-h..=h),
        rng.gen_range(-h..=h),
    ])
}

pub fn random_nonzero(rng: &mut impl Rng, alg: &Algebra, h: i64) -> Quaternion {
    loop {
        let q = random_quaternion(rng, alg, h);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_noncentral(rng: &mut impl Rng, alg: &Algebra, h: i64) -> Quaternion {
    loop {
        let q = random_quaternion(rng, alg, h);
        if !q.is_central() {
            return q;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, alg: &Algebra, n: usize, h: i64) -> QMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| random_quaternion(rng, alg, h)).collect())
        .collect();
    QMatrix::from_rows(alg, rows).expect("square")
}

/// Product of a unit lower and a unit upper triangular matrix with small
/// entries, together with its inverse.
pub fn random_invertible(rng: &mut impl Rng, alg: &Algebra, n: usize) -> SimilarityWitness {
    let mut lower = QMatrix::identity(alg, n);
    let mut upper = QMatrix::identity(alg, n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = random_quaternion(rng, alg, 1);
            upper[(j, i)] = random_quaternion(rng, alg, 1);
        }
    }
    let p = &lower * &upper;
    SimilarityWitness::from_matrix(p).expect("unit triangular factors are invertible")
}

fn with_zero_trace(mut m: QMatrix) -> QMatrix {
    let alg = m.algebra().clone();
    let n = m.rows();
    let rest: quatnil::Rational = (0..n - 1).map(|i| m[(i, i)].w().clone()).sum();
    let last = m[(n - 1, n - 1)].clone();
    let mut c = last.coords().clone();
    c[0] = -rest;
    m[(n - 1, n - 1)] = alg.quaternion(c);
    m
}

fn check(spec: &InstanceSpec, class: &Classification) -> bool {
    match spec.kind {
        Kind::GenericTraceZero => class.verdict() == Verdict::Generic,
        Kind::TypeI => class.verdict() == Verdict::TypeI,
        Kind::TypeII => class.verdict() == Verdict::TypeII,
        Kind::TypeIIZero => matches!(class, Classification::TypeII(d) if d.supertrace_is_zero()),
        Kind::TypeIII => class.verdict() == Verdict::TypeIII,
        Kind::Random => true,
    }
}

fn candidate(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Option<QMatrix> {
    let alg = &spec.algebra;
    let n = spec.n;
    let h = spec.height;
    match spec.kind {
        Kind::GenericTraceZero if n == 2 => {
            let z = alg.zero();
            let core = QMatrix::from_rows(
                alg,
                vec![
                    vec![z.clone(), random_nonzero(rng, alg, h)],
                    vec![random_nonzero(rng, alg, h), z],
                ],
            )
            .ok()?;
            random_invertible(rng, alg, 2).conjugate(&core).ok()
        }
        Kind::GenericTraceZero => Some(with_zero_trace(random_matrix(rng, alg, n, h))),
        Kind::TypeI => {
            let l = loop {
                let l = rng.gen_range(-h.max(1)..=h.max(1));
                if l != 0 {
                    break l;
                }
            };
            Some(QMatrix::scalar(alg, n, &alg.scalar(int(l))))
        }
        Kind::TypeII | Kind::TypeIIZero => {
            let lambda = int(rng.gen_range(-h..=h));
            let c = QVector((0..n).map(|_| random_quaternion(rng, alg, h)).collect());
            let v0 = c.leading()?;
            let mut r: Vec<Quaternion> = (0..n).map(|_| random_quaternion(rng, alg, h)).collect();
            if spec.kind == Kind::TypeIIZero {
                let target = alg.scalar(-int(n as i64) * &lambda);
                let partial = (0..n)
                    .filter(|&v| v != v0)
                    .fold(alg.zero(), |acc, v| &acc + &(&r[v] * &c[v]));
                r[v0] = &(&target - &partial) * &c[v0].inv().ok()?;
            }
            let a = outer_product(alg, &c, &r);
            if a.is_zero() {
                return None;
            }
            Some(&QMatrix::scalar(alg, n, &alg.scalar(lambda)) + &a)
        }
        Kind::TypeIII => {
            let q = random_noncentral(rng, alg, h);
            let g = random_nonzero(rng, alg, h);
            let d = QMatrix::diag(alg, &[q.clone(), q.conjugated_by(&g).ok()?, q]);
            random_invertible(rng, alg, 3).conjugate(&d).ok()
        }
        Kind::Random => Some(random_matrix(rng, alg, n, h)),
    }
}

/// Deterministic instance of the requested kind.
pub fn generate(spec: &InstanceSpec, cfg: &SearchConfig) -> Result<QMatrix, GenError> {
    if spec.n == 0 {
        return Err(GenError::Unsatisfiable("n must be positive".into()));
    }
    if spec.height < 1 {
        return Err(GenError::Unsatisfiable("height must be at least 1".into()));
    }
    match spec.kind {
        Kind::TypeIII if spec.n != 3 => {
            return Err(GenError::Unsatisfiable("type-III exists only for n = 3".into()))
        }
        Kind::TypeII | Kind::TypeIIZero if spec.n < 2 => {
            return Err(GenError::Unsatisfiable("type-II needs n >= 2".into()))
        }
        Kind::GenericTraceZero if spec.n < 2 => {
            return Err(GenError::Unsatisfiable("a 1x1 trace-zero matrix is zero".into()))
        }
        _ => {}
    }
    let mut rng = rng_for(spec.seed);
    for _ in 0..ATTEMPTS {
        let Some(m) = candidate(spec, &mut rng) else { continue };
        if check(spec, &classify(&m, cfg)?) {
            return Ok(m);
        }
    }
    Err(GenError::Exhausted(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: Kind, n: usize, seed: u64) -> InstanceSpec {
        InstanceSpec {
            algebra: Algebra::hamilton(),
            n,
            kind,
            seed,
            height: 2,
        }
    }

    #[test]
    fn kinds_match() {
        let cfg = SearchConfig::default();
        for (kind, n) in [
            (Kind::GenericTraceZero, 2),
            (Kind::GenericTraceZero, 4),
            (Kind::TypeI, 3),
            (Kind::TypeII, 3),
            (Kind::TypeIIZero, 2),
            (Kind::TypeIIZero, 5),
            (Kind::TypeIII, 3),
            (Kind::Random, 2),
        ] {
            let m = generate(&spec(kind, n, 1), &cfg).unwrap();
            assert_eq!(m.rows(), n);
            assert!(check(&spec(kind, n, 1), &classify(&m, &cfg).unwrap()), "{kind}");
        }
    }

    #[test]
    fn deterministic() {
        let cfg = SearchConfig::default();
        let a = generate(&spec(Kind::GenericTraceZero, 3, 9), &cfg).unwrap();
        let b = generate(&spec(Kind::GenericTraceZero, 3, 9), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.reduced_trace() == int(0));
    }

    #[test]
    fn unsatisfiable() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            generate(&spec(Kind::TypeIII, 4, 1), &cfg),
            Err(GenError::Unsatisfiable(_))
        ));
    }
}
