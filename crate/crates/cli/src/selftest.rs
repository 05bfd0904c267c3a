//! Acceptance checks, one function per criterion.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use quatnil::classify::{detect_type_ii, is_sum_of_two_nilpotents, Reason};
use quatnil::conjugacy::{are_conjugate, conjugator, ConjClass};
use quatnil::decompose::{completion_2x2, decompose_two_nilpotents, field_diag_zero, verify_decomposition};
use quatnil::quaternion::{polar_form, quadratic_identity_check};
use quatnil::ratmat::RatMatrix;
use quatnil::rational::{frac, int};
use quatnil::spectral::{diagonal_entry_eigenvector, diagonalize_2x2_jordanlike};
use quatnil::{Algebra, QMatrix, Quaternion, Rational, SearchConfig};
use rand::Rng;
use rayon::prelude::*;

use crate::gen::{generate, random_invertible, random_noncentral, random_nonzero, random_quaternion, rng_for, InstanceSpec, Kind};

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub seed: u64,
    pub quick: bool,
    pub cfg: SearchConfig,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            seed: 20240601,
            quick: false,
            cfg: SearchConfig::default(),
        }
    }
}

impl SelftestOptions {
    fn count(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(5)
        } else {
            full
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({}; {:.3}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Report {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded {:.1}s", limit.as_secs_f64());
        }
    }
    Report {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hamilton() -> Algebra {
    Algebra::hamilton()
}

fn random_rational(rng: &mut impl Rng, h: i64) -> Rational {
    frac(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn quadratic_identity(opts: &SelftestOptions) -> Report {
    timed(1, "quadratic identity", Some(Duration::from_secs(1)), || {
        let alg = hamilton();
        let mut rng = rng_for(opts.seed ^ 0x01);
        let count = opts.count(1000);
        for _ in 0..count {
            let q = alg.quaternion([(); 4].map(|_| random_rational(&mut rng, 10)));
            ensure(quadratic_identity_check(&q), || format!("fails for {q}"))?;
        }
        Ok(format!("{count} quaternions"))
    })
}

pub fn conjugacy_witnesses(opts: &SelftestOptions) -> Report {
    timed(2, "conjugacy witnesses", Some(Duration::from_secs(2)), || {
        let alg = hamilton();
        let mut rng = rng_for(opts.seed ^ 0x02);
        let (pos, neg) = (opts.count(500), opts.count(100));
        for _ in 0..pos {
            let q = random_quaternion(&mut rng, &alg, 5);
            let g = random_nonzero(&mut rng, &alg, 5);
            let p = q.conjugated_by(&g).map_err(|e| e.to_string())?;
            ensure(are_conjugate(&p, &q) == Ok(true), || format!("{p} vs {q} not conjugate"))?;
            let h = conjugator(&p, &q).map_err(|e| format!("conjugator({p}, {q}): {e}"))?;
            ensure(q.conjugated_by(&h).ok() == Some(p.clone()), || format!("bad witness for {p}, {q}"))?;
        }
        let mut done = 0;
        while done < neg {
            let p = random_quaternion(&mut rng, &alg, 5);
            let q = random_quaternion(&mut rng, &alg, 5);
            if p.trace() == q.trace() && p.norm() == q.norm() {
                continue;
            }
            ensure(are_conjugate(&p, &q) == Ok(false), || format!("{p} and {q} reported conjugate"))?;
            done += 1;
        }
        Ok(format!("{pos} conjugate pairs, {neg} separated pairs"))
    })
}

pub fn jordanlike_round_trip(opts: &SelftestOptions) -> Report {
    timed(3, "2x2 Jordan-like diagonalisation", None, || {
        let alg = hamilton();
        let mut rng = rng_for(opts.seed ^ 0x03);
        let (pos, neg) = (opts.count(200), opts.count(50));
        for _ in 0..pos {
            let a = random_noncentral(&mut rng, &alg, 4);
            let c = random_quaternion(&mut rng, &alg, 4);
            let b = a.commutator(&c);
            let w = diagonalize_2x2_jordanlike(&a, &b)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no witness for a={a}, b={b}"))?;
            let m = QMatrix::from_rows(&alg, vec![vec![a.clone(), b.clone()], vec![alg.zero(), a.clone()]]).unwrap();
            let d = w.conjugate(&m).map_err(|e| e.to_string())?;
            ensure(w.verify() && d == QMatrix::scalar(&alg, 2, &a), || format!("bad witness for a={a}"))?;
        }
        for _ in 0..neg {
            let a = random_noncentral(&mut rng, &alg, 4);
            let c = random_quaternion(&mut rng, &alg, 4);
            let (alpha, beta) = loop {
                let x = rng.gen_range(-3..=3);
                let y = rng.gen_range(-3..=3);
                if (x, y) != (0, 0) {
                    break (x, y);
                }
            };
            let b = &(&a.commutator(&c) + &alg.scalar(int(alpha))) + &a.scale(&int(beta));
            // commutators with a are exactly the polar complement of span(1, a)
            let outside = !polar_form(&b, &alg.one()).unwrap().eq(&int(0)) || polar_form(&b, &a).unwrap() != int(0);
            ensure(outside, || format!("oracle places {b} inside [{a}, Q]"))?;
            let got = diagonalize_2x2_jordanlike(&a, &b).map_err(|e| e.to_string())?;
            ensure(got.is_none(), || format!("witness returned for b={b} outside [{a}, Q]"))?;
        }
        Ok(format!("{pos} diagonalised, {neg} rejected"))
    })
}

pub fn completion(opts: &SelftestOptions) -> Report {
    timed(4, "2x2 completion", Some(Duration::from_secs(5)), || {
        let alg = hamilton();
        let cert = completion_2x2(&alg.i(), &-alg.i()).map_err(|e| e.to_string())?;
        let m = |rows: [[Quaternion; 2]; 2]| QMatrix::from_rows(&alg, rows.into_iter().map(|r| r.to_vec()).collect()).unwrap();
        let s1 = m([[alg.i(), alg.scalar(int(-1))], [alg.scalar(int(-1)), -alg.i()]]);
        let s2 = m([[alg.zero(), alg.zero()], [alg.scalar(int(2)), alg.zero()]]);
        ensure(cert.delta == alg.scalar(int(-1)), || format!("delta = {}", cert.delta))?;
        ensure(cert.summands == [s1.clone(), s2.clone()], || "worked summands differ".into())?;
        ensure((&s1 * &s1).is_zero() && (&s2 * &s2).is_zero(), || "worked summands not square-zero".into())?;
        let mut rng = rng_for(opts.seed ^ 0x04);
        let count = opts.count(200);
        for _ in 0..count {
            let a = random_quaternion(&mut rng, &alg, 4);
            let mut b = random_quaternion(&mut rng, &alg, 4);
            let mut c = b.coords().clone();
            c[0] = -a.w().clone();
            b = alg.quaternion(c);
            let cert = completion_2x2(&a, &b).map_err(|e| format!("({a}, {b}): {e}"))?;
            ensure(cert.verify(&a, &b), || format!("certificate for ({a}, {b}) fails"))?;
        }
        Ok(format!("worked instance and {count} seeded pairs"))
    })
}

pub fn non_examples(opts: &SelftestOptions) -> Report {
    timed(5, "non-examples", None, || {
        let alg = hamilton();
        let cfg = &opts.cfg;
        let decide = |m: &QMatrix| is_sum_of_two_nilpotents(m, cfg).map_err(|e| e.to_string());
        for n in 2..=5 {
            let mut d = vec![alg.zero(); n];
            d[0] = alg.i();
            let dec = decide(&QMatrix::diag(&alg, &d))?;
            ensure(!dec.answer, || format!("Diag(i,0,...) accepted at n={n}"))?;
            if n >= 3 {
                ensure(dec.reason == Reason::TypeIISupertraceNonzero, || format!("n={n}: reason {}", dec.reason))?;
            }
            let dec = decide(&QMatrix::scalar(&alg, n, &alg.scalar(int(5))))?;
            ensure(!dec.answer && dec.reason == Reason::TypeI, || format!("5I at n={n}: {}", dec.reason))?;
        }
        let dec = decide(&QMatrix::scalar(&alg, 3, &alg.i()))?;
        ensure(!dec.answer && dec.reason == Reason::TypeIII, || format!("Diag(i,i,i): {}", dec.reason))?;
        Ok("Diag(i,0,..) n=2..5, 5I n=2..5, Diag(i,i,i)".into())
    })
}

pub fn three_boundary(opts: &SelftestOptions) -> Report {
    timed(6, "n=3 boundary", None, || {
        let alg = hamilton();
        let cfg = &opts.cfg;
        let d3 = QMatrix::scalar(&alg, 3, &alg.i());
        let dec = is_sum_of_two_nilpotents(&d3, cfg).map_err(|e| e.to_string())?;
        ensure(!dec.answer, || "Diag(i,i,i) accepted".into())?;
        let d4 = QMatrix::scalar(&alg, 4, &alg.i());
        let dec = is_sum_of_two_nilpotents(&d4, cfg).map_err(|e| e.to_string())?;
        ensure(dec.answer, || format!("Diag(i,i,i,i) rejected: {}", dec.reason))?;
        let split = decompose_two_nilpotents(&d4, cfg).map_err(|e| e.to_string())?;
        ensure(verify_decomposition(&d4, &split.n1, &split.n2), || "n=4 decomposition fails".into())?;
        let dijk = QMatrix::diag(&alg, &[alg.i(), alg.j(), alg.k()]);
        let dec = is_sum_of_two_nilpotents(&dijk, cfg).map_err(|e| e.to_string())?;
        ensure(!dec.answer && dec.reason == Reason::TypeIII, || format!("Diag(i,j,k): {}", dec.reason))?;
        let Some(quatnil::classify::Obstruction::TypeIII(cert)) = &dec.obstruction else {
            return Err("Diag(i,j,k) carries no type III certificate".into());
        };
        ensure(cert.verify(&dijk), || "type III certificate fails".into())?;
        Ok("Diag(i,i,i) NO, Diag(i,i,i,i) YES, Diag(i,j,k) NO with certificate".into())
    })
}

pub fn master_round_trip(opts: &SelftestOptions) -> Report {
    let limit = Duration::from_secs(2);
    timed(7, "master round trip", None, || {
        let per_size = opts.count(200);
        let jobs: Vec<(usize, usize)> = (2..=5).flat_map(|n| (0..per_size).map(move |i| (n, i))).collect();
        let results: Vec<Result<Duration, String>> = jobs
            .par_iter()
            .map(|&(n, i)| {
                let kind = if i % 2 == 0 { Kind::GenericTraceZero } else { Kind::TypeIIZero };
                let spec = InstanceSpec {
                    algebra: hamilton(),
                    n,
                    kind,
                    seed: opts.seed.wrapping_mul(1_000_003).wrapping_add((n * 100_000 + i) as u64),
                    height: 2,
                };
                let m = generate(&spec, &opts.cfg).map_err(|e| format!("n={n} #{i}: {e}"))?;
                let start = Instant::now();
                let dec = is_sum_of_two_nilpotents(&m, &opts.cfg).map_err(|e| format!("n={n} #{i}: {e}"))?;
                if !dec.answer {
                    return Err(format!("n={n} #{i} {kind}: rejected with {}", dec.reason));
                }
                let split = decompose_two_nilpotents(&m, &opts.cfg).map_err(|e| format!("n={n} #{i} {kind}: {e}"))?;
                if !verify_decomposition(&m, &split.n1, &split.n2) {
                    return Err(format!("n={n} #{i}: decomposition fails verification"));
                }
                Ok(start.elapsed())
            })
            .collect();
        let mut worst = Duration::ZERO;
        let mut failures = Vec::new();
        for r in results {
            match r {
                Ok(t) => worst = worst.max(t),
                Err(e) => failures.push(e),
            }
        }
        if !failures.is_empty() {
            return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
        }
        ensure(worst <= limit, || format!("slowest instance {:.3}s", worst.as_secs_f64()))?;
        Ok(format!(
            "{} instances per n in 2..=5, slowest {:.3}s",
            per_size,
            worst.as_secs_f64()
        ))
    })
}

fn supertrace_of(lambda: &Rational, a: &QMatrix) -> Option<ConjClass> {
    let alg = a.algebra();
    let (c, r) = a.rank1_factor()?;
    let q = r.iter().zip(&c.0).fold(alg.zero(), |acc, (x, y)| &acc + &(x * y));
    Some(ConjClass::of(&(&alg.scalar(int(a.rows() as i64) * lambda) + &q)))
}

pub fn supertrace_well_defined(opts: &SelftestOptions) -> Report {
    timed(8, "supertrace well-definedness", None, || {
        let alg = hamilton();
        let mut rng = rng_for(opts.seed ^ 0x08);
        let count = opts.count(100);
        for _ in 0..count {
            let lambda = int(rng.gen_range(-4..=4));
            let mu = loop {
                let m = int(rng.gen_range(-4..=4));
                if m != lambda {
                    break m;
                }
            };
            let x = random_quaternion(&mut rng, &alg, 3);
            let z = alg.zero();
            let a0 = QMatrix::from_rows(&alg, vec![vec![z.clone(), x.clone()], vec![z.clone(), alg.scalar(&mu - &lambda)]]).unwrap();
            let b0 = QMatrix::from_rows(&alg, vec![vec![alg.scalar(&lambda - &mu), x], vec![z.clone(), z]]).unwrap();
            let w = random_invertible(&mut rng, &alg, 2);
            let a = w.pull_back(&a0).unwrap();
            let b = w.pull_back(&b0).unwrap();
            let lam_i = QMatrix::scalar(&alg, 2, &alg.scalar(lambda.clone()));
            let mu_i = QMatrix::scalar(&alg, 2, &alg.scalar(mu.clone()));
            ensure(&lam_i + &a == &mu_i + &b, || "double decomposition mismatch".into())?;
            let sa = supertrace_of(&lambda, &a).ok_or("first part not rank one")?;
            let sb = supertrace_of(&mu, &b).ok_or("second part not rank one")?;
            ensure(sa == sb, || format!("supertraces {sa} and {sb} differ"))?;
            let m = &lam_i + &a;
            let detected = detect_type_ii(&m).ok_or("type II not detected")?;
            ensure(detected.supertrace == sa, || format!("detector gives {}", detected.supertrace))?;
        }
        Ok(format!("{count} double decompositions"))
    })
}

pub fn field_subroutine(opts: &SelftestOptions) -> Report {
    timed(9, "zero-diagonal similarity over Q", None, || {
        let mut rng = rng_for(opts.seed ^ 0x09);
        let count = opts.count(200);
        let mut done = 0;
        while done < count {
            let n = rng.gen_range(2..=6);
            let mut rows: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| random_rational(&mut rng, 5)).collect())
                .collect();
            if rng.gen_bool(0.3) {
                for (i, row) in rows.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        if i != j {
                            *v = int(0);
                        }
                    }
                }
            }
            let rest: Rational = (0..n - 1).map(|i| rows[i][i].clone()).sum();
            rows[n - 1][n - 1] = -rest;
            let a = RatMatrix::from_rows(rows);
            if a.is_scalar() {
                continue;
            }
            let w = field_diag_zero(&a).map_err(|e| e.to_string())?;
            let d = w.conjugate(&a);
            ensure(w.verify() && (0..n).all(|i| d[(i, i)] == int(0)), || format!("fails for\n{a}"))?;
            done += 1;
        }
        Ok(format!("{count} rational matrices, n in 2..=6"))
    })
}

type IQ = [i64; 4];
type IM = [IQ; 4];

fn iq_mul(p: &IQ, q: &IQ) -> IQ {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

fn iq_add(p: &IQ, q: &IQ) -> IQ {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

fn iq_sub(p: &IQ, q: &IQ) -> IQ {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]]
}

fn im_square_is_zero(m: &IM) -> bool {
    let e = |r: usize, c: usize| iq_add(&iq_mul(&m[2 * r], &m[c]), &iq_mul(&m[2 * r + 1], &m[2 + c]));
    (0..2).all(|r| (0..2).all(|c| e(r, c) == [0; 4]))
}

pub fn brute_force_no(opts: &SelftestOptions) -> Report {
    timed(10, "brute-force soundness of NO", Some(Duration::from_secs(60)), || {
        let alg = hamilton();
        let mut set: Vec<IQ> = vec![[0; 4]];
        for k in 0..4 {
            for s in [1, -1] {
                let mut q = [0; 4];
                q[k] = s;
                set.push(q);
            }
        }
        let all: Vec<IM> = (0..set.len().pow(4))
            .map(|mut idx| {
                let mut m = [[0; 4]; 4];
                for slot in m.iter_mut() {
                    *slot = set[idx % set.len()];
                    idx /= set.len();
                }
                m
            })
            .collect();
        let square_zero: Vec<IM> = all.iter().filter(|m| im_square_is_zero(m)).copied().collect();
        let lookup: HashSet<IM> = square_zero.iter().copied().collect();
        let to_q = |m: &IM| {
            QMatrix::from_rows(
                &alg,
                vec![
                    vec![alg.from_ints(m[0]), alg.from_ints(m[1])],
                    vec![alg.from_ints(m[2]), alg.from_ints(m[3])],
                ],
            )
            .unwrap()
        };
        let outcomes: Vec<Result<bool, String>> = all
            .par_iter()
            .map(|m| {
                let dec = is_sum_of_two_nilpotents(&to_q(m), &opts.cfg).map_err(|e| e.to_string())?;
                if dec.answer {
                    return Ok(false);
                }
                let hit = square_zero.iter().find(|n1| {
                    let n2: IM = [0, 1, 2, 3].map(|s| iq_sub(&m[s], &n1[s]));
                    lookup.contains(&n2)
                });
                match hit {
                    Some(n1) => Err(format!("{m:?} rejected but splits with N1 = {n1:?}")),
                    None => Ok(true),
                }
            })
            .collect();
        let mut rejected = 0;
        for o in outcomes {
            if o? {
                rejected += 1;
            }
        }
        Ok(format!(
            "{} matrices, {} rejected, {} square-zero candidates",
            all.len(),
            rejected,
            square_zero.len()
        ))
    })
}

pub fn triangular_eigenvectors(opts: &SelftestOptions) -> Report {
    timed(11, "eigenvectors of triangular matrices", None, || {
        let alg = hamilton();
        let mut rng = rng_for(opts.seed ^ 0x0b);
        let count = opts.count(100);
        for _ in 0..count {
            let n = rng.gen_range(1..=4);
            let mut t = QMatrix::zeros(&alg, n, n);
            for i in 0..n {
                for j in i..n {
                    t[(i, j)] = random_quaternion(&mut rng, &alg, 3);
                }
            }
            for k in 0..n {
                let y = diagonal_entry_eigenvector(&t, k).map_err(|e| e.to_string())?;
                let ty = t.apply(&y).unwrap();
                ensure(!y.is_zero() && ty == y.scale_right(&t[(k, k)]), || format!("entry {k} of\n{t}"))?;
            }
        }
        Ok(format!("{count} triangular matrices"))
    })
}

pub type Criterion = fn(&SelftestOptions) -> Report;

pub const CRITERIA: [Criterion; 11] = [
    quadratic_identity,
    conjugacy_witnesses,
    jordanlike_round_trip,
    completion,
    non_examples,
    three_boundary,
    master_round_trip,
    supertrace_well_defined,
    field_subroutine,
    brute_force_no,
    triangular_eigenvectors,
];

pub fn run_all(opts: &SelftestOptions) -> Vec<Report> {
    CRITERIA.iter().map(|c| c(opts)).collect()
}
