//! Randomized invariant suites with deterministic seeding, plus the random
//! generators they share with the test suites.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::BraidWord;
use crate::bruhat::{self, det, minor_nw, minor_se, minor_sw};
use crate::compare::{comparison_sign, verify_crossing_with_sign};
use crate::matgen::{self, braid_matrix_b, braid_matrix_p, differential, w0_lift};
use crate::matrix::SquareMatrix;
use crate::ring::{sign_pow, Polynomial};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform word with `strands ∈ [2, max_strands]`, length in
/// `[min_length, max_length]` and uniform letters.
pub fn random_word(
    rng: &mut impl Rng,
    max_strands: usize,
    min_length: usize,
    max_length: usize,
) -> BraidWord {
    let n = rng.gen_range(2..=max_strands);
    let l = rng.gen_range(min_length..=max_length);
    let letters = (0..l).map(|_| rng.gen_range(1..n)).collect();
    BraidWord::new(n, letters).expect("letters drawn in range")
}

/// A random determinant-1 integer matrix together with its inverse, both
/// built as products of elementary and signed-transposition factors (the
/// inverse from the inverted factors in reverse order).
pub fn random_sl_matrix(
    rng: &mut impl Rng,
    n: usize,
    factors: usize,
) -> (SquareMatrix<BigInt>, SquareMatrix<BigInt>) {
    let unit = BigInt::from(1);
    let mut m = SquareMatrix::identity(n, &unit);
    let mut inv = SquareMatrix::identity(n, &unit);
    for _ in 0..factors {
        let i = rng.gen_range(1..n);
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        let (g, g_inv) = match rng.gen_range(0..3) {
            0 => (
                matgen::gen_x(n, i, &c).unwrap(),
                matgen::gen_x(n, i, &-&c).unwrap(),
            ),
            1 => {
                // lower elementary: transpose of x_i(c)
                let mut g = SquareMatrix::identity(n, &unit);
                g.set(i, i - 1, c.clone());
                let mut gi = SquareMatrix::identity(n, &unit);
                gi.set(i, i - 1, -c);
                (g, gi)
            }
            _ => (
                matgen::gen_p(n, i, &c).unwrap(),
                matgen::gen_b(n, i, &c).unwrap(),
            ),
        };
        m = m.mul(&g);
        inv = g_inv.mul(&inv);
    }
    (m, inv)
}

/// A random polynomial in `nvars` variables with total degree at most
/// `max_degree`, at most `max_terms` terms and coefficients in `[-3, 3]`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let terms = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        nvars,
        (0..terms).map(|_| {
            let mut e = vec![0u32; nvars];
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                if nvars > 0 {
                    e[rng.gen_range(0..nvars)] += 1;
                }
            }
            (e, rng.gen_range(-3i64..=3))
        }),
    )
}

/// A random polynomial matrix with nonzero determinant.
pub fn random_invertible_matrix(
    rng: &mut impl Rng,
    n: usize,
    nvars: usize,
) -> SquareMatrix<Polynomial> {
    loop {
        let m = SquareMatrix::from_fn(n, |_, _| random_polynomial(rng, nvars, 1, 3));
        if !det(&m).is_zero() {
            return m;
        }
    }
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub seed: u64,
    pub words: usize,
    pub max_strands: usize,
    pub max_length: usize,
    /// Flip every comparison sign; the verification suite must then fail.
    pub inject_sign_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            words: 200,
            max_strands: 5,
            max_length: 12,
            inject_sign_fault: false,
        }
    }
}

/// First failure found by [`run_selftest`].
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub suite: &'static str,
    pub word: Option<BraidWord>,
    pub k: Option<usize>,
    pub check: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "counterexample in suite {}: {}", self.suite, self.check)?;
        if let Some(w) = &self.word {
            write!(f, "\n  braid: strands={} letters=[{}]", w.strands(), w)?;
        }
        if let Some(k) = self.k {
            write!(f, "\n  k: {k}")?;
        }
        write!(f, "\n  lhs: {}\n  rhs: {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SelftestSummary {
    /// `(suite, checks passed)` in run order.
    pub suites: Vec<(&'static str, usize)>,
}

struct Suite {
    name: &'static str,
    checks: usize,
}

impl Suite {
    fn check<T: fmt::Display>(
        &mut self,
        ok: bool,
        what: &str,
        word: Option<&BraidWord>,
        k: Option<usize>,
        lhs: T,
        rhs: T,
    ) -> Result<(), Box<Counterexample>> {
        if ok {
            self.checks += 1;
            Ok(())
        } else {
            Err(Box::new(Counterexample {
                suite: self.name,
                word: word.cloned(),
                k,
                check: what.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }))
        }
    }
}

fn matrix_suite(words: &[BraidWord]) -> Result<Suite, Box<Counterexample>> {
    let mut s = Suite {
        name: "matrix identities",
        checks: 0,
    };
    for w in words {
        let b = braid_matrix_b(w);
        let p = braid_matrix_p(w);
        let pb = p.mul(&b);
        s.check(pb.is_identity(), "P_beta * B_beta = I", Some(w), None, pb, SquareMatrix::identity(w.strands(), &Polynomial::one(w.len())))?;
        let db = det(&b);
        s.check(db.is_one(), "det B_beta = 1", Some(w), None, db.to_string(), "1".into())?;
        let d = differential(w, w.len()).expect("k = l is in range");
        let dd = det(&d);
        s.check(dd.is_one(), "det differential = 1", Some(w), None, dd.to_string(), "1".into())?;
        let vars = matgen::word_variables(w);
        let mut folded = w0_lift(w.strands(), &Polynomial::one(w.len())).unwrap();
        for (&i, z) in w.letters().iter().zip(&vars) {
            folded = matgen::apply_marked_crossing(&folded, i, z).unwrap();
        }
        s.check(folded == d, "folded marked crossings = product formula", Some(w), Some(w.len()), folded, d)?;
    }
    Ok(s)
}

fn minor_suite(rng: &mut impl Rng, per_size: usize) -> Result<Suite, Box<Counterexample>> {
    let mut s = Suite {
        name: "minor identities",
        checks: 0,
    };
    for n in 2..=5 {
        let w0 = w0_lift(n, &BigInt::from(1)).unwrap();
        for _ in 0..per_size {
            let (m, inv) = random_sl_matrix(rng, n, 4 * n);
            let mw = m.mul(&w0);
            for k in 0..=n {
                let lhs = minor_sw(&mw, k).unwrap();
                let rhs = minor_se(&m, k).unwrap() * sign_pow(k * (n - 1));
                s.check(lhs == rhs, "SW minor of M*w0 = signed SE minor of M", None, Some(k), lhs, rhs)?;
                let lhs = minor_se(&m, k).unwrap();
                let rhs = minor_nw(&inv, n - k).unwrap();
                s.check(lhs == rhs, "SE minor of M = NW minor of M^-1", None, Some(k), lhs, rhs)?;
            }
        }
    }
    Ok(s)
}

fn factorization_suite(words: &[BraidWord]) -> Result<Suite, Box<Counterexample>> {
    let mut s = Suite {
        name: "factorization",
        checks: 0,
    };
    for w in words {
        let d = differential(w, w.len()).unwrap();
        let f = match bruhat::bruhat_factorize_poly(&d) {
            Ok(f) => f,
            Err(e) => {
                return Err(Box::new(Counterexample {
                    suite: s.name,
                    word: Some(w.clone()),
                    k: Some(w.len()),
                    check: "differential factorizes".into(),
                    lhs: e.to_string(),
                    rhs: "a factorization".into(),
                }))
            }
        };
        let back = f.reconstruct();
        let rational = d.to_rational();
        s.check(back == rational, "U1 * R * U2 = M", Some(w), Some(w.len()), back, rational)?;
        s.check(
            f.u_left.is_unipotent_upper() && f.u_right.is_unipotent_upper(),
            "outer factors unipotent upper-triangular",
            Some(w),
            Some(w.len()),
            f.u_left.clone(),
            f.u_right.clone(),
        )?;
        let nonzero = f.rook.entries().iter().filter(|x| !x.is_zero()).count();
        s.check(nonzero == w.strands(), "rook is monomial", Some(w), Some(w.len()), nonzero, w.strands())?;
    }
    Ok(s)
}

fn verification_suite(words: &[BraidWord], flip: bool) -> Result<Suite, Box<Counterexample>> {
    let mut s = Suite {
        name: "verification",
        checks: 0,
    };
    for w in words {
        for k in 1..=w.len() {
            let mut sign = comparison_sign(w.strands(), w.letter(k));
            if flip {
                sign = -sign;
            }
            let r = verify_crossing_with_sign(w, k, false, sign).expect("k in range");
            s.check(r.holds, "A_k = sgn_k * signed SW minor of differential", Some(w), Some(k), &r.cluster_variable, &r.morse_side)?;
        }
    }
    Ok(s)
}

/// Runs every suite, stopping at the first counterexample.
pub fn run_selftest(config: &SelftestConfig) -> Result<SelftestSummary, Box<Counterexample>> {
    let mut rng = rng_from_seed(config.seed);
    let words: Vec<BraidWord> = (0..config.words)
        .map(|_| random_word(&mut rng, config.max_strands.max(2), 1, config.max_length.max(1)))
        .collect();
    let mut summary = SelftestSummary::default();
    for suite in [
        verification_suite(&words, config.inject_sign_fault)?,
        matrix_suite(&words)?,
        minor_suite(&mut rng, 25)?,
        factorization_suite(&words)?,
    ] {
        summary.suites.push((suite.name, suite.checks));
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let cfg = SelftestConfig {
            words: 10,
            max_strands: 4,
            max_length: 6,
            ..Default::default()
        };
        let summary = run_selftest(&cfg).unwrap();
        assert_eq!(summary.suites.len(), 4);
        assert!(summary.suites.iter().all(|(_, n)| *n > 0));
    }

    #[test]
    fn injected_fault_is_caught() {
        let cfg = SelftestConfig {
            words: 5,
            inject_sign_fault: true,
            ..Default::default()
        };
        let ce = run_selftest(&cfg).unwrap_err();
        assert_eq!(ce.suite, "verification");
        assert!(ce.word.is_some() && ce.k.is_some());
    }

    #[test]
    fn sl_matrices_have_the_stated_inverse() {
        let mut rng = rng_from_seed(7);
        for n in 2..=5 {
            let (m, inv) = random_sl_matrix(&mut rng, n, 10);
            assert!(m.mul(&inv).is_identity());
            assert_eq!(det(&m), BigInt::from(1));
        }
    }
}
