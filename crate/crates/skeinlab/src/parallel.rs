//! Parallel evaluation on a rayon pool with a shared memo table.
//!
//! Every result is an exact ring element, so the order in which partial
//! sums arrive does not matter: a single-threaded run gives the same bytes.

use rayon::prelude::*;
use skeinlab_core::conventions::ConventionLedger;
use skeinlab_core::coproduct::CoproductElement;
use skeinlab_core::diagram::Trace;
use skeinlab_core::jaeger::{Labeller, StateSumTerm};
use skeinlab_core::skein::{first_ascending_crossing, flip_crossing, smooth_crossing};
use skeinlab_core::verify::{verify_case, CaseReport, Identity};
use skeinlab_core::{Colour, EvalError, MemoStore, MorseWord, Scalar, SkeinEngine, Strand, Surface};

use crate::memo::SharedMemo;

/// Environment variable with the worker count; `0` or unset means one per
/// core.
pub const THREADS_VAR: &str = "SKEINLAB_THREADS";

/// Skein levels below the root that fork both branches onto the pool.
const FORK_DEPTH: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum PoolError {
    #[error("{THREADS_VAR} must be a non-negative integer, got {0:?}")]
    BadThreadCount(String),
    #[error(transparent)]
    Build(#[from] rayon::ThreadPoolBuildError),
}

/// Worker count from [`THREADS_VAR`]; `0` means automatic.
pub fn threads_from_env() -> Result<usize, PoolError> {
    match std::env::var(THREADS_VAR) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| PoolError::BadThreadCount(v)),
        _ => Ok(0),
    }
}

pub struct Runner {
    pool: rayon::ThreadPool,
    engine: SkeinEngine<SharedMemo>,
}

impl Runner {
    /// `threads == 0` sizes the pool automatically. Deterministic mode uses
    /// one worker.
    pub fn new(threads: usize, deterministic: bool) -> Result<Self, PoolError> {
        let threads = if deterministic { 1 } else { threads };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Runner {
            pool,
            engine: SkeinEngine::new(SharedMemo::default()),
        })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn engine(&self) -> &SkeinEngine<SharedMemo> {
        &self.engine
    }

    /// Framed HOMFLY value, forking the first skein levels across the pool.
    pub fn eval(&self, w: &MorseWord) -> Result<Scalar, EvalError> {
        let colours = w.colours();
        if w.surface != Surface::Plane || colours.len() > 1 || colours.contains(&Colour::Orange) {
            // Let the engine report the precise problem.
            return self.engine.eval_one_colour(w);
        }
        w.validate()?;
        self.pool.install(|| self.eval_split(&w.strip_colours(), 0))
    }

    fn eval_split(&self, w: &MorseWord, depth: usize) -> Result<Scalar, EvalError> {
        if depth >= FORK_DEPTH {
            return self.engine.eval_one_colour(w);
        }
        let key = w.key_bytes();
        if let Some(v) = self.engine.memo().get(&key) {
            return Ok(v);
        }
        let t = Trace::new(w)?;
        let Some(ci) = first_ascending_crossing(&t) else {
            return self.engine.eval_one_colour(w);
        };
        let c = t.crossings[ci];
        let strand = |seg: usize| Strand::new(t.segments[seg].orientation, t.segments[seg].colour);
        let flipped = flip_crossing(w, c.event);
        let smoothed = smooth_crossing(w, c.event, strand(c.bottom[0]), strand(c.bottom[1]), Colour::default());
        let (f, s) = rayon::join(
            || self.eval_split(&flipped, depth + 1),
            || self.eval_split(&smoothed, depth + 1),
        );
        let zs = &Scalar::z(1) * &s?;
        let value = if c.sign > 0 { &f? + &zs } else { &f? - &zs };
        self.engine.memo().insert(key, value.clone());
        Ok(value)
    }

    /// State-sum terms in enumeration order, computed in parallel.
    pub fn state_sum_terms(
        &self,
        w: &MorseWord,
        n: usize,
        ledger: ConventionLedger,
    ) -> Result<Vec<StateSumTerm>, EvalError> {
        let lab = Labeller::new(w, n, ledger)?;
        let labellings = lab.enumerate();
        self.pool
            .install(|| labellings.par_iter().map(|f| lab.term(w, f)).collect())
    }

    /// The state sum with terms evaluated in parallel.
    pub fn state_sum(&self, w: &MorseWord, n: usize, ledger: ConventionLedger) -> Result<Scalar, EvalError> {
        let terms = self.state_sum_terms(w, n, ledger)?;
        self.sum_terms(&terms, n)
    }

    /// Evaluates state-sum terms in parallel and adds them up.
    pub fn sum_terms(&self, terms: &[StateSumTerm], n: usize) -> Result<Scalar, EvalError> {
        let values: Vec<Scalar> = self
            .pool
            .install(|| terms.par_iter().map(|t| t.value(&self.engine)).collect::<Result<_, _>>())?;
        Ok(sum(values, n))
    }

    /// Evaluates a coproduct element term by term in parallel.
    pub fn evaluate(&self, x: &CoproductElement) -> Result<Scalar, EvalError> {
        let terms: Vec<_> = x.terms.iter().collect();
        let values: Vec<Scalar> = self.pool.install(|| {
            terms
                .par_iter()
                .map(|(words, c)| CoproductElement::term_value(&self.engine, words, c))
                .collect::<Result<_, _>>()
        })?;
        Ok(sum(values, x.slots))
    }

    /// Runs one identity over a corpus, one diagram per task; reports come
    /// back in corpus order.
    pub fn verify(
        &self,
        identity: Identity,
        corpus: &[(String, MorseWord)],
        ledger: ConventionLedger,
    ) -> Result<Vec<CaseReport>, EvalError> {
        self.pool.install(|| {
            corpus
                .par_iter()
                .map(|(name, w)| verify_case(identity, &self.engine, name, w, ledger))
                .collect()
        })
    }

    /// Runs `f` on the pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

fn sum(values: Vec<Scalar>, arity: usize) -> Scalar {
    values.into_iter().fold(Scalar::zero(arity), |a, b| &a + &b)
}
