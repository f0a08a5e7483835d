//! Seeded property suites, one per identity.
//!
//! Trial `i` draws from `sample::trial_rng(seed, i)`, so any failure can be
//! replayed alone. Trials run in parallel and are merged in index order, which
//! keeps reports byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coinv::{self, CoinvElem, FormMap, Pairing};
use crate::error::{Error, Result};
use crate::fields2d;
use crate::linalg;
use crate::matalg::{ClassicalAlgebra, Matrix};
use crate::sample;
use crate::scalar::{FieldSpec, Scalar};
use crate::space::SymplecticSpace;
use crate::tensor::{self, Sign, TensorElem};
use crate::word::{Letter, SegmentConvention, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Jacobi,
    Alternating,
    Grading,
    Derivation,
    WellDefined,
    Functorial,
    BasisIndependence,
    IotaHom,
    Lemma,
    SpIso,
    Dims,
    Tangency,
    VfHom,
    SoSpClosure,
    Proposition,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Jacobi,
        Suite::Alternating,
        Suite::Grading,
        Suite::Derivation,
        Suite::WellDefined,
        Suite::Functorial,
        Suite::BasisIndependence,
        Suite::IotaHom,
        Suite::Lemma,
        Suite::SpIso,
        Suite::Dims,
        Suite::Tangency,
        Suite::VfHom,
        Suite::SoSpClosure,
        Suite::Proposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Alternating => "alternating",
            Suite::Grading => "grading",
            Suite::Derivation => "derivation",
            Suite::WellDefined => "well-defined",
            Suite::Functorial => "functorial",
            Suite::BasisIndependence => "basis-independence",
            Suite::IotaHom => "iota-hom",
            Suite::Lemma => "lemma",
            Suite::SpIso => "sp-iso",
            Suite::Dims => "dims",
            Suite::Tangency => "tangency",
            Suite::VfHom => "vf-hom",
            Suite::SoSpClosure => "so-sp-closure",
            Suite::Proposition => "proposition",
        }
    }

    /// Word-length cap used when none is configured.
    pub fn default_max_len(self) -> usize {
        match self {
            Suite::Dims => 7,
            Suite::WellDefined | Suite::Lemma | Suite::VfHom | Suite::SoSpClosure => 5,
            // a dense change of basis expands a length-l word into dim^l words
            Suite::Proposition | Suite::Functorial | Suite::BasisIndependence => 4,
            _ => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Deliberately broken variants, used to show that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// The bracket reads the pairing from the upper triangle of the Gram
    /// matrix only.
    BracketSignFlip,
    /// The closed-form field commutator treats adjacent segments as zero.
    DijLiteralZero,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::BracketSignFlip => "bracket-sign-flip",
            Mutation::DijLiteralZero => "dij-literal-zero",
        }
    }

    fn pairing(self) -> Pairing {
        match self {
            Mutation::BracketSignFlip => Pairing::UpperTriangle,
            _ => Pairing::Form,
        }
    }

    fn convention(self) -> SegmentConvention {
        match self {
            Mutation::DijLiteralZero => SegmentConvention::LiteralZero,
            _ => SegmentConvention::EmptyWord,
        }
    }
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Mutation::None, Mutation::BracketSignFlip, Mutation::DijLiteralZero]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub field: FieldSpec,
    pub dim: usize,
    /// Explicit Gram matrix; the standard form when absent.
    pub gram: Option<Vec<Vec<Scalar>>>,
    pub seed: u64,
    pub trials: usize,
    /// Word-length cap; the suite default when absent.
    pub max_len: Option<usize>,
    /// Run only this trial index.
    pub only_trial: Option<u64>,
    pub mutation: Mutation,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            field: FieldSpec::RATIONALS,
            dim: 2,
            gram: None,
            seed: 0,
            trials: 100,
            max_len: None,
            only_trial: None,
            mutation: Mutation::None,
        }
    }
}

impl SuiteConfig {
    pub fn space(&self) -> Result<Arc<SymplecticSpace>> {
        let space = match &self.gram {
            Some(g) => SymplecticSpace::with_gram(self.field, g.clone())?,
            None => SymplecticSpace::standard(self.field, self.dim)?,
        };
        Ok(space.into_shared())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub field: FieldSpec,
    pub dim: usize,
    pub seed: u64,
    pub max_len: usize,
    pub mutation: Mutation,
    /// Number of trials run.
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub notes: BTreeMap<String, String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "suite": self.suite.name(),
            "field": self.field.to_string(),
            "dim": self.dim,
            "seed": self.seed,
            "max_len": self.max_len,
            "mutation": self.mutation.name(),
            "trials": self.trials,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "trial": f.trial,
                "seed": f.seed,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

const SHOWN_FAILURES: usize = 5;

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} over {}, dim {}, seed {}, max length {}{}",
            self.suite,
            self.field,
            self.dim,
            self.seed,
            self.max_len,
            match self.mutation {
                Mutation::None => String::new(),
                m => format!(", mutation {}", m.name()),
            }
        )?;
        for (k, v) in &self.notes {
            writeln!(f, "  {k}: {v}")?;
        }
        for fail in self.failures.iter().take(SHOWN_FAILURES) {
            writeln!(f, "  FAIL trial {} (seed {}): {}", fail.trial, fail.seed, fail.detail)?;
        }
        if self.failures.len() > SHOWN_FAILURES {
            writeln!(f, "  ... {} more", self.failures.len() - SHOWN_FAILURES)?;
        }
        writeln!(
            f,
            "{}: {} trials, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials,
            self.failures.len()
        )
    }
}

/// Outcome of one trial: `None` when the identity held.
type Outcome = Result<Option<String>>;

const DETAIL_LIMIT: usize = 600;

fn clip(mut s: String) -> String {
    if s.len() > DETAIL_LIMIT {
        let mut cut = DETAIL_LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(" ...");
    }
    s
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(clip(detail()))
    }
}

struct Ctx {
    cfg: SuiteConfig,
    space: Arc<SymplecticSpace>,
    max_len: usize,
    notes: BTreeMap<String, String>,
}

impl Ctx {
    fn field(&self) -> FieldSpec {
        self.space.field()
    }

    fn bracket(&self, a: &CoinvElem, b: &CoinvElem) -> CoinvElem {
        a.bracket_with(b, self.cfg.mutation.pairing())
    }

    fn trial_indices(&self, count: usize) -> Vec<u64> {
        match self.cfg.only_trial {
            Some(t) => vec![t],
            None => (0..count as u64).collect(),
        }
    }

    /// Runs `count` seeded trials in parallel.
    fn run<F>(&self, count: usize, f: F) -> (usize, Vec<Failure>)
    where
        F: Fn(&mut ChaCha8Rng, u64) -> Outcome + Sync,
    {
        let seed = self.cfg.seed;
        let indices = self.trial_indices(count);
        self.collect(&indices, |t| f(&mut sample::trial_rng(seed, t), t))
    }

    /// Runs a fixed list of cases, indexed like trials.
    fn run_cases<T: Sync, F>(&self, cases: &[T], f: F) -> (usize, Vec<Failure>)
    where
        F: Fn(&T) -> Outcome + Sync,
    {
        let indices: Vec<u64> = self
            .trial_indices(cases.len())
            .into_iter()
            .filter(|&t| (t as usize) < cases.len())
            .collect();
        self.collect(&indices, |t| f(&cases[t as usize]))
    }

    fn collect<F>(&self, indices: &[u64], f: F) -> (usize, Vec<Failure>)
    where
        F: Fn(u64) -> Outcome + Sync,
    {
        let seed = self.cfg.seed;
        let outcomes: Vec<(u64, Outcome)> = indices.par_iter().map(|&t| (t, f(t))).collect();
        let failures = outcomes
            .into_iter()
            .filter_map(|(trial, outcome)| {
                let detail = match outcome {
                    Ok(None) => return None,
                    Ok(Some(d)) => d,
                    Err(e) => format!("error: {e}"),
                };
                Some(Failure { trial, seed, detail })
            })
            .collect();
        (indices.len(), failures)
    }
}

/// Runs one suite. Configuration problems (a suite that needs the plane, odd
/// characteristic or a nondegenerate form) are errors, not failures.
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    let space = cfg.space()?;
    let max_len = cfg.max_len.unwrap_or_else(|| suite.default_max_len());
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        space,
        max_len,
        notes: BTreeMap::new(),
    };
    let (trials, failures) = match suite {
        Suite::Jacobi => jacobi(&ctx),
        Suite::Alternating => alternating(&ctx),
        Suite::Grading => grading(&ctx),
        Suite::Derivation => derivation(&ctx),
        Suite::WellDefined => well_defined(&ctx),
        Suite::Functorial => functorial(&ctx),
        Suite::BasisIndependence => basis_independence(&ctx),
        Suite::IotaHom => iota_hom(&mut ctx),
        Suite::Lemma => lemma(&ctx)?,
        Suite::SpIso => sp_iso(&mut ctx)?,
        Suite::Dims => dims(&ctx),
        Suite::Tangency => tangency(&ctx)?,
        Suite::VfHom => vf_hom(&mut ctx)?,
        Suite::SoSpClosure => so_sp_closure(&ctx)?,
        Suite::Proposition => proposition(&ctx)?,
    };
    Ok(Report {
        suite,
        field: ctx.field(),
        dim: ctx.space.dim(),
        seed: cfg.seed,
        max_len,
        mutation: cfg.mutation,
        trials,
        failures,
        notes: ctx.notes,
    })
}

fn random_class(ctx: &Ctx, rng: &mut ChaCha8Rng, min_len: usize, terms: usize) -> CoinvElem {
    sample::coinv_mixed(rng, &ctx.space, min_len, ctx.max_len.max(min_len), terms)
}

fn jacobi(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let a = random_class(ctx, rng, 2, 3);
        let b = random_class(ctx, rng, 2, 3);
        let c = random_class(ctx, rng, 2, 3);
        let sum = &(&ctx.bracket(&a, &ctx.bracket(&b, &c)) + &ctx.bracket(&b, &ctx.bracket(&c, &a)))
            + &ctx.bracket(&c, &ctx.bracket(&a, &b));
        Ok(check(sum.is_zero(), || {
            format!("a = {a}; b = {b}; c = {c}; [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = {sum}")
        }))
    })
}

fn alternating(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let a = random_class(ctx, rng, 2, 3);
        let b = random_class(ctx, rng, 2, 3);
        let aa = ctx.bracket(&a, &a);
        if !aa.is_zero() {
            return Ok(check(false, || format!("a = {a}; [a,a] = {aa}")));
        }
        let sym = &ctx.bracket(&a, &b) + &ctx.bracket(&b, &a);
        Ok(check(sym.is_zero(), || format!("a = {a}; b = {b}; [a,b] + [b,a] = {sym}")))
    })
}

fn grading(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let la = rng.random_range(2..=ctx.max_len.max(2));
        let lb = rng.random_range(2..=ctx.max_len.max(2));
        let a = sample::coinv_of_len(rng, &ctx.space, la, 3);
        let b = sample::coinv_of_len(rng, &ctx.space, lb, 3);
        let ab = ctx.bracket(&a, &b);
        let expected = la + lb - 2;
        let bad = ab.terms().find(|(n, _)| n.len() != expected);
        Ok(check(bad.is_none(), || {
            format!(
                "a = {a} (degree {}); b = {b} (degree {}); [a,b] = {ab} has a term of degree {}",
                la as i64 - 2,
                lb as i64 - 2,
                bad.map(|(n, _)| n.len() as i64 - 2).unwrap_or_default()
            )
        }))
    })
}

fn derivation(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let a = random_class(ctx, rng, 0, 3);
        let b = random_class(ctx, rng, 0, 3);
        let ab = ctx.bracket(&a, &b);
        for x in 0..ctx.space.dim() as Letter {
            let lhs = ab.derivation(x);
            let rhs = &ctx.bracket(&a.derivation(x), &b) + &ctx.bracket(&a, &b.derivation(x));
            if lhs != rhs {
                let name = &ctx.space.names()[x as usize];
                return Ok(check(false, || {
                    format!("a = {a}; b = {b}; D_{name}[a,b] = {lhs} but [D_{name} a, b] + [a, D_{name} b] = {rhs}")
                }));
            }
        }
        Ok(None)
    })
}

/// Every rotation of every representative gives the same bracket, `D_x`
/// and `N`; exhaustive over necklace pairs of length up to the cap.
fn well_defined(ctx: &Ctx) -> (usize, Vec<Failure>) {
    let space = &ctx.space;
    let necklaces: Vec<Word> = (0..=ctx.max_len)
        .flat_map(|l| coinv::necklace_basis(space.dim(), l))
        .map(|n| n.word().clone())
        .collect();
    let cases: Vec<usize> = (0..necklaces.len()).collect();
    ctx.run_cases(&cases, |&i| {
        let u = &necklaces[i];
        let trace = CoinvElem::trace_word(space, u);
        for r in 0..u.len().max(1) as i64 {
            let ur = u.rotate(r);
            if CoinvElem::trace_word(space, &ur) != trace {
                return Ok(Some(format!("N depends on the representative {}", space.format_word(&ur))));
            }
            for x in 0..space.dim() as Letter {
                if CoinvElem::derivation_word(space, x, &ur) != CoinvElem::derivation_word(space, x, u) {
                    return Ok(Some(format!(
                        "D_{} depends on the representative {}",
                        space.names()[x as usize],
                        space.format_word(&ur)
                    )));
                }
            }
        }
        for v in &necklaces {
            let reference = bracket_words(ctx, u, v);
            for r in 0..u.len().max(1) as i64 {
                for s in 0..v.len().max(1) as i64 {
                    let (ur, vs) = (u.rotate(r), v.rotate(s));
                    let got = bracket_words(ctx, &ur, &vs);
                    if got != reference {
                        return Ok(Some(format!(
                            "bracket of representatives {} and {} gives {got}, but {} and {} give {reference}",
                            space.format_word(&ur),
                            space.format_word(&vs),
                            space.format_word(u),
                            space.format_word(v)
                        )));
                    }
                }
            }
        }
        Ok(None)
    })
}

fn bracket_words(ctx: &Ctx, u: &Word, v: &Word) -> CoinvElem {
    match ctx.cfg.mutation.pairing() {
        Pairing::Form => CoinvElem::bracket_words(&ctx.space, u, v),
        // the mutated pairing has no raw-representative entry point; go
        // through classes, which cannot detect representative dependence
        Pairing::UpperTriangle => ctx.bracket(
            &CoinvElem::from_word(ctx.space.clone(), u),
            &CoinvElem::from_word(ctx.space.clone(), v),
        ),
    }
}

fn random_form_map(space: &Arc<SymplecticSpace>, rng: &mut ChaCha8Rng) -> Result<FormMap> {
    let mut phi = FormMap::identity(space.clone());
    // small entries keep coefficient heights and expansions manageable
    for _ in 0..2 {
        let v: Vec<Scalar> = (0..space.dim())
            .map(|_| sample::scalar(rng, space.field(), 1))
            .collect();
        let c = sample::nonzero_scalar(rng, space.field(), 2);
        phi = FormMap::transvection(space.clone(), &v, &c)?.compose(&phi)?;
    }
    Ok(phi)
}

fn functorial(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let phi = random_form_map(&ctx.space, rng)?;
        let psi = random_form_map(&ctx.space, rng)?;
        let a = random_class(ctx, rng, 2, 2);
        let b = random_class(ctx, rng, 2, 2);
        let lhs = ctx.bracket(&a, &b).induced_map(&phi)?;
        let rhs = ctx.bracket(&a.induced_map(&phi)?, &b.induced_map(&phi)?);
        if lhs != rhs {
            return Ok(check(false, || {
                format!("a = {a}; b = {b}; L(phi)[a,b] = {lhs} but [L(phi)a, L(phi)b] = {rhs}")
            }));
        }
        let composed = a.induced_map(&psi.compose(&phi)?)?;
        let stepwise = a.induced_map(&phi)?.induced_map(&psi)?;
        Ok(check(composed == stepwise, || {
            format!("a = {a}; L(psi phi) a = {composed} but L(psi) L(phi) a = {stepwise}")
        }))
    })
}

fn random_invertible(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix<Scalar> {
    loop {
        let m = sample::matrix(rng, field, n, 1);
        if m.rank() == n {
            return m;
        }
    }
}

/// Rewrites the form in a random basis `f_i = sum_k P[k][i] e_k` and
/// brackets there. The comparison happens in the new basis: transporting the
/// direct bracket forward is equivalent to transporting the new one back,
/// and far cheaper, since the direct bracket has few terms.
fn basis_independence(ctx: &Ctx) -> (usize, Vec<Failure>) {
    ctx.run(ctx.cfg.trials, |rng, _| {
        let space = &ctx.space;
        let field = space.field();
        let r = space.dim();
        let p = random_invertible(rng, field, r);
        let g = Matrix::from_rows(space.gram().to_vec())?;
        let g_new = p.transpose().mul(&g)?.mul(&p)?;
        let new_space = SymplecticSpace::new(field, space.names().to_vec(), g_new.rows())?.into_shared();
        let to_old = FormMap::new(new_space.clone(), space.clone(), p.rows())?;
        let to_new = FormMap::new(space.clone(), new_space.clone(), p.inverse()?.rows())?;
        let a = random_class(ctx, rng, 2, 2);
        let b = random_class(ctx, rng, 2, 2);
        let (a2, b2) = (a.induced_map(&to_new)?, b.induced_map(&to_new)?);
        if a2.induced_map(&to_old)? != a {
            return Ok(check(false, || format!("a = {a}; P = {p}; transport there and back changes a")));
        }
        let there = a2.bracket_with(&b2, ctx.cfg.mutation.pairing());
        let direct = ctx.bracket(&a, &b).induced_map(&to_new)?;
        Ok(check(there == direct, || {
            format!("a = {a}; b = {b}; P = {p}; bracket in the new basis is {there}, transported direct bracket is {direct}")
        }))
    })
}

fn iota_hom(ctx: &mut Ctx) -> (usize, Vec<Failure>) {
    let odd = ctx.field().require_odd_characteristic().is_ok();
    if !odd {
        ctx.notes.insert(
            "projections".into(),
            "skipped: the eigenspace projections need characteristic != 2".into(),
        );
    }
    let ctx = &*ctx;
    ctx.run(ctx.cfg.trials, |rng, _| {
        let a = random_class(ctx, rng, 2, 3);
        let b = random_class(ctx, rng, 2, 3);
        let lhs = ctx.bracket(&a, &b).iota();
        let rhs = ctx.bracket(&a.iota(), &b.iota());
        if lhs != rhs {
            return Ok(check(false, || {
                format!("a = {a}; b = {b}; iota[a,b] = {lhs} but [iota a, iota b] = {rhs}")
            }));
        }
        if !odd {
            return Ok(None);
        }
        let (ap, bp) = (a.p_projection(Sign::Plus)?, b.p_projection(Sign::Plus)?);
        let plus = ctx.bracket(&ap, &bp);
        if !plus.is_iota_eigenvector(Sign::Plus) {
            return Ok(check(false, || format!("[P+, P+] not in P+: [{ap}, {bp}] = {plus}")));
        }
        let (am, bm) = (a.p_projection(Sign::Minus)?, b.p_projection(Sign::Minus)?);
        let minus = ctx.bracket(&am, &bm);
        Ok(check(minus.is_iota_eigenvector(Sign::Plus), || {
            format!("[P-, P-] not in P+: [{am}, {bm}] = {minus}")
        }))
    })
}

/// A basis of `{ t in V^{(x) l} : sigma t = t, extra(t) = 0 }` where `extra`
/// is given by its rows.
fn invariant_kernel(space: &Arc<SymplecticSpace>, l: usize, extra: Vec<Vec<Scalar>>) -> Vec<TensorElem> {
    let words = tensor::all_words(space.dim(), l);
    let mut rows = operator_rows(space, l, |t| &t.rotate(1) - t);
    rows.extend(extra);
    linalg::kernel(&rows, words.len(), space.field())
        .into_iter()
        .map(|v| {
            let mut t = TensorElem::zero(space.clone());
            for (w, c) in words.iter().zip(v) {
                t.add_term(w.clone(), &c);
            }
            t
        })
        .collect()
}

/// The matrix of a linear map `f` on `V^{(x) l}` in the word basis.
fn operator_rows(space: &Arc<SymplecticSpace>, l: usize, f: impl Fn(&TensorElem) -> TensorElem) -> Vec<Vec<Scalar>> {
    let field = space.field();
    let words = tensor::all_words(space.dim(), l);
    let size = words.len();
    let mut rows = vec![vec![Scalar::zero(field); size]; size];
    for (col, w) in words.iter().enumerate() {
        let image = f(&TensorElem::from_word(space.clone(), w.clone()));
        for (v, c) in image.terms() {
            rows[tensor::word_index(v, space.dim())][col] = c.clone();
        }
    }
    rows
}

/// For cyclic-invariant `t = sum_i e_i p_i` of length `l`:
/// `iota t = s t` exactly when every `iota p_i = -s p_i`. Checked on bases:
/// each basis vector of the invariant `s`-eigenspace has parts in the
/// opposite eigenspace, and both subspaces have the same dimension.
fn lemma(ctx: &Ctx) -> Result<(usize, Vec<Failure>)> {
    ctx.field().require_odd_characteristic()?;
    let space = &ctx.space;
    let field = space.field();
    let mut cases = Vec::new();
    for l in 1..=ctx.max_len {
        for sign in [Sign::Plus, Sign::Minus] {
            cases.push((l, sign));
        }
    }
    Ok(ctx.run_cases(&cases, |&(l, sign)| {
        let s = Scalar::from_i64(field, sign.value());
        let eigen_rows = operator_rows(space, l, |t| &t.iota() - &t.scale(&s));
        let basis = invariant_kernel(space, l, eigen_rows);
        for t in &basis {
            for (i, p) in t.first_letter_decompose(l)?.iter().enumerate() {
                if !p.is_iota_eigenvector(sign.opposite()) {
                    return Ok(Some(format!(
                        "l = {l}, sign {}: basis vector {t} has part p_{} = {p} outside the opposite eigenspace",
                        sign.value(),
                        i + 1
                    )));
                }
            }
        }
        // parts in the opposite eigenspace: t -> sum_i e_i (iota p_i + s p_i)
        let part_rows = operator_rows(space, l, |t| {
            let parts: Vec<TensorElem> = t
                .first_letter_decompose(l)
                .expect("homogeneous")
                .iter()
                .map(|p| &p.iota() + &p.scale(&s))
                .collect();
            TensorElem::reassemble(space, &parts)
        });
        let converse = invariant_kernel(space, l, part_rows);
        Ok(check(converse.len() == basis.len(), || {
            format!(
                "l = {l}, sign {}: {} invariant eigenvectors but {} invariant tensors with parts in the opposite eigenspace",
                sign.value(),
                basis.len(),
                converse.len()
            )
        }))
    }))
}

/// Candidates for the scalar `s` in `sp_iso([a, b]) = s [sp_iso a, sp_iso b]`.
const SP_ISO_CANDIDATES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

fn sp_iso(ctx: &mut Ctx) -> Result<(usize, Vec<Failure>)> {
    let space = ctx.space.clone();
    if !space.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let field = space.field();
    let basis: Vec<CoinvElem> = coinv::necklace_basis(space.dim(), 2)
        .iter()
        .map(|n| CoinvElem::from_word(space.clone(), n.word()))
        .collect();
    let images: Vec<Matrix<Scalar>> = basis.iter().map(|a| a.sp_iso()).collect::<Result<_>>()?;
    let gram = Matrix::from_rows(space.gram().to_vec())?;
    let sp = ClassicalAlgebra::sp_with_form(gram)?;

    let mut failures = Vec::new();
    let mut checks = 0;
    // the images lie in sp(V) and span it
    for (a, m) in basis.iter().zip(&images) {
        checks += 1;
        if !sp.contains(m) {
            failures.push(Failure {
                trial: 0,
                seed: ctx.cfg.seed,
                detail: format!("sp_iso({a}) = {m} is not in {sp}"),
            });
        }
    }
    let flat: Vec<Vec<Scalar>> = images
        .iter()
        .map(|m| m.rows().into_iter().flatten().collect())
        .collect();
    let r = space.dim();
    checks += 1;
    if linalg::rank(&flat, r * r) != r * (r + 1) / 2 {
        failures.push(Failure {
            trial: 0,
            seed: ctx.cfg.seed,
            detail: "sp_iso is not injective on degree 0".into(),
        });
    }

    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect();
    checks += pairs.len();
    let pair_data: Vec<Result<(Matrix<Scalar>, Matrix<Scalar>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let lhs = ctx.bracket(&basis[i], &basis[j]).sp_iso()?;
            let rhs = images[i].commutator(&images[j])?;
            Ok((lhs, rhs))
        })
        .collect();
    let pair_data: Vec<(Matrix<Scalar>, Matrix<Scalar>)> = pair_data.into_iter().collect::<Result<_>>()?;
    let candidates: Vec<((i64, i64), Scalar)> = SP_ISO_CANDIDATES
        .iter()
        .filter_map(|&(n, d)| {
            Scalar::from_fraction(field, &n.into(), &d.into())
                .ok()
                .map(|s| ((n, d), s))
        })
        .collect();
    let valid: Vec<&((i64, i64), Scalar)> = candidates
        .iter()
        .filter(|(_, s)| pair_data.iter().all(|(lhs, rhs)| *lhs == rhs.scale(s)))
        .collect();
    match valid.first() {
        Some(((n, d), _)) => {
            let text = if *d == 1 { n.to_string() } else { format!("{n}/{d}") };
            ctx.notes.insert("s".into(), text);
        }
        None => {
            let (k, (lhs, rhs)) = pair_data
                .iter()
                .enumerate()
                .find(|(_, (lhs, rhs))| !candidates.iter().any(|(_, s)| *lhs == rhs.scale(s)))
                .unwrap_or((0, &pair_data[0]));
            let (i, j) = pairs[k];
            failures.push(Failure {
                trial: k as u64,
                seed: ctx.cfg.seed,
                detail: format!(
                    "no global s: sp_iso([{}, {}]) = {lhs} while the commutator of images is {rhs}",
                    basis[i], basis[j]
                ),
            });
        }
    }
    Ok((checks, failures))
}

/// Necklace enumeration against the quotient-rank oracle and the Burnside
/// count, for every length up to the cap.
fn dims(ctx: &Ctx) -> (usize, Vec<Failure>) {
    let (r, field) = (ctx.space.dim(), ctx.field());
    let lengths: Vec<usize> = (0..=ctx.max_len).collect();
    ctx.run_cases(&lengths, |&l| {
        let count = coinv::graded_dimension(r, l);
        let oracle = coinv::quotient_dimension(field, r, l);
        let burnside = coinv::burnside_count(r, l);
        Ok(check(count == oracle && count as u128 == burnside, || {
            format!("l = {l}: {count} necklaces, quotient rank gives {oracle}, Burnside gives {burnside}")
        }))
    })
}

fn require_plane(ctx: &Ctx) -> Result<()> {
    if ctx.space.is_standard_plane() {
        Ok(())
    } else {
        Err(Error::NotPlanar)
    }
}

fn matrix_pair(rng: &mut ChaCha8Rng, field: FieldSpec, trial: u64) -> (Matrix<Scalar>, Matrix<Scalar>) {
    let n = 2 + (trial % 2) as usize;
    (sample::matrix(rng, field, n, 4), sample::matrix(rng, field, n, 4))
}

fn tangency(ctx: &Ctx) -> Result<(usize, Vec<Failure>)> {
    require_plane(ctx)?;
    Ok(ctx.run(ctx.cfg.trials, |rng, trial| {
        let a = random_class(ctx, rng, 1, 3);
        let (x, y) = matrix_pair(rng, ctx.field(), trial);
        let defect = fields2d::tangency_defect(&a, &x, &y)?;
        Ok(check(defect.is_zero(), || {
            format!("a = {a}; X = {x}; Y = {y}; tangency defect {defect}")
        }))
    }))
}

fn vf_hom(ctx: &mut Ctx) -> Result<(usize, Vec<Failure>)> {
    require_plane(ctx)?;
    ctx.notes.insert(
        "vf_bracket_sign".into(),
        fields2d::VF_BRACKET_SIGN.to_string(),
    );
    let ctx = &*ctx;
    let convention = ctx.cfg.mutation.convention();
    Ok(ctx.run(ctx.cfg.trials, |rng, trial| {
        let a = random_class(ctx, rng, 1, 2);
        let b = random_class(ctx, rng, 1, 2);
        let (x, y) = matrix_pair(rng, ctx.field(), trial);
        let routes = [
            ("dual-number", fields2d::vf_bracket_defect(&a, &b, &x, &y)?),
            ("composition", fields2d::composition_defect(&a, &b, &x, &y)?),
            ("closed-form", fields2d::closed_form_defect(&a, &b, &x, &y, convention)?),
        ];
        for (name, defect) in routes {
            if !defect.is_zero() {
                return Ok(check(false, || {
                    format!(
                        "a = {a}; b = {b}; X = {x}; Y = {y}; {name} defect ({}, {})",
                        defect.first, defect.second
                    )
                }));
            }
        }
        Ok(None)
    }))
}

fn classical_algebras(field: FieldSpec) -> Result<Vec<ClassicalAlgebra>> {
    Ok(vec![
        ClassicalAlgebra::so(field, 3)?,
        ClassicalAlgebra::so(field, 4)?,
        ClassicalAlgebra::sp(field, 2)?,
        ClassicalAlgebra::sp(field, 4)?,
    ])
}

/// A random element of the `sign` eigenspace of `iota`, mixing lengths.
fn random_eigentensor(ctx: &Ctx, rng: &mut ChaCha8Rng, sign: Sign) -> Result<TensorElem> {
    let field = ctx.field();
    let mut t = TensorElem::zero(ctx.space.clone());
    for _ in 0..rng.random_range(1..=3) {
        let l = rng.random_range(1..=ctx.max_len.max(1));
        t.add_term(sample::word(rng, ctx.space.dim(), l), &sample::nonzero_scalar(rng, field, 4));
    }
    let half = Scalar::from_i64(field, 2).inv()?;
    let s = Scalar::from_i64(field, sign.value());
    Ok((&t + &t.iota().scale(&s)).scale(&half))
}

fn so_sp_closure(ctx: &Ctx) -> Result<(usize, Vec<Failure>)> {
    ctx.field().require_odd_characteristic()?;
    let algebras = classical_algebras(ctx.field())?;
    Ok(ctx.run(ctx.cfg.trials, |rng, trial| {
        let p = random_eigentensor(ctx, rng, Sign::Minus)?;
        let seed = ctx.cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ trial;
        for g in &algebras {
            if !fields2d::g_closure_check(&p, g, &[seed])? {
                return Ok(check(false, || format!("p = {p}; p(X_1, ..) leaves {g} (tuple seed {seed})")));
            }
            let a = g.random_element_with(rng, 5);
            let b = g.random_element_with(rng, 5);
            let c = a.commutator(&b)?;
            if !g.contains(&c) {
                return Ok(check(false, || format!("[{a}, {b}] = {c} leaves {g}")));
            }
        }
        Ok(None)
    }))
}

fn proposition(ctx: &Ctx) -> Result<(usize, Vec<Failure>)> {
    require_plane(ctx)?;
    ctx.field().require_odd_characteristic()?;
    let algebras = classical_algebras(ctx.field())?;
    Ok(ctx.run(ctx.cfg.trials, |rng, _| {
        let a = random_class(ctx, rng, 2, 3).p_projection(Sign::Plus)?;
        for g in &algebras {
            let x = g.random_element_with(rng, 5);
            let y = g.random_element_with(rng, 5);
            if !fields2d::proposition_check(&a, g, &x, &y)? {
                let v = fields2d::vf_value_of(&a, &x, &y)?;
                return Ok(check(false, || {
                    format!(
                        "a = {a}; {g}; X = {x}; Y = {y}; V_a = ({}, {})",
                        v.first, v.second
                    )
                }));
            }
        }
        Ok(None)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(field: FieldSpec, dim: usize, trials: usize) -> SuiteConfig {
        SuiteConfig {
            field,
            dim,
            trials,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("dij-literal-zero".parse::<Mutation>().unwrap(), Mutation::DijLiteralZero);
    }

    #[test]
    fn every_suite_passes_small() {
        let f5 = FieldSpec::prime(5).unwrap();
        for suite in Suite::ALL {
            let mut c = cfg(f5, 2, 4);
            c.max_len = Some(4);
            let report = run(suite, &c).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let c = cfg(FieldSpec::RATIONALS, 2, 6);
        let a = run(Suite::Jacobi, &c).unwrap();
        let b = run(Suite::Jacobi, &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }

    #[test]
    fn sign_flip_breaks_jacobi_and_replays() {
        let mut c = cfg(FieldSpec::RATIONALS, 2, 30);
        c.mutation = Mutation::BracketSignFlip;
        let report = run(Suite::Jacobi, &c).unwrap();
        assert!(!report.passed());
        let first = &report.failures[0];
        c.only_trial = Some(first.trial);
        let replay = run(Suite::Jacobi, &c).unwrap();
        assert_eq!(replay.failures, vec![first.clone()]);
    }

    /// Swapping the arguments of the pairing everywhere negates the bracket,
    /// and Jacobi is blind to a global sign.
    #[test]
    fn global_pairing_swap_preserves_jacobi() {
        let v = SymplecticSpace::standard(FieldSpec::RATIONALS, 2).unwrap().into_shared();
        let mut rng = sample::trial_rng(1, 0);
        let minus = -Scalar::one(v.field());
        let neg = |a: &CoinvElem, b: &CoinvElem| a.bracket(b).scale(&minus);
        for _ in 0..20 {
            let a = sample::coinv_mixed(&mut rng, &v, 2, 4, 2);
            let b = sample::coinv_mixed(&mut rng, &v, 2, 4, 2);
            let c = sample::coinv_mixed(&mut rng, &v, 2, 4, 2);
            let sum = &(&neg(&a, &neg(&b, &c)) + &neg(&b, &neg(&c, &a))) + &neg(&c, &neg(&a, &b));
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn literal_zero_breaks_vf_hom() {
        let mut c = cfg(FieldSpec::RATIONALS, 2, 10);
        c.mutation = Mutation::DijLiteralZero;
        assert!(!run(Suite::VfHom, &c).unwrap().passed());
    }

    #[test]
    fn configuration_errors() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(run(Suite::Lemma, &cfg(f2, 2, 1)).unwrap_err(), Error::CharacteristicTwo);
        assert_eq!(
            run(Suite::Tangency, &cfg(FieldSpec::RATIONALS, 4, 1)).unwrap_err(),
            Error::NotPlanar
        );
        assert_eq!(
            run(Suite::SpIso, &cfg(FieldSpec::RATIONALS, 3, 1)).unwrap_err(),
            Error::DegenerateForm
        );
    }

    #[test]
    fn sp_iso_scalar_is_one() {
        for dim in [2, 4] {
            let report = run(Suite::SpIso, &cfg(FieldSpec::RATIONALS, dim, 1)).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.notes["s"], "1");
        }
    }
}
