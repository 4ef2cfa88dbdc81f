//! Brute-force enumeration at desk scale and verification of the closed-form
//! counts against it.
//!
//! The enumerators here only walk subspaces and maps and apply the
//! predicates from [`crate::profiles`]; formulas from [`crate::counting`]
//! are consulted only after enumeration, when a report is assembled.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    charpoly_extension_count, partitions_of, partitions_with_first_part, sigma_value, simple_extension_count,
    simple_maps_with_defect_count, Partition,
};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::fqlinalg::{MatrixFq, Subspace, Vector};
use crate::fqpoly::{char_poly, companion_matrix, smallest_irreducible, PolyFq};
use crate::profiles::{dual_restriction, is_simple_operator, profile, PartialMap};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

fn check_budget(estimate: u128, budget: u128) -> Result<()> {
    if estimate > budget {
        Err(Error::BudgetExceeded { estimate, budget })
    } else {
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pow_sat(q: u32, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// Upper estimate `q^{k(n-k)} C(n, k)` of the number of `k`-subspaces.
pub fn subspace_estimate(q: u32, n: usize, k: usize) -> u128 {
    pow_sat(q, k * (n - k)).saturating_mul(binomial(n, k))
}

/// All `k`-element subsets of `0..n`, lexicographic.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All subspaces whose RREF basis has the given pivot columns, free entries
/// running lexicographically by code (last free entry fastest).
pub struct PivotCell {
    field: FieldCtx,
    n: usize,
    template: Vec<FieldElem>,
    free: Vec<usize>,
    counter: Vec<u32>,
    done: bool,
}

impl PivotCell {
    pub fn new(field: &FieldCtx, n: usize, pivots: &[usize]) -> Self {
        let k = pivots.len();
        let mut template = vec![FieldElem::ZERO; k * n];
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            template[i * n + pc] = FieldElem::ONE;
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push(i * n + c);
                }
            }
        }
        PivotCell { field: field.clone(), n, template, counter: vec![0; free.len()], free, done: false }
    }
}

impl Iterator for PivotCell {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut data = self.template.clone();
        for (&pos, &c) in self.free.iter().zip(&self.counter) {
            data[pos] = FieldElem::from_code(c);
        }
        let rows = data.len() / self.n.max(1);
        let basis = MatrixFq::new(&self.field, rows, self.n, data).expect("template shape");
        let q = self.field.order();
        self.done = true;
        for slot in self.counter.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(Subspace::from_rref_unchecked(basis))
    }
}

/// Every `k`-dimensional subspace of `F_q^n` exactly once: pivot sets in
/// lexicographic order, then free entries by code.
pub fn enumerate_subspaces(
    field: &FieldCtx,
    n: usize,
    k: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Subspace>> {
    if k > n {
        return Err(Error::Precondition(format!("k = {k} exceeds n = {n}")));
    }
    check_budget(subspace_estimate(field.order(), n, k), budget)?;
    let field = field.clone();
    Ok(pivot_patterns(n, k).into_iter().flat_map(move |p| PivotCell::new(&field, n, &p)))
}

/// Every subspace of `F_q^n`, by increasing dimension.
pub fn enumerate_all_subspaces(field: &FieldCtx, n: usize, budget: u128) -> Result<impl Iterator<Item = Subspace>> {
    let estimate = (0..=n).map(|k| subspace_estimate(field.order(), n, k)).fold(0u128, u128::saturating_add);
    check_budget(estimate, budget)?;
    let field = field.clone();
    Ok((0..=n).flat_map(move |k| pivot_patterns(n, k)).flat_map(move |p| PivotCell::new(&field, n, &p)))
}

/// Counts of `T`-profiles over a set of subspaces. The zero subspace, whose
/// profile is empty, is never counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileHistogram {
    pub q: u32,
    pub n: usize,
    #[serde(serialize_with = "ser_matrix")]
    pub operator: MatrixFq,
    pub dim_filter: Option<usize>,
    pub counts: BTreeMap<Partition, u64>,
    /// Whether the zero subspace was among the enumerated subspaces.
    pub zero_subspace_seen: bool,
}

fn ser_matrix<S: serde::Serializer>(m: &MatrixFq, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(m)
}

impl ProfileHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, mu: &Partition) -> u64 {
        self.counts.get(mu).copied().unwrap_or(0)
    }

    fn merge(mut self, other: ProfileHistogram) -> ProfileHistogram {
        for (mu, c) in other.counts {
            *self.counts.entry(mu).or_insert(0) += c;
        }
        self.zero_subspace_seen |= other.zero_subspace_seen;
        self
    }
}

fn histogram_cell(t: &MatrixFq, dim_filter: Option<usize>, pivots: &[usize]) -> Result<ProfileHistogram> {
    let n = t.nrows();
    let mut h = ProfileHistogram {
        q: t.field().order(),
        n,
        operator: t.clone(),
        dim_filter,
        counts: BTreeMap::new(),
        zero_subspace_seen: false,
    };
    for w in PivotCell::new(t.field(), n, pivots) {
        if w.is_zero() {
            h.zero_subspace_seen = true;
            continue;
        }
        *h.counts.entry(profile(t, &w)?).or_insert(0) += 1;
    }
    Ok(h)
}

fn histogram_patterns(t: &MatrixFq, dim_filter: Option<usize>, budget: u128) -> Result<Vec<Vec<usize>>> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.nrows(), cols: t.ncols() });
    }
    let n = t.nrows();
    let q = t.field().order();
    let dims: Vec<usize> = match dim_filter {
        Some(k) if k > n => return Err(Error::Precondition(format!("dimension {k} exceeds n = {n}"))),
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let estimate = dims.iter().map(|&k| subspace_estimate(q, n, k)).fold(0u128, u128::saturating_add);
    check_budget(estimate, budget)?;
    Ok(dims.into_iter().flat_map(|k| pivot_patterns(n, k)).collect())
}

/// Histogram of `profile(T, W)` over all subspaces `W` (or those of one
/// dimension). Works for any operator.
pub fn profile_histogram(t: &MatrixFq, dim_filter: Option<usize>, budget: u128) -> Result<ProfileHistogram> {
    profile_histogram_parallel(t, dim_filter, budget, 1)
}

/// As [`profile_histogram`], splitting the work by pivot pattern over
/// `threads` workers. The result does not depend on `threads`.
pub fn profile_histogram_parallel(
    t: &MatrixFq,
    dim_filter: Option<usize>,
    budget: u128,
    threads: usize,
) -> Result<ProfileHistogram> {
    let patterns = histogram_patterns(t, dim_filter, budget)?;
    let empty = || ProfileHistogram {
        q: t.field().order(),
        n: t.nrows(),
        operator: t.clone(),
        dim_filter,
        counts: BTreeMap::new(),
        zero_subspace_seen: false,
    };
    if threads <= 1 {
        return patterns.iter().try_fold(empty(), |acc, p| Ok(acc.merge(histogram_cell(t, dim_filter, p)?)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| {
        patterns.par_iter().map(|p| histogram_cell(t, dim_filter, p)).try_reduce(empty, |a, b| Ok(a.merge(b)))
    })
}

/// One compared quantity in a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub key: String,
    pub observed: String,
    pub expected: String,
    pub ok: bool,
}

impl ReportRow {
    pub fn new(key: impl Into<String>, observed: impl fmt::Display, expected: impl fmt::Display) -> Self {
        let (observed, expected) = (observed.to_string(), expected.to_string());
        ReportRow { key: key.into(), ok: observed == expected, observed, expected }
    }
}

/// Outcome of a brute-force check: one row per compared quantity. `pass`
/// holds exactly when every row matches. Timing is kept out of the
/// serialized form so reports are reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        (&self.check, &self.params, &self.rows, self.pass, self.seed)
            == (&other.check, &other.params, &other.rows, other.pass, other.seed)
    }
}

impl VerificationReport {
    fn new(check: &str, params: &[(&str, String)], rows: Vec<ReportRow>, seed: Option<u64>, start: Instant) -> Self {
        VerificationReport {
            check: check.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            pass: rows.iter().all(|r| r.ok),
            rows,
            seed,
            elapsed: start.elapsed(),
        }
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} [{}]", self.check, params.join(" "));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        let w0 = self.rows.iter().map(|r| r.key.len()).chain([3]).max().unwrap_or(3);
        let w1 = self.rows.iter().map(|r| r.observed.len()).chain(["observed".len()]).max().unwrap_or(8);
        let w2 = self.rows.iter().map(|r| r.expected.len()).chain(["expected".len()]).max().unwrap_or(8);
        let _ = writeln!(out, "{:<w0$}  {:>w1$}  {:>w2$}  ok", "key", "observed", "expected");
        for r in &self.rows {
            let mark = if r.ok { "yes" } else { "NO" };
            let _ = writeln!(out, "{:<w0$}  {:>w1$}  {:>w2$}  {mark}", r.key, r.observed, r.expected);
        }
        let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

/// Checks the subspace count for a simple operator: enumerates every
/// subspace of `F_q^n` under `companion(f)` and compares each profile class
/// with `sigma_value`. The zero subspace must be the only subspace outside
/// the partitions of `n`.
pub fn verify_sigma(
    field: &FieldCtx,
    n: usize,
    f: Option<&PolyFq>,
    budget: u128,
    threads: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let f = match f {
        Some(f) => {
            if f.degree() != Some(n) || !f.is_irreducible()? {
                return Err(Error::Reducible);
            }
            f.monic()
        }
        None => smallest_irreducible(field, n)?,
    };
    let t = companion_matrix(&f)?;
    let hist = profile_histogram_parallel(&t, None, budget, threads)?;
    let q = field.order() as u64;
    let mut rows = Vec::new();
    for mu in partitions_of(n) {
        rows.push(ReportRow::new(mu.to_string(), hist.get(&mu), sigma_value(&mu, q)?));
    }
    for (mu, c) in &hist.counts {
        if mu.weight() != n {
            rows.push(ReportRow::new(mu.to_string(), c, 0));
        }
    }
    rows.push(ReportRow::new("zero subspace", hist.zero_subspace_seen, true));
    let params = [("q", q.to_string()), ("n", n.to_string()), ("poly", f.to_codes())];
    Ok(VerificationReport::new("sigma", &params, rows, None, start))
}

/// Iterates over all `q^{n k}` image tuples for a `k`-dimensional domain.
fn all_maps_on(w: &Subspace) -> impl Iterator<Item = PartialMap> + '_ {
    let n = w.ambient();
    let k = w.dim();
    let q = w.field().order();
    let width = n * k;
    let mut counter = vec![0u32; width];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let images: Vec<Vector> =
            (0..k).map(|i| counter[i * n..(i + 1) * n].iter().map(|&c| FieldElem::from_code(c)).collect()).collect();
        done = true;
        for slot in counter.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                done = false;
                break;
            }
            *slot = 0;
        }
        Some(PartialMap::new(w.clone(), images).expect("images have the right shape"))
    })
}

/// Histogram of defect dimensions over all simple maps `W -> F_q^n`.
pub fn simple_map_defect_histogram(w: &Subspace, budget: u128) -> Result<BTreeMap<Partition, u64>> {
    check_budget(pow_sat(w.field().order(), w.ambient() * w.dim()), budget)?;
    let mut hist = BTreeMap::new();
    for pm in all_maps_on(w) {
        if pm.is_simple()? {
            *hist.entry(pm.defect_dimensions()?).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Simple maps on `W` with defect dimensions `mu`, by exhaustion.
pub fn count_simple_maps_brute(w: &Subspace, mu: &Partition, budget: u128) -> Result<BigUint> {
    Ok(BigUint::from(simple_map_defect_histogram(w, budget)?.get(mu).copied().unwrap_or(0)))
}

/// Compares the exhaustive simple-map histogram on the first `k`-dimensional
/// subspace of `F_q^n` with the closed form, for every `mu |- n` with
/// `mu_1 = n - k`.
pub fn verify_simple_maps(field: &FieldCtx, n: usize, k: usize, budget: u128) -> Result<VerificationReport> {
    let start = Instant::now();
    if k >= n {
        return Err(Error::Precondition(format!("need a proper domain, got k = {k}, n = {n}")));
    }
    let w = enumerate_subspaces(field, n, k, budget)?.next().expect("k <= n");
    let hist = simple_map_defect_histogram(&w, budget)?;
    let q = field.order() as u64;
    let mut rows = Vec::new();
    for mu in partitions_with_first_part(n, n - k) {
        rows.push(ReportRow::new(mu.to_string(), hist.get(&mu).copied().unwrap_or(0), {
            simple_maps_with_defect_count(&mu, n, k, q)?
        }));
    }
    for (mu, c) in &hist {
        if mu.weight() != n || mu.first() != n - k {
            rows.push(ReportRow::new(mu.to_string(), c, 0));
        }
    }
    let params = [("q", q.to_string()), ("n", n.to_string()), ("k", k.to_string()), ("domain", w.to_string())];
    Ok(VerificationReport::new("simple-maps", &params, rows, None, start))
}

/// What an extension must satisfy to be counted.
#[derive(Clone, Debug)]
pub enum ExtensionPredicate {
    Simple,
    CharPoly(PolyFq),
}

/// Extensions of a simple map to `target` satisfying the predicate.
pub fn count_extensions_brute(
    pm: &PartialMap,
    target: &Subspace,
    predicate: &ExtensionPredicate,
    budget: u128,
) -> Result<BigUint> {
    if !pm.is_simple()? {
        return Err(Error::NotSimple);
    }
    let stream = pm.extensions(target)?;
    check_budget(stream.total(), budget)?;
    let mut count = 0u64;
    match predicate {
        ExtensionPredicate::Simple => {
            for e in stream {
                count += e.is_simple()? as u64;
            }
        }
        ExtensionPredicate::CharPoly(f) => {
            if !target.is_full() {
                return Err(Error::Precondition("characteristic polynomial needs a full extension".into()));
            }
            let f = f.monic();
            for e in stream {
                let t = e.to_operator().expect("full domain");
                count += (char_poly(&t)? == f) as u64;
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Counts `m`-dimensional `W` with `W + TW + ... + T^{d-1} W` of dimension
/// `md`, i.e. a direct sum equal to `F_q^{md}`, for `T = companion(f)`.
pub fn splitting_brute(field: &FieldCtx, m: usize, d: usize, f: Option<&PolyFq>, budget: u128) -> Result<BigUint> {
    if m == 0 || d == 0 {
        return Err(Error::Precondition("m and d must be positive".into()));
    }
    let n = m * d;
    let f = match f {
        Some(f) => {
            if f.degree() != Some(n) || !f.is_irreducible()? {
                return Err(Error::Reducible);
            }
            f.monic()
        }
        None => smallest_irreducible(field, n)?,
    };
    let t = companion_matrix(&f)?;
    let mut count = 0u64;
    for w in enumerate_subspaces(field, n, m, budget)? {
        let mut sum = w.clone();
        let mut power = w.clone();
        for _ in 1..d {
            power = power.image(&t)?;
            sum = sum.sum(&power)?;
        }
        count += (sum.dim() == n) as u64;
    }
    Ok(BigUint::from(count))
}

pub fn random_operator(field: &FieldCtx, n: usize, rng: &mut impl Rng) -> MatrixFq {
    let q = field.order();
    let data = (0..n * n).map(|_| FieldElem::from_code(rng.gen_range(0..q))).collect();
    MatrixFq::new(field, n, n, data).expect("n x n entries")
}

fn random_vector(field: &FieldCtx, n: usize, rng: &mut impl Rng) -> Vector {
    let q = field.order();
    (0..n).map(|_| FieldElem::from_code(rng.gen_range(0..q))).collect()
}

/// A uniformly random `k`-dimensional subspace (rejection on rank).
pub fn random_subspace(field: &FieldCtx, n: usize, k: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        let gens: Vec<Vector> = (0..k).map(|_| random_vector(field, n, rng)).collect();
        let w = Subspace::span(field, n, &gens).expect("length n");
        if w.dim() == k {
            return w;
        }
    }
}

/// Random map on a random `k`-dimensional domain, uniform images.
pub fn random_partial_map(field: &FieldCtx, n: usize, k: usize, rng: &mut impl Rng) -> PartialMap {
    let w = random_subspace(field, n, k, rng);
    let images = (0..k).map(|_| random_vector(field, n, rng)).collect();
    PartialMap::new(w, images).expect("shapes match")
}

/// Random simple map on a random `k`-dimensional proper domain (rejection).
pub fn random_simple_partial_map(field: &FieldCtx, n: usize, k: usize, rng: &mut impl Rng) -> Result<PartialMap> {
    if k >= n {
        return Err(Error::Precondition("simple partial maps need a proper domain here".into()));
    }
    loop {
        let pm = random_partial_map(field, n, k, rng);
        if pm.is_simple()? {
            return Ok(pm);
        }
    }
}

/// Checks both extension counts on `trials` random simple maps with a
/// `k`-dimensional domain: one-step simple extensions (when `k < n - 1`)
/// and full extensions with characteristic polynomial
/// `smallest_irreducible(q, n)`.
pub fn verify_extensions(
    field: &FieldCtx,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    budget: u128,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order() as u64;
    let f = smallest_irreducible(field, n)?;
    let predicate = ExtensionPredicate::CharPoly(f.clone());
    let full = Subspace::full(field, n);
    let mut rows = Vec::new();
    for i in 0..trials {
        let pm = random_simple_partial_map(field, n, k, &mut rng)?;
        if k + 1 < n {
            let extra = loop {
                let v = random_vector(field, n, &mut rng);
                if !pm.domain().contains(&v) {
                    break v;
                }
            };
            let target = pm.domain().sum(&Subspace::span(field, n, &[extra])?)?;
            let got = count_extensions_brute(&pm, &target, &ExtensionPredicate::Simple, budget)?;
            rows.push(ReportRow::new(format!("#{i} simple-step"), got, simple_extension_count(n, k, q)?));
        }
        let got = count_extensions_brute(&pm, &full, &predicate, budget)?;
        rows.push(ReportRow::new(format!("#{i} charpoly"), got, charpoly_extension_count(n, k, q)?));
    }
    let params = [("q", q.to_string()), ("n", n.to_string()), ("k", k.to_string()), ("poly", f.to_codes())];
    Ok(VerificationReport::new("extensions", &params, rows, Some(seed), start))
}

/// The operators used by [`verify_duality`]: zero, identity, then
/// `trials - 2` seeded uniform random matrices.
pub fn duality_operators(field: &FieldCtx, n: usize, trials: usize, seed: u64) -> Vec<MatrixFq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ops = vec![MatrixFq::zeros(field, n, n), MatrixFq::identity(field, n)];
    ops.truncate(trials);
    while ops.len() < trials {
        ops.push(random_operator(field, n, &mut rng));
    }
    ops
}

/// For each operator, checks `profile(T, W) = defect_dimensions(dual
/// restriction)` over every subspace `W`. One row per operator, counting the
/// subspaces where the two sides agree.
pub fn verify_duality(
    field: &FieldCtx,
    n: usize,
    trials: usize,
    seed: u64,
    budget: u128,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let subspaces: Vec<Subspace> = enumerate_all_subspaces(field, n, budget)?.collect();
    let mut rows = Vec::new();
    let (mut singular, mut non_simple) = (0, 0);
    for (i, t) in duality_operators(field, n, trials, seed).iter().enumerate() {
        let mut agree = 0usize;
        for w in &subspaces {
            agree += (profile(t, w)? == dual_restriction(t, w)?.defect_dimensions()?) as usize;
        }
        singular += (t.rank() < n) as usize;
        non_simple += (n > 0 && !is_simple_operator(t)?) as usize;
        rows.push(ReportRow::new(format!("T#{i} {t}"), agree, subspaces.len()));
    }
    let params = [
        ("q", field.order().to_string()),
        ("n", n.to_string()),
        ("trials", trials.to_string()),
        ("singular", singular.to_string()),
        ("non_simple", non_simple.to_string()),
    ];
    Ok(VerificationReport::new("duality", &params, rows, Some(seed), start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{field_of_order, make_field};

    fn f2() -> FieldCtx {
        make_field(2, 1).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let f = f2();
        assert_eq!(enumerate_subspaces(&f, 3, 1, DEFAULT_BUDGET).unwrap().count(), 7);
        assert_eq!(enumerate_subspaces(&f, 4, 2, DEFAULT_BUDGET).unwrap().count(), 35);
        let zero: Vec<_> = enumerate_subspaces(&f, 4, 0, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(&f, 4)]);
        assert!(enumerate_subspaces(&f, 3, 4, DEFAULT_BUDGET).is_err());
        assert!(matches!(enumerate_subspaces(&f, 10, 5, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn enumeration_order() {
        let f = f2();
        let lines: Vec<String> =
            enumerate_subspaces(&f, 3, 1, DEFAULT_BUDGET).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(lines, ["1,0,0", "1,0,1", "1,1,0", "1,1,1", "0,1,0", "0,1,1", "0,0,1"]);
    }

    #[test]
    fn histogram_examples() {
        let f = f2();
        let t = companion_matrix(&PolyFq::from_ints(&f, &[1, 1, 0, 1])).unwrap();
        let h = profile_histogram(&t, None, DEFAULT_BUDGET).unwrap();
        let expected: BTreeMap<_, _> = [(part(&[3]), 1), (part(&[2, 1]), 7), (part(&[1, 1, 1]), 7)].into();
        assert_eq!(h.counts, expected);
        assert!(h.zero_subspace_seen);

        let id = MatrixFq::identity(&f, 2);
        let h = profile_histogram(&id, None, DEFAULT_BUDGET).unwrap();
        let expected: BTreeMap<_, _> = [(part(&[2]), 1), (part(&[1]), 3)].into();
        assert_eq!(h.counts, expected);

        let h = profile_histogram(&t, Some(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(h.counts, [(part(&[3]), 1)].into());
        assert!(!h.zero_subspace_seen);
    }

    #[test]
    fn parallel_histogram_is_identical() {
        let f = field_of_order(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = random_operator(&f, 4, &mut rng);
        let serial = profile_histogram(&t, None, DEFAULT_BUDGET).unwrap();
        for threads in [2, 3, 8] {
            assert_eq!(profile_histogram_parallel(&t, None, DEFAULT_BUDGET, threads).unwrap(), serial);
        }
    }

    #[test]
    fn verify_sigma_small() {
        let f = f2();
        let r = verify_sigma(&f, 3, None, DEFAULT_BUDGET, 1).unwrap();
        assert!(r.pass, "{}", r.to_table());
        let rows: Vec<(&str, &str)> = r.rows.iter().map(|r| (r.key.as_str(), r.observed.as_str())).collect();
        assert_eq!(rows, [("(3)", "1"), ("(2,1)", "7"), ("(1,1,1)", "7"), ("zero subspace", "true")]);
        let reducible = PolyFq::from_ints(&f, &[1, 0, 0, 1]);
        assert_eq!(verify_sigma(&f, 3, Some(&reducible), DEFAULT_BUDGET, 1).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn sigma_fails_for_non_simple_operator_profiles() {
        // sanity: the comparison is not vacuous; the identity operator on
        // F_2^3 gives a histogram unlike the simple one
        let f = f2();
        let h = profile_histogram(&MatrixFq::identity(&f, 3), None, DEFAULT_BUDGET).unwrap();
        assert_eq!(h.get(&part(&[1])), 7);
        assert_eq!(h.get(&part(&[1, 1, 1])), 0);
    }

    #[test]
    fn simple_map_brute_examples() {
        let f = f2();
        let zero = Subspace::zero(&f, 3);
        assert_eq!(count_simple_maps_brute(&zero, &part(&[3]), DEFAULT_BUDGET).unwrap(), BigUint::from(1u8));
        let line = enumerate_subspaces(&f, 3, 1, DEFAULT_BUDGET).unwrap().next().unwrap();
        assert_eq!(count_simple_maps_brute(&line, &part(&[2, 1]), DEFAULT_BUDGET).unwrap(), BigUint::from(6u8));
        let plane = enumerate_subspaces(&f, 4, 2, DEFAULT_BUDGET).unwrap().next().unwrap();
        assert_eq!(count_simple_maps_brute(&plane, &part(&[2, 2]), DEFAULT_BUDGET).unwrap(), BigUint::from(96u8));
    }

    #[test]
    fn extension_brute_examples() {
        let f = f2();
        let line = Subspace::span(&f, 3, &[vec![FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO]]).unwrap();
        let pm = PartialMap::new(line, vec![vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO]]).unwrap();
        let plane = enumerate_subspaces(&f, 3, 2, DEFAULT_BUDGET).unwrap().next().unwrap();
        let got = count_extensions_brute(&pm, &plane, &ExtensionPredicate::Simple, DEFAULT_BUDGET).unwrap();
        assert_eq!(got, BigUint::from(4u8));
        let g = PolyFq::from_ints(&f, &[1, 1, 0, 1]);
        let full = Subspace::full(&f, 3);
        let got = count_extensions_brute(&pm, &full, &ExtensionPredicate::CharPoly(g.clone()), DEFAULT_BUDGET).unwrap();
        assert_eq!(got, BigUint::from(4u8));
        let fixed = PartialMap::new(pm.domain().clone(), vec![pm.domain().basis().row(0).to_vec()]).unwrap();
        assert_eq!(
            count_extensions_brute(&fixed, &full, &ExtensionPredicate::Simple, DEFAULT_BUDGET).unwrap_err(),
            Error::NotSimple
        );
        assert!(count_extensions_brute(&pm, &plane, &ExtensionPredicate::CharPoly(g), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn hyperplane_maps_extend_uniquely_for_every_char_poly() {
        // k = n - 1: each monic f of degree n is hit by exactly one extension
        let f = f2();
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pm = random_simple_partial_map(&f, n, n - 1, &mut rng).unwrap();
        let mut classes: BTreeMap<String, u32> = BTreeMap::new();
        for e in pm.extensions(&Subspace::full(&f, n)).unwrap() {
            *classes.entry(char_poly(&e.to_operator().unwrap()).unwrap().to_codes()).or_insert(0) += 1;
        }
        assert_eq!(classes.len(), 8);
        assert!(classes.values().all(|&c| c == 1));
    }

    #[test]
    fn splitting_brute_examples() {
        let f = f2();
        assert_eq!(splitting_brute(&f, 2, 2, None, DEFAULT_BUDGET).unwrap(), BigUint::from(20u8));
        for d in 1..5 {
            assert_eq!(splitting_brute(&f, 1, d, None, DEFAULT_BUDGET).unwrap(), BigUint::from((1u32 << d) - 1));
        }
        let f3 = field_of_order(3).unwrap();
        assert_eq!(splitting_brute(&f3, 2, 2, None, DEFAULT_BUDGET).unwrap(), BigUint::from(90u8));
    }

    #[test]
    fn duality_trivial_operators() {
        let f = f2();
        let r = verify_duality(&f, 3, 2, 0, DEFAULT_BUDGET).unwrap();
        assert!(r.pass, "{}", r.to_table());
        let z = MatrixFq::zeros(&f, 3, 3);
        for w in enumerate_all_subspaces(&f, 3, DEFAULT_BUDGET).unwrap().filter(|w| !w.is_zero()) {
            let expected = Partition::new(vec![w.dim()]).unwrap();
            assert_eq!(profile(&z, &w).unwrap(), expected);
            assert_eq!(dual_restriction(&z, &w).unwrap().defect_dimensions().unwrap(), expected);
        }
    }

    #[test]
    fn report_is_deterministic() {
        let f = f2();
        let a = verify_duality(&f, 3, 6, 42, DEFAULT_BUDGET).unwrap();
        let b = verify_duality(&f, 3, 6, 42, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_table(), b.to_table());
    }
}
