//! Young diagrams: conjugation, hooks, Specht dimensions, p-cores and
//! p-quotients on the abacus, and the `F_k` construction.
//!
//! # Abacus convention
//!
//! A partition `λ` is encoded by `N` beta-numbers `β_j = λ_j + N - j`
//! (`j = 1..N`), where `N` is always a multiple of `p`. Bead `β` sits on runner
//! `β mod p` at position `β div p`. Quotient component `k` is the partition
//! read off runner `k`: if the runner carries beads at positions
//! `q_1 > ... > q_n`, its partition has parts `q_s - (n - s)`. Adding `p` beads
//! shifts every runner by one position and never relabels runners, so the
//! result does not depend on which multiple of `p` is used.
//!
//! [`QuotientConvention`] cyclically relabels runners for callers that need
//! a different indexing: with offset `c`, runner `r` is reported as component
//! `(r + c) mod p`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid partition syntax {0:?}: expected comma-separated positive parts or []")]
    Syntax(String),
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("p must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("runner index {k} out of range for p = {p}")]
    RunnerOutOfRange { k: u32, p: u32 },
    #[error("expected exactly {p} quotient components, got {got}")]
    QuotientArity { p: u32, got: usize },
    #[error("{0} is not a {1}-core")]
    NotACore(Partition, u32),
    #[error("iteration count must be at least 1")]
    ZeroIterations,
}

/// A Young diagram, stored as its weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros; any multiset of parts is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row diagram `(d)`.
    pub fn row(d: usize) -> Self {
        Self::from_unsorted(vec![d])
    }

    /// The one-column diagram `(1^d)`.
    pub fn column(d: usize) -> Self {
        Partition { parts: vec![1; d] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Row `r` length, zero past the last row.
    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&r| r > c).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of the box in row `r`, column `c` (both zero-based).
    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.parts[r] - c - 1;
        let leg = self.parts[r + 1..].iter().take_while(|&&x| x > c).count();
        arm + leg + 1
    }

    pub fn hooks(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(move |(r, &len)| (0..len).map(move |c| self.hook(r, c)))
    }

    /// Beta-numbers with `n` beads, descending. `n` must be at least `len()`.
    pub fn beta_numbers(&self, n: usize) -> Vec<usize> {
        assert!(n >= self.len(), "need at least as many beads as parts");
        (0..n).map(|j| self.part(j) + n - 1 - j).collect()
    }

    /// Inverse of [`Partition::beta_numbers`] for any set of distinct beads.
    pub fn from_beta_numbers(beta: &[usize]) -> Partition {
        let mut beta = beta.to_vec();
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let n = beta.len();
        let parts = beta.iter().enumerate().map(|(j, &b)| b - (n - 1 - j)).collect();
        Partition::from_unsorted(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("[]");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// `"3,2,1"`; the empty diagram is `"[]"`. Surrounding brackets are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return if trimmed == "[]" || trimmed.starts_with('[') {
                Ok(Partition::empty())
            } else {
                Err(PartitionError::Syntax(s.to_string()))
            };
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Syntax(s.to_string()))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// Dimension of the Specht module: `d!` over the product of hook lengths.
pub fn specht_dim(lambda: &Partition) -> u128 {
    // exponents of each prime in d! / Π hooks, then multiply out
    let d = lambda.weight();
    let mut exps = vec![0i64; d + 1];
    let mut add = |mut n: usize, sign: i64| {
        let mut q = 2;
        while n > 1 {
            while n.is_multiple_of(q) {
                exps[q] += sign;
                n /= q;
            }
            q += 1;
        }
    };
    for n in 2..=d {
        add(n, 1);
    }
    for h in lambda.hooks() {
        add(h, -1);
    }
    let mut out: u128 = 1;
    for (q, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0, "hook product does not divide d!");
        for _ in 0..e {
            out = out.checked_mul(q as u128).expect("Specht dimension exceeds u128");
        }
    }
    out
}

/// All partitions of `d` in reverse lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Runner relabeling applied when reporting p-quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuotientConvention {
    pub runner_offset: u32,
}

impl QuotientConvention {
    pub fn with_offset(runner_offset: u32) -> Self {
        QuotientConvention { runner_offset }
    }

    fn label(&self, runner: usize, p: u32) -> usize {
        (runner + self.runner_offset as usize) % p as usize
    }
}

/// A p-core together with the p-quotient, indexed by component `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PQuotientData {
    pub p: u32,
    pub core: Partition,
    pub quotient: Vec<Partition>,
}

impl PQuotientData {
    pub fn quotient_weight(&self) -> usize {
        self.quotient.iter().map(Partition::weight).sum()
    }

    /// Weight of the partition this data encodes.
    pub fn total_weight(&self) -> usize {
        self.core.weight() + self.p as usize * self.quotient_weight()
    }
}

fn check_modulus(p: u32) -> Result<(), PartitionError> {
    if p < 2 {
        Err(PartitionError::BadModulus(p))
    } else {
        Ok(())
    }
}

fn bead_count(len: usize, p: usize) -> usize {
    len.div_ceil(p) * p
}

pub fn p_core_quotient(lambda: &Partition, p: u32) -> Result<PQuotientData, PartitionError> {
    p_core_quotient_with(lambda, p, QuotientConvention::default())
}

pub fn p_core_quotient_with(
    lambda: &Partition,
    p: u32,
    conv: QuotientConvention,
) -> Result<PQuotientData, PartitionError> {
    check_modulus(p)?;
    let pu = p as usize;
    let n = bead_count(lambda.len(), pu);
    let beta = lambda.beta_numbers(n);
    let mut runners: Vec<Vec<usize>> = vec![Vec::new(); pu];
    for &b in &beta {
        runners[b % pu].push(b / pu);
    }
    let mut quotient = vec![Partition::empty(); pu];
    for (r, positions) in runners.iter().enumerate() {
        quotient[conv.label(r, p)] = Partition::from_beta_numbers(positions);
    }
    // core: push each runner's beads to the top positions
    let core_beta: Vec<usize> = runners
        .iter()
        .enumerate()
        .flat_map(|(r, pos)| (0..pos.len()).map(move |q| q * pu + r))
        .collect();
    Ok(PQuotientData {
        p,
        core: Partition::from_beta_numbers(&core_beta),
        quotient,
    })
}

pub fn from_core_quotient(q: &PQuotientData) -> Result<Partition, PartitionError> {
    from_core_quotient_with(q, QuotientConvention::default())
}

pub fn from_core_quotient_with(q: &PQuotientData, conv: QuotientConvention) -> Result<Partition, PartitionError> {
    check_modulus(q.p)?;
    let pu = q.p as usize;
    if q.quotient.len() != pu {
        return Err(PartitionError::QuotientArity {
            p: q.p,
            got: q.quotient.len(),
        });
    }
    let core_data = p_core_quotient(&q.core, q.p)?;
    if core_data.quotient_weight() != 0 {
        return Err(PartitionError::NotACore(q.core.clone(), q.p));
    }
    let longest = q.quotient.iter().map(Partition::len).max().unwrap_or(0);
    let n = bead_count(q.core.len(), pu) + longest * pu;
    // with n beads the core's runners are flush; count the beads on each
    let mut counts = vec![0usize; pu];
    for b in q.core.beta_numbers(n) {
        counts[b % pu] += 1;
    }
    let mut beta = Vec::with_capacity(n);
    for (r, &count) in counts.iter().enumerate() {
        let comp = &q.quotient[conv.label(r, q.p)];
        debug_assert!(comp.len() <= count);
        beta.extend(comp.beta_numbers(count).into_iter().map(|pos| pos * pu + r));
    }
    Ok(Partition::from_beta_numbers(&beta))
}

/// The partition with empty p-core whose p-quotient is `λ` at component `k`
/// and empty elsewhere.
pub fn f_k(lambda: &Partition, p: u32, k: u32) -> Result<Partition, PartitionError> {
    f_k_with(lambda, p, k, QuotientConvention::default())
}

pub fn f_k_with(lambda: &Partition, p: u32, k: u32, conv: QuotientConvention) -> Result<Partition, PartitionError> {
    check_modulus(p)?;
    if k >= p {
        return Err(PartitionError::RunnerOutOfRange { k, p });
    }
    let mut quotient = vec![Partition::empty(); p as usize];
    quotient[k as usize] = lambda.clone();
    from_core_quotient_with(
        &PQuotientData {
            p,
            core: Partition::empty(),
            quotient,
        },
        conv,
    )
}

/// `F_k` applied `i` times.
pub fn f_k_iterated(lambda: &Partition, p: u32, k: u32, i: u32) -> Result<Partition, PartitionError> {
    f_k_iterated_with(lambda, p, k, i, QuotientConvention::default())
}

pub fn f_k_iterated_with(
    lambda: &Partition,
    p: u32,
    k: u32,
    i: u32,
    conv: QuotientConvention,
) -> Result<Partition, PartitionError> {
    if i == 0 {
        return Err(PartitionError::ZeroIterations);
    }
    let mut out = lambda.clone();
    for _ in 0..i {
        out = f_k_with(&out, p, k, conv)?;
    }
    Ok(out)
}

/// Recognizes `ν = F_k^i(λ)`: returns `(λ, k)` when `i` rounds of abacus
/// decomposition each give an empty core and a quotient concentrated in one
/// component, the same one every round. The empty diagram is reported with `k = 0`.
pub fn recognize_f_k_iterated(nu: &Partition, p: u32, i: u32, conv: QuotientConvention) -> Option<(Partition, u32)> {
    if i == 0 {
        return None;
    }
    if nu.is_empty() {
        return Some((Partition::empty(), 0));
    }
    let mut current = nu.clone();
    let mut component = None;
    for _ in 0..i {
        let data = p_core_quotient_with(&current, p, conv).ok()?;
        if !data.core.is_empty() {
            return None;
        }
        let mut nonempty = data.quotient.iter().enumerate().filter(|(_, q)| !q.is_empty());
        let (k, q) = nonempty.next()?;
        if nonempty.next().is_some() || component.is_some_and(|c| c != k) {
            return None;
        }
        component = Some(k);
        current = q.clone();
    }
    Some((current, component? as u32))
}

/// Littlewood–Richardson coefficients `c^λ_{μν}` for every `λ` of weight
/// `|μ| + |ν|`, counted by enumerating LR tableaux of shape `λ/μ` and content `ν`.
/// Only nonzero coefficients are returned.
pub fn lr_coefficients(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    let n = mu.weight() + nu.weight();
    partitions_of(n)
        .into_iter()
        .filter(|lambda| lambda.contains(mu))
        .filter_map(|lambda| {
            let c = count_lr_tableaux(&lambda, mu, nu);
            (c > 0).then_some((lambda, c))
        })
        .collect()
}

/// Fills `λ/μ` row by row, each row right to left, so that the filling is
/// semistandard with content `ν` and the reading word is a lattice word.
fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.len() < nu.len() {
        return 0;
    }
    let rows = lambda.len();
    // cells in reading order: top row first, right to left
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (mu.part(r)..lambda.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; lambda.part(r)]).collect();
    let mut used = vec![0usize; nu.len()];

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        mu: &Partition,
        nu: &Partition,
    ) -> u64 {
        let Some(&(r, c)) = cells.get(idx) else {
            return 1;
        };
        let mut total = 0;
        for v in 1..=nu.len() {
            if used[v - 1] == nu.part(v - 1) {
                continue;
            }
            // lattice condition on the reading word
            if v > 1 && used[v - 1] + 1 > used[v - 2] {
                continue;
            }
            // rows weakly increase left to right: right neighbour already placed
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && grid[r][c + 1] < v {
                continue;
            }
            // columns strictly increase downward
            if r > 0 && c >= mu.part(r - 1) && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            used[v - 1] += 1;
            total += go(idx + 1, cells, grid, used, mu, nu);
            used[v - 1] -= 1;
            grid[r][c] = 0;
        }
        total
    }

    if cells.len() != nu.weight() {
        return 0;
    }
    go(0, &cells, &mut grid, &mut used, mu, nu)
}
