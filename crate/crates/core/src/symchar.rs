//! Ordinary characters of the symmetric group.
//!
//! Irreducible characters come from the Murnaghan–Nakayama rule on
//! beta-sets: removing a rim hook of length `r` moves one bead `r` places
//! down, and its sign is the parity of the beads jumped over.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::exec::Execution;
use crate::graded::{factorial, IntPoly, PoincarePoly, PolyError};
use crate::partition::{partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymcharError {
    #[error("weight mismatch: partition {lambda} has weight {weight} but the class function lives on Σ_{d}")]
    WeightMismatch { lambda: Partition, weight: usize, d: usize },
    #[error("class function does not decompose integrally: {0}")]
    NotIntegral(PolyError),
    #[error("multiplicity has a negative coefficient: {0}")]
    Negative(PolyError),
    #[error(transparent)]
    Overflow(PolyError),
}

/// Conjugacy class of `Σ_d`, named by its cycle lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        CycleType(cycles)
    }

    /// Any order of lengths; zero lengths are dropped.
    pub fn parse(lengths: &[usize]) -> Self {
        CycleType(Partition::from_unsorted(lengths.to_vec()))
    }

    pub fn identity(d: usize) -> Self {
        CycleType(Partition::column(d))
    }

    pub fn cycles(&self) -> &Partition {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.weight()
    }

    /// `z_ρ = Π_j m_j! · j^{m_j}`.
    pub fn centralizer_order(&self) -> i128 {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in self.0.parts() {
            *mult.entry(c).or_default() += 1;
        }
        mult.iter()
            .map(|(&j, &m)| factorial(m) * (j as i128).pow(m as u32))
            .product()
    }

    pub fn class_size(&self) -> i128 {
        factorial(self.d()) / self.centralizer_order()
    }

    pub fn sign(&self) -> i64 {
        if (self.d() - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All classes of `Σ_d`, in reverse lexicographic order of cycle lengths.
    pub fn all(d: usize) -> Vec<CycleType> {
        partitions_of(d).into_iter().map(CycleType).collect()
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A class function on `Σ_d` with values in `Z[t]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    d: usize,
    values: BTreeMap<CycleType, IntPoly>,
}

impl ClassFunction {
    pub fn from_fn(d: usize, f: impl Fn(&CycleType) -> IntPoly) -> Self {
        let values = CycleType::all(d).into_iter().map(|rho| {
            let v = f(&rho);
            (rho, v)
        });
        ClassFunction {
            d,
            values: values.collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn value(&self, rho: &CycleType) -> IntPoly {
        self.values.get(rho).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycleType, &IntPoly)> {
        self.values.iter()
    }

    /// The irreducible character `χ_λ`, placed in degree 0.
    pub fn irreducible(lambda: &Partition) -> Self {
        ClassFunction::from_fn(lambda.weight(), |rho| {
            IntPoly::constant(character(lambda, rho).expect("weights agree") as i128)
        })
    }

    /// Character of the regular representation, in degree 0.
    pub fn regular(d: usize) -> Self {
        let id = CycleType::identity(d);
        ClassFunction::from_fn(d, |rho| {
            if *rho == id {
                IntPoly::constant(factorial(d))
            } else {
                IntPoly::zero()
            }
        })
    }
}

/// `χ_λ(ρ)` by the Murnaghan–Nakayama rule.
pub fn character(lambda: &Partition, rho: &CycleType) -> Result<i64, SymcharError> {
    if lambda.weight() != rho.d() {
        return Err(SymcharError::WeightMismatch {
            lambda: lambda.clone(),
            weight: lambda.weight(),
            d: rho.d(),
        });
    }
    let beta = lambda.beta_numbers(lambda.len());
    let mut memo = HashMap::new();
    Ok(mn(&beta, rho.cycles().parts(), &mut memo))
}

fn mn(beta: &[usize], cycles: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next = beta.to_vec();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn(&next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table of `Σ_d`: rows are irreducibles, columns are classes,
/// both in reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub d: usize,
    pub irreducibles: Vec<Partition>,
    pub classes: Vec<CycleType>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn value(&self, lambda: &Partition, rho: &CycleType) -> Option<i64> {
        let r = self.irreducibles.iter().position(|l| l == lambda)?;
        let c = self.classes.iter().position(|x| x == rho)?;
        Some(self.values[r][c])
    }

    pub fn to_map(&self) -> BTreeMap<(Partition, CycleType), i64> {
        let mut out = BTreeMap::new();
        for (r, l) in self.irreducibles.iter().enumerate() {
            for (c, rho) in self.classes.iter().enumerate() {
                out.insert((l.clone(), rho.clone()), self.values[r][c]);
            }
        }
        out
    }

    /// `Σ_ρ |class ρ| χ_μ(ρ) χ_ν(ρ)` for rows `a`, `b`.
    pub fn row_inner(&self, a: usize, b: usize) -> i128 {
        self.classes
            .iter()
            .enumerate()
            .map(|(c, rho)| rho.class_size() * self.values[a][c] as i128 * self.values[b][c] as i128)
            .sum()
    }

    /// `Σ_λ χ_λ(ρ) χ_λ(σ)` for columns `a`, `b`.
    pub fn column_inner(&self, a: usize, b: usize) -> i128 {
        self.values.iter().map(|row| row[a] as i128 * row[b] as i128).sum()
    }

    /// Row orthogonality gives `d!·[μ=ν]`, column orthogonality `z_ρ·[ρ=σ]`.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.irreducibles.len();
        let fact = factorial(self.d);
        (0..n).all(|a| {
            (0..n).all(|b| {
                let row = self.row_inner(a, b);
                let col = self.column_inner(a, b);
                let (er, ec) = if a == b {
                    (fact, self.classes[a].centralizer_order())
                } else {
                    (0, 0)
                };
                row == er && col == ec
            })
        })
    }
}

pub fn character_table(d: usize) -> CharacterTable {
    character_table_with(d, Execution::default())
}

/// Columns are computed independently, so they can be spread over threads.
pub fn character_table_with(d: usize, exec: Execution) -> CharacterTable {
    let irreducibles = partitions_of(d);
    let classes = CycleType::all(d);
    let columns: Vec<Vec<i64>> = exec.map(&classes, |rho| {
        irreducibles
            .iter()
            .map(|l| character(l, rho).expect("weights agree"))
            .collect()
    });
    let values = (0..irreducibles.len())
        .map(|r| columns.iter().map(|col| col[r]).collect())
        .collect();
    CharacterTable {
        d,
        irreducibles,
        classes,
        values,
    }
}

/// The numerator `Σ_ρ |class ρ| · χ_μ(ρ) · χ(ρ)` of the multiplicity of `Sp_μ`
/// in `χ`. It must be divisible by `d!` coefficientwise.
pub fn multiplicity_numerator(mu: &Partition, chi: &ClassFunction) -> Result<IntPoly, SymcharError> {
    if mu.weight() != chi.d() {
        return Err(SymcharError::WeightMismatch {
            lambda: mu.clone(),
            weight: mu.weight(),
            d: chi.d(),
        });
    }
    let mut acc = IntPoly::zero();
    for (rho, value) in chi.iter() {
        let weight = rho.class_size() * character(mu, rho)? as i128;
        if weight == 0 || value.is_zero() {
            continue;
        }
        let term = value.checked_scale(weight).map_err(SymcharError::Overflow)?;
        acc = acc.checked_add(&term).map_err(SymcharError::Overflow)?;
    }
    Ok(acc)
}

/// Graded multiplicity of `Sp_μ` in a graded class function:
/// `(1/d!) Σ_ρ (d!/z_ρ) χ_μ(ρ) χ(ρ)`. Non-integral or negative results
/// mean `χ` was not a graded character.
pub fn graded_multiplicity(mu: &Partition, chi: &ClassFunction) -> Result<PoincarePoly, SymcharError> {
    let numerator = multiplicity_numerator(mu, chi)?;
    let quotient = numerator
        .div_exact(factorial(chi.d()))
        .map_err(SymcharError::NotIntegral)?;
    PoincarePoly::new(quotient).map_err(SymcharError::Negative)
}
