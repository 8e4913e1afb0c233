//! Brute-force ground truth at desk scale.
//!
//! Nothing here calls the character engine: Specht modules are built from
//! polytabloids, characters are matrix traces, and isotypic multiplicities
//! are traces of explicit projectors on `U^{⊗d} ⊗ k[Σ_d]`.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graded::{GradedSpace, IntPoly, PoincarePoly};
use crate::partition::Partition;
use crate::symchar::CycleType;

pub const MAX_SPECHT_DEGREE: usize = 6;
pub const MAX_TRACE_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is limited to d <= {max}, got d = {d}")]
    TooLarge { what: &'static str, d: usize, max: usize },
    #[error("generator relation fails: {0}")]
    Relation(String),
    #[error("generator {0} does not preserve degrees")]
    DegreeNotPreserved(usize),
    #[error("straightening produced a non-integral coefficient")]
    NotIntegral,
    #[error("class of Σ_{class} evaluated on a module for Σ_{module}")]
    Mismatch { module: usize, class: usize },
    #[error("conjugate permutations have different traces")]
    NotClassFunction,
    #[error("weights differ: |μ| = {mu}, |λ| = {lambda}, d = {d}")]
    Weights { mu: usize, lambda: usize, d: usize },
    #[error("isotypic trace is not integral or has a negative coefficient")]
    BadTrace,
}

type Matrix = Vec<Vec<i64>>;

fn identity(n: usize) -> Matrix {
    (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0i64; n];
            for (k, &x) in row.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&b[k]) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Adjacent transpositions with `perm = s_{a_1} s_{a_2} ... s_{a_k}` (one-line
/// notation on `0..d`).
fn adjacent_word(perm: &[usize]) -> Vec<usize> {
    let mut w = perm.to_vec();
    let mut word = Vec::new();
    for end in (1..w.len()).rev() {
        for a in 0..end {
            if w[a] > w[a + 1] {
                w.swap(a, a + 1);
                word.push(a);
            }
        }
    }
    word.reverse();
    word
}

fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    CycleType::parse(&lengths)
}

/// A graded representation of `Σ_d` given by the matrices of `s_1, ..., s_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitModule {
    d: usize,
    degrees: Vec<usize>,
    generators: Vec<Matrix>,
}

impl ExplicitModule {
    /// Checks the Coxeter presentation and that every generator preserves degrees.
    pub fn new(d: usize, degrees: Vec<usize>, generators: Vec<Matrix>) -> Result<Self, OracleError> {
        let n = degrees.len();
        if generators.len() != d.saturating_sub(1) {
            return Err(OracleError::Relation(format!(
                "expected {} generators",
                d.saturating_sub(1)
            )));
        }
        let id = identity(n);
        for (a, g) in generators.iter().enumerate() {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(OracleError::Relation(format!("s_{} has the wrong size", a + 1)));
            }
            for (r, row) in g.iter().enumerate() {
                if row.iter().enumerate().any(|(c, &x)| x != 0 && degrees[r] != degrees[c]) {
                    return Err(OracleError::DegreeNotPreserved(a + 1));
                }
            }
            if mat_mul(g, g) != id {
                return Err(OracleError::Relation(format!("s_{0}^2 != 1", a + 1)));
            }
            for (b, h) in generators.iter().enumerate().skip(a + 1) {
                let gh = mat_mul(g, h);
                let order = if b == a + 1 { 3 } else { 2 };
                let mut power = gh.clone();
                for _ in 1..order {
                    power = mat_mul(&power, &gh);
                }
                if power != id {
                    return Err(OracleError::Relation(format!("(s_{} s_{})^{order} != 1", a + 1, b + 1)));
                }
            }
        }
        Ok(ExplicitModule { d, degrees, generators })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn generator(&self, a: usize) -> &Matrix {
        &self.generators[a]
    }

    /// Matrix of the permutation `perm`.
    pub fn permutation_matrix(&self, perm: &[usize]) -> Matrix {
        adjacent_word(perm)
            .iter()
            .fold(identity(self.dim()), |acc, &a| mat_mul(&acc, &self.generators[a]))
    }

    /// Graded trace `Σ_b M[b][b] t^{deg b}`.
    pub fn graded_trace(&self, m: &Matrix) -> IntPoly {
        let mut coeffs = vec![0i128; self.degrees.iter().max().map_or(0, |&e| e + 1)];
        for (b, &e) in self.degrees.iter().enumerate() {
            coeffs[e] += i128::from(m[b][b]);
        }
        IntPoly::from_coeffs(coeffs)
    }
}

/// Tabloid: the row index of each entry `0..d`.
type Tabloid = Vec<usize>;

fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(lambda: &Partition, next: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next == lambda.weight() {
            out.push(rows.clone());
            return;
        }
        for r in 0..lambda.len() {
            let len = rows[r].len();
            if len < lambda.part(r) && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                rec(lambda, next + 1, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(lambda, 0, &mut vec![Vec::new(); lambda.len()], &mut out);
    out
}

/// `e_T = Σ_{σ ∈ C_T} sgn(σ) {σT}` as a sparse vector over tabloids.
fn polytabloid(tableau: &[Vec<usize>], d: usize) -> HashMap<Tabloid, i64> {
    let width = tableau.first().map_or(0, Vec::len);
    let columns: Vec<Vec<usize>> = (0..width)
        .map(|c| {
            tableau
                .iter()
                .take_while(|row| row.len() > c)
                .map(|row| row[c])
                .collect()
        })
        .collect();
    let column_perms: Vec<Vec<(Vec<usize>, i64)>> = columns
        .iter()
        .map(|col| {
            (0..col.len())
                .permutations(col.len())
                .map(|perm| {
                    let inversions = (0..perm.len())
                        .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
                        .filter(|&(a, b)| perm[a] > perm[b])
                        .count();
                    (perm, if inversions % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let mut out = HashMap::new();
    for choice in column_perms.iter().multi_cartesian_product() {
        let mut tabloid = vec![0; d];
        let mut sign = 1;
        for (col, (perm, s)) in columns.iter().zip(&choice) {
            sign *= s;
            for (row, &src) in perm.iter().enumerate() {
                tabloid[col[src]] = row;
            }
        }
        *out.entry(tabloid).or_insert(0) += sign;
    }
    if width == 0 {
        out.insert(vec![0; d], 1);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Solves `B x = v_j` for every column `v_j`, where `B` has full column rank.
fn solve_columns(basis: &[Vec<i64>], rhs: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, OracleError> {
    type Q = Ratio<i128>;
    let rows = basis.len();
    let f = basis.first().map_or(0, Vec::len);
    let m = rhs.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            basis[r]
                .iter()
                .chain(&rhs[r])
                .map(|&x| Q::from_integer(i128::from(x)))
                .collect()
        })
        .collect();
    for col in 0..f {
        let Some(r) = (col..rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(OracleError::Relation("polytabloids are dependent".into()));
        };
        a.swap(col, r);
        let inv = Q::one() / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        let pivot = a[col].clone();
        for (rr, row) in a.iter_mut().enumerate() {
            if rr != col && !row[col].is_zero() {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x -= factor * y;
                }
            }
        }
    }
    if a[f..].iter().any(|row| row[f..].iter().any(|x| !x.is_zero())) {
        return Err(OracleError::Relation("vector outside the Specht module".into()));
    }
    (0..f)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let x = a[r][f + c];
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).map_err(|_| OracleError::NotIntegral)
                    } else {
                        Err(OracleError::NotIntegral)
                    }
                })
                .collect()
        })
        .collect()
}

/// `Sp_λ` over the rationals, in the basis of standard polytabloids.
pub fn specht_module(lambda: &Partition) -> Result<ExplicitModule, OracleError> {
    let d = lambda.weight();
    if d > MAX_SPECHT_DEGREE {
        return Err(OracleError::TooLarge {
            what: "specht_module",
            d,
            max: MAX_SPECHT_DEGREE,
        });
    }
    let tableaux = standard_tableaux(lambda);
    let vectors: Vec<HashMap<Tabloid, i64>> = tableaux.iter().map(|t| polytabloid(t, d)).collect();
    let mut index: HashMap<Tabloid, usize> = HashMap::new();
    for v in &vectors {
        for key in v.keys() {
            let next = index.len();
            index.entry(key.clone()).or_insert(next);
        }
    }
    let dense = |v: &HashMap<Tabloid, i64>, index: &mut HashMap<Tabloid, usize>| -> Vec<(usize, i64)> {
        v.iter()
            .map(|(k, &c)| {
                let next = index.len();
                (*index.entry(k.clone()).or_insert(next), c)
            })
            .collect()
    };
    let f = tableaux.len();
    let mut generators = Vec::new();
    for a in 0..d.saturating_sub(1) {
        let swapped: Vec<Vec<(usize, i64)>> = tableaux
            .iter()
            .map(|t| {
                let moved: Vec<Vec<usize>> = t
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&x| match x {
                                x if x == a => a + 1,
                                x if x == a + 1 => a,
                                x => x,
                            })
                            .collect()
                    })
                    .collect();
                dense(&polytabloid(&moved, d), &mut index)
            })
            .collect();
        let n = index.len();
        let mut basis = vec![vec![0i64; f]; n];
        for (j, v) in vectors.iter().enumerate() {
            for (k, &c) in v {
                basis[index[k]][j] = c;
            }
        }
        let mut rhs = vec![vec![0i64; f]; n];
        for (j, v) in swapped.iter().enumerate() {
            for &(r, c) in v {
                rhs[r][j] = c;
            }
        }
        generators.push(solve_columns(&basis, &rhs)?);
    }
    ExplicitModule::new(d, vec![0; f], generators)
}

fn representatives(rho: &CycleType) -> (Vec<usize>, Vec<usize>) {
    let d = rho.d();
    let mut standard = vec![0; d];
    let mut start = 0;
    for &len in rho.cycles().parts() {
        for x in 0..len {
            standard[start + x] = start + (x + 1) % len;
        }
        start += len;
    }
    let relabel: Vec<usize> = (0..d).map(|x| (3 * x + 1) % d.max(1)).collect();
    let relabel = if relabel.iter().all_unique() {
        relabel
    } else {
        (0..d).rev().collect()
    };
    let mut conjugate = vec![0; d];
    for x in 0..d {
        conjugate[relabel[x]] = relabel[standard[x]];
    }
    (standard, conjugate)
}

/// Graded trace of a permutation of cycle type `ρ`, computed on two
/// conjugate representatives that must agree.
pub fn character_from_module(m: &ExplicitModule, rho: &CycleType) -> Result<IntPoly, OracleError> {
    if rho.d() != m.d() {
        return Err(OracleError::Mismatch {
            module: m.d(),
            class: rho.d(),
        });
    }
    let (a, b) = representatives(rho);
    let ta = m.graded_trace(&m.permutation_matrix(&a));
    let tb = m.graded_trace(&m.permutation_matrix(&b));
    if ta != tb {
        return Err(OracleError::NotClassFunction);
    }
    Ok(ta)
}

/// The full character table from explicit Specht modules.
pub fn character_table(d: usize) -> Result<HashMap<(Partition, CycleType), i64>, OracleError> {
    let mut out = HashMap::new();
    for lambda in crate::partition::partitions_of(d) {
        let m = specht_module(&lambda)?;
        for rho in CycleType::all(d) {
            let v = character_from_module(&m, &rho)?.coeff(0);
            out.insert((lambda.clone(), rho), v as i64);
        }
    }
    Ok(out)
}

/// Degree-preserving left action `σ·(x ⊗ g) = σx ⊗ σg` on `U^{⊗d} ⊗ k[Σ_d]`,
/// with basis `(multi-index into U, g)`; `U` has one basis vector per unit of
/// each Poincaré coefficient.
pub struct TensorGroupAlgebra {
    pub module: ExplicitModule,
    basis: Vec<(Vec<usize>, Vec<usize>)>,
    index: HashMap<(Vec<usize>, Vec<usize>), usize>,
}

impl TensorGroupAlgebra {
    pub fn new(u: &GradedSpace, d: usize) -> Result<Self, OracleError> {
        if d > MAX_TRACE_DEGREE {
            return Err(OracleError::TooLarge {
                what: "graded_isotypic_trace",
                d,
                max: MAX_TRACE_DEGREE,
            });
        }
        let u_degrees: Vec<usize> = u
            .poincare
            .pairs()
            .into_iter()
            .flat_map(|(e, c)| std::iter::repeat_n(e, c as usize))
            .collect();
        let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
        let words: Vec<Vec<usize>> = (0..d).map(|_| 0..u_degrees.len()).multi_cartesian_product().collect();
        let basis: Vec<(Vec<usize>, Vec<usize>)> = words
            .iter()
            .flat_map(|x| perms.iter().map(move |g| (x.clone(), g.clone())))
            .collect();
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(n, b)| (b, n)).collect();
        let degrees = basis
            .iter()
            .map(|(x, _)| x.iter().map(|&b| u_degrees[b]).sum())
            .collect();
        let mut algebra = TensorGroupAlgebra {
            module: ExplicitModule {
                d,
                degrees: Vec::new(),
                generators: Vec::new(),
            },
            basis,
            index,
        };
        let n = algebra.basis.len();
        let generators = (0..d.saturating_sub(1))
            .map(|a| {
                let mut s: Vec<usize> = (0..d).collect();
                s.swap(a, a + 1);
                let mut m = vec![vec![0i64; n]; n];
                for b in 0..n {
                    m[algebra.left(&s, b)][b] = 1;
                }
                m
            })
            .collect();
        algebra.module = ExplicitModule::new(d, degrees, generators)?;
        Ok(algebra)
    }

    fn left(&self, sigma: &[usize], b: usize) -> usize {
        let (x, g) = &self.basis[b];
        let mut sx = vec![0; x.len()];
        for (j, &v) in x.iter().enumerate() {
            sx[sigma[j]] = v;
        }
        let sg: Vec<usize> = g.iter().map(|&v| sigma[v]).collect();
        self.index[&(sx, sg)]
    }

    fn right(&self, tau: &[usize], b: usize) -> usize {
        let (x, g) = &self.basis[b];
        let gt: Vec<usize> = tau.iter().map(|&v| g[v]).collect();
        self.index[&(x.clone(), gt)]
    }
}

/// Multiplicity of `Sp_μ` in the `λ`-isotypic part of `U^{⊗d} ⊗ k[Σ_d]` under
/// the right action, graded: `tr(P^L_μ P^R_λ) / (f_μ f_λ)` per degree.
pub fn graded_isotypic_trace(
    mu: &Partition,
    lambda: &Partition,
    u: &GradedSpace,
    d: usize,
) -> Result<PoincarePoly, OracleError> {
    if mu.weight() != d || lambda.weight() != d {
        return Err(OracleError::Weights {
            mu: mu.weight(),
            lambda: lambda.weight(),
            d,
        });
    }
    let algebra = TensorGroupAlgebra::new(u, d)?;
    let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
    let chi = |m: &ExplicitModule, perm: &[usize]| -> Result<i128, OracleError> {
        Ok(character_from_module(m, &cycle_type_of(perm))?.coeff(0))
    };
    let (sp_mu, sp_lambda) = (specht_module(mu)?, specht_module(lambda)?);
    let max_degree = algebra.module.degrees().iter().copied().max().unwrap_or(0);
    let mut sums = vec![0i128; max_degree + 1];
    for sigma in &perms {
        let l = algebra.module.permutation_matrix(sigma);
        let c_mu = chi(&sp_mu, sigma)?;
        for tau in &perms {
            let c_lambda = chi(&sp_lambda, tau)?;
            if c_mu * c_lambda == 0 {
                continue;
            }
            for b in 0..algebra.basis.len() {
                let entry = l[b][algebra.right(tau, b)];
                if entry != 0 {
                    sums[algebra.module.degrees()[b]] += c_mu * c_lambda * i128::from(entry);
                }
            }
        }
    }
    let order = perms.len() as i128;
    let coeffs = sums
        .into_iter()
        .map(|s| {
            let q = Ratio::new(s, order * order);
            if q.is_integer() && s >= 0 {
                Ok(q.to_integer())
            } else {
                Err(OracleError::BadTrace)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    PoincarePoly::new(IntPoly::from_coeffs(coeffs)).map_err(|_| OracleError::BadTrace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::a_space;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn count_standard(lambda: &Partition) -> usize {
        standard_tableaux(lambda).len()
    }

    #[test]
    fn trivial_and_sign() {
        for d in 1..=5 {
            let triv = specht_module(&Partition::row(d)).unwrap();
            assert_eq!(triv.dim(), 1);
            assert!((0..d - 1).all(|a| triv.generator(a) == &vec![vec![1]]));
            let sign = specht_module(&Partition::column(d)).unwrap();
            assert_eq!(sign.dim(), 1);
            assert!((0..d - 1).all(|a| sign.generator(a) == &vec![vec![-1]]));
        }
    }

    #[test]
    fn standard_representation() {
        let m = specht_module(&p(&[2, 1])).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(
            character_from_module(&m, &CycleType::parse(&[3])).unwrap(),
            IntPoly::constant(-1)
        );
        assert_eq!(
            character_from_module(&m, &CycleType::parse(&[2, 1])).unwrap(),
            IntPoly::zero()
        );
        assert_eq!(
            character_from_module(&m, &CycleType::identity(3)).unwrap(),
            IntPoly::constant(2)
        );
    }

    #[test]
    fn dimensions_match_hook_formula() {
        for d in 1..=MAX_SPECHT_DEGREE {
            for lambda in crate::partition::partitions_of(d) {
                let m = specht_module(&lambda).unwrap();
                assert_eq!(m.dim() as u128, crate::partition::specht_dim(&lambda));
                assert_eq!(m.dim(), count_standard(&lambda));
            }
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(
            specht_module(&Partition::row(7)),
            Err(OracleError::TooLarge { .. })
        ));
        let u = a_space(2, 1);
        assert!(matches!(
            graded_isotypic_trace(&Partition::row(4), &Partition::row(4), &u, 4),
            Err(OracleError::TooLarge { .. })
        ));
        let m = specht_module(&p(&[2, 1])).unwrap();
        assert!(matches!(
            character_from_module(&m, &CycleType::identity(4)),
            Err(OracleError::Mismatch { .. })
        ));
    }

    #[test]
    fn broken_relations_are_rejected() {
        let bad = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, -1]]];
        assert!(matches!(
            ExplicitModule::new(3, vec![0, 0], bad),
            Err(OracleError::Relation(_))
        ));
        let shifts = vec![vec![vec![0, 1], vec![1, 0]]];
        assert!(matches!(
            ExplicitModule::new(2, vec![0, 1], shifts),
            Err(OracleError::DegreeNotPreserved(1))
        ));
    }

    #[test]
    fn isotypic_trace_examples() {
        let u = a_space(2, 1);
        let one = Partition::row(1);
        assert_eq!(
            graded_isotypic_trace(&one, &one, &u, 1).unwrap(),
            PoincarePoly::from_pairs(&[(0, 1), (2, 1)])
        );
        assert_eq!(
            graded_isotypic_trace(&p(&[2]), &p(&[2]), &u, 2).unwrap(),
            PoincarePoly::from_pairs(&[(0, 1), (2, 1), (4, 1)])
        );
        assert_eq!(
            graded_isotypic_trace(&p(&[2]), &p(&[1, 1]), &u, 2).unwrap(),
            PoincarePoly::from_pairs(&[(2, 1)])
        );
    }

    #[test]
    fn regular_module_has_relations() {
        let alg = TensorGroupAlgebra::new(&a_space(3, 1), 3).unwrap();
        assert_eq!(alg.module.dim(), 27 * 6);
    }
}
