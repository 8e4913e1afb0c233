//! Graded vector spaces recorded by their Poincaré polynomials.
//!
//! Everything the calculator reports is a graded dimension, so a graded space
//! is a polynomial in `t` with nonnegative integer coefficients plus a
//! structured name. Duals are reported with nonnegative grading: dualizing a
//! space only flips its name.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::symchar::{ClassFunction, CycleType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("coefficient {coeff} in degree {degree} is negative")]
    Negative { degree: usize, coeff: i128 },
    #[error("coefficient {coeff} in degree {degree} is not divisible by {divisor}")]
    NotDivisible { degree: usize, coeff: i128, divisor: i128 },
}

/// Dense polynomial in `t` with `i128` coefficients; `coeffs[e]` is the
/// coefficient of `t^e`. Trailing zeros are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(degree: usize, c: i128) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> i128 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|e| self.coeff(e).checked_add(other.coeff(e)).ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                let term = x.checked_mul(y).ok_or(PolyError::Overflow)?;
                coeffs[a + b] = coeffs[a + b].checked_add(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_scale(&self, c: i128) -> Result<Self, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.checked_mul(c).ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `t -> t^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k > 0, "substitution t -> t^0 is not a grading map");
        let mut coeffs = vec![0; self.coeffs.len().saturating_sub(1) * k + 1];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[e * k] = c;
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplies by `t^shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; shift];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_coeffs(coeffs)
    }

    /// Divides every coefficient by `divisor`, failing unless all divisions are exact.
    pub fn div_exact(&self, divisor: i128) -> Result<Self, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(degree, &coeff)| {
                if coeff % divisor != 0 {
                    Err(PolyError::NotDivisible { degree, coeff, divisor })
                } else {
                    Ok(coeff / divisor)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.checked_add(rhs).expect("polynomial overflow")
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.checked_mul(rhs).expect("polynomial overflow")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, false)
    }
}

fn write_poly(f: &mut impl fmt::Write, coeffs: &[i128], latex: bool) -> fmt::Result {
    let mut first = true;
    for (e, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        first = false;
        let power = match (e, latex) {
            (0, _) => String::new(),
            (1, _) => "t".to_string(),
            (_, false) => format!("t^{e}"),
            (_, true) => format!("t^{{{e}}}"),
        };
        match (mag, power.is_empty()) {
            (_, true) => write!(f, "{mag}")?,
            (1, false) => f.write_str(&power)?,
            (_, false) => write!(f, "{mag}{}{power}", if latex { "" } else { "*" })?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Poincaré polynomial of a graded vector space: nonnegative coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PoincarePoly(IntPoly);

impl PoincarePoly {
    pub fn new(poly: IntPoly) -> Result<Self, PolyError> {
        if let Some((degree, &coeff)) = poly.coeffs().iter().enumerate().find(|(_, c)| **c < 0) {
            return Err(PolyError::Negative { degree, coeff });
        }
        Ok(PoincarePoly(poly))
    }

    pub fn zero() -> Self {
        PoincarePoly(IntPoly::zero())
    }

    pub fn one() -> Self {
        PoincarePoly(IntPoly::one())
    }

    /// `c * t^degree`
    pub fn monomial(degree: usize, c: u64) -> Self {
        PoincarePoly(IntPoly::monomial(degree, c as i128))
    }

    /// Builds from a list of `[degree, coefficient]` pairs; repeated degrees add up.
    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let top = pairs.iter().map(|&(d, _)| d + 1).max().unwrap_or(0);
        let mut coeffs = vec![0i128; top];
        for &(d, c) in pairs {
            coeffs[d] += c as i128;
        }
        PoincarePoly(IntPoly::from_coeffs(coeffs))
    }

    pub fn as_poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn into_poly(self) -> IntPoly {
        self.0
    }

    pub fn coeff(&self, degree: usize) -> i128 {
        self.0.coeff(degree)
    }

    /// Total dimension, the value at `t = 1`.
    pub fn dimension(&self) -> i128 {
        self.0.eval_one()
    }

    /// Degrees carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.pairs().into_iter().map(|(d, _)| d).collect()
    }

    /// Degree-ascending `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn pairs(&self) -> Vec<(usize, i128)> {
        self.0
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(d, c)| (d, *c))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        PoincarePoly(&self.0 * &other.0)
    }

    pub fn substitute_power(&self, k: usize) -> Self {
        PoincarePoly(self.0.substitute_power(k))
    }

    pub fn shift_up(&self, shift: usize) -> Self {
        PoincarePoly(self.0.shift_up(shift))
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        write_poly(&mut out, self.0.coeffs(), true).expect("writing to a String");
        out
    }
}

impl fmt::Debug for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

// JSON form: array of [degree, coefficient] pairs, degree-ascending.
impl Serialize for PoincarePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, i128)> = self.pairs();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoincarePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(usize, i128)> = Vec::deserialize(d)?;
        let top = pairs.iter().map(|&(deg, _)| deg + 1).max().unwrap_or(0);
        let mut coeffs = vec![0i128; top];
        for (deg, c) in pairs {
            coeffs[deg] += c;
        }
        PoincarePoly::new(IntPoly::from_coeffs(coeffs)).map_err(serde::de::Error::custom)
    }
}

/// Named graded space. `twist` counts Frobenius twists applied to the base
/// space and `dual` records a linear dual; the two commute, so the name is
/// canonical in either order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedSpace {
    pub poincare: PoincarePoly,
    pub base: String,
    pub twist: u32,
    pub dual: bool,
}

impl GradedSpace {
    pub fn new(base: impl Into<String>, poincare: PoincarePoly) -> Self {
        GradedSpace {
            poincare,
            base: base.into(),
            twist: 0,
            dual: false,
        }
    }

    /// The ground field, one-dimensional in degree 0.
    pub fn trivial() -> Self {
        Self::new("k", PoincarePoly::one())
    }

    pub fn is_trivial(&self) -> bool {
        self.poincare == PoincarePoly::one()
    }

    pub fn dimension(&self) -> i128 {
        self.poincare.dimension()
    }

    pub fn label(&self) -> String {
        let mut s = self.base.clone();
        if self.twist > 0 {
            s.push_str(&format!("^({})", self.twist));
        }
        if self.dual {
            s.push('*');
        }
        s
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `p^i`, panicking on overflow.
pub fn prime_power(p: u32, i: u32) -> usize {
    (p as usize).checked_pow(i).expect("p^i overflows usize")
}

/// The collapsing space `A_i`: one-dimensional in each even degree `0, 2, ..., 2p^i - 2`.
pub fn a_space(p: u32, i: u32) -> GradedSpace {
    let n = prime_power(p, i);
    let pairs: Vec<(usize, u64)> = (0..n).map(|e| (2 * e, 1)).collect();
    GradedSpace::new(format!("A_{i}"), PoincarePoly::from_pairs(&pairs))
}

/// `S_i`: one-dimensional in each degree `0, 1, ..., p^i - 1`.
pub fn s_space(p: u32, i: u32) -> GradedSpace {
    let n = prime_power(p, i);
    let pairs: Vec<(usize, u64)> = (0..n).map(|e| (e, 1)).collect();
    GradedSpace::new(format!("S_{i}"), PoincarePoly::from_pairs(&pairs))
}

/// Frobenius twist of a graded space: degree `e` moves to `p^i * e`.
pub fn twist_grading(u: &GradedSpace, p: u32, i: u32) -> GradedSpace {
    if i == 0 {
        return u.clone();
    }
    GradedSpace {
        poincare: u.poincare.substitute_power(prime_power(p, i)),
        base: u.base.clone(),
        twist: u.twist + i,
        dual: u.dual,
    }
}

pub fn dual_space(u: &GradedSpace) -> GradedSpace {
    GradedSpace {
        dual: !u.dual,
        ..u.clone()
    }
}

/// Graded trace of the place permutation action of `Σ_d` on `U^{⊗d}`:
/// at cycle type `ρ` the value is `Π_j P_U(t^{ρ_j})`.
pub fn tensor_power_character(u: &GradedSpace, d: usize) -> ClassFunction {
    assert!(d >= 1, "tensor power character needs d >= 1");
    ClassFunction::from_fn(d, |rho: &CycleType| {
        rho.cycles().parts().iter().fold(IntPoly::one(), |acc, &len| {
            &acc * &u.poincare.as_poly().substitute_power(len)
        })
    })
}

/// Graded character of the free module `U^{⊗d} ⊗ k[Σ_d]` under the diagonal
/// action: `d! * P_U(t)^d` at the identity class, zero elsewhere.
pub fn free_module_character(u: &GradedSpace, d: usize) -> ClassFunction {
    assert!(d >= 1, "free module character needs d >= 1");
    let identity = CycleType::identity(d);
    let top = u
        .poincare
        .as_poly()
        .checked_pow(d as u32)
        .and_then(|p| p.checked_scale(factorial(d)))
        .expect("free module character overflows");
    ClassFunction::from_fn(d, |rho| if *rho == identity { top.clone() } else { IntPoly::zero() })
}

pub(crate) fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Shift of grading: an integer constant plus a signed sum of symbolic
/// shifts `h(i,k)` whose values are not known in closed form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct ShiftSpec {
    terms: BTreeMap<(u32, u32), i64>,
    constant: i64,
}

impl ShiftSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn symbolic(i: u32, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((i, k), 1);
        ShiftSpec { terms, constant: 0 }
    }

    pub fn value(n: i64) -> Self {
        ShiftSpec {
            terms: BTreeMap::new(),
            constant: n,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant == 0
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.terms
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// The `(i,k)` of a shift that is exactly one copy of `h(i,k)`.
    pub fn as_single_symbol(&self) -> Option<(u32, u32)> {
        match (self.terms.len(), self.constant) {
            (1, 0) => self.terms.iter().next().filter(|(_, &c)| c == 1).map(|(&ik, _)| ik),
            _ => None,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&ik, &c) in &other.terms {
            *terms.entry(ik).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        ShiftSpec {
            terms,
            constant: self.constant + other.constant,
        }
    }

    pub fn negate(&self) -> Self {
        ShiftSpec {
            terms: self.terms.iter().map(|(&ik, &c)| (ik, -c)).collect(),
            constant: -self.constant,
        }
    }

    /// Replaces every `h(i,k)` that has an override by its integer value.
    pub fn resolve(&self, overrides: &BTreeMap<(u32, u32), i64>) -> Self {
        let mut out = ShiftSpec::value(self.constant);
        for (&ik, &c) in &self.terms {
            match overrides.get(&ik) {
                Some(v) => out.constant += c * v,
                None => {
                    out.terms.insert(ik, c);
                }
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(|i, k| format!("h^{{{i}}}_{{{k}}}"))
    }

    fn render(&self, sym: impl Fn(u32, u32) -> String) -> String {
        let mut parts = Vec::new();
        for (&(i, k), &c) in &self.terms {
            let s = sym(i, k);
            parts.push(match c {
                1 => s,
                -1 => format!("-{s}"),
                _ => format!("{c}{s}"),
            });
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        parts.join("+").replace("+-", "-")
    }
}

impl fmt::Display for ShiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|i, k| format!("h({i},{k})")))
    }
}

/// The graded character `χ_λ(ρ) · Π_j P_U(t^{ρ_j})`, i.e. the λ-isotypic
/// twist of the tensor power character.
pub fn isotypic_tensor_character(lambda: &Partition, u: &GradedSpace) -> ClassFunction {
    let d = lambda.weight();
    let tensor = tensor_power_character(u, d);
    ClassFunction::from_fn(d, |rho| {
        let chi = crate::symchar::character(lambda, rho).expect("weights agree");
        tensor
            .value(rho)
            .checked_scale(chi as i128)
            .expect("character value overflows")
    })
}
