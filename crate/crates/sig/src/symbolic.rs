//! Symbolic signatures: every coefficient as an exact polynomial in the
//! stream's increment entries.
//!
//! Treating the increments of a length-L, d-dimensional stream as formal
//! variables `x_{n,i}` and pushing them through the same product of
//! segment exponentials yields a tensor whose coefficients are
//! multivariate polynomials with rational coefficients. Two functionals
//! agree on *every* stream of length L exactly when their symbolic
//! evaluations are equal as polynomials, which is what the moment-recovery
//! constructions solve against and certify with.

use crate::error::Error;
use crate::scalar::{Rational, Scalar};
use crate::stream::IncrementStream;
use crate::tensor::TruncatedTensor;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A power product of variables, stored sparsely as sorted
/// (variable index, positive exponent) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn variable(index: usize) -> Self {
        Monomial {
            factors: vec![(index, 1)],
        }
    }

    pub fn power(index: usize, exponent: u32) -> Self {
        if exponent == 0 {
            Monomial::unit()
        } else {
            Monomial {
                factors: vec![(index, exponent)],
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    /// The largest variable index used, if any.
    pub fn max_variable(&self) -> Option<usize> {
        self.factors.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        factors.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        factors.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        factors.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&f), None) => {
                    factors.push(f);
                    a.next();
                }
                (None, Some(&&f)) => {
                    factors.push(f);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { factors }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: lower total degree first; among equal degrees
    /// the monomial with the higher exponent on the earliest differing
    /// variable sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.factors.iter(), other.factors.iter());
            loop {
                match (a.next(), b.next()) {
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        // the side whose next factor has the smaller index
                        // carries a positive exponent where the other has
                        // zero, so it sorts first
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match eb.cmp(&ea) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                    },
                    // with equal degrees and all stored exponents positive,
                    // one list cannot be a strict prefix of the other
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => return Ordering::Equal,
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{}", v + 1)?;
            } else {
                write!(f, "x{}^{}", v + 1, e)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in graded-lex monomial order; zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultivariatePolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn variable(index: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::variable(index), Rational::one());
        p
    }

    /// `x_index^exponent` with coefficient 1.
    pub fn variable_power(index: usize, exponent: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::power(index, exponent), Rational::one());
        p
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultivariatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Evaluates at the point `values[variable index]`. Errors if any
    /// monomial references a variable outside the supplied assignment.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, Error> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let x = values.get(v).ok_or(Error::UnknownVariable {
                    variable: v,
                    provided: values.len(),
                })?;
                for _ in 0..e {
                    term = &term * x;
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if m.factors().is_empty() {
                write!(f, "{c}")?;
            } else if *c == Scalar::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Scalar for MultivariatePolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MultivariatePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn div_whole(&self, n: u64) -> Self {
        let inv = Rational::new(num::BigInt::from(1), num::BigInt::from(n));
        self.scale(&inv)
    }
    fn from_ratio(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

/// A truncated tensor whose coefficients are polynomials in the stream
/// increments.
pub type SymbolicTensor = TruncatedTensor<MultivariatePolynomial>;

/// Stored-monomial budget for symbolic signatures; beyond this the
/// computation refuses rather than thrash.
pub const DEFAULT_MONOMIAL_CAP: usize = 1_000_000;

/// The flat variable index of increment entry `x_{step, coordinate}` in a
/// `dimension`-dimensional stream; `step` and `coordinate` are 1-based.
pub fn variable_index(step: usize, coordinate: usize, dimension: usize) -> usize {
    debug_assert!(step >= 1 && coordinate >= 1 && coordinate <= dimension);
    (step - 1) * dimension + (coordinate - 1)
}

fn count_monomials(t: &SymbolicTensor) -> usize {
    (0..=t.depth())
        .map(|k| t.level(k).iter().map(|p| p.num_terms()).sum::<usize>())
        .sum()
}

/// Symbolic signatures of every prefix of a length-`len` stream: the entry
/// at position j is the signature for the first j steps. Shares the
/// variable numbering of [`variable_index`], so a prefix's polynomials
/// embed into the full stream's variable universe unchanged.
pub fn symbolic_signature_prefixes(
    len: usize,
    dimension: usize,
    depth: usize,
    cap: usize,
) -> Result<Vec<SymbolicTensor>, Error> {
    assert!(dimension >= 1);
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = SymbolicTensor::one(2 * dimension, depth);
    out.push(acc.clone());
    for step in 1..=len {
        let mut lead = vec![MultivariatePolynomial::zero(); 2 * dimension];
        let mut lag = vec![MultivariatePolynomial::zero(); 2 * dimension];
        for coord in 1..=dimension {
            let var = MultivariatePolynomial::variable(variable_index(step, coord, dimension));
            lead[coord - 1] = var.clone();
            lag[dimension + coord - 1] = var;
        }
        acc = acc
            .product(&TruncatedTensor::exp_segment(&lead, depth))
            .expect("shapes agree by construction");
        acc = acc
            .product(&TruncatedTensor::exp_segment(&lag, depth))
            .expect("shapes agree by construction");
        if count_monomials(&acc) > cap {
            return Err(Error::MonomialCapExceeded { cap, step });
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// The symbolic signature of a length-`len`, `dimension`-dimensional
/// stream at the default monomial cap.
pub fn symbolic_signature(
    len: usize,
    dimension: usize,
    depth: usize,
) -> Result<SymbolicTensor, Error> {
    symbolic_signature_with_cap(len, dimension, depth, DEFAULT_MONOMIAL_CAP)
}

pub fn symbolic_signature_with_cap(
    len: usize,
    dimension: usize,
    depth: usize,
    cap: usize,
) -> Result<SymbolicTensor, Error> {
    Ok(symbolic_signature_prefixes(len, dimension, depth, cap)?
        .pop()
        .expect("prefix list is never empty"))
}

/// Substitutes concrete increments into a symbolic tensor. The stream must
/// have the length and dimension the tensor was built for.
pub fn substitute(
    tensor: &SymbolicTensor,
    stream: &IncrementStream<Rational>,
) -> Result<TruncatedTensor<Rational>, Error> {
    let values: Vec<Rational> = stream.rows().iter().flatten().cloned().collect();
    tensor.try_map(|p| p.eval(&values))
}
