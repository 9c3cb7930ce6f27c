//! Integer polynomials in one variable λ.

use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Exact integer polynomial; `coefficients[i]` multiplies `λ^i`.
///
/// Always stored without trailing zeros, so the zero polynomial has no
/// coefficients and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coefficients: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: i64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `λ^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coefficients = vec![0; k + 1];
        coefficients[k] = 1;
        Polynomial { coefficients }
    }

    /// `(λ - 1)^s · λ^k`.
    pub fn shifted_power(s: usize, k: usize) -> Self {
        let linear = Polynomial::new(vec![-1, 1]);
        (0..s).fold(Polynomial::monomial(k), |acc, _| &acc * &linear)
    }

    /// Coefficients, lowest degree first.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coefficients.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// Divides by `(λ - r)`; `None` if `r` is not a root.
    pub fn deflate(&self, r: i64) -> Option<Polynomial> {
        let n = self.coefficients.len();
        if n == 0 {
            return None;
        }
        let mut quotient = vec![0; n - 1];
        let mut carry = 0;
        for i in (0..n).rev() {
            let value = self.coefficients[i] + carry * r;
            if i == 0 {
                return (value == 0).then(|| Polynomial::new(quotient));
            }
            quotient[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    /// Multiplicity of `r` as a root. The zero polynomial reports 0.
    pub fn root_multiplicity(&self, r: i64) -> usize {
        let mut count = 0;
        let mut current = self.clone();
        while let Some(q) = current.deflate(r) {
            count += 1;
            current = q;
        }
        count
    }

    /// `Some((s, k))` when the polynomial equals `(λ - 1)^s · λ^k`.
    pub fn as_shifted_power(&self) -> Option<(usize, usize)> {
        let k = self.coefficients.iter().position(|&c| c != 0)?;
        let s = self.degree()? - k;
        (*self == Polynomial::shifted_power(s, k)).then_some((s, k))
    }

    /// Factored form `(λ-1)^s·λ^k` when the polynomial has that shape.
    pub fn factored(&self, variable: &str) -> Option<String> {
        let (s, k) = self.as_shifted_power()?;
        let mut parts = Vec::new();
        match s {
            0 => {}
            1 => parts.push(format!("({variable}-1)")),
            _ => parts.push(format!("({variable}-1)^{s}")),
        }
        match k {
            0 => {}
            1 => parts.push(variable.to_owned()),
            _ => parts.push(format!("{variable}^{k}")),
        }
        if parts.is_empty() {
            Some("1".to_owned())
        } else {
            Some(parts.join("·"))
        }
    }

    /// Expanded form, highest degree first: `λ^3 - 2λ^2 + λ`.
    pub fn expanded(&self, variable: &str) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (power, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            match (power, magnitude) {
                (0, m) => out.push_str(&m.to_string()),
                (_, 1) => {}
                (_, m) => out.push_str(&m.to_string()),
            }
            match power {
                0 => {}
                1 => out.push_str(variable),
                p => out.push_str(&format!("{variable}^{p}")),
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factored("λ") {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.expanded("λ")),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        let get = |p: &Polynomial, i: usize| p.coefficients.get(i).copied().unwrap_or(0);
        Polynomial::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        let get = |p: &Polynomial, i: usize| p.coefficients.get(i).copied().unwrap_or(0);
        Polynomial::new((0..n).map(|i| get(self, i) - get(rhs, i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}
