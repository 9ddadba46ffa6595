use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense index of an edge label inside a [`LabelAlphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u16);

impl Label {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, duplicate-free set of label tokens.
///
/// Label sequences are compared by index order, so the order given at
/// construction is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAlphabet {
    tokens: Vec<String>,
}

impl LabelAlphabet {
    pub fn new<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self> {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidParams("label alphabet is empty".into()));
        }
        if tokens.len() > u16::MAX as usize {
            return Err(Error::InvalidParams("too many labels".into()));
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(|c| c.is_whitespace() || c == ',' || c == '-') {
                return Err(Error::InvalidParams(format!(
                    "label token `{t}` must be nonempty without whitespace, `,` or `-`"
                )));
            }
            if tokens[..i].contains(t) {
                return Err(Error::InvalidParams(format!("duplicate label `{t}`")));
            }
        }
        Ok(Self { tokens })
    }

    /// Single-label alphabet `{e}` for the classical unlabeled model.
    pub fn single() -> Self {
        Self { tokens: vec!["e".into()] }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, label: Label) -> &str {
        &self.tokens[label.index()]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn lookup(&self, token: &str) -> Result<Label> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(|i| Label(i as u16))
            .ok_or_else(|| Error::UnknownLabel(token.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.tokens.len()).map(|i| Label(i as u16))
    }
}

impl fmt::Display for LabelAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens.join(","))
    }
}

/// Rates `a`, `b` (edge probabilities `a/n`, `b/n`) and the within / across
/// community label distributions `mu`, `nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T = f64> {
    pub a: T,
    pub b: T,
    pub mu: Vec<T>,
    pub nu: Vec<T>,
    pub alphabet: LabelAlphabet,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(a: T, b: T, mu: Vec<T>, nu: Vec<T>, alphabet: LabelAlphabet) -> Result<Self> {
        let p = Self { a, b, mu, nu, alphabet };
        p.validate()?;
        Ok(p)
    }

    /// Classical SBM: one label, `mu = nu = [1]`.
    pub fn unlabeled(a: T, b: T) -> Result<Self> {
        Self::new(a, b, vec![T::one()], vec![T::one()], LabelAlphabet::single())
    }

    /// Two labels `r`, `b` with `mu(r) = 1/2 + eps`, `nu(r) = 1/2 - eps`.
    pub fn binary(a: T, b: T, eps: T) -> Result<Self> {
        let half = T::of(0.5);
        Self::new(
            a,
            b,
            vec![half + eps, half - eps],
            vec![half - eps, half + eps],
            LabelAlphabet::new(["r", "b"])?,
        )
    }

    pub fn num_labels(&self) -> usize {
        self.alphabet.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if !(self.a.is_finite() && self.a >= T::zero()) {
            return bad(format!("a = {} must be finite and >= 0", self.a));
        }
        if !(self.b.is_finite() && self.b >= T::zero()) {
            return bad(format!("b = {} must be finite and >= 0", self.b));
        }
        let k = self.alphabet.len();
        for (name, dist) in [("mu", &self.mu), ("nu", &self.nu)] {
            if dist.len() != k {
                return bad(format!("{name} has {} entries for {k} labels", dist.len()));
            }
            if dist.iter().any(|&x| !(x.is_finite() && x >= T::zero())) {
                return bad(format!("{name} has a negative or non-finite entry"));
            }
            let total: T = dist.iter().copied().sum();
            if (total - T::one()).abs() > T::simplex_tol() {
                return bad(format!("{name} sums to {total}, not 1"));
            }
        }
        Ok(())
    }

    /// Checks `a/n <= 1` and `b/n <= 1`.
    pub fn check_size(&self, n: usize) -> Result<()> {
        let nn = T::of_usize(n);
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if self.a > nn || self.b > nn {
            return Err(Error::InvalidParams(format!(
                "edge probabilities a/n = {}, b/n = {} exceed 1",
                self.a / nn,
                self.b / nn
            )));
        }
        Ok(())
    }

    /// `a mu(l) + b nu(l)`.
    #[inline]
    pub fn plus(&self, l: usize) -> T {
        self.a * self.mu[l] + self.b * self.nu[l]
    }

    /// `a mu(l) - b nu(l)`.
    #[inline]
    pub fn minus(&self, l: usize) -> T {
        self.a * self.mu[l] - self.b * self.nu[l]
    }

    pub fn cast<U: Scalar>(&self) -> ModelParams<U> {
        let c = |x: T| U::of(x.as_f64());
        ModelParams {
            a: c(self.a),
            b: c(self.b),
            mu: self.mu.iter().map(|&x| c(x)).collect(),
            nu: self.nu.iter().map(|&x| c(x)).collect(),
            alphabet: self.alphabet.clone(),
        }
    }
}
