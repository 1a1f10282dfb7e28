use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Polynomial `sum c_ij x^i y^j` in two commuting variables.
///
/// The meaning of the variables is fixed by the caller: `(H, sqrt(H_phi))` for
/// the operator products, `(H, H_phi)` for `P1`, `P2`, and `(H, N+u)` for
/// structure functions.
#[derive(Clone, Debug)]
pub struct BivarPoly<S> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> BivarPoly<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn monomial(c: S, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    /// `a + b y`.
    pub fn linear_y(a: S, b: S) -> Self {
        Self::constant(a).add(&Self::monomial(b, 0, 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, key: (u32, u32), c: S) {
        let sum = match self.terms.remove(&key) {
            Some(old) => {
                let scale = old.abs_value();
                (old + c).flush(&scale)
            }
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero();
        if k.is_zero() {
            return out;
        }
        for (key, c) in &self.terms {
            out.terms.insert(*key, c.clone() * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.insert_add((i1 + i2, j1 + j2), c1.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        let mut acc = S::zero();
        for ((i, j), c) in &self.terms {
            acc += &(c.clone() * x.powi(*i) * y.powi(*j));
        }
        acc
    }

    /// Substitute `y -> c y^k`.
    pub fn substitute_y(&self, c: &S, k: u32) -> Self {
        let mut out = Self::zero();
        for ((i, j), v) in &self.terms {
            out.insert_add((*i, j * k), v.clone() * c.powi(*j));
        }
        out
    }

    /// Split `self(x, y) = E(x, y^2) + y O(x, y^2)` into `(E, O)`.
    pub fn parity_split(&self) -> (Self, Self) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for ((i, j), c) in &self.terms {
            if j % 2 == 0 {
                even.insert_add((*i, j / 2), c.clone());
            } else {
                odd.insert_add((*i, (j - 1) / 2), c.clone());
            }
        }
        (even, odd)
    }

    /// `self(x, -y)`.
    pub fn reflect_y(&self) -> Self {
        let mut out = self.clone();
        for ((_, j), c) in out.terms.iter_mut() {
            if j % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Maximum of `i + j` over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    /// Coefficientwise agreement in the sense of the field.
    pub fn agrees(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|&(i, j)| self.coeff(i, j).agrees(&other.coeff(i, j)))
    }

    /// One line per monomial: `i j coefficient`.
    pub fn coefficient_table(&self) -> String {
        let mut out = String::new();
        for ((i, j), c) in &self.terms {
            out.push_str(&format!("{i} {j} {c}\n"));
        }
        out
    }

    pub fn render(&self, x: &str, y: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((i, j), c) in self.terms.iter().rev() {
            let mut s = format!("({c})");
            if *i > 0 {
                s.push_str(&format!("*{x}^{i}"));
            }
            if *j > 0 {
                s.push_str(&format!("*{y}^{j}"));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BivarPoly<T> {
        let mut out = BivarPoly::zero();
        for (k, c) in &self.terms {
            out.insert_add(*k, f(c));
        }
        out
    }
}

impl<S: Scalar> PartialEq for BivarPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees(other)
    }
}

impl<S: Scalar> fmt::Display for BivarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn ring_operations() {
        let a = BivarPoly::x().add(&BivarPoly::linear_y(q(1, 1), q(2, 1)));
        let sq = a.mul(&a);
        assert_eq!(sq.eval(&q(3, 1), &q(1, 2)), q(25, 1));
        assert!(a.sub(&a).is_zero());
        assert_eq!(sq.total_degree(), Some(2));
    }

    #[test]
    fn parity_split_reconstructs() {
        let p = BivarPoly::linear_y(q(-1, 1), q(1, 1)).pow(5).mul(&BivarPoly::x());
        let (e, o) = p.parity_split();
        let y = q(3, 7);
        let h = q(2, 1);
        assert_eq!(p.eval(&h, &y), e.eval(&h, &(&y * &y)) + &y * o.eval(&h, &(&y * &y)));
        let r = p.reflect_y();
        assert_eq!(r.eval(&h, &y), p.eval(&h, &-y.clone()));
    }

    #[test]
    fn substitution() {
        let p = BivarPoly::y().pow(2).add(&BivarPoly::x());
        let s = p.substitute_y(&q(2, 1), 3);
        assert_eq!(s.coeff(0, 6), q(4, 1));
        assert_eq!(s.coeff(1, 0), q(1, 1));
    }
}
