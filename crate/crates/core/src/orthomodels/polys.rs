//! Jacobi and Gegenbauer polynomials from their explicit sums.
//!
//! The sums hold for arbitrary parameters, including the negative first
//! parameter of the extension seed, where recurrences can divide by zero.

use crate::poly::UPoly;
use crate::scalar::{binomial, factorial, pochhammer, Scalar};

/// `P_nu^{(a,b)}(x) = sum_j C(nu+a, nu-j) C(nu+b, j) ((x-1)/2)^j ((x+1)/2)^(nu-j)`.
pub fn jacobi<S: Scalar>(nu: u32, a: &S, b: &S) -> UPoly<S> {
    let half = S::one() / S::from_i64(2);
    let xm = UPoly::linear(-half.clone(), half.clone());
    let xp = UPoly::linear(half.clone(), half);
    let nu_s = S::from_i64(nu as i64);
    let mut out = UPoly::zero();
    for j in 0..=nu {
        let coeff = binomial(&(nu_s.clone() + a), nu - j) * binomial(&(nu_s.clone() + b), j);
        if coeff.is_zero() {
            continue;
        }
        let term = &xm.pow(j) * &xp.pow(nu - j);
        out = &out + &term.scale(&coeff);
    }
    out
}

/// `C_nu^{(l)}(x) = sum_k (-1)^k (l)_{nu-k} / (k! (nu-2k)!) (2x)^(nu-2k)`.
pub fn gegenbauer<S: Scalar>(nu: u32, lambda: &S) -> UPoly<S> {
    let mut coeffs = vec![S::zero(); nu as usize + 1];
    for k in 0..=nu / 2 {
        let deg = nu - 2 * k;
        let mut c = pochhammer(lambda, nu - k) / (factorial::<S>(k) * factorial::<S>(deg));
        c *= &S::from_i64(2).powi(deg);
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[deg as usize] = c;
    }
    UPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    /// Independent oracle: the three-term recurrence.
    fn jacobi_rec(nu: u32, a: &Rational, b: &Rational) -> UPoly<Rational> {
        let mut prev = UPoly::one();
        if nu == 0 {
            return prev;
        }
        let two = q(2, 1);
        let mut cur = UPoly::linear((a - b) / &two, (a + b + &two) / &two);
        for k in 2..=nu {
            let n = q(k as i64, 1);
            let s = &n * &two + a + b;
            let c1 = &two * &n * (&n + a + b) * (&s - &two);
            let c2 = &s - q(1, 1);
            let lin = UPoly::linear(a * a - b * b, &s * (&s - &two));
            let c3 = &two * (&n + a - q(1, 1)) * (&n + b - q(1, 1)) * &s;
            let next = (&(&lin * &cur).scale(&c2) - &prev.scale(&c3)).scale(&(q(1, 1) / c1));
            prev = cur;
            cur = next;
        }
        cur
    }

    fn gegenbauer_rec(nu: u32, l: &Rational) -> UPoly<Rational> {
        let mut prev = UPoly::one();
        if nu == 0 {
            return prev;
        }
        let mut cur = UPoly::linear(q(0, 1), l * q(2, 1));
        for k in 2..=nu {
            let n = q(k as i64, 1);
            let a = UPoly::linear(q(0, 1), (&n + l - q(1, 1)) * q(2, 1));
            let next = (&(&a * &cur) - &prev.scale(&(&n + l * q(2, 1) - q(2, 1)))).scale(&(q(1, 1) / n));
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn low_order_jacobi() {
        let a = q(3, 2);
        let b = q(-1, 3);
        assert!(jacobi(0, &a, &b).is_one());
        assert_eq!(jacobi(1, &a, &b), UPoly::linear((&a - &b) / q(2, 1), (&a + &b + q(2, 1)) / q(2, 1)));
    }

    #[test]
    fn jacobi_value_at_zero() {
        assert_eq!(jacobi(2, &q(1, 1), &q(1, 1)).eval(&q(0, 1)), q(-3, 4));
    }

    #[test]
    fn jacobi_matches_recurrence() {
        for (a, b) in [(q(1, 1), q(1, 1)), (q(2, 1), q(1, 1)), (q(3, 2), q(5, 2)), (q(3, 1), q(1, 1))] {
            for nu in 0..7 {
                assert_eq!(jacobi(nu, &a, &b), jacobi_rec(nu, &a, &b), "nu={nu} a={a} b={b}");
            }
        }
    }

    #[test]
    fn negative_parameter_seed() {
        // P_1^{(-3,1)}(x) = (-3-1)/2 + (-3+1+2)/2 x = -2: degree drops
        assert_eq!(jacobi(1, &q(-3, 1), &q(1, 1)), UPoly::constant(q(-2, 1)));
    }

    #[test]
    fn gegenbauer_values() {
        let l = q(3, 2);
        assert!(gegenbauer(0, &l).is_one());
        assert_eq!(gegenbauer(1, &l), UPoly::linear(q(0, 1), q(3, 1)));
        assert_eq!(gegenbauer(2, &l).eval(&q(1, 1)), q(6, 1));
        for nu in 0..8 {
            for l in [q(3, 2), q(5, 2), q(7, 3)] {
                assert_eq!(gegenbauer(nu, &l), gegenbauer_rec(nu, &l));
            }
        }
    }
}
