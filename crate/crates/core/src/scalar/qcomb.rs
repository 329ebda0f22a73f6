//! q-combinatorics in the balanced convention: the bracket of an integer is
//! the Laurent sum [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, symmetric under
//! q -> 1/q. The round bracket (n) = (q^{2n} - 1)/(q^2 - 1) is the one-sided
//! variant that shows up in the Laplacian spectrum.

use num_traits::{One, Zero};

use super::ratfun::ExactScalar;

/// Balanced q-integer, odd under negation: [0] = 0, [-n] = -[n].
pub fn q_integer(n: i64) -> ExactScalar {
    if n == 0 {
        return ExactScalar::zero();
    }
    if n < 0 {
        return -q_integer(-n);
    }
    let mut acc = ExactScalar::zero();
    let mut k = n - 1;
    loop {
        acc = acc + ExactScalar::q_pow(k);
        if k <= -(n - 1) {
            break;
        }
        k -= 2;
    }
    acc
}

/// [n]! = [1][2]...[n].
pub fn q_factorial(n: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for k in 1..=n as i64 {
        acc = acc * q_integer(k);
    }
    acc
}

/// Symmetric q-binomial [n choose k] = [n]!/([k]![n-k]!); invariant under
/// q -> 1/q.
pub fn q_binomial(n: u32, k: u32) -> ExactScalar {
    if k > n {
        return ExactScalar::zero();
    }
    q_factorial(n) / (q_factorial(k) * q_factorial(n - k))
}

/// Gaussian binomial in an arbitrary base b, via the Pascal recursion
/// C_b(n, k) = C_b(n-1, k-1) + b^k C_b(n-1, k). For b = q^2 this is the
/// one-sided counterpart of `q_binomial`.
pub fn gaussian_binomial(n: u32, k: u32, base: &ExactScalar) -> ExactScalar {
    if k > n {
        return ExactScalar::zero();
    }
    let k = k.min(n - k);
    // row-by-row Pascal fill; row m holds C_b(m, 0..=k)
    let mut row = vec![ExactScalar::zero(); k as usize + 1];
    row[0] = ExactScalar::one();
    for _m in 1..=n {
        for j in (1..=k as usize).rev() {
            let shifted = base.pow(j as i64) * row[j].clone();
            row[j] = row[j - 1].clone() + shifted;
        }
    }
    row[k as usize].clone()
}

/// Round bracket (n) = 1 + q^2 + ... + q^{2(n-1)} = (q^{2n} - 1)/(q^2 - 1),
/// extended to all integers as a rational function of q.
pub fn round_bracket(n: i64) -> ExactScalar {
    let num = ExactScalar::q_pow(2 * n) - ExactScalar::one();
    let den = ExactScalar::q_pow(2) - ExactScalar::one();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse::parse_scalar;

    fn pq(text: &str) -> ExactScalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn brackets_of_small_integers() {
        assert!(q_integer(0).is_zero());
        assert!(q_integer(1).is_one());
        assert_eq!(q_integer(2), pq("q+q^-1"));
        assert_eq!(q_integer(3), pq("q^2+1+q^-2"));
        assert_eq!(q_integer(-2), pq("-(q+q^-1)"));
    }

    #[test]
    fn bracket_addition_identity() {
        // [a][b+1] - [b][a+1] = [a-b], the workhorse of commutator checks
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                let lhs = q_integer(a) * q_integer(b + 1) - q_integer(b) * q_integer(a + 1);
                assert_eq!(lhs, q_integer(a - b), "a={} b={}", a, b);
            }
        }
    }

    #[test]
    fn factorials_and_binomials() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(3), q_integer(2) * q_integer(3));
        assert_eq!(q_binomial(2, 1), q_integer(2));
        assert_eq!(q_binomial(3, 1), pq("q^2+1+q^-2"));
        assert_eq!(q_binomial(4, 2), pq("q^4+q^2+2+q^-2+q^-4"));
        assert!(q_binomial(3, 5).is_zero());
        // symmetry under k -> n-k
        assert_eq!(q_binomial(5, 2), q_binomial(5, 3));
    }

    #[test]
    fn gaussian_binomial_matches_q2_products() {
        let b = ExactScalar::q_pow(2);
        // C_{q^2}(n, k) = q^{k(n-k)} [n choose k]
        for n in 0..=5u32 {
            for k in 0..=n {
                let lhs = gaussian_binomial(n, k, &b);
                let rhs = ExactScalar::q_pow((k * (n - k)) as i64) * q_binomial(n, k);
                assert_eq!(lhs, rhs, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn gaussian_binomial_other_pascal_form() {
        // the mirrored recursion C_b(n-1, k-1) b^{n-k} + C_b(n-1, k) gives
        // the same table
        let b = ExactScalar::q() + ExactScalar::one();
        for n in 1..=5u32 {
            for k in 1..n {
                let direct = gaussian_binomial(n, k, &b);
                let mirrored = gaussian_binomial(n - 1, k - 1, &b) * b.pow((n - k) as i64)
                    + gaussian_binomial(n - 1, k, &b);
                assert_eq!(direct, mirrored, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn round_brackets() {
        assert!(round_bracket(0).is_zero());
        assert!(round_bracket(1).is_one());
        assert_eq!(round_bracket(2), pq("1+q^2"));
        assert_eq!(round_bracket(3), pq("1+q^2+q^4"));
        assert_eq!(round_bracket(-1), pq("-q^-2"));
        // relation to the balanced bracket: (n) = q^{n-1} [n]
        for n in -3..=5i64 {
            assert_eq!(
                round_bracket(n),
                ExactScalar::q_pow(n - 1) * q_integer(n),
                "n={}",
                n
            );
        }
    }
}
