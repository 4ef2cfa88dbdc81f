//! Partition combinatorics and closed-form subspace counts.
//!
//! Every count is assembled symbolically in `Z[q]` and evaluated afterwards.
//! Quotients such as `(q^n - 1) / (q^{mu_1} - 1)` are never formed on their
//! own: the whole numerator is built first and divided once, and a nonzero
//! remainder is reported as [`Error::InexactDivision`].

mod partition;
mod qpoly;

pub use partition::{partitions_of, partitions_with_first_part, Partition};
pub use qpoly::{QPolynomial, SignedQPolynomial};

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::ffield::prime_power;

/// Gaussian binomial `[n choose k]_q` by the q-Pascal recurrence
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`. Zero outside `0 <= k <= n`.
pub fn q_binomial(n: usize, k: usize) -> QPolynomial {
    if k > n {
        return QPolynomial::zero();
    }
    let k = k.min(n - k);
    let mut row = vec![QPolynomial::one(); k + 1];
    // row[j] holds [m, j] after processing m; entries with j > m are unused.
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            if j == m {
                row[j] = QPolynomial::one();
            } else {
                row[j] = &row[j - 1] + &row[j].shift(j);
            }
        }
    }
    row.swap_remove(k)
}

/// `|GL_k(F_q)| = prod_{i=0}^{k-1} (q^k - q^i)`.
pub fn gamma_q(k: usize) -> QPolynomial {
    (0..k).map(|i| &QPolynomial::q_pow(k) - &QPolynomial::q_pow(i)).product()
}

/// `prod_{i>=1} [mu_i choose mu_{i+1}]_q`.
fn binomial_chain(mu: &Partition) -> QPolynomial {
    (1..=mu.len()).map(|i| q_binomial(mu.part(i), mu.part(i + 1))).product()
}

fn tail_sum(mu: &Partition, f: impl Fn(usize) -> usize) -> usize {
    mu.parts().iter().skip(1).map(|&m| f(m)).sum()
}

/// The number of subspaces with profile `mu` under a simple operator on
/// `F_q^n`, `n = |mu|`:
///
/// `(q^n - 1) / (q^{mu_1} - 1) * q^{sum_{j>=2} (mu_j^2 - mu_j)} * prod [mu_i, mu_{i+1}]_q`.
pub fn sigma_poly(mu: &Partition) -> Result<QPolynomial> {
    if mu.is_empty() {
        return Err(Error::InvalidPartition("sigma needs a nonempty partition".into()));
    }
    let numerator =
        (&QPolynomial::q_pow_minus_one(mu.weight()) * &binomial_chain(mu)).shift(tail_sum(mu, |m| m * m - m));
    numerator.div_exact(&QPolynomial::q_pow_minus_one(mu.first()))
}

fn check_prime_power(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

fn to_count(v: BigInt) -> BigUint {
    v.to_biguint().expect("counts are nonnegative")
}

/// [`sigma_poly`] evaluated at a prime power `q`.
pub fn sigma_value(mu: &Partition, q: u64) -> Result<BigUint> {
    check_prime_power(q)?;
    Ok(to_count(sigma_poly(mu)?.eval_u64(q)))
}

/// Number of simple maps `W -> F_q^n` with defect dimensions `mu`, for a fixed
/// `k`-dimensional `W`, as a polynomial: `q^{sum_{j>=2} mu_j^2} gamma_q(k)
/// prod [mu_i, mu_{i+1}]_q` with `n = |mu|`, `k = n - mu_1`.
pub fn simple_maps_with_defect_poly(mu: &Partition) -> Result<QPolynomial> {
    if mu.is_empty() {
        return Err(Error::InvalidPartition("defect dimensions of a proper domain are nonempty".into()));
    }
    let k = mu.weight() - mu.first();
    Ok((&gamma_q(k) * &binomial_chain(mu)).shift(tail_sum(mu, |m| m * m)))
}

/// Value of [`simple_maps_with_defect_poly`] at `q`, checking that `mu` is a
/// partition of `n` with first part `n - k`.
pub fn simple_maps_with_defect_count(mu: &Partition, n: usize, k: usize, q: u64) -> Result<BigUint> {
    check_prime_power(q)?;
    if k >= n || mu.weight() != n || mu.first() != n - k {
        return Err(Error::Precondition(format!("{mu} is not a partition of {n} with first part {n} - {k}")));
    }
    Ok(to_count(simple_maps_with_defect_poly(mu)?.eval_u64(q)))
}

/// Extensions of a simple map on a `k`-dimensional subspace to a simple map
/// on a fixed `(k+1)`-dimensional superspace: `q^n - q^{k+1}`, `k < n - 1`.
pub fn simple_extension_count(n: usize, k: usize, q: u64) -> Result<BigUint> {
    check_prime_power(q)?;
    if k + 1 >= n {
        return Err(Error::Precondition(format!("need k < n - 1, got n = {n}, k = {k}")));
    }
    let poly = &QPolynomial::q_pow(n) - &QPolynomial::q_pow(k + 1);
    Ok(to_count(poly.eval_u64(q)))
}

/// `prod_{j=k+1}^{n-1} (q^n - q^j)` as a polynomial; 1 when `k >= n - 1`.
pub fn charpoly_extension_poly(n: usize, k: usize) -> QPolynomial {
    (k + 1..n).map(|j| &QPolynomial::q_pow(n) - &QPolynomial::q_pow(j)).product()
}

/// Extensions of a simple map on a `k`-dimensional subspace to an operator
/// on `F_q^n` with a prescribed irreducible characteristic polynomial.
pub fn charpoly_extension_count(n: usize, k: usize, q: u64) -> Result<BigUint> {
    check_prime_power(q)?;
    if k > n {
        return Err(Error::Precondition(format!("need k <= n, got n = {n}, k = {k}")));
    }
    Ok(to_count(charpoly_extension_poly(n, k).eval_u64(q)))
}

/// `m`-dimensional `alpha`-splitting subspaces of `F_{q^{md}}`:
/// `(q^{md} - 1) / (q^m - 1) * q^{m(m-1)(d-1)}`.
pub fn splitting_count(m: usize, d: usize, q: u64) -> Result<BigUint> {
    check_prime_power(q)?;
    if m == 0 || d == 0 {
        return Err(Error::Precondition("m and d must be positive".into()));
    }
    let poly =
        QPolynomial::q_pow_minus_one(m * d).shift(m * (m - 1) * (d - 1)).div_exact(&QPolynomial::q_pow_minus_one(m))?;
    Ok(to_count(poly.eval_u64(q)))
}

/// Coefficient of the q-Whittaker function `W_mu` in the power sum `p_n`:
/// `(-1)^{n - mu_1} (q^n - 1) / (q^{mu_1} - 1) q^{sum_{j>=2} C(mu_j, 2)}
/// prod [mu_i, mu_{i+1}]_q`.
pub fn whittaker_coefficient(mu: &Partition) -> Result<SignedQPolynomial> {
    if mu.is_empty() {
        return Err(Error::InvalidPartition("p_n needs n >= 1".into()));
    }
    let n = mu.weight();
    let numerator = (&QPolynomial::q_pow_minus_one(n) * &binomial_chain(mu)).shift(tail_sum(mu, |m| m * (m - 1) / 2));
    let magnitude = numerator.div_exact(&QPolynomial::q_pow_minus_one(mu.first()))?;
    Ok(SignedQPolynomial::new((n - mu.first()) % 2 == 1, magnitude))
}

/// `sum_{mu |- n, mu_1 = m} sigma_poly(mu)`, which should equal
/// `[n choose m]_q` for `1 <= m <= n`.
pub fn sigma_column_sum(n: usize, m: usize) -> Result<QPolynomial> {
    partitions_with_first_part(n, m).iter().map(sigma_poly).sum()
}

/// Checks `gamma_q(n) = gamma_q(k) gamma_q(n-k) q^{k(n-k)} [n choose k]_q`
/// in `Z[q]`.
pub fn orbit_stabilizer_identity_check(n: usize, k: usize) -> bool {
    if k > n {
        return false;
    }
    let rhs = (&(&gamma_q(k) * &gamma_q(n - k)) * &q_binomial(n, k)).shift(k * (n - k));
    gamma_q(n) == rhs
}
