//! Hecke double-coset counts: Gaussian binomials, the class-number constants
//! `c_j`, and the two count conventions for `|KaK/K|`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{coweight_scale, hecke_generator, translation_length, CoxeterDatum, TranslationVector};

/// Which compact subgroup `K` the double-coset counts refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CountConvention {
    /// `K` = stabilizer of a special vertex; counts are Gaussian binomials.
    Spherical,
    /// `K` = pointwise stabilizer of a chamber; counts are `q^ℓ`.
    Iwahori,
}

impl CountConvention {
    pub const ALL: [CountConvention; 2] = [CountConvention::Iwahori, CountConvention::Spherical];

    pub fn as_str(&self) -> &'static str {
        match self {
            CountConvention::Spherical => "SPHERICAL",
            CountConvention::Iwahori => "IWAHORI",
        }
    }
}

impl fmt::Display for CountConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spherical" => Ok(CountConvention::Spherical),
            "iwahori" => Ok(CountConvention::Iwahori),
            _ => Err(Error::InvalidParameter(alloc::format!("unknown convention `{s}`"))),
        }
    }
}

/// Number of `j`-dimensional subspaces of `𝔽_q^n`.
pub fn gaussian_binomial(n: usize, j: usize, q: u64) -> Result<BigInt> {
    if j > n {
        return Err(Error::InvalidParameter(alloc::format!("need 0 <= j <= n, got j={j}, n={n}")));
    }
    if q < 2 {
        return Err(Error::InvalidParameter("q must be >= 2".into()));
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for nu in 0..j {
        num *= Pow::pow(&q, n as u32) - Pow::pow(&q, nu as u32);
        den *= Pow::pow(&q, j as u32) - Pow::pow(&q, nu as u32);
    }
    Ok(num / den)
}

/// Largest ambient space the subspace enumerator accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 20;
const BRUTE_FORCE_WORK: u128 = 200_000_000;

/// Counts `j`-subspaces of `𝔽_q^n` for prime `q` by enumeration: every
/// ordered basis of a `j`-subspace is generated explicitly, and the total is
/// divided by the (also enumerated) number of ordered bases of `𝔽_q^j`.
pub fn brute_force_subspace_count(n: usize, j: usize, q: u64) -> Result<BigInt> {
    if j > n {
        return Err(Error::InvalidParameter(alloc::format!("need 0 <= j <= n, got j={j}, n={n}")));
    }
    if q < 2 || (2..q).any(|p| p * p <= q && q % p == 0) {
        return Err(Error::InvalidParameter("enumeration needs a prime field size".into()));
    }
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_LIMIT as u128 {
        return Err(Error::ResourceGuard(alloc::format!("q^n = {q}^{n} exceeds 2^20")));
    }
    // leaves visited by the search: the number of ordered independent j-tuples
    let work: u128 = (0..j).map(|i| size - (q as u128).pow(i as u32)).product();
    if work > BRUTE_FORCE_WORK {
        return Err(Error::ResourceGuard(alloc::format!("{work} ordered bases is beyond desk scale")));
    }
    let all = count_ordered_bases(n, j, q);
    let per_subspace = count_ordered_bases(j, j, q);
    Ok(BigInt::from(all / per_subspace))
}

/// Ordered `j`-tuples of independent vectors in `𝔽_q^n`, by depth-first search.
fn count_ordered_bases(n: usize, j: usize, q: u64) -> u128 {
    let size = q.pow(n as u32) as usize;
    let add = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut place) = (a, b, 0usize, 1usize);
        for _ in 0..n {
            out += ((a as u64 % q + b as u64 % q) % q) as usize * place;
            a /= q as usize;
            b /= q as usize;
            place *= q as usize;
        }
        out
    };
    fn go(
        depth: usize,
        j: usize,
        span: &mut Vec<usize>,
        member: &mut Vec<bool>,
        size: usize,
        q: u64,
        add: &dyn Fn(usize, usize) -> usize,
    ) -> u128 {
        if depth == j {
            return 1;
        }
        let mut total = 0u128;
        for v in 0..size {
            if member[v] {
                continue;
            }
            if depth + 1 == j {
                total += 1;
                continue;
            }
            let old = span.len();
            let mut multiple = v;
            for _ in 1..q {
                for i in 0..old {
                    let w = add(span[i], multiple);
                    member[w] = true;
                    span.push(w);
                }
                multiple = add(multiple, v);
            }
            total += go(depth + 1, j, span, member, size, q, add);
            for w in span.drain(old..) {
                member[w] = false;
            }
        }
        total
    }
    let mut member = vec![false; size];
    member[0] = true;
    let mut span = vec![0usize];
    go(0, j, &mut span, &mut member, size, q, &add)
}

/// The constant `c_j = (∏_{ν<j} (q^{d+1} − q^ν)/(q^j − q^ν))^{d+1}`, evaluated as printed.
pub fn c_constant(d: usize, q: u64, j: usize) -> Result<BigRational> {
    if j == 0 || j > d {
        return Err(Error::InvalidParameter(alloc::format!("need 1 <= j <= d, got j={j}, d={d}")));
    }
    let q = BigRational::from_integer(q.into());
    let mut base = BigRational::one();
    for nu in 0..j {
        base *= (Pow::pow(&q, (d + 1) as u32) - Pow::pow(&q, nu as u32))
            / (Pow::pow(&q, j as u32) - Pow::pow(&q, nu as u32));
    }
    Ok(Pow::pow(base, (d + 1) as u32))
}

/// `η_1(k) = |K t_k K / K|` under the chosen convention, extended
/// multiplicatively from the generators `λ(a_j)`.
pub fn eta1_value(k: &TranslationVector, datum: &CoxeterDatum, conv: CountConvention) -> Result<BigRational> {
    let d = datum.d();
    if k.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: k.dim() });
    }
    if !k.in_closed_cone() {
        return Err(Error::OutsideCone(k.coords().to_vec()));
    }
    let q = BigInt::from(datum.q());
    match conv {
        CountConvention::Iwahori => {
            Ok(BigRational::from_integer(Pow::pow(&q, translation_length(k) as u32)))
        }
        CountConvention::Spherical => {
            // (d+1)·m_j = r_j·k_j where k = Σ m_j λ(a_j)
            let r = coweight_scale(d) as u32;
            let mut out = BigInt::one();
            for (j, &kj) in k.coords().iter().enumerate() {
                let g = gaussian_binomial(d + 1, j + 1, datum.q())?;
                out *= Pow::pow(&g, r * kj as u32);
            }
            Ok(BigRational::from_integer(out))
        }
    }
}

/// A multiplicative functional on the monoid generated by the `λ(a_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiCharacter {
    pub values_on_generators: Vec<BigRational>,
    pub convention: CountConvention,
}

impl QuasiCharacter {
    /// The trivial-eigenvector character `η_1`.
    pub fn eta1(datum: &CoxeterDatum, conv: CountConvention) -> Result<Self> {
        let values = (0..datum.d())
            .map(|j| eta1_value(&hecke_generator(datum.d(), j), datum, conv))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values_on_generators: values, convention: conv })
    }

    /// Value at `k = Σ m_j λ(a_j)`; `None` if `k` is not a nonnegative
    /// integer combination of the generators.
    pub fn value(&self, k: &TranslationVector) -> Option<BigRational> {
        let d = self.values_on_generators.len();
        if k.dim() != d {
            return None;
        }
        let mut out = BigRational::one();
        for (j, &kj) in k.coords().iter().enumerate() {
            let step = hecke_generator(d, j).coords()[j];
            if kj < 0 || kj % step != 0 {
                return None;
            }
            out *= Pow::pow(&self.values_on_generators[j], (kj / step) as u32);
        }
        Some(out)
    }

    pub fn is_trivial(&self) -> bool {
        self.values_on_generators.iter().all(|v| v.is_one())
    }

    pub fn has_zero(&self) -> bool {
        self.values_on_generators.iter().any(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(big(x))
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), big(3));
        assert_eq!(gaussian_binomial(3, 1, 2).unwrap(), big(7));
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), big(1));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_subspace_count(2, 1, 3).unwrap(), big(4));
        assert_eq!(brute_force_subspace_count(3, 2, 2).unwrap(), big(7));
        assert_eq!(brute_force_subspace_count(3, 3, 3).unwrap(), big(1));
        assert_eq!(brute_force_subspace_count(3, 0, 2).unwrap(), big(1));
        assert!(brute_force_subspace_count(21, 1, 2).unwrap_err().is_resource_guard());
    }

    #[test]
    fn constants() {
        assert_eq!(c_constant(1, 2, 1).unwrap(), rat(9));
        assert_eq!(c_constant(2, 2, 1).unwrap(), rat(343));
        assert_eq!(c_constant(2, 2, 2).unwrap(), rat(343));
        assert!(c_constant(2, 2, 0).is_err());
    }

    #[test]
    fn eta1_examples() {
        let dat = CoxeterDatum::new(1, 2).unwrap();
        let a1 = hecke_generator(1, 0);
        assert_eq!(eta1_value(&a1, &dat, CountConvention::Spherical).unwrap(), rat(9));
        assert_eq!(eta1_value(&a1, &dat, CountConvention::Iwahori).unwrap(), rat(4));
        for conv in CountConvention::ALL {
            assert_eq!(eta1_value(&TranslationVector::zero(1), &dat, conv).unwrap(), rat(1));
        }
        let d2 = CoxeterDatum::new(2, 2).unwrap();
        assert_eq!(eta1_value(&hecke_generator(2, 0), &d2, CountConvention::Spherical).unwrap(), rat(343));
        assert_eq!(eta1_value(&hecke_generator(2, 1), &d2, CountConvention::Iwahori).unwrap(), rat(64));
        assert!(eta1_value(&TranslationVector::new(vec![-1, 2]), &d2, CountConvention::Iwahori).is_err());
    }

    #[test]
    fn quasi_character_matches_eta1() {
        let dat = CoxeterDatum::new(2, 3).unwrap();
        for conv in CountConvention::ALL {
            let chi = QuasiCharacter::eta1(&dat, conv).unwrap();
            let k = TranslationVector::new(vec![6, 3]);
            assert_eq!(chi.value(&k).unwrap(), eta1_value(&k, &dat, conv).unwrap());
            assert!(chi.value(&TranslationVector::new(vec![1, 1])).is_none());
        }
    }

    #[test]
    fn convention_parsing() {
        assert_eq!("iwahori".parse::<CountConvention>().unwrap(), CountConvention::Iwahori);
        assert_eq!("SPHERICAL".parse::<CountConvention>().unwrap(), CountConvention::Spherical);
        assert!("other".parse::<CountConvention>().is_err());
    }
}
