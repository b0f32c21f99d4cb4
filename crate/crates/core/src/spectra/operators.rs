//! Exact Hecke operators on chamber space (Iwahori) and on type-0 vertex
//! space (spherical).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::complex::ChamberSystem;
use crate::error::{Error, Result};
use crate::hecke_counts::{eta1_value, CountConvention};
use crate::matrix::ExactMatrix;
use crate::weyl::{coweight_scale, hecke_generator, translation_element, CoxeterDatum, TranslationVector};

/// Panel-adjacency operators `T_{s_0}, …, T_{s_d}`.
pub fn assemble_generators(cs: &ChamberSystem) -> Vec<ExactMatrix> {
    let n = cs.chamber_count();
    cs.adjacency()
        .iter()
        .map(|adj| {
            let mut m = ExactMatrix::zeros(n, n);
            for (c, list) in adj.iter().enumerate() {
                for &x in list {
                    m.add_to(c, x, &BigInt::one());
                }
            }
            m
        })
        .collect()
}

/// `T_{s_{i_1}} ⋯ T_{s_{i_l}}` for a word in the generators.
pub fn word_operator(generators: &[ExactMatrix], word: &[usize]) -> Result<ExactMatrix> {
    let n = generators.first().map_or(0, ExactMatrix::rows);
    let mut out = ExactMatrix::identity(n);
    for &i in word {
        let g = generators.get(i).ok_or(Error::DimensionMismatch { expected: generators.len(), found: i + 1 })?;
        out = out.mul(g)?;
    }
    Ok(out)
}

/// `T_{t_k}` along a reduced word of the translation by `k`. Every prefix
/// of a reduced word is length-increasing, so the Hecke product reduces to
/// the plain matrix product.
pub fn translation_operator(generators: &[ExactMatrix], k: &TranslationVector) -> Result<ExactMatrix> {
    if !k.in_closed_cone() {
        return Err(Error::OutsideCone(k.coords().to_vec()));
    }
    if generators.len() != k.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: k.dim() + 1, found: generators.len() });
    }
    let word = translation_element(k)?.reduced_word();
    word_operator(generators, &word)
}

/// Typed vertex adjacency with multiplicity. Returns the vertex labels of
/// every type (`labels[t][chamber]`), the global offset of each type, and
/// operators `A_1, …, A_d` on all vertices, where `A_j` moves from a vertex
/// of type `t` to its neighbours of type `t + j`.
pub struct VertexOperators {
    pub labels: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
    pub total: usize,
    pub operators: Vec<ExactMatrix>,
}

pub fn vertex_operators(cs: &ChamberSystem) -> VertexOperators {
    let d = cs.d();
    let types = d + 1;
    let labels: Vec<Vec<usize>> = (0..types).map(|t| cs.vertex_labels(t)).collect();
    let mut offsets = Vec::with_capacity(types);
    let mut total = 0;
    for l in &labels {
        offsets.push(total);
        total += l.iter().max().map_or(0, |m| m + 1);
    }
    let mut operators = Vec::with_capacity(d);
    for j in 1..=d {
        let mut a = ExactMatrix::zeros(total, total);
        for t in 0..types {
            let u = (t + j) % types;
            // each residue of the panel types other than t and u inside the
            // star of a type-t vertex is the star of one edge {v, w}
            let kinds: Vec<usize> = (0..types).filter(|&k| k != t && k != u).collect();
            let edge = cs.residues(&kinds);
            let mut seen = alloc::collections::BTreeSet::new();
            for c in 0..cs.chamber_count() {
                if seen.insert(edge[c]) {
                    a.add_to(offsets[t] + labels[t][c], offsets[u] + labels[u][c], &BigInt::one());
                }
            }
        }
        operators.push(a);
    }
    VertexOperators { labels, offsets, total, operators }
}

/// Spherical operator for `k`: `∏_j A_j^{r_j k_j}` restricted to type-0 vertices.
pub fn spherical_operator(vo: &VertexOperators, k: &TranslationVector) -> Result<ExactMatrix> {
    if !k.in_closed_cone() {
        return Err(Error::OutsideCone(k.coords().to_vec()));
    }
    if vo.operators.len() != k.dim() {
        return Err(Error::DimensionMismatch { expected: vo.operators.len(), found: k.dim() });
    }
    let r = coweight_scale(k.dim());
    let mut m = ExactMatrix::identity(vo.total);
    for (a, &kj) in vo.operators.iter().zip(k.coords()) {
        m = m.mul(&a.pow((r * kj) as u64)?)?;
    }
    let zero: Vec<usize> = (0..vo.offsets.get(1).copied().unwrap_or(vo.total)).collect();
    Ok(m.submatrix(&zero, &zero))
}

/// Commuting operators indexed by translation vectors. The first `d`
/// members are the generators `λ(a_1), …, λ(a_d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeckeFamily {
    pub datum: CoxeterDatum,
    pub convention: CountConvention,
    pub members: Vec<(TranslationVector, ExactMatrix)>,
}

impl HeckeFamily {
    /// Builds the generator operators plus one operator per `extra` vector,
    /// then checks commutation and constant row sums exactly.
    pub fn build(cs: &ChamberSystem, convention: CountConvention, extra: &[TranslationVector]) -> Result<Self> {
        let datum = CoxeterDatum::new(cs.d(), cs.q())?;
        let mut keys: Vec<TranslationVector> = (0..cs.d()).map(|j| hecke_generator(cs.d(), j)).collect();
        keys.extend(extra.iter().cloned());
        let members = match convention {
            CountConvention::Iwahori => {
                let gens = assemble_generators(cs);
                keys.into_iter()
                    .map(|k| translation_operator(&gens, &k).map(|m| (k, m)))
                    .collect::<Result<Vec<_>>>()?
            }
            CountConvention::Spherical => {
                let vo = vertex_operators(cs);
                keys.into_iter()
                    .map(|k| spherical_operator(&vo, &k).map(|m| (k, m)))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let fam = Self { datum, convention, members };
        fam.check_commutation()?;
        fam.check_row_sums()?;
        Ok(fam)
    }

    /// A family given directly by its matrices (the generators first).
    pub fn from_matrices(
        datum: CoxeterDatum,
        convention: CountConvention,
        members: Vec<(TranslationVector, ExactMatrix)>,
    ) -> Result<Self> {
        let fam = Self { datum, convention, members };
        fam.check_commutation()?;
        Ok(fam)
    }

    pub fn size(&self) -> usize {
        self.members.first().map_or(0, |m| m.1.rows())
    }

    pub fn generators(&self) -> &[(TranslationVector, ExactMatrix)] {
        &self.members[..self.datum.d().min(self.members.len())]
    }

    pub fn check_commutation(&self) -> Result<()> {
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                let c = self.members[i].1.commutator(&self.members[j].1)?;
                if !c.is_zero() {
                    return Err(Error::Commutation(i, j, alloc::format!("{}", c.max_abs_entry().abs())));
                }
            }
        }
        Ok(())
    }

    /// Every member has constant row sums equal to `η_1` of its vector.
    pub fn check_row_sums(&self) -> Result<()> {
        for (k, m) in &self.members {
            let expected = eta1_value(k, &self.datum, self.convention)?;
            match m.constant_row_sum() {
                Some(s) if num_rational::BigRational::from_integer(s.clone()) == expected => {}
                _ => {
                    return Err(Error::Numerical(alloc::format!(
                        "row sums of the operator at {:?} differ from {expected}",
                        k.coords()
                    )))
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{chamber_system_of_graph, named};

    fn k33() -> ChamberSystem {
        chamber_system_of_graph(&named::complete_bipartite(3)).unwrap()
    }

    #[test]
    fn generators_have_row_sum_q_and_quadratic_relation() {
        let cs = k33();
        let q = BigInt::from(2);
        for t in assemble_generators(&cs) {
            assert_eq!(t.rows(), 9);
            assert_eq!(t.constant_row_sum(), Some(q.clone()));
            let rel = t.shift(&-q.clone()).mul(&t.shift(&BigInt::one())).unwrap();
            assert!(rel.is_zero());
        }
    }

    #[test]
    fn degenerate_complex_gives_zero_generators() {
        let cs = ChamberSystem::degenerate(1, 2);
        assert!(assemble_generators(&cs).iter().all(ExactMatrix::is_zero));
    }

    #[test]
    fn translation_operators() {
        let cs = k33();
        let gens = assemble_generators(&cs);
        let id = translation_operator(&gens, &TranslationVector::zero(1)).unwrap();
        assert_eq!(id, ExactMatrix::identity(9));
        let t1 = translation_operator(&gens, &TranslationVector::new(alloc::vec![1])).unwrap();
        assert_eq!(t1.constant_row_sum(), Some(BigInt::from(4)));
        let t3 = translation_operator(&gens, &TranslationVector::new(alloc::vec![3])).unwrap();
        assert_eq!(t1.pow(3).unwrap(), t3);
        assert!(translation_operator(&gens, &TranslationVector::new(alloc::vec![-1])).is_err());
    }

    #[test]
    fn spherical_k33() {
        let cs = k33();
        let vo = vertex_operators(&cs);
        let t = spherical_operator(&vo, &TranslationVector::new(alloc::vec![1])).unwrap();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.constant_row_sum(), Some(BigInt::from(9)));
    }

    #[test]
    fn families_build() {
        let cs = k33();
        for conv in CountConvention::ALL {
            let fam = HeckeFamily::build(&cs, conv, &[TranslationVector::new(alloc::vec![2])]).unwrap();
            assert_eq!(fam.members.len(), 2);
        }
    }
}
