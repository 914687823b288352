use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::monomial::{monomials_up_to_degree, Monomial};
use crate::error::{Error, Result};

/// Presentation of a truncated polynomial quotient `R[x1..xn]/I`.
///
/// `I` is generated by every monomial of total degree `order + 1` together
/// with `relations`, a minimal set of extra monomial generators of degree at
/// most `order`. Membership of a monomial in `I` is decided by total degree
/// or divisibility by a stored generator, so reduction to normal form never
/// needs Groebner machinery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct AlgebraSpec {
    num_generators: usize,
    order: u32,
    relations: BTreeSet<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    n: usize,
    k: u32,
    #[serde(default)]
    relations: Vec<Monomial>,
}

impl TryFrom<SpecJson> for AlgebraSpec {
    type Error = Error;
    fn try_from(raw: SpecJson) -> Result<Self> {
        AlgebraSpec::new(raw.n, raw.k, raw.relations)
    }
}

impl From<AlgebraSpec> for SpecJson {
    fn from(spec: AlgebraSpec) -> Self {
        SpecJson {
            n: spec.num_generators,
            k: spec.order,
            relations: spec.relations.into_iter().collect(),
        }
    }
}

impl AlgebraSpec {
    /// Builds a spec from a generating set of extra relations.
    ///
    /// Generators of degree above `order` are dropped (already in the ideal);
    /// the remainder is reduced to a minimal generating set. A degree-zero
    /// relation would collapse the algebra and is rejected.
    pub fn new(
        num_generators: usize,
        order: u32,
        relations: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::InvalidSpec(
                "an algebra needs at least one generator".into(),
            ));
        }
        let mut kept: Vec<Monomial> = Vec::new();
        for m in relations {
            if m.arity() != num_generators {
                return Err(Error::InvalidSpec(format!(
                    "relation {m} has arity {}, expected {num_generators}",
                    m.arity()
                )));
            }
            if m.is_one() {
                return Err(Error::InvalidSpec(
                    "the unit monomial cannot be a relation".into(),
                ));
            }
            if m.degree() <= order {
                kept.push(m);
            }
        }
        kept.sort();
        kept.dedup();
        let mut minimal: BTreeSet<Monomial> = BTreeSet::new();
        for m in kept {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.insert(m);
            }
        }
        Ok(AlgebraSpec {
            num_generators,
            order,
            relations: minimal,
        })
    }

    /// The full truncation quotient `R[x1..xn]/m^{k+1}`, no extra relations.
    pub fn full(num_generators: usize, order: u32) -> Self {
        Self::new(num_generators, order, [])
            .expect("full quotient spec with positive generator count")
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn relations(&self) -> impl Iterator<Item = &Monomial> {
        self.relations.iter()
    }

    /// True when the spec carries no extra relations, i.e. the algebra is the
    /// full truncation quotient that jets of maps live in.
    pub fn is_jet_type(&self) -> bool {
        self.relations.is_empty()
    }

    /// Membership of a monomial in the quotient ideal.
    pub fn in_ideal(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.arity(), self.num_generators);
        m.degree() > self.order || self.relations.iter().any(|g| g.divides(m))
    }

    /// The monomial basis of the quotient, in graded-lex order. Always
    /// contains the empty monomial.
    pub fn basis(&self) -> Vec<Monomial> {
        monomials_up_to_degree(self.num_generators, self.order)
            .into_iter()
            .filter(|m| !self.in_ideal(m))
            .collect()
    }

    /// Dimension of the quotient as a real vector space.
    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Minimal monomial generators of the quotient ideal: the stored extra
    /// relations plus every degree-`order + 1` monomial not already divisible
    /// by one of them.
    pub(crate) fn ideal_generators(&self) -> Vec<Monomial> {
        let mut gens: Vec<Monomial> = self.relations.iter().cloned().collect();
        for m in monomials_up_to_degree(self.num_generators, self.order + 1) {
            if m.degree() == self.order + 1 && !self.relations.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn dim_trivial_algebra() {
        // n=1, k=0: only the unit survives, A = R.
        assert_eq!(AlgebraSpec::full(1, 0).dim(), 1);
    }

    #[test]
    fn dim_full_quotient_two_vars() {
        // basis {1, x, y, x^2, xy, y^2}
        assert_eq!(AlgebraSpec::full(2, 2).dim(), 6);
    }

    #[test]
    fn dim_with_relation() {
        // x^2 = 0 kills x^2; basis {1, x}
        let spec = AlgebraSpec::new(1, 2, [m(&[2])]).unwrap();
        assert_eq!(spec.dim(), 2);
        assert_eq!(spec.basis(), vec![m(&[0]), m(&[1])]);
    }

    #[test]
    fn relations_minimalized_and_closed_upward() {
        // x^2 makes x^3 redundant; x*y of degree > k is dropped.
        let spec = AlgebraSpec::new(2, 2, [m(&[2, 0]), m(&[2, 1]), m(&[1, 2])]).unwrap();
        let gens: Vec<_> = spec.relations().cloned().collect();
        assert_eq!(gens, vec![m(&[2, 0]), m(&[1, 2])]);
        // every multiple of a relation of degree <= k is in the ideal
        assert!(spec.in_ideal(&m(&[2, 0])));
        assert!(!spec.in_ideal(&m(&[1, 1])));
    }

    #[test]
    fn rejects_unit_relation_and_zero_arity() {
        assert!(AlgebraSpec::new(2, 2, [m(&[0, 0])]).is_err());
        assert!(AlgebraSpec::new(0, 2, []).is_err());
        assert!(AlgebraSpec::new(2, 2, [m(&[1])]).is_err());
    }

    #[test]
    fn ideal_generators_cover_top_degree() {
        let spec = AlgebraSpec::full(2, 1);
        let gens = spec.ideal_generators();
        // degree-2 monomials in two variables
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g.degree() == 2));
    }
}
