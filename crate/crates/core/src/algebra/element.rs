use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Monomial};
use crate::error::{Error, Result};

/// An element of a truncated polynomial quotient, in normal form.
///
/// Normal form means: no stored coefficient is exactly zero and no stored
/// monomial lies in the quotient ideal. Term iteration is graded-lex, so
/// equality, serialization and display are canonical.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct AlgebraElement {
    spec: Arc<AlgebraSpec>,
    terms: BTreeMap<Monomial, f64>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    spec: AlgebraSpec,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Monomial,
    coef: f64,
}

impl TryFrom<ElementJson> for AlgebraElement {
    type Error = Error;
    fn try_from(raw: ElementJson) -> Result<Self> {
        AlgebraElement::from_terms(
            &Arc::new(raw.spec),
            raw.terms.into_iter().map(|t| (t.exp, t.coef)),
        )
    }
}

impl From<AlgebraElement> for ElementJson {
    fn from(el: AlgebraElement) -> Self {
        ElementJson {
            spec: (*el.spec).clone(),
            terms: el
                .terms
                .into_iter()
                .map(|(exp, coef)| TermJson { exp, coef })
                .collect(),
        }
    }
}

impl AlgebraElement {
    /// The zero element.
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        AlgebraElement {
            spec: Arc::clone(spec),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1`.
    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        Self::constant(spec, 1.0)
    }

    /// The constant `value * 1`.
    pub fn constant(spec: &Arc<AlgebraSpec>, value: f64) -> Self {
        let mut el = Self::zero(spec);
        el.insert(Monomial::one(spec.num_generators()), value);
        el
    }

    /// The class of the generator `x_{index}` (zero-based). Reduces to zero
    /// when the generator monomial itself lies in the ideal (order 0).
    pub fn generator(spec: &Arc<AlgebraSpec>, index: usize) -> Result<Self> {
        if index >= spec.num_generators() {
            return Err(Error::ArityMismatch(format!(
                "generator index {index} out of range for {} generators",
                spec.num_generators()
            )));
        }
        let mut el = Self::zero(spec);
        el.insert(Monomial::generator(spec.num_generators(), index), 1.0);
        Ok(el)
    }

    /// Builds an element from raw terms, summing duplicates and reducing to
    /// normal form. Rejects monomials of the wrong arity.
    pub fn from_terms(
        spec: &Arc<AlgebraSpec>,
        terms: impl IntoIterator<Item = (Monomial, f64)>,
    ) -> Result<Self> {
        let mut el = Self::zero(spec);
        for (m, c) in terms {
            if m.arity() != spec.num_generators() {
                return Err(Error::ArityMismatch(format!(
                    "monomial {m} has arity {}, algebra has {} generators",
                    m.arity(),
                    spec.num_generators()
                )));
            }
            el.insert(m, c);
        }
        Ok(el)
    }

    /// Adds `c * m` in place, keeping normal form.
    fn insert(&mut self, m: Monomial, c: f64) {
        use std::collections::btree_map::Entry;
        if c == 0.0 || self.spec.in_ideal(&m) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = *slot.get() + c;
                if sum == 0.0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant-term projection: the unique algebra epimorphism onto the
    /// reals. Multiplicative, additive and unital.
    pub fn augmentation(&self) -> f64 {
        self.coefficient(&Monomial::one(self.spec.num_generators()))
    }

    /// The nilpotent summand of `a = augmentation(a) * 1 + nilpotent part`.
    pub fn maximal_ideal_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Monomial::one(self.spec.num_generators()));
        out
    }

    fn ensure_same_spec(&self, other: &Self, op: &str) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!(
                "{op} of elements of different algebras"
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_spec(other, "sum")?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.insert(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, c) in self.terms() {
            out.insert(m.clone(), c * factor);
        }
        out
    }

    /// Product in the quotient: polynomial product with every monomial of
    /// degree above the order, or divisible by a relation, deleted.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_spec(other, "product")?;
        let mut out = Self::zero(&self.spec);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(&self.spec);
        for _ in 0..exponent {
            out = out.mul(self).expect("same spec");
        }
        out
    }

    /// Coefficientwise comparison over the union of stored monomials.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.spec == other.spec && self.max_deviation(other) <= tol
    }

    /// Largest absolute coefficient difference; infinite on spec mismatch.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.spec != other.spec {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for (m, c) in self.terms() {
            dev = dev.max((c - other.coefficient(m)).abs());
        }
        for (m, c) in other.terms() {
            dev = dev.max((c - self.coefficient(m)).abs());
        }
        dev
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c == 1.0 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual() -> Arc<AlgebraSpec> {
        // R[x]/m^2, the dual numbers
        Arc::new(AlgebraSpec::full(1, 1))
    }

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn dual_number_product() {
        // (2 + 3d)(4 + 5d) = 8 + 22d, d^2 = 0
        let spec = dual();
        let a = AlgebraElement::from_terms(&spec, [(m(&[0]), 2.0), (m(&[1]), 3.0)]).unwrap();
        let b = AlgebraElement::from_terms(&spec, [(m(&[0]), 4.0), (m(&[1]), 5.0)]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient(&m(&[0])), 8.0);
        assert_eq!(p.coefficient(&m(&[1])), 22.0);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn truncation_kills_square() {
        let spec = dual();
        let d = AlgebraElement::generator(&spec, 0).unwrap();
        assert!(d.mul(&d).unwrap().is_zero());
    }

    #[test]
    fn unit_law() {
        let spec = Arc::new(AlgebraSpec::full(2, 3));
        let a = AlgebraElement::from_terms(
            &spec,
            [(m(&[0, 0]), 2.0), (m(&[1, 1]), -4.0), (m(&[0, 3]), 7.0)],
        )
        .unwrap();
        assert_eq!(AlgebraElement::one(&spec).mul(&a).unwrap(), a);
    }

    #[test]
    fn augmentation_is_multiplicative() {
        // aug((2 + d)(3 + d)) = 6
        let spec = dual();
        let a = AlgebraElement::from_terms(&spec, [(m(&[0]), 2.0), (m(&[1]), 1.0)]).unwrap();
        let b = AlgebraElement::from_terms(&spec, [(m(&[0]), 3.0), (m(&[1]), 1.0)]).unwrap();
        assert_eq!(a.mul(&b).unwrap().augmentation(), 6.0);
        assert_eq!(a.augmentation(), 2.0);
        assert_eq!(AlgebraElement::one(&spec).augmentation(), 1.0);
    }

    #[test]
    fn splitting_into_constant_and_nilpotent_part() {
        let spec = Arc::new(AlgebraSpec::full(2, 2));
        let a = AlgebraElement::from_terms(
            &spec,
            [(m(&[0, 0]), 5.0), (m(&[1, 0]), 1.0), (m(&[1, 1]), 1.0)],
        )
        .unwrap();
        let nil = a.maximal_ideal_part();
        assert_eq!(nil.augmentation(), 0.0);
        assert_eq!(
            AlgebraElement::constant(&spec, a.augmentation())
                .add(&nil)
                .unwrap(),
            a
        );
        assert!(AlgebraElement::one(&spec).maximal_ideal_part().is_zero());
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let spec = dual();
        let a = AlgebraElement::from_terms(&spec, [(m(&[1]), 2.0)]).unwrap();
        let b = a.sub(&a).unwrap();
        assert!(b.is_zero());
        assert_eq!(b.num_terms(), 0);
        let c = AlgebraElement::from_terms(&spec, [(m(&[1]), 0.0)]).unwrap();
        assert_eq!(c.num_terms(), 0);
    }

    #[test]
    fn spec_mismatch_rejected() {
        let a = AlgebraElement::one(&dual());
        let b = AlgebraElement::one(&Arc::new(AlgebraSpec::full(1, 2)));
        assert!(matches!(a.add(&b), Err(Error::SpecMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn relation_monomials_reduced_away() {
        let spec = Arc::new(AlgebraSpec::new(2, 3, [m(&[1, 1])]).unwrap());
        let x = AlgebraElement::generator(&spec, 0).unwrap();
        let y = AlgebraElement::generator(&spec, 1).unwrap();
        assert!(x.mul(&y).unwrap().is_zero());
        // x^2 survives, x^2*y dies by divisibility
        let x2 = x.pow(2);
        assert_eq!(x2.num_terms(), 1);
        assert!(x2.mul(&y).unwrap().is_zero());
    }
}
