use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraSpec, Monomial};
use crate::error::{Error, Result};
use crate::numeric;
use crate::tol;

/// A unital algebra morphism between truncated quotients, represented by the
/// images of the source generators.
///
/// Each generator image must lie in the maximal ideal of the target (zero
/// constant term), and the images must annihilate every generator of the
/// source ideal — both conditions are checked on construction, so a value of
/// this type is always a well-defined morphism on the quotient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MorphismJson", into = "MorphismJson")]
pub struct AlgebraMorphism {
    source: Arc<AlgebraSpec>,
    target: Arc<AlgebraSpec>,
    generator_images: Vec<AlgebraElement>,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source: AlgebraSpec,
    target: AlgebraSpec,
    images: Vec<AlgebraElement>,
}

impl TryFrom<MorphismJson> for AlgebraMorphism {
    type Error = Error;
    fn try_from(raw: MorphismJson) -> Result<Self> {
        AlgebraMorphism::new(Arc::new(raw.source), Arc::new(raw.target), raw.images)
    }
}

impl From<AlgebraMorphism> for MorphismJson {
    fn from(k: AlgebraMorphism) -> Self {
        MorphismJson {
            source: (*k.source).clone(),
            target: (*k.target).clone(),
            images: k.generator_images,
        }
    }
}

impl AlgebraMorphism {
    /// Validates and builds a morphism from generator images.
    pub fn new(
        source: Arc<AlgebraSpec>,
        target: Arc<AlgebraSpec>,
        generator_images: Vec<AlgebraElement>,
    ) -> Result<Self> {
        if generator_images.len() != source.num_generators() {
            return Err(Error::InvalidMorphism(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                source.num_generators()
            )));
        }
        for (i, image) in generator_images.iter().enumerate() {
            if image.spec() != &target {
                return Err(Error::SpecMismatch(format!(
                    "image of generator {} lies in a different algebra",
                    i + 1
                )));
            }
            if image.augmentation() != 0.0 {
                return Err(Error::InvalidMorphism(format!(
                    "image of generator {} has constant term {}, must be 0",
                    i + 1,
                    image.augmentation()
                )));
            }
        }
        let morphism = AlgebraMorphism {
            source,
            target,
            generator_images,
        };
        morphism.check_relations()?;
        Ok(morphism)
    }

    /// The identity on `spec`.
    pub fn identity(spec: &Arc<AlgebraSpec>) -> Self {
        let images = (0..spec.num_generators())
            .map(|i| AlgebraElement::generator(spec, i).expect("index in range"))
            .collect();
        AlgebraMorphism {
            source: Arc::clone(spec),
            target: Arc::clone(spec),
            generator_images: images,
        }
    }

    /// Verifies that every ideal generator of the source maps to zero.
    ///
    /// Because the images lie in the target's maximal ideal, the top-degree
    /// generators are annihilated automatically whenever the target order
    /// does not exceed the source order; only the extra relations (and, for a
    /// higher-order target, the top monomials) need expansion.
    fn check_relations(&self) -> Result<()> {
        let need_top_degree = self.target.order() > self.source.order();
        for relation in self.source.ideal_generators() {
            if !need_top_degree && relation.degree() == self.source.order() + 1 {
                continue;
            }
            let image = self.monomial_image(&relation);
            let deviation = image.max_deviation(&AlgebraElement::zero(&self.target));
            if deviation > tol::COEFF_ABS {
                return Err(Error::InvalidMorphism(format!(
                    "relation {relation} maps to {image}, not 0 (deviation {deviation:.3e})"
                )));
            }
        }
        Ok(())
    }

    /// Internal constructor for morphisms already known to be well defined.
    fn from_parts(
        source: Arc<AlgebraSpec>,
        target: Arc<AlgebraSpec>,
        generator_images: Vec<AlgebraElement>,
    ) -> Self {
        debug_assert!(generator_images
            .iter()
            .all(|im| im.augmentation() == 0.0 && im.spec() == &target));
        AlgebraMorphism {
            source,
            target,
            generator_images,
        }
    }

    pub fn source(&self) -> &Arc<AlgebraSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraSpec> {
        &self.target
    }

    pub fn generator_images(&self) -> &[AlgebraElement] {
        &self.generator_images
    }

    /// Image of a single monomial: the product of generator images raised to
    /// the monomial's exponents.
    fn monomial_image(&self, m: &Monomial) -> AlgebraElement {
        let mut out = AlgebraElement::one(&self.target);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                out = out
                    .mul(&self.generator_images[i].pow(e))
                    .expect("same spec");
            }
        }
        out
    }

    /// Applies the morphism: substitutes generator images term by term.
    /// Unital and, on the quotient, multiplicative.
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.spec() != &self.source {
            return Err(Error::SpecMismatch(
                "element does not belong to the morphism's source algebra".into(),
            ));
        }
        let mut out = AlgebraElement::zero(&self.target);
        for (m, c) in a.terms() {
            out = out.add(&self.monomial_image(m).scale(c))?;
        }
        Ok(out)
    }

    /// Composite `second . first`.
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if first.target != second.source {
            return Err(Error::SpecMismatch(
                "composition needs the first target to equal the second source".into(),
            ));
        }
        let images = first
            .generator_images
            .iter()
            .map(|im| second.apply(im))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(
            Arc::clone(&first.source),
            Arc::clone(&second.target),
            images,
        ))
    }

    /// Tests bijectivity of an endomorphism.
    ///
    /// True iff the linear parts of the generator images form an invertible
    /// matrix and the morphism's matrix on the full monomial basis is
    /// invertible. Requires source and target to be the same spec.
    pub fn is_automorphism(&self) -> Result<bool> {
        if self.source != self.target {
            return Err(Error::SpecMismatch(
                "automorphism test needs equal source and target".into(),
            ));
        }
        let n = self.source.num_generators();
        let linear: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let row_monomial = Monomial::generator(n, i);
                (0..n)
                    .map(|j| self.generator_images[j].coefficient(&row_monomial))
                    .collect()
            })
            .collect();
        if !numeric::invertible(linear, tol::SINGULAR_PIVOT) {
            return Ok(false);
        }
        let basis = self.source.basis();
        let images: Vec<AlgebraElement> = basis.iter().map(|b| self.monomial_image(b)).collect();
        let full: Vec<Vec<f64>> = basis
            .iter()
            .map(|row| images.iter().map(|im| im.coefficient(row)).collect())
            .collect();
        Ok(numeric::invertible(full, tol::SINGULAR_PIVOT))
    }
}
