//! Closed-form smooth expressions and maps.
//!
//! Expressions are finite trees over constants, indexed variables, field
//! operations, integer powers and the elementary functions `exp`, `log`,
//! `sin`, `cos`, `sqrt`. They can be evaluated at a point, composed, and
//! Taylor-expanded to any order by evaluation over a truncated quotient
//! algebra (see [`SmoothExpr::taylor`]).

mod json;
mod lift;
mod parser;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};

pub use json::ExprNode;

/// A smooth scalar expression in variables `y1..yd` (stored zero-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExprNode", into = "ExprNode")]
pub enum SmoothExpr {
    Const(f64),
    Var(usize),
    Add(Box<SmoothExpr>, Box<SmoothExpr>),
    Sub(Box<SmoothExpr>, Box<SmoothExpr>),
    Mul(Box<SmoothExpr>, Box<SmoothExpr>),
    Div(Box<SmoothExpr>, Box<SmoothExpr>),
    Neg(Box<SmoothExpr>),
    Pow(Box<SmoothExpr>, i32),
    Exp(Box<SmoothExpr>),
    Log(Box<SmoothExpr>),
    Sin(Box<SmoothExpr>),
    Cos(Box<SmoothExpr>),
    Sqrt(Box<SmoothExpr>),
}

impl SmoothExpr {
    /// Parses the textual grammar: infix `+ - * /`, integer powers with `^`,
    /// function calls `exp(..)` etc., variables `y1..yd`.
    pub fn parse(input: &str) -> Result<Self> {
        parser::parse(input)
    }

    pub fn constant(c: f64) -> Self {
        SmoothExpr::Const(c)
    }

    /// Variable `y{index+1}` (zero-based index).
    pub fn var(index: usize) -> Self {
        SmoothExpr::Var(index)
    }

    pub fn add(self, rhs: Self) -> Self {
        SmoothExpr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        SmoothExpr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        SmoothExpr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Self) -> Self {
        SmoothExpr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn neg(self) -> Self {
        SmoothExpr::Neg(Box::new(self))
    }

    pub fn pow(self, exponent: i32) -> Self {
        SmoothExpr::Pow(Box::new(self), exponent)
    }

    pub fn exp(self) -> Self {
        SmoothExpr::Exp(Box::new(self))
    }

    pub fn log(self) -> Self {
        SmoothExpr::Log(Box::new(self))
    }

    pub fn sin(self) -> Self {
        SmoothExpr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Self {
        SmoothExpr::Cos(Box::new(self))
    }

    pub fn sqrt(self) -> Self {
        SmoothExpr::Sqrt(Box::new(self))
    }

    /// Largest variable index in the tree, if any variable occurs.
    pub fn max_var_index(&self) -> Option<usize> {
        match self {
            SmoothExpr::Const(_) => None,
            SmoothExpr::Var(i) => Some(*i),
            SmoothExpr::Add(a, b)
            | SmoothExpr::Sub(a, b)
            | SmoothExpr::Mul(a, b)
            | SmoothExpr::Div(a, b) => a.max_var_index().max(b.max_var_index()),
            SmoothExpr::Neg(a)
            | SmoothExpr::Pow(a, _)
            | SmoothExpr::Exp(a)
            | SmoothExpr::Log(a)
            | SmoothExpr::Sin(a)
            | SmoothExpr::Cos(a)
            | SmoothExpr::Sqrt(a) => a.max_var_index(),
        }
    }

    /// Standard evaluation with domain guards on division, `log` and `sqrt`.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let v = match self {
            SmoothExpr::Const(c) => *c,
            SmoothExpr::Var(i) => {
                if *i >= point.len() {
                    return Err(Error::ArityMismatch(format!(
                        "expression uses y{} but the point has {} coordinates",
                        i + 1,
                        point.len()
                    )));
                }
                point[*i]
            }
            SmoothExpr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            SmoothExpr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            SmoothExpr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            SmoothExpr::Div(a, b) => {
                let d = b.eval(point)?;
                if d == 0.0 {
                    return Err(Error::Domain("division by zero".into()));
                }
                a.eval(point)? / d
            }
            SmoothExpr::Neg(a) => -a.eval(point)?,
            SmoothExpr::Pow(a, e) => {
                let base = a.eval(point)?;
                if *e < 0 && base == 0.0 {
                    return Err(Error::Domain("zero raised to a negative power".into()));
                }
                base.powi(*e)
            }
            SmoothExpr::Exp(a) => a.eval(point)?.exp(),
            SmoothExpr::Log(a) => {
                let x = a.eval(point)?;
                if x <= 0.0 {
                    return Err(Error::Domain(format!("log of non-positive value {x}")));
                }
                x.ln()
            }
            SmoothExpr::Sin(a) => a.eval(point)?.sin(),
            SmoothExpr::Cos(a) => a.eval(point)?.cos(),
            SmoothExpr::Sqrt(a) => {
                let x = a.eval(point)?;
                if x < 0.0 {
                    return Err(Error::Domain(format!("sqrt of negative value {x}")));
                }
                x.sqrt()
            }
        };
        if !v.is_finite() {
            return Err(Error::Domain("evaluation produced a non-finite value".into()));
        }
        Ok(v)
    }

    /// Order-`k` Taylor polynomial at `point`, in the shifted variables
    /// `x_i = y_i - point_i`, as an element of the full quotient of order `k`.
    ///
    /// Implemented by evaluating the tree over that quotient at the argument
    /// `point_i + x_i`: the nilpotent generators annihilate every remainder
    /// term of degree above `k`, so no symbolic differentiation is needed.
    /// Elementary functions are lifted through their derivative series at the
    /// constant term, division through the geometric series of the inverse.
    pub fn taylor(&self, point: &[f64], order: u32) -> Result<AlgebraElement> {
        let spec = Arc::new(AlgebraSpec::full(point.len().max(1), order));
        let args: Vec<AlgebraElement> = (0..point.len())
            .map(|i| {
                AlgebraElement::constant(&spec, point[i])
                    .add(&AlgebraElement::generator(&spec, i).expect("index in range"))
                    .expect("same spec")
            })
            .collect();
        if let Some(max) = self.max_var_index() {
            if max >= point.len() {
                return Err(Error::ArityMismatch(format!(
                    "expression uses y{} but the expansion point has {} coordinates",
                    max + 1,
                    point.len()
                )));
            }
        }
        lift::eval_in_algebra(self, &spec, &args)
    }

    /// Substitutes `replacements[i]` for `y{i+1}` throughout.
    pub fn substitute(&self, replacements: &[SmoothExpr]) -> Result<SmoothExpr> {
        Ok(match self {
            SmoothExpr::Const(c) => SmoothExpr::Const(*c),
            SmoothExpr::Var(i) => replacements
                .get(*i)
                .cloned()
                .ok_or_else(|| {
                    Error::ArityMismatch(format!(
                        "substitution provides {} expressions but y{} occurs",
                        replacements.len(),
                        i + 1
                    ))
                })?,
            SmoothExpr::Add(a, b) => a.substitute(replacements)?.add(b.substitute(replacements)?),
            SmoothExpr::Sub(a, b) => a.substitute(replacements)?.sub(b.substitute(replacements)?),
            SmoothExpr::Mul(a, b) => a.substitute(replacements)?.mul(b.substitute(replacements)?),
            SmoothExpr::Div(a, b) => a.substitute(replacements)?.div(b.substitute(replacements)?),
            SmoothExpr::Neg(a) => a.substitute(replacements)?.neg(),
            SmoothExpr::Pow(a, e) => a.substitute(replacements)?.pow(*e),
            SmoothExpr::Exp(a) => a.substitute(replacements)?.exp(),
            SmoothExpr::Log(a) => a.substitute(replacements)?.log(),
            SmoothExpr::Sin(a) => a.substitute(replacements)?.sin(),
            SmoothExpr::Cos(a) => a.substitute(replacements)?.cos(),
            SmoothExpr::Sqrt(a) => a.substitute(replacements)?.sqrt(),
        })
    }

    /// Evaluates the tree over an arbitrary quotient algebra at the given
    /// arguments (one element per variable).
    pub fn eval_in_algebra(
        &self,
        spec: &Arc<AlgebraSpec>,
        args: &[AlgebraElement],
    ) -> Result<AlgebraElement> {
        lift::eval_in_algebra(self, spec, args)
    }
}

/// A smooth map given by component expressions sharing one input arity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct SmoothMap {
    arity_in: usize,
    components: Vec<SmoothExpr>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    arity: usize,
    components: Vec<SmoothExpr>,
}

impl TryFrom<MapJson> for SmoothMap {
    type Error = Error;
    fn try_from(raw: MapJson) -> Result<Self> {
        SmoothMap::new(raw.arity, raw.components)
    }
}

impl From<SmoothMap> for MapJson {
    fn from(map: SmoothMap) -> Self {
        MapJson {
            arity: map.arity_in,
            components: map.components,
        }
    }
}

impl SmoothMap {
    pub fn new(arity_in: usize, components: Vec<SmoothExpr>) -> Result<Self> {
        for (c, expr) in components.iter().enumerate() {
            if let Some(max) = expr.max_var_index() {
                if max >= arity_in {
                    return Err(Error::ArityMismatch(format!(
                        "component {} uses y{} but the map arity is {arity_in}",
                        c + 1,
                        max + 1
                    )));
                }
            }
        }
        Ok(SmoothMap {
            arity_in,
            components,
        })
    }

    /// The identity map on `dim` coordinates.
    pub fn identity(dim: usize) -> Self {
        SmoothMap {
            arity_in: dim,
            components: (0..dim).map(SmoothExpr::var).collect(),
        }
    }

    pub fn arity_in(&self) -> usize {
        self.arity_in
    }

    pub fn arity_out(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[SmoothExpr] {
        &self.components
    }

    pub fn eval(&self, point: &[f64]) -> Result<Vec<f64>> {
        if point.len() != self.arity_in {
            return Err(Error::ArityMismatch(format!(
                "map expects {} coordinates, point has {}",
                self.arity_in,
                point.len()
            )));
        }
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Symbolic composite `second . first`.
    pub fn compose(second: &SmoothMap, first: &SmoothMap) -> Result<SmoothMap> {
        if first.arity_out() != second.arity_in() {
            return Err(Error::ArityMismatch(format!(
                "cannot compose: inner map produces {} coordinates, outer expects {}",
                first.arity_out(),
                second.arity_in()
            )));
        }
        let components = second
            .components
            .iter()
            .map(|c| c.substitute(&first.components))
            .collect::<Result<Vec<_>>>()?;
        SmoothMap::new(first.arity_in, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    fn coef(el: &AlgebraElement, exps: &[u32]) -> f64 {
        el.coefficient(&Monomial::new(exps.to_vec()))
    }

    #[test]
    fn eval_square() {
        let f = SmoothExpr::var(0).pow(2);
        assert_eq!(f.eval(&[3.0]).unwrap(), 9.0);
    }

    #[test]
    fn eval_constant_ignores_point() {
        let f = SmoothExpr::constant(4.25);
        assert_eq!(f.eval(&[1.0, 2.0]).unwrap(), 4.25);
    }

    #[test]
    fn eval_exp_product() {
        // exp(y1) * y2 at (0, 5) = 5
        let f = SmoothExpr::var(0).exp().mul(SmoothExpr::var(1));
        assert_eq!(f.eval(&[0.0, 5.0]).unwrap(), 5.0);
    }

    #[test]
    fn eval_domain_errors() {
        let p = [0.0];
        assert!(matches!(
            SmoothExpr::var(0).log().eval(&p),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SmoothExpr::constant(-1.0).sqrt().eval(&p),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SmoothExpr::constant(1.0).div(SmoothExpr::var(0)).eval(&p),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SmoothExpr::var(1).eval(&p),
            Err(Error::ArityMismatch(_))
        ));
    }

    #[test]
    fn taylor_of_square_at_three() {
        // (3 + x)^2 = 9 + 6x + x^2
        let f = SmoothExpr::var(0).pow(2);
        let t = f.taylor(&[3.0], 2).unwrap();
        assert_eq!(coef(&t, &[0]), 9.0);
        assert_eq!(coef(&t, &[1]), 6.0);
        assert_eq!(coef(&t, &[2]), 1.0);
    }

    #[test]
    fn taylor_of_sine_at_zero() {
        // frozen from the derivative series of sin at 0: x - x^3/6
        let f = SmoothExpr::var(0).sin();
        let t = f.taylor(&[0.0], 3).unwrap();
        assert_eq!(coef(&t, &[0]), 0.0);
        assert_eq!(coef(&t, &[1]), 1.0);
        assert_eq!(coef(&t, &[2]), 0.0);
        assert!((coef(&t, &[3]) + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn taylor_of_constant() {
        let f = SmoothExpr::constant(7.5);
        let t = f.taylor(&[1.0, 2.0], 3).unwrap();
        assert_eq!(t.augmentation(), 7.5);
        assert_eq!(t.num_terms(), 1);
        // order 0 collapses to the evaluation
        let g = SmoothExpr::var(0).exp();
        let t0 = g.taylor(&[1.0], 0).unwrap();
        assert_eq!(t0.num_terms(), 1);
        assert_eq!(t0.augmentation(), 1.0f64.exp());
    }

    #[test]
    fn taylor_constant_term_is_eval() {
        let f = SmoothExpr::var(0)
            .sin()
            .mul(SmoothExpr::var(1).exp())
            .add(SmoothExpr::var(1).pow(3));
        let p = [0.7, -0.3];
        let t = f.taylor(&p, 3).unwrap();
        assert_eq!(t.augmentation(), f.eval(&p).unwrap());
    }

    #[test]
    fn taylor_domain_error_at_expansion_point() {
        let f = SmoothExpr::var(0).log();
        assert!(matches!(f.taylor(&[0.0], 2), Err(Error::Domain(_))));
        let g = SmoothExpr::var(0).sqrt();
        assert!(matches!(g.taylor(&[0.0], 1), Err(Error::Domain(_))));
    }

    #[test]
    fn substitution_composes_pointwise() {
        // f(y) = y^2, g(t) = t + 1: f(g) at 2 = 9
        let f = SmoothExpr::var(0).pow(2);
        let g = SmoothExpr::var(0).add(SmoothExpr::constant(1.0));
        let fg = f.substitute(&[g]).unwrap();
        assert_eq!(fg.eval(&[2.0]).unwrap(), 9.0);
    }

    #[test]
    fn map_compose_and_identity() {
        let id = SmoothMap::identity(2);
        let swap = SmoothMap::new(2, vec![SmoothExpr::var(1), SmoothExpr::var(0)]).unwrap();
        let c = SmoothMap::compose(&swap, &id).unwrap();
        assert_eq!(c.eval(&[1.0, 2.0]).unwrap(), vec![2.0, 1.0]);
        let c2 = SmoothMap::compose(&swap, &swap).unwrap();
        assert_eq!(c2.eval(&[1.0, 2.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn map_arity_checked() {
        assert!(SmoothMap::new(1, vec![SmoothExpr::var(1)]).is_err());
        let m = SmoothMap::identity(2);
        assert!(m.eval(&[1.0]).is_err());
    }
}
