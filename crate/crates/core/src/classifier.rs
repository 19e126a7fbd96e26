//! Classification of the manifolds lying over curves `Z` in `E^n`, decided
//! by degrees and Abel-Jacobi sums of pulled-back line bundles.
//!
//! Curves are images of `E` under tuples of affine maps `x -> m x + t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::{DivisorClass, TorusParam, TorusPoint};

/// `x -> m x + t`; `m = 0` is the constant map to `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineEndo {
    pub m: i64,
    pub t: TorusPoint,
}

impl AffineEndo {
    pub fn new(m: i64, t: TorusPoint) -> Self {
        Self { m, t }
    }

    pub fn identity(param: &TorusParam) -> Self {
        Self { m: 1, t: param.zero() }
    }

    pub fn translation(x: TorusPoint) -> Self {
        Self { m: 1, t: x }
    }

    pub fn is_constant(&self) -> bool {
        self.m == 0
    }

    /// Mapping degree `m^2`.
    pub fn degree(&self) -> u64 {
        self.m.unsigned_abs().pow(2)
    }

    pub fn apply(&self, param: &TorusParam, x: TorusPoint) -> TorusPoint {
        param.add(param.mul_int(self.m, x), self.t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, param: &TorusParam) -> Self {
        Self { m: self.m * other.m, t: param.add(param.mul_int(self.m, other.t), self.t) }
    }
}

/// Pullback of a line-bundle class along `x -> m x + t`:
/// degree `m^2 deg L`, Abel-Jacobi sum `m (aj L - deg L · t)`.
pub fn pullback_class(f: &AffineEndo, l: &DivisorClass, param: &TorusParam) -> Result<DivisorClass> {
    if f.m == 0 {
        return Err(Error::ZeroMultiplier);
    }
    let shifted = param.sub(l.aj, param.mul_int(l.degree, f.t));
    Ok(DivisorClass::new(f.m * f.m * l.degree, param.mul_int(f.m, shifted)))
}

/// `[L_i ⊗ L_1^∨ for i = 2..n]`.
pub fn kodaira_reduce(classes: &[DivisorClass], param: &TorusParam) -> Result<Vec<DivisorClass>> {
    let (first, rest) = classes
        .split_first()
        .filter(|(_, rest)| !rest.is_empty())
        .ok_or_else(|| Error::InvalidArgument(format!("need at least two classes, got {}", classes.len())))?;
    let inv = first.dual(param);
    Ok(rest.iter().map(|c| c.tensor(&inv, param)).collect())
}

/// A curve in `E^n` given as the image of `x -> (f_1(x), ..., f_n(x))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveInProduct {
    components: Vec<AffineEndo>,
}

impl CurveInProduct {
    /// Requires `n >= 1`; when some component is nonconstant, at least one
    /// has `|m| = 1` so the image is an embedded copy of `E`.
    pub fn new(components: Vec<AffineEndo>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("curve needs at least one component".into()));
        }
        let nonconstant = components.iter().any(|f| !f.is_constant());
        if nonconstant && !components.iter().any(|f| f.m.abs() == 1) {
            return Err(Error::InvalidArgument("no component has |m| = 1; the image need not be smooth".into()));
        }
        Ok(Self { components })
    }

    /// `{(x, x, ..., x)}`.
    pub fn diagonal(n: usize, param: &TorusParam) -> Result<Self> {
        Self::new(vec![AffineEndo::identity(param); n])
    }

    /// `{(x + x1, -x - x2)}`, the antidiagonal translated by `(x1, -x2)`.
    pub fn antidiagonal(x1: TorusPoint, x2: TorusPoint, param: &TorusParam) -> Result<Self> {
        Self::new(vec![AffineEndo::new(1, x1), AffineEndo::new(-1, param.neg(x2))])
    }

    pub fn components(&self) -> &[AffineEndo] {
        &self.components
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    /// The same curve parametrized by `x -> x + y`.
    pub fn reparametrize(&self, y: TorusPoint, param: &TorusParam) -> Self {
        let shift = AffineEndo::translation(y);
        Self { components: self.components.iter().map(|f| f.compose(&shift, param)).collect() }
    }

    /// Components reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n()];
        for &i in perm {
            if i >= self.n() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        if perm.len() != self.n() {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        Ok(Self { components: perm.iter().map(|&i| self.components[i]).collect() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictCase {
    /// `Z` is a point: the manifold is a fiber of the projection.
    FiberSubvariety,
    /// Projection degrees differ.
    NonKahlerN1,
    /// Equal degrees, non-isomorphic pullbacks.
    Kahler,
    /// Isomorphic pullbacks.
    Algebraic,
}

impl std::fmt::Display for VerdictCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::FiberSubvariety => "FiberSubvariety",
            Self::NonKahlerN1 => "NonKahlerN1",
            Self::Kahler => "Kahler",
            Self::Algebraic => "Algebraic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub degrees: Vec<u64>,
    pub pullbacks: Vec<DivisorClass>,
    /// `Λ_i ⊗ Λ_1^∨`; all trivial exactly when the verdict is algebraic.
    pub reduced: Vec<DivisorClass>,
    /// Largest Abel-Jacobi distance between pullbacks.
    pub max_aj_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub case: VerdictCase,
    pub q_level_note: String,
    pub evidence: Option<Evidence>,
    /// Set when the verdict extends the smooth-curve rule, e.g. to mixed
    /// constant and nonconstant components.
    pub extension_note: Option<String>,
}

fn q_level_note(case: VerdictCase) -> String {
    match case {
        VerdictCase::FiberSubvariety => "a fiber of the algebraic reduction of Q".into(),
        VerdictCase::NonKahlerN1 => "in class N_1 inside Q".into(),
        VerdictCase::Kahler | VerdictCase::Algebraic => {
            "Moishezon inside Q, provided X is not contained in the exceptional divisor (not tested)".into()
        }
    }
}

fn verdict(case: VerdictCase, evidence: Option<Evidence>, extension_note: Option<String>) -> Verdict {
    Verdict { case, q_level_note: q_level_note(case), evidence, extension_note }
}

/// Verdict for the manifold over `z` built from the bundle class `l`.
pub fn classify(z: &CurveInProduct, l: &DivisorClass, param: &TorusParam) -> Result<Verdict> {
    if l.degree == 0 {
        return Err(Error::InvalidArgument("line bundle must have nonzero degree".into()));
    }
    let comps = z.components();
    let degrees: Vec<u64> = comps.iter().map(AffineEndo::degree).collect();
    if comps.iter().all(AffineEndo::is_constant) {
        return Ok(verdict(VerdictCase::FiberSubvariety, None, None));
    }
    if degrees.iter().any(|&d| d != degrees[0]) {
        let note = comps
            .iter()
            .any(AffineEndo::is_constant)
            .then(|| "constant components treated as degree zero".to_string());
        let evidence = Evidence { degrees, pullbacks: Vec::new(), reduced: Vec::new(), max_aj_distance: f64::NAN };
        return Ok(verdict(VerdictCase::NonKahlerN1, Some(evidence), note));
    }
    let pullbacks: Vec<DivisorClass> = comps.iter().map(|f| pullback_class(f, l, param)).collect::<Result<_>>()?;
    let reduced = if pullbacks.len() > 1 { kodaira_reduce(&pullbacks, param)? } else { Vec::new() };
    let tol = param.tolerance();
    let mut max_aj_distance: f64 = 0.0;
    for (i, a) in pullbacks.iter().enumerate() {
        for b in &pullbacks[..i] {
            let d = a.aj_distance(b, param).expect("equal degrees");
            if (tol..10.0 * tol).contains(&d) {
                return Err(Error::Indeterminate { separation: d, low: tol, high: 10.0 * tol });
            }
            max_aj_distance = max_aj_distance.max(d);
        }
    }
    let case = if max_aj_distance < tol { VerdictCase::Algebraic } else { VerdictCase::Kahler };
    Ok(verdict(case, Some(Evidence { degrees, pullbacks, reduced, max_aj_distance }), None))
}

/// Subvarieties of dimension at least two always give class `N_1`.
pub fn classify_high_dim(dimension: usize) -> Result<Verdict> {
    if dimension < 2 {
        return Err(Error::InvalidArgument(format!("dimension {dimension} < 2; classify curves with `classify`")));
    }
    Ok(verdict(VerdictCase::NonKahlerN1, None, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_examples() {
        let p = TorusParam::square();
        let q = p.point(0.3, 0.55);
        let l = DivisorClass::new(1, q);
        let id = AffineEndo::identity(&p);
        assert_eq!(pullback_class(&id, &l, &p).unwrap().degree, 1);
        assert!(pullback_class(&id, &l, &p).unwrap().isomorphic(&l, &p));
        let double = pullback_class(&AffineEndo::new(2, p.zero()), &l, &p).unwrap();
        assert_eq!(double.degree, 4);
        assert!(p.eq(double.aj, p.mul_int(2, q)));
        assert!(pullback_class(&AffineEndo::new(0, q), &l, &p).is_err());
    }

    #[test]
    fn reduce_examples() {
        let p = TorusParam::square();
        let l1 = DivisorClass::new(3, p.point(0.2, 0.1));
        let t = DivisorClass::new(0, p.point(0.4, 0.7));
        let out = kodaira_reduce(&[l1, l1.tensor(&t, &p)], &p).unwrap();
        assert!(out[0].isomorphic(&t, &p));
        assert!(kodaira_reduce(&[l1], &p).is_err());
    }

    #[test]
    fn basic_verdicts() {
        let p = TorusParam::square();
        let l = DivisorClass::new(3, p.point(0.21, 0.64));
        let diag = CurveInProduct::diagonal(4, &p).unwrap();
        assert_eq!(classify(&diag, &l, &p).unwrap().case, VerdictCase::Algebraic);
        let mixed = CurveInProduct::new(vec![AffineEndo::identity(&p), AffineEndo::new(2, p.zero())]).unwrap();
        assert_eq!(classify(&mixed, &l, &p).unwrap().case, VerdictCase::NonKahlerN1);
        let point = CurveInProduct::new(vec![AffineEndo::new(0, p.zero()); 2]).unwrap();
        assert_eq!(classify(&point, &l, &p).unwrap().case, VerdictCase::FiberSubvariety);
        assert!(classify(&diag, &DivisorClass::new(0, p.zero()), &p).is_err());
        assert!(CurveInProduct::new(vec![AffineEndo::new(2, p.zero()); 2]).is_err());
        assert_eq!(classify_high_dim(2).unwrap().case, VerdictCase::NonKahlerN1);
        assert!(classify_high_dim(1).is_err());
    }

    #[test]
    fn permutation_validation() {
        let p = TorusParam::square();
        let z = CurveInProduct::diagonal(3, &p).unwrap();
        assert!(z.permuted(&[2, 0, 1]).is_ok());
        assert!(z.permuted(&[0, 0, 1]).is_err());
        assert!(z.permuted(&[0, 1]).is_err());
    }
}
