use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

fn validate(spec: &GroupSpec, values: &[Complex64]) -> Result<()> {
    if values.len() != spec.order() {
        return Err(Error::shape(
            format!("{} values for group {}", spec.order(), spec),
            format!("{} values", values.len()),
        ));
    }
    if let Some(i) = values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

macro_rules! dense_function {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            spec: GroupSpec,
            values: Vec<Complex64>,
        }

        impl $name {
            pub fn new(spec: &GroupSpec, values: Vec<Complex64>) -> Result<Self> {
                validate(spec, &values)?;
                Ok($name {
                    spec: spec.clone(),
                    values,
                })
            }

            pub fn zeros(spec: &GroupSpec) -> Self {
                $name {
                    spec: spec.clone(),
                    values: vec![Complex64::new(0.0, 0.0); spec.order()],
                }
            }

            pub fn from_fn(spec: &GroupSpec, mut f: impl FnMut(usize) -> Complex64) -> Result<Self> {
                Self::new(spec, (0..spec.order()).map(|k| f(k)).collect())
            }

            pub fn from_real(spec: &GroupSpec, values: &[f64]) -> Result<Self> {
                Self::new(spec, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            }

            pub fn spec(&self) -> &GroupSpec {
                &self.spec
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn at(&self, rank: usize) -> Complex64 {
                self.values[rank]
            }

            /// Max absolute entry.
            pub fn sup_norm(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
            }

            /// Unweighted sum of absolute values.
            pub fn l1_sum(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).sum()
            }

            pub(crate) fn from_raw(spec: GroupSpec, values: Vec<Complex64>) -> Self {
                debug_assert_eq!(values.len(), spec.order());
                $name { spec, values }
            }

            pub(crate) fn same_spec(&self, spec: &GroupSpec) -> Result<()> {
                if &self.spec != spec {
                    return Err(Error::shape(
                        format!("function on {}", spec),
                        format!("function on {}", self.spec),
                    ));
                }
                Ok(())
            }
        }
    };
}

dense_function!(
    GroupFunction,
    "A complex function on a finite group, stored densely in rank order."
);
dense_function!(
    SpectrumFunction,
    "A function on the dual group, indexed by the rank of each character's frequency tuple."
);

impl GroupFunction {
    /// Indicator of a single point.
    pub fn delta(spec: &GroupSpec, at: &GroupElement) -> Result<Self> {
        let k = spec.rank(at)?;
        let mut out = Self::zeros(spec);
        out.values[k] = Complex64::new(1.0, 0.0);
        Ok(out)
    }

    pub fn constant(spec: &GroupSpec, c: Complex64) -> Self {
        GroupFunction {
            spec: spec.clone(),
            values: vec![c; spec.order()],
        }
    }

    pub fn eval(&self, x: &GroupElement) -> Result<Complex64> {
        Ok(self.values[self.spec.rank(x)?])
    }

    /// Pointwise `|f|`.
    pub fn abs(&self) -> GroupFunction {
        GroupFunction {
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(v.norm(), 0.0))
                .collect(),
        }
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Complex64, other: &GroupFunction, beta: Complex64) -> Result<GroupFunction> {
        other.same_spec(&self.spec)?;
        Ok(GroupFunction {
            spec: self.spec.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| alpha * a + beta * b)
                .collect(),
        })
    }
}
