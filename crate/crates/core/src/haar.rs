//! The translation-invariant integral on a finite group.
//!
//! On a finite group every invariant integral is `h * sum_x f(x)` for some
//! point mass `h > 0`. [`uniqueness_oracle`] recovers that fact numerically by
//! computing the null space of the invariance constraints.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::transform::translate;

/// Largest order accepted by the dense uniqueness oracle.
pub const UNIQUENESS_MAX_ORDER: usize = 512;

/// Relative singular-value threshold used to decide numerical rank.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// Below this many points sums run left to right; above it they split in half.
const PAIRWISE_BLOCK: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct HaarWeight {
    spec: GroupSpec,
    point_mass: f64,
}

impl HaarWeight {
    pub fn new(spec: &GroupSpec, point_mass: f64) -> Result<Self> {
        if !(point_mass.is_finite() && point_mass > 0.0) {
            return Err(Error::InvalidWeight(point_mass));
        }
        Ok(HaarWeight {
            spec: spec.clone(),
            point_mass,
        })
    }

    /// Total mass one: `h = 1 / order`.
    pub fn normalized(spec: &GroupSpec) -> Self {
        HaarWeight {
            spec: spec.clone(),
            point_mass: 1.0 / spec.order() as f64,
        }
    }

    /// Counting measure: `h = 1`.
    pub fn counting(spec: &GroupSpec) -> Self {
        HaarWeight {
            spec: spec.clone(),
            point_mass: 1.0,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn point_mass(&self) -> f64 {
        self.point_mass
    }

    /// Same spec, point mass multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(&self.spec, self.point_mass * lambda)
    }
}

/// Deterministic pairwise sum in rank order.
pub(crate) fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= PAIRWISE_BLOCK {
        values.iter().fold(Complex64::new(0.0, 0.0), |acc, &v| acc + v)
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

pub fn integrate(w: &HaarWeight, f: &GroupFunction) -> Result<Complex64> {
    f.same_spec(&w.spec)?;
    Ok(pairwise_sum(f.values()) * w.point_mass)
}

/// `|integral of f(x + a) - integral of f|`.
pub fn check_invariance(w: &HaarWeight, f: &GroupFunction, a: &GroupElement) -> Result<f64> {
    f.same_spec(&w.spec)?;
    w.spec.check(a)?;
    // f(x + a) is f translated by -a
    let shifted = translate(f, &w.spec.negate(a)?)?;
    Ok((integrate(w, &shifted)? - integrate(w, f)?).norm())
}

/// `|integral(alpha f + beta g) - alpha integral(f) - beta integral(g)|`.
pub fn linearity_residual(
    w: &HaarWeight,
    f: &GroupFunction,
    g: &GroupFunction,
    alpha: Complex64,
    beta: Complex64,
) -> Result<f64> {
    let combo = f.combine(alpha, g, beta)?;
    let lhs = integrate(w, &combo)?;
    let rhs = alpha * integrate(w, f)? + beta * integrate(w, g)?;
    Ok((lhs - rhs).norm())
}

/// Which translations the uniqueness system imposes invariance under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translations {
    /// One unit generator per nontrivial cyclic factor.
    Generators,
    /// Every element of the group.
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    /// Dimension of the space of invariant linear functionals.
    pub dimension: usize,
    /// Unit-norm basis vector of the solution space when it is one-dimensional,
    /// sign-normalized so its entries sum to a positive number.
    pub ray: Option<Vec<f64>>,
    pub singular_values: Vec<f64>,
}

/// Constraint matrix for invariance of `L(f) = sum_x c_x f(x)`.
///
/// `L(f(. + a)) = L(f)` for every `f` iff `c_{y - a} = c_y` for every `y`, so each
/// translation `a` contributes one row per `y` with `+1` at `y - a` and `-1`
/// at `y`.
pub fn invariance_system(spec: &GroupSpec, translations: Translations) -> DMatrix<f64> {
    let n = spec.order();
    let shifts: Vec<usize> = match translations {
        Translations::Generators => (0..spec.rank_len())
            .filter(|&j| spec.cyclic_orders()[j] > 1)
            .map(|j| spec.stride(j))
            .collect(),
        Translations::All => (1..n).collect(),
    };
    let mut m = DMatrix::<f64>::zeros(shifts.len() * n, n);
    for (block, &a) in shifts.iter().enumerate() {
        for y in 0..n {
            let row = block * n + y;
            m[(row, spec.sub_ranks(y, a))] += 1.0;
            m[(row, y)] -= 1.0;
        }
    }
    m
}

pub fn uniqueness_oracle(spec: &GroupSpec) -> Result<usize> {
    Ok(uniqueness_report(spec, Translations::Generators)?.dimension)
}

pub fn uniqueness_report(spec: &GroupSpec, translations: Translations) -> Result<UniquenessReport> {
    let n = spec.order();
    if n > UNIQUENESS_MAX_ORDER {
        return Err(Error::SizeCapExceeded {
            requested: n as u128,
            cap: UNIQUENESS_MAX_ORDER,
        });
    }
    let system = invariance_system(spec, translations);
    if system.nrows() == 0 {
        // every translation is trivial: no constraints at all
        let ray = if n == 1 { Some(vec![1.0]) } else { None };
        return Ok(UniquenessReport {
            dimension: n,
            ray,
            singular_values: Vec::new(),
        });
    }
    let svd = system.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let sv = svd.singular_values.as_slice().to_vec();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > RANK_THRESHOLD * largest).count();
    let dimension = n - rank;

    let ray = if dimension == 1 {
        // the single small singular value's right vector spans the null space
        let idx = sv
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("nonempty spectrum");
        let mut v: Vec<f64> = v_t.row(idx).iter().cloned().collect();
        if v.iter().sum::<f64>() < 0.0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
        Some(v)
    } else {
        None
    };
    Ok(UniquenessReport {
        dimension,
        ray,
        singular_values: sv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(o: &[i64]) -> GroupSpec {
        GroupSpec::new(o).unwrap()
    }

    #[test]
    fn integrate_examples() {
        let g5 = spec(&[5]);
        let one = GroupFunction::constant(&g5, Complex64::new(1.0, 0.0));
        let v = integrate(&HaarWeight::normalized(&g5), &one).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let g4 = spec(&[4]);
        let d = GroupFunction::delta(&g4, &g4.zero()).unwrap();
        assert_eq!(
            integrate(&HaarWeight::normalized(&g4), &d).unwrap(),
            Complex64::new(0.25, 0.0)
        );
        let z = GroupFunction::zeros(&g4);
        assert_eq!(
            integrate(&HaarWeight::normalized(&g4), &z).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn integrate_shape_mismatch() {
        let f = GroupFunction::zeros(&spec(&[4]));
        assert!(matches!(
            integrate(&HaarWeight::normalized(&spec(&[2, 2])), &f),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn invalid_weights() {
        let g = spec(&[3]);
        assert!(HaarWeight::new(&g, 0.0).is_err());
        assert!(HaarWeight::new(&g, -1.0).is_err());
        assert!(HaarWeight::new(&g, f64::NAN).is_err());
    }

    #[test]
    fn invariance_examples() {
        let g4 = spec(&[4]);
        let w = HaarWeight::normalized(&g4);
        let f = GroupFunction::from_real(&g4, &[0.3, -1.0, 2.5, 7.0]).unwrap();
        assert_eq!(check_invariance(&w, &f, &g4.zero()).unwrap(), 0.0);
        let d = GroupFunction::delta(&g4, &g4.zero()).unwrap();
        assert_eq!(
            check_invariance(&w, &d, &g4.element(&[1]).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let v: Vec<Complex64> = (0..10_000).map(|k| Complex64::new(k as f64, 1.0)).collect();
        assert_eq!(pairwise_sum(&v), Complex64::new(49_995_000.0, 10_000.0));
    }

    #[test]
    fn uniqueness_examples() {
        assert_eq!(uniqueness_oracle(&spec(&[3])).unwrap(), 1);
        assert_eq!(uniqueness_oracle(&spec(&[])).unwrap(), 1);
        assert_eq!(uniqueness_oracle(&spec(&[2, 2])).unwrap(), 1);
        assert_eq!(uniqueness_oracle(&spec(&[1, 1])).unwrap(), 1);
        assert!(matches!(
            uniqueness_oracle(&spec(&[513])),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn uniqueness_ray_is_constant() {
        for o in [vec![5], vec![2, 3], vec![4, 1, 2]] {
            let g = spec(&o);
            let r = uniqueness_report(&g, Translations::Generators).unwrap();
            let ray = r.ray.unwrap();
            let c = 1.0 / (g.order() as f64).sqrt();
            for v in ray {
                assert!((v - c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn generator_system_matches_full_system() {
        for o in [vec![2], vec![6], vec![2, 3], vec![2, 2, 2], vec![4, 6], vec![3, 8], vec![24]] {
            let g = spec(&o);
            let a = uniqueness_report(&g, Translations::Generators).unwrap();
            let b = uniqueness_report(&g, Translations::All).unwrap();
            assert_eq!(a.dimension, b.dimension, "{o:?}");
            assert_eq!(a.dimension, 1);
        }
    }
}
