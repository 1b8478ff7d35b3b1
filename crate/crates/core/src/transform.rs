//! Fourier transform, inversion, convolution and translation on finite groups,
//! plus the Fourier-Laplace transform of finitely supported functions on the
//! integers.
//!
//! With point mass `h` and `N` points:
//!
//! ```text
//! fhat(t)   = h * sum_x f(x) * conj(chi_t(x))
//! f(x)      = 1 / (h N) * sum_t fhat(t) * chi_t(x)
//! (f*g)(x)  = h * sum_y f(y) g(x - y)
//! ```
//!
//! so that `(f*g)^ = fhat * ghat` for every `h > 0`.

use num_complex::Complex64;

use crate::dual::{FactorRoots, LaurentCharacter, DEFAULT_EXPONENT_CAP};
use crate::error::{Error, Result};
use crate::fft::NdPlan;
use crate::function::{GroupFunction, SpectrumFunction};
use crate::group::{GroupElement, GroupSpec};
use crate::haar::HaarWeight;

/// Orders above this use the spectral convolution path by default.
pub const SPECTRAL_CONVOLUTION_THRESHOLD: usize = 256;

/// Reusable transform state for one group: per-axis plans and root tables.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    nd: NdPlan,
}

impl TransformPlan {
    pub fn new(spec: &GroupSpec) -> Self {
        TransformPlan {
            nd: NdPlan::new(spec),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        self.nd.spec()
    }

    pub fn forward(&self, w: &HaarWeight, f: &GroupFunction) -> Result<SpectrumFunction> {
        f.same_spec(self.spec())?;
        check_weight(w, self.spec())?;
        let mut data = f.values().to_vec();
        self.nd.forward_in_place(&mut data);
        let h = w.point_mass();
        data.iter_mut().for_each(|v| *v *= h);
        Ok(SpectrumFunction::from_raw(self.spec().clone(), data))
    }

    pub fn inverse(&self, w: &HaarWeight, spectrum: &SpectrumFunction) -> Result<GroupFunction> {
        spectrum.same_spec(self.spec())?;
        check_weight(w, self.spec())?;
        let mut data = spectrum.values().to_vec();
        self.nd.backward_in_place(&mut data);
        let scale = 1.0 / (w.point_mass() * self.spec().order() as f64);
        data.iter_mut().for_each(|v| *v *= scale);
        Ok(GroupFunction::from_raw(self.spec().clone(), data))
    }
}

fn check_weight(w: &HaarWeight, spec: &GroupSpec) -> Result<()> {
    if w.spec() != spec {
        return Err(Error::shape(
            format!("weight on {}", spec),
            format!("weight on {}", w.spec()),
        ));
    }
    Ok(())
}

/// Reference `O(N^2)` evaluator of the transform straight from its definition.
pub fn fourier_naive(w: &HaarWeight, f: &GroupFunction) -> Result<SpectrumFunction> {
    let spec = w.spec();
    f.same_spec(spec)?;
    let roots = FactorRoots::new(spec);
    let r = spec.rank_len();
    let n = spec.order();
    let mut residues = vec![0usize; n * r];
    for k in 0..n {
        spec.unrank_into(k, &mut residues[k * r..(k + 1) * r]);
    }
    let h = w.point_mass();
    let out = (0..n)
        .map(|t| {
            let freqs = &residues[t * r..(t + 1) * r];
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, &v) in f.values().iter().enumerate() {
                acc += v * roots.phase(freqs, &residues[x * r..(x + 1) * r]).conj();
            }
            acc * h
        })
        .collect();
    Ok(SpectrumFunction::from_raw(spec.clone(), out))
}

pub fn fourier_fast(w: &HaarWeight, f: &GroupFunction) -> Result<SpectrumFunction> {
    f.same_spec(w.spec())?;
    TransformPlan::new(w.spec()).forward(w, f)
}

/// Default forward transform.
pub fn fourier(w: &HaarWeight, f: &GroupFunction) -> Result<SpectrumFunction> {
    fourier_fast(w, f)
}

pub fn inverse_fourier(w: &HaarWeight, spectrum: &SpectrumFunction) -> Result<GroupFunction> {
    spectrum.same_spec(w.spec())?;
    TransformPlan::new(w.spec()).inverse(w, spectrum)
}

/// Direct `O(N^2)` convolution.
pub fn convolve_direct(w: &HaarWeight, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    let spec = w.spec();
    f.same_spec(spec)?;
    g.same_spec(spec)?;
    let n = spec.order();
    let h = w.point_mass();
    let orders = spec.cyclic_orders();
    let r = orders.len();
    let mut residues = vec![0usize; n * r];
    for k in 0..n {
        spec.unrank_into(k, &mut residues[k * r..(k + 1) * r]);
    }
    let out = (0..n)
        .map(|x| {
            let xd = &residues[x * r..(x + 1) * r];
            let mut acc = Complex64::new(0.0, 0.0);
            for (y, &fy) in f.values().iter().enumerate() {
                let yd = &residues[y * r..(y + 1) * r];
                let mut diff = 0;
                for j in 0..r {
                    let d = if xd[j] >= yd[j] { xd[j] - yd[j] } else { xd[j] + orders[j] - yd[j] };
                    diff += d * spec.stride(j);
                }
                acc += fy * g.at(diff);
            }
            acc * h
        })
        .collect();
    Ok(GroupFunction::from_raw(spec.clone(), out))
}

/// Convolution through the transform: `inverse(fhat * ghat)`.
pub fn convolve_spectral(w: &HaarWeight, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    let spec = w.spec();
    f.same_spec(spec)?;
    g.same_spec(spec)?;
    let plan = TransformPlan::new(spec);
    let fh = plan.forward(w, f)?;
    let gh = plan.forward(w, g)?;
    let prod = fh
        .values()
        .iter()
        .zip(gh.values())
        .map(|(a, b)| a * b)
        .collect();
    plan.inverse(w, &SpectrumFunction::from_raw(spec.clone(), prod))
}

/// Picks the direct path up to [`SPECTRAL_CONVOLUTION_THRESHOLD`] points.
pub fn convolve(w: &HaarWeight, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if w.spec().order() > SPECTRAL_CONVOLUTION_THRESHOLD {
        convolve_spectral(w, f, g)
    } else {
        convolve_direct(w, f, g)
    }
}

/// `x -> f(x - a)`. Exact: only re-indexes.
pub fn translate(f: &GroupFunction, a: &GroupElement) -> Result<GroupFunction> {
    let spec = f.spec();
    let shift = spec.rank(a)?;
    let out = (0..spec.order())
        .map(|x| f.at(spec.sub_ranks(x, shift)))
        .collect();
    Ok(GroupFunction::from_raw(spec.clone(), out))
}

/// `sum_k f(k) * conj(z^k)` for a finitely supported `f` on the integers.
///
/// Repeated indices add. Evaluated by Horner's rule in `conj(z)` over the
/// support range, then shifted by `conj(z)^kmin`.
pub fn fourier_laplace_integers(support: &[(i64, Complex64)], phi: &LaurentCharacter) -> Result<Complex64> {
    fourier_laplace_integers_with_cap(support, phi, DEFAULT_EXPONENT_CAP)
}

pub fn fourier_laplace_integers_with_cap(
    support: &[(i64, Complex64)],
    phi: &LaurentCharacter,
    cap: u64,
) -> Result<Complex64> {
    if support.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    for (i, &(k, v)) in support.iter().enumerate() {
        if k.unsigned_abs() > cap {
            return Err(Error::ExponentCapExceeded { exponent: k, cap });
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
    }
    let kmin = support.iter().map(|p| p.0).min().expect("nonempty");
    let kmax = support.iter().map(|p| p.0).max().expect("nonempty");
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (kmax - kmin) as usize + 1];
    for &(k, v) in support {
        coeffs[(k - kmin) as usize] += v;
    }
    let w = phi.base().conj();
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * w + c;
    }
    let shift = phi.eval_with_cap(kmin, cap)?.conj();
    let out = acc * shift;
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::OverflowToInfinity {
            modulus: phi.base().norm(),
            exponent: kmax,
        });
    }
    Ok(out)
}

/// Term-by-term sum `sum_k f(k) conj(z^k)`, each power from
/// [`LaurentCharacter::eval`]. Slower than the Horner form; kept as a cross-check.
pub fn fourier_laplace_termwise(support: &[(i64, Complex64)], phi: &LaurentCharacter) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(k, v) in support {
        acc += v * phi.eval(k)?.conj();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(o: &[i64]) -> GroupSpec {
        GroupSpec::new(o).unwrap()
    }

    #[test]
    fn naive_delta_gives_constant_spectrum() {
        let g = spec(&[2, 3]);
        let w = HaarWeight::normalized(&g);
        let d = GroupFunction::delta(&g, &g.zero()).unwrap();
        let s = fourier_naive(&w, &d).unwrap();
        for v in s.values() {
            assert!((v - c(1.0 / 6.0, 0.0)).norm() < 1e-16);
        }
    }

    #[test]
    fn naive_constant_gives_trivial_peak() {
        let g = spec(&[5, 2]);
        let w = HaarWeight::normalized(&g);
        let f = GroupFunction::constant(&g, c(1.0, 0.0));
        let s = fourier_naive(&w, &f).unwrap();
        assert!((s.at(0) - c(1.0, 0.0)).norm() < 1e-12);
        for v in &s.values()[1..] {
            assert!(v.norm() <= 1e-12);
        }
    }

    #[test]
    fn fast_delta_equals_naive_exactly() {
        let g = spec(&[2, 2, 2]);
        let w = HaarWeight::normalized(&g);
        let d = GroupFunction::delta(&g, &g.zero()).unwrap();
        let fast = fourier_fast(&w, &d).unwrap();
        let naive = fourier_naive(&w, &d).unwrap();
        assert_eq!(fast, naive);
        assert!(fast.values().iter().all(|&v| v == c(0.125, 0.0)));
    }

    #[test]
    fn inverse_examples() {
        let g = spec(&[4, 2]);
        let w = HaarWeight::normalized(&g);
        let flat = SpectrumFunction::new(&g, vec![c(0.125, 0.0); 8]).unwrap();
        let f = inverse_fourier(&w, &flat).unwrap();
        assert!((f.at(0) - c(1.0, 0.0)).norm() < 1e-15);
        for v in &f.values()[1..] {
            assert!(v.norm() < 1e-15);
        }
        let z = inverse_fourier(&w, &SpectrumFunction::zeros(&g)).unwrap();
        assert!(z.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn convolution_examples() {
        let g = spec(&[2, 3]);
        let w = HaarWeight::counting(&g);
        let f = GroupFunction::from_fn(&g, |k| c(k as f64 + 0.5, -(k as f64))).unwrap();
        let d = GroupFunction::delta(&g, &g.zero()).unwrap();
        let out = convolve(&w, &f, &d).unwrap();
        assert_eq!(out, f);

        let g4 = spec(&[4]);
        let w4 = HaarWeight::counting(&g4);
        let d1 = GroupFunction::delta(&g4, &g4.element(&[1]).unwrap()).unwrap();
        let d2 = GroupFunction::delta(&g4, &g4.element(&[2]).unwrap()).unwrap();
        assert_eq!(convolve_direct(&w4, &d1, &d1).unwrap(), d2);
        let spectral = convolve_spectral(&w4, &d1, &d1).unwrap();
        for (a, b) in spectral.values().iter().zip(d2.values()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn translate_examples() {
        let g4 = spec(&[4]);
        let f = GroupFunction::from_real(&g4, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(translate(&f, &g4.zero()).unwrap(), f);
        let d0 = GroupFunction::delta(&g4, &g4.zero()).unwrap();
        let a = g4.element(&[1]).unwrap();
        assert_eq!(translate(&d0, &a).unwrap(), GroupFunction::delta(&g4, &a).unwrap());
        let back = translate(&translate(&f, &a).unwrap(), &g4.negate(&a).unwrap()).unwrap();
        assert_eq!(back, f);
        // f(x - 1): value at 1 is f(0)
        assert_eq!(translate(&f, &a).unwrap().at(1), c(1.0, 0.0));
    }

    #[test]
    fn shape_errors() {
        let g = spec(&[4]);
        let h = spec(&[2, 2]);
        let f = GroupFunction::zeros(&g);
        let wh = HaarWeight::normalized(&h);
        assert!(matches!(fourier_naive(&wh, &f), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(fourier_fast(&wh, &f), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(
            inverse_fourier(&wh, &SpectrumFunction::zeros(&g)),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(convolve(&wh, &f, &f), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(translate(&f, &h.zero()), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn laplace_examples() {
        let z = LaurentCharacter::new(c(0.7, -2.0)).unwrap();
        assert_eq!(fourier_laplace_integers(&[(0, c(1.0, 0.0))], &z).unwrap(), c(1.0, 0.0));
        let two = LaurentCharacter::new(c(2.0, 0.0)).unwrap();
        assert_eq!(fourier_laplace_integers(&[(1, c(1.0, 0.0))], &two).unwrap(), c(2.0, 0.0));
        let theta: f64 = 0.9;
        let u = LaurentCharacter::new(Complex64::from_polar(1.0, theta)).unwrap();
        let f = [(0, c(1.0, 0.0)), (1, c(1.0, 0.0)), (2, c(1.0, 0.0))];
        let got = fourier_laplace_integers(&f, &u).unwrap();
        let expected = c(1.0, 0.0) + Complex64::from_polar(1.0, -theta) + Complex64::from_polar(1.0, -2.0 * theta);
        assert!((got - expected).norm() < 1e-14);
        assert!((got - fourier_laplace_termwise(&f, &u).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn laplace_negative_indices_and_duplicates() {
        let z = LaurentCharacter::new(c(0.5, 0.5)).unwrap();
        let f = [(-3, c(1.0, 2.0)), (4, c(-0.5, 0.0)), (-3, c(0.5, 0.0)), (0, c(0.0, 1.0))];
        let a = fourier_laplace_integers(&f, &z).unwrap();
        let b = fourier_laplace_termwise(&f, &z).unwrap();
        assert!((a - b).norm() <= 1e-12 * b.norm());
        assert_eq!(fourier_laplace_integers(&[], &z).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn laplace_errors() {
        let two = LaurentCharacter::new(c(2.0, 0.0)).unwrap();
        assert!(matches!(
            fourier_laplace_integers(&[(2_000_000, c(1.0, 0.0))], &two),
            Err(Error::ExponentCapExceeded { .. })
        ));
        assert!(matches!(
            fourier_laplace_integers(&[(2000, c(1.0, 0.0))], &two),
            Err(Error::OverflowToInfinity { .. })
        ));
    }
}
