//! Python bindings for `abharm`.
//!
//! Functions are passed as flat lists of complex numbers in rank order
//! (first factor varies fastest).

use abharm::haar::uniqueness_oracle;
use abharm::transform::{convolve_direct, convolve_spectral};
use abharm::{
    Boundedness, Complex64, CylinderFunction, GroupElement, GroupFunction, GroupSpec, HaarWeight, LaurentCharacter,
    Prefix, SequenceGroupSpec, SpectrumFunction,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(abharm_py, AbharmError, PyValueError);

fn err(e: abharm::Error) -> PyErr {
    AbharmError::new_err(format!("{}: {}", e.code(), e))
}

fn weight(spec: &GroupSpec, haar: &str) -> PyResult<HaarWeight> {
    match haar {
        "normalized" => Ok(HaarWeight::normalized(spec)),
        "counting" => Ok(HaarWeight::counting(spec)),
        other => Err(PyValueError::new_err(format!("unknown haar mode {other:?}"))),
    }
}

#[pyclass(frozen, module = "abharm_py")]
struct Group {
    spec: GroupSpec,
}

impl Group {
    fn elem(&self, residues: Vec<i64>) -> PyResult<GroupElement> {
        self.spec.element(&residues).map_err(err)
    }

    fn function(&self, values: Vec<Complex64>) -> PyResult<GroupFunction> {
        GroupFunction::new(&self.spec, values).map_err(err)
    }
}

fn residues(a: GroupElement) -> Vec<usize> {
    a.residues().to_vec()
}

#[pymethods]
impl Group {
    #[new]
    fn new(orders: Vec<i64>) -> PyResult<Self> {
        Ok(Group { spec: GroupSpec::new(&orders).map_err(err)? })
    }

    #[getter]
    fn orders(&self) -> Vec<usize> {
        self.spec.cyclic_orders().to_vec()
    }

    #[getter]
    fn order(&self) -> usize {
        self.spec.order()
    }

    fn __len__(&self) -> usize {
        self.spec.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.spec.cyclic_orders())
    }

    fn zero(&self) -> Vec<usize> {
        residues(self.spec.zero())
    }

    fn add(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<usize>> {
        Ok(residues(self.spec.add(&self.elem(a)?, &self.elem(b)?).map_err(err)?))
    }

    fn sub(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<usize>> {
        Ok(residues(self.spec.sub(&self.elem(a)?, &self.elem(b)?).map_err(err)?))
    }

    fn negate(&self, a: Vec<i64>) -> PyResult<Vec<usize>> {
        Ok(residues(self.spec.negate(&self.elem(a)?).map_err(err)?))
    }

    fn rank(&self, a: Vec<i64>) -> PyResult<usize> {
        self.spec.rank(&self.elem(a)?).map_err(err)
    }

    fn unrank(&self, k: usize) -> PyResult<Vec<usize>> {
        Ok(residues(self.spec.unrank(k).map_err(err)?))
    }

    fn elements(&self) -> Vec<Vec<usize>> {
        self.spec.elements().map(residues).collect()
    }

    /// Frequency tuples of all characters, in rank order.
    fn characters(&self) -> PyResult<Vec<Vec<usize>>> {
        let dual = abharm::dual_group(&self.spec, abharm::DEFAULT_SIZE_CAP).map_err(err)?;
        Ok(dual.iter().map(|c| c.frequencies().to_vec()).collect())
    }

    fn character(&self, frequencies: Vec<i64>, at: Vec<i64>) -> PyResult<Complex64> {
        let chi = abharm::Character::new(&self.spec, &frequencies).map_err(err)?;
        chi.eval(&self.elem(at)?).map_err(err)
    }
}

#[pyfunction]
#[pyo3(signature = (group, values, haar = "normalized", naive = false))]
fn fourier(group: &Group, values: Vec<Complex64>, haar: &str, naive: bool) -> PyResult<Vec<Complex64>> {
    let w = weight(&group.spec, haar)?;
    let f = group.function(values)?;
    let out = if naive { abharm::fourier_naive(&w, &f) } else { abharm::fourier(&w, &f) };
    Ok(out.map_err(err)?.into_values())
}

#[pyfunction]
#[pyo3(signature = (group, spectrum, haar = "normalized"))]
fn inverse_fourier(group: &Group, spectrum: Vec<Complex64>, haar: &str) -> PyResult<Vec<Complex64>> {
    let w = weight(&group.spec, haar)?;
    let s = SpectrumFunction::new(&group.spec, spectrum).map_err(err)?;
    Ok(abharm::inverse_fourier(&w, &s).map_err(err)?.into_values())
}

#[pyfunction]
#[pyo3(signature = (group, f, g, haar = "normalized", method = "auto"))]
fn convolve(group: &Group, f: Vec<Complex64>, g: Vec<Complex64>, haar: &str, method: &str) -> PyResult<Vec<Complex64>> {
    let w = weight(&group.spec, haar)?;
    let (f, g) = (group.function(f)?, group.function(g)?);
    let out = match method {
        "auto" => abharm::convolve(&w, &f, &g),
        "direct" => convolve_direct(&w, &f, &g),
        "spectral" => convolve_spectral(&w, &f, &g),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    Ok(out.map_err(err)?.into_values())
}

#[pyfunction]
fn translate(group: &Group, f: Vec<Complex64>, by: Vec<i64>) -> PyResult<Vec<Complex64>> {
    let a = group.elem(by)?;
    Ok(abharm::translate(&group.function(f)?, &a).map_err(err)?.into_values())
}

#[pyfunction]
#[pyo3(signature = (group, f, haar = "normalized"))]
fn integrate(group: &Group, f: Vec<Complex64>, haar: &str) -> PyResult<Complex64> {
    let w = weight(&group.spec, haar)?;
    abharm::integrate(&w, &group.function(f)?).map_err(err)
}

/// Dimension of the space of translation-invariant weights.
#[pyfunction]
fn haar_uniqueness(group: &Group) -> PyResult<usize> {
    uniqueness_oracle(&group.spec).map_err(err)
}

/// Fourier-Laplace transform of a finitely supported function on the
/// integers, returned with the boundedness class of `z^k`.
#[pyfunction]
fn laplace(support: Vec<(i64, Complex64)>, base: Complex64) -> PyResult<(Complex64, &'static str)> {
    let phi = LaurentCharacter::new(base).map_err(err)?;
    let value = abharm::fourier_laplace_integers(&support, &phi).map_err(err)?;
    let class = match phi.classify() {
        Boundedness::Bounded => "bounded",
        Boundedness::Unbounded => "unbounded",
    };
    Ok((value, class))
}

#[pyclass(frozen, module = "abharm_py")]
struct Cylinder {
    inner: CylinderFunction,
}

#[pymethods]
impl Cylinder {
    #[new]
    fn new(base: i64, depth: usize, values: Vec<Complex64>) -> PyResult<Self> {
        let spec = SequenceGroupSpec::new(base).map_err(err)?;
        Ok(Cylinder { inner: CylinderFunction::new(spec, depth, values).map_err(err)? })
    }

    #[getter]
    fn base(&self) -> usize {
        self.inner.spec().base()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn values(&self) -> Vec<Complex64> {
        self.inner.table().values().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Cylinder(base={}, depth={})", self.base(), self.depth())
    }

    fn eval(&self, digits: Vec<i64>) -> PyResult<Complex64> {
        let x = Prefix::new(self.inner.spec(), &digits).map_err(err)?;
        self.inner.eval(&x).map_err(err)
    }

    fn refine(&self, depth: usize) -> PyResult<Cylinder> {
        Ok(Cylinder { inner: self.inner.refine(depth).map_err(err)? })
    }

    fn integrate(&self) -> Complex64 {
        self.inner.integrate()
    }

    fn transform(&self) -> Vec<Complex64> {
        self.inner.transform().into_values()
    }
}

#[pymodule]
fn abharm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AbharmError", m.py().get_type::<AbharmError>())?;
    m.add_class::<Group>()?;
    m.add_class::<Cylinder>()?;
    m.add_function(wrap_pyfunction!(fourier, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(convolve, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(haar_uniqueness, m)?)?;
    m.add_function(wrap_pyfunction!(laplace, m)?)?;
    Ok(())
}
