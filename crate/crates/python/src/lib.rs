//! Python bindings. Scalars cross the boundary as strings such as `"3"` or `"-1/2"`;
//! inputs may be anything whose `str()` parses in the algebra's field (ints, `Fraction`s).

use algeo::workbench::{self, Command, Options, Source};
use algeo::{cochain, AlgebraSpec, Cochain, FieldSpec, QuasiComplex, Scalar, TorsionAlgebra};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: algeo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalars(field: FieldSpec, values: &[Bound<'_, PyAny>]) -> PyResult<Vec<Scalar>> {
    values
        .iter()
        .map(|v| field.parse(&v.str()?.to_string()).map_err(err))
        .collect()
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(|s| s.to_string()).collect()
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(name = "Algebra", module = "algeo", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    spec: AlgebraSpec,
}

#[pymethods]
impl PyAlgebra {
    /// One of the builtin algebras, e.g. `"m2q"` or `"octonions"`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let spec = algeo::builtins::builtin(name).map_err(err)?;
        Ok(PyAlgebra { spec })
    }

    /// A builtin name or the path of an algebra file.
    #[staticmethod]
    fn load(name_or_path: &str) -> PyResult<Self> {
        let (spec, _) = workbench::load_algebra(name_or_path).map_err(err)?;
        Ok(PyAlgebra { spec })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = workbench::parse_algebra(text).map_err(err)?;
        Ok(PyAlgebra { spec })
    }

    /// A random algebra over `F_p`.
    #[staticmethod]
    fn random(p: u64, dim: usize, seed: u64) -> PyResult<Self> {
        let spec = algeo::builtins::random_algebra(p, dim, seed).map_err(err)?;
        Ok(PyAlgebra { spec })
    }

    fn to_json(&self) -> String {
        workbench::AlgebraFile::from_spec(&self.spec).to_json()
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name().to_string()
    }

    #[getter]
    fn field(&self) -> String {
        self.spec.field().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.spec.dim()
    }

    #[getter]
    fn basis_names(&self) -> Vec<String> {
        self.spec.basis_names().to_vec()
    }

    fn mul(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let (x, y) = (self.vector(&x)?, self.vector(&y)?);
        Ok(strings(&self.spec.mul(&x, &y)))
    }

    fn bracket(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let (x, y) = (self.vector(&x)?, self.vector(&y)?);
        Ok(strings(&self.spec.bracket(&x, &y)))
    }

    fn unit(&self) -> Option<Vec<String>> {
        self.spec.unit().map(|u| strings(&u))
    }

    /// The multiplication as a degree 1 cochain.
    fn mu(&self) -> PyCochain {
        PyCochain(self.spec.mu_cochain())
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({:?}, field={}, dim={})",
            self.spec.name(),
            self.spec.field(),
            self.spec.dim()
        )
    }
}

impl PyAlgebra {
    fn vector(&self, v: &[Bound<'_, PyAny>]) -> PyResult<Vec<Scalar>> {
        if v.len() != self.spec.dim() {
            return Err(PyValueError::new_err(format!(
                "expected {} coordinates, got {}",
                self.spec.dim(),
                v.len()
            )));
        }
        scalars(self.spec.field(), v)
    }
}

/// A multilinear map `V^{⊗(p+1)} → V` of degree `p`, stored densely.
#[pyclass(name = "Cochain", module = "algeo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCochain(Cochain);

#[pymethods]
impl PyCochain {
    #[staticmethod]
    fn zero(algebra: &PyAlgebra, degree: i64) -> PyResult<Self> {
        Ok(PyCochain(
            Cochain::zero(algebra.spec.module(), degree).map_err(err)?,
        ))
    }

    /// The identity map, of degree 0.
    #[staticmethod]
    fn identity(algebra: &PyAlgebra) -> Self {
        PyCochain(Cochain::identity(algebra.spec.module()))
    }

    #[staticmethod]
    fn basis(algebra: &PyAlgebra, degree: i64, index: usize) -> PyResult<Self> {
        Ok(PyCochain(
            Cochain::basis(algebra.spec.module(), degree, index).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn random(algebra: &PyAlgebra, degree: i64, seed: u64) -> PyResult<Self> {
        let mut rng = algeo::random::rng(seed);
        Ok(PyCochain(
            algeo::random::cochain(algebra.spec.module(), degree, &mut rng).map_err(err)?,
        ))
    }

    /// Coefficients in the dense layout: first argument most significant, output last.
    #[staticmethod]
    fn from_values(
        algebra: &PyAlgebra,
        degree: i64,
        values: Vec<Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let module = algebra.spec.module();
        let values = scalars(module.field, &values)?;
        Ok(PyCochain(
            Cochain::from_scalars(module, degree, values).map_err(err)?,
        ))
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.0.degree()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn values(&self) -> Vec<String> {
        strings(&self.0.to_scalars())
    }

    /// The output vector on the given basis indices.
    fn value_on_basis(&self, args: Vec<usize>) -> PyResult<Vec<String>> {
        let n = self.0.dim();
        if args.len() != self.0.arity() || args.iter().any(|&a| a >= n) {
            return Err(PyValueError::new_err(
                "basis indices do not match the arity",
            ));
        }
        Ok(strings(&self.0.value_on_basis(&args)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The pre-Lie composition `f ∘ g`.
    fn comp(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain(cochain::comp(&self.0, &other.0).map_err(err)?))
    }

    /// The Gerstenhaber bracket `[f, g]`.
    fn bracket(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain(cochain::bracket(&self.0, &other.0).map_err(err)?))
    }

    /// Total alternation over the arguments.
    fn alt(&self) -> PyResult<PyCochain> {
        Ok(PyCochain(cochain::alt_cochain(&self.0).map_err(err)?))
    }

    fn scale(&self, k: i64) -> PyCochain {
        PyCochain(self.0.scale_int(k))
    }

    fn __add__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain(self.0.add(&other.0).map_err(err)?))
    }

    fn __sub__(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain(self.0.sub(&other.0).map_err(err)?))
    }

    fn __neg__(&self) -> PyCochain {
        PyCochain(self.0.neg())
    }

    fn __repr__(&self) -> String {
        format!(
            "Cochain(degree={}, dim={}, nonzero={})",
            self.0.degree(),
            self.0.dim(),
            self.0.nonzero_count()
        )
    }
}

/// The cochains of an algebra with `d = [μ, ·]`.
#[pyclass(name = "QuasiComplex", module = "algeo", frozen, skip_from_py_object)]
struct PyQuasiComplex(QuasiComplex);

#[pymethods]
impl PyQuasiComplex {
    #[new]
    fn new(algebra: &PyAlgebra) -> Self {
        PyQuasiComplex(QuasiComplex::new(algebra.spec.clone()))
    }

    fn differential(&self, f: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain(self.0.differential(&f.0).map_err(err)?))
    }

    fn differential_power(&self, f: &PyCochain, k: usize) -> PyResult<PyCochain> {
        Ok(PyCochain(self.0.differential_power(&f.0, k).map_err(err)?))
    }

    /// The associator `α = μ ∘ μ`.
    fn curvature(&self) -> PyCochain {
        PyCochain(self.0.curvature().clone())
    }

    fn is_associative(&self) -> bool {
        self.0.is_associative()
    }

    fn is_pre_lie(&self) -> bool {
        self.0.is_pre_lie()
    }

    fn bianchi_check(&self) -> PyResult<bool> {
        self.0.bianchi_check().map_err(err)
    }

    fn square_formula_check(&self, s: &PyCochain) -> PyResult<bool> {
        self.0.square_formula_check(&s.0).map_err(err)
    }

    /// Smallest `N ≤ max_order` with `d^N = 0` on degrees `-1..=max_degree`, or `None`.
    #[pyo3(signature = (max_order = 4, max_degree = 1))]
    fn coherence_order(&self, max_order: usize, max_degree: i64) -> PyResult<Option<usize>> {
        Ok(self
            .0
            .coherence_order(max_order, max_degree)
            .map_err(err)?
            .order)
    }
}

/// The torsion algebra of `(A, μ, [,])` and its algebra of functions.
#[pyclass(name = "TorsionAlgebra", module = "algeo", frozen, skip_from_py_object)]
struct PyTorsionAlgebra(TorsionAlgebra);

#[pymethods]
impl PyTorsionAlgebra {
    #[new]
    fn new(algebra: &PyAlgebra) -> Self {
        PyTorsionAlgebra(TorsionAlgebra::new(algebra.spec.clone()))
    }

    fn torsion_tensor(&self) -> PyCochain {
        PyCochain(self.0.torsion_tensor().clone())
    }

    fn function_dimension(&self) -> PyResult<usize> {
        Ok(self.0.function_algebra().map_err(err)?.dimension())
    }

    fn is_regular(&self) -> PyResult<bool> {
        let fa = self.0.function_algebra().map_err(err)?;
        Ok(self.0.is_regular(&fa).regular)
    }
}

/// Run a workbench command and return the report as JSON.
#[pyfunction]
#[pyo3(signature = (command, algebra, *, trials = 64, seed = 0, max_arity = 4, max_order = 4, max_degree = 1))]
fn report(
    command: &str,
    algebra: &PyAlgebra,
    trials: usize,
    seed: u64,
    max_arity: usize,
    max_order: usize,
    max_degree: i64,
) -> PyResult<String> {
    let command = match command {
        "verify" => Command::Verify,
        "functions" => Command::Functions,
        "coherence" => Command::Coherence,
        "forms" => Command::Forms,
        "report" => Command::Report,
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let opts = Options {
        trials,
        seed,
        max_arity,
        max_order,
        max_degree,
        ..Options::default()
    };
    let r = workbench::run(command, &algebra.spec, Source::Builtin, &opts).map_err(err)?;
    Ok(r.to_json())
}

/// Largest number of scalars a single cochain may hold.
#[pyfunction]
fn set_budget(scalars: usize) -> PyResult<()> {
    if scalars == 0 {
        return Err(PyValueError::new_err("budget must be positive"));
    }
    cochain::set_budget(scalars);
    Ok(())
}

#[pymodule]
#[pyo3(name = "algeo")]
fn algeo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyCochain>()?;
    m.add_class::<PyQuasiComplex>()?;
    m.add_class::<PyTorsionAlgebra>()?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(set_budget, m)?)?;
    Ok(())
}
