//! Python bindings: the module `pycyclodet`.

use std::sync::Arc;

use cyclodet::chars::{gauss_sum_complex, jacobi_sum};
use cyclodet::linalg::domain::Cyclotomic as CycDomain;
use cyclodet::linalg::{
    build_bq, build_carlitz, build_carlitz_complex, build_chapman, build_dq, build_dq_complex,
    build_dq_quadratic, build_sun, build_sun_legendre, det_complex, det_exact, det_field, det_fq,
    det_mod_p, ChapmanVariant, Sign,
};
use cyclodet::padic::GammaArg;
use cyclodet::search::{max_searchable, Predicate};
use cyclodet::verify::{run_suite, CheckId, SuiteConfig};
use cyclodet::{Character, CycNum, FqCtx, FqElem, ModRing, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyTypeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: cyclodet::Error) -> PyErr {
    match e {
        cyclodet::Error::NotInvertible(_) => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for cyclodet::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

/// The finite field `F_q` with its fixed modulus and generator.
#[pyclass(frozen, module = "pycyclodet")]
struct Field {
    ctx: Arc<FqCtx>,
}

#[pymethods]
impl Field {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        Ok(Field { ctx: Arc::new(FqCtx::from_q(q).py()?) })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.ctx.p()
    }

    #[getter]
    fn f(&self) -> u32 {
        self.ctx.f()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Monic modulus, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.ctx.modulus_poly().to_vec()
    }

    #[getter]
    fn generator(&self) -> Element {
        self.wrap(self.ctx.generator().clone())
    }

    /// Element from coordinates, constant term first.
    fn element(&self, coeffs: Vec<u64>) -> PyResult<Element> {
        Ok(self.wrap(self.ctx.elem(&coeffs).py()?))
    }

    fn from_int(&self, a: i64) -> Element {
        self.wrap(self.ctx.from_int(a))
    }

    fn gen_pow(&self, e: u64) -> Element {
        self.wrap(self.ctx.gen_pow(e))
    }

    fn elements(&self) -> Vec<Element> {
        self.ctx.elements().map(|x| self.wrap(x)).collect()
    }

    fn __len__(&self) -> usize {
        self.ctx.q() as usize
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.ctx.q())
    }
}

impl Field {
    fn wrap(&self, elem: FqElem) -> Element {
        Element { ctx: self.ctx.clone(), elem }
    }
}

/// An element of a [`Field`].
#[pyclass(frozen, module = "pycyclodet")]
struct Element {
    ctx: Arc<FqCtx>,
    elem: FqElem,
}

impl Element {
    fn with(&self, elem: FqElem) -> Element {
        Element { ctx: self.ctx.clone(), elem }
    }

    fn other(&self, x: &Bound<'_, PyAny>) -> PyResult<FqElem> {
        if let Ok(e) = x.cast::<Element>() {
            let e = e.get();
            if e.ctx.q() != self.ctx.q() {
                return Err(PyValueError::new_err("elements of different fields"));
            }
            return Ok(e.elem.clone());
        }
        let a: i64 = x.extract().map_err(|_| PyTypeError::new_err("expected Element or int"))?;
        Ok(self.ctx.from_int(a))
    }
}

#[pymethods]
impl Element {
    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.elem.coeffs().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    fn is_square(&self) -> bool {
        self.ctx.is_square(&self.elem)
    }

    /// Discrete log to the field generator; `None` at zero.
    fn log(&self) -> Option<u64> {
        self.ctx.log(&self.elem)
    }

    /// Absolute trace to `F_p`.
    fn trace(&self) -> u64 {
        self.ctx.trace(&self.elem)
    }

    fn inverse(&self) -> PyResult<Element> {
        Ok(self.with(self.ctx.inv(&self.elem).py()?))
    }

    fn __add__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.with(self.ctx.add(&self.elem, &self.other(x)?)))
    }

    fn __radd__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        self.__add__(x)
    }

    fn __sub__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.with(self.ctx.sub(&self.elem, &self.other(x)?)))
    }

    fn __rsub__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.with(self.ctx.sub(&self.other(x)?, &self.elem)))
    }

    fn __mul__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.with(self.ctx.mul(&self.elem, &self.other(x)?)))
    }

    fn __rmul__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        self.__mul__(x)
    }

    fn __truediv__(&self, x: &Bound<'_, PyAny>) -> PyResult<Element> {
        Ok(self.with(self.ctx.div(&self.elem, &self.other(x)?).py()?))
    }

    fn __neg__(&self) -> Element {
        self.with(self.ctx.neg(&self.elem))
    }

    fn __pow__(&self, e: i64, _modulo: Option<u64>) -> PyResult<Element> {
        let base = if e < 0 { self.ctx.inv(&self.elem).py()? } else { self.elem.clone() };
        Ok(self.with(self.ctx.pow(&base, e.unsigned_abs())))
    }

    fn __eq__(&self, x: &Bound<'_, PyAny>) -> bool {
        self.other(x).is_ok_and(|o| o == self.elem)
    }

    fn __hash__(&self) -> u64 {
        self.ctx.index(&self.elem)
    }

    fn __repr__(&self) -> String {
        format!("Element({}, {})", self.ctx.q(), self.elem)
    }

    fn __str__(&self) -> String {
        self.elem.to_string()
    }
}

/// An element of `Q(ζ_m)`.
#[pyclass(frozen, name = "Cyclotomic", module = "pycyclodet")]
struct PyCyc {
    value: CycNum,
}

impl PyCyc {
    fn other(&self, x: &Bound<'_, PyAny>) -> PyResult<CycNum> {
        if let Ok(c) = x.cast::<PyCyc>() {
            return Ok(c.get().value.clone());
        }
        if let Ok(a) = x.extract::<i64>() {
            return Ok(CycNum::from_int(self.value.m(), a));
        }
        let r: Rational = x.extract().map_err(|_| PyTypeError::new_err("expected Cyclotomic, int or Fraction"))?;
        Ok(CycNum::from_rational(self.value.m(), &r))
    }
}

#[pymethods]
impl PyCyc {
    /// `ζ_m^e`.
    #[staticmethod]
    fn zeta(m: u64, e: u64) -> Self {
        PyCyc { value: CycNum::zeta_pow(m, e) }
    }

    /// From rational coordinates in the power basis.
    #[new]
    fn new(m: u64, coeffs: Vec<Rational>) -> PyResult<Self> {
        Ok(PyCyc { value: CycNum::from_coeffs(m, &coeffs).py()? })
    }

    #[getter]
    fn conductor(&self) -> u64 {
        self.value.m()
    }

    /// Power-basis coordinates as fractions.
    #[getter]
    fn coeffs(&self) -> Vec<Rational> {
        self.value.coeffs()
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.value.as_integer()
    }

    fn as_rational(&self) -> Option<Rational> {
        self.value.as_rational()
    }

    fn __complex__(&self) -> Complex64 {
        self.value.embed_complex()
    }

    fn conj(&self) -> Self {
        PyCyc { value: self.value.conj() }
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(PyCyc { value: self.value.inv().py()? })
    }

    fn __add__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCyc { value: self.value.try_add(&self.other(x)?).py()? })
    }

    fn __radd__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(x)
    }

    fn __sub__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCyc { value: self.value.try_sub(&self.other(x)?).py()? })
    }

    fn __rsub__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCyc { value: self.other(x)?.try_sub(&self.value).py()? })
    }

    fn __mul__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCyc { value: self.value.try_mul(&self.other(x)?).py()? })
    }

    fn __rmul__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(x)
    }

    fn __truediv__(&self, x: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCyc { value: self.value.try_div(&self.other(x)?).py()? })
    }

    fn __pow__(&self, e: u64, _modulo: Option<u64>) -> Self {
        PyCyc { value: self.value.pow(e) }
    }

    fn __eq__(&self, x: &Bound<'_, PyAny>) -> bool {
        self.other(x).is_ok_and(|o| o == self.value)
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic({}, {})", self.value.m(), self.value)
    }
}

fn field_of(q: &Bound<'_, PyAny>) -> PyResult<Arc<FqCtx>> {
    if let Ok(f) = q.cast::<Field>() {
        return Ok(f.get().ctx.clone());
    }
    Ok(Arc::new(FqCtx::from_q(q.extract()?).py()?))
}

fn parse_sign(sign: &str) -> PyResult<Sign> {
    match sign {
        "-" | "minus" => Ok(Sign::Minus),
        "+" | "plus" => Ok(Sign::Plus),
        _ => Err(PyValueError::new_err(format!("sign must be '+' or '-', got {sign:?}"))),
    }
}

fn character(field: &FqCtx, k: Option<i64>) -> Character<'_> {
    match k {
        Some(k) => Character::new(field, k),
        None => Character::quadratic(field),
    }
}

/// `det B_q(m)` in `F_q`.
#[pyfunction]
fn det_bq(q: &Bound<'_, PyAny>, m: u64) -> PyResult<Element> {
    let ctx = field_of(q)?;
    let d = det_fq(&ctx, &build_bq(&ctx, m).py()?).py()?;
    Ok(Element { ctx, elem: d })
}

fn cyclotomic_or_complex(
    py: Python<'_>,
    ctx: &FqCtx,
    engine: &str,
    exact: impl FnOnce() -> cyclodet::Result<cyclodet::Matrix<CycNum>>,
    complex: impl FnOnce() -> cyclodet::Result<cyclodet::Matrix<Complex64>>,
) -> PyResult<Py<PyAny>> {
    match engine {
        "exact" => {
            let d = det_field(&CycDomain { m: ctx.order() }, &exact().py()?).py()?;
            Ok(Py::new(py, PyCyc { value: d })?.into_any())
        }
        "complex" => Ok(det_complex(&complex().py()?).py()?.value.into_pyobject(py)?.into_any().unbind()),
        _ => Err(PyValueError::new_err(format!("engine must be 'exact' or 'complex', got {engine:?}"))),
    }
}

/// `det D_q^∓` for `ψ = χ^k` (quadratic when `k` is None).
///
/// The quadratic exact case returns an int, other exact cases a
/// `Cyclotomic`, and the complex engine a complex.
#[pyfunction]
#[pyo3(signature = (q, sign = "-", k = None, engine = "exact"))]
fn det_dq(py: Python<'_>, q: &Bound<'_, PyAny>, sign: &str, k: Option<i64>, engine: &str) -> PyResult<Py<PyAny>> {
    let ctx = field_of(q)?;
    let sign = parse_sign(sign)?;
    if k.is_none() && engine == "exact" {
        return Ok(det_exact(&build_dq_quadratic(&ctx, sign)).py()?.into_pyobject(py)?.into_any().unbind());
    }
    let psi = character(&ctx, k);
    cyclotomic_or_complex(py, &ctx, engine, || build_dq(&ctx, &psi, sign), || build_dq_complex(&ctx, &psi, sign))
}

/// The Carlitz determinant for `ψ = χ^k` (quadratic when `k` is None).
#[pyfunction]
#[pyo3(signature = (q, sign = "-", k = None, engine = "complex"))]
fn det_carlitz(py: Python<'_>, q: &Bound<'_, PyAny>, sign: &str, k: Option<i64>, engine: &str) -> PyResult<Py<PyAny>> {
    let ctx = field_of(q)?;
    let sign = parse_sign(sign)?;
    let psi = character(&ctx, k);
    cyclotomic_or_complex(
        py,
        &ctx,
        engine,
        || build_carlitz(&ctx, &psi, sign),
        || build_carlitz_complex(&ctx, &psi, sign),
    )
}

/// The Chapman determinant, variant 0 or 1.
#[pyfunction]
fn det_chapman(p: u64, variant: u8) -> PyResult<BigInt> {
    let variant = match variant {
        0 => ChapmanVariant::Zero,
        1 => ChapmanVariant::One,
        _ => return Err(PyValueError::new_err("variant must be 0 or 1")),
    };
    det_exact(&build_chapman(p, variant).py()?).py()
}

/// The Sun determinant: with `m`, the power matrix modulo `p`; without,
/// the Legendre-symbol matrix over the integers.
#[pyfunction]
#[pyo3(signature = (p, m = None))]
fn det_sun(p: u64, m: Option<u64>) -> PyResult<BigInt> {
    match m {
        Some(m) => Ok(det_mod_p(&build_sun(p, m).py()?, p).py()?.into()),
        None => det_exact(&build_sun_legendre(p).py()?).py(),
    }
}

/// The Jacobi sum `J(χ^a, χ^b)` over `F_q`.
#[pyfunction]
fn jacobi(q: &Bound<'_, PyAny>, a: i64, b: i64) -> PyResult<PyCyc> {
    let ctx = field_of(q)?;
    let value = jacobi_sum(&Character::new(&ctx, a), &Character::new(&ctx, b)).py()?;
    Ok(PyCyc { value })
}

/// The Gauss sum of `χ^k` over `F_q` as a complex number.
#[pyfunction]
fn gauss(q: &Bound<'_, PyAny>, k: i64) -> PyResult<Complex64> {
    let ctx = field_of(q)?;
    Ok(gauss_sum_complex(&Character::new(&ctx, k)))
}

/// `(P_i mod m, Q_i mod m)`.
#[pyfunction]
fn pell(index: u64, modulus: u64) -> PyResult<(u64, u64)> {
    let pair = cyclodet::pell::pell_pair_mod(index, &ModRing::new(modulus).py()?);
    Ok((pair.p, pair.q))
}

/// `Γ_p(x) mod p^precision`; `x` is an int, a `Fraction` or a string "a/b".
#[pyfunction]
#[pyo3(signature = (x, p, precision = 1))]
fn gamma_p(x: &Bound<'_, PyAny>, p: u64, precision: u32) -> PyResult<u64> {
    let arg = if let Ok(n) = x.extract::<u64>() {
        GammaArg::Int(n)
    } else if let Ok(s) = x.extract::<String>() {
        let (a, b) = s.split_once('/').ok_or_else(|| PyValueError::new_err("expected \"a/b\""))?;
        let num = a.trim().parse().map_err(|_| PyValueError::new_err("bad numerator"))?;
        let den = b.trim().parse().map_err(|_| PyValueError::new_err("bad denominator"))?;
        GammaArg::Ratio { num, den }
    } else {
        GammaArg::Ratio {
            num: x.getattr("numerator")?.extract()?,
            den: x.getattr("denominator")?.extract()?,
        }
    };
    Ok(cyclodet::padic::gamma_p(arg, p, precision).py()?.value)
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Run verification checks; returns one dict per report.
#[pyfunction]
#[pyo3(signature = (checks = None, q_max = None, complex_q_max = None, p_max = None, jobs = 0))]
fn verify(
    py: Python<'_>,
    checks: Option<Vec<String>>,
    q_max: Option<u64>,
    complex_q_max: Option<u64>,
    p_max: Option<u64>,
    jobs: usize,
) -> PyResult<Vec<Py<PyAny>>> {
    let ids: Vec<CheckId> = match checks {
        None => CheckId::ALL.to_vec(),
        Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_, _>>().py()?,
    };
    let mut cfg = SuiteConfig::default();
    cfg.q_max = q_max.unwrap_or(cfg.q_max);
    cfg.complex_q_max = complex_q_max.unwrap_or(cfg.complex_q_max);
    cfg.p_max = p_max.unwrap_or(cfg.p_max);
    let reports = py.detach(|| run_suite(&ids, &cfg, jobs)).py()?;
    reports.iter().map(|r| json_to_py(py, &r.to_json_line())).collect()
}

/// Every check id accepted by [`verify`].
#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    CheckId::ALL.iter().map(|c| c.as_str()).collect()
}

/// Scan primes in `[min, max]` for "qp2" or "pp2".
#[pyfunction]
#[pyo3(signature = (predicate, min = 7, max = 1_000_000, jobs = 0))]
fn search(py: Python<'_>, predicate: &str, min: u64, max: u64, jobs: usize) -> PyResult<Py<PyAny>> {
    let pred: Predicate = predicate.parse().py()?;
    if max > max_searchable() {
        return Err(PyValueError::new_err(format!("max exceeds {}", max_searchable())));
    }
    let r = py.detach(|| cyclodet::search::search(pred, min, max, jobs)).py()?;
    let text = serde_json::to_string(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &text)
}

#[pymodule]
fn pycyclodet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Element>()?;
    m.add_class::<PyCyc>()?;
    m.add_function(wrap_pyfunction!(det_bq, m)?)?;
    m.add_function(wrap_pyfunction!(det_dq, m)?)?;
    m.add_function(wrap_pyfunction!(det_carlitz, m)?)?;
    m.add_function(wrap_pyfunction!(det_chapman, m)?)?;
    m.add_function(wrap_pyfunction!(det_sun, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(gauss, m)?)?;
    m.add_function(wrap_pyfunction!(pell, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_p, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
