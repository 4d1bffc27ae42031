//! Python module `etawallis`.
//!
//! Numbers cross the boundary as decimal strings (or exact `int`/`float`
//! inputs); `Real` objects remember the context they were computed at.

use etawallis::{
    constants, products, report, series, Case, GlaisherRoute, PrecisionContext,
    Real as CoreReal,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(etawallis, EtaWallisError, PyValueError);

fn err(e: etawallis::Error) -> PyErr {
    EtaWallisError::new_err(format!("{}: {e}", e.kind()))
}

#[pyclass(name = "Context", module = "etawallis", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct Context {
    inner: PrecisionContext,
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (digits, guard_digits=None))]
    fn new(digits: u32, guard_digits: Option<u32>) -> PyResult<Self> {
        let inner = match guard_digits {
            Some(g) => PrecisionContext::with_guard_digits(digits, g),
            None => PrecisionContext::new(digits),
        }
        .map_err(err)?;
        Ok(Context { inner })
    }

    #[getter]
    fn digits(&self) -> u32 {
        self.inner.digits()
    }

    #[getter]
    fn guard_digits(&self) -> u32 {
        self.inner.guard_digits()
    }

    #[getter]
    fn working_digits(&self) -> u32 {
        self.inner.working_digits()
    }

    fn __repr__(&self) -> String {
        format!(
            "Context(digits={}, guard_digits={})",
            self.inner.digits(),
            self.inner.guard_digits()
        )
    }
}

#[pyclass(name = "Real", module = "etawallis", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Real {
    inner: CoreReal,
    ctx: PrecisionContext,
}

impl Real {
    fn wrap(inner: CoreReal, ctx: &PrecisionContext) -> Self {
        Real { inner, ctx: *ctx }
    }
}

/// Accepts `Real`, `str`, `int` or `float` (floats convert exactly).
fn to_real(obj: &Bound<'_, PyAny>, ctx: &PrecisionContext) -> PyResult<CoreReal> {
    if let Ok(r) = obj.cast::<Real>() {
        return Ok(r.get().inner.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return CoreReal::parse(&s, ctx).map_err(err);
    }
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(CoreReal::from_i64(i));
    }
    if let Ok(f) = obj.extract::<f64>() {
        return CoreReal::from_f64(f)
            .ok_or_else(|| EtaWallisError::new_err("domain: value must be finite"));
    }
    Err(EtaWallisError::new_err(
        "invalid_input: expected Real, str, int or float",
    ))
}

#[pymethods]
impl Real {
    #[new]
    fn new(value: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Self> {
        Ok(Real::wrap(to_real(value, &ctx.inner)?.round(&ctx.inner), &ctx.inner))
    }

    /// Decimal string with `digits` significant digits (default: the context's).
    #[pyo3(signature = (digits=None))]
    fn to_string(&self, digits: Option<u32>) -> String {
        match digits {
            Some(d) => self.inner.to_decimal_string(d.max(1), Default::default()),
            None => self.inner.to_context_string(&self.ctx),
        }
    }

    #[getter]
    fn context(&self) -> Context {
        Context { inner: self.ctx }
    }

    fn __str__(&self) -> String {
        self.inner.to_context_string(&self.ctx)
    }

    fn __repr__(&self) -> String {
        format!("Real('{}')", self.inner.to_context_string(&self.ctx))
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner == to_real(other, &self.ctx)?)
    }

    fn __lt__(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner < to_real(other, &self.ctx)?)
    }

    fn __neg__(&self) -> Self {
        Real::wrap(self.inner.neg(), &self.ctx)
    }

    fn __abs__(&self) -> Self {
        Real::wrap(self.inner.abs(), &self.ctx)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = to_real(other, &self.ctx)?;
        Ok(Real::wrap(self.inner.add(&o, &self.ctx), &self.ctx))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = to_real(other, &self.ctx)?;
        Ok(Real::wrap(self.inner.sub(&o, &self.ctx), &self.ctx))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = to_real(other, &self.ctx)?;
        Ok(Real::wrap(self.inner.mul(&o, &self.ctx), &self.ctx))
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = to_real(other, &self.ctx)?;
        Ok(Real::wrap(self.inner.div(&o, &self.ctx).map_err(err)?, &self.ctx))
    }
}

#[pyclass(name = "SeriesResult", module = "etawallis", frozen, get_all)]
struct SeriesResult {
    value: Real,
    s: Real,
    terms_used: u64,
    error_bound: Real,
    method: String,
}

impl SeriesResult {
    fn wrap(r: series::SeriesResult, ctx: &PrecisionContext) -> Self {
        SeriesResult {
            value: Real::wrap(r.value, ctx),
            s: Real::wrap(r.s, ctx),
            terms_used: r.terms_used,
            error_bound: Real::wrap(r.error_bound, ctx),
            method: r.method.name().to_string(),
        }
    }
}

#[pymethods]
impl SeriesResult {
    fn __repr__(&self) -> String {
        format!(
            "SeriesResult(method='{}', value={}, error_bound={}, terms_used={})",
            self.method,
            self.value.__str__(),
            self.error_bound.to_string(Some(3)),
            self.terms_used
        )
    }
}

#[pyclass(name = "ProductRow", module = "etawallis", frozen, get_all)]
struct ProductRow {
    pair_index: u64,
    log_factor: Real,
    cumulative_log: Real,
    cumulative_value: Real,
    abs_error: Option<Real>,
}

#[pymethods]
impl ProductRow {
    fn __repr__(&self) -> String {
        format!(
            "ProductRow(pair_index={}, cumulative_value={})",
            self.pair_index,
            self.cumulative_value.__str__()
        )
    }
}

#[pyclass(name = "VerificationReport", module = "etawallis", frozen, get_all)]
struct VerificationReport {
    case: String,
    lhs: Real,
    rhs: Real,
    abs_error: Real,
    tolerance: Real,
    passed: bool,
    digits: u32,
    routes: String,
}

#[pymethods]
impl VerificationReport {
    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(case='{}', passed={}, abs_error={})",
            self.case,
            if self.passed { "True" } else { "False" },
            self.abs_error.to_string(Some(3))
        )
    }
}

#[pyclass(name = "ConstantSet", module = "etawallis", frozen, get_all)]
struct ConstantSet {
    pi: Real,
    ln2: Real,
    gamma: Real,
    zeta2: Real,
    zeta_prime2: Real,
    ln_glaisher: Real,
    glaisher: Real,
    digits: u32,
    glaisher_route: String,
}

fn parse_case(case: &str) -> PyResult<Case> {
    case.parse().map_err(err)
}

#[pyfunction]
fn make_context(digits: u32) -> PyResult<Context> {
    Context::new(digits, None)
}

#[pyfunction]
fn pi(ctx: &Context) -> Real {
    Real::wrap(etawallis::numeric::pi(&ctx.inner), &ctx.inner)
}

#[pyfunction]
fn ln(x: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Real> {
    let x = to_real(x, &ctx.inner)?;
    Ok(Real::wrap(etawallis::numeric::ln(&x, &ctx.inner).map_err(err)?, &ctx.inner))
}

#[pyfunction]
fn exp(x: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Real> {
    let x = to_real(x, &ctx.inner)?;
    Ok(Real::wrap(etawallis::numeric::exp(&x, &ctx.inner).map_err(err)?, &ctx.inner))
}

#[pyfunction]
fn pow(x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Real> {
    let x = to_real(x, &ctx.inner)?;
    let y = to_real(y, &ctx.inner)?;
    Ok(Real::wrap(
        etawallis::numeric::pow(&x, &y, &ctx.inner).map_err(err)?,
        &ctx.inner,
    ))
}

#[pyfunction]
fn eta_direct(s: &Bound<'_, PyAny>, n_terms: u64, ctx: &Context) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let r = series::eta_direct(&s, n_terms, &ctx.inner).map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
fn eta_averaged(s: &Bound<'_, PyAny>, n_groups: u64, ctx: &Context) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let r = series::eta_averaged(&s, n_groups, &ctx.inner).map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
#[pyo3(signature = (s, ctx, order=None))]
fn eta_accelerated(s: &Bound<'_, PyAny>, ctx: &Context, order: Option<u64>) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let order = order.unwrap_or_else(|| series::default_order(&ctx.inner));
    let r = series::eta_accelerated(&s, order, &ctx.inner).map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
fn eta_prime_grouped(s: &Bound<'_, PyAny>, n_groups: u64, ctx: &Context) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let r = series::eta_prime_grouped(&s, n_groups, &ctx.inner).map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
#[pyo3(signature = (s, ctx, order=None))]
fn eta_prime_alternating_accelerated(
    s: &Bound<'_, PyAny>,
    ctx: &Context,
    order: Option<u64>,
) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let order = order.unwrap_or_else(|| series::default_order(&ctx.inner));
    let r = series::eta_prime_alternating_accelerated(&s, order, &ctx.inner).map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
#[pyo3(signature = (s, ctx, n_min=1000, doublings=6, levels=6))]
fn eta_prime_extrapolated(
    s: &Bound<'_, PyAny>,
    ctx: &Context,
    n_min: u64,
    doublings: u32,
    levels: usize,
) -> PyResult<SeriesResult> {
    let s = to_real(s, &ctx.inner)?;
    let r = series::eta_prime_extrapolated(&s, n_min, doublings, levels, &ctx.inner)
        .map_err(err)?;
    Ok(SeriesResult::wrap(r, &ctx.inner))
}

#[pyfunction]
fn log_factor(n: u64, s: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Real> {
    let s = to_real(s, &ctx.inner)?;
    Ok(Real::wrap(
        products::log_factor(n, &s, &ctx.inner).map_err(err)?,
        &ctx.inner,
    ))
}

/// Rows of the pair product; `target` is a value to compare against.
#[pyfunction]
#[pyo3(signature = (s, n_pairs, ctx, target=None, emit_every=1))]
fn partial_product(
    s: &Bound<'_, PyAny>,
    n_pairs: u64,
    ctx: &Context,
    target: Option<&Bound<'_, PyAny>>,
    emit_every: u64,
) -> PyResult<Vec<ProductRow>> {
    let c = &ctx.inner;
    let s = to_real(s, c)?;
    let target = target
        .map(|t| -> PyResult<products::Target> {
            Ok(products::Target {
                s: s.clone(),
                value: to_real(t, c)?,
                route: products::TargetRoute::EtaPrimeSeries,
            })
        })
        .transpose()?;
    let rows = products::partial_product(&s, n_pairs, target.as_ref(), emit_every, c)
        .map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| ProductRow {
            pair_index: r.pair_index,
            log_factor: Real::wrap(r.log_factor, c),
            cumulative_log: Real::wrap(r.cumulative_log, c),
            cumulative_value: Real::wrap(r.cumulative_value, c),
            abs_error: r.abs_error.map(|e| Real::wrap(e, c)),
        })
        .collect())
}

/// `"s0"`, `"s1"` or `"s2"`; `glaisher_n` selects the hyperfactorial-limit
/// route for A (default: from zeta'(2)).
#[pyfunction]
#[pyo3(signature = (case, ctx, glaisher_n=None))]
fn closed_form_target(case: &str, ctx: &Context, glaisher_n: Option<u64>) -> PyResult<Real> {
    let route = glaisher_n.map_or(GlaisherRoute::Zeta, |n| GlaisherRoute::Limit { n });
    let t = products::closed_form_target(parse_case(case)?, route, &ctx.inner).map_err(err)?;
    Ok(Real::wrap(t.value, &ctx.inner))
}

#[pyfunction]
fn series_target(s: &Bound<'_, PyAny>, ctx: &Context) -> PyResult<Real> {
    let s = to_real(s, &ctx.inner)?;
    let t = products::series_target(&s, &ctx.inner).map_err(err)?;
    Ok(Real::wrap(t.value, &ctx.inner))
}

#[pyfunction]
#[pyo3(signature = (s, ctx, n_min=1000, doublings=3))]
fn convergence_order(
    s: &Bound<'_, PyAny>,
    ctx: &Context,
    n_min: u64,
    doublings: u32,
) -> PyResult<Real> {
    let s = to_real(s, &ctx.inner)?;
    let o = products::convergence_order(&s, n_min, doublings, &ctx.inner).map_err(err)?;
    Ok(Real::wrap(o, &ctx.inner))
}

#[pyfunction]
fn gamma_harmonic(ctx: &Context) -> PyResult<Real> {
    Ok(Real::wrap(constants::gamma_harmonic(&ctx.inner).map_err(err)?, &ctx.inner))
}

#[pyfunction]
fn gamma_from_eta(ctx: &Context) -> PyResult<Real> {
    Ok(Real::wrap(constants::gamma_from_eta(&ctx.inner).map_err(err)?, &ctx.inner))
}

#[pyfunction]
fn hyperfactorial_log(n: u64, ctx: &Context) -> PyResult<Real> {
    Ok(Real::wrap(
        constants::hyperfactorial_log(n, &ctx.inner).map_err(err)?,
        &ctx.inner,
    ))
}

#[pyfunction]
fn glaisher_from_limit(n: u64, ctx: &Context) -> PyResult<Real> {
    Ok(Real::wrap(
        constants::glaisher_from_limit(n, &ctx.inner).map_err(err)?,
        &ctx.inner,
    ))
}

#[pyfunction]
fn glaisher_from_zeta(ctx: &Context) -> PyResult<Real> {
    Ok(Real::wrap(constants::glaisher_from_zeta(&ctx.inner).map_err(err)?, &ctx.inner))
}

#[pyfunction]
fn constant_set(ctx: &Context) -> PyResult<ConstantSet> {
    let c = &ctx.inner;
    let set = constants::constant_set(c).map_err(err)?;
    Ok(ConstantSet {
        pi: Real::wrap(set.pi, c),
        ln2: Real::wrap(set.ln2, c),
        gamma: Real::wrap(set.gamma, c),
        zeta2: Real::wrap(set.zeta2, c),
        zeta_prime2: Real::wrap(set.zeta_prime2, c),
        ln_glaisher: Real::wrap(set.ln_glaisher, c),
        glaisher: Real::wrap(set.glaisher, c),
        digits: set.digits,
        glaisher_route: set.glaisher_route.to_string(),
    })
}

/// Verifies `"s0"`, `"s1"`, `"s2"` or `"all"`; tolerance defaults per case.
#[pyfunction]
#[pyo3(signature = (case="all", digits=30, tolerance=None))]
fn run_verify(
    py: Python<'_>,
    case: &str,
    digits: u32,
    tolerance: Option<&str>,
) -> PyResult<Vec<VerificationReport>> {
    let case = match case {
        "all" => None,
        c => Some(parse_case(c)?),
    };
    let tolerance = tolerance.map(str::to_owned);
    let reports = py
        .detach(|| report::run_verify(case, digits, tolerance.as_deref()))
        .map_err(err)?;
    let ctx = PrecisionContext::new(digits).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| VerificationReport {
            case: r.case.name().to_string(),
            lhs: Real::wrap(r.lhs, &ctx),
            rhs: Real::wrap(r.rhs, &ctx),
            abs_error: Real::wrap(r.abs_error, &ctx),
            tolerance: Real::wrap(r.tolerance, &ctx),
            passed: r.passed,
            digits: r.digits,
            routes: r.routes,
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "etawallis")]
fn etawallis_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EtaWallisError", m.py().get_type::<EtaWallisError>())?;
    m.add_class::<Context>()?;
    m.add_class::<Real>()?;
    m.add_class::<SeriesResult>()?;
    m.add_class::<ProductRow>()?;
    m.add_class::<VerificationReport>()?;
    m.add_class::<ConstantSet>()?;
    m.add_function(wrap_pyfunction!(make_context, m)?)?;
    m.add_function(wrap_pyfunction!(pi, m)?)?;
    m.add_function(wrap_pyfunction!(ln, m)?)?;
    m.add_function(wrap_pyfunction!(exp, m)?)?;
    m.add_function(wrap_pyfunction!(pow, m)?)?;
    m.add_function(wrap_pyfunction!(eta_direct, m)?)?;
    m.add_function(wrap_pyfunction!(eta_averaged, m)?)?;
    m.add_function(wrap_pyfunction!(eta_accelerated, m)?)?;
    m.add_function(wrap_pyfunction!(eta_prime_grouped, m)?)?;
    m.add_function(wrap_pyfunction!(eta_prime_alternating_accelerated, m)?)?;
    m.add_function(wrap_pyfunction!(eta_prime_extrapolated, m)?)?;
    m.add_function(wrap_pyfunction!(log_factor, m)?)?;
    m.add_function(wrap_pyfunction!(partial_product, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_target, m)?)?;
    m.add_function(wrap_pyfunction!(series_target, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_order, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_harmonic, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_from_eta, m)?)?;
    m.add_function(wrap_pyfunction!(hyperfactorial_log, m)?)?;
    m.add_function(wrap_pyfunction!(glaisher_from_limit, m)?)?;
    m.add_function(wrap_pyfunction!(glaisher_from_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(constant_set, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
