use pyo3::prelude::*;
use pyo3::types::PyDict;

use hraha_py::hraha_py as extension;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(extension);
        Python::initialize();
    });
    Python::attach(|py| {
        let m = py.import("hraha_py").expect("module registered");
        f(py, &m);
    });
}

fn eval(py: Python<'_>, m: &Bound<'_, PyModule>, expr: &str) -> Py<PyAny> {
    let locals = PyDict::new(py);
    locals.set_item("h", m).unwrap();
    let code = std::ffi::CString::new(expr).unwrap();
    py.eval(&code, None, Some(&locals)).unwrap().unbind()
}

#[test]
fn benchmark_run_from_python() {
    with_module(|py, m| {
        let best: f64 = eval(py, m, "h.run_hraha('sphere', dims=4, pop_size=12, max_iters=150, seed=2).best_fitness")
            .extract(py)
            .unwrap();
        assert!(best < 1e-2, "{best}");
    });
}

#[test]
fn python_callable_objective() {
    with_module(|py, m| {
        let best: f64 = eval(
            py,
            m,
            "h.run_baseline('pso', lambda x: (x[0] - 1.0) ** 2, lower=[-3.0], upper=[3.0], pop_size=8, max_iters=60).best_fitness",
        )
        .extract(py)
        .unwrap();
        assert!(best < 1e-6, "{best}");
    });
}

#[test]
fn errors_become_value_errors() {
    with_module(|py, m| {
        let locals = PyDict::new(py);
        locals.set_item("h", m).unwrap();
        let err = py.eval(c"h.benchmark('griewank', [0.0])", None, Some(&locals)).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let err = py.eval(c"h.leaky_relu(1.0, 2.0)", None, Some(&locals)).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}

#[test]
fn text_and_metrics() {
    with_module(|py, m| {
        let cleaned: String = eval(py, m, "h.clean_text(\"Can't STOP!!\")").extract(py).unwrap();
        assert_eq!(cleaned, "cannot stop");
        let bleu: f64 = eval(py, m, "h.bleu4(['the','cat','sat'], [['the','cat','sat','down']])")
            .extract(py)
            .unwrap();
        assert!((bleu - 0.7165).abs() < 1e-4);
    });
}
