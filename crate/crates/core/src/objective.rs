use std::sync::atomic::{AtomicUsize, Ordering};

/// A deterministic function to be minimized.
///
/// Implementations must be pure: the same vector always yields the same value.
/// Stochastic objectives must carry their own seeded generator.
pub trait Objective: Sync {
    /// Number of decision variables accepted.
    fn dims(&self) -> usize;

    fn eval(&self, x: &[f64]) -> f64;
}

impl<O: Objective + ?Sized> Objective for &O {
    fn dims(&self) -> usize {
        (**self).dims()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    dims: usize,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(dims: usize, f: F) -> Self {
        Self { dims, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn dims(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Wraps a maximization target so it can be minimized.
pub struct Negated<O>(pub O);

impl<O: Objective> Objective for Negated<O> {
    fn dims(&self) -> usize {
        self.0.dims()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        -self.0.eval(x)
    }
}

/// Counts calls to the wrapped objective.
pub struct Counted<'a, O: ?Sized> {
    inner: &'a O,
    calls: AtomicUsize,
}

impl<'a, O: Objective + ?Sized> Counted<'a, O> {
    pub fn new(inner: &'a O) -> Self {
        Self {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }
}

impl<O: Objective + ?Sized> Objective for Counted<'_, O> {
    fn dims(&self) -> usize {
        self.inner.dims()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }
}
