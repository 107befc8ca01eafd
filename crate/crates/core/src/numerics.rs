//! Compensated summation used by the moment quadratures and the velocity
//! kernel. Results are a pure function of the input order, which is what the
//! deterministic-reduction contract of the parallel code relies on.

/// Neumaier variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Accumulator::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        // 1 + 1e100 - 1e100 loses the 1 in naive summation.
        let s = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s, 2.0);
    }

    #[test]
    fn matches_exact_on_small_sets() {
        let s = compensated_sum([0.1f64; 10]);
        assert!((s - 1.0).abs() < 1e-15);
    }
}
