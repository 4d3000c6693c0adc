use crate::{Complex64, Error, Result};

/// Running Neumaier sum of real numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of complex terms, real and imaginary parts summed
/// independently. The order of `terms` is respected.
pub fn compensated_sum<I>(terms: I) -> Result<Complex64>
where
    I: IntoIterator<Item = Complex64>,
{
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for (i, z) in terms.into_iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { at: i as f64 });
        }
        re.add(z.re);
        im.add(z.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

pub fn compensated_sum_real<I>(terms: I) -> Result<f64>
where
    I: IntoIterator<Item = f64>,
{
    let mut s = NeumaierSum::new();
    for (i, x) in terms.into_iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite { at: i as f64 });
        }
        s.add(x);
    }
    Ok(s.value())
}
