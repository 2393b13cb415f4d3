//! Fixed-order summation.
//!
//! Every reduction in the crate walks its terms in a fixed order, so a
//! parallel driver that gathers terms and then calls these helpers produces
//! bit-identical results to the serial path.

use crate::Complex64;

/// Neumaier-compensated sum of real terms in iteration order.
pub fn neumaier<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in terms {
        let t = sum + x;
        if libm::fabs(sum) >= libm::fabs(x) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Compensated sum of complex terms, real and imaginary parts independently.
pub fn neumaier_complex<I: IntoIterator<Item = Complex64>>(terms: I) -> Complex64 {
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for z in terms {
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.total(), im.total())
}

/// Streaming form of [`neumaier`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
