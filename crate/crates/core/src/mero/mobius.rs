use num_complex::Complex64;

use super::{schwarzian, MeroMap, MeroValue};
use crate::error::{Error, Result};

/// `w -> (a w + b) / (c w + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let scale = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
        let det = (a * d - b * c).norm();
        if !(det > 1e-14 * scale * scale) {
            return Err(Error::DegenerateMobius(det));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: o, b: z, c: z, d: o }
    }

    /// `w -> 1/w`.
    pub fn reciprocal() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: z, b: o, c: o, d: z }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        if w.is_infinite() {
            return self.a / self.c;
        }
        (self.a * w + self.b) / (self.c * w + self.d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

/// `L ∘ f`, evaluated projectively so poles of either factor cause no trouble.
#[derive(Clone, Debug)]
pub struct MobiusMap<M> {
    pub l: Mobius,
    pub f: M,
}

impl<M: MeroMap> MeroMap for MobiusMap<M> {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        let v = self.f.eval(z)?;
        let [a, b, c, d] = self.l.coefficients();
        let num = v.num.lin_comb(a, &v.den, b);
        let den = v.num.lin_comb(c, &v.den, d);
        let wronskian = v.wronskian.map(|w| {
            let shift = v.num.log_scale + v.den.log_scale - num.log_scale - den.log_scale;
            w * (a * d - b * c) * shift.exp()
        });
        Ok(MeroValue { num, den, wronskian })
    }
}

pub fn mobius_apply<M: MeroMap>(l: Mobius, f: M) -> MobiusMap<M> {
    MobiusMap { l, f }
}

/// `|S(L ∘ f)(z) - S(f)(z)|`.
pub fn mobius_invariance_residual<M: MeroMap>(l: Mobius, f: &M, z: Complex64) -> Result<f64> {
    let s0 = schwarzian(f, z)?;
    let s1 = schwarzian(&mobius_apply(l, f), z)?;
    Ok((s1 - s0).norm())
}
