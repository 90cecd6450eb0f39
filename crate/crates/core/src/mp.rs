//! Thin arithmetic layer over `astro_float` used wherever double precision is not enough.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the constants cache `astro_float` needs for transcendental functions.
pub struct Ctx {
    pub prec: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        Ctx {
            prec,
            cc: Consts::new().expect("constants cache allocation"),
        }
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn int(&self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, self.prec)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_u64(0, self.prec)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_u64(1, self.prec)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn powi(&self, a: &BigFloat, k: usize) -> BigFloat {
        a.powi(k, self.prec, RM)
    }

    pub fn cadd(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn csub(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        if a.im.is_zero() && b.im.is_zero() {
            return BigComplex::real(self.mul(&a.re, &b.re), self);
        }
        let rr = self.mul(&a.re, &b.re);
        let ii = self.mul(&a.im, &b.im);
        let ri = self.mul(&a.re, &b.im);
        let ir = self.mul(&a.im, &b.re);
        BigComplex {
            re: self.sub(&rr, &ii),
            im: self.add(&ri, &ir),
        }
    }

    pub fn cscale(&self, a: &BigComplex, s: &BigFloat) -> BigComplex {
        BigComplex {
            re: self.mul(&a.re, s),
            im: self.mul(&a.im, s),
        }
    }

    pub fn cdiv(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        BigComplex {
            re: self.div(&re, &den),
            im: self.div(&im, &den),
        }
    }

    pub fn norm_sqr(&self, a: &BigComplex) -> BigFloat {
        self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im))
    }

    /// e^{re + i im} for a complex exponent given in double precision parts.
    pub fn cexp(&mut self, re: &BigFloat, im: &BigFloat) -> BigComplex {
        let m = self.exp(re);
        if im.is_zero() {
            return BigComplex::real(m, self);
        }
        let c = self.cos(im);
        let s = self.sin(im);
        BigComplex {
            re: self.mul(&m, &c),
            im: self.mul(&m, &s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn real(re: BigFloat, ctx: &Ctx) -> Self {
        BigComplex { re, im: ctx.zero() }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        BigComplex {
            re: ctx.zero(),
            im: ctx.zero(),
        }
    }

    pub fn from_c64(z: Complex64, ctx: &Ctx) -> Self {
        BigComplex {
            re: ctx.num(z.re),
            im: ctx.num(z.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Nearest-ish double to a big float (truncates the mantissa to its two leading words).
pub fn to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        None => {
            if x.is_nan() {
                f64::NAN
            } else if x.is_inf_neg() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
        Some((m, _, s, e, _)) => {
            let len = m.len();
            if len == 0 || m.iter().all(|&w| w == 0) {
                return 0.0;
            }
            let hi = m[len - 1] as f64;
            let lo = if len > 1 { m[len - 2] as f64 } else { 0.0 };
            let frac = hi / 2f64.powi(64) + lo / 2f64.powi(128);
            let half = e / 2;
            let v = frac * 2f64.powi(half) * 2f64.powi(e - half);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
    }
}

/// Binary exponent e with x = f·2^e, 1/2 ≤ |f| < 1; `None` for zero.
pub fn exponent(x: &BigFloat) -> Option<i32> {
    if x.is_zero() {
        None
    } else {
        x.exponent()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_round_trip() {
        let ctx = Ctx::new(256);
        for &x in &[1.0, -3.25, 1e-300, 6.02e23, -0.1, 0.0] {
            assert_eq!(to_f64(&ctx.num(x)), x);
        }
    }

    #[test]
    fn log_of_two_matches_double() {
        let mut ctx = Ctx::new(256);
        let two = ctx.num(2.0);
        let l = ctx.ln(&two);
        assert!((to_f64(&l) - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let ctx = Ctx::new(200);
        let a = BigComplex::from_c64(Complex64::new(1.5, -2.0), &ctx);
        let b = BigComplex::from_c64(Complex64::new(-0.25, 3.0), &ctx);
        let q = ctx.cdiv(&ctx.cmul(&a, &b), &b);
        let d = (q.to_c64() - a.to_c64()).norm();
        assert!(d < 1e-15);
    }
}
