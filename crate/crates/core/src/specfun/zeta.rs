//! ζ'(-1) through the Glaisher–Kinkelin constant.

use astro_float::BigFloat;
use std::sync::OnceLock;

use crate::mp::{to_f64, Ctx};

// B_{2j} for j = 2..15 as (numerator, denominator).
const BERNOULLI: [(i64, i64); 14] = [
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

/// log A (Glaisher–Kinkelin) at `prec` bits:
/// log A = Σ_{k≤N} k log k - (N²/2 + N/2 + 1/12) log N + N²/4 + Σ_{j≥2} B_{2j} N^{2-2j} / (2j(2j-1)(2j-2)).
pub fn log_glaisher(ctx: &mut Ctx) -> BigFloat {
    const N: i64 = 32;
    let mut sum = ctx.zero();
    for k in 2..=N {
        let kb = ctx.int(k);
        let l = ctx.ln(&kb);
        sum = ctx.add(&sum, &ctx.mul(&kb, &l));
    }
    let n = ctx.int(N);
    let ln_n = ctx.ln(&n);
    let n2 = ctx.mul(&n, &n);
    let half = ctx.num(0.5);
    let twelfth = ctx.div(&ctx.one(), &ctx.int(12));
    let coef = ctx.add(&ctx.add(&ctx.mul(&n2, &half), &ctx.mul(&n, &half)), &twelfth);
    sum = ctx.sub(&sum, &ctx.mul(&coef, &ln_n));
    sum = ctx.add(&sum, &ctx.div(&n2, &ctx.int(4)));
    let inv_n2 = ctx.div(&ctx.one(), &n2);
    let mut p = ctx.one();
    for (i, &(num, den)) in BERNOULLI.iter().enumerate() {
        let j = i as i64 + 2;
        p = ctx.mul(&p, &inv_n2);
        let d = ctx.int(den * (2 * j) * (2 * j - 1) * (2 * j - 2));
        let term = ctx.div(&ctx.mul(&ctx.int(num), &p), &d);
        sum = ctx.add(&sum, &term);
    }
    sum
}

/// ζ'(-1) = 1/12 - log A at `prec` bits.
pub fn zeta_prime_minus_one_big(ctx: &mut Ctx) -> BigFloat {
    let la = log_glaisher(ctx);
    let twelfth = ctx.div(&ctx.one(), &ctx.int(12));
    ctx.sub(&twelfth, &la)
}

/// ζ'(-1), computed once at 192 bits and cached.
pub fn zeta_prime_minus_one() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        let mut ctx = Ctx::new(192);
        to_f64(&zeta_prime_minus_one_big(&mut ctx))
    })
}

#[cfg(test)]
pub(crate) const ZETA_PRIME_MINUS_ONE_REF: f64 = -0.165_421_143_700_450_93;
