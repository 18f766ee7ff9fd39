//! Rescaling bijections between timestamps read from region-equivalent clock values.
//!
//! `unit_rescale` is the piecewise-linear bijection of `(0, 1)` sending `(0, λ]` onto
//! `(0, λ']`. [`rescale_timestamps`] lifts it to a length-preserving bijection on delay
//! sequences: each delay keeps its integral part while its fractional part is rescaled
//! so that the clock values reached from `x` and from `x'` stay region-equivalent.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::{ck_step, region_equiv};
use crate::word::{TimedLetter, TimedWord};

/// A pair of region-equivalent starting clock values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleContext {
    x: Rational,
    x_prime: Rational,
    k: u32,
}

impl RescaleContext {
    pub fn new(x: Rational, x_prime: Rational, k: u32) -> Result<Self> {
        if !region_equiv(&x, &x_prime, k) {
            return Err(Error::NotRegionEquivalent { x: x.to_string(), x_prime: x_prime.to_string(), k });
        }
        Ok(RescaleContext { x, x_prime, k })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn x_prime(&self) -> &Rational {
        &self.x_prime
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The context mapping back from `x'` to `x`.
    pub fn inverse(&self) -> RescaleContext {
        RescaleContext { x: self.x_prime.clone(), x_prime: self.x.clone(), k: self.k }
    }
}

fn in_open_unit(v: &Rational) -> bool {
    !v.is_zero() && *v < Rational::one()
}

/// `f_{λ→λ'}(t)`.
pub fn unit_rescale(lambda: &Rational, lambda_prime: &Rational, t: &Rational) -> Result<Rational> {
    for v in [lambda, lambda_prime, t] {
        if !in_open_unit(v) {
            return Err(Error::OutsideUnitInterval(v.to_string()));
        }
    }
    Ok(unit_rescale_unchecked(lambda, lambda_prime, t))
}

fn unit_rescale_unchecked(lambda: &Rational, lambda_prime: &Rational, t: &Rational) -> Rational {
    if t <= lambda {
        let scale = lambda_prime.checked_div(lambda).expect("λ > 0");
        &scale * t
    } else {
        let one = Rational::one();
        let num = one.checked_sub(lambda_prime).expect("λ' < 1");
        let den = one.checked_sub(lambda).expect("λ < 1");
        let offset = t.checked_sub(lambda).expect("t > λ");
        let scale = num.checked_div(&den).expect("λ < 1");
        lambda_prime + &(&scale * &offset)
    }
}

/// `τ_{x→x'}` applied to a delay sequence.
pub fn rescale_timestamps(ctx: &RescaleContext, delays: &[Rational]) -> Vec<Rational> {
    let k = ctx.k;
    let kq = Rational::from_int(k as u64);
    let one = Rational::one();
    // Running c^K of `x d` and `x' d'`.
    let mut y = ck_step(&Rational::zero(), &ctx.x, k);
    let mut y_prime = ck_step(&Rational::zero(), &ctx.x_prime, k);
    let mut out = Vec::with_capacity(delays.len());
    for t in delays {
        let same = (y.is_integer() && y_prime.is_integer()) || (y > kq && y_prime > kq);
        let t_prime = if same {
            t.clone()
        } else {
            let frac = t.fract();
            if frac.is_zero() {
                t.clone()
            } else {
                let lambda = one.checked_sub(&y.fract()).expect("fraction < 1");
                let lambda_prime = one.checked_sub(&y_prime.fract()).expect("fraction < 1");
                t.floor() + unit_rescale_unchecked(&lambda, &lambda_prime, &frac)
            }
        };
        y = ck_step(&y, t, k);
        y_prime = ck_step(&y_prime, &t_prime, k);
        out.push(t_prime);
    }
    out
}

/// `τ_{x→x'}` on a timed word; letters are kept.
pub fn rescale_word(ctx: &RescaleContext, w: &TimedWord) -> TimedWord {
    let delays: Vec<Rational> = w.delays().cloned().collect();
    let mapped = rescale_timestamps(ctx, &delays);
    TimedWord::from_letters(
        w.letters().iter().zip(mapped).map(|(l, d)| TimedLetter { delay: d, symbol: l.symbol.clone() }).collect(),
    )
}
