use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::{ck, ck_step, is_symbolic_word};
use crate::word::{TimedLetter, TimedWord};

/// A half-integral `w` such that every K-acceptor reaches the same state on `u0·u` and
/// on `u0·w`, with `u0·w` small.
///
/// Delays are chosen letter by letter so that the clock value reached before each letter
/// lies in the same region on both sides.
pub fn half_integral_witness(u0: &TimedWord, u: &TimedWord, k: u32) -> Result<TimedWord> {
    if !is_symbolic_word(u0, k) {
        return Err(Error::NotHalfIntegral(u0.to_string()));
    }
    let kq = Rational::from_int(k as u64);
    let half = Rational::half();
    let one = Rational::one();
    let mut c_u = ck(u0, k);
    let mut c_w = c_u.clone();
    let mut out = Vec::with_capacity(u.len());
    for l in u.letters() {
        let t = &l.delay;
        let t_prime = if c_u > kq {
            Rational::zero()
        } else if c_u.is_zero() {
            if *t > kq {
                &kq + &half
            } else if t.fract().is_zero() {
                t.floor()
            } else {
                t.floor() + half.clone()
            }
        } else if &c_u + t > kq {
            kq.checked_sub(&c_w.floor()).expect("c_w < K")
        } else {
            let s = c_u.fract() + t.fract();
            match s.cmp(&one) {
                std::cmp::Ordering::Less => t.floor(),
                std::cmp::Ordering::Equal => t.floor() + half.clone(),
                std::cmp::Ordering::Greater => t.floor() + one.clone(),
            }
        };
        c_u = ck_step(&c_u, t, k);
        c_w = ck_step(&c_w, &t_prime, k);
        out.push(TimedLetter { delay: t_prime, symbol: l.symbol.clone() });
    }
    Ok(TimedWord::from_letters(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::region_equiv;

    fn w(s: &str) -> TimedWord {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(half_integral_witness(&TimedWord::empty(), &w("1/5:a"), 1).unwrap(), w("1/2:a"));
        assert_eq!(half_integral_witness(&TimedWord::empty(), &TimedWord::empty(), 1).unwrap(), TimedWord::empty());
        assert!(half_integral_witness(&w("1/3:a"), &w("1:a"), 1).is_err());
        // {c} + {t} > 1 without crossing K.
        assert_eq!(half_integral_witness(&TimedWord::empty(), &w("3/5:a; 3/5:a"), 2).unwrap(), w("1/2:a; 1:a"));
    }

    #[test]
    fn clock_regions_correspond() {
        let u = w("6/5:a; 4/5:a; 1/3:a; 2/3:a; 7/10:a; 9/10:a; 5:a");
        for k in 0..3 {
            let v = half_integral_witness(&TimedWord::empty(), &u, k).unwrap();
            assert!(is_symbolic_word(&v, k));
            for n in 0..u.len() {
                let a = &ck(&u.prefix(n), k) + &u.letters()[n].delay;
                let b = &ck(&v.prefix(n), k) + &v.letters()[n].delay;
                assert!(region_equiv(&a, &b, k), "k={k} n={n}");
            }
        }
    }
}
