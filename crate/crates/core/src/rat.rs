//! Exact rational scalar support: parsing/formatting of `p/q` strings,
//! dyadic quantization of floats, and one-sided rational square-root bounds.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The exact scalar used for coordinates, barycentric weights, lengths and
/// certificate bounds throughout the crate.
pub type Rat = BigRational;

/// Shorthand constructor from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Formats as `p/q`, or plain `p` when the denominator is one.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or a decimal string such as `-3.25` exactly.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part == "-" || int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rat::new(f, scale);
        let int = Rat::from_integer(i);
        return Some(if neg { int - frac } else { int + frac });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Exact conversion of a finite float (floats are dyadic rationals).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range rationals only arise from pathological inputs; saturate.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `2^k` for possibly negative `k`.
pub fn pow2(k: i32) -> Rat {
    if k >= 0 {
        Rat::from_integer(BigInt::one() << k as usize)
    } else {
        Rat::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Rounds `x` to the nearest multiple of `2^grid_log2` (ties toward +inf).
pub fn quantize_dyadic(x: f64, grid_log2: i32) -> Rat {
    let exact = rat_from_f64(x).expect("finite float");
    let grid = pow2(grid_log2);
    let scaled = &exact / &grid;
    let rounded = (scaled + rat(1, 2)).floor();
    rounded * grid
}

/// Floor of the integer square root.
fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// A rational `s >= 0` with `s^2 <= x`, within `2^-extra_bits` of the truth.
pub fn sqrt_lower(x: &Rat, extra_bits: u32) -> Rat {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^extra_bits for precision.
    let scale = BigInt::one() << (2 * extra_bits as usize);
    let pq = x.numer() * x.denom() * &scale;
    let root = isqrt(&pq);
    Rat::new(root, x.denom() * (BigInt::one() << extra_bits as usize))
}

/// A rational `s >= 0` with `s^2 >= x`.
pub fn sqrt_upper(x: &Rat, extra_bits: u32) -> Rat {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << (2 * extra_bits as usize);
    let pq = x.numer() * x.denom() * &scale;
    let mut root = isqrt(&pq);
    if &root * &root < pq {
        root += BigInt::one();
    }
    Rat::new(root, x.denom() * (BigInt::one() << extra_bits as usize))
}

/// Smallest integer `s >= 1` with `s^2 >= x` (for mesh granularity from a
/// squared-diameter/pitch ratio).
pub fn ceil_sqrt_int(x: &Rat) -> u64 {
    if x.is_negative() || x.is_zero() {
        return 1;
    }
    // ceil(sqrt(p/q)): find smallest s with s^2*q >= p.
    let mut s = isqrt(&(x.numer() / x.denom()));
    while &s * &s * x.denom() < *x.numer() {
        s += BigInt::one();
    }
    let s = s.max(BigInt::one());
    s.to_u64().expect("mesh granularity fits in u64")
}

/// Greatest common divisor of two positive rationals:
/// `gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d)`.
pub fn rat_gcd(x: &Rat, y: &Rat) -> Rat {
    assert!(x.is_positive() && y.is_positive());
    let num = (x.numer() * y.denom()).gcd(&(y.numer() * x.denom()));
    Rat::new(num, x.denom() * y.denom())
}

/// Sign of a rational as -1/0/+1.
pub fn sign(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "3/4", "-22/7", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s.trim_start_matches('+'));
        }
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("abc").is_none());
    }

    #[test]
    fn dyadic_quantization_stays_on_grid() {
        let q = quantize_dyadic(0.3, -10);
        assert_eq!(q, rat(307, 1024));
        assert_eq!(quantize_dyadic(0.5, 0), rint(1));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let x = rat(2, 1);
        let lo = sqrt_lower(&x, 32);
        let hi = sqrt_upper(&x, 32);
        assert!(&lo * &lo <= x);
        assert!(&hi * &hi >= x);
        assert!(&hi - &lo < rat(1, 1 << 30));
    }

    #[test]
    fn ceil_sqrt_examples() {
        assert_eq!(ceil_sqrt_int(&rat(4, 1)), 2);
        assert_eq!(ceil_sqrt_int(&rat(5, 1)), 3);
        assert_eq!(ceil_sqrt_int(&rat(1, 4)), 1);
        assert_eq!(ceil_sqrt_int(&rat(16, 1)), 4);
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rat_gcd(&rat(3, 1), &rat(2, 1)), rat(1, 1));
        assert_eq!(rat_gcd(&rat(4, 6), &rat(2, 6)), rat(1, 3));
    }
}
