//! Exact arithmetic on angles with rational tangents.
//!
//! An angle is kept in the normal form `k*pi + phi` with `phi` in
//! `(-pi/2, pi/2]`: either `phi = arctan(t)` for a rational `t`, or the
//! distinguished value `phi = pi/2`. The form is unique, so equality and
//! comparison against `pi` are decidable with integer arithmetic only.
//!
//! Decimal values (for printing tables) come from a separate interval
//! evaluation of `arctan` and `pi` and never feed back into the exact
//! decisions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Tan(BigRational),
    HalfPi,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactAngle {
    pub pi_multiples: i64,
    pub tail: Tail,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl ExactAngle {
    pub fn zero() -> Self {
        ExactAngle {
            pi_multiples: 0,
            tail: Tail::Tan(BigRational::zero()),
        }
    }

    pub fn pi() -> Self {
        ExactAngle {
            pi_multiples: 1,
            tail: Tail::Tan(BigRational::zero()),
        }
    }

    pub fn half_pi() -> Self {
        ExactAngle {
            pi_multiples: 0,
            tail: Tail::HalfPi,
        }
    }

    /// `arctan(t)` for a positive rational `t`.
    pub fn from_tan(t: BigRational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonPositiveTangent(t.to_string()));
        }
        Ok(ExactAngle {
            pi_multiples: 0,
            tail: Tail::Tan(t),
        })
    }

    pub fn add(&self, other: &ExactAngle) -> ExactAngle {
        let k = self.pi_multiples + other.pi_multiples;
        let (k, tail) = match (&self.tail, &other.tail) {
            (Tail::HalfPi, Tail::HalfPi) => (k + 1, Tail::Tan(BigRational::zero())),
            (Tail::HalfPi, Tail::Tan(v)) | (Tail::Tan(v), Tail::HalfPi) => {
                // pi/2 + arctan(v) = arctan(-1/v) + (pi if v > 0)
                if v.is_zero() {
                    (k, Tail::HalfPi)
                } else if v.is_positive() {
                    (k + 1, Tail::Tan(-v.recip()))
                } else {
                    (k, Tail::Tan(-v.recip()))
                }
            }
            (Tail::Tan(u), Tail::Tan(v)) => {
                let uv = u * v;
                let one = BigRational::one();
                match uv.cmp(&one) {
                    Ordering::Less => (k, Tail::Tan((u + v) / (&one - &uv))),
                    // u and v share a sign: the sum is +pi/2 or -pi/2
                    Ordering::Equal if u.is_positive() => (k, Tail::HalfPi),
                    Ordering::Equal => (k - 1, Tail::HalfPi),
                    Ordering::Greater => {
                        let t = (u + v) / (&one - &uv);
                        if u.is_positive() {
                            (k + 1, Tail::Tan(t))
                        } else {
                            (k - 1, Tail::Tan(t))
                        }
                    }
                }
            }
        };
        ExactAngle {
            pi_multiples: k,
            tail,
        }
    }

    pub fn compare_to_pi(&self) -> Ordering {
        match self.pi_multiples.cmp(&1) {
            Ordering::Less => Ordering::Less,
            Ordering::Greater => Ordering::Greater,
            Ordering::Equal => match &self.tail {
                Tail::HalfPi => Ordering::Greater,
                Tail::Tan(t) => t.cmp(&BigRational::zero()),
            },
        }
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Tail::HalfPi => write!(f, "{}*pi + pi/2", self.pi_multiples),
            Tail::Tan(t) => write!(f, "{}*pi + arctan({})", self.pi_multiples, t),
        }
    }
}

pub fn angle_from_tan(t: BigRational) -> Result<ExactAngle> {
    ExactAngle::from_tan(t)
}

pub fn angle_add(a: &ExactAngle, b: &ExactAngle) -> ExactAngle {
    a.add(b)
}

pub fn compare_to_pi(a: &ExactAngle) -> Ordering {
    a.compare_to_pi()
}

/// `sum_i arctan(tangents_i)`, exactly.
pub fn arctan_sum(tangents: &[BigRational]) -> Result<ExactAngle> {
    tangents.iter().try_fold(ExactAngle::zero(), |acc, t| {
        Ok(acc.add(&ExactAngle::from_tan(t.clone())?))
    })
}

/// Second route to "three positive arctangents sum to pi": with elementary
/// symmetric functions `s1 = t0+t1+t2`, `s3 = t0 t1 t2`, the sine of the sum
/// is proportional to `s1 - s3`, and a sum in `(0, 3pi/2)` with zero sine is
/// exactly `pi`.
pub fn sums_to_pi_by_symmetric_functions(t: &[BigRational; 3]) -> bool {
    let s1 = &t[0] + &t[1] + &t[2];
    let s3 = &t[0] * &t[1] * &t[2];
    s1 == s3
}

fn summand_tangents(numerators: &[BigRational; 3], m: [u64; 3]) -> [BigRational; 3] {
    [0, 1, 2].map(|i| &numerators[i] / BigRational::from_integer(m[i].into()))
}

/// `arctan(p0/m0) + arctan(p1/m1) + arctan(p2/m2)` compared with `pi`.
pub fn compare_sum_to_pi(numerators: &[BigRational; 3], m: [u64; 3]) -> Ordering {
    let t = summand_tangents(numerators, m);
    arctan_sum(&t)
        .expect("numerators and divisors are positive")
        .compare_to_pi()
}

/// All positive-integer triples `(m0, m1, m2)` with
/// `arctan(p0/m0) + arctan(p1/m1) + arctan(p2/m2) = pi`.
///
/// Each summand strictly decreases in its `m`, so once the sum with `m_i = M`
/// and the other two divisors at 1 is below `pi`, no triple with `m_i >= M`
/// can reach `pi`. Those frontiers bound the search.
pub fn solve_pi_triples(numerators: &[BigRational; 3]) -> Vec<[u64; 3]> {
    assert!(
        numerators.iter().all(|p| p.is_positive()),
        "numerators must be positive"
    );
    let bound = search_bounds(numerators);
    let mut out = Vec::new();
    for m0 in 1..bound[0] {
        if compare_sum_to_pi(numerators, [m0, 1, 1]) == Ordering::Less {
            break;
        }
        for m1 in 1..bound[1] {
            if compare_sum_to_pi(numerators, [m0, m1, 1]) == Ordering::Less {
                break;
            }
            for m2 in 1..bound[2] {
                match compare_sum_to_pi(numerators, [m0, m1, m2]) {
                    Ordering::Less => break,
                    Ordering::Equal => out.push([m0, m1, m2]),
                    Ordering::Greater => {}
                }
            }
        }
    }
    out
}

/// Exclusive upper bounds on each `m_i`.
pub fn search_bounds(numerators: &[BigRational; 3]) -> [u64; 3] {
    [0, 1, 2].map(|i| {
        let mut m = [1u64; 3];
        loop {
            if compare_sum_to_pi(numerators, m) == Ordering::Less {
                return m[i];
            }
            m[i] += 1;
        }
    })
}

/// Rows `(m0, m1, m2)` up to the first total `m0 + m1 + m2` at which every
/// triple falls below `pi`; ordered by total, then lexicographically.
pub fn frontier_rows(numerators: &[BigRational; 3]) -> Vec<[u64; 3]> {
    let mut rows = Vec::new();
    let mut total = 3u64;
    loop {
        let mut all_below = true;
        for m0 in 1..=total - 2 {
            for m1 in 1..=total - 1 - m0 {
                let m = [m0, m1, total - m0 - m1];
                if compare_sum_to_pi(numerators, m) != Ordering::Less {
                    all_below = false;
                }
                rows.push(m);
            }
        }
        if all_below {
            return rows;
        }
        total += 1;
    }
}

// ---------------------------------------------------------------------------
// Certified decimals.

/// A closed interval of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    fn scale(&self, k: &BigRational) -> Interval {
        debug_assert!(!k.is_negative());
        Interval {
            lo: &self.lo * k,
            hi: &self.hi * k,
        }
    }

    /// Quotient of two intervals of positive numbers.
    fn div_positive(&self, o: &Interval) -> Interval {
        debug_assert!(self.lo.is_positive() && o.lo.is_positive());
        Interval {
            lo: &self.lo / &o.hi,
            hi: &self.hi / &o.lo,
        }
    }

    /// The decimal rendering with `places` digits after the point, if the
    /// whole interval rounds (half up) to the same string.
    pub fn certified_decimal(&self, places: u32) -> Option<String> {
        let lo = round_half_up(&self.lo, places);
        let hi = round_half_up(&self.hi, places);
        (lo == hi).then(|| format_scaled(&lo, places))
    }
}

fn round_half_up(x: &BigRational, places: u32) -> BigInt {
    let scaled = x * BigRational::from_integer(BigInt::from(10).pow(places));
    (scaled + rat(1, 2)).floor().to_integer()
}

fn format_scaled(n: &BigInt, places: u32) -> String {
    if places == 0 {
        return n.to_string();
    }
    let unit = BigInt::from(10).pow(places);
    let sign = if n.is_negative() { "-" } else { "" };
    let (q, r) = n.abs().div_rem(&unit);
    format!("{sign}{q}.{:0>width$}", r.to_string(), width = places as usize)
}

/// Enclosure of `arctan(x)` for `0 <= x <= 1` using `terms` terms of Euler's
/// series `sum_n 2^(2n) (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1)`.
/// All terms are positive and successive ratios are below `r = x^2/(1+x^2)`,
/// so the tail after `N` terms is at most `a_N / (1 - r)`.
///
/// Terms are carried in fixed point with `terms + 32` fractional bits, rounded
/// down for the lower sum and up for the upper sum.
fn atan_unit_interval(x: &BigRational, terms: u32) -> Interval {
    debug_assert!(!x.is_negative() && *x <= BigRational::one());
    if x.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let (p, q) = (x.numer(), x.denom());
    let p2 = p * p;
    let q2 = q * q;
    let d = &p2 + &q2;
    let scale = BigInt::one() << (terms as usize + 32);
    let first = &scale * p * q;
    let mut lo = first.div_floor(&d);
    let mut hi = first.div_ceil(&d);
    let (mut sum_lo, mut sum_hi) = (BigInt::zero(), BigInt::zero());
    for n in 0..terms {
        sum_lo += &lo;
        sum_hi += &hi;
        let num = BigInt::from(2 * n + 2) * &p2;
        let den = BigInt::from(2 * n + 3) * &d;
        lo = (lo * &num).div_floor(&den);
        hi = (hi * &num).div_ceil(&den);
    }
    let tail = (hi * &d).div_ceil(&q2);
    Interval {
        lo: BigRational::new(sum_lo, scale.clone()),
        hi: BigRational::new(sum_hi + tail, scale),
    }
}

/// Enclosure of `pi` from `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi_interval(terms: u32) -> Interval {
    let a = atan_unit_interval(&rat(1, 5), terms).scale(&rat(16, 1));
    let b = atan_unit_interval(&rat(1, 239), terms).scale(&rat(4, 1));
    a.sub(&b)
}

/// Enclosure of `arctan(x)` for rational `x >= 0`.
pub fn atan_interval(x: &BigRational, terms: u32) -> Interval {
    assert!(!x.is_negative(), "atan_interval expects x >= 0");
    if *x <= BigRational::one() {
        atan_unit_interval(x, terms)
    } else {
        // arctan(x) = pi/2 - arctan(1/x)
        pi_interval(terms)
            .scale(&rat(1, 2))
            .sub(&atan_unit_interval(&x.recip(), terms))
    }
}

/// Enclosure of `(1/pi) * sum_i arctan(tangents_i)`.
pub fn sum_over_pi_interval(tangents: &[BigRational], terms: u32) -> Interval {
    let sum = tangents
        .iter()
        .map(|t| atan_interval(t, terms))
        .fold(Interval::point(BigRational::zero()), |acc, i| acc.add(&i));
    sum.div_positive(&pi_interval(terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub m: [u64; 3],
    /// Enclosure of `(sum of the three arctangents) / pi`.
    pub enclosure: Interval,
    /// Six-decimal rendering, certified by `enclosure`.
    pub decimal: String,
    /// Exact comparison of the sum with `pi`.
    pub versus_pi: Ordering,
}

impl TableRow {
    /// Certified rendering at another precision.
    pub fn decimal_at(&self, places: u32) -> Option<String> {
        self.enclosure.certified_decimal(places)
    }
}

pub const TABLE_PLACES: u32 = 6;

/// Certified values of `(arctan(p0/m0) + arctan(p1/m1) + arctan(p2/m2)) / pi`
/// for each row, to six decimal places.
pub fn render_table(numerators: &[BigRational; 3], rows: &[[u64; 3]]) -> Vec<TableRow> {
    rows.iter()
        .map(|&m| {
            let t = summand_tangents(numerators, m);
            let (enclosure, decimal) = certify(&t, TABLE_PLACES);
            TableRow {
                m,
                enclosure,
                decimal,
                versus_pi: compare_sum_to_pi(numerators, m),
            }
        })
        .collect()
}

fn certify(t: &[BigRational], places: u32) -> (Interval, String) {
    let mut terms = 48;
    loop {
        let enclosure = sum_over_pi_interval(t, terms);
        if let Some(s) = enclosure.certified_decimal(places) {
            return (enclosure, s);
        }
        // Only a value sitting exactly on a rounding boundary never certifies.
        assert!(terms < 1 << 12, "cannot certify {places} decimals");
        terms *= 2;
    }
}

/// Numerators used for a side-length triple under the circumcenter
/// hypothesis: an even side `l` contributes `l/2` (its vertex-to-orthocenter
/// length is even), an odd side contributes `l`.
pub fn halved_numerators(sides: [u64; 3]) -> [BigRational; 3] {
    sides.map(|l| {
        if l % 2 == 0 {
            BigRational::from_integer((l / 2).into())
        } else {
            BigRational::from_integer(l.into())
        }
    })
}

pub fn integer_numerators(p: [u64; 3]) -> [BigRational; 3] {
    p.map(|v| BigRational::from_integer(v.into()))
}

/// Lossy conversion for diagnostics only.
pub fn approx_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
