//! Exact arithmetic in the quadratic field Q(√5), plus 3-vectors and 3×3
//! matrices over it.
//!
//! Every value is kept in canonical form `a + b√5` with `a`, `b` reduced
//! rationals, so structural equality is value equality and values can be
//! hashed. Nothing in here ever compares with an epsilon.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element `a + b√5` of Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt5 {
    a: Rational,
    b: Rational,
}

impl QSqrt5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt5 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt5::new(Rational::from_integer(n.into()), Rational::zero())
    }

    /// `(an/ad) + (bn/bd)√5`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QSqrt5::new(
            Rational::new(an.into(), ad.into()),
            Rational::new(bn.into(), bd.into()),
        )
    }

    pub fn zero() -> Self {
        QSqrt5::default()
    }

    pub fn one() -> Self {
        QSqrt5::from_int(1)
    }

    pub fn sqrt5() -> Self {
        QSqrt5::from_ratios(0, 1, 1, 1)
    }

    /// The golden ratio τ = (1 + √5)/2.
    pub fn tau() -> Self {
        QSqrt5::from_ratios(1, 2, 1, 2)
    }

    /// The conjugate σ = (1 − √5)/2.
    pub fn sigma() -> Self {
        QSqrt5::from_ratios(1, 2, -1, 2)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√5`.
    pub fn conj(&self) -> Self {
        QSqrt5::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero in Q(√5)".into()));
        }
        // 1/(a + b√5) = (a − b√5)/(a² − 5b²); the norm is nonzero since √5 is irrational.
        let n = self.norm();
        Ok(QSqrt5::new(&self.a / &n, -&self.b / &n))
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: compare a² with 5b².
        let five_b2 = Rational::from_integer(5.into()) * &self.b * &self.b;
        match (&self.a * &self.a).cmp(&five_b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√5 is irrational"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QSqrt5::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Nearest double to `a + b√5`.
    ///
    /// √5 is replaced by a rational approximation accurate to 10⁻⁶⁰ before
    /// the single final rounding, so cancellation between the two parts
    /// cannot lose precision.
    pub fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return self.a.to_f64().unwrap_or(f64::NAN);
        }
        let approx = &self.a + &self.b * sqrt5_approx();
        approx.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact four-integer encoding `[a_num, a_den, b_num, b_den]`.
    pub fn to_quadruple(&self) -> [BigInt; 4] {
        [
            self.a.numer().clone(),
            self.a.denom().clone(),
            self.b.numer().clone(),
            self.b.denom().clone(),
        ]
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sqrt5_approx() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    CELL.get_or_init(|| {
        let scale = BigInt::from(10).pow(60);
        let root = (BigInt::from(5) * &scale * &scale).sqrt();
        Rational::new(root, scale)
    })
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<QSqrt5> for QSqrt5 {
            type Output = QSqrt5;
            fn $method(self, rhs: QSqrt5) -> QSqrt5 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt5> for QSqrt5 {
            type Output = QSqrt5;
            fn $method(self, rhs: &'a QSqrt5) -> QSqrt5 {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QSqrt5> for &'a QSqrt5 {
            type Output = QSqrt5;
            fn $method(self, rhs: QSqrt5) -> QSqrt5 {
                self.$method(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;
    fn add(self, rhs: &'b QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'b> Sub<&'b QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, rhs: &'b QSqrt5) -> QSqrt5 {
        QSqrt5::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'b> Mul<&'b QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, rhs: &'b QSqrt5) -> QSqrt5 {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QSqrt5::new(&self.a * &rhs.a, Rational::zero());
        }
        let five = Rational::from_integer(5.into());
        QSqrt5::new(
            &self.a * &rhs.a + five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

/// Panics on division by zero; use [`QSqrt5::inv`] for a fallible inverse.
impl<'b> Div<&'b QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;
    fn div(self, rhs: &'b QSqrt5) -> QSqrt5 {
        self * &rhs.inv().expect("division by zero in Q(√5)")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-&self.a, -&self.b)
    }
}

impl From<i64> for QSqrt5 {
    fn from(n: i64) -> Self {
        QSqrt5::from_int(n)
    }
}

impl From<Rational> for QSqrt5 {
    fn from(r: Rational) -> Self {
        QSqrt5::new(r, Rational::zero())
    }
}

impl fmt::Display for QSqrt5 {
    /// Writes the same `p/q+r/s*sqrt5` syntax that [`FromStr`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}*sqrt5", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}*sqrt5", self.a, self.b)
                }
            }
        }
    }
}

impl fmt::Debug for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QSqrt5 {
    type Err = Error;

    /// Parses sums of terms such as `1/2`, `-3`, `1/2*sqrt5`, `sqrt5`,
    /// `-sqrt5/2`, e.g. `"1/2+1/2*sqrt5"`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse(format!("empty number {s:?}")));
        }
        let bad = || Error::Parse(format!("malformed Q(sqrt5) literal {s:?}"));

        // Split into signed terms.
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = QSqrt5::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let mut coef = Rational::one();
            let mut irrational = false;
            let mut divide = false;
            let mut rest = body;
            loop {
                let end = rest.find(['*', '/']).unwrap_or(rest.len());
                let factor = &rest[..end];
                if factor == "sqrt5" {
                    if irrational || divide {
                        return Err(bad());
                    }
                    irrational = true;
                } else {
                    let n: BigInt = factor.parse().map_err(|_| bad())?;
                    if divide {
                        if n.is_zero() {
                            return Err(Error::Parse(format!("zero denominator in {s:?}")));
                        }
                        coef /= Rational::from_integer(n);
                    } else {
                        coef *= Rational::from_integer(n);
                    }
                }
                if end == rest.len() {
                    break;
                }
                divide = rest.as_bytes()[end] == b'/';
                rest = &rest[end + 1..];
            }
            if neg {
                coef = -coef;
            }
            acc = if irrational {
                acc + QSqrt5::new(Rational::zero(), coef)
            } else {
                acc + QSqrt5::new(coef, Rational::zero())
            };
        }
        Ok(acc)
    }
}

impl Serialize for QSqrt5 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QSqrt5 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point or direction in E³ with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Vec3(pub [QSqrt5; 3]);

impl Vec3 {
    pub fn new(x: QSqrt5, y: QSqrt5, z: QSqrt5) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(QSqrt5::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> QSqrt5 {
        &(&self.0[0] * &other.0[0]) + &(&(&self.0[1] * &other.0[1]) + &(&self.0[2] * &other.0[2]))
    }

    pub fn norm_sq(&self) -> QSqrt5 {
        self.dot(self)
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        Vec3([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    pub fn scale(&self, k: &QSqrt5) -> Vec3 {
        Vec3(self.0.clone().map(|x| &x * k))
    }

    /// Row-vector product `self · m`.
    pub fn mul_mat(&self, m: &Mat3) -> Vec3 {
        m.transpose().apply(self)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.0[0].to_f64(), self.0[1].to_f64(), self.0[2].to_f64()]
    }
}

impl<'b> Add<&'b Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &'b Vec3) -> Vec3 {
        Vec3([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }
}

impl<'b> Sub<&'b Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &'b Vec3) -> Vec3 {
        Vec3([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.clone().map(|x| -x))
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Row-major 3×3 matrix over Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Mat3(pub [[QSqrt5; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3::diag(QSqrt5::one(), QSqrt5::one(), QSqrt5::one())
    }

    pub fn diag(a: QSqrt5, b: QSqrt5, c: QSqrt5) -> Self {
        let z = QSqrt5::zero;
        Mat3([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    pub fn from_rows(rows: [[QSqrt5; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn get(&self, r: usize, c: usize) -> &QSqrt5 {
        &self.0[r][c]
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone())))
    }

    pub fn mul(&self, n: &Mat3) -> Mat3 {
        let (a, b) = (&self.0, &n.0);
        Mat3(std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                &(&(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c])) + &(&a[r][2] * &b[2][c])
            })
        }))
    }

    /// Column action `self · v`.
    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        Vec3(std::array::from_fn(|r| {
            &(&(&m[r][0] * &v.0[0]) + &(&m[r][1] * &v.0[1])) + &(&m[r][2] * &v.0[2])
        }))
    }

    pub fn scale(&self, k: &QSqrt5) -> Mat3 {
        Mat3(self.0.clone().map(|row| row.map(|x| &x * k)))
    }

    pub fn sub(&self, n: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|r| std::array::from_fn(|c| &self.0[r][c] - &n.0[r][c])))
    }

    pub fn trace(&self) -> QSqrt5 {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn det(&self) -> QSqrt5 {
        let r = &self.0;
        let row = |i: usize| Vec3(r[i].clone());
        row(0).dot(&row(1).cross(&row(2)))
    }

    /// `mᵀm = I`, decided exactly.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Mat3::identity()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        self.0.clone().map(|row| row.map(|x| x.to_f64()))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Rank of a list of row vectors, by exact elimination.
pub fn rank(rows: &[Vec3]) -> usize {
    let mut m: Vec<[QSqrt5; 3]> = rows.iter().map(|r| r.0.clone()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..3 {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{x : A x = 0}` for a matrix given by its rows.
///
/// Each basis vector is scaled so its first nonzero coordinate is 1.
pub fn null_space(rows: &[Vec3]) -> Vec<Vec3> {
    let mut m: Vec<[QSqrt5; 3]> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..3 {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for c in 0..3 {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..3 {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v: [QSqrt5; 3] = Default::default();
            v[f] = QSqrt5::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            normalize_leading(Vec3(v))
        })
        .collect()
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_leading(v: Vec3) -> Vec3 {
    match v.0.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.scale(&inv)
        }
        None => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QSqrt5 {
        s.parse().unwrap()
    }

    #[test]
    fn golden_identities() {
        let (t, s) = (QSqrt5::tau(), QSqrt5::sigma());
        assert_eq!(&t * &s, QSqrt5::from_int(-1));
        assert_eq!(&t + &s, QSqrt5::one());
        assert_eq!(&t * &t, &t + &QSqrt5::one());
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        assert!(matches!(QSqrt5::zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(QSqrt5::zero().to_f64(), 0.0);
        assert!((QSqrt5::tau().to_f64() - 1.618033988749895).abs() < 1e-12);
        assert!((QSqrt5::sigma().to_f64() - -0.6180339887498949).abs() < 1e-12);
        // Heavy cancellation: τ^40 + σ^40 is the Lucas number L_40.
        let l40 = &QSqrt5::tau().pow(40) + &QSqrt5::sigma().pow(40);
        assert_eq!(l40, QSqrt5::from_int(228_826_127));
        let tiny = QSqrt5::sigma().pow(40);
        let rel = (tiny.to_f64() - 0.618033988749895_f64.powi(40)).abs() / tiny.to_f64();
        // The reference itself carries powi rounding; naive evaluation would be off by O(1).
        assert!(rel < 1e-12, "{rel}");
    }

    #[test]
    fn exact_sign_and_order() {
        assert_eq!(QSqrt5::sigma().signum(), -1);
        assert_eq!(QSqrt5::tau().signum(), 1);
        assert_eq!(q("9/4-sqrt5").signum(), 1);
        assert_eq!(q("2-sqrt5").signum(), -1);
        assert!(QSqrt5::sigma() < QSqrt5::zero());
        assert!(q("9/4") > QSqrt5::sqrt5());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("1/2+1/2*sqrt5"), QSqrt5::tau());
        assert_eq!(q("1/2 - sqrt5/2"), QSqrt5::sigma());
        assert_eq!(q("-sqrt5"), -QSqrt5::sqrt5());
        assert_eq!(q("0"), QSqrt5::zero());
        for x in [QSqrt5::tau(), QSqrt5::sigma(), q("-3/7+2/9*sqrt5"), q("-5*sqrt5")] {
            assert_eq!(q(&x.to_string()), x);
        }
        assert!("1/0".parse::<QSqrt5>().is_err());
        assert!("sqrt5*sqrt5".parse::<QSqrt5>().is_err());
        assert!("abc".parse::<QSqrt5>().is_err());
        assert!("".parse::<QSqrt5>().is_err());
    }

    #[test]
    fn orthogonality() {
        assert!(Mat3::identity().is_orthogonal());
        assert!(!Mat3::identity().scale(&QSqrt5::from_int(2)).is_orthogonal());
        let h = QSqrt5::from_ratios(1, 2, 0, 1);
        let (t, s) = (QSqrt5::tau(), QSqrt5::sigma());
        let one = QSqrt5::one();
        let phi1_s1 = Mat3([
            [one.clone(), -&t, -&s],
            [-&t, s.clone(), one.clone()],
            [-&s, one.clone(), t.clone()],
        ])
        .scale(&h);
        assert!(phi1_s1.is_orthogonal());
    }

    #[test]
    fn null_space_of_reflection_pair() {
        let diag = |a, b, c| Mat3::diag(QSqrt5::from_int(a), QSqrt5::from_int(b), QSqrt5::from_int(c));
        let id = Mat3::identity();
        let a = diag(-1, 1, 1).sub(&id);
        let b = diag(1, -1, 1).sub(&id);
        let rows: Vec<Vec3> = a.0.iter().chain(b.0.iter()).map(|r| Vec3(r.clone())).collect();
        let ns = null_space(&rows);
        assert_eq!(ns, vec![Vec3::new(QSqrt5::zero(), QSqrt5::zero(), QSqrt5::one())]);
        assert_eq!(rank(&rows), 2);
        assert_eq!(null_space(&[]).len(), 3);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn arb_q() -> impl Strategy<Value = QSqrt5> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| QSqrt5::new(a, b))
    }

    fn arb_vec() -> impl Strategy<Value = Vec3> {
        (arb_q(), arb_q(), arb_q()).prop_map(|(x, y, z)| Vec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn field_laws(x in arb_q(), y in arb_q(), z in arb_q()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt5::one());
            }
        }

        #[test]
        fn canonical_form(x in arb_q(), y in arb_q()) {
            // Build x two ways: directly, and as (x + y) − y.
            let roundabout = &(&x + &y) - &y;
            prop_assert_eq!(&roundabout, &x);
            prop_assert_eq!(roundabout.rational_part(), x.rational_part());
        }

        #[test]
        fn order_matches_floats(x in arb_q(), y in arb_q()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x < y, fx < fy);
            }
        }

        #[test]
        fn orthogonal_action_preserves_inner_products(u in arb_vec(), v in arb_vec(), k in 0usize..3) {
            let h = QSqrt5::from_ratios(1, 2, 0, 1);
            let (t, s) = (QSqrt5::tau(), QSqrt5::sigma());
            let one = QSqrt5::one();
            let ms = [
                Mat3::diag(-one.clone(), one.clone(), one.clone()),
                Mat3([
                    [one.clone(), -&s, -&t],
                    [-&s, t.clone(), one.clone()],
                    [-&t, one.clone(), s.clone()],
                ]).scale(&h),
                Mat3::diag(one.clone(), -one.clone(), one.clone()),
            ];
            let m = &ms[k];
            prop_assert!(m.is_orthogonal());
            prop_assert_eq!(m.apply(&u).dot(&m.apply(&v)), u.dot(&v));
        }
    }
}
