//! Exact arithmetic in cyclotomic fields `Q_M = Q[x]/(Φ_M(x))`.
//!
//! Elements are stored in the power basis `1, ζ_M, ..., ζ_M^{φ(M)-1}` as an
//! integer numerator vector over one positive common denominator, which keeps
//! the representation canonical: two elements of the same conductor are equal
//! iff their stored vectors agree. Binary operations lift both operands to the
//! least common multiple of their conductors.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::{Error, Result};

pub type Rational = BigRational;

/// Precomputed data for one conductor: `Φ_M` and the reduction of every power
/// `x^e`, `0 <= e < M`, into the power basis.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    phi: usize,
    cyclotomic_poly: Vec<i64>,
    reduce: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let poly = cyclotomic_polynomial(conductor as u64);
        let phi = poly.len() - 1;
        let m = conductor as usize;
        let mut reduce = Vec::with_capacity(m);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            reduce.push(cur.clone());
            // multiply by x and reduce the overflow term with the monic Φ_M
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] = cur[j]
                        .checked_sub(top.checked_mul(poly[j]).expect("overflow"))
                        .expect("overflow in cyclotomic reduction table");
                }
            }
        }
        Arc::new(CycloField {
            conductor,
            phi,
            cyclotomic_poly: poly,
            reduce,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Φ_M`, constant term first.
    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.cyclotomic_poly
    }

    /// Reduce an exponent-indexed accumulator (length `M`, exponents taken
    /// mod `M`) into the power basis.
    fn reduce_acc(&self, acc: Vec<BigInt>) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        for (e, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < self.phi {
                out[e] += c;
            } else {
                for (o, &r) in out.iter_mut().zip(&self.reduce[e]) {
                    if r != 0 {
                        *o += &c * r;
                    }
                }
            }
        }
        out
    }
}

/// `Φ_m` by exact division of `x^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
        // den is monic
        let mut rem = num.to_vec();
        let dn = den.len() - 1;
        let qlen = num.len() - dn;
        let mut q = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dn];
            q[i] = c;
            if c != 0 {
                for (j, &d) in den.iter().enumerate() {
                    rem[i + j] -= c * d;
                }
            }
        }
        debug_assert!(rem.iter().all(|&r| r == 0));
        q
    }
    let ds = arith::divisors(m);
    let mut polys: Vec<(u64, Vec<i64>)> = Vec::with_capacity(ds.len());
    for &d in &ds {
        let mut p = vec![0i64; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        for (e, q) in &polys {
            if d % e == 0 {
                p = div_exact(&p, q);
            }
        }
        polys.push((d, p));
    }
    polys.pop().map(|(_, p)| p).unwrap_or_else(|| vec![-1, 1])
}

/// Exact element of the cyclotomic field `Q_M`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloNum { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -core::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        if let Ok(den) = u64::try_from(&self.den) {
            let small: Option<Vec<i64>> = self.num.iter().map(|c| i64::try_from(c).ok()).collect();
            if let Some(num) = small {
                let g = num
                    .iter()
                    .fold(den, |g, &c| if g == 1 { 1 } else { arith::gcd(g, c.unsigned_abs()) });
                if g != 1 {
                    self.den = BigInt::from(den / g);
                    for (c, v) in self.num.iter_mut().zip(num) {
                        *c = BigInt::from(v / g as i64);
                    }
                }
                return;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::in_field(CycloField::new(conductor), Rational::zero())
    }

    pub fn one(conductor: u32) -> Self {
        Self::in_field(CycloField::new(conductor), Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// A rational number, stored at conductor 1.
    pub fn from_rational(r: &Rational) -> Self {
        Self::in_field(CycloField::new(1), r.clone())
    }

    fn in_field(field: Arc<CycloField>, r: Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.phi];
        num[0] = r.numer().clone();
        Self::from_parts(field, num, r.denom().clone())
    }

    /// Build from power-basis coordinates; `coeffs` must have length `φ(M)`.
    pub fn from_coeffs(conductor: u32, coeffs: &[Rational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::BadConductor { from: 0, to: 0 });
        }
        let field = CycloField::new(conductor);
        if coeffs.len() != field.phi {
            return Err(Error::DimensionMismatch {
                expected: field.phi,
                found: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(field, num, den))
    }

    /// `ζ_M^k`, reduced to canonical form.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let field = CycloField::new(conductor);
        Self::root_in(&field, k)
    }

    /// `ζ_M^k` inside an already constructed field.
    pub fn root_in(field: &Arc<CycloField>, k: i64) -> Self {
        let e = arith::rem(k, field.conductor as u64) as usize;
        let num = field.reduce[e].iter().map(|&c| BigInt::from(c)).collect();
        CycloNum {
            field: field.clone(),
            num,
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Power-basis coordinates, `φ(M)` of them.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Zero in the same field.
    /// Integer numerators over the common denominator.
    pub(crate) fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn zero_like(&self) -> Self {
        CycloNum::in_field(self.field.clone(), Rational::zero())
    }

    /// One in the same field.
    pub fn one_like(&self) -> Self {
        CycloNum::in_field(self.field.clone(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The same element represented at conductor `target`, which must be a
    /// multiple of the current conductor.
    pub fn lift_conductor(&self, target: u32) -> Result<Self> {
        if target == 0 || target % self.conductor() != 0 {
            return Err(Error::BadConductor {
                from: self.conductor(),
                to: target,
            });
        }
        if target == self.conductor() {
            return Ok(self.clone());
        }
        Ok(self.lift_into(&CycloField::new(target)))
    }

    fn lift_into(&self, field: &Arc<CycloField>) -> Self {
        if Arc::ptr_eq(field, &self.field) || field.conductor == self.conductor() {
            return self.clone();
        }
        let step = (field.conductor / self.conductor()) as usize;
        let mut acc = vec![BigInt::zero(); field.conductor as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc[j * step] = c.clone();
            }
        }
        CycloNum {
            field: field.clone(),
            num: field.reduce_acc(acc),
            den: self.den.clone(),
        }
    }

    /// Lift both operands to a common field, reusing an existing field when
    /// one conductor divides the other.
    fn align<'a>(
        a: &'a CycloNum,
        b: &'a CycloNum,
    ) -> (alloc::borrow::Cow<'a, CycloNum>, alloc::borrow::Cow<'a, CycloNum>) {
        use alloc::borrow::Cow;
        let (ma, mb) = (a.conductor(), b.conductor());
        if ma == mb {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let field = if mb % ma == 0 {
            b.field.clone()
        } else if ma % mb == 0 {
            a.field.clone()
        } else {
            CycloField::new(arith::lcm(ma as u64, mb as u64) as u32)
        };
        let la = if a.conductor() == field.conductor {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.lift_into(&field))
        };
        let lb = if b.conductor() == field.conductor {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.lift_into(&field))
        };
        (la, lb)
    }

    /// Represent `self` in the field of `other` when that is a multiple of the
    /// current conductor; otherwise at the lcm.
    pub fn lift_like(&self, other: &CycloNum) -> Self {
        if other.conductor() % self.conductor() == 0 {
            self.lift_into(&other.field)
        } else {
            let m = arith::lcm(self.conductor() as u64, other.conductor() as u64) as u32;
            self.lift_into(&CycloField::new(m))
        }
    }

    /// Apply `σ_q : ζ_M ↦ ζ_M^q`.
    pub fn galois_apply(&self, q: i64) -> Result<Self> {
        let m = self.conductor() as u64;
        if !arith::is_unit(q, m) {
            return Err(Error::NotAUnit { q, modulus: m });
        }
        let q = arith::rem(q, m) as usize;
        if q == 1 || m <= 2 {
            return Ok(self.clone());
        }
        let mut acc = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc[(j * q) % m as usize] += c;
            }
        }
        Ok(CycloNum {
            field: self.field.clone(),
            num: self.field.reduce_acc(acc),
            den: self.den.clone(),
        })
    }

    /// `σ_q` for `q` a unit modulo `modulus`, where the element is known to
    /// lie in `Q_modulus` but may be stored at a larger conductor.
    pub fn galois_apply_mod(&self, q: i64, modulus: u64) -> Result<Self> {
        let lifted = arith::lift_unit(q, modulus, self.conductor() as u64).ok_or(
            Error::NotAUnit {
                q,
                modulus,
            },
        )?;
        self.galois_apply(lifted as i64)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.phi == 1 {
            return Ok(CycloNum::from_parts(
                self.field.clone(),
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        let a: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let modulus: Vec<Rational> = self
            .field
            .cyclotomic_poly
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let u = poly::inverse_mod(&a, &modulus);
        // a^{-1} as a polynomial, times the stored denominator
        let mut coeffs = vec![Rational::zero(); self.field.phi];
        for (i, c) in u.into_iter().enumerate() {
            coeffs[i] = c * Rational::from_integer(self.den.clone());
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloNum::from_parts(self.field.clone(), num, den))
    }

    pub fn div(&self, other: &CycloNum) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            Ok(self.inv()?.pow_u(e.unsigned_abs()))
        } else {
            Ok(self.pow_u(e as u64))
        }
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::in_field(self.field.clone(), Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloNum::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// The multiplicative order if this is a root of unity. Every root of unity
    /// in `Q_M` has order dividing `lcm(2, M)`, so that bound suffices.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = arith::lcm(2, self.conductor() as u64);
        if !self.pow_u(bound).is_one() {
            return None;
        }
        arith::divisors(bound)
            .into_iter()
            .find(|&d| self.pow_u(d).is_one())
    }

    /// The rational value, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The integer value, if this is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CycloNum::align(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({}; {})", self.conductor(), self)
    }
}

impl fmt::Display for CycloNum {
    /// Sum of `c*z^k` terms with `z = ζ_M`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", abs)?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.conductor())?;
                    } else {
                        write!(f, "z{}^{}", self.conductor(), k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::align(self, rhs);
        let field = a.field.clone();
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return CycloNum::from_parts(field, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        CycloNum::from_parts(field, num, &a.den * &b.den)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        let (a, b) = CycloNum::align(self, rhs);
        let field = a.field.clone();
        if a.is_zero() || b.is_zero() {
            return CycloNum::in_field(field, Rational::zero());
        }
        if field.phi == 1 {
            return CycloNum::from_parts(
                field,
                vec![&a.num[0] * &b.num[0]],
                &a.den * &b.den,
            );
        }
        if let Some(num) = mul_small(&field, &a.num, &b.num) {
            return CycloNum::from_parts(field, num, &a.den * &b.den);
        }
        let m = field.conductor as usize;
        let mut acc = vec![BigInt::zero(); m];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let e = i + j;
                let e = if e >= m { e - m } else { e };
                acc[e] += x * y;
            }
        }
        let num = field.reduce_acc(acc);
        CycloNum::from_parts(field, num, &a.den * &b.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Numerator product in `i128` when every coefficient fits in 32 bits;
/// `None` on overflow, leaving the caller to use `BigInt`.
fn mul_small(field: &CycloField, a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let small = |v: &[BigInt]| -> Option<Vec<i64>> {
        v.iter()
            .map(|x| i32::try_from(x).ok().map(i64::from))
            .collect()
    };
    let (a, b) = (small(a)?, small(b)?);
    let m = field.conductor as usize;
    let mut acc = vec![0i128; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let e = i + j;
                acc[if e >= m { e - m } else { e }] += (x * y) as i128;
            }
        }
    }
    let mut out = vec![0i128; field.phi];
    for (e, c) in acc.into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        if e < field.phi {
            out[e] = out[e].checked_add(c)?;
        } else {
            for (o, &r) in out.iter_mut().zip(&field.reduce[e]) {
                if r != 0 {
                    *o = o.checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

/// `√n` as a cyclotomic number: `k * ∏ √p` over the squarefree part, with
/// `√2 = ζ_8 + ζ_8^{-1}` and `√p` built from the quadratic Gauss sum at
/// `ζ_p` (divided by `ζ_4` when `p ≡ 3 mod 4`).
pub fn sqrt_integer(n: u64) -> CycloNum {
    assert!(n >= 1, "sqrt_integer needs n >= 1");
    let (k, l) = arith::square_decompose(n);
    let mut acc = CycloNum::from_integer(k as i64);
    for (p, _) in arith::factorize(l) {
        let root = if p == 2 {
            &CycloNum::root_of_unity(8, 1) + &CycloNum::root_of_unity(8, -1)
        } else {
            let field = CycloField::new(p as u32);
            let mut g = CycloNum::zero(p as u32);
            for i in 0..p {
                g = &g + &CycloNum::root_in(&field, ((i * i) % p) as i64);
            }
            if p % 4 == 1 {
                g
            } else {
                // 1/ζ_4 = -ζ_4
                &g * &(-CycloNum::root_of_unity(4, 1))
            }
        };
        acc = &acc * &root;
    }
    acc
}

/// The Jacobi symbol `(q | n)` for odd positive `n`.
pub fn jacobi_symbol(q: i64, n: u64) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    let mut a = arith::rem(q, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

mod poly {
    //! Dense polynomials over Q, constant term first.
    use super::Rational;
    use alloc::vec::Vec;
    use num_traits::{One, Zero};

    fn trim(p: &mut Vec<Rational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn is_zero(p: &[Rational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn sub_mul(a: &[Rational], b: &[Rational], q: &[Rational]) -> Vec<Rational> {
        // a - b*q
        let len = a.len().max(b.len() + q.len() - 1);
        let mut out: Vec<Rational> = (0..len).map(|_| Rational::zero()).collect();
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, x) in b.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (alloc::vec![Rational::zero()], r);
        }
        let lead = b[db].clone();
        let mut q: Vec<Rational> = (0..r.len() - db).map(|_| Rational::zero()).collect();
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if !c.is_zero() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] -= &c * y;
                }
            }
            q[i] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    /// `u` with `u*a ≡ 1 (mod m)`, assuming `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
        let deg = m.len() - 1;
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1) = (alloc::vec![Rational::zero()], alloc::vec![Rational::one()]);
        while !(r1.len() == 1 || is_zero(&r1)) {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        assert!(!is_zero(&r1), "element shares a factor with the modulus");
        let c = r1[0].clone();
        let (_, mut u) = divrem(&s1, m);
        for x in &mut u {
            *x = &*x / &c;
        }
        u.resize(deg, Rational::zero());
        u
    }
}
