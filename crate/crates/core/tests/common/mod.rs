#![allow(dead_code)]

use moddata::constructors::{radford_datum, semion_datum, trivial_datum};
use moddata::{arith, CycloNum, ModularDatum, Rational};
use proptest::prelude::*;

pub fn int(n: i64) -> CycloNum {
    CycloNum::from_integer(n)
}

pub fn z(m: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(m, k)
}

pub fn frac(p: i64, q: i64) -> CycloNum {
    CycloNum::from_rational(&Rational::new(p.into(), q.into()))
}

/// `(μS, ζT)`.
pub fn rescaled(d: &ModularDatum, mu: &CycloNum, zeta: &CycloNum) -> ModularDatum {
    ModularDatum::new(
        d.labels().to_vec(),
        d.unit(),
        d.star_perm().to_vec(),
        d.s_matrix().scale(mu).to_rows(),
        d.t_diag().iter().map(|t| t * zeta).collect(),
    )
    .unwrap()
}

/// The example data every suite runs over.
pub fn examples() -> Vec<(&'static str, ModularDatum)> {
    let semion = semion_datum();
    vec![
        ("trivial", trivial_datum()),
        ("semion", semion.clone()),
        ("radford-3", radford_datum(3, 1).unwrap()),
        ("radford-5", radford_datum(5, 1).unwrap()),
        ("radford-5-e2", radford_datum(5, 2).unwrap()),
        ("radford-7", radford_datum(7, 1).unwrap()),
        ("semion-twisted", rescaled(&semion, &int(1), &z(3, 1))),
        ("radford-3-twisted", rescaled(&radford_datum(3, 1).unwrap(), &int(1), &z(3, 1))),
        ("semion-x-semion", semion.kronecker_product(&semion).unwrap()),
    ]
}

/// `S` and `1/T` read off the R-matrix `R = (1/n) sum ζ^{-ij} g^i ⊗ g^j`
/// of the cyclic group ring, with characters `χ_a(g^m) = ζ^{am}`: entries of
/// `(χ_a ⊗ χ_{b*})(R'R)` and `χ_a(u)` for the Drinfeld element `u`.
pub fn r_matrix_oracle(n: u64) -> (Vec<Vec<CycloNum>>, Vec<CycloNum>) {
    let ni = n as i64;
    let zeta = |k: i64| z(n as u32, k.rem_euclid(ni));
    let inv_n2 = frac(1, ni * ni);
    let inv_n = frac(1, ni);
    let s = (0..ni)
        .map(|a| {
            (0..ni)
                .map(|b| {
                    let c = (ni - b) % ni;
                    let mut acc = int(0);
                    for i in 0..ni {
                        for j in 0..ni {
                            for k in 0..ni {
                                for l in 0..ni {
                                    acc = acc + zeta(-i * j - k * l + a * (j + k) + c * (i + l));
                                }
                            }
                        }
                    }
                    &acc * &inv_n2
                })
                .collect()
        })
        .collect();
    let u = (0..ni)
        .map(|a| {
            let mut acc = int(0);
            for i in 0..ni {
                for j in 0..ni {
                    acc = acc + zeta(-i * j + a * (i - j));
                }
            }
            &acc * &inv_n
        })
        .collect();
    (s, u)
}

/// Legendre symbol by Euler's criterion, for odd primes `p`.
pub fn euler_legendre(q: i64, p: u64) -> i8 {
    let a = q.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Jacobi symbol as the product of Legendre symbols over the factorization.
pub fn jacobi_oracle(q: i64, n: u64) -> i8 {
    arith::factorize(n)
        .into_iter()
        .map(|(p, e)| euler_legendre(q, p).pow(e))
        .product()
}

/// `sum_{i<n} ζ_n^{i^2}` written out term by term.
pub fn gauss_oracle(n: u64) -> CycloNum {
    (0..n).fold(int(0), |acc, i| acc + z(n as u32, ((i * i) % n) as i64))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// A random element of `Q(ζ_M)` in the power basis.
pub fn cyclo_at(m: u32) -> impl Strategy<Value = CycloNum> {
    let phi = arith::totient(m as u64) as usize;
    prop::collection::vec(small_rational(), phi)
        .prop_map(move |c| CycloNum::from_coeffs(m, &c).unwrap())
}

pub fn cyclo() -> impl Strategy<Value = CycloNum> {
    (1u32..=24).prop_flat_map(cyclo_at)
}

/// Two elements of the same field.
pub fn cyclo_pair() -> impl Strategy<Value = (CycloNum, CycloNum)> {
    (1u32..=24).prop_flat_map(|m| (cyclo_at(m), cyclo_at(m)))
}

/// An element with two units modulo its conductor.
pub fn cyclo_with_units() -> impl Strategy<Value = (CycloNum, i64, i64)> {
    (1u32..=24).prop_flat_map(|m| {
        let units = arith::units(m as u64);
        (
            cyclo_at(m),
            prop::sample::select(units.clone()),
            prop::sample::select(units),
        )
            .prop_map(|(x, q, r)| (x, q as i64, r as i64))
    })
}
