//! Concrete modular data, classical Gauss sums and cyclic 3-cocycles.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith;
use crate::check::Report;
use crate::cyclotomic::{jacobi_symbol, CycloField, CycloNum};
use crate::datum::ModularDatum;
use crate::{Error, Result};

/// The one-point datum `I = {o}`, `S = (1)`, `T = (1)`.
pub fn trivial_datum() -> ModularDatum {
    ModularDatum::new(
        alloc::vec!["o".into()],
        0,
        alloc::vec![0],
        alloc::vec![alloc::vec![CycloNum::from_integer(1)]],
        alloc::vec![CycloNum::from_integer(1)],
    )
    .expect("well formed")
}

/// `I = {0, 1}`, `S = [[1, 1], [1, -1]]`, `T = diag(1, ζ_4)`.
pub fn semion_datum() -> ModularDatum {
    let one = CycloNum::from_integer(1);
    ModularDatum::new(
        alloc::vec!["0".into(), "1".into()],
        0,
        alloc::vec![0, 1],
        alloc::vec![
            alloc::vec![one.clone(), one.clone()],
            alloc::vec![one.clone(), CycloNum::from_integer(-1)],
        ],
        alloc::vec![one, CycloNum::root_of_unity(4, 1)],
    )
    .expect("well formed")
}

/// The datum of the cyclic group ring of odd order `n` with Radford's
/// R-matrix, for `ζ = ζ_n^zeta_exponent`: `I = Z_n`, `a* = -a`,
/// `s_ab = ζ^{-2ab}`, `t_a = ζ^{a^2}`.
pub fn radford_datum(n: u64, zeta_exponent: i64) -> Result<ModularDatum> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    if !arith::is_unit(zeta_exponent, n) {
        return Err(Error::NotAUnit {
            q: zeta_exponent,
            modulus: n,
        });
    }
    let field = CycloField::new(n as u32);
    let e = zeta_exponent as i128;
    let ni = n as i128;
    let z = |k: i128| CycloNum::root_in(&field, (k * e).rem_euclid(ni) as i64);
    let m = n as usize;
    let labels = (0..m).map(|a| a.to_string()).collect();
    let star = (0..m).map(|a| (m - a) % m).collect();
    let s = (0..m)
        .map(|a| (0..m).map(|b| z(-2 * (a * b) as i128)).collect())
        .collect();
    let t = (0..m).map(|a| z((a * a) as i128)).collect();
    ModularDatum::new(labels, 0, star, s, t)
}

/// `sum_{i<n} ζ_n^{q i^2}`.
pub fn classical_gauss_sum(n: u64, q: i64) -> Result<CycloNum> {
    if n == 0 {
        return Err(Error::BadModulus(0));
    }
    if !arith::is_unit(q, n) {
        return Err(Error::NotAUnit { q, modulus: n });
    }
    let field = CycloField::new(n as u32);
    let mut acc = CycloNum::zero(n as u32);
    for i in 0..n {
        let e = (q as i128 * (i * i) as i128).rem_euclid(n as i128) as i64;
        acc = acc + CycloNum::root_in(&field, e);
    }
    Ok(acc)
}

/// The value table for `G^2` by `n mod 4`, the product `G G'`, and for odd
/// `n` the Galois behaviour `σ_q(G) = (q|n) G`.
pub fn verify_gauss_lemma(n: u64) -> Result<Report> {
    let g = classical_gauss_sum(n, 1)?;
    let g_rec = classical_gauss_sum(n, -1)?;
    let ni = CycloNum::from_integer(n as i64);
    let sq = &g * &g;
    let mut r = Report::new();
    let ok = match n % 4 {
        0 => {
            let v = &(&CycloNum::from_integer(2) * &CycloNum::root_of_unity(4, 1)) * &ni;
            sq == v || sq == -v
        }
        1 => sq == ni,
        2 => sq.is_zero(),
        _ => sq == -ni.clone(),
    };
    r.record("gauss-square-table", ok, (!ok).then(|| format!("G^2 = {}", sq)));
    let prod = &g * &g_rec;
    let want = match n % 4 {
        0 => CycloNum::from_integer(2 * n as i64),
        2 => CycloNum::from_integer(0),
        _ => ni.clone(),
    };
    r.record("gauss-times-conjugate", prod == want, (prod != want).then(|| format!("G G' = {}", prod)));
    if n % 2 == 1 {
        let mut fail = None;
        for q in arith::units(n) {
            let lhs = g.galois_apply(q as i64)?;
            let j = jacobi_symbol(q as i64, n)?;
            if lhs != g.scale(&crate::Rational::from_integer(j.into())) {
                fail = Some(format!("q = {}", q));
                break;
            }
        }
        r.expect_none("gauss-galois-jacobi", fail);
    }
    Ok(r)
}

/// A function `Z_n^3 -> Q_M^×` given by its full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFn {
    pub n: usize,
    /// `ω(i, j, k)` at `(i*n + j)*n + k`.
    pub table: Vec<CycloNum>,
}

impl CocycleFn {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &CycloNum {
        let n = self.n;
        &self.table[((i % n) * n + j % n) * n + k % n]
    }

    pub fn constant_one(n: usize) -> Self {
        CocycleFn {
            n,
            table: alloc::vec![CycloNum::from_integer(1); n * n * n],
        }
    }
}

/// `ω(i,j,k) = σ(i,j)^k` with `σ(i,j) = ζ^{q_ij}`, `q_ij = 1` iff `i + j >= n`,
/// and `ζ = ζ_n^zeta_exponent`.
pub fn cocycle_omega(n: usize, zeta_exponent: i64) -> CocycleFn {
    assert!(n >= 1);
    let field = CycloField::new(n as u32);
    let mut table = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let q = (i + j >= n) as i64;
            for k in 0..n {
                table.push(CycloNum::root_in(&field, zeta_exponent * q * k as i64));
            }
        }
    }
    CocycleFn { n, table }
}

/// Checks normalization and the 3-cocycle identity
/// `ω(j,k,l) ω(i,j+k,l) ω(i,j,k) = ω(i+j,k,l) ω(i,j,k+l)`.
/// On failure returns the first offending triple or quadruple.
pub fn verify_3cocycle(c: &CocycleFn) -> core::result::Result<(), String> {
    let n = c.n;
    if c.table.len() != n * n * n {
        return Err("table size is not n^3".into());
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if (i == 0 || j == 0 || k == 0) && !c.get(i, j, k).is_one() {
                    return Err(format!("not normalized at ({},{},{})", i, j, k));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs = &(c.get(j, k, l) * c.get(i, j + k, l)) * c.get(i, j, k);
                    let rhs = c.get(i + j, k, l) * c.get(i, j, k + l);
                    if lhs != rhs {
                        return Err(format!("cocycle identity fails at ({},{},{},{})", i, j, k, l));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CycloNum {
        CycloNum::from_integer(n)
    }

    fn z(m: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(m, k)
    }

    /// `(χ_a ⊗ χ_c)(R'R)` and `χ_a(u)` by direct summation over the R-matrix
    /// `R = (1/n) sum_{i,j} ζ^{-ij} g^i ⊗ g^j`, with `χ_a(g^m) = ζ^{am}`.
    fn r_matrix_oracle(n: u64) -> (Vec<Vec<CycloNum>>, Vec<CycloNum>) {
        let ni = n as i64;
        let zeta = |k: i64| z(n as u32, k.rem_euclid(ni));
        let inv_n2 = CycloNum::from_rational(&crate::Rational::new(1.into(), (ni * ni).into()));
        let inv_n = CycloNum::from_rational(&crate::Rational::new(1.into(), ni.into()));
        let mut s = Vec::new();
        for a in 0..ni {
            let mut row = Vec::new();
            for b in 0..ni {
                let c = (ni - b) % ni;
                // R'R = (1/n^2) sum ζ^{-ij-kl} g^{j+k} ⊗ g^{i+l}
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
                row.push(&acc * &inv_n2);
            }
            s.push(row);
        }
        // u = sum S(R^(2)) R^(1) = (1/n) sum ζ^{-ij} g^{i-j}
        let mut u = Vec::new();
        for a in 0..ni {
            let mut acc = int(0);
            for i in 0..ni {
                for j in 0..ni {
                    acc = acc + zeta(-i * j + a * (i - j));
                }
            }
            u.push(&acc * &inv_n);
        }
        (s, u)
    }

    #[test]
    fn radford_closed_forms_match_oracle() {
        for n in [3u64, 5, 7] {
            let d = radford_datum(n, 1).unwrap();
            let (s, u) = r_matrix_oracle(n);
            for a in 0..n as usize {
                for b in 0..n as usize {
                    assert_eq!(d.s(a, b), &s[a][b], "n={} s[{},{}]", n, a, b);
                }
                assert_eq!(d.t(a), &u[a].inv().unwrap(), "n={} t[{}]", n, a);
            }
        }
    }

    #[test]
    fn radford_examples() {
        let d1 = radford_datum(1, 1).unwrap();
        assert_eq!(d1.s_matrix(), trivial_datum().s_matrix());
        assert_eq!(d1.t_diag(), trivial_datum().t_diag());
        let g3 = radford_datum(3, 1).unwrap().gauss_sum();
        assert_eq!(g3, &int(1) + &(&int(2) * &z(3, 1)));
        assert_eq!(&g3 * &g3, int(-3));
        let g5 = radford_datum(5, 1).unwrap().gauss_sum();
        assert_eq!(&g5 * &g5, int(5));
        assert_eq!(radford_datum(4, 1), Err(Error::EvenOrder(4)));
        for n in [3, 5, 7] {
            assert!(radford_datum(n, 1).unwrap().validate_axioms().all_passed());
        }
        assert!(radford_datum(5, 2).unwrap().validate_axioms().all_passed());
    }

    #[test]
    fn semion_values() {
        let d = semion_datum();
        let g = d.gauss_sum();
        let gr = d.reciprocal_gauss_sum().unwrap();
        assert_eq!(g, &int(1) + &z(4, 1));
        assert_eq!(&g * &g, &int(2) * &z(4, 1));
        assert_eq!(&g * &g, -(&gr * &gr));
        assert!(d.validate_axioms().all_passed());
    }

    #[test]
    fn gauss_sums() {
        let g4 = classical_gauss_sum(4, 1).unwrap();
        assert_eq!(g4, &int(2) + &(&int(2) * &z(4, 1)));
        assert_eq!(&g4 * &g4, &int(8) * &z(4, 1));
        assert!(classical_gauss_sum(2, 1).unwrap().is_zero());
        let g7 = classical_gauss_sum(7, 1).unwrap();
        assert_eq!(g7.galois_apply(3).unwrap(), -g7.clone());
        assert_eq!(classical_gauss_sum(7, 3).unwrap(), -g7);
        assert_eq!(classical_gauss_sum(6, 2), Err(Error::NotAUnit { q: 2, modulus: 6 }));
        for n in 1..=16 {
            let r = verify_gauss_lemma(n).unwrap();
            assert!(r.all_passed(), "n={}: {}", n, r);
        }
    }

    #[test]
    fn cocycles() {
        let c2 = cocycle_omega(2, 1);
        assert_eq!(c2.get(1, 1, 1), &int(-1));
        assert_eq!(c2.get(1, 1, 0), &int(1));
        assert!(verify_3cocycle(&c2).is_ok());
        assert!(verify_3cocycle(&cocycle_omega(3, 1)).is_ok());
        assert!(verify_3cocycle(&CocycleFn::constant_one(4)).is_ok());
        let mut bad = cocycle_omega(3, 1);
        bad.table[(1 * 3 + 2) * 3 + 1] = int(-1);
        assert!(verify_3cocycle(&bad).is_err());
    }
}
