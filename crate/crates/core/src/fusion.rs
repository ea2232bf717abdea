//! Verlinde coefficients, the fusion ring, its characters `ξ_q` and the
//! primitive idempotents.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::check::Report;
use crate::cyclotomic::{CycloNum, Rational};
use crate::datum::ModularDatum;
use crate::{Error, Result};

/// `N_ij^k = (1/n) sum_l s_il s_jl s_{k*l} / s_ol`, flattened as
/// `(i*m + j)*m + k`. Requires `n != 0` and nonzero dimensions.
pub fn verlinde_values(d: &ModularDatum, n: &CycloNum) -> Vec<CycloNum> {
    let m = d.size();
    let o = d.unit();
    let w: Vec<CycloNum> = (0..m)
        .map(|l| (n * d.s(o, l)).inv().expect("nonzero dimensions"))
        .collect();
    let mut out = vec![d.s(0, 0).zero_like(); m * m * m];
    for i in 0..m {
        for j in i..m {
            let p: Vec<CycloNum> = (0..m)
                .map(|l| &(d.s(i, l) * d.s(j, l)) * &w[l])
                .collect();
            for k in 0..m {
                let ks = d.star(k);
                let mut acc = d.s(0, 0).zero_like();
                for (l, pl) in p.iter().enumerate() {
                    if !pl.is_zero() {
                        acc = acc + pl * d.s(ks, l);
                    }
                }
                out[(j * m + i) * m + k] = acc.clone();
                out[(i * m + j) * m + k] = acc;
            }
        }
    }
    out
}

/// The integer tensor `N_ij^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    m: usize,
    coeffs: Vec<u64>,
    /// For each `(i, j)`, the nonzero `(k, N_ij^k)`.
    sparse: Vec<Vec<(usize, u64)>>,
}

impl FusionTable {
    /// Build from raw coefficients; the first entry that is not a nonnegative
    /// integer is returned as `(i, j, k)`.
    pub fn from_values(m: usize, values: &[CycloNum]) -> core::result::Result<Self, (usize, usize, usize)> {
        let mut coeffs = Vec::with_capacity(values.len());
        for (idx, v) in values.iter().enumerate() {
            let c = v
                .as_integer()
                .filter(|x| !x.is_negative())
                .and_then(|x| x.to_u64());
            match c {
                Some(c) => coeffs.push(c),
                None => return Err((idx / (m * m), (idx / m) % m, idx % m)),
            }
        }
        Ok(Self::from_integers(m, coeffs))
    }

    pub fn from_integers(m: usize, coeffs: Vec<u64>) -> Self {
        assert_eq!(coeffs.len(), m * m * m);
        let sparse = (0..m * m)
            .map(|ij| {
                (0..m)
                    .filter_map(|k| {
                        let c = coeffs[ij * m + k];
                        (c != 0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        FusionTable { m, coeffs, sparse }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.coeffs[(i * self.m + j) * self.m + k]
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Nonzero terms of `b_i b_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.sparse[i * self.m + j]
    }

    /// Commutativity, unit, duality and associativity.
    pub fn verify_laws(&self, unit: usize, star: &[usize]) -> Report {
        let m = self.m;
        let mut r = Report::new();
        let triples = || (0..m).flat_map(move |i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))));
        r.expect_none(
            "fusion-commutative",
            triples()
                .find(|&(i, j, k)| self.get(i, j, k) != self.get(j, i, k))
                .map(|(i, j, k)| format!("N[{},{}]^{} != N[{},{}]^{}", i, j, k, j, i, k)),
        );
        r.expect_none(
            "fusion-unit",
            triples()
                .find(|&(i, j, _)| self.get(unit, i, j) != (i == j) as u64)
                .map(|(i, j, _)| format!("N[o,{}]^{}", i, j)),
        );
        r.expect_none(
            "fusion-duality",
            triples()
                .find(|&(i, j, _)| self.get(i, j, unit) != (i == star[j]) as u64)
                .map(|(i, j, _)| format!("N[{},{}]^o", i, j)),
        );
        let mut assoc = None;
        'outer: for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    for p in 0..m {
                        let lhs: u64 = (0..m).map(|k| self.get(i, j, k) * self.get(k, l, p)).sum();
                        let rhs: u64 = (0..m).map(|k| self.get(j, l, k) * self.get(i, k, p)).sum();
                        if lhs != rhs {
                            assoc = Some(format!("(b{} b{}) b{} vs b{} (b{} b{}) at b{}", i, j, l, i, j, l, p));
                            break 'outer;
                        }
                    }
                }
            }
        }
        r.expect_none("fusion-associative", assoc);
        r
    }
}

/// The fusion coefficients of a datum satisfying the first four axioms.
pub fn fusion_coefficients(d: &ModularDatum) -> Result<FusionTable> {
    let m = d.size();
    let o = d.unit();
    let n = d.s_matrix().mul(d.s_matrix())?.get(o, d.star(o)).clone();
    if n.is_zero() || (0..m).any(|i| d.dim(i).is_zero()) {
        return Err(Error::InvalidDatum("global dimension or a dimension vanishes".into()));
    }
    let values = verlinde_values(d, &n);
    FusionTable::from_values(m, &values).map_err(|(i, j, k)| {
        Error::InvalidDatum(format!(
            "N[{},{}]^{} = {} is not a nonnegative integer",
            d.labels()[i],
            d.labels()[j],
            d.labels()[k],
            values[(i * m + j) * m + k]
        ))
    })
}

/// An element `sum_i c_i b_i` of the fusion ring with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionElement {
    pub coeffs: Vec<CycloNum>,
}

impl FusionElement {
    pub fn zero(m: usize) -> Self {
        FusionElement {
            coeffs: vec![CycloNum::from_integer(0); m],
        }
    }

    pub fn basis(m: usize, i: usize) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[i] = CycloNum::from_integer(1);
        x
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &FusionElement) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(FusionElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        FusionElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNum::is_zero)
    }
}

/// Bilinear extension of `b_i b_j = sum_k N_ij^k b_k`.
pub fn multiply(x: &FusionElement, y: &FusionElement, t: &FusionTable) -> Result<FusionElement> {
    let m = t.size();
    for len in [x.len(), y.len()] {
        if len != m {
            return Err(Error::DimensionMismatch { expected: m, found: len });
        }
    }
    let mut out: Vec<Option<CycloNum>> = vec![None; m];
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for &(k, c) in t.product_terms(i, j) {
                let term = if c == 1 {
                    ab.clone()
                } else {
                    ab.scale(&Rational::from_integer(BigInt::from(c)))
                };
                out[k] = Some(match out[k].take() {
                    Some(s) => s + term,
                    None => term,
                });
            }
        }
    }
    Ok(FusionElement {
        coeffs: out
            .into_iter()
            .map(|c| c.unwrap_or_else(|| CycloNum::from_integer(0)))
            .collect(),
    })
}

/// `ξ_q(x)` with `ξ_q(b_i) = s_iq / n_q`.
pub fn xi_evaluate(d: &ModularDatum, q: usize, x: &FusionElement) -> Result<CycloNum> {
    if x.len() != d.size() {
        return Err(Error::DimensionMismatch {
            expected: d.size(),
            found: x.len(),
        });
    }
    let nq = d.dim(q);
    let mut acc = d.s(0, 0).zero_like();
    for (i, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc + c * d.s(i, q);
        }
    }
    acc.div(nq).map_err(|_| Error::InvalidDatum("vanishing dimension".into()))
}

/// `ξ_q(b_i)` for all `q, i`, indexed `[q][i]`.
fn xi_table(d: &ModularDatum) -> Result<Vec<Vec<CycloNum>>> {
    let m = d.size();
    (0..m)
        .map(|q| {
            let inv = d
                .dim(q)
                .inv()
                .map_err(|_| Error::InvalidDatum("vanishing dimension".into()))?;
            Ok((0..m).map(|i| d.s(i, q) * &inv).collect())
        })
        .collect()
}

/// Each `ξ_q` is multiplicative on basis products; the `ξ_q` are pairwise
/// distinct; and no two basis elements have the same image under all `ξ_q`.
pub fn verify_ring_homomorphisms(d: &ModularDatum, t: &FusionTable) -> Result<Report> {
    let m = d.size();
    if t.size() != m {
        return Err(Error::DimensionMismatch { expected: m, found: t.size() });
    }
    let xi = xi_table(d)?;
    let mut r = Report::new();
    let mut fail = None;
    'outer: for (q, row) in xi.iter().enumerate() {
        for i in 0..m {
            for j in i..m {
                let mut lhs = d.s(0, 0).zero_like();
                for &(k, c) in t.product_terms(i, j) {
                    lhs = lhs + row[k].scale(&Rational::from_integer(BigInt::from(c)));
                }
                if lhs != &row[i] * &row[j] {
                    fail = Some(format!("q={}, i={}, j={}", d.labels()[q], d.labels()[i], d.labels()[j]));
                    break 'outer;
                }
            }
        }
    }
    r.expect_none("xi-multiplicative", fail);
    let mut fail = None;
    'rows: for q in 0..m {
        for p in 0..q {
            if xi[q] == xi[p] {
                fail = Some(format!("xi_{} = xi_{}", d.labels()[p], d.labels()[q]));
                break 'rows;
            }
        }
    }
    r.expect_none("xi-distinct", fail);
    let mut fail = None;
    'cols: for i in 0..m {
        for j in 0..i {
            if (0..m).all(|q| xi[q][i] == xi[q][j]) {
                fail = Some(format!("b_{} and b_{} evaluate identically", d.labels()[j], d.labels()[i]));
                break 'cols;
            }
        }
    }
    r.expect_none("xi-injective-on-basis", fail);
    Ok(r)
}

/// `b_A = sum_j b_j b_{j*}`.
pub fn b_a(d: &ModularDatum, t: &FusionTable) -> FusionElement {
    let m = d.size();
    let mut counts = vec![0u64; m];
    for j in 0..m {
        for &(k, c) in t.product_terms(j, d.star(j)) {
            counts[k] += c;
        }
    }
    FusionElement {
        coeffs: counts.into_iter().map(|c| CycloNum::from_integer(c as i64)).collect(),
    }
}

/// The primitive idempotents `p_i = (1/ξ_i(b_A)) sum_j ξ_i(b_{j*}) b_j`.
/// Fails unless `ξ_i(b_A) = n / n_i^2` for every `i`.
pub fn idempotents(d: &ModularDatum, t: &FusionTable) -> Result<Vec<FusionElement>> {
    let m = d.size();
    let xi = xi_table(d)?;
    let ba = b_a(d, t);
    let n = (0..m).fold(d.s(0, 0).zero_like(), |acc, j| acc + d.dim(j) * d.dim(j));
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let v = xi_evaluate(d, i, &ba)?;
        let ni = d.dim(i);
        let expected = n.div(&(ni * ni))?;
        if v != expected || v.is_zero() {
            return Err(Error::InvalidDatum(format!(
                "xi_{}(b_A) = {} but n/n_i^2 = {}",
                d.labels()[i],
                v,
                expected
            )));
        }
        let vinv = v.inv()?;
        out.push(FusionElement {
            coeffs: (0..m).map(|j| &xi[i][d.star(j)] * &vinv).collect(),
        });
    }
    Ok(out)
}

/// Idempotent, orthogonality, partition of unity, `ξ_j(p_i) = δ_ij` and
/// `b_k p_i = ξ_i(b_k) p_i`.
pub fn verify_idempotent_laws(d: &ModularDatum, t: &FusionTable) -> Result<Report> {
    let m = d.size();
    let o = d.unit();
    let ps = idempotents(d, t)?;
    let xi = xi_table(d)?;
    let lab = d.labels();
    let mut r = Report::new();

    let mut idem = None;
    let mut orth = None;
    for i in 0..m {
        for j in i..m {
            let prod = multiply(&ps[i], &ps[j], t)?;
            if i == j && prod != ps[i] && idem.is_none() {
                idem = Some(format!("p_{}^2 != p_{}", lab[i], lab[i]));
            }
            if i != j && !prod.is_zero() && orth.is_none() {
                orth = Some(format!("p_{} p_{} != 0", lab[i], lab[j]));
            }
        }
    }
    r.expect_none("idempotent", idem);
    r.expect_none("idempotents-orthogonal", orth);

    let mut total = FusionElement::zero(m);
    for p in &ps {
        total = total.add(p)?;
    }
    let unit = FusionElement::basis(m, o);
    if total == unit {
        r.pass("idempotents-sum-to-unit");
    } else {
        r.fail("idempotents-sum-to-unit", "sum p_i != b_o".into());
    }

    let mut fail = None;
    'dual: for (i, p) in ps.iter().enumerate() {
        for j in 0..m {
            let v = xi_evaluate(d, j, p)?;
            let ok = if i == j { v.is_one() } else { v.is_zero() };
            if !ok {
                fail = Some(format!("xi_{}(p_{}) = {}", lab[j], lab[i], v));
                break 'dual;
            }
        }
    }
    r.expect_none("xi-on-idempotents-delta", fail);

    let mut fail = None;
    'absorb: for (i, p) in ps.iter().enumerate() {
        for k in 0..m {
            let lhs = multiply(&FusionElement::basis(m, k), p, t)?;
            if lhs != p.scale(&xi[i][k]) {
                fail = Some(format!("b_{} p_{}", lab[k], lab[i]));
                break 'absorb;
            }
        }
    }
    r.expect_none("basis-times-idempotent", fail);

    let no = d.dim(o);
    let fail = (0..m)
        .find(|&k| {
            let lhs = multiply(&FusionElement::basis(m, k), &ps[o], t).expect("sizes agree");
            lhs != ps[o].scale(&d.dim(k).div(no).expect("n_o != 0"))
        })
        .map(|k| format!("b_{} p_o != (n_k/n_o) p_o", lab[k]));
    r.expect_none("basis-times-unit-idempotent", fail);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{radford_datum, semion_datum, trivial_datum};

    fn int(n: i64) -> CycloNum {
        CycloNum::from_integer(n)
    }

    fn half(n: i64) -> CycloNum {
        CycloNum::from_rational(&Rational::new(n.into(), 2.into()))
    }

    #[test]
    fn semion_table() {
        let t = fusion_coefficients(&semion_datum()).unwrap();
        assert_eq!(t.get(1, 1, 0), 1);
        assert_eq!(t.get(1, 1, 1), 0);
        assert!(t.verify_laws(0, &[0, 1]).all_passed());
    }

    #[test]
    fn radford3_group_fusion() {
        let d = radford_datum(3, 1).unwrap();
        let t = fusion_coefficients(&d).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(t.get(a, b, c), ((a + b) % 3 == c) as u64);
                }
            }
        }
        let prod = multiply(&FusionElement::basis(3, 1), &FusionElement::basis(3, 2), &t).unwrap();
        assert_eq!(prod, FusionElement::basis(3, 0));
    }

    #[test]
    fn multiplication_examples() {
        let d = semion_datum();
        let t = fusion_coefficients(&d).unwrap();
        let x = FusionElement { coeffs: vec![int(3), CycloNum::root_of_unity(4, 1)] };
        assert_eq!(multiply(&FusionElement::basis(2, 0), &x, &t).unwrap(), x);
        let s = FusionElement { coeffs: vec![int(1), int(1)] };
        assert_eq!(multiply(&s, &s, &t).unwrap(), FusionElement { coeffs: vec![int(2), int(2)] });
        assert!(matches!(
            multiply(&FusionElement::zero(3), &s, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn characters() {
        let d = semion_datum();
        assert_eq!(xi_evaluate(&d, 1, &FusionElement::basis(2, 1)).unwrap(), int(-1));
        for q in 0..2 {
            assert!(xi_evaluate(&d, q, &FusionElement::basis(2, 0)).unwrap().is_one());
        }
        let r5 = radford_datum(5, 1).unwrap();
        let t5 = fusion_coefficients(&r5).unwrap();
        assert!(verify_ring_homomorphisms(&r5, &t5).unwrap().all_passed());
        let t = fusion_coefficients(&d).unwrap();
        assert!(verify_ring_homomorphisms(&d, &t).unwrap().all_passed());
    }

    #[test]
    fn corrupted_entry_breaks_homomorphism() {
        let d = semion_datum();
        let t = fusion_coefficients(&d).unwrap();
        let mut rows = d.s_matrix().to_rows();
        rows[1][1] = int(-3);
        let bad = ModularDatum::new(d.labels().to_vec(), 0, vec![0, 1], rows, d.t_diag().to_vec()).unwrap();
        let r = verify_ring_homomorphisms(&bad, &t).unwrap();
        let c = r.get("xi-multiplicative").unwrap();
        assert!(!c.passed());
        assert!(c.witness.as_ref().unwrap().starts_with("q="));
    }

    #[test]
    fn semion_idempotents() {
        let d = semion_datum();
        let t = fusion_coefficients(&d).unwrap();
        let ba = b_a(&d, &t);
        for i in 0..2 {
            assert_eq!(xi_evaluate(&d, i, &ba).unwrap(), int(2));
        }
        let ps = idempotents(&d, &t).unwrap();
        assert_eq!(ps[0].coeffs, vec![half(1), half(1)]);
        assert_eq!(ps[1].coeffs, vec![half(1), half(-1)]);
        assert!(verify_idempotent_laws(&d, &t).unwrap().all_passed());
    }

    #[test]
    fn trivial_idempotent() {
        let d = trivial_datum();
        let t = fusion_coefficients(&d).unwrap();
        assert_eq!(idempotents(&d, &t).unwrap(), vec![FusionElement::basis(1, 0)]);
    }

    #[test]
    fn radford7_laws() {
        let d = radford_datum(7, 1).unwrap();
        let t = fusion_coefficients(&d).unwrap();
        let r = verify_idempotent_laws(&d, &t).unwrap();
        assert!(r.all_passed(), "{}", r);
    }
}
