//! Modular data: construction, axiom validation, derived quantities and the
//! elementary identities every valid datum satisfies.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use num_traits::Signed;

use crate::arith;
use crate::check::Report;
use crate::cyclotomic::CycloNum;
use crate::fusion::{self, FusionTable};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// A candidate modular datum `(I, o, *, S, T)`.
///
/// Construction only checks shape and that `*` is an involution; the axioms
/// are checked by [`ModularDatum::validate_axioms`]. All entries are stored at
/// one common conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDatum {
    labels: Vec<String>,
    unit: usize,
    star: Vec<usize>,
    s: Matrix,
    t: Vec<CycloNum>,
    conductor: u32,
}

impl ModularDatum {
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        star: Vec<usize>,
        s: Vec<Vec<CycloNum>>,
        t: Vec<CycloNum>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::Structure("index set is empty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Structure(format!("duplicate label {:?}", l)));
            }
        }
        if unit >= m {
            return Err(Error::Structure(format!("unit index {} out of range", unit)));
        }
        if star.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: star.len(),
            });
        }
        for (i, &j) in star.iter().enumerate() {
            if j >= m {
                return Err(Error::Structure(format!("star({}) = {} out of range", i, j)));
            }
            if star[j] != i {
                return Err(Error::Structure(format!(
                    "star is not an involution at {:?}",
                    labels[i]
                )));
            }
        }
        if s.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: s.len(),
            });
        }
        if t.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: t.len(),
            });
        }
        let s = Matrix::from_rows(s)?;
        if s.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: s.cols(),
            });
        }
        let conductor = s
            .entries()
            .iter()
            .chain(&t)
            .fold(1u64, |acc, x| arith::lcm(acc, x.conductor() as u64)) as u32;
        let ambient = CycloNum::zero(conductor);
        let s = s.map(|x| x.lift_like(&ambient));
        let t = t.iter().map(|x| x.lift_like(&ambient)).collect();
        Ok(ModularDatum {
            labels,
            unit,
            star,
            s,
            t,
            conductor,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn star_perm(&self) -> &[usize] {
        &self.star
    }

    pub fn s(&self, i: usize, j: usize) -> &CycloNum {
        self.s.get(i, j)
    }

    pub fn t(&self, i: usize) -> &CycloNum {
        &self.t[i]
    }

    pub fn s_matrix(&self) -> &Matrix {
        &self.s
    }

    pub fn t_diag(&self) -> &[CycloNum] {
        &self.t
    }

    pub fn t_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.t)
    }

    /// Charge conjugation `C = (δ_{i,j*})`.
    pub fn c_matrix(&self) -> Matrix {
        Matrix::permutation(&self.star)
    }

    /// The common conductor of all entries.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `n_i = s_{io}`.
    pub fn dim(&self, i: usize) -> &CycloNum {
        self.s(i, self.unit)
    }

    /// `sum_i n_i^2 t_i`.
    pub fn gauss_sum(&self) -> CycloNum {
        let mut acc = self.dim(0).zero_like();
        for i in 0..self.size() {
            let d = self.dim(i);
            acc = acc + &(d * d) * &self.t[i];
        }
        acc
    }

    /// `sum_i n_i^2 / t_i`; `None` if some `t_i` vanishes.
    pub fn reciprocal_gauss_sum(&self) -> Option<CycloNum> {
        let mut acc = self.dim(0).zero_like();
        for i in 0..self.size() {
            let d = self.dim(i);
            acc = acc + (d * d).div(&self.t[i]).ok()?;
        }
        Some(acc)
    }

    /// Check the five defining axioms in order. Never fails: every problem
    /// becomes a failed (or skipped) entry in the report.
    pub fn validate_axioms(&self) -> Report {
        self.validate_with_table().0
    }

    pub(crate) fn validate_with_table(&self) -> (Report, Option<FusionTable>) {
        let m = self.size();
        let o = self.unit;
        let mut r = Report::new();

        // symmetry of S, finite order of T
        let mut fail = None;
        'sym: for i in 0..m {
            for j in 0..i {
                if self.s(i, j) != self.s(j, i) {
                    fail = Some(format!("s[{},{}] != s[{},{}]", self.labels[i], self.labels[j], self.labels[j], self.labels[i]));
                    break 'sym;
                }
            }
        }
        if fail.is_none() {
            if let Some(i) = (0..m).find(|&i| self.t[i].root_of_unity_order().is_none()) {
                fail = Some(format!("t[{}] is not a root of unity", self.labels[i]));
            }
        }
        r.expect_none(names::SYMMETRY_FINITE_ORDER, fail);

        // t_{i*} = t_i, s_{io} != 0, o* = o
        let mut fail = None;
        if self.star[o] != o {
            fail = Some(format!("unit {} is not self-dual", self.labels[o]));
        } else if let Some(i) = (0..m).find(|&i| self.t[self.star[i]] != self.t[i]) {
            fail = Some(format!("t[{}] != t[{}*]", self.labels[i], self.labels[i]));
        } else if let Some(i) = (0..m).find(|&i| self.dim(i).is_zero()) {
            fail = Some(format!("s[{},{}] = 0", self.labels[i], self.labels[o]));
        }
        let dims_nonzero = (0..m).all(|i| !self.dim(i).is_zero());
        r.expect_none(names::DUALITY_UNIT, fail);

        // S^2 = n C
        let s2 = self.s.mul(&self.s).expect("square matrix");
        let n = s2.get(o, self.star[o]).clone();
        let mut fail = None;
        if n.is_zero() {
            fail = Some("n = (S^2)[o,o*] = 0".to_string());
        } else {
            let nc = self.c_matrix().scale(&n);
            if let Some((i, k)) = s2.first_difference(&nc) {
                fail = Some(format!(
                    "(S^2)[{},{}] = {} but n*delta = {}",
                    self.labels[i],
                    self.labels[k],
                    s2.get(i, k),
                    nc.get(i, k)
                ));
            }
        }
        let n_ok = fail.is_none();
        r.expect_none(names::S_SQUARED, fail);

        // g T^-1 S T^-1 = (n_o / t_o^2) S T S
        let t_nonzero = self.t.iter().all(|x| !x.is_zero());
        if !t_nonzero || self.dim(o).is_zero() {
            r.skip(names::PROPORTIONALITY, "T singular or n_o = 0");
        } else {
            r.expect_none(names::PROPORTIONALITY, self.constant_form_failure());
        }

        // nonnegative integer Verlinde coefficients
        let mut table = None;
        if !(n_ok && dims_nonzero) {
            r.skip(names::INTEGRAL_FUSION, "needs n != 0 and nonzero dimensions");
        } else {
            let values = fusion::verlinde_values(self, &n);
            match FusionTable::from_values(m, &values) {
                Ok(t) => {
                    r.pass(names::INTEGRAL_FUSION);
                    table = Some(t);
                }
                Err((i, j, k)) => r.fail(
                    names::INTEGRAL_FUSION,
                    format!(
                        "N[{},{}]^{} = {}",
                        self.labels[i],
                        self.labels[j],
                        self.labels[k],
                        values[(i * m + j) * m + k]
                    ),
                ),
            }
        }
        (r, table)
    }

    fn constant_form_failure(&self) -> Option<String> {
        let m = self.size();
        let o = self.unit;
        let g = self.gauss_sum();
        if g.is_zero() {
            return Some("Gaussian sum vanishes".into());
        }
        let tinv: Vec<CycloNum> = self.t.iter().map(|x| x.inv().expect("nonzero")).collect();
        let c = self.dim(o).div(&(&self.t[o] * &self.t[o])).expect("nonzero");
        for i in 0..m {
            for j in i..m {
                let lhs = &(&g * self.s(i, j)) * &(&tinv[i] * &tinv[j]);
                let mut sts = self.s(i, 0).zero_like();
                for k in 0..m {
                    sts = sts + &(self.s(i, k) * &self.t[k]) * self.s(k, j);
                }
                let rhs = &c * &sts;
                if lhs != rhs {
                    return Some(format!(
                        "entry [{},{}]: g*(T^-1 S T^-1) = {} but (n_o/t_o^2)*(STS) = {}",
                        self.labels[i], self.labels[j], lhs, rhs
                    ));
                }
            }
        }
        None
    }

    /// Validate and cache the derived quantities and the fusion table.
    pub fn checked(&self) -> Result<CheckedDatum> {
        let (report, table) = self.validate_with_table();
        if !report.all_passed() {
            let msg = report
                .failures()
                .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::InvalidDatum(msg));
        }
        let fusion = table.expect("axioms passed");
        let derived = self.derive_unchecked()?;
        Ok(CheckedDatum {
            datum: self.clone(),
            report: derived,
            fusion,
        })
    }

    pub fn derive_report(&self) -> Result<DatumReport> {
        Ok(self.checked()?.report)
    }

    fn derive_unchecked(&self) -> Result<DatumReport> {
        let m = self.size();
        let o = self.unit;
        let s2 = self.s.mul(&self.s)?;
        let n = s2.get(o, self.star[o]).clone();
        let sum_sq = (0..m).fold(self.dim(0).zero_like(), |acc, i| {
            let d = self.dim(i);
            acc + d * d
        });
        if sum_sq != n {
            return Err(Error::InvalidDatum("n differs from sum of squared dimensions".into()));
        }
        let order = |x: &CycloNum| x.root_of_unity_order().ok_or(Error::NotRootOfUnity);
        let mut exponent = 1;
        let mut normalized_exponent = 1;
        let to_inv = self.t[o].inv()?;
        for ti in &self.t {
            exponent = arith::lcm(exponent, order(ti)?);
            normalized_exponent = arith::lcm(normalized_exponent, order(&(ti * &to_inv))?);
        }
        let dims: Vec<CycloNum> = (0..m).map(|i| self.dim(i).clone()).collect();
        let g = self.gauss_sum();
        let g_rec = self.reciprocal_gauss_sum().ok_or(Error::DivisionByZero)?;
        let normalized = self.s(o, o).is_one() && self.t[o].is_one();
        let positive_int = |x: &CycloNum| x.as_integer().is_some_and(|v| v.is_positive());
        let integral = dims.iter().all(positive_int);
        Ok(DatumReport {
            n,
            exponent,
            normalized_exponent,
            dims,
            g,
            g_rec,
            normalized,
            integral,
        })
    }

    /// Kronecker product; labels of the product are `"(a,b)"`.
    pub fn kronecker_product(&self, other: &ModularDatum) -> Result<ModularDatum> {
        self.checked()?;
        other.checked()?;
        let (m1, m2) = (self.size(), other.size());
        let idx = |a: usize, b: usize| a * m2 + b;
        let mut labels = Vec::with_capacity(m1 * m2);
        let mut star = Vec::with_capacity(m1 * m2);
        let mut t = Vec::with_capacity(m1 * m2);
        for a in 0..m1 {
            for b in 0..m2 {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
                star.push(idx(self.star[a], other.star[b]));
                t.push(&self.t[a] * &other.t[b]);
            }
        }
        let mut s = vec![Vec::with_capacity(m1 * m2); m1 * m2];
        for a in 0..m1 {
            for b in 0..m2 {
                for c in 0..m1 {
                    for d in 0..m2 {
                        s[idx(a, b)].push(self.s(a, c) * other.s(b, d));
                    }
                }
            }
        }
        ModularDatum::new(labels, idx(self.unit, other.unit), star, s, t)
    }
}

/// Check names used in reports.
pub mod names {
    pub const SYMMETRY_FINITE_ORDER: &str = "s-symmetric-t-finite-order";
    pub const DUALITY_UNIT: &str = "dual-invariant-t-nonzero-dims";
    pub const S_SQUARED: &str = "s-squared-equals-n-c";
    pub const PROPORTIONALITY: &str = "twist-proportionality-constant-form";
    pub const INTEGRAL_FUSION: &str = "verlinde-nonnegative-integers";

    pub const S_STAR_INVARIANT: &str = "s-star-invariant";
    pub const DIMS_STAR_INVARIANT: &str = "dims-star-invariant";
    pub const C_COMMUTES_S: &str = "c-commutes-with-s";
    pub const C_COMMUTES_T: &str = "c-commutes-with-t";
    pub const FUSION_UNIT: &str = "fusion-unit-delta";
    pub const FUSION_DUAL: &str = "fusion-dual-delta";
    pub const S_FROM_FUSION: &str = "s-from-fusion-and-twists";
    pub const GAUSS_PRODUCT: &str = "gauss-times-reciprocal";

    pub const POWER_2NM: &str = "gauss-ratio-power-2nm";
    pub const POWER_2N: &str = "gauss-ratio-power-2n";
    pub const POWER_N: &str = "gauss-ratio-power-n";
}

/// Quantities derived from a valid datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumReport {
    /// Global dimension.
    pub n: CycloNum,
    /// Order of `T`.
    pub exponent: u64,
    /// Order of `T / t_o`.
    pub normalized_exponent: u64,
    pub dims: Vec<CycloNum>,
    pub g: CycloNum,
    pub g_rec: CycloNum,
    pub normalized: bool,
    pub integral: bool,
}

impl DatumReport {
    /// `n` as a positive integer, for integral data.
    pub fn n_integer(&self) -> Option<u64> {
        self.n
            .as_integer()
            .and_then(|v| u64::try_from(v).ok())
            .filter(|&v| v > 0)
    }
}

/// A datum that passed all axioms, with its derived report and fusion table.
#[derive(Clone, Debug)]
pub struct CheckedDatum {
    datum: ModularDatum,
    report: DatumReport,
    fusion: FusionTable,
}

impl Deref for CheckedDatum {
    type Target = ModularDatum;
    fn deref(&self) -> &ModularDatum {
        &self.datum
    }
}

impl CheckedDatum {
    pub fn datum(&self) -> &ModularDatum {
        &self.datum
    }

    pub fn report(&self) -> &DatumReport {
        &self.report
    }

    pub fn fusion(&self) -> &FusionTable {
        &self.fusion
    }

    pub fn into_datum(self) -> ModularDatum {
        self.datum
    }

    /// The elementary identities implied by the axioms, each checked exactly.
    pub fn verify_structural_identities(&self) -> Report {
        let d = &self.datum;
        let m = d.size();
        let o = d.unit;
        let l = &d.labels;
        let mut r = Report::new();

        let find2 = |f: &dyn Fn(usize, usize) -> bool| {
            (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| !f(i, j))
        };
        r.expect_none(
            names::S_STAR_INVARIANT,
            find2(&|i, j| d.s(d.star[i], d.star[j]) == d.s(i, j))
                .map(|(i, j)| format!("s[{}*,{}*] != s[{},{}]", l[i], l[j], l[i], l[j])),
        );
        r.expect_none(
            names::DIMS_STAR_INVARIANT,
            (0..m)
                .find(|&i| d.dim(d.star[i]) != d.dim(i))
                .map(|i| format!("n[{}*] != n[{}]", l[i], l[i])),
        );
        let c = d.c_matrix();
        let cs = c.mul(&d.s).expect("square");
        let sc = d.s.mul(&c).expect("square");
        r.expect_none(
            names::C_COMMUTES_S,
            cs.first_difference(&sc)
                .map(|(i, j)| format!("(CS)[{},{}] != (SC)[{},{}]", l[i], l[j], l[i], l[j])),
        );
        let t = d.t_matrix();
        let ct = c.mul(&t).expect("square");
        let tc = t.mul(&c).expect("square");
        r.expect_none(
            names::C_COMMUTES_T,
            ct.first_difference(&tc)
                .map(|(i, j)| format!("(CT)[{},{}] != (TC)[{},{}]", l[i], l[j], l[i], l[j])),
        );

        let f = &self.fusion;
        r.expect_none(
            names::FUSION_UNIT,
            find2(&|i, j| {
                let want = (i == j) as u64;
                f.get(o, i, j) == want && f.get(i, o, j) == want
            })
            .map(|(i, j)| format!("N[o,{}]^{} or N[{},o]^{} != delta", l[i], l[j], l[i], l[j])),
        );
        r.expect_none(
            names::FUSION_DUAL,
            find2(&|i, j| f.get(i, j, o) == (i == d.star[j]) as u64)
                .map(|(i, j)| format!("N[{},{}]^o != delta(i, j*)", l[i], l[j])),
        );

        // s_ij = t_o/(t_i t_j) sum_k N_ik^j n_k t_k
        let nt: Vec<CycloNum> = (0..m).map(|k| d.dim(k) * &d.t[k]).collect();
        r.expect_none(
            names::S_FROM_FUSION,
            find2(&|i, j| {
                let mut acc = d.s(0, 0).zero_like();
                for k in 0..m {
                    let c = f.get(i, k, j);
                    if c != 0 {
                        acc = acc + nt[k].scale(&crate::Rational::from_integer(c.into()));
                    }
                }
                let lhs = &acc * &d.t[o];
                lhs == &(&d.t[i] * &d.t[j]) * d.s(i, j)
            })
            .map(|(i, j)| format!("entry [{},{}]", l[i], l[j])),
        );

        let rep = &self.report;
        let lhs = &rep.g * &rep.g_rec;
        let no = d.dim(o);
        let rhs = &rep.n * &(no * no);
        if lhs == rhs {
            r.pass(names::GAUSS_PRODUCT);
        } else {
            r.fail(names::GAUSS_PRODUCT, format!("g*g' = {} but n*n_o^2 = {}", lhs, rhs));
        }
        r
    }

    /// `(g/g')^{2Nm} = 1`; for integral data also `(g/g')^{2N} = 1` and, when
    /// `N` is even, `(g/g')^N = 1`.
    pub fn power_identity_check(&self) -> Report {
        let rep = &self.report;
        let ratio = rep.g.div(&rep.g_rec).expect("g' != 0");
        let big_n = rep.exponent;
        let m = self.size() as u64;
        let mut r = Report::new();
        let mut check = |name: &str, e: u64| {
            let v = ratio.pow_u(e);
            if v.is_one() {
                r.pass(name);
            } else {
                r.fail(name, format!("(g/g')^{} = {}", e, v));
            }
        };
        check(names::POWER_2NM, 2 * big_n * m);
        if rep.integral {
            check(names::POWER_2N, 2 * big_n);
            if big_n % 2 == 0 {
                check(names::POWER_N, big_n);
            } else {
                r.skip(names::POWER_N, "N is odd");
            }
        } else {
            r.skip(names::POWER_2N, "not integral");
            r.skip(names::POWER_N, "not integral");
        }
        r.note("gauss-ratio", &ratio);
        r
    }
}
