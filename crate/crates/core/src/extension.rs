//! Extended modular data: generalized ranks, central charges, homogeneous
//! matrices, and the congruence machinery over `SL(2, Z/M)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::check::Report;
use num_bigint::BigInt;

use crate::cyclotomic::{sqrt_integer, CycloNum};
use crate::datum::ModularDatum;
use crate::galois::integral_invariants;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Default cap on `|SL(2, Z/M)|` for enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 1_000_000;

/// A datum together with a generalized rank `D` and a multiplicative central
/// charge `ℓ`.
#[derive(Clone, Debug)]
pub struct ExtendedDatum {
    datum: ModularDatum,
    rank: CycloNum,
    ell: CycloNum,
    is_rank: bool,
}

impl ExtendedDatum {
    pub fn datum(&self) -> &ModularDatum {
        &self.datum
    }

    /// The generalized rank `D`.
    pub fn rank(&self) -> &CycloNum {
        &self.rank
    }

    pub fn ell(&self) -> &CycloNum {
        &self.ell
    }

    /// Whether `D^2 = n`.
    pub fn is_rank(&self) -> bool {
        self.is_rank
    }
}

/// `n` from `(S^2)_{oo} = sum_k s_ok^2`.
fn global_dimension(d: &ModularDatum) -> CycloNum {
    let o = d.unit();
    (0..d.size()).fold(d.s(o, o).zero_like(), |acc, k| &acc + &(d.s(o, k) * d.s(k, o)))
}

fn positive_integer(x: &CycloNum) -> Result<u64> {
    x.as_integer()
        .and_then(|v| u64::try_from(v).ok())
        .filter(|&v| v > 0)
        .ok_or(Error::NotIntegral)
}

/// The four generalized ranks `±r, ±ζ_4 r` with `r = √n`, each paired with
/// whether it is a rank.
pub fn enumerate_ranks(d: &ModularDatum) -> Result<Vec<(CycloNum, bool)>> {
    let n_val = global_dimension(d);
    let n = positive_integer(&n_val)?;
    let r = sqrt_integer(n);
    let i = CycloNum::root_of_unity(4, 1);
    let n2 = &n_val * &n_val;
    let out: Vec<(CycloNum, bool)> = [r.clone(), -r.clone(), &i * &r, -(&i * &r)]
        .into_iter()
        .map(|x| {
            let sq = &x * &x;
            debug_assert!(sq.pow_u(2) == n2);
            let rank = sq == n_val;
            (x, rank)
        })
        .collect();
    Ok(out)
}

/// `w = g / (n_o t_o D)`.
fn charge_cube(d: &ModularDatum, rank: &CycloNum) -> Result<CycloNum> {
    let o = d.unit();
    d.gauss_sum().div(&(&(d.dim(o) * d.t(o)) * rank))
}

/// The three `ℓ` with `ℓ^3 = g / (n_o t_o D)`, by exhaustive search over
/// `±ζ_{3 d_w}^j` where `d_w` is the order of the right-hand side.
pub fn enumerate_charges(d: &ModularDatum, rank: &CycloNum) -> Result<Vec<CycloNum>> {
    let w = charge_cube(d, rank)?;
    let dw = w.root_of_unity_order().ok_or(Error::ChargeNotRootOfUnity)?;
    let m = u32::try_from(3 * dw).map_err(|_| Error::ChargeNotRootOfUnity)?;
    let mut out: Vec<CycloNum> = Vec::new();
    for j in 0..m as i64 {
        let z = CycloNum::root_of_unity(m, j);
        for cand in [z.clone(), -z] {
            if cand.pow_u(3) == w && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    if out.len() != 3 {
        return Err(Error::Structure(format!("found {} cube roots", out.len())));
    }
    Ok(out)
}

/// Validates `D^4 = n^2`, `ℓ^3 = g / (n_o t_o D)`, that `ℓ` is a root of
/// unity, and the relations `S'^4 = E`, `(T'S')^3 = S'^2`.
pub fn make_extension(d: &ModularDatum, rank: CycloNum, ell: CycloNum) -> Result<ExtendedDatum> {
    let n = global_dimension(d);
    if rank.pow_u(4) != &n * &n {
        return Err(Error::InvalidExtension(format!("D^4 != n^2 for D = {}", rank)));
    }
    if rank.is_zero() || ell.pow_u(3) != charge_cube(d, &rank)? {
        return Err(Error::InvalidExtension(format!("ell^3 != g/(n_o t_o D) for ell = {}", ell)));
    }
    if ell.root_of_unity_order().is_none() {
        return Err(Error::InvalidExtension(format!("ell = {} is not a root of unity", ell)));
    }
    let is_rank = &rank * &rank == n;
    let e = ExtendedDatum {
        datum: d.clone(),
        rank,
        ell,
        is_rank,
    };
    let (s, t) = homogeneous_matrices(&e)?;
    let s2 = s.mul(&s)?;
    if !s2.mul(&s2)?.is_identity() {
        return Err(Error::InvalidExtension("S'^4 != E".into()));
    }
    if t.mul(&s)?.pow(3)? != s2 {
        return Err(Error::InvalidExtension("(T'S')^3 != S'^2".into()));
    }
    Ok(e)
}

/// `S' = S/D` and `T' = T/(t_o ℓ)`.
pub fn homogeneous_matrices(e: &ExtendedDatum) -> Result<(Matrix, Matrix)> {
    let d = &e.datum;
    let s = d.s_matrix().scale(&e.rank.inv()?);
    let t = d.t_matrix().scale(&(d.t(d.unit()) * &e.ell).inv()?);
    Ok((s, t))
}

/// All twelve extensions, ranks in the order of [`enumerate_ranks`] and
/// charges in search order.
pub fn extension_family(d: &ModularDatum) -> Result<Vec<ExtendedDatum>> {
    let mut out = Vec::with_capacity(12);
    for (rank, _) in enumerate_ranks(d)? {
        for ell in enumerate_charges(d, &rank)? {
            out.push(make_extension(d, rank.clone(), ell)?);
        }
    }
    Ok(out)
}

/// Any two extensions differ by a twelfth root of unity `ζ` acting as
/// `(D, ℓ) ↦ (D/ζ^3, ζℓ)`, and every such `ζ` preserves the family.
pub fn extension_family_check(d: &ModularDatum) -> Result<Report> {
    let family = extension_family(d)?;
    let mut r = Report::new();
    r.note("extensions", family.len());
    r.record("extension-count", family.len() == 12, None);

    let mut related = None;
    'p: for (a, x) in family.iter().enumerate() {
        for (b, y) in family.iter().enumerate() {
            let z = y.ell.div(&x.ell)?;
            let ok = z.pow_u(12).is_one() && y.rank == x.rank.div(&z.pow_u(3))?;
            if !ok {
                related = Some(format!("extensions {} and {}", a, b));
                break 'p;
            }
        }
    }
    r.expect_none("extensions-related-by-twelfth-root", related);

    let mut closed = None;
    'c: for x in &family {
        for k in 0..12 {
            let z = CycloNum::root_of_unity(12, k);
            let rank = x.rank.div(&z.pow_u(3))?;
            let ell = &z * &x.ell;
            if !family.iter().any(|y| y.rank == rank && y.ell == ell) {
                closed = Some(format!("zeta_12^{} applied to D = {}, ell = {}", k, x.rank, x.ell));
                break 'c;
            }
        }
    }
    r.expect_none("family-closed-under-twelfth-roots", closed);
    Ok(r)
}

/// The `c` mod 24 with `ℓ = ζ_24^c`.
pub fn additive_charge(e: &ExtendedDatum) -> Result<u8> {
    if !e.ell.pow_u(24).is_one() {
        return Err(Error::ChargeOrderTooLarge);
    }
    let c = (0..24u8)
        .find(|&c| CycloNum::root_of_unity(24, c as i64) == e.ell)
        .expect("24th roots of unity are powers of zeta_24");
    if e.is_rank {
        if let Ok(inv) = integral_invariants(&e.datum) {
            if inv.exponent % 2 == 1 && c % 2 == 1 {
                return Err(Error::Structure(format!(
                    "odd exponent {} with a rank but c = {} is odd",
                    inv.exponent, c
                )));
            }
        }
    }
    Ok(c)
}

/// `ℓ^24 = 1` and `g^4 = t_o^8 g'^4`.
pub fn charge_bounds_check(e: &ExtendedDatum) -> Result<Report> {
    let d = &e.datum;
    let g = d.gauss_sum();
    let g_rec = d.reciprocal_gauss_sum().ok_or(Error::DivisionByZero)?;
    let to8 = d.t(d.unit()).pow_u(8);
    let mut r = Report::new();
    let ok = e.ell.pow_u(24).is_one();
    r.record("charge-order-24", ok, (!ok).then(|| format!("ell = {}", e.ell)));
    let ok = g.pow_u(4) == &to8 * &g_rec.pow_u(4);
    r.record("gauss-fourth-power", ok, (!ok).then(|| format!("g = {}, g' = {}", g, g_rec)));
    let (g2, r2) = (&g * &g, &g_rec * &g_rec);
    r.note("g4-equals-g-rec4", g2.pow_u(2) == r2.pow_u(2));
    r.note("g2-equals-g-rec2", g2 == r2);
    Ok(r)
}

/// 2×2 integer matrices, row-major.
pub type IntMatrix = [[i64; 2]; 2];

fn imul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn ipow(a: &IntMatrix, e: i64) -> IntMatrix {
    let base = if e < 0 { iinv(a) } else { *a };
    (0..e.unsigned_abs()).fold([[1, 0], [0, 1]], |acc, _| imul(&acc, &base))
}

/// Inverse of a determinant-one matrix.
fn iinv(a: &IntMatrix) -> IntMatrix {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

fn itranspose(a: &IntMatrix) -> IntMatrix {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

const S_GEN: IntMatrix = [[0, -1], [1, 0]];
const T_GEN: IntMatrix = [[1, 1], [0, 1]];

/// `d(q, r) = s t^r s^-1 t^q s t^r = [[q, qr-1], [1-qr, r(2-qr)]]`.
pub fn d_matrix(q: i64, r: i64) -> IntMatrix {
    let closed = [[q, q * r - 1], [1 - q * r, r * (2 - q * r)]];
    let s_inv = iinv(&S_GEN);
    let word = [
        S_GEN,
        ipow(&T_GEN, r),
        s_inv,
        ipow(&T_GEN, q),
        S_GEN,
        ipow(&T_GEN, r),
    ]
    .iter()
    .fold([[1, 0], [0, 1]], |acc, m| imul(&acc, m));
    assert_eq!(word, closed, "d({}, {}) word product", q, r);
    let g_inv = iinv(&closed);
    assert_eq!(imul(&S_GEN, &g_inv), imul(&itranspose(&closed), &S_GEN));
    assert_eq!(
        imul(&S_GEN, &g_inv),
        imul(&d_matrix_closed(-q, -r), &s_inv),
        "s d(q,r)^-1 = d(-q,-r) s^-1"
    );
    closed
}

fn d_matrix_closed(q: i64, r: i64) -> IntMatrix {
    [[q, q * r - 1], [1 - q * r, r * (2 - q * r)]]
}

/// Generators in Cayley-graph order; capitals are inverses.
pub const GENERATOR_NAMES: [char; 4] = ['s', 't', 'S', 'T'];

/// `SL(2, Z/M)` enumerated by breadth-first search from the identity under
/// right multiplication by `s, t, s^-1, t^-1`.
#[derive(Clone, Debug)]
pub struct SL2Mod {
    modulus: u64,
    elements: Vec<[u64; 4]>,
    /// `edges[g][x]` is the index of `g·x`.
    edges: Vec<[u32; 4]>,
    /// BFS tree: the element and generator that first reached each element.
    parent: Vec<Option<(u32, u8)>>,
    generators: [u32; 4],
}

impl SL2Mod {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Entries `[a, b, c, d]` of the element `[[a, b], [c, d]]`.
    pub fn element(&self, k: usize) -> [u64; 4] {
        self.elements[k]
    }

    pub fn elements(&self) -> &[[u64; 4]] {
        &self.elements
    }

    /// Indices of `s, t, s^-1, t^-1`.
    pub fn generators(&self) -> [usize; 4] {
        self.generators.map(|g| g as usize)
    }

    pub fn neighbor(&self, k: usize, gen: usize) -> usize {
        self.edges[k][gen] as usize
    }

    /// The BFS word reaching element `k`.
    pub fn word(&self, mut k: usize) -> String {
        let mut letters = Vec::new();
        while let Some((p, x)) = self.parent[k] {
            letters.push(GENERATOR_NAMES[x as usize]);
            k = p as usize;
        }
        letters.iter().rev().collect()
    }
}

fn gen_mod(m: u64) -> [[u64; 4]; 4] {
    let r = |v: i64| arith::rem(v, m);
    [
        [0, r(-1), r(1), 0],
        [r(1), r(1), 0, r(1)],
        [0, r(1), r(-1), 0],
        [r(1), r(-1), 0, r(1)],
    ]
}

fn mul_mod(a: &[u64; 4], b: &[u64; 4], m: u64) -> [u64; 4] {
    let f = |x: u64, y: u64, z: u64, w: u64| ((x as u128 * y as u128 + z as u128 * w as u128) % m as u128) as u64;
    [
        f(a[0], b[0], a[1], b[2]),
        f(a[0], b[1], a[1], b[3]),
        f(a[2], b[0], a[3], b[2]),
        f(a[2], b[1], a[3], b[3]),
    ]
}

/// Enumerates `SL(2, Z/M)`, refusing when its order exceeds `max_order`.
pub fn sl2_enumerate(m: u64, max_order: u64) -> Result<SL2Mod> {
    if m == 0 {
        return Err(Error::BadModulus(0));
    }
    let order = arith::sl2_order(m);
    if order > max_order {
        return Err(Error::TooLarge {
            order,
            bound: max_order,
        });
    }
    let gens = gen_mod(m);
    let key = |e: &[u64; 4]| ((e[0] * m + e[1]) * m + e[2]) * m + e[3];
    let identity = [1 % m, 0, 0, 1 % m];
    let mut index: BTreeMap<u64, u32> = BTreeMap::new();
    index.insert(key(&identity), 0);
    let mut elements = vec![identity];
    let mut parent = vec![None];
    let mut edges = Vec::with_capacity(order as usize);
    let mut head = 0;
    while head < elements.len() {
        let g = elements[head];
        let mut row = [0u32; 4];
        for (x, gen) in gens.iter().enumerate() {
            let h = mul_mod(&g, gen, m);
            let next = elements.len() as u32;
            let k = *index.entry(key(&h)).or_insert(next);
            if k == next {
                elements.push(h);
                parent.push(Some((head as u32, x as u8)));
            }
            row[x] = k;
        }
        edges.push(row);
        head += 1;
    }
    assert_eq!(elements.len() as u64, order, "SL(2, Z/{}) order", m);
    let generators = [edges[0][0], edges[0][1], edges[0][2], edges[0][3]];
    Ok(SL2Mod {
        modulus: m,
        elements,
        edges,
        parent,
        generators,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    Linear,
    Projective,
}

/// A Cayley edge `g·x = h` along which the assigned matrices disagree.
#[derive(Clone, Debug)]
pub struct CongruenceWitness {
    /// The element `h` as `[a, b, c, d]` mod `M`.
    pub element: [u64; 4],
    /// BFS word of `h`.
    pub word: String,
    /// The other word reaching `h`: BFS word of `g` followed by `x`.
    pub alternative: String,
    pub via_tree: Matrix,
    pub via_edge: Matrix,
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub modulus: u64,
    pub linear_factors: bool,
    pub projective_factors: bool,
    /// First failing edge in BFS order for the requested mode.
    pub witness: Option<CongruenceWitness>,
}

/// Interns matrices by their coefficient vectors over a fixed field.
struct Images {
    conductor: u32,
    mats: Vec<Matrix>,
    index: BTreeMap<Vec<(Vec<BigInt>, BigInt)>, usize>,
    /// `memo[i][x]`: image index of `mats[i]·gen[x]`.
    memo: Vec<[Option<usize>; 4]>,
    proportional: BTreeMap<(usize, usize), bool>,
}

impl Images {
    fn intern(&mut self, m: Matrix) -> Result<usize> {
        let key = m
            .entries()
            .iter()
            .map(|x| {
                let x = x.lift_conductor(self.conductor)?;
                let (num, den) = x.raw_parts();
                Ok((num.to_vec(), den.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&i) = self.index.get(&key) {
            return Ok(i);
        }
        let i = self.mats.len();
        self.index.insert(key, i);
        self.mats.push(m);
        self.memo.push([None; 4]);
        Ok(i)
    }

    fn times(&mut self, i: usize, x: usize, gens: &[Matrix; 4]) -> Result<usize> {
        if let Some(j) = self.memo[i][x] {
            return Ok(j);
        }
        let prod = self.mats[i].mul(&gens[x])?;
        let j = self.intern(prod)?;
        self.memo[i][x] = Some(j);
        Ok(j)
    }

    /// Equality up to a scalar, by cross-multiplication against the first
    /// nonzero entry of `b`; both matrices are invertible.
    fn proportional(&mut self, a: usize, b: usize) -> bool {
        let pair = (a.min(b), a.max(b));
        if let Some(&v) = self.proportional.get(&pair) {
            return v;
        }
        let (ma, mb) = (self.mats[a].entries(), self.mats[b].entries());
        let k = mb.iter().position(|x| !x.is_zero()).expect("invertible");
        let v = ma.iter().zip(mb).all(|(x, y)| x * &mb[k] == &ma[k] * y);
        self.proportional.insert(pair, v);
        v
    }
}

/// Decides whether `s ↦ s_mat, t ↦ t_mat` factors through `SL(2, Z/M)`,
/// exactly and up to scalars, by checking every Cayley edge against the
/// BFS-tree assignment.
pub fn factor_check(
    s_mat: &Matrix,
    t_mat: &Matrix,
    m: u64,
    mode: FactorMode,
    max_order: u64,
) -> Result<CongruenceReport> {
    let group = sl2_enumerate(m, max_order)?;
    factor_check_in(&group, s_mat, t_mat, mode)
}

/// [`factor_check`] over an already enumerated group.
pub fn factor_check_in(
    group: &SL2Mod,
    s_mat: &Matrix,
    t_mat: &Matrix,
    mode: FactorMode,
) -> Result<CongruenceReport> {
    cayley_check(group, s_mat, t_mat, mode, false)
}

/// Whether `(s_mat, t_mat)` factors linearly; stops at the first bad edge.
fn factors_linearly(group: &SL2Mod, s_mat: &Matrix, t_mat: &Matrix) -> Result<bool> {
    Ok(cayley_check(group, s_mat, t_mat, FactorMode::Linear, true)?.linear_factors)
}

fn cayley_check(
    group: &SL2Mod,
    s_mat: &Matrix,
    t_mat: &Matrix,
    mode: FactorMode,
    linear_only: bool,
) -> Result<CongruenceReport> {
    let gens = [s_mat.clone(), t_mat.clone(), s_mat.inverse()?, t_mat.inverse()?];
    let conductor = gens
        .iter()
        .flat_map(|g| g.entries())
        .fold(1u64, |acc, x| arith::lcm(acc, x.conductor() as u64));
    let conductor = u32::try_from(conductor).map_err(|_| Error::BadModulus(conductor))?;
    // one shared field keeps every product from rebuilding a common field
    let gens = gens
        .iter()
        .map(|g| g.try_map(|x| x.lift_conductor(conductor)))
        .collect::<Result<Vec<_>>>()?;
    let gens: [Matrix; 4] = gens.try_into().expect("four generators");
    let mut images = Images {
        conductor,
        mats: Vec::new(),
        index: BTreeMap::new(),
        memo: Vec::new(),
        proportional: BTreeMap::new(),
    };
    let mut assigned = vec![usize::MAX; group.len()];
    assigned[0] = images.intern(gens[0].mul(&gens[2])?)?;

    let mut linear_fail: Option<(usize, usize)> = None;
    let mut proj_fail: Option<(usize, usize)> = None;
    for g in 0..group.len() {
        for x in 0..4 {
            let h = group.neighbor(g, x);
            let img = images.times(assigned[g], x, &gens)?;
            if assigned[h] == usize::MAX {
                assigned[h] = img;
                continue;
            }
            if assigned[h] == img {
                continue;
            }
            if linear_fail.is_none() {
                linear_fail = Some((g, x));
            }
            if proj_fail.is_none() && !images.proportional(assigned[h], img) {
                proj_fail = Some((g, x));
            }
        }
        if proj_fail.is_some() || (linear_only && linear_fail.is_some()) {
            break;
        }
    }
    let fail = match mode {
        FactorMode::Linear => linear_fail,
        FactorMode::Projective => proj_fail,
    };
    let witness = fail.map(|(g, x)| {
        let h = group.neighbor(g, x);
        let mut alternative = group.word(g);
        alternative.push(GENERATOR_NAMES[x]);
        CongruenceWitness {
            element: group.element(h),
            word: group.word(h),
            alternative,
            via_tree: images.mats[assigned[h]].clone(),
            via_edge: images.mats[images.memo[assigned[g]][x].expect("edge product computed")].clone(),
        }
    });
    Ok(CongruenceReport {
        modulus: group.modulus(),
        linear_factors: linear_fail.is_none(),
        projective_factors: proj_fail.is_none(),
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct CongruenceClassification {
    pub normalized_exponent: u64,
    /// Projective factoring of `(S, T)` at `N_o`.
    pub projective: CongruenceReport,
    /// Linear factoring of `(S', T')` at `N_o`.
    pub linear: CongruenceReport,
    /// Smallest candidate level at which `(S', T')` factors linearly.
    pub minimal_level: Option<u64>,
    /// Candidates skipped because the group exceeded the bound.
    pub skipped_levels: Vec<u64>,
}

impl CongruenceClassification {
    pub fn is_projective_congruence(&self) -> bool {
        self.projective.projective_factors
    }

    pub fn is_congruence(&self) -> bool {
        self.linear.linear_factors
    }
}

/// Default candidate levels: divisors of `24 N_o`.
pub fn default_levels(normalized_exponent: u64) -> Vec<u64> {
    arith::divisors(24 * normalized_exponent)
}

pub fn congruence_classify(
    e: &ExtendedDatum,
    levels: Option<&[u64]>,
    max_order: u64,
) -> Result<CongruenceClassification> {
    let d = &e.datum;
    let n_o = integral_invariants(d)?.normalized_exponent;
    let projective = factor_check(d.s_matrix(), &d.t_matrix(), n_o, FactorMode::Projective, max_order)?;
    let (s, t) = homogeneous_matrices(e)?;
    let linear = factor_check(&s, &t, n_o, FactorMode::Linear, max_order)?;
    let mut candidates: Vec<u64> = match levels {
        Some(l) => l.to_vec(),
        None => default_levels(n_o),
    };
    candidates.sort_unstable();
    candidates.dedup();
    let mut minimal_level = None;
    let mut skipped_levels = Vec::new();
    for m in candidates {
        match sl2_enumerate(m, max_order) {
            Ok(group) => {
                if factors_linearly(&group, &s, &t)? {
                    minimal_level = Some(m);
                    break;
                }
            }
            Err(Error::TooLarge { .. }) => skipped_levels.push(m),
            Err(err) => return Err(err),
        }
    }
    Ok(CongruenceClassification {
        normalized_exponent: n_o,
        projective,
        linear,
        minimal_level,
        skipped_levels,
    })
}

/// The extensions whose homogeneous matrices factor linearly through
/// `SL(2, Z/M)`.
pub fn lift_search(d: &ModularDatum, m: u64, max_order: u64) -> Result<Vec<ExtendedDatum>> {
    let group = sl2_enumerate(m, max_order)?;
    let mut out = Vec::new();
    for e in extension_family(d)? {
        let (s, t) = homogeneous_matrices(&e)?;
        if factors_linearly(&group, &s, &t)? {
            out.push(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{radford_datum, semion_datum, trivial_datum};

    fn z(m: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(m, k)
    }

    fn int(n: i64) -> CycloNum {
        CycloNum::from_integer(n)
    }

    /// Determinant-one matrices mod `m` counted by brute force.
    fn brute_sl2(m: u64) -> usize {
        let mut count = 0;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        if (a * d + m * m - b * c % m) % m == 1 % m {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn ranks() {
        let sq: Vec<CycloNum> = enumerate_ranks(&semion_datum())
            .unwrap()
            .iter()
            .map(|(x, _)| x * x)
            .collect();
        assert_eq!(sq, vec![int(2), int(2), int(-2), int(-2)]);
        let flags: Vec<bool> = enumerate_ranks(&semion_datum()).unwrap().iter().map(|x| x.1).collect();
        assert_eq!(flags, vec![true, true, false, false]);
        let t: Vec<CycloNum> = enumerate_ranks(&trivial_datum()).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(t, vec![int(1), int(-1), z(4, 1), -z(4, 1)]);
        let r9 = enumerate_ranks(&radford_datum(9, 1).unwrap()).unwrap();
        assert_eq!((r9[0].0.clone(), r9[0].1, r9[1].1), (int(3), true, true));
    }

    #[test]
    fn charges() {
        let t = trivial_datum();
        let c = enumerate_charges(&t, &int(1)).unwrap();
        assert_eq!(c, vec![int(1), z(3, 1), z(3, 2)]);
        let s = semion_datum();
        for (rank, _) in enumerate_ranks(&s).unwrap() {
            let w = s.gauss_sum().div(&rank).unwrap();
            let cs = enumerate_charges(&s, &rank).unwrap();
            assert!(cs.iter().all(|l| l.pow_u(3) == w));
            if &rank * &rank == int(-2) {
                let ell = (int(1) - z(4, 1)).div(&rank).unwrap();
                assert!(cs.contains(&ell));
            }
        }
    }

    #[test]
    fn homogeneous() {
        let t = trivial_datum();
        let e = make_extension(&t, int(1), int(1)).unwrap();
        let (s, tt) = homogeneous_matrices(&e).unwrap();
        assert!(s.is_identity() && tt.is_identity());
        assert!(matches!(
            make_extension(&t, int(2), int(1)),
            Err(Error::InvalidExtension(_))
        ));
        assert!(matches!(
            make_extension(&t, int(1), z(4, 1)),
            Err(Error::InvalidExtension(_))
        ));
        for n in [3, 5] {
            assert_eq!(extension_family(&radford_datum(n, 1).unwrap()).unwrap().len(), 12);
        }
    }

    #[test]
    fn families() {
        for d in [semion_datum(), trivial_datum(), radford_datum(3, 1).unwrap()] {
            let r = extension_family_check(&d).unwrap();
            assert!(r.all_passed(), "{}", r);
            assert_eq!(r.note_value("extensions"), Some("12"));
        }
    }

    #[test]
    fn additive_charges() {
        let t = trivial_datum();
        assert_eq!(additive_charge(&make_extension(&t, int(1), int(1)).unwrap()), Ok(0));
        let s = semion_datum();
        let mut seen = Vec::new();
        for (rank, _) in enumerate_ranks(&s).unwrap() {
            if &rank * &rank != int(-2) {
                continue;
            }
            let ell = (int(1) - z(4, 1)).div(&rank).unwrap();
            assert_eq!(&ell * &ell, z(4, 1));
            let c = additive_charge(&make_extension(&s, rank, ell.clone()).unwrap()).unwrap();
            assert_eq!(z(24, c as i64), ell);
            seen.push(c);
        }
        seen.sort();
        assert_eq!(seen, vec![3, 15]);
        let r5 = radford_datum(5, 1).unwrap();
        for e in extension_family(&r5).unwrap().into_iter().filter(|e| e.is_rank()) {
            let c = additive_charge(&e).unwrap();
            assert_eq!(c % 4, 0, "c = {}", c);
        }
        let bad = make_extension(&t, int(1), int(1)).map(|mut e| {
            e.ell = z(5, 1);
            e
        });
        assert_eq!(additive_charge(&bad.unwrap()), Err(Error::ChargeOrderTooLarge));
    }

    #[test]
    fn d_matrices() {
        assert_eq!(d_matrix(1, 1), [[1, 0], [0, 1]]);
        assert_eq!(d_matrix(0, 0), S_GEN);
        let d = d_matrix(5, 5);
        let reduced = d.map(|r| r.map(|x| x.rem_euclid(8)));
        assert_eq!(reduced, [[5, 0], [0, 5]]);
        for q in -4..5 {
            for r in -4..5 {
                d_matrix(q, r);
            }
        }
    }

    #[test]
    fn sl2_orders() {
        for m in 1..=6 {
            let g = sl2_enumerate(m, DEFAULT_MAX_GROUP_ORDER).unwrap();
            assert_eq!(g.len(), brute_sl2(m), "M = {}", m);
        }
        assert_eq!(sl2_enumerate(2, 100).unwrap().len(), 6);
        assert_eq!(sl2_enumerate(4, 100).unwrap().len(), 48);
        assert_eq!(sl2_enumerate(1, 100).unwrap().len(), 1);
        assert_eq!(
            sl2_enumerate(8, 100).unwrap_err(),
            Error::TooLarge { order: 384, bound: 100 }
        );
        let g = sl2_enumerate(5, 1000).unwrap();
        assert_eq!(g.word(g.generators()[3]), "T");
    }

    #[test]
    fn semion_congruence() {
        let s = semion_datum();
        let p = factor_check(s.s_matrix(), &s.t_matrix(), 4, FactorMode::Projective, 1000).unwrap();
        assert!(p.projective_factors && p.witness.is_none());
        assert!(!p.linear_factors);
        for e in extension_family(&s).unwrap() {
            let (a, b) = homogeneous_matrices(&e).unwrap();
            let r = factor_check(&a, &b, 4, FactorMode::Linear, 1000).unwrap();
            assert!(!r.linear_factors);
            let w = r.witness.unwrap();
            assert_ne!(w.via_tree, w.via_edge);
        }
        assert!(lift_search(&s, 4, 1000).unwrap().is_empty());
        let l8 = lift_search(&s, 8, 1000).unwrap();
        assert!(l8
            .iter()
            .any(|e| e.rank() * e.rank() == int(-2) && *e.ell() == (int(1) - z(4, 1)).div(e.rank()).unwrap()));
        assert_eq!(lift_search(&s, 24, 10_000).unwrap().len(), 12);
    }

    #[test]
    fn classification() {
        let s = semion_datum();
        for e in extension_family(&s).unwrap() {
            let c = congruence_classify(&e, None, DEFAULT_MAX_GROUP_ORDER).unwrap();
            assert!(c.is_projective_congruence());
            assert!(!c.is_congruence());
            assert!(matches!(c.minimal_level, Some(8) | Some(24)), "{:?}", c.minimal_level);
        }
        let t = trivial_datum();
        let e = make_extension(&t, int(1), int(1)).unwrap();
        let c = congruence_classify(&e, None, 1000).unwrap();
        assert!(c.is_congruence() && c.minimal_level == Some(1));
        let r5 = radford_datum(5, 1).unwrap();
        for e in extension_family(&r5).unwrap() {
            let c = congruence_classify(&e, Some(&[5, 15]), 10_000).unwrap();
            assert!(c.is_projective_congruence());
        }
    }

    #[test]
    fn charge_bounds() {
        for d in [semion_datum(), radford_datum(3, 1).unwrap(), radford_datum(5, 2).unwrap()] {
            for e in extension_family(&d).unwrap() {
                let r = charge_bounds_check(&e).unwrap();
                assert!(r.all_passed(), "{}", r);
            }
        }
        let s = semion_datum();
        let g = s.gauss_sum();
        let g_rec = s.reciprocal_gauss_sum().unwrap();
        assert_ne!(&g * &g, &g_rec * &g_rec);
        let r = charge_bounds_check(&extension_family(&s).unwrap()[0]).unwrap();
        assert_eq!(r.note_value("g4-equals-g-rec4"), Some("true"));
        assert_eq!(r.note_value("g2-equals-g-rec2"), Some("false"));
    }

    #[test]
    fn rescaling() {
        let s = semion_datum();
        let mu = int(2);
        let zeta = z(3, 1);
        let scaled = ModularDatum::new(
            s.labels().to_vec(),
            s.unit(),
            s.star_perm().to_vec(),
            s.s_matrix().scale(&mu).to_rows(),
            s.t_diag().iter().map(|t| t * &zeta).collect(),
        )
        .unwrap();
        assert!(scaled.validate_axioms().all_passed());
        for e in extension_family(&s).unwrap() {
            let f = make_extension(&scaled, &mu * e.rank(), e.ell().clone()).unwrap();
            assert_eq!(homogeneous_matrices(&e).unwrap().0, homogeneous_matrices(&f).unwrap().0);
            assert_eq!(homogeneous_matrices(&e).unwrap().1, homogeneous_matrices(&f).unwrap().1);
        }
    }
}
