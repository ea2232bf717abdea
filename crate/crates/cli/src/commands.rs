//! One function per subcommand. Each returns the bundle that the binary
//! prints, so library callers get byte-identical results.

use moddata::constructors::{classical_gauss_sum, cocycle_omega, verify_3cocycle, verify_gauss_lemma};
use moddata::extension::{
    additive_charge, charge_bounds_check, congruence_classify, extension_family,
    extension_family_check, factor_check, lift_search, CongruenceReport, CongruenceWitness,
    ExtendedDatum, FactorMode, DEFAULT_MAX_GROUP_ORDER,
};
use moddata::fusion::{verify_idempotent_laws, verify_ring_homomorphisms};
use moddata::galois::{
    all_actions, arithmetic_divisibility_checks, fusion_symbol_analysis, fusion_symbol_table,
    galois_datum_witness, integral_invariants, odd_sign_analysis, relact_check,
    verify_action_laws, verlinde_field_index,
};
use moddata::{arith, CheckedDatum, Error, ModularDatum, Report};
use serde_json::{json, Value};

use crate::bundle::{AnalysisBundle, Section, Verdict};
use crate::error::{CliError, Result};
use crate::json::{cyclo_to_json, datum_report_to_json, datum_to_json};

pub const DEFAULT_CONDUCTOR_LIMIT: u32 = 10_000;

/// Resource bounds shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: u64,
    pub conductor_limit: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            conductor_limit: DEFAULT_CONDUCTOR_LIMIT,
        }
    }
}

impl Limits {
    pub fn check_conductor(&self, d: &ModularDatum) -> Result<()> {
        if d.conductor() > self.conductor_limit {
            return Err(CliError::ResourceBound(format!(
                "datum conductor {} exceeds the limit {} (raise --conductor-limit)",
                d.conductor(),
                self.conductor_limit
            )));
        }
        Ok(())
    }
}

/// Runs the axioms; on failure the bundle already holds the failing section.
fn checked(d: &ModularDatum, b: &mut AnalysisBundle) -> Result<Option<CheckedDatum>> {
    let axioms = d.validate_axioms();
    let ok = axioms.all_passed();
    b.push(Section::from_report("validate_axioms", &axioms));
    Ok(if ok { Some(d.checked()?) } else { None })
}

/// Checks that need an integral datum are skipped otherwise.
fn require_integral(c: &CheckedDatum, b: &mut AnalysisBundle) -> bool {
    if c.report().integral {
        return true;
    }
    let mut s = Section::new("integral_invariants");
    s.push("integral", Verdict::Skipped("dimensions are not all positive integers".into()));
    b.push(s);
    false
}

fn labels_of(d: &ModularDatum, perm: &[usize]) -> Vec<String> {
    perm.iter().map(|&j| d.labels()[j].clone()).collect()
}

pub fn validate(d: &ModularDatum) -> Result<AnalysisBundle> {
    let mut b = AnalysisBundle::new("validate");
    if let Some(c) = checked(d, &mut b)? {
        b.report = Some(datum_report_to_json(c.report()));
    }
    Ok(b)
}

pub fn fusion_table(d: &ModularDatum) -> Result<AnalysisBundle> {
    let mut b = AnalysisBundle::new("fusion-table");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    let t = c.fusion();
    let m = t.size();
    let tensor: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|i| (0..m).map(|j| (0..m).map(|k| t.get(i, j, k)).collect()).collect())
        .collect();
    let mut s = Section::new("fusion_coefficients");
    s.push("labels", Verdict::plain(json!(d.labels())));
    s.push("N", Verdict::value(json!(tensor), fusion_text(d, &tensor)));
    b.push(s);
    b.push(Section::from_report("verify_laws", &t.verify_laws(d.unit(), d.star_perm())));
    Ok(b)
}

/// Rows `i ⊗ j`, columns `k`, entries `N_ij^k`.
fn fusion_text(d: &ModularDatum, tensor: &[Vec<Vec<u64>>]) -> String {
    let labels = d.labels();
    let pairs: Vec<String> = (0..labels.len())
        .flat_map(|i| (0..labels.len()).map(move |j| (i, j)))
        .map(|(i, j)| format!("{} x {}", labels[i], labels[j]))
        .collect();
    let left = pairs.iter().map(String::len).max().unwrap_or(0);
    let width = tensor
        .iter()
        .flatten()
        .flatten()
        .map(|v| v.to_string().len())
        .chain(labels.iter().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:left$}", "");
    for l in labels {
        out.push_str(&format!(" {:>width$}", l));
    }
    for (p, row) in pairs.iter().zip(tensor.iter().flatten()) {
        out.push('\n');
        out.push_str(&format!("{:left$}", p));
        for v in row {
            out.push_str(&format!(" {:>width$}", v));
        }
    }
    out
}

/// Integral invariants, the index actions, their laws, the Galois
/// predicate, the field index and, for Galois data, the relation of actions
/// (which includes the twisted Gauss-sum identity).
/// Returns whether the datum is Galois.
fn galois_sections(d: &ModularDatum, b: &mut AnalysisBundle, list_actions: bool) -> Result<bool> {
    let inv = integral_invariants(d)?;
    let mut s = Section::new("integral_invariants");
    s.push("n", Verdict::plain(json!(inv.n)));
    s.push("exponent", Verdict::plain(json!(inv.exponent)));
    s.push("normalized-exponent", Verdict::plain(json!(inv.normalized_exponent)));
    b.push(s);

    if list_actions {
        let actions: Vec<Value> = all_actions(d)?
            .iter()
            .map(|a| json!({ "q": a.q, "perm": a.perm, "labels": labels_of(d, &a.perm) }))
            .collect();
        let text = all_actions(d)?
            .iter()
            .map(|a| format!("q = {}: {}", a.q, labels_of(d, &a.perm).join(" ")))
            .collect::<Vec<_>>()
            .join("\n");
        let mut s = Section::new("all_actions");
        s.push("actions", Verdict::value(json!(actions), text));
        b.push(s);
    }

    b.push(Section::from_report("verify_action_laws", &verify_action_laws(d)?));

    let witness = galois_datum_witness(d)?;
    let mut s = Section::new("is_galois_datum");
    s.push("galois", Verdict::plain(json!(witness.is_none())));
    if let Some((q, i)) = witness {
        s.push("witness", Verdict::plain(json!({ "q": q, "index": d.labels()[i] })));
    }
    b.push(s);

    let mut s = Section::new("verlinde_field_index");
    match verlinde_field_index(d) {
        Ok(k) => s.push("index", Verdict::plain(json!(k))),
        Err(e) => s.push("index", Verdict::Fail(Some(e.to_string()))),
    }
    b.push(s);

    let galois = witness.is_none();
    if galois {
        let mut merged = Vec::new();
        for q in arith::units(inv.exponent) {
            let q_inv = arith::mod_inverse(q as i64, inv.exponent).expect("unit");
            merged.push((format!("q = {}", q), relact_check(d, q as i64, q_inv as i64)?));
        }
        b.push(Section::from_report("relact_check", &merge_reports(merged)));
    } else {
        let mut s = Section::new("relact_check");
        s.push("relation-of-actions", Verdict::Skipped("datum is not Galois".into()));
        b.push(s);
    }
    Ok(galois)
}

/// One check per name, passing iff it passes in every labelled report; the
/// witness names the first failing label. Notes come from the first report.
fn merge_reports(reports: Vec<(String, Report)>) -> Report {
    let mut out = Report::new();
    for (label, r) in &reports {
        for c in &r.checks {
            if out.get(&c.name).is_some() {
                if !c.passed() {
                    let slot = out.checks.iter_mut().find(|x| x.name == c.name).expect("present");
                    if slot.passed() {
                        *slot = c.clone();
                        slot.witness = Some(format!("{}: {}", label, c.witness.as_deref().unwrap_or("")));
                    }
                }
            } else {
                let mut c = c.clone();
                if !c.passed() {
                    c.witness = Some(format!("{}: {}", label, c.witness.as_deref().unwrap_or("")));
                }
                out.checks.push(c);
            }
        }
    }
    if let Some((_, first)) = reports.first() {
        out.notes = first.notes.clone();
    }
    out
}

fn symbol_sections(d: &ModularDatum, b: &mut AnalysisBundle) -> Result<()> {
    let table = fusion_symbol_table(d)?;
    let units = arith::units(table.modulus);
    let json_values: serde_json::Map<String, Value> = units
        .iter()
        .map(|&q| (q.to_string(), cyclo_to_json(table.get(q as i64))))
        .collect();
    let text = units
        .iter()
        .map(|&q| format!("f({}) = {}", q, table.get(q as i64)))
        .collect::<Vec<_>>()
        .join("\n");
    let mut s = Section::new("fusion_symbol_table");
    s.push("modulus", Verdict::plain(json!(table.modulus)));
    s.push("values", Verdict::value(Value::Object(json_values), text));
    b.push(s);
    b.push(Section::from_report("fusion_symbol_analysis", &fusion_symbol_analysis(d)?));

    let inv = integral_invariants(d)?;
    if inv.exponent % 2 == 1 {
        let (_, r) = odd_sign_analysis(d)?;
        b.push(Section::from_report("odd_sign_analysis", &r));
    } else {
        let mut s = Section::new("odd_sign_analysis");
        s.push("sign", Verdict::Skipped(format!("exponent {} is even", inv.exponent)));
        b.push(s);
    }
    Ok(())
}

fn witness_text(w: &CongruenceWitness) -> String {
    let [a, b, c, d] = w.element;
    format!(
        "[{} {}; {} {}] reached as {} and as {}",
        a,
        b,
        c,
        d,
        word_or_one(&w.word),
        word_or_one(&w.alternative)
    )
}

fn word_or_one(w: &str) -> &str {
    if w.is_empty() {
        "1"
    } else {
        w
    }
}

fn witness_json(w: &CongruenceWitness) -> Value {
    json!({ "element": w.element, "word": w.word, "alternative": w.alternative })
}

fn congruence_json(r: &CongruenceReport) -> Value {
    json!({
        "modulus": r.modulus,
        "linear": r.linear_factors,
        "projective": r.projective_factors,
        "witness": r.witness.as_ref().map(witness_json),
    })
}

pub fn analyze(d: &ModularDatum, limits: &Limits, extensions: bool) -> Result<AnalysisBundle> {
    limits.check_conductor(d)?;
    let mut b = AnalysisBundle::new("analyze");
    b.datum = Some(datum_to_json(d));
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    b.report = Some(datum_report_to_json(c.report()));
    b.push(Section::from_report("verify_structural_identities", &c.verify_structural_identities()));
    b.push(Section::from_report("power_identity_check", &c.power_identity_check()));
    b.push(Section::from_report("verify_laws", &c.fusion().verify_laws(d.unit(), d.star_perm())));
    b.push(Section::from_report("verify_ring_homomorphisms", &verify_ring_homomorphisms(d, c.fusion())?));
    b.push(Section::from_report("verify_idempotent_laws", &verify_idempotent_laws(d, c.fusion())?));
    if !require_integral(&c, &mut b) {
        return Ok(b);
    }
    let galois = galois_sections(d, &mut b, false)?;
    symbol_sections(d, &mut b)?;

    // Projective factoring of (S, T) at N_o feeds the divisibility checks.
    let n_o = c.report().normalized_exponent;
    let mut s = Section::new("factor_check");
    let projective = match factor_check(d.s_matrix(), &d.t_matrix(), n_o, FactorMode::Projective, limits.max_group_order) {
        Ok(r) => {
            let text = match &r.witness {
                None => format!("true (level {})", n_o),
                Some(w) => format!("false at level {}: {}", n_o, witness_text(w)),
            };
            s.push("projective-at-normalized-exponent", Verdict::value(congruence_json(&r), text));
            Some(r.projective_factors)
        }
        Err(Error::TooLarge { order, bound }) => {
            s.push(
                "projective-at-normalized-exponent",
                Verdict::Skipped(format!("|SL(2, Z/{})| = {} exceeds {}", n_o, order, bound)),
            );
            None
        }
        Err(e) => return Err(e.into()),
    };
    b.push(s);
    let gpc = galois && projective == Some(true);
    b.push(Section::from_report("arithmetic_divisibility_checks", &arithmetic_divisibility_checks(d, gpc)?));

    if extensions {
        extension_sections(d, &mut b, limits, gpc, true)?;
    }
    Ok(b)
}

fn extension_json(k: usize, e: &ExtendedDatum, c: Option<u8>) -> Value {
    json!({
        "index": k,
        "rank": cyclo_to_json(e.rank()),
        "is_rank": e.is_rank(),
        "ell": cyclo_to_json(e.ell()),
        "c": c,
    })
}

fn extension_text(k: usize, e: &ExtendedDatum, c: Option<u8>) -> String {
    let c = c.map_or_else(|| "undefined".to_owned(), |c| c.to_string());
    format!(
        "#{:<2} D = {}{}, ell = {}, c = {} mod 24",
        k,
        e.rank(),
        if e.is_rank() { " (rank)" } else { "" },
        e.ell(),
        c
    )
}

fn charge_of(e: &ExtendedDatum) -> Result<Option<u8>> {
    match additive_charge(e) {
        Ok(c) => Ok(Some(c)),
        Err(Error::ChargeOrderTooLarge) => Ok(None),
        Err(err) => Err(err.into()),
    }
}

/// The twelve extensions, their charges and charge bounds, and optionally
/// the congruence classification of each.
fn extension_sections(
    d: &ModularDatum,
    b: &mut AnalysisBundle,
    limits: &Limits,
    assert_bounds: bool,
    classify: bool,
) -> Result<()> {
    b.push(Section::from_report("extension_family_check", &extension_family_check(d)?));
    let family = extension_family(d)?;
    let mut listed = Vec::new();
    let mut lines = Vec::new();
    let mut bounds = Vec::new();
    for (k, e) in family.iter().enumerate() {
        let c = charge_of(e)?;
        listed.push(extension_json(k, e, c));
        lines.push(extension_text(k, e, c));
        bounds.push((format!("extension {}", k), charge_bounds_check(e)?));
    }
    let mut s = Section::new("additive_charge");
    s.push("extensions", Verdict::value(json!(listed), lines.join("\n")));
    b.push(s);

    let merged = merge_reports(bounds);
    let mut s = Section::new("charge_bounds_check");
    if assert_bounds {
        s.add_report(&merged);
    } else {
        s.add_report_unasserted(&merged);
    }
    b.push(s);

    if !classify {
        return Ok(());
    }
    let mut s = Section::new("congruence_classify");
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (k, e) in family.iter().enumerate() {
        match congruence_classify(e, None, limits.max_group_order) {
            Ok(cl) => {
                rows.push(json!({
                    "index": k,
                    "normalized_exponent": cl.normalized_exponent,
                    "projective_congruence": cl.is_projective_congruence(),
                    "congruence": cl.is_congruence(),
                    "minimal_level": cl.minimal_level,
                    "skipped_levels": cl.skipped_levels,
                }));
                let level = cl.minimal_level.map_or_else(|| "none".to_owned(), |m| m.to_string());
                lines.push(format!(
                    "#{:<2} projective {}, linear {}, minimal level {}",
                    k,
                    cl.is_projective_congruence(),
                    cl.is_congruence(),
                    level
                ));
            }
            Err(Error::TooLarge { order, bound }) => {
                s.push(
                    "extensions",
                    Verdict::Skipped(format!("group of order {} exceeds {}", order, bound)),
                );
                b.push(s);
                return Ok(());
            }
            Err(err) => return Err(err.into()),
        }
    }
    s.push("extensions", Verdict::value(json!(rows), lines.join("\n")));
    b.push(s);
    Ok(())
}

pub fn galois_check(d: &ModularDatum) -> Result<AnalysisBundle> {
    let mut b = AnalysisBundle::new("galois-check");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    if require_integral(&c, &mut b) {
        galois_sections(d, &mut b, true)?;
    }
    Ok(b)
}

pub fn symbols(d: &ModularDatum) -> Result<AnalysisBundle> {
    let mut b = AnalysisBundle::new("symbols");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    if require_integral(&c, &mut b) {
        symbol_sections(d, &mut b)?;
    }
    Ok(b)
}

/// Charge bounds are reported, not asserted: they hold for Galois
/// congruence data, which this command does not establish.
pub fn extensions(d: &ModularDatum, limits: &Limits) -> Result<AnalysisBundle> {
    limits.check_conductor(d)?;
    let mut b = AnalysisBundle::new("extensions");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    if require_integral(&c, &mut b) {
        extension_sections(d, &mut b, limits, false, false)?;
    }
    Ok(b)
}

fn lifts_verdict(lifts: &[ExtendedDatum]) -> Result<Verdict> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (k, e) in lifts.iter().enumerate() {
        let c = charge_of(e)?;
        rows.push(extension_json(k, e, c));
        lines.push(extension_text(k, e, c));
    }
    let text = if lines.is_empty() { "none".to_owned() } else { lines.join("\n") };
    Ok(Verdict::value(json!(rows), text))
}

/// Asserts projective factoring of `(S, T)` through `SL(2, Z/M)`; unless
/// `projective_only`, also lists the extensions that lift linearly at `M`.
/// An empty lift list is reported, not a failure.
pub fn congruence(d: &ModularDatum, level: u64, projective_only: bool, limits: &Limits) -> Result<AnalysisBundle> {
    limits.check_conductor(d)?;
    let mut b = AnalysisBundle::new("congruence");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    let r = factor_check(d.s_matrix(), &d.t_matrix(), level, FactorMode::Projective, limits.max_group_order)?;
    let mut s = Section::new("factor_check");
    s.push("level", Verdict::plain(json!(level)));
    match &r.witness {
        None => s.push("projective-factors", Verdict::Pass(None)),
        Some(w) => {
            s.push("projective-factors", Verdict::Fail(Some(witness_text(w))));
            s.push("witness", Verdict::plain(witness_json(w)));
        }
    }
    b.push(s);
    if !projective_only && require_integral(&c, &mut b) {
        let lifts = lift_search(d, level, limits.max_group_order)?;
        let mut s = Section::new("lift_search");
        s.push("lifts", lifts_verdict(&lifts)?);
        b.push(s);
    }
    Ok(b)
}

pub fn lift_search_command(d: &ModularDatum, level: u64, limits: &Limits) -> Result<AnalysisBundle> {
    limits.check_conductor(d)?;
    let mut b = AnalysisBundle::new("lift-search");
    let Some(c) = checked(d, &mut b)? else { return Ok(b) };
    if require_integral(&c, &mut b) {
        let lifts = lift_search(d, level, limits.max_group_order)?;
        let mut s = Section::new("lift_search");
        s.push("level", Verdict::plain(json!(level)));
        s.push("lifts", lifts_verdict(&lifts)?);
        b.push(s);
    }
    Ok(b)
}

pub fn gauss_sum(n: u64, q: i64) -> Result<AnalysisBundle> {
    if n == 0 {
        return Err(CliError::Usage("gauss-sum needs n >= 1".into()));
    }
    let mut b = AnalysisBundle::new("gauss-sum");
    let g = classical_gauss_sum(n, q)?;
    let g2 = &g * &g;
    let mut s = Section::new("classical_gauss_sum");
    s.push("G", Verdict::value(cyclo_to_json(&g), g.to_string()));
    s.push("G-squared", Verdict::value(cyclo_to_json(&g2), g2.to_string()));
    b.push(s);
    b.push(Section::from_report("verify_gauss_lemma", &verify_gauss_lemma(n)?));
    Ok(b)
}

/// With `check`, asserts the cocycle identity; otherwise lists the values.
pub fn cocycle(n: usize, zeta_exponent: i64, check: bool) -> Result<AnalysisBundle> {
    if n == 0 {
        return Err(CliError::Usage("cocycle needs n >= 1".into()));
    }
    let mut b = AnalysisBundle::new("cocycle");
    let omega = cocycle_omega(n, zeta_exponent);
    if check {
        let mut s = Section::new("verify_3cocycle");
        match verify_3cocycle(&omega) {
            Ok(()) => s.push("3-cocycle", Verdict::Pass(None)),
            Err(w) => s.push("3-cocycle", Verdict::Fail(Some(w))),
        }
        b.push(s);
    } else {
        let values: Vec<Value> = omega.table.iter().map(cyclo_to_json).collect();
        let text = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let row: Vec<String> = (0..n).map(|k| omega.get(i, j, k).to_string()).collect();
                format!("({}, {}, *): {}", i, j, row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n");
        let mut s = Section::new("cocycle_omega");
        s.push("n", Verdict::plain(json!(n)));
        s.push("values", Verdict::value(json!(values), text));
        b.push(s);
    }
    Ok(b)
}
