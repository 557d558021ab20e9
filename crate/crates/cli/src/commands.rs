//! Command drivers shared by the binary and the test suites.
//!
//! Exit-code taxonomy: 0 = verified, 1 = a mathematical claim failed (the
//! counterexample is in the certificate), 2 = the input itself is broken
//! (unreadable, unparsable, structurally invalid).  CI wants to tell "the
//! math is wrong" apart from "the harness is wrong".

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use twocat_core::arrowcat::{self, SizeBudget};
use twocat_core::kernel::{validate_model, CheckRun, CheckedEquation, Equation};
use twocat_core::{dim1, gps, models, units, TwoCategoryModel};

use crate::certificate::Certificate;
use crate::modelfile::ModelFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    MathFail,
    Structural,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::MathFail => 1,
            Outcome::Structural => 2,
        }
    }
}

pub struct CmdResult {
    pub outcome: Outcome,
    pub lines: Vec<String>,
    pub certificate: Option<Certificate>,
}

impl CmdResult {
    fn pass(lines: Vec<String>, certificate: Certificate) -> Self {
        CmdResult {
            outcome: Outcome::Pass,
            lines,
            certificate: Some(certificate),
        }
    }
    fn math_fail(lines: Vec<String>, certificate: Certificate) -> Self {
        CmdResult {
            outcome: Outcome::MathFail,
            lines,
            certificate: Some(certificate),
        }
    }
    fn from_ok(ok: bool, lines: Vec<String>, certificate: Certificate) -> Self {
        if ok {
            Self::pass(lines, certificate)
        } else {
            Self::math_fail(lines, certificate)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
    C,
    E,
    Dim1,
    Actions,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::A => "A",
            Theorem::B => "B",
            Theorem::C => "C",
            Theorem::E => "E",
            Theorem::Dim1 => "dim1",
            Theorem::Actions => "actions",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Theorem {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Theorem::A),
            "B" | "b" => Ok(Theorem::B),
            "C" | "c" => Ok(Theorem::C),
            "E" | "e" => Ok(Theorem::E),
            "dim1" => Ok(Theorem::Dim1),
            "actions" => Ok(Theorem::Actions),
            other => Err(anyhow!(
                "unknown theorem {other:?} (expected A|B|C|E|dim1|actions)"
            )),
        }
    }
}

/// Options shared by the verify drivers.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOpts {
    pub seed: u64,
    pub all_choices: bool,
    /// size cap for derived structures and enumerations
    pub budget: Option<u32>,
}



impl VerifyOpts {
    fn size_budget(&self) -> SizeBudget {
        match self.budget {
            Some(n) => SizeBudget {
                max_objects: n,
                max_one_cells: n,
                max_two_cells: n,
            },
            None => SizeBudget::default(),
        }
    }
    fn enum_cap(&self) -> usize {
        self.budget.map(|n| n as usize).unwrap_or(65536)
    }
}

// ---------------------------------------------------------------------------
// generators and IO

/// Build one of the shipped generators.  `monoid` takes a multiplication
/// table like `"0 1 2; 1 2 0; 2 0 1"`; `zg` takes an optional grade.
pub fn generate(kind: &str, grade: u32, table: Option<&str>) -> Result<TwoCategoryModel> {
    let m = match kind {
        "m3" => models::m3(),
        "z2p" => models::z2p(),
        "zg" => models::graded_puff(grade),
        "chp" => models::chp(),
        "monoid" => {
            let spec = table.ok_or_else(|| anyhow!("gen monoid requires --table"))?;
            let rows: Vec<Vec<usize>> = spec
                .split(';')
                .map(|row| {
                    row.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|e| anyhow!("bad table entry {s:?}: {e}"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                bail!("monoid table must be square");
            }
            let triples: Vec<(usize, usize, usize)> = rows
                .iter()
                .enumerate()
                .flat_map(|(a, r)| r.iter().enumerate().map(move |(b, &c)| (a, b, c)))
                .collect();
            models::monoid_model("monoid", n, &triples).map_err(|e| anyhow!("{e}"))?
        }
        other => bail!("unknown generator {other:?} (expected m3|z2p|zg|chp|monoid)"),
    };
    let rep = validate_model(&m);
    if !rep.is_clean() {
        bail!(
            "generated model fails validation (generator bug): {:?}",
            rep
        );
    }
    Ok(m)
}

pub fn load_model_file(path: &Path) -> Result<(TwoCategoryModel, ModelFile, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let file: ModelFile =
        serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    let hash = file.hash();
    let model = file.clone().into_model()?;
    Ok((model, file, hash))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

// ---------------------------------------------------------------------------
// commands

pub fn run_validate(m: &TwoCategoryModel, hash: &str) -> CmdResult {
    let rep = validate_model(m);
    let mut cert = Certificate::new(
        "validate",
        "the tables present a strict semi-monoidal 2-category",
        hash.to_string(),
        m.name.clone(),
        None,
    );
    cert.witness("validation_report", &rep);
    cert.ok = rep.is_clean();
    let line = if rep.is_clean() {
        format!(
            "validate {}: ok ({} objects, {} one-cells, {} two-cells)",
            m.name,
            m.object_count(),
            m.one_cell_count(),
            m.two_cell_count()
        )
    } else {
        format!(
            "validate {}: FAILED ({} structural, {} axiom violations; first: {})",
            m.name,
            rep.structural.len(),
            rep.violations.len(),
            rep.structural
                .iter()
                .chain(rep.violations.iter())
                .next()
                .map(|v| v.axiom.as_str())
                .unwrap_or("?")
        )
    };
    // broken tables are an input problem; axiom violations are a verdict
    let outcome = if !rep.structural.is_empty() {
        Outcome::Structural
    } else if !rep.violations.is_empty() {
        Outcome::MathFail
    } else {
        Outcome::Pass
    };
    CmdResult {
        outcome,
        lines: vec![line],
        certificate: Some(cert),
    }
}

pub fn run_find_units(m: &TwoCategoryModel, hash: &str) -> CmdResult {
    let found = units::find_unit_objects(m);
    let mut cert = Certificate::new(
        "find_units",
        "exhaustive enumeration of cancellable pseudo-idempotents",
        hash.to_string(),
        m.name.clone(),
        None,
    );
    cert.witness("units", &found);
    let mut lines = vec![format!("find-units {}: {} unit(s)", m.name, found.len())];
    for (k, u) in found.iter().enumerate() {
        lines.push(format!(
            "  unit {k}: object {} with multiplication {}",
            u.obj, u.alpha
        ));
    }
    CmdResult::pass(lines, cert)
}

pub fn run_synth(
    m: &TwoCategoryModel,
    hash: &str,
    unit_index: usize,
    seed: u64,
) -> Result<CmdResult> {
    let found = units::find_unit_objects(m);
    let u = found.get(unit_index).ok_or_else(|| {
        anyhow!(
            "unit index {unit_index} out of range ({} units)",
            found.len()
        )
    })?;
    let mut cert = Certificate::new(
        "synth",
        "left/right constraints, naturality cells, associator and comparison cells for one unit",
        hash.to_string(),
        m.name.clone(),
        Some(seed),
    );
    cert.witness("unit", u);
    match units::synth_constraints(m, u, seed) {
        Ok(pack) => {
            cert.witness("constraint_pack", &pack);
            let run = units::verify_theorem_a(m, u, &pack).map_err(|e| anyhow!("{e}"))?;
            cert.record_equations(&run.checked);
            let mut extra = CheckRun::default();
            let named = [
                ("sat_left", units::eq_sat_left(m, u, &pack)),
                ("sat_right", units::eq_sat_right(m, u, &pack)),
                ("associator_defining", units::eq_a(m, u, &pack)),
            ];
            for (name, eq) in named {
                let eq = eq.map_err(|e| anyhow!("{e}"))?;
                extra.check(m, name, eq).map_err(|e| anyhow!("{e}"))?;
            }
            // defining equations of the naturality families
            for f in m.one_cells() {
                let eq = units::eq_modification_left(m, u, &pack, f).map_err(|e| anyhow!("{e}"))?;
                extra
                    .check(m, &format!("lambda_naturality[{f}]"), eq)
                    .map_err(|e| anyhow!("{e}"))?;
                let eq =
                    units::eq_modification_right(m, u, &pack, f).map_err(|e| anyhow!("{e}"))?;
                extra
                    .check(m, &format!("rho_naturality[{f}]"), eq)
                    .map_err(|e| anyhow!("{e}"))?;
            }
            cert.record_equations(&extra.checked);
            let ok = cert.ok;
            Ok(CmdResult::from_ok(
                ok,
                vec![format!(
                    "synth {} unit {unit_index} seed {seed}: {}",
                    m.name,
                    verdict(ok)
                )],
                cert,
            ))
        }
        Err(e) => {
            cert.fail(&format!("synthesis failed: {e}"));
            Ok(CmdResult::math_fail(
                vec![format!("synth {} unit {unit_index}: FAILED ({e})", m.name)],
                cert,
            ))
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn run_verify(
    m: &TwoCategoryModel,
    hash: &str,
    theorem: Theorem,
    opts: &VerifyOpts,
) -> Result<CmdResult> {
    match theorem {
        Theorem::A => verify_a(m, hash, opts),
        Theorem::B => verify_b(m, hash, opts),
        Theorem::C => verify_c(m, hash, opts),
        Theorem::E => verify_e(m, hash, opts),
        Theorem::Dim1 => verify_dim1(m, hash),
        Theorem::Actions => verify_actions(m, hash, opts),
    }
}

fn verify_a(m: &TwoCategoryModel, hash: &str, opts: &VerifyOpts) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "A",
        "every unit object carries a canonical associator satisfying the pentagon",
        hash.to_string(),
        m.name.clone(),
        Some(opts.seed),
    );
    let mut lines = Vec::new();
    let found = units::find_unit_objects(m);
    if found.is_empty() {
        lines.push(format!("verify A {}: no units (vacuously ok)", m.name));
    }
    for (k, u) in found.iter().enumerate() {
        let pack = match units::synth_constraints(m, u, opts.seed) {
            Ok(p) => p,
            Err(e) => {
                cert.fail(&format!("unit {k}: synthesis failed: {e}"));
                lines.push(format!("verify A {} unit {k}: FAILED ({e})", m.name));
                continue;
            }
        };
        cert.witness(&format!("unit_{k}_pack"), &pack);
        let run = units::verify_theorem_a(m, u, &pack).map_err(|e| anyhow!("{e}"))?;
        lines.push(format!(
            "verify A {} unit {k}: {}",
            m.name,
            verdict(run.ok())
        ));
        cert.record_equations(&run.checked);
        if opts.all_choices {
            match units::enumerate_constraint_packs(m, u, opts.enum_cap()) {
                Ok(packs) => {
                    let independent = units::associators_all_equal(&packs);
                    cert.witness(&format!("unit_{k}_pack_count"), &packs.len());
                    cert.witness(&format!("unit_{k}_associator_independent"), &independent);
                    if !independent {
                        cert.fail(&format!(
                            "unit {k}: associator depends on constraint choice"
                        ));
                    }
                    lines.push(format!(
                        "verify A {} unit {k}: {} packs enumerated, associator independent: {}",
                        m.name,
                        packs.len(),
                        independent
                    ));
                }
                Err(e) => {
                    cert.fail(&format!("unit {k}: pack enumeration failed: {e}"));
                }
            }
        }
    }
    let ok = cert.ok;
    Ok(CmdResult::from_ok(ok, lines, cert))
}

fn verify_b(m: &TwoCategoryModel, hash: &str, opts: &VerifyOpts) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "B",
        "unit morphisms are semi-monoid maps for the canonical associators (direct and arrow-category routes)",
        hash.to_string(),
        m.name.clone(),
        Some(opts.seed),
    );
    let mut lines = Vec::new();
    let found = units::find_unit_objects(m);
    let packs: Vec<_> = found
        .iter()
        .map(|u| units::synth_constraints(m, u, opts.seed))
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!("{e}"))?;
    let am = arrowcat::build_arrow_model(m, &opts.size_budget()).map_err(|e| anyhow!("{e}"))?;
    let am_report = validate_model(&am.model);
    cert.witness("arrow_model_clean", &am_report.is_clean());
    if !am_report.is_clean() {
        cert.fail("arrow model fails validation");
    }
    lines.push(format!(
        "verify B {}: arrow model {} cells validate: {}",
        m.name,
        am.model.two_cell_count(),
        am_report.is_clean()
    ));
    for (a, ua) in found.iter().enumerate() {
        for (b, ub) in found.iter().enumerate() {
            for (k, mor) in units::enumerate_unit_morphisms(m, ua, ub)
                .iter()
                .enumerate()
            {
                match arrowcat::verify_theorem_b_in(m, &am, mor, &packs[a], &packs[b], opts.seed) {
                    Ok(rep) => {
                        cert.record_equations(&rep.checked.checked);
                        cert.witness(
                            &format!("morphism_{a}_{b}_{k}_routes_agree"),
                            &(rep.direct == rep.lifted_matches),
                        );
                        if !rep.ok() {
                            cert.fail(&format!("morphism {k}: {a}→{b} fails"));
                        }
                        lines.push(format!(
                            "verify B {} morphism {a}→{b} #{k}: {}",
                            m.name,
                            verdict(rep.ok())
                        ));
                    }
                    Err(e) => {
                        cert.fail(&format!("morphism {k}: {a}→{b}: {e}"));
                        lines.push(format!(
                            "verify B {} morphism {a}→{b} #{k}: FAILED ({e})",
                            m.name
                        ));
                    }
                }
            }
        }
    }
    let ok = cert.ok;
    Ok(CmdResult::from_ok(ok, lines, cert))
}

fn verify_c(m: &TwoCategoryModel, hash: &str, opts: &VerifyOpts) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "C",
        "the 2-category of units is contractible if non-empty",
        hash.to_string(),
        m.name.clone(),
        Some(opts.seed),
    );
    let rep = units::verify_theorem_c(m, opts.seed).map_err(|e| anyhow!("{e}"))?;
    cert.witness("contractibility_report", &rep);
    // record the cylinder equations behind the 2-morphism uniqueness claims
    let found = units::find_unit_objects(m);
    let mut run = CheckRun::default();
    for ua in &found {
        for ub in &found {
            let morphisms = units::enumerate_unit_morphisms(m, ua, ub);
            for (i, mu) in morphisms.iter().enumerate() {
                for (j, mv) in morphisms.iter().enumerate() {
                    for t in m.hom2(mu.arrow, mv.arrow) {
                        let eq = units::eq_cylinder(
                            m,
                            mu.src_alpha,
                            mu.dst_alpha,
                            mu.square,
                            mv.square,
                            t,
                        )
                        .map_err(|e| anyhow!("{e}"))?;
                        run.check(m, &format!("cylinder[{i},{j},{t}]"), eq)
                            .map_err(|e| anyhow!("{e}"))?;
                    }
                }
            }
        }
    }
    // the cylinder equations themselves may be individually false (that is
    // the 1-of-n selection); only the report verdict gates the outcome
    cert.checked_equations.extend(run.checked);
    cert.ok = rep.ok();
    let lines = vec![format!(
        "verify C {}: {} units, morphism counts {:?}: {}",
        m.name,
        rep.units.len(),
        rep.morphism_counts
            .iter()
            .map(|&(_, _, n)| n)
            .collect::<Vec<_>>(),
        verdict(rep.ok())
    )];
    Ok(CmdResult::from_ok(rep.ok(), lines, cert))
}

fn verify_e(m: &TwoCategoryModel, hash: &str, opts: &VerifyOpts) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "E",
        "the idempotent-style and tricategory-style unit structures are equivalent",
        hash.to_string(),
        m.name.clone(),
        Some(opts.seed),
    );
    let rep = gps::verify_theorem_e(m, opts.enum_cap()).map_err(|e| anyhow!("{e}"))?;
    cert.witness("equivalence_report", &rep);
    // record each unit's induced structure and its certification equations
    for (k, u) in units::find_unit_objects(m).iter().enumerate() {
        let pack = units::synth_constraints(m, u, opts.seed).map_err(|e| anyhow!("{e}"))?;
        match gps::ci_to_gps(m, u, &pack) {
            Ok((g, run)) => {
                cert.witness(&format!("unit_{k}_tricategory_structure"), &g);
                cert.record_equations(&run.checked);
            }
            Err(e) => cert.fail(&format!(
                "unit {k}: induced structure fails certification: {e}"
            )),
        }
    }
    cert.ok &= rep.ok();
    let ok = cert.ok;
    let lines = vec![format!(
        "verify E {}: {} idempotent-style, {} comparison, {} tricategory-style objects: {}",
        m.name,
        rep.e_objects,
        rep.u_objects,
        rep.g_objects,
        verdict(ok)
    )];
    Ok(CmdResult::from_ok(ok, lines, cert))
}

fn verify_dim1(m: &TwoCategoryModel, hash: &str) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "dim1",
        "unit axioms in the discrete (monoidal-1-category) case",
        hash.to_string(),
        m.name.clone(),
        None,
    );
    if !m.is_discrete() {
        bail!(
            "model {} has non-identity 2-cells; dim1 applies to discrete models only",
            m.name
        );
    }
    let found = dim1::find_units_1(m).map_err(|e| anyhow!("{e}"))?;
    cert.witness("units", &found);
    let mut lines = vec![format!("verify dim1 {}: {} unit(s)", m.name, found.len())];
    for (k, &(i, alpha)) in found.iter().enumerate() {
        match dim1::construct_lr_1(m, i, alpha) {
            Ok(u1) => {
                cert.witness(&format!("unit_{k}"), &u1);
                let failures = dim1::verify_kelly_1(m, &u1);
                let assoc = dim1::verify_assoc_1(m, &u1);
                cert.witness(&format!("unit_{k}_axiom_failures"), &failures);
                cert.witness(&format!("unit_{k}_multiplication_associative"), &assoc);
                if !failures.is_empty() || !assoc {
                    cert.fail(&format!("unit {k} fails an axiom"));
                }
                lines.push(format!(
                    "verify dim1 {} unit {k}: {}",
                    m.name,
                    verdict(failures.is_empty() && assoc)
                ));
            }
            Err(e) => {
                cert.fail(&format!("unit {k}: constraint construction failed: {e}"));
                lines.push(format!("verify dim1 {} unit {k}: FAILED ({e})", m.name));
            }
        }
    }
    let ok = cert.ok;
    Ok(CmdResult::from_ok(ok, lines, cert))
}

fn verify_actions(m: &TwoCategoryModel, hash: &str, opts: &VerifyOpts) -> Result<CmdResult> {
    let mut cert = Certificate::new(
        "actions",
        "the left and right unit actions satisfy their pentagon equations",
        hash.to_string(),
        m.name.clone(),
        Some(opts.seed),
    );
    let mut lines = Vec::new();
    for (k, u) in units::find_unit_objects(m).iter().enumerate() {
        let pack = units::synth_constraints(m, u, opts.seed).map_err(|e| anyhow!("{e}"))?;
        let run = units::verify_action_pentagons(m, u, &pack).map_err(|e| anyhow!("{e}"))?;
        lines.push(format!(
            "verify actions {} unit {k}: {}",
            m.name,
            verdict(run.ok())
        ));
        cert.record_equations(&run.checked);
    }
    let ok = cert.ok;
    Ok(CmdResult::from_ok(ok, lines, cert))
}

pub fn run_recheck(cert: &Certificate, m: &TwoCategoryModel, actual_hash: &str) -> CmdResult {
    match cert.recheck(m, actual_hash) {
        Ok(n) => CmdResult {
            outcome: Outcome::Pass,
            lines: vec![format!(
                "recheck {}: {} equations reproduced bit-exactly",
                cert.claim.tag, n
            )],
            certificate: None,
        },
        Err(e) => CmdResult {
            outcome: Outcome::MathFail,
            lines: vec![format!("recheck {}: FAILED ({e})", cert.claim.tag)],
            certificate: None,
        },
    }
}

/// Helper used by tests: recorded equations of a check run as a certificate.
pub fn equations_of(run: &CheckRun) -> &[CheckedEquation] {
    &run.checked
}

/// Helper: the shipped generator set.
pub fn builtin_models() -> Vec<TwoCategoryModel> {
    vec![models::m3(), models::z2p(), models::zg(), models::chp()]
}

/// Re-export for drivers that need a raw equation check.
pub fn check(m: &TwoCategoryModel, eq: &Equation) -> Result<bool> {
    twocat_core::kernel::check_equation(m, eq).map_err(|e| anyhow!("{e}"))
}
