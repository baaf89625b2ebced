//! Subcommands and their reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::document::{parse_polytope, ParsedInput};
use crate::characteristic::{search_schar, validate_isotropy, validate_schar, SCharFunction};
use crate::cohomology::{
    check_transversality_properties, graded_dimensions, ring_presentation, RingContext,
};
use crate::cwstruct::{MorseData, Objective};
use crate::exactalg::rational_rank;
use crate::homology::{
    euler_mod2, homology_triple, theorem_homology, theorem_toric_homology, toric_euler,
    universal_coefficients, Coefficients, HomologyProfile,
};
use crate::pi1orb::{audit_kernel, coxeter_presentation, kernel_presentation, xi_map};
use crate::polytope::SimplePolytope;
use crate::quotient::build_quotient_complex;
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_240_901;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Validate,
    Search,
    Hvector,
    Homology,
    Toric,
    Ring,
    Pi1orb,
    Oracle,
    Crosscheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Search => "search",
            Command::Hvector => "hvector",
            Command::Homology => "homology",
            Command::Toric => "toric",
            Command::Ring => "ring",
            Command::Pi1orb => "pi1orb",
            Command::Oracle => "oracle",
            Command::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub coefficients: Vec<Coefficients>,
    pub seed: u64,
    pub limit: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self { coefficients: Coefficients::ALL.to_vec(), seed: DEFAULT_SEED, limit: None }
    }
}

/// Outcome of one comparison between independent computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub agree: bool,
    /// `(route, value)` pairs, always present so that a disagreement shows both sides.
    pub values: Vec<(String, String)>,
}

impl Verdict {
    fn compare(check: impl Into<String>, values: Vec<(&str, String)>) -> Self {
        let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
        Self {
            check: check.into(),
            agree,
            values: values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    fn condition(check: impl Into<String>, holds: bool, detail: String) -> Self {
        Self { check: check.into(), agree: holds, values: vec![("detail".into(), detail)] }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub input_sha256: String,
    pub seed: u64,
    pub results: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input sha256: {}", self.input_sha256);
        let _ = writeln!(s, "seed: {}", self.seed);
        for (k, v) in &self.results {
            let _ = writeln!(s, "{k}: {}", text_value(v));
        }
        for v in &self.verdicts {
            let tag = if v.agree { "agree" } else { "DISAGREE" };
            let vals: Vec<String> = v.values.iter().map(|(k, x)| format!("{k} = {x}")).collect();
            let _ = writeln!(s, "[{tag}] {}: {}", v.check, vals.join("; "));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        let _ = writeln!(s, "time: {:.1} ms", self.elapsed_ms);
        s
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = a.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[derive(Clone, Debug)]
pub struct CommandOutcome {
    pub report: ReportDocument,
    pub exit_code: i32,
}

#[derive(Default)]
struct Results {
    map: Map<String, Value>,
    verdicts: Vec<Verdict>,
    input_rejected: bool,
}

impl Results {
    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.map.insert(key.to_string(), v.into());
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Runs one subcommand on a document. Errors in the input map to exit code 1,
/// any failed comparison to exit code 2.
pub fn run_command(cmd: Command, input: &str, opts: &Options) -> CommandOutcome {
    let start = Instant::now();
    let mut out = Results::default();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        parse_polytope(input).and_then(|parsed| dispatch(cmd, &parsed, opts, &mut out))
    }))
    .unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(Error::Internal(msg))
    });
    let (error, exit_code) = match result {
        Err(e) => (Some(e.to_string()), EXIT_INPUT),
        Ok(()) if out.input_rejected => (None, EXIT_INPUT),
        Ok(()) if out.verdicts.iter().any(|v| !v.agree) => (None, EXIT_DISAGREE),
        Ok(()) => (None, EXIT_OK),
    };
    CommandOutcome {
        report: ReportDocument {
            command: cmd.name().to_string(),
            input_sha256: sha256_hex(input.as_bytes()),
            seed: opts.seed,
            results: out.map,
            verdicts: out.verdicts,
            error,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
        exit_code,
    }
}

fn dispatch(cmd: Command, input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    out.put("polytope", p.name());
    out.put("dim", p.dim());
    match cmd {
        Command::Validate => validate(input, out),
        Command::Search => search(p, opts, out),
        Command::Hvector => hvector(p, out),
        Command::Homology => homology(input, opts, out),
        Command::Toric => toric(input, opts, out),
        Command::Ring => ring(input, opts, out),
        Command::Pi1orb => pi1orb(input, out),
        Command::Oracle => oracle(input, opts, out),
        Command::Crosscheck => crosscheck(input, opts, out),
    }
}

/// The supplied function after validation, or the first one found by search.
fn resolve_theta(input: &ParsedInput, out: &mut Results) -> Result<SCharFunction> {
    let p = &input.polytope;
    match &input.schar {
        Some(values) => {
            let check = validate_schar(p, values)?;
            if let Some(v) = check.violation {
                return Err(Error::InvalidCharacteristic(v.to_string()));
            }
            let theta = SCharFunction::new(p, values.clone())?;
            out.put("schar", theta.to_string());
            out.put("schar_source", "document");
            Ok(theta)
        }
        None => {
            let found = search_schar(p, Some(1))?;
            match found.results.into_iter().next() {
                Some(theta) => {
                    out.put("schar", theta.to_string());
                    out.put("schar_source", "search");
                    Ok(theta)
                }
                None => Err(Error::InvalidCharacteristic(
                    "none supplied, and an exhaustive search found none".into(),
                )),
            }
        }
    }
}

fn morse(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<MorseData> {
    let m = MorseData::resolve(&input.polytope, input.objective.clone(), opts.seed)?;
    let desc = match &m.objective {
        Objective::Functional(c) => {
            let c: Vec<String> = c.iter().map(ToString::to_string).collect();
            format!("functional ({})", c.join(", "))
        }
        Objective::Order(o) => format!("order {o:?}"),
    };
    out.put("objective", desc);
    out.put("objective_source", if m.seed.is_some() { "random" } else { "document" });
    Ok(m)
}

fn profile_value(h: &HomologyProfile) -> Value {
    json!(h.to_string())
}

fn validate(input: &ParsedInput, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    out.put("vertices", p.vertex_count());
    out.put("facets", p.facet_count());
    out.put("simple", true);
    match &input.schar {
        None => out.put("schar", "absent"),
        Some(values) => {
            let check = validate_schar(p, values)?;
            out.put("schar_valid", check.valid);
            if let Some(v) = check.violation {
                out.put("schar_violation", v.to_string());
                out.input_rejected = true;
            }
        }
    }
    if let Some(psi) = &input.isotropy {
        let check = validate_isotropy(p, psi)?;
        out.put("isotropy_valid", check.valid);
        out.put("isotropy_valid_interior_omissions", check.valid_interior_only);
        if let Some(v) = check.violation {
            out.put("isotropy_violation", v.to_string());
            out.input_rejected = true;
        }
    }
    Ok(())
}

fn search(p: &SimplePolytope, opts: &Options, out: &mut Results) -> Result<()> {
    let s = search_schar(p, opts.limit)?;
    out.put("found", s.results.len());
    out.put("exhaustive", s.exhaustive);
    out.put("candidate_space", s.candidate_space.to_string());
    out.put("nodes_visited", s.nodes_visited);
    out.put("pruned", s.pruned);
    out.put("complete_candidates", s.complete_candidates);
    out.put(
        "functions",
        s.results.iter().map(|t| Value::from(t.to_string())).collect::<Vec<_>>(),
    );
    Ok(())
}

fn hvector(p: &SimplePolytope, out: &mut Results) -> Result<()> {
    let h = p.h_vector();
    let n = p.dim();
    out.put("f_vector", p.f_vector());
    out.put("h_vector", h.clone());
    out.verdicts.push(Verdict::compare(
        "Dehn-Sommerville",
        vec![
            ("h", format!("{h:?}")),
            ("reversed h", format!("{:?}", h.iter().rev().collect::<Vec<_>>())),
        ],
    ));
    out.put("euler_mod2", euler_mod2(&h, n));
    Ok(())
}

fn homology(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    resolve_theta(input, out)?;
    let m = morse(input, opts, out)?;
    out.put("cells", m.cells.counts());
    let cc = m.chain_complex(p)?;
    let triple = homology_triple(&cc);
    for &c in &opts.coefficients {
        out.put(&format!("homology_{c}"), profile_value(triple.get(c)));
    }
    out.put("euler_characteristic", cc.euler_characteristic());
    out.put("euler_mod2_formula", euler_mod2(&p.h_vector(), p.dim()));
    let uct = universal_coefficients(&triple.z, &triple.z2);
    out.verdicts.push(Verdict::compare(
        "universal coefficients",
        vec![("predicted", format!("{:?}", uct.predicted)), ("Z2 dims", format!("{:?}", uct.actual))],
    ));
    Ok(())
}

fn toric(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    if let Some(psi) = &input.isotropy {
        let check = validate_isotropy(p, psi)?;
        out.put("isotropy_valid", check.valid);
        if !check.valid {
            out.put("isotropy_valid_interior_omissions", check.valid_interior_only);
        }
    }
    let m = morse(input, opts, out)?;
    let cc = m.toric_chain_complex(p)?;
    let h = p.h_vector();
    let snf = homology_triple(&cc).z;
    let formula = theorem_toric_homology(&h, p.dim());
    out.put("cells", cc.ranks.clone());
    out.put("homology_Z", profile_value(&snf));
    out.put("euler_characteristic", cc.euler_characteristic());
    out.verdicts.push(Verdict::compare(
        "toric homology over Z",
        vec![("formula", formula.to_string()), ("SNF", snf.to_string())],
    ));
    out.verdicts.push(Verdict::compare(
        "toric Euler characteristic",
        vec![
            ("formula", toric_euler(&h).to_string()),
            ("cells", cc.euler_characteristic().to_string()),
        ],
    ));
    Ok(())
}

fn ring(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    if p.dim() % 2 == 1 {
        return Err(Error::OddDimension(p.dim()));
    }
    let theta = resolve_theta(input, out)?;
    let m = morse(input, opts, out)?;
    let tr = check_transversality_properties(p, &m.skeleton)?;
    out.verdicts.push(Verdict::condition(
        "transversality properties",
        tr.passed(),
        format!(
            "{} + {} faces checked, {} hat forms; failures: {:?}",
            tr.property1_checked, tr.property2_checked, tr.hat_form_checked, tr.failures
        ),
    ));
    let ctx = RingContext::new(p, &theta, &m.skeleton)?;
    let pres = ring_presentation(&ctx)?;
    let gens: Vec<String> = pres
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            format!("w{} = F^(v{}) = {:?}", i + 1, g.vertex, p.lattice().face(g.face).facet_ids)
        })
        .collect();
    out.put("generators", gens);
    out.put("relations", pres.relation_strings());
    let dims = graded_dimensions(&pres);
    out.put("graded_dimensions", dims.clone());
    let rev: Vec<usize> = dims.iter().rev().copied().collect();
    out.verdicts.push(Verdict::compare(
        "Poincare symmetry",
        vec![("dims", format!("{dims:?}")), ("reversed", format!("{rev:?}"))],
    ));
    let pairing = ctx.pairing_matrix()?;
    let rows: Vec<String> = pairing
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    let rank = rational_rank(&pairing);
    out.put("pairing_matrix", rows);
    out.put("pairing_rank", rank);
    out.put(
        "pairing",
        if rank == pairing.len() && pairing.iter().all(|r| r.len() == rank) {
            "nondegenerate"
        } else {
            "degenerate"
        },
    );
    Ok(())
}

fn pi1orb(input: &ParsedInput, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    let mut scratch = Results::default();
    let theta = resolve_theta(input, &mut scratch)?;
    out.map.append(&mut scratch.map);
    let gamma = coxeter_presentation(p);
    let xi = xi_map(&gamma, &theta)?;
    let k = kernel_presentation(&gamma, &xi)?;
    let audit = audit_kernel(&gamma, &xi, &k);
    out.put("coxeter_generators", gamma.generators);
    out.put("coxeter_relators", gamma.relators.len());
    out.put("index", k.index());
    out.put("schreier_generators", k.schreier_generators.len());
    out.put("nontrivial_generators", k.nontrivial.len());
    let words: Vec<String> = k
        .nontrivial
        .iter()
        .map(|&i| {
            let g = &k.schreier_generators[i];
            let w: Vec<String> = g.word.iter().map(|a| format!("a{}", a + 1)).collect();
            format!("s{i} = {}", w.join(" "))
        })
        .collect();
    out.put("generator_words", words);
    let rels: Vec<String> = k
        .reduced_relators()
        .iter()
        .map(|r| r.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" "))
        .collect();
    out.put("relators", rels);
    let expected = (1usize << xi.value_dim) * gamma.generators - ((1usize << xi.value_dim) - 1);
    out.verdicts.push(Verdict::compare(
        "coset count",
        vec![("2^(n-1)", (1usize << xi.value_dim).to_string()), ("table", k.index().to_string())],
    ));
    out.verdicts.push(Verdict::compare(
        "Schreier generator count",
        vec![("formula", expected.to_string()), ("computed", k.schreier_generators.len().to_string())],
    ));
    out.verdicts.push(Verdict::condition(
        "kernel audit",
        audit.passed(),
        format!("{audit:?}"),
    ));
    Ok(())
}

fn oracle(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    let theta = resolve_theta(input, out)?;
    let dc = build_quotient_complex(p, &theta)?;
    out.put("simplices", dc.counts());
    out.put("orbifold_points", dc.orbifold_points(p));
    let triple = dc.homology();
    for &c in &opts.coefficients {
        out.put(&format!("homology_{c}"), profile_value(triple.get(c)));
    }
    out.verdicts.push(Verdict::compare(
        "Euler characteristic",
        vec![
            ("simplices", dc.euler_characteristic().to_string()),
            ("formula", euler_mod2(&p.h_vector(), p.dim()).to_string()),
        ],
    ));
    Ok(())
}

fn crosscheck(input: &ParsedInput, opts: &Options, out: &mut Results) -> Result<()> {
    let p = &input.polytope;
    let theta = resolve_theta(input, out)?;
    let m = morse(input, opts, out)?;
    let h = p.h_vector();
    let n = p.dim();
    let cw = homology_triple(&m.chain_complex(p)?);
    let dc = build_quotient_complex(p, &theta)?;
    let orc = dc.homology();
    for &c in &opts.coefficients {
        let formula = theorem_homology(&h, n, c);
        out.put(&format!("homology_{c}"), profile_value(&formula));
        out.verdicts.push(Verdict::compare(
            format!("homology over {c}"),
            vec![
                ("formula", formula.to_string()),
                ("CW/SNF", cw.get(c).to_string()),
                ("oracle", orc.get(c).to_string()),
            ],
        ));
    }
    for (route, t) in [("CW/SNF", &cw), ("oracle", &orc)] {
        let u = universal_coefficients(&t.z, &t.z2);
        out.verdicts.push(Verdict::compare(
            format!("universal coefficients ({route})"),
            vec![("predicted", format!("{:?}", u.predicted)), ("Z2 dims", format!("{:?}", u.actual))],
        ));
    }
    out.verdicts.push(Verdict::compare(
        "Euler characteristic",
        vec![
            ("formula", euler_mod2(&h, n).to_string()),
            ("oracle", dc.euler_characteristic().to_string()),
        ],
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::document::PolytopeDocument;
    use crate::cli::generate;

    fn doc(data: crate::polytope::PolytopeData) -> String {
        PolytopeDocument::from_data(&data).to_json()
    }

    #[test]
    fn malformed_input_exits_one() {
        let o = run_command(Command::Hvector, "{not json", &Options::default());
        assert_eq!(o.exit_code, EXIT_INPUT);
        assert!(o.report.error.unwrap().contains("line 1"));
    }

    #[test]
    fn simplex_search_is_empty_and_exhaustive() {
        let o = run_command(Command::Search, &doc(generate::simplex(3).unwrap()), &Options::default());
        assert_eq!(o.exit_code, EXIT_OK);
        assert_eq!(o.report.results["found"], json!(0));
        assert_eq!(o.report.results["exhaustive"], json!(true));
    }

    #[test]
    fn simplex_homology_has_no_characteristic() {
        let o = run_command(Command::Homology, &doc(generate::simplex(3).unwrap()), &Options::default());
        assert_eq!(o.exit_code, EXIT_INPUT);
    }

    #[test]
    fn crosscheck_square_agrees() {
        let o = run_command(Command::Crosscheck, &doc(generate::polygon(4).unwrap()), &Options::default());
        assert_eq!(o.exit_code, EXIT_OK, "{}", o.report.to_text());
        assert_eq!(o.report.results["homology_Z"], json!("(Z, 0, Z)"));
        assert!(o.report.to_text().contains("seed: "));
    }

    #[test]
    fn reports_are_deterministic() {
        let text = doc(generate::cube(3).unwrap());
        let a = run_command(Command::Homology, &text, &Options::default()).report;
        let b = run_command(Command::Homology, &text, &Options::default()).report;
        assert_eq!(a.results, b.results);
        assert_eq!(a.input_sha256, b.input_sha256);
    }
}
