//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use smallorb::characteristic::{search_schar, validate_schar, SCharFunction};
use smallorb::cli::{generate, parse_polytope, ParsedInput};
use smallorb::cohomology::{graded_dimensions, ring_presentation, RingContext};
use smallorb::cwstruct::MorseData;
use smallorb::exactalg::rational_rank;
use smallorb::homology::{
    euler_mod2, homology_triple, theorem_homology, theorem_toric_homology, toric_euler,
    AbelianGroup, Coefficients, HomologyProfile, HomologyTriple,
};
use smallorb::pi1orb::{audit_kernel, coxeter_presentation, kernel_presentation, xi_map};
use smallorb::polytope::{PolytopeData, SimplePolytope};
use smallorb::quotient::build_quotient_complex;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SEEDS: u64 = 20;

fn load(name: &str) -> ParsedInput {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_polytope(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn battery() -> Vec<SimplePolytope> {
    let mut data: Vec<PolytopeData> = Vec::new();
    data.extend((2..=4).map(|n| generate::cube(n).unwrap()));
    data.extend((3..=8).map(|m| generate::polygon(m).unwrap()));
    data.extend((3..=6).map(|m| generate::prism(m).unwrap()));
    for (a, b) in [(3, 3), (3, 4), (4, 4), (3, 5)] {
        data.push(generate::polygon_product(a, b).unwrap());
    }
    data.into_iter().map(|d| SimplePolytope::new(d).unwrap()).collect()
}

fn first_theta(p: &SimplePolytope) -> Option<SCharFunction> {
    search_schar(p, Some(1)).unwrap().results.into_iter().next()
}

fn profile(coeff: Coefficients, groups: Vec<AbelianGroup>) -> HomologyProfile {
    HomologyProfile { coeff, groups }
}

/// All three routes over every coefficient ring.
fn three_routes(p: &SimplePolytope, theta: &SCharFunction, seed: u64) -> Result<[HomologyTriple; 3], String> {
    let n = p.dim();
    let h = p.h_vector();
    let formula = HomologyTriple {
        z: theorem_homology(&h, n, Coefficients::Z),
        q: theorem_homology(&h, n, Coefficients::Q),
        z2: theorem_homology(&h, n, Coefficients::Z2),
    };
    let m = MorseData::random(p, seed).map_err(|e| e.to_string())?;
    let cw = homology_triple(&m.chain_complex(p).map_err(|e| e.to_string())?);
    let dc = build_quotient_complex(p, theta).map_err(|e| e.to_string())?;
    Ok([formula, cw, dc.homology()])
}

/// `dim H_k(Z2) = rank H_k + t_2(H_k) + t_2(H_{k-1})`, counted directly.
fn uct_holds(t: &HomologyTriple) -> bool {
    let even = |g: &AbelianGroup| g.torsion.iter().filter(|d| (*d % 2u8).is_zero()).count();
    let g = &t.z.groups;
    (0..g.len()).all(|k| {
        let pred = g[k].free_rank + even(&g[k]) + if k > 0 { even(&g[k - 1]) } else { 0 };
        t.z2.groups[k].free_rank == pred && t.z2.groups[k].torsion.is_empty()
    }) && (0..g.len()).all(|k| t.q.groups[k].free_rank == g[k].free_rank)
}

fn cube_pipeline() -> Outcome {
    let input = load("i3.json");
    let p = &input.polytope;
    let values = input.schar.clone().ok_or("i3.json has no schar")?;
    let check = validate_schar(p, &values).map_err(|e| e.to_string())?;
    ensure!(check.valid, "validate_schar rejected the cube function: {:?}", check.violation);
    let theta = SCharFunction::new(p, values).map_err(|e| e.to_string())?;
    let expected = profile(
        Coefficients::Z,
        vec![
            AbelianGroup::free(1),
            AbelianGroup::zero(),
            AbelianGroup::from_cyclic(3, &[BigInt::from(2)]),
            AbelianGroup::zero(),
        ],
    );
    let routes = three_routes(p, &theta, 0)?;
    for (name, t) in ["formula", "CW/SNF", "oracle"].iter().zip(&routes) {
        ensure!(t.z == expected, "{name} gives {} over Z", t.z);
        ensure!(t.z2.dims() == vec![1, 0, 4, 1], "{name} gives Z2 dims {:?}", t.z2.dims());
    }
    let chi = euler_mod2(&p.h_vector(), 3);
    let oracle_chi = build_quotient_complex(p, &theta).map_err(|e| e.to_string())?.euler_characteristic();
    ensure!(chi == 4 && oracle_chi == 4, "Euler characteristic {chi} / {oracle_chi}");
    Ok(format!("H(Z) = {expected}, Z2 dims [1, 0, 4, 1], chi = 4"))
}

fn sphere_check() -> Outcome {
    let sphere = profile(Coefficients::Z, vec![AbelianGroup::free(1), AbelianGroup::zero(), AbelianGroup::free(1)]);
    for m in 3..=8 {
        let p = SimplePolytope::new(generate::polygon(m).unwrap()).unwrap();
        let theta = SCharFunction::from_masks(&p, &vec![1; m]).map_err(|e| e.to_string())?;
        for (name, t) in ["formula", "CW/SNF", "oracle"].iter().zip(&three_routes(&p, &theta, m as u64)?) {
            ensure!(t.z == sphere, "{m}-gon: {name} gives {}", t.z);
        }
    }
    Ok("m = 3..8 all (Z, 0, Z)".into())
}

fn non_existence() -> Outcome {
    let mut parts = Vec::new();
    for (file, space) in [("simplex3.json", 81u32), ("simplex4.json", 16807)] {
        let input = load(file);
        let s = search_schar(&input.polytope, None).map_err(|e| e.to_string())?;
        ensure!(s.results.is_empty(), "{file}: found {}", s.results.len());
        ensure!(s.exhaustive, "{file}: search not exhaustive");
        ensure!(s.candidate_space == BigInt::from(space), "{file}: space {}", s.candidate_space);
        ensure!(
            BigInt::from(s.complete_candidates) <= s.candidate_space,
            "{file}: more complete candidates than the space holds"
        );
        parts.push(format!(
            "{file}: 0 of {space}, {} nodes, {} pruned",
            s.nodes_visited, s.pruned
        ));
    }
    Ok(parts.join("; "))
}

fn even_dimensional() -> Outcome {
    let input = load("i4.json");
    let p = &input.polytope;
    let values = input.schar.clone().ok_or("i4.json has no schar")?;
    let check = validate_schar(p, &values).map_err(|e| e.to_string())?;
    ensure!(check.valid, "pattern function rejected: {:?}", check.violation);
    let theta = SCharFunction::new(p, values).map_err(|e| e.to_string())?;
    let expected = profile(
        Coefficients::Z,
        vec![
            AbelianGroup::free(1),
            AbelianGroup::zero(),
            AbelianGroup::with_twos(6, 5),
            AbelianGroup::zero(),
            AbelianGroup::free(1),
        ],
    );
    for (name, t) in ["formula", "CW/SNF", "oracle"].iter().zip(&three_routes(p, &theta, 0)?) {
        ensure!(t.z == expected, "{name} gives {}", t.z);
    }
    let m = MorseData::random(p, 0).map_err(|e| e.to_string())?;
    let ctx = RingContext::new(p, &theta, &m.skeleton).map_err(|e| e.to_string())?;
    let ring = ring_presentation(&ctx).map_err(|e| e.to_string())?;
    ensure!(ring.rank() == 6, "{} generators", ring.rank());
    let dims = graded_dimensions(&ring);
    ensure!(dims == vec![1, 0, 6, 0, 1], "graded dimensions {dims:?}");
    ensure!((0..=4).all(|k| dims[k] == dims[4 - k]), "Poincare symmetry fails: {dims:?}");
    let pairing = ctx.pairing_matrix().map_err(|e| e.to_string())?;
    let rank = rational_rank(&pairing);
    let diag = if rank == 6 { "nondegenerate" } else { "degenerate" };
    Ok(format!("H(Z) = {expected}, ring dims {dims:?}, H2 x H2 pairing rank {rank} ({diag})"))
}

fn property_battery() -> Outcome {
    let mut runs = 0;
    for p in battery() {
        let n = p.dim();
        let h = p.h_vector();
        ensure!((0..=n).all(|i| h[i] == h[n - i]), "{}: Dehn-Sommerville fails {h:?}", p.name());
        let theta = first_theta(&p);
        for seed in 0..SEEDS {
            let m = MorseData::random(&p, seed).map_err(|e| format!("{} seed {seed}: {e}", p.name()))?;
            let idx = m.skeleton.index_counts(n);
            ensure!(
                (0..=n).all(|i| idx[i] as i64 == h[n - i]),
                "{} seed {seed}: index counts {idx:?} vs h {h:?}",
                p.name()
            );
            let counts = m.cells.counts();
            ensure!(
                (0..=n).all(|k| counts[k] as i64 == h[k..].iter().sum::<i64>()),
                "{} seed {seed}: cell counts {counts:?}",
                p.name()
            );
            let cc = m.chain_complex(&p).map_err(|e| e.to_string())?;
            ensure!(cc.is_complex(), "{} seed {seed}: d o d != 0", p.name());
            if theta.is_some() {
                let t = homology_triple(&cc);
                for c in Coefficients::ALL {
                    let f = theorem_homology(&h, n, c);
                    ensure!(
                        t.get(c) == &f,
                        "{} seed {seed} over {c}: chain {} vs formula {f}",
                        p.name(),
                        t.get(c)
                    );
                }
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} polytope/seed runs"))
}

fn toric_suite() -> Outcome {
    let mut checked = 0;
    for p in battery() {
        let h = p.h_vector();
        for seed in 0..SEEDS {
            let m = MorseData::random(&p, seed).map_err(|e| e.to_string())?;
            let snf = homology_triple(&m.toric_chain_complex(&p).map_err(|e| e.to_string())?).z;
            let f = theorem_toric_homology(&h, p.dim());
            ensure!(snf == f, "{} seed {seed}: SNF {snf} vs formula {f}", p.name());
            checked += 1;
        }
        if p.dim() == 2 {
            let s3 = profile(
                Coefficients::Z,
                vec![AbelianGroup::free(1), AbelianGroup::zero(), AbelianGroup::zero(), AbelianGroup::free(1)],
            );
            ensure!(theorem_toric_homology(&h, 2) == s3, "{}: not a 3-sphere profile", p.name());
        }
    }
    let i3 = load("i3.json");
    let m = MorseData::random(&i3.polytope, 0).map_err(|e| e.to_string())?;
    let cc = m.toric_chain_complex(&i3.polytope).map_err(|e| e.to_string())?;
    let got = homology_triple(&cc).z;
    let want = profile(
        Coefficients::Z,
        vec![
            AbelianGroup::free(1),
            AbelianGroup::zero(),
            AbelianGroup::zero(),
            AbelianGroup::free(4),
            AbelianGroup::zero(),
            AbelianGroup::free(1),
        ],
    );
    ensure!(got == want, "I3 toric homology {got}");
    let chi = toric_euler(&i3.polytope.h_vector());
    ensure!(chi == -4 && cc.euler_characteristic() == -4, "I3 toric Euler characteristic {chi}");
    Ok(format!("{checked} comparisons; I3 {got}, chi = -4"))
}

fn group_suite() -> Outcome {
    let mut checked = Vec::new();
    for p in battery() {
        let Some(theta) = first_theta(&p) else { continue };
        let gamma = coxeter_presentation(&p);
        let xi = xi_map(&gamma, &theta).map_err(|e| e.to_string())?;
        let k = kernel_presentation(&gamma, &xi).map_err(|e| e.to_string())?;
        let cosets = 1usize << (p.dim() - 1);
        let m = p.facet_count();
        ensure!(k.index() == cosets, "{}: {} cosets", p.name(), k.index());
        let count = k.schreier_generators.len();
        ensure!(count == cosets * m - (cosets - 1), "{}: {count} Schreier generators", p.name());
        for g in &k.schreier_generators {
            ensure!(xi.eval(&g.word) == 0, "{}: generator {:?} leaves the kernel", p.name(), g.word);
        }
        for r in &k.rewritten_relators {
            ensure!(r.iter().all(|&s| s < count), "{}: relator uses an unknown generator", p.name());
        }
        ensure!(audit_kernel(&gamma, &xi, &k).passed(), "{}: kernel audit failed", p.name());
        checked.push(p.name().to_string());
    }
    ensure!(!checked.is_empty(), "no battery polytope admits a function");
    Ok(format!("{} polytopes: {}", checked.len(), checked.join(", ")))
}

fn universal_coefficients() -> Outcome {
    let mut checked = 0;
    for p in battery() {
        let theta = first_theta(&p);
        let m = MorseData::random(&p, 0).map_err(|e| e.to_string())?;
        let cw = homology_triple(&m.chain_complex(&p).map_err(|e| e.to_string())?);
        ensure!(uct_holds(&cw), "{}: CW homology {} / {}", p.name(), cw.z, cw.z2);
        checked += 1;
        if let Some(theta) = theta {
            let dc = build_quotient_complex(&p, &theta).map_err(|e| e.to_string())?;
            let t = dc.homology();
            ensure!(uct_holds(&t), "{}: oracle homology {} / {}", p.name(), t.z, t.z2);
            checked += 1;
        }
    }
    for file in ["i3.json", "i4.json", "square.json"] {
        let input = load(file);
        let p = &input.polytope;
        let theta = match &input.schar {
            Some(v) => SCharFunction::new(p, v.clone()).map_err(|e| e.to_string())?,
            None => first_theta(p).ok_or("no function")?,
        };
        for t in three_routes(p, &theta, 1)? {
            ensure!(uct_holds(&t), "{file}: {} / {}", t.z, t.z2);
            checked += 1;
        }
    }
    Ok(format!("{checked} homology computations"))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "cube pipeline", budget: Some(Duration::from_secs(5)), run: cube_pipeline },
        Criterion { name: "sphere check", budget: Some(Duration::from_secs(2)), run: sphere_check },
        Criterion { name: "non-existence certification", budget: Some(Duration::from_secs(10)), run: non_existence },
        Criterion { name: "even-dimensional suite", budget: Some(Duration::from_secs(60)), run: even_dimensional },
        Criterion { name: "property battery", budget: None, run: property_battery },
        Criterion { name: "toric suite", budget: None, run: toric_suite },
        Criterion { name: "group suite", budget: None, run: group_suite },
        Criterion { name: "universal coefficients", budget: None, run: universal_coefficients },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {} ({}): PASS in {elapsed:.2?} - {detail}", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({}): FAIL in {elapsed:.2?} - {why}", i + 1, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
