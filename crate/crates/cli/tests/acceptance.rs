//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use htsurf::engine::{
    enumerate_requirements, finalize, run_construction, surface_hom_even, surface_hom_odd, ConstructionBudget,
    ConstructionLog, FreeBasis,
};
use htsurf::permutation::{complete, orbit_structure, PartialInjection, Window};
use htsurf::surface::{twists_odd, Parity, Surface};
use htsurf::verify::{check_freeness, check_nondiscrete, check_transitivity, moved_by_power};
use htsurf::words::{evaluate, Generator, GeneratorAssignment, Letter, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(s: &str) -> Word {
    s.parse().expect("fixture word parses")
}

fn random_table(rng: &mut ChaCha8Rng) -> PartialInjection {
    let n = rng.gen_range(0..=50);
    let mut dom: Vec<i64> = (-100..=100).collect();
    let mut cod = dom.clone();
    dom.shuffle(rng);
    cod.shuffle(rng);
    PartialInjection::from_pairs(dom.into_iter().zip(cod).take(n)).expect("distinct points")
}

fn completion_bijectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..1000 {
        let t = random_table(&mut rng);
        let p = complete(t.clone());
        let mut seen = HashSet::new();
        for a in -200..=200 {
            let b = p.apply(a);
            ensure(seen.insert(b), || format!("table {i}: {b} hit twice"))?;
            ensure(p.apply_inverse(b) == a, || format!("table {i}: inverse fails at {a}"))?;
        }
        for (a, b) in t.pairs() {
            ensure(p.apply(a) == b, || format!("table {i}: {a} not sent to {b}"))?;
        }
    }
    Ok(())
}

fn random_letters(rng: &mut ChaCha8Rng, names: &[Generator]) -> Vec<Letter> {
    let len = rng.gen_range(0..=12);
    (0..len)
        .map(|_| Letter::new(names[rng.gen_range(0..names.len())].clone(), rng.gen()))
        .collect()
}

fn word_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let names: Vec<Generator> = ["s", "t", "u"].into_iter().map(Generator::new).collect();
    let assign: GeneratorAssignment = names
        .iter()
        .map(|g| (g.clone(), complete(random_table(&mut rng))))
        .collect();
    for i in 0..10_000 {
        let (lu, lv) = (random_letters(&mut rng, &names), random_letters(&mut rng, &names));
        let u = Word::from_letters(lu.clone());
        let v = Word::from_letters(lv);
        ensure(Word::from_letters(u.letters().to_vec()) == u, || format!("pair {i}: reduce not idempotent"))?;
        let a = rng.gen_range(-150..=150);
        ensure(evaluate(&lu, &assign, a) == assign.evaluate(&u, a), || format!("pair {i}: raw and reduced differ"))?;
        let uv = assign.evaluate(&(&u * &v), a).map_err(|e| e.to_string())?;
        let step = assign.evaluate(&u, a).and_then(|b| assign.evaluate(&v, b)).map_err(|e| e.to_string())?;
        ensure(uv == step, || format!("pair {i}: evaluation is not a right action"))?;
        let (core, c) = u.cyclic_reduce();
        ensure(core.is_cyclically_reduced() && &(&c * &core) * &c.inverse() == u, || {
            format!("pair {i}: cyclic reduction of {u} does not reassemble")
        })?;
    }
    Ok(())
}

fn criterion3_budget() -> ConstructionBudget {
    ConstructionBudget {
        n_free: 2,
        word_len: 4,
        tuple_max: 2,
        window: Window::new(3),
        orbit_target: 6,
        designated: vec![w("tau2"), w("[sigma, tau2]")],
    }
}

struct Run {
    budget: ConstructionBudget,
    assignment: GeneratorAssignment,
    log: ConstructionLog,
}

fn forcing_soundness(run: &mut Option<Run>) -> Outcome {
    let budget = criterion3_budget();
    let reqs = enumerate_requirements(&budget).map_err(|e| e.to_string())?;
    let (partial, log) = run_construction(&budget, None).map_err(|e| e.to_string())?;
    ensure(log.len() == reqs.len(), || format!("{} witnesses for {} requirements", log.len(), reqs.len()))?;
    let fin = finalize(&partial);
    let failures = log.replay(&fin);
    ensure(failures.is_empty(), || format!("{} witnesses fail replay, first {:?}", failures.len(), failures[0]))?;
    let extent = htsurf::verify::table_extent(&fin) + 5;
    let free = check_freeness(&fin, 4, Window::new(extent as u32)).map_err(|e| e.to_string())?;
    ensure(free.flagged.is_empty(), || format!("freeness flags {:?}", free.flagged))?;
    let logged: Vec<Word> = log.witnesses().map(|x| x.word().clone()).collect();
    let trans = check_transitivity(&fin, 2, budget.window, 2, &logged).map_err(|e| e.to_string())?;
    ensure(trans.unrealized.is_empty(), || format!("{} pairs unrealized", trans.unrealized.len()))?;
    *run = Some(Run {
        budget,
        assignment: fin,
        log,
    });
    Ok(())
}

fn non_discreteness(run: &Option<Run>) -> Outcome {
    let run = run.as_ref().ok_or("needs the run of criterion 3")?;
    let window = Window::new(3);
    let hints: Vec<i64> = run.log.witnesses().flat_map(|x| x.points()).collect();
    for d in &run.budget.designated {
        let orbits = orbit_structure(d, &run.assignment, window, 10_000).map_err(|e| e.to_string())?;
        ensure(orbits.all_finite(), || format!("{d}: truncated orbits at {:?}", orbits.truncated))?;
        let max = orbits.max_length().unwrap_or(0);
        ensure(max >= 6, || format!("{d}: longest orbit {max}"))?;
        let nd = check_nondiscrete(d, &run.assignment, window, 10_000, &hints, Window::new(10_000))
            .map_err(|e| e.to_string())?;
        let moved = nd.moved().ok_or_else(|| format!("{d}: degenerate at q = {}", nd.q()))?;
        for a in window.points() {
            let r = moved_by_power(d, &run.assignment, a, nd.q(), 10_000).map_err(|e| e.to_string())?;
            ensure(r == Some(false), || format!("{d}^{} moves window point {a}", nd.q()))?;
        }
        let r = moved_by_power(d, &run.assignment, moved, nd.q(), 10_000).map_err(|e| e.to_string())?;
        ensure(r == Some(true), || format!("{d}^{} fixes {moved}", nd.q()))?;
    }
    Ok(())
}

fn twist_identities() -> Outcome {
    for genus in [2, 4] {
        let s = Surface::new(genus).map_err(|e| e.to_string())?;
        let kx = s.folding().apply_map(&s.curve());
        for n in 0..=5 {
            let f = s.sequence(n).map_err(|e| e.to_string())?;
            ensure(f.apply_map(s.relator()).is_empty(), || format!("genus {genus}: f_{n}(relator) nonempty"))?;
            for i in 1..=s.rank() {
                let b = Word::generator(&Generator::new(format!("b{i}")));
                let phi = Word::generator(&Generator::new(format!("phi{i}")));
                let closed = &(&kx.pow(n.into()) * &phi) * &kx.pow(-i64::from(n));
                let iterated = &s.sequence_images(&b, n)[n as usize];
                ensure(f.apply_map(&b) == closed && *iterated == closed, || {
                    format!("genus {genus}: f_{n}(b{i}) differs from the closed form")
                })?;
            }
        }
    }
    for genus in [3, 5] {
        let s = Surface::new(genus).map_err(|e| e.to_string())?;
        let (delta, zeta) = twists_odd(s.rank()).map_err(|e| e.to_string())?;
        let dz = delta.compose(&zeta).map_err(|e| e.to_string())?;
        let zd = zeta.compose(&delta).map_err(|e| e.to_string())?;
        for g in &s.presentation().generators {
            let x = Word::generator(g);
            ensure(dz.apply_map(&x) == zd.apply_map(&x), || format!("genus {genus}: twists disagree on {g}"))?;
        }
        for n in 0..=5 {
            let rho = s.sequence(n).map_err(|e| e.to_string())?;
            ensure(rho.apply_map(s.relator()).is_empty(), || format!("genus {genus}: rho_{n}(relator) nonempty"))?;
        }
    }
    Ok(())
}

fn faithfulness() -> Outcome {
    let s = Surface::new(2).map_err(|e| e.to_string())?;
    for (g, expected) in [("a1", 0), ("b1 ~a1", 1), ("a1 b1 ~a1 ~b1", 1)] {
        let got = s.faithful_index(&w(g), 10).map_err(|e| e.to_string())?;
        ensure(got == Some(expected), || format!("genus 2, {g}: index {got:?}, expected {expected}"))?;
    }
    let s = Surface::new(3).map_err(|e| e.to_string())?;
    for g in ["b", "b ~b'"] {
        let got = s.faithful_index(&w(g), 5).map_err(|e| e.to_string())?;
        ensure(got.is_some_and(|n| n <= 5), || format!("genus 3, {g}: index {got:?}"))?;
    }
    Ok(())
}

fn relator_collapse(run: &Option<Run>) -> Outcome {
    let run = run.as_ref().ok_or("needs the run of criterion 3")?;
    let g = |s: &str| Generator::new(s);
    let even = FreeBasis::new(Parity::Even, 1, vec![g("sigma"), g("tau2")]).map_err(|e| e.to_string())?;
    let odd = FreeBasis::new(Parity::Odd, 1, vec![g("sigma"), g("tau1"), g("tau2")]).map_err(|e| e.to_string())?;
    let homs = [
        surface_hom_even(&run.assignment, &even, 2).map_err(|e| e.to_string())?,
        surface_hom_odd(&run.assignment, &odd, 2).map_err(|e| e.to_string())?,
    ];
    for hom in &homs {
        let genus = hom.genus();
        ensure(hom.relator_image().is_empty(), || format!("genus {genus}: relator image nonempty"))?;
        let raw = hom.apply_raw(hom.surface().relator());
        for a in Window::new(50).points() {
            let b = evaluate(&raw, &run.assignment, a).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("genus {genus}: relator moves {a} to {b}"))?;
        }
        let mismatches = hom.route_mismatches().map_err(|e| e.to_string())?;
        ensure(mismatches.is_empty(), || format!("genus {genus}: routes disagree on {mismatches:?}"))?;
    }
    Ok(())
}

fn end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_htsurf");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let construct = |name: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let out = dir.path().join(name);
        let status = Command::new(bin)
            .args(["construct", "--genus", "2", "--word-len", "4", "--tuple-max", "2", "--window", "3"])
            .args(["--orbit-target", "6", "--power", "2", "-o"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || format!("construct failed: {}", String::from_utf8_lossy(&status.stderr)))?;
        let spec = std::fs::read(&out).map_err(|e| e.to_string())?;
        let log = std::fs::read(out.with_extension("log.jsonl")).map_err(|e| e.to_string())?;
        Ok((spec, log))
    };
    let one = construct("one.json")?;
    let two = construct("two.json")?;
    ensure(one == two, || "artifacts differ between identical invocations".into())?;
    let verify = Command::new(bin)
        .arg("verify")
        .arg(dir.path().join("one.json"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(verify.status.success(), || format!("verify exited with {}", verify.status))
}

fn report(index: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
    });
    match &outcome {
        Ok(()) => println!("PASS {index} {name} ({elapsed:.2?})"),
        Err(msg) => println!("FAIL {index} {name} ({elapsed:.2?}): {msg}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut run = None;
    let results = [
        report(1, "completion bijectivity", secs(5), completion_bijectivity),
        report(2, "word algebra", secs(5), word_algebra),
        report(3, "forcing soundness", secs(60), || forcing_soundness(&mut run)),
        report(4, "non-discreteness", secs(10), || non_discreteness(&run)),
        report(5, "symbolic twist identities", secs(5), twist_identities),
        report(6, "eventual faithfulness", secs(5), faithfulness),
        report(7, "relator collapse", secs(10), || relator_collapse(&run)),
        report(8, "end-to-end determinism", secs(90), end_to_end),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
