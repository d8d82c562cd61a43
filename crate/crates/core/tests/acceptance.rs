//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stonework::corpus::{duality_groupoids, duality_monoids, named};
use stonework::duality::{
    clifford_check, k_union_probe, round_trip_groupoid, round_trip_monoid, verify_k_laws,
};
use stonework::filter::{Filter, UltrafilterGroupoid};
use stonework::groupoid::{BisectionViolation, CoveringFunctor, CoveringViolation, FiniteGroupoid};
use stonework::laws::algebra_suite;
use stonework::monoid::examples::{chain_monoid, clifford_example, symmetric_inverse_monoid};
use stonework::monoid::{Bm1Violation, BooleanViolation, MonoidConfig};
use stonework::polycyclic::oracle::{join_agrees, product_agrees, sample};
use stonework::polycyclic::{
    arrow_to_ultrafilter, ultrafilter_to_arrow, CnElement, CuntzArrow, PolyElement,
};
use stonework::Result;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn duality_round_trips() -> Outcome {
    let start = Instant::now();
    let config = MonoidConfig::default();
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, m) in duality_monoids()? {
        let cert = round_trip_monoid(&m, &config)?;
        count += 1;
        if cert.source_size != m.size() || cert.target_size != m.size() {
            bad.push(format!(
                "{name}: |S| = {}, |A(G(S))| = {}",
                cert.source_size, cert.target_size
            ));
        }
    }
    for (name, g) in duality_groupoids()? {
        let cert = round_trip_groupoid(&g, &config)?;
        count += 1;
        if cert.source_size != g.len() || cert.target_size != g.len() {
            bad.push(format!(
                "{name}: |G| = {}, |G(A(G))| = {}",
                cert.source_size, cert.target_size
            ));
        }
    }
    let ix3 = round_trip_monoid(&symmetric_inverse_monoid(3)?, &config)?;
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 10.0 && (ix3.source_size, ix3.target_size) == (34, 34);
    Ok((
        ok,
        format!(
            "{count} objects certified, I(3): {} = {}, {secs:.2}s total{}",
            ix3.source_size,
            ix3.target_size,
            if bad.is_empty() {
                String::new()
            } else {
                format!("; mismatches: {}", bad.join("; "))
            }
        ),
    ))
}

/// The ultrafilter generated by the rank-one map `{i->j}` is sent to the
/// pair arrow with range `j` and domain `i`.
fn pair_groupoid_example() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [2, 3] {
        let m = symmetric_inverse_monoid(k)?;
        let gs = UltrafilterGroupoid::new(&m)?;
        let pair = FiniteGroupoid::pair(k)?;
        let mut map = Vec::new();
        for u in gs.ultrafilters() {
            let label = m.label(u.generator());
            let inner = label.trim_matches(|c| c == '{' || c == '}');
            let Some((i, j)) = inner.split_once("->") else {
                return Ok((
                    false,
                    format!("ultrafilter generator {label} is not rank one"),
                ));
            };
            let (i, j): (usize, usize) = (i.trim().parse().unwrap(), j.trim().parse().unwrap());
            map.push((j - 1) * k + (i - 1));
        }
        match gs.groupoid().check_isomorphism(&pair, &map) {
            Ok(()) => notes.push(format!("G(I({k})) = {k}x{k} ({} arrows)", gs.len())),
            Err(e) => {
                ok = false;
                notes.push(format!("G(I({k})): {e}"));
            }
        }
    }
    Ok((ok, notes.join(", ")))
}

fn law_suite() -> Outcome {
    let mut failures = 0;
    let mut instances = 0;
    let mut checked = 0;
    let mut notes = Vec::new();
    for (name, m) in duality_monoids()? {
        if m.size() > 64 {
            continue;
        }
        checked += 1;
        let mut report = algebra_suite(&m)?;
        report.extend(verify_k_laws(&m)?);
        failures += report.failure_count();
        instances += report.instance_count();
        for law in report.laws.iter().filter(|l| !l.passed()) {
            notes.push(format!("{name}/{}", law.name));
        }
    }
    Ok((
        failures == 0,
        format!(
            "{checked} monoids, {instances} instances, {failures} counterexamples{}",
            if notes.is_empty() {
                String::new()
            } else {
                format!(" in {}", notes.join(", "))
            }
        ),
    ))
}

fn clifford_example_check() -> Outcome {
    let m = clifford_example()?;
    let report = clifford_check(&m)?;
    Ok((
        report.holds(),
        format!(
            "{} ultrafilters with A^-1 A = A A^-1, d = r on all arrows: {:?}, {} components",
            report.ultrafilters_checked, report.d_equals_r, report.components
        ),
    ))
}

fn polycyclic_identities() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [2, 3] {
        let pieces = (0..n as u8)
            .map(|i| {
                let g = PolyElement::generator(i);
                CnElement::psi(n, &g.mul(&g.inverse()))
            })
            .collect::<Result<Vec<_>>>()?;
        let join = CnElement::join_all(n, &pieces)?;
        let is_one = matches!(&join, Ok(j) if *j == CnElement::one(n)?);
        ok &= is_one;
        notes.push(format!(
            "n={n}: join = {}",
            join.map(|j| j.to_string())
                .unwrap_or_else(|e| e.to_string())
        ));
    }

    let all = PolyElement::all_up_to(2, 3);
    let mut hom_failures = 0;
    for a in &all {
        let pa = CnElement::psi(2, a)?;
        for b in &all {
            if CnElement::psi(2, &a.mul(b))? != pa.mul(&CnElement::psi(2, b)?)? {
                hom_failures += 1;
            }
        }
    }
    ok &= hom_failures == 0;
    notes.push(format!(
        "psi on {} P2 pairs: {hom_failures} failures",
        all.len() * all.len()
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut disagreements = 0;
    let mut joins_defined = 0;
    for i in 0..1000 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let a = sample::element(&mut rng, n, 4)?;
        let b = if i % 4 < 2 {
            sample::related(&mut rng, &a, 4)?
        } else {
            sample::element(&mut rng, n, 4)?
        };
        if a.join(&b)?.is_ok() {
            joins_defined += 1;
        }
        if !product_agrees(&a, &b)? || !join_agrees(&a, &b)? {
            disagreements += 1;
        }
    }
    ok &= disagreements == 0;
    notes.push(format!(
        "oracle: 1000 pairs, {disagreements} disagreements ({joins_defined} joins defined)"
    ));
    Ok((ok, notes.join("; ")))
}

fn thompson_units() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7401);
    let mut closure_failures = 0;
    for _ in 0..500 {
        let u = sample::unit(&mut rng, 2, 6)?;
        let v = sample::unit(&mut rng, 2, 6)?;
        let uv = u.mul(&v)?;
        if !(uv.is_unit()
            && uv.is_unit_definitional()
            && u.inverse().is_unit()
            && v.inverse().is_unit())
        {
            closure_failures += 1;
        }
    }
    let mut disagreements = 0;
    let mut units = 0;
    for i in 0..1000 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let a = sample::element(&mut rng, n, 5)?;
        let unit = a.is_unit();
        units += unit as usize;
        if unit != a.is_unit_definitional() {
            disagreements += 1;
        }
    }
    Ok((
        closure_failures == 0 && disagreements == 0,
        format!(
            "500 unit pairs: {closure_failures} closure failures; 1000 elements ({units} units): {disagreements} disagreements"
        ),
    ))
}

fn cuntz_bijection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3201);
    let mut round_trip_failures = 0;
    for i in 0..1000 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let g = sample::canonical_arrow(&mut rng, n, 4, 3);
        let (rep, z) = arrow_to_ultrafilter(&g);
        let back = ultrafilter_to_arrow(&rep, &z)?;
        if back != g || arrow_to_ultrafilter(&back) != (rep, z) {
            round_trip_failures += 1;
        }
    }
    let mut independence_failures = 0;
    for i in 0..200 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let (rep, z) = sample::ultrafilter_input(&mut rng, n, 4, 3);
        let PolyElement::Pair { x, y } = &rep else {
            unreachable!()
        };
        let w = z.drop(y.len());
        let p = w.take(1 + i % 3);
        let alt = PolyElement::pair(x.concat(&p), y.concat(&p));
        let (g, h): (CuntzArrow, CuntzArrow) = (
            ultrafilter_to_arrow(&rep, &z)?,
            ultrafilter_to_arrow(&alt, &z)?,
        );
        if g != h {
            independence_failures += 1;
        }
    }
    Ok((
        round_trip_failures == 0 && independence_failures == 0,
        format!(
            "1000 round trips: {round_trip_failures} failures; 200 representative pairs: {independence_failures} failures"
        ),
    ))
}

fn negative_controls() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let chain = chain_monoid(3)?;
    let witness = chain.check_boolean().witness;
    let expected = BooleanViolation::Bm1 {
        violation: Bm1Violation::MissingComplement { e: 1 },
    };
    ok &= witness == Some(expected);
    notes.push(format!(
        "3-chain: {}",
        witness.map(|w| w.to_string()).unwrap_or("accepted".into())
    ));

    let entry = named("bad-functor")?;
    let (source, target, arrow_map) = entry.to_functor_parts()?;
    let f = CoveringFunctor::new(&source, &target, arrow_map)?;
    let got = f.check_covering().err();
    ok &= got
        == Some(CoveringViolation::StarNotInjective {
            object: 0,
            g: 0,
            h: 2,
        });
    notes.push(format!(
        "collapse functor: {}",
        got.map(|v| v.to_string()).unwrap_or("accepted".into())
    ));

    let m = symmetric_inverse_monoid(2)?;
    let gs = UltrafilterGroupoid::new(&m)?;
    let s = m.find_label("{1->1}").expect("label");
    let t = m.find_label("{1->2}").expect("label");
    let arrow = |e| {
        gs.index_of(&Filter::principal(&m, e).expect("non-zero"))
            .expect("ultrafilter")
    };
    let (ks, kt) = (arrow(s), arrow(t));
    let probe = k_union_probe(&gs, s, t);
    let shared = matches!(probe.violation, Some(BisectionViolation::Domain { a, b })
        if (a.min(b), a.max(b)) == (ks.min(kt), ks.max(kt)));
    let law_ok = verify_k_laws(&m)?
        .law("k-union-bisection")
        .is_some_and(|l| l.passed());
    ok &= !probe.is_bisection && probe.join.is_none() && shared && law_ok;
    notes.push(format!(
        "K_s u K_t for {{1->1}}, {{1->2}}: {} (k-union-bisection)",
        probe
            .violation
            .map(|v| v.to_string())
            .unwrap_or("accepted".into())
    ));
    Ok((ok, notes.join("; ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("duality round trips", duality_round_trips),
        ("G(I(X)) is the pair groupoid", pair_groupoid_example),
        ("algebraic law suite", law_suite),
        ("Clifford example", clifford_example_check),
        ("polycyclic identities and oracle", polycyclic_identities),
        ("Thompson group units", thompson_units),
        ("Cuntz ultrafilter bijection", cuntz_bijection),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !ok as usize;
        println!(
            "[{}] criterion {}: {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
