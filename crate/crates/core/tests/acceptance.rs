//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Three criteria are known to fail because the mathematics does not allow
//! them: degree-3 inflation along `Z/mn -> Z/n` sends a generator to `m^2`
//! times a generator, not `m` times one, so it is injective only when
//! `gcd(m, n) = 1`. The run exits successfully only when every other
//! criterion passes and the known failures fail in exactly the expected way.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauer_core::abelian::{FinAbGroup, Int};
use brauer_core::cohomology::{cohomology, inflation_map, Coefficients};
use brauer_core::curve::{
    brauer_report, brauer_report_with, stacky_units_cohomology, BrauerResult, CurveSpec, PointExtension, ReportOptions,
    StabilizerPoint,
};
use brauer_core::fiber::{fiber_is_root_gerbe, fiber_is_root_gerbe_via_inflation};
use brauer_core::groups::{
    direct_product, enumerate_extension_classes, CentralExtension, Cocycle2, FiniteGroup, GroupHom,
};
use brauer_core::oracle::{brute_cocycles, cyclic_closed_form, full_bar_cohomology};
use brauer_core::Limits;

struct Outcome {
    pass: bool,
    detail: String,
}

fn lim() -> Limits {
    Limits::default()
}

/// The order <= 8 family: cyclic groups, products of two cyclic groups,
/// the dihedral and quaternion groups of order 8.
fn family() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = (1..=8).map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n))).collect();
    for (a, b) in [(2, 2), (2, 3), (2, 4)] {
        v.push((format!("Z/{a} x Z/{b}"), direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b)).group));
    }
    v.push(("D8".into(), FiniteGroup::dihedral(4).unwrap()));
    v.push(("Q8".into(), FiniteGroup::quaternion()));
    v
}

fn units(g: &FiniteGroup, n: usize) -> FinAbGroup {
    cohomology(g, n, Coefficients::Units, &lim()).unwrap().value().clone()
}

fn cyclic_table() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for r in 2..=6usize {
        for n in 1..=4 {
            let want = if n % 2 == 1 { FinAbGroup::cyclic(r as u64) } else { FinAbGroup::trivial() };
            let got = units(&FiniteGroup::cyclic(r), n);
            if got != want {
                bad.push(format!("H^{n}(Z/{r}) = {got}"));
            }
        }
    }
    let t = start.elapsed();
    Outcome { pass: bad.is_empty() && t < Duration::from_secs(10), detail: format!("{} mismatches", bad.len()) }
}

/// Returns (injective, cokernel) for each pair.
fn cyclic_inflation_results() -> Vec<((usize, usize), bool, FinAbGroup)> {
    let mut out = Vec::new();
    for (n, m) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let big = FiniteGroup::cyclic(m * n);
        let q = GroupHom::new(big, FiniteGroup::cyclic(n), (0..m * n).map(|i| i % n).collect()).unwrap();
        let f = inflation_map(&q, 3, Coefficients::Units, &lim()).unwrap();
        out.push(((n, m), f.is_injective(&lim()).unwrap(), f.cokernel(&lim()).unwrap()));
    }
    out
}

fn cyclic_inflation() -> (Outcome, bool) {
    let start = Instant::now();
    let results = cyclic_inflation_results();
    let t = start.elapsed();
    let mut failing = Vec::new();
    let mut parts = Vec::new();
    for ((n, m), inj, coker) in &results {
        let ok = *inj && coker == &FinAbGroup::cyclic(*m as u64);
        parts.push(format!("({n},{m}) injective={inj} coker={coker}"));
        if !ok {
            failing.push((*n, *m));
        }
    }
    // The generator goes to m^2 times a generator: for (2,2) the map is
    // zero with cokernel Z/4, for (4,2) it has kernel Z/2 and cokernel Z/4.
    let expected =
        failing == [(2, 2), (4, 2)] && results[0].2 == FinAbGroup::cyclic(4) && results[3].2 == FinAbGroup::cyclic(4);
    let pass = failing.is_empty() && t < Duration::from_secs(60);
    (Outcome { pass, detail: parts.join(", ") }, !pass && expected)
}

fn root_gerbe_equivalence() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (name, g) in family() {
        for r in [2u64, 4] {
            for c in enumerate_extension_classes(&g, r, &lim()).unwrap() {
                let e = CentralExtension::new(c).unwrap();
                let a = fiber_is_root_gerbe(&e, &lim()).unwrap();
                let b = fiber_is_root_gerbe_via_inflation(&e, &lim()).unwrap();
                checked += 1;
                if a != b {
                    mismatches.push(format!("{name} r={r}"));
                }
            }
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("{checked} extensions, {} mismatches {mismatches:?}", mismatches.len()),
    }
}

fn point(name: &str, group: FiniteGroup, singular: bool, c: &Cocycle2) -> StabilizerPoint {
    let extension = if c.is_zero() { PointExtension::Split } else { PointExtension::Cocycle(c.clone()) };
    StabilizerPoint { name: name.into(), group, singular, extension }
}

fn coprime_splitting() -> (Outcome, bool) {
    let groups = [
        ("Z/3", FiniteGroup::cyclic(3), false),
        ("Z/5", FiniteGroup::cyclic(5), false),
        ("Z/3 x| Z/2", FiniteGroup::semidirect_cyclic_by_z2(3, 2).unwrap(), true),
    ];
    let r = 2;
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut only_expected = true;
    for (name, g, singular) in groups {
        let h2 = units(&g, 2);
        for c in enumerate_extension_classes(&g, r, &lim()).unwrap() {
            cases += 1;
            // A genus-1 curve, or a nodal curve with H^1 = (Z/2)^2 supplied.
            let h1 = FinAbGroup::from_u64_orders(&[2, 2]);
            let curve = CurveSpec {
                smooth: !singular,
                proper: true,
                connected: true,
                genus: Some(1),
                characteristic: 0,
                points: vec![point("p", g.clone(), singular, &c)],
                h1_coarse: singular.then(|| h1.clone()),
                h1_stack: singular.then(|| h1.clone()),
            };
            let want = BrauerResult::Determined(h1.direct_sum(&h2));
            let fast = brauer_report(&curve, r, &lim()).unwrap();
            let general = brauer_report_with(&curve, r, ReportOptions { general_only: true }, &lim()).unwrap();
            let d = &fast.fibers[0].diagnostics;
            let ok = d.is_root_gerbe
                && d.h3_inflation_injective == Some(true)
                && fast.result == want
                && general.result == want;
            if !ok {
                failures.push(format!(
                    "{name} split={} h3={:?} result={:?}",
                    c.is_zero(),
                    d.h3_inflation_injective,
                    fast.result
                ));
                // Z/3 x| Z/2 has even order, so r = 2 is not coprime to it;
                // its non-split extension is the dicyclic group of order 12.
                let expected = name == "Z/3 x| Z/2"
                    && !c.is_zero()
                    && d.is_root_gerbe
                    && d.h3_inflation_injective == Some(false)
                    && matches!(&fast.result, BrauerResult::Partial { quotient_bound, .. } if *quotient_bound == h1)
                    && fast.result == general.result;
                only_expected &= expected;
            }
        }
    }
    let pass = failures.is_empty();
    let detail = format!("{cases} extensions, {} failing {failures:?}", failures.len());
    (Outcome { pass, detail }, !pass && failures.len() == 1 && only_expected)
}

/// Invariant factors of a subgroup of `(Z/r)^k` listed element by element.
fn structure_of(elements: &[Vec<u64>], r: u64) -> FinAbGroup {
    let order = elements.len() as u64;
    let killed = |k: u64| elements.iter().filter(|e| e.iter().all(|x| x * k % r == 0)).count() as u64;
    let mut orders = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        while rest % p == 0 {
            rest /= p;
        }
        // log_p |A[p^j]| for j = 0, 1, ...
        let mut logs = vec![0u32];
        let mut j = 1;
        loop {
            let size = killed(p.pow(j));
            logs.push(size.ilog(p));
            if size == killed(p.pow(j + 1)) {
                break;
            }
            j += 1;
        }
        // Number of factors of order at least p^j is logs[j] - logs[j-1].
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for (j, &c) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                orders.push(p.pow(j as u32 + 1));
            }
        }
    }
    FinAbGroup::from_u64_orders(&orders)
}

/// `Hom(A, Z/r)` for `A = <a_i, b_i, c_j | n_j c_j = 0, sum c_j = 0>`,
/// by listing every assignment of generators.
fn presentation_oracle(genus: u64, orders: &[u64], r: u64) -> FinAbGroup {
    let k = 2 * genus as usize + orders.len();
    let mut elements = Vec::new();
    let mut x = vec![0u64; k];
    loop {
        let c = &x[2 * genus as usize..];
        let respects = c.iter().zip(orders).all(|(y, n)| y * n % r == 0) && c.iter().sum::<u64>() % r == 0;
        if respects {
            elements.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                return structure_of(&elements, r);
            }
            x[i] += 1;
            if x[i] < r {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn multisets(pool: &[u64], max: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for m in &frontier {
            for &p in pool.iter().filter(|&&p| m.last().is_none_or(|&l| p >= l)) {
                let mut m2: Vec<u64> = m.clone();
                m2.push(p);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn smooth_curves() -> (Outcome, bool) {
    let mut runs = 0;
    let mut split_failures = Vec::new();
    let mut nonsplit_partial = 0;
    let mut nonsplit_other = Vec::new();
    let mut classes: BTreeMap<(u64, u64), Vec<Cocycle2>> = BTreeMap::new();
    for r in [2u64, 3] {
        for n in [2u64, 3, 4] {
            let g = FiniteGroup::cyclic(n as usize);
            classes.insert((n, r), enumerate_extension_classes(&g, r, &lim()).unwrap());
        }
    }
    for r in [2u64, 3] {
        for orders in multisets(&[2, 3, 4], 2) {
            // Every combination of extension classes at the points.
            let mut combos: Vec<Vec<Cocycle2>> = vec![Vec::new()];
            for n in &orders {
                combos = combos
                    .into_iter()
                    .flat_map(|c| classes[&(*n, r)].iter().map(move |x| [c.clone(), vec![x.clone()]].concat()))
                    .collect();
            }
            for combo in combos {
                for genus in 0..=2u64 {
                    runs += 1;
                    let points = orders
                        .iter()
                        .zip(&combo)
                        .enumerate()
                        .map(|(i, (&n, c))| point(&format!("p{i}"), FiniteGroup::cyclic(n as usize), false, c))
                        .collect();
                    let curve = CurveSpec {
                        smooth: true,
                        proper: true,
                        connected: true,
                        genus: Some(genus),
                        characteristic: 0,
                        points,
                        h1_coarse: None,
                        h1_stack: None,
                    };
                    let want = presentation_oracle(genus, &orders, r);
                    if orders.is_empty() && want != FinAbGroup::from_u64_orders(&vec![r; 2 * genus as usize]) {
                        split_failures.push(format!("oracle g={genus} r={r} gives {want}"));
                    }
                    let report = brauer_report(&curve, r, &lim()).unwrap();
                    let ok = report.result == BrauerResult::Determined(want.clone());
                    if combo.iter().all(Cocycle2::is_zero) {
                        if !ok {
                            split_failures.push(format!("g={genus} r={r} orders={orders:?}: {:?}", report.result));
                        }
                    } else if ok {
                    } else if matches!(&report.result, BrauerResult::Partial { subgroup, quotient_bound }
                        if subgroup.is_trivial() && *quotient_bound == want)
                        && report.right_exact == Some(false)
                    {
                        nonsplit_partial += 1;
                    } else {
                        nonsplit_other.push(format!("g={genus} r={r} orders={orders:?}: {:?}", report.result));
                    }
                }
            }
        }
    }
    let pass = split_failures.is_empty() && nonsplit_partial == 0 && nonsplit_other.is_empty();
    let detail = format!(
        "{runs} curves; split gerbes: {} failures; non-split gerbes: {nonsplit_partial} left undetermined (degree-3 inflation not injective), {} other failures {:?}",
        split_failures.len(),
        nonsplit_other.len(),
        split_failures.iter().chain(&nonsplit_other).collect::<Vec<_>>()
    );
    let expected = !pass && split_failures.is_empty() && nonsplit_other.is_empty();
    (Outcome { pass, detail }, expected)
}

fn nonvanishing() -> Outcome {
    let g = FiniteGroup::semidirect_cyclic_by_z2(4, 3).unwrap();
    let curve = CurveSpec {
        smooth: false,
        proper: true,
        connected: true,
        genus: None,
        characteristic: 0,
        points: vec![StabilizerPoint {
            name: "node".into(),
            group: g,
            singular: true,
            extension: PointExtension::Split,
        }],
        h1_coarse: None,
        h1_stack: Some(FinAbGroup::trivial()),
    };
    let h2 = stacky_units_cohomology(&curve, 2, &lim()).unwrap();
    let report = brauer_report(&curve, 2, &lim()).unwrap();
    let pass = h2 == FinAbGroup::cyclic(2) && report.result == BrauerResult::Determined(FinAbGroup::cyclic(2));
    Outcome { pass, detail: format!("H^2(curve, G_m) = {h2}, Brauer group {:?}", report.result) }
}

fn oracle_equivalence() -> Outcome {
    let coeffs = [Coefficients::Integers, Coefficients::Mod(2), Coefficients::Mod(3), Coefficients::Mod(4)];
    let mut compared = 0;
    let mut bad = Vec::new();
    for (name, g) in family() {
        let cyclic = name.strip_prefix("Z/").and_then(|s| s.parse::<u64>().ok());
        for n in 0..=3 {
            for coeff in coeffs {
                let engine = cohomology(&g, n, coeff, &lim()).unwrap().value().clone();
                let full = full_bar_cohomology(&g, n, coeff).unwrap().value;
                compared += 1;
                if engine != full {
                    bad.push(format!("H^{n}({name}, {coeff}): {engine} vs full bar {full}"));
                }
                if let Some(k) = cyclic {
                    let closed = cyclic_closed_form(k, n, coeff).unwrap().value;
                    compared += 1;
                    if engine != closed {
                        bad.push(format!("H^{n}({name}, {coeff}): {engine} vs closed form {closed}"));
                    }
                }
            }
        }
        for r in [2u64, 3, 4] {
            let brute = brute_cocycles(&g, 2, r).unwrap().value.order().unwrap();
            let listed = enumerate_extension_classes(&g, r, &lim()).unwrap().len();
            compared += 1;
            if brute != Int::from(listed) {
                bad.push(format!("{name} r={r}: {brute} cocycle classes vs {listed} listed"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{compared} comparisons, {} mismatches {bad:?}", bad.len()) }
}

fn torsion_bound() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, g) in family() {
        for n in 1..=4 {
            let h = cohomology(&g, n, Coefficients::Integers, &lim()).unwrap().value().clone();
            checked += 1;
            let ok = h.exponent().is_some_and(|e| e.divides(&Int::from(g.order())));
            if !ok {
                bad.push(format!("H^{n}({name}, Z) = {h}"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{checked} groups, {} violations {bad:?}", bad.len()) }
}

fn performance() -> Outcome {
    let start = Instant::now();
    let h = cohomology(&FiniteGroup::quaternion(), 4, Coefficients::Integers, &lim());
    let t = start.elapsed();
    match h {
        Ok(h) => Outcome {
            pass: t < Duration::from_secs(60) && *h.value() == FinAbGroup::cyclic(8),
            detail: format!("H^4(Q8, Z) = {}", h.value()),
        },
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut run = |id: u32, name: &str, criterion: &dyn Fn() -> (Outcome, bool)| {
        let start = Instant::now();
        let (outcome, known_failure) = criterion();
        let t = start.elapsed();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        let note = if known_failure { " [known failure]" } else { "" };
        println!("criterion {id}: {verdict} {name}{note}: {} ({t:.1?})", outcome.detail);
        if !outcome.pass && !known_failure {
            unexpected += 1;
        }
    };
    let plain = |f: fn() -> Outcome| move || (f(), false);
    run(1, "cyclic units table", &plain(cyclic_table));
    run(2, "cyclic inflation in degree 3", &cyclic_inflation);
    run(3, "root-gerbe equivalence", &plain(root_gerbe_equivalence));
    run(4, "coprime splitting", &coprime_splitting);
    run(5, "smooth curves", &smooth_curves);
    run(6, "nonvanishing stacky Brauer group", &plain(nonvanishing));
    run(7, "oracle equivalence", &plain(oracle_equivalence));
    run(8, "torsion bound", &plain(torsion_bound));
    run(9, "performance of H^4(Q8, Z)", &plain(performance));
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failures");
        ExitCode::FAILURE
    }
}
