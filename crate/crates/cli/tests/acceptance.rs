//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

use rand::{Rng, SeedableRng};
use ramcc_cli::run::{run, Command, RunOptions};
use ramcc_core::abbes_saito::{cc, cc_induction_check, compare_cc_kcc, hasse_arf_check, rsw_of_character};
use ramcc_core::algebra::{factor_with_seed, Poly, RationalFunction, Var};
use ramcc_core::corpus::corpus;
use ramcc_core::galois::{characters, find_conjugates, verify_conjugates, Character1, Tower, VirtualRep};
use ramcc_core::kato::{
    cyclotomic_level, induction_check, integrality_check, kato_different, quotient_check, relative_different,
    sg, swan_diffval, swan_rank1_closed, tower_law, transit, CanonicalSymbolForm,
};
use ramcc_core::local::{order_valuation, LaurentSeries, OrderElement};
use ramcc_core::nearby::{dimtot_vertical, ord_of_tensor, VerticalPointData};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

struct Instance {
    name: String,
    tower: Tower,
}

fn instances() -> Result<Vec<Instance>, String> {
    corpus()
        .into_iter()
        .map(|e| {
            let s = ok(e.spec(None), &e.name)?;
            let roots = ok(find_conjugates(&s), &e.name)?;
            let g = ok(verify_conjugates(roots[0].spec(), &roots), &e.name)?;
            Ok(Instance { tower: ok(Tower::new(&g), &e.name)?, name: e.name })
        })
        .collect()
}

fn all_characters(t: &Tower) -> Vec<Character1> {
    let d = t.top();
    let all: Vec<usize> = (0..d.degree()).collect();
    characters(d.group(), &all, d.p().pow(cyclotomic_level(d)))
}

fn index_p_characters(t: &Tower) -> Vec<Character1> {
    let d = t.top();
    let q = d.p().pow(cyclotomic_level(d));
    d.group()
        .subgroups()
        .into_iter()
        .filter(|h| h.len() * d.p() as usize == d.degree())
        .flat_map(|h| characters(d.group(), &h, q))
        .collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for inst in instances()? {
        let t = &inst.tower;
        let m = cyclotomic_level(t.top());
        let wild = all_characters(t).into_iter().filter(|c| !c.is_trivial());
        for chi in wild.chain(index_p_characters(t)) {
            let rep = VirtualRep::single(chi);
            ok(compare_cc_kcc(t, &rep, m, 1), &inst.name)?;
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.2} s");
    Ok(format!("{count} representations over {} instances, exact, {secs:.2} s", corpus().len()))
}

fn anchor(p: u32) -> Result<(Tower, Character1), String> {
    let e = corpus().into_iter().find(|e| e.name == format!("as-p{p}-x")).expect("corpus entry");
    let s = ok(e.spec(None), "spec")?;
    let roots = ok(find_conjugates(&s), "conjugates")?;
    let g = ok(verify_conjugates(roots[0].spec(), &roots), "group")?;
    let t = ok(Tower::new(&g), "tower")?;
    // σ_j: h ↦ h + j·t, with χ(σ_1) = ζ_p
    let mut j_of = vec![0i64; p as usize];
    for (i, el) in g.elements().iter().enumerate() {
        let shift = el.image().sub(&OrderElement::gen(g.spec()));
        let lead = shift.coords()[0].coefficient(1);
        let j = (0..p as i64).find(|&j| lead == RationalFunction::constant(p, j, Var::X)).ok_or("image is not h + j t")?;
        j_of[i] = j;
    }
    let chi = ok(Character1::new(g.table(), (0..p as usize).collect(), j_of.iter().map(|&j| j as u32).collect(), p), "χ")?;
    Ok((t, chi))
}

fn criterion_2() -> Check {
    let (t, chi) = anchor(3)?;
    let d = t.top();
    ensure!(d.conductor() == 3, "c = {}", d.conductor());
    ensure!(d.rho() == 1, "ρ(c) = {}", d.rho());
    let g = t.level(0).group.as_ref().expect("computed");
    for i in 1..3 {
        let j = chi.exponent(i).expect("full group") as i64;
        let expected = RationalFunction::constant(3, -j, d.var());
        ensure!(d.u_value(i) == expected, "u(σ_{j}) = {}", d.u_value(i));
        ensure!(g.element(i).jump() == Some(1), "jump of σ_{j}");
    }
    ensure!(d.fbar_c().to_string() == "T^3 + 2*T", "f̄_c = {}", d.fbar_c());
    let rsw = ok(rsw_of_character(&t, &chi, 1), "rsw")?;
    ensure!(rsw.to_string() == "-dx⊗t^-3", "rsw = {rsw}");
    let rep = VirtualRep::single(chi);
    let c = ok(compare_cc_kcc(&t, &rep, 1, 1), "p = 3")?;
    ensure!(c.cc.to_string() == "-dx" && c.kcc.to_string() == "-dx", "cc = {}, kcc = {}", c.cc, c.kcc);

    let (t2, chi2) = anchor(2)?;
    ensure!(t2.top().conductor() == 2, "p = 2: c = {}", t2.top().conductor());
    let c2 = ok(compare_cc_kcc(&t2, &VirtualRep::single(chi2), 1, 1), "p = 2")?;
    ensure!(c2.cc.to_string() == "dx" && c2.kcc.to_string() == "dx", "p = 2: cc = {}, kcc = {}", c2.cc, c2.kcc);
    Ok("p = 3: c = 3, ρ = 1, u = -j, f̄_c = T^3 - T, rsw = -dx⊗t^-3, cc = kcc = -dx; p = 2: c = 2, cc = kcc = dx".into())
}

fn criterion_3() -> Check {
    let mut swans = 0;
    let mut inductions = 0;
    for inst in instances()? {
        let t = &inst.tower;
        let d = t.top();
        let name = &inst.name;
        let m = cyclotomic_level(d);
        let mut acc = CanonicalSymbolForm::zero(d.p(), m, d.var());
        for i in 0..d.degree() {
            acc = acc.add(&ok(sg(d, i, m), name)?);
        }
        ensure!(acc.is_zero(), "{name}: Σ s_G(σ) = {acc}");
        let all: Vec<usize> = (0..d.degree()).collect();
        let diff = ok(kato_different(d, m), name)?;
        let rel = ok(relative_different(d, &all, m), name)?;
        ensure!(diff == rel, "{name}: s_G(1) = {diff} but the relative different is {rel}");
        for k in 1..t.levels().len() {
            let low = t.level(k);
            ok(quotient_check(d, &low.data, &low.projection, m, 1), name)?;
            let kernel: Vec<usize> = (0..d.degree()).filter(|&i| low.projection[i] == 0).collect();
            ok(tower_law(d, &low.data, &kernel, m), name)?;
        }
        for theta in index_p_characters(t) {
            ok(induction_check(d, &theta, m, 1), name)?;
            inductions += 1;
        }
        let mut reps: Vec<VirtualRep> = all_characters(t).into_iter().chain(index_p_characters(t)).map(VirtualRep::single).collect();
        reps.push(VirtualRep::single(Character1::trivial(vec![0], d.p().pow(m))));
        for rep in reps {
            // swan_diffval also checks the ξ-shift law when p > 2
            for a in 1..d.p() {
                let sw = ok(swan_diffval(d, &rep, m, a), name)?;
                let r = integrality_check(&sw, d.n());
                ensure!(r.integral, "{name}: {sw} is not integral");
                swans += 1;
            }
        }
    }
    Ok(format!("cancellation, different, quotient, tower law, {inductions} inductions, {swans} integral Swan conductors"))
}

fn criterion_4() -> Check {
    let mut rsws = 0;
    let mut closed = 0;
    let mut inductions = 0;
    for inst in instances()? {
        let t = &inst.tower;
        let d = t.top();
        let name = &inst.name;
        let m = cyclotomic_level(d);
        for chi in all_characters(t) {
            let Some(k) = ok(t.wild_level(&chi), name)? else { continue };
            // lift independence and the factorization of f̄_c are checked inside
            for a in 1..d.p() {
                ok(rsw_of_character(t, &chi, a), name)?;
                rsws += 1;
            }
            let low = &t.level(k).data;
            let c = ok(t.level_character(k, &chi), name)?;
            let mut two = ok(swan_rank1_closed(low, &c, m, 1), name)?;
            if k > 0 {
                two = ok(transit(&two, low, d), name)?;
            }
            let one = ok(swan_diffval(d, &VirtualRep::single(chi.clone()), m, 1), name)?;
            ensure!(one == two, "{name}: definition {one} but closed form {two}");
            closed += 1;
        }
        for chi in all_characters(t).into_iter().chain(index_p_characters(t)) {
            let c = ok(cc(t, &VirtualRep::single(chi), 1), name)?;
            ensure!(hasse_arf_check(&c), "{name}: cc = {c} is not a differential of the base");
        }
        for theta in index_p_characters(t) {
            let contains_gc = d.gc().iter().all(|s| theta.subgroup().contains(s));
            let wild = d.gc().iter().any(|&s| theta.exponent(s) != Some(0));
            if contains_gc && wild {
                ok(cc_induction_check(t, &theta, 1), name)?;
                inductions += 1;
            }
        }
    }
    ensure!(inductions > 0, "no induced representation exercised the cc induction formula");
    Ok(format!("{rsws} rsw lift checks, {closed} closed forms, Hasse-Arf, {inductions} cc inductions"))
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Rabin's irreducibility test, using only gcd and Frobenius powers.
fn irreducible(f: &Poly) -> bool {
    let p = f.p() as u64;
    let Some(d) = f.degree().filter(|&d| d >= 1) else { return false };
    let x = Poly::x(f.p());
    let frob = |k: usize| (0..k).fold(x.clone(), |y, _| y.pow_mod(p, f));
    if frob(d).sub(&x).rem(f) != Poly::zero(f.p()) {
        return false;
    }
    (2..=d).filter(|&q| d % q == 0 && is_prime(q as u32)).all(|q| f.gcd(&frob(d / q).sub(&x)).degree() == Some(0))
}

fn criterion_5() -> Check {
    let insts = instances()?;
    for inst in &insts {
        ok(inst.tower.top().check_fbar_two_path(), &inst.name)?;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for e in corpus() {
        let s = ok(e.spec(None), &e.name)?;
        let p = s.p();
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            let coords = (0..s.degree())
                .map(|_| {
                    let terms = (0..3).map(|_| {
                        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..p as i64)).collect();
                        let den: Vec<i64> = vec![1, rng.gen_range(0..p as i64)];
                        let r = RationalFunction::new(Poly::from_coeffs(p, &c), Poly::from_coeffs(p, &den), Var::X)
                            .unwrap_or_else(|_| RationalFunction::one(p, Var::X));
                        (rng.gen_range(0..4), r)
                    });
                    LaurentSeries::from_terms(p, terms, s.precision())
                })
                .collect();
            OrderElement::from_coords(&s, coords).expect("coordinates")
        };
        let mut pairs = 0;
        while pairs < 200 {
            let (a, b) = (random(&mut rng), random(&mut rng));
            let (Ok(va), Ok(vb)) = (order_valuation(&a), order_valuation(&b)) else { continue };
            let vab = ok(order_valuation(&a.mul(&b)), &e.name)?;
            ensure!(vab == va + vb, "{}: v(ab) = {vab} but v(a) + v(b) = {}", e.name, va + vb);
            pairs += 1;
        }
    }
    let primes: Vec<u32> = (2..=97).filter(|&p| is_prime(p)).collect();
    for i in 0..500 {
        let p = primes[i % primes.len()];
        let deg = rng.gen_range(1..=12);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p as i64)).collect();
        c.push(rng.gen_range(1..p as i64));
        let mut f = Poly::from_coeffs(p, &c);
        if i % 5 == 0 {
            f = f.mul(&Poly::from_coeffs(p, &[rng.gen_range(0..p as i64), 1]).pow(2));
        }
        let fac = ok(factor_with_seed(&f, i as u64), "factor")?;
        ensure!(fac.reassemble(p) == f, "factors of {} do not multiply back", f.to_string_var("x"));
        for (g, _) in &fac.factors {
            ensure!(irreducible(g), "{} is reducible mod {p}", g.to_string_var("x"));
        }
    }
    Ok(format!("f̄_c oracle on {} instances, 200 valuation pairs each, 500 factorizations", insts.len()))
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run_file(name: &str, cmd: Command, opts: &RunOptions) -> Result<serde_json::Value, String> {
    let text = ok(std::fs::read_to_string(corpus_path(name)), name)?;
    let out = ok(run(&text, cmd, opts), name)?;
    ensure!(out.status == 0, "{name}: status {}", out.status);
    Ok(out.report)
}

fn criterion_6() -> Check {
    let opts = RunOptions::default();
    for name in ["nearby-constant.ramcc", "nearby-punctured.ramcc"] {
        let r = run_file(name, Command::Nearby, &opts)?;
        ensure!(r["results"]["psi1"] == 0, "{name}: dim Ψ¹ = {}", r["results"]["psi1"]);
    }
    let mut uniform = 0;
    for inst in instances()? {
        let t = &inst.tower;
        let d = t.top();
        // slope 0: tame data, where cc is a scalar
        let tame = cc(t, &VirtualRep::single(Character1::trivial((0..d.degree()).collect(), d.p())), 1);
        let tame = ok(tame, &inst.name)?;
        for (sw, rk) in [(0, 1), (2, 1), (3, 2)] {
            let computed = ok(dimtot_vertical(&VerticalPointData::Computed { cc: tame.clone(), swan_bar: sw, rank_bar: rk }), "dimtot")?;
            let deligne = ok(dimtot_vertical(&VerticalPointData::Deligne { value: sw + rk }), "dimtot")?;
            ensure!(computed == deligne, "{}: {computed} vs {deligne}", inst.name);
        }
        if d.p() > 2 {
            for chi in all_characters(t).into_iter().filter(|c| !c.is_trivial()) {
                let rep = VirtualRep::single(chi);
                let base = ok(ord_of_tensor(&ok(cc(t, &rep, 1), &inst.name)?), &inst.name)?;
                for a in 2..d.p() {
                    let o = ok(ord_of_tensor(&ok(cc(t, &rep, a), &inst.name)?), &inst.name)?;
                    ensure!(o == base, "{}: ord(cc) is {base} for ψ₀ = 1 but {o} for ψ₀ = {a}", inst.name);
                }
                uniform += 1;
            }
        }
    }
    Ok(format!("both triples give dim Ψ¹ = 0; slope-0 agreement; ord(cc) independent of ψ₀ on {uniform} characters"))
}

fn criterion_7() -> Check {
    let mut files = 0;
    for e in corpus() {
        let name = format!("{}.ramcc", e.name);
        let base = RunOptions::default();
        for cmd in [Command::Swan, Command::Cc, Command::Compare] {
            let a = run_file(&name, cmd, &base)?;
            let b = run_file(&name, cmd, &base)?;
            let sa = serde_json::to_string_pretty(&a).expect("json");
            ensure!(sa == serde_json::to_string_pretty(&b).expect("json"), "{name}: output differs between runs");
            let prec = a["precision"].as_i64().ok_or("no precision")?;
            let doubled = run_file(&name, cmd, &RunOptions { precision: Some(2 * prec), ..base.clone() })?;
            ensure!(doubled["results"] == a["results"], "{name}: {} changes at precision {}", cmd.name(), 2 * prec);
        }
        let inv = |prec: Option<i64>| -> Result<serde_json::Value, String> {
            let r = run_file(&name, Command::Invariants, &RunOptions { precision: prec, ..base.clone() })?;
            let v = &r["results"];
            Ok(serde_json::json!([v["conductor"], v["rho"], v["gc"], v["fbar_c"], v["kato_different"], v["hbar"]]))
        };
        let p0 = run_file(&name, Command::Invariants, &base)?["precision"].as_i64().ok_or("no precision")?;
        ensure!(inv(None)? == inv(Some(2 * p0))?, "{name}: invariants change at doubled precision");
        files += 1;
    }
    Ok(format!("{files} files: byte-identical JSON across runs, no change at doubled precision"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 7] = [
        (1, "cc = kcc on the corpus", criterion_1),
        (2, "hand-derived anchors", criterion_2),
        (3, "Kato identities", criterion_3),
        (4, "Abbes-Saito identities", criterion_4),
        (5, "kernel oracles", criterion_5),
        (6, "nearby cycles", criterion_6),
        (7, "determinism and precision", criterion_7),
    ];
    let mut failed = 0;
    for (n, title, f) in criteria {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match r {
            Ok(detail) => println!("criterion {n} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {title}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
