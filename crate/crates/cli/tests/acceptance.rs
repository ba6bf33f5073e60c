//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use comlang::automata::dpl_to_dfa;
use comlang::dpl::clause_closed_form;
use comlang::oracle::{closure_under_addition, dpl_enumerate, enumerate_predicate, sets_equal, word_language};
use comlang::parikh::{parikh, project_word};
use comlang::regularity::{decide_finite, nerode_evidence};
use comlang::unary::crt_solve;
use comlang::{
    AperiodicUnion, Alphabet, Component, Congruence, Count, DiagonalPeriodic, Dfa, DplUnion, FiniteLang, Generator,
    LetterSet, Limits, ParikhVector, PermShuffleTerm, PosBoolExpr, Progression, VectorSet, Word,
};
use comlang_cli::SessionConfig;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_c0de;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn alpha(s: &str) -> Alphabet {
    Alphabet::parse(s).unwrap()
}

fn random_alphabet(rng: &mut StdRng) -> Alphabet {
    Alphabet::new("abc".chars().take(rng.gen_range(1..=3))).unwrap()
}

fn random_term(rng: &mut StdRng, dim: usize, strict: bool) -> DiagonalPeriodic {
    let comps = (0..dim)
        .map(|_| match rng.gen_range(0..4) {
            0 if strict => Component::Fixed(0),
            0 => Component::Fixed(rng.gen_range(0..=3)),
            _ => Component::Periodic(Progression::new(rng.gen_range(0..=3), rng.gen_range(1..=4)).unwrap()),
        })
        .collect();
    DiagonalPeriodic::new(comps)
}

fn random_union(rng: &mut StdRng, sigma: &Alphabet, strict: bool) -> DplUnion {
    let n = rng.gen_range(1..=3);
    let terms = (0..n).map(|_| random_term(rng, sigma.len(), strict)).collect();
    DplUnion::new(sigma.clone(), terms).unwrap()
}

fn random_finite(rng: &mut StdRng) -> FiniteLang {
    let sigma = random_alphabet(rng);
    let n = rng.gen_range(1..=4);
    let words: Vec<Word> = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=4);
            Word::from_symbols((0..len).map(|_| sigma.letter(rng.gen_range(0..sigma.len()))).collect())
        })
        .collect();
    FiniteLang::new(sigma, words).unwrap()
}

fn eval_cli(expr: &str, sigma: &str) -> comlang_cli::Value {
    let cfg = SessionConfig { alphabet: Some(alpha(sigma)), ..SessionConfig::default() };
    comlang_cli::Session::open(expr, &cfg).unwrap().eval().unwrap()
}

fn minimal(u: &DplUnion) -> Dfa {
    dpl_to_dfa(u, &Limits::default()).unwrap().minimize()
}

fn criterion_1() -> Outcome {
    let value = eval_cli("sh*({ab})", "ab");
    let sigma = alpha("ab");
    let mut mismatches = 0;
    let words = sigma.words_up_to(12);
    for w in &words {
        let v = parikh(&sigma, w).unwrap();
        if value.member(&v).unwrap() != (v.get(0) == v.get(1)) {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{} words up to length 12, {mismatches} mismatches", words.len()))
}

fn criterion_2() -> Outcome {
    let sigma = alpha("ab");
    let base = VectorSet::new(sigma.clone(), [vec![1, 1], vec![1, 2]].map(ParikhVector::from_counts), 16);
    let closed = closure_under_addition(&base, 16).unwrap();
    let computed =
        enumerate_predicate(&sigma, |v| v.get(0) <= v.get(1) && v.get(1) <= 2 * v.get(0), 16).unwrap();
    let as_printed =
        enumerate_predicate(&sigma, |v| v.get(1) <= v.get(0) && v.get(0) <= 2 * v.get(1), 16).unwrap();
    let (eq, witness) = sets_equal(&closed, &computed).unwrap();
    let (printed_eq, _) = sets_equal(&closed, &as_printed).unwrap();
    outcome(
        eq && !printed_eq,
        format!(
            "{} vectors; closure = {{|u|_a <= |u|_b <= 2|u|_a}}{}; swapped orientation matches: {printed_eq}",
            closed.len(),
            witness.map(|w| format!(", differs at {w:?}")).unwrap_or_default()
        ),
    )
}

fn criterion_3() -> Outcome {
    let brute = |sys: &[(u64, u64)]| {
        let lcm = sys.iter().fold(1u64, |acc, &(_, m)| num_lcm(acc, m));
        (0..lcm).find(|x| sys.iter().all(|&(r, m)| x % m == r)).map(|x| (x, lcm))
    };
    let congruences: Vec<(u64, u64)> = (1..=8u64).flat_map(|m| (0..m).map(move |r| (r, m))).collect();
    let mut systems = 0usize;
    let mut mismatches = 0usize;
    let mut run = |sys: &[(u64, u64)]| {
        let cs: Vec<Congruence> = sys.iter().map(|&(r, m)| Congruence::new(r, m).unwrap()).collect();
        let got = crt_solve(&cs).map(|c| (c.residue(), c.modulus()));
        systems += 1;
        if got != brute(sys) {
            mismatches += 1;
        }
    };
    for &x in &congruences {
        run(&[x]);
        for &y in &congruences {
            run(&[x, y]);
            for &z in &congruences {
                run(&[x, y, z]);
            }
        }
    }
    outcome(mismatches == 0, format!("{systems} systems, {mismatches} mismatches"))
}

fn num_lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn criterion_4() -> Outcome {
    let sigma = alpha("ab");
    let limits = Limits::default();
    let mut cases = 0;
    let mut mismatches = 0;
    for t in 0..=6 {
        for n in 1..=6 {
            for r in 0..n {
                for (tl, ml) in [('a', 'a'), ('a', 'b'), ('b', 'a'), ('b', 'b')] {
                    let expr = PosBoolExpr::Intersect(vec![
                        PosBoolExpr::leaf(Generator::fcount(tl, t)),
                        PosBoolExpr::leaf(Generator::fmod(ml, r, n)),
                    ]);
                    let from_gen = DplUnion::from_generators(&sigma, &expr, &limits).unwrap();
                    let closed = clause_closed_form(
                        &sigma,
                        &BTreeMap::from([(tl, t)]),
                        &BTreeMap::from([(ml, (r, n))]),
                        sigma.full(),
                    )
                    .unwrap();
                    cases += 1;
                    if closed.map(|l| vec![l]) != Some(from_gen.terms().to_vec()) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{cases} clauses, {mismatches} mismatches"))
}

fn criterion_5(rng: &mut StdRng) -> Outcome {
    let limits = Limits::default();
    let mut mismatches = 0;
    for _ in 0..200 {
        let sigma = random_alphabet(rng);
        let d = random_union(rng, &sigma, true);
        let star = d.iterated_shuffle(&limits).unwrap();
        let closed = closure_under_addition(&dpl_enumerate(&d, 12).unwrap(), 12).unwrap();
        if !sets_equal(&dpl_enumerate(&star, 12).unwrap(), &closed).unwrap().0 {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("200 strict unions at bound 12, {mismatches} mismatches"))
}

fn criterion_6(rng: &mut StdRng) -> Outcome {
    let limits = Limits::default();
    let mut mismatches = 0;
    for _ in 0..200 {
        let sigma = random_alphabet(rng);
        let (x, y) = (random_union(rng, &sigma, false), random_union(rng, &sigma, false));
        let shuffled = dpl_enumerate(&x.shuffle(&y, &limits).unwrap(), 12).unwrap();
        let sums = dpl_enumerate(&x, 12).unwrap().sumset(&dpl_enumerate(&y, 12).unwrap());
        if !sets_equal(&shuffled, &sums).unwrap().0 {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("200 pairs at bound 12, {mismatches} mismatches"))
}

/// Membership in the closure of a finite language, from the oracle.
fn closure_oracle(lang: &FiniteLang, bound: Count) -> VectorSet {
    let base = VectorSet::new(lang.alphabet().clone(), lang.vectors(), bound);
    closure_under_addition(&base, bound).unwrap()
}

fn grows(member: &dyn Fn(&Word) -> bool, sigma: &Alphabet) -> bool {
    let ev = nerode_evidence(member, sigma, 6).unwrap();
    let counts: Vec<usize> = (3..=6).map(|b| ev.count_at(b).unwrap()).collect();
    counts.windows(2).all(|w| w[0] < w[1])
}

/// Nerode growth for a non-regular closure: on the projection onto the
/// witness and a co-occurring letter when one shows it, otherwise on the
/// restriction to such a pair, otherwise on the whole alphabet.
fn non_regular_evidence(lang: &FiniteLang, witness: char) -> Option<&'static str> {
    let sigma = lang.alphabet();
    let x = sigma.index_of(witness).unwrap();
    let partners: BTreeSet<usize> = lang
        .vectors()
        .iter()
        .filter(|v| v.get(x) > 0)
        .flat_map(|v| v.support().iter().collect::<Vec<_>>())
        .filter(|&i| i != x)
        .collect();
    for &y in &partners {
        let keep = LetterSet::from_indices([x, y]);
        let pair = sigma.restrict(keep);
        for (kind, words) in [
            ("projection", lang.words().iter().map(|w| project_word(sigma, w, keep)).collect::<Vec<_>>()),
            (
                "restriction",
                lang.words().iter().filter(|w| w.symbols().iter().all(|c| pair.index_of(*c).is_some())).cloned().collect(),
            ),
        ] {
            let p = FiniteLang::new(pair.clone(), words).unwrap();
            let closed = closure_oracle(&p, 12);
            if grows(&|w| closed.contains(&parikh(&pair, w).unwrap()), &pair) {
                return Some(kind);
            }
        }
    }
    let closed = closure_oracle(lang, 12);
    grows(&|w| closed.contains(&parikh(sigma, w).unwrap()), sigma).then_some("full alphabet")
}

fn criterion_7(rng: &mut StdRng) -> Outcome {
    let limits = Limits::default();
    let sigma = alpha("ab");
    let mut failures = Vec::new();
    let pinned: [(&[&str], Option<char>); 5] = [
        (&["ab"], Some('a')),
        (&["ab", "a", "b"], None),
        (&["abb", "a"], Some('b')),
        (&["a", "b"], None),
        (&["aa"], None),
    ];
    let mut langs: Vec<(FiniteLang, Option<Option<char>>)> = pinned
        .iter()
        .map(|(ws, expected)| (FiniteLang::parse(&sigma, ws).unwrap(), Some(*expected)))
        .collect();
    langs.extend((0..100).map(|_| (random_finite(rng), None)));
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let (mut regular, mut non_regular) = (0, 0);
    for (lang, expected) in &langs {
        let verdict = decide_finite(lang, &limits).unwrap();
        if let Some(expected) = expected {
            if verdict.witness != *expected || verdict.regular != expected.is_none() {
                failures.push(format!("{:?}: unexpected verdict", lang.words()));
            }
        }
        match (&verdict.representation, verdict.witness) {
            (Some(rep), _) => {
                regular += 1;
                let (eq, _) = sets_equal(&dpl_enumerate(rep, 12).unwrap(), &closure_oracle(lang, 12)).unwrap();
                if !eq {
                    failures.push(format!("{:?}: representation differs from the closure", lang.words()));
                }
            }
            (None, Some(w)) => {
                non_regular += 1;
                match non_regular_evidence(lang, w) {
                    Some(kind) => *kinds.entry(kind).or_default() += 1,
                    None => failures.push(format!("{:?}: no Nerode growth", lang.words())),
                }
            }
            (None, None) => failures.push(format!("{:?}: empty verdict", lang.words())),
        }
    }
    outcome(
        failures.is_empty(),
        format!("{regular} regular, {non_regular} non-regular (evidence via {kinds:?}){}", render_failures(&failures)),
    )
}

fn render_failures(failures: &[String]) -> String {
    if failures.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", failures.iter().take(5).cloned().collect::<Vec<_>>().join("; "))
    }
}

fn criterion_8(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for case in 0..100 {
        let sigma = random_alphabet(rng);
        let u = random_union(rng, &sigma, false);
        let d = minimal(&u);
        if !d.is_commutative() {
            failures.push(format!("case {case}: not commutative"));
        }
        let expected = word_language(|v| u.member(v), &sigma, 10).unwrap();
        if sigma.words_up_to(10).iter().any(|w| d.accepts(w) != expected.contains(w)) {
            failures.push(format!("case {case}: language differs"));
        }
        let keep = LetterSet::from_indices((0..sigma.len()).filter(|_| rng.gen_bool(0.5)));
        let p = d.project_automaton(keep).unwrap();
        if p.state_count() > d.state_count() {
            failures.push(format!("case {case}: projection grew"));
        }
        // every term has a member with at most 3 of each letter beyond the kept ones
        let dropped = (sigma.len() - keep.len()) as Count;
        let images: BTreeSet<ParikhVector> = sigma
            .vectors_up_to(8 + 3 * dropped)
            .into_iter()
            .filter(|v| u.member(v))
            .map(|v| v.restrict(keep))
            .collect();
        let sub = sigma.restrict(keep);
        if sub.words_up_to(8).iter().any(|w| p.accepts(w) != images.contains(&parikh(&sub, w).unwrap())) {
            failures.push(format!("case {case}: projected language differs"));
        }
    }
    outcome(failures.is_empty(), format!("100 unions{}", render_failures(&failures)))
}

fn three_state() -> Dfa {
    Dfa::from_transitions(
        alpha("ab"),
        3,
        0,
        &[0],
        &[(0, 'a', 1), (1, 'a', 0), (2, 'a', 2), (0, 'b', 1), (1, 'b', 2), (2, 'b', 0)],
    )
    .unwrap()
}

fn random_expr(rng: &mut StdRng, depth: usize, leaf: &dyn Fn(&mut StdRng) -> PosBoolExpr) -> PosBoolExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let parts = (0..rng.gen_range(2..=3)).map(|_| random_expr(rng, depth - 1, leaf)).collect();
    if rng.gen_bool(0.5) {
        PosBoolExpr::Union(parts)
    } else {
        PosBoolExpr::Intersect(parts)
    }
}

fn criterion_9(rng: &mut StdRng) -> Outcome {
    let sigma = alpha("ab");
    let limits = Limits::default();
    let mut failures = Vec::new();
    let letter = |rng: &mut StdRng| ['a', 'b'][rng.gen_range(0..2)];
    let fmod = |rng: &mut StdRng| {
        let n = rng.gen_range(1..=4);
        PosBoolExpr::leaf(Generator::fmod(letter(rng), rng.gen_range(0..n), n))
    };
    let fcount = |rng: &mut StdRng| {
        if rng.gen_bool(0.2) {
            let g = if rng.gen_bool(0.5) { vec!['a'] } else { vec!['a', 'b'] };
            PosBoolExpr::leaf(Generator::GammaStar(g))
        } else {
            PosBoolExpr::leaf(Generator::fcount(letter(rng), rng.gen_range(0..=4)))
        }
    };
    let (mut groups, mut star_free) = (0, 0);
    for case in 0..50 {
        let e = random_expr(rng, 2, &fmod);
        let d = minimal(&DplUnion::from_generators(&sigma, &e, &limits).unwrap());
        if d.is_permutation() {
            groups += 1;
        } else {
            failures.push(format!("Fmod case {case} is not a permutation automaton"));
        }
        let e = random_expr(rng, 2, &fcount);
        let d = minimal(&DplUnion::from_generators(&sigma, &e, &limits).unwrap());
        if d.is_aperiodic() == Ok(true) {
            star_free += 1;
        } else {
            failures.push(format!("Fcount case {case} is not aperiodic"));
        }
    }
    let parity = minimal(&Generator::fmod('a', 1, 2).to_union(&sigma).unwrap());
    if parity.is_aperiodic() != Ok(false) {
        failures.push("F(a,1,2) passes is_aperiodic".into());
    }
    let m = three_state();
    if m.is_commutative() || !m.is_permutation() {
        failures.push("three-state machine misclassified".into());
    }
    outcome(
        failures.is_empty(),
        format!("{groups}/50 Fmod permutation, {star_free}/50 Fcount aperiodic, F(a,1,2) and three-state machine checked{}", render_failures(&failures)),
    )
}

fn example_item(n: usize) -> AperiodicUnion {
    let sigma = alpha("abc");
    let set = |s: &str| sigma.letter_set(s.chars()).unwrap();
    let t = |u: [Count; 3], g: LetterSet| PermShuffleTerm::new(ParikhVector::from_counts(u.to_vec()), g);
    let terms = match n {
        // ab ∪ c⧢{a,b}*
        1 => vec![t([1, 1, 0], set("")), t([0, 0, 1], set("ab"))],
        // ab⧢c* ∪ ac⧢{a,b}*
        2 => vec![t([1, 1, 0], set("c")), t([1, 0, 1], set("ab"))],
        // ab ∪ c⧢{a,b}* ∪ abb⧢{a,b}*
        3 => vec![t([1, 1, 0], set("")), t([0, 0, 1], set("ab")), t([1, 2, 0], set("ab"))],
        // ab ∪ c⧢{a,b}* ∪ abb⧢a* ∪ bb
        _ => vec![t([1, 1, 0], set("")), t([0, 0, 1], set("ab")), t([1, 2, 0], set("a")), t([0, 2, 0], set(""))],
    };
    AperiodicUnion::new(sigma, terms).unwrap()
}

fn criterion_10() -> Outcome {
    let limits = Limits::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 1..=4 {
        let u = example_item(n);
        let sigma = u.alphabet().clone();
        let out = u.iterated_shuffle(&limits).unwrap();
        let base = enumerate_predicate(&sigma, |v| u.member(v), 12).unwrap();
        let closed = closure_under_addition(&base, 12).unwrap();
        if n <= 2 {
            let growing = grows(&|w| closed.contains(&parikh(&sigma, w).unwrap()), &sigma);
            let ok = out.status() != "regular" && growing;
            pass &= ok;
            parts.push(format!("item {n}: {} with growing Nerode counts: {growing}", out.status()));
        } else {
            let ok = match out.representation() {
                Some(rep) => {
                    let base9 = enumerate_predicate(&sigma, |v| u.member(v), 9).unwrap();
                    let closed9 = closure_under_addition(&base9, 9).unwrap();
                    sets_equal(&dpl_enumerate(rep, 9).unwrap(), &closed9).unwrap().0
                }
                None => false,
            };
            pass &= ok;
            parts.push(format!("item {n}: {} matching the closure to length 9: {ok}", out.status()));
        }
    }
    outcome(pass, parts.join("; "))
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(SEED);
    type Run<'a> = Box<dyn FnMut() -> Outcome + 'a>;
    let mut failed = 0;
    {
        let rng = std::cell::RefCell::new(&mut rng);
        let criteria: Vec<(usize, Option<Duration>, Run)> = vec![
            (1, Some(Duration::from_secs(5)), Box::new(criterion_1)),
            (2, Some(Duration::from_secs(5)), Box::new(criterion_2)),
            (3, Some(Duration::from_secs(30)), Box::new(criterion_3)),
            (4, None, Box::new(criterion_4)),
            (5, Some(Duration::from_secs(120)), Box::new(|| criterion_5(&mut rng.borrow_mut()))),
            (6, None, Box::new(|| criterion_6(&mut rng.borrow_mut()))),
            (7, None, Box::new(|| criterion_7(&mut rng.borrow_mut()))),
            (8, None, Box::new(|| criterion_8(&mut rng.borrow_mut()))),
            (9, None, Box::new(|| criterion_9(&mut rng.borrow_mut()))),
            (10, None, Box::new(criterion_10)),
        ];
        for (n, limit, mut run) in criteria {
            let start = Instant::now();
            let out = run();
            let elapsed = start.elapsed();
            let in_time = limit.is_none_or(|l| elapsed <= l);
            let pass = out.pass && in_time;
            if !pass {
                failed += 1;
            }
            let budget = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
            println!(
                "criterion {n}: {} - {} [{:.2}s{budget}]",
                if pass { "PASS" } else { "FAIL" },
                out.detail,
                elapsed.as_secs_f64()
            );
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
