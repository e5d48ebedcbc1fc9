//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use acyclic_lefschetz::io::selfcheck::{
    collapse_probability, run_instances, SelfcheckConfig, SD_BETTI_MAX_OBJECTS,
};
use acyclic_lefschetz::io::{generate_random, parse_category, parse_functor, ReportDoc};
use acyclic_lefschetz::{layered_lefschetz, Functor, MorphismId};

const BIN: &str = env!("CARGO_BIN_EXE_lefschetz");

const PARALLEL_PAIR: &str = "objects: 2\nmor alpha: 0 -> 1\nmor beta: 0 -> 1\n";
const PARALLEL_PAIR_ID: &str = "obj 0 -> 0\nobj 1 -> 1\nmor alpha -> alpha\nmor beta -> beta\n";

const D: &str = "\
objects: 4
mor a1: 0 -> 1
mor a2: 0 -> 1
mor c: 2 -> 3
mor e: 2 -> 1
mor g: 0 -> 3
";
const D_ID: &str = "\
obj 0 -> 0
obj 1 -> 1
obj 2 -> 2
obj 3 -> 3
mor a1 -> a1
mor a2 -> a2
mor c -> c
mor e -> e
mor g -> g
";

const FIXED_ARROWS: &str = "\
# x=0 y=1 z=2 w=3
objects: 4
mor beta: 0 -> 1
mor gamma: 1 -> 2
mor gamma_beta: 0 -> 2
mor mu: 3 -> 2
mor nu: 3 -> 2
comp gamma . beta = gamma_beta
";
const FIXED_ARROWS_F: &str = "\
obj 0 -> 0
obj 1 -> 1
obj 2 -> 2
obj 3 -> 3
mor beta -> beta
mor gamma -> gamma
mor gamma_beta -> gamma_beta
mor mu -> nu
mor nu -> mu
";

const CORPUS_SEED: u64 = 20_240_611;
const CORPUS_SIZE: usize = 500;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run_bin(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn report_of(output: &Output) -> Result<ReportDoc, String> {
    ReportDoc::from_structured(&String::from_utf8_lossy(&output.stdout)).map_err(|e| e.to_string())
}

fn write_fixture(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn criterion_1(dir: &Path) -> Outcome {
    let out = run_bin(
        &["lefschetz", "C.cat", "idC.fun", "--format", "structured"],
        dir,
    );
    let r = match report_of(&out) {
        Ok(doc) => doc.lefschetz.unwrap(),
        Err(e) => return outcome(false, format!("unreadable report: {e}")),
    };
    let counts_ok =
        common::chain_counts(&parse_category(PARALLEL_PAIR).unwrap().category) == [2, 2];
    outcome(
        out.status.success() && r.r_lefschetz == 1 && r.lefschetz == 0 && counts_ok,
        format!("L_R={}, L={}", r.r_lefschetz, r.lefschetz),
    )
}

fn criterion_2(dir: &Path) -> Outcome {
    let out = run_bin(
        &["check", "D.cat", "idD.fun", "--format", "structured"],
        dir,
    );
    let r = match report_of(&out) {
        Ok(doc) => doc.lefschetz.unwrap(),
        Err(e) => return outcome(false, format!("unreadable report: {e}")),
    };
    let c = parse_category(D).unwrap().category;
    let relations = {
        let mut v: Vec<_> = c.morphism_ids().map(|m| (c.src(m), c.tgt(m))).collect();
        v.sort();
        v.dedup();
        v.len()
    };
    let shape_ok =
        c.n_objects() == 4 && c.n_morphisms() == 5 && c.composites().is_empty() && relations == 4;
    outcome(
        out.status.success()
            && shape_ok
            && r.r_lefschetz == 0
            && r.lefschetz == -1
            && !r.fixed_objects.is_empty(),
        format!(
            "L_R={}, L={}, exit {}",
            r.r_lefschetz,
            r.lefschetz,
            out.status.code().unwrap_or(-1)
        ),
    )
}

fn criterion_3(dir: &Path) -> Outcome {
    let doc = parse_category(FIXED_ARROWS).unwrap();
    let f = parse_functor(FIXED_ARROWS_F, &doc, &doc).unwrap();
    // brute force: fixed cells above dimension 0 and the face relations among them
    let fixed_cells: Vec<Vec<MorphismId>> =
        (1..=3).flat_map(|k| common::fixed_chains(&f, k)).collect();
    let relations = fixed_cells
        .iter()
        .map(|top| {
            let closure = common::closure(&doc.category, &common::Cell::C(top.clone()));
            fixed_cells
                .iter()
                .filter(|&x| x != top && closure.contains(&common::Cell::C(x.clone())))
                .count()
        })
        .sum::<usize>();
    let oracle = common::layered_lefschetz_strict(&f, 0);
    let fixed_arrows_ok = [doc.lookup("beta"), doc.lookup("gamma_beta")]
        .iter()
        .all(|m| common::fixed_chains(&f, 1).contains(&vec![m.unwrap()]));
    let brute_ok =
        f.is_strict() && fixed_cells.len() == 4 && relations == 3 && oracle == 1 && fixed_arrows_ok;

    let library = layered_lefschetz(&f, 0).unwrap_or(i64::MIN);
    let out = run_bin(
        &[
            "check",
            "F.cat",
            "F.fun",
            "--cutoff",
            "0",
            "--format",
            "structured",
        ],
        dir,
    );
    let cli = report_of(&out).ok().and_then(|d| d.fixed_morphism);
    let cli_ok = out.status.success()
        && cli.as_ref().is_some_and(|r| {
            r.layered_lefschetz == 1 && r.fixed_chains.iter().all(|w| w.total > 0)
        });
    outcome(
        brute_ok && library == 1 && cli_ok,
        format!(
            "layered L = {library} (brute force {} - {} = {oracle}), fixed 1-chains via check: {}",
            fixed_cells.len(),
            relations,
            cli.map_or(0, |r| r.fixed_chains[0].total)
        ),
    )
}

struct Corpus {
    instances: Vec<(Functor, acyclic_lefschetz::io::selfcheck::InstanceOutcome)>,
    elapsed: Duration,
}

fn corpus() -> Corpus {
    let start = Instant::now();
    let config = SelfcheckConfig::new(CORPUS_SEED, CORPUS_SIZE);
    let outcomes = run_instances(&config).expect("corpus generates");
    let instances = outcomes
        .into_iter()
        .map(|o| {
            let (_, f) = generate_random(
                o.seed,
                config.max_objects,
                config.max_morphisms,
                collapse_probability(o.index),
            )
            .unwrap();
            (f, o)
        })
        .collect();
    Corpus {
        instances,
        elapsed: start.elapsed(),
    }
}

/// Counts (evaluated, failed) over checks whose name satisfies `select`.
fn tally(corpus: &Corpus, select: impl Fn(&str) -> bool) -> (usize, usize) {
    let mut evaluated = 0;
    let mut failed = 0;
    for (_, o) in &corpus.instances {
        if o.error.is_some() {
            failed += 1;
        }
        for c in o.checks.iter().filter(|c| select(&c.name)) {
            evaluated += 1;
            failed += usize::from(!c.holds);
        }
    }
    (evaluated, failed)
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    const NAMES: [&str; 5] = [
        "L(F) = chi(C^F)",
        "L_R(F) = chi(R(C)^R(F))",
        "L(F) = L(sd F)",
        "sd(C)^sd(F) = sd(C^F)",
        "L(F) != 0 or L_R(F) != 0 implies a fixed object",
    ];
    let (evaluated, mut failed) = tally(corpus, |n| NAMES.contains(&n));
    for (f, o) in &corpus.instances {
        let (l, lr) = (
            o.lefschetz.unwrap_or(i64::MIN),
            o.r_lefschetz.unwrap_or(i64::MIN),
        );
        let brute_fixed = !common::fixed_objects(f).is_empty();
        failed += usize::from(l != common::chi_fixed(f));
        failed += usize::from(lr != common::chi_fixed_reflection(f));
        failed += usize::from((l != 0 || lr != 0) && !brute_fixed);
    }
    let collapsed = corpus
        .instances
        .iter()
        .filter(|(f, _)| !f.is_strict())
        .count();
    let small = corpus
        .instances
        .iter()
        .all(|(f, _)| f.source().n_objects() <= 6 && f.source().n_morphisms() <= 14);
    outcome(
        failed == 0 && small && corpus.instances.len() >= 500 && corpus.elapsed < Duration::from_secs(300),
        format!(
            "{} instances ({} non-strict), {evaluated} identity checks plus brute force, {failed} violations, corpus {:.1} s",
            corpus.instances.len(),
            collapsed,
            corpus.elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let (evaluated, mut failed) = tally(corpus, |n| {
        n.ends_with("implies fixed k-chains for 1 <= k <= cutoff+1")
    });
    let mut nonzero = 0;
    for (f, o) in &corpus.instances {
        for (cutoff, &l) in o.layered_lefschetz.iter().enumerate() {
            if l != 0 {
                nonzero += 1;
                failed +=
                    usize::from((1..=cutoff + 1).any(|k| common::fixed_chains(f, k).is_empty()));
            }
        }
    }
    outcome(
        failed == 0 && evaluated == 2 * corpus.instances.len(),
        format!("{evaluated} (instance, cutoff) pairs, {nonzero} with nonzero layered L, {failed} violations"),
    )
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let (evaluated, failed) = tally(corpus, |n| {
        n.contains("chain level = homology level") || n.contains("cells = homology")
    });
    outcome(
        failed == 0,
        format!("{evaluated} comparisons, {failed} violations"),
    )
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let eligible = corpus
        .instances
        .iter()
        .filter(|(f, _)| f.source().n_objects() <= SD_BETTI_MAX_OBJECTS)
        .count();
    let (evaluated, failed) = tally(corpus, |n| n == "betti(sd C) = betti(C)");
    outcome(
        failed == 0 && evaluated == eligible && eligible > 0,
        format!("{evaluated} instances with at most {SD_BETTI_MAX_OBJECTS} objects, {failed} violations"),
    )
}

fn criterion_8(dir: &Path) -> Outcome {
    let gen_args = |prefix: &str| {
        vec![
            "gen".to_string(),
            "--seed".into(),
            "42".into(),
            "--objects".into(),
            "6".into(),
            "--morphisms".into(),
            "14".into(),
            "--collapse".into(),
            "0.2".into(),
            "--out".into(),
            prefix.into(),
        ]
    };
    let mut files = Vec::new();
    for prefix in ["gen_a", "gen_b"] {
        let args = gen_args(prefix);
        let out = run_bin(&args.iter().map(String::as_str).collect::<Vec<_>>(), dir);
        if !out.status.success() {
            return outcome(false, "gen failed");
        }
        let read =
            |ext: &str| std::fs::read(dir.join(format!("{prefix}.{ext}"))).unwrap_or_default();
        files.push((read("cat"), read("fun")));
    }
    let gen_same = files[0] == files[1] && !files[0].0.is_empty();

    let digest = || {
        let out = run_bin(&["selfcheck", "--seed", "7", "--count", "50"], dir);
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        let line = text
            .lines()
            .find_map(|l| l.strip_prefix("report digest: ").map(str::to_string));
        (out.status.success(), line)
    };
    let (ok_a, a) = digest();
    let (ok_b, b) = digest();
    let digest_same = ok_a && ok_b && a.is_some() && a == b;
    outcome(
        gen_same && digest_same,
        format!(
            "gen files identical: {gen_same}, selfcheck digest {}",
            a.as_deref().map_or("missing", |d| &d[..16])
        ),
    )
}

fn report(n: usize, title: &str, start: Instant, limit: Option<Duration>, o: Outcome) -> bool {
    let elapsed = start.elapsed();
    let within = limit.is_none_or(|l| elapsed < l);
    let pass = o.pass && within;
    println!(
        "{} [{n}] {title}: {} ({:.3} s{})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        if within { "" } else { ", over the time limit" }
    );
    pass
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write_fixture(p, "C.cat", PARALLEL_PAIR);
    write_fixture(p, "idC.fun", PARALLEL_PAIR_ID);
    write_fixture(p, "D.cat", D);
    write_fixture(p, "idD.fun", D_ID);
    write_fixture(p, "F.cat", FIXED_ARROWS);
    write_fixture(p, "F.fun", FIXED_ARROWS_F);

    let second = Some(Duration::from_secs(1));
    let mut all = true;
    let t = Instant::now();
    all &= report(
        1,
        "parallel pair, identity functor",
        t,
        second,
        criterion_1(p),
    );
    let t = Instant::now();
    all &= report(
        2,
        "four objects, five morphisms, identity functor",
        t,
        second,
        criterion_2(p),
    );
    let t = Instant::now();
    all &= report(
        3,
        "fixed arrows under a strict endofunctor, cutoff 0",
        t,
        second,
        criterion_3(p),
    );

    let t = Instant::now();
    let corpus = corpus();
    all &= report(
        4,
        "fixed-object identities on the random corpus",
        t,
        Some(Duration::from_secs(300)),
        criterion_4(&corpus),
    );
    let t = Instant::now();
    all &= report(
        5,
        "fixed-morphism implication at cutoffs 0 and 1",
        t,
        None,
        criterion_5(&corpus),
    );
    let t = Instant::now();
    all &= report(
        6,
        "chain level and homology level agree",
        t,
        None,
        criterion_6(&corpus),
    );
    let t = Instant::now();
    all &= report(
        7,
        "subdivision preserves Betti numbers",
        t,
        None,
        criterion_7(&corpus),
    );
    let t = Instant::now();
    all &= report(
        8,
        "determinism of gen and selfcheck",
        t,
        None,
        criterion_8(p),
    );

    if !all {
        std::process::exit(1);
    }
}
