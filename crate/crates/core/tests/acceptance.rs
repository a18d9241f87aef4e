//! Acceptance run: one PASS / FAIL / SKIPPED line per criterion.
//!
//! Runs without the libtest harness so that every line reaches the output.
//! Exit status is nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};

use gassmann::arith::{dsets_isomorphic, ramification_diagnostics, splitting_pattern, LocalDatum};
use gassmann::equivalence::{
    class_preserving_bijection, equivalent, mark, mark_by_conjugation, partition_subgroup_classes,
    subgroup_class_representatives, subgroup_classes_of_index, Relation, Triple,
};
use gassmann::group::{coset_action, normal_core, transporter};
use gassmann::homdet::{
    default_assignments, det_at, double_cosets, find_variable_mappings, primes_dividing_d, sample_gcd,
    unimodularity_certificate, verify_factor_product, FactorList, ParametricHomMatrix,
};
use gassmann::linear::{
    build_linear_group, classes_moved_by_outer, classify_prime_to_p_subgroups, is_quadratic_residue,
    verify_solvable_family, LinearKind,
};
use gassmann::subgroups::{
    all_subgroups, class_subgroups, find_isomorphism, is_perfect, p_statistics, prime_factors, SubgroupClass,
};
use gassmann::{fixtures, EnumeratedGroup, GroupSpec, SubgroupSet};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn load(name: &str) -> Result<EnumeratedGroup, String> {
    ok(EnumeratedGroup::from_spec(ok(fixtures::group(name))?))
}

fn sub(g: &EnumeratedGroup, name: &str) -> Result<SubgroupSet, String> {
    ok(g.subgroup_from_spec(&ok(fixtures::group(name))?))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.1?}, limit {limit:?}");
    Ok(t)
}

// ---- 1 ------------------------------------------------------------------

fn order_1440_pair() -> Check {
    let start = Instant::now();
    let g = load("g1440")?;
    let h1 = sub(&g, "g1440_h1")?;
    let h2 = sub(&g, "g1440_h2")?;
    ensure!(g.order() == 1440, "|G| = {}", g.order());
    ensure!(h1.order() == 12 && h2.order() == 12, "orders {} {}", h1.order(), h2.order());
    ensure!(transporter(&g, &h1, &h2).is_none(), "H1 and H2 are conjugate");
    let t = Triple::InGroup { g: &g, h1: &h1, h2: &h2 };
    ensure!(ok(equivalent(&t, Relation::Rational))?.verdict, "not rational");
    ensure!(ok(equivalent(&t, Relation::LocalIntegral))?.verdict, "not locally integral");
    let solv = ok(equivalent(&t, Relation::Solvable))?;
    ensure!(!solv.verdict, "solvably equivalent");
    let d = solv.discrepancy.ok_or("no discrepancy")?;
    ensure!(d.chi1 == Some(4) && d.chi2 == Some(0), "discrepancy marks {:?} {:?}", d.chi1, d.chi2);
    // K = H1 itself
    let k = ok(g.subgroup_from_perms(
        &d.subgroup_gens
            .iter()
            .map(|s| gassmann::Permutation::parse(s, 9))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?,
    ))?;
    ensure!(k == h1, "discrepancy subgroup is not H1");
    let (a, b, c, e) = (mark(&g, &h1, &h1), mark(&g, &h2, &h1), mark(&g, &h1, &h2), mark(&g, &h2, &h2));
    ensure!((a, b, c, e) == (4, 0, 0, 4), "marks {a} {b} {c} {e}");
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("|G| = 1440, |H| = 12, chi 4 vs 0 ({t:.2?})"))
}

// ---- 2 ------------------------------------------------------------------

/// Splitting computed directly on element sets: the primes above p are the
/// double cosets H g D, with f = |D-orbit| / |I-orbit| of the coset Hg.
fn splitting_oracle(g: &EnumeratedGroup, h: &SubgroupSet, d: &SubgroupSet, i: &SubgroupSet) -> Vec<(u32, u32)> {
    let coset = |x: usize| -> BTreeSet<usize> { h.members().map(|y| g.mul(y, x)).collect() };
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen.contains(&coset(x)) {
            continue;
        }
        let orbit: BTreeSet<BTreeSet<usize>> = d.members().map(|y| coset(g.mul(x, y))).collect();
        let iorbit: BTreeSet<BTreeSet<usize>> = i.members().map(|y| coset(g.mul(x, y))).collect();
        let (e, f) = (iorbit.len() as u32, (orbit.len() / iorbit.len()) as u32);
        out.push((e, f));
        seen.extend(orbit);
    }
    out.sort_unstable();
    out
}

fn expand(counts: &[(u32, u32, usize)]) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = counts
        .iter()
        .flat_map(|&(e, f, n)| std::iter::repeat_n((e, f), n))
        .collect();
    v.sort_unstable();
    v
}

fn splitting_1440() -> Check {
    let start = Instant::now();
    let g = load("g1440")?;
    let h1 = sub(&g, "g1440_h1")?;
    let h2 = sub(&g, "g1440_h2")?;
    let i = g.intersection(&h1, &h2);
    let datum = ok(LocalDatum::new(&g, h1.clone(), i.clone()))?;
    let p1 = ok(splitting_pattern(&g, &h1, &datum))?;
    let p2 = ok(splitting_pattern(&g, &h2, &datum))?;
    // the two displayed factorizations of 2, as (e, f, count)
    let want1 = [(1, 1, 4), (6, 1, 8), (2, 2, 2), (3, 2, 2), (6, 2, 4)];
    let want2 = [(2, 1, 4), (3, 1, 4), (6, 1, 4), (1, 2, 2), (6, 2, 6)];
    ensure!(expand(&p1.counts()) == expand(&want1), "K1 pattern {p1}");
    ensure!(expand(&p2.counts()) == expand(&want2), "K2 pattern {p2}");
    ensure!(splitting_oracle(&g, &h1, &h1, &i) == expand(&want1), "oracle disagrees on K1");
    ensure!(splitting_oracle(&g, &h2, &h1, &i) == expand(&want2), "oracle disagrees on K2");

    let diag = ramification_diagnostics(&p1, &p2);
    ensure!(diag.sum_e == (86, 82), "sum e {:?}", diag.sum_e);
    // product of the displayed exponents
    let prod = |w: &[(u32, u32, usize)]| -> BigUint {
        w.iter().map(|&(e, _, n)| BigUint::from(e).pow(n as u32)).product()
    };
    let six14 = BigUint::from(6u32).pow(14);
    ensure!(prod(&want1) == six14 && prod(&want2) == six14, "displayed products are not 6^14");
    ensure!(diag.prod_e == (six14.clone(), six14), "prod e {:?}", diag.prod_e);
    ensure!(!diag.multiset_equal, "multisets equal");
    let cmp = dsets_isomorphic(&g, &h1, &h2, &h1);
    ensure!(!cmp.isomorphic && cmp.fixed_points == (4, 0), "D-sets {:?}", cmp.fixed_points);
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("sum e 86 vs 82, prod e 6^14 both ({t:.2?})"))
}

// ---- 3 ------------------------------------------------------------------

/// Double coset sizes from element sets, in right cosets of H2.
fn double_coset_oracle(g: &EnumeratedGroup, h1: &SubgroupSet, h2: &SubgroupSet) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut sizes = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut n = 0;
        for a in h1.members() {
            for b in h2.members() {
                let y = g.mul(g.mul(a, x), b);
                if !seen[y] {
                    seen[y] = true;
                    n += 1;
                }
            }
        }
        sizes.push(n / h2.order());
    }
    sizes.sort_unstable();
    sizes
}

fn order_384_determinant() -> Check {
    let start = Instant::now();
    let g = load("g384")?;
    ensure!(g.order() == 384, "|G| = {}", g.order());
    let classes = ok(subgroup_classes_of_index(&g, 32, true))?;
    ensure!(classes.len() == 2, "{} trivial-core classes of index 32", classes.len());
    let part = ok(partition_subgroup_classes(&g, &classes, Relation::LocalIntegral))?;
    let blocks: Vec<_> = part.nontrivial().collect();
    ensure!(blocks.len() == 1 && blocks[0].len() == 2, "blocks {:?}", part.blocks);

    let h1 = sub(&g, "g384_h1")?;
    let h2 = sub(&g, "g384_h2")?;
    ensure!(
        classes.iter().any(|c| transporter(&g, c, &h1).is_some())
            && classes.iter().any(|c| transporter(&g, c, &h2).is_some()),
        "fixture subgroups are not the two classes"
    );
    let dc = ok(double_cosets(&g, &h1, &h2))?;
    let sizes: Vec<usize> = dc.cells.iter().map(|c| c.size).collect();
    ensure!(sizes == [2, 2, 2, 2, 3, 3, 6, 12], "cells {sizes:?}");
    ensure!(double_coset_oracle(&g, &h1, &h2) == sizes, "oracle cells differ");

    let printed = ok(ParametricHomMatrix::parse(ok(fixtures::get("g384_printed.pat"))?.text))?;
    let d1 = det_at(&printed, &[1, 1, -1, 0, 0, 0, 0, 0]);
    let d2 = det_at(&printed, &[0, 0, 0, 0, 1, 0, 0, 0]);
    ensure!(d1 == BigInt::from(2).pow(32), "first printed det {d1}");
    ensure!(d2 == BigInt::from(3).pow(12), "second printed det {d2}");
    // the printed matrix is our pattern up to relabelling rows, columns and variables
    ensure!(printed.cell_sizes().iter().copied().collect::<BTreeSet<_>>() == sizes.iter().copied().collect(), "printed cell sizes");

    let samples = default_assignments(dc.pattern.nvars(), 4, 50, 1);
    let gcd = sample_gcd(&dc.pattern, &samples);
    ensure!(gcd == BigInt::from(1), "sample gcd {gcd}");
    ensure!(ok(primes_dividing_d(&g, &h1, &h2))?.is_empty(), "d has prime divisors");

    let factors = ok(FactorList::parse(ok(fixtures::get("g384_factors.txt"))?.text))?;
    ensure!(factors.factors.len() == 7, "{} factors", factors.factors.len());
    let check = ok(verify_factor_product(&dc.pattern, &factors, 20, 2024))?;
    ensure!(check.holds && check.trials == 20, "factor product fails: {:?}", check.mismatch);
    let maps = ok(find_variable_mappings(&printed, &factors, 5, 3))?;
    ensure!(!maps.is_empty(), "factors match no labelling of the printed matrix");
    let cert = ok(unimodularity_certificate(&factors, Some(&dc.pattern)))?;
    ensure!(cert.is_nonexistent(), "certificate {:?}", cert.status);
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("cells {sizes:?}, det 2^32 and 3^12, certified ({t:.2?})"))
}

// ---- 4 ------------------------------------------------------------------

fn s21_pair() -> Check {
    let start = Instant::now();
    let h1 = load("s21_h1")?;
    let h2 = load("s21_h2")?;
    let class = SubgroupClass::PCyclicAnyPrime;
    for h in [&h1, &h2] {
        let n = ok(class_subgroups(h, &h.whole(), &class))?.len();
        ensure!(n == 41, "{n} p-cyclic subgroups");
        let iso = ok(p_statistics(h, &h.whole(), &class))?;
        let nontrivial = iso.iter().filter(|c| c.fingerprint.order > 1).count();
        ensure!(nontrivial == 11, "{nontrivial} nontrivial isomorphism classes ({} with trivial)", iso.len());
    }
    let rep = ok(equivalent(&Triple::InSymmetric { h1: &h1, h2: &h2 }, Relation::LocalIntegral))?;
    ensure!(rep.verdict, "no class-preserving bijection");
    ensure!(rep.ambient_classes == 15, "{} S21-classes", rep.ambient_classes);
    ensure!(rep.subgroup_counts == (41, 41), "counts {:?}", rep.subgroup_counts);
    ensure!(find_isomorphism(&h1, &h1.whole(), &h2, &h2.whole()).is_none(), "H1 and H2 isomorphic");
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("41 p-cyclic, 15 classes, 11 nontrivial types (12 with trivial), not isomorphic ({t:.2?})"))
}

// ---- 5 ------------------------------------------------------------------

fn sl2_29() -> Check {
    let start = Instant::now();
    let p = 29;
    let sl2 = ok(build_linear_group(LinearKind::SL2, p))?;
    ensure!(sl2.group.order() == 24360, "|SL2| = {}", sl2.group.order());
    let r = (2..p).find(|&r| !is_quadratic_residue(r, p)).unwrap();
    let moved = ok(classes_moved_by_outer(&sl2, r))?;
    ensure!(moved.len() == 4, "{} classes moved", moved.len());
    let reps = sl2.group.conjugacy_classes().representatives();
    for &c in &moved {
        let m = ok(sl2.matrix_of(reps[c]))?;
        let unipotent = (m.trace() == 2 || m.trace() == p - 2) && m != gassmann::linear::Mat2::identity(p) && m != gassmann::linear::Mat2::identity(p).neg();
        ensure!(unipotent, "moved class of {m} is not (plus or minus) unipotent");
    }
    drop(sl2);
    let res = ok(verify_solvable_family(p, 0))?;
    ensure!(res.h1_order == 120, "|H1| = {}", res.h1_order);
    ensure!(res.sl2.verdict && res.psl2.verdict, "solvable: SL2 {} PSL2 {}", res.sl2.verdict, res.psl2.verdict);
    ensure!(LinearKind::PSL2.order(p) == 12180, "|PSL2|");
    let psl2 = ok(build_linear_group(LinearKind::PSL2, p))?;
    ensure!(psl2.group.order() == 12180, "|PSL2| = {}", psl2.group.order());
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!("24360 / 12180, 4 unipotent classes moved, solvable in both ({t:.2?})"))
}

// ---- 6 ------------------------------------------------------------------

fn classification() -> Check {
    let start = Instant::now();
    let mut notes = Vec::new();
    for p in [7u64, 11] {
        let h = ok(build_linear_group(LinearKind::SL2, p))?;
        let c = ok(classify_prime_to_p_subgroups(&h, 13))?;
        ensure!(c.agrees(), "p = {p}:\n{}", c.to_text());
        notes.push(format!("p={p}: 2S4 {} 2A5 {}", c.count("2S4"), c.count("2A5")));
        let (s4, a5) = if p == 7 { (2, 0) } else { (0, 2) };
        ensure!(c.count("2S4") == s4 && c.count("2A5") == a5, "{}", notes.last().unwrap());
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("{} ({t:.2?})", notes.join(", ")))
}

// ---- 7 ------------------------------------------------------------------

fn t16_1654_file() -> Option<PathBuf> {
    let env = std::env::var_os("GASSMANN_16T1654").map(PathBuf::from);
    let bundled = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/16T1654.grp");
    env.into_iter().chain([bundled]).find(|p| p.is_file())
}

fn factor_only_5760() -> Result<FactorList, String> {
    let factors = ok(FactorList::parse(ok(fixtures::get("g5760_factors.txt"))?.text))?;
    ensure!(factors.linear_count() == 5, "{} linear factors", factors.linear_count());
    let cert = ok(unimodularity_certificate(&factors, None))?;
    ensure!(cert.systems.len() == 32, "{} systems", cert.systems.len());
    ensure!(cert.is_nonexistent(), "certificate {:?}", cert.status);
    Ok(factors)
}

enum Outcome {
    Pass(String),
    Skipped(String),
}

fn order_5760() -> Result<Outcome, String> {
    let start = Instant::now();
    let factors = factor_only_5760()?;
    let Some(path) = t16_1654_file() else {
        return Ok(Outcome::Skipped(
            "no 16T1654 generator file; factor-only certificate: 32 systems, nonexistent".into(),
        ));
    };
    let spec = ok(GroupSpec::parse(&ok(std::fs::read_to_string(&path))?))?;
    let g = ok(EnumeratedGroup::from_spec(spec))?;
    ensure!(g.order() == 5760, "|G| = {}", g.order());
    let a5: Vec<SubgroupSet> = ok(subgroup_classes_of_index(&g, 96, false))?
        .into_iter()
        .filter(|s| is_perfect(&g, s))
        .collect();
    ensure!(a5.len() == 5, "{} classes of A5 subgroups", a5.len());
    let part = ok(partition_subgroup_classes(&g, &a5, Relation::Solvable))?;
    let blocks: Vec<_> = part.nontrivial().collect();
    ensure!(blocks.len() == 1 && blocks[0].len() == 2, "blocks {:?}", part.blocks);
    let (h1, h2) = (&a5[blocks[0][0]], &a5[blocks[0][1]]);
    // every proper subgroup of H1 is conjugate to one of H2, with multiplicity
    let proper = ok(class_preserving_bijection(
        &Triple::InGroup { g: &g, h1, h2 },
        &SubgroupClass::Solvable,
        Relation::Solvable,
    ))?;
    ensure!(proper.verdict, "proper subgroups differ");
    let dc = ok(double_cosets(&g, h1, h2))?;
    let sizes: Vec<usize> = dc.cells.iter().map(|c| c.size).collect();
    ensure!(sizes == [5, 6, 10, 15, 60], "cells {sizes:?}");
    let maps = ok(find_variable_mappings(&dc.pattern, &factors, 20, 5))?;
    ensure!(!maps.is_empty(), "the five factors do not match the pattern");
    let cert = ok(unimodularity_certificate(&factors.with_mapping(maps[0].mapping.clone()), Some(&dc.pattern)))?;
    ensure!(cert.is_nonexistent() && cert.systems.len() == 32, "certificate {:?}", cert.status);
    Ok(Outcome::Pass(format!("5 A5 classes, one pair, cells {sizes:?} ({:.2?})", start.elapsed())))
}

// ---- 8 ------------------------------------------------------------------

fn sym(n: usize) -> Result<EnumeratedGroup, String> {
    let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    ok(EnumeratedGroup::from_spec(ok(GroupSpec::from_cycles(n, &[&cycle, "(1 2)"]))?))
}

/// Number of subgroups of `h` conjugate in `g` to `k`.
fn conjugates_inside(g: &EnumeratedGroup, k: &SubgroupSet, h: &SubgroupSet) -> usize {
    let mut seen = BTreeSet::new();
    for x in 0..g.order() {
        let c = g.conjugate_subgroup(k, x);
        if c.is_subgroup_of(h) {
            seen.insert(c.members().collect::<Vec<_>>());
        }
    }
    seen.len()
}

fn property_suites() -> Check {
    let start = Instant::now();
    let classes = [
        (SubgroupClass::Cyclic, Relation::Rational),
        (SubgroupClass::PCyclic(2), Relation::PLocal(2)),
        (SubgroupClass::PCyclic(3), Relation::PLocal(3)),
        (SubgroupClass::PCyclicAnyPrime, Relation::LocalIntegral),
        (SubgroupClass::Solvable, Relation::Solvable),
    ];
    let mut pairs = 0;
    for n in [4, 5] {
        let g = sym(n)?;
        let reps = ok(subgroup_class_representatives(&g, 1000))?;
        // every subgroup of S4, class representatives of S5
        let pool = if n == 4 { ok(all_subgroups(&g, &g.whole(), None, 1000))? } else { reps.clone() };
        for (i, h1) in pool.iter().enumerate() {
            for h2 in &pool[i..] {
                if h1.order() != h2.order() {
                    continue;
                }
                pairs += 1;
                let t = Triple::InGroup { g: &g, h1, h2 };
                let mut verdicts = Vec::new();
                for (class, rel) in &classes {
                    let rep = ok(class_preserving_bijection(&t, class, *rel))?;
                    // equal counts in every class <=> equal marks
                    let members: Vec<&SubgroupSet> = reps.iter().filter(|k| class.contains(&g, k)).collect();
                    let counts = members
                        .iter()
                        .all(|k| conjugates_inside(&g, k, h1) == conjugates_inside(&g, k, h2));
                    let marks = members
                        .iter()
                        .all(|k| mark_by_conjugation(&g, h1, k) == mark_by_conjugation(&g, h2, k));
                    ensure!(
                        counts == marks && marks == rep.verdict && rep.marks_agree == Some(marks),
                        "S{n}: {class} counts {counts} marks {marks} verdict {}",
                        rep.verdict
                    );
                    verdicts.push(rep.verdict);
                }
                // class intersection counts <=> cyclic marks <=> cyclic bijection
                let dist = g.class_distribution(h1) == g.class_distribution(h2);
                ensure!(dist == verdicts[0], "S{n}: class distribution vs cyclic bijection");
                ensure!(ok(equivalent(&t, Relation::Rational))?.verdict == dist, "rational");
                // hierarchy
                let li = ok(equivalent(&t, Relation::LocalIntegral))?.verdict;
                let all_p = prime_factors(h1.order() as u64)
                    .into_iter()
                    .all(|p| equivalent(&t, Relation::PLocal(p)).map(|r| r.verdict).unwrap_or(false));
                ensure!(li == (dist && all_p), "S{n}: local integral vs per-prime");
                ensure!(!verdicts[4] || li, "S{n}: solvable without local integral");
                ensure!(!li || dist, "S{n}: local integral without rational");
            }
        }
        lagrange_and_core(&g, &reps)?;
    }

    // hierarchy on the fixture pairs
    for (gname, a, b) in [("g1440", "g1440_h1", "g1440_h2"), ("g384", "g384_h1", "g384_h2")] {
        let g = load(gname)?;
        let (h1, h2) = (sub(&g, a)?, sub(&g, b)?);
        let t = Triple::InGroup { g: &g, h1: &h1, h2: &h2 };
        let v: Vec<bool> = [Relation::Rational, Relation::LocalIntegral, Relation::Solvable]
            .into_iter()
            .map(|r| equivalent(&t, r).map(|x| x.verdict))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!((!v[2] || v[1]) && (!v[1] || v[0]), "{gname}: hierarchy broken {v:?}");
        let cyclic: Vec<SubgroupSet> = (0..g.order()).step_by(7).map(|x| g.subgroup(&[x])).collect();
        lagrange_and_core(&g, &[vec![h1, h2], cyclic].concat())?;
    }
    let (s1, s2) = (load("s21_h1")?, load("s21_h2")?);
    let t = Triple::InSymmetric { h1: &s1, h2: &s2 };
    let v: Vec<bool> = [Relation::Rational, Relation::LocalIntegral, Relation::Solvable]
        .into_iter()
        .map(|r| equivalent(&t, r).map(|x| x.verdict))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!((!v[2] || v[1]) && (!v[1] || v[0]), "S21: hierarchy broken {v:?}");

    Ok(format!("{pairs} subgroup pairs in S4 and S5 ({:.2?})", start.elapsed()))
}

fn lagrange_and_core(g: &EnumeratedGroup, subs: &[SubgroupSet]) -> Result<(), String> {
    for h in subs {
        let action = coset_action(g, h);
        ensure!(action.degree() * h.order() == g.order(), "Lagrange fails for order {}", h.order());
        let core = normal_core(g, h);
        ensure!(core.is_subgroup_of(h) && g.is_normal(&core), "core is not a normal subgroup of H");
        ensure!(action.kernel(g) == core, "kernel of the coset action differs from the core");
        let x = g.order() / 2;
        ensure!(transporter(g, h, &g.conjugate_subgroup(h, x)).is_some(), "conjugate not found");
    }
    Ok(())
}

// -------------------------------------------------------------------------

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome, String>>)> = vec![
        ("order 1440 pair", Box::new(|| order_1440_pair().map(Outcome::Pass))),
        ("order 1440 splitting", Box::new(|| splitting_1440().map(Outcome::Pass))),
        ("order 384 determinant", Box::new(|| order_384_determinant().map(Outcome::Pass))),
        ("S21 pair", Box::new(|| s21_pair().map(Outcome::Pass))),
        ("SL2(F_29) family", Box::new(|| sl2_29().map(Outcome::Pass))),
        ("SL2 classification", Box::new(|| classification().map(Outcome::Pass))),
        ("order 5760 pair", Box::new(order_5760)),
        ("property suites", Box::new(|| property_suites().map(Outcome::Pass))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(Outcome::Pass(note)) => println!("criterion {}: PASS  {name}: {note}", i + 1),
            Ok(Outcome::Skipped(note)) => println!("criterion {}: SKIPPED  {name}: {note}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
