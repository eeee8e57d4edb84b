//! The acceptance suite: one line per criterion, exact comparisons only.
//! Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cgw_core::kernel::{self, action};
use cgw_core::rep::{verify_relations, verify_relations_at_points};
use cgw_core::specht::{self, partitions};
use cgw_core::subspaces::{self, critical_sets, KernelVector};
use cgw_core::{LValue, PointSampler, RationalFunction};

const SEED: u64 = 0;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn lv(s: &str) -> LValue {
    s.parse().expect("valid l value")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Critical values written out independently of the library.
fn expected_critical(n: i32) -> BTreeSet<LValue> {
    [
        LValue::r_pow(7 - 4 * n),
        LValue::r_pow(7 - 2 * n),
        LValue::signed(-1, 5 - 2 * n),
        LValue::r_pow(3),
        LValue::r_pow(-1),
        LValue::signed(-1, 3),
    ]
    .into_iter()
    .collect()
}

fn relations() -> Outcome {
    let mut total = 0;
    for n in 4..=6 {
        let rep = verify_relations(n).map_err(err)?;
        ensure(rep.all_pass(), format!("n = {n}: {:?}", rep.failures()))?;
        total += rep.checks.len();
    }
    let pts = verify_relations_at_points(7, 20, SEED).map_err(err)?;
    ensure(pts.len() == 20, "expected 20 points")?;
    for (l, r, rep) in &pts {
        ensure(rep.all_pass(), format!("n = 7 at l = {l}, r = {r}: {:?}", rep.failures()))?;
    }
    Ok(format!("{total} identities over Q(l, r) for n = 4..6; n = 7 at 20 points"))
}

fn det_s7() -> Outcome {
    let target: RationalFunction = "(-1 + l*r)^21 * (l - r^3)^14 * (l + r^3)^35 * (-1 + l*r^7)^6 * (1 + l*r^9)^7 \
                                    * (-1 + l*r^21) / (l^42 * r^105 * (r^2 - 1)^42)"
        .parse()
        .map_err(err)?;
    let samples = kernel::det_sum_probabilistic(7, &target, 10, SEED).map_err(err)?;
    ensure(samples.len() >= 10, "too few points")?;
    for s in &samples {
        ensure(s.matches(), format!("l = {}, r = {}: {} vs {}", s.l, s.r, s.computed, s.expected))?;
    }
    Ok(format!("{} points agree exactly", samples.len()))
}

fn k7_table() -> Outcome {
    let table = [("r^-21", 1), ("r^-7", 6), ("-r^-9", 7), ("r^3", 14), ("r^-1", 21), ("-r^3", 35)];
    let mut got = vec![];
    for (l, k) in table {
        let rep = kernel::kernel_at(7, &lv(l)).map_err(err)?;
        ensure(rep.k == k && rep.rank + rep.k == 42, format!("l = {l}: k = {}, expected {k}", rep.k))?;
        got.push(rep.k);
    }
    Ok(format!("k = {got:?}"))
}

fn symbolic_det() -> Outcome {
    let mut notes = vec![];
    for n in [4usize, 5] {
        let (det, f) = kernel::det_sum_symbolic(n).map_err(err)?;
        ensure(f.is_complete(), format!("n = {n}: cofactor {}", f.cofactor))?;
        ensure(f.unit.numer().is_monomial() && f.unit.denom().is_one(), format!("n = {n}: unit {}", f.unit))?;
        ensure(f.expand() == det, format!("n = {n}: factors do not multiply back"))?;
        let roots: BTreeSet<LValue> = f.l_roots().into_iter().filter(|(_, e)| *e > 0).map(|(v, _)| v).collect();
        ensure(roots == expected_critical(n as i32), format!("n = {n}: l-roots {roots:?}"))?;
        let lib: BTreeSet<LValue> = critical_sets(n).map_err(err)?.l_values.into_iter().collect();
        ensure(roots == lib, format!("n = {n}: library critical set differs"))?;
        notes.push(format!("n = {n}: {} roots", roots.len()));
    }
    Ok(notes.join("; "))
}

fn invariant_vectors() -> Outcome {
    let mut count = 0;
    for n in 4..=6usize {
        let report = subspaces::check_subspaces(n, None, SEED).map_err(err)?;
        let mut expected: BTreeSet<&str> = ["u", "t", "X", "J"].into();
        if n == 4 {
            expected.insert("Z");
        } else {
            expected.extend(["v", "Y"]);
        }
        let names: BTreeSet<&str> = report.families.iter().map(|f| f.family.as_str()).collect();
        ensure(names == expected, format!("n = {n}: families {names:?}"))?;
        for f in &report.families {
            ensure(f.holds, format!("n = {n}: {} fails at l = {}", f.family, f.l))?;
            ensure(f.generic.len() == 5, format!("n = {n}: {} tried at {} generic values", f.family, f.generic.len()))?;
            for (l, h) in &f.generic {
                ensure(!h, format!("n = {n}: {} also holds at generic l = {l}", f.family))?;
            }
            for (name, ok) in &f.extras {
                ensure(*ok, format!("n = {n}: {}: {name}", f.family))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} family checks, each failing at 5 generic values"))
}

fn e_annihilation() -> Outcome {
    let mut count = 0;
    for n in 4..=6usize {
        let k = n as i32;
        let rep_u = subspaces::vector_u(n);
        ensure(
            subspaces::e_annihilation_check(&[rep_u], n, &LValue::r_pow(7 - 4 * k)).map_err(err)?,
            format!("n = {n}: u"),
        )?;
        ensure(
            subspaces::e_annihilation_check(&subspaces::vectors_t(n), n, &LValue::r_pow(-1)).map_err(err)?,
            format!("n = {n}: t family"),
        )?;
        count += 2;
        if n >= 5 {
            let v = subspaces::vectors_v(n).map_err(err)?;
            ensure(
                subspaces::e_annihilation_check(&v, n, &LValue::r_pow(7 - 2 * k)).map_err(err)?,
                format!("n = {n}: v family"),
            )?;
            count += 1;
        }
        for w in KernelVector::ALL.into_iter().filter(|w| w.applies(n)) {
            let x = subspaces::kernel_vector(n, w).map_err(err)?;
            ensure(subspaces::e_annihilation_check(&[x], n, &w.l_value(n)).map_err(err)?, format!("n = {n}: {w}"))?;
            count += 1;
        }
        for l in expected_critical(k) {
            ensure(subspaces::kernel_is_e_annihilated(n, &l).map_err(err)?, format!("n = {n}: kernel at l = {l}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} subspaces killed by every e_i"))
}

fn action_sweep() -> Outcome {
    let mut notes = vec![];
    for n in [5usize, 6] {
        let entries = action::sweep(n).map_err(err)?;
        ensure(entries.len() == action::ALL_CASES.len(), "missing cases")?;
        let mut passed = 0;
        let mut excluded = 0;
        for e in &entries {
            ensure(e.passed > 0, format!("n = {n}: {} never applies", e.case))?;
            ensure(e.failed.is_empty(), format!("n = {n}: {} fails at {:?}", e.case, e.failed))?;
            passed += e.passed;
            excluded += e.excluded.len();
        }
        notes.push(format!("n = {n}: {passed} verified, {excluded} boundary tuples excluded"));
    }
    Ok(notes.join("; "))
}

fn hecke_matrices() -> Outcome {
    let h = subspaces::h_matrices_check();
    for c in &h {
        ensure(c.pass, format!("H: {}", c.relation))?;
    }
    ensure(subspaces::joint_r_eigenspace_dim(&subspaces::h_matrices()) == 0, "joint r-eigenvector exists")?;
    ensure(subspaces::j_matrices_check(), "J relations")?;
    Ok(format!("{} H checks and the J relations hold", h.len()))
}

fn specht_suite() -> Outcome {
    let mut shapes = 0;
    for n in 0..=8 {
        for p in partitions(n) {
            ensure(specht::syt_count(&p) == specht::syt_enumerate(&p), format!("{p}"))?;
            shapes += 1;
        }
    }
    for n in 4..=8usize {
        let s = specht::dim_sum_check(n);
        let expected: u128 = (1u128 << (n - 1)) * (1..=n as u128).product::<u128>();
        ensure(s.sum == expected, format!("n = {n}: sum {} vs {expected}", s.sum))?;
    }
    let d8: Vec<u128> = specht::degree_list(8, Some(56)).into_keys().collect();
    ensure(d8 == [1, 7, 8, 14, 20, 21, 28, 35, 42, 48], format!("n = 8: {d8:?}"))?;
    let d9: Vec<u128> = specht::degree_list(9, Some(72)).into_keys().collect();
    ensure(d9 == [1, 8, 9, 27, 28, 36, 42, 48, 56, 63, 70], format!("n = 9: {d9:?}"))?;
    Ok(format!("{shapes} shapes, sums for n = 4..8, both degree lists"))
}

fn generic_kernels() -> Outcome {
    let mut tried = vec![];
    for n in 4..=7usize {
        let mut sampler = PointSampler::new(SEED, n);
        for _ in 0..3 {
            let l = sampler.generic_l();
            ensure(!expected_critical(n as i32).contains(&l), format!("sampled a critical value {l}"))?;
            let rep = kernel::kernel_at(n, &l).map_err(err)?;
            ensure(rep.k == 0, format!("n = {n}, l = {l}: k = {}", rep.k))?;
            tried.push(l.to_string());
        }
    }
    Ok(format!("k = 0 at {} values", tried.len()))
}

fn parameter_map() -> Outcome {
    for n in 4..=12usize {
        let set = critical_sets(n).map_err(err)?;
        ensure(set.map_is_bijective(), format!("n = {n}"))?;
        let mut mapped = set.mapped_t();
        let mut direct = set.l_values.clone();
        mapped.sort();
        direct.sort();
        ensure(mapped == direct, format!("n = {n}: {mapped:?}"))?;
        let distinct: BTreeSet<LValue> = direct.into_iter().collect();
        ensure(distinct == expected_critical(n as i32), format!("n = {n}: l-set"))?;
    }
    Ok("n = 4..12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("defining relations", relations),
        ("det S(7) closed form", det_s7),
        ("kernel dimensions at rank 7", k7_table),
        ("symbolic det for n = 4, 5", symbolic_det),
        ("invariant vectors and subspaces", invariant_vectors),
        ("e_i annihilate invariant subspaces", e_annihilation),
        ("conjugate action table sweep", action_sweep),
        ("H and J matrix models", hecke_matrices),
        ("Specht dimensions", specht_suite),
        ("generic kernels vanish", generic_kernels),
        ("t to l parameter map", parameter_map),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS  {:>2}. {name} ({msg}) [{secs:.1}s]", k + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {msg} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of 11 criteria pass", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
