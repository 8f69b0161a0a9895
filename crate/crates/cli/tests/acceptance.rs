//! Acceptance suite: one PASS/FAIL line per criterion. Expected values are
//! either literal group-theoretic facts or recomputed here by brute force,
//! independently of the checker being exercised.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use semireg_core::ffield::FieldSpec;
use semireg_core::groups::{build_group, Family, GroupSpec};
use semireg_core::permeng::{ElementTable, Permutation};
use semireg_core::projgeom::{
    check_suzuki_ovoid, hermitian_unital, polar_conjugate_pairs, rank, ree_ovoid, suzuki_ovoid,
    QuadricForm,
};
use semireg_core::verify::{
    dickson_audit, verify_involutions, verify_maximal_cyclic_intersection,
    verify_order_p_conjugacy, verify_ree_semiregular, verify_suzuki_partition,
    verify_suzuki_semiregular, verify_unitary_semiregular, verify_vigh_claim, Mode,
    PropositionReport, Scalar,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn passed(r: &PropositionReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{} reported fail: {:?}", r.file_stem(), r.witnesses().first()))
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {t:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn group(f: Family, n: u64) -> Result<GroupSpec, String> {
    build_group(f, n).map_err(|e| e.to_string())
}

fn table(g: &GroupSpec) -> Result<ElementTable, String> {
    ElementTable::new(g.perm_group()).map_err(|e| e.to_string())
}

fn all_cycles_equal(p: &Permutation) -> bool {
    let c = p.cycle_lengths();
    c.iter().all(|&l| l == c[0]) && c[0] > 1
}

fn orders() -> Outcome {
    let start = Instant::now();
    let cases = [
        (Family::Pgl2, 7, 336u64),
        (Family::Psl2, 7, 168),
        (Family::Pgu3, 3, 6048),
        (Family::Psu3, 3, 6048),
        (Family::Pgu3, 5, 378_000),
        (Family::Psu3, 5, 126_000),
        (Family::Sz, 8, 29_120),
        (Family::Ree, 3, 1512),
    ];
    for (f, n, want) in cases {
        let g = group(f, n)?;
        ensure!(g.order() == want, "{f} n={n}: chain order {} != {want}", g.order());
        ensure!(f.expected_order(n) == want, "{f} n={n}: closed form disagrees");
        let sizes: u64 = g.perm_group().transversal_sizes().iter().map(|&s| s as u64).product();
        ensure!(sizes == want, "{f} n={n}: transversal product {sizes}");
    }
    within(start, Duration::from_secs(60), "orders")?;
    Ok(format!("8 groups in {:.1?}", start.elapsed()))
}

fn involutions() -> Outcome {
    // (n, total, in PSL, fixed points in PSL, outside, fixed points outside)
    for (n, total, inside, fp_in, outside, fp_out) in [(5u64, 25u64, 15u64, 2usize, 10u64, 0usize), (7, 49, 21, 0, 28, 2)] {
        let pgl = group(Family::Pgl2, n)?;
        let psl = group(Family::Psl2, n)?;
        let t = table(&pgl)?;
        let (mut tot, mut ins, mut out) = (0, 0, 0);
        for i in 1..t.len() {
            let g = t.element(i);
            if g.order() != 2 {
                continue;
            }
            tot += 1;
            if psl.perm_group().contains(&g) {
                ins += 1;
                ensure!(g.num_fixed_points() == fp_in, "n={n}: PSL involution fixes {}", g.num_fixed_points());
            } else {
                out += 1;
                ensure!(g.num_fixed_points() == fp_out, "n={n}: outer involution fixes {}", g.num_fixed_points());
            }
        }
        ensure!((tot, ins, out) == (total, inside, outside), "n={n}: enumeration gives {tot}/{ins}/{out}");
        let r = verify_involutions(n).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.count("involutions") == Some(total as i128), "n={n}: report total");
        ensure!(r.count("involutions_in_psl") == Some(inside as i128), "n={n}: report PSL count");
        ensure!(r.count("involutions_outside_psl") == Some(outside as i128), "n={n}: report outer count");
    }
    for n in [5u64, 7, 9] {
        let r = verify_involutions(n).map_err(|e| e.to_string())?;
        passed(&r)?;
        let all = n * n * n - n - 1;
        ensure!(r.count("elements_checked") == Some(all as i128), "n={n}: trace test did not see every element");
    }
    Ok("PGL(2,5): 25 = 15 + 10, PGL(2,7): 49 = 21 + 28; trace test on n = 5, 7, 9".into())
}

/// Maximal cyclic subgroups by naive set inclusion, then pairwise intersections.
fn brute_force_intersections(t: &ElementTable) -> Result<usize, String> {
    let mut subs: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for i in 1..t.len() {
        subs.insert(t.powers(i).into_iter().collect());
    }
    let subs: Vec<BTreeSet<usize>> = subs.into_iter().collect();
    let maximal: Vec<&BTreeSet<usize>> = subs
        .iter()
        .filter(|a| !subs.iter().any(|b| b.len() > a.len() && a.is_subset(b)))
        .collect();
    for (i, a) in maximal.iter().enumerate() {
        for b in &maximal[i + 1..] {
            let common: Vec<_> = a.intersection(b).collect();
            ensure!(common == vec![&0], "maximal cyclic subgroups meet in {} elements", common.len());
        }
    }
    Ok(maximal.len())
}

fn max_cyclic() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for q in [5u64, 7, 9, 11, 13] {
        let g = group(Family::Psl2, q)?;
        let t = table(&g)?;
        let m = brute_force_intersections(&t)?;
        let r = verify_maximal_cyclic_intersection(q).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.count("maximal_cyclic_subgroups") == Some(m as i128), "q={q}: {m} maximal by brute force");
        ensure!(r.count("nontrivial_elements") == Some(t.len() as i128 - 1), "q={q}: partition size");
        counts.push(format!("q={q}:{m}"));
    }
    within(start, Duration::from_secs(300), "max cyclic")?;
    Ok(format!("maximal cyclic subgroups {}", counts.join(" ")))
}

fn classes_of(elements: &[Permutation], xs: &[Permutation]) -> Vec<usize> {
    let mut remaining: Vec<Permutation> = xs.to_vec();
    let mut sizes = Vec::new();
    while let Some(x) = remaining.first().cloned() {
        let class: BTreeSet<Vec<u32>> = elements.iter().map(|g| x.conjugate_by(g).images().to_vec()).collect();
        sizes.push(class.len());
        remaining.retain(|y| !class.contains(y.images()));
    }
    sizes.sort_unstable();
    sizes
}

fn order_p() -> Outcome {
    for (q, size) in [(5u64, 12usize), (7, 24)] {
        let pgl = group(Family::Pgl2, q)?;
        let psl = group(Family::Psl2, q)?;
        let tp = table(&pgl)?;
        let ts = table(&psl)?;
        let pgl_elems: Vec<Permutation> = (0..tp.len()).map(|i| tp.element(i)).collect();
        let psl_elems: Vec<Permutation> = (0..ts.len()).map(|i| ts.element(i)).collect();
        let xs: Vec<Permutation> = psl_elems.iter().filter(|g| g.order() == q).cloned().collect();
        ensure!(pgl_elems.iter().filter(|g| g.order() == q).count() == xs.len(), "q={q}: order-p elements outside PSL");
        ensure!(classes_of(&psl_elems, &xs) == vec![size, size], "q={q}: PSL classes {:?}", classes_of(&psl_elems, &xs));
        ensure!(classes_of(&pgl_elems, &xs) == vec![2 * size], "q={q}: PGL classes");
        let r = verify_order_p_conjugacy(q).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.count("psl_classes") == Some(2) && r.count("pgl_classes") == Some(1), "q={q}: report classes");
        ensure!(r.counts()["psl_class_sizes"] == vec![size as u64, size as u64].into(), "q={q}: report sizes");
        ensure!(r.count("translation_pairs_checked") == Some(((q - 1) * (q - 1)) as i128), "q={q}: square criterion coverage");
    }
    Ok("2 PSL-classes (12+12, 24+24), 1 PGL-class, square criterion on translations".into())
}

fn unitary() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for n in [3u64, 5] {
        let mu = if (n + 1) % 3 == 0 { 3 } else { 1 };
        let targets = [(n + 1) / 2, (n * n - n + 1) / mu];
        let g = group(Family::Psu3, n)?;
        let t = table(&g)?;
        let mut orders = BTreeSet::new();
        for i in 1..t.len() {
            let p = t.element(i);
            if all_cycles_equal(&p) {
                let o = p.order();
                ensure!(targets.iter().any(|&d| d % o == 0), "n={n}: semi-regular order {o}");
                orders.insert(o);
            }
            if p.order() == 2 {
                ensure!(p.num_fixed_points() >= 1, "n={n}: fixed-point-free involution {i}");
            }
        }
        let r = verify_unitary_semiregular(n).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.counts()["semiregular_orders"] == orders.clone().into(), "n={n}: report orders differ");
        found.push(format!("n={n}:{orders:?}"));
    }
    within(start, Duration::from_secs(1800), "unitary")?;
    Ok(format!("semi-regular orders {} in {:.1?}", found.join(" "), start.elapsed()))
}

fn suzuki() -> Outcome {
    let start = Instant::now();
    let g = group(Family::Sz, 8)?;
    let t = table(&g)?;
    ensure!(t.len() == 29_120, "|Sz(8)| = {}", t.len());
    // Partition oracle: 2-elements fix exactly one point (so lie in exactly
    // one point's Sylow 2-subgroup), the other orders are the primes 5, 7, 13
    // (so each lies in exactly one cyclic subgroup of prime order).
    let mut per_point = vec![0usize; t.degree()];
    let mut by_order: BTreeMap<u64, usize> = BTreeMap::new();
    let mut semireg = BTreeSet::new();
    for i in 1..t.len() {
        let p = t.element(i);
        let o = p.order();
        *by_order.entry(o).or_default() += 1;
        match o {
            2 | 4 => {
                let fixed = p.fixed_points();
                ensure!(fixed.len() == 1, "2-element {i} fixes {} points", fixed.len());
                per_point[fixed[0] as usize] += 1;
            }
            5 | 7 | 13 => {}
            _ => return Err(format!("element {i} of order {o}")),
        }
        if all_cycles_equal(&p) {
            semireg.insert(o);
        }
    }
    ensure!(per_point.iter().all(|&c| c == 63), "Sylow 2-subgroups not all of order 64");
    ensure!(semireg == BTreeSet::from([5, 13]), "semi-regular orders {semireg:?}");
    let r = verify_suzuki_partition(8).map_err(|e| e.to_string())?;
    passed(&r)?;
    ensure!(r.count("covered_exactly_once") == Some(29_119), "partition coverage");
    ensure!(r.count("sylow_2_subgroups") == Some(65), "Sylow count");
    let r = verify_suzuki_semiregular(8).map_err(|e| e.to_string())?;
    passed(&r)?;
    ensure!(r.counts()["semiregular_orders"] == vec![5u64, 13].into(), "report orders");
    within(start, Duration::from_secs(600), "suzuki")?;
    Ok(format!("29119 elements partitioned, element orders {:?}, semi-regular {{5, 13}}", by_order.keys().collect::<Vec<_>>()))
}

fn ree() -> Outcome {
    let start = Instant::now();
    let g = group(Family::Ree, 3)?;
    let t = table(&g)?;
    for i in 1..t.len() {
        let p = t.element(i);
        match p.order() {
            2 => ensure!(p.num_fixed_points() == 4, "Ree(3) involution fixes {}", p.num_fixed_points()),
            3 => ensure!(p.num_fixed_points() == 1, "Ree(3) order-3 element fixes {}", p.num_fixed_points()),
            _ => {}
        }
    }
    passed(&verify_ree_semiregular(3, 0, 0).map_err(|e| e.to_string())?)?;

    let f = Arc::new(FieldSpec::of_order(27).map_err(|e| e.to_string())?);
    let om = ree_ovoid(f.clone()).map_err(|e| e.to_string())?;
    let qf = QuadricForm::new(f);
    let on = om.points().iter().filter(|p| qf.evaluate(p.coords()).is_zero()).count();
    ensure!(om.len() == 19_684 && on == 19_684, "Ree(27) ovoid: {} points, {on} on the quadric", om.len());

    let r = verify_ree_semiregular(27, 10_000, 0).map_err(|e| e.to_string())?;
    passed(&r)?;
    ensure!(r.mode() == Mode::Sampled && r.seed() == Some(0), "sampled mode and seed must be recorded");
    ensure!(r.count("samples") == Some(10_000) && r.count("sift_failures") == Some(0), "sample accounting");
    let ok: BTreeSet<u64> = [14u64, 19, 37]
        .iter()
        .flat_map(|&t| (1..=t).filter(move |d| t % d == 0))
        .collect();
    if let Some(Scalar::List(found)) = r.counts().get("semiregular_orders") {
        for o in found {
            let o = o.as_int().unwrap_or(0) as u64;
            ensure!(ok.contains(&o), "sampled semi-regular order {o}");
        }
    }
    within(start, Duration::from_secs(1800), "ree")?;
    Ok(format!("Ree(3) exhaustive, Ree(27) 19684 points and 10^4 samples in {:.1?}", start.elapsed()))
}

fn claim() -> Outcome {
    let start = Instant::now();
    let r = verify_vigh_claim(4, 12);
    passed(&r)?;
    ensure!(r.count("instances") == Some(130), "instances {:?}", r.count("instances"));
    let three = BigInt::from(3);
    for u in 0..=4u32 {
        let m = three.pow(u);
        for v in 0..=12u32 {
            let s = 2 * u * v + u + v;
            let k = three.pow(s);
            let m2 = |k: &BigInt| BigInt::from(3) * k * k + 1;
            let (m1, m3) = (m2(&k) + 3 * &k, m2(&k) - 3 * &k);
            for d in [3 * &m * &m + 3 * &m + 1, 3 * &m * &m - 3 * &m + 1] {
                let zero = BigInt::from(0);
                ensure!(
                    &m1 % &d == zero || m2(&k) % &d == zero || &m3 % &d == zero,
                    "u={u} v={v} d={d}"
                );
            }
            let k3 = three.pow(s + 6 * u + 3);
            let diff = m2(&k3) - m2(&k);
            let m2_1 = three.pow(6 * u + 3) + 1;
            let shift = three.pow(s + 1) * &m2_1;
            ensure!(m2(&k3) + 3 * &k3 - &m3 == &diff + &shift, "M1(v+3) - M3(v) at u={u} v={v}");
            ensure!(m2(&k3) - 3 * &k3 - &m1 == &diff - &shift, "M3(v+3) - M1(v) at u={u} v={v}");
        }
    }
    within(start, Duration::from_secs(10), "claim")?;
    Ok(format!("130 instances and identities exact in {:.2?}", start.elapsed()))
}

fn dickson() -> Outcome {
    // total subgroup counts of A5, PSL(2,7) and A6
    let mut summary = Vec::new();
    for (q, total, must) in [(5u64, 59i128, vec!["A4", "A5"]), (7, 179, vec!["S4"]), (9, 501, vec!["A5"])] {
        let r = dickson_audit(q).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.count("subgroups") == Some(total), "q={q}: {:?} subgroups", r.count("subgroups"));
        let Some(Scalar::Map(census)) = r.counts().get("census") else {
            return Err("census missing".into());
        };
        ensure!(!census.contains_key("unknown"), "q={q}: unknown verdicts");
        for ty in must {
            ensure!(census.keys().any(|k| k.ends_with(&format!(" {ty}"))), "q={q}: no {ty}");
        }
        summary.push(format!("q={q}:{total}"));
    }
    Ok(format!("all subgroups typed ({})", summary.join(" ")))
}

fn geometry() -> Outcome {
    // unital: count points on every line aX + bY + cZ = 0 of PG(2,9)
    let ext = Arc::new(FieldSpec::of_order(9).map_err(|e| e.to_string())?);
    let f = &*ext;
    let un = hermitian_unital(ext.clone(), 3).map_err(|e| e.to_string())?;
    ensure!(un.len() == 28, "unital has {} points", un.len());
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let dual: Vec<[_; 3]> = {
        let mut v = vec![[f.zero(), f.zero(), f.one()]];
        v.extend(f.elements().map(|c| [f.zero(), f.one(), c]));
        for b in f.elements() {
            v.extend(f.elements().map(|c| [f.one(), b, c]));
        }
        v
    };
    for l in &dual {
        let on = un
            .points()
            .iter()
            .filter(|p| {
                let x = p.coords();
                f.add(f.add(f.mul(l[0], x[0]), f.mul(l[1], x[1])), f.mul(l[2], x[2])).is_zero()
            })
            .count();
        *hist.entry(on).or_default() += 1;
    }
    let support: Vec<usize> = hist.keys().copied().filter(|&k| k > 0).collect();
    ensure!(support == vec![1, 4], "unital support {support:?}");
    ensure!(hist[&1] == 28, "{} tangents", hist[&1]);

    // Suzuki ovoid: three axioms, plus a brute-force no-three-collinear scan
    let f8 = Arc::new(FieldSpec::of_order(8).map_err(|e| e.to_string())?);
    let ov = suzuki_ovoid(f8.clone()).map_err(|e| e.to_string())?;
    let full = check_suzuki_ovoid(&ov.omega, false);
    ensure!(full.passes(), "Suzuki ovoid check: {full:?}");
    let pts = ov.omega.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let r = rank(&f8, &[pts[i].coords(), pts[j].coords(), pts[k].coords()]);
                ensure!(r == 3, "collinear triple {i} {j} {k}");
            }
        }
    }

    // Ree ovoid over GF(3): every pair non-conjugate
    let f3 = Arc::new(FieldSpec::of_order(3).map_err(|e| e.to_string())?);
    let ro = ree_ovoid(f3).map_err(|e| e.to_string())?;
    ensure!(polar_conjugate_pairs(&ro) == (378, 0), "Ree(3) ovoid pairs");
    Ok("unital {1, 4} with 28 tangents; Sz(8) ovoid valid; Ree(3) 378 pairs non-conjugate".into())
}

fn run_suite(dir: &Path) -> Result<i32, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let out_dir = dir.to_str().ok_or("non-UTF-8 temp path")?;
    let a = semireg_cli::run(["semireg", "verify", "--seed", "42", "--out", out_dir], None, &mut out, &mut err);
    let b = semireg_cli::run(["semireg", "claim", "--out", out_dir], None, &mut out, &mut err);
    ensure!(err.is_empty(), "stderr: {}", String::from_utf8_lossy(&err));
    Ok(a.max(b))
}

fn snapshot(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let mut files = BTreeMap::new();
    for e in std::fs::read_dir(dir).map_err(|e| e.to_string())? {
        let p = e.map_err(|e| e.to_string())?.path();
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        files.insert(name, std::fs::read(&p).map_err(|e| e.to_string())?);
    }
    Ok(files)
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    ensure!(run_suite(a.path())? == 0, "first run did not pass");
    ensure!(run_suite(b.path())? == 0, "second run did not pass");
    let (sa, sb) = (snapshot(a.path())?, snapshot(b.path())?);
    ensure!(sa.keys().eq(sb.keys()), "different report file sets");
    for (name, bytes) in &sa {
        ensure!(sb[name] == *bytes, "{name} differs between runs");
    }
    Ok(format!("{} report files byte-identical across two runs", sa.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("group orders", orders),
        ("involutions of PGL(2,n)", involutions),
        ("maximal cyclic subgroups of PSL(2,q)", max_cyclic),
        ("order-p conjugacy", order_p),
        ("semi-regular subgroups of PSU(3,n)", unitary),
        ("Sz(8) partition and semi-regular orders", suzuki),
        ("Ree fixed points and semi-regular orders", ree),
        ("divisibility claim", claim),
        ("subgroup types of PSL(2,q)", dickson),
        ("unital and ovoids", geometry),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
