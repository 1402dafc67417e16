//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use piforge::engine::{self, KappaPolicy, Mode, Problem};
use piforge::matroid::{self, ColumnMatroid};
use piforge::report::parse_problem;
use piforge::zlinalg::{self, IntMatrix};
use piforge::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

macro_rules! ensure_eq {
    ($left:expr, $right:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($left), l, r));
        }
    }};
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn load(name: &str) -> Result<Problem, String> {
    let text = std::fs::read_to_string(data(name)).map_err(|e| e.to_string())?;
    parse_problem(&text).map_err(|e| format!("{name}:{e}"))
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_piforge"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by signal")?;
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn names(p: &Problem, sets: &[Vec<usize>]) -> Vec<Vec<String>> {
    let n = p.var_names();
    sets.iter().map(|s| s.iter().map(|&i| n[i].clone()).collect()).collect()
}

fn prebasis_names(p: &Problem) -> Result<Vec<Vec<String>>, String> {
    let eff = p.effective().map_err(err)?;
    let sets: Vec<Vec<usize>> = engine::prebases(p).map_err(err)?.into_iter().map(|pb| pb.members).collect();
    Ok(names(&eff, &sets))
}

fn sorted_sets(sets: &[&[&str]]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = sets
        .iter()
        .map(|s| {
            let mut v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

fn as_sorted(mut sets: Vec<Vec<String>>) -> Vec<Vec<String>> {
    sets.iter_mut().for_each(|s| s.sort());
    sets.sort();
    sets
}

fn example_two() -> Check {
    let p = load("example_two.txt")?;
    let col = |name: &str| p.vars[p.index_of(name).unwrap()].dim.exponents().to_vec();
    let q0 = col("q0");
    // prebasis (q1, q3) with other q2, then prebasis (q2, q3) with other q1
    let b = zlinalg::canonical_solve(&q0, &[col("q1"), col("q3")], 2).map_err(err)?;
    ensure_eq!((b.k, b.kj.clone()), (1, vec![2, 2]));
    let b1 = zlinalg::canonical_solve(&col("q2"), &[col("q1"), col("q3")], 1).map_err(err)?;
    ensure_eq!((b1.k, b1.kj.clone()), (1, vec![2, 0]));
    let c = zlinalg::canonical_solve(&q0, &[col("q2"), col("q3")], 2).map_err(err)?;
    ensure_eq!((c.k, c.kj.clone()), (1, vec![1, 2]));
    let c1 = zlinalg::canonical_solve(&col("q1"), &[col("q2"), col("q3")], 1).map_err(err)?;
    ensure_eq!((c1.k, c1.kj.clone()), (2, vec![1, 0]));
    ensure_eq!(engine::canonical_kappa(&p).map_err(err)?, 2);

    // the engine's own prebases agree
    let pbs = engine::prebases(&p).map_err(err)?;
    ensure_eq!(pbs.len(), 2);
    ensure_eq!((pbs[0].members.clone(), pbs[0].dependent.kj.clone()), (vec![1, 3], vec![2, 2]));
    ensure_eq!((pbs[1].members.clone(), pbs[1].dependent.kj.clone()), (vec![2, 3], vec![1, 2]));
    ensure_eq!((pbs[1].others[0].exps.k, pbs[1].others[0].exps.kj.clone()), (2, vec![1, 0]));
    Ok(())
}

fn pendulum() -> Check {
    let p = load("pendulum.txt")?;
    ensure_eq!(prebasis_names(&p)?, vec![vec!["l", "m", "g"]]);
    ensure_eq!(engine::canonical_kappa(&p).map_err(err)?, 2);
    let sys = engine::analyze_unbalanced(&p).map_err(err)?;
    ensure_eq!(sys.render_lines(), vec!["t^2 = l g^-1 * Psi_1(theta)"]);
    let (code, out) = cli(&["analyze", data("pendulum.txt").to_str().unwrap()])?;
    ensure_eq!(code, 0);
    ensure!(out.contains("\nt^2 = l g^-1 * Psi_1(theta)\n"), "CLI output lacks the equation:\n{out}");
    Ok(())
}

fn two_body_unbalanced() -> Check {
    let p = load("two_body.txt")?;
    ensure_eq!(prebasis_names(&p)?, vec![vec!["M", "d", "G"], vec!["m", "d", "G"]]);
    ensure_eq!(engine::canonical_kappa(&p).map_err(err)?, 2);
    for pb in engine::prebases(&p).map_err(err)? {
        ensure_eq!((pb.dependent.k, pb.dependent.kj.clone()), (1, vec![-1, 3, -1]));
    }
    let sys = engine::analyze_unbalanced(&p).map_err(err)?;
    ensure_eq!(
        sys.render_lines(),
        vec!["t^2 = M^-1 d^3 G^-1 * Psi_1(m M^-1)", "t^2 = m^-1 d^3 G^-1 * Psi_2(M m^-1)"]
    );
    let path = data("two_body.txt");
    let (code, out) = cli(&["analyze", path.to_str().unwrap(), "--symmetry", "M", "m"])?;
    ensure_eq!(code, 0);
    ensure!(
        out.contains("M <-> m: t^2 = k * d^3 G^-1 (M + m)^-1\n"),
        "closed form missing from CLI output:\n{out}"
    );
    let cf = engine::apply_symmetry(&sys, ("M", "m")).map_err(err)?;
    ensure_eq!(cf.statement, "t^2 = k * d^3 G^-1 (M + m)^-1");
    ensure!(cf.is_homogeneous(&sys.var_dims).map_err(err)?, "closed form not homogeneous");
    Ok(())
}

fn two_body_matroid() -> Check {
    let p = load("two_body.txt")?;
    let m = p.matroid().map_err(err)?;
    // expected membership grid, rows t M m d G
    let bases_grid = ["+++++--", "++---+-", "--++--+", "+-+-+++", "-+-++++"];
    let pcs_grid = ["****o", "***o*", "**o**", "*o***", "o****"];
    let from_grid = |grid: &[&str], mark: char| -> Vec<Vec<String>> {
        let ncols = grid[0].len();
        let vars = ["t", "M", "m", "d", "G"];
        (0..ncols)
            .map(|c| {
                vars.iter()
                    .zip(grid)
                    .filter(|(_, row)| row.chars().nth(c) == Some(mark))
                    .map(|(v, _)| v.to_string())
                    .collect()
            })
            .collect()
    };
    let bases = names(&p, &matroid::bases(&m));
    let pcs = names(&p, &matroid::pseudocircuits(&m));
    ensure_eq!(bases.len(), 7);
    ensure_eq!(pcs.len(), 5);
    ensure_eq!(as_sorted(bases.clone()), as_sorted(from_grid(&bases_grid, '+')));
    ensure_eq!(as_sorted(pcs.clone()), as_sorted(from_grid(&pcs_grid, '*')));

    let names_v = p.var_names();
    let pi = |set: &[&str]| -> Result<String, String> {
        let idx: Vec<usize> = set.iter().map(|n| p.index_of(n).unwrap()).collect();
        let pm = matroid::pi_monomial(&m, &idx, 0).map_err(err)?;
        Ok(pm.render(&names_v, None))
    };
    ensure_eq!(pi(&["t", "M", "d", "G"])?, "t^2 M d^-3 G");
    ensure_eq!(pi(&["t", "m", "d", "G"])?, "t^2 m d^-3 G");
    let circuits = names(&p, &matroid::circuits(&m));
    ensure!(circuits.contains(&vec!["M".to_string(), "m".to_string()]), "{{M, m}} not a circuit");
    Ok(())
}

fn balanced_merge() -> Check {
    let p = load("two_body.txt")?.with_mode(Mode::Balanced);
    let systems = engine::analyze_balanced(&p).map_err(err)?;
    let sys = systems.iter().find(|s| s.dependent == "M").ok_or("no system for M")?;
    ensure_eq!(sys.raw_count, 4);
    ensure_eq!(sys.equations.len(), 3);
    ensure_eq!(sys.merged.len(), 1);
    let kept = sys.equations.iter().find(|e| e.psi == sys.merged[0].kept).ok_or("kept equation missing")?;
    let n = &sys.var_names;
    ensure_eq!(kept.lhs.render(n, None), "M m^-1");
    ensure_eq!(kept.args.len(), 1);
    ensure_eq!(kept.args[0].pi.render(n, None), "t^2 m d^-3 G");

    // the dropped basis really produced the same equation
    let dropped = &sys.merged[0].dropped_basis;
    ensure!(!kept.basis.eq(dropped), "dropped basis equals kept basis");
    let m = p.matroid().map_err(err)?;
    let mut with_m = dropped.clone();
    with_m.push(1);
    with_m.sort();
    let lhs = matroid::pi_monomial(&m, &with_m, 1).map_err(err)?;
    ensure_eq!(lhs.monomial().clone(), kept.lhs.clone());
    Ok(())
}

fn cone() -> Check {
    let p = load("cone.txt")?;
    ensure_eq!(engine::canonical_kappa(&p).map_err(err)?, 2);
    let at1 = engine::analyze_unbalanced(&p.clone().with_kappa(KappaPolicy::Fixed(1))).map_err(err)?;
    ensure_eq!(at1.equations.len(), 2);
    let (a, h) = (&at1.equations[0], &at1.equations[1]);
    ensure_eq!(at1.var_names[a.basis[0]], "a");
    ensure!(!a.solvable && a.k0 == 2, "prebasis {{a}} should be unsolvable with k0 = 2, got {a:?}");
    ensure_eq!(h.render(&at1.var_names), "H = h * Psi_2(a h^-2)");
    let at2 = engine::analyze_unbalanced(&p.clone().with_kappa(KappaPolicy::Fixed(2))).map_err(err)?;
    ensure!(at2.equations.iter().all(|e| e.solvable), "not all solvable at kappa = 2");
    Ok(())
}

fn energy_density() -> Check {
    let p = load("energy_density.txt")?;
    ensure_eq!(
        as_sorted(prebasis_names(&p)?),
        sorted_sets(&[&["E", "eps", "mu"], &["H", "eps", "mu"], &["E", "H", "eps"], &["E", "H", "mu"]])
    );
    let q = load("energy_density_composite.txt")?;
    ensure_eq!(prebasis_names(&q)?, vec![vec!["Ep"], vec!["Hp"]]);
    let sys = engine::analyze_unbalanced(&q).map_err(err)?;
    let cf = engine::apply_symmetry(&sys, ("Ep", "Hp")).map_err(err)?;
    ensure_eq!(cf.statement, "u = k (Ep + Hp)");
    ensure_eq!(cf.render_expanded(&sys.var_names, &q.substitutions), "u = k (eps E^2 + mu H^2)");
    let path = data("energy_density_composite.txt");
    let (code, out) = cli(&["analyze", path.to_str().unwrap(), "--symmetry"])?;
    ensure_eq!(code, 0);
    ensure!(out.contains("expanded: u = k (eps E^2 + mu H^2)\n"), "CLI output:\n{out}");
    Ok(())
}

fn mass_addition() -> Check {
    let p = load("mass.txt")?;
    ensure_eq!(prebasis_names(&p)?, vec![vec!["a"], vec!["b"]]);
    let sys = engine::analyze_unbalanced(&p).map_err(err)?;
    let cf = engine::apply_symmetry(&sys, ("a", "b")).map_err(err)?;
    ensure_eq!(cf.statement, "c = k (a + b)");
    Ok(())
}

fn not_precomplete() -> Check {
    let p = load("two_body_no_g.txt")?;
    ensure!(engine::prebases(&p).map_err(err)?.is_empty(), "expected no prebases");
    ensure_eq!(engine::analyze_unbalanced(&p), Err(Error::NotPrecomplete));
    let path = data("two_body_no_g.txt");
    let (code, out) = cli(&["analyze", path.to_str().unwrap(), "--format", "structured"])?;
    ensure_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(err)?;
    ensure_eq!(v["prebases"], serde_json::json!([]));
    ensure_eq!(v["status"], "not_precomplete");
    Ok(())
}

const CASES: usize = 200;

fn random_shape(rng: &mut ChaCha8Rng, max_cols: usize) -> common::Rows {
    let r = rng.gen_range(1..=4);
    let c = rng.gen_range(1..=max_cols);
    common::random_rows(rng, r, c)
}

fn prop_canonical_solve(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut compared = 0;
    let mut done = 0;
    while done < CASES {
        let rows = random_shape(rng, 7);
        let ncols = rows[0].len();
        if common::rank(&rows) == 0 {
            continue;
        }
        // a random basis of the column space, built with the minor oracle
        let mut order: Vec<usize> = (0..ncols).collect();
        for i in (1..ncols).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut basis: Vec<usize> = Vec::new();
        for &j in &order {
            let mut cand = basis.clone();
            cand.push(j);
            if common::rank_of(&rows, &cand) == cand.len() {
                basis = cand;
            }
        }
        let cols = common::columns(&rows);
        let target = &cols[rng.gen_range(0..ncols)];
        let kappa = rng.gen_range(1..=3);
        let basis_cols: Vec<Vec<i64>> = basis.iter().map(|&j| cols[j].clone()).collect();
        let got = zlinalg::canonical_solve(target, &basis_cols, kappa).map_err(err)?;
        match common::brute_canonical(target, &basis_cols, kappa, 12, 12) {
            Some((k, kj)) => {
                ensure_eq!((got.k, got.kj.clone()), (k, kj));
                compared += 1;
            }
            None => ensure!(
                got.k > 12 || got.kj.iter().any(|v| v.abs() > 12),
                "search found nothing but the solver returned {got:?} for {rows:?}"
            ),
        }
        done += 1;
    }
    ensure!(compared >= CASES / 2, "only {compared} cases within the search range");
    Ok(format!("{compared} of {CASES} compared"))
}

fn prop_primitive_kernel(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut compared = 0;
    let mut done = 0;
    while done < CASES {
        let rows = random_shape(rng, 5);
        let n = rows[0].len();
        if n - common::rank(&rows) != 1 {
            continue;
        }
        let designated = rng.gen_range(0..n);
        let m = IntMatrix::from_rows(&rows).map_err(err)?;
        let got = zlinalg::primitive_kernel(&m, designated).map_err(err)?;
        let found = common::brute_kernels(&rows, n, designated, 6);
        ensure!(found.len() <= 1, "kernel is not rank one: {found:?}");
        match found.first() {
            Some(v) => {
                ensure_eq!(&got, v);
                compared += 1;
            }
            None => ensure!(got.iter().any(|v| v.abs() > 6), "search missed {got:?}"),
        }
        done += 1;
    }
    ensure!(compared >= CASES / 2, "only {compared} cases within the search range");
    Ok(format!("{compared} of {CASES} compared"))
}

fn check_dimensionless(rows: &common::Rows, exps: &[i64], what: &str) -> Check {
    let d = common::mat_vec(rows, exps);
    ensure!(d.iter().all(|&x| x == 0), "{what} {exps:?} has dimension {d:?}");
    Ok(())
}

fn prop_dimensionless(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut equations = 0;
    let mut overflows = 0;
    for _ in 0..CASES {
        let rows = random_shape(rng, 7);
        let p = common::problem_from(&rows);
        match engine::analyze_unbalanced(&p) {
            Ok(sys) => {
                for e in &sys.equations {
                    check_dimensionless(&rows, e.lhs.exponents(), "lhs")?;
                    ensure!(e.lhs.get(0) > 0, "dependent exponent not positive: {e:?}");
                    for a in &e.args {
                        check_dimensionless(&rows, a.pi.exponents(), "argument")?;
                        ensure!(a.pi.get(a.var) > 0, "argument exponent not positive: {e:?}");
                    }
                    equations += 1;
                }
            }
            Err(Error::NotPrecomplete) => {}
            // the canonical kappa is an lcm over prebases and can leave i64
            Err(Error::Overflow) => overflows += 1,
            Err(e) => return Err(format!("{e} for {rows:?}")),
        }
        for sys in engine::analyze_balanced(&p).map_err(err)? {
            for e in &sys.equations {
                check_dimensionless(&rows, e.lhs.exponents(), "balanced lhs")?;
                ensure!(e.lhs.get(e.target) > 0, "target exponent not positive: {e:?}");
                for a in &e.args {
                    check_dimensionless(&rows, a.pi.exponents(), "balanced argument")?;
                    ensure!(a.pi.get(a.var) > 0, "argument exponent not positive: {e:?}");
                }
                equations += 1;
            }
        }
    }
    ensure!(overflows <= CASES / 20, "{overflows} overflows");
    Ok(format!("{equations} equations, {overflows} kappa overflows"))
}

fn prop_base_change(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut nonempty = 0;
    for _ in 0..CASES {
        let rows = random_shape(rng, 7);
        let u = common::unimodular(rng, rows.len());
        ensure_eq!(common::det(&u).abs(), 1);
        let changed = common::mat_mul(&u, &rows);
        let before = engine::prebases(&common::problem_from(&rows)).map_err(err)?;
        let after = engine::prebases(&common::problem_from(&changed)).map_err(err)?;
        ensure_eq!(before, after);
        if !before.is_empty() {
            nonempty += 1;
        }
    }
    Ok(format!("{nonempty} of {CASES} precomplete"))
}

fn prop_matroid(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..CASES {
        let rows = random_shape(rng, 7);
        let n = rows[0].len();
        let r = common::rank(&rows);
        let names: Vec<String> = (0..n).map(|j| format!("v{j}")).collect();
        let m = ColumnMatroid::new(IntMatrix::from_rows(&rows).map_err(err)?, names).map_err(err)?;
        ensure_eq!(m.rank(), r);
        let rank_of = |s: &Vec<usize>| common::rank_of(&rows, s);
        let all: Vec<Vec<usize>> = common::subsets(n).collect();
        let bases: Vec<Vec<usize>> = all.iter().filter(|s| s.len() == r && rank_of(s) == r).cloned().collect();
        let pcs: Vec<Vec<usize>> = all.iter().filter(|s| s.len() == r + 1 && rank_of(s) == r).cloned().collect();
        let mut circuits: Vec<Vec<usize>> = all
            .iter()
            .filter(|s| {
                !s.is_empty()
                    && rank_of(s) < s.len()
                    && (0..s.len()).all(|k| {
                        let mut t = (*s).clone();
                        t.remove(k);
                        rank_of(&t) == t.len()
                    })
            })
            .cloned()
            .collect();
        circuits.sort();
        ensure_eq!(matroid::bases(&m), bases);
        ensure_eq!(matroid::pseudocircuits(&m), pcs);
        ensure_eq!(matroid::circuits(&m), circuits);
    }
    Ok(format!("{CASES} matrices"))
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut failures = Vec::new();
    let mut run = |tag: &str, f: fn(&mut ChaCha8Rng) -> Result<String, String>, rng: &mut ChaCha8Rng| match f(rng) {
        Ok(n) => println!("    10{tag} ok ({n})"),
        Err(e) => {
            println!("    10{tag} FAIL: {e}");
            failures.push(tag.to_string());
        }
    };
    run("a canonical_solve vs search", prop_canonical_solve, &mut rng);
    run("b primitive_kernel vs search", prop_primitive_kernel, &mut rng);
    run("c pi-monomials dimensionless", prop_dimensionless, &mut rng);
    run("d prebases under base change", prop_base_change, &mut rng);
    run("e bases/pseudocircuits/circuits vs subsets", prop_matroid, &mut rng);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(format!("failed: {}", failures.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("canonical exponents of the two-prebasis example", example_two),
        ("pendulum", pendulum),
        ("two-body unbalanced and Kepler closed form", two_body_unbalanced),
        ("two-body matroid", two_body_matroid),
        ("balanced merge for M", balanced_merge),
        ("cone at kappa 1 and 2", cone),
        ("electromagnetic energy density", energy_density),
        ("mass addition", mass_addition),
        ("not precomplete", not_precomplete),
        ("randomized oracle suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
