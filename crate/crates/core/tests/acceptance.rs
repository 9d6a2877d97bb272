//! Acceptance suite: one PASS/FAIL line per criterion, with timing against
//! its runtime limit. Exits non-zero when any criterion fails.
//!
//! `cargo test --test acceptance -- 4 7` runs only criteria 4 and 7.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hilbasis::caratheodory::{
    cr_box, d_membership, decompose_face_descent, decompose_lp_rounding, density, par_map_with,
    verify_decomposition, DescentAction,
};
use hilbasis::exactlin::{
    delta_modulus, dot, gcd_max_minors, hermite, int_vec, is_zero_vec, smith, IntMatrix, IntVector,
};
use hilbasis::geometry::{
    cone_face_projection, extreme_rays, lattice_points, projected_cone_matrix, unit_parallelepiped,
    ConeH,
};
use hilbasis::hilbert::{
    candidate_box_radius, cone_box_points, hilbert_basis, is_irreducible, pigeonhole_point,
    HilbertBasis,
};
use hilbasis::instances::{
    random_bimodular, random_cone, random_cone_point, random_matrix, random_simplicial, seeded,
};
use hilbasis::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn basis_of(a: &IntMatrix) -> Result<HilbertBasis, String> {
    let cone = ConeH::new(a.clone()).map_err(|e| e.to_string())?;
    hilbert_basis(&cone).map_err(|e| e.to_string())
}

fn remark_fixture() -> Outcome {
    let a = IntMatrix::from_i64(&[&[1, 0], &[2, 3]]);
    let delta = delta_modulus(&a).map_err(|e| e.to_string())?;
    ensure!(delta == BigInt::from(3), "delta = {delta}");

    let hb = basis_of(&a)?;
    let expected: Vec<IntVector> = [[0, 1], [1, 0], [2, -1], [3, -2]]
        .iter()
        .map(|v| int_vec(v))
        .collect();
    ensure!(
        hb.elements() == expected.as_slice(),
        "basis = {:?}",
        hb.elements()
    );

    let p1 = unit_parallelepiped(&a).map_err(|e| e.to_string())?;
    let pts = lattice_points(&p1).map_err(|e| e.to_string())?;
    ensure!(pts == vec![int_vec(&[0, 0])], "P_1 points = {pts:?}");

    let (_, trace) = decompose_face_descent(&a, &int_vec(&[7, -3])).map_err(|e| e.to_string())?;
    let first = trace.steps.first().ok_or("empty trace")?;
    ensure!(
        first.action == DescentAction::Stuck && first.dim_after == 2,
        "first step = {:?}",
        first.action
    );
    Ok("delta 3, 4 basis elements, P_1 = {0}, stuck at the interior step".into())
}

fn bimodular_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0003);
    let mut points = 0;
    let mut max_len = 0;
    for i in 0..100 {
        let n = 2 + i % 4;
        let m = n + rng.gen_range(0..=3);
        let a = random_bimodular(&mut rng, n, m);
        let hb = basis_of(&a)?;
        for _ in 0..10 {
            let z = random_cone_point(&mut rng, &a, 50);
            let (d, _) = match decompose_face_descent(&a, &z) {
                Ok(r) => r,
                Err(Error::Stuck { dim, .. }) => {
                    return Err(format!("stuck in dim {dim} on {a:?}, z = {z:?}"))
                }
                Err(e) => return Err(e.to_string()),
            };
            ensure!(
                d.length() <= n,
                "length {} > n = {n} for z = {z:?}",
                d.length()
            );
            let v = verify_decomposition(&d, &hb);
            ensure!(
                v.valid,
                "invalid decomposition of {z:?}: {:?}",
                v.diagnostics
            );
            points += 1;
            max_len = max_len.max(d.length());
        }
    }
    Ok(format!("{points} points, max length {max_len}"))
}

fn simplicial_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0004);
    let mut points = 0;
    let mut closed_by_oracle = 0;
    let mut by_regime = [0usize; 2];
    for i in 0..50 {
        let n = 4 + i % 3;
        let delta = if i % 2 == 0 || n < 5 {
            rng.gen_range(1..=4u64)
        } else {
            rng.gen_range(5..=n as u64)
        };
        let a = random_simplicial(&mut rng, n, delta);
        let bound = if delta <= 4 {
            n
        } else {
            n + delta as usize - 3
        };
        by_regime[usize::from(delta >= 5)] += 1;
        let cone = ConeH::new(a.clone()).map_err(|e| e.to_string())?;
        let mut irreducible: HashSet<IntVector> = HashSet::new();
        for _ in 0..5 {
            let z = random_cone_point(&mut rng, &a, 50);
            let (d, trace) =
                decompose_face_descent(&a, &z).map_err(|e| format!("{e} on {a:?}, z = {z:?}"))?;
            closed_by_oracle += usize::from(trace.got_stuck());
            ensure!(
                d.length() <= bound,
                "length {} > {bound} (delta {delta})",
                d.length()
            );
            ensure!(d.evaluate() == z, "sum mismatch for {z:?}");
            for (h, k) in &d.terms {
                ensure!(k.is_positive(), "multiplicity {k}");
                if !irreducible.contains(h) {
                    ensure!(
                        is_irreducible(h, &cone).unwrap_or(false),
                        "{h:?} is not a Hilbert basis element"
                    );
                    irreducible.insert(h.clone());
                }
            }
            points += 1;
        }
    }
    Ok(format!(
        "{points} points ({closed_by_oracle} closed by the oracle); {} matrices with delta <= 4, {} with delta >= 5",
        by_regime[0], by_regime[1]
    ))
}

fn lp_rounding_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0001);
    let mut cones = Vec::new();
    while cones.len() < 20 {
        let n = 2 + cones.len() % 2;
        let m = n + rng.gen_range(0..=1);
        let a = random_cone(&mut rng, n, m, 2, 4);
        let hb = basis_of(&a)?;
        if hb.len() <= 6 {
            cones.push(hb);
        }
    }
    let mut in_d = 0;
    let mut checked = 0;
    for hb in &cones {
        let n = hb.dim();
        let pts = cone_box_points(hb.cone(), 20);
        checked += pts.len();
        let results = par_map_with(
            &pts,
            threads(),
            || (),
            |_, b| -> Result<bool, String> {
                let rep = d_membership(b, hb).map_err(|e| e.to_string())?;
                if rep.in_d != Some(true) {
                    return Ok(false);
                }
                ensure!(
                    rep.vertex_multipliers_ok,
                    "{b:?} in D but vertex multipliers below delta_H"
                );
                let (d, _) = decompose_lp_rounding(b, hb).map_err(|e| e.to_string())?;
                ensure!(d.length() <= 3 * n / 2, "length {} for {b:?}", d.length());
                let v = verify_decomposition(&d, hb);
                ensure!(
                    v.valid,
                    "invalid decomposition of {b:?}: {:?}",
                    v.diagnostics
                );
                Ok(true)
            },
        );
        for r in results {
            in_d += usize::from(r?);
        }
    }
    Ok(format!("{checked} cone points, {in_d} in D"))
}

fn icp_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0005);
    let mut worst = [0usize; 4];
    for i in 0..50 {
        let n = 2 + i % 2;
        let m = n + rng.gen_range(0..=2);
        let a = random_cone(&mut rng, n, m, 3, 6);
        let hb = basis_of(&a)?;
        let cr = cr_box(&hb, 6, threads()).map_err(|e| e.to_string())?;
        ensure!(
            cr.value <= n,
            "sigma {} > n = {n} at {:?}",
            cr.value,
            cr.argmax
        );
        ensure!(
            cr.value <= 2 * n - 2,
            "sigma {} > 2n - 2 at {:?}",
            cr.value,
            cr.argmax
        );
        worst[n] = worst[n].max(cr.value);
    }
    Ok(format!(
        "max sigma {} in dim 2, {} in dim 3",
        worst[2], worst[3]
    ))
}

fn pigeonhole_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0006);
    for i in 0..200 {
        let n = 1 + i % 6;
        let delta = rng.gen_range(1..=n as u64);
        let a = random_simplicial(&mut rng, n, delta);
        let h = pigeonhole_point(&a).map_err(|e| e.to_string())?;
        ensure!(!is_zero_vec(&h), "zero point for {a:?}");
        let ah = a.mul_vec(&h);
        ensure!(
            ah.iter().all(|v| !v.is_negative() && *v <= BigInt::one()),
            "A h = {ah:?} outside [0, 1]"
        );
        let p1 = unit_parallelepiped(&a).map_err(|e| e.to_string())?;
        let pts = lattice_points(&p1).map_err(|e| e.to_string())?;
        ensure!(
            pts.contains(&h),
            "{h:?} not among the lattice points of P_1"
        );
    }
    Ok("200 matrices".into())
}

fn face_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0007);
    let mut slice_points = 0;
    let mut done = 0;
    while done < 100 {
        let n = 2 + done % 3;
        let m = n + rng.gen_range(0..=2);
        let a = random_cone(&mut rng, n, m, 2, 6);
        let rays = extreme_rays(&a).map_err(|e| e.to_string())?;
        let chosen: Vec<&IntVector> = rays.iter().filter(|_| rng.gen_bool(0.5)).collect();
        let mut p = vec![BigInt::zero(); n];
        for r in &chosen {
            for (pi, ri) in p.iter_mut().zip(r.iter()) {
                *pi += ri;
            }
        }
        let face: Vec<usize> = (0..m).filter(|&i| dot(a.row(i), &p).is_zero()).collect();
        if face.is_empty() || is_zero_vec(&p) {
            continue;
        }
        let cone = ConeH::new(a.clone()).map_err(|e| e.to_string())?;
        let fp = cone_face_projection(&cone, &face)
            .map_err(|e| format!("{e} for {a:?}, face {face:?}"))?;
        let projected = projected_cone_matrix(&fp);

        let a_i = a.select_rows(&face);
        let g: BigInt = smith(&a_i)
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .product();
        let bound = delta_modulus(&a).map_err(|e| e.to_string())? / &g;
        if projected.rows() > 0 {
            let got = delta_modulus(&projected).map_err(|e| e.to_string())?;
            ensure!(got <= bound, "projected modularity {got} > {bound}");
        }

        for x in cone_box_points(&cone, 5) {
            if face.iter().any(|&i| !dot(a.row(i), &x).is_zero()) {
                continue;
            }
            let y = fp.project(&x).map_err(|e| e.to_string())?;
            let back = fp.lift_point(&y).map_err(|e| e.to_string())?;
            ensure!(back == x, "lift(project({x:?})) = {back:?}");
            slice_points += 1;
        }
        done += 1;
    }
    Ok(format!(
        "100 faces, {slice_points} slice points round-tripped"
    ))
}

fn algebra_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0008);
    let mut hnf = 0;
    for _ in 0..500 {
        let r = rng.gen_range(1..=6);
        let c = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, r, c, 9);

        let s = smith(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.d, "U A V != D for {a:?}");
        ensure!(
            s.u.det().map_err(|e| e.to_string())?.abs().is_one(),
            "U not unimodular"
        );
        ensure!(
            s.v.det().map_err(|e| e.to_string())?.abs().is_one(),
            "V not unimodular"
        );
        let diag = s.diagonal();
        for w in diag.windows(2) {
            ensure!(
                w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()),
                "divisibility chain broken: {diag:?}"
            );
        }
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || s.d[(i, j)].is_zero(), "D not diagonal");
            }
        }

        if r <= c && a.rank() == r {
            let h = hermite(&a).map_err(|e| e.to_string())?;
            ensure!(h.u.mul(&h.u_inv) == IntMatrix::identity(c), "U U^-1 != I");
            let au = a.mul(&h.u_inv);
            for i in 0..r {
                for j in 0..c {
                    let want = if j < r {
                        h.h[(i, j)].clone()
                    } else {
                        BigInt::zero()
                    };
                    ensure!(au[(i, j)] == want, "A U^-1 != (H, 0) for {a:?}");
                }
                ensure!(h.h[(i, i)].is_positive(), "non-positive pivot");
                for j in 0..i {
                    ensure!(
                        !h.h[(i, j)].is_negative() && h.h[(i, j)] < h.h[(i, i)],
                        "entry left of pivot not reduced"
                    );
                }
                for j in i + 1..r {
                    ensure!(h.h[(i, j)].is_zero(), "H not lower triangular");
                }
            }
            let det = h.h.det().map_err(|e| e.to_string())?.abs();
            let g = gcd_max_minors(&a).map_err(|e| e.to_string())?;
            ensure!(det == g, "|det H| = {det} but gcd of maximal minors = {g}");
            hnf += 1;
        }
    }
    Ok(format!("500 Smith forms, {hnf} Hermite forms"))
}

/// Irreducible points of `C ∩ [-δ, δ]^n` by increasing degree: a point is
/// reducible iff it dominates an already accepted irreducible point.
fn box_oracle_basis(cone: &ConeH) -> Vec<IntVector> {
    let radius = i64::try_from(candidate_box_radius(cone)).expect("small radius");
    let mut pts: Vec<(BigInt, IntVector)> = cone_box_points(cone, radius)
        .into_iter()
        .filter(|x| !is_zero_vec(x))
        .map(|x| (cone.degree(&x), x))
        .collect();
    pts.sort();
    let mut basis: Vec<IntVector> = Vec::new();
    for (_, x) in pts {
        let reducible = basis.iter().any(|h| {
            let rest: IntVector = x.iter().zip(h).map(|(a, b)| a - b).collect();
            cone.contains(&rest)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

fn hilbert_oracle_suite() -> Outcome {
    let mut rng = seeded(0x5eed_0009);
    let mut sizes = 0;
    for i in 0..25 {
        let n = 2 + i % 2;
        let m = n + rng.gen_range(0..=2);
        let a = random_cone(&mut rng, n, m, 2, 4);
        let cone = ConeH::new(a.clone()).map_err(|e| e.to_string())?;
        let hb = hilbert_basis(&cone).map_err(|e| e.to_string())?;
        let oracle = box_oracle_basis(&cone);
        ensure!(
            hb.elements() == oracle.as_slice(),
            "{a:?}: basis {:?} vs oracle {oracle:?}",
            hb.elements()
        );
        sizes += hb.len();
    }
    Ok(format!("25 cones, {sizes} basis elements in total"))
}

fn density_suite() -> Outcome {
    let quadrant = basis_of(&IntMatrix::identity(2))?;
    for row in density(&quadrant, 2, &[2, 4, 8], threads()).map_err(|e| e.to_string())? {
        ensure!(
            row.fraction.is_one(),
            "quadrant density {} at delta {}",
            row.fraction,
            row.delta
        );
    }
    let remark = basis_of(&IntMatrix::from_i64(&[&[1, 0], &[2, 3]]))?;
    let rows = density(&remark, 1, &[8], threads()).map_err(|e| e.to_string())?;
    let f = &rows[0].fraction;
    ensure!(*f < num_rational::BigRational::one(), "remark density {f}");
    Ok(format!(
        "quadrant 1 at 2, 4, 8; remark {}/{} at 8",
        f.numer(),
        f.denom()
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "remark-fixture",
            limit: Duration::from_secs(1),
            run: remark_fixture,
        },
        Criterion {
            id: 2,
            name: "bimodular-descent",
            limit: Duration::from_secs(120),
            run: bimodular_suite,
        },
        Criterion {
            id: 3,
            name: "simplicial-descent",
            limit: Duration::from_secs(300),
            run: simplicial_suite,
        },
        Criterion {
            id: 4,
            name: "lp-rounding-on-d",
            limit: Duration::from_secs(300),
            run: lp_rounding_suite,
        },
        Criterion {
            id: 5,
            name: "low-dimensional-icp",
            limit: Duration::from_secs(300),
            run: icp_suite,
        },
        Criterion {
            id: 6,
            name: "pigeonhole-point",
            limit: Duration::from_secs(60),
            run: pigeonhole_suite,
        },
        Criterion {
            id: 7,
            name: "face-projection",
            limit: Duration::from_secs(120),
            run: face_suite,
        },
        Criterion {
            id: 8,
            name: "normal-forms",
            limit: Duration::from_secs(60),
            run: algebra_suite,
        },
        Criterion {
            id: 9,
            name: "hilbert-box-oracle",
            limit: Duration::from_secs(300),
            run: hilbert_oracle_suite,
        },
        Criterion {
            id: 10,
            name: "density-sanity",
            limit: Duration::from_secs(60),
            run: density_suite,
        },
    ];
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failures = 0;
    for c in criteria
        .iter()
        .filter(|c| selected.is_empty() || selected.contains(&c.id))
    {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} {:>2} {:<20} {:>8.2}s / {:>3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
