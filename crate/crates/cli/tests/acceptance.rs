//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Fixtures are loaded through the same document layer the binary uses, and
//! the reproduction criteria go through `toric_kring::run`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use toric_kring::{fixtures, run, ClassDocument, Command, FanDocument, Request};
use toric_kring_core::laurent::{div_exact_euler, divides_euler, reduce_mod_character};
use toric_kring_core::plp::{from_kclass, to_kclass};
use toric_kring_core::{
    build_gkm, certify_cellular, construct_basis, coordinates, euler, euler_class_at,
    structure_constants, BigInt, CellularCertificate, Fan, GkmGraph, KBasis, KClass, LatticeVector,
    LaurentPoly,
};

type Check = Result<(), String>;

/// Number, description, time limit in seconds, check.
type Criterion<'a> = (u32, &'static str, u64, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn request(command: Command, fan: &str, v: Option<Vec<i64>>) -> Request {
    Request {
        command,
        fan: fan.into(),
        v,
        class: None,
        basis: None,
    }
}

fn fan_from_fixture(name: &str) -> (Fan, LatticeVector) {
    let doc: FanDocument = serde_json::from_str(fixtures::get(name).unwrap()).unwrap();
    let rays = doc
        .rays
        .iter()
        .map(|r| LatticeVector::from_i64s(r))
        .collect();
    let fan = Fan::new(doc.rank, rays, doc.max_cones).unwrap();
    (fan, LatticeVector::from_i64s(&doc.v.unwrap()))
}

fn class_from_fixture(name: &str) -> Vec<LaurentPoly> {
    let doc: ClassDocument = serde_json::from_str(fixtures::get(name).unwrap()).unwrap();
    doc.to_polys().unwrap()
}

struct Ex6 {
    fan: Fan,
    cert: CellularCertificate,
    g: GkmGraph,
    basis: KBasis,
    printed: Vec<KClass>,
}

fn ex6() -> Ex6 {
    let (fan, v) = fan_from_fixture("ex6");
    let cert = certify_cellular(&fan, &v).unwrap();
    let g = build_gkm(&fan, &cert).unwrap();
    let basis = construct_basis(&g, &cert).unwrap();
    let printed = (1..=5)
        .map(|i| g.kclass(class_from_fixture(&format!("ex6_f{i}"))).unwrap())
        .collect();
    Ex6 {
        fan,
        cert,
        g,
        basis,
        printed,
    }
}

fn cone_rays(v: &Value) -> Vec<Vec<i64>> {
    serde_json::from_value(v.clone()).unwrap()
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    rank: usize,
    radius: i64,
    coeff: i64,
    terms: usize,
) -> LaurentPoly {
    let n = rng.gen_range(0..=terms);
    let mut p = LaurentPoly::zero(rank);
    for _ in 0..n {
        let u: Vec<i64> = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
        let c = rng.gen_range(-coeff..=coeff);
        p = &p + &LaurentPoly::term(LatticeVector::from_i64s(&u), BigInt::from(c));
    }
    p
}

fn random_character(rng: &mut ChaCha8Rng, rank: usize, radius: i64) -> LatticeVector {
    loop {
        let u: Vec<i64> = (0..rank).map(|_| rng.gen_range(-radius..=radius)).collect();
        if let Ok(p) = LatticeVector::from_i64s(&u).primitive() {
            return p;
        }
    }
}

fn criterion_1() -> Check {
    let out =
        run(&request(Command::Cellular, "ex36", Some(vec![5, 1]))).map_err(|e| e.to_string())?;
    ensure(out.exit_code == 0, || format!("exit {}", out.exit_code))?;
    let p = &out.document.payload;
    ensure(p["order"] == json!([1, 2, 3]), || {
        format!("order {}", p["order"])
    })?;
    let taus: Vec<Vec<Vec<i64>>> = (0..3).map(|i| cone_rays(&p["cones"][i]["tau"])).collect();
    let expect = vec![vec![], vec![vec![2, 1]], vec![vec![0, 1]]];
    ensure(taus == expect, || format!("tau {taus:?}"))
}

fn criterion_2() -> Check {
    let out = run(&request(Command::Cellular, "rem37", None)).map_err(|e| e.to_string())?;
    ensure(out.exit_code == 3, || format!("exit {}", out.exit_code))?;
    let p = &out.document.payload;
    ensure(out.document.kind == "rejection", || {
        out.document.kind.clone()
    })?;
    ensure(p["reason"] == "non-smooth quotient cone", || {
        format!("reason {}", p["reason"])
    })?;
    ensure(p["cone"] == 2, || format!("cone {}", p["cone"]))?;
    ensure(p["tau"] == json!([]), || format!("tau {}", p["tau"]))
}

fn criterion_3() -> Check {
    let out =
        run(&request(Command::Cellular, "ex38", Some(vec![4, 3, 1]))).map_err(|e| e.to_string())?;
    ensure(out.exit_code == 0, || format!("exit {}", out.exit_code))?;
    let p = &out.document.payload;
    ensure(p["order"] == json!((1..=9).collect::<Vec<_>>()), || {
        format!("order {}", p["order"])
    })?;
    let m = [-1, -1, -1];
    let expect: Vec<Vec<[i64; 3]>> = vec![
        vec![],
        vec![[0, 1, 1]],
        vec![[1, 0, 1]],
        vec![[0, 0, 1]],
        vec![m],
        vec![[1, 0, 1], m],
        vec![[0, 0, 1], m],
        vec![[0, 1, 1], m],
        vec![[0, 0, 1], [0, 1, 1], m],
    ];
    for (i, want) in expect.iter().enumerate() {
        let mut got = cone_rays(&p["cones"][i]["tau"]);
        let mut want: Vec<Vec<i64>> = want.iter().map(|r| r.to_vec()).collect();
        got.sort();
        want.sort();
        ensure(got == want, || format!("tau_{} = {got:?}", i + 1))?;
    }
    // σ4 is not simplicial, but its image modulo τ4 = <e3> is a smooth 2-cone
    let c4 = &p["cones"][3];
    ensure(cone_rays(&c4["rays"]).len() == 4, || {
        "sigma_4 should have 4 rays".into()
    })?;
    ensure(
        c4["cell_dim"] == 2 && c4["cell_characters"].as_array().map(Vec::len) == Some(2),
        || format!("sigma_4 quotient {c4}"),
    )
}

fn criterion_4() -> Check {
    let (fan, v) = fan_from_fixture("ex6");
    let cert = certify_cellular(&fan, &v).map_err(|e| e.to_string())?;
    let g = build_gkm(&fan, &cert).map_err(|e| e.to_string())?;
    let mut got: Vec<(usize, usize, Vec<i64>)> = g
        .edges()
        .iter()
        .map(|e| {
            let chi = e
                .chi
                .entries()
                .iter()
                .map(|x| i64::try_from(x).unwrap())
                .collect();
            (e.i + 1, e.j + 1, chi)
        })
        .collect();
    got.sort();
    let expect = vec![
        (1, 2, vec![1, -4]),
        (1, 4, vec![0, 1]),
        (2, 3, vec![1, -2]),
        (3, 5, vec![1, 0]),
        (4, 5, vec![1, -1]),
    ];
    ensure(got == expect, || format!("edges {got:?}"))
}

fn criterion_5(e: &Ex6) -> Check {
    for i in 0..5 {
        let raw = class_from_fixture(&format!("ex6_f{}", i + 1));
        let m = e.g.is_member(&raw).map_err(|e| e.to_string())?;
        ensure(m.violated.is_empty(), || {
            format!("f{} violates {:?}", i + 1, m.violated)
        })?;
        for (k, rk) in raw.iter().enumerate() {
            if e.cert.position[k] > e.cert.position[i] {
                ensure(rk.is_zero(), || format!("f{} nonzero at x{}", i + 1, k + 1))?;
            }
        }
        // diagonal oracle: product of 1 - e^u over the cell characters
        let mut diag = LaurentPoly::one(2);
        for u in &e.cert.cell_characters[i] {
            diag = &diag * &(&LaurentPoly::one(2) - &LaurentPoly::monomial(u.clone()));
        }
        ensure(raw[i] == diag, || format!("f{} diagonal {}", i + 1, raw[i]))?;
        ensure(raw[i] == euler_class_at(&e.cert, i), || {
            format!("f{} euler class", i + 1)
        })?;
    }
    Ok(())
}

fn criterion_6(e: &Ex6) -> Check {
    let pos = &e.cert.position;
    for (i, f) in e.printed.iter().enumerate() {
        let c =
            coordinates(&e.g, &e.cert, &e.basis, f).map_err(|err| format!("f{}: {err}", i + 1))?;
        for (j, cj) in c.iter().enumerate() {
            if pos[j] > pos[i] {
                ensure(cj.is_zero(), || {
                    format!("f{} has coefficient {cj} on b{}", i + 1, j + 1)
                })?;
            }
        }
        ensure(c[i].is_one(), || {
            format!("f{} diagonal coefficient {}", i + 1, c[i])
        })?;
        // oracle: re-evaluate the combination pointwise
        for k in 0..5 {
            let mut sum = LaurentPoly::zero(2);
            for (j, cj) in c.iter().enumerate() {
                sum = &sum + &(cj * &e.basis.classes()[j].components()[k]);
            }
            ensure(sum == f.components()[k], || {
                format!("f{} at x{}", i + 1, k + 1)
            })?;
        }
    }
    Ok(())
}

fn criterion_7(e: &Ex6) -> Check {
    let sc = structure_constants(&e.g, &e.cert, &e.basis).map_err(|err| err.to_string())?;
    let b = e.basis.classes();
    let mut pairs = 0;
    for i in 0..5 {
        for j in i..5 {
            pairs += 1;
            for k in 0..5 {
                let lhs = &b[i].components()[k] * &b[j].components()[k];
                let mut rhs = LaurentPoly::zero(2);
                for (p, bp) in b.iter().enumerate() {
                    rhs = &rhs + &(&sc.get(i, j, p) * &bp.components()[k]);
                }
                ensure(lhs == rhs, || {
                    format!("pair ({},{}) at x{}", i + 1, j + 1, k + 1)
                })?;
            }
        }
    }
    ensure(pairs == 15, || format!("{pairs} pairs"))
}

fn criterion_8(e: &Ex6) -> Check {
    ensure(e.basis.len() == e.fan.max_cones().len(), || {
        format!("basis size {}", e.basis.len())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..100 {
        let coeffs: Vec<LaurentPoly> = (0..5).map(|_| random_poly(&mut rng, 2, 3, 5, 4)).collect();
        let f = e.basis.combine(&coeffs).map_err(|err| err.to_string())?;
        let back = coordinates(&e.g, &e.cert, &e.basis, &f)
            .map_err(|err| format!("case {case}: {err}"))?;
        ensure(back == coeffs, || {
            format!("case {case}: {coeffs:?} -> {back:?}")
        })?;
    }
    Ok(())
}

fn random_member(rng: &mut ChaCha8Rng, e: &Ex6) -> KClass {
    let b = e.basis.classes();
    match rng.gen_range(0..3) {
        0 => e.g.from_rep(&random_poly(rng, 2, 3, 5, 4)),
        1 => b[rng.gen_range(0..5)]
            .scale(&random_poly(rng, 2, 2, 3, 3))
            .unwrap(),
        _ => b[rng.gen_range(0..5)].mul(&b[rng.gen_range(0..5)]).unwrap(),
    }
}

fn criterion_9(e: &Ex6) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..50 {
        let a = random_member(&mut rng, e);
        let p = from_kclass(&e.g, &e.fan, &a).map_err(|err| format!("case {case}: {err}"))?;
        let back = to_kclass(&e.g, &e.fan, &p).map_err(|err| err.to_string())?;
        ensure(back == a, || format!("round trip case {case}"))?;
    }
    for case in 0..25 {
        let a = random_member(&mut rng, e);
        let b = random_member(&mut rng, e);
        let lhs = from_kclass(&e.g, &e.fan, &a.mul(&b).unwrap()).map_err(|err| err.to_string())?;
        let pa = from_kclass(&e.g, &e.fan, &a).unwrap();
        let pb = from_kclass(&e.g, &e.fan, &b).unwrap();
        ensure(lhs == pa.mul(&pb).unwrap(), || {
            format!("product case {case}")
        })?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..1000 {
        let n = rng.gen_range(1..=3);
        let chi = random_character(&mut rng, n, 4);
        let g = random_poly(&mut rng, n, 4, 5, 5);
        let f = &g * &euler(&chi);
        let q = div_exact_euler(&f, &chi).map_err(|err| format!("case {case}: {err}"))?;
        ensure(&q * &euler(&chi) == f, || {
            format!("reconstruction case {case}")
        })?;
    }
    for case in 0..1000 {
        let n = rng.gen_range(1..=3);
        let chi = random_character(&mut rng, n, 4);
        let a = random_poly(&mut rng, n, 4, 5, 5);
        let b = random_poly(&mut rng, n, 4, 5, 5);
        let r = |p: &LaurentPoly| reduce_mod_character(p, &chi).unwrap();
        ensure(r(&(&a + &b)) == r(&a).checked_add(&r(&b)).unwrap(), || {
            format!("sum case {case}")
        })?;
        ensure(r(&(&a * &b)) == r(&a).checked_mul(&r(&b)).unwrap(), || {
            format!("product case {case}")
        })?;
        let one = r(&LaurentPoly::one(n));
        ensure(one.poly().is_one(), || format!("unit case {case}"))?;
    }
    for case in 0..1000 {
        let n = rng.gen_range(1..=3);
        let chi = random_character(&mut rng, n, 4);
        let neg = chi.scaled(&BigInt::from(-1));
        let f = if rng.gen_bool(0.5) {
            &random_poly(&mut rng, n, 4, 5, 5) * &euler(&chi)
        } else {
            random_poly(&mut rng, n, 4, 5, 5)
        };
        let plus = divides_euler(&f, &chi).unwrap();
        let minus = divides_euler(&f, &neg).unwrap();
        ensure(plus == minus, || format!("sign case {case}"))?;
        // oracle: divisibility by 1 - e^χ means the exact quotient exists
        ensure(plus == div_exact_euler(&f, &chi).is_ok(), || {
            format!("quotient case {case}")
        })?;
    }
    Ok(())
}

fn criterion_11() -> Check {
    let (ex6, _) = fan_from_fixture("ex6");
    let (ex36, _) = fan_from_fixture("ex36");
    let (ex38, _) = fan_from_fixture("ex38");
    ensure(ex6.is_complete(), || "ex6 not complete".into())?;
    ensure(!ex36.is_complete(), || "ex36 complete".into())?;
    ensure(ex38.is_complete(), || "ex38 not complete".into())?;
    for (name, f) in [("ex6", &ex6), ("ex38", &ex38)] {
        ensure(f.stars_strongly_connected(), || format!("{name} stars"))?;
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let e = ex6();
    let setup = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        (1, "ex36 certificate, v = (5,1)", 1, Box::new(criterion_1)),
        (2, "rem37 rejected at sigma_2", 1, Box::new(criterion_2)),
        (3, "ex38 certificate, v = (4,3,1)", 2, Box::new(criterion_3)),
        (4, "ex6 GKM edges", 1, Box::new(criterion_4)),
        (5, "printed basis f1..f5", 1, Box::new(|| criterion_5(&e))),
        (
            6,
            "unitriangular change of basis",
            5,
            Box::new(|| criterion_6(&e)),
        ),
        (
            7,
            "structure constants, 15 pairs",
            10,
            Box::new(|| criterion_7(&e)),
        ),
        (
            8,
            "rank m and coordinates round trip",
            30,
            Box::new(|| criterion_8(&e)),
        ),
        (
            9,
            "piecewise Laurent round trip",
            30,
            Box::new(|| criterion_9(&e)),
        ),
        (10, "Laurent kernel properties", 30, Box::new(criterion_10)),
        (
            11,
            "completeness and strongly connected stars",
            1,
            Box::new(criterion_11),
        ),
    ];

    let mut failed = Vec::new();
    for (n, name, limit, check) in &criteria {
        let t = Instant::now();
        let mut result = check();
        let elapsed = t.elapsed()
            + if (5..=9).contains(n) {
                setup
            } else {
                Duration::ZERO
            };
        if result.is_ok() && elapsed > Duration::from_secs(*limit) {
            result = Err(format!("took {elapsed:?}, limit {limit}s"));
        }
        match result {
            Ok(()) => println!("PASS criterion {n}: {name} ({} ms)", elapsed.as_millis()),
            Err(why) => {
                println!("FAIL criterion {n}: {name}: {why}");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
