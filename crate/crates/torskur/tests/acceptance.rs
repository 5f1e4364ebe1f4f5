//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use serde_json::Value;
use torskur::demazure::demazure_suite;
use torskur::klr::{self, KlrConfig};
use torskur::phi;
use torskur::report::{Report, Status};
use torskur::schur::{psi_basis_suite, schur_suite};
use torskur::wreath::{self, graded_dimension_check, tau_vs_crossing, trivial_f, zigzag_f};

fn combine(name: &str, parts: Vec<Report>) -> Report {
    let mut r = Report::new(name);
    for p in parts {
        r.extend(p);
    }
    r
}

fn criterion_1() -> Report {
    demazure_suite(4, 6)
}

fn criterion_2() -> Report {
    schur_suite(4, 8)
}

fn criterion_3() -> Report {
    psi_basis_suite(3, 6)
}

fn criterion_4() -> Report {
    let mut parts = Vec::new();
    for n in 1..=4 {
        parts.push(wreath::relation_suite(n, trivial_f(), 8));
        parts.push(wreath::relation_suite(n, zigzag_f(), 8));
    }
    for n in 1..=2 {
        parts.push(graded_dimension_check(n, trivial_f(), 8));
        parts.push(graded_dimension_check(n, zigzag_f(), 8));
    }
    combine("wreath", parts)
}

fn criterion_5() -> Report {
    let mut r = Report::new("tau-crossing");
    for n in 1..=3 {
        r.run(format!("n{n}"), || tau_vs_crossing(n, 8).map(|_| None));
    }
    r
}

fn criterion_6() -> Report {
    let cfg = KlrConfig::default();
    let mut parts = Vec::new();
    for m in 1..=4 {
        for n0 in 0..=m {
            parts.push(klr::relation_suite(n0, m - n0, 6, cfg));
        }
    }
    for n in 1..=4 {
        parts.push(klr::divided_suite(n, 3));
    }
    for m in 1..=3 {
        for n0 in 0..=m {
            parts.push(klr::thin_basis_suite(n0, m - n0, 6, cfg));
        }
    }
    combine("klr", parts)
}

fn criterion_7() -> Report {
    let cfg = KlrConfig::default();
    let mut r = klr::thick_suite(3, 6, cfg);
    for n in 2..=3 {
        r.run(format!("phi-intertwining/n{n}"), || phi::intertwining(n, 3, cfg).map(|k| Some(k.into())));
    }
    r
}

fn criterion_8() -> Report {
    phi::shuffle_suite(4, 8)
}

fn criterion_9() -> Report {
    phi::chern_checks()
}

fn criterion_10() -> Report {
    phi::lattice_suite(2, 6)
}

fn criterion_11() -> Report {
    let mut r = Report::new("fp");
    r.run("f2-kernel", || phi::f2_kernel_check().map(Some));
    r.run("split-kills-2c1c2", || phi::split_kills_2c1c2().map(Some));
    for p in [3, 5, 7] {
        r.run(format!("generation/p{p}"), || phi::generation_mod_p(p, 8).map(Some));
    }
    r
}

fn criterion_12() -> Report {
    let mut r = Report::new("im-phi-basis");
    for n in 1..=3 {
        for d in (0..=8).step_by(2) {
            r.run(format!("n{n}/deg{d}"), || phi::im_phi_basis_check(n, d).map(Some));
        }
    }
    r
}

fn well_formed(v: &Value) -> Result<(), String> {
    let checks = v["checks"].as_array().ok_or("no checks array")?;
    if checks.is_empty() {
        return Err("empty report".into());
    }
    for c in checks {
        let id = c["id"].as_str().ok_or("check without id")?;
        let status = c["status"].as_str().ok_or("check without status")?;
        if !["pass", "fail", "inconclusive"].contains(&status) {
            return Err(format!("{id}: unknown status {status}"));
        }
        if status != "pass" && c.get("witness").is_none() {
            return Err(format!("{id}: {status} without witness"));
        }
        if status == "pass" {
            let d = &c["detail"];
            for key in ["operators", "rank_z", "rank_mod_p", "candidate"] {
                if d.get(key).is_none() {
                    return Err(format!("{id}: detail lacks {key}"));
                }
            }
        }
    }
    if v["parameters"]["note"] != "experimental evidence only" {
        return Err("report is not labelled as experimental evidence".into());
    }
    Ok(())
}

fn criterion_13() -> Report {
    let mut r = Report::new("conjecture-probe");
    for p in [2, 3, 5] {
        r.run(format!("p{p}"), || {
            let first = phi::conjecture_probe(2, 6, p).to_json();
            let second = phi::conjecture_probe(2, 6, p).to_json();
            if first != second {
                return Err("two runs differ".into());
            }
            let v: Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
            well_formed(&v)?;
            let candidates = v["checks"].as_array().unwrap().iter().filter(|c| c["detail"]["candidate"] == true).count();
            Ok(Some(serde_json::json!({"checks": v["checks"].as_array().unwrap().len(), "rank_drop_candidates": candidates})))
        });
    }
    r
}

fn main() {
    let criteria: [(&str, fn() -> Report); 13] = [
        ("Demazure relations and the block formula", criterion_1),
        ("curve Schur associativity, n = 2 relations, thin merge", criterion_2),
        ("Psi basis rank", criterion_3),
        ("wreath and zigzag relations, graded dimensions", criterion_4),
        ("tau = R(s) - 1", criterion_5),
        ("KLR relations, divided idempotents, thin basis", criterion_6),
        ("thick calculus and Phi-intertwining", criterion_7),
        ("shuffle identities", criterion_8),
        ("Kunneth-Chern numbers", criterion_9),
        ("lattices", criterion_10),
        ("F_p phenomena", criterion_11),
        ("Im phi basis", criterion_12),
        ("conjecture probe report", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let rep = run();
        let secs = start.elapsed().as_secs_f64();
        let status = rep.status();
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let extra = rep.first_failure().map(|c| format!(" [{}: {}]", c.id, c.witness.clone().unwrap_or_default())).unwrap_or_default();
        println!("criterion {:>2} {tag:<12} {name} ({} checks, {secs:.1}s){extra}", i + 1, rep.checks.len());
        if status != Status::Pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria did not pass");
        std::process::exit(1);
    }
    println!("all 13 criteria pass");
}
