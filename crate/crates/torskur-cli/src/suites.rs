//! Suite dispatch for `verify` and `report-all`.

use torskur::demazure::demazure_suite;
use torskur::klr::{self, KlrConfig};
use torskur::perm::Composition;
use torskur::phi;
use torskur::report::Report;
use torskur::schur::{psi_basis_suite, schur_suite};
use torskur::wreath::{self, graded_dimension_check, tau_vs_crossing, trivial_f, zigzag_f};

pub const SUITES: &[&str] = &["demazure", "schur", "wreath", "zigzag", "klr", "divided", "thick", "phi", "lattice", "cuspidal", "conjecture"];

pub const MAX_N: usize = 6;
pub const MAX_DEG: usize = 16;

#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub alpha: Option<(usize, usize)>,
    pub deg: Option<usize>,
    pub prime: Option<u64>,
}

fn combine(name: &str, parts: Vec<Report>) -> Report {
    let mut r = Report::new(name);
    for p in parts {
        r.extend(p);
    }
    r
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn check_bounds(p: &Params) -> Result<(), String> {
    if let Some(n) = p.n {
        if n == 0 || n > MAX_N {
            return Err(format!("--n must be between 1 and {MAX_N}"));
        }
    }
    if let Some((a, b)) = p.alpha {
        if a + b == 0 || a + b > MAX_N {
            return Err(format!("--alpha must have total size between 1 and {MAX_N}"));
        }
    }
    if let Some(d) = p.deg {
        if d > MAX_DEG || d % 2 == 1 {
            return Err(format!("--deg must be even and at most {MAX_DEG}"));
        }
    }
    if let Some(q) = p.prime {
        if !is_prime(q) {
            return Err(format!("--prime {q} is not prime"));
        }
    }
    Ok(())
}

fn wreath_suite(name: &str, n: usize, deg: usize, zigzag: bool) -> Report {
    let f = if zigzag { zigzag_f() } else { trivial_f() };
    let deg = deg as u32;
    let mut parts = Vec::new();
    for k in 1..=n {
        parts.push(wreath::relation_suite(k, f.clone(), deg));
    }
    for k in 1..=n.min(2) {
        parts.push(graded_dimension_check(k, f.clone(), deg));
    }
    let mut r = combine(name, parts);
    if zigzag {
        for k in 1..=n.min(3) {
            r.run(format!("tau-crossing/n{k}"), || tau_vs_crossing(k, deg).map(|_| None));
        }
    }
    r
}

fn klr_suite(alphas: &[(usize, usize)], deg: usize) -> Report {
    let cfg = KlrConfig::default();
    let mut parts = Vec::new();
    for &(n0, n1) in alphas {
        parts.push(klr::relation_suite(n0, n1, deg, cfg));
    }
    let mut r = combine("klr", parts);
    for &(n0, n1) in alphas {
        r.run(format!("same-color/a{n0}-{n1}"), || klr::same_color_check(n0, n1, deg / 2, cfg).map(|_| None));
    }
    for &(n0, n1) in alphas.iter().filter(|(a, b)| a + b <= 3) {
        r.extend(klr::thin_basis_suite(n0, n1, deg, cfg));
    }
    r
}

fn all_alphas(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|m| (0..=m).map(move |n0| (n0, m - n0))).collect()
}

fn cuspidal_suite(n: usize, deg: usize) -> Report {
    let cfg = KlrConfig::default();
    let mut r = Report::new("cuspidal");
    for k in 1..=n {
        let comps = Composition::all(k);
        for mu in &comps {
            for lambda in &comps {
                for w in 0..=deg / 2 {
                    r.run(format!("{mu}->{lambda}/w{w}"), || phi::cuspidal_check(mu, lambda, w, cfg).map(Some));
                }
            }
        }
    }
    r
}

/// Run one named suite. Unset parameters fall back to per-suite defaults.
pub fn run(name: &str, p: &Params) -> Result<Report, String> {
    check_bounds(p)?;
    let cfg = KlrConfig::default();
    let n = |d: usize| p.n.unwrap_or(d);
    let deg = |d: usize| p.deg.unwrap_or(d);
    let r = match name {
        "demazure" => demazure_suite(n(4), deg(6)),
        "schur" => {
            let (n, d) = (n(3), deg(6));
            let mut r = schur_suite(n, d);
            r.extend(psi_basis_suite(n.min(3), d.min(6)));
            r
        }
        "wreath" => wreath_suite("wreath", n(3), deg(8), false),
        "zigzag" => wreath_suite("zigzag", n(3), deg(8), true),
        "klr" => {
            let alphas = match p.alpha {
                Some(a) => vec![a],
                None => all_alphas(n(4)),
            };
            klr_suite(&alphas, deg(6))
        }
        "divided" => combine("divided", (1..=n(4)).map(|k| klr::divided_suite(k, deg(6) / 2)).collect()),
        "thick" => {
            let (n, d) = (n(3), deg(6));
            let mut r = klr::thick_suite(n, d, cfg);
            for k in 2..=n {
                r.run(format!("phi-intertwining/n{k}"), || phi::intertwining(k, d / 2, cfg).map(|c| Some(c.into())));
            }
            r
        }
        "phi" => {
            let (n, d) = (n(2), deg(6));
            let mut r = phi::shuffle_suite(n, d);
            r.extend(phi::tilde_schur_suite(n.min(3), d, p.prime, cfg));
            r
        }
        "lattice" => {
            let mut r = phi::lattice_suite(n(2), deg(6));
            r.extend(phi::chern_checks());
            r
        }
        "cuspidal" => cuspidal_suite(n(2), deg(4)),
        "conjecture" => phi::conjecture_probe(n(2), deg(6), p.prime.unwrap_or(2)),
        other => return Err(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))),
    };
    Ok(r.param("cli_n", p.n).param("cli_deg", p.deg))
}

/// Every suite at the acceptance parameters, capped by `max_n` and `max_deg`.
pub fn report_all(max_n: usize, max_deg: usize, prime: Option<u64>) -> Result<Report, String> {
    check_bounds(&Params { n: Some(max_n.max(1)), deg: Some(max_deg), prime, alpha: None })?;
    let cfg = KlrConfig::default();
    let (nn, dd) = (max_n, max_deg);
    let mut parts = vec![
        demazure_suite(nn.min(4), dd.min(6)),
        schur_suite(nn.min(4), dd.min(8)),
        psi_basis_suite(nn.min(3), dd.min(6)),
        wreath_suite("wreath", nn.min(4), dd.min(8), false),
        wreath_suite("zigzag", nn.min(4), dd.min(8), true),
        klr_suite(&all_alphas(nn.min(4)), dd.min(6)),
        combine("divided", (1..=nn.min(4)).map(|k| klr::divided_suite(k, dd.min(6) / 2)).collect()),
    ];
    let mut thick = klr::thick_suite(nn.min(3), dd.min(6), cfg);
    for k in 2..=nn.min(3) {
        thick.run(format!("phi-intertwining/n{k}"), || phi::intertwining(k, dd.min(6) / 2, cfg).map(|c| Some(c.into())));
    }
    parts.push(thick);
    parts.push(phi::shuffle_suite(nn.min(4), dd.min(8)));
    if nn >= 2 {
        parts.push(phi::tilde_schur_suite(2, dd.min(8), prime, cfg));
        parts.push(phi::lattice_suite(2, dd.min(6)));
    }
    parts.push(phi::chern_checks());
    let mut basis = Report::new("im-phi-basis");
    for n in 1..=nn.min(3) {
        for d in (0..=dd.min(8)).step_by(2) {
            basis.run(format!("n{n}/deg{d}"), || phi::im_phi_basis_check(n, d).map(Some));
        }
    }
    parts.push(basis);
    parts.push(cuspidal_suite(nn.min(2), dd.min(4)));
    if nn >= 2 {
        parts.push(phi::conjecture_probe(2, dd.min(6), prime.unwrap_or(2)));
    }
    Ok(combine("all", parts).param("max_n", max_n).param("max_deg", max_deg).param("prime", prime))
}
