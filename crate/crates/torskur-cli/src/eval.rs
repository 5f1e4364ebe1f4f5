//! `torskur eval`: apply an operator word to a polynomial.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use torskur::frobenius::{FrobeniusAlgebra, PnF};
use torskur::klr::{self, KlrConfig, KlrGen, PolAlpha};
use torskur::perm::Composition;
use torskur::phi::{self, ThickPath, ThickStep};
use torskur::poly::{Flavor, Poly, PolyJson, Ring};
use torskur::scalar::Coeff;
use torskur::schur::{self, SchurGenJson};
use torskur::wreath::{self, WreathGen};
use torskur::Error;

#[derive(Debug)]
pub enum EvalError {
    Parse(String),
    Mismatch(String),
    Other(String),
}

impl From<Error> for EvalError {
    fn from(e: Error) -> EvalError {
        match e {
            Error::Parse(_) | Error::Invalid(_) => EvalError::Parse(e.to_string()),
            Error::RingMismatch(_) | Error::SlotMismatch(_) | Error::NotInvariant(_) => EvalError::Mismatch(e.to_string()),
            Error::NotDivisible(_) => EvalError::Other(e.to_string()),
        }
    }
}

impl EvalError {
    pub fn exit_code(&self) -> i32 {
        match self {
            EvalError::Parse(_) => 2,
            EvalError::Mismatch(_) => 3,
            EvalError::Other(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            EvalError::Parse(s) | EvalError::Mismatch(s) | EvalError::Other(s) => s,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Text(String),
    Json(PolyJson),
}

#[derive(Deserialize)]
struct RingSpec {
    flavor: Flavor,
    n: usize,
    #[serde(default)]
    coeff: Option<Coeff>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalInput {
    algebra: String,
    #[serde(default)]
    slot: Option<Vec<usize>>,
    #[serde(default)]
    word: Vec<Value>,
    poly: PolyInput,
    #[serde(default)]
    ring: Option<RingSpec>,
}

#[derive(Deserialize)]
struct ThickStepJson {
    kind: String,
    #[serde(default)]
    pos: usize,
    #[serde(default)]
    a: usize,
    #[serde(default)]
    poly: Option<String>,
}

fn parse<T: for<'de> Deserialize<'de>>(v: &[Value]) -> Result<Vec<T>, EvalError> {
    v.iter().map(|g| serde_json::from_value(g.clone()).map_err(|e| EvalError::Parse(format!("word: {e}")))).collect()
}

fn read_poly(input: &PolyInput, ring: &Option<RingSpec>) -> Result<Poly, EvalError> {
    match input {
        PolyInput::Json(j) => Ok(Poly::from_json(j)?),
        PolyInput::Text(s) => {
            let rs = ring.as_ref().ok_or_else(|| EvalError::Parse("a polynomial given as text needs a \"ring\" field".into()))?;
            let ring = Ring { flavor: rs.flavor, n: rs.n, coeff: rs.coeff.unwrap_or(Coeff::Z) };
            Ok(Poly::parse(ring, s)?)
        }
    }
}

fn poly_out(p: &Poly) -> Value {
    json!({"poly": p.to_json(), "text": p.to_string()})
}

fn slot(input: &EvalInput, n: usize) -> Result<Composition, EvalError> {
    match &input.slot {
        Some(parts) => Ok(Composition::new(parts.clone())?),
        None => Ok(Composition::thin(n)),
    }
}

pub fn eval(text: &str) -> Result<Value, EvalError> {
    let input: EvalInput = serde_json::from_str(text).map_err(|e| EvalError::Parse(e.to_string()))?;
    let p = read_poly(&input.poly, &input.ring)?;
    let n = p.ring().n;
    match input.algebra.as_str() {
        "schur" => {
            let lambda = slot(&input, n)?;
            let gens: Vec<SchurGenJson> = parse(&input.word)?;
            if gens.is_empty() {
                schur::check_slot(&p, &lambda)?;
                let mut out = poly_out(&p);
                out["slot"] = json!(lambda.parts());
                return Ok(out);
            }
            let word = schur::word_from_json(&gens)?;
            if word.source != lambda && input.slot.is_some() {
                return Err(EvalError::Mismatch(format!("word starts at {} but the slot is {lambda}", word.source)));
            }
            let q = word.apply(&p)?;
            let mut out = poly_out(&q);
            out["slot"] = json!(word.target()?.parts());
            Ok(out)
        }
        "zigzag" => {
            if p.ring().flavor != Flavor::Curve {
                return Err(EvalError::Mismatch(format!("zigzag words act on the curve ring, not {}", p.ring())));
            }
            let gens: Vec<WreathGen> = parse(&input.word)?;
            let x = PnF::from_curve(&p, Arc::new(FrobeniusAlgebra::p1()));
            let y = wreath::word_apply(&gens, &x)?;
            Ok(poly_out(&y.to_curve()))
        }
        "klr" => {
            if p.ring().flavor != Flavor::Plain {
                return Err(EvalError::Mismatch(format!("KLR words act on the plain ring, not {}", p.ring())));
            }
            let seq: Vec<u8> = input.slot.clone().unwrap_or_default().into_iter().map(|c| c as u8).collect();
            if seq.len() != n || seq.iter().any(|&c| c > 1) {
                return Err(EvalError::Mismatch(format!("\"slot\" must be a 0/1 color sequence of length {n}")));
            }
            let gens: Vec<KlrGen> = parse(&input.word)?;
            let x = PolAlpha::single(seq, p);
            let y = klr::word_apply(&gens, &x, KlrConfig::default())?;
            let comps: Vec<Value> = y.comps.iter().filter(|(_, f)| !f.is_zero()).map(|(i, f)| json!({"seq": i, "poly": f.to_json(), "text": f.to_string()})).collect();
            Ok(json!({"components": comps, "text": y.to_string()}))
        }
        "thick" => {
            let lambda = slot(&input, n)?;
            let steps: Vec<ThickStepJson> = parse(&input.word)?;
            let mut path = ThickPath { src: lambda, steps: Vec::new() };
            for s in steps {
                path.steps.push(match s.kind.as_str() {
                    "split" => ThickStep::Split { pos: s.pos, a: s.a },
                    "merge" => ThickStep::Merge { pos: s.pos },
                    "crossing" | "cross" => ThickStep::Cross { pos: s.pos },
                    "poly" => ThickStep::Poly(Poly::parse(p.ring(), s.poly.as_deref().unwrap_or("1"))?),
                    other => return Err(EvalError::Parse(format!("unknown thick generator {other:?}"))),
                });
            }
            let q = path.apply(&p, KlrConfig::default())?;
            let mut out = poly_out(&q);
            out["slot"] = json!(path.to_curve().and_then(|w| w.target()).map(|c| c.reversed().parts().to_vec())?);
            Ok(out)
        }
        "phi" => {
            if !input.word.is_empty() {
                return Err(EvalError::Parse("phi takes no word".into()));
            }
            match &input.slot {
                None => Ok(poly_out(&phi::phi_apply(&p)?)),
                Some(parts) => {
                    let lambda = Composition::new(parts.clone())?;
                    let mut out = poly_out(&phi::phi_slot(&p, &lambda)?);
                    out["slot"] = json!(phi::curve_slot(&lambda).parts());
                    Ok(out)
                }
            }
        }
        other => Err(EvalError::Parse(format!("unknown algebra {other:?}; expected schur, zigzag, klr, thick or phi"))),
    }
}
