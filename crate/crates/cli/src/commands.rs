use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use qdilog::dynkinrep::{
    positive_roots, reineke_word, source_sequence, stables, verify_corollary, CentralCharge, ChargeJson, DynkinQuiver,
    DynkinType,
};
use qdilog::hall::{check_integration_homomorphism, verify_exp_sum, verify_hn_identity, HallAlgebra, HallElement};
use qdilog::qtorus::{
    conj_factor_check, eval_word, kronecker_right_word, kronecker_sides, shift_identity_check, skew_from_quiver,
    twist_involution_check, ExpVec, SkewForm, Verdict, Word,
};
use qdilog::quiver::{
    dt_invariant, frozen_iso, green_search, seq_from_json, tropical_e, tropical_word, FramedQuiver, GreenSeq, GreenSeqJson, Quiver,
    QuiverJson,
};
use serde_json::{json, Value};

use crate::report::{Check, Counterexample, RunReport};

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn load_quiver(path: &Path) -> Result<Quiver> {
    let j: QuiverJson = read_json(path)?;
    Ok(Quiver::from_json(&j)?)
}

fn a2_form() -> SkewForm {
    skew_from_quiver(&Quiver::linear_a(2)).expect("A2 has no loops")
}

/// A sequence given inline as `1,2,1` or as a path to an exported history.
/// A comma list of 1-based vertices, or a sequence file. Steps recorded in a
/// file must match the ones recomputed from `start`.
fn parse_seq(arg: &str, start: &FramedQuiver) -> Result<Vec<usize>> {
    let p = Path::new(arg);
    let j: GreenSeqJson = if p.is_file() {
        read_json(p)?
    } else {
        let seq = arg
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().with_context(|| format!("bad vertex {s:?} in sequence")))
            .collect::<Result<Vec<_>>>()?;
        GreenSeqJson { seq, steps: Vec::new() }
    };
    let seq = seq_from_json(&j, start.n())?;
    if !j.steps.is_empty() {
        let recomputed = GreenSeq::run(start, &seq)?.to_json();
        if recomputed.steps != j.steps {
            bail!("recorded steps in {arg} do not match the recomputed c-vectors {}", serde_json::to_string(&recomputed.steps)?);
        }
    }
    Ok(seq)
}

fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|k| k + 1).collect()
}

fn verdict_check(name: &str, v: &Verdict, reproduce: impl Fn(i64) -> String) -> Check {
    match v.mismatch() {
        None => Check::new(name, true),
        Some(m) => Check::failing(name, Counterexample::from(m), reproduce(m.degree().max(0))),
    }
}

fn quote(s: &str) -> String {
    format!("'{s}'")
}

pub fn pentagon(depth: u32) -> Result<RunReport> {
    let mut r = RunReport::new(format!("pentagon --depth {depth}"), json!({ "depth": depth }));
    let left: Word = "E(1,0) E(0,1)".parse()?;
    let right: Word = "E(0,1) E(1,1) E(1,0)".parse()?;
    let v = eval_word(&a2_form(), &left, depth)?.compare(&eval_word(&a2_form(), &right, depth)?)?;
    r.put("left", json!(left.to_string()));
    r.put("right", json!(right.to_string()));
    r.check(verdict_check("pentagon", &v, |d| format!("qdilog pentagon --depth {d}")));
    Ok(r)
}

pub fn identity(left: &str, right: &str, quiver: &Path, depth: u32) -> Result<RunReport> {
    let q = load_quiver(quiver)?;
    let form = skew_from_quiver(&q)?;
    let (wl, wr): (Word, Word) = (left.parse()?, right.parse()?);
    let mut r = RunReport::new(
        format!("identity --word-left {} --word-right {} --quiver {} --depth {depth}", quote(left), quote(right), quiver.display()),
        json!({ "word_left": wl.to_string(), "word_right": wr.to_string(), "quiver": quiver.display().to_string(), "depth": depth }),
    );
    let v = eval_word(&form, &wl, depth)?.compare(&eval_word(&form, &wr, depth)?)?;
    r.check(verdict_check("identity", &v, |d| {
        format!("qdilog identity --word-left {} --word-right {} --quiver {} --depth {d}", quote(left), quote(right), quiver.display())
    }));
    Ok(r)
}

fn dynkin_from_file(path: &Path) -> Result<DynkinQuiver> {
    Ok(DynkinQuiver::from_quiver(&load_quiver(path)?)?)
}

fn source_word(q: &Quiver) -> Result<Word> {
    let n = q.n();
    Ok(Word::from_exps(source_sequence(q)?.into_iter().map(|i| (ExpVec::unit(n, i), 1))))
}

pub fn reineke(quiver: &Path, charges: &Path, depth: u32) -> Result<RunReport> {
    let d = dynkin_from_file(quiver)?;
    let z = CentralCharge::from_json(&read_json::<ChargeJson>(charges)?)?;
    let mut r = RunReport::new(
        format!("reineke --quiver {} --charges {} --depth {depth}", quiver.display(), charges.display()),
        json!({ "quiver": quiver.display().to_string(), "type": d.ty().to_string(), "charges": z.to_json(), "depth": depth }),
    );
    let st = stables(&d, &z)?;
    let stable_json: Vec<Value> =
        st.iter().enumerate().map(|(rank, a)| json!({ "root": a.0, "phase_rank": rank })).collect();
    r.put("stables", Value::Array(stable_json));
    let word = reineke_word(&d, &z)?;
    let sw = source_word(d.quiver())?;
    r.put("word", json!(word.to_string()));
    r.put("source_word", json!(sw.to_string()));
    let form = skew_from_quiver(d.quiver())?;
    let v = eval_word(&form, &word, depth)?.compare(&eval_word(&form, &sw, depth)?)?;
    r.check(verdict_check("stable product equals source-sequence product", &v, |dd| {
        format!("qdilog identity --word-left {} --word-right {} --quiver {} --depth {dd}", quote(&word.to_string()), quote(&sw.to_string()), quiver.display())
    }));
    Ok(r)
}

pub fn corollary(ty: &str, orientation: Option<&str>, depth: u32) -> Result<RunReport> {
    let t: DynkinType = ty.parse()?;
    let quivers = match orientation {
        None | Some("all") => DynkinQuiver::all_orientations(t)?,
        Some(o) => vec![DynkinQuiver::from_orientation_string(t, o)?],
    };
    let mut r = RunReport::new(
        format!("corollary --type {t} --orientation {} --depth {depth}", orientation.unwrap_or("all")),
        json!({ "type": t.to_string(), "orientation": orientation.unwrap_or("all"), "depth": depth }),
    );
    for d in quivers {
        let o = d.orientation_string().unwrap_or_default();
        let rep = verify_corollary(&d, depth)?;
        let mut c = match &rep.failure {
            None => Check::new(format!("{t} {o}"), true),
            Some((w, m)) => Check::failing(
                format!("{t} {o}"),
                Counterexample::from(m),
                format!("qdilog corollary --type {t} --orientation {o} --depth {}", m.degree()),
            )
            .with_detail(json!({ "extension": w.to_string() })),
        };
        let detail = json!({
            "source_sequence": one_based(&rep.source_sequence),
            "source_word": rep.source_word.to_string(),
            "root_word": rep.root_word.to_string(),
            "extensions_checked": rep.extensions_checked,
            "all_extensions": rep.all_extensions,
        });
        c.detail = Some(match c.detail.take() {
            Some(mut extra) => {
                extra.as_object_mut().expect("object").extend(detail.as_object().expect("object").clone());
                extra
            }
            None => detail,
        });
        r.check(c);
    }
    Ok(r)
}

pub fn kronecker(depth: u32) -> Result<RunReport> {
    let (l, rr) = kronecker_sides(depth)?;
    let mut r = RunReport::new(format!("kronecker --depth {depth}"), json!({ "depth": depth }));
    r.put("right_word", json!(kronecker_right_word(depth).to_string()));
    let v = l.compare(&rr)?;
    r.check(verdict_check("kronecker", &v, |d| format!("qdilog kronecker --depth {d}")));
    Ok(r)
}

pub fn green(quiver: &Path, max_len: usize, maximal: bool) -> Result<RunReport> {
    let q = load_quiver(quiver)?;
    let f = FramedQuiver::frame(&q)?;
    let mut r = RunReport::new(
        format!("green --quiver {} --max-len {max_len}{}", quiver.display(), if maximal { " --maximal" } else { "" }),
        json!({ "quiver": quiver.display().to_string(), "max_len": max_len, "maximal": maximal }),
    );
    let found = green_search(&f, max_len, maximal)?;
    let seqs: Vec<Value> = found
        .iter()
        .map(|g| {
            json!({
                "seq": one_based(&g.seq()),
                "maximal": g.is_maximal(),
                "word": tropical_word(g).to_string(),
                "end": g.end.to_string(),
            })
        })
        .collect();
    r.put("count", json!(seqs.len()));
    r.put("sequences", Value::Array(seqs));
    Ok(r)
}

pub fn dt(quiver: &Path, depth: u32, max_len: Option<usize>) -> Result<RunReport> {
    let q = load_quiver(quiver)?;
    let mut r = RunReport::new(
        format!("dt --quiver {} --depth {depth}", quiver.display()),
        json!({ "quiver": quiver.display().to_string(), "depth": depth }),
    );
    let res = dt_invariant(&q, depth, max_len)?;
    r.put("seq", json!(one_based(&res.seq.seq())));
    r.put("word", json!(tropical_word(&res.seq).to_string()));
    r.put("series", serde_json::to_value(res.series.to_json())?);
    Ok(r)
}

pub fn tropical_compare(quiver: &Path, seq1: &str, seq2: &str, depth: u32) -> Result<RunReport> {
    let q = load_quiver(quiver)?;
    let f = FramedQuiver::frame(&q)?;
    let (s1, s2) = (parse_seq(seq1, &f)?, parse_seq(seq2, &f)?);
    let (a, b) = (one_based(&s1), one_based(&s2));
    let join = |s: &[usize]| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
    let mut r = RunReport::new(
        format!("tropical-compare --quiver {} --seq1 {} --seq2 {} --depth {depth}", quiver.display(), join(&a), join(&b)),
        json!({ "quiver": quiver.display().to_string(), "seq1": a, "seq2": b, "depth": depth }),
    );
    let (g1, e1) = tropical_e(&f, &s1, depth)?;
    let (g2, e2) = tropical_e(&f, &s2, depth)?;
    let iso = frozen_iso(&g1.end, &g2.end);
    r.put("frozen_iso", json!(iso.is_some()));
    if let Some(p) = &iso {
        r.put("permutation", json!(one_based(p)));
    }
    r.put("word1", json!(tropical_word(&g1).to_string()));
    r.put("word2", json!(tropical_word(&g2).to_string()));
    let v = e1.compare(&e2)?;
    r.check(verdict_check("equal series", &v, |d| {
        format!("qdilog tropical-compare --quiver {} --seq1 {} --seq2 {} --depth {d}", quiver.display(), join(&a), join(&b))
    }));
    Ok(r)
}

fn parse_vec(s: &str) -> Result<ExpVec> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad entry {x:?} in {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpVec(v))
}

pub fn hall(quiver: &Path, p: u32, bound: &str, charges: &[PathBuf]) -> Result<RunReport> {
    let d = dynkin_from_file(quiver)?;
    let b = parse_vec(bound)?;
    let alg = HallAlgebra::new(&d, p, &b)?;
    let mut r = RunReport::new(
        format!("hall --quiver {} --p {p} --bound {bound}", quiver.display()),
        json!({ "quiver": quiver.display().to_string(), "p": p, "bound": b.0 }),
    );
    r.put("classes", json!(alg.classes().len()));

    // products of pairs of indecomposables, as a table
    let mut table = Vec::new();
    for x in alg.classes().iter().filter(|c| c.0.iter().sum::<usize>() == 1) {
        for y in alg.classes().iter().filter(|c| c.0.iter().sum::<usize>() == 1) {
            if !alg.dim(x).add(&alg.dim(y)).leq(&b) {
                continue;
            }
            let prod = alg.mul(&HallElement::class(x.clone()), &HallElement::class(y.clone()));
            let terms: Vec<String> = prod.terms.iter().map(|(c, k)| format!("{k}*[{}]", alg.name(c))).collect();
            table.push(json!(format!("[{}][{}] = {}", alg.name(x), alg.name(y), terms.join(" + "))));
        }
    }
    r.put("products", Value::Array(table));

    let els: Vec<HallElement> = alg.classes().iter().cloned().map(HallElement::class).collect();
    let mut assoc = true;
    'outer: for x in &els {
        for y in &els {
            for z in &els {
                if alg.mul(&alg.mul(x, y), z) != alg.mul(x, &alg.mul(y, z)) {
                    assoc = false;
                    break 'outer;
                }
            }
        }
    }
    r.check(Check::new("associativity", assoc));

    let hom = check_integration_homomorphism(&alg)?;
    let mut c = Check::new("integration is a homomorphism", hom.is_none());
    if let Some((x, y)) = hom {
        c = c.with_detail(json!({ "left": alg.name(&x), "right": alg.name(&y) }));
    }
    r.check(c);

    for alpha in positive_roots(&d) {
        let n_max = (1..).take_while(|&n| alpha.scale(n).leq(&b)).last().unwrap_or(0) as u32;
        if n_max == 0 {
            continue;
        }
        let res = verify_exp_sum(&d, &alpha, p, n_max)?;
        let mut c = Check::new(format!("exp sum for {alpha} up to n = {n_max}"), res.is_none());
        if let Some((n, l, rv)) = res {
            c.counterexample =
                Some(Counterexample { monomial: alpha.scale(n as i64).0, left: l.to_string(), right: rv.to_string() });
        }
        r.check(c);
    }

    for path in charges {
        let z = CentralCharge::from_json(&read_json::<ChargeJson>(path)?)?;
        let hn = verify_hn_identity(&alg, &z)?;
        let phases: Vec<Vec<String>> = hn.phases.iter().map(|g| g.iter().map(|c| alg.name(c)).collect()).collect();
        let mut c = Check::new(format!("HN identity for {}", path.display()), hn.holds())
            .with_detail(json!({ "phases": phases }));
        if let Some((cls, a, b)) = hn.first_difference() {
            c.counterexample = Some(Counterexample { monomial: alg.dim(&cls).0, left: a.to_string(), right: b.to_string() });
        }
        r.check(c);
    }
    Ok(r)
}

/// `a..b`, inclusive of `b`.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let Some((a, b)) = s.split_once("..") else {
        bail!("range must look like 0..5, got {s:?}");
    };
    let (a, b) = (a.trim().parse::<i64>()?, b.trim().parse::<i64>()?);
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok((a, b))
}

pub fn formulas(range: &str, depth: u32) -> Result<RunReport> {
    let (a, b) = parse_range(range)?;
    let mut r = RunReport::new(format!("formulas --m-range {range} --depth {depth}"), json!({ "m_range": [a, b], "depth": depth }));
    r.check(verdict_check("shift identity", &shift_identity_check(depth)?, |d| format!("qdilog formulas --m-range {range} --depth {d}")));
    for m in a..=b {
        let v = conj_factor_check(m, depth)?;
        r.check(verdict_check(&format!("conjugation factor m = {m}"), &v, |d| {
            format!("qdilog formulas --m-range {m}..{m} --depth {d}")
        }));
    }
    for m in a.max(0)..=b {
        r.check(Check::new(format!("twist involution m = {m}"), twist_involution_check(m as u32)));
    }
    Ok(r)
}
