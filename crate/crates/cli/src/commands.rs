use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use subranks_core::bridge::{
    d_const, phi, psi, strength, transport_partition_witness, transport_strength_witness, verify_pipeline,
    evaluate_strength, HomogPoly,
};
use subranks_core::equations::{
    bound_formula, check_counting_inequality, counting_inequality_at, decompose_via_chain, extract_hchain,
    fd_gd, find_vanishing_poly, multilinearize, weight_of, BudgetMode, CountingMethod, CountingReport, HChain, Poly,
};
use subranks_core::json::{poly_from_json, tensor_hash, DecompositionJson, PolyJson};
use subranks_core::nullcone::{certify_nullcone, d3_degree_bound, triple_from_slice_decomposition};
use subranks_core::rank::{matrix_rank, prank, prank_at_most, rank, RankKind, SearchOptions, Strategy};
use subranks_core::{BigUint, Error as CoreError, Field, IndexSubsets, Tensor};

use crate::args::{Command, KindArg, ModeArg, SearchArgs, TensorSource};
use crate::generate::{load, parse_field};
use crate::report::{
    decomposition_certificate, nullcone_certificate, rank_certificate, strength_certificate, Certificate, Report,
};
use crate::verify::verify_certificate;

pub fn search_options(s: &SearchArgs) -> SearchOptions {
    SearchOptions {
        budget: s.budget,
        deterministic: !s.heuristic_order,
        strategy: Strategy::Auto,
    }
}

fn source_config(src: &TensorSource) -> Value {
    json!({
        "input": src.input.as_ref().map(|p| p.display().to_string()),
        "gen": src.gen.map(|g| format!("{g:?}").to_lowercase()),
        "dims": src.dims,
        "field": src.field,
        "seed": src.seed,
    })
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
}

fn write_artifact(path: Option<&Path>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Rank { src, search, kind } => cmd_rank(src, search, *kind),
        Command::SubtensorScan { src, search, size, exhaustive, sample, threshold } => {
            cmd_subtensor_scan(src, search, *size, *exhaustive, *sample, *threshold)
        }
        Command::Question12 { src, search, r, count } => cmd_question12(src, search, *r, *count),
        Command::FindEquation { d, n, r, m, mode, field, cap, artifact } => {
            cmd_find_equation(*d, *n, *r, *m, *mode, field, *cap, artifact.as_deref())
        }
        Command::Hchain { poly, field, artifact } => cmd_hchain(poly, field, artifact.as_deref()),
        Command::Decompose { src, poly, budget, artifact } => cmd_decompose(src, poly, *budget, artifact.as_deref()),
        Command::Bridge { input, field, r, cap, search } => cmd_bridge(input, field, *r, *cap, search),
        Command::Bounds { d, r, m } => cmd_bounds(*d, *r, *m),
        Command::CountingCheck { d, r, n, m } => cmd_counting_check(*d, *r, *n, *m),
        Command::VerifyReport { report, search } => cmd_verify_report(report, search),
    }
}

fn rank_summary(c: &subranks_core::rank::RankCertificate) -> Value {
    json!({ "value": c.value, "lower_bound": c.lower_bound, "nodes": c.nodes })
}

pub fn cmd_rank(src: &TensorSource, search: &SearchArgs, kind: KindArg) -> Result<Report> {
    let t = load(src, src.seed)?;
    let opts = search_options(search);
    let kinds: Vec<(RankKind, &str)> = match kind {
        KindArg::Partition => vec![(RankKind::Partition, "prank")],
        KindArg::Slice => vec![(RankKind::Slice, "slice_rank")],
        KindArg::Both => vec![(RankKind::Partition, "prank"), (RankKind::Slice, "slice_rank")],
    };
    let mut results = json!({
        "tensor_hash": tensor_hash(&t),
        "dims": t.dims(),
        "field": t.field().to_string(),
    });
    let mut certs = Vec::new();
    for (k, name) in kinds {
        let c = rank(&t, k, &opts)?;
        results[name] = rank_summary(&c);
        certs.push(rank_certificate(name, k, &t, &c));
        let cubic = t.order() == 3 && t.dims().iter().all(|&n| n == t.dims()[0]);
        if k == RankKind::Slice && cubic && !t.is_zero() && c.value < t.dims()[0] {
            let triple = triple_from_slice_decomposition(&c.witness)?;
            let certified = certify_nullcone(&t, &triple)?;
            results["nullcone"] = json!({ "subspace_dims": triple.dims(), "certified": certified });
            certs.push(nullcone_certificate("slice witness triple", &t, &triple, certified));
        }
    }
    let mut rep = Report::new(
        "rank",
        json!({ "source": source_config(src), "budget": search.budget, "kind": format!("{kind:?}").to_lowercase() }),
        results,
    );
    rep.certificates = certs;
    Ok(rep)
}

/// Increasing `k`-subsets of `[n]`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All tuples of one subset per axis, lexicographic.
fn product_of(per_axis: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    per_axis.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect()
    })
}

fn choose(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1u64, |acc, i| acc.saturating_mul(n as u64 - i) / (i + 1))
}

pub fn cmd_subtensor_scan(
    src: &TensorSource,
    search: &SearchArgs,
    size: usize,
    exhaustive: bool,
    samples: Option<usize>,
    threshold: u64,
) -> Result<Report> {
    let t = load(src, src.seed)?;
    let opts = search_options(search);
    if size == 0 || t.dims().iter().any(|&n| size > n) {
        bail!(CoreError::InvalidInput(format!("size {size} not within dims {:?}", t.dims())));
    }
    let total = t.dims().iter().fold(1u64, |acc, &n| acc.saturating_mul(choose(n, size)));
    let (tuples, mode) = match samples {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(src.seed);
            let tuples: Vec<Vec<Vec<usize>>> = (0..count)
                .map(|_| {
                    t.dims()
                        .iter()
                        .map(|&n| {
                            let mut s = sample(&mut rng, n, size).into_vec();
                            s.sort_unstable();
                            s
                        })
                        .collect()
                })
                .collect();
            (tuples, "sample")
        }
        None if exhaustive || total <= threshold => {
            let per_axis: Vec<Vec<Vec<usize>>> = t.dims().iter().map(|&n| combinations(n, size)).collect();
            (product_of(&per_axis), "exhaustive")
        }
        None => bail!(CoreError::InvalidInput(format!(
            "{total} subset tuples exceed the threshold {threshold}; pass --exhaustive or --sample N"
        ))),
    };
    let full = prank(&t, &opts)?;
    let evaluated: Vec<(Vec<Vec<usize>>, Tensor, subranks_core::rank::RankCertificate)> = tuples
        .into_par_iter()
        .map(|sets| {
            let sub = t.subtensor(&IndexSubsets::new(sets.clone())?)?;
            let c = prank(&sub, &opts)?;
            Ok((sets, sub, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = evaluated.iter().map(|(_, _, c)| c.value).max().unwrap_or(0);
    let entries: Vec<Value> = evaluated
        .iter()
        .map(|(sets, _, c)| json!({ "subsets": one_based(sets), "prank": c.value }))
        .collect();
    let mut results = json!({
        "tensor_hash": tensor_hash(&t),
        "mode": mode,
        "count": evaluated.len(),
        "expected_count": if mode == "exhaustive" { Some(total) } else { None },
        "max_subtensor_prank": max,
        "full_prank": rank_summary(&full),
        "monotone": max <= full.value,
        "subtensors": entries,
    });
    if t.order() == 2 {
        let r = matrix_rank(&t);
        // every s x s submatrix has rank <= min(s, r), and some attains it
        results["matrix_fact"] = json!({
            "rank": r,
            "max_minor_rank": max,
            "holds": mode != "exhaustive" || max == size.min(r),
        });
    }
    let mut rep = Report::new(
        "subtensor-scan",
        json!({ "source": source_config(src), "budget": search.budget, "size": size, "mode": mode, "sample": samples }),
        results,
    );
    rep.certificates.push(rank_certificate("full", RankKind::Partition, &t, &full));
    for (sets, sub, c) in &evaluated {
        rep.certificates.push(rank_certificate(
            &format!("subtensor {:?}", one_based(sets)),
            RankKind::Partition,
            sub,
            c,
        ));
    }
    Ok(rep)
}

struct Q12Outcome {
    summary: Value,
    certs: Vec<Certificate>,
    complement_prank: Option<usize>,
}

fn with_added(sets: &[Vec<usize>], point: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter()
        .zip(point)
        .map(|(s, x)| {
            let mut s = s.clone();
            s.extend(x);
            s.sort_unstable();
            s
        })
        .collect()
}

fn question12_one(t: &Tensor, r: usize, opts: &SearchOptions, seed: u64) -> Result<Q12Outcome> {
    if !t.field().is_finite() {
        bail!(CoreError::NotFiniteField);
    }
    let d = t.order();
    let mut certs = Vec::new();
    let mut checked = 0u64;
    let mut found: Option<Vec<Vec<usize>>> = None;
    if r == 0 {
        found = Some(vec![Vec::new(); d]);
    } else if t.dims().iter().all(|&n| n >= r) {
        let per_axis: Vec<Vec<Vec<usize>>> = t.dims().iter().map(|&n| combinations(n, r)).collect();
        'tuples: for sets in product_of(&per_axis) {
            checked += 1;
            let sub = t.subtensor(&IndexSubsets::new(sets.clone())?)?;
            if prank(&sub, opts)?.value != r {
                continue;
            }
            // one new point on every axis at once
            let outside: Vec<Vec<Vec<usize>>> = sets
                .iter()
                .zip(t.dims())
                .map(|(s, &n)| (0..n).filter(|x| !s.contains(x)).map(|x| vec![x]).collect())
                .collect();
            for point in product_of(&outside) {
                let ext = t.subtensor(&IndexSubsets::new(with_added(&sets, &point))?)?;
                if !prank_at_most(&ext, r, opts)?.holds {
                    continue 'tuples;
                }
            }
            let c = prank(&sub, opts)?;
            certs.push(rank_certificate(&format!("block {:?}", one_based(&sets)), RankKind::Partition, &sub, &c));
            found = Some(sets);
            break;
        }
    }
    let Some(sets) = found else {
        return Ok(Q12Outcome {
            summary: json!({ "seed": seed, "tensor_hash": tensor_hash(t), "found": false, "tuples_checked": checked }),
            certs,
            complement_prank: None,
        });
    };
    let comp: Vec<Vec<usize>> = sets
        .iter()
        .zip(t.dims())
        .map(|(s, &n)| (0..n).filter(|i| !s.contains(i)).collect())
        .collect();
    let empty = comp.iter().any(|c| c.is_empty());
    let value = if empty {
        0
    } else {
        let sub = t.subtensor(&IndexSubsets::new(comp.clone())?)?;
        let c = prank(&sub, opts)?;
        certs.push(rank_certificate("complement", RankKind::Partition, &sub, &c));
        c.value
    };
    let mut summary = json!({
        "seed": seed,
        "tensor_hash": tensor_hash(t),
        "found": true,
        "block": one_based(&sets),
        "complement_prank": value,
        "complement_empty": empty,
        "tuples_checked": checked,
    });
    if d == 2 {
        summary["matrix_check"] = json!(value <= r);
    }
    Ok(Q12Outcome {
        summary,
        certs,
        complement_prank: Some(value),
    })
}

pub fn cmd_question12(src: &TensorSource, search: &SearchArgs, r: usize, count: usize) -> Result<Report> {
    let opts = search_options(search);
    let seeds: Vec<u64> = if src.input.is_some() {
        vec![src.seed]
    } else {
        (0..count as u64).map(|k| src.seed + k).collect()
    };
    let outcomes = seeds
        .par_iter()
        .map(|&seed| {
            let t = load(src, seed)?;
            question12_one(&t, r, &opts, seed)
        })
        .collect::<Result<Vec<_>>>()?;
    let found: Vec<usize> = outcomes.iter().filter_map(|o| o.complement_prank).collect();
    let results = json!({
        "r": r,
        "tensors": outcomes.len(),
        "found": found.len(),
        "max_complement_prank": found.iter().max(),
        "runs": outcomes.iter().map(|o| o.summary.clone()).collect::<Vec<_>>(),
    });
    let mut rep = Report::new(
        "question12",
        json!({ "source": source_config(src), "budget": search.budget, "r": r, "count": seeds.len() }),
        results,
    );
    rep.certificates = outcomes.into_iter().flat_map(|o| o.certs).collect();
    Ok(rep)
}

fn mode_name(mode: ModeArg) -> (&'static str, BudgetMode) {
    match mode {
        ModeArg::Paper => ("paper", BudgetMode::Paper),
        ModeArg::Tight => ("tight", BudgetMode::Tight),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_find_equation(
    d: usize,
    n: usize,
    r: usize,
    m: u32,
    mode: ModeArg,
    field: &str,
    cap: u128,
    artifact: Option<&Path>,
) -> Result<Report> {
    let f = parse_field(field)?;
    let (name, bm) = mode_name(mode);
    let poly = find_vanishing_poly(d, n, r, m, f, bm, cap)?;
    let config = json!({ "d": d, "n": n, "r": r, "m": m, "mode": name, "field": f.to_string(), "cap": cap.to_string() });
    let results = match &poly {
        Some(p) => json!({ "found": true, "terms": p.len(), "poly": PolyJson::from_poly(p)?, "display": p.to_string() }),
        None => json!({ "found": false }),
    };
    let mut rep = Report::new("find-equation", config, results);
    if let Some(p) = &poly {
        write_artifact(artifact, &(subranks_core::json::poly_to_json(p)? + "\n"))?;
        rep.certificates.push(Certificate::Equation {
            d,
            n,
            r,
            mode: name.into(),
            poly: PolyJson::from_poly(p)?,
        });
    }
    Ok(rep)
}

fn read_poly(path: &Path, default_field: Field) -> Result<Poly> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(poly_from_json(&text, default_field)?)
}

/// Multilinearizes unless the polynomial already has weight `(1^m, ..., 1^m)`.
fn multilinear_form(p: &Poly) -> Result<(Poly, bool)> {
    let ok = weight_of(p).map(|w| w.is_multilinear() && w.0.iter().all(|a| a.iter().all(|&x| x == 1)));
    if matches!(ok, Ok(true)) {
        return Ok((p.clone(), false));
    }
    Ok((multilinearize(p)?, true))
}

fn chain_json(c: &HChain) -> Result<Value> {
    Ok(json!({
        "m": c.m,
        "order": c.order,
        "h": c.h.iter().map(PolyJson::from_poly).collect::<subranks_core::Result<Vec<_>>>()?,
        "r": c.r.iter().map(PolyJson::from_poly).collect::<subranks_core::Result<Vec<_>>>()?,
        "perms": c.perms.iter().map(|level| one_based(level)).collect::<Vec<_>>(),
        "verified": c.verify(),
    }))
}

pub fn cmd_hchain(path: &Path, field: &str, artifact: Option<&Path>) -> Result<Report> {
    let p = read_poly(path, parse_field(field)?)?;
    let (f, changed) = multilinear_form(&p)?;
    let chain = extract_hchain(&f)?;
    let cj = chain_json(&chain)?;
    write_artifact(artifact, &(serde_json::to_string(&cj)? + "\n"))?;
    let rep = Report::new(
        "hchain",
        json!({ "poly": path.display().to_string(), "field": p.field().to_string() }),
        json!({ "multilinearized": changed, "display": chain.h.iter().map(|h| h.to_string()).collect::<Vec<_>>(), "chain": cj }),
    );
    Ok(rep)
}

pub fn cmd_decompose(src: &TensorSource, poly: &Path, budget: u64, artifact: Option<&Path>) -> Result<Report> {
    let t = load(src, src.seed)?;
    let p = read_poly(poly, t.field())?;
    let (f, changed) = multilinear_form(&p)?;
    let f = f.to_field(t.field())?;
    if f.is_zero() {
        bail!(CoreError::InvalidInput("the polynomial vanishes identically over the tensor's field".into()));
    }
    let chain = extract_hchain(&f)?;
    let out = decompose_via_chain(&t, &chain, budget)?;
    let dj = DecompositionJson::from_decomposition(&out.decomposition);
    write_artifact(artifact, &(serde_json::to_string(&dj)? + "\n"))?;
    let results = json!({
        "tensor_hash": tensor_hash(&t),
        "multilinearized": changed,
        "k": out.k,
        "bound": out.bound,
        "length": out.decomposition.len(),
        "outer_terms": out.outer_terms,
        "slice_terms": out.slice_terms,
        "reproduces": out.decomposition.reproduces(&t),
    });
    let mut rep = Report::new(
        "decompose",
        json!({ "source": source_config(src), "poly": poly.display().to_string(), "budget": budget }),
        results,
    );
    rep.certificates.push(decomposition_certificate("chain decomposition", &t, out.bound, &out.decomposition));
    Ok(rep)
}

/// Exact rank when the search fits the budget.
fn rank_within_budget(t: &Tensor, opts: &SearchOptions) -> Result<Option<subranks_core::rank::RankCertificate>> {
    match prank(t, opts) {
        Ok(c) => Ok(Some(c)),
        Err(CoreError::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_bridge(input: &Path, field: &str, r: Option<usize>, cap: usize, search: &SearchArgs) -> Result<Report> {
    let opts = search_options(search);
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let value: Value = serde_json::from_str(&text)?;
    let config = json!({ "input": input.display().to_string(), "field": field, "r": r, "cap": cap, "budget": search.budget });
    if value.get("vars").is_some() {
        let p = poly_from_json(&text, parse_field(field)?)?;
        bridge_poly(&p, r, cap, &opts, config)
    } else {
        let t = subranks_core::json::tensor_from_json(&text)?;
        bridge_tensor(&t, &opts, config)
    }
}

fn bridge_poly(p: &HomogPoly, r: Option<usize>, cap: usize, opts: &SearchOptions, config: Value) -> Result<Report> {
    let d = p.degree();
    let dc = d_const(d);
    let t = psi(p)?;
    let fact: i64 = (1..=d as i64).product();
    let identity = phi(&t)? == p.scale(&p.field().from_i64(fact));
    let s = strength(p, opts)?;
    let transported = transport_strength_witness(p, &s.witness)?;
    let exact = if t.field().is_finite() { rank_within_budget(&t, opts)? } else { None };
    let mut results = json!({
        "n": t.dims()[0],
        "d": d,
        "D": dc,
        "phi_psi_identity": identity,
        "tensor_hash": tensor_hash(&t),
        "strength": { "value": s.value, "lower_bound": s.lower_bound, "nodes": s.nodes },
        "transported_length": transported.len(),
        "transported_reproduces": transported.reproduces(&t),
        "prank_at_most_d_strength": transported.len() as u64 <= dc * s.value as u64,
        "prank_exact": exact.as_ref().map(|c| c.value),
    });
    let mut rep = Report::new("bridge", config, Value::Null);
    rep.certificates.push(strength_certificate("strength(P)", p, &s)?);
    rep.certificates
        .push(decomposition_certificate("psi of the strength witness", &t, (dc as usize) * s.value, &transported));
    if let Some(c) = &exact {
        results["chain_holds"] = json!(s.value <= c.value && c.value as u64 <= dc * s.value as u64);
        rep.certificates.push(rank_certificate("prank(psi(P))", RankKind::Partition, &t, c));
    }
    if let Some(r) = r {
        let pipe = verify_pipeline(p, r, cap, opts)?;
        results["pipeline"] = json!({
            "all_pass": pipe.all_pass(),
            "theorem_claimed": pipe.theorem_claimed,
            "max_restricted_strength": pipe.max_restricted_strength,
            "subtensors_checked": pipe.subtensors_checked,
            "links": pipe.links.iter().map(|l| json!({ "name": l.name, "pass": l.pass, "detail": l.detail })).collect::<Vec<_>>(),
        });
    }
    rep.results = results;
    Ok(rep)
}

fn bridge_tensor(t: &Tensor, opts: &SearchOptions, config: Value) -> Result<Report> {
    let p = phi(t)?;
    let c = prank(t, opts)?;
    let carried = transport_partition_witness(&c.witness)?;
    let carried_ok = evaluate_strength(&p, &carried)? == p;
    let s = if p.is_zero() || p.degree() >= 2 { Some(strength(&p, opts)?) } else { None };
    let results = json!({
        "tensor_hash": tensor_hash(t),
        "prank": rank_summary(&c),
        "strength_phi": s.as_ref().map(|s| json!({ "value": s.value, "lower_bound": s.lower_bound })),
        "transported_terms": carried.len(),
        "transported_sums_to_phi": carried_ok,
        "strength_at_most_prank": s.as_ref().map(|s| s.value <= c.value),
    });
    let mut rep = Report::new("bridge", config, results);
    rep.certificates.push(rank_certificate("prank(T)", RankKind::Partition, t, &c));
    if let Some(s) = &s {
        rep.certificates.push(strength_certificate("strength(phi(T))", &p, s)?);
    }
    Ok(rep)
}

pub fn cmd_bounds(d: u32, r: u64, m: Option<u64>) -> Result<Report> {
    if d < 2 || r == 0 {
        bail!(CoreError::InvalidInput("need d >= 2 and r >= 1".into()));
    }
    let (f, g) = fd_gd(d, r);
    let (k, km) = d3_degree_bound(r)?;
    let mut results = json!({
        "F": f.to_string(),
        "G": g.to_string(),
        "log2_F": f.bits() - 1,
        "log2_G": g.bits() - 1,
        "D": d_const(d),
        "d3_degree_bound": { "k": k, "m": km },
    });
    if let Some(m) = m {
        let b = bound_formula(d, m, 0)?;
        let md = BigUint::from(m).pow(d);
        results["chain_bound"] = json!({ "m": m, "k": 0, "bound": b.to_string(), "at_most_m_pow_d": b <= md });
    }
    Ok(Report::new("bounds", json!({ "d": d, "r": r, "m": m }), results))
}

fn counting_json(c: &CountingReport) -> Value {
    json!({
        "d": c.d,
        "r": c.r,
        "n": c.n.to_string(),
        "m": c.m.to_string(),
        "S": c.s.to_string(),
        "method": match c.method { CountingMethod::Exact => "exact", CountingMethod::LogInterval => "log-interval" },
        "ln_dim_p2m": c.ln_dim_p2m,
        "ln_dim_pm": c.ln_dim_pm,
        "holds": c.holds,
        "message": if c.holds { "inequality holds" } else { "inequality fails" },
    })
}

pub fn cmd_counting_check(d: u32, r: u64, n: Option<u64>, m: Option<u64>) -> Result<Report> {
    let c = match (n, m) {
        (Some(n), Some(m)) => counting_inequality_at(d, r, &BigUint::from(n), &BigUint::from(m))?,
        (None, None) => check_counting_inequality(d, r)?,
        _ => bail!(CoreError::InvalidInput("give both --n and --m, or neither".into())),
    };
    Ok(Report::new("counting-check", json!({ "d": d, "r": r, "n": n, "m": m }), counting_json(&c)))
}

pub fn cmd_verify_report(path: &Path, search: &SearchArgs) -> Result<Report> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let report: Report = serde_json::from_str(&text)?;
    let opts = search_options(search);
    let checks = report
        .certificates
        .par_iter()
        .map(|c| verify_certificate(c, &opts))
        .collect::<Result<Vec<_>>>()?;
    let all_ok = checks.iter().all(|c| c.ok);
    Ok(Report::new(
        "verify-report",
        json!({ "report": path.display().to_string(), "budget": search.budget }),
        json!({ "verified_command": report.command, "count": checks.len(), "all_ok": all_ok, "checks": checks }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(product_of(&[combinations(3, 2), combinations(3, 2), combinations(3, 2)]).len(), 27);
        assert_eq!(choose(6, 3), 20);
    }
}
