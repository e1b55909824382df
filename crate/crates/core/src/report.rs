//! JSON summaries behind each CLI subcommand, and the `explain` narrative.
//! Rationals are written as strings; every number comes from the library
//! computations, never recomputed here.

use serde_json::{json, Value};

use crate::algebra::{algebra, normalized_killing, root_data};
use crate::centralizer::{almost_rigid_generation, compute_centralizer, derived_subalgebra};
use crate::enveloping::{
    augmentation_character, casimir, pbw_basis_check, CasimirForm, PbwContext, WAlgebra,
};
use crate::error::{Error, Result};
use crate::exact::fmt_q;
use crate::modular::{build_induced_module, kw_bookkeeping};
use crate::orbits::{
    build_nilpotent, complete_sl2, dynkin_grading, induce_orbit, levi_data, orbit_dimension,
    rigidity_witness, InductionDatum, RIGIDITY_ORACLE_MAX_N,
};
use crate::partitions::{is_almost_rigid, is_rigid, Epsilon, Partition};
use crate::slice::slice_summary;
use num_traits::Zero;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "orbitforge/1";

pub fn envelope(kind: &str, body: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "kind": kind,
        "result": body,
    })
}

/// Degree-indexed dimensions as [degree, dim] pairs in numeric order.
fn graded(m: &std::collections::BTreeMap<i32, usize>) -> Value {
    json!(m
        .iter()
        .map(|(k, v)| [*k as i64, *v as i64])
        .collect::<Vec<_>>())
}

pub fn algebra_summary(n: usize, eps: Epsilon) -> Result<Value> {
    let g = algebra(n, eps)?;
    let kappa = normalized_killing(&g)?;
    let rd = root_data(&g);
    // nonzero Gram entries as [i, j, value]
    let mut gram = Vec::new();
    for (i, row) in kappa.gram.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                gram.push(json!([i, j, fmt_q(x)]));
            }
        }
    }
    Ok(json!({
        "name": g.name(),
        "n": n,
        "epsilon": eps.sign(),
        "dim": g.dim(),
        "rank": g.rank,
        "positive_roots": g.n_pos,
        "basis": g.basis.iter().map(|b| b.name.clone()).collect::<Vec<_>>(),
        "simple_roots": rd.simple,
        "kappa_gram": gram,
        "kappa_gram_det": fmt_q(&kappa.gram_det()),
    }))
}

pub fn orbit_summary(lambda: &Partition, eps: Epsilon) -> Result<Value> {
    let rep = build_nilpotent(lambda, eps)?;
    let gr = dynkin_grading(&rep)?;
    complete_sl2(&rep)?;
    let (dim, dchi) = orbit_dimension(lambda, eps)?;
    Ok(json!({
        "partition": lambda.to_string(),
        "epsilon": eps.sign(),
        "algebra": rep.g.name(),
        "pyramid": rep.pyramid.to_json(),
        "representative": rep.terms,
        "very_even": rep.very_even,
        "grading_dims": graded(&gr.dims()),
        "sl2": true,
        "dim": dim,
        "d_chi": dchi,
        "almost_rigid": is_almost_rigid(lambda),
        "rigid": is_rigid(lambda, eps)?,
    }))
}

pub fn centralizer_summary(lambda: &Partition, eps: Epsilon) -> Result<Value> {
    let rep = build_nilpotent(lambda, eps)?;
    let b = compute_centralizer(&rep)?;
    let d = derived_subalgebra(&rep.g, &b, &());
    let gen = almost_rigid_generation(&rep)?;
    let zeta = if lambda.total() <= 8 {
        let z = crate::centralizer::build_zeta_system(&rep)?;
        Some(z.verify(&rep)?)
    } else {
        None
    };
    Ok(json!({
        "partition": lambda.to_string(),
        "epsilon": eps.sign(),
        "dim": b.dim(),
        "graded_dims": graded(&b.graded_dims()),
        "derived_codim": d.codim,
        "derived_codim_by_degree": graded(&d.codim_by_degree(&b)),
        "generated_by_01": gen.as_ref().map(|g| g.generated_by_01),
        "generation": gen,
        "zeta": zeta,
    }))
}

pub fn slice_report(lambda: &Partition, eps: Epsilon) -> Result<Value> {
    let rep = build_nilpotent(lambda, eps)?;
    let mut v = slice_summary(&rep)?;
    v["partition"] = json!(lambda.to_string());
    v["epsilon"] = json!(eps.sign());
    Ok(v)
}

pub fn wgen_summary(lambda: &Partition, eps: Epsilon, degree_bound: i32) -> Result<Value> {
    let rep = build_nilpotent(lambda, eps)?;
    let ctx = PbwContext::new(&rep)?;
    let rigid = is_rigid(lambda, eps)? && !rep.g.is_type_a_like();
    let mut w = WAlgebra::new(ctx)?;
    if rigid {
        w.complete()?;
    }
    let theta: Vec<Value> = w
        .theta
        .values()
        .map(|t| {
            json!({
                "k": t.k + 1,
                "n_k": t.n_k,
                "kazhdan": t.kazhdan(),
                "coefficients": w.ctx.poly_strings(&t.value),
            })
        })
        .collect();
    let (aug, pbw) = if rigid {
        let a = augmentation_character(&w)?;
        let p: Vec<_> = (0..=degree_bound)
            .map(|b| pbw_basis_check(&w, b))
            .collect::<Result<_>>()?;
        (
            serde_json::to_value(&a).unwrap_or(Value::Null),
            serde_json::to_value(&p).unwrap_or(Value::Null),
        )
    } else {
        (Value::Null, Value::Null)
    };
    let c = casimir(&w.ctx, CasimirForm::Corrected)?;
    Ok(json!({
        "partition": lambda.to_string(),
        "epsilon": eps.sign(),
        "rigid": rigid,
        "generators_complete": w.theta.len() == w.ctx.r,
        "theta": theta,
        "augmentation": aug,
        "pbw": pbw,
        "casimir_shape": c.summary(&w.ctx),
    }))
}

/// Parses a Levi shape "a,b,..." into gl block sizes.
pub fn parse_blocks(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Levi(format!("bad block size {t:?}")))
        })
        .collect()
}

pub fn verma_summary(
    lambda: &Partition,
    eps: Epsilon,
    blocks: Vec<usize>,
    p: u64,
    seed: u64,
) -> Result<Value> {
    let datum = InductionDatum::zero_orbit(lambda.total(), eps, blocks)?;
    let m = build_induced_module(&datum, p, None, seed)?;
    if m.partition != *lambda {
        return Err(Error::Verification(format!(
            "the Levi induces {} from zero, not {lambda}",
            m.partition
        )));
    }
    let kw = kw_bookkeeping(lambda, eps, p)?;
    let pchar = m.p_character_failures();
    let brackets = m.bracket_failures();
    let probe = (p == 3).then(|| m.submodule_probe(10, seed));
    Ok(json!({
        "partition": lambda.to_string(),
        "epsilon": eps.sign(),
        "levi": datum.blocks,
        "p": p,
        "dim": m.dim(),
        "dim_n": m.generators.len(),
        "d_chi": kw.d_chi,
        "small_dim": kw.small_dim,
        "dim_is_small": m.dim().to_string() == kw.small_dim,
        "p_character_ok": pchar.is_empty(),
        "bracket_ok": brackets.is_empty(),
        "probe": probe,
    }))
}

pub fn induce_summary(datum: &InductionDatum, seed: u64) -> Result<Value> {
    let r = induce_orbit(datum, seed)?;
    Ok(json!({
        "levi": datum,
        "induced": r,
    }))
}

/// A Levi from whose zero orbit λ is induced, if any (N within oracle range).
pub fn richardson_datum(lambda: &Partition, eps: Epsilon) -> Result<Option<InductionDatum>> {
    let n = lambda.total();
    if n > RIGIDITY_ORACLE_MAX_N {
        return Err(Error::SizeGuard(format!(
            "Richardson search limited to N <= {RIGIDITY_ORACLE_MAX_N}"
        )));
    }
    let g = algebra(n, eps)?;
    let (dim, _) = orbit_dimension(lambda, eps)?;
    for d in levi_data(n, eps) {
        if !d.block_orbits.iter().all(|o| o.is_zero_orbit()) || !d.residual_orbit.is_zero_orbit() {
            continue;
        }
        let nd = d.degrees(&g).iter().filter(|x| **x > 0).count();
        if nd == 0 || 2 * nd != dim {
            continue;
        }
        if induce_orbit(&d, 7)?.partition == *lambda {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

pub fn rigidity_summary(lambda: &Partition, eps: Epsilon) -> Result<Value> {
    let rule = is_rigid(lambda, eps)?;
    let (oracle, witness) = if lambda.total() <= RIGIDITY_ORACLE_MAX_N {
        let w = rigidity_witness(lambda, eps)?;
        (Some(w.is_none()), w)
    } else {
        (None, None)
    };
    Ok(json!({
        "partition": lambda.to_string(),
        "epsilon": eps.sign(),
        "almost_rigid": is_almost_rigid(lambda),
        "rigid": rule,
        "oracle": oracle,
        "agrees": oracle.map(|o| o == rule),
        "witness": witness,
    }))
}

/// One readable block aggregating orbit, centraliser, slice and rigidity data.
pub fn explain(lambda: &Partition, eps: Epsilon) -> Result<String> {
    let rep = build_nilpotent(lambda, eps)?;
    let (dim, dchi) = orbit_dimension(lambda, eps)?;
    let cent = compute_centralizer(&rep)?;
    let rigid = is_rigid(lambda, eps)?;
    let mut out = String::new();
    let line = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(&mut out, format!("orbit {lambda} in {}", rep.g.name()));
    if lambda.is_zero_orbit() {
        line(
            &mut out,
            "zero orbit: e = 0, g^e = g, the slice is all of g".into(),
        );
    }
    line(
        &mut out,
        format!("dim O = {dim}, d(χ)={dchi}, dim g^e = {}", cent.dim()),
    );
    let gr = cent
        .graded_dims()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ");
    line(&mut out, format!("g^e by degree: {gr}"));
    if !lambda.is_zero_orbit() {
        let s = slice_summary(&rep)?;
        line(
            &mut out,
            format!(
                "Lagrangian half of g(-1): s = {}, dim m = {}",
                s["s"], s["m_dim"]
            ),
        );
        line(
            &mut out,
            format!("saturated over Z[1/2]: {}", s["saturated"]),
        );
    }
    line(
        &mut out,
        format!("almost rigid: {}", is_almost_rigid(lambda)),
    );
    if rigid {
        line(&mut out, format!("rigid: true, d(χ)={dchi}"));
    } else if lambda.total() <= RIGIDITY_ORACLE_MAX_N {
        match richardson_datum(lambda, eps)? {
            Some(d) => line(
                &mut out,
                format!("rigid: false (Richardson, Levi blocks {:?})", d.blocks),
            ),
            None => line(&mut out, "rigid: false (induced)".into()),
        }
    } else {
        line(&mut out, "rigid: false (induced)".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn explain_examples() {
        let a = explain(&p("2,1,1"), Epsilon::Minus).unwrap();
        assert!(a.contains("rigid: true, d(χ)=2"), "{a}");
        let b = explain(&p("4"), Epsilon::Minus).unwrap();
        assert!(b.contains("rigid: false (Richardson"), "{b}");
        let c = explain(&p("1,1,1,1"), Epsilon::Minus).unwrap();
        assert!(c.contains("zero orbit"), "{c}");
    }

    #[test]
    fn summaries_build() {
        assert_eq!(algebra_summary(4, Epsilon::Minus).unwrap()["dim"], 10);
        assert_eq!(
            orbit_summary(&p("2,1,1"), Epsilon::Minus).unwrap()["d_chi"],
            2
        );
        assert_eq!(
            centralizer_summary(&p("2,1,1"), Epsilon::Minus).unwrap()["dim"],
            6
        );
        let w = wgen_summary(&p("2,1,1"), Epsilon::Minus, 2).unwrap();
        assert_eq!(w["generators_complete"], true);
        let v = verma_summary(&p("2,2"), Epsilon::Minus, vec![2], 3, 1).unwrap();
        assert_eq!(v["dim"], 27);
        assert_eq!(v["dim_is_small"], true);
        assert!(verma_summary(&p("2,1,1"), Epsilon::Minus, vec![2], 3, 1).is_err());
        assert_eq!(
            rigidity_summary(&p("2,2"), Epsilon::Minus).unwrap()["agrees"],
            true
        );
        assert_eq!(parse_blocks("1,1").unwrap(), vec![1, 1]);
    }
}
