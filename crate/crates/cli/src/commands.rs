use std::fmt::Write;

use leafscheme::exact::{Rational, Rationals, SeriesDoc};
use leafscheme::expr::{render_one_form, render_polynomial, render_vector_field};
use leafscheme::foliation::{
    default_degree_bound, integrability_check, linear_solve_series, pcurvature_tangency, prop25_forms, sch_contains_point,
    sch_ideal, tangency_check, vf_pow_p, HodgeBlocks, OneForm, Verdict, VectorField,
};
use leafscheme::hypergeo::{linspace, sample_locus, witness, LocusPoint};
use leafscheme::periods::{
    denominator_table, eq1_series, griffiths_basis, period_series, render_table, steenbrink_hodge_tate, FamilyConfig,
};
use leafscheme::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input;
use crate::{Command, Report};

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Periods { config } => periods(config),
        Command::Denominators { config, trial_bound } => {
            let cfg = FamilyConfig::from_json(&input::read_text(config)?)?;
            let rows = denominator_table(&cfg.family()?, &cfg.betas()?, *trial_bound)?;
            Ok(Report::definite(render_table(&rows)))
        }
        Command::Eq1 { truncation } => Ok(Report::definite(to_json(&json!(SeriesDoc::from(&eq1_series(*truncation)))))),
        Command::Griffiths { d, n } => {
            let mut out = String::from("monomial,pole_order\n");
            for b in griffiths_basis(*d, *n) {
                let mono = b.monomial();
                writeln!(out, "{mono},{}", b.pole_order()).unwrap();
            }
            Ok(Report::definite(out))
        }
        Command::FoliationCheck { system } => {
            let sys = input::read_system(system)?;
            let ok = integrability_check(&sys.b)?;
            Ok(Report::definite(format!("check,result\nintegrable,{ok}\n")))
        }
        Command::Gm { system, blocks } => gm(system, blocks.as_deref()),
        Command::Pcurvature { vars, field, prime } => {
            let ctx = vars.context()?;
            let v = input::field(field, &ctx)?;
            let vp = lift(&vf_pow_p(&v, *prime)?)?;
            Ok(Report::definite(format!("p,v^p\n{prime},{}\n", render_vector_field(&vp))))
        }
        Command::Sch { vars, field, with, point } => {
            let ctx = vars.context()?;
            let v = input::field(field, &ctx)?;
            let ws = with.iter().map(|w| input::field(w, &ctx)).collect::<Result<Vec<_>>>()?;
            match point {
                Some(coords) => {
                    let t = coords.iter().map(|c| leafscheme::exact::serial::parse_rational(c)).collect::<Result<Vec<Rational>>>()?;
                    let inside = sch_contains_point(&v, &ws, &t)?;
                    Ok(Report::definite(format!("in_zero_set\n{inside}\n")))
                }
                None => {
                    let ideal = sch_ideal(&v, &ws)?;
                    let mut out = String::from("generator\n");
                    for g in ideal.gens() {
                        writeln!(out, "{}", render_polynomial(g, &ctx)).unwrap();
                    }
                    Ok(Report::definite(out))
                }
            }
        }
        Command::Tangency { vars, field, forms, ideal, degree, prime } => {
            let ctx = vars.context()?;
            let v = input::field(field, &ctx)?;
            let omega = input::forms(forms, &ctx)?;
            let ideal = input::ideal(ideal, &ctx)?;
            let deg = degree.unwrap_or_else(|| default_degree_bound(&omega, &ideal));
            let verdict = match prime {
                Some(p) => pcurvature_tangency(&v, &omega, &ideal, *p, deg)?,
                None => tangency_check(&v, &omega, &ideal, deg)?,
            };
            let word = match verdict {
                Verdict::Yes => "YES",
                Verdict::Unknown => "UNKNOWN",
            };
            Ok(Report { text: format!("verdict,degree_bound\n{word},{deg}\n"), unknown: verdict == Verdict::Unknown })
        }
        Command::SolveLinear { system, order } => {
            let sys = input::read_system(system)?;
            let y = linear_solve_series(&sys.b, *order)?;
            let rows: Vec<Value> = y.iter().map(|r| r.iter().map(|f| json!(SeriesDoc::from(f))).collect()).collect();
            Ok(Report::definite(to_json(&json!({ "vars": sys.b.ctx().names(), "Y": rows }))))
        }
        Command::HypergeoLocus { n, grid, from, to, tol } => {
            if !(*tol > 0.0) {
                return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
            }
            let sample = sample_locus(*n, &linspace(*from, *to, *grid), *tol)?;
            let mut out = String::from(LOCUS_HEADER);
            for p in &sample.points {
                out.push_str(&locus_row(p));
            }
            for t1 in &sample.skipped {
                writeln!(out, "{t1:.12},,,unattained").unwrap();
            }
            Ok(Report::definite(out))
        }
        Command::HypergeoWitness { n, t1, tol } => {
            let p = witness(*n, *t1, *tol)?;
            Ok(Report::definite(format!("{LOCUS_HEADER}{}", locus_row(&p))))
        }
        Command::Steenbrink { d, weights, n } => {
            let ht = steenbrink_hodge_tate(*d, weights, *n)?;
            let w: Vec<String> = weights.iter().map(u32::to_string).collect();
            Ok(Report::definite(format!("d,weights,n,hodge_tate\n{d},{},{n},{ht}\n", w.join(" "))))
        }
    }
}

const LOCUS_HEADER: &str = "t1,t2,residual,status\n";

fn locus_row(p: &LocusPoint) -> String {
    let status = if p.flagged { "flagged" } else { "ok" };
    format!("{:.12},{:.12},{:.3e},{status}\n", p.t1, p.t2, p.residual)
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn lift(v: &VectorField<leafscheme::exact::PrimeField>) -> Result<VectorField> {
    v.try_map_field(Rationals, |&r| Ok(Rational::from_integer(r.into())))
}

fn periods(config: &std::path::Path) -> Result<Report> {
    let cfg = FamilyConfig::from_json(&input::read_text(config)?)?;
    let spec = cfg.family()?;
    let results = cfg.betas()?.par_iter().map(|b| period_series(b, &spec)).collect::<Result<Vec<_>>>()?;
    let docs: Vec<Value> = results
        .iter()
        .map(|ps| {
            json!({
                "beta": ps.beta.beta().as_slice(),
                "pole_order": ps.beta.pole_order(),
                "normalization": ps.normalization,
                "series": SeriesDoc::from(&ps.series),
            })
        })
        .collect();
    Ok(Report::definite(to_json(&Value::Array(docs))))
}

fn gm(system: &std::path::Path, blocks: Option<&[usize]>) -> Result<Report> {
    let sys = input::read_system(system)?;
    let sizes = blocks
        .map(<[usize]>::to_vec)
        .or(sys.blocks)
        .ok_or_else(|| Error::Invalid("Hodge block sizes missing: pass --blocks or set \"blocks\"".into()))?;
    let blocks = HodgeBlocks::new(sizes)?;
    let eqs = prop25_forms(&sys.b, &blocks)?;
    let asm = &eqs.assembly;
    let render = |ws: &[OneForm]| ws.iter().map(render_one_form).collect::<Vec<_>>();
    let a: Vec<Vec<String>> = asm.a.rows().iter().map(|r| render(r)).collect();
    let doc = json!({
        "vars": asm.ctx.names(),
        "x": asm.x.iter().map(|f| render_polynomial(f, &asm.ctx)).collect::<Vec<_>>(),
        "A": a,
        "AC": render(&asm.foliation_forms),
        "ivhs": render(&eqs.ivhs),
        "middle": render(&eqs.middle),
        "lower": render(&eqs.lower),
        "checks": {
            "inverse": asm.inverse_holds(),
            "flat": asm.flatness_holds()?,
            "foliation_integrable": asm.foliation_integrable()?,
            "spans_agree": eqs.spans_agree()?,
        },
    });
    Ok(Report::definite(to_json(&doc)))
}
